#include "apcong/matgrp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_set>

namespace apcong {

Mat2 identity(const FieldSpec& F) { return Mat2{F.one(), F.zero(), F.zero(), F.one()}; }

Mat2 scalar_matrix(const FieldSpec& F, Elt alpha) { return Mat2{alpha, F.zero(), F.zero(), alpha}; }

Mat2 make_mat(const FieldSpec& F, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return Mat2{F.from_int(a), F.from_int(b), F.from_int(c), F.from_int(d)};
}

Mat2 mul(const FieldSpec& F, const Mat2& x, const Mat2& y) {
  return Mat2{F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
              F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

Elt det(const FieldSpec& F, const Mat2& m) { return F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c)); }

Elt trace(const FieldSpec& F, const Mat2& m) { return F.add(m.a, m.d); }

Mat2 inverse(const FieldSpec& F, const Mat2& m) {
  const Elt D = det(F, m);
  if (D.code == 0) throw GroupError("matrix is singular");
  const Elt s = F.inv(D);
  return Mat2{F.mul(s, m.d), F.mul(s, F.neg(m.b)), F.mul(s, F.neg(m.c)), F.mul(s, m.a)};
}

Mat2 mat_pow(const FieldSpec& F, Mat2 m, std::uint64_t e) {
  Mat2 r = identity(F);
  while (e > 0) {
    if (e & 1U) r = mul(F, r, m);
    m = mul(F, m, m);
    e >>= 1U;
  }
  return r;
}

Mat2 scale(const FieldSpec& F, Elt alpha, const Mat2& m) {
  return Mat2{F.mul(alpha, m.a), F.mul(alpha, m.b), F.mul(alpha, m.c), F.mul(alpha, m.d)};
}

std::optional<Elt> is_scalar(const FieldSpec& /*F*/, const Mat2& m) {
  if (m.b.code != 0 || m.c.code != 0 || m.a != m.d) return std::nullopt;
  return m.a;
}

std::uint64_t element_order(const FieldSpec& F, const Mat2& m) {
  if (det(F, m).code == 0) throw GroupError("matrix is singular");
  const Mat2 id = identity(F);
  Mat2 x = m;
  std::uint64_t n = 1;
  while (x != id) {
    x = mul(F, x, m);
    ++n;
  }
  return n;
}

Mat2 projective_canonical(const FieldSpec& F, const Mat2& m) {
  Elt lead = m.a;
  if (lead.code == 0) lead = m.b;
  if (lead.code == 0) lead = m.c;
  if (lead.code == 0) lead = m.d;
  if (lead.code == 0) throw GroupError("zero matrix has no projective class");
  if (lead == F.one()) return m;
  return scale(F, F.inv(lead), m);
}

std::uint64_t projective_order(const FieldSpec& F, const Mat2& m) {
  if (det(F, m).code == 0) throw GroupError("matrix is singular");
  Mat2 x = m;
  std::uint64_t n = 1;
  while (!is_scalar(F, x)) {
    x = mul(F, x, m);
    ++n;
  }
  return n;
}

std::uint64_t gl2_order(std::uint64_t q) { return (q * q - 1) * (q * q - q); }

namespace detail {

std::vector<Mat2> closure(const std::vector<Mat2>& gens, const Mat2& id,
                          const std::function<Mat2(const Mat2&, const Mat2&)>& op, std::size_t guard) {
  std::unordered_set<Mat2, Mat2Hash> seen{id};
  std::deque<Mat2> work{id};
  while (!work.empty()) {
    const Mat2 x = work.front();
    work.pop_front();
    for (const Mat2& g : gens) {
      const Mat2 y = op(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > guard) {
          throw GroupError("group closure exceeds " + std::to_string(guard) + " elements");
        }
        work.push_back(y);
      }
    }
  }
  std::vector<Mat2> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

namespace {

bool sorted_contains(const std::vector<Mat2>& v, const Mat2& m) { return std::binary_search(v.begin(), v.end(), m); }

// Normal closure of seeds under conjugation by conjugators. Since the ambient
// group is finite, x H x^-1 <= H already forces equality, so inverses of the
// conjugators are not needed.
std::vector<Mat2> normal_closure(std::vector<Mat2>& seeds, const std::vector<Mat2>& conjugators, const Mat2& id,
                                 const std::function<Mat2(const Mat2&, const Mat2&)>& op,
                                 const std::function<Mat2(const Mat2&)>& inv, std::size_t guard) {
  std::vector<Mat2> H = detail::closure(seeds, id, op, guard);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Mat2& g : conjugators) {
      const Mat2 gi = inv(g);
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        const Mat2 c = op(op(g, seeds[i]), gi);
        if (!sorted_contains(H, c)) {
          seeds.push_back(c);
          H = detail::closure(seeds, id, op, guard);
          changed = true;
        }
      }
    }
  }
  return H;
}

}  // namespace

bool MatGroup::contains(const Mat2& m) const { return sorted_contains(d_->elements, m); }

std::optional<std::size_t> MatGroup::index_of(const Mat2& m) const {
  const auto& e = d_->elements;
  auto it = std::lower_bound(e.begin(), e.end(), m);
  if (it == e.end() || *it != m) return std::nullopt;
  return static_cast<std::size_t>(it - e.begin());
}

bool MatGroup::is_subgroup_of(const MatGroup& other) const {
  if (!(spec() == other.spec())) return false;
  return std::all_of(elements().begin(), elements().end(), [&](const Mat2& m) { return other.contains(m); });
}

MatGroup close_group(const FieldSpec& F, const std::vector<Mat2>& generators, std::size_t guard) {
  for (const Mat2& g : generators) {
    for (Elt e : {g.a, g.b, g.c, g.d}) {
      if (!F.contains(e)) throw GroupError("matrix entry outside the field");
    }
    if (det(F, g).code == 0) throw GroupError("generator is singular");
  }
  auto op = [&F](const Mat2& x, const Mat2& y) { return mul(F, x, y); };
  std::vector<Mat2> elements = detail::closure(generators, identity(F), op, guard);
  if (gl2_order(F.order()) % elements.size() != 0) {
    throw std::logic_error("closure order does not divide |GL_2|");
  }
  auto data = std::make_shared<MatGroup::Data>(MatGroup::Data{F, std::move(elements), generators});
  return MatGroup(std::move(data));
}

MatGroup commutator_subgroup(const MatGroup& G) {
  const FieldSpec& F = G.spec();
  const auto& gens = G.generators();
  const Mat2 id = identity(F);
  std::vector<Mat2> seeds;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Mat2 x = gens[i];
      const Mat2 y = gens[j];
      const Mat2 c = mul(F, mul(F, x, y), inverse(F, mul(F, y, x)));
      if (c != id) seeds.push_back(c);
    }
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  auto op = [&F](const Mat2& x, const Mat2& y) { return mul(F, x, y); };
  auto inv = [&F](const Mat2& x) { return inverse(F, x); };
  const std::vector<Mat2> members = normal_closure(seeds, gens, id, op, inv, MatGroup::kMaxOrder);
  for (const Mat2& m : members) {
    if (det(F, m) != F.one()) throw std::logic_error("commutator with determinant other than 1");
  }
  // seeds now generates the normal closure.
  return close_group(F, seeds);
}

std::vector<Coset> cosets(const MatGroup& G, const MatGroup& H) {
  if (!H.is_subgroup_of(G)) throw GroupError("subgroup is not contained in the group");
  const FieldSpec& F = G.spec();
  std::vector<bool> assigned(G.order(), false);
  std::vector<Coset> out;
  for (std::size_t i = 0; i < G.order(); ++i) {
    if (assigned[i]) continue;
    const Mat2 g = G.elements()[i];
    Coset c{g, {}};
    c.members.reserve(H.order());
    for (const Mat2& h : H.elements()) {
      const Mat2 gh = mul(F, g, h);
      assigned[*G.index_of(gh)] = true;
      c.members.push_back(gh);
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  if (out.size() * H.order() != G.order()) throw std::logic_error("cosets do not partition the group");
  return out;
}

TraceMultiset trace_multiset(const FieldSpec& F, const std::vector<Mat2>& members) {
  TraceMultiset out;
  for (const Mat2& m : members) ++out[trace(F, m)];
  return out;
}

std::uint64_t group_exponent(const MatGroup& G) {
  std::uint64_t e = 1;
  for (const Mat2& m : G.elements()) e = std::lcm(e, element_order(G.spec(), m));
  if (G.order() % e != 0) throw std::logic_error("exponent does not divide the group order");
  return e;
}

std::vector<Elt> determinant_image(const MatGroup& G) {
  std::vector<Elt> out;
  for (const Mat2& m : G.elements()) out.push_back(det(G.spec(), m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ProjGroup::ProjGroup(MatGroup base) : base_(std::move(base)) {
  const FieldSpec& F = spec();
  for (const Mat2& m : base_.elements()) {
    classes_.push_back(canonical(m));
    if (is_scalar(F, m)) ++kernel_;
  }
  std::sort(classes_.begin(), classes_.end());
  classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
  if (classes_.size() * kernel_ != base_.order()) {
    throw std::logic_error("projective image size inconsistent with scalar kernel");
  }
  const Mat2 id = identity(F);
  for (const Mat2& g : base_.generators()) {
    const Mat2 c = canonical(g);
    if (c != id) gens_.push_back(c);
  }
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

Mat2 ProjGroup::mul(const Mat2& x, const Mat2& y) const { return canonical(apcong::mul(spec(), x, y)); }

Mat2 ProjGroup::inverse(const Mat2& x) const { return canonical(apcong::inverse(spec(), x)); }

std::size_t ProjGroup::class_index(const Mat2& m) const {
  const Mat2 c = canonical(m);
  auto it = std::lower_bound(classes_.begin(), classes_.end(), c);
  if (it == classes_.end() || *it != c) throw GroupError("matrix is not in the projective group");
  return static_cast<std::size_t>(it - classes_.begin());
}

std::vector<Mat2> ProjGroup::commutator_classes() const {
  const Mat2 id = identity(spec());
  std::vector<Mat2> seeds;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      const Mat2 c = mul(mul(gens_[i], gens_[j]), inverse(mul(gens_[j], gens_[i])));
      if (c != id) seeds.push_back(c);
    }
  }
  auto op = [this](const Mat2& x, const Mat2& y) { return mul(x, y); };
  auto inv = [this](const Mat2& x) { return inverse(x); };
  return normal_closure(seeds, gens_, id, op, inv, MatGroup::kMaxOrder);
}

}  // namespace apcong
