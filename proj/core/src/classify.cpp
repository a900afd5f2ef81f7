#include "apcong/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace apcong {

namespace {

Mat2 embed(const FieldEmbedding& e, const Mat2& m) { return Mat2{e(m.a), e(m.b), e(m.c), e(m.d)}; }

std::vector<Elt> sorted_unique(std::vector<Elt> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Common eigenvector of all generators over P^1(K): (1, 0) needs c = 0, and
// (x, 1) needs c x^2 + (d - a) x - b = 0.
std::optional<Mat2> common_eigenvector_basis(const FieldSpec& K, const std::vector<Mat2>& gens) {
  if (std::all_of(gens.begin(), gens.end(), [](const Mat2& g) { return g.c.code == 0; })) {
    return identity(K);
  }
  for (std::uint32_t code = 0; code < K.order(); ++code) {
    const Elt x{code};
    const bool ok = std::all_of(gens.begin(), gens.end(), [&](const Mat2& g) {
      const Elt v = K.sub(K.add(K.mul(g.c, K.mul(x, x)), K.mul(K.sub(g.d, g.a), x)), g.b);
      return v.code == 0;
    });
    if (ok) return Mat2{x, K.one(), K.one(), K.zero()};
  }
  return std::nullopt;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

bool diagonalisable_over_extension(const FieldSpec& F, const Mat2& m) {
  if (is_scalar(F, m)) return true;
  const Elt t = trace(F, m);
  if (F.characteristic() == 2) return t.code != 0;
  const Elt disc = F.sub(F.mul(t, t), F.mul(F.from_int(4), det(F, m)));
  return disc.code != 0;
}

BorelResult is_borel_conjugable(const MatGroup& G) {
  const FieldSpec& F = G.spec();
  const MatGroup H = commutator_subgroup(G);
  const Mat2 id = identity(F);
  const bool by_commutators = std::none_of(H.elements().begin(), H.elements().end(), [&](const Mat2& h) {
    return h != id && diagonalisable_over_extension(F, h);
  });

  FieldEmbedding emb = quadratic_extension(F);
  const FieldSpec& K = emb.large;
  std::vector<Mat2> gens;
  for (const Mat2& g : G.generators()) gens.push_back(embed(emb, g));
  const std::optional<Mat2> basis = common_eigenvector_basis(K, gens);

  if (by_commutators != basis.has_value()) {
    throw TheoremViolation("Borel criteria disagree: derived-subgroup test says " +
                           std::string(by_commutators ? "yes" : "no") + ", eigenvector search says " +
                           std::string(basis ? "yes" : "no"));
  }
  BorelResult out;
  out.conjugable = by_commutators;
  if (basis) {
    const Mat2 binv = inverse(K, *basis);
    for (const Mat2& g : gens) {
      if (mul(K, mul(K, binv, g), *basis).c.code != 0) {
        throw TheoremViolation("Borel witness basis does not triangularise a generator");
      }
    }
    out.witness = BorelWitness{std::move(emb), *basis};
  }
  return out;
}

std::string DicksonLabel::to_string() const {
  switch (kind) {
    case DicksonKind::BorelConjugable:
      return "BorelConjugable";
    case DicksonKind::Cyclic:
      return "Cyclic(" + std::to_string(param) + ")";
    case DicksonKind::Dihedral:
      return "Dihedral(" + std::to_string(param) + ")";
    case DicksonKind::PSL2:
      return "PSL2(F_" + std::to_string(param) + ")";
    case DicksonKind::PGL2:
      return "PGL2(F_" + std::to_string(param) + ")";
    case DicksonKind::A4:
      return "A4";
    case DicksonKind::S4:
      return "S4";
    case DicksonKind::A5:
      return "A5";
  }
  return "?";
}

bool DicksonClass::applicable(DicksonKind k) const {
  return std::any_of(all_applicable.begin(), all_applicable.end(), [k](const DicksonLabel& l) { return l.kind == k; });
}

std::optional<std::uint64_t> DicksonClass::dihedral_n() const {
  for (const auto& l : all_applicable) {
    if (l.kind == DicksonKind::Dihedral) return l.param;
  }
  return std::nullopt;
}

bool DicksonClass::coprime_dihedral() const {
  return label.kind == DicksonKind::Dihedral && label.param % characteristic != 0;
}

std::uint64_t psl2_order(std::uint64_t q) { return q * (q * q - 1) / std::gcd<std::uint64_t>(2, q - 1); }

std::uint64_t pgl2_order(std::uint64_t q) { return q * (q * q - 1); }

DicksonClass classify_projective(const ProjGroup& P) {
  const FieldSpec& F = P.spec();
  const std::uint64_t m = P.order();
  const std::uint32_t ell = F.characteristic();

  std::vector<std::uint64_t> orders;
  orders.reserve(m);
  std::map<std::uint64_t, std::size_t> order_stats;
  for (const Mat2& c : P.classes()) {
    orders.push_back(P.element_order(c));
    ++order_stats[orders.back()];
  }

  DicksonClass out;
  out.projective_order = m;
  out.characteristic = ell;

  BorelResult borel = is_borel_conjugable(P.base());
  if (borel.conjugable) {
    out.all_applicable.push_back({DicksonKind::BorelConjugable, 0});
    out.borel = std::move(borel.witness);
  }

  if (order_stats.count(m) > 0) out.all_applicable.push_back({DicksonKind::Cyclic, m});

  // Dihedral: an index-2 cyclic subgroup whose complement is all involutions.
  if (m >= 4 && m % 2 == 0) {
    const std::uint64_t n = m / 2;
    for (std::size_t i = 0; i < P.classes().size() && !out.rotation; ++i) {
      if (orders[i] != n) continue;
      const Mat2 r = P.classes()[i];
      std::vector<Mat2> rotations{identity(F)};
      for (std::uint64_t k = 1; k < n; ++k) rotations.push_back(P.mul(rotations.back(), r));
      std::sort(rotations.begin(), rotations.end());
      bool complement_involutive = true;
      for (std::size_t j = 0; j < P.classes().size() && complement_involutive; ++j) {
        if (!std::binary_search(rotations.begin(), rotations.end(), P.classes()[j])) {
          complement_involutive = orders[j] == 2;
        }
      }
      if (complement_involutive) out.rotation = r;
    }
    if (out.rotation) out.all_applicable.push_back({DicksonKind::Dihedral, n});
  }

  // PSL2/PGL2 of a subfield: order match, perfect derived subgroup of the
  // right size, and traces on [G, G] filling out the subfield.
  std::vector<DicksonLabel> subfield_labels;
  for (int d = 1; d <= F.degree(); ++d) {
    if (F.degree() % d != 0) continue;
    const std::uint64_t qq = ipow(ell, d);
    const std::uint64_t psl = psl2_order(qq);
    const std::uint64_t pgl = pgl2_order(qq);
    if (m != psl && m != pgl) continue;
    if (qq <= 3) {
      // PSL2(F_2) = PGL2(F_2) ~ S3, PSL2(F_3) ~ A4, PGL2(F_3) ~ S4.
      const bool s3 = qq == 2 && m == 6 && out.rotation.has_value();
      const bool a4 = qq == 3 && m == 12 && order_stats == std::map<std::uint64_t, std::size_t>{{1, 1}, {2, 3}, {3, 8}};
      const bool s4 = qq == 3 && m == 24 &&
                      order_stats == std::map<std::uint64_t, std::size_t>{{1, 1}, {2, 9}, {3, 8}, {4, 6}};
      if (s3) subfield_labels.push_back({DicksonKind::PGL2, qq});
      if (a4) subfield_labels.push_back({DicksonKind::PSL2, qq});
      if (s4) subfield_labels.push_back({DicksonKind::PGL2, qq});
      continue;
    }
    const std::vector<Mat2> derived = P.commutator_classes();
    if (derived.size() != psl) continue;
    const std::vector<Elt> sub = F.subfield(d);
    const MatGroup H = commutator_subgroup(P.base());
    std::vector<Elt> traces;
    for (const Mat2& h : H.elements()) traces.push_back(trace(F, h));
    if (sorted_unique(traces) != sub) continue;
    const bool is_pgl = m == pgl && (m != psl || qq % 2 == 0);
    subfield_labels.push_back({is_pgl ? DicksonKind::PGL2 : DicksonKind::PSL2, qq});
  }
  out.all_applicable.insert(out.all_applicable.end(), subfield_labels.begin(), subfield_labels.end());

  using Stats = std::map<std::uint64_t, std::size_t>;
  if (m == 12 && order_stats == Stats{{1, 1}, {2, 3}, {3, 8}}) out.all_applicable.push_back({DicksonKind::A4, 0});
  if (m == 24 && order_stats == Stats{{1, 1}, {2, 9}, {3, 8}, {4, 6}}) {
    out.all_applicable.push_back({DicksonKind::S4, 0});
  }
  if (m == 60 && order_stats == Stats{{1, 1}, {2, 15}, {3, 20}, {5, 24}}) {
    out.all_applicable.push_back({DicksonKind::A5, 0});
  }

  // Primary label by precedence; PSL2/PGL2 only over subfields with q > 3.
  auto pick = [&]() -> std::optional<DicksonLabel> {
    for (DicksonKind k : {DicksonKind::BorelConjugable, DicksonKind::Cyclic, DicksonKind::Dihedral}) {
      for (const auto& l : out.all_applicable) {
        if (l.kind == k) return l;
      }
    }
    for (const auto& l : out.all_applicable) {
      if ((l.kind == DicksonKind::PSL2 || l.kind == DicksonKind::PGL2) && l.param > 3) return l;
    }
    for (DicksonKind k : {DicksonKind::A4, DicksonKind::S4, DicksonKind::A5}) {
      for (const auto& l : out.all_applicable) {
        if (l.kind == k) return l;
      }
    }
    return std::nullopt;
  };
  const auto primary = pick();
  if (!primary) {
    throw TheoremViolation("projective image of order " + std::to_string(m) + " matches no Dickson type");
  }
  out.label = *primary;
  return out;
}

std::size_t traceless_count(const ProjGroup& P) {
  const FieldSpec& F = P.spec();
  return static_cast<std::size_t>(std::count_if(P.classes().begin(), P.classes().end(),
                                                 [&](const Mat2& c) { return trace(F, c).code == 0; }));
}

std::optional<Elt> golden_ratio(const FieldSpec& F) {
  if (F.characteristic() == 2) return std::nullopt;
  if (F.characteristic() == 5) return F.from_int(3);
  const auto s = F.sqrt(F.from_int(5));
  if (!s) return std::nullopt;
  return F.div(F.add(F.one(), *s), F.from_int(2));
}

std::optional<std::vector<Elt>> predicted_commutator_traces(const FieldSpec& F, const DicksonClass& cls) {
  const std::uint32_t ell = F.characteristic();
  auto pm = [&](std::initializer_list<Elt> xs) {
    std::vector<Elt> out{F.zero()};
    for (Elt x : xs) {
      out.push_back(x);
      out.push_back(F.neg(x));
    }
    return sorted_unique(out);
  };
  switch (cls.label.kind) {
    case DicksonKind::A4:
      if (ell == 2) return std::nullopt;
      return pm({F.from_int(2)});
    case DicksonKind::S4:
      return pm({F.one(), F.from_int(2)});
    case DicksonKind::A5: {
      const auto phi = golden_ratio(F);
      if (!phi) return std::nullopt;
      return pm({F.one(), F.from_int(2), *phi, F.sub(*phi, F.one())});
    }
    case DicksonKind::PSL2:
    case DicksonKind::PGL2: {
      int d = 1;
      while (ipow(ell, d) != cls.label.param) ++d;
      return F.subfield(d);
    }
    default:
      return std::nullopt;
  }
}

std::vector<Elt> commutator_trace_set(const MatGroup& G, const DicksonClass& cls) {
  const FieldSpec& F = G.spec();
  const MatGroup H = commutator_subgroup(G);
  std::vector<Elt> traces;
  for (const Mat2& h : H.elements()) traces.push_back(trace(F, h));
  traces = sorted_unique(std::move(traces));
  if (const auto predicted = predicted_commutator_traces(F, cls); predicted && *predicted != traces) {
    throw TheoremViolation("traces on the derived subgroup differ from the prediction for " + cls.label.to_string());
  }
  return traces;
}

std::vector<Elt> commutator_trace_set(const MatGroup& G) { return commutator_trace_set(G, classify(G)); }

}  // namespace apcong
