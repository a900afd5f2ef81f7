#include "apcong/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace apcong {

namespace {

std::vector<Elt> distinct_traces(const FieldSpec& F, const std::vector<Mat2>& members) {
  std::vector<Elt> out;
  out.reserve(members.size());
  for (const Mat2& m : members) out.push_back(trace(F, m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool has(const std::vector<Elt>& sorted, Elt x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

struct CosetData {
  MatGroup commutator;
  std::vector<Coset> cosets;
  std::vector<std::vector<Elt>> traces;
};

CosetData coset_data(const MatGroup& G) {
  CosetData d{commutator_subgroup(G), {}, {}};
  d.cosets = cosets(G, d.commutator);
  for (const Coset& c : d.cosets) d.traces.push_back(distinct_traces(G.spec(), c.members));
  return d;
}

void require_proper(const MatGroup& G, Elt x) {
  if (!has(proper_classes(G), x)) {
    throw std::invalid_argument("class " + G.spec().format(x) + " is not attained as a trace on the group");
  }
}

std::optional<std::size_t> first_weak(const std::vector<std::vector<Elt>>& traces, Elt x) {
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (traces[i].size() == 1 && traces[i][0] == x) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_avoiding(const std::vector<std::vector<Elt>>& traces, Elt x) {
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (!has(traces[i], x)) return i;
  }
  return std::nullopt;
}

bool all_or_nothing(const std::vector<std::vector<Elt>>& traces, Elt x) {
  return std::all_of(traces.begin(), traces.end(), [x](const std::vector<Elt>& t) {
    return (t.size() == 1 && t[0] == x) || !has(t, x);
  });
}

bool all_constant(const std::vector<std::vector<Elt>>& traces) {
  return std::all_of(traces.begin(), traces.end(), [](const std::vector<Elt>& t) { return t.size() == 1; });
}

Rational traceless_fraction(const MatGroup& G) {
  const FieldSpec& F = G.spec();
  const auto zeros = std::count_if(G.elements().begin(), G.elements().end(),
                                   [&](const Mat2& m) { return trace(F, m).code == 0; });
  return Rational(static_cast<std::int64_t>(zeros), static_cast<std::int64_t>(G.order()));
}

std::optional<Rational> predicted_density(const DicksonClass& cls) {
  const auto q = static_cast<std::int64_t>(cls.label.param);
  const bool even_char = cls.characteristic == 2;
  switch (cls.label.kind) {
    case DicksonKind::PGL2:
      return Rational(q, (q - 1) * (q + 1));
    case DicksonKind::PSL2: {
      const std::int64_t eps = ((q + 1) / 2) % 2 == 0 ? 1 : -1;
      return Rational(1, q + eps);
    }
    case DicksonKind::Dihedral: {
      const auto n = static_cast<std::int64_t>(cls.label.param);
      if (n % 2 == 1 && !even_char) return Rational(1, 2);
      return Rational(1, 2) + Rational(1, 2 * n);
    }
    case DicksonKind::A4:
      return even_char ? Rational(1, 3) : Rational(1, 4);
    case DicksonKind::S4:
      return even_char ? Rational(5, 12) : Rational(3, 8);
    case DicksonKind::A5:
      return even_char ? Rational(4, 15) : Rational(1, 4);
    default:
      return std::nullopt;
  }
}

bool is_pm_one(const FieldSpec& F, const std::vector<Elt>& dets) {
  std::vector<Elt> pm{F.one(), F.neg(F.one())};
  std::sort(pm.begin(), pm.end());
  return dets == pm;
}

bool within_subfield(const FieldSpec& F, int d, const std::vector<Elt>& xs) {
  const std::vector<Elt> sub = F.subfield(d);
  return std::all_of(xs.begin(), xs.end(), [&](Elt x) { return has(sub, x); });
}

int subfield_degree(const FieldSpec& F, std::uint64_t q) {
  int d = 1;
  std::uint64_t pd = F.characteristic();
  while (pd < q) {
    pd *= F.characteristic();
    ++d;
  }
  if (pd != q || F.degree() % d != 0) throw std::logic_error("label refers to a non-subfield");
  return d;
}

// Images of odd representations contain a complex-conjugation shaped
// element: an involution of determinant -1. Vacuous in characteristic 2.
bool odd_image(const MatGroup& G) {
  const FieldSpec& F = G.spec();
  if (F.characteristic() == 2) return true;
  const Mat2 id = identity(F);
  const Elt minus_one = F.neg(F.one());
  return std::any_of(G.elements().begin(), G.elements().end(),
                     [&](const Mat2& g) { return det(F, g) == minus_one && mul(F, g, g) == id; });
}

bool scalars_in_prime_field(const MatGroup& G) {
  const FieldSpec& F = G.spec();
  return std::all_of(G.elements().begin(), G.elements().end(), [&](const Mat2& g) {
    const auto s = is_scalar(F, g);
    return !s || F.in_prime_field(*s);
  });
}

// The icosahedral exceptions for x != 0.
bool a5_semi(const FieldSpec& F, const std::vector<Elt>& dets, Elt x) {
  const std::uint32_t ell = F.characteristic();
  if (ell == 2) {
    const int d = F.degree() % 2 == 0 ? 2 : 1;
    if (within_subfield(F, d, dets)) return !within_subfield(F, d, {x});
    return true;
  }
  if (!is_pm_one(F, dets)) return true;
  auto pm = [&](std::initializer_list<Elt> xs) {
    return std::any_of(xs.begin(), xs.end(), [&](Elt y) { return x == y || x == F.neg(y); });
  };
  switch (ell) {
    case 3: {
      const auto phi = golden_ratio(F);
      if (!phi) throw TheoremViolation("icosahedral image in characteristic 3 without the golden ratio");
      return !pm({*phi, F.sub(*phi, F.one())});
    }
    case 5:
      return false;
    case 29:
      return !pm({F.from_int(2), F.from_int(5)});
    default:
      return true;
  }
}

// Whether the traceless classes of the projective image form a union of
// cosets of its derived subgroup.
bool projective_traceless_union(const MatGroup& G) {
  const ProjGroup P(G);
  const FieldSpec& F = P.spec();
  const std::vector<Mat2> H = P.commutator_classes();
  for (const Mat2& t : P.classes()) {
    if (trace(F, t).code != 0) continue;
    for (const Mat2& h : H) {
      if (trace(F, P.mul(t, h)).code != 0) return false;
    }
  }
  return true;
}

bool commutator_projects_well(const MatGroup& G, const MatGroup& D) {
  const ProjGroup P(G);
  const ProjGroup PD(D);
  std::vector<Mat2> image = P.commutator_classes();
  std::sort(image.begin(), image.end());
  if (PD.classes() != image) return false;
  if (PD.scalar_kernel_size() > 2) return false;
  const FieldSpec& F = G.spec();
  return std::all_of(D.elements().begin(), D.elements().end(), [&](const Mat2& m) {
    const auto s = is_scalar(F, m);
    return !s || *s == F.one() || *s == F.neg(F.one());
  });
}

}  // namespace

std::vector<Elt> proper_classes(const MatGroup& G) { return distinct_traces(G.spec(), G.elements()); }

CosetVerdict is_weakly_abelian(const MatGroup& G, Elt x) {
  require_proper(G, x);
  CosetData d = coset_data(G);
  const auto i = first_weak(d.traces, x);
  if (!i) return {};
  return {true, d.cosets[*i]};
}

CosetVerdict is_semi_abelian(const MatGroup& G, Elt x) {
  require_proper(G, x);
  CosetData d = coset_data(G);
  const auto i = first_avoiding(d.traces, x);
  if (!i) return {};
  return {true, d.cosets[*i]};
}

bool is_abelian_for(const MatGroup& G, Elt x) {
  require_proper(G, x);
  return all_or_nothing(coset_data(G).traces, x);
}

bool is_totally_abelian(const MatGroup& G) {
  const bool constant = all_constant(coset_data(G).traces);
  const bool borel = is_borel_conjugable(G).conjugable;
  if (constant != borel) {
    throw TheoremViolation(std::string("constant-trace cosets ") + (constant ? "hold" : "fail") +
                           " but Borel-conjugability " + (borel ? "holds" : "fails"));
  }
  return constant;
}

bool density_admissible(const Rational& c, const DicksonClass& cls, const FieldSpec& F) {
  if (const auto want = predicted_density(cls)) return c == *want;
  if (cls.label.kind != DicksonKind::BorelConjugable) return false;
  if (c.numerator() == 0) return true;
  if (c.numerator() != 1) return false;
  const std::int64_t d = c.denominator();
  const std::int64_t q = F.order();
  if (F.characteristic() != 2 && d % 2 != 0) return false;
  return (q - 1) % d == 0 || (q + 1) % d == 0;
}

Rational density_c(const MatGroup& G, const DicksonClass& cls) {
  const Rational c = traceless_fraction(G);
  if (!density_admissible(c, cls, G.spec())) {
    throw TheoremViolation("traceless fraction " + std::to_string(c.numerator()) + "/" +
                           std::to_string(c.denominator()) + " does not match " + cls.label.to_string());
  }
  return c;
}

Rational density_c(const MatGroup& G) { return density_c(G, classify(G)); }

std::size_t CrosscheckReport::disagreements() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.agrees(); }));
}

const ClassVerdict& AbelianReport::verdict(Elt x) const {
  for (const ClassVerdict& v : per_class) {
    if (v.x == x) return v;
  }
  throw std::invalid_argument("class is not proper for this group");
}

AbelianReport analyze(const MatGroup& G) {
  CosetData d = coset_data(G);
  AbelianReport r{G, d.commutator, std::move(d.cosets), std::move(d.traces), proper_classes(G), {}, false, Rational(0),
                  classify(G), determinant_image(G), {}};
  for (Elt x : r.proper) {
    ClassVerdict v;
    v.x = x;
    v.weak_witness = first_weak(r.coset_traces, x);
    v.semi_witness = first_avoiding(r.coset_traces, x);
    v.weak = v.weak_witness.has_value();
    v.semi = v.semi_witness.has_value();
    v.abelian = all_or_nothing(r.coset_traces, x);
    r.per_class.push_back(v);
  }
  r.totally = all_constant(r.coset_traces);
  r.density = traceless_fraction(G);
  r.crosscheck = theorem_crosscheck(r);
  return r;
}

std::optional<bool> predicted_semi(const AbelianReport& r, Elt x) {
  const FieldSpec& F = r.group.spec();
  const DicksonClass& cls = r.dickson;
  const std::uint32_t ell = F.characteristic();
  const bool zero = x.code == 0;
  switch (cls.label.kind) {
    case DicksonKind::BorelConjugable:
      return !(r.proper.size() == 1 && r.proper[0] == x);
    case DicksonKind::PSL2:
    case DicksonKind::PGL2: {
      if (zero || cls.label.param == F.order()) return false;
      if (!odd_image(r.group)) return std::nullopt;
      if (!within_subfield(F, subfield_degree(F, cls.label.param), r.determinants)) return true;
      if (cls.applicable(DicksonKind::A5)) return a5_semi(F, r.determinants, x);
      return std::nullopt;
    }
    case DicksonKind::Dihedral:
      if (!zero) return true;
      return cls.label.param % 2 == 0 || ell != 2;
    case DicksonKind::A4:
    case DicksonKind::S4: {
      if (zero) return cls.label.kind == DicksonKind::A4;
      if (!odd_image(r.group)) return std::nullopt;
      if (!(ell == 3 && is_pm_one(F, r.determinants))) return true;
      if (x != F.one() && x != F.neg(F.one())) return true;
      // A scalar outside F_3 (e.g. i with i^2 = -1 in F_9) moves [G, G] to
      // a coset avoiding +-1, so the exception needs the scalars inside F_3.
      if (!scalars_in_prime_field(r.group)) return std::nullopt;
      return false;
    }
    case DicksonKind::A5:
      if (zero) return false;
      if (!odd_image(r.group)) return std::nullopt;
      return a5_semi(F, r.determinants, x);
    case DicksonKind::Cyclic:
      return std::nullopt;
  }
  return std::nullopt;
}

CrosscheckReport theorem_crosscheck(const AbelianReport& r) {
  const FieldSpec& F = r.group.spec();
  const DicksonClass& cls = r.dickson;
  const std::uint32_t ell = F.characteristic();
  const bool borel = cls.is(DicksonKind::BorelConjugable);
  CrosscheckReport out;
  auto add = [&](std::string name, std::optional<Elt> x, bool predicted, bool observed) {
    out.checks.push_back(Check{std::move(name), x, predicted, observed});
  };

  add("main1", std::nullopt, borel, r.totally);

  bool some_weak = false;
  bool weak_only_zero = true;
  bool some_abelian = false;
  bool abelian_only_zero = true;
  for (const ClassVerdict& v : r.per_class) {
    if (v.x.code != 0 && v.weak) add("weaklab", v.x, true, borel);
    if (!r.totally) {
      some_weak = some_weak || v.weak;
      weak_only_zero = weak_only_zero && (!v.weak || v.x.code == 0);
      some_abelian = some_abelian || v.abelian;
      abelian_only_zero = abelian_only_zero && (!v.abelian || v.x.code == 0);
    }
  }

  const bool coprime_dihedral = cls.coprime_dihedral() && cls.label.param > 1;
  add("main2", std::nullopt, coprime_dihedral, some_weak);
  add("main2.class", std::nullopt, true, weak_only_zero);
  const std::uint64_t n = cls.label.param;
  add("main3", std::nullopt, coprime_dihedral && (n == 2 || n % 2 == 1) && ell != 2, some_abelian);
  add("main3.class", std::nullopt, true, abelian_only_zero);

  if (const auto dn = cls.dihedral_n()) add("exclusive", std::nullopt, *dn % ell == 0, cls.borel.has_value());

  for (const ClassVerdict& v : r.per_class) {
    if (const auto p = predicted_semi(r, v.x)) add("main4.semi", v.x, *p, v.semi);
  }

  add("density", std::nullopt, true, density_admissible(r.density, cls, F));

  if (const auto want = predicted_commutator_traces(F, cls)) {
    add("trace_set", std::nullopt, true, distinct_traces(F, r.commutator.elements()) == *want);
  }

  add("cominj", std::nullopt, true, commutator_projects_well(r.group, r.commutator));

  if (has(r.proper, F.zero())) {
    add("red2", F.zero(), r.verdict(F.zero()).abelian, projective_traceless_union(r.group));
  }
  return out;
}

std::string to_string(BoundCase c) {
  switch (c) {
    case BoundCase::Borel:
      return "Borel";
    case BoundCase::DihedralWeak:
      return "DihedralWeak";
    case BoundCase::D2:
      return "D2";
  }
  return "?";
}

ModulusBound modulus_bound(std::int64_t N, std::int64_t ell, BoundCase kind, std::uint64_t exponent) {
  if (N < 1) throw std::invalid_argument("level must be positive");
  if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell))) throw std::invalid_argument("ell must be prime");
  ModulusBound b;
  b.N = N;
  b.ell = ell;
  b.kind = kind;
  b.radical = radical(N * ell);
  switch (kind) {
    case BoundCase::Borel:
      if (exponent == 0) throw std::invalid_argument("Borel bound needs the exponent of the semisimplified image");
      b.factor = supported_part(2 * static_cast<std::int64_t>(exponent), prime_divisors(N * ell));
      break;
    case BoundCase::DihedralWeak: {
      const std::int64_t g = gcd64(2, N * ell);
      b.factor = g * g;
      break;
    }
    case BoundCase::D2: {
      const std::int64_t g = gcd64(2, N);
      b.factor = g * g;
      break;
    }
  }
  b.bound = b.radical * b.factor;
  b.decomposition = factorize(b.bound);
  return b;
}

std::uint64_t semisimple_exponent(const MatGroup& G) {
  const BorelResult br = is_borel_conjugable(G);
  if (!br.witness) throw std::invalid_argument("group is not Borel-conjugable");
  const FieldEmbedding& e = br.witness->embedding;
  const FieldSpec& K = e.large;
  const Mat2 B = br.witness->basis;
  const Mat2 Binv = inverse(K, B);
  std::uint64_t out = 1;
  for (const Mat2& g : G.elements()) {
    const Mat2 t = mul(K, mul(K, Binv, Mat2{e(g.a), e(g.b), e(g.c), e(g.d)}), B);
    if (t.c.code != 0) throw TheoremViolation("Borel witness fails on a group element");
    out = std::lcm(out, std::lcm(K.mult_order(t.a), K.mult_order(t.d)));
  }
  return out;
}

std::optional<BoundCase> natural_bound_case(const DicksonClass& cls) {
  if (cls.is(DicksonKind::BorelConjugable)) return BoundCase::Borel;
  if (cls.coprime_dihedral() && cls.label.param > 1) {
    if (cls.label.param == 2 && cls.characteristic != 2) return BoundCase::D2;
    return BoundCase::DihedralWeak;
  }
  return std::nullopt;
}

ModulusBound modulus_bound(const MatGroup& G, std::int64_t N, BoundCase kind) {
  const DicksonClass cls = classify(G);
  const auto ell = static_cast<std::int64_t>(G.spec().characteristic());
  bool ok = false;
  switch (kind) {
    case BoundCase::Borel:
      ok = cls.is(DicksonKind::BorelConjugable);
      break;
    case BoundCase::DihedralWeak:
      ok = cls.coprime_dihedral() && cls.label.param > 1;
      break;
    case BoundCase::D2:
      ok = cls.is(DicksonKind::Dihedral) && cls.label.param == 2 && ell != 2;
      break;
  }
  if (!ok) {
    throw std::invalid_argument("bound case " + to_string(kind) + " does not apply to image " + cls.label.to_string());
  }
  return modulus_bound(N, ell, kind, kind == BoundCase::Borel ? semisimple_exponent(G) : 0);
}

}  // namespace apcong
