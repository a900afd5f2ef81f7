#include "apcong/json_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace apcong {

namespace {

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::int64_t int_of(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> ints_of(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::int64_t> out;
  for (const Json& v : j) out.push_back(int_of(v, what));
  return out;
}

Json elts_to_json(const FieldSpec& F, const std::vector<Elt>& xs) {
  Json out = Json::array();
  for (Elt x : xs) out.push_back(to_json(F, x));
  return out;
}

Json labels(const std::vector<DicksonLabel>& ls) {
  Json out = Json::array();
  for (const DicksonLabel& l : ls) out.push_back(l.to_string());
  return out;
}

template <typename T, typename Parse>
std::vector<T> read_jsonl(std::istream& in, Parse parse) {
  std::vector<T> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Json to_json(const FieldSpec& F) {
  Json j;
  j["p"] = F.characteristic();
  j["r"] = F.degree();
  if (F.degree() > 1) j["modulus"] = F.modulus();
  return j;
}

FieldSpec field_from_json(const Json& j) {
  const std::int64_t p = int_of(field_of(j, "p"), "p");
  const std::int64_t r = j.contains("r") ? int_of(j.at("r"), "r") : 1;
  std::optional<std::vector<std::int64_t>> modulus;
  if (j.contains("modulus") && !j.at("modulus").is_null()) modulus = ints_of(j.at("modulus"), "modulus");
  try {
    return FieldSpec::make(p, static_cast<int>(r), modulus);
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad field: ") + e.what());
  }
}

Json to_json(const FieldSpec& F, Elt x) {
  if (F.degree() == 1) return Json(x.code);
  return Json(F.coeffs(x));
}

Elt elt_from_json(const FieldSpec& F, const Json& j) {
  if (j.is_number_integer()) return F.from_int(j.get<std::int64_t>());
  const std::vector<std::int64_t> c = ints_of(j, "field element");
  if (c.size() > static_cast<std::size_t>(F.degree())) throw FormatError("too many coefficients for the field");
  return F.from_coeffs(c);
}

Json to_json(const FieldSpec& F, const Mat2& m) {
  return Json::array({Json::array({to_json(F, m.a), to_json(F, m.b)}), Json::array({to_json(F, m.c), to_json(F, m.d)})});
}

Mat2 mat_from_json(const FieldSpec& F, const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2) {
    throw FormatError("a matrix is [[a, b], [c, d]]");
  }
  return Mat2{elt_from_json(F, j[0][0]), elt_from_json(F, j[0][1]), elt_from_json(F, j[1][0]), elt_from_json(F, j[1][1])};
}

GroupFile group_file_from_json(const Json& j) {
  GroupFile g{field_from_json(field_of(j, "field")), {}};
  const Json& gens = field_of(j, "generators");
  if (!gens.is_array()) throw FormatError("generators must be an array");
  for (const Json& m : gens) {
    const Mat2 x = mat_from_json(g.field, m);
    if (det(g.field, x).code == 0) throw FormatError("generator is singular");
    g.generators.push_back(x);
  }
  return g;
}

Json to_json(const GroupFile& g) {
  Json j;
  j["field"] = to_json(g.field);
  j["generators"] = Json::array();
  for (const Mat2& m : g.generators) j["generators"].push_back(to_json(g.field, m));
  return j;
}

Json group_summary(const MatGroup& G) {
  const FieldSpec& F = G.spec();
  Json j;
  j["field"] = to_json(F);
  j["order"] = G.order();
  j["generators"] = Json::array();
  for (const Mat2& m : G.generators()) j["generators"].push_back(to_json(F, m));
  Json traces = Json::array();
  for (const auto& [x, n] : trace_multiset(G)) traces.push_back(Json::array({to_json(F, x), n}));
  j["traces"] = traces;
  return j;
}

Json to_json(const MatGroup& G, const DicksonClass& cls) {
  Json j;
  j["label"] = cls.label.to_string();
  const bool cyclic_like = cls.is(DicksonKind::Cyclic) || cls.is(DicksonKind::Dihedral);
  j["n"] = cyclic_like ? Json(cls.label.param) : Json(nullptr);
  const bool subfield = cls.is(DicksonKind::PSL2) || cls.is(DicksonKind::PGL2);
  j["subfield_q"] = subfield ? Json(cls.label.param) : Json(nullptr);
  j["all_applicable"] = labels(cls.all_applicable);
  j["projective_order"] = cls.projective_order;
  Json w = Json::object();
  if (cls.borel) {
    w["extension"] = to_json(cls.borel->embedding.large);
    w["basis"] = to_json(cls.borel->embedding.large, cls.borel->basis);
  }
  if (cls.rotation) w["rotation"] = to_json(G.spec(), *cls.rotation);
  j["witness"] = w;
  return j;
}

std::string to_string(const Rational& c) { return std::to_string(c.numerator()) + "/" + std::to_string(c.denominator()); }

Json to_json(const AbelianReport& r) {
  const FieldSpec& F = r.group.spec();
  Json j;
  j["order"] = r.group.order();
  j["commutator_order"] = r.commutator.order();
  j["cosets"] = r.cosets.size();
  j["proper"] = elts_to_json(F, r.proper);
  Json per = Json::object();
  for (const ClassVerdict& v : r.per_class) {
    Json e;
    e["weak"] = v.weak;
    e["semi"] = v.semi;
    e["abelian"] = v.abelian;
    if (v.weak_witness) e["weak_witness"] = to_json(F, r.cosets[*v.weak_witness].representative);
    if (v.semi_witness) e["semi_witness"] = to_json(F, r.cosets[*v.semi_witness].representative);
    per[F.format(v.x)] = e;
  }
  j["per_class"] = per;
  j["totally"] = r.totally;
  j["c"] = to_string(r.density);
  j["dickson"] = to_json(r.group, r.dickson);
  j["determinants"] = elts_to_json(F, r.determinants);
  j["checks"] = r.crosscheck.checks.size();
  Json bad = Json::array();
  for (const Check& c : r.crosscheck.checks) {
    if (c.agrees()) continue;
    Json e;
    e["name"] = c.name;
    e["x"] = c.x ? to_json(F, *c.x) : Json(nullptr);
    e["predicted"] = c.predicted;
    e["observed"] = c.observed;
    bad.push_back(e);
  }
  j["disagreements"] = bad;
  j["consistent"] = r.consistent();
  return j;
}

Json to_json(const CongruenceReport& rep) {
  Json j;
  j["source"] = rep.source;
  j["ell"] = rep.ell;
  j["modulus"] = rep.modulus;
  j["samples"] = rep.samples;
  j["min_class_samples"] = rep.min_class_samples;
  j["empirical"] = true;
  Json classes = Json::array();
  for (const ClassDiscovery& d : rep.classes) {
    Json e;
    e["x"] = d.x;
    e["direction"] = to_string(d.direction);
    e["sup"] = d.sup;
    e["nec"] = d.nec;
    e["occurrences"] = d.occurrences;
    e["violations"] = d.violations;
    classes.push_back(e);
  }
  j["classes"] = classes;
  return j;
}

Json to_json(const ModulusBound& b) {
  Json j;
  j["N"] = b.N;
  j["ell"] = b.ell;
  j["case"] = to_string(b.kind);
  j["radical"] = b.radical;
  j["factor"] = b.factor;
  j["bound"] = b.bound;
  Json d = Json::array();
  for (const auto& [p, e] : b.decomposition) d.push_back(Json::array({p, e}));
  j["factorization"] = d;
  return j;
}

EllipticCurve curve_from_json(const Json& j) {
  EllipticCurve E;
  const Json& label = field_of(j, "label");
  if (!label.is_string()) throw FormatError("label must be a string");
  E.label = label.get<std::string>();
  const std::vector<std::int64_t> a = ints_of(field_of(j, "a"), "a");
  if (a.size() != 5) throw FormatError("a must list a1, a2, a3, a4, a6");
  std::copy(a.begin(), a.end(), E.a.begin());
  E.conductor = int_of(field_of(j, "conductor"), "conductor");
  if (E.conductor < 1) throw FormatError("conductor must be positive");
  return E;
}

ModularForm form_from_json(const Json& j) {
  ModularForm f;
  const Json& label = field_of(j, "label");
  if (!label.is_string()) throw FormatError("label must be a string");
  f.label = label.get<std::string>();
  f.weight = static_cast<int>(int_of(field_of(j, "weight"), "weight"));
  f.level = int_of(field_of(j, "level"), "level");
  f.coeffs = ints_of(field_of(j, "coeffs"), "coeffs");
  if (f.level < 1) throw FormatError("level must be positive");
  return f;
}

std::vector<EllipticCurve> read_curves_jsonl(std::istream& in) {
  return read_jsonl<EllipticCurve>(in, curve_from_json);
}

std::vector<ModularForm> read_forms_jsonl(std::istream& in) { return read_jsonl<ModularForm>(in, form_from_json); }

Claim claim_from_json(const Json& j) {
  static const std::map<std::string, Claim::Kind> kinds = {
      {"class_to_residues", Claim::Kind::class_to_residues},
      {"residue_to_traces", Claim::Kind::residue_to_traces},
      {"legendre", Claim::Kind::legendre},
      {"excludes", Claim::Kind::excludes},
  };
  Claim c;
  c.id = field_of(j, "id").get<std::string>();
  c.curve = field_of(j, "curve").get<std::string>();
  c.ell = int_of(field_of(j, "ell"), "ell");
  const auto kind = kinds.find(field_of(j, "kind").get<std::string>());
  if (kind == kinds.end()) throw FormatError("claim " + c.id + ": unknown kind");
  c.kind = kind->second;
  if (j.contains("modulus")) c.modulus = int_of(j.at("modulus"), "modulus");
  if (j.contains("classes")) {
    for (std::int64_t x : ints_of(j.at("classes"), "classes")) c.classes.push_back(static_cast<std::uint32_t>(mod_floor(x, c.ell)));
  }
  if (j.contains("residues")) c.residues = ints_of(j.at("residues"), "residues");
  if (j.contains("rows")) {
    const Json& rows = j.at("rows");
    if (!rows.is_object()) throw FormatError("claim " + c.id + ": rows must map residues to trace lists");
    for (const auto& [key, traces] : rows.items()) {
      std::int64_t r = 0;
      try {
        r = std::stoll(key);
      } catch (const std::exception&) {
        throw FormatError("claim " + c.id + ": row key " + key + " is not an integer");
      }
      c.rows.emplace_back(r, ints_of(traces, "traces"));
    }
  }
  if (j.contains("discriminants")) c.discriminants = ints_of(j.at("discriminants"), "discriminants");
  if (j.contains("iff")) c.iff = j.at("iff").get<bool>();
  if (j.contains("require_converse_failure")) c.require_converse_failure = j.at("require_converse_failure").get<bool>();
  if (j.contains("min_p")) c.min_p = int_of(j.at("min_p"), "min_p");
  if (c.ell < 2 || c.modulus < 1) throw FormatError("claim " + c.id + ": bad ell or modulus");
  return c;
}

std::vector<Claim> claims_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : field_of(j, "claims");
  if (!arr.is_array()) throw FormatError("claims must be an array");
  std::vector<Claim> out;
  try {
    for (const Json& c : arr) out.push_back(claim_from_json(c));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("claim: ") + e.what());
  }
  return out;
}

Json to_json(const ClaimResult& r) {
  Json j;
  j["id"] = r.id;
  j["checked"] = r.checked;
  j["violations"] = r.violations;
  j["converse_failures"] = r.converse_failures;
  j["first_converse_failure"] = r.first_converse_failure ? Json(*r.first_converse_failure) : Json(nullptr);
  j["passed"] = r.passed;
  j["detail"] = r.detail;
  return j;
}

}  // namespace apcong
