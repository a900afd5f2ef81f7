#include "apcong_cli/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "apcong/abelian.hpp"
#include "apcong/classify.hpp"
#include "apcong/discover.hpp"
#include "apcong/eigendata.hpp"
#include "apcong/json_io.hpp"
#include "apcong/numtheory.hpp"
#include "apcong_cli/oracle.hpp"

namespace apcong::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceOptions {
  std::string curves;
  std::string curve;
  std::string forms;
  std::string form;
  std::string csv;
  bool delta = false;
  std::int64_t ell = 0;
  std::int64_t pmax = 10000;
  std::int64_t level = 1;
};

void add_source_options(CLI::App* cmd, SourceOptions& o) {
  cmd->add_option("--curves", o.curves, "curve file (JSON lines)")->check(CLI::ExistingFile);
  cmd->add_option("--curve", o.curve, "curve label in --curves");
  cmd->add_option("--forms", o.forms, "form file (JSON lines)")->check(CLI::ExistingFile);
  cmd->add_option("--form", o.form, "form label in --forms");
  cmd->add_option("--csv", o.csv, "dataset dump with a p,ap_mod header")->check(CLI::ExistingFile);
  cmd->add_flag("--delta", o.delta, "the discriminant form Delta");
  cmd->add_option("--ell", o.ell, "residue characteristic")->required();
  cmd->add_option("--pmax", o.pmax, "largest prime sampled")->check(CLI::Range(std::int64_t{2}, kMaxPointCountPrime));
  cmd->add_option("--level", o.level, "level recorded for --csv data")->check(CLI::PositiveNumber);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return in;
}

EllipticCurve find_curve(const std::string& path, const std::string& label) {
  std::ifstream in = open_or_throw(path);
  for (EllipticCurve& E : read_curves_jsonl(in)) {
    if (E.label == label) return E;
  }
  throw FormatError("no curve " + label + " in " + path);
}

ApDataset load_dataset(const SourceOptions& o, std::ostream& err) {
  const int sources = !o.curves.empty() + !o.forms.empty() + !o.csv.empty() + o.delta;
  if (sources != 1) throw UsageError("give exactly one of --curves, --forms, --csv, --delta");
  if (!is_prime(o.ell)) throw UsageError("--ell must be prime");
  const FieldSpec F = FieldSpec::make(o.ell);
  if (!o.curves.empty()) {
    if (o.curve.empty()) throw UsageError("--curves needs --curve");
    const EllipticCurve E = find_curve(o.curves, o.curve);
    if (!E.conductor_consistent()) err << "warning: conductor of " << E.label << " does not match its equation\n";
    return build_dataset(E, F, o.pmax);
  }
  if (!o.forms.empty()) {
    if (o.form.empty()) throw UsageError("--forms needs --form");
    std::ifstream in = open_or_throw(o.forms);
    for (const ModularForm& f : read_forms_jsonl(in)) {
      if (f.label == o.form) return build_dataset(f, F, o.pmax);
    }
    throw FormatError("no form " + o.form + " in " + o.forms);
  }
  if (o.delta) {
    const QSeries delta = delta_coeffs(static_cast<std::size_t>(o.pmax), static_cast<std::uint64_t>(o.ell));
    return build_dataset(delta, "Delta", 1, F, o.pmax);
  }
  std::ifstream in = open_or_throw(o.csv);
  ApDataset ds{o.csv, o.level, F, read_dataset_csv(in)};
  for (const ApSample& s : ds.samples) {
    if (s.ap >= static_cast<std::uint32_t>(o.ell)) throw FormatError("a_p residue out of range at p = " + std::to_string(s.p));
  }
  return ds;
}

std::string join(const std::vector<std::int64_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + std::to_string(xs[i]);
  return s;
}

std::string display(const ClassDiscovery& d, std::int64_t M) {
  const std::string x = "a_p ≡ " + std::to_string(d.x);
  const std::string mod = " mod " + std::to_string(M);
  switch (d.direction) {
    case Direction::iff:
      return x + " ⟺ p ≡ " + join(d.sup) + mod;
    case Direction::both:
      return "p ≡ " + join(d.sup) + mod + " ⟹ " + x + " ⟹ p ≡ " + join(d.nec) + mod;
    case Direction::implied_by:
      return "p ≡ " + join(d.sup) + mod + " ⟹ " + x;
    case Direction::implies:
      return x + " ⟹ p ≡ " + join(d.nec) + mod;
    case Direction::none:
      break;
  }
  return x + ": no congruence" + mod;
}

Json discovery_json(const ClassDiscovery& d) {
  Json e;
  e["x"] = d.x;
  e["direction"] = to_string(d.direction);
  e["sup"] = d.sup;
  e["nec"] = d.nec;
  e["occurrences"] = d.occurrences;
  e["violations"] = d.violations;
  return e;
}

MatGroup load_group(const std::string& path) {
  const GroupFile g = group_file_from_json(read_json_file(path));
  return close_group(g.field, g.generators);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// classify ---------------------------------------------------------------

int cmd_classify(const std::string& group, bool json, std::ostream& out) {
  const MatGroup G = load_group(group);
  const DicksonClass cls = classify(G);
  const Rational c = density_c(G, cls);
  if (json) {
    Json j;
    j["group"] = group_summary(G);
    j["classification"] = to_json(G, cls);
    j["c"] = to_string(c);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  Json labels = to_json(G, cls)["all_applicable"];
  out << "order: " << G.order() << '\n';
  out << "projective order: " << cls.projective_order << '\n';
  out << "label: " << cls.label.to_string() << '\n';
  out << "all applicable:";
  for (const auto& l : labels) out << ' ' << l.get<std::string>();
  out << '\n';
  out << "c = " << to_string(c) << '\n';
  return kExitOk;
}

// analyze ----------------------------------------------------------------

int cmd_analyze(const std::string& group, std::int64_t level, bool json, std::ostream& out) {
  const MatGroup G = load_group(group);
  const AbelianReport r = analyze(G);
  std::optional<ModulusBound> bound;
  if (level > 0) {
    if (const auto kind = natural_bound_case(r.dickson)) bound = modulus_bound(G, level, *kind);
  }
  const FieldSpec& F = G.spec();
  if (json) {
    Json j = to_json(r);
    if (level > 0) j["modulus_bound"] = bound ? to_json(*bound) : Json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    out << "order " << G.order() << ", [G,G] order " << r.commutator.order() << ", " << r.cosets.size() << " cosets\n";
    out << "label: " << r.dickson.label.to_string() << '\n';
    out << "x\tweak\tsemi\tabelian\n";
    for (const ClassVerdict& v : r.per_class) {
      out << F.format(v.x) << '\t' << yes_no(v.weak) << '\t' << yes_no(v.semi) << '\t' << yes_no(v.abelian) << '\n';
    }
    out << "totally abelian: " << yes_no(r.totally) << '\n';
    out << "c = " << to_string(r.density) << '\n';
    if (bound) out << "modulus bound (" << to_string(bound->kind) << "): " << bound->bound << '\n';
    out << r.crosscheck.checks.size() << " checks, " << r.crosscheck.disagreements() << " disagreements\n";
    out << (r.consistent() ? "consistent" : "INCONSISTENT") << '\n';
  }
  return r.consistent() ? kExitOk : kExitInconsistent;
}

// dataset ----------------------------------------------------------------

int cmd_dataset(const SourceOptions& o, const std::string& path, std::ostream& out, std::ostream& err) {
  const ApDataset ds = load_dataset(o, err);
  if (path.empty() || path == "-") {
    write_dataset_csv(ds, out);
    return kExitOk;
  }
  std::ofstream f(path);
  if (!f) throw FormatError("cannot write " + path);
  write_dataset_csv(ds, f);
  return kExitOk;
}

// discover ---------------------------------------------------------------

struct DiscoverOptions {
  std::int64_t modulus = 0;
  std::int64_t bound = 0;
  bool legendre = false;
  std::int64_t cls = 0;
};

int cmd_discover(const SourceOptions& o, const DiscoverOptions& d, bool json, std::ostream& out, std::ostream& err) {
  if ((d.modulus > 0) == (d.bound > 0)) throw UsageError("give exactly one of --modulus, --bound");
  if (d.legendre && d.bound <= 0) throw UsageError("--legendre needs --bound");
  const ApDataset ds = load_dataset(o, err);
  if (d.modulus > 0) {
    const CongruenceReport rep = discover_all(ds, d.modulus);
    if (json) {
      out << to_json(rep).dump(2) << '\n';
      return kExitOk;
    }
    out << ds.source << " mod " << rep.ell << ", M = " << rep.modulus << ": " << rep.samples << " primes, at least "
        << rep.min_class_samples << " per residue class (empirical)\n";
    for (const ClassDiscovery& c : rep.classes) out << display(c, rep.modulus) << '\n';
    return kExitOk;
  }

  std::set<std::uint32_t> seen;
  for (const ApSample& s : ds.samples) seen.insert(s.ap);
  Json classes = Json::array();
  std::ostringstream table;
  table << ds.source << " mod " << ds.ell() << ", moduli dividing " << d.bound << " (empirical)\n";
  for (std::uint32_t x : seen) {
    const std::optional<std::int64_t> M = discover_modulus(ds, x, d.bound);
    Json e;
    e["x"] = x;
    e["modulus"] = M ? Json(*M) : Json(nullptr);
    if (M) {
      const ClassDiscovery c = discover(ds, x, *M);
      e["discovery"] = discovery_json(c);
      table << display(c, *M) << '\n';
    } else {
      table << "a_p ≡ " << x << ": no iff modulus dividing " << d.bound << '\n';
    }
    classes.push_back(e);
  }
  Json j;
  j["source"] = ds.source;
  j["ell"] = ds.ell();
  j["bound"] = d.bound;
  j["samples"] = ds.samples.size();
  j["empirical"] = true;
  j["classes"] = classes;
  if (d.legendre) {
    const auto x = static_cast<std::uint32_t>(mod_floor(d.cls, ds.ell()));
    Json fits = Json::array();
    for (const LegendreFit& f : legendre_fit(ds, x, legendre_candidates(d.bound))) {
      Json e;
      e["D"] = f.D;
      e["support"] = f.support;
      e["converse_failures"] = f.converse;
      e["iff"] = f.iff();
      fits.push_back(e);
      table << "(" << f.D << "/p) = -1 ⟹ a_p ≡ " << x << (f.iff() ? ", and conversely" : "") << " [" << f.support
            << " primes]\n";
    }
    j["legendre"] = fits;
  }
  if (json) {
    out << j.dump(2) << '\n';
  } else {
    out << table.str();
  }
  return kExitOk;
}

// verify -----------------------------------------------------------------

int verify_delta(const SourceOptions& o, bool json, std::ostream& out, std::ostream& err) {
  if (o.ell != 23) throw UsageError("--delta verification is the mod 23 partition; use --ell 23");
  const ApDataset ds = load_dataset(o, err);
  std::size_t partition_exceptions = 0;
  std::optional<std::int64_t> first;
  for (const ApSample& s : ds.samples) {
    std::uint32_t expected = 22;
    if (kronecker(-23, s.p) == -1) {
      expected = 0;
    } else if (quadform_represents(s.p, 1, 0, 23)) {
      expected = 2;
    }
    if (s.ap != expected) {
      ++partition_exceptions;
      if (!first) first = s.p;
    }
  }
  const GoodmodResult g = goodmod_check(ds);
  const std::size_t goodmod_exceptions = g.zero_but_square + g.nonsquare_but_nonzero;
  const std::size_t total = partition_exceptions + goodmod_exceptions;
  if (json) {
    Json j;
    j["source"] = ds.source;
    j["ell"] = ds.ell();
    j["pmax"] = o.pmax;
    j["primes"] = ds.samples.size();
    j["partition_exceptions"] = partition_exceptions;
    j["first_exception"] = first ? Json(*first) : Json(nullptr);
    j["goodmod"] = {{"zero_but_square", g.zero_but_square}, {"nonsquare_but_nonzero", g.nonsquare_but_nonzero}};
    j["exceptions"] = total;
    out << j.dump(2) << '\n';
  } else {
    out << "Delta mod 23, good p <= " << o.pmax << ": " << ds.samples.size() << " primes\n";
    out << "tau(p) = 0 / 2 / -1 by (-23/p) = -1 / p = x^2 + 23y^2 / otherwise: " << partition_exceptions
        << " exceptions\n";
    out << "tau(p) = 0 iff (p/23) = -1: " << goodmod_exceptions << " exceptions\n";
    out << total << " exceptions\n";
  }
  return total == 0 ? kExitOk : kExitInconsistent;
}

int verify_claims(const std::string& curves, const std::string& claims_path, std::int64_t pmax, const std::string& only,
                  bool json, std::ostream& out, std::ostream& err) {
  const std::vector<Claim> claims = claims_from_json(read_json_file(claims_path));
  std::map<std::pair<std::string, std::int64_t>, ApDataset> cache;
  Json results = Json::array();
  bool all = true;
  std::size_t ran = 0;
  std::ostringstream table;
  table << "claim\tchecked\tviolations\tconverse failures\tresult\n";
  for (const Claim& c : claims) {
    if (!only.empty() && c.id != only) continue;
    ++ran;
    const auto key = std::make_pair(c.curve, c.ell);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const EllipticCurve E = find_curve(curves, c.curve);
      if (!E.conductor_consistent()) err << "warning: conductor of " << E.label << " does not match its equation\n";
      it = cache.emplace(key, build_dataset(E, FieldSpec::make(c.ell), pmax)).first;
    }
    const ClaimResult r = verify_claim(c, it->second);
    all = all && r.passed;
    results.push_back(to_json(r));
    table << r.id << '\t' << r.checked << '\t' << r.violations << '\t' << r.converse_failures << '\t'
          << (r.passed ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
  }
  if (ran == 0) throw UsageError(only.empty() ? "no claims in " + claims_path : "no claim " + only);
  if (json) {
    Json j;
    j["pmax"] = pmax;
    j["results"] = results;
    j["passed"] = all;
    out << j.dump(2) << '\n';
  } else {
    out << table.str();
  }
  return all ? kExitOk : kExitInconsistent;
}

// oracle -----------------------------------------------------------------

int cmd_oracle(std::int64_t q, bool json, std::ostream& out) {
  const std::vector<PrimePower> f = q >= 2 ? factorize(q) : std::vector<PrimePower>{};
  if (f.size() != 1) throw UsageError("--field must be a prime power");
  const FieldSpec F = FieldSpec::make(f[0].first, f[0].second);
  const SubgroupCensus census = enumerate_subgroups(F);
  const OracleSummary s = run_oracle(census);
  if (json) {
    Json j;
    j["field"] = to_json(F);
    j["subgroups"] = s.subgroups;
    j["complete"] = s.complete;
    j["two_generated"] = census.two_generated;
    j["closures"] = census.closures;
    j["checks"] = s.checks;
    j["disagreements"] = s.disagreements;
    Json labels = Json::object();
    for (const auto& [l, n] : s.labels) labels[l] = n;
    j["labels"] = labels;
    j["failures"] = s.failures;
    j["consistent"] = s.consistent();
    out << j.dump(2) << '\n';
  } else {
    out << "GL_2(F_" << q << "): " << s.subgroups << " subgroups"
        << (s.complete ? " (closed under joins)" : " (INCOMPLETE)") << ", " << census.two_generated
        << " of them 2-generated\n";
    for (const auto& [l, n] : s.labels) out << "  " << l << ": " << n << '\n';
    out << s.checks << " checks, " << s.disagreements << " disagreements\n";
    for (const std::string& line : s.failures) out << "  " << line << '\n';
    out << (s.consistent() ? "consistent" : "INCONSISTENT") << '\n';
  }
  return s.consistent() ? kExitOk : kExitInconsistent;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Congruence conditions for traces of 2-dimensional mod-ell images", "apcong"};
  app.require_subcommand(1);
  std::string format = "table";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();

  std::string group;
  auto* classify_cmd = app.add_subcommand("classify", "Dickson label and zero-trace density of a group");
  classify_cmd->add_option("--group", group, "group file (JSON)")->required()->check(CLI::ExistingFile);

  std::int64_t level = 0;
  auto* analyze_cmd = app.add_subcommand("analyze", "per-class verdicts, density and theorem cross-checks");
  analyze_cmd->add_option("--group", group, "group file (JSON)")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--level", level, "level N, to report the modulus bound")->check(CLI::PositiveNumber);

  SourceOptions src;
  std::string out_path;
  auto* dataset_cmd = app.add_subcommand("dataset", "dump a_p mod ell as CSV");
  add_source_options(dataset_cmd, src);
  dataset_cmd->add_option("--out", out_path, "output file (default stdout)");

  DiscoverOptions disc;
  auto* discover_cmd = app.add_subcommand("discover", "empirical congruence conditions on p");
  add_source_options(discover_cmd, src);
  discover_cmd->add_option("--modulus", disc.modulus, "fixed modulus M")->check(CLI::PositiveNumber);
  discover_cmd->add_option("--bound", disc.bound, "search the divisors of this bound")->check(CLI::PositiveNumber);
  discover_cmd->add_flag("--legendre", disc.legendre, "also fit (D/p) = -1 for D dividing the bound");
  discover_cmd->add_option("--class", disc.cls, "class for --legendre")->capture_default_str();

  std::string curves;
  std::string claims;
  std::string only;
  auto* verify_cmd = app.add_subcommand("verify", "check printed congruences against computed a_p");
  add_source_options(verify_cmd, src);
  verify_cmd->get_option("--ell")->required(false);
  verify_cmd->add_option("--claims", claims, "claims file (JSON)")->check(CLI::ExistingFile);
  verify_cmd->add_option("--id", only, "only this claim");

  std::int64_t q = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force theorem check over all subgroups of GL_2(F_q)");
  oracle_cmd->add_option("--field", q, "field order q")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const bool json = format == "json";

  try {
    if (*classify_cmd) return cmd_classify(group, json, out);
    if (*analyze_cmd) return cmd_analyze(group, level, json, out);
    if (*dataset_cmd) return cmd_dataset(src, out_path, out, err);
    if (*discover_cmd) return cmd_discover(src, disc, json, out, err);
    if (*verify_cmd) {
      if (!claims.empty()) {
        if (src.curves.empty()) throw UsageError("--claims needs --curves");
        return verify_claims(src.curves, claims, src.pmax, only, json, out, err);
      }
      if (!src.delta) throw UsageError("verify needs --delta or --claims");
      return verify_delta(src, json, out, err);
    }
    if (*oracle_cmd) return cmd_oracle(q, json, out);
  } catch (const TheoremViolation& e) {
    err << "theorem violation: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace apcong::cli
