#include "apcong_cli/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "apcong/abelian.hpp"

namespace apcong::cli {

namespace {

using ElementSet = std::vector<Mat2>;

// One generator for each cyclic subgroup, the least element generating it.
std::vector<Mat2> cyclic_generators(const FieldSpec& F, const std::vector<Mat2>& all) {
  std::set<ElementSet> seen;
  std::vector<Mat2> gens;
  for (const Mat2& g : all) {
    MatGroup C = close_group(F, {g});
    if (seen.insert(C.elements()).second) gens.push_back(g);
  }
  return gens;
}

}  // namespace

std::vector<Mat2> gl2_elements(const FieldSpec& F) {
  const std::uint32_t q = F.order();
  std::vector<Mat2> out;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        for (std::uint32_t d = 0; d < q; ++d) {
          const Mat2 m{Elt{a}, Elt{b}, Elt{c}, Elt{d}};
          if (det(F, m).code != 0) out.push_back(m);
        }
  std::sort(out.begin(), out.end());
  return out;
}

SubgroupCensus enumerate_subgroups(const FieldSpec& F, std::size_t max_gl2) {
  if (gl2_order(F.order()) > max_gl2) {
    throw std::invalid_argument("GL_2(F_" + std::to_string(F.order()) + ") is too large to enumerate");
  }
  const std::vector<Mat2> all = gl2_elements(F);
  const std::vector<Mat2> gens = cyclic_generators(F, all);

  SubgroupCensus census;
  std::map<ElementSet, MatGroup> found;
  auto add = [&](const std::vector<Mat2>& g) {
    ++census.closures;
    MatGroup H = close_group(F, g);
    ElementSet key = H.elements();
    found.emplace(std::move(key), std::move(H));
  };
  add({});
  for (std::size_t i = 0; i < gens.size(); ++i) {
    add({gens[i]});
    for (std::size_t j = i + 1; j < gens.size(); ++j) add({gens[i], gens[j]});
  }

  census.two_generated = found.size();

  std::vector<const MatGroup*> work;
  for (const auto& [key, H] : found) work.push_back(&H);
  while (!work.empty()) {
    const MatGroup H = *work.back();
    work.pop_back();
    for (const Mat2& g : gens) {
      if (H.contains(g)) continue;
      std::vector<Mat2> joined = H.generators();
      joined.push_back(g);
      ++census.closures;
      MatGroup K = close_group(F, joined);
      auto [it, fresh] = found.emplace(K.elements(), std::move(K));
      if (fresh) work.push_back(&it->second);
    }
  }
  census.complete = true;

  for (auto& [key, H] : found) census.subgroups.push_back(H);
  std::stable_sort(census.subgroups.begin(), census.subgroups.end(),
                   [](const MatGroup& x, const MatGroup& y) { return x.order() < y.order(); });
  return census;
}

OracleSummary run_oracle(const SubgroupCensus& census) {
  OracleSummary s;
  s.subgroups = census.subgroups.size();
  s.complete = census.complete;
  for (std::size_t i = 0; i < census.subgroups.size(); ++i) {
    const MatGroup& G = census.subgroups[i];
    const AbelianReport r = analyze(G);
    ++s.labels[r.dickson.label.to_string()];
    s.checks += r.crosscheck.checks.size();
    for (const Check& c : r.crosscheck.checks) {
      if (c.agrees()) continue;
      ++s.disagreements;
      std::string line = "subgroup " + std::to_string(i) + " (order " + std::to_string(G.order()) + ", " +
                         r.dickson.label.to_string() + "): " + c.name;
      if (c.x) line += " x=" + G.spec().format(*c.x);
      line += std::string(" predicted ") + (c.predicted ? "true" : "false");
      s.failures.push_back(std::move(line));
    }
  }
  return s;
}

}  // namespace apcong::cli
