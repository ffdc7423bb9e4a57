// Python bindings over the default 6-control/3-noise instance. Designs cross
// the language boundary as occupancy words; exact rationals as "num/den"
// strings (the package wrapper turns them into fractions.Fraction).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crossidf/artifacts.hpp"

namespace py = pybind11;
using namespace crossidf;

namespace {

FactorSpec spec() { return FactorSpec::default_instance(); }

Design design_of(std::uint64_t word) { return Design::from_word(spec(), word); }

std::vector<UniformityConstraint> to_constraints(
    const std::vector<std::pair<std::vector<int>, bool>>& raw) {
  std::vector<UniformityConstraint> out;
  for (const auto& [T, star] : raw) out.push_back({T, star});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-level cross-array designs via polynomial indicator functions";

  m.def(
      "enumerate_words",
      [](int runs, int workers, const std::vector<std::pair<std::vector<int>, bool>>& require,
         const std::vector<std::pair<std::vector<int>, bool>>& forbid) {
        ConstraintSet cs = build_constraints(spec(), runs);
        for (auto& c : to_constraints(require)) cs.require_uniform.push_back(c);
        cs.forbid_uniform = to_constraints(forbid);
        std::vector<std::uint64_t> words;
        for (const auto& d : enumerate_designs(cs, workers)) words.push_back(d.word());
        return words;
      },
      py::arg("runs") = 24, py::arg("workers") = 1,
      py::arg("require_uniform") = std::vector<std::pair<std::vector<int>, bool>>{},
      py::arg("forbid_uniform") = std::vector<std::pair<std::vector<int>, bool>>{},
      "All occupancy words satisfying the constraints, ascending");

  m.def(
      "classify_orbits",
      [](const std::vector<std::uint64_t>& words) {
        std::vector<Design> ds;
        for (const std::uint64_t w : words) ds.push_back(design_of(w));
        const OrbitPartition p = classify_orbits(ds);
        py::dict out;
        out["orbits"] = p.orbits;
        out["canonical"] = p.canonical;
        out["stabilizer_orders"] = p.stabilizer_orders;
        return out;
      },
      py::arg("words"), "Partition of the given words under the 2304-element group");

  m.def(
      "anchored_representatives",
      [](const std::vector<std::uint64_t>& words,
         const std::vector<std::vector<int>>& anchors) {
        std::vector<std::uint64_t> out;
        std::vector<Design> ds;
        for (const std::uint64_t w : words) ds.push_back(design_of(w));
        for (const auto& d : canonical_reps(ds, anchors)) out.push_back(d.word());
        return out;
      },
      py::arg("words"), py::arg("anchors") = default_anchors(),
      "Words of the designs containing every anchor point");

  m.def("canonical_word", [](std::uint64_t w) { return canonical_word(w); }, py::arg("word"),
        "Lexicographically smallest occupancy word in the orbit");

  m.def(
      "design_points",
      [](std::uint64_t w, bool star) { return design_of(w).points(star); },
      py::arg("word"), py::arg("star") = false,
      "Design points in canonical order, star or free coordinates");

  m.def(
      "word_from_points",
      [](const std::vector<std::vector<int>>& pts) {
        return Design::from_points(spec(), pts).word();
      },
      py::arg("points"), "Occupancy word of the design with the given points");

  m.def(
      "indicator_terms",
      [](std::uint64_t w) {
        const Design d = design_of(w);
        const auto p = coeffs_from_response01(d.u, d.spec.free_factors());
        std::vector<std::pair<std::vector<int>, std::string>> terms;
        for (const auto& [mask, v] : p.coeffs) {
          std::vector<int> support;
          for (int j = 0; j < p.n; ++j)
            if (mask >> j & 1u) support.push_back(j);
          terms.emplace_back(std::move(support), rat_to_string(v));
        }
        return terms;
      },
      py::arg("word"),
      "Nonzero indicator coefficients as (support, 'num/den') pairs, free space");

  m.def(
      "strength",
      [](std::uint64_t w, bool star) { return strength(design_of(w), star); },
      py::arg("word"), py::arg("star") = false);

  m.def(
      "marginal",
      [](std::uint64_t w, const std::vector<int>& T, bool star) {
        return marginal(design_of(w), T, star).counts;
      },
      py::arg("word"), py::arg("T"), py::arg("star") = false,
      "Cell counts of the T-marginal, 1-based factors");

  m.def(
      "profile_ok", [](std::uint64_t w) { return check_cross_profile(design_of(w)).pass; },
      py::arg("word"), "Star-space marginal profile check for 24-run cross arrays");

  m.def(
      "quotient_basis_names",
      [](std::uint64_t w) {
        const Design d = design_of(w);
        const AnalyzeResult r = run_analyze(d, TermOrder::degrevlex(d.spec.star_factors()));
        std::vector<std::string> names;
        const auto vars = factor_names(d.spec, true);
        for (const auto& e : r.basis.monomials) names.push_back(monomial_name(e, vars));
        return names;
      },
      py::arg("word"), "Standard monomials of the design's vanishing ideal, ascending");

  m.def(
      "confounding",
      [](std::uint64_t w) {
        const Design d = design_of(w);
        const AnalyzeResult r = run_analyze(d, TermOrder::degrevlex(d.spec.star_factors()));
        std::vector<std::vector<std::string>> entries;
        for (const auto& row : r.confounding.entries) {
          std::vector<std::string> cells;
          for (const Rat& v : row) cells.push_back(rat_to_string(v));
          entries.push_back(std::move(cells));
        }
        py::dict out;
        out["rows"] = r.confounding.row_names;
        out["columns"] = r.confounding.col_names;
        out["entries"] = entries;
        out["estimable_columns"] = r.greedy.columns;
        return out;
      },
      py::arg("word"), "Confounding matrix with row/column names and 'num/den' entries");

  m.def(
      "is_estimable",
      [](std::uint64_t w, const std::vector<int>& cols) {
        const Design d = design_of(w);
        const AnalyzeResult r = run_analyze(d, TermOrder::degrevlex(d.spec.star_factors()));
        const auto rep = verify_estimable(r.confounding, cols);
        return std::make_pair(rep.rank, rep.estimable);
      },
      py::arg("word"), py::arg("columns"),
      "Rank and estimability of a 1-based column subset of the confounding matrix");
}
