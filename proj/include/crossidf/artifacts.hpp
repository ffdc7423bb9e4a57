#pragma once

#include <string>
#include <vector>

#include "crossidf/enumerate.hpp"
#include "crossidf/io.hpp"
#include "crossidf/quotient.hpp"

namespace crossidf {

// Problem-defining parameters echoed into every result bundle. Execution
// knobs (worker count, output paths) are deliberately excluded so that the
// emitted bytes depend only on the problem.
struct EnumerateOptions {
  FactorSpec spec = FactorSpec::default_instance();
  int runs = 24;
  std::vector<UniformityConstraint> require_uniform;
  std::vector<UniformityConstraint> forbid_uniform;
  std::vector<std::vector<int>> anchors = default_anchors();
  int workers = 1;
};

struct EnumerateResult {
  ConstraintSet constraints;
  std::vector<Design> solutions;
  OrbitPartition orbits;
  std::vector<int> representative_indices;
};

EnumerateResult run_enumerate(const EnumerateOptions& opts);

// { "config", "constraints", "solutions" (hex words), "orbits" (index
// lists), "stabilizer_orders", "representatives" (indices) }
std::string enumeration_bundle_json(const EnumerateOptions& opts,
                                    const EnumerateResult& res);
// Anchored representatives with their free-space indicator coefficients.
std::string representatives_json(const EnumerateOptions& opts,
                                 const EnumerateResult& res);

struct AnalyzeResult {
  Design design;
  MultilinearPoly indicator;  // free space
  int strength_free = 0;
  int strength_star = 0;
  bool star_pairs_uniform = false;
  std::vector<std::vector<int>> nonuniform_star_triples;
  ProfileReport profile;
  QuotientBasis basis;
  ConfoundingMatrix confounding;
  EstimabilityReport greedy;
  EstimabilityReport all_columns;
};

AnalyzeResult run_analyze(const Design& d, const TermOrder& order);

std::string analysis_json(const AnalyzeResult& r, const TermOrder& order);
std::string analysis_text(const AnalyzeResult& r);

// { "variables": [...], "monomials": [names ascending in the term order] }
std::string quotient_basis_json(const QuotientBasis& qb,
                                const std::vector<std::string>& vars);
// Header "term,<parameter names>"; one row per basis monomial; exact
// rational entries.
std::string confounding_csv(const ConfoundingMatrix& cm);

// Occupancy grid: control rows by noise columns, 'o' marks design points.
std::string render_grid(const Design& d);

// Recomputes each golden artifact in-process and byte-compares. Returns one
// entry per problem (missing file or mismatch); empty means verified. The
// worker count only parallelizes the recomputation; bytes never depend on it.
struct VerifyIssue {
  std::string file;
  std::string detail;
};
std::vector<VerifyIssue> verify_goldens(const std::string& dir, int workers = 1);

// The fixed artifact list produced by scripts/regen_goldens.sh.
std::vector<std::string> golden_artifact_names();
// Content of one golden artifact, recomputed from scratch.
std::string golden_artifact_content(const std::string& name, int workers = 1);

}  // namespace crossidf
