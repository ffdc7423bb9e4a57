#pragma once

#include <string>
#include <vector>

#include "crossidf/linalg.hpp"
#include "crossidf/polyalg.hpp"

namespace crossidf {

// General monomial as an exponent vector (one entry per variable); the
// quotient-basis scan can pass through non-squarefree candidates.
using Exponents = std::vector<int>;

int total_degree(const Exponents& e);
Rat eval_exponents(const Exponents& e, const std::vector<Rat>& pt);
std::string monomial_name(const Exponents& e, const std::vector<std::string>& vars);

// Degree-reverse-lexicographic order with a configurable variable priority
// (highest first). Deterministic total order.
struct TermOrder {
  std::vector<int> priority;

  static TermOrder degrevlex(int nvars);  // priority 0, 1, ..., nvars-1
  bool less(const Exponents& a, const Exponents& b) const;
};

// Standard monomials of the vanishing ideal of a finite rational point set,
// listed ascending in the term order. The set is an order ideal and its
// evaluation matrix at the points is invertible.
struct QuotientBasis {
  int nvars = 0;
  TermOrder order;
  std::vector<Exponents> monomials;
  std::vector<std::vector<Rat>> points;
};

// Moller-style scan: candidates ascending in the order; a monomial joins the
// basis iff its evaluation vector is independent of those already chosen;
// multiples of rejected leading terms are skipped. Duplicate points: domain
// error.
QuotientBasis quotient_basis(const std::vector<std::vector<Rat>>& points,
                             const TermOrder& order);

// Coefficients over qb.monomials of the unique basis combination agreeing
// with p at every point (exact linear solve). Idempotent on basis
// combinations.
std::vector<Rat> normal_form(const MultilinearPoly& p, const QuotientBasis& qb);

// rows = basis monomials in (degree, ascending variable tuple) display
// order; entry (r, c) = coefficient of row monomial r in the normal form of
// model term c.
struct ConfoundingMatrix {
  std::vector<Exponents> rows;
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  RatMatrix entries;
};

ConfoundingMatrix confounding_matrix(const QuotientBasis& qb,
                                     const std::vector<MultilinearPoly>& terms,
                                     const std::vector<std::string>& names,
                                     const std::vector<std::string>& var_names);

// Saturated intercept + main effects + control-by-noise interactions over
// p + q star variables: 1; x1..xp; y1..yq; xj*yk in j-major order.
std::vector<MultilinearPoly> default_model_terms(int p, int q);
// mu, a1..ap, b1..bq, g11..gpq.
std::vector<std::string> default_model_names(int p, int q);

struct EstimabilityReport {
  std::vector<int> columns;  // 1-based column indices
  int rank = 0;
  bool estimable = false;
};

// Scans columns left to right, keeping each column that raises the rank.
EstimabilityReport estimable_subset_greedy(const ConfoundingMatrix& cm);
// Checks a user-supplied column set (1-based).
EstimabilityReport verify_estimable(const ConfoundingMatrix& cm,
                                    const std::vector<int>& columns);

}  // namespace crossidf
