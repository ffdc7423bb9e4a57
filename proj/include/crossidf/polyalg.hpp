#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "crossidf/rational.hpp"

namespace crossidf {

// Squarefree monomial over n two-level variables: bit j set means variable j
// is present. weight = popcount.
using Monomial = std::uint32_t;

int weight(Monomial m);

// Canonical point order of the full factorial {-1,+1}^n: point index
// i in [0, 2^n) has coordinate j equal to +1 iff bit (n-1-j) of i is set.
// First factor varies slowest; -1 precedes +1.
std::vector<int> point_from_index(int n, std::size_t i);
std::size_t index_from_point(const std::vector<int>& pt);

// z^c evaluated at point i of the canonical order (+1 or -1).
int eval_sign(Monomial c, int n, std::size_t point_index);

// Multilinear polynomial with exact rational coefficients; only nonzero
// coefficients are stored.
struct MultilinearPoly {
  int n = 0;
  std::map<Monomial, Rat> coeffs;

  Rat coeff(Monomial m) const;
  void set_coeff(Monomial m, const Rat& v);  // erases on v == 0
  bool operator==(const MultilinearPoly&) const = default;
};

Rat evaluate(const MultilinearPoly& p, std::size_t point_index);
// Evaluation at an arbitrary rational point (coordinate j = pt[j]).
Rat evaluate_at(const MultilinearPoly& p, const std::vector<Rat>& pt);

// Coefficients of the unique multilinear interpolant of the response u over
// the canonical full factorial: theta = (1/2^n) X^T u. In-place butterfly,
// O(n 2^n) exact rational operations.
MultilinearPoly coeffs_from_response(const std::vector<Rat>& u, int n);
// 0/1-validated variant for design responses.
MultilinearPoly coeffs_from_response01(const std::vector<std::uint8_t>& u, int n);
// Naive O(4^n) transform; test oracle for small n.
MultilinearPoly coeffs_from_response_naive(const std::vector<Rat>& u, int n);

// Inverse: values of p at every point of the canonical full factorial.
std::vector<Rat> response_from_coeffs(const MultilinearPoly& p);

// Product in Q[z]/<z_j^2 - 1>: the term for c1*c2 lands on c1 XOR c2.
MultilinearPoly multiply_mod_squares(const MultilinearPoly& p, const MultilinearPoly& q);

// True iff p*p = p in the quotient ring, i.e. iff p is 0/1-valued on the
// full factorial. Implemented through multiply_mod_squares.
bool is_indicator(const MultilinearPoly& p);

}  // namespace crossidf
