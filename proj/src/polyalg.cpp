#include "crossidf/polyalg.hpp"

#include <bit>
#include <stdexcept>

namespace crossidf {

namespace {

void check_n(int n) {
  if (n < 0 || n > 16) throw std::invalid_argument("variable count out of range");
}

// Point-index bits carry factor j at position n-1-j; monomial masks carry
// variable j at bit j. rev translates between the two.
Monomial rev_bits(Monomial m, int n) {
  Monomial out = 0;
  for (int j = 0; j < n; ++j)
    if (m >> j & 1u) out |= 1u << (n - 1 - j);
  return out;
}

}  // namespace

int weight(Monomial m) { return std::popcount(m); }

std::vector<int> point_from_index(int n, std::size_t i) {
  check_n(n);
  if (i >= (std::size_t{1} << n)) throw std::invalid_argument("point index out of range");
  std::vector<int> pt(n);
  for (int j = 0; j < n; ++j) pt[j] = (i >> (n - 1 - j) & 1u) ? 1 : -1;
  return pt;
}

std::size_t index_from_point(const std::vector<int>& pt) {
  const int n = static_cast<int>(pt.size());
  check_n(n);
  std::size_t i = 0;
  for (int j = 0; j < n; ++j) {
    if (pt[j] != 1 && pt[j] != -1) throw std::invalid_argument("coordinate must be -1 or 1");
    if (pt[j] == 1) i |= std::size_t{1} << (n - 1 - j);
  }
  return i;
}

int eval_sign(Monomial c, int n, std::size_t point_index) {
  const Monomial mask = (n == 32) ? ~0u : (1u << n) - 1u;
  const Monomial minus = ~static_cast<Monomial>(point_index) & mask;
  return (std::popcount(rev_bits(c, n) & minus) & 1) ? -1 : 1;
}

Rat MultilinearPoly::coeff(Monomial m) const {
  const auto it = coeffs.find(m);
  return it == coeffs.end() ? Rat(0) : it->second;
}

void MultilinearPoly::set_coeff(Monomial m, const Rat& v) {
  if (v == 0)
    coeffs.erase(m);
  else
    coeffs[m] = v;
}

Rat evaluate(const MultilinearPoly& p, std::size_t point_index) {
  Rat acc = 0;
  for (const auto& [m, v] : p.coeffs)
    acc += eval_sign(m, p.n, point_index) > 0 ? v : -v;
  return acc;
}

Rat evaluate_at(const MultilinearPoly& p, const std::vector<Rat>& pt) {
  if (static_cast<int>(pt.size()) != p.n)
    throw std::invalid_argument("evaluate_at: point dimension mismatch");
  Rat acc = 0;
  for (const auto& [m, v] : p.coeffs) {
    Rat term = v;
    for (int j = 0; j < p.n; ++j)
      if (m >> j & 1u) term *= pt[j];
    acc += term;
  }
  return acc;
}

MultilinearPoly coeffs_from_response(const std::vector<Rat>& u, int n) {
  check_n(n);
  const std::size_t size = std::size_t{1} << n;
  if (u.size() != size) throw std::invalid_argument("response length must be 2^n");
  std::vector<Rat> v = u;
  // One butterfly pass per point-index bit: the pair (value at -1, value at
  // +1) becomes (their mean, their half-difference).
  for (int b = 0; b < n; ++b) {
    const std::size_t stride = std::size_t{1} << b;
    for (std::size_t i = 0; i < size; i += stride << 1) {
      for (std::size_t k = i; k < i + stride; ++k) {
        const Rat lo = v[k], hi = v[k + stride];
        v[k] = (lo + hi) / 2;
        v[k + stride] = (hi - lo) / 2;
      }
    }
  }
  MultilinearPoly p;
  p.n = n;
  for (std::size_t i = 0; i < size; ++i)
    if (v[i] != 0) p.coeffs.emplace(rev_bits(static_cast<Monomial>(i), n), v[i]);
  return p;
}

MultilinearPoly coeffs_from_response01(const std::vector<std::uint8_t>& u, int n) {
  std::vector<Rat> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > 1) throw std::invalid_argument("response entries must be 0 or 1");
    v[i] = u[i];
  }
  return coeffs_from_response(v, n);
}

MultilinearPoly coeffs_from_response_naive(const std::vector<Rat>& u, int n) {
  check_n(n);
  const std::size_t size = std::size_t{1} << n;
  if (u.size() != size) throw std::invalid_argument("response length must be 2^n");
  MultilinearPoly p;
  p.n = n;
  for (std::size_t c = 0; c < size; ++c) {
    Rat acc = 0;
    for (std::size_t i = 0; i < size; ++i)
      acc += eval_sign(static_cast<Monomial>(c), n, i) > 0 ? u[i] : -u[i];
    p.set_coeff(static_cast<Monomial>(c), acc / static_cast<int>(size));
  }
  return p;
}

std::vector<Rat> response_from_coeffs(const MultilinearPoly& p) {
  check_n(p.n);
  const std::size_t size = std::size_t{1} << p.n;
  std::vector<Rat> v(size, Rat(0));
  for (const auto& [m, c] : p.coeffs) v[rev_bits(m, p.n)] = c;
  for (int b = 0; b < p.n; ++b) {
    const std::size_t stride = std::size_t{1} << b;
    for (std::size_t i = 0; i < size; i += stride << 1) {
      for (std::size_t k = i; k < i + stride; ++k) {
        const Rat f0 = v[k], f1 = v[k + stride];
        v[k] = f0 - f1;
        v[k + stride] = f0 + f1;
      }
    }
  }
  return v;
}

MultilinearPoly multiply_mod_squares(const MultilinearPoly& p, const MultilinearPoly& q) {
  if (p.n != q.n) throw std::invalid_argument("multiply_mod_squares: dimension mismatch");
  MultilinearPoly r;
  r.n = p.n;
  std::map<Monomial, Rat> acc;
  for (const auto& [c1, v1] : p.coeffs)
    for (const auto& [c2, v2] : q.coeffs) acc[c1 ^ c2] += v1 * v2;
  for (auto& [m, v] : acc)
    if (v != 0) r.coeffs.emplace(m, std::move(v));
  return r;
}

bool is_indicator(const MultilinearPoly& p) {
  return multiply_mod_squares(p, p) == p;
}

}  // namespace crossidf
