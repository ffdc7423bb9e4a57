#include "crossidf/quotient.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace crossidf {

int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

Rat eval_exponents(const Exponents& e, const std::vector<Rat>& pt) {
  if (e.size() != pt.size())
    throw std::invalid_argument("eval_exponents: dimension mismatch");
  Rat v = 1;
  for (std::size_t j = 0; j < e.size(); ++j)
    for (int k = 0; k < e[j]; ++k) v *= pt[j];
  return v;
}

std::string monomial_name(const Exponents& e, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    s += vars.at(j);
    if (e[j] > 1) s += "^" + std::to_string(e[j]);
  }
  return s.empty() ? "1" : s;
}

TermOrder TermOrder::degrevlex(int nvars) {
  TermOrder o;
  o.priority.resize(nvars);
  std::iota(o.priority.begin(), o.priority.end(), 0);
  return o;
}

bool TermOrder::less(const Exponents& a, const Exponents& b) const {
  if (a.size() != priority.size() || b.size() != priority.size())
    throw std::invalid_argument("term order arity mismatch");
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  // Equal degree: a < b iff the last nonzero of a-b along the priority list
  // (highest-priority variable first) is positive.
  for (auto it = priority.rbegin(); it != priority.rend(); ++it) {
    const int d = a[*it] - b[*it];
    if (d != 0) return d > 0;
  }
  return false;
}

namespace {

bool divides(const Exponents& div, const Exponents& m) {
  for (std::size_t j = 0; j < m.size(); ++j)
    if (div[j] > m[j]) return false;
  return true;
}

// (degree, ascending variable tuple) used for display rows.
bool display_less(const Exponents& a, const Exponents& b) {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t j = 0; j < a.size(); ++j) {
    // Lex on the sorted variable tuples equals reverse-lex on exponent
    // prefixes for squarefree monomials; compare prefix sums directly.
    if (a[j] != b[j]) return a[j] > b[j];
  }
  return false;
}

}  // namespace

QuotientBasis quotient_basis(const std::vector<std::vector<Rat>>& points,
                             const TermOrder& order) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  const std::size_t nvars = points[0].size();
  if (order.priority.size() != nvars)
    throw std::invalid_argument("term order arity mismatch");
  for (const auto& p : points)
    if (p.size() != nvars) throw std::invalid_argument("ragged point set");
  {
    std::set<std::vector<Rat>> distinct(points.begin(), points.end());
    if (distinct.size() != points.size())
      throw std::domain_error("duplicate points");
  }

  QuotientBasis qb;
  qb.nvars = static_cast<int>(nvars);
  qb.order = order;
  qb.points = points;

  const std::size_t npts = points.size();
  const auto cmp = [&order](const Exponents& a, const Exponents& b) {
    return order.less(a, b);
  };
  std::set<Exponents, decltype(cmp)> candidates(cmp);
  candidates.insert(Exponents(nvars, 0));
  std::vector<Exponents> rejected_lts;
  // Reduced evaluation rows of accepted monomials, with their pivot column.
  std::vector<std::pair<std::size_t, std::vector<Rat>>> rows;

  while (!candidates.empty() && qb.monomials.size() < npts) {
    const Exponents m = *candidates.begin();
    candidates.erase(candidates.begin());
    bool skip = false;
    for (const auto& lt : rejected_lts)
      if (divides(lt, m)) skip = true;
    if (skip) continue;

    std::vector<Rat> v(npts);
    for (std::size_t i = 0; i < npts; ++i) v[i] = eval_exponents(m, points[i]);
    for (const auto& [piv, row] : rows) {
      if (v[piv] == 0) continue;
      const Rat f = v[piv] / row[piv];
      for (std::size_t i = 0; i < npts; ++i) v[i] -= f * row[i];
    }
    std::size_t piv = 0;
    while (piv < npts && v[piv] == 0) ++piv;
    if (piv == npts) {
      rejected_lts.push_back(m);
      continue;
    }
    rows.emplace_back(piv, std::move(v));
    qb.monomials.push_back(m);
    for (std::size_t j = 0; j < nvars; ++j) {
      Exponents next = m;
      ++next[j];
      bool dominated = false;
      for (const auto& lt : rejected_lts)
        if (divides(lt, next)) dominated = true;
      if (!dominated) candidates.insert(std::move(next));
    }
  }
  return qb;
}

std::vector<Rat> normal_form(const MultilinearPoly& p, const QuotientBasis& qb) {
  if (p.n != qb.nvars) throw std::invalid_argument("normal_form: arity mismatch");
  const std::size_t npts = qb.points.size();
  RatMatrix basis_evals(npts, std::vector<Rat>(qb.monomials.size()));
  for (std::size_t i = 0; i < npts; ++i)
    for (std::size_t k = 0; k < qb.monomials.size(); ++k)
      basis_evals[i][k] = eval_exponents(qb.monomials[k], qb.points[i]);
  std::vector<Rat> rhs(npts);
  for (std::size_t i = 0; i < npts; ++i) rhs[i] = evaluate_at(p, qb.points[i]);
  return solve_square(basis_evals, {rhs})[0];
}

ConfoundingMatrix confounding_matrix(const QuotientBasis& qb,
                                     const std::vector<MultilinearPoly>& terms,
                                     const std::vector<std::string>& names,
                                     const std::vector<std::string>& var_names) {
  if (terms.size() != names.size())
    throw std::invalid_argument("one name per model term");
  ConfoundingMatrix cm;
  cm.rows = qb.monomials;
  std::sort(cm.rows.begin(), cm.rows.end(), display_less);
  std::vector<std::size_t> scan_pos(cm.rows.size());
  for (std::size_t r = 0; r < cm.rows.size(); ++r) {
    const auto it = std::find(qb.monomials.begin(), qb.monomials.end(), cm.rows[r]);
    scan_pos[r] = static_cast<std::size_t>(it - qb.monomials.begin());
  }
  for (const auto& m : cm.rows) cm.row_names.push_back(monomial_name(m, var_names));
  cm.col_names = names;
  cm.entries.assign(cm.rows.size(), std::vector<Rat>(terms.size()));
  for (std::size_t c = 0; c < terms.size(); ++c) {
    const auto nf = normal_form(terms[c], qb);
    for (std::size_t r = 0; r < cm.rows.size(); ++r)
      cm.entries[r][c] = nf[scan_pos[r]];
  }
  return cm;
}

std::vector<MultilinearPoly> default_model_terms(int p, int q) {
  const int n = p + q;
  std::vector<MultilinearPoly> terms;
  const auto mono = [n](Monomial m) {
    MultilinearPoly t;
    t.n = n;
    t.coeffs.emplace(m, Rat(1));
    return t;
  };
  terms.push_back(mono(0));
  for (int j = 0; j < p; ++j) terms.push_back(mono(1u << j));
  for (int k = 0; k < q; ++k) terms.push_back(mono(1u << (p + k)));
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < q; ++k) terms.push_back(mono((1u << j) | (1u << (p + k))));
  return terms;
}

std::vector<std::string> default_model_names(int p, int q) {
  std::vector<std::string> names = {"mu"};
  for (int j = 1; j <= p; ++j) names.push_back("a" + std::to_string(j));
  for (int k = 1; k <= q; ++k) names.push_back("b" + std::to_string(k));
  for (int j = 1; j <= p; ++j)
    for (int k = 1; k <= q; ++k)
      names.push_back("g" + std::to_string(j) + std::to_string(k));
  return names;
}

namespace {

EstimabilityReport report_for(const ConfoundingMatrix& cm, std::vector<int> columns) {
  const std::size_t nrows = cm.entries.size();
  RatMatrix sub(nrows, std::vector<Rat>(columns.size()));
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < columns.size(); ++c)
      sub[r][c] = cm.entries[r][columns[c] - 1];
  EstimabilityReport rep;
  rep.columns = std::move(columns);
  rep.rank = matrix_rank(sub);
  rep.estimable = rep.rank == static_cast<int>(rep.columns.size());
  return rep;
}

}  // namespace

EstimabilityReport estimable_subset_greedy(const ConfoundingMatrix& cm) {
  const std::size_t nrows = cm.entries.size();
  const std::size_t ncols = cm.entries.empty() ? 0 : cm.entries[0].size();
  std::vector<int> kept;
  for (std::size_t c = 0; c < ncols; ++c) {
    RatMatrix trial(nrows, std::vector<Rat>(kept.size() + 1));
    for (std::size_t r = 0; r < nrows; ++r) {
      for (std::size_t k = 0; k < kept.size(); ++k)
        trial[r][k] = cm.entries[r][kept[k] - 1];
      trial[r][kept.size()] = cm.entries[r][c];
    }
    if (matrix_rank(std::move(trial)) == static_cast<int>(kept.size()) + 1)
      kept.push_back(static_cast<int>(c) + 1);
    if (kept.size() == nrows) break;
  }
  return report_for(cm, kept);
}

EstimabilityReport verify_estimable(const ConfoundingMatrix& cm,
                                    const std::vector<int>& columns) {
  const int ncols = cm.entries.empty() ? 0 : static_cast<int>(cm.entries[0].size());
  for (const int c : columns)
    if (c < 1 || c > ncols) throw std::invalid_argument("column index out of range");
  return report_for(cm, columns);
}

}  // namespace crossidf
