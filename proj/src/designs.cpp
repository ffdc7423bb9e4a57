#include "crossidf/designs.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace crossidf {

namespace {

// Derived control values for one generator combination: bit k of gen_bits is
// generator k's level (+1 when set). Returns the level of control factor
// s+j as +1/-1.
int derived_level(const FactorSpec& spec, std::uint32_t gen_bits, int j) {
  const std::uint32_t rel = spec.relations[j];
  return (std::popcount(rel & ~gen_bits & ((1u << spec.generator_count) - 1u)) & 1) ? -1 : 1;
}

}  // namespace

FactorSpec FactorSpec::default_instance() {
  FactorSpec s;
  s.control_count = 6;
  s.noise_count = 3;
  s.generator_count = 3;
  s.relations = {0b011u, 0b101u, 0b110u};  // x4 = x1x2, x5 = x1x3, x6 = x2x3
  return s;
}

void FactorSpec::validate() const {
  if (generator_count < 1 || generator_count > control_count)
    throw std::invalid_argument("generator count must lie in [1, control_count]");
  if (noise_count < 0) throw std::invalid_argument("negative noise count");
  if (static_cast<int>(relations.size()) != control_count - generator_count)
    throw std::invalid_argument("need one defining relation per non-generator control factor");
  for (const auto rel : relations) {
    if (rel == 0) throw std::invalid_argument("empty defining relation");
    if (rel >> generator_count)
      throw std::invalid_argument("defining relation names a non-generator");
  }
  if (free_factors() > 16) throw std::invalid_argument("too many free factors");
}

std::vector<std::vector<int>> FactorSpec::control_fraction_points() const {
  validate();
  std::vector<std::vector<int>> rows;
  const int s = generator_count;
  for (std::uint32_t i = 0; i < (1u << s); ++i) {
    // Canonical order: generator 0 slowest, so its level sits at bit s-1.
    std::uint32_t gen_bits = 0;
    for (int k = 0; k < s; ++k)
      if (i >> (s - 1 - k) & 1u) gen_bits |= 1u << k;
    std::vector<int> row(control_count);
    for (int k = 0; k < s; ++k) row[k] = (gen_bits >> k & 1u) ? 1 : -1;
    for (int j = 0; j < control_count - s; ++j)
      row[s + j] = derived_level(*this, gen_bits, j);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> factor_names(const FactorSpec& spec, bool star) {
  std::vector<std::string> names;
  const int nx = star ? spec.control_count : spec.generator_count;
  for (int j = 1; j <= nx; ++j) names.push_back("x" + std::to_string(j));
  for (int j = 1; j <= spec.noise_count; ++j) names.push_back("y" + std::to_string(j));
  return names;
}

int Design::run_count() const {
  return static_cast<int>(std::accumulate(u.begin(), u.end(), 0));
}

std::uint64_t Design::word() const {
  if (u.size() > 64) throw std::invalid_argument("free space exceeds 64 points");
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i]) w |= std::uint64_t{1} << i;
  return w;
}

Design Design::from_word(const FactorSpec& spec, std::uint64_t w) {
  spec.validate();
  const int n = spec.free_factors();
  if (n > 6) throw std::invalid_argument("occupancy words support at most 64 points");
  Design d;
  d.spec = spec;
  d.u.assign(std::size_t{1} << n, 0);
  if (n < 6 && (w >> d.u.size()) != 0)
    throw std::invalid_argument("word wider than the free space");
  for (std::size_t i = 0; i < d.u.size(); ++i) d.u[i] = (w >> i) & 1u;
  return d;
}

Design Design::from_points(const FactorSpec& spec,
                           const std::vector<std::vector<int>>& pts) {
  spec.validate();
  Design d;
  d.spec = spec;
  d.u.assign(std::size_t{1} << spec.free_factors(), 0);
  std::set<std::size_t> seen;
  for (const auto& pt : pts) {
    std::vector<int> free_pt;
    if (static_cast<int>(pt.size()) == spec.free_factors()) {
      free_pt = pt;
    } else if (static_cast<int>(pt.size()) == spec.star_factors()) {
      const int s = spec.generator_count;
      std::uint32_t gen_bits = 0;
      for (int k = 0; k < s; ++k)
        if (pt[k] == 1) gen_bits |= 1u << k;
      for (int j = 0; j < spec.control_count - s; ++j)
        if (pt[s + j] != derived_level(spec, gen_bits, j))
          throw std::invalid_argument("point violates a defining relation");
      free_pt.assign(pt.begin(), pt.begin() + s);
      free_pt.insert(free_pt.end(), pt.begin() + spec.control_count, pt.end());
    } else {
      throw std::invalid_argument("point dimension matches neither free nor star space");
    }
    const std::size_t idx = index_from_point(free_pt);
    if (!seen.insert(idx).second) throw std::invalid_argument("duplicate design point");
    d.u[idx] = 1;
  }
  return d;
}

std::vector<std::vector<int>> Design::points(bool star) const {
  const int n = spec.free_factors();
  std::vector<std::vector<int>> out;
  if (!star) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i]) out.push_back(point_from_index(n, i));
    return out;
  }
  const int s = spec.generator_count;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u[i]) continue;
    const auto free_pt = point_from_index(n, i);
    std::uint32_t gen_bits = 0;
    for (int k = 0; k < s; ++k)
      if (free_pt[k] == 1) gen_bits |= 1u << k;
    std::vector<int> row(free_pt.begin(), free_pt.begin() + s);
    for (int j = 0; j < spec.control_count - s; ++j)
      row.push_back(derived_level(spec, gen_bits, j));
    row.insert(row.end(), free_pt.begin() + s, free_pt.end());
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::uint8_t> extend_response(const Design& d) {
  const int ns = d.spec.star_factors();
  if (ns > 16) throw std::invalid_argument("star space too large");
  std::vector<std::uint8_t> star(std::size_t{1} << ns, 0);
  for (const auto& row : d.points(true)) star[index_from_point(row)] = 1;
  return star;
}

MarginalTable marginal(const Design& d, const std::vector<int>& T, bool star) {
  const int nf = star ? d.spec.star_factors() : d.spec.free_factors();
  std::set<int> distinct(T.begin(), T.end());
  if (distinct.size() != T.size()) throw std::invalid_argument("repeated factor in T");
  for (const int t : T)
    if (t < 1 || t > nf) throw std::invalid_argument("factor index out of range");

  MarginalTable table;
  table.T = T;
  table.star = star;
  table.counts.assign(std::size_t{1} << T.size(), 0);
  const auto pts = d.points(star);
  for (const auto& pt : pts) {
    std::size_t cell = 0;
    for (std::size_t k = 0; k < T.size(); ++k)
      if (pt[T[k] - 1] == 1) cell |= std::size_t{1} << (T.size() - 1 - k);
    ++table.counts[cell];
  }
  return table;
}

bool is_uniform(const MarginalTable& t) {
  for (const long c : t.counts)
    if (c != t.counts[0]) return false;
  return true;
}

namespace {

bool all_uniform_at(const Design& d, bool star, int t) {
  const int nf = star ? d.spec.star_factors() : d.spec.free_factors();
  std::vector<int> T(t);
  // Enumerate t-subsets of {1..nf} in lexicographic order.
  for (int k = 0; k < t; ++k) T[k] = k + 1;
  while (true) {
    if (!is_uniform(marginal(d, T, star))) return false;
    int k = t - 1;
    while (k >= 0 && T[k] == nf - (t - 1 - k)) --k;
    if (k < 0) return true;
    ++T[k];
    for (int j = k + 1; j < t; ++j) T[j] = T[j - 1] + 1;
  }
}

}  // namespace

int strength(const Design& d, bool star) {
  if (d.run_count() == 0) throw std::domain_error("strength of an empty design");
  const int nf = star ? d.spec.star_factors() : d.spec.free_factors();
  int t = 0;
  while (t < nf && all_uniform_at(d, star, t + 1)) ++t;
  return t;
}

Design direct_product(const FactorSpec& spec,
                      const std::vector<std::vector<int>>& inner,
                      const std::vector<std::vector<int>>& outer) {
  spec.validate();
  std::vector<std::vector<int>> pts;
  for (const auto& x : inner) {
    if (static_cast<int>(x.size()) != spec.control_count)
      throw std::invalid_argument("inner point must have control_count coordinates");
    for (const auto& y : outer) {
      if (static_cast<int>(y.size()) != spec.noise_count)
        throw std::invalid_argument("outer point must have noise_count coordinates");
      std::vector<int> row = x;
      row.insert(row.end(), y.begin(), y.end());
      pts.push_back(std::move(row));
    }
  }
  return Design::from_points(spec, pts);  // validates relations, duplicates
}

const std::vector<std::vector<int>>& required_nonuniform_star_triples() {
  static const std::vector<std::vector<int>> triples = [] {
    std::vector<std::vector<int>> t = {{1, 2, 4}, {1, 3, 5}, {2, 3, 6}, {4, 5, 6}};
    for (int l = 7; l <= 9; ++l) {
      t.push_back({1, 6, l});
      t.push_back({2, 5, l});
      t.push_back({3, 4, l});
    }
    for (int j = 4; j <= 6; ++j)
      for (int a = 7; a <= 9; ++a)
        for (int b = a + 1; b <= 9; ++b) t.push_back({j, a, b});
    std::sort(t.begin(), t.end());
    return t;
  }();
  return triples;
}

ProfileReport check_cross_profile(const Design& d) {
  if (!(d.spec == FactorSpec::default_instance()))
    throw std::invalid_argument("profile check requires the default instance shape");
  const auto& required = required_nonuniform_star_triples();
  ProfileReport rep;
  for (int a = 1; a <= 9; ++a)
    for (int b = a + 1; b <= 9; ++b)
      if (!is_uniform(marginal(d, {a, b}, true)))
        rep.unexpected_nonuniform.push_back({a, b});
  for (int a = 1; a <= 9; ++a)
    for (int b = a + 1; b <= 9; ++b)
      for (int c = b + 1; c <= 9; ++c) {
        const std::vector<int> T = {a, b, c};
        const bool uniform = is_uniform(marginal(d, T, true));
        const bool must_break = std::binary_search(required.begin(), required.end(), T);
        if (uniform && must_break) rep.unexpected_uniform.push_back(T);
        if (!uniform && !must_break) rep.unexpected_nonuniform.push_back(T);
      }
  rep.pass = rep.unexpected_nonuniform.empty() && rep.unexpected_uniform.empty();
  return rep;
}

}  // namespace crossidf
