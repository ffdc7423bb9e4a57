#include "crossidf/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace crossidf {

namespace {

// The search walks the 2^s control cells in canonical order; within each
// cell it picks an r-subset of the 2^q noise points. Every uniformity
// constraint is tracked as an occupancy table whose cell is a function of
// (control cell, noise point).
struct TrackedConstraint {
  int ncells = 0;
  long target = 0;
  std::vector<std::vector<int>> cell_of;  // [control cell][noise point]
};

struct SearchContext {
  int xcells = 0;
  int ypoints = 0;
  int per_cell = 0;  // r = runs / 2^s
  std::vector<std::uint32_t> candidates;  // r-subsets of the noise points
  std::vector<TrackedConstraint> tracked;
  // future[t][cell][k]: most the counts of constraint t's cell can still
  // grow from control cells k..end.
  std::vector<std::vector<std::vector<long>>> future;
};

int star_level(const FactorSpec& spec, int factor1, const std::vector<int>& free_pt) {
  const int s = spec.generator_count;
  const int p = spec.control_count;
  const int f = factor1 - 1;
  if (f < s) return free_pt[f];                       // generator
  if (f >= p) return free_pt[s + (f - p)];            // noise
  const std::uint32_t rel = spec.relations[f - s];    // derived control
  int level = 1;
  for (int k = 0; k < s; ++k)
    if (rel >> k & 1u) level *= free_pt[k];
  return level;
}

int free_level(const FactorSpec& spec, int factor1, const std::vector<int>& free_pt) {
  if (factor1 < 1 || factor1 > spec.free_factors())
    throw std::invalid_argument("factor index out of range");
  return free_pt[factor1 - 1];
}

TrackedConstraint track(const FactorSpec& spec, const UniformityConstraint& c, int runs) {
  const int s = spec.generator_count;
  const int q = spec.noise_count;
  const int nf = c.star ? spec.star_factors() : spec.free_factors();
  std::set<int> distinct(c.T.begin(), c.T.end());
  if (distinct.size() != c.T.size()) throw std::invalid_argument("repeated factor in T");
  for (const int t : c.T)
    if (t < 1 || t > nf) throw std::invalid_argument("factor index out of range");
  if (c.T.size() >= 31 || (runs % (1 << c.T.size())) != 0)
    throw std::invalid_argument("cell target of a uniformity constraint must be integral");

  TrackedConstraint tc;
  tc.ncells = 1 << c.T.size();
  tc.target = runs / tc.ncells;
  tc.cell_of.assign(1 << s, std::vector<int>(1 << q, 0));
  for (int xc = 0; xc < (1 << s); ++xc) {
    for (int yp = 0; yp < (1 << q); ++yp) {
      const std::size_t idx = (static_cast<std::size_t>(xc) << q) | static_cast<std::size_t>(yp);
      const auto pt = point_from_index(s + q, idx);
      int cell = 0;
      for (std::size_t k = 0; k < c.T.size(); ++k) {
        const int lv = c.star ? star_level(spec, c.T[k], pt) : free_level(spec, c.T[k], pt);
        if (lv == 1) cell |= 1 << (c.T.size() - 1 - k);
      }
      tc.cell_of[xc][yp] = cell;
    }
  }
  return tc;
}

void dfs(const SearchContext& ctx, int xc, std::vector<std::vector<long>>& counts,
         std::uint64_t word, const std::vector<std::uint32_t>& first_candidates,
         std::vector<std::uint64_t>& out) {
  const auto& cands = (xc == 0) ? first_candidates : ctx.candidates;
  for (const std::uint32_t cand : cands) {
    for (std::size_t t = 0; t < ctx.tracked.size(); ++t) {
      const auto& row = ctx.tracked[t].cell_of[xc];
      for (std::uint32_t bits = cand; bits; bits &= bits - 1)
        ++counts[t][row[std::countr_zero(bits)]];
    }
    // A cell over its target, or unable to reach it with what the remaining
    // control cells can still contribute, prunes. At the last cell the
    // remaining capacity is zero, so this forces exact targets.
    bool ok = true;
    for (std::size_t t = 0; t < ctx.tracked.size() && ok; ++t) {
      const auto& tc = ctx.tracked[t];
      const auto& fut = ctx.future[t];
      for (int cell = 0; cell < tc.ncells && ok; ++cell)
        if (counts[t][cell] > tc.target ||
            counts[t][cell] + fut[cell][xc + 1] < tc.target)
          ok = false;
    }
    if (ok) {
      const std::uint64_t w = word | (std::uint64_t{cand} << (xc * ctx.ypoints));
      if (xc + 1 == ctx.xcells)
        out.push_back(w);
      else
        dfs(ctx, xc + 1, counts, w, first_candidates, out);
    }
    for (std::size_t t = 0; t < ctx.tracked.size(); ++t) {
      const auto& row = ctx.tracked[t].cell_of[xc];
      for (std::uint32_t bits = cand; bits; bits &= bits - 1)
        --counts[t][row[std::countr_zero(bits)]];
    }
  }
}

}  // namespace

ConstraintSet build_constraints(const FactorSpec& spec, int runs) {
  spec.validate();
  const int nf = spec.free_factors();
  if (nf < 3) throw std::invalid_argument("need at least three free factors");
  if (runs % 8 != 0) throw std::invalid_argument("run count must be divisible by 8");
  if (runs <= 0 || runs > (1 << nf))
    throw std::invalid_argument("run count must lie in (0, 2^(s+q)]");
  ConstraintSet cs;
  cs.spec = spec;
  cs.runs = runs;
  for (int a = 1; a <= nf; ++a)
    for (int b = a + 1; b <= nf; ++b)
      for (int c = b + 1; c <= nf; ++c)
        cs.require_uniform.push_back({{a, b, c}, false});
  return cs;
}

CoefficientFacts coefficient_constraints(int runs) {
  if (runs != 24) throw std::invalid_argument("coefficient facts cover only the 24-run instance");
  CoefficientFacts f;
  f.theta_empty = Rat(3, 8);
  f.zero_weights = {1, 2, 3, 5, 6};
  f.free_weight = 4;
  f.pinned_count = 1 + 6 + 15 + 20;  // weights 0..3
  f.derived_count = 6 + 1;           // weights 5, 6
  f.free_count = 15;                 // weight 4
  return f;
}

std::vector<Design> enumerate_designs(const ConstraintSet& cs, int workers) {
  cs.spec.validate();
  const int s = cs.spec.generator_count;
  const int q = cs.spec.noise_count;
  if (s + q > 6) throw std::invalid_argument("free space exceeds 64 points");
  if (cs.runs <= 0 || cs.runs % (1 << s) != 0)
    throw std::invalid_argument("run count must spread evenly over the control cells");
  if (workers < 1) throw std::invalid_argument("worker count must be positive");

  SearchContext ctx;
  ctx.xcells = 1 << s;
  ctx.ypoints = 1 << q;
  ctx.per_cell = cs.runs / ctx.xcells;
  if (ctx.per_cell > ctx.ypoints) return {};
  for (std::uint32_t m = 0; m < (1u << ctx.ypoints); ++m)
    if (std::popcount(m) == ctx.per_cell) ctx.candidates.push_back(m);
  for (const auto& c : cs.require_uniform) ctx.tracked.push_back(track(cs.spec, c, cs.runs));

  for (const auto& tc : ctx.tracked) {
    // future capacity per cell: suffix sums of min(per_cell, compatible noise
    // points) over the control cells.
    std::vector<std::vector<long>> fut(tc.ncells, std::vector<long>(ctx.xcells + 1, 0));
    for (int cell = 0; cell < tc.ncells; ++cell)
      for (int xc = ctx.xcells - 1; xc >= 0; --xc) {
        long compatible = 0;
        for (int yp = 0; yp < ctx.ypoints; ++yp)
          if (tc.cell_of[xc][yp] == cell) ++compatible;
        fut[cell][xc] = fut[cell][xc + 1] + std::min<long>(ctx.per_cell, compatible);
      }
    ctx.future.push_back(std::move(fut));
  }

  std::vector<std::uint64_t> words;
  const int nworkers = std::min<int>(workers, static_cast<int>(ctx.candidates.size()));
  if (nworkers <= 1) {
    std::vector<std::vector<long>> counts;
    for (const auto& tc : ctx.tracked) counts.emplace_back(tc.ncells, 0);
    dfs(ctx, 0, counts, 0, ctx.candidates, words);
  } else {
    // Partition on the first cell's candidate; each worker owns a residue
    // class. Merging preserves the single-threaded result set.
    std::vector<std::vector<std::uint64_t>> parts(nworkers);
    std::vector<std::thread> threads;
    for (int wkr = 0; wkr < nworkers; ++wkr) {
      threads.emplace_back([&, wkr] {
        std::vector<std::uint32_t> first;
        for (std::size_t i = wkr; i < ctx.candidates.size(); i += nworkers)
          first.push_back(ctx.candidates[i]);
        std::vector<std::vector<long>> counts;
        for (const auto& tc : ctx.tracked) counts.emplace_back(tc.ncells, 0);
        dfs(ctx, 0, counts, 0, first, parts[wkr]);
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& part : parts) words.insert(words.end(), part.begin(), part.end());
  }
  std::sort(words.begin(), words.end());

  std::vector<Design> out;
  for (const std::uint64_t w : words) {
    Design d = Design::from_word(cs.spec, w);
    bool keep = true;
    for (const auto& c : cs.forbid_uniform)
      if (is_uniform(marginal(d, c.T, c.star))) keep = false;
    if (keep) out.push_back(std::move(d));
  }
  return out;
}

const std::vector<GroupElement>& symmetry_group() {
  static const std::vector<GroupElement> group = [] {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> base = {0, 1, 2};
    do {
      perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    std::vector<GroupElement> g;
    for (int signs = 0; signs < 64; ++signs)
      for (const auto& sigma : perms)
        for (const auto& tau : perms) {
          GroupElement e;
          for (int j = 0; j < 6; ++j) e.eps[j] = (signs >> j & 1) ? -1 : 1;
          e.sigma = sigma;
          e.tau = tau;
          g.push_back(e);
        }
    return g;
  }();
  return group;
}

namespace {

// Point permutation induced by g on the 64-point free factorial: source
// factor j contributes its (sign-flipped) level to image factor pi(j).
std::array<std::uint8_t, 64> point_permutation(const GroupElement& g) {
  std::array<int, 6> pi{};
  for (int j = 0; j < 3; ++j) pi[j] = g.sigma[j];
  for (int j = 0; j < 3; ++j) pi[3 + j] = 3 + g.tau[j];
  std::array<std::uint8_t, 64> perm{};
  for (int i = 0; i < 64; ++i) {
    int img = 0;
    for (int j = 0; j < 6; ++j) {
      const int level = (i >> (5 - j) & 1) ? 1 : -1;
      if (level * g.eps[j] == 1) img |= 1 << (5 - pi[j]);
    }
    perm[i] = static_cast<std::uint8_t>(img);
  }
  return perm;
}

const std::vector<std::array<std::uint8_t, 64>>& permutation_tables() {
  static const std::vector<std::array<std::uint8_t, 64>> tables = [] {
    std::vector<std::array<std::uint8_t, 64>> t;
    t.reserve(symmetry_group().size());
    for (const auto& g : symmetry_group()) t.push_back(point_permutation(g));
    return t;
  }();
  return tables;
}

std::uint64_t permute_word(const std::array<std::uint8_t, 64>& perm, std::uint64_t w) {
  std::uint64_t out = 0;
  while (w) {
    const int i = std::countr_zero(w);
    w &= w - 1;
    out |= std::uint64_t{1} << perm[i];
  }
  return out;
}

void require_default_shape(const FactorSpec& spec) {
  if (spec.generator_count != 3 || spec.noise_count != 3)
    throw std::invalid_argument("the symmetry group acts on the 3+3 free-factor shape");
}

}  // namespace

Design apply_group(const GroupElement& g, const Design& d) {
  require_default_shape(d.spec);
  return Design::from_word(d.spec, permute_word(point_permutation(g), d.word()));
}

std::uint64_t apply_group_word(const GroupElement& g, std::uint64_t w) {
  return permute_word(point_permutation(g), w);
}

std::uint64_t canonical_word(std::uint64_t w) {
  std::uint64_t best = ~std::uint64_t{0};
  for (const auto& perm : permutation_tables())
    best = std::min(best, permute_word(perm, w));
  return best;
}

std::uint64_t canonical_word(const Design& d) {
  require_default_shape(d.spec);
  return canonical_word(d.word());
}

OrbitPartition classify_orbits(const std::vector<Design>& designs) {
  OrbitPartition part;
  std::map<std::uint64_t, std::size_t> orbit_of_canon;
  for (std::size_t i = 0; i < designs.size(); ++i) {
    const std::uint64_t canon = canonical_word(designs[i]);
    const auto [it, inserted] = orbit_of_canon.emplace(canon, part.orbits.size());
    if (inserted) {
      part.orbits.emplace_back();
      part.canonical.push_back(canon);
    }
    part.orbits[it->second].push_back(static_cast<int>(i));
  }
  const int order = static_cast<int>(symmetry_group().size());
  for (const auto& orbit : part.orbits)
    part.stabilizer_orders.push_back(order / static_cast<int>(orbit.size()));
  return part;
}

std::vector<std::uint64_t> orbit_of(const Design& d) {
  require_default_shape(d.spec);
  const std::uint64_t w = d.word();
  std::set<std::uint64_t> images;
  for (const auto& perm : permutation_tables()) images.insert(permute_word(perm, w));
  return {images.begin(), images.end()};
}

std::vector<Design> canonical_reps(const std::vector<Design>& designs,
                                   const std::vector<std::vector<int>>& anchors) {
  std::vector<Design> out;
  for (const auto& d : designs) {
    bool all = true;
    for (const auto& a : anchors) {
      if (static_cast<int>(a.size()) != d.spec.free_factors())
        throw std::invalid_argument("anchor must have one coordinate per free factor");
      if (!d.u[index_from_point(a)]) all = false;
    }
    if (all) out.push_back(d);
  }
  return out;
}

std::vector<std::vector<int>> default_anchors() {
  return {{-1, -1, -1, -1, -1, -1}, {-1, -1, -1, -1, -1, 1}};
}

}  // namespace crossidf
