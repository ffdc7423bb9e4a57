#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crossidf/designs.hpp"

namespace crossidf {

// One uniformity requirement: the T-marginal (star or free space) must have
// every cell equal to runs / 2^|T|.
struct UniformityConstraint {
  std::vector<int> T;  // 1-based factor indices
  bool star = false;
};

struct ConstraintSet {
  FactorSpec spec;
  int runs = 0;
  std::vector<UniformityConstraint> require_uniform;
  // Post-filter: solutions whose listed marginal is uniform are dropped.
  std::vector<UniformityConstraint> forbid_uniform;
};

// All |T| = 3 uniformity constraints over the free factors plus the run
// count. Throws std::invalid_argument unless 8 | runs and runs <= 2^(s+q).
ConstraintSet build_constraints(const FactorSpec& spec, int runs);

// Coefficient-space consequences of the 24-run constraints on the default
// instance: theta_empty = 3/8, all coefficients of weight 1, 2, 3 vanish,
// and substituting into the idempotency identity forces weights 5, 6 to
// vanish too; the 15 weight-4 coefficients remain free.
struct CoefficientFacts {
  Rat theta_empty;
  std::vector<int> zero_weights;  // {1, 2, 3, 5, 6}
  int free_weight = 4;
  int pinned_count = 0;   // 42: weights 0..3
  int derived_count = 0;  // 7: weights 5, 6
  int free_count = 0;     // 15
};
CoefficientFacts coefficient_constraints(int runs);

// Complete duplicate-free list of all fractions satisfying cs, sorted by
// occupancy word ascending. Deterministic for every worker count. The search
// walks the 2^s control cells and picks runs/2^s noise points in each, so an
// even spread over the control cells (the {1..s} uniformity, part of every
// build_constraints set) is enforced structurally.
std::vector<Design> enumerate_designs(const ConstraintSet& cs, int workers = 1);

// Signed within-block relabeling on the 6 free factors of the default
// instance: sign flips on all six, a permutation of the three generators and
// a permutation of the three noise factors. |group| = 2^6 * 3! * 3! = 2304.
struct GroupElement {
  std::array<int, 6> eps;    // +1 / -1 per free factor
  std::array<int, 3> sigma;  // image of generator block indices 0..2
  std::array<int, 3> tau;    // image of noise block indices 0..2
};

const std::vector<GroupElement>& symmetry_group();

Design apply_group(const GroupElement& g, const Design& d);
std::uint64_t apply_group_word(const GroupElement& g, std::uint64_t w);

// Lexicographically smallest occupancy word over all 2304 images.
std::uint64_t canonical_word(const Design& d);
std::uint64_t canonical_word(std::uint64_t w);

struct OrbitPartition {
  std::vector<std::vector<int>> orbits;         // indices into the input
  std::vector<std::uint64_t> canonical;         // canonical word per orbit
  std::vector<int> stabilizer_orders;           // 2304 / |orbit|
};
OrbitPartition classify_orbits(const std::vector<Design>& designs);

// Full orbit of one design: all distinct group images, sorted by word.
std::vector<std::uint64_t> orbit_of(const Design& d);

// The sublist of designs containing every anchor point (free-space
// coordinates), in input order.
std::vector<Design> canonical_reps(const std::vector<Design>& designs,
                                   const std::vector<std::vector<int>>& anchors);

// Anchors used for the default reporting: (-1,...,-1) and (-1,...,-1,+1).
std::vector<std::vector<int>> default_anchors();

}  // namespace crossidf
