#pragma once

#include <cstdint>
#include <vector>

#include "crossidf/polyalg.hpp"

namespace crossidf {

// Two-level cross-array shape: p control factors of which the first s are
// free generators and the remaining p-s are fixed products of generators,
// plus q noise factors. relations[j] is the generator subset (bit k =
// generator k) whose product defines control factor s+j.
struct FactorSpec {
  int control_count = 0;    // p
  int noise_count = 0;      // q
  int generator_count = 0;  // s
  std::vector<std::uint32_t> relations;  // p - s entries

  int free_factors() const { return generator_count + noise_count; }
  int star_factors() const { return control_count + noise_count; }
  bool operator==(const FactorSpec&) const = default;

  // 6 control / 3 noise / 3 generators with x4 = x1x2, x5 = x1x3, x6 = x2x3.
  static FactorSpec default_instance();

  // The 2^s control rows extended to all p coordinates, canonical order.
  std::vector<std::vector<int>> control_fraction_points() const;

  void validate() const;  // throws std::invalid_argument
};

// Factor names: x1..xp then y1..yq (star space) or x1..xs, y1..yq (free space).
std::vector<std::string> factor_names(const FactorSpec& spec, bool star);

// A fraction of the free-space full factorial, as a 0/1 response over the
// canonical point order of {-1,+1}^(s+q).
struct Design {
  FactorSpec spec;
  std::vector<std::uint8_t> u;

  int run_count() const;
  // Occupancy word, bit i = u[i]; free space must have at most 64 points.
  std::uint64_t word() const;
  static Design from_word(const FactorSpec& spec, std::uint64_t w);
  // Points given in free space (s+q columns) or star space (p+q columns,
  // validated against the defining relations). Duplicates are rejected.
  static Design from_points(const FactorSpec& spec,
                            const std::vector<std::vector<int>>& pts);
  // Design points in canonical order.
  std::vector<std::vector<int>> points(bool star) const;

  bool operator==(const Design&) const = default;
};

// Embeds u into the star-space full factorial {-1,+1}^(p+q) via the defining
// relations; preserves the number of ones.
std::vector<std::uint8_t> extend_response(const Design& d);

// T-marginal counts: cell of level -1 is 1, of +1 is 2; the first factor of T
// varies slowest. Factor indices are 1-based: 1..s+q over u (star=false),
// 1..p+q over the extended response (star=true).
struct MarginalTable {
  std::vector<int> T;
  bool star = false;
  std::vector<long> counts;
};

MarginalTable marginal(const Design& d, const std::vector<int>& T, bool star);
bool is_uniform(const MarginalTable& t);

// Largest t >= 0 such that every |T| = t marginal is uniform (0 if some
// 1-marginal is not). Empty design: domain error.
int strength(const Design& d, bool star);

// Cross array with direct product structure: inner control rows (p columns,
// on the defining-relation fraction) crossed with outer noise rows
// (q columns).
Design direct_product(const FactorSpec& spec,
                      const std::vector<std::vector<int>>& inner,
                      const std::vector<std::vector<int>>& outer);

// Star-space marginal profile required of strength-3 24-run cross arrays on
// the default instance: all 2-marginals uniform; 3-marginals non-uniform
// exactly on required_nonuniform_star_triples().
struct ProfileReport {
  bool pass = false;
  // should be uniform but are not / must be non-uniform but are uniform
  std::vector<std::vector<int>> unexpected_nonuniform;
  std::vector<std::vector<int>> unexpected_uniform;
};

// The 22 star triples forced non-uniform by the defining relations:
// {124, 135, 236, 456}, {16l, 25l, 34l : l = 7,8,9} and
// {4ab, 5ab, 6ab : 7 <= a < b <= 9}.
const std::vector<std::vector<int>>& required_nonuniform_star_triples();

ProfileReport check_cross_profile(const Design& d);

}  // namespace crossidf
