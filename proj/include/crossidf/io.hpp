#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crossidf/designs.hpp"

namespace crossidf {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input content; carries the 1-based line of the offense.
struct ParseError : std::runtime_error {
  ParseError(const std::string& file, int line, const std::string& what);
  int line;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Design CSV: header "x1,...,y3" over star (p+q) or free (s+q) columns of
// the default instance, one -1/1 row per design point, canonical point order
// on write. Star rows are validated against the defining relations.
std::string design_to_csv(const Design& d, bool star);
Design design_from_csv(const std::string& text, const std::string& file);

// Indicator JSON: { "n": int, "vars": [names], "terms": [ { "support":
// [0-based variable indices], "num": int, "den": int } ] }, terms sorted by
// (weight, support mask). Byte-deterministic.
std::string indicator_to_json(const MultilinearPoly& p,
                              const std::vector<std::string>& vars);
std::pair<MultilinearPoly, std::vector<std::string>> indicator_from_json(
    const std::string& text, const std::string& file);

// { "T": [...], "star": bool, "counts": [...], "uniform": bool }
std::string marginal_to_json(const MarginalTable& t);

// "1" for the empty mask, otherwise concatenated variable names, e.g. "x1y2".
std::string monomial_display(Monomial m, const std::vector<std::string>& vars);

std::string word_to_hex(std::uint64_t w);
std::uint64_t hex_to_word(const std::string& s);

}  // namespace crossidf
