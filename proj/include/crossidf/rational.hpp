#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace crossidf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "3/8", "-1/8"; integers without the "/1".
std::string rat_to_string(const Rat& r);

// Accepts "a/b" or "a" with optional sign. Throws std::invalid_argument on
// malformed input or zero denominator.
Rat parse_rat(const std::string& s);

}  // namespace crossidf
