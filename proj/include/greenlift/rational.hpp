#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace greenlift {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Parse "p/q" or "p"; throws std::invalid_argument on garbage.
Rat parse_rat(const std::string& s);
std::string format_rat(const Rat& r);

} // namespace greenlift
