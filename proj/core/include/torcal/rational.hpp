#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace torcal {

// Exact rational scalar used throughout; no floating point anywhere.
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& q) { return q.str(); }

}  // namespace torcal
