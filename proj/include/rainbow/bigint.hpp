#pragma once

// Exact integer arithmetic. Every size bound that gates a verdict is computed
// in BigInt; conversions to fixed width are checked, never wrapped.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rainbow {

using BigInt = boost::multiprecision::cpp_int;

inline bool fits_u64(const BigInt& v) {
  return v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

inline std::uint64_t to_u64(const BigInt& v) {
  if (!fits_u64(v))
    throw std::overflow_error("value does not fit in 64 bits: " + v.str());
  return static_cast<std::uint64_t>(v);
}

}  // namespace rainbow
