#pragma once

#include <charconv>
#include <string>
#include <system_error>

#include "qaoatl/errors.hpp"

namespace qaoatl {

/// Shortest decimal form that parses back to exactly the same double
/// (std::to_chars round-trip guarantee); used by every text format the
/// library writes so emitted files are deterministic and lossless.
inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) throw NumericError("format_double: to_chars failed");
  return std::string(buf, res.ptr);
}

/// Strict double parse of a complete token (no trailing junk).
inline double parse_double(const std::string& token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw InputError("parse_double: '" + token + "' is not a number");
  return value;
}

}  // namespace qaoatl
