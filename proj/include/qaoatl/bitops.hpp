#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qaoatl/errors.hpp"

namespace qaoatl {

/// One binary variable assignment x in {0,1}^n, index-aligned with the
/// problem's variable order.
///
/// Conventions used throughout the library:
///  - bits[i] is variable x_i;
///  - in a bitstring, the leftmost character is x_0;
///  - as a basis-state index, x_0 is the least-significant bit, so
///    index = sum_i bits[i] << i;
///  - the spin picture maps bit 0 to spin +1 and bit 1 to spin -1,
///    z_i = 1 - 2 x_i.
struct Assignment {
  std::vector<std::uint8_t> bits;

  Assignment() = default;
  explicit Assignment(std::size_t n) : bits(n, 0) {}
  explicit Assignment(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

  std::size_t size() const { return bits.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits[i]; }
  std::uint8_t& operator[](std::size_t i) { return bits[i]; }
  bool operator==(const Assignment& other) const = default;

  /// Spin value of variable i: +1 for bit 0, -1 for bit 1.
  int spin(std::size_t i) const { return 1 - 2 * static_cast<int>(bits[i]); }
};

/// Assignment from a basis-state index (x_0 = least-significant bit).
inline Assignment assignment_from_index(std::uint64_t index, std::size_t n) {
  if (n > 63) throw RangeError("assignment_from_index: supports at most 63 variables");
  if (n < 64 && (index >> n) != 0)
    throw RangeError("assignment_from_index: index out of range for " + std::to_string(n) + " variables");
  Assignment a(n);
  for (std::size_t i = 0; i < n; ++i) a.bits[i] = static_cast<std::uint8_t>((index >> i) & 1u);
  return a;
}

/// Basis-state index of an assignment (x_0 = least-significant bit).
inline std::uint64_t index_of(const Assignment& a) {
  if (a.size() > 63) throw RangeError("index_of: supports at most 63 variables");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    index |= static_cast<std::uint64_t>(a.bits[i] & 1u) << i;
  return index;
}

/// Assignment from a bitstring whose leftmost character is x_0.
inline Assignment assignment_from_bitstring(const std::string& s) {
  Assignment a(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '0') {
      a.bits[i] = 0;
    } else if (s[i] == '1') {
      a.bits[i] = 1;
    } else {
      throw InputError("assignment_from_bitstring: character '" + std::string(1, s[i]) + "' is not 0 or 1");
    }
  }
  return a;
}

/// Bitstring whose leftmost character is x_0.
inline std::string bitstring_of(const Assignment& a) {
  std::string s(a.size(), '0');
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a.bits[i] ? '1' : '0';
  return s;
}

/// Bitstring directly from a basis-state index.
inline std::string bitstring_from_index(std::uint64_t index, std::size_t n) {
  return bitstring_of(assignment_from_index(index, n));
}

}  // namespace qaoatl
