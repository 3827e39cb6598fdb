#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qrand {

/// Finite ordered binary sequence. One bit per byte; every stored value is 0 or 1.
class BitString {
 public:
  using value_type = std::uint8_t;
  using const_iterator = std::vector<std::uint8_t>::const_iterator;

  BitString() = default;

  /// Parses a string of '0'/'1' characters. Throws std::invalid_argument otherwise.
  explicit BitString(std::string_view text);

  static BitString zeros(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 0)); }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::uint8_t at(std::size_t i) const { return bits_.at(i); }

  const_iterator begin() const { return bits_.begin(); }
  const_iterator end() const { return bits_.end(); }

  void reserve(std::size_t n) { bits_.reserve(n); }
  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

  /// First min(n, size()) bits.
  BitString prefix(std::size_t n) const;
  /// Bits [pos, pos+len), clamped to the end of the string.
  BitString slice(std::size_t pos, std::size_t len) const;

  bool is_prefix_of(const BitString& other) const;
  std::size_t count_ones() const;
  BitString complement() const;

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  std::vector<std::uint8_t> bits_;
};

}  // namespace qrand
