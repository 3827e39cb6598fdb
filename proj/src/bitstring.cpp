#include "qrand/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace qrand {

BitString::BitString(std::string_view text) {
  bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("BitString: invalid character '" + std::string(1, c) + "'");
    }
    bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
}

BitString BitString::prefix(std::size_t n) const {
  n = std::min(n, bits_.size());
  return BitString(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n)));
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos >= bits_.size()) return {};
  len = std::min(len, bits_.size() - pos);
  const auto first = bits_.begin() + static_cast<std::ptrdiff_t>(pos);
  return BitString(std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(len)));
}

bool BitString::is_prefix_of(const BitString& other) const {
  return bits_.size() <= other.bits_.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::size_t BitString::count_ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BitString BitString::complement() const {
  std::vector<std::uint8_t> out(bits_.size());
  std::transform(bits_.begin(), bits_.end(), out.begin(), [](std::uint8_t b) { return static_cast<std::uint8_t>(b ^ 1U); });
  return BitString(std::move(out));
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

}  // namespace qrand
