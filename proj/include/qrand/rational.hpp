#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qrand {

// Exact small rational: num / den with den > 0 and gcd(|num|, den) = 1.
// Comparisons widen to 128 bits so any pair of valid values compares exactly.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }
  static Rational integer(std::int64_t v) { return Rational(v, 1); }

  std::int64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  Rational abs() const { return Rational(num_ < 0 ? -num_ : num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * static_cast<__int128>(b.den_);
    const __int128 rhs = static_cast<__int128>(b.num_) * static_cast<__int128>(a.den_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void normalize() {
    const std::uint64_t mag = num_ < 0 ? static_cast<std::uint64_t>(-num_) : static_cast<std::uint64_t>(num_);
    const std::uint64_t g = std::gcd(mag, den_);
    if (g > 1) {
      num_ /= static_cast<std::int64_t>(g);
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace qrand
