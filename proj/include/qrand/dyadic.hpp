#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace qrand::ait {

/// Exact non-negative value numerator / 2^exponent, kept with an odd
/// numerator (or zero with exponent 0).
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(mpz_class numerator, std::uint64_t exponent);

  /// 2^-k
  static DyadicRational power_of_half(std::uint64_t k) { return DyadicRational(1, k); }

  const mpz_class& numerator() const { return num_; }
  std::uint64_t exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  DyadicRational operator+(const DyadicRational& other) const;
  DyadicRational operator-(const DyadicRational& other) const;  // requires *this >= other
  DyadicRational& operator+=(const DyadicRational& other) { return *this = *this + other; }

  /// floor(value * 2^bits)
  mpz_class floor_scaled(std::uint64_t bits) const;

  /// "0.10011", "1", "0". Exact: dyadic values have terminating expansions.
  std::string to_binary() const;
  /// "19/2^5"
  std::string to_fraction() const;
  double to_double() const;

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  void normalize();

  mpz_class num_ = 0;
  std::uint64_t exp_ = 0;
};

}  // namespace qrand::ait
