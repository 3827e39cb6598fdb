#include "qrand/dyadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace qrand::ait {

namespace {

mpz_class shifted(const mpz_class& v, std::uint64_t bits) {
  mpz_class out;
  mpz_mul_2exp(out.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return out;
}

}  // namespace

DyadicRational::DyadicRational(mpz_class numerator, std::uint64_t exponent) : num_(std::move(numerator)), exp_(exponent) {
  if (num_ < 0) throw std::invalid_argument("DyadicRational: negative numerator");
  normalize();
}

void DyadicRational::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const auto twos = static_cast<std::uint64_t>(mpz_scan1(num_.get_mpz_t(), 0));
  const std::uint64_t drop = std::min(twos, exp_);
  if (drop > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
    exp_ -= drop;
  }
}

DyadicRational DyadicRational::operator+(const DyadicRational& other) const {
  const std::uint64_t e = std::max(exp_, other.exp_);
  return DyadicRational(shifted(num_, e - exp_) + shifted(other.num_, e - other.exp_), e);
}

DyadicRational DyadicRational::operator-(const DyadicRational& other) const {
  const std::uint64_t e = std::max(exp_, other.exp_);
  mpz_class diff = shifted(num_, e - exp_) - shifted(other.num_, e - other.exp_);
  if (diff < 0) throw std::domain_error("DyadicRational: subtraction would go negative");
  return DyadicRational(std::move(diff), e);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const std::uint64_t e = std::max(a.exp_, b.exp_);
  const int c = cmp(shifted(a.num_, e - a.exp_), shifted(b.num_, e - b.exp_));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

mpz_class DyadicRational::floor_scaled(std::uint64_t bits) const {
  mpz_class out;
  if (bits >= exp_) {
    out = shifted(num_, bits - exp_);
  } else {
    mpz_fdiv_q_2exp(out.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_ - bits));
  }
  return out;
}

std::string DyadicRational::to_binary() const {
  mpz_class whole;
  mpz_fdiv_q_2exp(whole.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
  std::string out = whole.get_str(2);
  if (exp_ == 0) return out;
  out += '.';
  for (std::uint64_t i = exp_; i-- > 0;) out += mpz_tstbit(num_.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) ? '1' : '0';
  return out;
}

std::string DyadicRational::to_fraction() const { return num_.get_str() + "/2^" + std::to_string(exp_); }

double DyadicRational::to_double() const {
  mpf_class f(num_, 128);
  mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<mp_bitcnt_t>(exp_));
  return f.get_d();
}

}  // namespace qrand::ait
