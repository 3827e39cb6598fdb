#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qrand/sources.hpp"
#include "qrand/stat_tests.hpp"

using namespace qrand;
using namespace qrand::stats;

namespace {

BitString alternating(std::size_t n) {
  BitString x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(i % 2 == 1);
  return x;
}

// Direct window enumeration, independent of the rolling-window counter.
std::uint64_t count_windows(const BitString& x, const BitString& block, bool overlapping) {
  std::uint64_t c = 0;
  const std::size_t m = block.size();
  const std::size_t stride = overlapping ? 1 : m;
  for (std::size_t i = 0; i + m <= x.size(); i += stride) {
    if (x.slice(i, m) == block) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("ones_frequency") {
  CHECK(ones_frequency(BitString("0101")) == Rational(1, 2));
  CHECK(ones_frequency(champernowne_prefix(22)) == Rational(9, 22));
  CHECK(ones_frequency(expand_001_100(BitString("0110100"))) == Rational(1, 3));
  CHECK_THROWS_AS(ones_frequency(BitString()), std::invalid_argument);
}

TEST_CASE("block_census small cases") {
  const BlockCensus c1 = block_census(BitString("0101"), 1);
  CHECK(c1.count(BitString("0")) == 2);
  CHECK(c1.count(BitString("1")) == 2);
  CHECK(c1.windows == 4);

  const BlockCensus c2 = block_census(BitString("0101"), 2, true);
  CHECK(c2.count(BitString("01")) == 2);
  CHECK(c2.count(BitString("10")) == 1);
  CHECK(c2.count(BitString("00")) == 0);
  CHECK(c2.count(BitString("11")) == 0);
  CHECK(c2.windows == 3);

  const BlockCensus d2 = block_census(BitString("01011"), 2, false);
  CHECK(d2.windows == 2);
  CHECK(d2.count(BitString("01")) == 2);

  CHECK_THROWS_AS(block_census(BitString("01"), 0), std::invalid_argument);
  CHECK_THROWS_AS(block_census(BitString("01"), 3), std::invalid_argument);
}

TEST_CASE("block_census on Champernowne 2^16 matches enumeration oracle") {
  const BitString x = champernowne_prefix(1 << 16);
  const BlockCensus c = block_census(x, 2, true);
  // Frozen from an independent Python enumeration.
  CHECK(c.count(BitString("00")) == 17408);
  CHECK(c.count(BitString("01")) == 16385);
  CHECK(c.count(BitString("10")) == 16384);
  CHECK(c.count(BitString("11")) == 15358);
  CHECK(c.windows == 65535);
  // 00 sits at 0.2656: the prefix ends a third of the way into the length-16
  // words, all of which start 000.
  CHECK(std::abs(17408.0 / 65535 - 0.25) > 0.01);

  const BlockCensus d = block_census(x, 2, false);
  CHECK(d.count(BitString("00")) == 8704);
  CHECK(d.count(BitString("01")) == 9387);
  CHECK(d.count(BitString("10")) == 6998);
  CHECK(d.count(BitString("11")) == 7679);
}

TEST_CASE("block_census invariants") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    BitString x;
    const std::size_t n = 10 + rng() % 300;
    for (std::size_t i = 0; i < n; ++i) x.push_back(rng() % 3 == 0);
    const unsigned m = 1 + static_cast<unsigned>(rng() % 5);
    for (bool overlapping : {true, false}) {
      const BlockCensus c = block_census(x, m, overlapping);
      std::uint64_t sum = 0;
      for (auto v : c.counts) sum += v;
      CHECK(sum == c.windows);
      CHECK(c.windows == (overlapping ? n - m + 1 : n / m));

      // Complementing every bit complements every key.
      const BlockCensus cc = block_census(x.complement(), m, overlapping);
      for (std::uint64_t v = 0; v < c.counts.size(); ++v) {
        const BitString key = BlockCensus::block_key(m, v);
        CHECK(cc.count(key.complement()) == c.count(key));
        CHECK(c.count(key) == count_windows(x, key, overlapping));
      }
    }
  }
}

TEST_CASE("borel thresholds") {
  // sqrt(10/1024) and sqrt(20/2^20), rounded down onto the 2^-60 grid.
  CHECK(std::abs(borel_threshold(1024).to_double() - std::sqrt(10.0 / 1024)) < 1e-15);
  CHECK(std::abs(borel_threshold(1 << 20).to_double() - 0.004367320268554277) < 1e-15);
  CHECK(borel_threshold(1 << 20).den() <= (std::uint64_t{1} << kThresholdBits));
  CHECK(std::abs(frequency_threshold(1000000).to_double() - 0.0015) < 1e-15);
  CHECK(std::abs(autocorrelation_threshold(1000000).to_double() - 0.003) < 1e-15);
  // Rounded down, never up.
  CHECK(frequency_threshold(1000000) <= Rational(3, 2000));
}

TEST_CASE("borel_normality_check") {
  const auto zeros = borel_normality_check(BitString::zeros(1024), 1);
  REQUIRE(zeros.size() == 2);
  CHECK(zeros[0].statistic == Rational(1, 2));
  CHECK_FALSE(zeros[0].pass);
  CHECK_FALSE(all_pass(zeros));

  CHECK_THROWS_AS(borel_normality_check(BitString::zeros(255), 4), std::invalid_argument);
  CHECK_NOTHROW(borel_normality_check(BitString::zeros(256), 4));
  CHECK(borel_normality_check(BitString::zeros(256), 4).size() == 2 + 4 + 8 + 16);

  const auto q = borel_normality_check(generate(SourceSpec::quantum_sim(1), 1 << 20), 4);
  CHECK(all_pass(q));
}

TEST_CASE("borel_normality_check on Champernowne 2^20") {
  // The length-2^20 prefix stops partway through the length-16 words, which
  // all begin with 000; the m=1 deviation is 12289/2^20 and exceeds the bound.
  const auto verdicts = borel_normality_check(champernowne_prefix(1 << 20), 4);
  CHECK(verdicts[1].statistic == Rational(12289, 1 << 20));
  CHECK_FALSE(all_pass(verdicts));

  // At a complete word-length boundary (all words up to length 15) the same
  // check passes comfortably.
  const std::size_t boundary = 14 * (std::size_t{1} << 16) + 2;
  CHECK(all_pass(borel_normality_check(champernowne_prefix(boundary), 4)));
}

TEST_CASE("autocorrelation") {
  CHECK(autocorrelation(alternating(1000), 1) == Rational(-1, 1));
  CHECK(autocorrelation(alternating(1000), 2) == Rational(1, 1));
  CHECK(autocorrelation(alternating(1001), 1) == Rational(-1, 1));
  CHECK_THROWS_AS(autocorrelation(alternating(10), 0), std::invalid_argument);
  CHECK_THROWS_AS(autocorrelation(alternating(10), 6), std::invalid_argument);
  CHECK_NOTHROW(autocorrelation(alternating(10), 5));

  const BitString q = generate(SourceSpec::quantum_sim(1), 1000000);
  for (std::size_t lag = 1; lag <= 8; ++lag) {
    CHECK(autocorrelation(q, lag).abs() <= Rational(3, 1000));
    CHECK(autocorrelation_check(q, lag).pass);
  }
}

TEST_CASE("frequency_check") {
  CHECK_FALSE(frequency_check(BitString::zeros(1000)).pass);
  CHECK(frequency_check(generate(SourceSpec::quantum_sim(1), 1000000)).pass);
}

TEST_CASE("aligned_pattern_check") {
  const AlignedScan a = aligned_pattern_scan(expand_001_100(BitString("00")));
  CHECK(a.checked == 1);
  CHECK(a.violations == 0);
  CHECK(aligned_pattern_check(BitString("001001")).pass);

  const AlignedScan b = aligned_pattern_scan(BitString("100100"));
  CHECK(b.checked == 0);
  CHECK(aligned_pattern_check(BitString("100100")).pass);

  CHECK_FALSE(aligned_pattern_check(BitString("001011000")).pass);
  CHECK_THROWS_AS(aligned_pattern_check(BitString("0010")), std::invalid_argument);

  // Unaligned 0010 inside 100|100|1.. does not force 01 (here 0 0 follows).
  const BitString y = expand_001_100(BitString("110"));  // 100100001
  CHECK(y.slice(1, 4) == BitString("0010"));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    BitString z;
    const std::size_t n = rng() % 400;
    for (std::size_t i = 0; i < n; ++i) z.push_back(rng() & 1U);
    CHECK(aligned_pattern_check(expand_001_100(z)).pass);
  }
}

TEST_CASE("expanded quantum-sim fails Borel at m = 1") {
  const BitString y = expand_001_100(generate(SourceSpec::quantum_sim(1), 100000));
  const auto verdicts = borel_normality_check(y, 1);
  CHECK_FALSE(verdicts[0].pass);
  CHECK(verdicts[0].statistic == Rational(1, 6));  // |2/3 - 1/2|
}
