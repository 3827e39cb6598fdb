#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "qrand/omega.hpp"

using namespace qrand;
using namespace qrand::ait;

namespace {

// Independent complete decider for the one-counter machine, used as an oracle.
// Every jump targets instruction 0, so execution is a sequence of straight-line
// passes. For A >= L (the code length) no DEC can reach zero inside a pass,
// so the pass is fixed and shifts A by a constant: non-negative shift means
// divergence. Below L the reachable counter values are finite and a repeat
// means divergence.
struct OracleVerdict {
  bool halts;
  std::uint64_t steps;  // exact halting time when halts
};

OracleVerdict oracle_decide(const BitString& body) {
  std::vector<int> ops;  // 0 inc, 1 dec, 2 jnz, 3 halt
  for (std::size_t i = 0; i + 1 < body.size(); i += 2) ops.push_back(body[i] * 2 + body[i + 1]);
  if (body.size() % 2 == 1) ops.push_back(3);
  const std::uint64_t len = ops.size();

  std::uint64_t a = 0, steps = 0;
  std::set<std::uint64_t> seen{0};
  for (;;) {
    const std::uint64_t start = a;
    std::size_t pc = 0;
    bool jumped = false;
    while (pc < len) {
      ++steps;
      const int op = ops[pc];
      if (op == 3) return {true, steps};
      if (op == 0) ++a;
      if (op == 1 && a > 0) --a;
      if (op == 2 && a != 0) {
        jumped = true;
        break;
      }
      ++pc;
    }
    if (!jumped) return {true, steps};
    if (start >= len && a >= start) return {false, 0};
    if (!seen.insert(a).second) return {false, 0};
  }
}

DyadicRational oracle_omega_lower(std::size_t max_len, std::uint64_t budget) {
  DyadicRational sum;
  for (std::size_t k = 0; 2 * k + 1 <= max_len; ++k) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
      BitString body;
      for (std::size_t b = k; b-- > 0;) body.push_back((v >> b) & 1U);
      const OracleVerdict o = oracle_decide(body);
      const std::uint64_t cost = body.empty() ? 0 : o.steps;
      if (o.halts && cost <= budget) sum += DyadicRational::power_of_half(2 * k + 1);
    }
  }
  return sum;
}

BitString bits(const char* s) { return BitString(s); }

}  // namespace

TEST_CASE("dyadic rational arithmetic") {
  const DyadicRational half(1, 1);
  CHECK((half + half) == DyadicRational(1, 0));
  CHECK(DyadicRational(4, 3) == half);
  CHECK(DyadicRational(4, 3).exponent() == 1);
  CHECK(DyadicRational(0, 7).exponent() == 0);
  CHECK(DyadicRational(19, 5).to_binary() == "0.10011");
  CHECK(DyadicRational(19, 5).to_fraction() == "19/2^5");
  CHECK(DyadicRational(1, 1).to_binary() == "0.1");
  CHECK(DyadicRational(1, 0).to_binary() == "1");
  CHECK(DyadicRational().to_binary() == "0");
  CHECK(DyadicRational(3, 2) < DyadicRational(1, 0));
  CHECK(DyadicRational(1, 0) - DyadicRational(3, 2) == DyadicRational(1, 2));
  CHECK_THROWS_AS(DyadicRational(1, 2) - DyadicRational(1, 1), std::domain_error);
  CHECK(DyadicRational(19, 5).floor_scaled(3) == 4);
  CHECK(DyadicRational(19, 5).floor_scaled(7) == 76);
  // Numerators beyond 64 bits stay exact.
  const DyadicRational tiny = DyadicRational::power_of_half(200);
  CHECK((DyadicRational(1, 0) - tiny + tiny) == DyadicRational(1, 0));
}

TEST_CASE("enumerate_programs") {
  auto strings = [](std::size_t max_len) {
    std::vector<std::string> out;
    for (const auto& p : enumerate_programs(max_len)) out.push_back(p.to_string());
    return out;
  };
  CHECK(enumerate_programs(0).empty());
  CHECK(strings(1) == std::vector<std::string>{"0"});
  CHECK(strings(2) == std::vector<std::string>{"0"});
  CHECK(strings(3) == std::vector<std::string>{"0", "100", "101"});
  CHECK(strings(5).size() == 7);
  CHECK(strings(5)[3] == "11000");

  const auto progs = enumerate_programs(13);
  for (std::size_t i = 0; i < progs.size(); ++i) {
    CHECK(progs[i].index == i);
    CHECK(program_at(i).codeword == progs[i].codeword);
    CHECK(parse_program(progs[i].codeword).index == i);
    CHECK(progs[i].codeword.size() == 2 * progs[i].k() + 1);
  }
  CHECK_THROWS_AS(parse_program(bits("110")), std::invalid_argument);
  CHECK_THROWS_AS(parse_program(bits("1")), std::invalid_argument);
  CHECK_THROWS_AS(parse_program(bits("1001")), std::invalid_argument);
}

TEST_CASE("codeword set is prefix-free up to length 13") {
  const auto progs = enumerate_programs(13);
  for (const auto& a : progs) {
    for (const auto& b : progs) {
      if (a.index == b.index) continue;
      CHECK_FALSE(a.codeword.is_prefix_of(b.codeword));
    }
  }
}

TEST_CASE("Kraft sum of the complete code") {
  for (std::size_t k = 0; k <= 6; ++k) {
    DyadicRational direct;
    for (const auto& p : enumerate_programs(2 * k + 1)) direct += DyadicRational::power_of_half(p.codeword.size());
    const DyadicRational expected = DyadicRational(1, 0) - DyadicRational::power_of_half(k + 1);
    CHECK(direct == expected);
    CHECK(kraft_sum(2 * k + 1) == expected);
  }
}

TEST_CASE("run_program semantics") {
  const MachineStatus empty = run_program(parse_program(bits("0")), 0);
  CHECK(empty.outcome == Outcome::halted);
  CHECK(empty.steps == 0);

  // 1111 0 0010: INC; JNZ
  const MachineStatus looper = run_program(parse_program(bits("111100010")), 10000);
  CHECK(looper.outcome == Outcome::nonhalt_certified);
  CHECK(looper.reason == NonHaltReason::monotone_loop);
  CHECK(looper.steps == 2);  // detected on the first return to instruction 0

  // DEC; INC; JNZ: the counter returns to 1 at instruction 0 every pass.
  const MachineStatus repeat = run_program(make_program(bits("010010")), 10000);
  CHECK(repeat.outcome == Outcome::nonhalt_certified);
  CHECK(repeat.reason == NonHaltReason::configuration_repeat);

  // INC; INC; DEC; JNZ diverges but neither rule certifies it.
  const MachineStatus stuck = run_program(make_program(bits("00000110")), 10000);
  CHECK(stuck.outcome == Outcome::unknown);
  CHECK(stuck.steps == 10000);
  CHECK_FALSE(oracle_decide(bits("00000110")).halts);

  // Budget 0: only the empty body resolves.
  for (const auto& p : enumerate_programs(9)) {
    const MachineStatus s = run_program(p, 0);
    CHECK(s.outcome == (p.k() == 0 ? Outcome::halted : Outcome::unknown));
  }

  // HALT costs a step; falling off the end does not.
  CHECK(run_program(make_program(bits("11")), 1).steps == 1);
  CHECK(run_program(make_program(bits("0")), 1).steps == 1);
  CHECK(run_program(make_program(bits("0001")), 5).steps == 2);
  // DEC at zero is a no-op.
  CHECK(run_program(make_program(bits("0110")), 5).outcome == Outcome::halted);
}

TEST_CASE("certifier is sound and matches the oracle on resolved programs") {
  for (const auto& p : enumerate_programs(19)) {
    const MachineStatus s = run_program(p, 10000);
    const OracleVerdict o = oracle_decide(p.body());
    CAPTURE(p.to_string());
    if (s.outcome == Outcome::halted) {
      CHECK(o.halts);
      CHECK(s.steps == (p.k() == 0 ? 0 : o.steps));
    }
    if (s.outcome == Outcome::nonhalt_certified) CHECK_FALSE(o.halts);
    if (o.halts) CHECK(s.outcome == Outcome::halted);
  }
}

TEST_CASE("resumable execution is schedule independent") {
  const auto progs = enumerate_programs(15);
  std::vector<MachineStatus> reference;
  for (const auto& p : progs) reference.push_back(run_program(p, 300));

  std::mt19937_64 rng(99);
  std::vector<ToyMachine> machines;
  for (const auto& p : progs) machines.emplace_back(p);
  std::vector<std::uint64_t> reached(progs.size(), 0);
  // Random interleaving of small step increments.
  for (int round = 0; round < 20000; ++round) {
    const std::size_t i = rng() % progs.size();
    reached[i] = std::min<std::uint64_t>(300, reached[i] + 1 + rng() % 7);
    machines[i].run_until(reached[i]);
  }
  for (std::size_t i = 0; i < progs.size(); ++i) {
    const MachineStatus& s = machines[i].run_until(300);
    CHECK(s.outcome == reference[i].outcome);
    CHECK(s.steps == reference[i].steps);
    CHECK(s.reason == reference[i].reason);
  }
}

TEST_CASE("halting_sequence") {
  const auto one = halting_sequence(1, 0);
  REQUIRE(one.size() == 1);
  CHECK(h_bit(one[0].status) == std::optional<bool>(true));

  const auto h16 = halting_sequence(16, 10000);
  CHECK(std::none_of(h16.begin(), h16.end(), [](const HEntry& e) { return !e.status.resolved(); }));

  const auto h32 = halting_sequence(32, 10000);
  CHECK(std::none_of(h32.begin(), h32.end(), [](const HEntry& e) { return !e.status.resolved(); }));
  CHECK(h_bit(h32[17].status) == std::optional<bool>(false));  // 111100010
  CHECK(h32[17].program.to_string() == "111100010");

  // Halted entries stay halted as the budget grows.
  const std::vector<std::uint64_t> budgets{0, 1, 2, 5, 10, 100, 1000};
  std::vector<HEntry> prev = halting_sequence(127, budgets.front());
  for (std::size_t b = 1; b < budgets.size(); ++b) {
    const auto cur = halting_sequence(127, budgets[b]);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (prev[i].status.resolved()) {
        CHECK(cur[i].status.outcome == prev[i].status.outcome);
      }
    }
    prev = cur;
  }
  CHECK_THROWS_AS(halting_sequence(0, 10), std::invalid_argument);
}

TEST_CASE("omega_lower_bound") {
  CHECK(omega_lower_bound(0, 10000).is_zero());
  for (std::uint64_t budget : {0, 1, 10, 10000}) CHECK(omega_lower_bound(1, budget) == DyadicRational(1, 1));
  CHECK(omega_lower_bound(5, 10000) == DyadicRational(7, 3));
  CHECK(omega_lower_bound(9, 10000) == DyadicRational(495, 9));

  const std::vector<std::size_t> lens{1, 3, 5, 7, 9, 11, 13};
  const std::vector<std::uint64_t> budgets{0, 1, 2, 3, 10, 100, 1000, 10000};
  for (auto len : lens) {
    for (auto budget : budgets) {
      const DyadicRational v = omega_lower_bound(len, budget);
      CHECK(v == oracle_omega_lower(len, budget));
      CHECK(v < DyadicRational(1, 0));
    }
  }
}

TEST_CASE("omega bracket contains the oracle value") {
  const OmegaBracket b = omega_bracket(17, 10000);
  CHECK(b.unknown > 0);
  const DyadicRational deep = oracle_omega_lower(19, 1000000);
  CHECK(b.lower <= deep);
  CHECK(deep <= b.upper());
  CHECK(b.halted + b.diverging + b.unknown == 511);
}

TEST_CASE("certified Omega prefixes") {
  const OmegaPrefix p5 = certify_omega_prefix(5, 10000);
  REQUIRE(p5.certified);
  CHECK(p5.bits.to_string() == "11111");
  CHECK(p5.cut_length == 11);
  CHECK(p5.value() <= p5.lower);
  CHECK(p5.upper < p5.value() + DyadicRational::power_of_half(5));

  CHECK(certify_omega_prefix(6, 10000).certified);
  // INC INC DEC JNZ at length 17 stays unknown, so the strict policy stops at 6.
  CHECK_FALSE(certify_omega_prefix(7, 10000).certified);
  CHECK_FALSE(certify_omega_prefix(5, 0).certified);

  const OmegaPrefix p9 = certify_omega_prefix(9, 10000, 25, CutPolicy::fold_unresolved);
  REQUIRE(p9.certified);
  CHECK(p9.bits.to_string() == "111111101");
  // The deep oracle value must share the certified bits.
  CHECK(oracle_omega_lower(21, 1000000).floor_scaled(9) == 0b111111101);
}

TEST_CASE("chaitin_decider and h_decider agree with run_program") {
  const auto h = halting_sequence(1 << 9, 10000);
  for (std::size_t n : {5, 6}) {
    const OmegaPrefix omega = certify_omega_prefix(n, 10000);
    REQUIRE(omega.certified);
    for (const auto& p : enumerate_programs(n)) {
      const Decision truth = run_program(p, 10000).outcome == Outcome::halted ? Decision::halts : Decision::diverges;
      CHECK(chaitin_decider(omega, p) == truth);
      CHECK(h_decider(h, p) == truth);
    }
  }

  const OmegaPrefix omega9 = certify_omega_prefix(9, 10000, 25, CutPolicy::fold_unresolved);
  for (const auto& p : enumerate_programs(9)) {
    const MachineStatus s = run_program(p, 10000);
    REQUIRE(s.resolved());
    const Decision truth = s.outcome == Outcome::halted ? Decision::halts : Decision::diverges;
    CHECK(chaitin_decider(omega9, p) == truth);
    CHECK(h_decider(h, p) == truth);
  }
  CHECK(chaitin_decider(omega9, parse_program(bits("111100010"))) == Decision::diverges);
}

TEST_CASE("decider error paths") {
  const ToyProgram zero = parse_program(bits("0"));
  CHECK_THROWS_AS(chaitin_decider(OmegaPrefix::claimed(bits("11111")), zero), std::invalid_argument);
  const OmegaPrefix p5 = certify_omega_prefix(5, 10000);
  CHECK(chaitin_decider(p5, zero) == Decision::halts);
  CHECK_THROWS_AS(chaitin_decider(p5, parse_program(bits("1110000"))), std::invalid_argument);

  const auto h = halting_sequence(32, 10000);
  CHECK(h_decider(h, zero) == Decision::halts);
  CHECK(h_decider(h, program_at(17)) == Decision::diverges);
  CHECK_THROWS_AS(h_decider(h, program_at(32)), std::out_of_range);

  // An unknown entry propagates.
  const ToyProgram stuck = make_program(bits("00000110"));
  const auto deep = halting_sequence(stuck.index + 1, 10000);
  CHECK(h_decider(deep, stuck) == Decision::unknown);
}
