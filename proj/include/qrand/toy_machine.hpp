#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qrand/bitstring.hpp"

namespace qrand::ait {

// Self-delimiting toy machine.
//
// Codewords are 1^k 0 b with |b| = k, a complete prefix-free code. The body b
// is read as 2-bit opcodes acting on a single unbounded counter A (initially 0):
//
//   00  INC A
//   01  DEC A        (no-op at zero)
//   10  JNZ          (jump to instruction 0 when A != 0)
//   11  HALT
//
// A trailing odd bit is an implicit HALT, and running past the last
// instruction halts. Every executed instruction costs one step.

enum class Opcode : std::uint8_t { inc, dec, jnz, halt };

struct ToyProgram {
  BitString codeword;
  std::uint64_t index = 0;

  /// Number of leading ones, equal to the body length.
  std::size_t k() const { return (codeword.size() - 1) / 2; }
  BitString body() const { return codeword.slice(k() + 1, k()); }
  std::string to_string() const { return codeword.to_string(); }
};

/// Builds the program 1^k 0 body and assigns its enumeration index.
ToyProgram make_program(const BitString& body);
/// The program at a given position of the length-then-lexicographic enumeration.
ToyProgram program_at(std::uint64_t index);
/// Parses and validates a full codeword. Throws std::invalid_argument if it is not 1^k 0 b with |b| = k.
ToyProgram parse_program(const BitString& codeword);

/// All codewords of length <= max_len in length-then-lexicographic order.
std::vector<ToyProgram> enumerate_programs(std::size_t max_len);

std::vector<Opcode> decode_body(const BitString& body);

enum class Outcome { halted, nonhalt_certified, unknown };
enum class NonHaltReason { none, configuration_repeat, monotone_loop };

struct MachineStatus {
  Outcome outcome = Outcome::unknown;
  std::uint64_t steps = 0;   // steps executed so far (the halting time for halted)
  NonHaltReason reason = NonHaltReason::none;
  std::uint64_t budget = 0;  // budget the status was computed under

  bool resolved() const { return outcome != Outcome::unknown; }
};

const char* to_string(Outcome outcome);
const char* to_string(NonHaltReason reason);

/// Resumable execution. Advancing by one step at a time or by a whole budget
/// at once yields the same status.
class ToyMachine {
 public:
  explicit ToyMachine(const ToyProgram& program);

  /// Executes until resolved or until the total step count reaches budget.
  const MachineStatus& run_until(std::uint64_t budget);
  const MachineStatus& status() const { return status_; }

 private:
  void step();

  std::vector<Opcode> code_;
  std::size_t pc_ = 0;
  std::uint64_t acc_ = 0;
  // Straight-line run since the last arrival at instruction 0.
  bool dec_since_head_ = false;
  std::uint64_t acc_at_head_ = 0;
  std::set<std::uint64_t> head_values_;
  MachineStatus status_;
};

/// Non-halting is certified only by
///  (a) a repeated configuration (pc, A), or
///  (b) a loop iteration back to the same pc with A strictly larger and no DEC executed in it.
/// Everything else is unknown once the budget is exhausted.
MachineStatus run_program(const ToyProgram& p, std::uint64_t budget);

}  // namespace qrand::ait
