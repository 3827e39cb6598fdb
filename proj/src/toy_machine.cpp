#include "qrand/toy_machine.hpp"

#include <stdexcept>

namespace qrand::ait {

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::halted: return "halted";
    case Outcome::nonhalt_certified: return "nonhalt-certified";
    case Outcome::unknown: return "unknown";
  }
  return "?";
}

const char* to_string(NonHaltReason reason) {
  switch (reason) {
    case NonHaltReason::none: return "none";
    case NonHaltReason::configuration_repeat: return "configuration-repeat";
    case NonHaltReason::monotone_loop: return "monotone-loop";
  }
  return "?";
}

ToyProgram make_program(const BitString& body) {
  const std::size_t k = body.size();
  if (k >= 63) throw std::invalid_argument("make_program: body too long to index");
  ToyProgram p;
  p.codeword.reserve(2 * k + 1);
  for (std::size_t i = 0; i < k; ++i) p.codeword.push_back(true);
  p.codeword.push_back(false);
  p.codeword.append(body);
  std::uint64_t value = 0;
  for (auto bit : body) value = (value << 1) | bit;
  p.index = ((std::uint64_t{1} << k) - 1) + value;
  return p;
}

ToyProgram program_at(std::uint64_t index) {
  std::size_t k = 0;
  while (index >= (std::uint64_t{1} << (k + 1)) - 1) ++k;
  const std::uint64_t value = index - ((std::uint64_t{1} << k) - 1);
  BitString body;
  for (std::size_t b = k; b-- > 0;) body.push_back((value >> b) & 1U);
  return make_program(body);
}

ToyProgram parse_program(const BitString& codeword) {
  std::size_t k = 0;
  while (k < codeword.size() && codeword[k] == 1) ++k;
  if (k >= codeword.size() || codeword.size() != 2 * k + 1) {
    throw std::invalid_argument("parse_program: '" + codeword.to_string() + "' is not of the form 1^k 0 b with |b| = k");
  }
  return make_program(codeword.slice(k + 1, k));
}

std::vector<ToyProgram> enumerate_programs(std::size_t max_len) {
  std::vector<ToyProgram> out;
  for (std::size_t k = 0; 2 * k + 1 <= max_len; ++k) {
    const std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t v = 0; v < count; ++v) out.push_back(program_at(count - 1 + v));
  }
  return out;
}

std::vector<Opcode> decode_body(const BitString& body) {
  std::vector<Opcode> code;
  for (std::size_t i = 0; i + 1 < body.size(); i += 2) {
    code.push_back(static_cast<Opcode>((body[i] << 1) | body[i + 1]));
  }
  if (body.size() % 2 == 1) code.push_back(Opcode::halt);
  return code;
}

ToyMachine::ToyMachine(const ToyProgram& program) : code_(decode_body(program.body())) {
  head_values_.insert(0);
}

void ToyMachine::step() {
  const Opcode op = code_[pc_];
  ++status_.steps;
  switch (op) {
    case Opcode::inc:
      ++acc_;
      ++pc_;
      break;
    case Opcode::dec:
      if (acc_ > 0) --acc_;
      dec_since_head_ = true;
      ++pc_;
      break;
    case Opcode::halt:
      status_.outcome = Outcome::halted;
      return;
    case Opcode::jnz:
      if (acc_ == 0) {
        ++pc_;
        break;
      }
      pc_ = 0;
      if (!dec_since_head_ && acc_ > acc_at_head_) {
        status_.outcome = Outcome::nonhalt_certified;
        status_.reason = NonHaltReason::monotone_loop;
        return;
      }
      if (!head_values_.insert(acc_).second) {
        status_.outcome = Outcome::nonhalt_certified;
        status_.reason = NonHaltReason::configuration_repeat;
        return;
      }
      acc_at_head_ = acc_;
      dec_since_head_ = false;
      return;
  }
  if (pc_ >= code_.size()) status_.outcome = Outcome::halted;
}

const MachineStatus& ToyMachine::run_until(std::uint64_t budget) {
  status_.budget = budget;
  if (status_.resolved()) return status_;
  if (code_.empty()) {
    status_.outcome = Outcome::halted;
    return status_;
  }
  while (!status_.resolved() && status_.steps < budget) step();
  return status_;
}

MachineStatus run_program(const ToyProgram& p, std::uint64_t budget) {
  ToyMachine m(p);
  return m.run_until(budget);
}

}  // namespace qrand::ait
