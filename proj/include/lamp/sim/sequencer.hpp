#pragma once

// One sequencer: four m-registers, a read-only slice of the A-matrix, a row
// index register, a flag, command memory and a program counter. Every step
// costs one cycle, stalls included.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"
#include "lamp/sim/instruction.hpp"

namespace lamp::sim {

struct SequencerState {
  std::size_t width = 0;
  std::array<BitVector, kRegisterCount> regs;
  std::vector<BitVector> a_matrix;
  std::size_t row_idx = 0;
  bool flag = false;
  std::size_t pc = 0;
  std::vector<Instruction> program;
  bool halted = false;
  std::uint64_t cycles = 0;

  SequencerState() = default;

  SequencerState(std::size_t n, std::vector<Instruction> prog,
                 std::vector<BitVector> rows = {})
      : width(n), a_matrix(std::move(rows)), program(std::move(prog)) {
    for (auto& r : regs) r = BitVector(n);
    for (const auto& row : a_matrix)
      if (row.size() != n) throw LengthMismatch(row.size(), n);
    halted = program.empty();
  }

  BitVector& reg(Src s) { return regs[static_cast<std::size_t>(s)]; }
  const BitVector& reg(Src s) const { return regs[static_cast<std::size_t>(s)]; }

  const BitVector& read(Src s) const {
    if (s != Src::Row) return reg(s);
    if (row_idx >= a_matrix.size()) throw InvalidRowIndex(row_idx, a_matrix.size());
    return a_matrix[row_idx];
  }

  const Instruction& current() const {
    if (pc >= program.size()) throw PcOutOfRange(pc, program.size());
    return program[pc];
  }

  friend bool operator==(const SequencerState&, const SequencerState&) = default;
};

namespace detail {

inline BitVector apply_binop(BinOp op, const BitVector& a, const BitVector& b) {
  switch (op) {
    case BinOp::And: return vand(a, b);
    case BinOp::Or: return vor(a, b);
    case BinOp::Xor: return vxor(a, b);
    case BinOp::Pass: break;
  }
  return a;
}

inline BitVector apply_unop(UnOp op, BitVector v) {
  switch (op) {
    case UnOp::Not: return vnot(v);
    case UnOp::Slc: return sls(v);
    case UnOp::Nopu: break;
  }
  return v;
}

}  // namespace detail

// Executes the instruction at pc. Send/Recv need a partner and are resolved
// by the grid; stepping one here is a stall.
inline void step_in_place(SequencerState& s) {
  if (s.halted) return;
  const Instruction& ins = s.current();
  std::size_t next = s.pc + 1;
  switch (ins.kind) {
    case Kind::Logic: {
      const BitVector& a = s.read(ins.src_a);
      BitVector r = ins.binop == BinOp::Pass ? a : detail::apply_binop(ins.binop, a, s.read(ins.src_b));
      s.reg(ins.dst) = detail::apply_unop(ins.unop, std::move(r));
      break;
    }
    case Kind::Orf:
      s.flag = orf(s.read(ins.dst));
      break;
    case Kind::Jump:
      next = ins.operand;
      break;
    case Kind::JumpIfFlag:
      if (s.flag) next = ins.operand;
      break;
    case Kind::JumpIfNotFlag:
      if (!s.flag) next = ins.operand;
      break;
    case Kind::SetRow:
      if (ins.operand > s.a_matrix.size()) throw InvalidRowIndex(ins.operand, s.a_matrix.size());
      s.row_idx = ins.operand;
      break;
    case Kind::IncRow:
      if (s.row_idx >= s.a_matrix.size()) throw InvalidRowIndex(s.row_idx + 1, s.a_matrix.size());
      ++s.row_idx;
      break;
    case Kind::JumpIfRowLt:
      if (s.row_idx < s.a_matrix.size()) next = ins.operand;
      break;
    case Kind::LoadImm:
      if (ins.literal.size() != s.width) throw LengthMismatch(ins.literal.size(), s.width);
      s.reg(ins.dst) = ins.literal;
      break;
    case Kind::Send:
    case Kind::Recv:
      next = s.pc;
      break;
    case Kind::Halt:
      s.halted = true;
      next = s.pc;
      break;
  }
  s.pc = next;
  ++s.cycles;
}

inline SequencerState step(SequencerState s) {
  step_in_place(s);
  return s;
}

}  // namespace lamp::sim
