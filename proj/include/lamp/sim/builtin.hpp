#pragma once

// Canonical associative query program for one sequencer.
//
// Register use: MA holds the query m, MD the best compacted quality vector,
// MB and MC are scratch. Pass 1 scores each row and folds it into MD with the
// and/xor/orf decision. Pass 2 finds the first row whose compacted vector
// equals MD. At HALT, row_idx is the winning row and MC holds that row.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lamp/sim/instruction.hpp"

namespace lamp::sim {

namespace detail {

// MB <- sls(d | mu(m in A) | mu(A in m)) for the row selected by row_idx.
inline void emit_row_quality(std::vector<Instruction>& p) {
  p.push_back(Instruction::logic(BinOp::And, Src::MA, Src::Row, UnOp::Not, Src::MB));   // not(m&a)
  p.push_back(Instruction::logic(BinOp::And, Src::MB, Src::Row, UnOp::Nopu, Src::MC));  // mu(m in A)
  p.push_back(Instruction::logic(BinOp::And, Src::MB, Src::MA, UnOp::Nopu, Src::MB));   // mu(A in m)
  p.push_back(Instruction::logic(BinOp::Or, Src::MB, Src::MC, UnOp::Nopu, Src::MB));
  p.push_back(Instruction::logic(BinOp::Xor, Src::MA, Src::Row, UnOp::Nopu, Src::MC));  // d
  p.push_back(Instruction::logic(BinOp::Or, Src::MB, Src::MC, UnOp::Slc, Src::MB));
}

}  // namespace detail

inline std::vector<Instruction> builtin_query_program(std::size_t rows) {
  std::vector<Instruction> p;
  const auto here = [&p] { return static_cast<std::uint32_t>(p.size()); };

  for (std::size_t r = 0; r < rows; ++r) {
    p.push_back(Instruction::set_row(static_cast<std::uint32_t>(r)));
    detail::emit_row_quality(p);
    if (r == 0) {
      p.push_back(Instruction::pass(Src::MB, UnOp::Nopu, Src::MD));
      continue;
    }
    // flag = orf((MD & MB) ^ MD); flag set means MB is better.
    p.push_back(Instruction::logic(BinOp::And, Src::MD, Src::MB, UnOp::Nopu, Src::MC));
    p.push_back(Instruction::logic(BinOp::Xor, Src::MC, Src::MD, UnOp::Nopu, Src::MC));
    p.push_back(Instruction::orf(Src::MC));
    p.push_back(Instruction::jump(Kind::JumpIfNotFlag, here() + 2));
    p.push_back(Instruction::pass(Src::MB, UnOp::Nopu, Src::MD));
  }

  // Pass 2: first row matching MD. Jumps to `found` are patched afterwards.
  std::vector<std::size_t> exits;
  for (std::size_t r = 0; r < rows; ++r) {
    p.push_back(Instruction::set_row(static_cast<std::uint32_t>(r)));
    detail::emit_row_quality(p);
    p.push_back(Instruction::logic(BinOp::Xor, Src::MB, Src::MD, UnOp::Nopu, Src::MB));
    p.push_back(Instruction::orf(Src::MB));
    exits.push_back(p.size());
    p.push_back(Instruction::jump(Kind::JumpIfNotFlag, 0));
  }
  p.push_back(Instruction::halt());
  const auto found = here();
  p.push_back(Instruction::pass(Src::Row, UnOp::Nopu, Src::MC));
  p.push_back(Instruction::halt());
  for (auto e : exits) p[e].operand = found;
  return p;
}

}  // namespace lamp::sim
