#pragma once

// Sequencer instruction set.
//
// The logic processor is two-stage: an input multiplexer picks operands from
// the five sources {MA, MB, MC, MD, ROW}, a binary stage applies AND/OR/XOR
// (or PASS), a unary stage applies NOT/SLC (or NOPU), and the result lands in
// one of the four m-registers. Control flow, the flag, the row index register
// and the neighbor exchange complete the machine.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lamp/bit_vector.hpp"

namespace lamp::sim {

enum class Kind : std::uint8_t {
  Logic,
  Orf,
  Jump,
  JumpIfFlag,
  JumpIfNotFlag,
  SetRow,
  IncRow,
  JumpIfRowLt,
  LoadImm,
  Send,
  Recv,
  Halt,
};
inline constexpr std::size_t kKindCount = 12;

enum class BinOp : std::uint8_t { And, Or, Xor, Pass };
enum class UnOp : std::uint8_t { Not, Slc, Nopu };
enum class Src : std::uint8_t { MA, MB, MC, MD, Row };
enum class Dir : std::uint8_t { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::size_t kRegisterCount = 4;
inline constexpr std::size_t kDirCount = 8;

inline constexpr bool is_register(Src s) noexcept { return s != Src::Row; }

inline constexpr Dir opposite(Dir d) noexcept {
  return static_cast<Dir>((static_cast<unsigned>(d) + 4) % kDirCount);
}

// (row delta, column delta)
inline constexpr std::array<int, 2> offset(Dir d) noexcept {
  constexpr std::array<std::array<int, 2>, kDirCount> table{{
      {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1},
  }};
  return table[static_cast<std::size_t>(d)];
}

struct Instruction {
  Kind kind = Kind::Halt;
  BinOp binop = BinOp::Pass;
  Src src_a = Src::MA;
  Src src_b = Src::MA;  // ignored (and kept at MA) for PASS
  UnOp unop = UnOp::Nopu;
  Src dst = Src::MA;    // Logic dst, Orf source, LoadImm/Send/Recv register
  Dir dir = Dir::N;
  std::uint32_t operand = 0;  // jump target or SETROW immediate
  BitVector literal;          // LoadImm only

  friend bool operator==(const Instruction&, const Instruction&) = default;

  static Instruction logic(BinOp op, Src a, Src b, UnOp u, Src dst) {
    Instruction i;
    i.kind = Kind::Logic;
    i.binop = op;
    i.src_a = a;
    i.src_b = op == BinOp::Pass ? Src::MA : b;
    i.unop = u;
    i.dst = dst;
    return i;
  }
  static Instruction pass(Src a, UnOp u, Src dst) { return logic(BinOp::Pass, a, Src::MA, u, dst); }
  static Instruction orf(Src s) {
    Instruction i;
    i.kind = Kind::Orf;
    i.dst = s;
    return i;
  }
  static Instruction jump(Kind k, std::uint32_t target) {
    Instruction i;
    i.kind = k;
    i.operand = target;
    return i;
  }
  static Instruction set_row(std::uint32_t row) {
    Instruction i;
    i.kind = Kind::SetRow;
    i.operand = row;
    return i;
  }
  static Instruction inc_row() {
    Instruction i;
    i.kind = Kind::IncRow;
    return i;
  }
  static Instruction load_imm(Src reg, BitVector value) {
    Instruction i;
    i.kind = Kind::LoadImm;
    i.dst = reg;
    i.literal = std::move(value);
    return i;
  }
  static Instruction send(Dir d, Src reg) {
    Instruction i;
    i.kind = Kind::Send;
    i.dir = d;
    i.dst = reg;
    return i;
  }
  static Instruction recv(Dir d, Src reg) {
    Instruction i;
    i.kind = Kind::Recv;
    i.dir = d;
    i.dst = reg;
    return i;
  }
  static Instruction halt() { return Instruction{}; }

  bool is_jump() const noexcept {
    return kind == Kind::Jump || kind == Kind::JumpIfFlag || kind == Kind::JumpIfNotFlag ||
           kind == Kind::JumpIfRowLt;
  }
};

// The instruction with every field its kind does not use reset to default.
inline Instruction canonical(const Instruction& ins) {
  switch (ins.kind) {
    case Kind::Logic: return Instruction::logic(ins.binop, ins.src_a, ins.src_b, ins.unop, ins.dst);
    case Kind::Orf: return Instruction::orf(ins.dst);
    case Kind::Jump:
    case Kind::JumpIfFlag:
    case Kind::JumpIfNotFlag:
    case Kind::JumpIfRowLt: return Instruction::jump(ins.kind, ins.operand);
    case Kind::SetRow: return Instruction::set_row(ins.operand);
    case Kind::IncRow: return Instruction::inc_row();
    case Kind::LoadImm: return Instruction::load_imm(ins.dst, ins.literal);
    case Kind::Send: return Instruction::send(ins.dir, ins.dst);
    case Kind::Recv: return Instruction::recv(ins.dir, ins.dst);
    case Kind::Halt: break;
  }
  return Instruction::halt();
}

// ---------------------------------------------------------------------------
// Mnemonics. Shared by the assembler, disassembler and trace output.

inline constexpr std::array<std::string_view, kKindCount> kKindNames{
    "LOGIC", "ORF", "JMP", "JF", "JNF", "SETROW", "INCROW", "JRLT", "LOADM", "SEND", "RECV", "HALT"};
inline constexpr std::array<std::string_view, 4> kBinOpNames{"AND", "OR", "XOR", "PASS"};
inline constexpr std::array<std::string_view, 3> kUnOpNames{"NOT", "SLC", "NOPU"};
inline constexpr std::array<std::string_view, 5> kSrcNames{"MA", "MB", "MC", "MD", "ROW"};
inline constexpr std::array<std::string_view, kDirCount> kDirNames{"N",  "NE", "E", "SE",
                                                                    "S", "SW", "W", "NW"};

inline std::string_view name(Kind k) { return kKindNames[static_cast<std::size_t>(k)]; }
inline std::string_view name(BinOp b) { return kBinOpNames[static_cast<std::size_t>(b)]; }
inline std::string_view name(UnOp u) { return kUnOpNames[static_cast<std::size_t>(u)]; }
inline std::string_view name(Src s) { return kSrcNames[static_cast<std::size_t>(s)]; }
inline std::string_view name(Dir d) { return kDirNames[static_cast<std::size_t>(d)]; }

// Case-insensitive lookup in a mnemonic table.
template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view word) {
  for (std::size_t i = 0; i < N; ++i) {
    const auto& n = names[i];
    if (n.size() != word.size()) continue;
    bool same = true;
    for (std::size_t c = 0; c < n.size() && same; ++c) {
      char w = word[c];
      if (w >= 'a' && w <= 'z') w = static_cast<char>(w - 'a' + 'A');
      same = w == n[c];
    }
    if (same) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

// One-line rendering used by traces; jump targets print as addresses.
inline std::string describe(const Instruction& ins) {
  std::string s(name(ins.kind));
  switch (ins.kind) {
    case Kind::Logic:
      s += ' ';
      s += name(ins.binop);
      s += ' ';
      s += name(ins.src_a);
      s += ", ";
      s += ins.binop == BinOp::Pass ? std::string_view("-") : name(ins.src_b);
      s += ", ";
      s += name(ins.unop);
      s += ", ";
      s += name(ins.dst);
      break;
    case Kind::Orf:
      s += ' ';
      s += name(ins.dst);
      break;
    case Kind::Jump:
    case Kind::JumpIfFlag:
    case Kind::JumpIfNotFlag:
    case Kind::JumpIfRowLt:
    case Kind::SetRow:
      s += ' ' + std::to_string(ins.operand);
      break;
    case Kind::LoadImm:
      s += ' ';
      s += name(ins.dst);
      s += ", " + ins.literal.to_string();
      break;
    case Kind::Send:
    case Kind::Recv:
      s += ' ';
      s += name(ins.dir);
      s += ", ";
      s += name(ins.dst);
      break;
    case Kind::IncRow:
    case Kind::Halt:
      break;
  }
  return s;
}

}  // namespace lamp::sim
