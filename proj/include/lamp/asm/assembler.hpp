#pragma once

// Two-pass assembler for sequencer programs.
//
//   program      := (directive | labeled_line | blank)*
//   directive    := ".width" INT | ".cell" INT "," INT | ".rows" INT
//   labeled_line := [IDENT ":"] instr [";" comment]
//   instr        := "LOGIC" BINOP SRC "," (SRC | "-") "," UNOP "," MREG
//                 | "ORF" SRC | "JMP" IDENT | "JF" IDENT | "JNF" IDENT
//                 | "SETROW" INT | "INCROW" | "JRLT" IDENT
//                 | "SEND" DIR "," MREG | "RECV" DIR "," MREG
//                 | "LOADM" MREG "," BITS | "HALT"
//
// Mnemonics and operand keywords are case-insensitive; labels are
// case-sensitive and scoped to their cell section. Code before the first
// ".cell" is the default program, loaded into every cell that has no section
// of its own. ".rows" declares the A-matrix row count of the current section.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"
#include "lamp/sim/grid.hpp"
#include "lamp/sim/instruction.hpp"
#include "lamp/sim/program.hpp"

namespace lamp::assembler {

using sim::BinOp;
using sim::Dir;
using sim::Instruction;
using sim::Kind;
using sim::ProgramImage;
using sim::Src;
using sim::UnOp;

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

inline bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

// Splits a comment-free line into words and the punctuation ',' and ':'.
inline std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ',' || c == ':') {
      out.push_back({line.substr(i, 1), i + 1});
      ++i;
    } else if (is_word_char(c)) {
      const std::size_t start = i;
      while (i < line.size() && is_word_char(line[i])) ++i;
      out.push_back({line.substr(start, i - start), start + 1});
    } else {
      throw SyntaxError(line_no, i + 1, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

inline bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

struct PendingJump {
  std::size_t index;  // instruction slot in the section
  std::string label;
  std::size_t line;
  std::size_t column;
};

struct Section {
  std::vector<Instruction> code;
  std::map<std::string, std::uint32_t, std::less<>> labels;
  std::vector<PendingJump> jumps;
  std::uint32_t rows = 0;
};

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line_no, std::size_t line_len)
      : toks_(std::move(tokens)), line_(line_no), end_col_(line_len + 1) {}

  bool done() const noexcept { return pos_ == toks_.size(); }

  const Token& peek() const {
    if (done()) throw SyntaxError(line_, end_col_, "unexpected end of line");
    return toks_[pos_];
  }

  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

  bool peek_is(std::string_view s, std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() && toks_[pos_ + ahead].text == s;
  }

  void expect(std::string_view punct) {
    const Token& t = peek();
    if (t.text != punct)
      throw SyntaxError(line_, t.column, "expected '" + std::string(punct) + "', got '" +
                                             std::string(t.text) + "'");
    ++pos_;
  }

  void expect_end() const {
    if (!done())
      throw SyntaxError(line_, toks_[pos_].column,
                        "unexpected '" + std::string(toks_[pos_].text) + "'");
  }

  template <typename Enum, std::size_t N>
  Enum keyword(const std::array<std::string_view, N>& names, const char* what) {
    const Token& t = next();
    if (auto v = sim::lookup<Enum>(names, t.text)) return *v;
    throw SyntaxError(line_, t.column, std::string("expected ") + what + ", got '" +
                                           std::string(t.text) + "'");
  }

  Src mreg() {
    const Token& t = peek();
    const Src s = keyword<Src>(sim::kSrcNames, "register MA..MD");
    if (!sim::is_register(s)) throw SyntaxError(line_, t.column, "ROW is read-only here");
    return s;
  }

  Src src() { return keyword<Src>(sim::kSrcNames, "source MA..MD or ROW"); }

  std::uint32_t integer(std::uint32_t max = UINT32_MAX) {
    const Token& t = next();
    std::uint32_t v = 0;
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last || v > max)
      throw SyntaxError(line_, t.column, "expected integer, got '" + std::string(t.text) + "'");
    return v;
  }

  const Token& ident() {
    const Token& t = next();
    if (!is_ident(t.text))
      throw SyntaxError(line_, t.column, "expected label, got '" + std::string(t.text) + "'");
    return t;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t end_col_;
};

}  // namespace detail

inline ProgramImage assemble(std::string_view source) {
  using detail::LineParser;
  using detail::Section;

  Section default_section;
  std::array<std::optional<Section>, sim::kCellCount> cells;
  Section* current = &default_section;
  std::optional<std::size_t> width;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    auto end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto semi = line.find(';'); semi != std::string_view::npos) line = line.substr(0, semi);

    LineParser p(detail::tokenize(line, line_no), line_no, line.size());
    if (p.done()) {
      if (end == source.size()) break;
      continue;
    }

    // Directives.
    if (p.peek().text.starts_with('.')) {
      const auto& d = p.next();
      if (d.text == ".width") {
        const auto col = p.peek().column;
        const std::size_t w = p.integer();
        if (w == 0) throw SyntaxError(line_no, col, ".width must be positive");
        if (width && *width != w) throw SyntaxError(line_no, d.column, "conflicting .width");
        width = w;
      } else if (d.text == ".cell") {
        const std::uint32_t r = p.integer(sim::kGridRows - 1);
        p.expect(",");
        const std::uint32_t c = p.integer(sim::kGridCols - 1);
        auto& slot = cells[sim::cell_index({static_cast<int>(r), static_cast<int>(c)})];
        if (slot) throw SyntaxError(line_no, d.column, "cell section reopened");
        slot.emplace();
        current = &*slot;
      } else if (d.text == ".rows") {
        current->rows = p.integer();
      } else {
        throw SyntaxError(line_no, d.column, "unknown directive '" + std::string(d.text) + "'");
      }
      p.expect_end();
      if (end == source.size()) break;
      continue;
    }

    // Optional label.
    if (p.peek_is(":", 1)) {
      const auto& label = p.ident();
      p.expect(":");
      const auto addr = static_cast<std::uint32_t>(current->code.size());
      if (!current->labels.emplace(std::string(label.text), addr).second)
        throw DuplicateLabel(line_no, label.column, std::string(label.text));
    }

    const auto& mn = p.next();
    const auto kind = sim::lookup<Kind>(sim::kKindNames, mn.text);
    if (!kind) throw UnknownMnemonic(line_no, mn.column, std::string(mn.text));

    Instruction ins;
    switch (*kind) {
      case Kind::Logic: {
        const BinOp op = p.keyword<BinOp>(sim::kBinOpNames, "AND, OR, XOR or PASS");
        const Src a = p.src();
        p.expect(",");
        Src b = Src::MA;
        if (p.peek_is("-")) {
          if (op != BinOp::Pass)
            throw SyntaxError(line_no, p.peek().column, "'-' operand is only valid with PASS");
          p.next();
        } else {
          b = p.src();
        }
        p.expect(",");
        const UnOp u = p.keyword<UnOp>(sim::kUnOpNames, "NOT, SLC or NOPU");
        p.expect(",");
        ins = Instruction::logic(op, a, b, u, p.mreg());
        break;
      }
      case Kind::Orf:
        ins = Instruction::orf(p.src());
        break;
      case Kind::Jump:
      case Kind::JumpIfFlag:
      case Kind::JumpIfNotFlag:
      case Kind::JumpIfRowLt: {
        const auto& target = p.ident();
        current->jumps.push_back(
            {current->code.size(), std::string(target.text), line_no, target.column});
        ins = Instruction::jump(*kind, 0);
        break;
      }
      case Kind::SetRow:
        ins = Instruction::set_row(p.integer());
        break;
      case Kind::IncRow:
        ins = Instruction::inc_row();
        break;
      case Kind::LoadImm: {
        const Src r = p.mreg();
        p.expect(",");
        const auto& bits = p.next();
        BitVector v;
        try {
          v = BitVector::parse(bits.text);
        } catch (const Error&) {
          throw SyntaxError(line_no, bits.column, "expected bit string, got '" +
                                                      std::string(bits.text) + "'");
        }
        if (!width) throw SyntaxError(line_no, mn.column, "LOADM before .width");
        if (v.size() != *width) throw LiteralWidthMismatch(line_no, bits.column, *width, v.size());
        ins = Instruction::load_imm(r, std::move(v));
        break;
      }
      case Kind::Send:
      case Kind::Recv: {
        const Dir d = p.keyword<Dir>(sim::kDirNames, "direction");
        p.expect(",");
        const Src r = p.mreg();
        ins = *kind == Kind::Send ? Instruction::send(d, r) : Instruction::recv(d, r);
        break;
      }
      case Kind::Halt:
        ins = Instruction::halt();
        break;
    }
    p.expect_end();
    current->code.push_back(std::move(ins));
    if (end == source.size()) break;
  }

  // Pass two: resolve jump targets within each section.
  auto resolve = [](Section& s) {
    for (const auto& j : s.jumps) {
      const auto it = s.labels.find(j.label);
      if (it == s.labels.end()) throw UnresolvedLabel(j.line, j.column, j.label);
      s.code[j.index].operand = it->second;
    }
  };
  resolve(default_section);
  for (auto& c : cells)
    if (c) resolve(*c);

  ProgramImage image;
  image.width = width.value_or(0);
  for (std::size_t i = 0; i < sim::kCellCount; ++i) {
    const Section& s = cells[i] ? *cells[i] : default_section;
    image.programs[i] = s.code;
    image.row_counts[i] = s.code.empty() ? 0 : s.rows;  // an empty cell never reads its table
  }
  return image;
}

}  // namespace lamp::assembler
