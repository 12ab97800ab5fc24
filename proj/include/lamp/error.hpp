#pragma once

// Exception hierarchy shared by every lamp module. Each failure named by a
// contract gets its own type so callers can catch precisely.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lamp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t lhs, std::size_t rhs)
      : Error("length mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)),
        lhs_(lhs),
        rhs_(rhs) {}

  std::size_t lhs() const noexcept { return lhs_; }
  std::size_t rhs() const noexcept { return rhs_; }

 private:
  std::size_t lhs_;
  std::size_t rhs_;
};

class ZeroLength : public Error {
 public:
  ZeroLength() : Error("vector length must be positive") {}
};

class NotCompacted : public Error {
 public:
  NotCompacted() : Error("quality vector is not in compacted (prefix) form") {}
};

// Malformed text. line() is 1-based, 0 when the input was not line oriented.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class WidthMismatch : public ParseError {
 public:
  WidthMismatch(std::size_t expected, std::size_t got, std::size_t line = 0)
      : ParseError("width mismatch: expected " + std::to_string(expected) + ", got " +
                       std::to_string(got),
                   line) {}
};

class EmptyTable : public ParseError {
 public:
  EmptyTable() : ParseError("table has no rows") {}
};

class ModeMismatch : public Error {
 public:
  ModeMismatch() : Error("ternary query against a binary table") {}
  explicit ModeMismatch(const std::string& what) : Error(what) {}
};

// ---------------------------------------------------------------------------
// Simulator

struct CellCoord {
  int row = 0;
  int col = 0;
  friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

inline std::string to_string(const CellCoord& c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

class SimError : public Error {
 public:
  explicit SimError(std::string message) : Error(message), message_(std::move(message)) {}

  const std::vector<CellCoord>& cells() const noexcept { return cells_; }

  void attach_cell(CellCoord c) {
    cells_.push_back(c);
    full_ = "cell " + to_string(c) + ": " + message_;
  }

  const char* what() const noexcept override {
    return full_.empty() ? Error::what() : full_.c_str();
  }

 protected:
  std::vector<CellCoord> cells_;

 private:
  std::string message_;
  std::string full_;
};

class InvalidRowIndex : public SimError {
 public:
  InvalidRowIndex(std::size_t row, std::size_t count)
      : SimError("row index " + std::to_string(row) + " out of range (" + std::to_string(count) +
                 " rows)") {}
};

class PcOutOfRange : public SimError {
 public:
  PcOutOfRange(std::size_t pc, std::size_t size)
      : SimError("pc " + std::to_string(pc) + " outside program of " + std::to_string(size) +
                 " instructions") {}
};

class DeadlockDetected : public SimError {
 public:
  explicit DeadlockDetected(std::vector<CellCoord> stalled) : SimError(describe(stalled)) {
    cells_ = std::move(stalled);
  }

 private:
  static std::string describe(const std::vector<CellCoord>& stalled) {
    std::string s = "deadlock: stalled cells";
    for (const auto& c : stalled) s += " " + to_string(c);
    return s;
  }
};

// ---------------------------------------------------------------------------
// Assembler

class AsmError : public Error {
 public:
  AsmError(const std::string& kind, std::size_t line, std::size_t column, const std::string& msg)
      : Error(kind + " at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SyntaxError : public AsmError {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& msg)
      : AsmError("syntax error", line, column, msg) {}
};

class UnknownMnemonic : public AsmError {
 public:
  UnknownMnemonic(std::size_t line, std::size_t column, const std::string& mnemonic)
      : AsmError("unknown mnemonic", line, column, mnemonic) {}
};

class DuplicateLabel : public AsmError {
 public:
  DuplicateLabel(std::size_t line, std::size_t column, const std::string& label)
      : AsmError("duplicate label", line, column, label) {}
};

class UnresolvedLabel : public AsmError {
 public:
  UnresolvedLabel(std::size_t line, std::size_t column, const std::string& label)
      : AsmError("unresolved label", line, column, label) {}
};

class LiteralWidthMismatch : public AsmError {
 public:
  LiteralWidthMismatch(std::size_t line, std::size_t column, std::size_t expected, std::size_t got)
      : AsmError("width mismatch", line, column,
                 "literal has " + std::to_string(got) + " bits, .width is " +
                     std::to_string(expected)) {}
};

class MalformedBinary : public Error {
 public:
  explicit MalformedBinary(const std::string& what) : Error("malformed program binary: " + what) {}
};

}  // namespace lamp
