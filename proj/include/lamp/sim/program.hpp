#pragma once

// Program image for the whole grid and its binary encoding.
//
// Binary layout, all integers little-endian:
//   "LAMP1"                      5-byte magic, format version 1
//   u32 width                    vector width n (0 = no literals, taken at load)
//   u32 row_count[16]            A-matrix rows expected per cell (0 = any)
//   u32 instr_count[16]          program length per cell, row-major cells
//   per cell, per instruction, a 12-byte record:
//     u8 kind, u8 binop, u8 src_a, u8 src_b, u8 unop, u8 dst, u8 dir, u8 0,
//     u32 operand
//   LOADM records are followed by ceil(n/8) literal bytes, coordinate 1 in the
//   most significant bit of the first byte, unused trailing bits zero.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"
#include "lamp/sim/grid.hpp"
#include "lamp/sim/instruction.hpp"

namespace lamp::sim {

inline constexpr std::string_view kMagic = "LAMP1";
inline constexpr std::size_t kRecordBytes = 12;

struct ProgramImage {
  std::size_t width = 0;
  std::array<std::uint32_t, kCellCount> row_counts{};
  std::array<std::vector<Instruction>, kCellCount> programs;

  friend bool operator==(const ProgramImage&, const ProgramImage&) = default;
};

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(data_[pos_++])) << (8 * i);
    return v;
  }

  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool at_end() const noexcept { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw MalformedBinary("truncated at byte " + std::to_string(pos_));
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

template <typename Enum>
Enum checked_enum(std::uint8_t raw, std::size_t count, const char* field) {
  if (raw >= count) throw MalformedBinary(std::string("bad ") + field + " " + std::to_string(raw));
  return static_cast<Enum>(raw);
}

}  // namespace detail

inline std::string encode(const ProgramImage& image) {
  std::string out(kMagic);
  detail::put_u32(out, static_cast<std::uint32_t>(image.width));
  for (auto rc : image.row_counts) detail::put_u32(out, rc);
  for (const auto& p : image.programs) detail::put_u32(out, static_cast<std::uint32_t>(p.size()));
  for (const auto& prog : image.programs) {
    for (const auto& ins : prog) {
      out.push_back(static_cast<char>(ins.kind));
      out.push_back(static_cast<char>(ins.binop));
      out.push_back(static_cast<char>(ins.src_a));
      out.push_back(static_cast<char>(ins.src_b));
      out.push_back(static_cast<char>(ins.unop));
      out.push_back(static_cast<char>(ins.dst));
      out.push_back(static_cast<char>(ins.dir));
      out.push_back(0);
      detail::put_u32(out, ins.operand);
      if (ins.kind == Kind::LoadImm) {
        if (ins.literal.size() != image.width)
          throw LengthMismatch(ins.literal.size(), image.width);
        std::string bytes((image.width + 7) / 8, '\0');
        for (std::size_t b = 0; b < image.width; ++b)
          if (ins.literal.test(b)) bytes[b / 8] = static_cast<char>(bytes[b / 8] | (0x80 >> (b % 8)));
        out += bytes;
      }
    }
  }
  return out;
}

inline ProgramImage decode(std::string_view data) {
  detail::Reader in(data);
  if (in.bytes(kMagic.size()) != kMagic) throw MalformedBinary("bad magic");
  ProgramImage image;
  image.width = in.u32();
  std::array<std::uint32_t, kCellCount> counts{};
  for (auto& rc : image.row_counts) rc = in.u32();
  for (auto& c : counts) c = in.u32();

  for (std::size_t cell = 0; cell < kCellCount; ++cell) {
    // Each record needs at least kRecordBytes; refuse counts the data cannot hold.
    if (counts[cell] > data.size() / kRecordBytes) throw MalformedBinary("instruction count too large");
    auto& prog = image.programs[cell];
    prog.reserve(counts[cell]);
    for (std::uint32_t k = 0; k < counts[cell]; ++k) {
      Instruction ins;
      ins.kind = detail::checked_enum<Kind>(in.u8(), kKindCount, "kind");
      ins.binop = detail::checked_enum<BinOp>(in.u8(), kBinOpNames.size(), "binop");
      ins.src_a = detail::checked_enum<Src>(in.u8(), kSrcNames.size(), "src_a");
      ins.src_b = detail::checked_enum<Src>(in.u8(), kSrcNames.size(), "src_b");
      ins.unop = detail::checked_enum<UnOp>(in.u8(), kUnOpNames.size(), "unop");
      ins.dst = detail::checked_enum<Src>(in.u8(), kSrcNames.size(), "dst");
      ins.dir = detail::checked_enum<Dir>(in.u8(), kDirCount, "dir");
      if (in.u8() != 0) throw MalformedBinary("nonzero reserved byte");
      ins.operand = in.u32();
      const bool needs_mreg = ins.kind == Kind::Logic || ins.kind == Kind::LoadImm ||
                              ins.kind == Kind::Send || ins.kind == Kind::Recv;
      if (needs_mreg && !is_register(ins.dst))
        throw MalformedBinary("destination must be an m-register");
      if (ins.kind == Kind::LoadImm) {
        if (image.width == 0) throw MalformedBinary("LOADM in a program without width");
        const auto bytes = in.bytes((image.width + 7) / 8);
        ins.literal = BitVector(image.width);
        for (std::size_t b = 0; b < image.width; ++b)
          ins.literal.set(b, static_cast<std::uint8_t>(bytes[b / 8]) & (0x80 >> (b % 8)));
        for (std::size_t b = image.width; b < bytes.size() * 8; ++b)
          if (static_cast<std::uint8_t>(bytes[b / 8]) & (0x80 >> (b % 8)))
            throw MalformedBinary("nonzero literal padding");
      }
      if (!(ins == canonical(ins))) throw MalformedBinary("non-canonical instruction record");
      prog.push_back(std::move(ins));
    }
  }
  if (!in.at_end()) throw MalformedBinary("trailing bytes");
  return image;
}

// Fresh grid of width n running `image`. Tables are per cell; a cell without a
// table gets an empty A-matrix.
inline Grid make_grid(const ProgramImage& image, std::size_t width,
                      const std::array<std::vector<BitVector>, kCellCount>& tables = {}) {
  if (image.width != 0 && image.width != width) throw LengthMismatch(image.width, width);
  Grid g;
  for (std::size_t i = 0; i < kCellCount; ++i) {
    const auto expected = image.row_counts[i];
    if (expected != 0 && expected != tables[i].size())
      throw Error("cell " + to_string(cell_coord(i)) + " expects " + std::to_string(expected) +
                  " A-matrix rows, got " + std::to_string(tables[i].size()));
    g.cells[i] = SequencerState(width, image.programs[i], tables[i]);
  }
  return g;
}

}  // namespace lamp::sim
