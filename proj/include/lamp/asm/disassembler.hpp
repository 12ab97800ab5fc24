#pragma once

// Canonical text for a program image. Every non-empty cell gets its own
// ".cell" section and jump targets become labels "L<address>", so
// assemble(disassemble(p)) == p for every image decode() accepts.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "lamp/error.hpp"
#include "lamp/sim/grid.hpp"
#include "lamp/sim/instruction.hpp"
#include "lamp/sim/program.hpp"

namespace lamp::assembler {

inline std::string disassemble(const sim::ProgramImage& image) {
  std::string out;
  if (image.width != 0) out += ".width " + std::to_string(image.width) + "\n";

  for (std::size_t i = 0; i < sim::kCellCount; ++i) {
    const auto& prog = image.programs[i];
    if (prog.empty() && image.row_counts[i] == 0) continue;
    const auto cell = sim::cell_coord(i);
    out += ".cell " + std::to_string(cell.row) + "," + std::to_string(cell.col) + "\n";
    if (image.row_counts[i] != 0) out += ".rows " + std::to_string(image.row_counts[i]) + "\n";

    std::set<std::uint32_t> targets;
    for (const auto& ins : prog) {
      if (!ins.is_jump()) continue;
      if (ins.operand >= prog.size())
        throw MalformedBinary("jump target " + std::to_string(ins.operand) + " outside program");
      targets.insert(ins.operand);
    }

    for (std::size_t pc = 0; pc < prog.size(); ++pc) {
      const auto& ins = prog[pc];
      if (targets.count(static_cast<std::uint32_t>(pc)))
        out += "L" + std::to_string(pc) + ": ";
      else
        out += "    ";
      if (ins.is_jump()) {
        out += std::string(sim::name(ins.kind)) + " L" + std::to_string(ins.operand);
      } else {
        out += sim::describe(ins);
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace lamp::assembler
