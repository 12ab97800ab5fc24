#pragma once

// The 4x4 multiprocessor. Cells sit on a torus with a Moore neighborhood, so
// every cell has eight distinct neighbors. One grid_step advances every live
// cell by one cycle in row-major order; SEND/RECV are blocking rendezvous that
// complete when both partners face each other in the same cycle.
//
// Trace lines (one per live cell per cycle): "cycle<TAB>row,col<TAB>pc<TAB>instruction".

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"
#include "lamp/sim/instruction.hpp"
#include "lamp/sim/sequencer.hpp"

namespace lamp::sim {

inline constexpr int kGridRows = 4;
inline constexpr int kGridCols = 4;
inline constexpr std::size_t kCellCount = kGridRows * kGridCols;

inline constexpr std::size_t cell_index(CellCoord c) noexcept {
  return static_cast<std::size_t>(c.row * kGridCols + c.col);
}

inline constexpr CellCoord cell_coord(std::size_t i) noexcept {
  return {static_cast<int>(i) / kGridCols, static_cast<int>(i) % kGridCols};
}

inline constexpr CellCoord neighbor(CellCoord c, Dir d) noexcept {
  const auto [dr, dc] = offset(d);
  return {(c.row + dr + kGridRows) % kGridRows, (c.col + dc + kGridCols) % kGridCols};
}

struct Grid {
  std::array<SequencerState, kCellCount> cells;
  std::uint64_t global_cycle = 0;
  std::ostream* trace = nullptr;

  SequencerState& at(CellCoord c) { return cells[cell_index(c)]; }
  const SequencerState& at(CellCoord c) const { return cells[cell_index(c)]; }

  bool all_halted() const noexcept {
    for (const auto& c : cells)
      if (!c.halted) return false;
    return true;
  }

  // Bit-identical machine state; the trace sink is not part of it.
  friend bool operator==(const Grid& a, const Grid& b) {
    return a.global_cycle == b.global_cycle && a.cells == b.cells;
  }
};

namespace detail {

inline bool faces(const Instruction& mine, const Instruction& theirs) {
  const bool pair = (mine.kind == Kind::Send && theirs.kind == Kind::Recv) ||
                    (mine.kind == Kind::Recv && theirs.kind == Kind::Send);
  return pair && theirs.dir == opposite(mine.dir);
}

}  // namespace detail

inline void grid_step(Grid& g) {
  if (g.all_halted()) return;

  std::array<bool, kCellCount> done{};
  std::vector<CellCoord> stalled;
  bool progress = false;

  for (std::size_t i = 0; i < kCellCount; ++i) {
    SequencerState& cell = g.cells[i];
    if (cell.halted || done[i]) continue;
    const CellCoord here = cell_coord(i);
    try {
      const Instruction& ins = cell.current();
      if (g.trace)
        *g.trace << g.global_cycle << '\t' << here.row << ',' << here.col << '\t' << cell.pc
                 << '\t' << describe(ins) << '\n';
      done[i] = true;

      if (ins.kind != Kind::Send && ins.kind != Kind::Recv) {
        step_in_place(cell);
        progress = true;
        continue;
      }

      const std::size_t j = cell_index(neighbor(here, ins.dir));
      SequencerState& other = g.cells[j];
      const bool ready = !other.halted && !done[j] && other.pc < other.program.size() &&
                         detail::faces(ins, other.program[other.pc]);
      if (!ready) {
        ++cell.cycles;
        stalled.push_back(here);
        continue;
      }

      const Instruction& theirs = other.program[other.pc];
      if (g.trace) {
        const CellCoord there = cell_coord(j);
        *g.trace << g.global_cycle << '\t' << there.row << ',' << there.col << '\t' << other.pc
                 << '\t' << describe(theirs) << '\n';
      }
      SequencerState& sender = ins.kind == Kind::Send ? cell : other;
      SequencerState& receiver = ins.kind == Kind::Send ? other : cell;
      const Instruction& send_ins = ins.kind == Kind::Send ? ins : theirs;
      const Instruction& recv_ins = ins.kind == Kind::Send ? theirs : ins;
      receiver.reg(recv_ins.dst) = sender.reg(send_ins.dst);
      ++cell.pc;
      ++cell.cycles;
      ++other.pc;
      ++other.cycles;
      done[j] = true;
      progress = true;
    } catch (SimError& e) {
      e.attach_cell(here);
      throw;
    }
  }

  if (!progress) throw DeadlockDetected(std::move(stalled));
  ++g.global_cycle;
}

enum class Outcome { AllHalted, CycleBudgetExhausted, Deadlock };

inline const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::AllHalted: return "all-halted";
    case Outcome::CycleBudgetExhausted: return "cycle-budget-exhausted";
    case Outcome::Deadlock: return "deadlock";
  }
  return "?";
}

struct RunResult {
  Outcome outcome = Outcome::AllHalted;
  std::vector<CellCoord> stalled;  // deadlocked cells
};

// Steps until every cell halts, the budget runs out or the grid deadlocks.
// Step errors propagate with the failing cell attached.
inline RunResult run(Grid& g, std::uint64_t max_cycles) {
  while (true) {
    if (g.all_halted()) return {Outcome::AllHalted, {}};
    if (g.global_cycle >= max_cycles) return {Outcome::CycleBudgetExhausted, {}};
    try {
      grid_step(g);
    } catch (const DeadlockDetected& e) {
      return {Outcome::Deadlock, e.cells()};
    }
  }
}

}  // namespace lamp::sim
