#pragma once

#include "lamp/asm/assembler.hpp"
#include "lamp/asm/disassembler.hpp"
#include "lamp/assoc_engine.hpp"
#include "lamp/assoc_table.hpp"
#include "lamp/bench.hpp"
#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"
#include "lamp/quality.hpp"
#include "lamp/sim/builtin.hpp"
#include "lamp/sim/grid.hpp"
#include "lamp/sim/instruction.hpp"
#include "lamp/sim/program.hpp"
#include "lamp/sim/sequencer.hpp"
#include "lamp/ternary_vector.hpp"
