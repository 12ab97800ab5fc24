// lamp: command-line front end for the metric, the associative engine, the
// sequencer grid and the assembler.
//
// Exit status: 0 success, 1 runtime failure (deadlock, budget, sim fault),
// 2 usage or input error. Diagnostics go to stderr.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamp/lamp.hpp"

using json = nlohmann::ordered_json;

namespace {

enum class Format { Text, Tsv, Json };

struct UsageError : lamp::Error {
  using lamp::Error::Error;
};

struct Out {
  Format fmt = Format::Text;
  bool color = false;
  std::string command;

  std::string bold(const std::string& s) const { return color ? "\x1b[1m" + s + "\x1b[0m" : s; }
  std::string green(const std::string& s) const { return color ? "\x1b[1;32m" + s + "\x1b[0m" : s; }
};

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// FNV-1a, used only to fingerprint inputs in reports.
std::string digest(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return "fnv1a64:" + hex64(h);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit_json(const Out& out, json doc) {
  json full;
  full["command"] = out.command;
  for (auto& [k, v] : doc.items()) full[k] = std::move(v);
  std::cout << full.dump(2) << '\n';
}

void tsv(std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) std::cout << '\t';
    std::cout << f;
    first = false;
  }
  std::cout << '\n';
}

// ---- metric ---------------------------------------------------------------

int cmd_metric(const Out& out, const std::string& ms, const std::string& as, std::string mode) {
  const auto m = lamp::TernaryVector::parse(ms);
  const auto a = lamp::TernaryVector::parse(as);
  if (m.size() != a.size()) throw lamp::LengthMismatch(m.size(), a.size());
  const bool binary = m.is_binary() && a.is_binary();
  if (mode.empty()) mode = binary ? "vector" : "arith";
  if (mode != "arith" && !binary)
    throw lamp::ModeMismatch("mode '" + mode + "' needs binary vectors; use --mode arith");

  json doc;
  doc["inputs"] = {{"m", m.to_string()}, {"a", a.to_string()}, {"mode", mode}};

  if (mode == "arith") {
    const auto s = lamp::quality_arith(m, a);
    const auto cls = lamp::classify_interaction(m, a);
    doc["result"] = {{"d", s.d.str()},
                     {"mu_m_in_a", s.mu_m_in_a.str()},
                     {"mu_a_in_m", s.mu_a_in_m.str()},
                     {"q", s.value.str()},
                     {"interaction", lamp::to_string(cls)}};
    if (out.fmt == Format::Json) return emit_json(out, doc), 0;
    if (out.fmt == Format::Tsv) {
      tsv({"command", out.command});
      tsv({"d", s.d.str()});
      tsv({"mu_m_in_a", s.mu_m_in_a.str()});
      tsv({"mu_a_in_m", s.mu_a_in_m.str()});
      tsv({"interaction", lamp::to_string(cls)});
      tsv({"q", s.value.str()});
      return 0;
    }
    std::cout << "m           " << m.to_string() << '\n'
              << "A           " << a.to_string() << '\n'
              << "m & A       " << lamp::intersect(m, a).to_string() << '\n'
              << "relation    " << lamp::to_string(cls) << '\n'
              << "d           " << s.d.str() << '\n'
              << "mu(m in A)  " << s.mu_m_in_a.str() << '\n'
              << "mu(A in m)  " << s.mu_a_in_m.str() << '\n'
              << out.bold("Q = " + s.value.str()) << '\n';
    return 0;
  }

  const auto mb = m.to_binary();
  const auto ab = a.to_binary();
  if (mode == "int") {
    const auto s = lamp::criterion_arith(mb, ab);
    doc["result"] = {{"d", s.d_card},
                     {"nonmembership_m_in_a", s.nonmembership_m_in_a},
                     {"nonmembership_a_in_m", s.nonmembership_a_in_m},
                     {"q", s.value}};
    if (out.fmt == Format::Json) return emit_json(out, doc), 0;
    if (out.fmt == Format::Tsv) {
      tsv({"command", out.command});
      tsv({"d", std::to_string(s.d_card)});
      tsv({"nonmembership_m_in_a", std::to_string(s.nonmembership_m_in_a)});
      tsv({"nonmembership_a_in_m", std::to_string(s.nonmembership_a_in_m)});
      tsv({"q", std::to_string(s.value)});
      return 0;
    }
    std::cout << "d           " << s.d_card << '\n'
              << "mu(m in A)  " << s.nonmembership_m_in_a << '\n'
              << "mu(A in m)  " << s.nonmembership_a_in_m << '\n'
              << out.bold("Q = " + std::to_string(s.value)) << '\n';
    return 0;
  }

  if (mode != "vector") throw UsageError("unknown mode '" + mode + "'");
  const auto q = lamp::criterion_vector(mb, ab);
  const lamp::QualityIndex idx{q.q_compacted.count_ones(), q.q_compacted.size()};
  const std::vector<std::pair<std::string, std::string>> rows{
      {"m", mb.to_string()},
      {"a", ab.to_string()},
      {"m_and_a", q.m_and_a.to_string()},
      {"not_m_and_a", q.not_m_and_a.to_string()},
      {"d", q.d_vec.to_string()},
      {"mu_a_in_m", q.mu_a_in_m_vec.to_string()},
      {"mu_m_in_a", q.mu_m_in_a_vec.to_string()},
      {"q", q.q_vec.to_string()},
      {"q_compacted", q.q_compacted.to_string()}};
  if (out.fmt == Format::Json) {
    json r;
    for (const auto& [k, v] : rows) r[k] = v;
    r["index"] = {{"k", idx.k}, {"n", idx.n}};
    doc["result"] = r;
    return emit_json(out, doc), 0;
  }
  if (out.fmt == Format::Tsv) {
    tsv({"command", out.command});
    for (const auto& [k, v] : rows) tsv({"row", k, v});
    tsv({"index", std::to_string(idx.k), std::to_string(idx.n)});
    return 0;
  }
  const char* labels[] = {"m", "A", "m & A", "~(m & A)", "d", "mu(A in m)", "mu(m in A)", "Q",
                          "Q compacted"};
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::cout << std::left << std::setw(13) << labels[i] << rows[i].second << '\n';
  std::cout << out.bold("Q = " + lamp::to_string(idx)) << '\n';
  return 0;
}

// ---- query / diag ---------------------------------------------------------

json score_json(const lamp::RowScore& s) {
  json j{{"score", lamp::to_string(s)}};
  if (const auto* q = std::get_if<lamp::QualityIndex>(&s)) {
    j["k"] = q->k;
    j["n"] = q->n;
  }
  return j;
}

json row_json(std::size_t index, const std::string& label, const lamp::RowScore& s) {
  json j{{"index", index}, {"row", index + 1}, {"label", label}};
  const json score = score_json(s);
  for (auto& [k, v] : score.items()) j[k] = v;
  return j;
}

std::string row_text(std::size_t index, const std::string& label) {
  std::string s = "row " + std::to_string(index + 1);
  if (!label.empty()) s += " [" + label + "]";
  return s;
}

int cmd_query(const Out& out, const std::string& verb, const std::string& path,
              const std::string& vec, std::size_t top) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  const auto table = lamp::load_table(in, path);
  const auto m = lamp::TernaryVector::parse(vec);

  lamp::QueryResult res;
  if (verb == "diag") {
    if (!m.is_binary()) throw lamp::ModeMismatch("diagnosis response must be binary");
    res = lamp::diagnose(table, m.to_binary());
  } else {
    res = lamp::query(table, m);
  }
  std::vector<lamp::RankEntry> ranked;
  if (top > 0) ranked = lamp::rank(table, m, top);

  if (out.fmt == Format::Json) {
    json doc;
    doc["inputs"] = {{"table", path},
                     {"table_digest", digest(text)},
                     {"rows", table.row_count()},
                     {"width", table.cols()},
                     {verb == "diag" ? "response" : "m", m.to_string()}};
    doc["mode"] = lamp::to_string(res.mode);
    json best = json::array();
    for (const auto& r : res.best_rows) best.push_back(row_json(r.index, r.label, res.best));
    doc["best"] = best;
    if (top > 0) {
      json rk = json::array();
      for (const auto& e : ranked) rk.push_back(row_json(e.index, e.label, e.score));
      doc["top"] = rk;
    }
    json scores = json::array();
    for (std::size_t i = 0; i < res.per_row.size(); ++i)
      scores.push_back(row_json(i, table.label(i), res.per_row[i]));
    doc["scores"] = scores;
    emit_json(out, doc);
    return 0;
  }
  if (out.fmt == Format::Tsv) {
    tsv({"command", out.command});
    tsv({"table_digest", digest(text)});
    tsv({"mode", lamp::to_string(res.mode)});
    for (const auto& r : res.best_rows)
      tsv({"best", std::to_string(r.index), std::to_string(r.index + 1), r.label,
           lamp::to_string(res.best)});
    for (std::size_t i = 0; i < ranked.size(); ++i)
      tsv({"rank", std::to_string(i + 1), std::to_string(ranked[i].index),
           std::to_string(ranked[i].index + 1), ranked[i].label, lamp::to_string(ranked[i].score)});
    for (std::size_t i = 0; i < res.per_row.size(); ++i)
      tsv({"score", std::to_string(i), table.label(i), lamp::to_string(res.per_row[i])});
    return 0;
  }
  std::cout << "table  " << path << " (" << table.row_count() << " rows, width " << table.cols()
            << ", " << (table.is_binary() ? "binary" : "ternary") << ")\n";
  std::cout << (verb == "diag" ? "resp   " : "m      ") << m.to_string() << '\n';
  if (top > 0) {
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      const std::string line = std::to_string(i + 1) + ". " +
                               row_text(ranked[i].index, ranked[i].label) + "  " +
                               table.row(ranked[i].index).to_string() + "  Q = " +
                               lamp::to_string(ranked[i].score);
      std::cout << (lamp::same_score(ranked[i].score, res.best) ? out.green(line) : line) << '\n';
    }
    return 0;
  }
  for (const auto& r : res.best_rows)
    std::cout << out.green("best   " + row_text(r.index, r.label) + "  " +
                           table.row(r.index).to_string() + "  Q = " + lamp::to_string(res.best))
              << '\n';
  return 0;
}

// ---- asm ------------------------------------------------------------------

bool is_binary_image(std::string_view data) { return data.substr(0, 5) == lamp::sim::kMagic; }

lamp::sim::ProgramImage load_program(const std::string& path) {
  const std::string data = read_file(path);
  if (is_binary_image(data)) return lamp::sim::decode(data);
  return lamp::assembler::assemble(data);
}

int cmd_asm_build(const std::string& src, const std::string& dst) {
  const auto image = lamp::assembler::assemble(read_file(src));
  const std::string bytes = lamp::sim::encode(image);
  std::ofstream os(dst, std::ios::binary);
  if (!os) throw UsageError("cannot write '" + dst + "'");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw lamp::Error("write failed: '" + dst + "'");
  return 0;
}

int cmd_asm_dump(const std::string& path) {
  std::cout << lamp::assembler::disassemble(load_program(path));
  return 0;
}

int cmd_asm_builtin(std::size_t rows) {
  lamp::sim::ProgramImage image;
  image.programs[0] = lamp::sim::builtin_query_program(rows);
  image.row_counts[0] = static_cast<std::uint32_t>(rows);
  std::cout << "; associative query: m in MA, table rows in the A-matrix of cell 0,0\n"
            << "; at HALT row_idx and MC hold the winner, MD its compacted quality\n"
            << lamp::assembler::disassemble(image);
  return 0;
}

// ---- run ------------------------------------------------------------------

struct Load {
  std::optional<lamp::CellCoord> cell;  // all cells when empty
  lamp::sim::Src reg = lamp::sim::Src::MA;
  lamp::BitVector value;
};

// [r,c:]REG=BITS
Load parse_load(const std::string& spec) {
  Load l;
  std::string rest = spec;
  if (const auto colon = rest.find(':'); colon != std::string::npos) {
    int r = -1, c = -1;
    char comma = 0;
    std::istringstream cs(rest.substr(0, colon));
    if (!(cs >> r >> comma >> c) || comma != ',' || !cs.eof() || r < 0 || c < 0 ||
        r >= lamp::sim::kGridRows || c >= lamp::sim::kGridCols)
      throw UsageError("bad cell in --load '" + spec + "'");
    l.cell = lamp::CellCoord{r, c};
    rest = rest.substr(colon + 1);
  }
  const auto eq = rest.find('=');
  if (eq == std::string::npos) throw UsageError("--load expects [r,c:]REG=BITS, got '" + spec + "'");
  const auto reg = lamp::sim::lookup<lamp::sim::Src>(lamp::sim::kSrcNames, rest.substr(0, eq));
  if (!reg || !lamp::sim::is_register(*reg)) throw UsageError("bad register in --load '" + spec + "'");
  l.reg = *reg;
  l.value = lamp::BitVector::parse(rest.substr(eq + 1));
  return l;
}

json state_json(const lamp::sim::SequencerState& s, lamp::CellCoord c) {
  json regs;
  for (std::size_t r = 0; r < lamp::sim::kRegisterCount; ++r)
    regs[std::string(lamp::sim::name(static_cast<lamp::sim::Src>(r)))] = s.regs[r].to_string();
  return {{"cell", {c.row, c.col}}, {"halted", s.halted}, {"pc", s.pc},
          {"cycles", s.cycles}, {"flag", s.flag}, {"row_idx", s.row_idx},
          {"registers", regs}};
}

int cmd_run(const Out& out, const std::string& program, bool builtin, const std::string& table_path,
            const std::vector<std::string>& load_specs, std::uint64_t max_cycles, bool trace,
            std::size_t width_opt) {
  using namespace lamp::sim;
  if (builtin == !program.empty())
    throw UsageError("give exactly one of PROGRAM or --builtin-query");

  std::optional<lamp::AssocTable> table;
  std::string table_digest;
  if (!table_path.empty()) {
    const std::string text = read_file(table_path);
    std::istringstream in(text);
    table = lamp::load_table(in, table_path);
    table_digest = digest(text);
    if (!table->is_binary()) throw lamp::ModeMismatch("the A-matrix must be binary");
  }

  ProgramImage image;
  std::string program_digest;
  if (builtin) {
    if (!table) throw UsageError("--builtin-query needs --table");
    image.programs[0] = builtin_query_program(table->row_count());
  } else {
    const std::string data = read_file(program);
    program_digest = digest(data);
    image = is_binary_image(data) ? decode(data) : lamp::assembler::assemble(data);
  }

  std::vector<Load> loads;
  for (const auto& s : load_specs) loads.push_back(parse_load(s));

  std::size_t width = width_opt;
  if (width == 0) width = image.width;
  if (width == 0 && table) width = table->cols();
  if (width == 0 && !loads.empty()) width = loads.front().value.size();
  if (width == 0) throw UsageError("vector width unknown; use .width, --table, --load or --width");
  if (table && table->cols() != width) throw lamp::LengthMismatch(table->cols(), width);

  std::array<std::vector<lamp::BitVector>, kCellCount> tables;
  if (table)
    for (std::size_t i = 0; i < kCellCount; ++i)
      if (!image.programs[i].empty()) tables[i] = table->binary_rows();
  Grid g = make_grid(image, width, tables);

  for (const auto& l : loads) {
    if (l.value.size() != width) throw lamp::LengthMismatch(l.value.size(), width);
    for (std::size_t i = 0; i < kCellCount; ++i)
      if (!l.cell || cell_index(*l.cell) == i) g.cells[i].reg(l.reg) = l.value;
  }

  // Trace goes to stdout in text mode and to stderr otherwise, so machine
  // output stays parseable.
  if (trace) g.trace = out.fmt == Format::Text ? &std::cout : &std::cerr;

  RunResult rr;
  try {
    rr = run(g, max_cycles);
  } catch (const lamp::SimError& e) {
    std::cerr << "lamp: " << e.what() << '\n';
    return 1;
  }
  const int status = rr.outcome == Outcome::AllHalted ? 0 : 1;

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < kCellCount; ++i)
    if (!image.programs[i].empty()) active.push_back(i);

  if (out.fmt == Format::Json) {
    json doc;
    doc["inputs"] = {{"program", builtin ? "builtin-query" : program},
                     {"program_digest", program_digest},
                     {"table", table_path},
                     {"table_digest", table_digest},
                     {"width", width},
                     {"max_cycles", max_cycles}};
    doc["outcome"] = to_string(rr.outcome);
    doc["cycles"] = g.global_cycle;
    json stalled = json::array();
    for (const auto& c : rr.stalled) stalled.push_back({c.row, c.col});
    doc["stalled"] = stalled;
    json cells = json::array();
    for (auto i : active) cells.push_back(state_json(g.cells[i], cell_coord(i)));
    doc["cells"] = cells;
    emit_json(out, doc);
    return status;
  }
  if (out.fmt == Format::Tsv) {
    tsv({"command", out.command});
    tsv({"outcome", to_string(rr.outcome)});
    tsv({"cycles", std::to_string(g.global_cycle)});
    for (const auto& c : rr.stalled) tsv({"stalled", std::to_string(c.row) + "," + std::to_string(c.col)});
    for (auto i : active) {
      const auto& s = g.cells[i];
      const auto c = cell_coord(i);
      tsv({"cell", std::to_string(c.row) + "," + std::to_string(c.col), s.halted ? "1" : "0",
           std::to_string(s.pc), std::to_string(s.cycles), s.flag ? "1" : "0",
           std::to_string(s.row_idx), s.regs[0].to_string(), s.regs[1].to_string(),
           s.regs[2].to_string(), s.regs[3].to_string()});
    }
    return status;
  }
  for (auto i : active) {
    const auto& s = g.cells[i];
    std::cout << out.bold("cell " + lamp::to_string(cell_coord(i))) << "  pc=" << s.pc
              << " cycles=" << s.cycles << " flag=" << s.flag << " row_idx=" << s.row_idx
              << (s.halted ? " halted" : "") << '\n';
    for (std::size_t r = 0; r < kRegisterCount; ++r)
      std::cout << "  " << name(static_cast<Src>(r)) << "  " << s.regs[r].to_string() << '\n';
  }
  std::string line = std::string("outcome ") + to_string(rr.outcome);
  if (!rr.stalled.empty()) {
    line += ", stalled";
    for (const auto& c : rr.stalled) line += " " + lamp::to_string(c);
  }
  std::cout << (status == 0 ? out.green(line) : out.bold(line)) << '\n';
  std::cout << "cycles  " << g.global_cycle << '\n';
  return status;
}

// ---- bench ----------------------------------------------------------------

int cmd_bench(const Out& out, const lamp::bench::Config& cfg) {
  const auto rep = lamp::bench::run(cfg);
  const int status = rep.deterministic ? 0 : 1;
  if (out.fmt == Format::Json) {
    json doc;
    doc["inputs"] = {{"n", cfg.n}, {"rows", cfg.rows}, {"iters", cfg.iters},
                     {"baseline", cfg.baseline}, {"seed", cfg.seed}};
    doc["winner"] = {{"index", rep.vector_winner}, {"k", rep.winner_k}, {"n", cfg.n}};
    doc["deterministic"] = rep.deterministic;
    doc["vector"] = {{"seconds", rep.vector_seconds}, {"rows_per_sec", rep.vector_rows_per_sec}};
    if (cfg.baseline) {
      doc["baseline"] = {{"seconds", rep.baseline_seconds},
                         {"rows_per_sec", rep.baseline_rows_per_sec},
                         {"winner_index", rep.baseline_winner}};
      doc["ratio"] = rep.speedup;
    }
    emit_json(out, doc);
    return status;
  }
  if (out.fmt == Format::Tsv) {
    tsv({"command", out.command});
    tsv({"winner", std::to_string(rep.vector_winner), std::to_string(rep.winner_k),
         std::to_string(cfg.n)});
    tsv({"deterministic", rep.deterministic ? "1" : "0"});
    tsv({"vector", std::to_string(rep.vector_seconds), std::to_string(rep.vector_rows_per_sec)});
    if (cfg.baseline) {
      tsv({"baseline", std::to_string(rep.baseline_seconds),
           std::to_string(rep.baseline_rows_per_sec)});
      tsv({"ratio", std::to_string(rep.speedup)});
    }
    return status;
  }
  std::cout << "n=" << cfg.n << " rows=" << cfg.rows << " iters=" << cfg.iters
            << " seed=" << cfg.seed << '\n';
  std::cout << "winner    row " << rep.vector_winner + 1 << "  Q = " << rep.winner_k << '/'
            << cfg.n << (rep.deterministic ? "" : "  (NOT deterministic)") << '\n';
  std::cout << std::fixed << std::setprecision(1);
  std::cout << "vector    " << rep.vector_rows_per_sec << " rows/s  (" << std::setprecision(4)
            << rep.vector_seconds << " s)\n";
  if (cfg.baseline) {
    std::cout << std::setprecision(1) << "baseline  " << rep.baseline_rows_per_sec
              << " rows/s  (" << std::setprecision(4) << rep.baseline_seconds << " s)\n";
    std::cout << out.bold("ratio     " + std::to_string(rep.speedup)) << '\n';
  }
  return status;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logic associative multiprocessor toolkit"};
  app.name("lamp");
  app.require_subcommand(1);
  app.fallthrough();

  Out out;
  out.command = join_args(argc, argv);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "tsv", "json"}))
      ->capture_default_str();

  std::string m, a, mode, path, src, dst;
  std::size_t top = 0;

  auto* metric = app.add_subcommand("metric", "Evaluate the quality metric for one pair");
  metric->add_option("--m", m, "Query vector")->required();
  metric->add_option("--a", a, "Associator vector")->required();
  metric->add_option("--mode", mode, "arith | int | vector (default: vector if binary)")
      ->check(CLI::IsMember({"arith", "int", "vector"}));

  auto* query = app.add_subcommand("query", "Find the best-matching table rows");
  query->add_option("table", path, "Table file")->required();
  query->add_option("--m", m, "Query vector")->required();
  query->add_option("--top", top, "List the k best rows")->check(CLI::PositiveNumber);

  auto* diag = app.add_subcommand("diag", "Diagnose a response against a fault dictionary");
  diag->add_option("dictionary", path, "Fault dictionary file")->required();
  diag->add_option("--response", m, "Observed response vector")->required();
  diag->add_option("--top", top, "List the k best candidates")->check(CLI::PositiveNumber);

  auto* asmc = app.add_subcommand("asm", "Assembler and disassembler");
  asmc->require_subcommand(1);
  auto* build = asmc->add_subcommand("build", "Assemble source into a program binary");
  build->add_option("source", src, "Assembly source")->required();
  build->add_option("-o,--output", dst, "Output binary")->required();
  auto* dump = asmc->add_subcommand("dump", "Disassemble a program (binary or source)");
  dump->add_option("program", src, "Program file")->required();
  std::size_t builtin_rows = 0;
  auto* builtin = asmc->add_subcommand("builtin", "Print the built-in query program");
  builtin->add_option("--rows", builtin_rows, "Table rows")->required()->check(CLI::PositiveNumber);

  std::vector<std::string> loads;
  std::uint64_t max_cycles = 1'000'000;
  bool trace = false, builtin_query = false;
  std::size_t width = 0;
  auto* runc = app.add_subcommand("run", "Run a program on the sequencer grid");
  runc->add_option("program", src, "Program file (.asm source or LAMP1 binary)");
  runc->add_flag("--builtin-query", builtin_query, "Run the built-in query program on cell 0,0");
  runc->add_option("--table", path, "A-matrix table, given to every cell with a program");
  runc->add_option("--load", loads, "Preload [r,c:]REG=BITS (all cells when no cell given)");
  runc->add_option("--max-cycles", max_cycles, "Cycle budget")->capture_default_str();
  runc->add_option("--width", width, "Vector width when nothing else fixes it");
  runc->add_flag("--trace", trace, "Print one trace line per cell per cycle");

  lamp::bench::Config cfg;
  auto* bench = app.add_subcommand("bench", "Vector path vs per-coordinate baseline");
  bench->add_option("--n", cfg.n, "Vector width")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--rows", cfg.rows, "Table rows")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--iters", cfg.iters, "Timed iterations")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_flag("--baseline,!--no-baseline", cfg.baseline, "Also time the baseline")
      ->capture_default_str();
  bench->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  out.fmt = format == "json" ? Format::Json : format == "tsv" ? Format::Tsv : Format::Text;
  const char* env = std::getenv("LAMP_COLOR");
  out.color = out.fmt == Format::Text && isatty(STDOUT_FILENO) && !(env && std::string(env) == "0");

  try {
    if (metric->parsed()) return cmd_metric(out, m, a, mode);
    if (query->parsed()) return cmd_query(out, "query", path, m, top);
    if (diag->parsed()) return cmd_query(out, "diag", path, m, top);
    if (build->parsed()) return cmd_asm_build(src, dst);
    if (dump->parsed()) return cmd_asm_dump(src);
    if (builtin->parsed()) return cmd_asm_builtin(builtin_rows);
    if (runc->parsed())
      return cmd_run(out, src, builtin_query, path, loads, max_cycles, trace, width);
    if (bench->parsed()) return cmd_bench(out, cfg);
  } catch (const lamp::SimError& e) {
    std::cerr << "lamp: " << e.what() << '\n';
    return 1;
  } catch (const lamp::Error& e) {
    // Everything else the library throws is about malformed or mismatched input.
    std::cerr << "lamp: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "lamp: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
