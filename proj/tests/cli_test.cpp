#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "lamp/assoc_engine.hpp"
#include "oracles.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

// stdout only; stderr is discarded so machine output can be parsed.
Result lamp_cli(const std::string& args) {
  const std::string cmd = "LAMP_COLOR=0 '" LAMP_CLI_PATH "' " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  while (const auto n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(LAMP_SAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::vector<std::vector<std::string>> tsv_lines(const std::string& text, const std::string& tag) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string f;
    std::istringstream ls(line);
    while (std::getline(ls, f, '\t')) fields.push_back(f);
    if (!line.empty() && line.back() == '\t') fields.emplace_back();
    if (!fields.empty() && fields[0] == tag) out.push_back(fields);
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

}  // namespace

TEST(CliMetric, VectorTableEndsWithIndex) {
  const auto r = lamp_cli("metric --m 110011001100 --a 000011110101 --mode vector");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(ends_with(r.out, "Q = 6/12\n")) << r.out;
  EXPECT_NE(r.out.find("Q compacted  111111000000"), std::string::npos);
  EXPECT_NE(r.out.find("m & A        000011000100"), std::string::npos);
}

TEST(CliMetric, ArithAndInt) {
  auto r = lamp_cli("metric --m x0 --a xx --mode arith");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(ends_with(r.out, "Q = 5/6\n")) << r.out;

  r = lamp_cli("metric --m 110011001100 --a 000011110101 --mode int --format tsv");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(tsv_lines(r.out, "q").at(0).at(1),
            std::to_string(oracle::int_criterion("110011001100", "000011110101").value()));
}

TEST(CliMetric, InputErrorsExitTwo) {
  EXPECT_EQ(lamp_cli("metric --m 1 --a 10").status, 2);
  EXPECT_EQ(lamp_cli("metric --m 1x --a 10 --mode vector").status, 2);
  EXPECT_EQ(lamp_cli("metric --m 12 --a 10").status, 2);
  EXPECT_EQ(lamp_cli("metric --m 10").status, 2);
  EXPECT_EQ(lamp_cli("nonsense").status, 2);
}

TEST(CliQuery, WorkedTableAndTop) {
  auto r = lamp_cli("query " + sample("worked_pair.tbl") + " --m 110011001100");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("best   row 2 [A2]"), std::string::npos) << r.out;

  const auto t = temp_file("three.tbl", "0011\n0111\n1111\n");
  r = lamp_cli("query " + t + " --m 0011 --top 3 --format tsv");
  const auto ranks = tsv_lines(r.out, "rank");
  ASSERT_EQ(ranks.size(), 3u);
  const std::vector<std::string> rows{"0011", "0111", "1111"};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(ranks[i][2], std::to_string(i));
    EXPECT_EQ(ranks[i][5], std::to_string(oracle::hamming(rows[i], "0011")) + "/4");
  }
}

TEST(CliQuery, MissingFileAndWidthMismatch) {
  EXPECT_EQ(lamp_cli("query /nonexistent.tbl --m 01").status, 2);
  EXPECT_EQ(lamp_cli("query " + sample("worked_pair.tbl") + " --m 0101").status, 2);
  const auto bad = temp_file("bad.tbl", "0101\n011\n");
  EXPECT_EQ(lamp_cli("query " + bad + " --m 0101").status, 2);
}

TEST(CliDiag, ExactSignature) {
  const auto t = temp_file("two.tbl", "F1\t1100\nF2\t0011\n");
  const auto r = lamp_cli("diag " + t + " --response 0011 --format tsv");
  EXPECT_EQ(r.status, 0);
  const auto best = tsv_lines(r.out, "best");
  ASSERT_EQ(best.size(), 1u);
  EXPECT_EQ(best[0][3], "F2");
  EXPECT_EQ(best[0][4], "0/4");
  EXPECT_EQ(lamp_cli("diag " + sample("fault_dictionary.tbl") + " --response 00100101").status, 2);
}

// JSON output carries every winner and per-row score; compare with the library.
TEST(CliJson, QueryRoundTripsWinnerData) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t n = 1 + rng() % 20;
    const std::size_t rows = 1 + rng() % 12;
    std::string text;
    std::vector<lamp::BitVector> vecs;
    for (std::size_t i = 0; i < rows; ++i) {
      auto s = oracle::random_bits(rng, n);
      if (i > 0 && rng() % 3 == 0) s = vecs[rng() % i].to_string();
      vecs.push_back(lamp::BitVector::parse(s));
      text += "r" + std::to_string(i) + "\t" + s + "\n";
    }
    const auto path = temp_file("json.tbl", text);
    const auto m = oracle::random_bits(rng, n);
    const auto r = lamp_cli("query " + path + " --m " + m + " --format json");
    ASSERT_EQ(r.status, 0);
    const auto doc = json::parse(r.out);

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < rows; ++i) labels.push_back("r" + std::to_string(i));
    const auto res = lamp::query(lamp::AssocTable::from_binary("t", vecs, labels), lamp::BitVector::parse(m));
    ASSERT_EQ(doc["best"].size(), res.best_rows.size());
    for (std::size_t i = 0; i < res.best_rows.size(); ++i) {
      EXPECT_EQ(doc["best"][i]["index"].get<std::size_t>(), res.best_rows[i].index);
      EXPECT_EQ(doc["best"][i]["label"].get<std::string>(), res.best_rows[i].label);
    }
    ASSERT_EQ(doc["scores"].size(), rows);
    for (std::size_t i = 0; i < rows; ++i)
      EXPECT_EQ(doc["scores"][i]["k"].get<std::size_t>(), oracle::hamming(vecs[i].to_string(), m));
  }
}

TEST(CliRun, BuiltinQueryOnWorkedData) {
  const auto t = temp_file("a_only.tbl", "000011110101\n");
  const auto r = lamp_cli("run --builtin-query --table " + t + " --load MA=110011001100 --format json");
  ASSERT_EQ(r.status, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["outcome"], "all-halted");
  EXPECT_EQ(doc["cells"][0]["registers"]["MD"], "111111000000");
}

TEST(CliRun, HaltOnlyAndExchange) {
  const auto h = temp_file("halt.asm", ".cell 0,0\nHALT\n");
  auto r = lamp_cli("run " + h + " --width 4 --format tsv");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(tsv_lines(r.out, "cycles").at(0).at(1), "1");

  r = lamp_cli("run " + sample("exchange.asm") + " --format json");
  ASSERT_EQ(r.status, 0);
  const auto doc = json::parse(r.out);
  ASSERT_EQ(doc["cells"].size(), 2u);
  EXPECT_EQ(doc["cells"][0]["registers"]["MC"], "00111010");
}

TEST(CliRun, QuerySampleAgreesWithLibrary) {
  const auto t = temp_file("q3.tbl", "0011\n0111\n1111\n");
  const auto r = lamp_cli("run " + sample("query.asm") + " --table " + t + " --load MA=1111 --format json");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["cells"][0]["registers"]["MD"], "0000");
}

TEST(CliRun, Failures) {
  // ROW with no table is a runtime fault.
  const auto p = temp_file("row.asm", ".cell 0,0\nLOGIC PASS ROW, -, NOPU, MA\nHALT\n");
  EXPECT_EQ(lamp_cli("run " + p + " --width 4").status, 1);

  const auto dl = temp_file("dl.asm", ".cell 0,0\nSEND E, MA\nHALT\n.cell 0,1\nSEND W, MA\nHALT\n");
  const auto r = lamp_cli("run " + dl + " --width 4 --format tsv");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(tsv_lines(r.out, "outcome").at(0).at(1), "deadlock");
  EXPECT_EQ(tsv_lines(r.out, "stalled").size(), 2u);

  const auto loop = temp_file("loop.asm", ".cell 0,0\ntop: JMP top\n");
  EXPECT_EQ(lamp_cli("run " + loop + " --width 4 --max-cycles 10").status, 1);

  const auto bad = temp_file("bad.asm", "HALT\n\nFROB MA\n");
  EXPECT_EQ(lamp_cli("run " + bad + " --width 4").status, 2);
}

TEST(CliAsm, BuildDumpRoundTrip) {
  const auto bin = ::testing::TempDir() + "exchange.bin";
  ASSERT_EQ(lamp_cli("asm build " + sample("exchange.asm") + " -o " + bin).status, 0);
  const auto dumped = lamp_cli("asm dump " + bin);
  ASSERT_EQ(dumped.status, 0);
  const auto again = temp_file("again.asm", dumped.out);
  const auto bin2 = ::testing::TempDir() + "again.bin";
  ASSERT_EQ(lamp_cli("asm build " + again + " -o " + bin2).status, 0);
  std::ifstream a(bin, std::ios::binary), b(bin2, std::ios::binary);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());

  EXPECT_EQ(lamp_cli("asm builtin --rows 3").status, 0);
}

TEST(CliBench, SmallRunReportsBothThroughputs) {
  const auto r = lamp_cli("bench --n 64 --rows 1000 --iters 2 --format json");
  ASSERT_EQ(r.status, 0);
  const auto doc = json::parse(r.out);
  EXPECT_GT(doc["vector"]["rows_per_sec"].get<double>(), 0);
  EXPECT_GT(doc["baseline"]["rows_per_sec"].get<double>(), 0);
  EXPECT_TRUE(doc["deterministic"].get<bool>());
  EXPECT_EQ(doc["winner"]["index"], doc["baseline"]["winner_index"]);
}
