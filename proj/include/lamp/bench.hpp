#pragma once

// Throughput comparison on a random binary table:
//   vector   per-row logic-vector criterion + compaction + pairwise decision
//   baseline the integer criterion evaluated coordinate by coordinate
// Both paths must agree on the winning row.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"
#include "lamp/quality.hpp"

namespace lamp::bench {

struct Config {
  std::size_t n = 64;
  std::size_t rows = 1000;
  std::size_t iters = 3;
  bool baseline = true;
  std::uint64_t seed = 1;
};

struct Report {
  Config config;
  std::size_t vector_winner = 0;
  std::size_t baseline_winner = 0;
  std::size_t winner_k = 0;
  double vector_seconds = 0;    // best of iters
  double baseline_seconds = 0;  // best of iters
  double vector_rows_per_sec = 0;
  double baseline_rows_per_sec = 0;
  double speedup = 0;  // vector / baseline throughput, measured only
  bool deterministic = true;
};

inline BitVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint64_t> words(BitVector::word_count(n));
  for (auto& w : words) w = rng();
  return BitVector::from_words(n, words);
}

// Index of the first row with the best compacted quality vector.
inline std::size_t vector_winner(const std::vector<BitVector>& rows, const BitVector& m) {
  std::size_t winner = 0;
  BitVector lead;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    BitVector q = criterion_vector(m, rows[i]).q_compacted;
    if (i == 0) {
      lead = std::move(q);
      continue;
    }
    auto c = choose_best(lead, q);
    if (c.flag) {
      lead = std::move(c.winner);
      winner = i;
    }
  }
  return winner;
}

// Integer criterion, one coordinate at a time.
inline std::size_t baseline_winner(const std::vector<BitVector>& rows, const BitVector& m) {
  std::size_t winner = 0;
  std::size_t best = SIZE_MAX;
  const std::size_t n = m.size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const BitVector& a = rows[r];
    std::size_t d = 0, ones_a = 0, ones_m = 0, both = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool mi = m.test(i);
      const bool ai = a.test(i);
      d += mi != ai;
      ones_a += ai;
      ones_m += mi;
      both += mi && ai;
    }
    const std::size_t value = d + (ones_a - both) + (ones_m - both);
    if (value < best) {
      best = value;
      winner = r;
    }
  }
  return winner;
}

inline Report run(const Config& cfg) {
  if (cfg.n == 0 || cfg.rows == 0 || cfg.iters == 0) throw Error("bench sizes must be positive");
  std::mt19937_64 rng(cfg.seed);
  std::vector<BitVector> rows;
  rows.reserve(cfg.rows);
  for (std::size_t i = 0; i < cfg.rows; ++i) rows.push_back(random_vector(rng, cfg.n));
  const BitVector m = random_vector(rng, cfg.n);

  using clock = std::chrono::steady_clock;
  Report rep;
  rep.config = cfg;
  rep.vector_seconds = 1e300;
  for (std::size_t it = 0; it < cfg.iters; ++it) {
    const auto t0 = clock::now();
    const std::size_t w = vector_winner(rows, m);
    const double s = std::chrono::duration<double>(clock::now() - t0).count();
    if (it == 0) rep.vector_winner = w;
    rep.deterministic = rep.deterministic && w == rep.vector_winner;
    rep.vector_seconds = std::min(rep.vector_seconds, s);
  }
  rep.winner_k = quality_index(m, rows[rep.vector_winner]).k;
  rep.vector_rows_per_sec = static_cast<double>(cfg.rows) / std::max(rep.vector_seconds, 1e-12);

  if (cfg.baseline) {
    rep.baseline_seconds = 1e300;
    for (std::size_t it = 0; it < cfg.iters; ++it) {
      const auto t0 = clock::now();
      const std::size_t w = baseline_winner(rows, m);
      const double s = std::chrono::duration<double>(clock::now() - t0).count();
      if (it == 0) rep.baseline_winner = w;
      rep.deterministic = rep.deterministic && w == rep.baseline_winner;
      rep.baseline_seconds = std::min(rep.baseline_seconds, s);
    }
    rep.baseline_rows_per_sec = static_cast<double>(cfg.rows) / std::max(rep.baseline_seconds, 1e-12);
    rep.speedup = rep.vector_rows_per_sec / rep.baseline_rows_per_sec;
    rep.deterministic = rep.deterministic && rep.baseline_winner == rep.vector_winner;
  }
  return rep;
}

}  // namespace lamp::bench
