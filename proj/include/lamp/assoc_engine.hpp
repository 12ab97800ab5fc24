#pragma once

// Search / recognition / decision over an associative table:
//   P(m, A) = best row of A under the interaction-quality criterion.
//
// Binary tables are scored with the logic-vector criterion (smaller k wins)
// and the winner is folded row by row with choose_best. Ternary tables are
// scored with the normalized rational criterion (larger Q wins). Every row
// attaining the optimum is reported, in ascending index order.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "lamp/assoc_table.hpp"
#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"
#include "lamp/quality.hpp"
#include "lamp/ternary_vector.hpp"

namespace lamp {

enum class QueryMode { Binary, Ternary };

inline const char* to_string(QueryMode m) noexcept {
  return m == QueryMode::Binary ? "binary" : "ternary";
}

// QualityIndex in binary mode, QualityScoreNorm in ternary mode.
using RowScore = std::variant<QualityIndex, QualityScoreNorm>;

// True when lhs is strictly better than rhs. Both must hold the same alternative.
inline bool better(const RowScore& lhs, const RowScore& rhs) {
  if (const auto* l = std::get_if<QualityIndex>(&lhs))
    return l->k < std::get<QualityIndex>(rhs).k;
  return std::get<QualityScoreNorm>(lhs).value > std::get<QualityScoreNorm>(rhs).value;
}

inline bool same_score(const RowScore& lhs, const RowScore& rhs) {
  return !better(lhs, rhs) && !better(rhs, lhs);
}

inline std::string to_string(const RowScore& s) {
  if (const auto* q = std::get_if<QualityIndex>(&s)) return to_string(*q);
  return to_string(std::get<QualityScoreNorm>(s).value);
}

struct RowRef {
  std::size_t index = 0;
  std::string label;

  friend bool operator==(const RowRef&, const RowRef&) = default;
};

struct QueryResult {
  QueryMode mode = QueryMode::Binary;
  std::vector<RowRef> best_rows;
  RowScore best;
  std::vector<RowScore> per_row;
};

struct RankEntry {
  std::size_t index = 0;
  std::string label;
  RowScore score;
};

namespace detail {

inline QueryMode resolve_mode(const AssocTable& table, const TernaryVector& m) {
  if (m.size() != table.cols()) throw LengthMismatch(m.size(), table.cols());
  if (!table.is_binary()) return QueryMode::Ternary;
  if (!m.is_binary()) throw ModeMismatch();
  return QueryMode::Binary;
}

inline std::vector<RowScore> score_rows(const AssocTable& table, const TernaryVector& m,
                                        QueryMode mode) {
  std::vector<RowScore> scores;
  scores.reserve(table.row_count());
  if (mode == QueryMode::Binary) {
    const BitVector mb = m.to_binary();
    for (const auto& row : table.binary_rows()) scores.emplace_back(quality_index(mb, row));
  } else {
    for (const auto& row : table.rows()) scores.emplace_back(quality_arith(m, row));
  }
  return scores;
}

}  // namespace detail

inline QueryResult query(const AssocTable& table, const TernaryVector& m) {
  QueryResult r;
  r.mode = detail::resolve_mode(table, m);

  std::size_t winner = 0;
  if (r.mode == QueryMode::Binary) {
    // Fold the compacted quality vectors pairwise; flag == 1 hands the lead to
    // the later row, so ties stay with the earlier one.
    const BitVector mb = m.to_binary();
    const auto& rows = table.binary_rows();
    BitVector lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto qv = criterion_vector(mb, rows[i]);
      r.per_row.emplace_back(QualityIndex{qv.q_compacted.count_ones(), qv.q_compacted.size()});
      if (i == 0) {
        lead = qv.q_compacted;
        continue;
      }
      auto choice = choose_best(lead, qv.q_compacted);
      if (choice.flag) {
        lead = std::move(choice.winner);
        winner = i;
      }
    }
  } else {
    r.per_row = detail::score_rows(table, m, r.mode);
    for (std::size_t i = 1; i < r.per_row.size(); ++i)
      if (better(r.per_row[i], r.per_row[winner])) winner = i;
  }

  r.best = r.per_row[winner];
  for (std::size_t i = 0; i < r.per_row.size(); ++i)
    if (same_score(r.per_row[i], r.best)) r.best_rows.push_back({i, table.label(i)});
  return r;
}

inline QueryResult query(const AssocTable& table, const BitVector& m) {
  return query(table, TernaryVector::from_binary(m));
}

// First k rows by criterion, ties in ascending row index.
inline std::vector<RankEntry> rank(const AssocTable& table, const TernaryVector& m, std::size_t k) {
  if (k == 0) throw Error("rank: k must be at least 1");
  const auto mode = detail::resolve_mode(table, m);
  const auto scores = detail::score_rows(table, m, mode);

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return better(scores[a], scores[b]); });
  order.resize(std::min(k, order.size()));

  std::vector<RankEntry> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back({i, table.label(i), scores[i]});
  return out;
}

inline std::vector<RankEntry> rank(const AssocTable& table, const BitVector& m, std::size_t k) {
  return rank(table, TernaryVector::from_binary(m), k);
}

// Fault-dictionary lookup: rows are binary fault signatures, the response is
// the observed signature of the unit under test.
inline QueryResult diagnose(const AssocTable& dictionary, const BitVector& response) {
  if (!dictionary.is_binary()) throw ModeMismatch();
  return query(dictionary, response);
}

}  // namespace lamp
