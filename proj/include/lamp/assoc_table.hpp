#pragma once

// Associative table A: an ordered list of associator rows of equal width,
// optionally labeled, loaded from a flat text file.
//
// File format (UTF-8):
//   '#' starts a comment running to end of line; blank lines are ignored.
//   A data line is either a bare vector ("10x1") or "label<TAB>vector".
//   Vectors use the symbols 0, 1, x (X accepted); all rows share one width.

#include <cstddef>
#include <fstream>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"
#include "lamp/ternary_vector.hpp"

namespace lamp {

class AssocTable {
 public:
  AssocTable(std::string name, std::vector<TernaryVector> rows,
             std::vector<std::string> labels = {})
      : name_(std::move(name)), rows_(std::move(rows)), labels_(std::move(labels)) {
    if (rows_.empty()) throw EmptyTable();
    cols_ = rows_.front().size();
    if (cols_ == 0) throw ZeroLength();
    labels_.resize(rows_.size());
    std::set<std::string_view> seen;
    binary_ = true;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].size() != cols_) throw WidthMismatch(cols_, rows_[i].size());
      if (!labels_[i].empty() && !seen.insert(labels_[i]).second)
        throw ParseError("duplicate row label '" + labels_[i] + "'");
      binary_ = binary_ && rows_[i].is_binary();
    }
    if (binary_) {
      binary_rows_.reserve(rows_.size());
      for (const auto& r : rows_) binary_rows_.push_back(r.to_binary());
    }
  }

  static AssocTable from_binary(std::string name, const std::vector<BitVector>& rows,
                                std::vector<std::string> labels = {}) {
    std::vector<TernaryVector> t;
    t.reserve(rows.size());
    for (const auto& r : rows) t.push_back(TernaryVector::from_binary(r));
    return AssocTable(std::move(name), std::move(t), std::move(labels));
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  bool is_binary() const noexcept { return binary_; }

  const TernaryVector& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<TernaryVector>& rows() const noexcept { return rows_; }

  // Only populated for binary tables.
  const std::vector<BitVector>& binary_rows() const noexcept { return binary_rows_; }

  // Empty when the row has no label.
  const std::string& label(std::size_t i) const { return labels_.at(i); }

 private:
  std::string name_;
  std::size_t cols_ = 0;
  std::vector<TernaryVector> rows_;
  std::vector<std::string> labels_;
  std::vector<BitVector> binary_rows_;
  bool binary_ = true;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

inline AssocTable load_table(std::istream& in, std::string name = {}) {
  std::vector<TernaryVector> rows;
  std::vector<std::string> labels;
  std::set<std::string> seen;
  std::size_t width = 0;
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (detail::trim(line).empty()) continue;

    std::string label;
    std::string_view body = line;
    if (const auto tab = line.find('\t'); tab != std::string_view::npos) {
      label = std::string(detail::trim(line.substr(0, tab)));
      body = line.substr(tab + 1);
      if (label.empty()) throw ParseError("empty label before TAB", line_no);
      if (!seen.insert(label).second)
        throw ParseError("duplicate row label '" + label + "'", line_no);
    }
    body = detail::trim(body);

    TernaryVector row;
    try {
      row = TernaryVector::parse(body);
    } catch (const ZeroLength&) {
      throw ParseError("missing vector", line_no);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw WidthMismatch(width, row.size(), line_no);
    }
    rows.push_back(std::move(row));
    labels.push_back(std::move(label));
  }
  if (rows.empty()) throw EmptyTable();
  return AssocTable(std::move(name), std::move(rows), std::move(labels));
}

inline AssocTable load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open table file '" + path + "'");
  return load_table(in, path);
}

}  // namespace lamp
