#pragma once

// Independent reference implementations used only by the tests. Nothing here
// touches the word-level code paths under test: vectors are plain strings and
// every quantity is computed by enumeration or per-coordinate counting.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Points = std::set<std::string>;

// Binary points covered by a ternary string such as "x01".
inline Points pts(const std::string& v) {
  Points out{""};
  for (char c : v) {
    Points next;
    for (const auto& p : out) {
      if (c == '0' || c == 'x') next.insert(p + '0');
      if (c == '1' || c == 'x') next.insert(p + '1');
    }
    out = std::move(next);
  }
  return out;
}

inline Points meet(const Points& a, const Points& b) {
  Points out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

inline bool subset(const Points& a, const Points& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Every string of length n over `alphabet`.
inline std::vector<std::string> all_strings(std::size_t n, const std::string& alphabet) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& s : out)
      for (char c : alphabet) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

inline std::size_t ones(const std::string& v) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), '1'));
}

inline std::size_t hamming(const std::string& a, const std::string& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

// Integer criterion computed coordinate by coordinate from its definition.
struct IntCriterion {
  std::size_t d, nm_m_in_a, nm_a_in_m;
  std::size_t value() const { return d + nm_m_in_a + nm_a_in_m; }
};

inline IntCriterion int_criterion(const std::string& m, const std::string& a) {
  std::size_t d = 0, both = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    d += m[i] != a[i];
    both += m[i] == '1' && a[i] == '1';
  }
  return {d, ones(a) - both, ones(m) - both};
}

inline std::string prefix(std::size_t n, std::size_t k) {
  return std::string(k, '1') + std::string(n - k, '0');
}

// Rows with minimal Hamming distance to m, ascending index.
inline std::vector<std::size_t> argmin_hamming(const std::vector<std::string>& rows,
                                               const std::string& m) {
  std::size_t best = SIZE_MAX;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto d = hamming(rows[i], m);
    if (d < best) {
      best = d;
      out.clear();
    }
    if (d == best) out.push_back(i);
  }
  return out;
}

inline std::string random_bits(std::mt19937_64& rng, std::size_t n) {
  std::string s(n, '0');
  for (auto& c : s) c = (rng() & 1) ? '1' : '0';
  return s;
}

}  // namespace oracle
