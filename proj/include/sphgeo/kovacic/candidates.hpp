#pragma once

// First stage of Kovacic's algorithm: exponent selections with d in N_0.
//
// Case 1 enumerates sign tuples, so a pole with alpha+ == alpha- still
// contributes two selections. Cases 2 and 3 enumerate tuples of distinct set
// elements. These are the conventions under which the published counts of
// d-values are reproduced.

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "sphgeo/kovacic/fuchsian.hpp"

namespace sphgeo {

struct CaseCandidate {
  int N = 1;                         // 1, 2, 4, 6 or 12
  long d = 0;
  std::vector<Rational> selection;   // alpha_j, e_j or f_j per pole, then the value at infinity
  std::vector<int> branch;           // index chosen in each set (0 = + sign in case 1)

  friend bool operator<(const CaseCandidate& x, const CaseCandidate& y) {
    return std::tie(x.N, x.d, x.selection, x.branch) < std::tie(y.N, y.d, y.selection, y.branch);
  }
  friend bool operator==(const CaseCandidate& x, const CaseCandidate& y) {
    return x.N == y.N && x.d == y.d && x.selection == y.selection && x.branch == y.branch;
  }
};

/// d recomputed from the selection with the formula of the candidate's case.
inline Rational candidate_degree(const CaseCandidate& c) {
  Rational sum = 0;
  for (std::size_t j = 0; j + 1 < c.selection.size(); ++j) sum += c.selection[j];
  const Rational diff = c.selection.back() - sum;
  if (c.N == 1) return diff;
  if (c.N == 2) return diff / 2;
  return make_rational(c.N, 12) * diff;
}

namespace detail {

inline void enumerate(const std::vector<std::vector<Rational>>& sets, int N, std::vector<CaseCandidate>& out,
                      bool reject_all_even) {
  std::vector<int> idx(sets.size(), 0);
  for (const auto& s : sets) {
    if (s.empty()) return;
  }
  while (true) {
    CaseCandidate c;
    c.N = N;
    c.branch = idx;
    for (std::size_t j = 0; j < sets.size(); ++j) c.selection.push_back(sets[j][static_cast<std::size_t>(idx[j])]);
    const bool all_even = std::all_of(c.selection.begin(), c.selection.end(), [](const Rational& x) {
      return is_integer(x) && mpz_even_p(x.get_num().get_mpz_t());
    });
    const Rational d = candidate_degree(c);
    if (!(reject_all_even && all_even) && sgn(d) >= 0 && is_integer(d)) {
      c.d = d.get_num().get_si();
      out.push_back(std::move(c));
    }
    std::size_t k = 0;
    while (k < sets.size() && ++idx[k] == static_cast<int>(sets[k].size())) idx[k++] = 0;
    if (k == sets.size()) break;
  }
}

/// {base + (scale e) root : e in es} intersected with Z, distinct, in e order.
inline std::vector<Rational> integer_set(const Rational& base, const Rational& scale, const Rational& root,
                                         const std::vector<int>& es) {
  std::vector<Rational> out;
  for (int e : es) {
    const Rational x = base + scale * e * root;
    if (is_integer(x) && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

}  // namespace detail

inline std::vector<CaseCandidate> case1_candidates(const FuchsianODE& f) {
  std::vector<std::vector<Rational>> sets;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!is_zero(f.beta[j])) {
      const auto [p, m] = f.tau(j);
      sets.push_back({p, m});
    } else if (!is_zero(f.delta[j])) {
      sets.push_back({1, 1});
    } else {
      sets.push_back({0, 0});
    }
  }
  if (!is_zero(f.beta_inf)) {
    const auto [p, m] = f.tau_inf();
    sets.push_back({p, m});
  } else {
    sets.push_back({1, 0});
  }
  std::vector<CaseCandidate> out;
  detail::enumerate(sets, 1, out, false);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<CaseCandidate> case2_candidates(const FuchsianODE& f) {
  const std::vector<int> es = {0, 2, -2};
  std::vector<std::vector<Rational>> sets;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!is_zero(f.beta[j])) {
      sets.push_back(detail::integer_set(2, 1, f.root[j], es));
    } else {
      sets.push_back({is_zero(f.delta[j]) ? Rational(0) : Rational(4)});
    }
  }
  sets.push_back(is_zero(f.beta_inf) ? std::vector<Rational>{0, 2, 4} : detail::integer_set(2, 1, f.root_inf, es));
  std::vector<CaseCandidate> out;
  detail::enumerate(sets, 2, out, true);
  std::sort(out.begin(), out.end());
  return out;
}

/// The F_j sets of case 3, in the order e = 0, 1, -1, 2, -2, ...
inline std::vector<std::vector<Rational>> case3_sets(const FuchsianODE& f, int N) {
  if (N != 4 && N != 6 && N != 12) throw std::invalid_argument("case3_sets: N must be 4, 6 or 12");
  std::vector<int> es = {0};
  for (int e = 1; e <= N / 2; ++e) {
    es.push_back(e);
    es.push_back(-e);
  }
  std::vector<std::vector<Rational>> sets;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!is_zero(f.beta[j])) {
      sets.push_back(detail::integer_set(6, make_rational(12, N), f.root[j], es));
    } else {
      sets.push_back({is_zero(f.delta[j]) ? Rational(0) : Rational(12)});
    }
  }
  sets.push_back(detail::integer_set(6, make_rational(12, N), f.root_inf, es));
  return sets;
}

inline std::vector<CaseCandidate> case3_candidates(const FuchsianODE& f, int N) {
  std::vector<CaseCandidate> out;
  detail::enumerate(case3_sets(f, N), N, out, false);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<CaseCandidate> all_candidates(const FuchsianODE& f, int N) {
  if (N == 1) return case1_candidates(f);
  if (N == 2) return case2_candidates(f);
  return case3_candidates(f, N);
}

inline const std::vector<int>& case_labels() {
  static const std::vector<int> labels = {1, 2, 4, 6, 12};
  return labels;
}

/// N -> {d -> number of selections}.
using Table1Row = std::map<int, std::map<long, int>>;

inline Table1Row table1_row(const FuchsianODE& f) {
  Table1Row row;
  for (int N : case_labels()) {
    auto& cell = row[N];
    for (const auto& c : all_candidates(f, N)) ++cell[c.d];
  }
  return row;
}

inline Table1Row table1(int n, const Rational& eps) {
  if (n < 2) throw std::domain_error("table1: n >= 2 required");
  return table1_row(make_fuchsian(equatorial_nve(n, eps)));
}

inline std::string table1_cell(const std::map<long, int>& cell) {
  if (cell.empty()) return "-";
  std::string s;
  for (const auto& [d, count] : cell) {
    if (!s.empty()) s += ", ";
    s += std::to_string(d) + "(" + std::to_string(count) + ")";
  }
  return s;
}

/// Aligned text, one line per n.
inline std::string table1_text(const std::vector<std::pair<int, Table1Row>>& rows) {
  std::vector<std::vector<std::string>> cells = {{"n"}};
  for (int N : case_labels()) cells[0].push_back("N=" + std::to_string(N));
  for (const auto& [n, row] : rows) {
    std::vector<std::string> line = {std::to_string(n)};
    for (int N : case_labels()) {
      auto it = row.find(N);
      line.push_back(it == row.end() ? "-" : table1_cell(it->second));
    }
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& line : cells) {
    for (std::size_t k = 0; k < line.size(); ++k) width[k] = std::max(width[k], line[k].size());
  }
  std::string out;
  for (const auto& line : cells) {
    std::string s;
    for (std::size_t k = 0; k < line.size(); ++k) {
      s += line[k];
      if (k + 1 < line.size()) s += std::string(width[k] - line[k].size() + 2, ' ');
    }
    out += s + "\n";
  }
  return out;
}

}  // namespace sphgeo
