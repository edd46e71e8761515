#pragma once

// Exact linear systems fed one equation at a time. Each new row is reduced
// against the pivots found so far, so an inconsistent system is detected at
// the first equation that cannot be satisfied.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sphgeo/algebra/field.hpp"

namespace sphgeo {

template <class K>
class IncrementalSolver {
 public:
  explicit IncrementalSolver(std::size_t unknowns) : m_(unknowns) {}

  std::size_t unknowns() const { return m_; }
  std::size_t rank() const { return rows_.size(); }
  bool consistent() const { return consistent_; }
  std::size_t equations_seen() const { return seen_; }

  /// Adds sum_k coeffs[k] x_k = rhs. Returns false once the system is
  /// inconsistent.
  bool add(std::vector<K> coeffs, K rhs) {
    if (coeffs.size() != m_) throw std::invalid_argument("IncrementalSolver: wrong row length");
    if (!consistent_) return false;
    ++seen_;
    for (const auto& row : rows_) {
      const K f = coeffs[row.pivot];
      if (is_zero(f)) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        if (!is_zero(row.coeffs[k])) coeffs[k] -= f * row.coeffs[k];
      }
      rhs -= f * row.rhs;
    }
    std::size_t pivot = m_;
    for (std::size_t k = 0; k < m_; ++k) {
      if (!is_zero(coeffs[k])) {
        pivot = k;
        break;
      }
    }
    if (pivot == m_) {
      if (!is_zero(rhs)) consistent_ = false;
      return consistent_;
    }
    const K inv = field_traits<K>::one() / coeffs[pivot];
    for (auto& c : coeffs) c *= inv;
    rhs *= inv;
    // keep the stored rows fully reduced
    for (auto& row : rows_) {
      const K f = row.coeffs[pivot];
      if (is_zero(f)) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        if (!is_zero(coeffs[k])) row.coeffs[k] -= f * coeffs[k];
      }
      row.rhs -= f * rhs;
    }
    rows_.push_back({std::move(coeffs), std::move(rhs), pivot});
    return true;
  }

  /// One solution, free unknowns set to zero.
  std::optional<std::vector<K>> solution() const {
    if (!consistent_) return std::nullopt;
    std::vector<K> x(m_, field_traits<K>::zero());
    for (const auto& row : rows_) x[row.pivot] = row.rhs;
    return x;
  }

 private:
  struct Row {
    std::vector<K> coeffs;
    K rhs;
    std::size_t pivot;
  };

  std::size_t m_;
  std::size_t seen_ = 0;
  bool consistent_ = true;
  std::vector<Row> rows_;
};

}  // namespace sphgeo
