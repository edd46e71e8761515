#pragma once

// Second stage of Kovacic's algorithm: for a candidate of degree d, look for a
// monic P = z^d + p_{d-1} z^{d-1} + ... + p_0.
//
// Every condition on P is linear in its coefficients, so each operator is
// applied to the monomials z^0..z^d and the coefficients of the result are
// fed, highest power first, to an exact incremental solver. The search fails
// at the first equation that cannot be satisfied.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphgeo/algebra/linear_solve.hpp"
#include "sphgeo/kovacic/candidates.hpp"

namespace sphgeo {

using PolyQE = Poly<QuadExt>;
/// Polynomials in omega with coefficients in Q(sqrt D)(z).
using OmegaPoly = Poly<RatFuncQE>;

/// A verified Liouvillian solution xi = exp(int omega), omega a root of `relation`.
struct Solution {
  CaseCandidate candidate;
  PolyQE P;
  RatFuncQE theta;
  OmegaPoly relation;  // degree 1, 2 or N in omega

  /// omega itself when the relation is linear.
  RatFuncQE omega() const {
    if (relation.degree() != 1) throw std::logic_error("Solution::omega: relation is not linear");
    return -relation[0] / relation[1];
  }
};

enum class SearchStatus { failed, solved, rejected };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::failed:
      return "failed";
    case SearchStatus::solved:
      return "solved";
    case SearchStatus::rejected:
      return "rejected";
  }
  return "?";
}

struct SearchResult {
  SearchStatus status = SearchStatus::failed;
  std::size_t unknowns = 0;
  std::size_t equations = 0;   // equations consumed before the verdict
  std::size_t rank = 0;
  int residual_degree = -1;    // degree bound of the polynomial that must vanish
  std::string reason;
  std::optional<Solution> solution;
};

namespace detail {

inline PolyQE as_poly(const RatFuncQE& f, const char* what) {
  if (f.is_zero()) return PolyQE();
  if (!f.is_polynomial()) throw std::logic_error(std::string("kovacic: ") + what + " is not a polynomial");
  return f.num().scaled(QuadExt(1) / f.den().leading());
}

inline PolyQE nth_derivative(PolyQE p, int k) {
  for (int i = 0; i < k; ++i) p = p.derivative();
  return p;
}

inline RatFuncQE theta_from(const FuchsianODE& f, const std::vector<Rational>& selection, const Rational& scale) {
  RatFuncQE theta;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (sgn(selection[j]) == 0) continue;
    theta += RatFuncQE(QuadExt(scale * selection[j])) / RatFuncQE(PolyQE::linear(f.poles[j]));
  }
  return theta;
}

/// Solves sum_k p_k images[k] + images[d] == 0 coefficientwise, top degree first.
inline SearchResult solve_monic(const std::vector<PolyQE>& images, int d) {
  SearchResult res;
  res.unknowns = static_cast<std::size_t>(d);
  int top = -1;
  for (const auto& p : images) top = std::max(top, p.degree());
  res.residual_degree = top;
  IncrementalSolver<QuadExt> solver(res.unknowns);
  for (int m = top; m >= 0; --m) {
    std::vector<QuadExt> row;
    row.reserve(res.unknowns);
    for (int k = 0; k < d; ++k) row.push_back(images[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)]);
    const QuadExt rhs = -images[static_cast<std::size_t>(d)][static_cast<std::size_t>(m)];
    const bool ok = solver.add(std::move(row), rhs);
    res.equations = solver.equations_seen();
    res.rank = solver.rank();
    if (!ok) {
      res.reason = "coefficient of z^" + std::to_string(m) + " cannot be made to vanish";
      return res;
    }
  }
  const auto p = solver.solution();
  std::vector<QuadExt> c = *p;
  c.push_back(QuadExt(1));
  res.status = SearchStatus::solved;
  res.solution = Solution{};
  res.solution->P = PolyQE(std::move(c));
  return res;
}

/// sum_i coeffs[i] D^i applied to z^0..z^d.
inline std::vector<PolyQE> operator_images(const std::vector<PolyQE>& coeffs, int d) {
  std::vector<PolyQE> images;
  for (int k = 0; k <= d; ++k) {
    const PolyQE mono = PolyQE::monomial(QuadExt(1), static_cast<std::size_t>(k));
    PolyQE img;
    for (std::size_t i = 0; i < coeffs.size(); ++i) img = img + coeffs[i] * nth_derivative(mono, static_cast<int>(i));
    images.push_back(std::move(img));
  }
  return images;
}

/// P_N = -P, ..., P_{-1} of the case-3 recursion; element k holds P_{N-k}.
inline std::vector<PolyQE> case3_chain(const PolyQE& P, const PolyQE& S, const PolyQE& s_theta, const PolyQE& s2r,
                                       int N) {
  const PolyQE dS = S.derivative();
  std::vector<PolyQE> chain = {-P};
  PolyQE next;  // P_{i+1}
  for (int i = N; i >= 0; --i) {
    const PolyQE& cur = chain.back();
    PolyQE prev = -(S * cur.derivative()) + (dS.scaled(QuadExt(N - i)) - s_theta) * cur -
                  (s2r * next).scaled(QuadExt(static_cast<long>(N - i) * (i + 1)));
    next = cur;
    chain.push_back(std::move(prev));
  }
  return chain;
}

inline Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace detail

/// omega' + omega^2 - r for a rational omega.
inline RatFuncQE riccati_residual(const FuchsianODE& f, const RatFuncQE& omega) {
  return omega.derivative() + omega * omega - f.r;
}

/// Exact check that the zero set of R(omega) is invariant under
/// omega' = r - omega^2, i.e. R divides R_z + R_omega (r - omega^2).
inline bool verify_relation(const FuchsianODE& f, const OmegaPoly& R) {
  if (R.degree() < 1) return false;
  std::vector<RatFuncQE> dc(static_cast<std::size_t>(R.degree()) + 2);
  for (int i = 0; i <= R.degree(); ++i) {
    const RatFuncQE& c = R[static_cast<std::size_t>(i)];
    dc[static_cast<std::size_t>(i)] += c.derivative();
    if (i == 0) continue;
    const RatFuncQE ic = c * RatFuncQE(QuadExt(i));
    dc[static_cast<std::size_t>(i - 1)] += ic * f.r;
    dc[static_cast<std::size_t>(i + 1)] -= ic;
  }
  const OmegaPoly DR(std::move(dc));
  return divmod(DR, R).second.is_zero();
}

inline bool verify_solution(const FuchsianODE& f, const Solution& s) {
  if (s.relation.degree() == 1) return riccati_residual(f, s.omega()).is_zero();
  return verify_relation(f, s.relation);
}

inline SearchResult case1_search(const FuchsianODE& f, const CaseCandidate& c) {
  if (c.N != 1) throw std::invalid_argument("case1_search: not a case-1 candidate");
  const PolyQE S = f.pole_product();
  const RatFuncQE s2(S * S);
  const RatFuncQE theta = detail::theta_from(f, c.selection, 1);
  const std::vector<PolyQE> coeffs = {
      detail::as_poly(s2 * (theta.derivative() + theta * theta - f.r), "S^2 (theta' + theta^2 - r)"),
      detail::as_poly(s2 * theta * RatFuncQE(QuadExt(2)), "2 S^2 theta"),
      S * S,
  };
  SearchResult res = detail::solve_monic(detail::operator_images(coeffs, static_cast<int>(c.d)), static_cast<int>(c.d));
  if (res.solution) {
    Solution& s = *res.solution;
    s.candidate = c;
    s.theta = theta;
    const RatFuncQE omega = theta + RatFuncQE(s.P.derivative(), s.P);
    s.relation = OmegaPoly(std::vector<RatFuncQE>{-omega, RatFuncQE(QuadExt(1))});
  }
  return res;
}

inline SearchResult case2_search(const FuchsianODE& f, const CaseCandidate& c) {
  if (c.N != 2) throw std::invalid_argument("case2_search: not a case-2 candidate");
  const PolyQE S = f.pole_product();
  const RatFuncQE s3(S * S * S);
  const RatFuncQE theta = detail::theta_from(f, c.selection, make_rational(1, 2));
  const RatFuncQE t1 = theta.derivative(), t2 = t1.derivative(), r = f.r;
  const RatFuncQE three(QuadExt(3)), four(QuadExt(4)), two(QuadExt(2));
  const std::vector<PolyQE> coeffs = {
      detail::as_poly(s3 * (t2 + three * theta * t1 + theta * theta * theta - four * r * theta - two * r.derivative()),
                      "case-2 P coefficient"),
      detail::as_poly(s3 * (three * theta * theta + three * t1 - four * r), "case-2 P' coefficient"),
      detail::as_poly(s3 * three * theta, "case-2 P'' coefficient"),
      S * S * S,
  };
  SearchResult res = detail::solve_monic(detail::operator_images(coeffs, static_cast<int>(c.d)), static_cast<int>(c.d));
  if (res.solution) {
    Solution& s = *res.solution;
    s.candidate = c;
    s.theta = theta;
    const RatFuncQE phi = theta + RatFuncQE(s.P.derivative(), s.P);
    const RatFuncQE half(QuadExt(make_rational(1, 2)));
    s.relation = OmegaPoly(
        std::vector<RatFuncQE>{half * phi.derivative() + half * phi * phi - r, -phi, RatFuncQE(QuadExt(1))});
  }
  return res;
}

inline SearchResult case3_search(const FuchsianODE& f, const CaseCandidate& c) {
  const int N = c.N;
  if (N != 4 && N != 6 && N != 12) throw std::invalid_argument("case3_search: not a case-3 candidate");
  const int d = static_cast<int>(c.d);
  const int k = static_cast<int>(f.size());
  const PolyQE S = f.pole_product();
  const RatFuncQE theta = detail::theta_from(f, c.selection, make_rational(N, 12));
  const PolyQE s_theta = detail::as_poly(RatFuncQE(S) * theta, "S theta");
  const PolyQE s2r = detail::as_poly(RatFuncQE(S * S) * f.r, "S^2 r");
  const int bound = (N + 1) * (k - 1) + d;

  std::vector<PolyQE> images;
  for (int m = 0; m <= d; ++m) {
    const auto chain = detail::case3_chain(PolyQE::monomial(QuadExt(1), static_cast<std::size_t>(m)), S, s_theta,
                                           s2r, N);
    if (chain.back().degree() > bound) {
      throw std::logic_error("case3_search: deg P_-1 = " + std::to_string(chain.back().degree()) + " exceeds " +
                             std::to_string(bound));
    }
    images.push_back(chain.back());
  }
  SearchResult res = detail::solve_monic(images, d);
  res.residual_degree = bound;
  if (res.solution) {
    Solution& s = *res.solution;
    s.candidate = c;
    s.theta = theta;
    const auto chain = detail::case3_chain(s.P, S, s_theta, s2r, N);
    // chain[N - i] = P_i
    std::vector<RatFuncQE> rel;
    PolyQE s_pow = PolyQE::constant(QuadExt(1));
    for (int i = 0; i <= N; ++i) {
      const QuadExt inv_fact(Rational(1) / detail::factorial(N - i));
      rel.emplace_back((s_pow * chain[static_cast<std::size_t>(N - i)]).scaled(inv_fact));
      s_pow = s_pow * S;
    }
    s.relation = OmegaPoly(std::move(rel));
  }
  return res;
}

inline SearchResult search(const FuchsianODE& f, const CaseCandidate& c) {
  SearchResult res = c.N == 1 ? case1_search(f, c) : c.N == 2 ? case2_search(f, c) : case3_search(f, c);
  if (res.solution && !verify_solution(f, *res.solution)) {
    res.status = SearchStatus::rejected;
    res.reason = "polynomial found but the omega relation is not Riccati-invariant";
    res.solution.reset();
  }
  return res;
}

}  // namespace sphgeo
