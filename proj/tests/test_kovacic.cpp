#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <random>
#include <sstream>

#include "sphgeo/geodesic/dopri5.hpp"
#include "sphgeo/kovacic.hpp"

using namespace sphgeo;

namespace {

using cplx = std::complex<double>;

RatFuncQE z() { return RatFuncQE::x(); }
RatFuncQE c(const Rational& x) { return RatFuncQE(QuadExt(x)); }
RatFuncQE pole(const QuadExt& a) { return RatFuncQE(PolyQE::linear(a)).inverse(); }

FuchsianODE nve_input(int n, const Rational& eps) { return make_fuchsian(equatorial_nve(n, eps)); }

// Riemann equation in normal form with exponent differences l, m, v at 0, 1, infinity.
FuchsianODE riemann(const Rational& l, const Rational& m, const Rational& v) {
  const RatFuncQE zz = z(), one = c(1);
  const RatFuncQE r = c((l * l - 1) / 4) / (zz * zz) + c((m * m - 1) / 4) / ((zz - one) * (zz - one)) -
                      c((l * l + m * m - v * v - 1) / 4) / (zz * (zz - one));
  return make_fuchsian(r, {QuadExt(0), QuadExt(1)});
}

// exact at the binary value of x; double Horner cancels badly on the relations
double eval(const RatFuncQE& f, double x) { return f.evaluate(QuadExt(Rational(x))).to_double(); }

// Roots of a polynomial with real coefficients (Durand-Kerner).
std::vector<cplx> roots(std::vector<double> a) {
  const std::size_t n = a.size() - 1;
  for (auto& x : a) x /= a.back();
  // start on a circle of the Fujiwara radius
  double rad = 0;
  for (std::size_t k = 0; k < n; ++k) rad = std::max(rad, std::pow(std::abs(a[k]), 1.0 / static_cast<double>(n - k)));
  std::vector<cplx> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = 2 * rad * std::pow(cplx(0.4, 0.9), static_cast<double>(i));
  for (int it = 0; it < 5000; ++it) {
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx num = 1;
      for (std::size_t k = n; k-- > 0;) num = num * r[i] + a[k];
      cplx den = 1;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) den *= r[i] - r[k];
      }
      const cplx step = num / den;
      r[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-14 * rad) break;
  }
  return r;
}

std::vector<cplx> omega_roots(const OmegaPoly& rel, double x) {
  std::vector<double> a;
  for (const auto& co : rel.coefficients()) a.push_back(eval(co, x));
  return roots(a);
}

// Independent check of a relation: every numerical root omega(z) satisfies
// omega' + omega^2 = r, with omega' from central differences of tracked roots.
double riccati_defect(const FuchsianODE& f, const OmegaPoly& rel, double x, double h = 1e-5) {
  const auto r0 = omega_roots(rel, x), rp = omega_roots(rel, x + h), rm = omega_roots(rel, x - h);
  auto nearest = [](const std::vector<cplx>& v, cplx w) {
    cplx best = v[0];
    for (const auto& u : v) {
      if (std::abs(u - w) < std::abs(best - w)) best = u;
    }
    return best;
  };
  double worst = 0;
  const double rv = eval(f.r, x);
  for (const auto& w : r0) {
    const cplx dw = (nearest(rp, w) - nearest(rm, w)) / (2 * h);
    worst = std::max(worst, std::abs(dw + w * w - rv) / (1 + std::abs(rv)));
  }
  return worst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Table1, MatchesGoldenText) {
  std::vector<std::pair<int, Table1Row>> rows;
  for (int n = 2; n <= 12; ++n) rows.push_back({n, table1(n, make_rational(1, 4))});
  const std::string golden = read_file(std::string(SPHGEO_GOLDEN_DIR) + "/table1.txt");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(table1_text(rows), golden);
}

TEST(Table1, RowsAreIndependentOfEps) {
  for (int n = 2; n <= 12; ++n) {
    const Table1Row base = table1(n, make_rational(1, 10));
    for (const auto& e : {make_rational(1, 4), make_rational(1, 2), make_rational(7, 10)}) {
      EXPECT_EQ(table1(n, e), base) << "n=" << n << " eps=" << e;
    }
  }
}

TEST(Table1, CandidateCountsGrowWithN) {
  for (int n = 2; n <= 12; ++n) {
    const Table1Row row = table1(n, make_rational(1, 2));
    auto total = [&](int N) {
      int s = 0;
      for (const auto& [d, k] : row.at(N)) s += k;
      return s;
    };
    EXPECT_GE(total(12), total(6)) << n;
    EXPECT_GE(total(6), total(4)) << n;
  }
}

TEST(Table1, Rows) {
  const Table1Row two = table1(2, make_rational(1, 2));
  EXPECT_EQ(two.at(1), (std::map<long, int>{{0, 4}}));
  EXPECT_EQ(two.at(2), (std::map<long, int>{{0, 3}, {1, 1}}));
  EXPECT_EQ(two.at(4), (std::map<long, int>{{0, 4}, {1, 2}, {2, 1}}));
  EXPECT_EQ(two.at(6), (std::map<long, int>{{0, 21}, {1, 10}, {2, 3}, {3, 1}}));
  EXPECT_EQ(two.at(12), (std::map<long, int>{{0, 31}, {1, 20}, {2, 13}, {3, 8}, {4, 4}, {5, 2}, {6, 1}}));
  const Table1Row six = table1(6, make_rational(1, 2));
  EXPECT_EQ(six.at(6), (std::map<long, int>{{0, 3}, {1, 1}}));
  EXPECT_EQ(six.at(12), (std::map<long, int>{{0, 3}, {1, 2}, {2, 1}}));
  EXPECT_TRUE(six.at(1).empty() && six.at(2).empty() && six.at(4).empty());
  const Table1Row twelve = table1(12, make_rational(1, 2));
  EXPECT_EQ(twelve.at(6), (std::map<long, int>{{0, 2}}));
  EXPECT_EQ(twelve.at(12), (std::map<long, int>{{0, 2}, {1, 1}}));
  EXPECT_THROW(table1(1, make_rational(1, 2)), std::domain_error);
}

TEST(Candidates, CaseOne) {
  const auto two = case1_candidates(nve_input(2, make_rational(1, 2)));
  ASSERT_EQ(two.size(), 4u);
  for (const auto& cand : two) EXPECT_EQ(cand.d, 0);
  EXPECT_TRUE(case1_candidates(nve_input(3, make_rational(1, 2))).empty());

  const auto one = case1_candidates(nve_input(1, make_rational(1, 3)));
  const std::vector<Rational> expected = {1, make_rational(3, 4), make_rational(3, 4), make_rational(-1, 4),
                                          make_rational(9, 4)};
  bool found = false;
  for (const auto& cand : one) found = found || (cand.selection == expected && cand.d == 0);
  EXPECT_TRUE(found);
}

TEST(Candidates, CaseTwo) {
  const auto two = case2_candidates(nve_input(2, make_rational(1, 2)));
  std::map<long, int> cells;
  for (const auto& cand : two) ++cells[cand.d];
  EXPECT_EQ(cells, (std::map<long, int>{{0, 3}, {1, 1}}));
  const auto four = case2_candidates(nve_input(4, make_rational(1, 2)));
  ASSERT_EQ(four.size(), 2u);
  EXPECT_EQ(four[0].d, 0);
  EXPECT_EQ(four[1].d, 0);
  EXPECT_TRUE(case2_candidates(nve_input(5, make_rational(1, 2))).empty());
  for (const auto& cand : two) {
    bool all_even = true;
    for (const auto& e : cand.selection) all_even = all_even && is_integer(e) && mpz_even_p(e.get_num().get_mpz_t());
    EXPECT_FALSE(all_even);
  }
}

TEST(Candidates, CaseThreeSetsForOrderTwo) {
  const auto f = nve_input(2, make_rational(1, 2));
  const auto sets = case3_sets(f, 12);
  auto ints = [](std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
  };
  ASSERT_EQ(sets.size(), 6u);
  EXPECT_EQ(sets[0], ints({12}));
  EXPECT_EQ(sets[1], ints({6, 7, 5, 8, 4, 9, 3}));
  EXPECT_EQ(sets[2], sets[1]);
  EXPECT_EQ(sets[3], ints({6, 9, 3, 12, 0, 15, -3}));
  EXPECT_EQ(sets[4], sets[3]);
  EXPECT_EQ(sets[5], ints({6, 8, 4, 10, 2, 12, 0, 14, -2, 16, -4, 18, -6}));

  const auto cands = case3_candidates(f, 12);
  const CaseCandidate& top = cands.back();
  EXPECT_EQ(top.d, 6);
  EXPECT_EQ(top.selection, ints({12, 3, 3, -3, -3, 18}));

  const auto ten = case3_candidates(nve_input(10, make_rational(1, 2)), 12);
  ASSERT_EQ(ten.size(), 1u);
  EXPECT_EQ(ten[0].d, 0);
  EXPECT_THROW(case3_candidates(f, 5), std::invalid_argument);
}

TEST(Candidates, DegreeRecomputesFromSelection) {
  for (int n : {1, 2, 3, 4, 6}) {
    const auto f = nve_input(n, make_rational(1, 4));
    for (int N : case_labels()) {
      for (const auto& cand : all_candidates(f, N)) EXPECT_EQ(candidate_degree(cand), Rational(cand.d));
    }
  }
}

TEST(Search, OrderTwoCasesOneAndTwoFail) {
  const auto f = nve_input(2, make_rational(1, 2));
  for (const auto& cand : case1_candidates(f)) EXPECT_EQ(case1_search(f, cand).status, SearchStatus::failed);
  for (const auto& cand : case2_candidates(f)) EXPECT_EQ(case2_search(f, cand).status, SearchStatus::failed);
  const auto g = nve_input(4, make_rational(1, 2));
  for (const auto& cand : case2_candidates(g)) EXPECT_EQ(case2_search(g, cand).status, SearchStatus::failed);
}

TEST(Search, OrderTwoDegreeSixCascade) {
  // An independent symbolic run of the same recursion solves p5 = 0 from z^57
  // and then meets a nonzero coefficient at z^56.
  const auto f = nve_input(2, make_rational(1, 2));
  const CaseCandidate top = case3_candidates(f, 12).back();
  const SearchResult res = case3_search(f, top);
  EXPECT_EQ(res.status, SearchStatus::failed);
  EXPECT_EQ(res.residual_degree, 58);
  EXPECT_EQ(res.unknowns, 6u);
  EXPECT_EQ(res.equations, 2u);
  EXPECT_EQ(res.rank, 1u);
  EXPECT_EQ(res.reason, "coefficient of z^56 cannot be made to vanish");
}

TEST(Search, OrderThreeCaseThreeFails) {
  const auto f = nve_input(3, make_rational(1, 4));
  for (int N : {6, 12}) {
    const auto cands = case3_candidates(f, N);
    EXPECT_FALSE(cands.empty());
    for (const auto& cand : cands) EXPECT_EQ(case3_search(f, cand).status, SearchStatus::failed);
  }
}

TEST(Kovacic, EmptyLedgerOrders) {
  for (int n : {7, 8, 9, 11, 13, 14, 15, 16, 17, 18, 19, 20}) {
    const auto out = run_kovacic(nve_input(n, make_rational(1, 2)));
    EXPECT_EQ(out.verdict, Verdict::unsolvable) << n;
    EXPECT_TRUE(out.ledger.empty()) << n;
  }
}

TEST(Kovacic, UnsolvableWithPopulatedLedger) {
  for (int n : {2, 3, 4, 5, 6, 10, 12}) {
    const auto f = nve_input(n, make_rational(1, 4));
    const auto out = run_kovacic(f);
    EXPECT_EQ(out.verdict, Verdict::unsolvable) << n;
    EXPECT_FALSE(out.ledger.empty()) << n;
    EXPECT_TRUE(out.skipped.empty());
    for (const auto& e : out.ledger) EXPECT_EQ(e.result.status, SearchStatus::failed);
    const NecessaryConditions nc = necessary_conditions(f);
    EXPECT_TRUE(nc.case1 && nc.case2 && nc.case3);
  }
}

TEST(Kovacic, LedgerIsIndependentOfThreadCount) {
  const auto f = nve_input(2, make_rational(1, 2));
  const auto a = run_kovacic(f, {1, true}), b = run_kovacic(f, {4, true});
  ASSERT_EQ(a.ledger.size(), b.ledger.size());
  for (std::size_t i = 0; i < a.ledger.size(); ++i) {
    EXPECT_EQ(a.ledger[i].candidate, b.ledger[i].candidate);
    EXPECT_EQ(a.ledger[i].result.equations, b.ledger[i].result.equations);
    EXPECT_EQ(a.ledger[i].result.reason, b.ledger[i].result.reason);
  }
  EXPECT_EQ(kovacic_json(f, a).dump(), kovacic_json(f, b).dump());
}

TEST(Kovacic, LimaconIsSolvableInCaseOne) {
  for (const auto& e : {make_rational(1, 10), make_rational(1, 3), make_rational(1, 2)}) {
    const auto f = nve_input(1, e);
    const auto out = run_kovacic(f);
    ASSERT_EQ(out.verdict, Verdict::solvable);
    EXPECT_EQ(out.case_number, 1);
    ASSERT_TRUE(out.solution);
    EXPECT_EQ(out.solution->candidate.d, 0);
    const RatFuncQE omega = out.solution->omega();
    EXPECT_TRUE(riccati_residual(f, omega).is_zero());
    // xi_1 = (z + 1)(z^2 - eps^2)^(3/4)(z - rho)^(-1/4)
    const QuadExt rho(-(1 + e * e) / 2);
    const RatFuncQE expected = pole(QuadExt(-1)) + c(make_rational(3, 4)) * (pole(QuadExt(e)) + pole(QuadExt(-e))) -
                               c(make_rational(1, 4)) * pole(rho);
    EXPECT_EQ(omega, expected) << "eps=" << e;
    EXPECT_FALSE(riccati_residual(f, omega + pole(f.poles[0])).is_zero());
    Solution broken = *out.solution;
    broken.relation = OmegaPoly(std::vector<RatFuncQE>{-(omega + pole(f.poles[0])), c(1)});
    EXPECT_FALSE(verify_solution(f, broken));
  }
}

TEST(Kovacic, LimaconSecondSolutionWronskian) {
  // xi_2 = xi_1 int xi_1^-2 dz on a pole-free interval; integrate
  // xi'' = r xi from xi_2's data and compare, with W(xi_1, xi_2) = 1.
  const Rational e = make_rational(1, 3);
  const auto f = nve_input(1, e);
  const double ed = e.get_d(), rho = -(1 + ed * ed) / 2;
  auto xi1 = [&](double x) { return (x + 1) * std::pow(x * x - ed * ed, 0.75) * std::pow(x - rho, -0.25); };
  const RatFuncQE omega = run_kovacic(f).solution->omega();
  using St = Dopri5<4>;  // xi, xi', I = int xi_1^-2, xi_1 (reference)
  auto rhs = [&](double x, const St::State& y) {
    const double w = eval(omega, x);
    return St::State{y[1], eval(f.r, x) * y[0], 1 / (xi1(x) * xi1(x)), w * y[3]};
  };
  const double x0 = 0.5, x1 = 3.0;
  // at x0: I = 0, so xi_2 = 0 and xi_2' = 1/xi_1
  St::State y{0.0, 1 / xi1(x0), 0.0, xi1(x0)};
  St::Tolerance tol;
  tol.rtol = tol.atol = 1e-12;
  double x = x0, h = 1e-3;
  St::State k = rhs(x, y);
  double max_w = 0;
  while (x < x1) {
    h = std::min(h, x1 - x);
    const auto st = St::attempt(rhs, x, y, k, h, tol);
    if (!(st.err <= 1.0)) {
      h = St::next_h(h, st.err);
      continue;
    }
    x += h;
    y = st.y1;
    k = rhs(x, y);
    const double x1v = y[3], dx1 = eval(omega, x) * x1v;
    max_w = std::max(max_w, std::abs(x1v * y[1] - dx1 * y[0] - 1));
    h = St::next_h(h, st.err);
  }
  EXPECT_NEAR(y[3], xi1(x1), 1e-9 * xi1(x1));
  EXPECT_NEAR(y[0], xi1(x1) * y[2], 1e-8 * std::abs(y[0]));
  EXPECT_LT(max_w, 1e-8);
}

TEST(Kovacic, EulerEquation) {
  const auto f = make_fuchsian(c(make_rational(3, 4)) / (z() * z()), {QuadExt(0)});
  const auto out = run_kovacic(f);
  ASSERT_EQ(out.verdict, Verdict::solvable);
  EXPECT_EQ(out.case_number, 1);
  // xi = z^(3/2) or z^(-1/2)
  const RatFuncQE w = out.solution->omega();
  EXPECT_TRUE(w == c(make_rational(3, 2)) / z() || w == c(make_rational(-1, 2)) / z());
  int solved = 0;
  for (const auto& e : out.ledger) solved += e.result.status == SearchStatus::solved;
  EXPECT_EQ(solved, 3);  // d = 2 with P = z^2 gives z^(3/2) again
}

TEST(Kovacic, PlantedRationalSolutionsAreRecovered) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 4), loc(-5, 5);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<QuadExt> poles;
    RatFuncQE omega;
    const int k = 2 + trial % 3;
    while (static_cast<int>(poles.size()) < k) {
      const QuadExt a(make_rational(loc(rng), 1 + trial % 2));
      if (std::find(poles.begin(), poles.end(), a) != poles.end()) continue;
      poles.push_back(a);
      Rational cj = make_rational(num(rng), den(rng));
      if (sgn(cj) == 0) cj = make_rational(1, 3);
      omega += c(cj) * pole(a);
    }
    const RatFuncQE r = omega.derivative() + omega * omega;
    const auto f = make_fuchsian(r, poles);
    const auto out = run_kovacic(f);
    ASSERT_EQ(out.verdict, Verdict::solvable) << trial;
    EXPECT_EQ(out.case_number, 1);
    bool found = false;
    for (const auto& e : out.ledger) found = found || (e.result.solution && e.result.solution->omega() == omega);
    EXPECT_TRUE(found) << trial;
  }
  // omega = c/(z-1) + c/(z+1) + 1/z leaves z = 0 regular, so P = z
  for (const auto& cv : {make_rational(1, 3), make_rational(3, 4), make_rational(-2, 5)}) {
    const RatFuncQE omega = c(cv) * (pole(QuadExt(1)) + pole(QuadExt(-1))) + pole(QuadExt(0));
    const auto f = make_fuchsian(omega.derivative() + omega * omega, {QuadExt(1), QuadExt(-1)});
    const auto out = run_kovacic(f);
    ASSERT_EQ(out.verdict, Verdict::solvable);
    bool found = false;
    for (const auto& e : out.ledger) {
      if (e.result.solution && e.result.solution->omega() == omega) {
        found = true;
        EXPECT_EQ(e.result.solution->P.degree(), 1);
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(Kovacic, DihedralIsCaseTwo) {
  for (const auto& v : {make_rational(1, 3), make_rational(2, 5)}) {
    const auto f = riemann(make_rational(1, 2), make_rational(1, 2), v);
    const auto out = run_kovacic(f);
    ASSERT_EQ(out.verdict, Verdict::solvable);
    EXPECT_EQ(out.case_number, 2);
    EXPECT_EQ(out.solution->relation.degree(), 2);
    EXPECT_TRUE(verify_solution(f, *out.solution));
    for (double x : {0.3, 0.6, 2.5}) EXPECT_LT(riccati_defect(f, out.solution->relation, x), 1e-6) << x;

    Solution broken = *out.solution;
    std::vector<RatFuncQE> cs = broken.relation.coefficients();
    cs[0] += c(make_rational(1, 7)) * pole(QuadExt(0));
    broken.relation = OmegaPoly(cs);
    EXPECT_FALSE(verify_solution(f, broken));
    double worst = 0;
    for (double x : {0.3, 0.6, 2.5}) worst = std::max(worst, riccati_defect(f, broken.relation, x));
    EXPECT_GT(worst, 1e-3);
  }
}

TEST(Kovacic, PolyhedralGroupsAreCaseThree) {
  struct Row {
    Rational l, m, v;
    int N;
  };
  const Row rows[] = {{make_rational(1, 2), make_rational(1, 3), make_rational(1, 3), 4},
                      {make_rational(1, 2), make_rational(1, 3), make_rational(1, 4), 6},
                      {make_rational(1, 2), make_rational(1, 3), make_rational(1, 5), 12}};
  for (const auto& row : rows) {
    const auto f = riemann(row.l, row.m, row.v);
    const auto out = run_kovacic(f);
    ASSERT_EQ(out.verdict, Verdict::solvable);
    EXPECT_EQ(out.case_number, 3);
    EXPECT_EQ(out.solution->candidate.N, row.N);
    EXPECT_EQ(out.solution->relation.degree(), row.N);
    EXPECT_LT(riccati_defect(f, out.solution->relation, 0.4), 1e-5) << row.N;
  }
  // (1/2, 1/3, 1/7) is a hyperbolic triangle group
  EXPECT_EQ(run_kovacic(riemann(make_rational(1, 2), make_rational(1, 3), make_rational(1, 7))).verdict,
            Verdict::unsolvable);
}

TEST(Kovacic, NecessaryConditionsSkipCaseTwo) {
  // only simple poles: case 2 needs a double pole
  const RatFuncQE r = pole(QuadExt(0)) - c(2) * pole(QuadExt(1)) + pole(QuadExt(2));
  const auto f = make_fuchsian(r, {QuadExt(0), QuadExt(1), QuadExt(2)});
  EXPECT_FALSE(necessary_conditions(f).case2);
  const auto out = run_kovacic(f);
  EXPECT_EQ(out.skipped, std::vector<int>{2});
  EXPECT_EQ(out.verdict, Verdict::unsolvable);
  EXPECT_EQ(run_kovacic(f, {1, false}).verdict, Verdict::unsolvable);
}

TEST(Kovacic, RejectsUnsupportedInput) {
  EXPECT_THROW(make_fuchsian(pole(QuadExt(0)), {QuadExt(0)}), NonFuchsianError);
  // sqrt(1 + 4 beta) = sqrt(2)
  EXPECT_THROW(make_fuchsian(c(make_rational(1, 4)) * pole(QuadExt(0)) * pole(QuadExt(0)), {QuadExt(0)}),
               std::domain_error);
}

TEST(Kovacic, JsonReport) {
  const auto f = nve_input(1, make_rational(1, 3));
  const auto j = kovacic_json(f, run_kovacic(f));
  EXPECT_EQ(j["verdict"], "Solvable");
  EXPECT_EQ(j["case"], 1);
  EXPECT_EQ(j["input"]["beta_inf"]["a"], "45/16");
  EXPECT_EQ(j["witness"]["candidate"]["d"], 0);
  EXPECT_TRUE(j["witness"].contains("omega"));
  const auto g = nve_input(8, make_rational(1, 2));
  const auto k = kovacic_json(g, run_kovacic(g));
  EXPECT_EQ(k["verdict"], "Unsolvable");
  EXPECT_TRUE(k["ledger"].empty());
}
