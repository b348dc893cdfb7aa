#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "generators.hpp"
#include "tailqw/decouple.hpp"
#include "tailqw/errors.hpp"
#include "tailqw/evolve.hpp"

using namespace tailqw;

namespace {

constexpr double kPi = std::numbers::pi;

CVector pair(int n, int a, int b) {
  CVector v = CVector::Zero(n);
  v[a] = 1.0 / std::sqrt(2.0);
  v[b] = -1.0 / std::sqrt(2.0);
  return v;
}

TailedGraph fly_swatter() { return attach_tail(cartesian(path(3), path(3)), 0); }

}  // namespace

TEST(ChooseTruncation, Formula) {
  EXPECT_EQ(choose_truncation(0.0, 1e-10), 30);
  EXPECT_EQ(choose_truncation(10.0, 1e-10), 55);
  EXPECT_EQ(choose_truncation(0.1, 1e-10), 31);
  EXPECT_THROW(choose_truncation(-1.0, 1e-10), ValidationError);
  EXPECT_THROW(choose_truncation(1.0, 0.0), ValidationError);
  EXPECT_THROW(choose_truncation(1e6, 1e-10), NonConvergence);
}

TEST(State, ConstructorsAndEmbedding) {
  const auto t = attach_tail(path(3), 2);
  const auto s = State::vertex(t, 1);
  EXPECT_EQ(s.norm(), 1.0);
  EXPECT_THROW(State::vertex(t, 3), ValidationError);
  EXPECT_THROW(State::from_finite(t, CVector::Zero(2)), ValidationError);
  State with_tail = State::from_finite(t, CVector::Zero(3));
  with_tail.tails[0] = CVector::Zero(2);
  with_tail.tails[0][0] = 1.0;
  const CVector v = embed(t, with_tail, 5);
  EXPECT_EQ(v.size(), 8);
  EXPECT_EQ(v[3], cplx(1.0, 0.0));
  const auto back = restrict_state(t, v, 5);
  EXPECT_EQ(back.tails[0][0], cplx(1.0, 0.0));
}

TEST(Evolve, TimeZeroEchoesInput) {
  const auto t = fly_swatter();
  const auto psi = State::from_finite(t, pair(9, 1, 3));
  const auto r = evolve(t, psi, 0.0);
  EXPECT_LE((r.state.finite - psi.finite).norm(), 1e-14);
}

TEST(Evolve, RejectsBadInitialStates) {
  const auto t = attach_tail(path(3), 0);
  EXPECT_THROW(evolve(t, State::from_finite(t, CVector::Ones(3)), 1.0), ValidationError);
  State deep = State::from_finite(t, CVector::Zero(3));
  deep.tails[0] = CVector::Zero(3);
  deep.tails[0][2] = 1.0;
  EXPECT_THROW(evolve(t, deep, 1.0), ValidationError);
}

TEST(Evolve, AcceptsFirstTailSite) {
  const auto t = attach_tail(path(3), 0);
  State s = State::from_finite(t, CVector::Zero(3));
  s.tails[0] = CVector::Zero(1);
  s.tails[0][0] = 1.0;
  const auto r = evolve(t, s, 2.0);
  EXPECT_NEAR(r.state.norm(), 1.0, 1e-9);
}

TEST(Evolve, LollipopDoublingSettles) {
  const auto t = attach_tail(complete(10), 0);
  const auto psi = State::vertex(t, 3);
  const auto r = evolve(t, psi, 20.0);
  EXPECT_GE(r.truncation, choose_truncation(20.0, kDefaultTolerance));
  const auto half = evolve_truncated(t, psi, 20.0, r.truncation / 2);
  EXPECT_LT((r.state.finite - half.finite).cwiseAbs().maxCoeff(), kDefaultTolerance);
  EXPECT_GE(r.state.norm(), 1.0 - 10 * kDefaultTolerance);
}

TEST(Evolve, LollipopReturnAmplitudeIsMostlyDark) {
  // e_j projects onto the -1 eigenspace with weight (n-2)/(n-1).
  const int n = 12;
  const auto t = attach_tail(complete(n), 0);
  const auto psi = State::vertex(t, 5);
  for (double time : {3.0, 9.0, 15.0}) {
    const auto r = evolve(t, psi, time);
    const cplx dark = std::exp(cplx(0.0, time)) * ((n - 2.0) / (n - 1.0));
    EXPECT_LE(std::abs(r.state.finite[5] - dark), 1.0 / (n - 1.0) + 1e-9);
  }
}

TEST(Evolve, FlySwatterPairTransfer) {
  const auto t = fly_swatter();
  const auto src = State::from_finite(t, pair(9, 1, 3));
  const CVector target = pair(9, 5, 7);
  const auto r = evolve(t, src, kPi / std::sqrt(2.0));
  EXPECT_NEAR(std::abs(target.dot(r.state.finite)), 1.0, 1e-8);
}

TEST(Evolve, CubeZetaStatesTransferAtQuarterPeriodFidelity) {
  const int n = 4;
  const auto t = attach_tail(hypercube(n), 0);
  // zeta states built directly from the definition
  const cplx zeta = std::polar(1.0, 2 * kPi / n);
  CVector psi1 = CVector::Zero(1 << n), psi3 = CVector::Zero(1 << n);
  for (int s = 0; s < (1 << n); ++s) {
    cplx a{0.0, 0.0};
    for (int j = 1; j <= n; ++j)
      if (s & (1 << (j - 1))) a += std::pow(zeta, j);
    if (__builtin_popcount(s) == 1) psi1[s] = a;
    if (__builtin_popcount(s) == n - 1) psi3[s] = a;
  }
  psi1.normalize();
  psi3.normalize();
  const double f = fidelity(t, State::from_finite(t, psi1), State::from_finite(t, psi3), kPi / 2);
  EXPECT_NEAR(f, 1.0, 1e-8);
}

TEST(Fidelity, SelfAtTimeZero) {
  const auto t = attach_tail(complete(4), 1);
  const auto e = State::vertex(t, 2);
  EXPECT_NEAR(fidelity(t, e, e, 0.0), 1.0, 1e-14);
}

TEST(FidelityCurve, SharedTruncationAndSymmetry) {
  const auto t = attach_tail(cone(hypercube(3)), 0);
  const auto u = State::vertex(t, 1), v = State::vertex(t, 8);
  std::vector<double> times, negated;
  for (int i = 0; i <= 60; ++i) {
    times.push_back(0.1 * i);
    negated.push_back(-0.1 * i);
  }
  const auto c = fidelity_curve(t, u, v, times);
  const auto d = fidelity_curve(t, u, v, negated);
  ASSERT_EQ(c.times.size(), c.magnitudes.size());
  EXPECT_TRUE(c.converged);
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_NEAR(c.magnitudes[i], d.magnitudes[i], 1e-12);
    EXPECT_LE(c.magnitudes[i], 1.0 + 1e-9);
    EXPECT_NEAR(c.magnitudes[i], fidelity(t, u, v, times[i]), 1e-9);
  }
  EXPECT_THROW(fidelity_curve(t, u, v, {}), ValidationError);
}

TEST(EvolveProperty, MatchesDenseExponentialOracle) {
  // Small random graphs with one or two tails truncated at L = 64.
  gen::Rng rng(61);
  std::uniform_int_distribution<int> size(1, 12);
  std::uniform_real_distribution<double> time(0.0, 8.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = size(rng);
    const Graph g = gen::graph(rng, n, 0.4, trial % 4 == 0);
    std::vector<Tail> tails{{trial % n, 1.0}};
    if (n > 2 && trial % 3 == 0) tails.push_back({(trial + 1) % n, 0.5});
    const TailedGraph t(g, tails);
    const CVector psi = gen::unit_vector(rng, n);
    const double when = time(rng);
    const auto got = evolve_truncated(t, State::from_finite(t, psi), when, 64);
    const HermitianMatrix op = truncate(t, 64);
    const CMatrix generator = cplx(0.0, -when) * op.matrix();
    const CVector oracle = generator.exp() * embed(t, State::from_finite(t, psi), 64);
    EXPECT_LE((embed(t, got, 64) - oracle).norm(), 1e-9) << "trial " << trial;
  }
}

TEST(EvolveProperty, UnitarityAtConvergedTruncation) {
  gen::Rng rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial;
    const auto t = attach_tail(gen::connected_graph(rng, n), 0);
    const auto r = evolve(t, State::from_finite(t, gen::unit_vector(rng, n)), 1.5 * trial);
    EXPECT_GE(r.state.norm(), 1.0 - 1e-9);
    EXPECT_LE(r.state.norm(), 1.0 + 1e-9);
  }
}

TEST(EvolveProperty, GroupLawOnFixedTruncation) {
  gen::Rng rng(63);
  const auto t = attach_tail(gen::connected_graph(rng, 8), 3);
  const auto psi = State::from_finite(t, gen::unit_vector(rng, 8));
  const int length = 80;
  const auto a = evolve_truncated(t, evolve_truncated(t, psi, 2.5, length), 1.25, length);
  const auto b = evolve_truncated(t, psi, 3.75, length);
  EXPECT_LE((embed(t, a, length) - embed(t, b, length)).norm(), 1e-9);
}

TEST(Sedentariness, IsolatedVertex) {
  const TailedGraph t(complete(1), {});
  const std::vector<double> times{0.0, 1.0, 10.0};
  const auto r = sedentariness(t, 0, times);
  EXPECT_NEAR(r.min_magnitude, 1.0, 1e-14);
  EXPECT_FALSE(r.analytic_bound.has_value());
}

TEST(Sedentariness, LollipopBound) {
  const auto t = attach_tail(complete(10), 0);
  std::vector<double> times;
  for (int i = 0; i <= 3000; ++i) times.push_back(0.01 * i);
  const auto r = sedentariness(t, 1, times);
  ASSERT_TRUE(r.analytic_bound.has_value());
  EXPECT_NEAR(*r.analytic_bound, 7.0 / 9.0, 1e-15);
  EXPECT_GE(r.min_magnitude, *r.analytic_bound);
  EXPECT_LE(r.min_magnitude, 1.0);
}

TEST(Sedentariness, MulticoneBound) {
  const int m = 4, n = 8;
  std::vector<Tail> tails;
  for (int i = 0; i < m; ++i) tails.push_back({i, 1.0});
  const TailedGraph t(mcone(m, complete(n)), tails);
  std::vector<double> times;
  for (int i = 0; i <= 400; ++i) times.push_back(0.05 * i);
  const auto r = sedentariness(t, m + 2, times);
  ASSERT_TRUE(r.analytic_bound.has_value());
  EXPECT_NEAR(*r.analytic_bound, (n - 2.0) / n, 1e-15);
  EXPECT_GE(r.min_magnitude, *r.analytic_bound);
}

TEST(CliqueConeBound, OnlyForCliqueCones) {
  EXPECT_FALSE(clique_cone_return_bound(attach_tail(path(4), 0), 2).has_value());
  EXPECT_FALSE(clique_cone_return_bound(attach_tail(complete(5), 0), 0).has_value());
  EXPECT_FALSE(clique_cone_return_bound(TailedGraph(complete(5), {}), 1).has_value());
  EXPECT_NEAR(*clique_cone_return_bound(attach_tail(complete(5), 0), 2), 0.5, 1e-15);
}

TEST(DetectPst, KrawtchoukEndpoints) {
  for (int n : {1, 2, 3, 6}) {
    CVector s = CVector::Zero(n + 1), g = CVector::Zero(n + 1);
    s[0] = 1.0;
    g[n] = 1.0;
    const auto certs = detect_pst(krawtchouk_chain(n).hermitian(), s, g, 2 * kPi);
    ASSERT_FALSE(certs.empty()) << "n=" << n;
    EXPECT_NEAR(certs.front().time, kPi / 2, 1e-7);
    EXPECT_GE(certs.front().fidelity, kPstThreshold);
    // pi/2 and 3pi/2 inside [0, 2pi].
    ASSERT_EQ(certs.size(), 2u);
    EXPECT_NEAR(certs[1].time, 3 * kPi / 2, 1e-7);
  }
}

TEST(DetectPst, SingleEdge) {
  CVector s(2), g(2);
  s << 1, 0;
  g << 0, 1;
  const auto certs = detect_pst(path(2).hermitian(), s, g, 2.0);
  ASSERT_EQ(certs.size(), 1u);
  EXPECT_NEAR(certs[0].time, kPi / 2, 1e-7);
  EXPECT_NEAR(certs[0].reproduced_fidelity(), certs[0].fidelity, 1e-9);
}

TEST(DetectPst, OrientedTriangleIsUniversal) {
  const auto eig = hermitian_eig(oriented_clique3().hermitian());
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      CVector s = CVector::Zero(3), g = CVector::Zero(3);
      s[a] = 1.0;
      g[b] = 1.0;
      const auto certs = detect_pst(eig, s, g, 2 * kPi);
      ASSERT_FALSE(certs.empty()) << a << "->" << b;
      const auto& c = certs.front();
      EXPECT_GE(c.fidelity, kPstThreshold);
      EXPECT_NEAR(c.reproduced_fidelity(), c.fidelity, 1e-9);
      EXPECT_LE(c.max_phase_error(), 1e-6);
      // Brute-force scan oracle: the first time |amplitude| reaches 1.
      double first = -1.0;
      for (int i = 1; i < 400000 && first < 0; ++i) {
        const double t = i * 1e-5;
        if (std::abs(g.dot(expm_apply(eig, t, s))) > 1 - 1e-8) first = t;
      }
      EXPECT_NEAR(c.time, first, 1e-4);
    }
  }
}

TEST(DetectPst, SingleEigenvalueSupport) {
  // Uniform state on K3 is an eigenvector: constant profile, one certificate at t = 0.
  const CVector u = CVector::Ones(3) / std::sqrt(3.0);
  const auto certs = detect_pst(complete(3).hermitian(), u, u, 5.0);
  ASSERT_EQ(certs.size(), 1u);
  EXPECT_EQ(certs[0].time, 0.0);
}

TEST(DetectPst, DisjointSupportThrows) {
  // e_0 and e_2 on two disjoint edges never meet.
  const Graph g = disjoint_union(path(2), path(2));
  CVector s = CVector::Zero(4), t = CVector::Zero(4);
  s[0] = 1.0;
  t[2] = 1.0;
  EXPECT_THROW(detect_pst(g.hermitian(), s, t, 5.0), NoTransferPossible);
}

TEST(DetectPst, ValidatesArguments) {
  CVector s(2), g(2);
  s << 1, 0;
  g << 0, 1;
  EXPECT_THROW(detect_pst(path(2).hermitian(), s, g, -1.0), ValidationError);
  EXPECT_THROW(detect_pst(path(2).hermitian(), 2.0 * s, g, 1.0), ValidationError);
  EXPECT_THROW(detect_pst(path(3).hermitian(), s, g, 1.0), ValidationError);
}

TEST(DetectPst, DarkBlockAgreesWithTruncatedTail) {
  // Fly-swatter: search on the dark block, confirm on the full tailed walk.
  const auto t = fly_swatter();
  const auto form = decouple(t);
  const CVector src = pair(9, 1, 3), tgt = pair(9, 5, 7);
  const CVector s = form.dark_basis.adjoint() * src, g = form.dark_basis.adjoint() * tgt;
  ASSERT_NEAR(s.norm(), 1.0, 1e-12);
  const auto certs = detect_pst(HermitianMatrix(form.dark_block), s, g, 3.0);
  ASSERT_FALSE(certs.empty());
  EXPECT_NEAR(certs.front().time, kPi / std::sqrt(2.0), 1e-7);
  const double full =
      fidelity(t, State::from_finite(t, src), State::from_finite(t, tgt), certs.front().time);
  EXPECT_NEAR(full, certs.front().fidelity, 5 * kDefaultTolerance);
}

TEST(CertifyTransfer, SupportReproducesAmplitude) {
  gen::Rng rng(64);
  const HermitianMatrix m(gen::hermitian(rng, 10));
  const auto eig = hermitian_eig(m);
  const CVector s = gen::unit_vector(rng, 10), g = gen::unit_vector(rng, 10);
  const auto c = certify_transfer(eig, s, g, 1.3);
  EXPECT_NEAR(c.reproduced_fidelity(), c.fidelity, 1e-9);
  EXPECT_NEAR(std::abs(c.amplitude - g.dot(expm_apply(eig, 1.3, s))), 0.0, 1e-12);
  EXPECT_EQ(c.eigen_support.size(), 10u);
}
