#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "detail/sampling.hpp"
#include "hypcenter/error.hpp"
#include "hypcenter/solver.hpp"

using namespace hypcenter;

namespace {

AtomicMeasure line(std::initializer_list<std::pair<double, double>> atoms) {
  AtomicMeasure mu(1);
  for (auto [x, w] : atoms) mu.add(Vec::Constant(1, x), w);
  return mu;
}

AtomicMeasure sphere3() {
  AtomicMeasure mu(2);
  for (int k = 0; k < 3; ++k) {
    const double th = 2 * k * std::numbers::pi / 3;
    mu.add((Vec(2) << std::cos(th), std::sin(th)).finished(), 1.0);
  }
  return mu;
}

SolveOptions with(Strategy s) {
  SolveOptions o;
  o.strategy = s;
  return o;
}

}  // namespace

TEST(Classify, Classes) {
  EXPECT_EQ(classify_hypotheses(EnergyContext(RadialWeight::identity(), sphere3())),
            HypothesisClass::Thm2_i);
  EXPECT_EQ(classify_hypotheses(
                EnergyContext(RadialWeight::clamped_linear(0.5), line({{-0.8, 1}, {0.8, 1}}))),
            HypothesisClass::NoGuarantee);
  const double a = std::tanh(1.0);
  EXPECT_EQ(classify_hypotheses(EnergyContext(RadialWeight::signed_ball_example(),
                                              line({{-a, -1}, {0, 3}, {a, -1}}))),
            HypothesisClass::SignedExistenceOnly);
  EXPECT_EQ(classify_hypotheses(
                EnergyContext(RadialWeight::arctanh_power(2.0), line({{0.3, 1}, {-0.5, 2}}))),
            HypothesisClass::Thm1_i);
  // increasing but not strict, off any geodesic
  AtomicMeasure tri(2);
  tri.add((Vec(2) << 0.5, 0.0).finished(), 1);
  tri.add((Vec(2) << -0.3, 0.4).finished(), 1);
  tri.add((Vec(2) << -0.2, -0.5).finished(), 1);
  EXPECT_EQ(classify_hypotheses(EnergyContext(RadialWeight::clamped_linear(0.5), tri)),
            HypothesisClass::Thm1_ii);
  AtomicMeasure trib = tri;
  trib.add((Vec(2) << 0.0, 1.0).finished(), 0.5);
  EXPECT_EQ(classify_hypotheses(EnergyContext(RadialWeight::clamped_linear(0.5), trib)),
            HypothesisClass::Thm2_ii);
}

TEST(Solve, SingleInteriorAtom) {
  const Vec y0 = (Vec(3) << 0.5, -0.2, 0.3).finished();
  AtomicMeasure mu(3);
  mu.add(y0, 2.0);
  for (const RadialWeight& w : {RadialWeight::identity(), RadialWeight::arctanh_power(2.0),
                                RadialWeight::arctanh_power(3.0)}) {
    for (Strategy s : {Strategy::GeodesicDescent, Strategy::NewtonAccelerated}) {
      const SolveResult r = solve_center(EnergyContext(w, mu), with(s));
      EXPECT_TRUE(r.converged);
      EXPECT_LT((r.x_c.coords() + y0).norm(), 1e-9) << w.kind();
      EXPECT_EQ(r.uniqueness, Uniqueness::Guaranteed);
    }
  }
}

TEST(Solve, SymmetricSphereMeasure) {
  for (Strategy s : {Strategy::GeodesicDescent, Strategy::NewtonAccelerated}) {
    SolveOptions o = with(s);
    o.initial = BallPoint::from_coords({0.4, -0.6});
    const SolveResult r = solve_center(EnergyContext(RadialWeight::identity(), sphere3()), o);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.x_c.norm(), 1e-9);
    EXPECT_EQ(r.hypothesis_class, HypothesisClass::Thm2_i);
  }
}

TEST(Solve, EnergyDecreasesAlongTrace) {
  detail::Rng rng(31);
  AtomicMeasure mu(2);
  for (int i = 0; i < 12; ++i) mu.add(rng.unit_vector(2), rng.uniform(0.2, 1.0));
  for (Strategy s : {Strategy::GeodesicDescent, Strategy::NewtonAccelerated}) {
    SolveOptions o = with(s);
    o.initial = BallPoint::from_coords({0.85, 0.1});
    const SolveResult r = solve_center(EnergyContext(RadialWeight::identity(), mu), o);
    ASSERT_TRUE(r.converged);
    for (size_t i = 1; i < r.trace.size(); ++i)
      EXPECT_LE(r.trace[i].energy, r.trace[i - 1].energy + 1e-13) << i;
  }
}

TEST(Solve, DivergentSignedMeasure) {
  const EnergyContext ctx(RadialWeight::identity(), line({{1.0, 1.0}, {-1.0, -1.0}}));
  for (Strategy s : {Strategy::GeodesicDescent, Strategy::NewtonAccelerated}) {
    try {
      solve_center(ctx, with(s));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DivergentIterates);
    }
    EXPECT_TRUE(solve_single(ctx, with(s)).divergent);
  }
}

TEST(Solve, MaxItersLeavesResultUnconverged) {
  const EnergyContext ctx(RadialWeight::arctanh_power(2.0), line({{0.9, 1.0}}));
  SolveOptions o = with(Strategy::GeodesicDescent);
  o.max_iters = 1;
  o.tol_residual = 1e-15;
  o.initial = BallPoint::from_coords({0.95});
  const SolveResult r = solve_single(ctx, o);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
}

TEST(Multistart, MinSInvSTwoAtomsIsAmbiguous) {
  const double b = std::tanh(2.0);
  const EnergyContext ctx(RadialWeight::min_s_inv_s(), line({{b, 1}, {-b, 1}}));
  const SolveResult r = multistart_probe(ctx, SolveOptions{}, 12);
  EXPECT_EQ(r.uniqueness, Uniqueness::Ambiguous);
  bool origin = false, between = false;
  for (const auto& c : r.clusters) {
    const double x = c.representative[0];
    origin = origin || std::abs(x) < 1e-10;
    between = between || (x > std::tanh(1.0) && x < std::tanh(2.0));
  }
  EXPECT_TRUE(origin);
  EXPECT_TRUE(between);
}

TEST(Multistart, SignedBallIsAmbiguous) {
  const double a = std::tanh(1.0);
  const EnergyContext ctx(RadialWeight::signed_ball_example(), line({{-a, -1}, {0, 3}, {a, -1}}));
  EXPECT_EQ(multistart_probe(ctx, SolveOptions{}, 12).uniqueness, Uniqueness::Ambiguous);
}

TEST(Multistart, SphereMeasureAgrees) {
  detail::Rng rng(32);
  AtomicMeasure mu(3);
  for (int i = 0; i < 15; ++i) mu.add(rng.unit_vector(3), rng.uniform(0.5, 1.0));
  const SolveResult r = multistart_probe(EnergyContext(RadialWeight::identity(), mu),
                                         SolveOptions{}, 20);
  EXPECT_EQ(r.uniqueness, Uniqueness::MultistartAgree);
  EXPECT_EQ(r.starts_converged, 20);
  EXPECT_LT(r.spread, 1e-8);
}

TEST(Continuity, ShrinkingPerturbation) {
  AtomicMeasure base(2);
  base.add((Vec(2) << 0.4, 0.1).finished(), 1.0);
  base.add((Vec(2) << -0.3, 0.5).finished(), 1.5);
  base.add((Vec(2) << -0.1, -0.6).finished(), 0.8);
  const EnergyContext ctx(RadialWeight::arctanh_power(2.0), base);
  std::vector<Perturbation> ps;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    AtomicMeasure m = base;
    m.add((Vec(2) << 0.7, -0.2).finished(), eps);
    ps.push_back({eps, m});
  }
  const auto samples = continuity_probe(ctx, ps, SolveOptions{});
  ASSERT_EQ(samples.size(), 3u);
  for (size_t i = 0; i < samples.size(); ++i) {
    EXPECT_TRUE(samples[i].converged);
    if (i) { EXPECT_LT(samples[i].displacement, samples[i - 1].displacement); }
  }
  EXPECT_LT(samples.back().displacement, 1e-4);
}

TEST(Continuity, EscapingMassDoesNotConverge) {
  // the center of (1-1/k) delta_0 + (1/k) delta_{tanh k^2} sits at -tanh k
  const RadialWeight w = RadialWeight::arctanh_power(2.0);
  const EnergyContext ctx(w, line({{0.0, 1.0}}));
  std::vector<Perturbation> ps;
  for (int k : {2, 3, 4}) {
    const double kk = k;
    AtomicMeasure mu = line({{0.0, 1.0 - 1.0 / kk}});
    mu.add(BallPoint::from_hyperbolic(kk * kk, Vec::Ones(1)), 1.0 / kk);
    ps.push_back({1.0 / kk, std::move(mu)});
  }
  const auto samples = continuity_probe(ctx, ps, SolveOptions{});
  for (size_t i = 0; i < samples.size(); ++i) {
    EXPECT_NEAR(samples[i].displacement, static_cast<double>(i + 2), 1e-8);
    if (i) { EXPECT_GT(samples[i].displacement, samples[i - 1].displacement); }
  }
}

TEST(Invariance, ScalingWeightKeepsCenter) {
  detail::Rng rng(33);
  AtomicMeasure mu(2);
  for (int i = 0; i < 8; ++i) mu.add(rng.in_ball(2, 0.9), rng.uniform(0.2, 1.0));
  const RadialWeight w = RadialWeight::arctanh_power(2.0);
  const SolveResult a = solve_center(EnergyContext(w, mu), SolveOptions{});
  const SolveResult b = solve_center(EnergyContext(w.scaled(5.0), mu), SolveOptions{});
  EXPECT_LT(hyp_distance(a.x_c, b.x_c), 1e-10);
}

TEST(AutoInitial, ClippedMean) {
  AtomicMeasure mu(2);
  mu.add((Vec(2) << 1.0, 0.0).finished(), 1.0);
  const BallPoint x0 = auto_initial(EnergyContext(RadialWeight::identity(), mu));
  EXPECT_NEAR(x0.norm(), 0.9, 1e-15);
}
