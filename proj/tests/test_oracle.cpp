#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "detail/sampling.hpp"
#include "hypcenter/energy.hpp"
#include "hypcenter/oracle.hpp"
#include "hypcenter/solver.hpp"

using namespace hypcenter;

namespace {

AtomicMeasure line(std::initializer_list<std::pair<double, double>> atoms) {
  AtomicMeasure mu(1);
  for (auto [x, w] : atoms) mu.add(Vec::Constant(1, x), w);
  return mu;
}

AtomicMeasure random_measure(detail::Rng& rng, int dim, int interior, int boundary) {
  AtomicMeasure mu(dim);
  for (int i = 0; i < interior; ++i) mu.add(rng.in_ball(dim, 0.9), rng.uniform(0.2, 1.0));
  for (int i = 0; i < boundary; ++i) mu.add(rng.unit_vector(dim), rng.uniform(0.2, 1.0));
  return mu;
}

bool inside_a_bracket(const std::vector<oracle::ZeroInterval>& zs, double x) {
  for (const auto& z : zs)
    if (x >= z.lo - 1e-10 && x <= z.hi + 1e-10) return true;
  return false;
}

}  // namespace

TEST(IndependentEvaluation, AgreesWithLibrary) {
  detail::Rng rng(41);
  for (int kind = 0; kind < 3; ++kind) {
    const AtomicMeasure mu = random_measure(rng, 3, kind == 1 ? 0 : 6, kind == 0 ? 0 : 5);
    const EnergyContext ctx(RadialWeight::identity(), mu);
    for (int k = 0; k < 50; ++k) {
      const Vec x = rng.in_ball(3, 0.9);
      const BallPoint xp = BallPoint::from_coords(x);
      EXPECT_LT((oracle::field(ctx.weight(), mu, x) - field_V(ctx, xp)).norm(), 1e-12);
      EXPECT_NEAR(oracle::energy(ctx.weight(), mu, x), renormalized_energy(ctx, xp), 1e-12);
    }
  }
}

TEST(Zeros1D, ClampedLinearHasAnInterval) {
  const EnergyContext ctx(RadialWeight::clamped_linear(0.5), line({{-0.8, 1}, {0.8, 1}}));
  const auto zs = oracle::brute_force_zeros_1d(ctx, 2000);
  // both atoms clamped while |T_x(0.8)| >= 1/2, i.e. |x| <= 1/2
  ASSERT_EQ(zs.size(), 1u);
  EXPECT_EQ(zs[0].kind, oracle::ZeroKind::Flat);
  EXPECT_NEAR(zs[0].lo, -0.5, 1e-11);
  EXPECT_NEAR(zs[0].hi, 0.5, 1e-11);
}

TEST(Zeros1D, MinSInvSZeros) {
  const double b = std::tanh(2.0);
  const EnergyContext ctx(RadialWeight::min_s_inv_s(), line({{b, 1}, {-b, 1}}));
  const auto zs = oracle::brute_force_zeros_1d(ctx, 2000);
  ASSERT_EQ(zs.size(), 3u);
  EXPECT_LT(std::abs(zs[1].lo), 1e-10);
  EXPECT_LT(std::abs(zs[1].hi), 1e-10);
  EXPECT_GT(zs[2].lo, std::tanh(1.0));
  EXPECT_LT(zs[2].hi, std::tanh(2.0));
  EXPECT_NEAR(zs[0].lo, -zs[2].hi, 1e-10);
}

TEST(Zeros1D, SingleAtom) {
  const EnergyContext ctx(RadialWeight::identity(), line({{std::tanh(1.0), 1}}));
  const auto zs = oracle::brute_force_zeros_1d(ctx, 2000);
  ASSERT_EQ(zs.size(), 1u);
  EXPECT_NEAR(zs[0].lo, -std::tanh(1.0), 1e-11);
}

TEST(Zeros1D, SolverLandsInABracket) {
  const double b = std::tanh(2.0), a = std::tanh(1.0);
  const std::vector<EnergyContext> ctxs = {
      EnergyContext(RadialWeight::identity(), line({{0.3, 1}, {-0.7, 2}, {0.9, 0.5}})),
      EnergyContext(RadialWeight::min_s_inv_s(), line({{b, 1}, {-b, 1}})),
      EnergyContext(RadialWeight::clamped_linear(0.5), line({{-0.8, 1}, {0.8, 1}})),
      EnergyContext(RadialWeight::signed_ball_example(), line({{-a, -1}, {0, 3}, {a, -1}}))};
  for (const auto& ctx : ctxs) {
    const auto zs = oracle::brute_force_zeros_1d(ctx, 2000);
    const SolveResult r = solve_center(ctx, SolveOptions{});
    EXPECT_TRUE(inside_a_bracket(zs, r.x_c[0])) << r.x_c[0];
    for (const auto& c : r.clusters) EXPECT_TRUE(inside_a_bracket(zs, c.representative[0]));
  }
}

TEST(Zeros2D, SignedCircleRealAxisZeros) {
  AtomicMeasure mu(2);
  const double pi = std::numbers::pi;
  for (double th : {0.0, 2 * pi / 3, -2 * pi / 3})
    mu.add((Vec(2) << std::cos(th), std::sin(th)).finished(), 1.0);
  for (double th : {pi / 3, -pi / 3})
    mu.add((Vec(2) << std::cos(th), std::sin(th)).finished(), -1.0);
  const EnergyContext ctx(RadialWeight::identity(), mu);
  const auto zs = oracle::zeros_2d(ctx, 200);
  int on_axis = 0;
  for (const auto& z : zs) {
    EXPECT_LT(field_V(ctx, BallPoint::from_coords(z)).norm(), 1e-10);
    if (std::abs(z[1]) < 1e-9) ++on_axis;
  }
  EXPECT_GE(on_axis, 2);
}

TEST(GradientCheck, AllMeasureKinds) {
  detail::Rng rng(42);
  const std::vector<std::pair<int, int>> kinds = {{8, 0}, {0, 8}, {5, 5}};
  for (auto [interior, boundary] : kinds) {
    const EnergyContext ctx(RadialWeight::identity(),
                            random_measure(rng, 2, interior, boundary));
    const auto rep = oracle::gradient_check(ctx, 300, 7);
    EXPECT_TRUE(rep.pass) << interior << "/" << boundary << " worst " << rep.worst_case;
    EXPECT_EQ(rep.samples, 300);
  }
}

TEST(ConvexityScan, StrictForStrictClasses) {
  detail::Rng rng(43);
  const EnergyContext interior(RadialWeight::arctanh_power(2.0), random_measure(rng, 2, 6, 0));
  const EnergyContext sphere(RadialWeight::identity(), random_measure(rng, 3, 0, 6));
  for (const auto* ctx : {&interior, &sphere}) {
    const auto rep = oracle::convexity_scan(*ctx, 40, 30, 3);
    EXPECT_TRUE(rep.pass);
    EXPECT_TRUE(rep.strict);
  }
}

TEST(ConvexityScan, NonStrictWeightIsNotStrict) {
  const EnergyContext ctx(RadialWeight::clamped_linear(0.5), line({{-0.8, 1}, {0.8, 1}}));
  const auto rep = oracle::convexity_scan(ctx, 10, 40, 1);
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(rep.strict);
}

TEST(KernelLinearity, GeodesicsEndingAtTheAtom) {
  for (int dim : {2, 3}) {
    const auto rep = oracle::kernel_linearity_check(dim, 30, 20, 5);
    EXPECT_TRUE(rep.pass) << rep.worst_case;
  }
}

TEST(Cocycle, RandomTriples) {
  for (int dim : {2, 3}) {
    const auto rep = oracle::cocycle_check(dim, 1000, 9);
    EXPECT_TRUE(rep.pass) << rep.worst_case;
    EXPECT_LT(rep.worst_case, 1e-11);
  }
}

TEST(BoundaryContinuity, Limits) {
  const RadialWeight id = RadialWeight::identity();
  const Vec x = (Vec(2) << 0.5, 0.0).finished();
  const Vec e1 = Vec::Unit(2, 0);
  const auto plus = oracle::boundary_continuity_check(id, x, e1);
  EXPECT_TRUE(plus.pass);
  const auto minus = oracle::boundary_continuity_check(id, x, -e1);
  EXPECT_TRUE(minus.pass);
  double v_plus = 0, v_minus = 0;
  for (const auto& [k, v] : plus.metrics)
    if (k == "boundary_value") v_plus = v;
  for (const auto& [k, v] : minus.metrics)
    if (k == "boundary_value") v_minus = v;
  EXPECT_NEAR(v_plus, 0.5 * std::log(3.0), 1e-15);
  EXPECT_NEAR(v_minus, 0.5 * std::log(0.25 / 0.75), 1e-15);
  const auto origin = oracle::boundary_continuity_check(id, Vec::Zero(2), e1);
  EXPECT_TRUE(origin.pass);
  EXPECT_LT(origin.worst_case, 1e-12);
}

TEST(DistanceConvexity, Suites) {
  for (int dim : {2, 3}) {
    const auto rep = oracle::distance_convexity_check(dim, 100, 4);
    EXPECT_TRUE(rep.pass);
  }
}

TEST(DistanceConvexity, ArcClosedForm) {
  // positive on the part of the arc inside the ball, |t| < pi/4
  for (double t = -0.75; t <= 0.75; t += 0.05)
    EXPECT_GT(oracle::arc_norm_second_derivative(std::sqrt(2.0), 1.0, t), 0.0);
}

TEST(Reports, DeterministicGivenSeed) {
  detail::Rng rng(44);
  const EnergyContext ctx(RadialWeight::identity(), random_measure(rng, 2, 4, 4));
  const auto a = oracle::gradient_check(ctx, 100, 17);
  const auto b = oracle::gradient_check(ctx, 100, 17);
  EXPECT_EQ(a.worst_case, b.worst_case);
  EXPECT_EQ(a.seed, 17u);
}
