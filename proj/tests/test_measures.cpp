#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "detail/sampling.hpp"
#include "hypcenter/error.hpp"
#include "hypcenter/measures.hpp"

using namespace hypcenter;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

}  // namespace

TEST(Validate, OneDimensionIsAlwaysGeodesic) {
  AtomicMeasure mu(1);
  mu.add(Vec::Constant(1, 0.3), 1.0);
  mu.add(Vec::Constant(1, -0.6), 1.0);
  const auto r = validate(mu);
  EXPECT_EQ(r.geodesic_support, GeodesicSupport::InGeodesic);
  EXPECT_EQ(r.total, 2.0);
  EXPECT_EQ(r.support, SupportKind::CompactInterior);
  EXPECT_NEAR(r.max_radius, 0.6, 1e-16);
}

TEST(Validate, EqualAntipodalBoundaryMassesFailPointMassRule) {
  AtomicMeasure mu(2);
  mu.add(v2(0.6, 0.8), 0.5);
  mu.add(v2(-0.6, -0.8), 0.5);
  const auto r = validate(mu);
  EXPECT_FALSE(r.boundary_pointmass_ok);
  EXPECT_EQ(r.support, SupportKind::SphereOnly);
  EXPECT_EQ(r.geodesic_support, GeodesicSupport::InGeodesicClosure);
}

TEST(Validate, OffGeodesicAtomBreaksGeodesicSupport) {
  AtomicMeasure mu(2);
  mu.add(v2(-0.5, 0.0), 1.0);
  mu.add(v2(0.5, 0.0), 1.0);
  EXPECT_EQ(validate(mu).geodesic_support, GeodesicSupport::InGeodesic);
  mu.add(v2(0.0, 0.1), 1.0);
  EXPECT_EQ(validate(mu).geodesic_support, GeodesicSupport::NotInGeodesic);
}

TEST(Validate, CurvedGeodesicMembership) {
  // three points on the geodesic through (0.3, 0) with direction e2
  const Geodesic g = Geodesic::make(BallPoint::from_coords({0.3, 0.0}), Vec::Unit(2, 1));
  AtomicMeasure mu(2);
  for (double t : {-0.7, 0.2, 0.85}) mu.add(geodesic_point(g, t), 1.0);
  EXPECT_EQ(validate(mu).geodesic_support, GeodesicSupport::InGeodesic);
  const BallPoint off = geodesic_point(g, 0.5);
  mu.add(BallPoint::from_coords(off.coords() + 0.1 * Vec::Unit(2, 0)), 1.0);
  EXPECT_EQ(validate(mu).geodesic_support, GeodesicSupport::NotInGeodesic);
}

TEST(Validate, Errors) {
  EXPECT_EQ(code_of([] { validate(AtomicMeasure(2)); }), ErrorCode::EmptyMeasure);
  AtomicMeasure zero(1);
  zero.add(Vec::Constant(1, 0.1), 0.0);
  EXPECT_EQ(code_of([&] { validate(zero); }), ErrorCode::ZeroTotal);
}

TEST(Validate, SignedMeasure) {
  AtomicMeasure mu(1);
  mu.add(Vec::Constant(1, 1.0), 1.0);
  mu.add(Vec::Constant(1, -1.0), -1.0);
  const auto r = validate(mu);
  EXPECT_TRUE(r.is_signed);
  EXPECT_EQ(r.total, 0.0);
  EXPECT_EQ(r.abs_total, 2.0);
}

TEST(Validate, AggregationInvariance) {
  detail::Rng rng(11);
  AtomicMeasure a(2), b(2), c(2);
  std::vector<std::pair<Vec, double>> atoms;
  for (int i = 0; i < 3; ++i) atoms.push_back({rng.unit_vector(2), 0.3 + 0.1 * i});
  atoms.push_back({rng.in_ball(2, 0.5), 0.2});
  for (const auto& [x, w] : atoms) a.add(x, w);
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) b.add(it->first, it->second);
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i == 0) {
      c.add(atoms[i].first, atoms[i].second / 2);
      c.add(atoms[i].first, atoms[i].second / 2);
    } else {
      c.add(atoms[i].first, atoms[i].second);
    }
  }
  for (const AtomicMeasure* m : {&b, &c}) {
    const auto r = validate(*m), r0 = validate(a);
    EXPECT_NEAR(r.total, r0.total, 1e-15);
    EXPECT_EQ(r.support, r0.support);
    EXPECT_EQ(r.boundary_pointmass_ok, r0.boundary_pointmass_ok);
    EXPECT_EQ(r.geodesic_support, r0.geodesic_support);
  }
}

TEST(Validate, SplitAtomsAggregateForPointMassRule) {
  // two co-located halves carrying 0.6 of the mass still violate the rule
  AtomicMeasure mu(2);
  mu.add(v2(1.0, 0.0), 0.3);
  mu.add(v2(1.0, 0.0), 0.3);
  mu.add(v2(0.0, 1.0), 0.4);
  EXPECT_FALSE(validate(mu).boundary_pointmass_ok);
}

TEST(Pushforward, IdentityAndTotals) {
  detail::Rng rng(12);
  AtomicMeasure mu(3);
  for (int i = 0; i < 10; ++i) mu.add(rng.in_ball(3, 0.9), rng.uniform(-1, 2));
  mu.add(rng.unit_vector(3), 0.7);
  const AtomicMeasure same = pushforward(mu, [](const BallPoint& y) { return y; });
  for (size_t i = 0; i < mu.size(); ++i)
    EXPECT_EQ(same.atoms()[i].location.coords(), mu.atoms()[i].location.coords());
  const BallPoint z = BallPoint::from_coords(rng.in_ball(3, 0.8));
  const AtomicMeasure moved = pushforward(mu, [&](const BallPoint& y) { return mobius(z, y); });
  EXPECT_EQ(moved.total(), mu.total());
  EXPECT_EQ(moved.abs_total(), mu.abs_total());
  EXPECT_TRUE(moved.atoms().back().location.is_boundary());
}

TEST(Pushforward, FoldLandsInHalfspace) {
  const Halfspace h = Halfspace::make(Vec::Unit(2, 0), 0.2);
  AtomicMeasure mu(2);
  for (double a : {-0.7, -0.2, 0.3, 0.5, 0.8}) mu.add(v2(a, 0.1), 1.0);
  const AtomicMeasure f = pushforward(mu, [&](const BallPoint& y) { return fold(h, y); });
  for (const auto& a : f.atoms()) EXPECT_LE(halfspace_level(h, a.location), 1e-14);
}

TEST(Quantize, HyperbolicVolumeOfCenteredBall) {
  // hyperbolic area of the Euclidean disc of radius R: pi R^2 / (1 - R^2)
  const double R = 0.6;
  const double exact = std::numbers::pi * R * R / (1 - R * R);
  double prev_err = INFINITY;
  for (int count : {1000, 16000}) {
    const AtomicMeasure mu = quantize_density([](const Vec&) { return 1.0; },
                                              BallRegion{Vec::Zero(2), R}, 2, count, 3);
    const double err = std::abs(mu.total() - exact) / exact;
    EXPECT_LT(err, 0.02) << count;
    EXPECT_LT(err, prev_err);
    prev_err = err;
  }
}

TEST(Quantize, SingleSampleAndGeodesicSupport) {
  const AtomicMeasure one =
      quantize_density([](const Vec&) { return 1.0; }, BallRegion{Vec::Zero(2), 0.5}, 2, 1);
  EXPECT_EQ(one.size(), 1u);
  const AtomicMeasure many =
      quantize_density([](const Vec&) { return 1.0; }, BoxRegion{v2(-0.3, -0.2), v2(0.4, 0.3)},
                       2, 50);
  EXPECT_EQ(validate(many).geodesic_support, GeodesicSupport::NotInGeodesic);
}

TEST(Quantize, Deterministic) {
  auto f = [](const Vec& y) { return 1.0 + y[0]; };
  const AtomicMeasure a = quantize_density(f, BallRegion{v2(0.1, 0.0), 0.4}, 2, 100, 9);
  const AtomicMeasure b = quantize_density(f, BallRegion{v2(0.1, 0.0), 0.4}, 2, 100, 9);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.atoms()[i].location.coords(), b.atoms()[i].location.coords());
    EXPECT_EQ(a.atoms()[i].weight, b.atoms()[i].weight);
  }
}

TEST(Quantize, Errors) {
  auto one = [](const Vec&) { return 1.0; };
  EXPECT_EQ(code_of([&] { quantize_density(one, BallRegion{Vec::Zero(2), 1.0}, 2, 10); }),
            ErrorCode::RegionTouchesBoundary);
  EXPECT_EQ(code_of([&] {
              quantize_density([](const Vec&) { return 0.0; }, BallRegion{Vec::Zero(2), 0.5}, 2,
                               10);
            }),
            ErrorCode::NonpositiveMass);
}
