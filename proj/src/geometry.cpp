#include "hypcenter/geometry.hpp"

#include <cmath>
#include <string>

#include "hypcenter/error.hpp"
#include "hypcenter/tolerances.hpp"

namespace hypcenter {

namespace {

void require_same_dim(const BallPoint& a, const BallPoint& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
}

void require_interior(const BallPoint& x, const char* who) {
  if (x.is_boundary())
    throw Error(ErrorCode::DomainError,
                std::string(who) + ": point must lie in the open ball");
}

Vec unit_or_throw(const Vec& v, const char* who) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorCode::InvalidArgument,
                std::string(who) + ": direction must be a nonzero finite vector");
  return v / n;
}

// arctanh of a radius r whose complement 1-r^2 is known accurately.
double radius_to_s(double r, double gap) {
  if (r < 0.5) return std::atanh(r);
  return std::log1p(r) - 0.5 * std::log(gap);
}

}  // namespace

BallPoint BallPoint::from_coords(const Vec& coords) {
  if (coords.size() < 1)
    throw Error(ErrorCode::InvalidArgument, "point must have dimension >= 1");
  if (!coords.allFinite())
    throw Error(ErrorCode::DomainError, "point has non-finite coordinates");
  const double r = coords.norm();
  if (r > 1.0 + tol::boundary_snap)
    throw Error(ErrorCode::DomainError,
                "point lies outside the closed unit ball (|y| = " +
                    std::to_string(r) + ")");
  BallPoint p;
  if (std::abs(r - 1.0) <= tol::boundary_snap) {
    p.coords_ = coords / r;
    p.gap_ = 0.0;
    p.locus_ = Locus::Boundary;
  } else {
    p.coords_ = coords;
    p.gap_ = (1.0 - r) * (1.0 + r);
    p.locus_ = Locus::Interior;
  }
  return p;
}

BallPoint BallPoint::from_coords(std::initializer_list<double> coords) {
  Vec v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return from_coords(v);
}

BallPoint BallPoint::from_hyperbolic(double s, const Vec& dir) {
  if (!std::isfinite(s))
    throw Error(ErrorCode::DomainError, "hyperbolic radius must be finite");
  Vec u = unit_or_throw(dir, "from_hyperbolic");
  if (s < 0) {
    s = -s;
    u = -u;
  }
  const double r = std::tanh(s);
  const double c = std::cosh(s);
  BallPoint p;
  p.gap_ = 1.0 / (c * c);
  // exact gap, so only snap once it underflows
  if (!(p.gap_ > 0.0)) {
    p.coords_ = u;
    p.gap_ = 0.0;
    p.locus_ = Locus::Boundary;
    return p;
  }
  p.coords_ = r * u;
  p.locus_ = Locus::Interior;
  return p;
}

BallPoint BallPoint::origin(int dim) {
  if (dim < 1)
    throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  return make_unchecked(Vec::Zero(dim), 1.0, Locus::Interior);
}

BallPoint BallPoint::make_unchecked(Vec coords, double gap, Locus locus) {
  BallPoint p;
  p.coords_ = std::move(coords);
  p.gap_ = gap;
  p.locus_ = locus;
  return p;
}

double BallPoint::hyperbolic_radius() const {
  if (is_boundary()) return INFINITY;
  return radius_to_s(coords_.norm(), gap_);
}

Halfspace Halfspace::make(const Vec& p, double t) {
  if (std::abs(p.norm() - 1.0) > tol::unit_vector)
    throw Error(ErrorCode::InvalidArgument,
                "halfspace normal must be a unit vector");
  if (!(std::abs(t) < 1.0))
    throw Error(ErrorCode::InvalidArgument,
                "halfspace parameter t must satisfy |t| < 1");
  return Halfspace{p.normalized(), t};
}

Geodesic Geodesic::make(const BallPoint& base, const Vec& dir) {
  require_interior(base, "geodesic base");
  if (dir.size() != base.coords().size())
    throw Error(ErrorCode::DimensionMismatch,
                "geodesic direction and base differ in dimension");
  return Geodesic{base, unit_or_throw(dir, "geodesic")};
}

double arclength_s(double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw Error(ErrorCode::DomainError, "arclength_s requires 0 <= r < 1");
  return std::atanh(r);
}

BallPoint mobius(const BallPoint& x, const BallPoint& y) {
  require_same_dim(x, y);
  require_interior(x, "mobius translation parameter");
  if ((x.coords().array() == 0.0).all()) return y;

  const Vec sum = x.coords() + y.coords();
  const double sum2 = sum.squaredNorm();
  const double gx = x.gap();
  const double gy = y.gap();
  // 1 + 2x.y + |x|^2|y|^2 = |x+y|^2 + (1-|x|^2)(1-|y|^2)
  const double denom = sum2 + gx * gy;
  if (!(denom >= tol::pole_denominator))
    throw Error(ErrorCode::PoleSingularity,
                "Möbius denominator vanishes (y = -x/|x| on the sphere)");
  // 1 + 2x.y + |y|^2 = |x+y|^2 + (1-|x|^2)
  Vec out = ((sum2 + gx) * x.coords() + gx * y.coords()) / denom;
  if (y.is_boundary()) {
    out /= out.norm();
    return BallPoint::make_unchecked(std::move(out), 0.0, Locus::Boundary);
  }
  return BallPoint::make_unchecked(std::move(out), gx * gy / denom,
                                   Locus::Interior);
}

BallPoint negate(const BallPoint& x) {
  return BallPoint::make_unchecked(-x.coords(), x.gap(), x.locus());
}

BallPoint mobius_inverse(const BallPoint& x, const BallPoint& y) {
  return mobius(negate(x), y);
}

double hyp_distance(const BallPoint& x, const BallPoint& y) {
  require_same_dim(x, y);
  require_interior(x, "hyp_distance");
  require_interior(y, "hyp_distance");
  const double diff2 = (x.coords() - y.coords()).squaredNorm();
  if (diff2 == 0.0) return 0.0;
  // |T_{-x}(y)|^2 = |x-y|^2 / (|x-y|^2 + gap_x gap_y)
  const double gg = x.gap() * y.gap();
  const double denom = diff2 + gg;
  const double r = std::sqrt(diff2 / denom);
  return radius_to_s(r, gg / denom);
}

Vec inverse_exp(const BallPoint& x, const BallPoint& y) {
  const BallPoint u = mobius_inverse(x, y);
  const double n = u.coords().norm();
  if (n == 0.0) return Vec::Zero(x.dim());
  return hyp_distance(x, y) * u.coords() / n;
}

BallPoint geodesic_point(const Geodesic& g, double t) {
  if (!(std::abs(t) < 1.0))
    throw Error(ErrorCode::DomainError, "geodesic parameter must satisfy |t| < 1");
  const double a = std::abs(t);
  return mobius(g.base, BallPoint::make_unchecked(t * g.dir, (1.0 - a) * (1.0 + a),
                                                  Locus::Interior));
}

BallPoint geodesic_point_at_arclength(const Geodesic& g, double tau) {
  const double c = std::cosh(tau);
  return mobius(g.base, BallPoint::make_unchecked(std::tanh(tau) * g.dir,
                                                  1.0 / (c * c), Locus::Interior));
}

double halfspace_level(const Halfspace& h, const BallPoint& y) {
  const double a = std::abs(h.t);
  const BallPoint center =
      BallPoint::make_unchecked(h.t * h.p, (1.0 - a) * (1.0 + a), Locus::Interior);
  return mobius_inverse(center, y).coords().dot(h.p);
}

bool halfspace_contains(const Halfspace& h, const BallPoint& y) {
  require_interior(y, "halfspace_contains");
  return halfspace_level(h, y) <= 0.0;
}

BallPoint reflect(const Halfspace& h, const BallPoint& y) {
  require_interior(y, "reflect");
  const double a = std::abs(h.t);
  const BallPoint center =
      BallPoint::make_unchecked(h.t * h.p, (1.0 - a) * (1.0 + a), Locus::Interior);
  const BallPoint w = mobius_inverse(center, y);
  Vec r = w.coords() - 2.0 * w.coords().dot(h.p) * h.p;
  return mobius(center, BallPoint::make_unchecked(std::move(r), w.gap(), w.locus()));
}

BallPoint fold(const Halfspace& h, const BallPoint& y) {
  return halfspace_contains(h, y) ? y : reflect(h, y);
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PoleSingularity: return "PoleSingularity";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::UndefinedAtOne: return "UndefinedAtOne";
    case ErrorCode::NotBoundaryCompatible: return "NotBoundaryCompatible";
    case ErrorCode::EmptyMeasure: return "EmptyMeasure";
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::RegionTouchesBoundary: return "RegionTouchesBoundary";
    case ErrorCode::NonpositiveMass: return "NonpositiveMass";
    case ErrorCode::BusemannSingularity: return "BusemannSingularity";
    case ErrorCode::DivergentIterates: return "DivergentIterates";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
  }
  return "Unknown";
}

}  // namespace hypcenter
