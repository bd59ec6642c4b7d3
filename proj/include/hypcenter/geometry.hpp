#pragma once

#include <Eigen/Core>

namespace hypcenter {

using Vec = Eigen::VectorXd;

enum class Locus { Interior, Boundary };

/// A point of the closed unit ball.
///
/// Besides the Euclidean coordinates the point carries `gap() = 1 - |y|^2`,
/// computed without cancellation whenever the point came from a hyperbolic
/// radius or a Möbius image. Hyperbolic radii near the sphere are read off the
/// gap, not off the rounded coordinates. Boundary points have gap 0 and
/// coordinates of exactly unit length.
class BallPoint {
 public:
  BallPoint() = default;

  /// Classifies `coords`; radii within tol::boundary_snap of 1 snap to the
  /// sphere. Throws DomainError for radius > 1 + snap or non-finite input.
  static BallPoint from_coords(const Vec& coords);
  static BallPoint from_coords(std::initializer_list<double> coords);

  /// The interior point at hyperbolic distance `s` from the origin in the
  /// direction `dir` (normalized internally).
  static BallPoint from_hyperbolic(double s, const Vec& dir);

  static BallPoint origin(int dim);

  const Vec& coords() const noexcept { return coords_; }
  double gap() const noexcept { return gap_; }
  Locus locus() const noexcept { return locus_; }
  bool is_boundary() const noexcept { return locus_ == Locus::Boundary; }
  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  double norm() const { return coords_.norm(); }
  double operator[](int i) const { return coords_[i]; }

  /// Hyperbolic distance to the origin, arctanh |y|. Infinite on the sphere.
  double hyperbolic_radius() const;

  // Only for values whose gap is already known accurately.
  static BallPoint make_unchecked(Vec coords, double gap, Locus locus);

 private:
  Vec coords_;
  double gap_ = 1.0;
  Locus locus_ = Locus::Interior;
};

struct Halfspace {
  Vec p;   // unit normal of the base halfball {y . p <= 0}
  double t = 0.0;

  static Halfspace make(const Vec& p, double t);
};

struct Geodesic {
  BallPoint base;  // interior
  Vec dir;         // unit

  static Geodesic make(const BallPoint& base, const Vec& dir);
};

/// s(r) = arctanh r for 0 <= r < 1.
double arclength_s(double r);

/// T_x(y) for |x| < 1, |y| <= 1.
BallPoint mobius(const BallPoint& x, const BallPoint& y);

/// T_{-x}(y).
BallPoint mobius_inverse(const BallPoint& x, const BallPoint& y);

/// -x, keeping the accurate gap.
BallPoint negate(const BallPoint& x);

double hyp_distance(const BallPoint& x, const BallPoint& y);

/// exp_x^{-1}(y) expressed in the T_x chart: d(x,y) T_{-x}(y)/|T_{-x}(y)|.
/// Returns the zero vector when x == y.
Vec inverse_exp(const BallPoint& x, const BallPoint& y);

/// T_base(t dir); hyperbolic arclength from the base is arctanh t.
BallPoint geodesic_point(const Geodesic& g, double t);

/// Point at signed hyperbolic arclength `tau` from the base.
BallPoint geodesic_point_at_arclength(const Geodesic& g, double tau);

/// T_{-pt}(y) . p; non-positive exactly on H(p,t).
double halfspace_level(const Halfspace& h, const BallPoint& y);

bool halfspace_contains(const Halfspace& h, const BallPoint& y);

BallPoint reflect(const Halfspace& h, const BallPoint& y);

BallPoint fold(const Halfspace& h, const BallPoint& y);

}  // namespace hypcenter
