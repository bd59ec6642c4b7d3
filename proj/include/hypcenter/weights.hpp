#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypcenter/geometry.hpp"

namespace hypcenter {

enum class Monotonicity { StrictlyIncreasing, Increasing, None };

const char* to_string(Monotonicity m) noexcept;

struct IdentityProfile {};

/// g = s^(p-1), the weight of the L^p Riemannian energy (p > 1).
struct ArctanhPowerProfile {
  double p = 2.0;
};

/// One affine-in-s piece g = slope * s + intercept, valid up to `upto_s`.
struct ArctanhPiece {
  double upto_s;  // +inf for the last piece
  double slope;
  double intercept;
};

struct ClampedArctanhProfile {
  std::vector<ArctanhPiece> pieces;
};

/// g = min(s, 1/s).
struct MinSInvSProfile {};

/// g = min(r, c).
struct ClampedLinearProfile {
  double c = 0.5;
};

/// g = r / log(2/(1-r)).
struct LogDampedProfile {};

/// Monotone piecewise-cubic interpolation through (r_i, g_i) with r_0 = 0 and
/// r_last = 1.
struct TableProfile {
  std::vector<double> r;
  std::vector<double> g;
  std::vector<double> slopes;  // interpolant derivatives at the nodes
};

using Profile =
    std::variant<IdentityProfile, ArctanhPowerProfile, ClampedArctanhProfile,
                 MinSInvSProfile, ClampedLinearProfile, LogDampedProfile,
                 TableProfile>;

/// A radial weight g(r) with g(0) = 0, times a positive scale factor.
///
/// Everything that the energy needs is also available in terms of the
/// hyperbolic radius s = arctanh r: g~(s) = g(tanh s) and
/// G~(s) = G(tanh s) = int_0^s g~. Values are immutable after construction,
/// so copies can be shared freely between threads.
class RadialWeight {
 public:
  static RadialWeight identity();
  static RadialWeight arctanh_power(double p);
  static RadialWeight clamped_arctanh(std::vector<ArctanhPiece> pieces);
  static RadialWeight min_s_inv_s();
  static RadialWeight clamped_linear(double c);
  static RadialWeight log_damped();
  static RadialWeight table(std::vector<double> r, std::vector<double> g,
                            Monotonicity declared, bool divergent_G);

  /// The piecewise weight s / 2s-1 / 3 with breaks at s = 1 and s = 2.
  static RadialWeight signed_ball_example();

  RadialWeight scaled(double factor) const;

  double g_of_r(double r) const;  // 0 <= r < 1
  double g_of_s(double s) const;  // s in [0, inf]; s = inf gives g(1)
  double G_of_s(double s) const;  // s in [0, inf)

  Monotonicity monotonicity() const noexcept { return monotonicity_; }
  std::optional<double> g1() const noexcept { return g1_; }
  bool divergent_G() const noexcept { return divergent_G_; }
  /// g(r) > 0 on the sample grid of (0,1).
  bool positive_on_open_interval() const noexcept { return positive_; }
  double scale() const noexcept { return scale_; }
  const Profile& profile() const noexcept { return profile_; }
  std::string kind() const;

 private:
  struct Cumulative;

  RadialWeight() = default;
  void finish(Monotonicity declared, bool divergent_G);

  double raw_g_of_r(double r) const;
  double raw_g_of_s(double s) const;
  double raw_G_of_s(double s) const;
  double quadrature_G(double s) const;

  Profile profile_;
  double scale_ = 1.0;
  Monotonicity monotonicity_ = Monotonicity::None;
  std::optional<double> g1_;
  bool divergent_G_ = false;
  bool positive_ = false;
  std::shared_ptr<const Cumulative> cumulative_;
};

double eval_g(const RadialWeight& w, double r);
Vec eval_v(const RadialWeight& w, const BallPoint& y);
double eval_G(const RadialWeight& w, double r);
RadialWeight normalized_for_boundary(const RadialWeight& w);

}  // namespace hypcenter
