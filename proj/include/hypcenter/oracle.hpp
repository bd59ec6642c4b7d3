#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypcenter/energy.hpp"

// Brute-force checks that share nothing with the energy and solver modules
// beyond the geometry and weight primitives.
namespace hypcenter::oracle {

enum class ScanKind {
  GradientCheck,
  ConvexityScan,
  CocycleCheck,
  ContinuityCheck,
  ZeroSet1D,
  ZeroSet2D,
  DistanceConvexity,
};

const char* to_string(ScanKind k) noexcept;

struct ScanReport {
  ScanKind kind = ScanKind::GradientCheck;
  double worst_case = 0.0;
  int samples = 0;
  bool pass = false;
  bool strict = false;  // convexity scans: every second difference > 1e-8
  std::vector<std::string> details;
  std::vector<std::pair<std::string, double>> metrics;
  std::uint64_t seed = 0;
};

// Independent evaluation of V and of the renormalized energy, atom by atom.
Vec field(const RadialWeight& w, const AtomicMeasure& mu, const Vec& x);
double energy(const RadialWeight& w, const AtomicMeasure& mu, const Vec& x);

enum class ZeroKind { Crossing, Flat };

struct ZeroInterval {
  double lo;
  double hi;
  ZeroKind kind;
};

/// Zeros of V on x = tanh s, s in [-6, 6]: sign changes refined by bisection
/// and runs where |V| < 1e-13.
std::vector<ZeroInterval> brute_force_zeros_1d(const EnergyContext& ctx, int resolution);

/// Zeros of V in the disk from a tanh-warped grid with sign-change flagging.
std::vector<Vec> zeros_2d(const EnergyContext& ctx, int resolution);

ScanReport gradient_check(const EnergyContext& ctx, int samples, std::uint64_t seed);

ScanReport convexity_scan(const EnergyContext& ctx, int geodesics, int steps,
                          std::uint64_t seed);

/// Second differences of K(., y) along geodesics ending at the boundary atom
/// y; these must vanish.
ScanReport kernel_linearity_check(int dim, int geodesics, int steps, std::uint64_t seed);

ScanReport cocycle_check(int dim, int samples, std::uint64_t seed);

/// Interior branch of K at (1-eps) yhat against the boundary branch at yhat.
ScanReport boundary_continuity_check(const RadialWeight& w, const Vec& x, const Vec& yhat);

ScanReport distance_convexity_check(int dim, int samples, std::uint64_t seed);

/// Closed-form second derivative of |x(t)| on the circle of center a e1 and
/// radius b, t Euclidean arclength from the point nearest the origin.
double arc_norm_second_derivative(double a, double b, double t);

}  // namespace hypcenter::oracle
