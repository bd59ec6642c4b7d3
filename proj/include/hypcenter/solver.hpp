#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypcenter/energy.hpp"

namespace hypcenter {

enum class Strategy { GeodesicDescent, NewtonAccelerated };

enum class HypothesisClass {
  Thm1_i,               // interior support, g strictly increasing
  Thm1_ii,              // interior support, g increasing and positive, not on a geodesic
  Thm2_i,               // boundary atoms, g strictly increasing, g(1) > 0
  Thm2_ii,              // boundary atoms, g increasing, not in a geodesic closure
  SignedExistenceOnly,  // signed, positive total, point-mass condition
  NoGuarantee,
};

enum class Uniqueness {
  Guaranteed,       // implied by the hypothesis class
  MultistartAgree,  // all converged starts landed in one cluster
  Ambiguous,        // several distinct zeros found
  Unverified,       // no guarantee and too few converged starts to compare
};

const char* to_string(Strategy s) noexcept;
const char* to_string(HypothesisClass c) noexcept;
const char* to_string(Uniqueness u) noexcept;

bool guarantees_uniqueness(HypothesisClass c) noexcept;

struct SolveOptions {
  double tol_residual = 1e-10;  // on |V| / mass
  int max_iters = 500;
  std::optional<BallPoint> initial;  // empty means Auto
  Strategy strategy = Strategy::NewtonAccelerated;
  int multistart = 1;
  std::uint64_t seed = 0;
};

struct TraceEntry {
  double energy;
  double residual;
  double step;  // hyperbolic length of the accepted step
  bool newton;
};

struct Cluster {
  BallPoint representative;
  int members;
  double energy;
};

struct SolveResult {
  BallPoint x_c;
  double residual = 0.0;
  int iterations = 0;
  double energy_at_min = 0.0;
  bool converged = false;
  bool divergent = false;
  Uniqueness uniqueness = Uniqueness::Unverified;
  HypothesisClass hypothesis_class = HypothesisClass::NoGuarantee;
  std::vector<TraceEntry> trace;

  // Filled by the multistart probe.
  std::vector<Cluster> clusters;
  int starts = 0;
  int starts_converged = 0;
  double spread = 0.0;  // largest hyperbolic distance between converged endpoints
};

HypothesisClass classify_hypotheses(const EnergyContext& ctx);

/// Auto starting point: minus the |w|-weighted Euclidean mean, clipped to
/// radius 0.9.
BallPoint auto_initial(const EnergyContext& ctx);

/// One run from one start. Never throws DivergentIterates; sets `divergent`.
SolveResult solve_single(const EnergyContext& ctx, const SolveOptions& opts);

/// Solves, then probes uniqueness with several starts when the hypothesis
/// class does not settle it. Throws DivergentIterates when the iterates run
/// into the sphere.
SolveResult solve_center(const EnergyContext& ctx, const SolveOptions& opts);

SolveResult multistart_probe(const EnergyContext& ctx, const SolveOptions& opts,
                             int starts);

struct Perturbation {
  double size;
  AtomicMeasure measure;
};

struct ContinuitySample {
  double size;
  double displacement;  // hyperbolic distance to the unperturbed center
  BallPoint x_c;
  bool converged;
};

/// Solves the base context and each perturbed measure with the same weight.
std::vector<ContinuitySample> continuity_probe(const EnergyContext& ctx,
                                               const std::vector<Perturbation>& perturbations,
                                               const SolveOptions& opts);

}  // namespace hypcenter
