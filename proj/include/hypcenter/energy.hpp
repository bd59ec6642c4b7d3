#pragma once

#include "hypcenter/geometry.hpp"
#include "hypcenter/measures.hpp"
#include "hypcenter/weights.hpp"

namespace hypcenter {

/// A weight paired with a validated measure. When the measure has atoms on
/// the sphere the stored weight is rescaled to g(1) = 1.
class EnergyContext {
 public:
  EnergyContext(const RadialWeight& weight, AtomicMeasure measure);

  const RadialWeight& weight() const noexcept { return weight_; }
  const AtomicMeasure& measure() const noexcept { return measure_; }
  const ValidationReport& report() const noexcept { return report_; }
  int dim() const noexcept { return measure_.dim(); }
  bool boundary_normalized() const noexcept { return normalized_; }

  /// The mass used to make residuals dimensionless: the total when it is
  /// positive, otherwise the total variation.
  double mass() const noexcept;

 private:
  RadialWeight weight_;
  AtomicMeasure measure_;
  ValidationReport report_;
  bool normalized_ = false;
};

/// Renormalized kernel for a single weight. Boundary y uses the Busemann
/// branch scaled by g(1).
double kernel_K(const RadialWeight& w, const BallPoint& x, const BallPoint& y);
double kernel_K(const EnergyContext& ctx, const BallPoint& x, const BallPoint& y);

Vec field_V(const EnergyContext& ctx, const BallPoint& x);
double renormalized_energy(const EnergyContext& ctx, const BallPoint& x);
Vec energy_gradient(const EnergyContext& ctx, const BallPoint& x);

// Same sums over a bare atom list, with `w` used as given. Pushing the atoms
// forward by T_x turns these into the chart u -> E(T_x u) - E(x).
Vec field_sum(const RadialWeight& w, const std::vector<Atom>& atoms, const BallPoint& x);
double energy_sum(const RadialWeight& w, const std::vector<Atom>& atoms,
                  const BallPoint& x);

}  // namespace hypcenter
