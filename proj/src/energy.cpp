#include "hypcenter/energy.hpp"

#include <cmath>

#include "detail/summation.hpp"
#include "hypcenter/error.hpp"
#include "hypcenter/tolerances.hpp"

namespace hypcenter {

EnergyContext::EnergyContext(const RadialWeight& weight, AtomicMeasure measure)
    : weight_(weight), measure_(std::move(measure)), report_(validate(measure_)) {
  if (report_.support != SupportKind::CompactInterior) {
    weight_ = normalized_for_boundary(weight);
    normalized_ = true;
  }
}

double EnergyContext::mass() const noexcept {
  return report_.total > 0.0 ? report_.total : report_.abs_total;
}

namespace {

void require_interior_x(const BallPoint& x) {
  if (x.is_boundary())
    throw Error(ErrorCode::DomainError, "energy evaluation point must be interior");
}

}  // namespace

double kernel_K(const RadialWeight& w, const BallPoint& x, const BallPoint& y) {
  require_interior_x(x);
  if (x.dim() != y.dim())
    throw Error(ErrorCode::DimensionMismatch, "kernel arguments differ in dimension");
  if (y.is_boundary()) {
    if (!w.g1()) throw Error(ErrorCode::UndefinedAtOne, "g(1) is undefined for this weight");
    const double s2 = (x.coords() + y.coords()).squaredNorm();
    if (!(std::sqrt(s2) >= tol::busemann_singularity))
      throw Error(ErrorCode::BusemannSingularity,
                  "x coincides with the antipode of the boundary atom");
    return *w.g1() * 0.5 * (std::log(s2) - std::log(x.gap()));
  }
  const BallPoint t = mobius(x, y);
  return w.G_of_s(t.hyperbolic_radius()) - w.G_of_s(y.hyperbolic_radius());
}

double kernel_K(const EnergyContext& ctx, const BallPoint& x, const BallPoint& y) {
  return kernel_K(ctx.weight(), x, y);
}

Vec field_sum(const RadialWeight& w, const std::vector<Atom>& atoms, const BallPoint& x) {
  require_interior_x(x);
  detail::CompensatedVecSum acc(x.dim());
  for (const auto& a : atoms) acc.add(a.weight * eval_v(w, mobius(x, a.location)));
  return acc.value();
}

double energy_sum(const RadialWeight& w, const std::vector<Atom>& atoms,
                  const BallPoint& x) {
  require_interior_x(x);
  detail::CompensatedSum acc;
  for (const auto& a : atoms) acc.add(a.weight * kernel_K(w, x, a.location));
  return acc.value();
}

Vec field_V(const EnergyContext& ctx, const BallPoint& x) {
  if (x.dim() != ctx.dim())
    throw Error(ErrorCode::DimensionMismatch, "evaluation point has the wrong dimension");
  return field_sum(ctx.weight(), ctx.measure().atoms(), x);
}

double renormalized_energy(const EnergyContext& ctx, const BallPoint& x) {
  if (x.dim() != ctx.dim())
    throw Error(ErrorCode::DimensionMismatch, "evaluation point has the wrong dimension");
  return energy_sum(ctx.weight(), ctx.measure().atoms(), x);
}

Vec energy_gradient(const EnergyContext& ctx, const BallPoint& x) {
  return field_V(ctx, x) / x.gap();
}

}  // namespace hypcenter
