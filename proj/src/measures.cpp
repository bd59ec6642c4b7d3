#include "hypcenter/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detail/sampling.hpp"
#include "detail/summation.hpp"
#include "hypcenter/error.hpp"
#include "hypcenter/tolerances.hpp"

namespace hypcenter {

AtomicMeasure::AtomicMeasure(int dim) : dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
}

AtomicMeasure::AtomicMeasure(int dim, std::vector<Atom> atoms) : AtomicMeasure(dim) {
  for (auto& a : atoms) add(a.location, a.weight);
}

void AtomicMeasure::add(const BallPoint& location, double weight) {
  if (location.dim() != dim_)
    throw Error(ErrorCode::DimensionMismatch,
                "atom of dimension " + std::to_string(location.dim()) +
                    " added to a measure of dimension " + std::to_string(dim_));
  if (!std::isfinite(weight))
    throw Error(ErrorCode::InvalidArgument, "atom weight must be finite");
  atoms_.push_back({location, weight});
}

void AtomicMeasure::add(const Vec& coords, double weight) {
  add(BallPoint::from_coords(coords), weight);
}

double AtomicMeasure::total() const {
  detail::CompensatedSum s;
  for (const auto& a : atoms_) s.add(a.weight);
  return s.value();
}

double AtomicMeasure::abs_total() const {
  detail::CompensatedSum s;
  for (const auto& a : atoms_) s.add(std::abs(a.weight));
  return s.value();
}

bool AtomicMeasure::is_signed() const {
  for (const auto& a : atoms_)
    if (a.weight < 0) return true;
  return false;
}

bool AtomicMeasure::has_boundary_atoms() const {
  for (const auto& a : atoms_)
    if (a.location.is_boundary()) return true;
  return false;
}

const char* to_string(SupportKind k) noexcept {
  switch (k) {
    case SupportKind::CompactInterior: return "CompactInterior";
    case SupportKind::TouchesBoundary: return "TouchesBoundary";
    case SupportKind::SphereOnly: return "SphereOnly";
  }
  return "CompactInterior";
}

const char* to_string(GeodesicSupport k) noexcept {
  switch (k) {
    case GeodesicSupport::NotInGeodesic: return "NotInGeodesic";
    case GeodesicSupport::InGeodesic: return "InGeodesic";
    case GeodesicSupport::InGeodesicClosure: return "InGeodesicClosure";
  }
  return "NotInGeodesic";
}

namespace {

struct Aggregate {
  BallPoint location;
  double weight;
};

std::vector<Aggregate> aggregate(const AtomicMeasure& mu) {
  std::vector<Aggregate> out;
  for (const auto& a : mu.atoms()) {
    bool merged = false;
    for (auto& g : out) {
      if (g.location.is_boundary() == a.location.is_boundary() &&
          (g.location.coords() - a.location.coords()).norm() <= tol::colocation) {
        g.weight += a.weight;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back({a.location, a.weight});
  }
  return out;
}

// The geodesic whose closure contains the distinct points a and b.
Geodesic geodesic_through(const BallPoint& a, const BallPoint& b) {
  const int n = a.dim();
  if (!a.is_boundary()) return Geodesic::make(a, mobius_inverse(a, b).coords());
  if (!b.is_boundary()) return Geodesic::make(b, mobius_inverse(b, a).coords());

  const Vec sum = a.coords() + b.coords();
  const double m = sum.norm();
  if (m <= 1e-12) return Geodesic::make(BallPoint::origin(n), a.coords());
  // Circle orthogonal to the sphere through a and b; its point nearest the
  // origin lies on the bisecting ray at radius (1 - sin phi)/cos phi.
  const double cos_theta = std::clamp(a.coords().dot(b.coords()), -1.0, 1.0);
  const double phi = 0.5 * std::acos(cos_theta);
  const double r0 = (1.0 - std::sin(phi)) / std::cos(phi);
  const BallPoint base = BallPoint::from_coords(Vec(r0 * sum / m));
  return Geodesic::make(base, a.coords() - b.coords());
}

bool on_geodesic(const Geodesic& g, const BallPoint& z) {
  const Vec w = mobius_inverse(g.base, z).coords();
  const Vec perp = w - w.dot(g.dir) * g.dir;
  return perp.norm() <= tol::geodesic_membership;
}

}  // namespace

ValidationReport validate(const AtomicMeasure& mu) {
  if (mu.empty()) throw Error(ErrorCode::EmptyMeasure, "measure has no atoms");
  ValidationReport rep;
  rep.total = mu.total();
  rep.abs_total = mu.abs_total();
  rep.is_signed = mu.is_signed();
  if (!std::isfinite(rep.total) || !std::isfinite(rep.abs_total))
    throw Error(ErrorCode::InvalidArgument, "measure mass is not finite");
  if (!rep.is_signed && !(rep.total > 0.0))
    throw Error(ErrorCode::ZeroTotal, "nonnegative measure has zero total mass");

  const auto groups = aggregate(mu);
  bool any_boundary = false, any_interior = false;
  for (const auto& g : groups) {
    if (g.weight == 0.0) continue;
    if (g.location.is_boundary()) {
      any_boundary = true;
      if (!(g.weight < 0.5 * rep.total)) rep.boundary_pointmass_ok = false;
    } else {
      any_interior = true;
      rep.max_radius = std::max(rep.max_radius, g.location.norm());
    }
  }
  if (any_boundary) {
    rep.max_radius = 1.0;
    rep.support = any_interior ? SupportKind::TouchesBoundary : SupportKind::SphereOnly;
  }

  std::vector<const BallPoint*> pts;
  for (const auto& g : groups)
    if (g.weight != 0.0) pts.push_back(&g.location);
  if (pts.empty())
    for (const auto& g : groups) pts.push_back(&g.location);

  const auto closure_or_open = [&] {
    return any_boundary ? GeodesicSupport::InGeodesicClosure : GeodesicSupport::InGeodesic;
  };

  if (mu.dim() == 1) {
    rep.geodesic_support = closure_or_open();
    rep.geodesic = Geodesic::make(BallPoint::origin(1), Vec::Ones(1));
    return rep;
  }
  if (pts.size() == 1) {
    rep.geodesic_support = closure_or_open();
    const BallPoint& p = *pts.front();
    Vec dir = p.coords();
    if (dir.norm() == 0.0) {
      dir = Vec::Zero(mu.dim());
      dir[0] = 1.0;
    }
    rep.geodesic = p.is_boundary() ? Geodesic::make(BallPoint::origin(mu.dim()), dir)
                                   : Geodesic::make(p, dir);
    return rep;
  }
  const Geodesic g = geodesic_through(*pts[0], *pts[1]);
  bool all_on = true;
  for (size_t k = 2; k < pts.size() && all_on; ++k) all_on = on_geodesic(g, *pts[k]);
  if (all_on) {
    rep.geodesic_support = closure_or_open();
    rep.geodesic = g;
  } else {
    rep.geodesic_support = GeodesicSupport::NotInGeodesic;
  }
  return rep;
}

AtomicMeasure pushforward(const AtomicMeasure& mu,
                          const std::function<BallPoint(const BallPoint&)>& map) {
  AtomicMeasure out(mu.dim());
  for (const auto& a : mu.atoms()) out.add(map(a.location), a.weight);
  return out;
}

AtomicMeasure quantize_density(const std::function<double(const Vec&)>& density,
                               const Region& region, int dim, int count,
                               std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");

  double outer = 0.0, volume = 0.0;
  std::function<Vec(const std::vector<double>&)> place;
  int sample_dim = dim;

  if (const auto* b = std::get_if<BallRegion>(&region)) {
    if (b->center.size() != dim)
      throw Error(ErrorCode::DimensionMismatch, "region center has the wrong dimension");
    if (!(b->radius > 0.0))
      throw Error(ErrorCode::InvalidArgument, "region radius must be positive");
    outer = b->center.norm() + b->radius;
    volume = std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0) *
             std::pow(b->radius, dim);
    sample_dim = dim + 1;
    place = [b, dim](const std::vector<double>& u) {
      return Vec(b->center + detail::cube_to_ball(u, dim, b->radius));
    };
  } else {
    const auto& box = std::get<BoxRegion>(region);
    if (box.lo.size() != dim || box.hi.size() != dim)
      throw Error(ErrorCode::DimensionMismatch, "region box has the wrong dimension");
    volume = 1.0;
    Vec far(dim);
    for (int i = 0; i < dim; ++i) {
      if (!(box.hi[i] > box.lo[i]))
        throw Error(ErrorCode::InvalidArgument, "region box must have hi > lo");
      volume *= box.hi[i] - box.lo[i];
      far[i] = std::max(std::abs(box.lo[i]), std::abs(box.hi[i]));
    }
    outer = far.norm();
    place = [&box, dim](const std::vector<double>& u) {
      Vec y(dim);
      for (int i = 0; i < dim; ++i) y[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * u[i];
      return y;
    };
  }
  if (!(outer < 1.0 - tol::region_margin))
    throw Error(ErrorCode::RegionTouchesBoundary,
                "sampling region must stay inside radius 1 - 1e-6");

  const detail::ShiftedHalton seq(sample_dim, seed);
  AtomicMeasure out(dim);
  bool any_positive = false;
  for (int i = 0; i < count; ++i) {
    const Vec y = place(seq.point(static_cast<std::uint64_t>(i)));
    const double f = density(y);
    if (!(f >= 0.0) || !std::isfinite(f))
      throw Error(ErrorCode::InvalidArgument, "density must be finite and nonnegative");
    const double gap = 1.0 - y.squaredNorm();
    const double w = f * std::pow(gap, -dim) * volume / count;
    any_positive = any_positive || w > 0.0;
    out.add(y, w);
  }
  if (!any_positive)
    throw Error(ErrorCode::NonpositiveMass, "density vanishes at every sample point");
  return out;
}

}  // namespace hypcenter
