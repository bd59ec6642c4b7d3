#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "hypcenter/geometry.hpp"

namespace hypcenter {

struct Atom {
  BallPoint location;
  double weight;
};

/// A finite signed combination of point masses on the closed ball.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(int dim);
  AtomicMeasure(int dim, std::vector<Atom> atoms);

  void add(const BallPoint& location, double weight);
  void add(const Vec& coords, double weight);

  int dim() const noexcept { return dim_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  double total() const;
  double abs_total() const;
  bool is_signed() const;
  bool has_boundary_atoms() const;

 private:
  int dim_;
  std::vector<Atom> atoms_;
};

enum class SupportKind { CompactInterior, TouchesBoundary, SphereOnly };
enum class GeodesicSupport { NotInGeodesic, InGeodesic, InGeodesicClosure };

const char* to_string(SupportKind k) noexcept;
const char* to_string(GeodesicSupport k) noexcept;

struct ValidationReport {
  double total = 0.0;
  double abs_total = 0.0;
  SupportKind support = SupportKind::CompactInterior;
  double max_radius = 0.0;  // Euclidean; 1 when boundary atoms exist
  bool boundary_pointmass_ok = true;
  GeodesicSupport geodesic_support = GeodesicSupport::NotInGeodesic;
  std::optional<Geodesic> geodesic;  // the fitted geodesic (n >= 2)
  bool is_signed = false;
};

/// Aggregates co-located atoms, then classifies the support.
/// Throws EmptyMeasure, and ZeroTotal for a nonnegative measure of zero mass.
ValidationReport validate(const AtomicMeasure& mu);

AtomicMeasure pushforward(const AtomicMeasure& mu,
                          const std::function<BallPoint(const BallPoint&)>& map);

struct BallRegion {
  Vec center;
  double radius;
};

struct BoxRegion {
  Vec lo;
  Vec hi;
};

using Region = std::variant<BallRegion, BoxRegion>;

/// Atoms at `count` low-discrepancy points of `region` carrying the mass of
/// f(y) (1-|y|^2)^(-n) dy.
AtomicMeasure quantize_density(const std::function<double(const Vec&)>& density,
                               const Region& region, int dim, int count,
                               std::uint64_t seed = 0);

}  // namespace hypcenter
