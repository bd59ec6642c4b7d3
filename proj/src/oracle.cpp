#include "hypcenter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "detail/sampling.hpp"
#include "detail/summation.hpp"
#include "hypcenter/error.hpp"
#include "hypcenter/tolerances.hpp"

namespace hypcenter::oracle {

const char* to_string(ScanKind k) noexcept {
  switch (k) {
    case ScanKind::GradientCheck: return "GradientCheck";
    case ScanKind::ConvexityScan: return "ConvexityScan";
    case ScanKind::CocycleCheck: return "CocycleCheck";
    case ScanKind::ContinuityCheck: return "ContinuityCheck";
    case ScanKind::ZeroSet1D: return "ZeroSet1D";
    case ScanKind::ZeroSet2D: return "ZeroSet2D";
    case ScanKind::DistanceConvexity: return "DistanceConvexity";
  }
  return "GradientCheck";
}

namespace {

constexpr int kMaxDetails = 16;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void note(ScanReport& rep, std::string s) {
  if (static_cast<int>(rep.details.size()) < kMaxDetails) rep.details.push_back(std::move(s));
}

BallPoint interior(const Vec& x) {
  const BallPoint p = BallPoint::from_coords(x);
  if (p.is_boundary())
    throw Error(ErrorCode::DomainError, "oracle evaluation point must be interior");
  return p;
}

double g_at_one(const RadialWeight& w) {
  if (!w.g1()) throw Error(ErrorCode::UndefinedAtOne, "g(1) is undefined for this weight");
  return *w.g1();
}

// K(x, y) written out from the definitions.
double kernel(const RadialWeight& w, const BallPoint& x, const BallPoint& y) {
  if (y.is_boundary()) {
    const double num = (x.coords() + y.coords()).squaredNorm();
    return g_at_one(w) * 0.5 * std::log(num / x.gap());
  }
  return w.G_of_s(mobius(x, y).hyperbolic_radius()) - w.G_of_s(y.hyperbolic_radius());
}

Vec v_of(const RadialWeight& w, const BallPoint& t) {
  if (t.is_boundary()) return g_at_one(w) * t.coords();
  const double r = t.coords().norm();
  if (r == 0.0) return Vec::Zero(t.dim());
  return w.g_of_s(t.hyperbolic_radius()) * t.coords() / r;
}

Vec field_at(const RadialWeight& w, const AtomicMeasure& mu, const BallPoint& x) {
  detail::CompensatedVecSum acc(x.dim());
  for (const auto& a : mu.atoms()) acc.add(a.weight * v_of(w, mobius(x, a.location)));
  return acc.value();
}

double energy_at(const RadialWeight& w, const AtomicMeasure& mu, const BallPoint& x) {
  detail::CompensatedSum acc;
  for (const auto& a : mu.atoms()) acc.add(a.weight * kernel(w, x, a.location));
  return acc.value();
}

// Second central difference along a geodesic at the point c, in the chart
// centred at c: the neighbours are T_c(+-tanh(h) e).
double second_difference(const RadialWeight& w, const AtomicMeasure& mu, const BallPoint& c,
                         const Vec& e, double h) {
  const double t = std::tanh(h);
  const double ch = std::cosh(h);
  const BallPoint up = BallPoint::make_unchecked(t * e, 1.0 / (ch * ch), Locus::Interior);
  const BallPoint dn = BallPoint::make_unchecked(-t * e, 1.0 / (ch * ch), Locus::Interior);
  detail::CompensatedSum acc;
  for (const auto& a : mu.atoms()) {
    const BallPoint z = mobius_inverse(c, a.location);
    acc.add(a.weight * (kernel(w, up, z) + kernel(w, dn, z)));
  }
  return acc.value() / (h * h);
}

// Point at arclength tau on the geodesic and the unit direction of travel
// there, expressed in the chart centred at that point.
std::pair<BallPoint, Vec> moving_frame(const Geodesic& g, double tau) {
  const BallPoint c = geodesic_point_at_arclength(g, tau);
  const BallPoint ahead = geodesic_point_at_arclength(g, tau + 0.25);
  Vec e = mobius_inverse(c, ahead).coords();
  return {c, e / e.norm()};
}

Geodesic random_geodesic(detail::Rng& rng, int dim, double base_radius) {
  return Geodesic::make(BallPoint::from_coords(rng.in_ball(dim, base_radius)),
                        rng.unit_vector(dim));
}

}  // namespace

Vec field(const RadialWeight& w, const AtomicMeasure& mu, const Vec& x) {
  return field_at(w, mu, interior(x));
}

double energy(const RadialWeight& w, const AtomicMeasure& mu, const Vec& x) {
  return energy_at(w, mu, interior(x));
}

std::vector<ZeroInterval> brute_force_zeros_1d(const EnergyContext& ctx, int resolution) {
  if (ctx.dim() != 1)
    throw Error(ErrorCode::DimensionMismatch, "1-D zero scan needs a 1-D measure");
  if (resolution < 2) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 2");
  const auto& w = ctx.weight();
  const auto& mu = ctx.measure();
  const Vec e1 = Vec::Ones(1);
  const double S = tol::zero_scan_extent_s;
  auto at_s = [&](double s) {
    return s == 0.0 ? BallPoint::origin(1) : BallPoint::from_hyperbolic(std::abs(s), s > 0 ? e1 : Vec(-e1));
  };
  auto V = [&](double s) { return field_at(w, mu, at_s(s))[0]; };

  std::vector<double> s(resolution + 1), v(resolution + 1);
  for (int i = 0; i <= resolution; ++i) {
    s[i] = -S + 2.0 * S * i / resolution;
    v[i] = V(s[i]);
  }
  auto flat = [&](int i) { return std::abs(v[i]) < tol::zero_flat; };

  std::vector<ZeroInterval> out;
  for (int i = 0; i <= resolution;) {
    if (flat(i)) {
      int j = i;
      while (j + 1 <= resolution && flat(j + 1)) ++j;
      // push each end out to the last flat point between grid nodes
      auto edge = [&](double in, double out_s) {
        for (int k = 0; k < 200 && std::abs(std::tanh(out_s) - std::tanh(in)) > tol::zero_bisection;
             ++k) {
          const double mid = 0.5 * (in + out_s);
          (std::abs(V(mid)) < tol::zero_flat ? in : out_s) = mid;
        }
        return in;
      };
      const double lo = i > 0 ? edge(s[i], s[i - 1]) : s[i];
      const double hi = j < resolution ? edge(s[j], s[j + 1]) : s[j];
      out.push_back({std::tanh(lo), std::tanh(hi), ZeroKind::Flat});
      i = j + 1;
      continue;
    }
    if (i < resolution && !flat(i + 1) && (v[i] < 0) != (v[i + 1] < 0)) {
      double lo = s[i], hi = s[i + 1], vlo = v[i];
      for (int k = 0; k < 200 && std::tanh(hi) - std::tanh(lo) > tol::zero_bisection; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double vm = V(mid);
        if (vm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((vm < 0) == (vlo < 0)) {
          lo = mid;
          vlo = vm;
        } else {
          hi = mid;
        }
      }
      out.push_back({std::tanh(lo), std::tanh(hi), ZeroKind::Crossing});
    }
    ++i;
  }
  return out;
}

std::vector<Vec> zeros_2d(const EnergyContext& ctx, int resolution) {
  if (ctx.dim() != 2)
    throw Error(ErrorCode::DimensionMismatch, "2-D zero scan needs a 2-D measure");
  const auto& w = ctx.weight();
  const auto& mu = ctx.measure();
  const double S = 4.0;
  const int N = resolution;
  std::vector<double> axis(N + 1);
  for (int i = 0; i <= N; ++i) axis[i] = std::tanh(-S + 2.0 * S * i / N);

  std::vector<Vec> grid((N + 1) * (N + 1));
  std::vector<bool> inside((N + 1) * (N + 1), false);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      Vec x(2);
      x << axis[i], axis[j];
      if (x.norm() < 1.0 - 2 * tol::boundary_snap) {
        inside[i * (N + 1) + j] = true;
        grid[i * (N + 1) + j] = field_at(w, mu, BallPoint::from_coords(x));
      }
    }

  auto refine = [&](Vec x) -> std::optional<Vec> {
    const double mass = ctx.mass();
    Vec f = field_at(w, mu, BallPoint::from_coords(x));
    for (int it = 0; it < 60; ++it) {
      if (f.norm() / mass < 1e-12) return x;
      Eigen::Matrix2d J;
      const double h = 1e-7;
      for (int k = 0; k < 2; ++k) {
        Vec a = x, b = x;
        a[k] += h;
        b[k] -= h;
        if (std::max(a.norm(), b.norm()) >= 1.0 - 2 * tol::boundary_snap) return std::nullopt;
        J.col(k) = (field_at(w, mu, BallPoint::from_coords(a)) -
                    field_at(w, mu, BallPoint::from_coords(b))) / (2 * h);
      }
      const Vec step = J.fullPivLu().solve(f);
      if (!step.allFinite()) return std::nullopt;
      double damp = 1.0;
      bool moved = false;
      for (int k = 0; k < 40; ++k, damp *= 0.5) {
        const Vec y = x - damp * step;
        if (y.norm() >= 1.0 - 2 * tol::boundary_snap) continue;
        const Vec fy = field_at(w, mu, BallPoint::from_coords(y));
        if (fy.norm() < f.norm()) {
          x = y;
          f = fy;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (f.norm() / mass < 1e-10) return x;
    return std::nullopt;
  };

  std::vector<Vec> zeros;
  auto idx = [&](int i, int j) { return i * (N + 1) + j; };
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const int c[4] = {idx(i, j), idx(i + 1, j), idx(i, j + 1), idx(i + 1, j + 1)};
      if (!inside[c[0]] || !inside[c[1]] || !inside[c[2]] || !inside[c[3]]) continue;
      bool flagged = true;
      for (int k = 0; k < 2 && flagged; ++k) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int q : c) {
          lo = std::min(lo, grid[q][k]);
          hi = std::max(hi, grid[q][k]);
        }
        flagged = lo <= 0.0 && hi >= 0.0;
      }
      if (!flagged) continue;
      Vec start(2);
      start << 0.5 * (axis[i] + axis[i + 1]), 0.5 * (axis[j] + axis[j + 1]);
      const auto z = refine(start);
      if (!z) continue;
      const BallPoint zp = BallPoint::from_coords(*z);
      bool seen = false;
      for (const auto& q : zeros)
        if (hyp_distance(BallPoint::from_coords(q), zp) <= tol::cluster_distance) seen = true;
      if (!seen) zeros.push_back(*z);
    }
  std::sort(zeros.begin(), zeros.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  return zeros;
}

ScanReport gradient_check(const EnergyContext& ctx, int samples, std::uint64_t seed) {
  ScanReport rep;
  rep.kind = ScanKind::GradientCheck;
  rep.seed = seed;
  detail::Rng rng(seed);
  const auto& w = ctx.weight();
  const auto& mu = ctx.measure();
  const int n = ctx.dim();
  const double h = tol::gradient_fd_step;
  const double floor = ctx.report().abs_total;
  for (int k = 0; k < samples; ++k) {
    const Vec x = rng.in_ball(n, tol::gradient_sample_radius);
    const Vec grad = energy_gradient(ctx, BallPoint::from_coords(x));
    Vec fd(n);
    for (int i = 0; i < n; ++i) {
      Vec a = x, b = x;
      a[i] += h;
      b[i] -= h;
      fd[i] = (energy(w, mu, a) - energy(w, mu, b)) / (2.0 * h);
    }
    const double err = (grad - fd).norm() / std::max(grad.norm(), floor);
    if (err > rep.worst_case) rep.worst_case = err;
    if (err >= tol::gradient_rel) note(rep, fmt("|x|=%.6g relative error %.3g", x.norm(), err));
    ++rep.samples;
  }
  rep.pass = rep.worst_case < tol::gradient_rel;
  return rep;
}

ScanReport convexity_scan(const EnergyContext& ctx, int geodesics, int steps,
                          std::uint64_t seed) {
  ScanReport rep;
  rep.kind = ScanKind::ConvexityScan;
  rep.seed = seed;
  detail::Rng rng(seed);
  const int n = ctx.dim();
  const double h = tol::convexity_step;
  const double span = 1.5;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < geodesics; ++k) {
    const Geodesic g = random_geodesic(rng, n, 0.8);
    for (int j = 0; j < steps; ++j) {
      const double tau = steps == 1 ? 0.0 : -span + 2.0 * span * j / (steps - 1);
      const auto [c, e] = moving_frame(g, tau);
      const double d2 = second_difference(ctx.weight(), ctx.measure(), c, e, h);
      worst = std::min(worst, d2);
      if (d2 < tol::convexity_floor)
        note(rep, fmt("geodesic %g tau %g: second difference %.3g", k, tau, d2));
      ++rep.samples;
    }
  }
  rep.worst_case = worst;
  rep.pass = worst >= tol::convexity_floor;
  rep.strict = worst > tol::convexity_strict;
  rep.metrics.push_back({"min_second_difference", worst});
  return rep;
}

ScanReport kernel_linearity_check(int dim, int geodesics, int steps, std::uint64_t seed) {
  ScanReport rep;
  rep.kind = ScanKind::ConvexityScan;
  rep.seed = seed;
  detail::Rng rng(seed);
  const RadialWeight w = RadialWeight::identity();
  const double h = tol::convexity_step;
  double worst = 0.0;
  for (int k = 0; k < geodesics; ++k) {
    const Vec yv = rng.unit_vector(dim);
    AtomicMeasure mu(dim);
    mu.add(BallPoint::make_unchecked(yv, 0.0, Locus::Boundary), 1.0);
    // geodesic from a random base running out to the atom
    const BallPoint base = BallPoint::from_coords(rng.in_ball(dim, 0.8));
    const Vec dir = mobius_inverse(base, mu.atoms()[0].location).coords();
    const Geodesic g = Geodesic::make(base, dir);
    for (int j = 0; j < steps; ++j) {
      const double tau = steps == 1 ? 0.0 : -1.5 + 3.0 * j / (steps - 1);
      const auto [c, e] = moving_frame(g, tau);
      const double d2 = std::abs(second_difference(w, mu, c, e, h));
      worst = std::max(worst, d2);
      if (d2 >= tol::convexity_linear)
        note(rep, fmt("geodesic %g tau %g: |second difference| %.3g", k, tau, d2));
      ++rep.samples;
    }
  }
  rep.worst_case = worst;
  rep.pass = worst < tol::convexity_linear;
  rep.metrics.push_back({"max_abs_second_difference", worst});
  return rep;
}

ScanReport cocycle_check(int dim, int samples, std::uint64_t seed) {
  ScanReport rep;
  rep.kind = ScanKind::CocycleCheck;
  rep.seed = seed;
  detail::Rng rng(seed);
  const RadialWeight w = RadialWeight::identity();
  for (int k = 0; k < samples; ++k) {
    const BallPoint x = BallPoint::from_coords(rng.in_ball(dim, 0.9));
    const BallPoint z = BallPoint::from_coords(rng.in_ball(dim, 0.9));
    const BallPoint y = BallPoint::make_unchecked(rng.unit_vector(dim), 0.0, Locus::Boundary);
    const double lhs = kernel_K(w, mobius(x, z), y);
    const double rhs = kernel_K(w, z, mobius(x, y)) + kernel_K(w, x, y);
    const double err = std::abs(lhs - rhs);
    rep.worst_case = std::max(rep.worst_case, err);
    if (err >= tol::cocycle_abs) note(rep, fmt("sample %g: error %.3g", k, err));
    ++rep.samples;
  }
  rep.pass = rep.worst_case < tol::cocycle_abs;
  return rep;
}

ScanReport boundary_continuity_check(const RadialWeight& w, const Vec& x, const Vec& yhat) {
  ScanReport rep;
  rep.kind = ScanKind::ContinuityCheck;
  const RadialWeight wn = normalized_for_boundary(w);
  const BallPoint xp = interior(x);
  const BallPoint yb = BallPoint::make_unchecked(yhat / yhat.norm(), 0.0, Locus::Boundary);
  const double limit = kernel_K(wn, xp, yb);
  rep.metrics.push_back({"boundary_value", limit});
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  double gap = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const double eps = std::pow(10.0, -k);
    const BallPoint y = BallPoint::from_coords(Vec((1.0 - eps) * yb.coords()));
    gap = std::abs(kernel_K(wn, xp, y) - limit);
    note(rep, fmt("eps 1e-%g: gap %.3g", k, gap));
    if (gap > prev + 1e-14) monotone = false;
    prev = gap;
    ++rep.samples;
  }
  rep.worst_case = gap;
  rep.pass = monotone && gap < 1e-6;
  rep.metrics.push_back({"final_gap", gap});
  return rep;
}

double arc_norm_second_derivative(double a, double b, double t) {
  const double c = std::cos(t / b);
  return a * a * (a / b - c) * (c - b / a) / std::pow(a * a - 2 * a * b * c + b * b, 1.5);
}

ScanReport distance_convexity_check(int dim, int samples, std::uint64_t seed) {
  ScanReport rep;
  rep.kind = ScanKind::DistanceConvexity;
  rep.seed = seed;
  detail::Rng rng(seed);
  const double h = tol::convexity_step;
  const int n = std::max(dim, 2);
  const BallPoint origin = BallPoint::origin(n);
  auto dist0 = [&](const BallPoint& p) { return hyp_distance(p, origin); };
  auto d2_along = [&](const Geodesic& g, double tau) {
    const double f0 = dist0(geodesic_point_at_arclength(g, tau));
    const double fp = dist0(geodesic_point_at_arclength(g, tau + h));
    const double fm = dist0(geodesic_point_at_arclength(g, tau - h));
    return ((fp - f0) - (f0 - fm)) / (h * h);
  };

  // geodesics whose nearest point to the origin is at distance >= 0.05
  double min_d2 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const Vec e = rng.unit_vector(n);
    Vec d = rng.unit_vector(n);
    d -= d.dot(e) * e;
    if (d.norm() < 1e-6) continue;
    const double sc = rng.uniform(tol::distance_origin_avoid + 1e-3, 2.0);
    const Geodesic g = Geodesic::make(BallPoint::from_hyperbolic(sc, e), d);
    for (int j = 0; j <= 20; ++j) {
      const double tau = -2.0 + 0.2 * j;
      const double v = d2_along(g, tau);
      min_d2 = std::min(min_d2, v);
      if (!(v > 0.0)) note(rep, fmt("offset %g tau %g: second difference %.3g", sc, tau, v));
      ++rep.samples;
    }
  }

  // lines through the origin: hyperbolically linear off the corner
  double lin = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Vec z = rng.unit_vector(n);
    const double b = rng.uniform(-0.3, 0.3);
    const Geodesic g = Geodesic::make(
        b == 0.0 ? origin : BallPoint::from_hyperbolic(b, z), z);
    // distances kept below 0.6 so rounding stays under the tolerance
    for (int j = 0; j <= 20; ++j) {
      const double tau = -0.3 + 0.03 * j;
      if (std::abs(tau + b) < 3.0 * h) continue;
      const double v = std::abs(d2_along(g, tau));
      lin = std::max(lin, v);
      if (v >= tol::distance_linear) note(rep, fmt("line b=%g tau %g: |second difference| %.3g", b, tau, v));
      ++rep.samples;
    }
  }

  // the arc of centre sqrt(2) e1 and radius 1, against its closed form
  const double a = std::sqrt(2.0), rad = 1.0;
  Vec base = Vec::Zero(n), up = Vec::Zero(n);
  base[0] = a - rad;
  up[1] = 1.0;
  const Geodesic arc = Geodesic::make(BallPoint::from_coords(base), up);
  auto theta = [&](const BallPoint& p) { return std::atan2(p[1], a - p[0]); };
  double arc_rel = 0.0;
  for (int j = 0; j <= 20; ++j) {
    const double tau = -1.5 + 0.15 * j;
    const BallPoint p0 = geodesic_point_at_arclength(arc, tau);
    const BallPoint pp = geodesic_point_at_arclength(arc, tau + h);
    const BallPoint pm = geodesic_point_at_arclength(arc, tau - h);
    const double t0 = rad * theta(p0), tp = rad * theta(pp), tm = rad * theta(pm);
    const double r0 = p0.norm(), rp = pp.norm(), rm = pm.norm();
    const double numeric = 2.0 * ((rp - r0) / (tp - t0) - (r0 - rm) / (t0 - tm)) / (tp - tm);
    const double exact = arc_norm_second_derivative(a, rad, t0);
    const double rel = std::abs(numeric - exact) / std::abs(exact);
    arc_rel = std::max(arc_rel, rel);
    if (rel >= tol::closed_form_rel) note(rep, fmt("arc t=%g: numeric %.10g closed form %.10g", t0, numeric, exact));
    ++rep.samples;
  }

  // second derivative of d(T_x(t z), 0) at t = 0
  double expansion_rel = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Vec xv = rng.uniform(0.1, 0.9) * rng.unit_vector(n);
    const Vec z = rng.unit_vector(n);
    const BallPoint x = BallPoint::from_coords(xv);
    auto f = [&](double t) {
      const double a2 = std::abs(t);
      return dist0(mobius(x, BallPoint::make_unchecked(t * z, (1 - a2) * (1 + a2), Locus::Interior)));
    };
    const double he = 0.1 * h;
    const double numeric = ((f(he) - f(0.0)) - (f(0.0) - f(-he))) / (he * he);
    const double r = xv.norm();
    const double c = xv.dot(z) / r;
    const double exact = (1.0 + r * r) / r * (1.0 - c * c);
    const double rel = std::abs(numeric - exact) / std::max(1.0, std::abs(exact));
    expansion_rel = std::max(expansion_rel, rel);
    ++rep.samples;
  }

  rep.metrics = {{"min_second_difference", min_d2},
                 {"line_max_abs_second_difference", lin},
                 {"arc_max_relative_error", arc_rel},
                 {"expansion_max_relative_error", expansion_rel}};
  rep.worst_case = std::max({arc_rel, expansion_rel});
  rep.pass = min_d2 > 0.0 && lin < tol::distance_linear && arc_rel < tol::closed_form_rel &&
             expansion_rel < tol::closed_form_rel;
  return rep;
}

}  // namespace hypcenter::oracle
