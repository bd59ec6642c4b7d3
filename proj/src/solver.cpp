#include "hypcenter/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "detail/sampling.hpp"
#include "hypcenter/error.hpp"
#include "hypcenter/tolerances.hpp"

namespace hypcenter {

const char* to_string(Strategy s) noexcept {
  return s == Strategy::GeodesicDescent ? "GeodesicDescent" : "NewtonAccelerated";
}

const char* to_string(HypothesisClass c) noexcept {
  switch (c) {
    case HypothesisClass::Thm1_i: return "Thm1_i";
    case HypothesisClass::Thm1_ii: return "Thm1_ii";
    case HypothesisClass::Thm2_i: return "Thm2_i";
    case HypothesisClass::Thm2_ii: return "Thm2_ii";
    case HypothesisClass::SignedExistenceOnly: return "SignedExistenceOnly";
    case HypothesisClass::NoGuarantee: return "NoGuarantee";
  }
  return "NoGuarantee";
}

const char* to_string(Uniqueness u) noexcept {
  switch (u) {
    case Uniqueness::Guaranteed: return "Guaranteed";
    case Uniqueness::MultistartAgree: return "MultistartAgree";
    case Uniqueness::Ambiguous: return "Ambiguous";
    case Uniqueness::Unverified: return "Unverified";
  }
  return "Unverified";
}

bool guarantees_uniqueness(HypothesisClass c) noexcept {
  return c == HypothesisClass::Thm1_i || c == HypothesisClass::Thm1_ii ||
         c == HypothesisClass::Thm2_i || c == HypothesisClass::Thm2_ii;
}

HypothesisClass classify_hypotheses(const EnergyContext& ctx) {
  const auto& rep = ctx.report();
  const auto& w = ctx.weight();
  const bool g1_pos = w.g1() && *w.g1() > 0.0;
  const Monotonicity mono = w.monotonicity();

  if (rep.is_signed) {
    if (rep.total > 0.0 && rep.boundary_pointmass_ok && g1_pos)
      return HypothesisClass::SignedExistenceOnly;
    return HypothesisClass::NoGuarantee;
  }
  if (rep.support != SupportKind::CompactInterior) {
    if (!g1_pos || !rep.boundary_pointmass_ok) return HypothesisClass::NoGuarantee;
    if (mono == Monotonicity::StrictlyIncreasing) return HypothesisClass::Thm2_i;
    if (mono == Monotonicity::Increasing && w.positive_on_open_interval() &&
        rep.geodesic_support == GeodesicSupport::NotInGeodesic)
      return HypothesisClass::Thm2_ii;
    return HypothesisClass::NoGuarantee;
  }
  if (!w.divergent_G()) return HypothesisClass::NoGuarantee;
  if (mono == Monotonicity::StrictlyIncreasing) return HypothesisClass::Thm1_i;
  if (mono == Monotonicity::Increasing && w.positive_on_open_interval() &&
      rep.geodesic_support == GeodesicSupport::NotInGeodesic)
    return HypothesisClass::Thm1_ii;
  return HypothesisClass::NoGuarantee;
}

BallPoint auto_initial(const EnergyContext& ctx) {
  const int n = ctx.dim();
  Vec mean = Vec::Zero(n);
  double wsum = 0.0;
  for (const auto& a : ctx.measure().atoms()) {
    mean += std::abs(a.weight) * a.location.coords();
    wsum += std::abs(a.weight);
  }
  if (wsum > 0.0) mean /= -wsum;
  const double r = mean.norm();
  if (r > tol::auto_start_clip) mean *= tol::auto_start_clip / r;
  return BallPoint::from_coords(mean);
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

BallPoint chart_point(const Vec& u) {
  const double r = u.norm();
  return BallPoint::make_unchecked(u, (1.0 - r) * (1.0 + r), Locus::Interior);
}

// u -> E(T_x u) - E(x) and its gradient, through the atoms pushed by T_x.
class Chart {
 public:
  Chart(const EnergyContext& ctx, const BallPoint& x) : w_(ctx.weight()), dim_(x.dim()) {
    pushed_.reserve(ctx.measure().size());
    for (const auto& a : ctx.measure().atoms())
      pushed_.push_back({mobius(x, a.location), a.weight});
  }

  Vec field(const Vec& u) const { return field_sum(w_, pushed_, chart_point(u)); }
  Vec gradient(const Vec& u) const {
    const BallPoint p = chart_point(u);
    return field_sum(w_, pushed_, p) / p.gap();
  }
  double energy(const Vec& u) const { return energy_sum(w_, pushed_, chart_point(u)); }

  Eigen::MatrixXd hessian() const {
    const double h = tol::newton_fd_step;
    Eigen::MatrixXd H(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
      Vec e = Vec::Zero(dim_);
      e[j] = h;
      H.col(j) = (gradient(e) - gradient(-e)) / (2.0 * h);
    }
    return 0.5 * (H + H.transpose());
  }

 private:
  const RadialWeight& w_;
  int dim_;
  std::vector<Atom> pushed_;
};

struct Step {
  bool accepted = false;
  Vec u;
  double length = 0.0;  // hyperbolic
};

double rounding_floor(const EnergyContext& ctx, double tau) {
  return 16.0 * kEps * ctx.report().abs_total * std::max(1.0, tau);
}

Step descent_step(const EnergyContext& ctx, const Chart& chart, const Vec& V) {
  const double vn = V.norm();
  const Vec dir = -V / vn;
  const double c1 = tol::armijo_c1;
  auto trial = [&](double tau) { return Vec(std::tanh(tau) * dir); };
  auto armijo = [&](double tau, double de) { return de <= -c1 * tau * vn; };

  double tau = std::min(1.0, vn / ctx.mass());
  double de = chart.energy(trial(tau));
  Step st;
  if (armijo(tau, de)) {
    for (int k = 0; k < 60 && tau < 32.0; ++k) {
      const double t2 = 2.0 * tau;
      const Vec u2 = trial(t2);
      if (u2.norm() >= 1.0) break;
      const double de2 = chart.energy(u2);
      if (!armijo(t2, de2) || !(de2 < de)) break;
      tau = t2;
      de = de2;
    }
    st.accepted = true;
  } else if (std::abs(de) <= rounding_floor(ctx, tau) && chart.field(trial(tau)).norm() < vn) {
    // energy change below rounding: fall back to the residual
    st.accepted = true;
  } else {
    for (int k = 0; k < 60; ++k) {
      tau *= tol::armijo_backtrack;
      de = chart.energy(trial(tau));
      if (armijo(tau, de)) {
        st.accepted = true;
        break;
      }
    }
    if (!st.accepted && de <= rounding_floor(ctx, tau) &&
        chart.field(trial(tau)).norm() < vn)
      st.accepted = true;
  }
  if (st.accepted) {
    st.u = trial(tau);
    st.length = tau;
  }
  return st;
}

Step newton_step(const EnergyContext& ctx, const Chart& chart, const Vec& V, double& radius) {
  Step st;
  const Eigen::MatrixXd H = chart.hessian();
  Eigen::LLT<Eigen::MatrixXd> llt(H);
  if (llt.info() != Eigen::Success || !H.allFinite()) return st;
  Vec p = -llt.solve(V);
  if (!p.allFinite()) return st;
  const double pn = p.norm();
  if (pn > radius) p *= radius / pn;
  const double plen = p.norm();
  const double pred = V.dot(p) + 0.5 * p.dot(H * p);
  const double de = chart.energy(p);
  const double rho = pred < 0.0 ? de / pred : -1.0;

  if (rho > 0.1) {
    st.accepted = true;
  } else if (std::abs(pred) <= rounding_floor(ctx, plen) &&
             de <= rounding_floor(ctx, plen) && chart.field(p).norm() < V.norm()) {
    st.accepted = true;
  }
  if (rho > 0.75 && plen >= 0.99 * radius)
    radius = std::min(2.0 * radius, 0.9);
  else if (rho < 0.25)
    radius = std::max(0.25 * plen, 1e-12);
  if (st.accepted) {
    st.u = p;
    st.length = std::atanh(plen);
  }
  return st;
}

bool lex_less(const BallPoint& a, const BallPoint& b) {
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

SolveResult solve_single(const EnergyContext& ctx, const SolveOptions& opts) {
  if (!(opts.tol_residual > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tol_residual must be positive");
  if (opts.max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 1");

  BallPoint x = opts.initial ? *opts.initial : auto_initial(ctx);
  if (x.dim() != ctx.dim())
    throw Error(ErrorCode::DimensionMismatch, "initial point has the wrong dimension");
  if (x.is_boundary())
    throw Error(ErrorCode::DomainError, "initial point must be interior");

  const double mass = ctx.mass();
  SolveResult res;
  res.hypothesis_class = classify_hypotheses(ctx);

  double radius = 0.5;
  BallPoint best = x;
  double best_res = std::numeric_limits<double>::infinity();
  double best_energy = 0.0;
  int iters = 0;

  for (;; ++iters) {
    if (x.gap() < tol::divergence_gap) {
      res.divergent = true;
      break;
    }
    const Chart chart(ctx, x);
    const Vec V = chart.field(Vec::Zero(ctx.dim()));
    const double r = V.norm() / mass;
    const double e = renormalized_energy(ctx, x);
    if (r < best_res) {
      best_res = r;
      best = x;
      best_energy = e;
    }
    if (r <= opts.tol_residual) {
      res.converged = true;
      break;
    }
    if (iters >= opts.max_iters) break;

    Step st;
    bool used_newton = false;
    if (opts.strategy == Strategy::NewtonAccelerated) {
      st = newton_step(ctx, chart, V, radius);
      used_newton = st.accepted;
    }
    if (!st.accepted) st = descent_step(ctx, chart, V);
    if (!st.accepted) {
      res.trace.push_back({e, r, 0.0, false});
      break;
    }
    res.trace.push_back({e, r, st.length, used_newton});
    x = mobius(x, chart_point(st.u));
  }

  if (res.converged) {
    res.x_c = x;
    res.residual = field_V(ctx, x).norm() / mass;
    res.energy_at_min = renormalized_energy(ctx, x);
    res.trace.push_back({res.energy_at_min, res.residual, 0.0, false});
  } else {
    res.x_c = best;
    res.residual = best_res;
    res.energy_at_min = best_energy;
  }
  res.iterations = iters;
  res.uniqueness = guarantees_uniqueness(res.hypothesis_class) ? Uniqueness::Guaranteed
                                                               : Uniqueness::Unverified;
  return res;
}

SolveResult multistart_probe(const EnergyContext& ctx, const SolveOptions& opts,
                             int starts) {
  if (starts < 2) throw Error(ErrorCode::InvalidArgument, "multistart needs >= 2 starts");
  const int n = ctx.dim();
  const detail::ShiftedHalton seq(n + 1, opts.seed);
  const double r_max = std::tanh(tol::multistart_radius_s);

  SolveResult primary;
  std::vector<SolveResult> runs;
  for (int k = 0; k < starts; ++k) {
    SolveOptions o = opts;
    o.multistart = 1;
    if (k > 0)
      o.initial = BallPoint::from_coords(
          detail::cube_to_ball(seq.point(static_cast<std::uint64_t>(k - 1)), n, r_max));
    runs.push_back(solve_single(ctx, o));
  }
  primary = runs.front();

  std::vector<const SolveResult*> done;
  for (const auto& r : runs)
    if (r.converged) done.push_back(&r);
  std::sort(done.begin(), done.end(), [](const SolveResult* a, const SolveResult* b) {
    return lex_less(a->x_c, b->x_c);
  });

  std::vector<Cluster> clusters;
  double spread = 0.0;
  for (size_t i = 0; i < done.size(); ++i) {
    for (size_t j = 0; j < i; ++j)
      spread = std::max(spread, hyp_distance(done[i]->x_c, done[j]->x_c));
    bool joined = false;
    for (auto& c : clusters) {
      if (hyp_distance(c.representative, done[i]->x_c) <= tol::cluster_distance) {
        ++c.members;
        joined = true;
        break;
      }
    }
    if (!joined) clusters.push_back({done[i]->x_c, 1, done[i]->energy_at_min});
  }

  primary.starts = starts;
  primary.starts_converged = static_cast<int>(done.size());
  primary.spread = spread;
  primary.clusters = std::move(clusters);
  if (primary.clusters.size() > 1)
    primary.uniqueness = Uniqueness::Ambiguous;
  else if (primary.clusters.size() == 1 && done.size() >= 2)
    primary.uniqueness = Uniqueness::MultistartAgree;
  else
    primary.uniqueness = Uniqueness::Unverified;

  if (!primary.converged && !done.empty()) {
    // report a converged endpoint rather than the failed primary run
    const SolveResult& alt = *done.front();
    primary.x_c = alt.x_c;
    primary.residual = alt.residual;
    primary.energy_at_min = alt.energy_at_min;
    primary.converged = true;
    primary.divergent = false;
  }
  return primary;
}

SolveResult solve_center(const EnergyContext& ctx, const SolveOptions& opts) {
  const HypothesisClass cls = classify_hypotheses(ctx);
  const bool unique = guarantees_uniqueness(cls);
  SolveResult res;
  if (unique && opts.multistart <= 1) {
    res = solve_single(ctx, opts);
  } else {
    const int starts =
        unique ? opts.multistart : std::max(opts.multistart, tol::probe_starts_default);
    res = multistart_probe(ctx, opts, starts);
  }
  if (res.divergent)
    throw Error(ErrorCode::DivergentIterates,
                "iterates reached the sphere without the residual falling below tolerance");
  res.hypothesis_class = cls;
  return res;
}

std::vector<ContinuitySample> continuity_probe(const EnergyContext& ctx,
                                               const std::vector<Perturbation>& perturbations,
                                               const SolveOptions& opts) {
  SolveOptions o = opts;
  o.multistart = 1;
  const SolveResult base = solve_single(ctx, o);
  std::vector<ContinuitySample> out;
  for (const auto& p : perturbations) {
    const EnergyContext pc(ctx.weight(), p.measure);
    const SolveResult r = solve_single(pc, o);
    out.push_back({p.size, hyp_distance(base.x_c, r.x_c), r.x_c, r.converged && base.converged});
  }
  return out;
}

}  // namespace hypcenter
