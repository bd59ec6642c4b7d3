#include "hypcenter/hypcenter.h"

#include <cmath>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "hypcenter/energy.hpp"
#include "hypcenter/error.hpp"
#include "hypcenter/fixtures.hpp"
#include "hypcenter/oracle.hpp"
#include "hypcenter/solver.hpp"

using namespace hypcenter;

struct hc_weight {
  RadialWeight w;
};

struct hc_measure {
  AtomicMeasure m;
};

struct hc_context {
  EnergyContext ctx;
};

struct hc_solve_result {
  SolveResult r;
};

struct hc_scan_report {
  oracle::ScanReport r;
};

struct hc_zero_set {
  size_t dim;
  std::vector<oracle::ZeroInterval> intervals;
  std::vector<Vec> points;
};

struct hc_reproduce_report {
  ReproduceReport r;
};

namespace {

thread_local std::string g_last_error;

struct OutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

hc_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return HC_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return HC_ERR_DIMENSION_MISMATCH;
    case ErrorCode::PoleSingularity: return HC_ERR_POLE_SINGULARITY;
    case ErrorCode::DomainError: return HC_ERR_DOMAIN;
    case ErrorCode::DegenerateDirection: return HC_ERR_DEGENERATE_DIRECTION;
    case ErrorCode::UndefinedAtOne: return HC_ERR_UNDEFINED_AT_ONE;
    case ErrorCode::NotBoundaryCompatible: return HC_ERR_NOT_BOUNDARY_COMPATIBLE;
    case ErrorCode::EmptyMeasure: return HC_ERR_EMPTY_MEASURE;
    case ErrorCode::ZeroTotal: return HC_ERR_ZERO_TOTAL;
    case ErrorCode::RegionTouchesBoundary: return HC_ERR_REGION_TOUCHES_BOUNDARY;
    case ErrorCode::NonpositiveMass: return HC_ERR_NONPOSITIVE_MASS;
    case ErrorCode::BusemannSingularity: return HC_ERR_BUSEMANN_SINGULARITY;
    case ErrorCode::DivergentIterates: return HC_ERR_DIVERGENT_ITERATES;
    case ErrorCode::UnknownFixture: return HC_ERR_UNKNOWN_FIXTURE;
  }
  return HC_ERR_INTERNAL;
}

hc_status fail(hc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
hc_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return HC_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const OutOfRange& e) {
    return fail(HC_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HC_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

Vec vec(size_t dim, const double* p) {
  require(p != nullptr, "null coordinate pointer");
  require(dim >= 1, "dimension must be >= 1");
  Vec v(static_cast<Eigen::Index>(dim));
  for (size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = p[i];
  return v;
}

BallPoint point(size_t dim, const double* p) { return BallPoint::from_coords(vec(dim, p)); }

void store(const Vec& v, double* out) {
  require(out != nullptr, "null output pointer");
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i];
}

Halfspace halfspace(size_t dim, const double* p, double t) {
  return Halfspace::make(vec(dim, p), t);
}

template <class T>
void emit(T** out, T* value) {
  require(out != nullptr, "null output handle");
  *out = value;
}

Monotonicity from_c(hc_monotonicity m) {
  switch (m) {
    case HC_STRICTLY_INCREASING: return Monotonicity::StrictlyIncreasing;
    case HC_INCREASING: return Monotonicity::Increasing;
    case HC_NOT_MONOTONE: return Monotonicity::None;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown monotonicity");
}

hc_monotonicity to_c(Monotonicity m) {
  switch (m) {
    case Monotonicity::StrictlyIncreasing: return HC_STRICTLY_INCREASING;
    case Monotonicity::Increasing: return HC_INCREASING;
    case Monotonicity::None: return HC_NOT_MONOTONE;
  }
  return HC_NOT_MONOTONE;
}

hc_hypothesis_class to_c(HypothesisClass c) { return static_cast<hc_hypothesis_class>(c); }
hc_uniqueness to_c(Uniqueness u) { return static_cast<hc_uniqueness>(u); }

SolveOptions options(const hc_context* ctx, const hc_solve_options* o) {
  SolveOptions s;
  if (!o) return s;
  s.tol_residual = o->tol_residual;
  s.max_iters = o->max_iters;
  if (o->initial) s.initial = point(ctx->ctx.dim(), o->initial);
  switch (o->strategy) {
    case HC_GEODESIC_DESCENT: s.strategy = Strategy::GeodesicDescent; break;
    case HC_NEWTON_ACCELERATED: s.strategy = Strategy::NewtonAccelerated; break;
    default: throw Error(ErrorCode::InvalidArgument, "unknown strategy");
  }
  s.multistart = o->multistart;
  s.seed = o->seed;
  return s;
}

hc_status make_weight(hc_weight** out, RadialWeight (*factory)()) {
  return guarded([&] { emit(out, new hc_weight{factory()}); });
}

}  // namespace

extern "C" {

const char* hc_status_name(hc_status status) {
  switch (status) {
    case HC_OK: return "OK";
    case HC_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case HC_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case HC_ERR_POLE_SINGULARITY: return "PoleSingularity";
    case HC_ERR_DOMAIN: return "DomainError";
    case HC_ERR_DEGENERATE_DIRECTION: return "DegenerateDirection";
    case HC_ERR_UNDEFINED_AT_ONE: return "UndefinedAtOne";
    case HC_ERR_NOT_BOUNDARY_COMPATIBLE: return "NotBoundaryCompatible";
    case HC_ERR_EMPTY_MEASURE: return "EmptyMeasure";
    case HC_ERR_ZERO_TOTAL: return "ZeroTotal";
    case HC_ERR_REGION_TOUCHES_BOUNDARY: return "RegionTouchesBoundary";
    case HC_ERR_NONPOSITIVE_MASS: return "NonpositiveMass";
    case HC_ERR_BUSEMANN_SINGULARITY: return "BusemannSingularity";
    case HC_ERR_DIVERGENT_ITERATES: return "DivergentIterates";
    case HC_ERR_UNKNOWN_FIXTURE: return "UnknownFixture";
    case HC_ERR_OUT_OF_RANGE: return "OutOfRange";
    case HC_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* hc_last_error(void) { return g_last_error.c_str(); }

const char* hc_version(void) { return "1.0.0"; }

/* geometry */

hc_status hc_mobius(size_t dim, const double* x, const double* y, double* out) {
  return guarded([&] { store(mobius(point(dim, x), point(dim, y)).coords(), out); });
}

hc_status hc_mobius_inverse(size_t dim, const double* x, const double* y, double* out) {
  return guarded([&] { store(mobius_inverse(point(dim, x), point(dim, y)).coords(), out); });
}

hc_status hc_arclength_s(double r, double* out) {
  return guarded([&] {
    require(out, "null output pointer");
    *out = arclength_s(r);
  });
}

hc_status hc_hyp_distance(size_t dim, const double* x, const double* y, double* out) {
  return guarded([&] {
    require(out, "null output pointer");
    *out = hyp_distance(point(dim, x), point(dim, y));
  });
}

hc_status hc_inverse_exp(size_t dim, const double* x, const double* y, double* out) {
  return guarded([&] { store(inverse_exp(point(dim, x), point(dim, y)), out); });
}

hc_status hc_geodesic_point(size_t dim, const double* base, const double* dir, double t,
                            double* out) {
  return guarded([&] {
    store(geodesic_point(Geodesic::make(point(dim, base), vec(dim, dir)), t).coords(), out);
  });
}

hc_status hc_geodesic_point_at_arclength(size_t dim, const double* base, const double* dir,
                                         double tau, double* out) {
  return guarded([&] {
    store(geodesic_point_at_arclength(Geodesic::make(point(dim, base), vec(dim, dir)), tau)
              .coords(),
          out);
  });
}

hc_status hc_halfspace_contains(size_t dim, const double* p, double t, const double* y,
                                int* out) {
  return guarded([&] {
    require(out, "null output pointer");
    *out = halfspace_contains(halfspace(dim, p, t), point(dim, y)) ? 1 : 0;
  });
}

hc_status hc_reflect(size_t dim, const double* p, double t, const double* y, double* out) {
  return guarded([&] { store(reflect(halfspace(dim, p, t), point(dim, y)).coords(), out); });
}

hc_status hc_fold(size_t dim, const double* p, double t, const double* y, double* out) {
  return guarded([&] { store(fold(halfspace(dim, p, t), point(dim, y)).coords(), out); });
}

/* weights */

hc_status hc_weight_identity(hc_weight** out) { return make_weight(out, RadialWeight::identity); }

hc_status hc_weight_arctanh_power(double p, hc_weight** out) {
  return guarded([&] { emit(out, new hc_weight{RadialWeight::arctanh_power(p)}); });
}

hc_status hc_weight_clamped_arctanh(size_t pieces, const double* upto, const double* slope,
                                    const double* intercept, hc_weight** out) {
  return guarded([&] {
    require(pieces >= 1 && upto && slope && intercept, "clamped_arctanh needs piece arrays");
    std::vector<ArctanhPiece> ps;
    for (size_t i = 0; i < pieces; ++i) ps.push_back({upto[i], slope[i], intercept[i]});
    emit(out, new hc_weight{RadialWeight::clamped_arctanh(std::move(ps))});
  });
}

hc_status hc_weight_min_s_inv_s(hc_weight** out) {
  return make_weight(out, RadialWeight::min_s_inv_s);
}

hc_status hc_weight_clamped_linear(double c, hc_weight** out) {
  return guarded([&] { emit(out, new hc_weight{RadialWeight::clamped_linear(c)}); });
}

hc_status hc_weight_log_damped(hc_weight** out) {
  return make_weight(out, RadialWeight::log_damped);
}

hc_status hc_weight_table(size_t count, const double* r, const double* g,
                          hc_monotonicity declared, int divergent_G, hc_weight** out) {
  return guarded([&] {
    require(r && g, "table needs r and g arrays");
    emit(out, new hc_weight{RadialWeight::table(std::vector<double>(r, r + count),
                                                std::vector<double>(g, g + count),
                                                from_c(declared), divergent_G != 0)});
  });
}

hc_status hc_weight_signed_ball_example(hc_weight** out) {
  return make_weight(out, RadialWeight::signed_ball_example);
}

hc_status hc_weight_scaled(const hc_weight* w, double factor, hc_weight** out) {
  return guarded([&] {
    require(w, "null weight");
    emit(out, new hc_weight{w->w.scaled(factor)});
  });
}

hc_status hc_weight_normalized_for_boundary(const hc_weight* w, hc_weight** out) {
  return guarded([&] {
    require(w, "null weight");
    emit(out, new hc_weight{normalized_for_boundary(w->w)});
  });
}

void hc_weight_free(hc_weight* w) { delete w; }

hc_status hc_weight_monotonicity(const hc_weight* w, hc_monotonicity* out) {
  return guarded([&] {
    require(w && out, "null argument");
    *out = to_c(w->w.monotonicity());
  });
}

hc_status hc_weight_g1(const hc_weight* w, int* has_g1, double* g1) {
  return guarded([&] {
    require(w && has_g1 && g1, "null argument");
    *has_g1 = w->w.g1() ? 1 : 0;
    *g1 = w->w.g1() ? *w->w.g1() : 0.0;
  });
}

hc_status hc_weight_divergent_G(const hc_weight* w, int* out) {
  return guarded([&] {
    require(w && out, "null argument");
    *out = w->w.divergent_G() ? 1 : 0;
  });
}

const char* hc_weight_kind(const hc_weight* w) {
  if (!w) return "";
  thread_local std::string kind;
  kind = w->w.kind();
  return kind.c_str();
}

hc_status hc_eval_g(const hc_weight* w, double r, double* out) {
  return guarded([&] {
    require(w && out, "null argument");
    *out = eval_g(w->w, r);
  });
}

hc_status hc_eval_G(const hc_weight* w, double r, double* out) {
  return guarded([&] {
    require(w && out, "null argument");
    *out = eval_G(w->w, r);
  });
}

hc_status hc_eval_v(const hc_weight* w, size_t dim, const double* y, double* out) {
  return guarded([&] {
    require(w, "null weight");
    store(eval_v(w->w, point(dim, y)), out);
  });
}

/* measures */

hc_status hc_measure_create(size_t dim, hc_measure** out) {
  return guarded([&] { emit(out, new hc_measure{AtomicMeasure(static_cast<int>(dim))}); });
}

void hc_measure_free(hc_measure* m) { delete m; }

hc_status hc_measure_add_atom(hc_measure* m, const double* x, double w) {
  return guarded([&] {
    require(m, "null measure");
    m->m.add(point(static_cast<size_t>(m->m.dim()), x), w);
  });
}

hc_status hc_measure_add_atom_hyperbolic(hc_measure* m, double s, const double* dir, double w) {
  return guarded([&] {
    require(m, "null measure");
    require(std::isfinite(s) && s >= 0, "hyperbolic radius must be finite and >= 0");
    const Vec d = vec(static_cast<size_t>(m->m.dim()), dir);
    require(d.norm() > 0, "direction must be nonzero");
    m->m.add(BallPoint::from_hyperbolic(s, d), w);
  });
}

size_t hc_measure_dim(const hc_measure* m) { return m ? static_cast<size_t>(m->m.dim()) : 0; }

size_t hc_measure_size(const hc_measure* m) { return m ? m->m.size() : 0; }

hc_status hc_measure_atom(const hc_measure* m, size_t i, double* x, double* w, int* on_sphere) {
  return guarded([&] {
    require(m && w, "null argument");
    if (i >= m->m.size()) throw OutOfRange("atom index out of range");
    const Atom& a = m->m.atoms()[i];
    store(a.location.coords(), x);
    *w = a.weight;
    if (on_sphere) *on_sphere = a.location.is_boundary() ? 1 : 0;
  });
}

hc_status hc_measure_validate(const hc_measure* m, hc_validation* out) {
  return guarded([&] {
    require(m && out, "null argument");
    const ValidationReport r = validate(m->m);
    out->total = r.total;
    out->abs_total = r.abs_total;
    out->support = static_cast<hc_support>(r.support);
    out->max_radius = r.max_radius;
    out->boundary_pointmass_ok = r.boundary_pointmass_ok ? 1 : 0;
    out->geodesic_support = static_cast<hc_geodesic_support>(r.geodesic_support);
    out->is_signed = r.is_signed ? 1 : 0;
  });
}

hc_status hc_measure_push_mobius(const hc_measure* m, const double* x, hc_measure** out) {
  return guarded([&] {
    require(m, "null measure");
    const BallPoint c = point(static_cast<size_t>(m->m.dim()), x);
    emit(out, new hc_measure{pushforward(m->m, [&](const BallPoint& y) { return mobius(c, y); })});
  });
}

hc_status hc_measure_push_fold(const hc_measure* m, const double* p, double t,
                               hc_measure** out) {
  return guarded([&] {
    require(m, "null measure");
    const Halfspace h = halfspace(static_cast<size_t>(m->m.dim()), p, t);
    emit(out, new hc_measure{pushforward(m->m, [&](const BallPoint& y) { return fold(h, y); })});
  });
}

namespace {

hc_status quantize(hc_density_fn f, void* user, size_t dim, const Region& region, size_t count,
                   uint64_t seed, hc_measure** out) {
  return guarded([&] {
    require(f != nullptr, "null density callback");
    auto density = [&](const Vec& y) { return f(y.data(), dim, user); };
    emit(out, new hc_measure{quantize_density(density, region, static_cast<int>(dim),
                                              static_cast<int>(count), seed)});
  });
}

}  // namespace

hc_status hc_quantize_ball(hc_density_fn f, void* user, size_t dim, const double* center,
                           double radius, size_t count, uint64_t seed, hc_measure** out) {
  Region region;
  const hc_status s = guarded([&] { region = BallRegion{vec(dim, center), radius}; });
  if (s != HC_OK) return s;
  return quantize(f, user, dim, region, count, seed, out);
}

hc_status hc_quantize_box(hc_density_fn f, void* user, size_t dim, const double* lo,
                          const double* hi, size_t count, uint64_t seed, hc_measure** out) {
  Region region;
  const hc_status s = guarded([&] { region = BoxRegion{vec(dim, lo), vec(dim, hi)}; });
  if (s != HC_OK) return s;
  return quantize(f, user, dim, region, count, seed, out);
}

/* energy */

hc_status hc_context_create(const hc_weight* w, const hc_measure* m, hc_context** out) {
  return guarded([&] {
    require(w && m, "null argument");
    emit(out, new hc_context{EnergyContext(w->w, m->m)});
  });
}

void hc_context_free(hc_context* ctx) { delete ctx; }

size_t hc_context_dim(const hc_context* ctx) {
  return ctx ? static_cast<size_t>(ctx->ctx.dim()) : 0;
}

double hc_context_mass(const hc_context* ctx) { return ctx ? ctx->ctx.mass() : 0.0; }

hc_status hc_field_V(const hc_context* ctx, const double* x, double* out) {
  return guarded([&] {
    require(ctx, "null context");
    store(field_V(ctx->ctx, point(hc_context_dim(ctx), x)), out);
  });
}

hc_status hc_kernel_K(const hc_context* ctx, const double* x, const double* y, double* out) {
  return guarded([&] {
    require(ctx && out, "null argument");
    const size_t n = hc_context_dim(ctx);
    *out = kernel_K(ctx->ctx, point(n, x), point(n, y));
  });
}

hc_status hc_energy(const hc_context* ctx, const double* x, double* out) {
  return guarded([&] {
    require(ctx && out, "null argument");
    *out = renormalized_energy(ctx->ctx, point(hc_context_dim(ctx), x));
  });
}

hc_status hc_energy_gradient(const hc_context* ctx, const double* x, double* out) {
  return guarded([&] {
    require(ctx, "null context");
    store(energy_gradient(ctx->ctx, point(hc_context_dim(ctx), x)), out);
  });
}

/* solver */

void hc_solve_options_default(hc_solve_options* opts) {
  if (!opts) return;
  const SolveOptions d;
  opts->tol_residual = d.tol_residual;
  opts->max_iters = d.max_iters;
  opts->initial = nullptr;
  opts->strategy = HC_NEWTON_ACCELERATED;
  opts->multistart = d.multistart;
  opts->seed = d.seed;
}

const char* hc_hypothesis_class_name(hc_hypothesis_class c) {
  return to_string(static_cast<HypothesisClass>(c));
}

const char* hc_uniqueness_name(hc_uniqueness u) { return to_string(static_cast<Uniqueness>(u)); }

hc_status hc_classify(const hc_context* ctx, hc_hypothesis_class* out) {
  return guarded([&] {
    require(ctx && out, "null argument");
    *out = to_c(classify_hypotheses(ctx->ctx));
  });
}

hc_status hc_solve(const hc_context* ctx, const hc_solve_options* opts, hc_solve_result** out) {
  return guarded([&] {
    require(ctx, "null context");
    emit(out, new hc_solve_result{solve_center(ctx->ctx, options(ctx, opts))});
  });
}

hc_status hc_multistart(const hc_context* ctx, const hc_solve_options* opts, int starts,
                        hc_solve_result** out) {
  return guarded([&] {
    require(ctx, "null context");
    emit(out, new hc_solve_result{multistart_probe(ctx->ctx, options(ctx, opts), starts)});
  });
}

void hc_result_free(hc_solve_result* r) { delete r; }

hc_status hc_result_summary_get(const hc_solve_result* r, hc_result_summary* out) {
  return guarded([&] {
    require(r && out, "null argument");
    const SolveResult& s = r->r;
    out->residual = s.residual;
    out->iterations = s.iterations;
    out->energy = s.energy_at_min;
    out->converged = s.converged ? 1 : 0;
    out->uniqueness = to_c(s.uniqueness);
    out->hypothesis_class = to_c(s.hypothesis_class);
    out->clusters = s.clusters.size();
    out->starts = s.starts;
    out->starts_converged = s.starts_converged;
    out->spread = s.spread;
    out->trace_length = s.trace.size();
  });
}

hc_status hc_result_center(const hc_solve_result* r, double* out) {
  return guarded([&] {
    require(r, "null result");
    store(r->r.x_c.coords(), out);
  });
}

hc_status hc_result_cluster(const hc_solve_result* r, size_t i, double* point_out,
                            int* members) {
  return guarded([&] {
    require(r, "null result");
    if (i >= r->r.clusters.size())
      throw OutOfRange("cluster index out of range");
    store(r->r.clusters[i].representative.coords(), point_out);
    if (members) *members = r->r.clusters[i].members;
  });
}

hc_status hc_result_trace(const hc_solve_result* r, size_t i, double* energy, double* residual,
                          double* step) {
  return guarded([&] {
    require(r, "null result");
    if (i >= r->r.trace.size()) throw OutOfRange("trace index out of range");
    const TraceEntry& t = r->r.trace[i];
    if (energy) *energy = t.energy;
    if (residual) *residual = t.residual;
    if (step) *step = t.step;
  });
}

hc_status hc_continuity_probe(const hc_context* ctx, size_t count,
                              const hc_measure* const* perturbed, const double* sizes,
                              const hc_solve_options* opts, double* displacements,
                              int* converged) {
  return guarded([&] {
    require(ctx && displacements, "null argument");
    require(count == 0 || (perturbed && sizes), "null perturbation arrays");
    std::vector<Perturbation> ps;
    for (size_t i = 0; i < count; ++i) {
      require(perturbed[i] != nullptr, "null perturbed measure");
      ps.push_back({sizes[i], perturbed[i]->m});
    }
    const auto samples = continuity_probe(ctx->ctx, ps, options(ctx, opts));
    for (size_t i = 0; i < samples.size(); ++i) {
      displacements[i] = samples[i].displacement;
      if (converged) converged[i] = samples[i].converged ? 1 : 0;
    }
  });
}

/* oracle */

hc_status hc_oracle_gradient_check(const hc_context* ctx, int samples, uint64_t seed,
                                   hc_scan_report** out) {
  return guarded([&] {
    require(ctx, "null context");
    emit(out, new hc_scan_report{oracle::gradient_check(ctx->ctx, samples, seed)});
  });
}

hc_status hc_oracle_convexity_scan(const hc_context* ctx, int geodesics, int steps,
                                   uint64_t seed, hc_scan_report** out) {
  return guarded([&] {
    require(ctx, "null context");
    emit(out, new hc_scan_report{oracle::convexity_scan(ctx->ctx, geodesics, steps, seed)});
  });
}

hc_status hc_oracle_kernel_linearity(size_t dim, int geodesics, int steps, uint64_t seed,
                                     hc_scan_report** out) {
  return guarded([&] {
    require(dim >= 1, "dimension must be >= 1");
    emit(out, new hc_scan_report{
                  oracle::kernel_linearity_check(static_cast<int>(dim), geodesics, steps, seed)});
  });
}

hc_status hc_oracle_cocycle_check(size_t dim, int samples, uint64_t seed, hc_scan_report** out) {
  return guarded([&] {
    require(dim >= 1, "dimension must be >= 1");
    emit(out, new hc_scan_report{oracle::cocycle_check(static_cast<int>(dim), samples, seed)});
  });
}

hc_status hc_oracle_boundary_continuity(const hc_weight* w, size_t dim, const double* x,
                                        const double* yhat, hc_scan_report** out) {
  return guarded([&] {
    require(w, "null weight");
    emit(out, new hc_scan_report{
                  oracle::boundary_continuity_check(w->w, vec(dim, x), vec(dim, yhat))});
  });
}

hc_status hc_oracle_distance_convexity(size_t dim, int samples, uint64_t seed,
                                       hc_scan_report** out) {
  return guarded([&] {
    require(dim >= 1, "dimension must be >= 1");
    emit(out, new hc_scan_report{
                  oracle::distance_convexity_check(static_cast<int>(dim), samples, seed)});
  });
}

void hc_scan_report_free(hc_scan_report* r) { delete r; }

const char* hc_scan_kind(const hc_scan_report* r) { return r ? oracle::to_string(r->r.kind) : ""; }
double hc_scan_worst_case(const hc_scan_report* r) { return r ? r->r.worst_case : 0.0; }
int hc_scan_samples(const hc_scan_report* r) { return r ? r->r.samples : 0; }
int hc_scan_pass(const hc_scan_report* r) { return r && r->r.pass ? 1 : 0; }
int hc_scan_strict(const hc_scan_report* r) { return r && r->r.strict ? 1 : 0; }
uint64_t hc_scan_seed(const hc_scan_report* r) { return r ? r->r.seed : 0; }
size_t hc_scan_detail_count(const hc_scan_report* r) { return r ? r->r.details.size() : 0; }

const char* hc_scan_detail(const hc_scan_report* r, size_t i) {
  if (!r || i >= r->r.details.size()) return "";
  return r->r.details[i].c_str();
}

size_t hc_scan_metric_count(const hc_scan_report* r) { return r ? r->r.metrics.size() : 0; }

hc_status hc_scan_metric(const hc_scan_report* r, size_t i, const char** name, double* value) {
  return guarded([&] {
    require(r && name && value, "null argument");
    if (i >= r->r.metrics.size()) throw OutOfRange("metric index out of range");
    *name = r->r.metrics[i].first.c_str();
    *value = r->r.metrics[i].second;
  });
}

hc_status hc_oracle_zeros_1d(const hc_context* ctx, int resolution, hc_zero_set** out) {
  return guarded([&] {
    require(ctx, "null context");
    emit(out, new hc_zero_set{1, oracle::brute_force_zeros_1d(ctx->ctx, resolution), {}});
  });
}

hc_status hc_oracle_zeros_2d(const hc_context* ctx, int resolution, hc_zero_set** out) {
  return guarded([&] {
    require(ctx, "null context");
    emit(out, new hc_zero_set{2, {}, oracle::zeros_2d(ctx->ctx, resolution)});
  });
}

void hc_zero_set_free(hc_zero_set* z) { delete z; }

size_t hc_zero_set_size(const hc_zero_set* z) {
  if (!z) return 0;
  return z->dim == 1 ? z->intervals.size() : z->points.size();
}

size_t hc_zero_set_dim(const hc_zero_set* z) { return z ? z->dim : 0; }

hc_status hc_zero_set_get(const hc_zero_set* z, size_t i, double* lo, double* hi, int* flat) {
  return guarded([&] {
    require(z && lo, "null argument");
    if (i >= hc_zero_set_size(z)) throw OutOfRange("zero index out of range");
    if (z->dim == 1) {
      *lo = z->intervals[i].lo;
      if (hi) *hi = z->intervals[i].hi;
      if (flat) *flat = z->intervals[i].kind == oracle::ZeroKind::Flat ? 1 : 0;
    } else {
      store(z->points[i], lo);
      if (flat) *flat = 0;
    }
  });
}

/* built-in examples */

size_t hc_fixture_count(void) { return fixture_names().size(); }

const char* hc_fixture_name(size_t i) {
  static const std::vector<std::string> names = fixture_names();
  return i < names.size() ? names[i].c_str() : "";
}

hc_status hc_fixture_load(const char* name, hc_weight** weight, hc_measure** measure) {
  return guarded([&] {
    require(name && weight && measure, "null argument");
    Fixture f = load_fixture(name);
    auto* w = new hc_weight{f.weight};
    *measure = new hc_measure{std::move(f.measure)};
    *weight = w;
  });
}

hc_status hc_reproduce(const char* name, hc_reproduce_report** out) {
  return guarded([&] {
    require(name, "null fixture name");
    emit(out, new hc_reproduce_report{reproduce(name)});
  });
}

void hc_reproduce_report_free(hc_reproduce_report* r) { delete r; }

int hc_reproduce_pass(const hc_reproduce_report* r) { return r && r->r.pass ? 1 : 0; }

size_t hc_reproduce_check_count(const hc_reproduce_report* r) {
  return r ? r->r.checks.size() : 0;
}

hc_status hc_reproduce_check(const hc_reproduce_report* r, size_t i, const char** label,
                             double* value, double* expected, double* tolerance, int* pass) {
  return guarded([&] {
    require(r, "null report");
    if (i >= r->r.checks.size()) throw OutOfRange("check index out of range");
    const Check& c = r->r.checks[i];
    if (label) *label = c.label.c_str();
    if (value) *value = c.value;
    if (expected) *expected = c.expected;
    if (tolerance) *tolerance = c.tolerance;
    if (pass) *pass = c.pass ? 1 : 0;
  });
}

}  // extern "C"
