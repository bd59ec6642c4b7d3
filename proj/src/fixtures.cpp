#include "hypcenter/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypcenter/energy.hpp"
#include "hypcenter/error.hpp"
#include "hypcenter/tolerances.hpp"
#include "hypcenter/oracle.hpp"
#include "hypcenter/solver.hpp"

namespace hypcenter {

namespace {

const Vec& e1() {
  static const Vec v = Vec::Ones(1);
  return v;
}

BallPoint on_line(double s) {
  if (s == 0.0) return BallPoint::origin(1);
  return BallPoint::from_hyperbolic(std::abs(s), s > 0 ? e1() : Vec(-e1()));
}

BallPoint on_circle(double angle) {
  Vec y(2);
  y << std::cos(angle), std::sin(angle);
  return BallPoint::make_unchecked(y / y.norm(), 0.0, Locus::Boundary);
}

Check within(std::string label, double value, double expected, double tol) {
  return {std::move(label), value, expected, tol, std::abs(value - expected) <= tol};
}

Check below(std::string label, double value, double bound) {
  return {std::move(label), value, 0.0, bound, std::abs(value) < bound};
}

Check holds(std::string label, bool ok) {
  return {std::move(label), ok ? 1.0 : 0.0, 1.0, 0.0, ok};
}

double V1(const EnergyContext& ctx, double s) { return field_V(ctx, on_line(s))[0]; }

std::vector<Check> check_clamped_flat(const Fixture& f) {
  const EnergyContext ctx(f.weight, f.measure);
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) worst = std::max(worst, std::abs(V1(ctx, -0.25 + 0.005 * i)));
  std::vector<Check> out;
  out.push_back(below("max |V| for |s| <= 0.25", worst, 1e-13));
  const SolveResult r = solve_center(ctx, SolveOptions{});
  out.push_back(holds("solver reports Ambiguous", r.uniqueness == Uniqueness::Ambiguous));
  return out;
}

std::vector<Check> check_min_s_inv_s(const Fixture& f) {
  const EnergyContext ctx(f.weight, f.measure);
  std::vector<Check> out;
  out.push_back(within("V(tanh 1)", V1(ctx, 1.0), -2.0 / 3.0, 1e-12));
  out.push_back(within("V(tanh 2)", V1(ctx, 2.0), 0.25, 1e-12));

  const auto zeros = oracle::brute_force_zeros_1d(ctx, 1200);
  std::vector<oracle::ZeroInterval> right, left;
  for (const auto& z : zeros) (z.hi >= 0.0 ? right : left).push_back(z);
  out.push_back(within("zero clusters on x >= 0", static_cast<double>(right.size()), 2.0, 0.0));
  if (right.size() == 2) {
    out.push_back(below("zero at origin", std::max(std::abs(right[0].lo), std::abs(right[0].hi)),
                        1e-10));
    out.push_back(holds("second zero in (tanh 1, tanh 2)",
                        right[1].lo > std::tanh(1.0) && right[1].hi < std::tanh(2.0)));
  }
  bool mirrored = left.size() + 1 == right.size();
  for (size_t i = 0; mirrored && i < left.size(); ++i)
    mirrored = std::abs(left[i].lo + right[right.size() - 1 - i].hi) < 1e-10;
  out.push_back(holds("zero set is symmetric", mirrored));
  return out;
}

std::vector<Check> check_escaping_mass(const Fixture& f) {
  std::vector<Check> out;
  std::vector<Perturbation> family;
  for (int k = 2; k <= 3; ++k) {
    const EnergyContext ctx(f.weight, escaping_mass_measure(k));
    out.push_back(below("|V(-tanh " + std::to_string(k) + ")|",
                        std::abs(V1(ctx, -static_cast<double>(k))), 1e-10));
    family.push_back({1.0 / k, escaping_mass_measure(k)});
  }
  AtomicMeasure point(1);
  point.add(BallPoint::origin(1), 1.0);
  const EnergyContext base(f.weight, point);
  const auto samples = continuity_probe(base, family, SolveOptions{});
  bool ok = samples.size() == 2 && samples[0].converged && samples[1].converged;
  if (ok) {
    out.push_back(within("|x_c(mu_2)| hyperbolic", samples[0].displacement, 2.0, 1e-9));
    out.push_back(within("|x_c(mu_3)| hyperbolic", samples[1].displacement, 3.0, 1e-9));
    ok = samples[1].displacement > samples[0].displacement && samples[1].size < samples[0].size;
  }
  out.push_back(holds("displacement grows while escaping mass shrinks", ok));
  return out;
}

std::vector<Check> check_signed_ball(const Fixture& f) {
  const EnergyContext ctx(f.weight, f.measure);
  std::vector<Check> out;
  out.push_back(below("|V(0)|", std::abs(V1(ctx, 0.0)), 1e-12));
  out.push_back(below("|V(tanh 1)|", std::abs(V1(ctx, 1.0)), 1e-12));
  const SolveResult r = multistart_probe(ctx, SolveOptions{}, tol::probe_starts_default);
  out.push_back(holds("multistart reports Ambiguous", r.uniqueness == Uniqueness::Ambiguous));
  return out;
}

std::vector<Check> check_signed_circle(const Fixture& f) {
  const EnergyContext ctx(f.weight, f.measure);
  std::vector<Check> out;
  const Vec v0 = field_V(ctx, BallPoint::origin(2));
  out.push_back(within("V(0) first component", v0[0], -1.0, 1e-12));
  out.push_back(within("V(0) second component", v0[1], 0.0, 1e-12));
  int changes = 0;
  double prev = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double s = -5.0 + 0.025 * i;
    Vec x = Vec::Zero(2);
    x[0] = std::tanh(s);
    const double radial = field_V(ctx, BallPoint::from_coords(x))[0];
    if (i > 0 && (radial < 0) != (prev < 0)) ++changes;
    prev = radial;
  }
  out.push_back({"sign changes of V_1 on the real axis", static_cast<double>(changes), 2.0, 0.0,
                 changes >= 2});
  return out;
}

std::vector<Check> check_no_existence(const Fixture& f) {
  const EnergyContext ctx(f.weight, f.measure);
  std::vector<Check> out;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = -0.99 + 1.98 * i / 99.0;
    worst = std::max(worst, std::abs(field_V(ctx, BallPoint::from_coords({x}))[0] - 2.0));
  }
  out.push_back(below("max |V(x) - 2| over 100 points", worst, 1e-12));
  bool divergent = false;
  try {
    solve_center(ctx, SolveOptions{});
  } catch (const Error& e) {
    divergent = e.code() == ErrorCode::DivergentIterates;
  }
  out.push_back(holds("solver raises DivergentIterates", divergent));
  return out;
}

}  // namespace

AtomicMeasure escaping_mass_measure(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  AtomicMeasure mu(1);
  mu.add(BallPoint::origin(1), 1.0 - 1.0 / k);
  mu.add(on_line(static_cast<double>(k) * k), 1.0 / k);
  return mu;
}

std::vector<std::string> fixture_names() {
  return {"remark3", "remark4", "remark5", "signed-ball", "signed-circle", "no-existence"};
}

Fixture load_fixture(const std::string& name) {
  if (name == "remark3") {
    AtomicMeasure mu(1);
    mu.add(BallPoint::from_coords({-0.8}), 1.0);
    mu.add(BallPoint::from_coords({0.8}), 1.0);
    return {name, "g = min(r, 1/2), unit atoms at -0.8 and 0.8: V vanishes on an interval",
            RadialWeight::clamped_linear(0.5), mu};
  }
  if (name == "remark4") {
    AtomicMeasure mu(1);
    mu.add(on_line(2.0), 1.0);
    mu.add(on_line(-2.0), 1.0);
    return {name, "g = min(s, 1/s), unit atoms at +-tanh 2: several isolated zeros",
            RadialWeight::min_s_inv_s(), mu};
  }
  if (name == "remark5") {
    return {name, "g = arctanh r, mass 1/k escaping to tanh k^2: the center runs off",
            RadialWeight::arctanh_power(2.0), escaping_mass_measure(2)};
  }
  if (name == "signed-ball") {
    AtomicMeasure mu(1);
    mu.add(on_line(-1.0), -1.0);
    mu.add(BallPoint::origin(1), 3.0);
    mu.add(on_line(1.0), -1.0);
    return {name, "piecewise g, atoms -1, 3, -1 at -tanh 1, 0, tanh 1: V = 0 on an interval",
            RadialWeight::signed_ball_example(), mu};
  }
  if (name == "signed-circle") {
    AtomicMeasure mu(2);
    const double pi = std::numbers::pi;
    mu.add(on_circle(0.0), 1.0);
    mu.add(on_circle(2.0 * pi / 3.0), 1.0);
    mu.add(on_circle(-2.0 * pi / 3.0), 1.0);
    mu.add(on_circle(pi / 3.0), -1.0);
    mu.add(on_circle(-pi / 3.0), -1.0);
    return {name, "g = r, signed atoms on the circle: V(0) = (-1, 0) and two real zeros",
            RadialWeight::identity(), mu};
  }
  if (name == "no-existence") {
    AtomicMeasure mu(1);
    mu.add(BallPoint::from_coords({1.0}), 1.0);
    mu.add(BallPoint::from_coords({-1.0}), -1.0);
    return {name, "g = r, delta_1 - delta_-1: V = 2 everywhere", RadialWeight::identity(), mu};
  }
  throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + name + "'");
}

ReproduceReport reproduce(const std::string& name) {
  const Fixture f = load_fixture(name);
  ReproduceReport rep{name, {}, true};
  if (name == "remark3") rep.checks = check_clamped_flat(f);
  else if (name == "remark4") rep.checks = check_min_s_inv_s(f);
  else if (name == "remark5") rep.checks = check_escaping_mass(f);
  else if (name == "signed-ball") rep.checks = check_signed_ball(f);
  else if (name == "signed-circle") rep.checks = check_signed_circle(f);
  else rep.checks = check_no_existence(f);
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace hypcenter
