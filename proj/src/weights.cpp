#include "hypcenter/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "hypcenter/error.hpp"
#include "hypcenter/tolerances.hpp"

namespace hypcenter {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKnotSpacing = 0.25;
constexpr int kKnots = 160;  // cumulative table covers s in [0, 40]

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log_cosh(double s) {
  s = std::abs(s);
  return s + std::log1p(std::exp(-2.0 * s)) - std::log(2.0);
}

double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// Monotone cubic Hermite slopes (Fritsch-Carlson with the usual
// shape-preserving end conditions).
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const size_t n = x.size();
  std::vector<double> h(n - 1), m(n - 1), d(n, 0.0);
  for (size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    m[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    d[0] = d[1] = m[0];
    return d;
  }
  for (size_t k = 1; k + 1 < n; ++k) {
    if (m[k - 1] * m[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
  }
  auto edge = [](double h0, double h1, double m0, double m1) {
    double e = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (std::signbit(e) != std::signbit(m0) || m0 == 0.0) return 0.0;
    if (std::signbit(m0) != std::signbit(m1) && std::abs(e) > 3.0 * std::abs(m0))
      return 3.0 * m0;
    return e;
  };
  d[0] = edge(h[0], h[1], m[0], m[1]);
  d[n - 1] = edge(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
  return d;
}

double pchip_eval(const TableProfile& t, double r) {
  const auto& x = t.r;
  if (r <= x.front()) return t.g.front();
  if (r >= x.back()) return t.g.back();
  const size_t k =
      static_cast<size_t>(std::upper_bound(x.begin(), x.end(), r) - x.begin()) - 1;
  const double h = x[k + 1] - x[k];
  const double u = (r - x[k]) / h;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * t.g[k] + (u3 - 2 * u2 + u) * h * t.slopes[k] +
         (-2 * u3 + 3 * u2) * t.g[k + 1] + (u3 - u2) * h * t.slopes[k + 1];
}

// Fixed 20-point Gauss-Legendre on pieces of length <= kKnotSpacing, split at
// the breaks where the integrand is only C1.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breaks) {
  if (b <= a) return 0.0;
  std::vector<double> pts = {a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  double total = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const int pieces = std::max(1, static_cast<int>(std::ceil((pts[i + 1] - pts[i]) / kKnotSpacing)));
    const double h = (pts[i + 1] - pts[i]) / pieces;
    for (int k = 0; k < pieces; ++k) {
      const double lo = pts[i] + k * h;
      const double hi = k + 1 == pieces ? pts[i + 1] : lo + h;
      total += boost::math::quadrature::gauss<double, 20>::integrate(f, lo, hi);
    }
  }
  return total;
}

}  // namespace

struct RadialWeight::Cumulative {
  std::vector<double> values;  // G~ at s = j * kKnotSpacing, unscaled
  std::vector<double> breaks;  // table nodes in s
};

const char* to_string(Monotonicity m) noexcept {
  switch (m) {
    case Monotonicity::StrictlyIncreasing: return "StrictlyIncreasing";
    case Monotonicity::Increasing: return "Increasing";
    case Monotonicity::None: return "None";
  }
  return "None";
}

RadialWeight RadialWeight::identity() {
  RadialWeight w;
  w.profile_ = IdentityProfile{};
  w.g1_ = 1.0;
  w.finish(Monotonicity::StrictlyIncreasing, true);
  return w;
}

RadialWeight RadialWeight::arctanh_power(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw Error(ErrorCode::InvalidArgument,
                "arctanh_power requires p > 1 (g = s^(p-1) must vanish at 0)");
  RadialWeight w;
  w.profile_ = ArctanhPowerProfile{p};
  w.finish(Monotonicity::StrictlyIncreasing, true);
  return w;
}

RadialWeight RadialWeight::clamped_arctanh(std::vector<ArctanhPiece> pieces) {
  if (pieces.empty())
    throw Error(ErrorCode::InvalidArgument, "clamped_arctanh needs at least one piece");
  pieces.back().upto_s = kInf;
  double prev = 0.0;
  for (size_t k = 0; k < pieces.size(); ++k) {
    const auto& pc = pieces[k];
    if (!std::isfinite(pc.slope) || !std::isfinite(pc.intercept))
      throw Error(ErrorCode::InvalidArgument, "clamped_arctanh piece is not finite");
    if (!(pc.upto_s > prev))
      throw Error(ErrorCode::InvalidArgument,
                  "clamped_arctanh breakpoints must be increasing and positive");
    if (k > 0) {
      const auto& before = pieces[k - 1];
      const double left = before.slope * prev + before.intercept;
      const double right = pc.slope * prev + pc.intercept;
      if (std::abs(left - right) > 1e-12 * std::max(1.0, std::abs(left)))
        throw Error(ErrorCode::InvalidArgument,
                    "clamped_arctanh pieces must join continuously");
    }
    prev = pc.upto_s;
  }
  if (pieces.front().intercept != 0.0)
    throw Error(ErrorCode::InvalidArgument, "clamped_arctanh must satisfy g(0) = 0");

  RadialWeight w;
  const auto& last = pieces.back();
  bool all_pos = true, all_nonneg = true;
  for (const auto& pc : pieces) {
    all_pos = all_pos && pc.slope > 0;
    all_nonneg = all_nonneg && pc.slope >= 0;
  }
  if (last.slope == 0.0) w.g1_ = last.intercept;
  const bool divergent = last.slope > 0 || (last.slope == 0.0 && last.intercept > 0);
  const Monotonicity m = all_pos      ? Monotonicity::StrictlyIncreasing
                         : all_nonneg ? Monotonicity::Increasing
                                      : Monotonicity::None;
  w.profile_ = ClampedArctanhProfile{std::move(pieces)};
  w.finish(m, divergent);
  return w;
}

RadialWeight RadialWeight::signed_ball_example() {
  return clamped_arctanh({{1.0, 1.0, 0.0}, {2.0, 2.0, -1.0}, {kInf, 0.0, 3.0}});
}

RadialWeight RadialWeight::min_s_inv_s() {
  RadialWeight w;
  w.profile_ = MinSInvSProfile{};
  w.g1_ = 0.0;
  w.finish(Monotonicity::None, true);
  return w;
}

RadialWeight RadialWeight::clamped_linear(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorCode::InvalidArgument, "clamped_linear requires c > 0");
  RadialWeight w;
  w.profile_ = ClampedLinearProfile{c};
  w.g1_ = std::min(c, 1.0);
  w.finish(c >= 1.0 ? Monotonicity::StrictlyIncreasing : Monotonicity::Increasing,
           true);
  return w;
}

RadialWeight RadialWeight::log_damped() {
  RadialWeight w;
  w.profile_ = LogDampedProfile{};
  w.g1_ = 0.0;
  w.finish(Monotonicity::None, true);
  return w;
}

RadialWeight RadialWeight::table(std::vector<double> r, std::vector<double> g,
                                 Monotonicity declared, bool divergent_G) {
  if (r.size() != g.size() || r.size() < 2)
    throw Error(ErrorCode::InvalidArgument,
                "table weight needs matching r and g arrays of length >= 2");
  if (r.front() != 0.0 || r.back() != 1.0)
    throw Error(ErrorCode::InvalidArgument, "table weight must span r = 0 .. 1");
  for (size_t i = 0; i + 1 < r.size(); ++i)
    if (!(r[i + 1] > r[i]))
      throw Error(ErrorCode::InvalidArgument, "table r values must increase strictly");
  for (double v : g)
    if (!std::isfinite(v))
      throw Error(ErrorCode::InvalidArgument, "table g values must be finite");
  RadialWeight w;
  TableProfile t{std::move(r), std::move(g), {}};
  t.slopes = pchip_slopes(t.r, t.g);
  w.g1_ = t.g.back();
  w.profile_ = std::move(t);
  w.finish(declared, divergent_G);
  return w;
}

void RadialWeight::finish(Monotonicity declared, bool divergent_G) {
  divergent_G_ = divergent_G;
  monotonicity_ = declared;

  if (std::holds_alternative<LogDampedProfile>(profile_) ||
      std::holds_alternative<TableProfile>(profile_)) {
    auto cum = std::make_shared<Cumulative>();
    if (const auto* t = std::get_if<TableProfile>(&profile_))
      for (size_t k = 1; k + 1 < t->r.size(); ++k) cum->breaks.push_back(std::atanh(t->r[k]));
    cum->values.resize(kKnots + 1, 0.0);
    auto f = [this](double s) { return raw_g_of_s(s); };
    for (int j = 1; j <= kKnots; ++j)
      cum->values[j] = cum->values[j - 1] +
                       integrate(f, (j - 1) * kKnotSpacing, j * kKnotSpacing, cum->breaks);
    cumulative_ = std::move(cum);
  }

  if (std::abs(raw_g_of_r(0.0)) > 1e-14)
    throw Error(ErrorCode::InvalidArgument, "radial weight must satisfy g(0) = 0");
  if (g1_ && *g1_ > 0 && !divergent_G_)
    throw Error(ErrorCode::InvalidArgument,
                "a weight with g(1) > 0 always has a divergent G");

  const int n = tol::monotonicity_grid;
  double prev = raw_g_of_r(0.0);
  bool positive = true;
  for (int i = 1; i <= n; ++i) {
    const double r = static_cast<double>(i) / n;
    double cur;
    if (i == n) {
      if (!g1_) break;
      cur = *g1_;
    } else {
      cur = raw_g_of_r(r);
    }
    positive = positive && cur > 0.0;
    if (declared == Monotonicity::StrictlyIncreasing && !(cur > prev))
      throw Error(ErrorCode::InvalidArgument,
                  "declared strictly increasing weight decreases or stalls near r = " +
                      std::to_string(r));
    if (declared == Monotonicity::Increasing && !(cur >= prev))
      throw Error(ErrorCode::InvalidArgument,
                  "declared increasing weight decreases near r = " + std::to_string(r));
    prev = cur;
  }
  positive_ = positive;
}

RadialWeight RadialWeight::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw Error(ErrorCode::InvalidArgument, "weight scale factor must be positive");
  RadialWeight w = *this;
  w.scale_ *= factor;
  if (w.g1_) *w.g1_ *= factor;
  return w;
}

std::string RadialWeight::kind() const {
  return std::visit(overloaded{
                        [](const IdentityProfile&) { return "identity"; },
                        [](const ArctanhPowerProfile&) { return "arctanh_power"; },
                        [](const ClampedArctanhProfile&) { return "clamped_arctanh"; },
                        [](const MinSInvSProfile&) { return "min_s_inv_s"; },
                        [](const ClampedLinearProfile&) { return "clamped_linear"; },
                        [](const LogDampedProfile&) { return "log_damped"; },
                        [](const TableProfile&) { return "table"; },
                    },
                    profile_);
}

double RadialWeight::raw_g_of_r(double r) const {
  return std::visit(
      overloaded{
          [&](const IdentityProfile&) { return r; },
          [&](const ArctanhPowerProfile& p) { return std::pow(std::atanh(r), p.p - 1.0); },
          [&](const ClampedArctanhProfile&) { return raw_g_of_s(std::atanh(r)); },
          [&](const MinSInvSProfile&) { return raw_g_of_s(std::atanh(r)); },
          [&](const ClampedLinearProfile& p) { return std::min(r, p.c); },
          [&](const LogDampedProfile&) { return r / std::log(2.0 / (1.0 - r)); },
          [&](const TableProfile& t) { return pchip_eval(t, r); },
      },
      profile_);
}

double RadialWeight::raw_g_of_s(double s) const {
  return std::visit(
      overloaded{
          [&](const IdentityProfile&) { return std::tanh(s); },
          [&](const ArctanhPowerProfile& p) { return std::pow(s, p.p - 1.0); },
          [&](const ClampedArctanhProfile& p) {
            for (const auto& pc : p.pieces)
              if (s <= pc.upto_s) return pc.slope * s + pc.intercept;
            return p.pieces.back().slope * s + p.pieces.back().intercept;
          },
          [&](const MinSInvSProfile&) { return s <= 1.0 ? s : 1.0 / s; },
          [&](const ClampedLinearProfile& p) { return std::min(std::tanh(s), p.c); },
          [&](const LogDampedProfile&) {
            return std::isinf(s) ? 0.0 : std::tanh(s) / softplus(2.0 * s);
          },
          [&](const TableProfile& t) { return pchip_eval(t, std::tanh(s)); },
      },
      profile_);
}

double RadialWeight::quadrature_G(double s) const {
  const auto& cum = cumulative_->values;
  auto f = [this](double x) { return raw_g_of_s(x); };
  const double top = kKnots * kKnotSpacing;
  if (s >= top) {
    // tanh s == 1 in double here: g~ is 1/(2s) for log_damped and g(1) for tables
    if (std::holds_alternative<LogDampedProfile>(profile_))
      return cum.back() + 0.5 * std::log(s / top);
    return cum.back() + raw_g_of_s(top) * (s - top);
  }
  const int j = static_cast<int>(s / kKnotSpacing);
  return cum[j] + integrate(f, j * kKnotSpacing, s, cumulative_->breaks);
}

double RadialWeight::raw_G_of_s(double s) const {
  return std::visit(
      overloaded{
          [&](const IdentityProfile&) { return log_cosh(s); },
          [&](const ArctanhPowerProfile& p) { return std::pow(s, p.p) / p.p; },
          [&](const ClampedArctanhProfile& p) {
            double acc = 0.0, lo = 0.0;
            for (const auto& pc : p.pieces) {
              const double hi = std::min(s, pc.upto_s);
              acc += 0.5 * pc.slope * (hi * hi - lo * lo) + pc.intercept * (hi - lo);
              if (s <= pc.upto_s) break;
              lo = pc.upto_s;
            }
            return acc;
          },
          [&](const MinSInvSProfile&) {
            return s <= 1.0 ? 0.5 * s * s : 0.5 + std::log(s);
          },
          [&](const ClampedLinearProfile& p) {
            if (p.c >= 1.0) return log_cosh(s);
            const double sc = std::atanh(p.c);
            return s <= sc ? log_cosh(s) : log_cosh(sc) + p.c * (s - sc);
          },
          [&](const LogDampedProfile&) { return quadrature_G(s); },
          [&](const TableProfile&) { return quadrature_G(s); },
      },
      profile_);
}

double RadialWeight::g_of_r(double r) const { return scale_ * raw_g_of_r(r); }

double RadialWeight::g_of_s(double s) const {
  if (std::isinf(s)) {
    if (!g1_) throw Error(ErrorCode::UndefinedAtOne, "g(1) is undefined for this weight");
    return *g1_;
  }
  return scale_ * raw_g_of_s(s);
}

double RadialWeight::G_of_s(double s) const {
  if (!(s >= 0.0) || std::isinf(s))
    throw Error(ErrorCode::DomainError, "G~(s) requires finite s >= 0");
  return scale_ * raw_G_of_s(s);
}

double eval_g(const RadialWeight& w, double r) {
  if (!(r >= 0.0 && r <= 1.0))
    throw Error(ErrorCode::DomainError, "eval_g requires 0 <= r <= 1");
  if (r == 1.0) {
    if (!w.g1()) throw Error(ErrorCode::UndefinedAtOne, "g(1) is undefined for this weight");
    return *w.g1();
  }
  return w.g_of_r(r);
}

Vec eval_v(const RadialWeight& w, const BallPoint& y) {
  if (y.is_boundary()) {
    if (!w.g1()) throw Error(ErrorCode::UndefinedAtOne, "g(1) is undefined for this weight");
    return *w.g1() * y.coords();
  }
  const double n = y.coords().norm();
  if (n == 0.0) return Vec::Zero(y.dim());
  return w.g_of_s(y.hyperbolic_radius()) * (y.coords() / n);
}

double eval_G(const RadialWeight& w, double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw Error(ErrorCode::DomainError, "eval_G requires 0 <= r < 1");
  return w.G_of_s(std::atanh(r));
}

RadialWeight normalized_for_boundary(const RadialWeight& w) {
  if (!w.g1() || !(*w.g1() > 0.0))
    throw Error(ErrorCode::NotBoundaryCompatible,
                "boundary measures need a weight with finite g(1) > 0");
  return w.scaled(1.0 / *w.g1());
}

}  // namespace hypcenter
