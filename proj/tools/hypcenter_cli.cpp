// Command-line front end over the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypcenter/hypcenter.h"
#include "json.hpp"

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kAmbiguous = 2, kDivergent = 3, kFailed = 4 };

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  hc_status status;
  ApiError(hc_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(hc_status s, const char* where) {
  if (s != HC_OK)
    throw ApiError(s, std::string(where) + ": " + hc_status_name(s) + ": " + hc_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using WeightPtr = std::unique_ptr<hc_weight, Deleter<hc_weight, hc_weight_free>>;
using MeasurePtr = std::unique_ptr<hc_measure, Deleter<hc_measure, hc_measure_free>>;
using ContextPtr = std::unique_ptr<hc_context, Deleter<hc_context, hc_context_free>>;
using ResultPtr = std::unique_ptr<hc_solve_result, Deleter<hc_solve_result, hc_result_free>>;
using ScanPtr = std::unique_ptr<hc_scan_report, Deleter<hc_scan_report, hc_scan_report_free>>;
using ReproPtr =
    std::unique_ptr<hc_reproduce_report, Deleter<hc_reproduce_report, hc_reproduce_report_free>>;

// Minimal JSON emitter: keys come out in call order, floats as %.17g.
class Writer {
 public:
  std::string str() const { return out_.str() + "\n"; }

  Writer& begin_object() { return open('{'); }
  Writer& end_object() { return close('}'); }
  Writer& begin_array() { return open('['); }
  Writer& end_array() { return close(']'); }

  Writer& key(const std::string& k) {
    separator();
    string_literal(k);
    out_ << ": ";
    pending_key_ = true;
    return *this;
  }

  Writer& value(double v) {
    item();
    if (!std::isfinite(v)) {
      out_ << "null";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out_ << buf;
    }
    return *this;
  }
  Writer& value(int v) {
    item();
    out_ << v;
    return *this;
  }
  Writer& value(uint64_t v) {
    item();
    out_ << v;
    return *this;
  }
  Writer& value(bool v) {
    item();
    out_ << (v ? "true" : "false");
    return *this;
  }
  Writer& value(const std::string& v) {
    item();
    string_literal(v);
    return *this;
  }
  Writer& value(const char* v) { return value(std::string(v)); }
  Writer& value(const std::vector<double>& v) {
    item();
    out_ << '[';
    for (size_t i = 0; i < v.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      out_ << (i ? ", " : "") << (std::isfinite(v[i]) ? buf : "null");
    }
    out_ << ']';
    return *this;
  }

  template <class T>
  Writer& field(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }

 private:
  Writer& open(char c) {
    item();
    out_ << c;
    first_.push_back(true);
    return *this;
  }
  Writer& close(char c) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    out_ << c;
    return *this;
  }
  void separator() {
    if (first_.empty()) return;
    if (!first_.back()) out_ << ',';
    first_.back() = false;
    newline();
  }
  void item() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    separator();
  }
  void newline() { out_ << '\n' << std::string(2 * first_.size(), ' '); }
  void string_literal(const std::string& s) {
    out_ << '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ << "\\\""; break;
        case '\\': out_ << "\\\\"; break;
        case '\n': out_ << "\\n"; break;
        case '\t': out_ << "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ << buf;
          } else {
            out_ << c;
          }
      }
    }
    out_ << '"';
  }

  std::ostringstream out_;
  std::vector<bool> first_;
  bool pending_key_ = false;
};

struct Flags {
  std::string input;
  std::string output;
  std::optional<uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> max_iters;
  std::optional<std::string> strategy;
  std::optional<int> multistart;
  std::string fixture;
};

// ---- input ---------------------------------------------------------------

json read_input(const std::string& path) {
  if (path.empty()) throw SchemaError("--input is required");
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open input file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw SchemaError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of numbers");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(number(e, what));
  return v;
}

std::vector<double> vector_of(const json& j, size_t dim, const char* what) {
  auto v = numbers(j, what);
  if (v.size() != dim)
    throw SchemaError(std::string(what) + " has length " + std::to_string(v.size()) +
                      ", expected " + std::to_string(dim));
  return v;
}

size_t dimension(const json& doc) {
  if (!doc.is_object()) throw SchemaError("input must be a JSON object");
  if (!doc.contains("dimension")) throw SchemaError("missing \"dimension\"");
  const json& d = doc["dimension"];
  if (!d.is_number_integer() || d.get<long long>() < 1)
    throw SchemaError("\"dimension\" must be a positive integer");
  return d.get<size_t>();
}

MeasurePtr parse_measure(const json& doc, size_t dim) {
  if (!doc.contains("atoms") || !doc["atoms"].is_array())
    throw SchemaError("missing \"atoms\" array");
  hc_measure* raw = nullptr;
  check(hc_measure_create(dim, &raw), "measure");
  MeasurePtr m(raw);
  for (const auto& a : doc["atoms"]) {
    if (!a.is_object() || !a.contains("x") || !a.contains("w"))
      throw SchemaError("each atom needs \"x\" and \"w\"");
    const auto x = vector_of(a["x"], dim, "atom x");
    const double w = number(a["w"], "atom w");
    const hc_status s = hc_measure_add_atom(m.get(), x.data(), w);
    if (s != HC_OK) throw SchemaError(std::string("invalid atom: ") + hc_last_error());
  }
  if (hc_measure_size(m.get()) == 0) throw SchemaError("\"atoms\" is empty");
  return m;
}

const json& params_of(const json& w) {
  static const json empty = json::object();
  if (!w.contains("params")) return empty;
  if (!w["params"].is_object()) throw SchemaError("weight \"params\" must be an object");
  return w["params"];
}

double param(const json& p, const char* name, std::optional<double> fallback = std::nullopt) {
  if (!p.contains(name)) {
    if (fallback) return *fallback;
    throw SchemaError(std::string("weight param \"") + name + "\" is required");
  }
  return number(p[name], name);
}

hc_monotonicity monotonicity_of(const std::string& s) {
  if (s == "strictly_increasing") return HC_STRICTLY_INCREASING;
  if (s == "increasing") return HC_INCREASING;
  if (s == "none") return HC_NOT_MONOTONE;
  throw SchemaError("unknown monotonicity \"" + s + "\"");
}

WeightPtr parse_weight(const json& doc) {
  if (!doc.contains("weight") || !doc["weight"].is_object())
    throw SchemaError("missing \"weight\" object");
  const json& w = doc["weight"];
  if (!w.contains("kind") || !w["kind"].is_string())
    throw SchemaError("weight needs a string \"kind\"");
  const std::string kind = w["kind"];
  const json& p = params_of(w);
  hc_weight* raw = nullptr;
  hc_status s = HC_OK;
  if (kind == "identity") {
    s = hc_weight_identity(&raw);
  } else if (kind == "arctanh_power") {
    s = hc_weight_arctanh_power(param(p, "p", 2.0), &raw);
  } else if (kind == "clamped_arctanh") {
    if (!p.contains("pieces") || !p["pieces"].is_array())
      throw SchemaError("clamped_arctanh needs a \"pieces\" array");
    std::vector<double> upto, slope, intercept;
    for (const auto& piece : p["pieces"]) {
      if (!piece.is_object()) throw SchemaError("each piece must be an object");
      upto.push_back(piece.contains("upto") && !piece["upto"].is_null()
                         ? number(piece["upto"], "upto")
                         : INFINITY);
      slope.push_back(param(piece, "slope"));
      intercept.push_back(param(piece, "intercept"));
    }
    s = hc_weight_clamped_arctanh(upto.size(), upto.data(), slope.data(), intercept.data(), &raw);
  } else if (kind == "min_s_inv_s") {
    s = hc_weight_min_s_inv_s(&raw);
  } else if (kind == "clamped_linear") {
    s = hc_weight_clamped_linear(param(p, "c", 0.5), &raw);
  } else if (kind == "log_damped") {
    s = hc_weight_log_damped(&raw);
  } else if (kind == "table") {
    if (!p.contains("r") || !p.contains("g")) throw SchemaError("table needs \"r\" and \"g\"");
    const auto r = numbers(p["r"], "table r");
    const auto g = numbers(p["g"], "table g");
    if (r.size() != g.size()) throw SchemaError("table r and g differ in length");
    const std::string mono =
        p.contains("monotonicity") ? p["monotonicity"].get<std::string>() : "increasing";
    const bool divergent = p.contains("divergent_G") && p["divergent_G"].get<bool>();
    s = hc_weight_table(r.size(), r.data(), g.data(), monotonicity_of(mono), divergent, &raw);
  } else if (kind == "signed_ball_example") {
    s = hc_weight_signed_ball_example(&raw);
  } else {
    throw SchemaError("unknown weight kind \"" + kind + "\"");
  }
  if (s != HC_OK) throw SchemaError(std::string("invalid weight: ") + hc_last_error());
  WeightPtr weight(raw);
  if (p.contains("scale")) {
    hc_weight* scaled = nullptr;
    if (hc_weight_scaled(weight.get(), number(p["scale"], "scale"), &scaled) != HC_OK)
      throw SchemaError(std::string("invalid weight scale: ") + hc_last_error());
    weight.reset(scaled);
  }
  return weight;
}

ContextPtr make_context(const hc_weight* w, const hc_measure* m) {
  hc_context* raw = nullptr;
  const hc_status s = hc_context_create(w, m, &raw);
  if (s != HC_OK)
    throw SchemaError(std::string("measure rejected: ") + hc_status_name(s) + ": " +
                      hc_last_error());
  return ContextPtr(raw);
}

struct Options {
  hc_solve_options c{};
  std::vector<double> initial;
};

hc_strategy strategy_of(const std::string& s) {
  if (s == "descent") return HC_GEODESIC_DESCENT;
  if (s == "newton") return HC_NEWTON_ACCELERATED;
  throw SchemaError("strategy must be \"descent\" or \"newton\"");
}

Options parse_options(const json& doc, const Flags& f, size_t dim) {
  Options o;
  hc_solve_options_default(&o.c);
  if (doc.contains("options")) {
    const json& j = doc["options"];
    if (!j.is_object()) throw SchemaError("\"options\" must be an object");
    if (j.contains("tol")) o.c.tol_residual = number(j["tol"], "tol");
    if (j.contains("max_iters")) o.c.max_iters = j["max_iters"].get<int>();
    if (j.contains("strategy")) o.c.strategy = strategy_of(j["strategy"].get<std::string>());
    if (j.contains("multistart")) o.c.multistart = j["multistart"].get<int>();
    if (j.contains("seed")) o.c.seed = j["seed"].get<uint64_t>();
    if (j.contains("initial")) o.initial = vector_of(j["initial"], dim, "options initial");
  }
  if (f.tol) o.c.tol_residual = *f.tol;
  if (f.max_iters) o.c.max_iters = *f.max_iters;
  if (f.strategy) o.c.strategy = strategy_of(*f.strategy);
  if (f.multistart) o.c.multistart = *f.multistart;
  if (f.seed) o.c.seed = *f.seed;
  if (!(o.c.tol_residual > 0)) throw SchemaError("tol must be positive");
  if (o.c.max_iters < 1) throw SchemaError("max-iters must be >= 1");
  if (!o.initial.empty()) o.c.initial = o.initial.data();
  return o;
}

// ---- output --------------------------------------------------------------

void emit(const Flags& f, const Writer& w) {
  const std::string text = w.str();
  if (f.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.output);
  if (!out) throw SchemaError("cannot write output file " + f.output);
  out << text;
}

void write_atoms(Writer& w, const hc_measure* m) {
  const size_t dim = hc_measure_dim(m);
  w.key("atoms").begin_array();
  std::vector<double> x(dim);
  for (size_t i = 0; i < hc_measure_size(m); ++i) {
    double weight = 0;
    check(hc_measure_atom(m, i, x.data(), &weight, nullptr), "atom");
    w.begin_object().field("x", x).field("w", weight).end_object();
  }
  w.end_array();
}

std::vector<double> field_at(const hc_context* ctx, const std::vector<double>& x) {
  std::vector<double> v(x.size());
  check(hc_field_V(ctx, x.data(), v.data()), "field");
  return v;
}

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

// Solve and write the shared part of a center/fold report; returns the exit code.
int solve_and_report(Writer& w, const hc_context* ctx, const hc_measure* m, const Options& o,
                     size_t dim, std::vector<double>* center) {
  hc_solve_result* raw = nullptr;
  const hc_status s = hc_solve(ctx, &o.c, &raw);
  const std::string message = s == HC_OK ? "" : hc_last_error();
  hc_hypothesis_class cls = HC_NO_GUARANTEE;
  check(hc_classify(ctx, &cls), "classify");
  if (s == HC_ERR_DIVERGENT_ITERATES) {
    w.field("status", "divergent")
        .field("hypothesis_class", hc_hypothesis_class_name(cls))
        .field("message", message);
    return kDivergent;
  }
  if (s != HC_OK) throw ApiError(s, "solve: " + std::string(hc_status_name(s)) + ": " + message);
  ResultPtr r(raw);
  hc_result_summary sum{};
  check(hc_result_summary_get(r.get(), &sum), "summary");
  std::vector<double> x(dim);
  check(hc_result_center(r.get(), x.data()), "center");

  const bool ambiguous = sum.uniqueness == HC_UNIQUE_AMBIGUOUS;
  const char* status = ambiguous ? "ambiguous" : sum.converged ? "converged" : "not_converged";
  w.field("status", status)
      .field("x_c", x)
      .field("residual", sum.residual)
      .field("iterations", sum.iterations)
      .field("energy", sum.energy)
      .field("hypothesis_class", hc_hypothesis_class_name(sum.hypothesis_class))
      .field("uniqueness", hc_uniqueness_name(sum.uniqueness))
      .field("starts", sum.starts)
      .field("starts_converged", sum.starts_converged)
      .field("spread", sum.spread);
  w.key("clusters").begin_array();
  for (size_t i = 0; i < sum.clusters; ++i) {
    std::vector<double> p(dim);
    int members = 0;
    check(hc_result_cluster(r.get(), i, p.data(), &members), "cluster");
    w.begin_object().field("x", p).field("members", members).end_object();
  }
  w.end_array();

  hc_measure* pushed = nullptr;
  check(hc_measure_push_mobius(m, x.data(), &pushed), "pushforward");
  MeasurePtr pm(pushed);
  w.key("pushed").begin_object().field("dimension", dim);
  write_atoms(w, pm.get());
  w.end_object();

  if (center) *center = x;
  if (ambiguous) return kAmbiguous;
  return sum.converged ? kOk : kFailed;
}

// ---- subcommands -----------------------------------------------------------

int run_center(const Flags& f) {
  const json doc = read_input(f.input);
  const size_t dim = dimension(doc);
  auto m = parse_measure(doc, dim);
  auto wt = parse_weight(doc);
  const Options o = parse_options(doc, f, dim);
  auto ctx = make_context(wt.get(), m.get());
  Writer w;
  w.begin_object().field("command", "center").field("dimension", dim);
  const int code = solve_and_report(w, ctx.get(), m.get(), o, dim, nullptr);
  w.end_object();
  emit(f, w);
  return code;
}

int run_fold(const Flags& f) {
  const json doc = read_input(f.input);
  const size_t dim = dimension(doc);
  auto m = parse_measure(doc, dim);
  auto wt = parse_weight(doc);
  const Options o = parse_options(doc, f, dim);
  if (!doc.contains("halfspace") || !doc["halfspace"].is_object())
    throw SchemaError("fold needs a \"halfspace\" object");
  const json& h = doc["halfspace"];
  if (!h.contains("p") || !h.contains("t")) throw SchemaError("halfspace needs \"p\" and \"t\"");
  const auto p = vector_of(h["p"], dim, "halfspace p");
  const double t = number(h["t"], "halfspace t");
  hc_measure* raw = nullptr;
  const hc_status s = hc_measure_push_fold(m.get(), p.data(), t, &raw);
  if (s != HC_OK) throw SchemaError(std::string("fold rejected: ") + hc_last_error());
  MeasurePtr folded(raw);
  auto ctx = make_context(wt.get(), folded.get());

  Writer w;
  w.begin_object()
      .field("command", "fold")
      .field("dimension", dim)
      .key("halfspace")
      .begin_object()
      .field("p", p)
      .field("t", t)
      .end_object();
  std::vector<double> x;
  const int code = solve_and_report(w, ctx.get(), folded.get(), o, dim, &x);
  if (!x.empty()) w.field("orthogonality_residual", norm(field_at(ctx.get(), x)));
  w.key("folded").begin_object().field("dimension", dim);
  write_atoms(w, folded.get());
  w.end_object().end_object();
  emit(f, w);
  return code;
}

int run_energy(const Flags& f) {
  const json doc = read_input(f.input);
  const size_t dim = dimension(doc);
  auto m = parse_measure(doc, dim);
  auto wt = parse_weight(doc);
  auto ctx = make_context(wt.get(), m.get());

  std::vector<double> base(dim, 0.0), dir(dim, 0.0);
  dir[0] = 1.0;
  double s_max = 5.0;
  int samples = 51;
  if (doc.contains("profile")) {
    const json& p = doc["profile"];
    if (!p.is_object()) throw SchemaError("\"profile\" must be an object");
    if (p.contains("base")) base = vector_of(p["base"], dim, "profile base");
    if (p.contains("dir")) dir = vector_of(p["dir"], dim, "profile dir");
    if (p.contains("s_max")) s_max = number(p["s_max"], "profile s_max");
    if (p.contains("samples")) samples = p["samples"].get<int>();
  }
  if (!(s_max > 0) || samples < 2) throw SchemaError("profile needs s_max > 0 and samples >= 2");

  hc_hypothesis_class cls = HC_NO_GUARANTEE;
  check(hc_classify(ctx.get(), &cls), "classify");

  Writer w;
  w.begin_object()
      .field("command", "energy")
      .field("dimension", dim)
      .field("hypothesis_class", hc_hypothesis_class_name(cls))
      .field("base", base)
      .field("dir", dir)
      .field("s_max", s_max)
      .field("samples", samples);
  std::vector<double> neg(dir);
  for (double& c : neg) c = -c;
  for (const auto& [name, d] : {std::pair{"forward", &dir}, std::pair{"backward", &neg}}) {
    w.key(name).begin_array();
    std::vector<double> x(dim);
    for (int k = 0; k < samples; ++k) {
      const double tau = s_max * k / (samples - 1);
      const hc_status gs =
          hc_geodesic_point_at_arclength(dim, base.data(), d->data(), tau, x.data());
      if (gs != HC_OK) throw SchemaError(std::string("invalid profile: ") + hc_last_error());
      double e = 0;
      check(hc_energy(ctx.get(), x.data(), &e), "energy");
      w.begin_object()
          .field("tau", tau)
          .field("energy", e)
          .field("field_norm", norm(field_at(ctx.get(), x)))
          .end_object();
    }
    w.end_array();
  }
  w.end_object();
  emit(f, w);
  return kOk;
}

void write_scan(Writer& w, const hc_scan_report* r, const std::string& label) {
  w.begin_object()
      .field("label", label)
      .field("kind", hc_scan_kind(r))
      .field("pass", hc_scan_pass(r) != 0)
      .field("strict", hc_scan_strict(r) != 0)
      .field("worst_case", hc_scan_worst_case(r))
      .field("samples", hc_scan_samples(r))
      .field("seed", hc_scan_seed(r));
  w.key("metrics").begin_object();
  for (size_t i = 0; i < hc_scan_metric_count(r); ++i) {
    const char* name = nullptr;
    double value = 0;
    check(hc_scan_metric(r, i, &name, &value), "metric");
    w.field(name, value);
  }
  w.end_object();
  w.key("details").begin_array();
  for (size_t i = 0; i < hc_scan_detail_count(r); ++i) w.value(hc_scan_detail(r, i));
  w.end_array().end_object();
}

int run_verify(const Flags& f) {
  const uint64_t seed = f.seed.value_or(0);
  std::vector<std::pair<std::string, ScanPtr>> scans;
  auto add = [&](const std::string& label, auto&& run) {
    hc_scan_report* r = nullptr;
    check(run(&r), label.c_str());
    scans.emplace_back(label, ScanPtr(r));
  };

  for (size_t n : {2, 3}) {
    const std::string dim = std::to_string(n);
    add("kernel_linearity_n" + dim, [&](hc_scan_report** r) {
      return hc_oracle_kernel_linearity(n, 50, 40, seed, r);
    });
    add("cocycle_n" + dim, [&](hc_scan_report** r) {
      return hc_oracle_cocycle_check(n, 1000, seed, r);
    });
  }
  add("distance_convexity_n2", [&](hc_scan_report** r) {
    return hc_oracle_distance_convexity(2, 200, seed, r);
  });

  std::string class_name;
  if (!f.input.empty()) {
    const json doc = read_input(f.input);
    const size_t dim = dimension(doc);
    auto m = parse_measure(doc, dim);
    auto wt = parse_weight(doc);
    auto ctx = make_context(wt.get(), m.get());
    hc_hypothesis_class cls = HC_NO_GUARANTEE;
    check(hc_classify(ctx.get(), &cls), "classify");
    class_name = hc_hypothesis_class_name(cls);
    add("gradient", [&](hc_scan_report** r) {
      return hc_oracle_gradient_check(ctx.get(), 1000, seed, r);
    });
    if (cls == HC_THM1_I || cls == HC_THM2_I || cls == HC_THM1_II || cls == HC_THM2_II)
      add("convexity", [&](hc_scan_report** r) {
        return hc_oracle_convexity_scan(ctx.get(), 50, 60, seed, r);
      });
    int has_g1 = 0;
    double g1 = 0;
    check(hc_weight_g1(wt.get(), &has_g1, &g1), "g1");
    if (has_g1) {
      std::vector<double> x(dim, 0.0), yhat(dim, 0.0);
      x[0] = 0.3;
      if (dim > 1) x[1] = -0.2;
      yhat[0] = 1.0;
      add("boundary_continuity", [&](hc_scan_report** r) {
        return hc_oracle_boundary_continuity(wt.get(), dim, x.data(), yhat.data(), r);
      });
    }
  }

  bool all = true;
  for (const auto& s : scans) all = all && hc_scan_pass(s.second.get());
  Writer w;
  w.begin_object().field("command", "verify").field("seed", seed);
  if (!class_name.empty()) w.field("hypothesis_class", class_name);
  w.field("pass", all);
  w.key("scans").begin_array();
  for (const auto& s : scans) write_scan(w, s.second.get(), s.first);
  w.end_array().end_object();
  emit(f, w);
  return all ? kOk : kFailed;
}

int run_reproduce(const Flags& f) {
  hc_reproduce_report* raw = nullptr;
  const hc_status s = hc_reproduce(f.fixture.c_str(), &raw);
  if (s == HC_ERR_UNKNOWN_FIXTURE) {
    std::string known;
    for (size_t i = 0; i < hc_fixture_count(); ++i)
      known += std::string(i ? ", " : "") + hc_fixture_name(i);
    throw SchemaError("unknown fixture \"" + f.fixture + "\" (known: " + known + ")");
  }
  check(s, "reproduce");
  ReproPtr rep(raw);
  Writer w;
  w.begin_object()
      .field("command", "reproduce")
      .field("fixture", f.fixture)
      .field("pass", hc_reproduce_pass(rep.get()) != 0);
  w.key("checks").begin_array();
  for (size_t i = 0; i < hc_reproduce_check_count(rep.get()); ++i) {
    const char* label = nullptr;
    double value = 0, expected = 0, tolerance = 0;
    int pass = 0;
    check(hc_reproduce_check(rep.get(), i, &label, &value, &expected, &tolerance, &pass),
          "check");
    w.begin_object()
        .field("label", label)
        .field("value", value)
        .field("expected", expected)
        .field("tolerance", tolerance)
        .field("pass", pass != 0)
        .end_object();
  }
  w.end_array().end_object();
  emit(f, w);
  return hc_reproduce_pass(rep.get()) ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted hyperbolic center of mass on the unit ball"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub, bool input_required) {
    auto* in = sub->add_option("--input", f.input, "JSON input file");
    if (input_required) in->required()->check(CLI::ExistingFile);
    else in->check(CLI::ExistingFile);
    sub->add_option("--output", f.output, "write the report here instead of stdout");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--tol", f.tol, "residual tolerance");
    sub->add_option("--max-iters", f.max_iters, "iteration cap per start");
    sub->add_option("--strategy", f.strategy, "descent or newton")
        ->check(CLI::IsMember({"descent", "newton"}));
    sub->add_option("--multistart", f.multistart, "number of starts for the uniqueness probe");
  };

  auto* center = app.add_subcommand("center", "solve for the center");
  common(center, true);
  auto* energy = app.add_subcommand("energy", "energy profile along a geodesic");
  common(energy, true);
  auto* verify = app.add_subcommand("verify", "run the oracle suites");
  common(verify, false);
  auto* fold = app.add_subcommand("fold", "fold by a halfspace, then solve");
  common(fold, true);
  auto* reproduce = app.add_subcommand("reproduce", "re-run a built-in example");
  reproduce->add_option("name", f.fixture, "fixture name")->required();
  reproduce->add_option("--output", f.output, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*center) return run_center(f);
    if (*energy) return run_energy(f);
    if (*verify) return run_verify(f);
    if (*fold) return run_fold(f);
    if (*reproduce) return run_reproduce(f);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: schema: " << e.what() << "\n";
    return kUsage;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
