#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casimir/casimir.hpp"
#include "casimir/errors.hpp"
#include "casimir/greens.hpp"
#include "config.hpp"
#include "table.hpp"

namespace casimir::cli {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string format;
  bool si = false;

  double d = kUnset;
  double d_min = kUnset;
  double d_max = kUnset;
  int points = 20;
  bool log = false;

  std::string method = "auto";
  int vary = 2;

  double w = kUnset;
  double w_min = kUnset;
  double w_max = kUnset;
  double wmax = 10.0;
  double tolerance = 1e-4;

  std::string sigma = "TM";
  double q = 0.0;
  double w_mode = 1.0;
  double zp = kUnset;
  double z_min = kUnset;
  double z_max = kUnset;
};

/// Aggregated outcome of a command; the worst status decides the exit code.
struct Outcome {
  bool failure = false;
  bool nonconverged = false;

  int code() const {
    if (nonconverged) return kExitNonConvergence;
    return failure ? kExitFailure : kExitOk;
  }
};

struct RowError {
  std::string message;
  bool nonconverged = false;
};

template <class F>
std::optional<RowError> guarded(F&& body) {
  try {
    body();
  } catch (const AccuracyError& e) {
    return RowError{e.what(), true};
  } catch (const Error& e) {
    return RowError{e.what(), false};
  }
  return std::nullopt;
}

void record(Outcome& outcome, const std::optional<RowError>& e) {
  if (!e) return;
  if (e->nonconverged) {
    outcome.nonconverged = true;
  } else {
    outcome.failure = true;
  }
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunConfig load(const Options& o, std::istream& in) {
  if (o.config_path.empty() || o.config_path == "-") return parse_config_text(read_all(in));
  std::ifstream file(o.config_path, std::ios::binary);
  if (!file) throw ConfigError("cannot open config file '" + o.config_path + "'");
  return parse_config_text(read_all(file));
}

OutputFormat output_format(const Options& o, const RunConfig& cfg) {
  if (o.format.empty()) return cfg.output;
  return o.format == "json" ? OutputFormat::json : OutputFormat::csv;
}

UnitScale unit_scale(const Options& o, const RunConfig& cfg) {
  return o.si ? UnitScale::si(cfg.reference_frequency) : UnitScale::reduced();
}

void emit(const Table& table, const Options& o, const RunConfig& cfg, std::ostream& out) {
  table.write(out, output_format(o, cfg), unit_scale(o, cfg));
}

/// Sorted grid from --<x>, --<x>-min/--<x>-max/--points/--log.
std::vector<double> grid(double single, double lo, double hi, int points, bool log,
                         double fallback, const char* name) {
  std::vector<double> values;
  if (!std::isnan(single)) {
    values = {single};
  } else if (!std::isnan(lo) || !std::isnan(hi)) {
    if (std::isnan(lo) || std::isnan(hi)) {
      throw UsageError(std::string("--") + name + "-min and --" + name + "-max go together");
    }
    if (points < 1) throw UsageError("--points must be at least 1");
    if (hi < lo) throw UsageError(std::string("--") + name + "-max is below --" + name + "-min");
    if (points == 1) {
      values = {lo};
    } else if (log) {
      if (!(lo > 0.0)) throw UsageError("--log needs a positive lower bound");
      values = log_grid(lo, hi, points);
    } else {
      for (int k = 0; k < points; ++k) values.push_back(lo + (hi - lo) * k / (points - 1));
    }
  } else if (std::isfinite(fallback)) {
    values = {fallback};
  } else {
    throw UsageError(std::string("give --") + name + " or --" + name + "-min/--" + name + "-max");
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<double> separations(const Options& o, double fallback) {
  auto ds = grid(o.d, o.d_min, o.d_max, o.points, o.log, fallback, "d");
  for (double d : ds) {
    if (!(d > 0.0) || !std::isfinite(d)) throw UsageError("separations must be positive");
  }
  return ds;
}

/// Runs response validation on every model; prints failures to `err`.
bool models_valid(const RunConfig& cfg, std::ostream& err) {
  bool ok = true;
  for (std::size_t j = 0; j < cfg.layers.size(); ++j) {
    for (const char* role : {"eps", "mu"}) {
      const auto& model = role[0] == 'e' ? cfg.layers[j].eps : cfg.layers[j].mu;
      for (const auto& check : validate(model).checks) {
        if (check.passed) continue;
        err << "layer " << j + 1 << " " << role << ": " << check.name << " failed: "
            << check.detail << '\n';
        ok = false;
      }
    }
  }
  return ok;
}

void require_layers(const RunConfig& cfg, std::size_t n, const char* command) {
  if (cfg.layers.size() != n) {
    throw ConfigError(std::string(command) + " needs exactly " + std::to_string(n) +
                      (n == 1 ? " layer" : " layers"));
  }
}

void report_row_errors(const std::vector<std::optional<RowError>>& errors,
                       const std::vector<double>& keys, std::ostream& err) {
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i]) err << "row d=" << keys[i] << ": " << errors[i]->message << '\n';
  }
}

std::string message_of(const std::optional<RowError>& e) { return e ? e->message : ""; }

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  Table table({{"layer"}, {"role"}, {"check"}, {"status"}, {"detail"}});
  bool all = true;
  for (std::size_t j = 0; j < cfg.layers.size(); ++j) {
    const auto& layer = cfg.layers[j];
    const long index = static_cast<long>(j + 1);
    int failed = 0;
    for (const char* role : {"eps", "mu"}) {
      const auto& model = role[0] == 'e' ? layer.eps : layer.mu;
      for (const auto& check : validate(model).checks) {
        table.add_row({index, std::string(role), check.name,
                       std::string(check.passed ? "pass" : "fail"), check.detail});
        if (!check.passed) ++failed;
      }
    }
    std::string medium = "unclassified";
    if (failed == 0) {
      const auto e = guarded([&] { medium = to_string(classify(layer.eps, layer.mu)); });
      if (e) {
        ++failed;
        table.add_row({index, std::string("medium"), std::string("classification"),
                       std::string("fail"), e->message});
      } else {
        table.add_row({index, std::string("medium"), std::string("classification"),
                       std::string("pass"), medium});
      }
    }
    err << "layer " << index << ": " << medium << ", ";
    if (failed == 0) {
      err << "all checks pass\n";
    } else {
      err << failed << " check(s) failed\n";
    }
    all = all && failed == 0;
  }
  emit(table, o, cfg, out);
  return all ? kExitOk : kExitFailure;
}

int cmd_eval(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  Options g = o;
  if (std::isnan(o.w) && std::isnan(o.w_min) && std::isnan(o.w_max)) {
    g.w_min = 1e-2;
    g.w_max = 1e2;
    g.log = true;
  }
  const auto ws = grid(g.w, g.w_min, g.w_max, g.points, g.log, kNaN, "w");
  for (double w : ws) {
    if (!(w >= 0.0)) throw UsageError("frequencies must be nonnegative");
  }
  if (!models_valid(cfg, err)) return kExitFailure;

  struct Job {
    long layer;
    std::string role;
    const ResponseModel* model;
    double w;
  };
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < cfg.layers.size(); ++j) {
    for (double w : ws) jobs.push_back({long(j + 1), "eps", &cfg.layers[j].eps, w});
    for (double w : ws) jobs.push_back({long(j + 1), "mu", &cfg.layers[j].mu, w});
  }
  struct Result {
    double re = kNaN, im = kNaN, axis = kNaN;
    std::optional<RowError> error;
  };
  std::vector<Result> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    Result& r = results[i];
    r.error = guarded([&] {
      const Complex value = eval_chi(*jobs[i].model, Complex(jobs[i].w, 0.0));
      r.re = value.real();
      r.im = value.imag();
      r.axis = eval_imag_axis(*jobs[i].model, jobs[i].w);
    });
  });

  Table table({{"layer"},
               {"role"},
               {"w", Unit::frequency},
               {"re"},
               {"im"},
               {"imag_axis"},
               {"diagnostic"}});
  Outcome outcome;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    record(outcome, results[i].error);
    table.add_row({jobs[i].layer, jobs[i].role, jobs[i].w, results[i].re, results[i].im,
                   results[i].axis, message_of(results[i].error)});
  }
  emit(table, o, cfg, out);
  return outcome.code();
}

int cmd_force(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  require_layers(cfg, 1, "force");
  const auto& layer = cfg.layers[0];
  const auto ds = separations(o, layer.thickness);
  if (!models_valid(cfg, err)) return kExitFailure;

  std::string method = o.method;
  if (method == "auto") method = has_monotone_mapping(layer.eps, layer.mu) ? "s" : "qw";

  std::vector<ForceResult> results(ds.size());
  std::vector<std::optional<RowError>> errors(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) {
    errors[i] = guarded([&] {
      results[i] = method == "s" ? force_slab_s(layer.eps, layer.mu, ds[i], cfg.quad)
                                 : force_slab_qw(layer.eps, layer.mu, ds[i], cfg.quad);
    });
  });

  Table table({{"d", Unit::length},
               {"force", Unit::force},
               {"force_vacuum", Unit::force},
               {"delta", Unit::force},
               {"error", Unit::force},
               {"evaluations"},
               {"method"},
               {"diagnostic"}});
  Outcome outcome;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    record(outcome, errors[i]);
    const double fv = force_vacuum(ds[i]);
    const double f = errors[i] ? kNaN : results[i].value;
    table.add_row({ds[i], f, fv, f - fv, errors[i] ? kNaN : results[i].error_estimate,
                   errors[i] ? 0L : results[i].evaluations, method, message_of(errors[i])});
  }
  report_row_errors(errors, ds, err);
  emit(table, o, cfg, out);
  return outcome.code();
}

int cmd_lifshitz(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  require_layers(cfg, 3, "lifshitz");
  if (!cfg.layers[0].layer().semi_infinite() || !cfg.layers[2].layer().semi_infinite() ||
      cfg.layers[1].layer().semi_infinite()) {
    throw ConfigError("lifshitz needs layers inf | finite | inf");
  }
  const auto ds = separations(o, cfg.layers[1].thickness);
  if (!models_valid(cfg, err)) return kExitFailure;

  const Layer left = cfg.layers[0].layer();
  const Layer right = cfg.layers[2].layer();
  const auto quad = derivative_quadrature(cfg.quad);
  std::vector<double> energy(ds.size(), kNaN);
  std::vector<ForceResult> force(ds.size());
  std::vector<std::optional<RowError>> errors(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) {
    errors[i] = guarded([&] {
      Layer mid = cfg.layers[1].layer();
      mid.thickness = ds[i];
      energy[i] = energy_lifshitz(left, mid, right, quad).value;
      force[i] = force_from_action(lifshitz_energy(left, mid, right, quad), ds[i]);
    });
  });

  Table table({{"d", Unit::length},
               {"energy", Unit::energy},
               {"force", Unit::force},
               {"force_vacuum", Unit::force},
               {"error", Unit::force},
               {"diagnostic"}});
  Outcome outcome;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    record(outcome, errors[i]);
    table.add_row({ds[i], errors[i] ? kNaN : energy[i], errors[i] ? kNaN : force[i].value,
                   force_vacuum(ds[i]), errors[i] ? kNaN : force[i].error_estimate,
                   message_of(errors[i])});
  }
  report_row_errors(errors, ds, err);
  emit(table, o, cfg, out);
  return outcome.code();
}

int cmd_action3(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  require_layers(cfg, 3, "action3");
  for (const auto& l : cfg.layers) {
    if (l.layer().semi_infinite()) throw ConfigError("action3 needs three finite layers");
  }
  if (o.vary < 1 || o.vary > 3) throw UsageError("--vary must be 1, 2 or 3");
  const std::size_t which = static_cast<std::size_t>(o.vary - 1);
  const auto ds = separations(o, cfg.layers[which].thickness);
  if (!models_valid(cfg, err)) return kExitFailure;

  const Stack base(cfg.stack_layers(), true);
  const auto quad = derivative_quadrature(cfg.quad);
  std::vector<double> energy(ds.size(), kNaN);
  std::vector<ForceResult> force(ds.size());
  std::vector<std::optional<RowError>> errors(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) {
    errors[i] = guarded([&] {
      const auto e = three_layer_energy(base, which, quad);
      energy[i] = e(ds[i]).value;
      force[i] = force_from_action(e, ds[i]);
    });
  });

  Table table({{"d", Unit::length},
               {"d_total", Unit::length},
               {"energy", Unit::energy},
               {"energy_difference", Unit::energy},
               {"force", Unit::force},
               {"force_vacuum", Unit::force},
               {"error", Unit::force},
               {"diagnostic"}});
  Outcome outcome;
  const double reference = errors.front() ? kNaN : energy.front();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    record(outcome, errors[i]);
    double total = 0.0;
    for (std::size_t j = 0; j < 3; ++j) total += j == which ? ds[i] : cfg.layers[j].thickness;
    const double e = errors[i] ? kNaN : energy[i];
    table.add_row({ds[i], total, e, e - reference, errors[i] ? kNaN : force[i].value,
                   force_vacuum(total), errors[i] ? kNaN : force[i].error_estimate,
                   message_of(errors[i])});
  }
  report_row_errors(errors, ds, err);
  emit(table, o, cfg, out);
  return outcome.code();
}

int cmd_bounds(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  require_layers(cfg, 1, "bounds");
  Options g = o;
  if (std::isnan(o.d) && std::isnan(o.d_min) && std::isnan(o.d_max)) {
    g.d_min = 0.1;
    g.d_max = 10.0;
    g.log = true;
  }
  const auto ds = separations(g, kNaN);
  if (!models_valid(cfg, err)) return kExitFailure;
  const auto& layer = cfg.layers[0];
  const MediumClass medium = classify(layer.eps, layer.mu);
  if (medium == MediumClass::mixed) {
    err << "bounds do not apply to a mixed gain-loss medium\n";
    return kExitFailure;
  }

  std::vector<BoundsRow> rows(ds.size());
  std::vector<std::optional<RowError>> errors(ds.size());
  double n_static = kNaN;
  parallel_for(ds.size(), [&](std::size_t i) {
    errors[i] = guarded([&] {
      const auto report = bounds_check(layer.eps, layer.mu, {ds[i]}, cfg.quad);
      rows[i] = report.rows.front();
      if (i == 0) n_static = report.n_static;
    });
  });

  Table table({{"d", Unit::length},
               {"force", Unit::force},
               {"force_vacuum", Unit::force},
               {"lower", Unit::force},
               {"upper", Unit::force},
               {"margin_lower", Unit::force},
               {"margin_upper", Unit::force},
               {"status"},
               {"diagnostic"}});
  Outcome outcome;
  int failed = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    record(outcome, errors[i]);
    if (errors[i]) {
      table.add_row({ds[i], kNaN, force_vacuum(ds[i]), kNaN, kNaN, kNaN, kNaN,
                     std::string("error"), errors[i]->message});
      continue;
    }
    const auto& r = rows[i];
    if (!r.passed) ++failed;
    table.add_row({r.d, r.force, r.force_vacuum, r.lower, r.upper, r.margin_lower, r.margin_upper,
                   std::string(r.passed ? "pass" : "fail"), std::string()});
  }
  if (failed > 0) outcome.failure = true;
  err << to_string(medium) << ", n_static = " << n_static << ", " << failed << " of "
      << ds.size() << " separations violate the bounds\n";
  report_row_errors(errors, ds, err);
  emit(table, o, cfg, out);
  return outcome.code();
}

int cmd_kk_check(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  if (!(o.wmax > 0.0)) throw UsageError("--wmax must be positive");
  if (o.points < 2) throw UsageError("--points must be at least 2");
  if (!(o.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  const auto ws = log_grid(1e-3 * o.wmax, o.wmax, o.points);
  if (!models_valid(cfg, err)) return kExitFailure;

  struct Job {
    long layer;
    std::string role;
    const ResponseModel* model;
    double w;
  };
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < cfg.layers.size(); ++j) {
    if (!cfg.layers[j].eps.is_vacuum()) {
      for (double w : ws) jobs.push_back({long(j + 1), "eps", &cfg.layers[j].eps, w});
    }
    if (!cfg.layers[j].mu.is_vacuum()) {
      for (double w : ws) jobs.push_back({long(j + 1), "mu", &cfg.layers[j].mu, w});
    }
  }
  struct Result {
    double closed = kNaN, kk = kNaN;
    std::optional<RowError> error;
  };
  std::vector<Result> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    results[i].error = guarded([&] {
      results[i].closed = eval_imag_axis(*jobs[i].model, jobs[i].w);
      results[i].kk = kk_imag_axis(*jobs[i].model, jobs[i].w, cfg.quad);
    });
  });

  Table table({{"layer"},
               {"role"},
               {"w", Unit::frequency},
               {"closed_form"},
               {"kk"},
               {"abs_deviation"},
               {"diagnostic"}});
  Outcome outcome;
  double worst = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& r = results[i];
    record(outcome, r.error);
    const double dev = std::abs(r.kk - r.closed);
    if (!r.error) worst = std::max(worst, dev);
    table.add_row({jobs[i].layer, jobs[i].role, jobs[i].w, r.closed, r.kk, dev,
                   message_of(r.error)});
  }
  if (worst > o.tolerance) outcome.failure = true;
  err << "max abs deviation " << worst << " (tolerance " << o.tolerance << ")\n";
  emit(table, o, cfg, out);
  return outcome.code();
}

int cmd_greens(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  Polarization sigma;
  if (o.sigma == "TE") {
    sigma = Polarization::TE;
  } else if (o.sigma == "TM") {
    sigma = Polarization::TM;
  } else {
    throw UsageError("--sigma must be TE or TM");
  }
  const TransverseMode mode{sigma, o.q, o.w_mode};
  try {
    mode.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::optional<Stack> built;
  try {
    built.emplace(cfg.stack_layers(), cfg.mirrors);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const Stack& stack = *built;

  const std::size_t last = stack.size() - 1;
  double lo = stack.left_edge(0);
  double hi = stack.right_edge(last);
  if (std::isinf(lo)) lo = (stack.size() > 1 ? stack.right_edge(0) : 0.0) - 1.0;
  if (std::isinf(hi)) hi = (stack.size() > 1 ? stack.left_edge(last) : 0.0) + 1.0;
  Options g = o;
  if (std::isnan(o.z_min) && std::isnan(o.z_max)) {
    g.z_min = lo;
    g.z_max = hi;
  }
  const auto zs = grid(kUnset, g.z_min, g.z_max, g.points, false, kNaN, "z");
  const double zp = std::isnan(o.zp) ? 0.5 * (lo + hi) : o.zp;
  if (!models_valid(cfg, err)) return kExitFailure;

  std::vector<double> value(zs.size(), kNaN), mixed(zs.size(), kNaN);
  std::vector<long> where(zs.size(), 0);
  std::vector<std::optional<RowError>> errors(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    errors[i] = guarded([&] {
      where[i] = static_cast<long>(stack.locate(zs[i]) + 1);
      value[i] = g_scalar(stack, mode, zs[i], zp);
      mixed[i] = g_scalar_mixed_derivative(stack, mode, zs[i], zp);
    });
  });

  Table table({{"z", Unit::length},
               {"zp", Unit::length},
               {"layer"},
               {"g"},
               {"g_mixed_derivative"},
               {"diagnostic"}});
  Outcome outcome;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    record(outcome, errors[i]);
    table.add_row({zs[i], zp, where[i], value[i], mixed[i], message_of(errors[i])});
  }
  emit(table, o, cfg, out);
  return outcome.code();
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("config", o.config_path, "JSON configuration file (stdin when absent or -)");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--si", o.si, "Convert outputs to SI units using reference_frequency");
}

void add_sweep(CLI::App* sub, Options& o) {
  sub->add_option("--d", o.d, "Single separation");
  sub->add_option("--d-min", o.d_min, "Smallest separation of a sweep");
  sub->add_option("--d-max", o.d_max, "Largest separation of a sweep");
  sub->add_option("--points", o.points, "Number of sweep points");
  sub->add_flag("--log", o.log, "Logarithmic spacing");
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Casimir forces and energies of planar multilayers with gain and loss",
               "casimir-stack"};
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "Check response models and classify media");
  add_common(validate_cmd, o);

  auto* eval_cmd = app.add_subcommand("eval", "Tabulate eps or mu on the real and imaginary axes");
  add_common(eval_cmd, o);
  eval_cmd->add_option("--w", o.w, "Single frequency");
  eval_cmd->add_option("--w-min", o.w_min, "Lowest frequency");
  eval_cmd->add_option("--w-max", o.w_max, "Highest frequency");
  eval_cmd->add_option("--points", o.points, "Number of frequencies");
  eval_cmd->add_flag("--log", o.log, "Logarithmic spacing");

  auto* force_cmd = app.add_subcommand("force", "Force on mirrors enclosing one homogeneous slab");
  add_common(force_cmd, o);
  add_sweep(force_cmd, o);
  force_cmd->add_option("--method", o.method, "Integral form")
      ->check(CLI::IsMember({"qw", "s", "auto"}));

  auto* lifshitz_cmd = app.add_subcommand("lifshitz", "Energy and force across a gap between half spaces");
  add_common(lifshitz_cmd, o);
  add_sweep(lifshitz_cmd, o);

  auto* action_cmd = app.add_subcommand("action3", "Three finite layers between mirrors");
  add_common(action_cmd, o);
  add_sweep(action_cmd, o);
  action_cmd->add_option("--vary", o.vary, "Layer whose thickness is swept (1, 2 or 3)");

  auto* bounds_cmd = app.add_subcommand("bounds", "Check the static-index bounds on the slab force");
  add_common(bounds_cmd, o);
  add_sweep(bounds_cmd, o);

  auto* kk_cmd = app.add_subcommand("kk-check", "Compare the causality integral with closed forms");
  add_common(kk_cmd, o);
  kk_cmd->add_option("--wmax", o.wmax, "Largest imaginary frequency");
  kk_cmd->add_option("--points", o.points, "Number of frequencies");
  kk_cmd->add_option("--tolerance", o.tolerance, "Largest accepted absolute deviation");

  auto* greens_cmd = app.add_subcommand("greens", "Tabulate the scalar Green function");
  add_common(greens_cmd, o);
  greens_cmd->add_option("--sigma", o.sigma, "TE or TM");
  greens_cmd->add_option("--q", o.q, "In-plane wavenumber");
  greens_cmd->add_option("--w", o.w_mode, "Imaginary frequency");
  greens_cmd->add_option("--zp", o.zp, "Source coordinate");
  greens_cmd->add_option("--z-min", o.z_min, "First field coordinate");
  greens_cmd->add_option("--z-max", o.z_max, "Last field coordinate");
  greens_cmd->add_option("--points", o.points, "Number of field coordinates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const RunConfig cfg = load(o, in);
    if (validate_cmd->parsed()) return cmd_validate(cfg, o, out, err);
    if (eval_cmd->parsed()) return cmd_eval(cfg, o, out, err);
    if (force_cmd->parsed()) return cmd_force(cfg, o, out, err);
    if (lifshitz_cmd->parsed()) return cmd_lifshitz(cfg, o, out, err);
    if (action_cmd->parsed()) return cmd_action3(cfg, o, out, err);
    if (bounds_cmd->parsed()) return cmd_bounds(cfg, o, out, err);
    if (kk_cmd->parsed()) return cmd_kk_check(cfg, o, out, err);
    if (greens_cmd->parsed()) return cmd_greens(cfg, o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const AccuracyError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace casimir::cli
