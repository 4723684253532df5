#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rflight/analytic.hpp"
#include "rflight/flight.hpp"
#include "rflight/validation.hpp"

using json = nlohmann::ordered_json;
using namespace rflight;

namespace {

enum Exit { ok = 0, usage = 1, failed = 2, io = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("not a number list: '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

// Flags as parsed; unset flags fall back to the config file, then defaults.
struct Options {
  std::string config;
  std::optional<int> d, m, n;
  std::optional<double> nu, c, t;
  std::optional<std::uint64_t> seed;
  std::optional<long long> count;
  std::optional<std::string> out;

  std::optional<unsigned> threads;
  std::optional<std::string> trajectories;
  std::optional<std::string> formula;
  std::optional<double> lo, hi, step;
  std::optional<long long> points;
  std::vector<std::string> alpha;
  std::optional<std::string> orders;
  std::optional<double> lambda;
  std::optional<int> n_max;
  bool strict = false;
  std::optional<std::string> table;
  std::optional<std::string> method;
  std::optional<std::string> only;
  std::optional<long long> radial_samples, cf_samples;
};

class Resolver {
public:
  Resolver(const std::string& command, const std::string& config_path) {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot read config file " + config_path);
      try {
        file_ = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError("config file " + config_path + ": " + e.what());
      }
      if (!file_.is_object()) throw UsageError("config file must hold a JSON object");
    }
    resolved_["command"] = command;
  }

  template <class T>
  T get(const char* key, const std::optional<T>& flag, T fallback) {
    T v = fallback;
    if (flag) {
      v = *flag;
    } else if (file_.contains(key)) {
      try {
        v = file_.at(key).get<T>();
      } catch (const json::exception&) {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
      }
    }
    resolved_[key] = v;
    return v;
  }

  template <class T>
  std::optional<T> get_optional(const char* key, const std::optional<T>& flag) {
    if (!flag && !file_.contains(key)) return std::nullopt;
    return get<T>(key, flag, T{});
  }

  std::vector<std::string> get_list(const char* key, const std::vector<std::string>& flag) {
    std::vector<std::string> v = flag;
    if (v.empty() && file_.contains(key)) {
      try {
        for (const auto& item : file_.at(key)) {
          if (item.is_string()) {
            v.push_back(item.get<std::string>());
          } else {
            std::string joined;
            for (const auto& x : item) joined += (joined.empty() ? "" : ",") + fmt(x.get<double>());
            v.push_back(joined);
          }
        }
      } catch (const json::exception&) {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
      }
    }
    if (!v.empty()) resolved_[key] = v;
    return v;
  }

  FlightParams flight(const Options& o) {
    FlightParams p;
    p.d = get("d", o.d, p.d);
    p.m = get("m", o.m, p.m);
    p.n = get("n", o.n, p.n);
    p.nu = get("nu", o.nu, p.nu);
    p.c = get("c", o.c, p.c);
    p.t = get("t", o.t, p.t);
    p.validate();
    return p;
  }

  std::optional<std::string> out(const Options& o) { return get_optional<std::string>("out", o.out); }

  const json& resolved() const { return resolved_; }
  json& extra() { return extra_; }

private:
  json file_ = json::object();
  json resolved_ = json::object();
  json extra_ = json::object();
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f.flush()) throw IoError("write to " + path + " failed");
}

// CSV with the resolved configuration as a leading comment, plus a JSON
// sidecar next to the file. Without --out the CSV goes to stdout.
class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) body_ << (i ? "," : "") << fmt(values[i]);
    body_ << '\n';
    ++rows_;
  }
  // Integer-valued leading column(s) print without exponent.
  void row(std::uint64_t key, const std::vector<double>& values) {
    body_ << key;
    for (double v : values) body_ << ',' << fmt(v);
    body_ << '\n';
    ++rows_;
  }
  void row(std::uint64_t k1, std::uint64_t k2, const std::vector<double>& values) {
    body_ << k1 << ',' << k2;
    for (double v : values) body_ << ',' << fmt(v);
    body_ << '\n';
    ++rows_;
  }

  std::size_t rows() const { return rows_; }

  std::string render(const json& config) const {
    std::string s = "# config: " + config.dump() + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) s += (i ? "," : "") + columns_[i];
    return s + "\n" + body_.str();
  }

private:
  std::vector<std::string> columns_;
  std::ostringstream body_;
  std::size_t rows_ = 0;
};

void emit(Resolver& r, const Table& table, const std::optional<std::string>& out,
          const std::optional<std::string>& extra_path = std::nullopt, const Table* extra_table = nullptr) {
  const std::string csv = table.render(r.resolved());
  if (!out) {
    std::cout << csv;
    if (!std::cout) throw IoError("write to stdout failed");
    return;
  }
  write_file(*out, csv);
  json side = json::object();
  side["config"] = r.resolved();
  side["rows"] = table.rows();
  for (const auto& [k, v] : r.extra().items()) side[k] = v;
  if (extra_path && extra_table) {
    write_file(*extra_path, extra_table->render(r.resolved()));
    side["trajectory_rows"] = extra_table->rows();
  }
  write_file(*out + ".json", side.dump(2) + "\n");
}

std::size_t positive_count(long long v, const char* what) {
  if (v < 1) throw UsageError(std::string(what) + " must be at least 1");
  return static_cast<std::size_t>(v);
}

struct Axis {
  double lo, hi;
  std::size_t points;
  double at(std::size_t i) const { return points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (points - 1); }
};

Axis resolve_axis(Resolver& r, const Options& o, double lo_default, double hi_default, long long points_default) {
  Axis a{};
  a.lo = r.get("lo", o.lo, lo_default);
  a.hi = r.get("hi", o.hi, hi_default);
  if (!(a.hi >= a.lo)) throw UsageError("grid needs hi >= lo");
  const auto step = r.get_optional<double>("step", o.step);
  if (step && !o.points) {
    if (!(*step > 0)) throw UsageError("step must be positive");
    a.points = static_cast<std::size_t>(std::floor((a.hi - a.lo) / *step + 1e-9)) + 1;
    if (a.points > 1) a.hi = a.lo + *step * static_cast<double>(a.points - 1);
  } else {
    a.points = positive_count(r.get("points", o.points, points_default), "points");
  }
  return a;
}

// Cartesian product of `dim` copies of `axis`, first coordinate slowest.
template <class F>
void for_each_grid_point(const Axis& axis, int dim, F&& f) {
  double total = 1.0;
  for (int k = 0; k < dim; ++k) total *= static_cast<double>(axis.points);
  if (total > 2e7) throw UsageError("grid has too many points");
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (;;) {
    for (int k = 0; k < dim; ++k) x[k] = axis.at(idx[k]);
    f(x);
    int k = dim - 1;
    while (k >= 0 && ++idx[k] == axis.points) idx[k--] = 0;
    if (k < 0) break;
  }
}

std::vector<std::string> coordinate_names(const char* stem, int dim) {
  std::vector<std::string> names;
  for (int k = 1; k <= dim; ++k) names.push_back(stem + std::to_string(k));
  return names;
}

// ---- commands ---------------------------------------------------------------

int cmd_simulate(const Options& o) {
  Resolver r("simulate", o.config);
  const FlightParams p = r.flight(o);
  const std::size_t count = positive_count(r.get<long long>("count", o.count, 1000), "count");
  const auto seed = r.get<std::uint64_t>("seed", o.seed, 0);
  const auto out = r.out(o);
  const auto traj_path = r.get_optional<std::string>("trajectories", o.trajectories);
  if (traj_path && !out) throw UsageError("--trajectories needs --out");
  const unsigned threads = o.threads.value_or(0);  // execution detail, not echoed

  const auto batch = flight::simulate_batch(p, count, seed, threads);
  auto cols = coordinate_names("x", p.d);
  cols.insert(cols.begin(), "replicate");
  Table table(cols);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto row = batch[i];
    table.row(i, std::vector<double>(row.begin(), row.end()));
  }

  if (traj_path) {
    auto tcols = coordinate_names("x", p.d);
    tcols.insert(tcols.begin(), {"replicate", "segment", "t_k"});
    Table traj(tcols);
    for (std::size_t i = 0; i < count; ++i) {
      const auto tr = flight::simulate_replicate(p, seed, i);
      for (std::size_t k = 0; k < tr.breakpoints.size(); ++k) {
        std::vector<double> v{tr.times[k]};
        v.insert(v.end(), tr.breakpoints[k].begin(), tr.breakpoints[k].end());
        traj.row(i, k, v);
      }
    }
    emit(r, table, out, traj_path, &traj);
  } else {
    emit(r, table, out);
  }
  return ok;
}

int cmd_density(const Options& o) {
  Resolver r("density", o.config);
  const FlightParams p = r.flight(o);
  const std::string formula = r.get<std::string>("formula", o.formula, "projected");
  const auto out = r.out(o);
  const double reach = p.reach();

  if (formula == "radial-projected" || formula == "radial-nu1") {
    const Axis axis = resolve_axis(r, o, 0.0, reach, 101);
    Table table({"r", "density"});
    for (std::size_t i = 0; i < axis.points; ++i) {
      const double rr = axis.at(i);
      const double v = formula == "radial-projected" ? analytic::radial_density_projection(p, rr)
                                                     : analytic::radial_density_nu1(p, rr);
      table.row({rr, v});
    }
    emit(r, table, out);
    return ok;
  }

  using Fn = double (*)(const FlightParams&, std::span<const double>);
  Fn fn = nullptr;
  int dim = p.d;
  if (formula == "projected") {
    fn = analytic::density_projection;
    dim = p.m;
  } else if (formula == "nu1") {
    fn = analytic::density_nu1;
  } else if (formula == "nu1-closed") {
    fn = analytic::density_nu1_closed;
  } else {
    throw UsageError("unknown formula '" + formula + "'");
  }
  const Axis axis = resolve_axis(r, o, -reach, reach, dim == 1 ? 101 : 41);
  auto cols = coordinate_names("x", dim);
  cols.push_back("density");
  Table table(cols);
  for_each_grid_point(axis, dim, [&](const std::vector<double>& x) {
    auto row = x;
    row.push_back(fn(p, x));
    table.row(row);
  });
  emit(r, table, out);
  return ok;
}

int cmd_cf(const Options& o) {
  Resolver r("cf", o.config);
  const FlightParams p = r.flight(o);
  const std::string formula = r.get<std::string>("formula", o.formula, "projected");
  if (formula != "projected" && formula != "nu1") throw UsageError("cf formula must be projected or nu1");
  const int dim = formula == "projected" ? p.m : p.d;
  const auto out = r.out(o);

  std::vector<std::vector<double>> alphas;
  for (const auto& a : r.get_list("alpha", o.alpha)) {
    alphas.push_back(parse_list(a));
    if (static_cast<int>(alphas.back().size()) != dim)
      throw UsageError("each --alpha needs " + std::to_string(dim) + " components");
  }
  if (alphas.empty()) {
    // sweep along the first axis
    const Axis axis = resolve_axis(r, o, 0.0, 20.0, 101);
    for (std::size_t i = 0; i < axis.points; ++i) {
      std::vector<double> a(static_cast<std::size_t>(dim), 0.0);
      a[0] = axis.at(i);
      alphas.push_back(a);
    }
  }

  auto cols = coordinate_names("alpha", dim);
  cols.push_back("cf");
  Table table(cols);
  for (const auto& a : alphas) {
    const double v = formula == "projected" ? analytic::cf_projection({p, a}) : analytic::cf_nu1(p, a);
    auto row = a;
    row.push_back(v);
    table.row(row);
  }
  emit(r, table, out);
  return ok;
}

int cmd_cdf(const Options& o) {
  Resolver r("cdf", o.config);
  const FlightParams p = r.flight(o);
  const std::string method_name = r.get<std::string>("method", o.method, "auto");
  analytic::CdfMethod method;
  if (method_name == "auto") method = analytic::CdfMethod::automatic;
  else if (method_name == "finite-sum") method = analytic::CdfMethod::finite_sum;
  else if (method_name == "quadrature") method = analytic::CdfMethod::quadrature;
  else throw UsageError("method must be auto, finite-sum or quadrature");
  const auto out = r.out(o);
  const Axis axis = resolve_axis(r, o, 0.0, p.reach(), 101);
  Table table({"r", "cdf"});
  for (std::size_t i = 0; i < axis.points; ++i) {
    const double rr = axis.at(i);
    table.row({rr, analytic::cdf_radial_projection(p, rr, method)});
  }
  emit(r, table, out);
  return ok;
}

int cmd_moments(const Options& o) {
  Resolver r("moments", o.config);
  const FlightParams p = r.flight(o);
  std::vector<int> orders;
  for (double v : parse_list(r.get<std::string>("orders", o.orders, "1,2,4"))) {
    if (v != std::floor(v) || v < 1) throw UsageError("orders must be positive integers");
    orders.push_back(static_cast<int>(v));
  }
  const auto count = r.get_optional<long long>("count", o.count);
  const auto out = r.out(o);

  std::vector<double> radii;
  if (count) {
    const std::size_t nsim = positive_count(*count, "count");
    const auto seed = r.get<std::uint64_t>("seed", o.seed, 0);
    const auto batch = flight::simulate_batch(p, nsim, seed, o.threads.value_or(0));
    radii.reserve(nsim);
    for (std::size_t i = 0; i < batch.size(); ++i) radii.push_back(flight::radial(batch[i].first(p.m)));
  }

  Table table(count ? std::vector<std::string>{"order", "moment", "mc_mean", "mc_se"}
                    : std::vector<std::string>{"order", "moment"});
  for (int k : orders) {
    std::vector<double> row{analytic::radial_moment(p, k)};
    if (count) {
      double s = 0.0, s2 = 0.0;
      for (double rr : radii) {
        const double v = std::pow(rr, k);
        s += v;
        s2 += v * v;
      }
      const double nr = static_cast<double>(radii.size());
      const double mean = s / nr;
      row.push_back(mean);
      row.push_back(std::sqrt(std::max(0.0, s2 / nr - mean * mean) / nr));
    }
    table.row(static_cast<std::uint64_t>(k), row);
  }
  emit(r, table, out);
  return ok;
}

int cmd_mixture(const Options& o) {
  Resolver r("mixture", o.config);
  analytic::MixtureParams mp;
  mp.base = r.flight(o);
  mp.lambda = r.get("lambda", o.lambda, mp.lambda);
  mp.n_max = r.get("n_max", o.n_max, mp.n_max);
  const bool strict = r.get("strict", o.strict ? std::optional<bool>(true) : std::nullopt, false);
  mp.validate();
  const std::string table_kind = r.get<std::string>("table", o.table, "density");
  const auto out = r.out(o);
  r.extra()["tail_bound"] = analytic::fractional_poisson_tail_bound(mp);

  if (table_kind == "pmf") {
    Table table({"n", "pmf"});
    double total = 0.0;
    for (int k = 0; k <= mp.n_max; ++k) {
      const double v = analytic::fractional_poisson_pmf(mp, k, strict);
      total += v;
      table.row(static_cast<std::uint64_t>(k), {v});
    }
    r.extra()["pmf_sum"] = total;
    emit(r, table, out);
    return ok;
  }
  if (table_kind != "density") throw UsageError("table must be density or pmf");
  if (strict) throw UsageError("--strict applies to the pmf table only");

  const int dim = mp.base.m;
  const double reach = mp.base.reach();
  const Axis axis = resolve_axis(r, o, -reach, reach, dim == 1 ? 101 : 41);
  auto cols = coordinate_names("x", dim);
  cols.push_back("density");
  Table table(cols);
  for_each_grid_point(axis, dim, [&](const std::vector<double>& x) {
    auto row = x;
    row.push_back(analytic::unconditional_density_projection(mp, x).value);
    table.row(row);
  });
  emit(r, table, out);
  return ok;
}

int cmd_validate(const Options& o) {
  Resolver r("validate", o.config);
  auto cfg = validation::SuiteConfig::defaults();
  cfg.seed = r.get<std::uint64_t>("seed", o.seed, cfg.seed);
  const std::string only = r.get<std::string>("only", o.only, "all");
  if (only == "all") cfg.only = validation::SuiteFilter::all;
  else if (only == "identities") cfg.only = validation::SuiteFilter::identities;
  else if (only == "gof") cfg.only = validation::SuiteFilter::gof;
  else throw UsageError("--only must be all, identities or gof");
  cfg.radial_samples = positive_count(
      r.get<long long>("radial_samples", o.radial_samples, static_cast<long long>(cfg.radial_samples)),
      "radial-samples");
  cfg.cf_samples =
      positive_count(r.get<long long>("cf_samples", o.cf_samples, static_cast<long long>(cfg.cf_samples)),
                     "cf-samples");
  const auto out = r.out(o);

  const auto report = validation::run_suite(cfg);
  json doc = json::object();
  doc["config"] = r.resolved();
  doc["success"] = report.success();
  doc["checks"] = json::parse(report.to_json());
  const std::string text = doc.dump(2) + "\n";
  if (out) {
    write_file(*out, text);
  } else {
    std::cout << text;
    if (!std::cout) throw IoError("write to stdout failed");
  }
  std::size_t bad = 0;
  for (const auto& e : report.entries) bad += e.passed == e.negative_control;
  std::cerr << report.entries.size() << " checks, " << bad << " unexpected\n";
  return report.success() ? ok : failed;
}

void add_flight_flags(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON file with default values; flags override it");
  sub->add_option("--d", o.d, "ambient dimension");
  sub->add_option("--m", o.m, "projection dimension");
  sub->add_option("--n", o.n, "number of direction changes");
  sub->add_option("--nu", o.nu, "drift exponent");
  sub->add_option("--c", o.c, "speed");
  sub->add_option("--t", o.t, "time horizon");
  sub->add_option("--out", o.out, "output CSV (a .json sidecar is written next to it); stdout if omitted");
}

void add_grid_flags(CLI::App* sub, Options& o) {
  sub->add_option("--lo", o.lo, "grid lower bound per axis");
  sub->add_option("--hi", o.hi, "grid upper bound per axis");
  sub->add_option("--points", o.points, "grid points per axis");
  sub->add_option("--step", o.step, "grid step per axis (ignored when --points is given)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random flights: simulation, closed-form laws and validation"};
  app.require_subcommand(1);
  Options o;

  auto* simulate = app.add_subcommand("simulate", "simulate flights and write final positions");
  add_flight_flags(simulate, o);
  simulate->add_option("--seed", o.seed, "master seed");
  simulate->add_option("--count", o.count, "number of flights");
  simulate->add_option("--threads", o.threads, "worker threads (0 = all cores); output does not depend on it");
  simulate->add_option("--trajectories", o.trajectories, "also write breakpoints of every flight to this CSV");

  auto* density = app.add_subcommand("density", "evaluate a density on a grid");
  add_flight_flags(density, o);
  add_grid_flags(density, o);
  density->add_option("--formula", o.formula, "projected | nu1 | nu1-closed | radial-projected | radial-nu1");

  auto* cf = app.add_subcommand("cf", "evaluate a characteristic function");
  add_flight_flags(cf, o);
  add_grid_flags(cf, o);
  cf->add_option("--formula", o.formula, "projected | nu1");
  cf->add_option("--alpha", o.alpha, "frequency vector as comma-separated components (repeatable)");

  auto* cdf = app.add_subcommand("cdf", "radial CDF of the projection");
  add_flight_flags(cdf, o);
  add_grid_flags(cdf, o);
  cdf->add_option("--method", o.method, "auto | finite-sum | quadrature");

  auto* moments = app.add_subcommand("moments", "radial moments of the projection");
  add_flight_flags(moments, o);
  moments->add_option("--orders", o.orders, "comma-separated positive orders");
  moments->add_option("--count", o.count, "add Monte Carlo estimates from this many flights");
  moments->add_option("--seed", o.seed, "master seed for the Monte Carlo estimates");
  moments->add_option("--threads", o.threads, "worker threads (0 = all cores)");

  auto* mixture = app.add_subcommand("mixture", "projection density with a fractional Poisson number of turns");
  add_flight_flags(mixture, o);
  add_grid_flags(mixture, o);
  mixture->add_option("--lambda", o.lambda, "rate");
  mixture->add_option("--n-max", o.n_max, "truncation of the sum over n");
  mixture->add_flag("--strict", o.strict, "pmf without the n! factor");
  mixture->add_option("--table", o.table, "density | pmf");

  auto* validate = app.add_subcommand("validate", "run the validation suite and write a JSON report");
  validate->add_option("--config", o.config, "JSON file with default values; flags override it");
  validate->add_option("--seed", o.seed, "master seed of the Monte Carlo checks");
  validate->add_option("--only", o.only, "all | identities | gof");
  validate->add_option("--radial-samples", o.radial_samples, "flights per radial check");
  validate->add_option("--cf-samples", o.cf_samples, "flights per characteristic-function check");
  validate->add_option("--out", o.out, "report path; stdout if omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o);
    if (density->parsed()) return cmd_density(o);
    if (cf->parsed()) return cmd_cf(o);
    if (cdf->parsed()) return cmd_cdf(o);
    if (moments->parsed()) return cmd_moments(o);
    if (mixture->parsed()) return cmd_mixture(o);
    if (validate->parsed()) return cmd_validate(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failed;
  }
  return usage;
}
