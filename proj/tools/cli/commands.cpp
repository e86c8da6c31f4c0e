#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "casimir/correlators.hpp"
#include "casimir/errors.hpp"
#include "casimir/experiment.hpp"
#include "casimir/oracle.hpp"
#include "casimir/units.hpp"
#include "casimir/variance.hpp"
#include "cli/table.hpp"

namespace casimir::cli {

namespace {

const std::vector<std::string> format_choices = {"csv", "json"};

void emit(const Table& table, const std::string& format, std::ostream& out) {
  if (format == "json")
    table.write_json(out);
  else
    table.write_csv(out);
}

struct UnitSystem {
  bool natural = false;

  double length(double x) const { return natural ? x : units::length_to_natural(x); }
  double coordinate(double x) const { return natural ? x : units::coordinate_to_natural(x); }
  std::string length_suffix() const { return natural ? "inv_eV" : "nm"; }
};

// -- correlator ---------------------------------------------------------------

struct CorrelatorArgs {
  std::string geometry = "single";
  std::optional<double> a;
  std::vector<double> z, z_prime, t, t_prime;
  double tol = SummationControl{}.tol;
  long n_max = SummationControl{}.n_max;
  bool natural = false;
  std::string format = "csv";
};

double pick(const std::vector<double>& values, std::size_t i) {
  if (values.empty())
    return 0.0;
  return values.size() == 1 ? values[0] : values.at(i);
}

Table run_correlator(const CorrelatorArgs& args) {
  const UnitSystem u{args.natural};
  if (args.z.empty())
    throw DomainError("--z is required");
  for (const auto& [values, name] : {std::pair{&args.z_prime, "--zp"}, std::pair{&args.t, "--t"},
                                     std::pair{&args.t_prime, "--tp"}})
    if (values->size() > 1 && values->size() != args.z.size())
      throw DomainError(std::string(name) + " must have one value or one per --z point");

  Geometry geometry = SinglePlate{};
  if (args.geometry == "dual") {
    if (!args.a)
      throw DomainError("dual geometry needs --a");
    geometry = DualPlate{u.length(*args.a)};
  } else if (args.a) {
    throw DomainError("--a only applies to the dual geometry");
  }
  const SummationControl control{args.tol, args.n_max};

  const std::string len = u.length_suffix();
  Table table("correlator");
  table.add_column("t_" + len, len);
  table.add_column("z_" + len, len);
  table.add_column("t_prime_" + len, len);
  table.add_column("z_prime_" + len, len);
  table.add_column("correlator_eV4", "eV^4");
  table.add_column("terms_used");
  table.add_column("tail_estimate_eV4", "eV^4");
  for (std::size_t i = 0; i < args.z.size(); ++i) {
    const double t = pick(args.t, i);
    const double tp = pick(args.t_prime, i);
    const double zp = args.z_prime.empty() ? args.z[i] : pick(args.z_prime, i);
    const SpacetimePair p{u.coordinate(t), u.coordinate(args.z[i]), u.coordinate(tp),
                          u.coordinate(zp)};
    const SeriesValue c = correlator(p, geometry, control);
    table.add_row({t, args.z[i], tp, zp, c.value, c.terms_used, c.tail_estimate});
  }
  return table;
}

// -- variance ------------------------------------------------------------------

struct VarianceArgs {
  std::string geometry = "single";
  std::string mode = "exact";
  std::optional<double> z0, b, a;
  double charge = 1.0;
  double mass = units::Constants::electron_mass;
  std::optional<double> kinetic, speed;
  double tol = SummationControl{}.tol;
  long n_max = SummationControl{}.n_max;
  bool natural = false;
  std::string format = "csv";
};

void add_variance_columns(Table& table, const UnitSystem& u) {
  const std::string len = u.length_suffix();
  table.add_column("geometry");
  table.add_column("mode");
  table.add_column("z0_" + len, len);
  table.add_column("b_" + len, len);
  table.add_column("a_" + len, len);
  table.add_column("speed_c", "c");
  table.add_column("kinetic_energy_eV", "eV");
  table.add_column("variance_eV2", "eV^2");
  table.add_column("rms_energy_eV", "eV");
  table.add_column("rms_voltage_V", "V");
  for (const char* flag : {"exact", "small_v", "small_b", "large_b", "below_window",
                           "outside_small_v", "uncharged"})
    table.add_column(flag);
  table.add_column("terms_used");
  table.add_column("tail_estimate_eV2", "eV^2");
}

Cell optional_cell(const std::optional<double>& x) {
  if (x)
    return *x;
  return std::monostate{};
}

std::vector<Cell> variance_row(const VarianceArgs& args) {
  const UnitSystem u{args.natural};
  if (!args.z0)
    throw DomainError("--z0 is required");
  if (args.kinetic.has_value() == args.speed.has_value())
    throw DomainError("give exactly one of --kinetic-eV and --speed");
  const Particle p = args.speed ? Particle::from_speed(args.charge, args.mass, *args.speed)
                                : Particle::from_kinetic(args.charge, args.mass, *args.kinetic);
  const bool dual = args.geometry == "dual";
  if (dual && !args.a)
    throw DomainError("dual geometry needs --a");
  if (!dual && args.a)
    throw DomainError("--a only applies to the dual geometry");

  const double z0 = u.length(*args.z0);
  const std::optional<double> b = args.b ? std::optional(u.length(*args.b)) : std::nullopt;
  FluctuationResult r;
  if (args.mode == "exact") {
    if (!b)
      throw DomainError("exact mode needs --b");
    const PathSegment seg{z0, *b, p.speed};
    r = dual ? variance_two_plate_exact(p, seg, u.length(*args.a), {args.tol, args.n_max})
             : variance_one_plate(p, seg);
  } else if (dual) {
    r = variance_two_plate_smallv(p, z0, u.length(*args.a));
    if (b) {
      const ValidityWindow w = validity_window(PathSegment{z0, *b, p.speed});
      r.regime.below_window = w.below;
      r.regime.small_b = *b <= 0.1 * z0;
      r.regime.large_b = *b >= 10.0 * z0;
    }
  } else {
    r = rms_one_plate_smallv(p, z0, b);
  }

  const auto& f = r.regime;
  return {args.geometry,      args.mode,         *args.z0,        optional_cell(args.b),
          optional_cell(args.a), p.speed,        p.kinetic_energy(), r.variance,
          r.rms_energy,       r.rms_voltage,     f.exact,         f.small_v,
          f.small_b,          f.large_b,         f.below_window,  f.outside_small_v,
          f.uncharged,        r.terms_used,      r.tail_estimate};
}

Table run_variance(const VarianceArgs& args) {
  Table table("variance");
  add_variance_columns(table, UnitSystem{args.natural});
  table.add_row(variance_row(args));
  return table;
}

// -- moddel --------------------------------------------------------------------

Table moddel_table(const std::vector<experiment::ModdelRow>& rows) {
  Table table("moddel");
  table.add_column("d_C_nm", "nm");
  table.add_column("z0_nm", "nm");
  table.add_column("kinetic_energy_eV", "eV");
  table.add_column("rms_energy_eV", "eV");
  table.add_column("rms_over_kinetic");
  for (const auto& m : rows.front().mirrors) {
    table.add_column(m.name + "_distance_nm", "nm");
    table.add_column(m.name + "_regime");
    table.add_column(m.name + "_omega_p_distance");
    table.add_column(m.name + "_omega_p_thickness");
    table.add_column(m.name + "_inv_omega_p_nm", "nm");
    table.add_column(m.name + "_inv_omega_p_quoted_nm", "nm");
  }
  for (const auto& row : rows) {
    std::vector<Cell> cells = {row.cavity_thickness, row.z0, row.kinetic_energy, row.rms_energy,
                               row.rms_over_kinetic};
    for (const auto& m : row.mirrors) {
      cells.emplace_back(m.distance);
      cells.emplace_back(std::string(experiment::to_string(m.assessment.regime)));
      cells.emplace_back(m.assessment.omega_p_distance);
      cells.emplace_back(m.assessment.omega_p_thickness);
      cells.emplace_back(m.inverse_plasma_length);
      cells.push_back(optional_cell(m.quoted_inverse_plasma_length));
    }
    table.add_row(std::move(cells));
  }
  return table;
}

experiment::Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw DomainError("cannot open scenario file " + path);
  try {
    const auto doc = nlohmann::json::parse(in);
    experiment::Scenario s;
    s.cavities = doc.at("cavities_nm").get<std::vector<double>>();
    s.insulator_thickness = doc.at("insulator_nm").get<double>();
    s.electrode_thickness = doc.at("electrode_nm").get<double>();
    s.applied_voltage = doc.at("applied_voltage_V").get<double>();
    for (const auto& m : doc.at("mirrors"))
      s.mirrors.push_back({m.at("name").get<std::string>(), m.at("omega_p_eV").get<double>(),
                           m.at("thickness_nm").get<double>()});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("malformed scenario file " + path + ": " + e.what());
  }
}

struct ModdelArgs {
  std::string scenario;
  double threshold = experiment::default_transparent_threshold;
  std::string format = "csv";
};

Table run_moddel(const ModdelArgs& args) {
  const experiment::Scenario s =
      args.scenario.empty() ? experiment::default_scenario() : load_scenario(args.scenario);
  return moddel_table(experiment::moddel_report(s.configs(), args.threshold));
}

// -- sweep ---------------------------------------------------------------------

struct SweepArgs {
  VarianceArgs base;
  std::string parameter;
  std::vector<double> values;
  std::optional<double> start, stop;
  long count = 0;
  std::string spacing = "linear";
  int jobs = 1;
  std::string scenario;
};

std::vector<double> sweep_values(const SweepArgs& args) {
  std::vector<double> values = args.values;
  if (values.empty()) {
    if (!args.start || !args.stop || args.count < 1)
      throw DomainError("sweep needs --values or --start, --stop and --count >= 1");
    const double lo = *args.start;
    const double hi = *args.stop;
    if (!(lo < hi))
      throw DomainError("sweep needs start < stop");
    const bool log = args.spacing == "log";
    if (log && !(lo > 0.0))
      throw DomainError("log spacing needs a positive start");
    for (long i = 0; i < args.count; ++i) {
      const double f = args.count == 1 ? 0.0 : static_cast<double>(i) / double(args.count - 1);
      values.push_back(log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
  }
  std::sort(values.begin(), values.end());
  return values;
}

// Evaluates rows concurrently; results are collected by index so the order
// is fixed, and the first failing row (by order) is rethrown.
std::vector<std::vector<Cell>> parallel_rows(std::size_t n, int jobs,
                                             const std::function<std::vector<Cell>(std::size_t)>& f) {
  std::vector<std::vector<Cell>> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        rows[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp<int>(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  std::vector<std::jthread> pool;
  for (int i = 1; i < threads; ++i)
    pool.emplace_back(worker);
  worker();
  pool.clear();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return rows;
}

Table run_sweep(const SweepArgs& args) {
  if (args.jobs < 1)
    throw DomainError("--jobs must be at least 1");
  const std::vector<double> values = sweep_values(args);

  if (args.parameter == "d_C") {
    experiment::Scenario s =
        args.scenario.empty() ? experiment::default_scenario() : load_scenario(args.scenario);
    s.cavities = values;
    const auto configs = s.configs();
    std::vector<experiment::ModdelRow> rows(configs.size());
    parallel_rows(configs.size(), args.jobs, [&](std::size_t i) {
      rows[i] = experiment::moddel_report({configs[i]}).front();
      return std::vector<Cell>{};
    });
    Table t = moddel_table(rows);
    return t;
  }

  Table table("sweep");
  add_variance_columns(table, UnitSystem{args.base.natural});
  auto rows = parallel_rows(values.size(), args.jobs, [&](std::size_t i) {
    VarianceArgs v = args.base;
    const double x = values[i];
    if (args.parameter == "z0")
      v.z0 = x;
    else if (args.parameter == "b")
      v.b = x;
    else if (args.parameter == "a")
      v.a = x;
    else if (args.parameter == "v") {
      v.speed = x;
      v.kinetic.reset();
    } else if (args.parameter == "K") {
      v.kinetic = x;
      v.speed.reset();
    }
    return variance_row(v);
  });
  for (auto& r : rows)
    table.add_row(std::move(r));
  return table;
}

// -- verify --------------------------------------------------------------------

struct VerifyArgs {
  oracle::VerificationOptions options;
  std::string fault;
  std::string format = "text";
};

nlohmann::ordered_json report_json(const oracle::VerificationReport& report) {
  nlohmann::ordered_json doc;
  doc["command"] = "verify";
  doc["seed"] = report.seed;
  doc["passed"] = report.all_passed();
  auto& checks = doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"metric", std::isfinite(c.metric) ? nlohmann::ordered_json(c.metric)
                                                         : nlohmann::ordered_json(nullptr)},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
  }
  return doc;
}

int run_verify(VerifyArgs args, std::ostream& out) {
  if (args.fault == "flip-f-sign")
    args.options.flip_reflected_sign = true;
  else if (!args.fault.empty())
    throw DomainError("unknown fault injection '" + args.fault + "'");

  const auto report = oracle::run_verification(args.options);
  if (args.format == "json") {
    out << report_json(report).dump(2) << '\n';
  } else {
    int failed = 0;
    for (const auto& c : report.checks) {
      failed += !c.passed;
      out << (c.passed ? "PASS " : "FAIL ") << c.name << "  metric=" << format_number(c.metric)
          << "  threshold=" << format_number(c.threshold) << "  " << c.detail << '\n';
    }
    out << "seed " << report.seed << ": ";
    if (failed == 0)
      out << "all " << report.checks.size() << " checks passed\n";
    else
      out << failed << " of " << report.checks.size() << " checks FAILED\n";
  }
  return report.all_passed() ? exit_ok : exit_verification;
}

// -- option wiring -------------------------------------------------------------

void add_particle_options(CLI::App* cmd, VarianceArgs& v) {
  cmd->add_option("--geometry", v.geometry, "single or dual plate")
      ->check(CLI::IsMember({"single", "dual"}));
  cmd->add_option("--mode", v.mode, "exact or small-v")->check(CLI::IsMember({"exact", "small-v"}));
  cmd->add_option("--z0", v.z0, "segment start (nm)");
  cmd->add_option("--b", v.b, "segment length (nm)");
  cmd->add_option("--a", v.a, "plate separation (nm), dual geometry only");
  cmd->add_option("--charge", v.charge, "charge in units of e")->capture_default_str();
  cmd->add_option("--mass-eV", v.mass, "rest energy (eV)")->capture_default_str();
  cmd->add_option("--kinetic-eV", v.kinetic, "kinetic energy (eV)");
  cmd->add_option("--speed", v.speed, "speed as a fraction of c");
  cmd->add_option("--tol", v.tol, "image-sum relative tolerance")->capture_default_str();
  cmd->add_option("--n-max", v.n_max, "largest image index")->capture_default_str();
  cmd->add_flag("--natural-units", v.natural, "lengths in 1/eV instead of nm");
  cmd->add_option("--format", v.format, "csv or json")->check(CLI::IsMember(format_choices));
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir-vacuum field correlators and charged-particle energy fluctuations"};
  app.name("casimir");
  app.require_subcommand(1);

  CorrelatorArgs corr;
  auto* corr_cmd = app.add_subcommand("correlator", "evaluate <E^z E^z> between two points");
  corr_cmd->add_option("--geometry", corr.geometry, "single or dual plate")
      ->check(CLI::IsMember({"single", "dual"}));
  corr_cmd->add_option("--a", corr.a, "plate separation (nm)");
  corr_cmd->add_option("--z", corr.z, "first point(s) (nm)")->delimiter(',');
  corr_cmd->add_option("--zp", corr.z_prime, "second point(s) (nm); defaults to --z")->delimiter(',');
  corr_cmd->add_option("--t", corr.t, "c*t of the first point(s) (nm)")->delimiter(',');
  corr_cmd->add_option("--tp", corr.t_prime, "c*t' of the second point(s) (nm)")->delimiter(',');
  corr_cmd->add_option("--tol", corr.tol, "image-sum relative tolerance")->capture_default_str();
  corr_cmd->add_option("--n-max", corr.n_max, "largest image index")->capture_default_str();
  corr_cmd->add_flag("--natural-units", corr.natural, "coordinates in 1/eV instead of nm");
  corr_cmd->add_option("--format", corr.format, "csv or json")->check(CLI::IsMember(format_choices));

  VarianceArgs var;
  auto* var_cmd = app.add_subcommand("variance", "energy/voltage fluctuation along a segment");
  add_particle_options(var_cmd, var);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "variance (or moddel rows) over a parameter range");
  add_particle_options(sweep_cmd, sweep.base);
  sweep_cmd->add_option("--param", sweep.parameter, "parameter to sweep")
      ->required()
      ->check(CLI::IsMember({"z0", "b", "v", "a", "K", "d_C"}));
  sweep_cmd->add_option("--values", sweep.values, "explicit parameter values")->delimiter(',');
  sweep_cmd->add_option("--start", sweep.start, "first value");
  sweep_cmd->add_option("--stop", sweep.stop, "last value");
  sweep_cmd->add_option("--count", sweep.count, "number of values");
  sweep_cmd->add_option("--spacing", sweep.spacing, "linear or log")
      ->check(CLI::IsMember({"linear", "log"}));
  sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads")->capture_default_str();
  sweep_cmd->add_option("--scenario", sweep.scenario, "scenario JSON for d_C sweeps");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "run the independent verification oracle");
  verify_cmd->add_option("--seed", verify.options.seed, "random seed")->capture_default_str();
  verify_cmd->add_option("--sets", verify.options.quadrature_sets,
                         "randomized quadrature sets per integral")
      ->capture_default_str();
  verify_cmd->add_option("--points", verify.options.derivative_points,
                         "random points per derivative check")
      ->capture_default_str();
  verify_cmd->add_option("--format", verify.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--inject-fault", verify.fault, "test hook: flip-f-sign")
      ->group("");

  ModdelArgs moddel;
  auto* moddel_cmd = app.add_subcommand("moddel", "cavity/MIM junction fluctuation estimates");
  moddel_cmd->add_option("--scenario", moddel.scenario, "scenario JSON (default: built-in)");
  moddel_cmd->add_option("--threshold", moddel.threshold,
                         "omega_p * thickness at or below which a layer is transparent")
      ->capture_default_str();
  moddel_cmd->add_option("--format", moddel.format, "csv or json")
      ->check(CLI::IsMember(format_choices));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_validation;
  }

  try {
    if (*corr_cmd)
      emit(run_correlator(corr), corr.format, out);
    else if (*var_cmd)
      emit(run_variance(var), var.format, out);
    else if (*sweep_cmd)
      emit(run_sweep(sweep), sweep.base.format, out);
    else if (*verify_cmd)
      return run_verify(verify, out);
    else if (*moddel_cmd)
      emit(run_moddel(moddel), moddel.format, out);
    return exit_ok;
  } catch (const ConvergenceError& e) {
    err << "casimir: convergence failure: " << e.what() << '\n';
    return exit_convergence;
  } catch (const Error& e) {
    err << "casimir: " << e.what() << '\n';
    return exit_validation;
  } catch (const std::exception& e) {
    err << "casimir: " << e.what() << '\n';
    return exit_failure;
  }
}

} // namespace casimir::cli
