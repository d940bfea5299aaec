#include "vacbir/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vacbir/config.hpp"
#include "vacbir/errors.hpp"
#include "vacbir/oracle.hpp"
#include "vacbir/parallel.hpp"
#include "vacbir/signal.hpp"
#include "vacbir/units.hpp"

#ifndef VACBIR_VERSION
#define VACBIR_VERSION "0.0.0"
#endif

namespace vacbir::cli {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::string timestamp() {
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch == nullptr || *epoch == '\0') return "not-recorded";
  char* end = nullptr;
  const long long t = std::strtoll(epoch, &end, 10);
  if (end == epoch || *end != '\0') return "not-recorded";
  const std::time_t tt = static_cast<std::time_t>(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::string command;
  std::string config_digest;
  std::vector<beams::Warning> warnings;
  std::vector<std::pair<std::string, std::string>> extra;
};

void write_manifest(std::ostream& os, const Manifest& m) {
  os << "# tool = vacbir " << VACBIR_VERSION << "\n";
  os << "# command = " << m.command << "\n";
  os << "# config_digest = " << m.config_digest << "\n";
  os << "# constants_digest = " << units::constants_digest() << "\n";
  os << "# timestamp = " << timestamp() << "\n";
  for (const auto& [k, v] : m.extra) os << "# " << k << " = " << v << "\n";
  for (const auto& w : m.warnings) os << "# warning = " << w.code << ": " << w.message << "\n";
}

nlohmann::json manifest_json(const Manifest& m) {
  nlohmann::json j;
  j["tool"] = std::string("vacbir ") + VACBIR_VERSION;
  j["command"] = m.command;
  j["config_digest"] = m.config_digest;
  j["constants_digest"] = units::constants_digest();
  j["timestamp"] = timestamp();
  j["warnings"] = nlohmann::json::array();
  for (const auto& w : m.warnings) j["warnings"].push_back({{"code", w.code}, {"message", w.message}});
  return j;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("--out", "cannot write '" + path + "'");
  return f;
}

// Unit token of "<number> <unit>", empty for a bare number.
std::string unit_of(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string value;
  std::string unit;
  in >> value >> unit;
  return unit;
}

double display_value(const units::Quantity& q, const std::string& unit) {
  if (unit.empty()) return q.value();
  return units::value_in(q, unit);
}

std::string canonical_unit(units::Dimension d) {
  switch (d) {
    case units::Dimension::length: return "nm";
    case units::Dimension::time: return "fs";
    case units::Dimension::energy: return "eV";
    default: return "";
  }
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DimensionError*>(&e)) {
    return config_error;
  }
  if (dynamic_cast<const DomainError*>(&e)) return domain_error;
  if (dynamic_cast<const AccuracyError*>(&e) || dynamic_cast<const OverflowError*>(&e)) {
    return accuracy_error;
  }
  return 1;
}

int cmd_total(const TotalOptions& o, std::ostream& out) {
  const auto doc = config::ScenarioDocument::from_file(o.config);
  const auto s = doc.scenario();
  const signal::SignalModel model(s);
  const auto report = signal::make_report(s);

  Manifest m{"total", doc.digest(), report.warnings, {}};
  write_manifest(out, m);
  out << "n_perp = " << num(report.n_perp) << "\n";
  out << "n_perp_over_n = " << num(report.n_perp_over_n) << "\n";
  out << "f_value = " << num(report.f_value) << "\n";
  out << "chi = " << num(report.f_args.chi) << "\n";
  out << "chi0 = " << num(report.f_args.chi0) << "\n";
  out << "rho = " << num(report.f_args.rho) << "\n";
  const double d0 = s.probe.ellipse_angle;
  out << "theta_probe_phi0 = " << num(model.probe_divergence(d0)) << " rad\n";
  out << "theta_probe_phi90 = " << num(model.probe_divergence(d0 + 0.5 * kPi)) << " rad\n";
  out << "theta_perp_phi0 = " << num(model.signal_divergence(d0)) << " rad\n";
  out << "theta_perp_phi90 = " << num(model.signal_divergence(d0 + 0.5 * kPi)) << " rad\n";
  if (report.discernible_n_perp) {
    out << "theta_equal_phi0 = " << num(model.theta_equal(d0)) << " rad\n";
    out << "theta_equal_phi90 = " << num(model.theta_equal(d0 + 0.5 * kPi)) << " rad\n";
    out << "n_perp_discernible = " << num(*report.discernible_n_perp) << "\n";
  }

  nlohmann::json j;
  j["manifest"] = manifest_json(m);
  j["n_perp"] = report.n_perp;
  j["n_perp_over_n"] = report.n_perp_over_n;
  j["f_value"] = report.f_value;
  j["f_args"] = {{"chi", report.f_args.chi}, {"chi0", report.f_args.chi0}, {"rho", report.f_args.rho}};
  j["divergence_by_phi"] = nlohmann::json::array();
  for (const auto& d : report.divergence_by_phi) {
    j["divergence_by_phi"].push_back({{"phi", d.phi}, {"theta_probe", d.probe}, {"theta_perp", d.signal}});
  }
  j["discernible_n_perp"] =
      report.discernible_n_perp ? nlohmann::json(*report.discernible_n_perp) : nlohmann::json();

  if (o.oracle) {
    const auto est = oracle::integrate_full(s, o.tol);
    const double dev = est.value / report.n_perp - 1.0;
    out << "oracle_n_perp = " << num(est.value) << "\n";
    out << "oracle_error = " << num(est.error) << "\n";
    out << "oracle_relative_deviation = " << num(dev) << "\n";
    j["oracle"] = {{"n_perp", est.value}, {"error", est.error}, {"tol", o.tol},
                   {"relative_deviation", dev}};
  }
  if (o.out) {
    auto f = open_out(*o.out);
    f << j.dump(2) << "\n";
  }
  return ok;
}

int cmd_scan(const ScanOptions& o, std::ostream& out) {
  const auto base = config::ScenarioDocument::from_file(o.config);
  const auto dim = config::ScenarioDocument::dimension_of(o.param);
  if (o.steps < 2) throw ValidationError("--steps", "must be >= 2");
  if (o.scale != "linear" && o.scale != "log") {
    throw ValidationError("--scale", "must be linear or log");
  }
  units::Quantity from = units::Quantity::scalar(0.0);
  units::Quantity to = units::Quantity::scalar(0.0);
  try {
    from = units::parse_quantity(o.from, dim);
    to = units::parse_quantity(o.to, dim);
  } catch (const DimensionError& e) {
    throw ValidationError("--from/--to", e.what());
  }
  const bool log_scale = o.scale == "log";
  if (log_scale && !(from.value() > 0.0 && to.value() > 0.0)) {
    throw ValidationError("--scale", "log scale requires positive bounds");
  }
  std::string unit = unit_of(o.from);
  if (unit.empty()) unit = canonical_unit(dim);

  struct Row {
    units::Quantity value = units::Quantity::scalar(0.0);
    beams::Scenario scenario;
    std::vector<beams::Warning> warnings;
    std::string line;
  };
  const auto n = static_cast<std::size_t>(o.steps);
  std::vector<Row> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    double v = log_scale ? from.value() * std::pow(to.value() / from.value(), t)
                         : from.value() + (to.value() - from.value()) * t;
    if (i == 0) v = from.value();
    if (i + 1 == n) v = to.value();
    rows[i].value = units::Quantity(v, dim);
    auto doc = base;
    doc.set(o.param, rows[i].value);
    rows[i].scenario = doc.scenario();
    rows[i].warnings = beams::scenario_warnings(rows[i].scenario);
  }

  parallel::for_each_index(n, [&](std::size_t i) {
    Row& r = rows[i];
    const signal::SignalModel model(r.scenario);
    const double total = model.n_perp_total();
    const double d0 = r.scenario.probe.ellipse_angle;
    std::string discernible;
    if (r.scenario.purity) {
      try {
        const auto& red = model.reduced();
        double v = 0.0;
        if (r.scenario.background) {
          v = model.n_perp_gt_background();
        } else if (std::abs(red.u1 - red.u2) <= 1e-12 * std::max(red.u1, red.u2)) {
          v = model.n_perp_gt_circular();
        } else {
          v = model.n_perp_gt();
        }
        discernible = num(v);
      } catch (const DomainError&) {
      }
    }
    r.line = num(display_value(r.value, unit)) + "," + num(total) + "," +
             num(total / r.scenario.probe.photon_count) + "," + num(model.f_value()) + "," +
             num(model.signal_divergence(d0)) + "," + num(model.signal_divergence(d0 + 0.5 * kPi)) +
             "," + discernible;
  });

  Manifest m{"scan", base.digest(), {}, {}};
  std::set<std::string> seen;
  for (const auto& r : rows) {
    for (const auto& w : r.warnings) {
      if (seen.insert(w.code + w.message).second) m.warnings.push_back(w);
    }
  }
  m.extra = {{"param", o.param},
             {"param_unit", unit.empty() ? "1" : unit},
             {"from", o.from},
             {"to", o.to},
             {"steps", std::to_string(o.steps)},
             {"scale", o.scale}};

  std::ofstream file;
  std::ostream* os = &out;
  if (o.out) {
    file = open_out(*o.out);
    os = &file;
  }
  write_manifest(*os, m);
  *os << "param_value,n_perp,n_perp_over_n,f_value,theta_perp_phi0,theta_perp_phi90,"
         "n_perp_discernible\n";
  for (const auto& r : rows) *os << r.line << "\n";
  return ok;
}

int cmd_angular(const AngularOptions& o, std::ostream& out) {
  const auto doc = config::ScenarioDocument::from_file(o.config);
  const auto s = doc.scenario();
  if (o.grid < 2) throw ValidationError("--grid", "must be >= 2");
  const signal::SignalModel model(s);
  const double d0 = s.probe.ellipse_angle;

  double theta_max = 0.0;
  if (o.theta_max) {
    try {
      theta_max = units::parse_quantity(*o.theta_max, units::Dimension::dimensionless).value();
    } catch (const DimensionError& e) {
      throw ValidationError("--theta-max", e.what());
    }
    if (!(theta_max > 0.0)) throw ValidationError("--theta-max", "must be > 0");
  } else {
    theta_max = 2.0 * std::max(model.signal_divergence(d0), model.signal_divergence(d0 + 0.5 * kPi));
  }

  const int n = o.grid;
  Manifest m{"angular", doc.digest(), beams::scenario_warnings(s), {}};
  m.extra = {{"theta_max", num(theta_max) + " rad"}, {"grid", std::to_string(n)}};
  if (s.purity) {
    for (int j = 0; j < n; ++j) {
      const double phi = 2.0 * kPi * j / n;
      std::string value;
      try {
        value = num(model.theta_equal(phi)) + " rad";
      } catch (const DomainError& e) {
        value = std::string("undefined (") + e.what() + ")";
      }
      m.extra.emplace_back("theta_equal phi=" + num(phi), value);
    }
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (o.out) {
    file = open_out(*o.out);
    os = &file;
  }
  write_manifest(*os, m);
  *os << "theta,phi,d2n_perp,d2n_probe,ratio\n";
  for (int i = 0; i < n; ++i) {
    const double theta = theta_max * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const signal::AngularPoint pt{theta, 2.0 * kPi * j / n};
      *os << num(pt.theta) << "," << num(pt.phi) << "," << num(model.d2n_perp(pt)) << ","
          << num(model.probe_d2n(pt)) << "," << num(model.flip_ratio(pt)) << "\n";
    }
  }
  return ok;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polarization-flip signal estimates for XFEL / high-intensity laser collisions",
               "vacbir"};
  app.set_version_flag("--version", std::string("vacbir ") + VACBIR_VERSION);
  app.require_subcommand(1);

  TotalOptions total;
  auto* t = app.add_subcommand("total", "Signal totals, divergences and discernible counts");
  t->add_option("--config", total.config, "Scenario YAML file")->required();
  t->add_option("--out", total.out, "Write a JSON summary here");
  t->add_flag("--oracle", total.oracle, "Also run the brute-force integration");
  t->add_option("--tol", total.tol, "Relative tolerance of the oracle run");

  ScanOptions scan;
  auto* sc = app.add_subcommand("scan", "Tabulate observables over one scenario field");
  sc->add_option("--config", scan.config, "Scenario YAML file")->required();
  sc->add_option("--out", scan.out, "CSV output path (default stdout)");
  sc->add_option("--param", scan.param, "Dotted field path, e.g. offsets.x0")->required();
  sc->add_option("--from", scan.from, "Start value with unit")->required();
  sc->add_option("--to", scan.to, "End value with unit")->required();
  sc->add_option("--steps", scan.steps, "Number of rows (>= 2)");
  sc->add_option("--scale", scan.scale, "linear or log");

  AngularOptions ang;
  auto* an = app.add_subcommand("angular", "Tabulate far-field distributions on a theta/phi grid");
  an->add_option("--config", ang.config, "Scenario YAML file")->required();
  an->add_option("--out", ang.out, "CSV output path (default stdout)");
  an->add_option("--theta-max", ang.theta_max, "Largest polar angle, e.g. '150 urad'");
  an->add_option("--grid", ang.grid, "Points per axis (>= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  }

  try {
    if (t->parsed()) return cmd_total(total, out);
    if (sc->parsed()) return cmd_scan(scan, out);
    return cmd_angular(ang, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  } catch (const AccuracyError& e) {
    err << "error: " << e.what() << " (estimate " << num(e.estimate()) << ", error "
        << num(e.achieved_error()) << ")\n";
    return accuracy_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace vacbir::cli
