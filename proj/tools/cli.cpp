#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "toda/closure.hpp"
#include "toda/errors.hpp"
#include "toda/io.hpp"
#include "toda/quantization.hpp"
#include "toda/radial.hpp"

namespace toda::cli {

namespace {

using numeric::Rational;

constexpr double kPlateauMatchTolerance = 0.05;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(item);
  return items;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> values;
  for (const auto& item : split_list(text)) values.push_back(Rational::parse(item));
  return values;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> values;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParseError("not a number: '" + item + "'");
    values.push_back(v);
  }
  return values;
}

mpfr_prec_t default_precision() {
  if (const char* env = std::getenv("TODA_PRECISION")) {
    const long bits = std::strtol(env, nullptr, 10);
    if (bits >= 64 && bits <= 65536) return bits;
  }
  return 256;
}

/// Writes to the named file, or to `fallback` when the name is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  write(file);
}

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
  std::string mu1;
  std::string mu2;
  long precision = 0;
  long eq_threshold_bits = 80;
  std::string format = "json";
  std::string output;
  unsigned min_shift = 1;
  std::size_t budget = 1'000'000;
};

int cmd_enumerate(const EnumerateArgs& args, std::ostream& out, std::ostream& err) {
  const Conic conic(Rational::parse(args.mu1), Rational::parse(args.mu2));
  ClosureOptions options;
  options.compare.max_precision = args.precision > 0 ? args.precision : default_precision();
  options.compare.eq_threshold_log2 = -args.eq_threshold_bits;
  options.min_shift = args.min_shift;
  options.budget = args.budget;
  SigmaSet set{conic, {}, {}};
  try {
    set = enumerate(conic, options);
  } catch (const ClosureBudgetExceeded& e) {
    err << "enumerate: " << e.what() << '\n';
    return kClosureFailure;
  } catch (const AmbiguousSign& e) {
    err << "enumerate: " << e.what() << '\n';
    return kClosureFailure;
  }
  emit(args.output, out, [&](std::ostream& os) {
    if (args.format == "csv") {
      io::write_csv(os, set);
    } else {
      os << io::to_json(set).dump(2) << '\n';
    }
  });
  return kOk;
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string preset;
  std::string gamma;
  std::string h;
  std::string eta;
  std::optional<double> t0;
  std::optional<double> t1;
  double rtol = 1e-10;
  double atol = 1e-10;
  double max_step = 0.1;
  double slope_tol = PlateauOptions{}.slope_tol;
  double min_length = PlateauOptions{}.min_length;
  std::string output;
  std::string report;
  std::string sweep;
};

RadialProblem build_problem(const SimulateArgs& args) {
  RadialProblem p;
  std::vector<Rational> gamma = {Rational(0)};
  std::vector<double> h;
  std::vector<double> eta;
  if (args.preset == "scalar") {
    p.t0 = -7;
    p.t1 = 7;
  } else if (args.preset == "symmetric") {
    gamma = {Rational(0), Rational(0)};
    eta = {0, 0};
    p.t0 = -7;
    p.t1 = 12;
  } else if (args.preset == "tower") {
    gamma = {Rational(0), Rational(0)};
    eta = {0, -30};
    p.t0 = -7;
    p.t1 = 40;
  } else if (!args.preset.empty()) {
    throw InvalidArgument("unknown preset '" + args.preset + "' (tower|scalar|symmetric)");
  }
  if (!args.gamma.empty()) gamma = parse_rationals(args.gamma);
  const std::size_t n = gamma.size();
  h = args.h.empty() ? std::vector<double>(n, 1.0) : parse_doubles(args.h);
  if (!args.eta.empty()) eta = parse_doubles(args.eta);
  if (eta.size() != n) eta.assign(n, 0.0);
  if (args.t0) p.t0 = *args.t0;
  if (args.t1) p.t1 = *args.t1;
  p.gamma = GammaVector(std::move(gamma));
  p.h = std::move(h);
  p.eta = std::move(eta);
  p.tolerances = {args.rtol, args.atol};
  p.max_step = args.max_step;
  p.validate();
  return p;
}

std::vector<bool> match_plateaus(const RadialProblem& p, const std::vector<Plateau>& plateaus) {
  std::vector<bool> matches;
  if (p.size() != 2) return matches;
  const SigmaSet set = enumerate(Conic::from_gamma(p.gamma[0], p.gamma[1]));
  for (const auto& plateau : plateaus) {
    bool hit = false;
    for (const auto& member : set.points) {
      hit = hit || (std::abs(member.s1.approx() - plateau.sigma[0]) <= kPlateauMatchTolerance &&
                    std::abs(member.s2.approx() - plateau.sigma[1]) <= kPlateauMatchTolerance);
    }
    matches.push_back(hit);
  }
  return matches;
}

int simulate_one(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  const RadialProblem problem = build_problem(args);
  Trajectory trajectory;
  try {
    trajectory = integrate(problem);
  } catch (const NonConvergence& e) {
    err << "simulate: " << e.what() << " (t = " << e.t() << ")\n";
    return kIntegrationFailure;
  } catch (const Overflow& e) {
    err << "simulate: " << e.what() << " (t = " << e.t() << ")\n";
    return kIntegrationFailure;
  }
  const CartanMatrix a(problem.size());
  if (!args.output.empty()) {
    emit(args.output, out, [&](std::ostream& os) { io::write_trajectory_csv(os, trajectory, a); });
  }
  const auto plateaus = detect_plateaus(trajectory, {args.slope_tol, args.min_length});
  const auto matches = match_plateaus(problem, plateaus);
  emit(args.report, out,
       [&](std::ostream& os) { os << io::plateau_report(plateaus, matches).dump(2) << '\n'; });
  return kOk;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  if (args.sweep.empty()) return simulate_one(args, out, err);

  std::ifstream file(args.sweep);
  if (!file) {
    err << "simulate: cannot open sweep file '" << args.sweep << "'\n";
    return kMalformedInput;
  }
  io::json jobs;
  try {
    jobs = io::json::parse(file);
  } catch (const io::json::exception& e) {
    err << "simulate: malformed sweep file: " << e.what() << '\n';
    return kMalformedInput;
  }
  if (!jobs.is_array()) {
    err << "simulate: sweep file must hold a JSON array of jobs\n";
    return kMalformedInput;
  }
  std::vector<SimulateArgs> configs;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& job = jobs[i];
    SimulateArgs c = args;
    c.sweep.clear();
    c.preset = job.value("preset", std::string());
    c.gamma = job.value("gamma", std::string());
    c.h = job.value("h", std::string());
    c.eta = job.value("eta", std::string());
    if (job.contains("t0")) c.t0 = job["t0"].get<double>();
    if (job.contains("t1")) c.t1 = job["t1"].get<double>();
    c.output = job.value("output", "job" + std::to_string(i) + ".csv");
    c.report = job.value("report", "job" + std::to_string(i) + ".json");
    configs.push_back(std::move(c));
  }
  std::vector<std::future<std::pair<int, std::string>>> running;
  for (const auto& c : configs) {
    running.push_back(std::async(std::launch::async, [c] {
      std::ostringstream job_out, job_err;
      int code = kOk;
      try {
        code = simulate_one(c, job_out, job_err);
      } catch (const std::exception& e) {
        job_err << "simulate: " << e.what() << '\n';
        code = kUsage;
      }
      return std::make_pair(code, job_err.str());
    }));
  }
  int worst = kOk;
  for (std::size_t i = 0; i < running.size(); ++i) {
    auto [code, diagnostics] = running[i].get();
    err << diagnostics;
    out << "job " << i << ": exit " << code << '\n';
    worst = std::max(worst, code);
  }
  return worst;
}

// ----------------------------------------------------------------- quantize

int cmd_quantize(std::size_t n, const std::string& gamma_text, const std::string& output,
                 std::ostream& out) {
  std::vector<Rational> values =
      gamma_text.empty() ? std::vector<Rational>(n) : parse_rationals(gamma_text);
  if (values.size() != n) {
    throw InvalidArgument("--gamma has " + std::to_string(values.size()) + " entries, --n is " +
                          std::to_string(n));
  }
  const GammaVector gamma(std::move(values));
  const CartanMatrix a(n);
  const EnergyVector sigma = fully_bubbling_energy(a, gamma);
  const RealScalar residual = pohozaev_residual(a, sigma, gamma);
  const auto margins = margin_check(a, sigma, gamma);
  emit(output, out, [&](std::ostream& os) {
    os << io::quantize_report(gamma, sigma, residual, margins).dump(2) << '\n';
  });
  return kOk;
}

// -------------------------------------------------------------------- check

int cmd_check(const std::string& input, const std::string& gamma_text, const std::string& h_text,
              double threshold, std::ostream& out, std::ostream& err) {
  std::ifstream file(input);
  if (!file) {
    err << "check: cannot open '" << input << "'\n";
    return kMalformedInput;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();
  const std::string header = text.substr(0, text.find('\n'));
  const std::size_t columns = split_list(header).size();
  const std::size_t n = columns >= 6 ? (columns - 3) / 3 : 0;

  Trajectory trajectory;
  try {
    std::vector<Rational> gamma =
        gamma_text.empty() ? std::vector<Rational>(n) : parse_rationals(gamma_text);
    std::vector<double> h = h_text.empty() ? std::vector<double>(n, 1.0) : parse_doubles(h_text);
    std::istringstream in(text);
    trajectory = io::read_trajectory_csv(in, GammaVector(std::move(gamma)), h);
  } catch (const ParseError& e) {
    err << "check: " << e.what() << '\n';
    return kMalformedInput;
  }
  const ResidualReport report = residual_report(trajectory, CartanMatrix(trajectory.size()));
  const bool pass =
      report.max_neumann_relative <= threshold && report.max_pohozaev_relative <= threshold;
  out << io::json{{"points", trajectory.points()},
                  {"max_neumann_relative", report.max_neumann_relative},
                  {"max_pohozaev_relative", report.max_pohozaev_relative},
                  {"threshold", threshold},
                  {"pass", pass}}
             .dump(2)
      << '\n';
  if (!pass) {
    err << "check: residual above threshold " << threshold << '\n';
    return kResidualViolation;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blowup energy sets and radial simulations for singular SU(n+1) Toda systems"};
  app.require_subcommand(1);

  EnumerateArgs en;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate the energy set for (mu1, mu2)");
  enumerate_cmd->add_option("--mu1", en.mu1, "mu1 = 1 + gamma1 (p/q or terminating decimal)")->required();
  enumerate_cmd->add_option("--mu2", en.mu2, "mu2 = 1 + gamma2")->required();
  enumerate_cmd->add_option("--precision", en.precision,
                            "maximum comparison precision in bits (default $TODA_PRECISION or 256)");
  enumerate_cmd->add_option("--eq-threshold-bits", en.eq_threshold_bits,
                            "equality threshold 2^-bits")->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--format", en.format)->check(CLI::IsMember({"json", "csv"}));
  enumerate_cmd->add_option("--output,-o", en.output, "output path (default stdout)");
  enumerate_cmd->add_option("--min-shift", en.min_shift, "smallest line shift N");
  enumerate_cmd->add_option("--budget", en.budget, "worklist step budget")->check(CLI::PositiveNumber);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate a radial Toda problem");
  simulate_cmd->set_help_flag("--help", "Print this help message and exit");
  simulate_cmd->add_option("--preset", sim.preset)->check(CLI::IsMember({"tower", "scalar", "symmetric"}));
  simulate_cmd->add_option("--gamma", sim.gamma, "comma-separated gamma_i (rationals)");
  simulate_cmd->add_option("--h", sim.h, "comma-separated positive coefficients");
  simulate_cmd->add_option("--eta", sim.eta, "comma-separated initial heights");
  simulate_cmd->add_option("--t0", sim.t0, "start log-radius");
  simulate_cmd->add_option("--t1", sim.t1, "end log-radius");
  simulate_cmd->add_option("--rtol", sim.rtol);
  simulate_cmd->add_option("--atol", sim.atol);
  simulate_cmd->add_option("--max-step", sim.max_step);
  simulate_cmd->add_option("--slope-tol", sim.slope_tol);
  simulate_cmd->add_option("--min-length", sim.min_length);
  simulate_cmd->add_option("--output,-o", sim.output, "trajectory CSV path");
  simulate_cmd->add_option("--report", sim.report, "plateau report path (default stdout)");
  simulate_cmd->add_option("--sweep", sim.sweep, "JSON array of jobs run in parallel");

  std::size_t qn = 2;
  std::string qgamma;
  std::string qoutput;
  auto* quantize_cmd = app.add_subcommand("quantize", "Fully bubbling energy and Pohozaev check");
  quantize_cmd->add_option("--n", qn, "rank n of SU(n+1)")->check(CLI::PositiveNumber);
  quantize_cmd->add_option("--gamma", qgamma, "comma-separated gamma_i");
  quantize_cmd->add_option("--output,-o", qoutput);

  std::string cinput;
  std::string cgamma;
  std::string ch;
  double cthreshold = 1e-6;
  auto* check_cmd = app.add_subcommand("check", "Recompute residuals of a trajectory CSV");
  check_cmd->set_help_flag("--help", "Print this help message and exit");
  check_cmd->add_option("--input,-i", cinput)->required();
  check_cmd->add_option("--gamma", cgamma);
  check_cmd->add_option("--h", ch);
  check_cmd->add_option("--threshold", cthreshold);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*enumerate_cmd) return cmd_enumerate(en, out, err);
    if (*simulate_cmd) return cmd_simulate(sim, out, err);
    if (*quantize_cmd) return cmd_quantize(qn, qgamma, qoutput, out);
    if (*check_cmd) return cmd_check(cinput, cgamma, ch, cthreshold, out, err);
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace toda::cli
