#include "toda/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "toda/errors.hpp"

namespace toda {

namespace {

// Log-densities above this would overflow exp() in double precision.
constexpr double kMaxLogDensity = 700.0;

/// Dormand-Prince 5(4) tableau.
struct Tableau {
  static constexpr double c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static constexpr double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  // fifth-order weights minus embedded fourth-order weights
  static constexpr double e[7] = {71.0 / 57600,      0.0,         -71.0 / 16695, 71.0 / 1920,
                                  -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
};

class TodaRhs {
 public:
  TodaRhs(const RadialProblem& p, const CartanMatrix& a) : n_(p.size()), a_(a) {
    for (std::size_t i = 0; i < n_; ++i) {
      mu_.push_back(p.gamma.mu(i).to_double());
      log_h_.push_back(std::log(p.h[i]));
    }
    rate_.resize(n_);
  }

  /// State layout [u(n), du(n), sigma(n)]. Returns false when a log-density overflows.
  bool operator()(double t, const std::vector<double>& y, std::vector<double>& dy) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double arg = y[j] + 2.0 * mu_[j] * t + log_h_[j];
      if (!(arg <= kMaxLogDensity)) return false;
      rate_[j] = std::exp(arg);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      dy[i] = y[n_ + i];
      double force = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (a_(i, j) != 0) force += a_(i, j) * rate_[j];
      }
      dy[n_ + i] = -force;
      dy[2 * n_ + i] = rate_[i];
    }
    return true;
  }

  const std::vector<double>& mu() const { return mu_; }

 private:
  std::size_t n_;
  const CartanMatrix& a_;
  std::vector<double> mu_;
  std::vector<double> log_h_;
  std::vector<double> rate_;
};

void record(Trajectory& out, double t, const std::vector<double>& y, std::size_t n) {
  out.t.push_back(t);
  for (std::size_t i = 0; i < n; ++i) {
    out.u[i].push_back(y[i]);
    out.du[i].push_back(y[n + i]);
    out.sigma[i].push_back(y[2 * n + i]);
  }
}

}  // namespace

void RadialProblem::validate() const {
  const std::size_t n = size();
  if (n == 0) throw InvalidArgument("radial problem needs at least one component");
  if (h.size() != n || eta.size() != n) {
    throw InvalidArgument("gamma, h and eta must have the same length");
  }
  for (double hi : h) {
    if (!(hi > 0.0) || !std::isfinite(hi)) throw InvalidArgument("h must be positive and finite");
  }
  for (double e : eta) {
    if (!std::isfinite(e)) throw InvalidArgument("eta must be finite");
  }
  if (!(t1 > t0)) throw InvalidArgument("t range must be increasing");
  if (t0 > std::log(1e-3)) throw InvalidArgument("start radius exp(t0) must be at most 1e-3");
  if (!(tolerances.rel > 0.0) || !(tolerances.abs > 0.0)) {
    throw InvalidArgument("step tolerances must be positive");
  }
  if (!(max_step > 0.0)) throw InvalidArgument("max_step must be positive");
}

double Trajectory::log_density(std::size_t i, std::size_t k) const {
  return u[i][k] + 2.0 * mu[i] * t[k];
}

double Trajectory::energy_rate(std::size_t i, std::size_t k) const {
  return h[i] * std::exp(log_density(i, k));
}

std::size_t Trajectory::index_of(double time) const {
  auto it = std::lower_bound(t.begin(), t.end(), time);
  if (it == t.end()) return t.size() - 1;
  if (it != t.begin() && time - *(it - 1) < *it - time) --it;
  return static_cast<std::size_t>(it - t.begin());
}

Trajectory integrate(const RadialProblem& problem) {
  problem.validate();
  const std::size_t n = problem.size();
  const std::size_t dim = 3 * n;
  const CartanMatrix a(n);
  TodaRhs rhs(problem, a);
  const auto& mu = rhs.mu();

  // Series start: sigma_j ~ E_j/(2 mu_j), du_i = -sum a_ij sigma_j,
  // u_i = eta_i - sum_j a_ij E_j/(2 mu_j)^2 with E_j = h_j e^{eta_j} r0^{2 mu_j}.
  std::vector<double> y(dim, 0.0);
  double t = problem.t0;
  for (std::size_t j = 0; j < n; ++j) {
    const double energy = problem.h[j] * std::exp(problem.eta[j] + 2.0 * mu[j] * t);
    y[2 * n + j] = energy / (2.0 * mu[j]);
    for (std::size_t i = 0; i < n; ++i) {
      if (a(i, j) == 0) continue;
      y[n + i] -= a(i, j) * energy / (2.0 * mu[j]);
      y[i] -= a(i, j) * energy / (4.0 * mu[j] * mu[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) y[i] += problem.eta[i];

  Trajectory out;
  out.mu = mu;
  out.h = problem.h;
  out.u.resize(n);
  out.du.resize(n);
  out.sigma.resize(n);
  record(out, t, y, n);

  std::vector<std::vector<double>> k(7, std::vector<double>(dim));
  std::vector<double> stage(dim), y_new(dim);
  if (!rhs(t, y, k[0])) throw Overflow("initial log-density out of range", t);

  const double safe = 0.9;
  const double alpha = 0.2;
  const double beta = 0.04;
  double err_prev = 1e-4;
  double step = std::min(1e-3, problem.max_step);
  bool overflowed = false;

  while (t < problem.t1) {
    const double min_step = 1e-12 * std::max(1.0, std::abs(t));
    if (step < min_step) {
      if (overflowed) {
        throw Overflow("log-density exceeded the exponent range near t = " + std::to_string(t), t);
      }
      throw NonConvergence("step size underflow at t = " + std::to_string(t), t);
    }
    step = std::min({step, problem.max_step, problem.t1 - t});

    bool finite = true;
    for (int s = 1; s < 7 && finite; ++s) {
      for (std::size_t d = 0; d < dim; ++d) {
        double acc = y[d];
        for (int m = 0; m < s; ++m) acc += step * Tableau::a[s][m] * k[m][d];
        stage[d] = acc;
      }
      finite = rhs(t + Tableau::c[s] * step, stage, k[s]);
    }
    if (!finite) {
      overflowed = true;
      step *= 0.25;
      continue;
    }
    // Stage 7 is evaluated at the fifth-order solution (FSAL).
    y_new = stage;

    double err = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      double delta = 0.0;
      for (int s = 0; s < 7; ++s) delta += Tableau::e[s] * k[s][d];
      delta *= step;
      const double scale =
          problem.tolerances.abs + problem.tolerances.rel * std::max(std::abs(y[d]), std::abs(y_new[d]));
      err += (delta / scale) * (delta / scale);
    }
    // Error per unit step: global error then scales at least linearly with the tolerance.
    err = std::sqrt(err / static_cast<double>(dim)) / step;

    if (!std::isfinite(err)) {
      step *= 0.25;
      continue;
    }
    if (err <= 1.0) {
      t += step;
      y = y_new;
      k[0] = k[6];
      record(out, t, y, n);
      overflowed = false;
      double factor = safe * std::pow(std::max(err, 1e-10), -alpha) * std::pow(err_prev, beta);
      factor = std::clamp(factor, 0.2, 10.0);
      err_prev = std::max(err, 1e-4);
      step *= factor;
    } else {
      step *= std::max(0.2, safe * std::pow(err, -alpha));
    }
  }
  return out;
}

LiouvilleSample liouville_exact(double mu, double lambda, double h, double r) {
  const double x = lambda * lambda * std::pow(r, 2.0 * mu);
  return {std::log(4.0 * mu * mu * lambda * lambda / h) - 2.0 * std::log1p(x),
          2.0 * mu * x / (1.0 + x)};
}

double pohozaev_at(const Trajectory& tr, const CartanMatrix& a, std::size_t k) {
  const std::size_t n = tr.size();
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    value += tr.energy_rate(i, k) - 2.0 * tr.mu[i] * tr.sigma[i][k];
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0) value += 0.5 * a(i, j) * tr.sigma[i][k] * tr.sigma[j][k];
    }
  }
  return value;
}

ResidualReport residual_report(const Trajectory& tr, const CartanMatrix& a) {
  const std::size_t n = tr.size();
  if (a.rank() != n) throw InvalidArgument("Cartan matrix rank does not match trajectory");
  ResidualReport report;
  report.neumann.assign(n, std::vector<double>(tr.points()));
  report.pohozaev.resize(tr.points());
  for (std::size_t k = 0; k < tr.points(); ++k) {
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double value = tr.du[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        if (a(i, j) != 0) value += a(i, j) * tr.sigma[j][k];
        if (a(i, j) != 0) scale += 0.5 * std::abs(a(i, j)) * tr.sigma[i][k] * tr.sigma[j][k];
      }
      report.neumann[i][k] = value;
      report.max_neumann_relative = std::max(
          report.max_neumann_relative, std::abs(value) / std::max(1.0, std::abs(tr.du[i][k])));
      scale += tr.energy_rate(i, k) + 2.0 * tr.mu[i] * tr.sigma[i][k];
    }
    report.pohozaev[k] = pohozaev_at(tr, a, k);
    report.max_pohozaev_relative =
        std::max(report.max_pohozaev_relative, std::abs(report.pohozaev[k]) / std::max(1.0, scale));
  }
  return report;
}

const char* to_string(Decay d) { return d == Decay::Fast ? "Fast" : "Slow"; }

std::vector<Decay> classify_decay(const Trajectory& tr, double time, double threshold) {
  const std::size_t k = tr.index_of(time);
  std::vector<Decay> out;
  out.reserve(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const bool low = tr.log_density(i, k) <= -threshold;
    const bool decreasing = tr.du[i][k] + 2.0 * tr.mu[i] < 0.0;
    out.push_back(low && decreasing ? Decay::Fast : Decay::Slow);
  }
  return out;
}

std::vector<Plateau> detect_plateaus(const Trajectory& tr, const PlateauOptions& options) {
  const std::size_t n = tr.size();
  auto flat = [&](std::size_t k) {
    bool decaying = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (tr.energy_rate(i, k) > options.slope_tol) return false;
      decaying = decaying || tr.du[i][k] + 2.0 * tr.mu[i] < 0.0;
    }
    return decaying;
  };
  auto sigma_at = [&](double time) {
    std::size_t k = static_cast<std::size_t>(
        std::upper_bound(tr.t.begin(), tr.t.end(), time) - tr.t.begin());
    k = std::clamp<std::size_t>(k, 1, tr.points() - 1);
    const double w = (time - tr.t[k - 1]) / (tr.t[k] - tr.t[k - 1]);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = (1.0 - w) * tr.sigma[i][k - 1] + w * tr.sigma[i][k];
    }
    return s;
  };

  std::vector<Plateau> out;
  std::size_t k = 0;
  while (k < tr.points()) {
    if (!flat(k)) {
      ++k;
      continue;
    }
    const std::size_t begin = k;
    while (k + 1 < tr.points() && flat(k + 1)) ++k;
    const double t_begin = tr.t[begin];
    const double t_end = tr.t[k];
    if (t_end - t_begin >= options.min_length) {
      out.push_back({t_begin, t_end, tr.points() > 1 ? sigma_at(0.5 * (t_begin + t_end))
                                                       : std::vector<double>{}});
    }
    ++k;
  }
  return out;
}

std::vector<std::vector<std::size_t>> detect_groups(const std::vector<PlanarPoint>& points,
                                                    double ratio) {
  if (points.empty()) throw InvalidArgument("detect_groups needs at least one point");
  if (!(ratio > 1.0)) throw InvalidArgument("group ratio must exceed 1");
  const std::size_t m = points.size();

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      pairs.emplace_back(std::hypot(points[i][0] - points[j][0], points[i][1] - points[j][1]), i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::size_t> count(m, 1);
  std::vector<double> scale(m, 0.0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (const auto& [d, i, j] : pairs) {
    const std::size_t ri = find(i);
    const std::size_t rj = find(j);
    if (ri == rj) continue;
    const bool ok_i = count[ri] == 1 || d <= ratio * scale[ri];
    const bool ok_j = count[rj] == 1 || d <= ratio * scale[rj];
    if (!ok_i || !ok_j) continue;
    parent[rj] = ri;
    count[ri] += count[rj];
    scale[ri] = std::max({scale[ri], scale[rj], d});
  }

  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == m) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

}  // namespace toda
