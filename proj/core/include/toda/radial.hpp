#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "toda/quantization.hpp"

namespace toda {

struct StepTolerances {
  double rel = 1e-10;
  double abs = 1e-10;
};

/// Radially symmetric singular Toda system
///   u_i'' + sum_j a_ij h_j exp(ut_j + 2 mu_j t) = 0,   t = log r,
/// for the regular parts ut_i = u_i - 2 gamma_i log r, started at t0 from the
/// small-r series with ut_i(0) = eta_i.
struct RadialProblem {
  GammaVector gamma = GammaVector::zeros(1);
  std::vector<double> h = {1.0};
  std::vector<double> eta = {0.0};
  double t0 = -7.0;
  double t1 = 7.0;
  StepTolerances tolerances;
  /// Upper bound on accepted steps in t; keeps the output grid usable.
  double max_step = 0.1;

  std::size_t size() const noexcept { return gamma.size(); }
  /// Throws InvalidArgument on inconsistent sizes, nonpositive h, t1 <= t0,
  /// or a start radius above 1e-3.
  void validate() const;
};

/// Accepted integrator states. Row i of u/du/sigma holds component i over the grid.
struct Trajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> du;
  std::vector<std::vector<double>> sigma;
  std::vector<double> mu;
  std::vector<double> h;

  std::size_t size() const noexcept { return mu.size(); }
  std::size_t points() const noexcept { return t.size(); }
  /// log of the energy density r^2 h e^{u}: ut_i + 2 mu_i t (without log h).
  double log_density(std::size_t i, std::size_t k) const;
  /// d sigma_i / dt = h_i exp(ut_i + 2 mu_i t).
  double energy_rate(std::size_t i, std::size_t k) const;
  /// Nearest grid index to time t.
  std::size_t index_of(double time) const;
};

/// Adaptive Dormand-Prince 5(4) integration with PI step control.
/// Throws NonConvergence on step-size underflow and Overflow when a
/// log-density leaves the exponent range.
Trajectory integrate(const RadialProblem& problem);

struct LiouvilleSample {
  double u;      // regular part
  double sigma;  // running energy
};

/// Closed-form scalar solution of u'' + 2 h e^{ut + 2 mu t} = 0:
///   ut(r) = log(4 mu^2 lambda^2 / h) - 2 log(1 + lambda^2 r^{2mu}),
///   sigma(r) = 2 mu lambda^2 r^{2mu} / (1 + lambda^2 r^{2mu}).
LiouvilleSample liouville_exact(double mu, double lambda, double h, double r);

struct ResidualReport {
  std::vector<std::vector<double>> neumann;  // [component][grid]
  std::vector<double> pohozaev;
  /// max over grid of |neumann_i| / max(1, |du_i|)
  double max_neumann_relative = 0.0;
  /// max over grid of |pohozaev| / max(1, sum of magnitudes of its terms)
  double max_pohozaev_relative = 0.0;
};

/// neumann_i = du_i + sum_j a_ij sigma_j,
/// pohozaev  = sum_i sigma_i' - 2 sum_i mu_i sigma_i + 1/2 sum_ij a_ij sigma_i sigma_j.
ResidualReport residual_report(const Trajectory& trajectory, const CartanMatrix& a);

/// Pohozaev value at one grid index (shared by residual_report and the CSV writer).
double pohozaev_at(const Trajectory& trajectory, const CartanMatrix& a, std::size_t k);

enum class Decay { Fast, Slow };

const char* to_string(Decay d);

inline constexpr double kDefaultDecayThreshold = 5.0;

/// Component i is Fast at time t when its log-density ut_i + 2 mu_i t is at most
/// -threshold and still decreasing (2 mu_i + du_i < 0); Slow otherwise.
std::vector<Decay> classify_decay(const Trajectory& trajectory, double time,
                                  double threshold = kDefaultDecayThreshold);

struct Plateau {
  double t_begin = 0.0;
  double t_end = 0.0;
  std::vector<double> sigma;  // interpolated at the midpoint
};

struct PlateauOptions {
  double slope_tol = 1e-2;
  double min_length = 2.0;
};

/// Maximal stretches of length >= min_length on which every d sigma_i/dt is at
/// most slope_tol and at least one component is decaying.
std::vector<Plateau> detect_plateaus(const Trajectory& trajectory,
                                     const PlateauOptions& options = {});

using PlanarPoint = std::array<double, 2>;

/// Partition into groups of mutually comparable distances. Single-linkage
/// merging in increasing distance; a merge is refused when the distance exceeds
/// ratio times the internal scale of either (non-singleton) cluster.
/// Groups are listed by smallest member index, members ascending.
std::vector<std::vector<std::size_t>> detect_groups(const std::vector<PlanarPoint>& points,
                                                    double ratio);

}  // namespace toda
