#include "toda/quantization.hpp"

#include <string>
#include <utility>

#include "toda/errors.hpp"

namespace toda {

namespace {

void require_size(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw InvalidArgument(std::string(what) + " has length " + std::to_string(got) +
                          ", expected " + std::to_string(expected));
  }
}

/// Gauss-Jordan over the rationals; the matrix must be invertible.
std::vector<Rational> invert(std::vector<Rational> m, std::size_t n) {
  std::vector<Rational> inv(n * n);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = Rational(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (m[pivot * n + col].is_zero()) ++pivot;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(m[pivot * n + k], m[col * n + k]);
        std::swap(inv[pivot * n + k], inv[col * n + k]);
      }
    }
    const Rational scale = m[col * n + col];
    for (std::size_t k = 0; k < n; ++k) {
      m[col * n + k] /= scale;
      inv[col * n + k] /= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row * n + col].is_zero()) continue;
      const Rational factor = m[row * n + col];
      for (std::size_t k = 0; k < n; ++k) {
        m[row * n + k] -= factor * m[col * n + k];
        inv[row * n + k] -= factor * inv[col * n + k];
      }
    }
  }
  return inv;
}

}  // namespace

CartanMatrix::CartanMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {
  if (n < 1) throw InvalidArgument("Cartan matrix rank must be at least 1");
  for (std::size_t i = 0; i < n; ++i) {
    entries_[i * n + i] = 2;
    if (i + 1 < n) {
      entries_[i * n + i + 1] = -1;
      entries_[(i + 1) * n + i] = -1;
    }
  }
  std::vector<Rational> m(entries_.begin(), entries_.end());
  inverse_ = invert(std::move(m), n);
}

Rational CartanMatrix::determinant() const {
  // Tridiagonal recurrence d_k = 2 d_{k-1} - d_{k-2}.
  Rational prev(1);
  Rational cur(2);
  for (std::size_t k = 1; k < n_; ++k) {
    Rational next = Rational(2) * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

GammaVector::GammaVector(std::vector<Rational> gamma) : gamma_(std::move(gamma)) {
  for (const auto& g : gamma_) {
    if (g <= Rational(-1)) throw InvalidArgument("gamma must exceed -1, got " + g.to_string());
  }
}

RealScalar pohozaev_residual(const CartanMatrix& a, const EnergyVector& sigma,
                             const GammaVector& gamma) {
  const std::size_t n = a.rank();
  require_size(n, sigma.size(), "sigma");
  require_size(n, gamma.size(), "gamma");
  RealScalar total(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0) total = total + RealScalar(a(i, j)) * sigma[i] * sigma[j];
    }
    total = total - RealScalar(Rational(4) * gamma.mu(i)) * sigma[i];
  }
  return total;
}

EnergyVector fully_bubbling_energy(const CartanMatrix& a, const GammaVector& gamma) {
  const std::size_t n = a.rank();
  require_size(n, gamma.size(), "gamma");
  std::vector<Rational> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = Rational(2) * (Rational(2) + gamma[i] + gamma[n - 1 - i]);
  }
  EnergyVector sigma;
  sigma.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s(0);
    for (std::size_t j = 0; j < n; ++j) s += a.inverse(i, j) * rhs[j];
    sigma.emplace_back(s);
  }
  return sigma;
}

std::vector<RealScalar> margin_check(const CartanMatrix& a, const EnergyVector& sigma_v,
                                     const GammaVector& gamma) {
  const std::size_t n = a.rank();
  require_size(n, sigma_v.size(), "sigma_v");
  require_size(n, gamma.size(), "gamma");
  std::vector<RealScalar> margins;
  margins.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RealScalar m(-(Rational(2) + Rational(2) * gamma[i]));
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0) m = m + RealScalar(a(i, j)) * sigma_v[j];
    }
    margins.push_back(std::move(m));
  }
  return margins;
}

RealScalar gap_form(const CartanMatrix& a, const EnergyVector& sigma_v, const GammaVector& gamma,
                    const EnergyVector& s) {
  const std::size_t n = a.rank();
  require_size(n, s.size(), "s");
  const auto margins = margin_check(a, sigma_v, gamma);
  RealScalar total(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0) total = total + RealScalar(a(i, j)) * s[i] * s[j];
    }
    total = total + RealScalar(2) * margins[i] * s[i];
  }
  return total;
}

}  // namespace toda
