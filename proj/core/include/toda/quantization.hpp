#pragma once

#include <cstddef>
#include <vector>

#include "toda/numeric/real.hpp"

namespace toda {

using numeric::Rational;
using numeric::RealScalar;

/// Cartan matrix of SU(n+1): 2 on the diagonal, -1 on the off-diagonals,
/// together with its exact inverse.
class CartanMatrix {
 public:
  /// Throws InvalidArgument for n < 1.
  explicit CartanMatrix(std::size_t n);

  std::size_t rank() const noexcept { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const Rational& inverse(std::size_t i, std::size_t j) const { return inverse_[i * n_ + j]; }
  /// Exact determinant (n + 1 for the Cartan matrix).
  Rational determinant() const;

 private:
  std::size_t n_;
  std::vector<int> entries_;
  std::vector<Rational> inverse_;
};

/// Singular source strengths, each > -1.
class GammaVector {
 public:
  /// Throws InvalidArgument if some gamma_i <= -1.
  explicit GammaVector(std::vector<Rational> gamma);
  static GammaVector zeros(std::size_t n) { return GammaVector(std::vector<Rational>(n)); }

  std::size_t size() const noexcept { return gamma_.size(); }
  const Rational& operator[](std::size_t i) const { return gamma_[i]; }
  Rational mu(std::size_t i) const { return gamma_[i] + Rational(1); }
  const std::vector<Rational>& values() const noexcept { return gamma_; }

 private:
  std::vector<Rational> gamma_;
};

using EnergyVector = std::vector<RealScalar>;

/// sum_ij a_ij s_i s_j - 4 sum_i (1 + gamma_i) s_i; zero on admissible blowup energies.
RealScalar pohozaev_residual(const CartanMatrix& a, const EnergyVector& sigma,
                             const GammaVector& gamma);

/// Unique energy of a fully bubbling sequence: A sigma = b with
/// b_i = 2 (2 + gamma_i + gamma_{n+1-i}). Exact.
EnergyVector fully_bubbling_energy(const CartanMatrix& a, const GammaVector& gamma);

/// sum_ij a_ij s_i s_j + 2 sum_i (sum_j a_ij sv_j - 2 - 2 gamma_i) s_i.
RealScalar gap_form(const CartanMatrix& a, const EnergyVector& sigma_v, const GammaVector& gamma,
                    const EnergyVector& s);

/// m_i = sum_j a_ij sv_j - 2 - 2 gamma_i.
std::vector<RealScalar> margin_check(const CartanMatrix& a, const EnergyVector& sigma_v,
                                     const GammaVector& gamma);

}  // namespace toda
