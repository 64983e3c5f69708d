#include <random>
#include <vector>

#include "doctest.h"
#include "toda/conic.hpp"
#include "toda/errors.hpp"
#include "toda/quantization.hpp"

using namespace toda;
using numeric::compare;
using numeric::Ordering;

namespace {

RealScalar r(long p, long q = 1) { return RealScalar(Rational(p, q)); }

Rational exact(const RealScalar& x) {
  REQUIRE(x.is_rational());
  return *x.exact();
}

EnergyVector energies(std::initializer_list<long> values) {
  EnergyVector out;
  for (long v : values) out.push_back(r(v));
  return out;
}

GammaVector random_gamma(std::mt19937& rng, std::size_t n) {
  // gamma in (-9/10, 3]
  std::uniform_int_distribution<long> num(-89, 300);
  std::vector<Rational> g;
  for (std::size_t i = 0; i < n; ++i) g.emplace_back(num(rng), 100);
  return GammaVector(g);
}

}  // namespace

TEST_CASE("cartan examples") {
  const CartanMatrix a2(2);
  CHECK(a2(0, 0) == 2);
  CHECK(a2(0, 1) == -1);
  CHECK(a2(1, 0) == -1);
  CHECK(a2(1, 1) == 2);
  CHECK(a2.inverse(0, 0) == Rational(2, 3));
  CHECK(a2.inverse(0, 1) == Rational(1, 3));
  CHECK(a2.inverse(1, 1) == Rational(2, 3));

  const CartanMatrix a1(1);
  CHECK(a1(0, 0) == 2);
  CHECK(a1.inverse(0, 0) == Rational(1, 2));

  const CartanMatrix a3(3);
  CHECK(a3.determinant() == Rational(4));
  CHECK(a3.inverse(0, 0) + a3.inverse(0, 1) + a3.inverse(0, 2) == Rational(3, 2));
  CHECK(a3.inverse(1, 0) + a3.inverse(1, 1) + a3.inverse(1, 2) == Rational(2));

  CHECK_THROWS_AS(CartanMatrix(0), InvalidArgument);
}

TEST_CASE("cartan structure for n <= 8") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const CartanMatrix a(n);
    CHECK(a.determinant() == Rational(static_cast<long>(n + 1)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const int expected = i == j ? 2 : ((i + 1 == j || j + 1 == i) ? -1 : 0);
        CHECK(a(i, j) == expected);
        // Closed form of the inverse: min(i,j) (n+1-max(i,j)) / (n+1), 1-based.
        const long lo = static_cast<long>(std::min(i, j) + 1);
        const long hi = static_cast<long>(std::max(i, j) + 1);
        CHECK(a.inverse(i, j) == Rational(lo * (static_cast<long>(n) + 1 - hi),
                                          static_cast<long>(n) + 1));
        Rational dot(0);
        for (std::size_t k = 0; k < n; ++k) dot += Rational(a(i, k)) * a.inverse(k, j);
        CHECK(dot == Rational(i == j ? 1 : 0));
      }
    }
  }
}

TEST_CASE("gamma validation") {
  CHECK_THROWS_AS(GammaVector({Rational(-1)}), InvalidArgument);
  CHECK_THROWS_AS(GammaVector({Rational(0), Rational(-3, 2)}), InvalidArgument);
  CHECK(GammaVector({Rational(-9, 10)}).mu(0) == Rational(1, 10));
}

TEST_CASE("pohozaev_residual examples") {
  const CartanMatrix a(2);
  const GammaVector g = GammaVector::zeros(2);
  CHECK(exact(pohozaev_residual(a, energies({2, 0}), g)) == Rational(0));
  CHECK(exact(pohozaev_residual(a, energies({0, 0}), g)) == Rational(0));
  CHECK(exact(pohozaev_residual(a, energies({1, 1}), g)) == Rational(-6));
  CHECK_THROWS_AS(pohozaev_residual(a, energies({1}), g), InvalidArgument);
}

TEST_CASE("fully_bubbling_energy examples") {
  const auto s0 = fully_bubbling_energy(CartanMatrix(2), GammaVector::zeros(2));
  CHECK(exact(s0[0]) == Rational(4));
  CHECK(exact(s0[1]) == Rational(4));
  const auto s1 = fully_bubbling_energy(CartanMatrix(1), GammaVector({Rational(1, 2)}));
  CHECK(exact(s1[0]) == Rational(3));
  const auto s11 = fully_bubbling_energy(CartanMatrix(2), GammaVector({Rational(1), Rational(1)}));
  CHECK(exact(s11[0]) == Rational(8));
  CHECK(exact(s11[1]) == Rational(8));
}

TEST_CASE("gap_form examples") {
  const CartanMatrix a(2);
  const GammaVector g = GammaVector::zeros(2);
  const EnergyVector sv = energies({4, 4});
  CHECK(exact(gap_form(a, sv, g, energies({0, 0}))) == Rational(0));
  CHECK(exact(gap_form(a, sv, g, energies({1, 0}))) == Rational(6));
  CHECK(exact(gap_form(a, sv, g, energies({1, 1}))) == Rational(10));
}

TEST_CASE("margin_check examples") {
  const CartanMatrix a2(2);
  const GammaVector g0 = GammaVector::zeros(2);
  auto m = margin_check(a2, fully_bubbling_energy(a2, g0), g0);
  CHECK(exact(m[0]) == Rational(2));
  CHECK(exact(m[1]) == Rational(2));
  const GammaVector g1({Rational(1), Rational(1)});
  m = margin_check(a2, fully_bubbling_energy(a2, g1), g1);
  CHECK(exact(m[0]) == Rational(4));
  CHECK(exact(m[1]) == Rational(4));
  const CartanMatrix a3(3);
  const GammaVector g3({Rational(0), Rational(1, 2), Rational(0)});
  m = margin_check(a3, fully_bubbling_energy(a3, g3), g3);
  CHECK(exact(m[0]) == Rational(2));
  CHECK(exact(m[1]) == Rational(3));
  CHECK(exact(m[2]) == Rational(2));
}

TEST_CASE("fully bubbling properties for n <= 6") {
  std::mt19937 rng(1618);
  for (std::size_t n = 1; n <= 6; ++n) {
    const CartanMatrix a(n);
    for (int trial = 0; trial < 100; ++trial) {
      const GammaVector g = random_gamma(rng, n);
      const EnergyVector sv = fully_bubbling_energy(a, g);
      REQUIRE(sv.size() == n);
      for (std::size_t i = 0; i < n; ++i) CHECK(exact(sv[i]) == exact(sv[n - 1 - i]));
      CHECK(exact(pohozaev_residual(a, sv, g)).is_zero());
      const auto m = margin_check(a, sv, g);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(exact(m[i]) == Rational(2) + Rational(2) * g[n - 1 - i]);
        CHECK(exact(m[i]).sign() > 0);
      }
    }
  }
}

TEST_CASE("gap_form is positive on nonzero nonnegative s") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<long> coord(0, 50);
  for (std::size_t n = 1; n <= 6; ++n) {
    const CartanMatrix a(n);
    for (int trial = 0; trial < 50; ++trial) {
      const GammaVector g = random_gamma(rng, n);
      const EnergyVector sv = fully_bubbling_energy(a, g);
      EnergyVector s;
      bool nonzero = false;
      for (std::size_t i = 0; i < n; ++i) {
        const long v = coord(rng);
        nonzero = nonzero || v != 0;
        s.push_back(r(v, 10));
      }
      if (!nonzero) s[0] = r(1, 10);
      CHECK(exact(gap_form(a, sv, g, s)).sign() > 0);
    }
  }
}

TEST_CASE("n = 2 pohozaev residual is twice the conic residual") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<long> num(-89, 300);
  std::uniform_int_distribution<long> coord(0, 200);
  const CartanMatrix a(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational g1(num(rng), 100);
    const Rational g2(num(rng), 100);
    const GammaVector g({g1, g2});
    const RealScalar s1 = r(coord(rng), 7);
    const RealScalar s2 = trial % 2 ? r(coord(rng), 13) : r(coord(rng), 13) + sqrt(r(2));
    const RealScalar lhs = pohozaev_residual(a, {s1, s2}, g);
    const RealScalar rhs = r(2) * residual(Conic::from_gamma(g1, g2), s1, s2);
    CHECK(compare(lhs, rhs) == Ordering::EQ);
    if (lhs.is_rational()) CHECK(exact(lhs) == exact(rhs));
  }
}
