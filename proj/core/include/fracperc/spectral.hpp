#pragma once

#include <vector>

#include "fracperc/int_matrix.hpp"
#include "fracperc/rational.hpp"

namespace fracperc {

/// Certified bracket lower <= rho <= upper of the Perron root of a nonnegative
/// integer matrix. `exact` means lower == upper == rho.
struct SpectralEnclosure {
  Rational lower;
  Rational upper;
  bool exact = false;

  bool contains(const Rational& x) const { return lower <= x && x <= upper; }
  Rational width() const { return upper - lower; }
};

/// Coefficients c_0..c_n of det(xI - A), lowest degree first (monic).
std::vector<BigInt> characteristic_polynomial(const IntMatrix& a);

/// Perron root of a square nonnegative matrix. The initial bracket comes from
/// Collatz-Wielandt bounds with the all-ones vector (row and column sums); it is
/// then narrowed by Sturm-sequence bisection on the square-free characteristic
/// polynomial until width < tolerance, or closed exactly when a rational
/// eigenvalue is hit. Zero matrices give an exact 0.
SpectralEnclosure spectral_radius(const IntMatrix& a, const Rational& tolerance = Rational(1, 1000000000));

namespace poly {

using Poly = std::vector<Rational>;  // lowest degree first

Rational evaluate(const Poly& p, const Rational& x);
Poly derivative(const Poly& p);
Poly remainder(Poly a, const Poly& b);
Poly quotient(Poly a, const Poly& b);
Poly gcd(Poly a, Poly b);
/// Sturm chain of a square-free polynomial.
std::vector<Poly> sturm_chain(const Poly& p);
/// Number of distinct real roots in (a, b].
int count_roots(const std::vector<Poly>& chain, const Rational& a, const Rational& b);

}  // namespace poly

}  // namespace fracperc
