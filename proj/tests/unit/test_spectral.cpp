#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "fracperc/lattice.hpp"
#include "fracperc/spectral.hpp"
#include "fracperc/type_system.hpp"

using namespace fracperc;

TEST_SUITE("phase-analysis") {

TEST_CASE("characteristic polynomial") {
  // det(xI - [[2,1],[1,2]]) = x^2 - 4x + 3
  auto c = characteristic_polynomial(IntMatrix{{2, 1}, {1, 2}});
  CHECK(c == std::vector<BigInt>{3, -4, 1});
}

TEST_CASE("exact radii of the builtin projections") {
  auto r0 = spectral_radius(IntMatrix{{1, 0, 0}, {6, 3, 3}, {1, 3, 3}});
  CHECK(r0.exact);
  CHECK(r0.lower == 6);
  auto c1 = spectral_radius(IntMatrix{{2, 1}, {1, 2}});
  CHECK(c1.exact);
  CHECK(c1.lower == 3);
  auto b1 = spectral_radius(IntMatrix{{0, 8, 0}, {0, 4, 0}, {0, 8, 0}});
  CHECK(b1.exact);
  CHECK(b1.lower == 4);
  auto zero = spectral_radius(IntMatrix{{0, 1}, {0, 0}});
  CHECK(zero.exact);
  CHECK(zero.upper == 0);
}

TEST_CASE("irrational radius is enclosed within tolerance") {
  IntMatrix a{{1, 1}, {1, 0}};  // golden ratio
  Rational tol(1, 1000000000);
  auto e = spectral_radius(a, tol);
  CHECK_FALSE(e.exact);
  CHECK(e.width() <= tol);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(e.lower.get_d() <= phi);
  CHECK(e.upper.get_d() >= phi);
}

TEST_CASE("enclosures meet the Collatz-Wielandt bracket on random systems") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    CAPTURE(seed);
    auto ts = compute_type_system(oracle::random_line_ifs(seed));
    for (const auto& m : ts.matrices()) {
      auto e = spectral_radius(m, Rational(1, 1000000000));
      const auto cw = oracle::power_iteration_radius(m);
      CHECK(e.lower.get_d() <= cw.upper * (1 + 1e-12));
      CHECK(cw.lower * (1 - 1e-12) <= e.upper.get_d());
      // Collatz-Wielandt: bracketed by min and max column sums
      auto cs = m.column_sums();
      CHECK(e.upper <= *std::max_element(cs.begin(), cs.end()));
    }
  }
}

TEST_CASE("Sturm root counting") {
  using poly::Poly;
  Poly p{Rational(-2), Rational(0), Rational(1)};  // x^2 - 2
  auto chain = poly::sturm_chain(p);
  CHECK(poly::count_roots(chain, Rational(0), Rational(2)) == 1);
  CHECK(poly::count_roots(chain, Rational(-2), Rational(2)) == 2);
  CHECK(poly::count_roots(chain, Rational(2), Rational(3)) == 0);
}

}  // TEST_SUITE
