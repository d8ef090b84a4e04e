#include <doctest.h>

#include <cmath>

#include "fracperc/errors.hpp"
#include "fracperc/lattice.hpp"
#include "fracperc/phase.hpp"
#include "fracperc/type_system.hpp"

using namespace fracperc;

namespace {

TypeSystem diag() { return compute_type_system(project(menger(), Direction({1, 1, 1}))); }
TypeSystem anti() { return compute_type_system(project(sierpinski(), Direction({1, -1}))); }

}  // namespace

TEST_SUITE("phase-analysis") {

TEST_CASE("interval condition on the diagonal projection") {
  auto ts = diag();
  auto search = find_positive_row_word(ts);
  REQUIRE(search.witness);
  CHECK(search.witness->size() == 1);
  CHECK(search.witness->to_string() == "0");
  CHECK(*search.row == 1);

  CHECK(check_interval_sufficient(ts, Rational(1, 5)).verdict == Verdict::Holds);
  CHECK(check_interval_sufficient(ts, Rational(1, 6)).verdict == Verdict::Boundary);
  CHECK(check_interval_sufficient(ts, Rational(1, 7)).verdict == Verdict::Fails);
  CHECK(check_interval_sufficient(ts, Rational(1, 5)).min_column_sum == 6);
}

TEST_CASE("no-interval condition") {
  auto ts = diag();
  auto below = check_no_interval(ts, Rational(1, 7));
  CHECK(below.verdict == Verdict::Holds);
  CHECK(*below.witness_digit == 0);
  CHECK(check_no_interval(ts, Rational(1, 6)).verdict == Verdict::Boundary);
  CHECK(check_no_interval(ts, Rational(1, 5)).verdict == Verdict::Fails);

  auto c = anti();
  CHECK(check_no_interval(c, Rational(49, 100)).verdict == Verdict::Holds);
  CHECK(check_no_interval(c, Rational(1, 2)).verdict == Verdict::Boundary);
}

TEST_CASE("positive-measure predicate is exact") {
  auto ts = diag();
  auto pm = check_positive_measure(ts, Rational(1, 5));
  CHECK(pm.column_products == std::vector<BigInt>{288, 288, 288});
  CHECK(pm.verdict == Verdict::Holds);
  // 0.1514^3 * 288 = 0.99948... < 1 and 0.1515^3 * 288 = 1.00146... > 1
  CHECK(check_positive_measure(ts, Rational(1514, 10000)).verdict == Verdict::Fails);
  CHECK(check_positive_measure(ts, Rational(1515, 10000)).verdict == Verdict::Holds);

  auto c = anti();
  auto pc = check_positive_measure(c, Rational(1, 2));
  CHECK(pc.column_products == std::vector<BigInt>{18, 18});
  CHECK(check_positive_measure(c, Rational(381, 1000)).verdict == Verdict::Fails);
  CHECK(check_positive_measure(c, Rational(382, 1000)).verdict == Verdict::Holds);
}

TEST_CASE("power thresholds") {
  PowerThreshold t{288, Rational(-1, 3)};
  CHECK(t.to_string() == "(288)^(-1/3)");
  CHECK(std::abs(t.value() - std::pow(288.0, -1.0 / 3.0)) < 1e-15);
  CHECK(t.compare(Rational(1515, 10000)) == 1);
  CHECK(t.compare(Rational(1514, 10000)) == -1);
  PowerThreshold exact{8, Rational(-1, 3)};
  CHECK(exact.to_string() == "1/2");
  CHECK(exact.compare(Rational(1, 2)) == 0);
  CHECK(menger_disconnection_threshold().to_string() == "(8)^(-1/2)");
}

TEST_CASE("disconnection predicate 8 p^2 < 1") {
  CHECK(menger_disconnected(Rational(35, 100)));
  CHECK_FALSE(menger_disconnected(Rational(36, 100)));
  CHECK_FALSE(menger_disconnected(Rational(1, 2)));
}

TEST_CASE("phase report of the diagonal projection") {
  auto r = phase_report(diag());
  CHECK(r.p_extinction == Rational(1, 20));
  CHECK(r.p_dim1 == Rational(3, 20));
  CHECK(*r.interval_sufficient.threshold == Rational(1, 6));
  REQUIRE(r.no_interval.threshold);
  CHECK(r.no_interval.threshold->exact);
  CHECK(r.no_interval.threshold->lower == Rational(1, 6));
  CHECK(r.positive_measure.threshold->to_string() == "(288)^(-1/3)");
  CHECK(r.positive_measure.per_matrix_row_ok);
  auto rows = r.thresholds();
  CHECK(rows.size() == 5);
}

TEST_CASE("(1,0,0) projection thresholds in both forms") {
  auto minimal = phase_report(compute_type_system(project(menger(), Direction({1, 0, 0}))));
  CHECK(minimal.no_interval.threshold->lower == Rational(1, 4));
  auto scaled = phase_report(compute_type_system(scale(project(menger(), Direction({1, 0, 0})), 3)));
  CHECK(scaled.no_interval.threshold->lower == Rational(1, 4));
  CHECK(*scaled.no_interval.digit == 1);
  // B matrices have zero columns: neither the interval nor the positive-measure condition applies
  CHECK_FALSE(scaled.interval_sufficient.threshold.has_value());
  CHECK_FALSE(scaled.positive_measure.threshold.has_value());
}

TEST_CASE("Sierpinski thresholds") {
  auto anti_r = phase_report(anti());
  CHECK(anti_r.no_interval.threshold->lower == Rational(1, 2));
  CHECK(anti_r.positive_measure.threshold->to_string() == "(18)^(-1/3)");
  auto x = phase_report(compute_type_system(project(sierpinski(), Direction({1, 0}))));
  CHECK(x.no_interval.threshold->lower == Rational(1, 2));
  auto d = phase_report(compute_type_system(scale(project(sierpinski(), Direction({1, 0})), 3)));
  CHECK(d.no_interval.threshold->lower == Rational(1, 2));
}

TEST_CASE("branching process helpers") {
  CHECK(similarity_dimension(20, 3, 0.15) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(extinction_probability(20, 0.05) == 1.0);
  CHECK(extinction_probability(20, 1.0) == 0.0);
  const double q = extinction_probability(8, 0.5);
  CHECK(std::abs(std::pow(0.5 + 0.5 * q, 8) - q) < 1e-10);
  CHECK(q < 1.0);
  CHECK(binomial_extinction_by(8, 0.25, 200) == doctest::Approx(binomial_extinction_probability(8, 0.25)).epsilon(1e-9));
  CHECK_THROWS_AS(similarity_dimension(20, 3, 0.0), InputError);
  CHECK_THROWS_AS(check_no_interval(diag(), Rational(0)), InputError);
}

TEST_CASE("verdicts are monotone in p on a sampled grid") {
  auto ts = diag();
  Verdict prev = Verdict::Fails;
  for (int k = 1; k <= 100; ++k) {
    auto v = check_interval_sufficient(ts, Rational(k, 100)).verdict;
    if (prev == Verdict::Holds) CHECK(v == Verdict::Holds);
    prev = v;
  }
  bool seen_fail = false;
  for (int k = 1; k <= 100; ++k) {
    auto v = check_no_interval(ts, Rational(k, 100)).verdict;
    if (seen_fail) CHECK(v == Verdict::Fails);
    if (v == Verdict::Fails) seen_fail = true;
  }
}

}  // TEST_SUITE
