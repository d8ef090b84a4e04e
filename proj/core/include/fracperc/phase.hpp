#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracperc/rational.hpp"
#include "fracperc/spectral.hpp"
#include "fracperc/type_system.hpp"

namespace fracperc {

/// The theorems behind every check use strict inequalities, so equality at a
/// threshold is reported as its own outcome instead of being folded into either side.
enum class Verdict { Holds, Fails, Boundary, Inconclusive };
std::string to_string(Verdict v);

/// base^exponent with rational exponent, e.g. 288^(-1/3). Verdict paths compare
/// p against it by raising both sides to an integer power.
struct PowerThreshold {
  BigInt base;
  Rational exponent;

  double value() const;
  /// "(288)^(-1/3)", or the plain rational when the power is exact.
  std::string to_string() const;
  /// Exact sign of p - base^exponent for p > 0: -1, 0 or +1.
  int compare(const Rational& p) const;
};

/// Result of the shortest-word search for a product with an all-positive row.
struct RowWitnessSearch {
  std::optional<Word> witness;
  std::optional<std::size_t> row;
  std::size_t patterns_visited = 0;
  /// True when the pattern semigroup was exhausted without a witness.
  bool certified_absent = false;
  bool budget_exhausted = false;
};

/// Breadth-first search over the semigroup of zero patterns generated by the
/// transition matrices. Words are explored in shortlex order.
RowWitnessSearch find_positive_row_word(const TypeSystem& ts, std::size_t budget = 1000000);

struct IntervalCheck {
  Verdict verdict = Verdict::Fails;
  /// Outcome of the growth condition p * min CS > 1 alone.
  Verdict growth = Verdict::Fails;
  BigInt min_column_sum;
  RowWitnessSearch search;
};
/// Sufficient condition for the random set to contain an interval: every
/// column sum of every A_a exceeds 1/p and some finite product has a positive row.
IntervalCheck check_interval_sufficient(const TypeSystem& ts, const Rational& p,
                                        std::size_t budget = 1000000);

struct NoIntervalCheck {
  Verdict verdict = Verdict::Fails;
  std::optional<std::uint32_t> witness_digit;
  std::vector<SpectralEnclosure> radii;
};
/// Sufficient condition for no interval: some p * A_a has spectral radius < 1.
NoIntervalCheck check_no_interval(const TypeSystem& ts, const Rational& p,
                                  const Rational& tolerance = Rational(1, 1000000000));

struct PositiveMeasureCheck {
  Verdict verdict = Verdict::Fails;
  Verdict growth = Verdict::Fails;
  /// prod_a CS_{a,U} per column U; the geometric mean g_U is its L-th root.
  std::vector<BigInt> column_products;
  std::uint32_t root = 1;
  /// Whether A_b has a positive row, per digit b.
  std::vector<bool> row_ok;
};
/// Sufficient condition for positive Lebesgue measure: p^L prod_a CS_{a,U} > 1
/// for all U and every A_b has a strictly positive row.
PositiveMeasureCheck check_positive_measure(const TypeSystem& ts, const Rational& p);

/// log(M p) / log L.
double similarity_dimension(std::int64_t maps, std::int64_t base, double p);

/// Smallest fixed point in [0,1] of q = (1 - p + p q)^M (Binomial(M, p) offspring).
double extinction_probability(std::int64_t maps, double p, double tolerance = 1e-12);
/// Same for a general Binomial(trials, success) offspring law.
double binomial_extinction_probability(std::int64_t trials, double success, double tolerance = 1e-12);
/// P(extinct by generation n) = f^n(0) for Binomial(trials, success) offspring.
double binomial_extinction_by(std::int64_t trials, double success, int generations);

/// Total-disconnectedness threshold of the random Menger sponge, 8^(-1/2).
PowerThreshold menger_disconnection_threshold();
/// True iff 8 p^2 < 1.
bool menger_disconnected(const Rational& p);

/// One row of the phase report.
struct ThresholdEntry {
  std::string name;
  std::string theorem;
  std::string value_exact;
  double value_float = 0.0;
  std::string witness;
  /// "p>" when the property holds above the value, "p<" below.
  std::string side;
};

struct ZeroMeasureEstimate {
  double b_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double trivial_bound = 0.0;
  bool consistent = true;
  bool degenerate = false;
};

struct PhaseReport {
  std::string representation;
  LineIFS ifs;
  std::size_t type_count = 0;
  Rational p_extinction;
  Rational p_dim1;

  struct {
    std::optional<Rational> threshold;  ///< 1 / min CS; absent if some CS = 0
    RowWitnessSearch search;
  } interval_sufficient;

  struct {
    std::optional<SpectralEnclosure> threshold;  ///< enclosure of 1 / min_a rho(A_a)
    std::optional<std::uint32_t> digit;
    std::vector<SpectralEnclosure> radii;
  } no_interval;

  struct {
    std::optional<PowerThreshold> threshold;  ///< max_U g_U^{-1}
    std::vector<BigInt> column_products;
    bool per_matrix_row_ok = false;
  } positive_measure;

  std::optional<ZeroMeasureEstimate> zero_measure;
  std::vector<std::string> notes;

  std::vector<ThresholdEntry> thresholds() const;
};

struct PhaseOptions {
  std::string representation = "minimal";
  Rational tolerance = Rational(1, 1000000000);
  std::size_t witness_budget = 1000000;
};

PhaseReport phase_report(const TypeSystem& ts, const PhaseOptions& options = {});

}  // namespace fracperc
