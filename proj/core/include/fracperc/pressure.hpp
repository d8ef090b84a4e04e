#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "fracperc/phase.hpp"
#include "fracperc/type_system.hpp"

namespace fracperc {

enum class PressureMode { Auto, Exact, MonteCarlo };
std::string to_string(PressureMode mode);

/// P_n(t) = (log S_n(t) - t log N) / (n log L) with S_n(t) = sum_{|w|=n} ||A_w||^t.
///
/// ||A|| = e^T A e counts N times the mass of the columns, so sum_w ||A_w|| = N M^n.
/// Dividing by N^t makes P_n(0) = 1 and P_n(1) = log M / log L hold for every n.
struct PressureEstimate {
  double t = 0.0;
  int n = 1;
  double value = 0.0;
  std::string method;  ///< "exact-enumeration" or "monte-carlo"
  double std_error = 0.0;
  std::uint64_t words = 0;
  /// S_n(t) as an exact integer when t is a nonnegative integer and the run was exact.
  std::optional<BigInt> exact_sum;
};

struct PressureOptions {
  PressureMode mode = PressureMode::Auto;
  std::uint64_t budget = 1000000;  ///< max L^n for exact enumeration
  std::uint64_t samples = 20000;   ///< Monte Carlo word count
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// Throws InputError for n < 1, t < 0, or an exact request above the budget.
PressureEstimate pressure(const TypeSystem& ts, double t, int n, const PressureOptions& options = {});

/// S_n(t) for integer t >= 0 by full enumeration, no budget check.
BigInt norm_power_sum(const TypeSystem& ts, unsigned t, int n, unsigned threads = 1);

struct LyapunovEstimate {
  int n = 1;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double w_hat = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// log(M / L); the theorem asserts w < log(M / L).
  double bound_log_ml = 0.0;
  /// (1/L) sum_a log ||A_a||, the n = 1 upper proxy from subadditivity.
  double one_step_proxy = 0.0;
  /// Largest sampled (1/n) log ||A_w||.
  double max_sample = 0.0;
  /// Samples whose product is the zero matrix (log norm = -inf).
  std::uint64_t zero_norm_samples = 0;
};

/// Mean of (1/n) log ||A_{a_1} ... A_{a_n}|| over `samples` uniform words, with a
/// 95% normal-approximation interval. Norms are exact big integers.
LyapunovEstimate lyapunov(const TypeSystem& ts, int n, std::uint64_t samples, std::uint64_t seed,
                          unsigned threads = 1);

/// B_hat = exp(-w_hat) and its interval, compared against the trivial bound L / M.
ZeroMeasureEstimate zero_measure_threshold_estimate(const TypeSystem& ts, const LyapunovEstimate& est);

/// 95% two-sided normal quantile.
inline constexpr double kNormalQuantile95 = 1.959963984540054;

}  // namespace fracperc
