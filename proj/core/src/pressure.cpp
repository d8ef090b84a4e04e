#include "fracperc/pressure.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "fracperc/errors.hpp"
#include "fracperc/parallel.hpp"
#include "fracperc/random.hpp"

namespace fracperc {

std::string to_string(PressureMode mode) {
  switch (mode) {
    case PressureMode::Auto: return "auto";
    case PressureMode::Exact: return "exact";
    case PressureMode::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

namespace {

BigInt vector_sum(const std::vector<BigInt>& v) {
  BigInt s = 0;
  for (const auto& x : v) s += x;
  return s;
}

/// Running log-sum-exp accumulator.
struct LogSum {
  double max = -std::numeric_limits<double>::infinity();
  double scaled = 0.0;

  void add(double log_term) {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (log_term > max) {
      scaled = scaled * std::exp(max - log_term) + 1.0;
      max = log_term;
    } else {
      scaled += std::exp(log_term - max);
    }
  }
  void merge(const LogSum& o) {
    if (o.scaled == 0.0) return;
    if (o.max > max) {
      scaled = scaled * std::exp(max - o.max) + o.scaled;
      max = o.max;
    } else {
      scaled += o.scaled * std::exp(o.max - max);
    }
  }
  double log() const { return max + std::log(scaled); }
};

std::uint64_t checked_power(std::uint64_t base, int n, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

/// Depth-first walk over all words of length n that start with `prefix`,
/// calling leaf(norm) for each. Row vectors e^T A_{w|k} are kept per depth.
template <class Leaf>
void enumerate_from(const TypeSystem& ts, const std::vector<std::uint32_t>& prefix, int n, Leaf&& leaf) {
  const std::size_t N = ts.type_count();
  const std::uint32_t L = ts.digit_count();
  std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(n) + 1);
  rows[0].assign(N, BigInt(1));
  for (std::size_t k = 0; k < prefix.size(); ++k) rows[k + 1] = row_times(rows[k], ts.matrix(prefix[k]));
  const int start = static_cast<int>(prefix.size());
  if (start == n) {
    leaf(vector_sum(rows[n]));
    return;
  }
  std::vector<std::uint32_t> digit(static_cast<std::size_t>(n), 0);
  int depth = start;
  while (depth >= start) {
    if (digit[depth] == L) {
      digit[depth] = 0;
      --depth;
      if (depth >= start) ++digit[depth];
      continue;
    }
    rows[depth + 1] = row_times(rows[depth], ts.matrix(digit[depth]));
    if (depth + 1 == n) {
      leaf(vector_sum(rows[n]));
      ++digit[depth];
    } else {
      ++depth;
    }
  }
}

/// Prefixes of length k with L^k >= 4 * threads (at most n), lexicographic.
// Fixed split (independent of the worker count) so floating merges are reproducible.
std::vector<std::vector<std::uint32_t>> partition_prefixes(std::uint32_t L, int n) {
  int k = 0;
  std::uint64_t count = 1;
  while (k < n && count < 64) {
    count *= L;
    ++k;
  }
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(count);
  std::vector<std::uint32_t> p(static_cast<std::size_t>(k), 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(p);
    for (int j = k - 1; j >= 0; --j) {
      if (++p[j] < L) break;
      p[j] = 0;
    }
  }
  return out;
}

bool is_integer(double t) { return t >= 0.0 && t == std::floor(t) && t < 1e6; }

}  // namespace

BigInt norm_power_sum(const TypeSystem& ts, unsigned t, int n, unsigned threads) {
  if (n < 1) throw InputError("n must be >= 1");
  auto prefixes = partition_prefixes(ts.digit_count(), n);
  std::vector<BigInt> partial(prefixes.size(), BigInt(0));
  parallel_for(prefixes.size(), threads, [&](std::size_t i) {
    enumerate_from(ts, prefixes[i], n, [&](const BigInt& norm) {
      BigInt term;
      mpz_pow_ui(term.get_mpz_t(), norm.get_mpz_t(), t);
      partial[i] += term;
    });
  });
  BigInt total = 0;
  for (const auto& s : partial) total += s;
  return total;
}

PressureEstimate pressure(const TypeSystem& ts, double t, int n, const PressureOptions& options) {
  if (n < 1) throw InputError("pressure: n must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("pressure: t must be a finite value >= 0");
  const std::uint32_t L = ts.digit_count();
  const double logL = std::log(static_cast<double>(L));
  const double logN = std::log(static_cast<double>(ts.type_count()));
  const std::uint64_t words = checked_power(L, n, options.budget);
  const bool fits = words <= options.budget;
  if (options.mode == PressureMode::Exact && !fits)
    throw InputError("pressure: L^n exceeds the exact enumeration budget of " + std::to_string(options.budget) +
                     " words");

  PressureEstimate out;
  out.t = t;
  out.n = n;
  if (options.mode != PressureMode::MonteCarlo && fits) {
    out.method = "exact-enumeration";
    out.words = words;
    if (is_integer(t)) {
      BigInt s = norm_power_sum(ts, static_cast<unsigned>(t), n, options.threads);
      // long double keeps exact powers of L landing on the nearest double
      const long double ll = std::log(static_cast<long double>(L));
      out.value = static_cast<double>((log_big_long(s) - t * std::log(static_cast<long double>(ts.type_count()))) /
                                      (n * ll));
      out.exact_sum = std::move(s);
    } else {
      auto prefixes = partition_prefixes(L, n);
      std::vector<LogSum> partial(prefixes.size());
      parallel_for(prefixes.size(), options.threads, [&](std::size_t i) {
        enumerate_from(ts, prefixes[i], n, [&](const BigInt& norm) {
          if (sgn(norm) > 0) partial[i].add(t * log_big(norm));
        });
      });
      LogSum total;
      for (const auto& s : partial) total.merge(s);
      out.value = (total.log() - t * logN) / (n * logL);
    }
    return out;
  }

  if (options.samples < 2) throw InputError("pressure: Monte Carlo needs at least 2 samples");
  out.method = "monte-carlo";
  out.words = options.samples;
  std::vector<double> logs(options.samples);
  parallel_for(options.samples, options.threads, [&](std::size_t i) {
    CounterRng rng(derive_key(options.seed, i));
    std::vector<BigInt> row(ts.type_count(), BigInt(1));
    for (int k = 0; k < n; ++k) row = row_times(row, ts.matrix(static_cast<std::uint32_t>(rng.below(L))));
    BigInt norm = vector_sum(row);
    logs[i] = sgn(norm) > 0 ? t * log_big(norm) : -std::numeric_limits<double>::infinity();
  });
  // mean of x_i = ||A_w||^t, kept in log scale relative to the largest term
  LogSum sum;
  for (double l : logs) sum.add(l);
  double second = 0.0;
  for (double l : logs)
    if (l != -std::numeric_limits<double>::infinity()) second += std::exp(2.0 * (l - sum.max));
  const double m = static_cast<double>(options.samples);
  const double mean_scaled = sum.scaled / m;
  const double var_scaled = std::max(0.0, second / m - mean_scaled * mean_scaled) * m / (m - 1.0);
  const double log_mean = sum.max + std::log(mean_scaled);
  out.value = (n * logL + log_mean - t * logN) / (n * logL);
  // delta method: se(log mean) = sd / (mean sqrt(m))
  out.std_error = std::sqrt(var_scaled / m) / mean_scaled / (n * logL);
  return out;
}

LyapunovEstimate lyapunov(const TypeSystem& ts, int n, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (n < 1) throw InputError("lyapunov: n must be >= 1");
  if (samples < 1) throw InputError("lyapunov: samples must be >= 1");
  const std::uint32_t L = ts.digit_count();
  LyapunovEstimate out;
  out.n = n;
  out.samples = samples;
  out.seed = seed;
  out.bound_log_ml = std::log(static_cast<double>(ts.parent().total_maps()) / L);
  for (std::uint32_t a = 0; a < L; ++a) {
    BigInt norm = ts.matrix(a).entry_sum();
    out.one_step_proxy += sgn(norm) > 0 ? log_big(norm) / L : -std::numeric_limits<double>::infinity();
  }

  std::vector<double> phi(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    CounterRng rng(derive_key(seed, i));
    std::vector<BigInt> row(ts.type_count(), BigInt(1));
    for (int k = 0; k < n; ++k) row = row_times(row, ts.matrix(static_cast<std::uint32_t>(rng.below(L))));
    BigInt norm = vector_sum(row);
    phi[i] = sgn(norm) > 0 ? log_big(norm) / n : -std::numeric_limits<double>::infinity();
  });

  double sum = 0.0;
  out.max_sample = -std::numeric_limits<double>::infinity();
  for (double x : phi) {
    if (x == -std::numeric_limits<double>::infinity()) {
      ++out.zero_norm_samples;
      continue;
    }
    sum += x;
    out.max_sample = std::max(out.max_sample, x);
  }
  if (out.zero_norm_samples > 0) {
    out.w_hat = out.ci_low = out.ci_high = -std::numeric_limits<double>::infinity();
    return out;
  }
  const double m = static_cast<double>(samples);
  out.w_hat = sum / m;
  if (samples > 1) {
    double ss = 0.0;
    for (double x : phi) ss += (x - out.w_hat) * (x - out.w_hat);
    out.std_error = std::sqrt(ss / (m - 1.0) / m);
  }
  out.ci_low = out.w_hat - kNormalQuantile95 * out.std_error;
  out.ci_high = out.w_hat + kNormalQuantile95 * out.std_error;
  return out;
}

ZeroMeasureEstimate zero_measure_threshold_estimate(const TypeSystem& ts, const LyapunovEstimate& est) {
  ZeroMeasureEstimate z;
  z.b_hat = std::exp(-est.w_hat);
  z.ci_low = std::exp(-est.ci_high);
  z.ci_high = std::exp(-est.ci_low);
  z.trivial_bound = static_cast<double>(ts.digit_count()) / static_cast<double>(ts.parent().total_maps());
  z.consistent = z.b_hat > z.trivial_bound;
  z.degenerate = ts.type_count() == 1;
  return z;
}

}  // namespace fracperc
