#include "fracperc/phase.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "fracperc/errors.hpp"

namespace fracperc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Boundary: return "boundary";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

Rational rational_pow(const Rational& x, unsigned long e) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Verdict compare_to_one(const Rational& x) {
  int c = cmp(x, 1);
  return c > 0 ? Verdict::Holds : (c == 0 ? Verdict::Boundary : Verdict::Fails);
}

void require_probability(const Rational& p) {
  if (sgn(p) <= 0 || p > 1) throw InputError("p must lie in (0, 1]");
}

/// Zero pattern of an N x N matrix, one bit per entry, rows packed into 64-bit words.
struct Pattern {
  std::size_t n = 0;
  std::size_t words_per_row = 0;
  std::vector<std::uint64_t> bits;

  explicit Pattern(std::size_t size = 0) : n(size), words_per_row((size + 63) / 64), bits(size * words_per_row, 0) {}

  bool get(std::size_t r, std::size_t c) const { return (bits[r * words_per_row + c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c) { bits[r * words_per_row + c / 64] |= std::uint64_t{1} << (c % 64); }

  std::optional<std::size_t> full_row() const {
    for (std::size_t r = 0; r < n; ++r) {
      bool all = true;
      for (std::size_t c = 0; c < n && all; ++c) all = get(r, c);
      if (all) return r;
    }
    return std::nullopt;
  }

  Pattern times(const Pattern& rhs) const {
    Pattern out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (get(i, k))
          for (std::size_t w = 0; w < words_per_row; ++w)
            out.bits[i * words_per_row + w] |= rhs.bits[k * words_per_row + w];
    return out;
  }

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.bits == b.bits; }
};

struct PatternHash {
  std::size_t operator()(const Pattern& p) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : p.bits) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

Pattern pattern_of(const IntMatrix& m) {
  Pattern p(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) > 0) p.set(i, j);
  return p;
}

}  // namespace

double PowerThreshold::value() const {
  return std::pow(to_double(Rational(base)), to_double(exponent));
}

std::string PowerThreshold::to_string() const {
  // Exact when base^(1/den) is an integer.
  const unsigned long root = exponent.get_den().get_ui();
  BigInt r;
  if (mpz_root(r.get_mpz_t(), base.get_mpz_t(), root) != 0) {
    long num = exponent.get_num().get_si();
    Rational v(r);
    v = num >= 0 ? rational_pow(v, static_cast<unsigned long>(num))
                 : 1 / rational_pow(v, static_cast<unsigned long>(-num));
    return fracperc::to_string(v);
  }
  return "(" + base.get_str() + ")^(" + fracperc::to_string(exponent) + ")";
}

int PowerThreshold::compare(const Rational& p) const {
  // p vs base^(s/r)  <=>  p^r vs base^s  (r > 0).
  const unsigned long r = exponent.get_den().get_ui();
  const long s = exponent.get_num().get_si();
  Rational lhs = rational_pow(p, r);
  Rational rhs = s >= 0 ? rational_pow(Rational(base), static_cast<unsigned long>(s))
                        : 1 / rational_pow(Rational(base), static_cast<unsigned long>(-s));
  return cmp(lhs, rhs) > 0 ? 1 : (cmp(lhs, rhs) == 0 ? 0 : -1);
}

RowWitnessSearch find_positive_row_word(const TypeSystem& ts, std::size_t budget) {
  RowWitnessSearch out;
  std::vector<Pattern> gens;
  for (const auto& m : ts.matrices()) gens.push_back(pattern_of(m));

  struct Node {
    Pattern pattern;
    std::vector<std::uint32_t> word;
  };
  std::unordered_set<Pattern, PatternHash> seen;
  std::deque<Node> queue;
  auto visit = [&](Pattern p, std::vector<std::uint32_t> word) -> bool {
    if (!seen.insert(p).second) return false;
    ++out.patterns_visited;
    if (auto row = p.full_row()) {
      out.witness = Word(std::move(word), ts.digit_count());
      out.row = *row;
      return true;
    }
    queue.push_back({std::move(p), std::move(word)});
    return false;
  };
  for (std::uint32_t a = 0; a < gens.size(); ++a)
    if (visit(gens[a], {a})) return out;
  while (!queue.empty()) {
    if (out.patterns_visited >= budget) {
      out.budget_exhausted = true;
      return out;
    }
    Node node = std::move(queue.front());
    queue.pop_front();
    for (std::uint32_t a = 0; a < gens.size(); ++a) {
      auto word = node.word;
      word.push_back(a);
      if (visit(node.pattern.times(gens[a]), std::move(word))) return out;
    }
  }
  out.certified_absent = true;
  return out;
}

IntervalCheck check_interval_sufficient(const TypeSystem& ts, const Rational& p, std::size_t budget) {
  require_probability(p);
  IntervalCheck out;
  bool first = true;
  for (std::uint32_t a = 0; a < ts.digit_count(); ++a)
    for (const auto& cs : column_sums(ts, a))
      if (first || cs < out.min_column_sum) {
        out.min_column_sum = cs;
        first = false;
      }
  out.growth = compare_to_one(p * Rational(out.min_column_sum));
  out.search = find_positive_row_word(ts, budget);
  if (out.growth == Verdict::Fails) {
    out.verdict = Verdict::Fails;
  } else if (out.search.witness) {
    out.verdict = out.growth;
  } else if (out.search.budget_exhausted) {
    out.verdict = Verdict::Inconclusive;
  } else {
    out.verdict = Verdict::Fails;
  }
  return out;
}

NoIntervalCheck check_no_interval(const TypeSystem& ts, const Rational& p, const Rational& tolerance) {
  require_probability(p);
  NoIntervalCheck out;
  bool boundary = false;
  std::optional<Rational> best_upper;
  for (std::uint32_t a = 0; a < ts.digit_count(); ++a) {
    auto enc = spectral_radius(ts.matrix(a), tolerance);
    out.radii.push_back(enc);
    if (p * enc.upper < 1) {
      if (!best_upper || enc.upper < *best_upper) {
        best_upper = enc.upper;
        out.witness_digit = a;
      }
    } else if (p * enc.lower <= 1) {
      boundary = true;  // equality, or an enclosure straddling 1/p
    }
  }
  if (out.witness_digit) {
    out.verdict = Verdict::Holds;
  } else {
    out.verdict = boundary ? Verdict::Boundary : Verdict::Fails;
  }
  return out;
}

PositiveMeasureCheck check_positive_measure(const TypeSystem& ts, const Rational& p) {
  require_probability(p);
  PositiveMeasureCheck out;
  const std::size_t n = ts.type_count();
  out.root = ts.digit_count();
  out.column_products.assign(n, BigInt(1));
  for (std::uint32_t a = 0; a < ts.digit_count(); ++a) {
    auto cs = column_sums(ts, a);
    for (std::size_t u = 0; u < n; ++u) out.column_products[u] *= cs[u];
    out.row_ok.push_back(ts.matrix(a).has_positive_row());
  }
  Rational pl = rational_pow(p, out.root);
  out.growth = Verdict::Holds;
  for (const auto& prod : out.column_products) {
    Verdict v = compare_to_one(pl * Rational(prod));
    if (v == Verdict::Fails) {
      out.growth = Verdict::Fails;
      break;
    }
    if (v == Verdict::Boundary) out.growth = Verdict::Boundary;
  }
  bool rows = std::all_of(out.row_ok.begin(), out.row_ok.end(), [](bool b) { return b; });
  out.verdict = rows ? out.growth : Verdict::Fails;
  return out;
}

double similarity_dimension(std::int64_t maps, std::int64_t base, double p) {
  if (!(p > 0.0) || p > 1.0) throw InputError("p must lie in (0, 1]");
  return std::log(static_cast<double>(maps) * p) / std::log(static_cast<double>(base));
}

double binomial_extinction_probability(std::int64_t trials, double success, double tolerance) {
  if (success < 0.0 || success > 1.0) throw InputError("success probability must lie in [0, 1]");
  const double n = static_cast<double>(trials);
  if (success == 1.0) return 0.0;
  if (n * success <= 1.0) return 1.0;
  auto g = [&](double q) { return std::pow(1.0 - success + success * q, n) - q; };
  // g > 0 below the fixed point, g < 0 between it and 1 (convexity).
  double hi = 0.5;
  for (int k = 1; k < 64 && g(hi) >= 0.0; ++k) hi = 1.0 - std::ldexp(1.0, -(k + 1));
  double lo = 0.0;
  while (hi - lo > tolerance) {
    double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double extinction_probability(std::int64_t maps, double p, double tolerance) {
  if (!(p > 0.0) || p > 1.0) throw InputError("p must lie in (0, 1]");
  return binomial_extinction_probability(maps, p, tolerance);
}

double binomial_extinction_by(std::int64_t trials, double success, int generations) {
  double q = 0.0;
  for (int k = 0; k < generations; ++k) q = std::pow(1.0 - success + success * q, static_cast<double>(trials));
  return q;
}

PowerThreshold menger_disconnection_threshold() { return {BigInt(8), Rational(-1, 2)}; }

bool menger_disconnected(const Rational& p) { return 8 * p * p < 1; }

std::vector<ThresholdEntry> PhaseReport::thresholds() const {
  std::vector<ThresholdEntry> out;
  out.push_back({"extinction", "branching process mean M p <= 1", fracperc::to_string(p_extinction),
                 to_double(p_extinction), "", "p>"});
  out.push_back({"similarity_dimension_one", "log(M p)/log L > 1", fracperc::to_string(p_dim1),
                 to_double(p_dim1), "", "p>"});
  if (interval_sufficient.threshold) {
    std::string witness;
    if (interval_sufficient.search.witness) {
      witness = "word " + interval_sufficient.search.witness->to_string() + " row " +
                std::to_string(*interval_sufficient.search.row);
    } else if (interval_sufficient.search.certified_absent) {
      witness = "none (pattern semigroup exhausted)";
    } else {
      witness = "inconclusive (search budget reached)";
    }
    out.push_back({"interval", "column sums p*CS > 1 and a product with a positive row",
                   fracperc::to_string(*interval_sufficient.threshold),
                   to_double(*interval_sufficient.threshold), witness, "p>"});
  }
  if (no_interval.threshold) {
    const auto& t = *no_interval.threshold;
    std::string exact = t.exact ? fracperc::to_string(t.lower)
                                : "[" + fracperc::to_string(t.lower) + "," + fracperc::to_string(t.upper) + "]";
    out.push_back({"no_interval", "spectral radius of p*A_a < 1", exact,
                   to_double(Rational((t.lower + t.upper) / 2)), "digit " + std::to_string(*no_interval.digit), "p<"});
  }
  if (positive_measure.threshold) {
    out.push_back({"positive_measure", "geometric mean of column sums > 1/p and every A_b has a positive row",
                   positive_measure.threshold->to_string(), positive_measure.threshold->value(),
                   positive_measure.per_matrix_row_ok ? "every A_b has a positive row"
                                                      : "some A_b lacks a positive row (condition fails)",
                   "p>"});
  }
  if (zero_measure) {
    std::ostringstream w;
    w << "Lyapunov estimate, CI [" << zero_measure->ci_low << "," << zero_measure->ci_high << "]";
    out.push_back({"zero_measure_estimate", "p < exp(-w) from the Lyapunov exponent w",
                   "~" + std::to_string(zero_measure->b_hat), zero_measure->b_hat, w.str(), "p<"});
  }
  return out;
}

PhaseReport phase_report(const TypeSystem& ts, const PhaseOptions& options) {
  const auto& ifs = ts.parent();
  PhaseReport r{options.representation, ifs, ts.type_count(), make_rational(1, ifs.total_maps()),
                make_rational(ifs.base(), ifs.total_maps()), {}, {}, {}, std::nullopt, {}};

  BigInt min_cs;
  bool first = true;
  for (std::uint32_t a = 0; a < ts.digit_count(); ++a)
    for (const auto& cs : column_sums(ts, a))
      if (first || cs < min_cs) {
        min_cs = cs;
        first = false;
      }
  if (sgn(min_cs) > 0) r.interval_sufficient.threshold = Rational(1) / Rational(min_cs);
  r.interval_sufficient.search = find_positive_row_word(ts, options.witness_budget);
  if (!r.interval_sufficient.search.witness)
    r.notes.push_back(r.interval_sufficient.search.certified_absent
                          ? "no finite product has a positive row: the interval condition never applies in this representation"
                          : "positive-row search hit its budget; interval condition undecided");

  std::optional<std::size_t> best;
  for (std::uint32_t a = 0; a < ts.digit_count(); ++a) {
    r.no_interval.radii.push_back(spectral_radius(ts.matrix(a), options.tolerance));
    const auto& e = r.no_interval.radii.back();
    if (!best || e.upper < r.no_interval.radii[*best].upper) best = a;
  }
  const auto& rho = r.no_interval.radii[*best];
  if (sgn(rho.lower) > 0) {
    r.no_interval.threshold = SpectralEnclosure{1 / rho.upper, 1 / rho.lower, rho.exact};
    r.no_interval.digit = static_cast<std::uint32_t>(*best);
    if (rho.upper <= 1) r.notes.push_back("min spectral radius <= 1: the no-interval condition covers all p < 1 (boundary at p = 1 when rho = 1)");
  } else {
    r.notes.push_back("some A_a is nilpotent: the no-interval condition holds for every p");
  }

  std::vector<BigInt> prods(ts.type_count(), BigInt(1));
  for (std::uint32_t a = 0; a < ts.digit_count(); ++a) {
    auto cs = column_sums(ts, a);
    for (std::size_t u = 0; u < prods.size(); ++u) prods[u] *= cs[u];
  }
  r.positive_measure.column_products = prods;
  r.positive_measure.per_matrix_row_ok =
      std::all_of(ts.matrices().begin(), ts.matrices().end(), [](const IntMatrix& m) { return m.has_positive_row(); });
  BigInt min_prod = *std::min_element(prods.begin(), prods.end());
  if (sgn(min_prod) > 0)
    r.positive_measure.threshold = PowerThreshold{min_prod, Rational(-1, static_cast<long>(ts.digit_count()))};
  if (!r.positive_measure.per_matrix_row_ok)
    r.notes.push_back("some A_b has no positive row: the positive-measure condition does not apply");

  r.notes.push_back("zero-measure threshold B > L/M needs a Lyapunov estimate (see the pressure command)");
  if (ts.type_count() == 1)
    r.notes.push_back("single basic type: matrices are scalars, every check reduces to the multiplicities");
  return r;
}

}  // namespace fracperc
