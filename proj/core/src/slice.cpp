#include "fracperc/slice.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "fracperc/errors.hpp"
#include "fracperc/parallel.hpp"
#include "fracperc/random.hpp"

namespace fracperc {

namespace {

__extension__ typedef __int128 i128;

/// Case selection shared by the rational and the scaled-integer evaluators.
/// All quantities are in units where `one` represents 1.
template <class T>
int select_case(const T& a, const T& b, const T& c, const T& one) {
  const T s = a + b;
  if (c >= one || s + c <= 0) return 0;
  if (c >= 0 && s + c <= one) return 1;
  if (-s <= c && c <= -b) return 2;
  if (-b <= c && c <= -a) return 3;
  const T rest = one - s;
  if (-a <= c && c <= std::min<T>(T(0), rest)) return 4;
  if (one <= s && rest <= c && c <= 0) return 5;
  if (std::max<T>(T(0), rest) <= c && c <= one - b) return 6;
  if (one - b <= c && c <= one - a) return 7;
  if (one - a <= c && c <= one) return 8;
  return -1;
}

/// 2 A B * ftilde for a = A/D, b = B/D, c = C/D.
inline std::int64_t scaled_area(std::int64_t A, std::int64_t B, std::int64_t C, std::int64_t D) {
  const std::int64_t ab2 = 2 * A * B;
  switch (select_case<std::int64_t>(A, B, C, D)) {
    case 0: return 0;
    case 1: return ab2;
    case 2: return (A + B + C) * (A + B + C);
    case 3: return A * (A + 2 * B + 2 * C);
    case 4: return ab2 - C * C;
    case 5: return ab2 - C * C - (A + B + C - D) * (A + B + C - D);
    case 6: return ab2 - (A + B + C - D) * (A + B + C - D);
    case 7: return A * (2 * D - 2 * C - A);
    case 8: return (D - C) * (D - C);
    default: throw InvariantError("slice case selection fell through");
  }
}

/// 18 A B * htilde as an integer; the denominator is 18 A B.
inline std::int64_t scaled_htilde(std::int64_t A, std::int64_t B, std::int64_t C, std::int64_t D) {
  std::int64_t total = 5 * scaled_area(A, B, C, D);
  for (const auto& [u, v, w] : removed_corners()) total -= scaled_area(A, B, A * u + B * v + 3 * C - D * w, D);
  return total;
}

void require_wedge(const PlaneParams& p) {
  if (sgn(p.a) < 0 || p.a > p.b || p.b > 1)
    throw InputError("slice parameters must satisfy 0 <= a <= b <= 1, got " + to_string(p));
}

}  // namespace

std::string to_string(const PlaneParams& p) {
  return "(" + to_string(p.a) + "," + to_string(p.b) + "," + to_string(p.c) + ")";
}

PlaneParams to_wedge(const PlaneParams& p) {
  if (abs(p.a) > 1 || abs(p.b) > 1) throw InputError("wedge reduction needs |a|, |b| <= 1, got " + to_string(p));
  PlaneParams q = p;
  if (sgn(q.a) < 0) {  // x -> 1 - x
    q.c += q.a;
    q.a = -q.a;
  }
  if (sgn(q.b) < 0) {  // y -> 1 - y
    q.c += q.b;
    q.b = -q.b;
  }
  if (q.a > q.b) std::swap(q.a, q.b);
  return q;
}

int slice_case(const PlaneParams& p) {
  require_wedge(p);
  int k = select_case<Rational>(p.a, p.b, p.c, Rational(1));
  if (k < 0) throw InvariantError("slice case selection fell through at " + to_string(p));
  return k;
}

Rational ftilde(const PlaneParams& p) {
  const Rational& a = p.a;
  const Rational& b = p.b;
  const Rational& c = p.c;
  Rational r;
  switch (slice_case(p)) {
    case 0: return Rational(0);
    case 1: return Rational(1);
    case 2: r = (a + b + c) * (a + b + c) / (2 * a * b); break;
    case 3: r = (a + 2 * b + 2 * c) / (2 * b); break;
    case 4: r = 1 - c * c / (2 * a * b); break;
    case 5: r = 1 - (c * c + (a + b + c - 1) * (a + b + c - 1)) / (2 * a * b); break;
    case 6: r = 1 - (a + b + c - 1) * (a + b + c - 1) / (2 * a * b); break;
    case 7: r = (2 - 2 * c - a) / (2 * b); break;
    case 8: r = (1 - c) * (1 - c) / (2 * a * b); break;
  }
  r.canonicalize();
  return r;
}

double area3d(const PlaneParams& p) {
  const double a = to_double(p.a);
  const double b = to_double(p.b);
  return to_double(ftilde(p)) * std::sqrt(1.0 + a * a + b * b);
}

const std::array<std::array<int, 3>, 7>& removed_corners() {
  static const std::array<std::array<int, 3>, 7> corners{{
      {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2},
  }};
  return corners;
}

Rational htilde(const PlaneParams& p) {
  Rational sum = 0;
  for (const auto& [u, v, w] : removed_corners())
    sum += ftilde({p.a, p.b, p.a * u + p.b * v + 3 * p.c - w});
  Rational h = Rational(5, 9) * ftilde(p) - sum / 9;
  h.canonicalize();
  return h;
}

std::string to_string(SliceRegion r) {
  switch (r) {
    case SliceRegion::PositiveOffsetUnitSum: return "positive-offset-unit-sum";
    case SliceRegion::HighOffset: return "high-offset";
    case SliceRegion::SmallSum: return "small-sum";
    case SliceRegion::SmallSlopeSum: return "small-slope-sum";
    case SliceRegion::SmallSlopeA: return "small-slope-a";
    case SliceRegion::Grid: return "grid";
  }
  return "unknown";
}

bool in_admissible_region(const PlaneParams& p) {
  return sgn(p.a) >= 0 && p.a <= p.b && p.b <= 1 && -(p.a + p.b) <= p.c && p.c <= 1;
}

bool in_grid_region(const PlaneParams& p) {
  const Rational third(1, 3);
  if (p.a < third || p.a > 1 || p.b < p.a || p.b > 1) return false;
  const Rational s = p.a + p.b;
  const bool low = Rational(2, 3) - s <= p.c && sgn(p.c) <= 0;
  const bool high = std::max(Rational(0), Rational(1 - s)) <= p.c && p.c <= third;
  return low || high;
}

SliceRegion classify_region(const PlaneParams& p) {
  if (!in_admissible_region(p)) throw InputError("point outside the admissible slice region: " + to_string(p));
  const Rational s = p.a + p.b;
  if (sgn(p.c) > 0 && s + p.c <= 1) return SliceRegion::PositiveOffsetUnitSum;
  if (Rational(1, 3) <= p.c) return SliceRegion::HighOffset;
  if (s + p.c <= Rational(2, 3)) return SliceRegion::SmallSum;
  if (s <= Rational(2, 3)) return SliceRegion::SmallSlopeSum;
  if (p.a < Rational(1, 3)) return SliceRegion::SmallSlopeA;
  return SliceRegion::Grid;
}

VerificationReport verify_grid(const Rational& step, unsigned threads) {
  if (sgn(step) <= 0 || step > 1) throw InputError("grid step must lie in (0, 1]");
  const auto start = std::chrono::steady_clock::now();
  // Common denominator D: a = A/D, b = B/D, c = C/D with integer A, B, C.
  BigInt d_big = lcm(BigInt(3), BigInt(step.get_den()));
  if (d_big > BigInt(100000000)) throw InputError("grid step denominator too large for the integer kernel");
  const std::int64_t D = d_big.get_si();
  const std::int64_t S = BigInt(step * d_big).get_si();
  const std::int64_t third = D / 3;

  std::vector<std::int64_t> a_values;
  for (std::int64_t A = third; A <= D; A += S) a_values.push_back(A);

  struct Best {
    std::int64_t num = 0;
    std::int64_t den = 1;
    std::int64_t A = 0, B = 0, C = 0;
    std::uint64_t points = 0;
    bool set = false;
  };
  std::vector<Best> slices(a_values.size());
  parallel_for(a_values.size(), threads, [&](std::size_t i) {
    Best best;
    const std::int64_t A = a_values[i];
    for (std::int64_t B = A; B <= D; B += S) {
      const std::int64_t den = 18 * A * B;
      for (std::int64_t C = 2 * third - (A + B); C <= third; C += S) {
        const std::int64_t num = scaled_htilde(A, B, C, D);
        ++best.points;
        if (!best.set || static_cast<i128>(num) * best.den < static_cast<i128>(best.num) * den) {
          best = {num, den, A, B, C, best.points, true};
        }
      }
    }
    slices[i] = best;
  });

  VerificationReport report;
  report.step = step;
  const Best* best = nullptr;
  for (const auto& s : slices) {
    report.points += s.points;
    if (!s.set) continue;
    if (!best || static_cast<i128>(s.num) * best->den < static_cast<i128>(best->num) * s.den) best = &s;
  }
  if (!best) throw InvariantError("empty slice grid");
  report.minimum = Rational(BigInt(static_cast<long>(best->num)), BigInt(static_cast<long>(best->den)));
  report.minimum.canonicalize();
  auto frac = [D](std::int64_t v) {
    Rational r(BigInt(static_cast<long>(v)), BigInt(static_cast<long>(D)));
    r.canonicalize();
    return r;
  };
  report.argmin = {frac(best->A), frac(best->B), frac(best->C)};
  report.certified = sgn(report.minimum) > 0 && report.minimum * report.minimum > 675 * step * step;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<NonnegativityFailure> sample_nonnegativity(std::optional<SliceRegion> region, std::uint64_t count,
                                                       std::uint64_t seed) {
  // Denominator 3600 puts a share of the samples exactly on region boundaries.
  constexpr std::uint64_t Q = 3600;
  std::vector<NonnegativityFailure> failures;
  CounterRng rng(seed);
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
  while (accepted < count) {
    if (++attempts > 1000 * count + 1000000) throw InputError("region too thin to sample");
    std::uint64_t x = rng.below(Q + 1);
    std::uint64_t y = rng.below(Q + 1);
    if (x > y) std::swap(x, y);
    const std::int64_t lo = -static_cast<std::int64_t>(x + y);
    const std::int64_t z = lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(Q - lo + 1)));
    PlaneParams p{Rational(static_cast<long>(x), Q), Rational(static_cast<long>(y), Q), Rational(static_cast<long>(z), Q)};
    p.a.canonicalize();
    p.b.canonicalize();
    p.c.canonicalize();
    if (region && classify_region(p) != *region) continue;
    ++accepted;
    Rational h = htilde(p);
    if (sgn(h) < 0) failures.push_back({p, h});
  }
  return failures;
}

}  // namespace fracperc
