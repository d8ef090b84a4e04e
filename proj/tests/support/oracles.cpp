#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <random>

namespace oracle {

std::vector<Point> clip(const std::vector<Point>& poly, const Rational& a, const Rational& b, const Rational& c) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    Rational fp = a * p.first + b * p.second + c;
    Rational fq = a * q.first + b * q.second + c;
    if (sgn(fp) >= 0) out.push_back(p);
    if ((sgn(fp) > 0 && sgn(fq) < 0) || (sgn(fp) < 0 && sgn(fq) > 0)) {
      Rational s = fp / (fp - fq);
      out.emplace_back(p.first + s * (q.first - p.first), p.second + s * (q.second - p.second));
    }
  }
  return out;
}

Rational area(const std::vector<Point>& poly) {
  Rational twice = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    twice += p.first * q.second - q.first * p.second;
  }
  Rational r = abs(twice) / 2;
  r.canonicalize();
  return r;
}

Rational slab_area(const Rational& a, const Rational& b, const Rational& c) {
  // open slab 0 < ax+by+c < 1; differs from the closed one only when a = b = 0
  if (sgn(a) == 0 && sgn(b) == 0) return (sgn(c) > 0 && c < 1) ? 1 : 0;
  std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  auto lower = clip(square, a, b, c);
  auto both = clip(lower, -a, -b, 1 - c);
  if (both.size() < 3) return 0;
  return area(both);
}

std::vector<std::int64_t> expand(const fracperc::LineIFS& ifs) {
  std::vector<std::int64_t> out;
  for (const auto& t : ifs.translations())
    for (std::int64_t k = 0; k < t.multiplicity; ++k) out.push_back(t.offset);
  return out;
}

IntMatrix brute_force_product(const fracperc::LineIFS& ifs, const std::vector<std::int64_t>& basic_offsets,
                              const std::vector<std::uint32_t>& word) {
  const auto maps = expand(ifs);
  const std::int64_t L = ifs.base();
  const std::size_t n = word.size();
  const std::size_t N = basic_offsets.size();
  // Work in units of L^{-(n-1)}: J^k has left end o_k L^n, image of J^V under
  // f_i is [X + o_V, X + o_V + 1] with X = sum_k t_{i_k} L^{n-k}; J^U_w is
  // [o_U L^n + val(w), o_U L^n + val(w) + 1].
  std::int64_t Ln = 1;
  std::int64_t val = 0;
  for (auto d : word) {
    Ln *= L;
    val = val * L + d;
  }
  IntMatrix out(N, N);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::int64_t X = 0;
    for (std::size_t k = 0; k < n; ++k) X = X * L + maps[idx[k]];
    for (std::size_t u = 0; u < N; ++u)
      for (std::size_t v = 0; v < N; ++v)
        if (X + basic_offsets[v] == basic_offsets[u] * Ln + val) out(u, v) += 1;
    std::size_t k = n;
    while (k > 0 && ++idx[k - 1] == maps.size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

BigInt brute_force_norm_sum(const std::vector<IntMatrix>& mats, int n, unsigned t) {
  const std::size_t L = mats.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  BigInt total = 0;
  while (true) {
    IntMatrix prod = IntMatrix::identity(mats[0].rows());
    for (auto d : idx) prod = prod * mats[d];
    BigInt norm = prod.entry_sum();
    BigInt term;
    mpz_pow_ui(term.get_mpz_t(), norm.get_mpz_t(), t);
    total += term;
    std::size_t k = idx.size();
    while (k > 0 && ++idx[k - 1] == L) idx[--k] = 0;
    if (k == 0) break;
  }
  return total;
}

RadiusBracket power_iteration_radius(const IntMatrix& a, int iterations) {
  const std::size_t n = a.rows();
  auto apply = [&](const std::vector<double>& x) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y[i] += a(i, j).get_d() * x[j];
    return y;
  };
  std::vector<double> x(n, 1.0);
  for (int it = 0; it < iterations; ++it) {
    auto y = apply(x);
    for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
    const double norm = *std::max_element(y.begin(), y.end());
    for (auto& v : y) v /= norm;
    if (*std::min_element(y.begin(), y.end()) < 1e-200) break;
    x = std::move(y);
  }
  auto y = apply(x);
  RadiusBracket r{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    r.lower = std::min(r.lower, y[i] / x[i]);
    r.upper = std::max(r.upper, y[i] / x[i]);
  }
  return r;
}

fracperc::LineIFS random_line_ifs(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::int64_t L = 2 + static_cast<std::int64_t>(rng() % 3);
  const std::int64_t span = (L - 1) * (1 + static_cast<std::int64_t>(rng() % 3));
  std::vector<std::int64_t> raw{0, span};
  const int extra = static_cast<int>(rng() % 4);
  for (int i = 0; i < extra; ++i) raw.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(span + 1)));
  std::vector<std::int64_t> expanded;
  for (auto t : raw) {
    const int mult = 1 + static_cast<int>(rng() % 2);
    for (int k = 0; k < mult; ++k) expanded.push_back(t);
  }
  return fracperc::normalize(L, expanded);
}

}  // namespace oracle
