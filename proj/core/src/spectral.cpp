#include "fracperc/spectral.hpp"

#include <algorithm>

#include "fracperc/errors.hpp"

namespace fracperc {

namespace poly {

namespace {
void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}
}  // namespace

Rational evaluate(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

static void divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
  trim(a);
  if (b.empty()) throw InvariantError("polynomial division by zero");
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  trim(q);
  r = std::move(a);
}

Poly remainder(Poly a, const Poly& b) {
  Poly q, r;
  divmod(std::move(a), b, q, r);
  return r;
}

Poly quotient(Poly a, const Poly& b) {
  Poly q, r;
  divmod(std::move(a), b, q, r);
  return q;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, derivative(p)};
  while (!chain.back().empty()) {
    Poly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

static int sign_changes(const std::vector<Poly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int count_roots(const std::vector<Poly>& chain, const Rational& a, const Rational& b) {
  return sign_changes(chain, a) - sign_changes(chain, b);
}

}  // namespace poly

std::vector<BigInt> characteristic_polynomial(const IntMatrix& a) {
  if (!a.square()) throw InputError("characteristic polynomial needs a square matrix");
  // Faddeev-LeVerrier; every division is exact over the integers.
  const std::size_t n = a.rows();
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  IntMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    IntMatrix amk = a * mk;
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    BigInt kk(static_cast<long>(k));
    if (tr % kk != 0) throw InvariantError("Faddeev-LeVerrier produced a non-integer coefficient");
    c[n - k] = -(tr / kk);
  }
  return c;
}

SpectralEnclosure spectral_radius(const IntMatrix& a, const Rational& tolerance) {
  if (!a.square()) throw InputError("spectral radius needs a square matrix");
  if (!a.nonnegative()) throw InputError("spectral radius: matrix must be nonnegative");
  if (sgn(tolerance) <= 0) throw InputError("spectral radius: tolerance must be positive");
  if (a.rows() == 0 || a.is_zero()) return {Rational(0), Rational(0), true};

  auto cols = a.column_sums();
  auto rows = a.row_sums();
  BigInt lo = std::max(*std::min_element(cols.begin(), cols.end()), *std::min_element(rows.begin(), rows.end()));
  BigInt hi = std::min(*std::max_element(cols.begin(), cols.end()), *std::max_element(rows.begin(), rows.end()));
  if (lo == hi) return {Rational(lo), Rational(lo), true};

  poly::Poly p;
  for (const auto& c : characteristic_polynomial(a)) p.emplace_back(c);
  poly::Poly sqfree = poly::quotient(p, poly::gcd(p, poly::derivative(p)));
  auto chain = poly::sturm_chain(sqfree);

  // rho is the largest real root of the characteristic polynomial and lies in [lo, hi].
  Rational upper(hi);
  Rational lower(lo);
  auto exact_at = [&](const Rational& x) {
    return sgn(poly::evaluate(sqfree, x)) == 0 && poly::count_roots(chain, x, upper) == 0;
  };
  if (exact_at(upper)) return {upper, upper, true};
  if (exact_at(lower)) return {lower, lower, true};
  // Invariant: the largest root lies in (below, upper].
  Rational below = lower - 1;
  bool integers_checked = false;
  while (upper - below >= tolerance) {
    if (!integers_checked && upper - below < 2) {
      // Close exactly on an integer root when one is bracketed.
      mpz_class k;
      mpz_fdiv_q(k.get_mpz_t(), upper.get_num_mpz_t(), upper.get_den_mpz_t());
      for (; Rational(k) > below; --k)
        if (exact_at(Rational(k))) return {Rational(k), Rational(k), true};
      integers_checked = true;
    }
    Rational mid = (below + upper) / 2;
    if (exact_at(mid)) return {mid, mid, true};
    if (poly::count_roots(chain, mid, upper) >= 1) {
      below = mid;
    } else {
      upper = mid;
    }
  }
  return {std::max(below, lower), upper, false};
}

}  // namespace fracperc
