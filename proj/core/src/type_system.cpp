#include "fracperc/type_system.hpp"

#include <sstream>

#include "fracperc/errors.hpp"

namespace fracperc {

namespace {

/// Basis of the right null space of a square rational matrix (reduced row echelon form).
std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && sgn(m[sel][col]) == 0) ++sel;
    if (sel == n) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

TypeSystem::TypeSystem(LineIFS parent, std::vector<std::int64_t> basic_offsets,
                       std::vector<IntMatrix> matrices, std::vector<Rational> nu)
    : parent_(std::move(parent)),
      basic_offsets_(std::move(basic_offsets)),
      matrices_(std::move(matrices)),
      nu_(std::move(nu)) {}

IntMatrix TypeSystem::sum_matrix() const {
  IntMatrix a(type_count(), type_count());
  for (const auto& m : matrices_) a = a + m;
  return a;
}

TypeSystem compute_type_system(const LineIFS& ifs) {
  const std::int64_t L = ifs.base();
  const std::int64_t cand = ifs.n_tilde();
  const auto n = static_cast<std::size_t>(cand);

  std::vector<IntMatrix> full(static_cast<std::size_t>(L), IntMatrix(n, n));
  for (std::int64_t c = 0; c < cand; ++c) {
    for (const auto& t : ifs.translations()) {
      std::int64_t pos = c + t.offset;
      std::int64_t target = pos / L;
      auto digit = static_cast<std::size_t>(pos % L);
      if (target >= cand) throw InvariantError("translation image left the hull");
      full[digit](static_cast<std::size_t>(target), static_cast<std::size_t>(c)) += t.multiplicity;
    }
  }

  IntMatrix total(n, n);
  for (const auto& m : full) total = total + m;
  std::vector<std::vector<Rational>> eq(n, std::vector<Rational>(n));
  const BigInt big_m(static_cast<long>(ifs.total_maps()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) eq[i][j] = Rational(total(i, j)) - (i == j ? Rational(big_m) : Rational(0));

  auto basis = null_space(std::move(eq));
  if (basis.size() != 1) {
    std::ostringstream os;
    os << "basic-type extraction for " << ifs.describe() << ": measure equation has a "
       << basis.size() << "-dimensional solution space; candidate lower bounds:";
    for (const auto& b : bracket_basic_types(ifs)) {
      os << " [" << b.offset << ": " << to_string(b.lower_bound)
         << (b.decided_at ? "" : " undecided") << "]";
    }
    if (basis.empty()) throw InvariantError(os.str());
    throw AmbiguityError(os.str());
  }
  auto v = std::move(basis.front());
  Rational sum = 0;
  for (const auto& x : v) sum += x;
  if (sgn(sum) == 0) throw InvariantError("measure vector sums to zero");
  for (auto& x : v) x /= sum;

  std::vector<std::size_t> support;
  std::vector<std::int64_t> offsets;
  std::vector<Rational> nu;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(v[i]) < 0) throw InvariantError("measure vector has a negative entry");
    if (sgn(v[i]) > 0) {
      support.push_back(i);
      offsets.push_back(static_cast<std::int64_t>(i));
      nu.push_back(v[i]);
    }
  }
  std::vector<IntMatrix> restricted;
  restricted.reserve(full.size());
  for (const auto& m : full) restricted.push_back(m.submatrix(support, support));

  TypeSystem ts(ifs, std::move(offsets), std::move(restricted), std::move(nu));
  validate_type_system(ts);
  return ts;
}

std::optional<std::size_t> primitivity_exponent(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return std::nullopt;
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n)), power;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = sgn(a(i, j)) > 0;
  power = base;
  for (std::size_t k = 1; k <= n * n; ++k) {
    bool all = true;
    for (std::size_t i = 0; i < n && all; ++i)
      for (std::size_t j = 0; j < n && all; ++j) all = power[i][j];
    if (all) return k;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < n; ++m)
        if (power[i][m])
          for (std::size_t j = 0; j < n; ++j)
            if (base[m][j]) next[i][j] = true;
    power = std::move(next);
  }
  return std::nullopt;
}

void validate_type_system(const TypeSystem& ts) {
  const std::size_t n = ts.type_count();
  const std::int64_t L = ts.parent().base();
  const BigInt big_m(static_cast<long>(ts.parent().total_maps()));
  if (n == 0) throw InvariantError("type system has no basic types");
  if (ts.matrices().size() != static_cast<std::size_t>(L))
    throw InvariantError("type system must carry one matrix per digit");

  // Closure: every image of a basic type lands on an L-adic child of a basic type.
  for (std::int64_t k : ts.basic_offsets()) {
    for (const auto& t : ts.parent().translations()) {
      std::int64_t target = (k + t.offset) / L;
      bool found = false;
      for (std::int64_t o : ts.basic_offsets()) found = found || o == target;
      if (!found) {
        std::ostringstream os;
        os << "closure violated: offset " << k << " + " << t.offset << " lands on non-basic "
           << target;
        throw InvariantError(os.str());
      }
    }
  }

  IntMatrix total = ts.sum_matrix();
  for (const auto& s : total.column_sums())
    if (s != big_m) throw InvariantError("mass conservation violated: column sum != M");

  Rational nu_sum = 0;
  for (const auto& x : ts.nu()) {
    if (sgn(x) <= 0) throw InvariantError("nu must be strictly positive");
    nu_sum += x;
  }
  if (nu_sum != 1) throw InvariantError("nu must sum to 1");
  for (std::size_t i = 0; i < n; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) row += Rational(total(i, j)) * ts.nu()[j];
    if (row != Rational(big_m) * ts.nu()[i]) throw InvariantError("nu is not a fixed point of A/M");
  }
  if (!primitivity_exponent(total)) throw InvariantError("sum matrix is not primitive");
}

IntMatrix matrix_product(const TypeSystem& ts, const Word& w) {
  IntMatrix out = IntMatrix::identity(ts.type_count());
  for (auto d : w.digits) {
    if (d >= ts.digit_count()) throw InputError("word digit >= L");
    out = out * ts.matrix(d);
  }
  return out;
}

std::vector<BigInt> column_sums(const TypeSystem& ts, std::uint32_t digit) {
  if (digit >= ts.digit_count()) throw InputError("digit >= L");
  return ts.matrix(digit).column_sums();
}

Rational cylinder_measure(const TypeSystem& ts, std::size_t type_index, const Word& w) {
  if (type_index >= ts.type_count()) throw InputError("type index out of range");
  IntMatrix prod = matrix_product(ts, w);
  Rational acc = 0;
  for (std::size_t k = 0; k < ts.type_count(); ++k) acc += Rational(prod(type_index, k)) * ts.nu()[k];
  BigInt scale_den;
  mpz_pow_ui(scale_den.get_mpz_t(), BigInt(static_cast<long>(ts.parent().total_maps())).get_mpz_t(),
             w.size());
  acc /= Rational(scale_den);
  return acc;
}

BigInt covering_cylinder_count(const TypeSystem& ts, const Word& w) {
  std::vector<BigInt> row(ts.type_count(), BigInt(1));
  for (auto d : w.digits) {
    if (d >= ts.digit_count()) throw InputError("word digit >= L");
    row = row_times(row, ts.matrix(d));
  }
  BigInt s = 0;
  for (const auto& x : row) s += x;
  return s;
}

std::vector<CandidateBracket> bracket_basic_types(const LineIFS& ifs, int max_depth) {
  const std::int64_t L = ifs.base();
  const std::int64_t nt = ifs.n_tilde();
  std::vector<CandidateBracket> out(static_cast<std::size_t>(nt));
  for (std::int64_t c = 0; c < nt; ++c) out[static_cast<std::size_t>(c)].offset = c;

  // Left endpoints X of level-n image hulls, in units of L^{1-n}; hull length is n_tilde units.
  std::vector<BigInt> mass{BigInt(1)};
  std::int64_t scale = 1;  // L^n
  BigInt total_den = 1;
  constexpr std::int64_t kMaxStates = 1 << 22;
  for (int depth = 1; depth <= max_depth; ++depth) {
    if (scale > kMaxStates / (L * std::max<std::int64_t>(nt, 1))) break;
    std::int64_t next_scale = scale * L;
    std::vector<BigInt> next(static_cast<std::size_t>(nt * next_scale), BigInt(0));
    for (std::size_t x = 0; x < mass.size(); ++x) {
      if (sgn(mass[x]) == 0) continue;
      for (const auto& t : ifs.translations()) {
        std::int64_t y = static_cast<std::int64_t>(x) * L + t.offset;
        next[static_cast<std::size_t>(y)] += mass[x] * t.multiplicity;
      }
    }
    mass = std::move(next);
    scale = next_scale;
    total_den *= ifs.total_maps();
    std::vector<BigInt> inside(static_cast<std::size_t>(nt), BigInt(0));
    for (std::size_t x = 0; x < mass.size(); ++x) {
      if (sgn(mass[x]) == 0) continue;
      auto xi = static_cast<std::int64_t>(x);
      std::int64_t c = xi / scale;
      if (c < nt && xi + nt <= (c + 1) * scale) inside[static_cast<std::size_t>(c)] += mass[x];
    }
    for (std::int64_t c = 0; c < nt; ++c) {
      auto& b = out[static_cast<std::size_t>(c)];
      b.lower_bound = Rational(inside[static_cast<std::size_t>(c)], total_den);
      b.lower_bound.canonicalize();
      if (!b.decided_at && sgn(b.lower_bound) > 0) b.decided_at = depth;
    }
  }
  return out;
}

}  // namespace fracperc
