#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracperc/int_matrix.hpp"
#include "fracperc/line_ifs.hpp"
#include "fracperc/rational.hpp"

namespace fracperc {

/// Basic-type intervals J^k = [o_k L, (o_k + 1) L] of a LineIFS, the transition
/// matrices {A_a}_{a in [L]} and the self-similar measure of each basic type.
///
/// A_a(l, k) counts, with multiplicity, the maps sending J^k onto the a-th
/// L-adic child of J^l. Every column of sum_a A_a sums to M.
class TypeSystem {
 public:
  TypeSystem(LineIFS parent, std::vector<std::int64_t> basic_offsets,
             std::vector<IntMatrix> matrices, std::vector<Rational> nu);

  const LineIFS& parent() const { return parent_; }
  const std::vector<std::int64_t>& basic_offsets() const { return basic_offsets_; }
  const std::vector<IntMatrix>& matrices() const { return matrices_; }
  const IntMatrix& matrix(std::uint32_t digit) const { return matrices_.at(digit); }
  const std::vector<Rational>& nu() const { return nu_; }

  std::size_t type_count() const { return basic_offsets_.size(); }
  std::uint32_t digit_count() const { return static_cast<std::uint32_t>(matrices_.size()); }

  /// A = sum_a A_a.
  IntMatrix sum_matrix() const;

 private:
  LineIFS parent_;
  std::vector<std::int64_t> basic_offsets_;
  std::vector<IntMatrix> matrices_;
  std::vector<Rational> nu_;
};

/// Derive the type system. Throws AmbiguityError if the measure equation has a
/// solution space of dimension > 1 and InvariantError if a structural check fails.
TypeSystem compute_type_system(const LineIFS& ifs);

/// Checks mass conservation, closure, the measure fixed point and primitivity.
/// Throws InvariantError describing the first violation.
void validate_type_system(const TypeSystem& ts);

/// Left-to-right product A_{w_1} ... A_{w_n}; identity for the empty word.
IntMatrix matrix_product(const TypeSystem& ts, const Word& w);

/// CS_{a,j} = sum_i A_a(i, j).
std::vector<BigInt> column_sums(const TypeSystem& ts, std::uint32_t digit);

/// nu(J^l_w) = M^{-n} e_l^T A_w nu.
Rational cylinder_measure(const TypeSystem& ts, std::size_t type_index, const Word& w);

/// ||A_w|| = e^T A_w e: bound on the number of level-n cylinders that can
/// contain a point whose L-adic tail starts with w.
BigInt covering_cylinder_count(const TypeSystem& ts, const Word& w);

/// Smallest K <= N^2 with (sum_a A_a)^K entrywise positive.
std::optional<std::size_t> primitivity_exponent(const IntMatrix& a);

/// Lower bounds on the measure of every candidate interval [cL, (c+1)L],
/// c in [0, n_tilde): the mass of level-n cylinders whose image hull lies
/// inside the candidate. Used to diagnose ambiguous basic-type extraction.
struct CandidateBracket {
  std::int64_t offset = 0;
  Rational lower_bound;
  /// First depth at which the lower bound became positive; empty if never.
  std::optional<int> decided_at;
};
std::vector<CandidateBracket> bracket_basic_types(const LineIFS& ifs, int max_depth = 12);

}  // namespace fracperc
