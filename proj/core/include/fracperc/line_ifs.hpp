#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracperc/rational.hpp"

namespace fracperc {

/// One distinct map x -> x/L + t together with how many copies of it the IFS holds.
struct Translation {
  std::int64_t offset = 0;
  std::int64_t multiplicity = 1;
  friend bool operator==(const Translation&, const Translation&) = default;
};

/// Integer self-similar IFS on the line, {x/L + t_i}, in normal form:
/// t_0 = 0 < t_1 < ... < t_{m-1}, every multiplicity >= 1 and (L-1) | t_{m-1}.
///
/// Maps are indexed in "expansion order": distinct translations ascending, each
/// repeated by its multiplicity. Simulators and projections use the same order.
class LineIFS {
 public:
  /// Validates normal form; throws InputError otherwise.
  LineIFS(std::int64_t base, std::vector<Translation> translations);

  std::int64_t base() const { return base_; }
  const std::vector<Translation>& translations() const { return translations_; }

  /// M: number of maps counted with multiplicity.
  std::int64_t total_maps() const { return total_maps_; }
  /// m: number of distinct translations.
  std::size_t distinct_maps() const { return translations_.size(); }
  /// q_j = n_j / M.
  std::vector<Rational> weights() const;
  /// t_{m-1} / (L-1); the attractor spans [0, n_tilde * L].
  std::int64_t n_tilde() const { return n_tilde_; }
  std::int64_t hull_length() const { return n_tilde_ * base_; }

  /// Translation of map i in expansion order.
  std::int64_t map_translation(std::int64_t i) const;
  /// Index into translations() of map i in expansion order.
  std::size_t map_distinct_index(std::int64_t i) const;

  /// Integer factor applied by normalize() to repair (L-1) | t_{m-1}; 1 when none.
  std::int64_t rescale_factor() const { return rescale_factor_; }
  void set_rescale_factor(std::int64_t k) { rescale_factor_ = k; }

  std::string describe() const;

  /// Equality ignores the recorded rescale factor.
  friend bool operator==(const LineIFS& a, const LineIFS& b) {
    return a.base_ == b.base_ && a.translations_ == b.translations_;
  }

 private:
  std::int64_t base_;
  std::vector<Translation> translations_;
  std::int64_t total_maps_ = 0;
  std::int64_t n_tilde_ = 0;
  std::int64_t rescale_factor_ = 1;
  std::vector<std::int64_t> expansion_ends_;
};

/// Shift to t_min = 0, merge equal translations, and conjugate by the smallest
/// integer factor that makes (L-1) divide the largest translation.
LineIFS normalize(std::int64_t base, std::span<const std::int64_t> raw_translations);

/// Multiply every translation by `factor` (affine conjugation).
LineIFS scale(const LineIFS& ifs, std::int64_t factor);

/// Divide translations by the largest common factor g that keeps (L-1) | t_{m-1}/g.
LineIFS minimal_form(const LineIFS& ifs);

/// Letters over [L] (L-adic addresses) or [M] (cylinder addresses).
struct Word {
  std::vector<std::uint32_t> digits;
  std::uint32_t alphabet = 2;

  Word() = default;
  Word(std::vector<std::uint32_t> d, std::uint32_t alphabet_size);

  /// Parses a string of decimal digits, e.g. "012" (alphabets up to 10).
  static Word parse(std::string_view text, std::uint32_t alphabet_size);

  std::size_t size() const { return digits.size(); }
  bool empty() const { return digits.empty(); }
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
};

}  // namespace fracperc
