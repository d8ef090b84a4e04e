#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracperc/line_ifs.hpp"

namespace fracperc {

/// Equal-ratio IFS on the 1/L lattice of [0,1]^d. Cells are stored pre-scaled
/// by L: cell (i_1..i_d) is the map x -> x/L + (i_1..i_d)/L.
class LatticeIFS {
 public:
  using Cell = std::vector<std::int64_t>;

  LatticeIFS(int dimension, std::int64_t base, std::vector<Cell> cells);

  int dimension() const { return dimension_; }
  std::int64_t base() const { return base_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::int64_t map_count() const { return static_cast<std::int64_t>(cells_.size()); }
  bool contains(const Cell& c) const;

  /// Cells of [L]^d not present in this IFS, in lexicographic order.
  std::vector<Cell> removed_cells() const;

 private:
  int dimension_;
  std::int64_t base_;
  std::vector<Cell> cells_;
};

/// Nonzero integer projection direction, stored gcd-reduced.
class Direction {
 public:
  explicit Direction(std::vector<std::int64_t> components);
  /// Parses "1,1,1" or "1,-1".
  static Direction parse(const std::string& text);

  const std::vector<std::int64_t>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  std::string to_string() const;
  Direction negated() const;

 private:
  std::vector<std::int64_t> components_;
};

/// The 20-cell Menger sponge IFS (d = 3, L = 3).
LatticeIFS menger();
/// The 8-cell Sierpinski carpet IFS (d = 2, L = 3).
LatticeIFS sierpinski();

/// Projection of a lattice IFS to a LineIFS together with the cell behind every
/// map of the projected system (in expansion order).
struct Projection {
  LineIFS line;
  /// map_cells[i] is the lattice cell realizing map i of `line` (expansion order).
  std::vector<LatticeIFS::Cell> map_cells;
  /// Raw integer value dir . cell for each map, before shifting / rescaling.
  std::vector<std::int64_t> raw_values;
};

Projection project_with_provenance(const LatticeIFS& lat, const Direction& dir);

LineIFS project(const LatticeIFS& lat, const Direction& dir);

}  // namespace fracperc
