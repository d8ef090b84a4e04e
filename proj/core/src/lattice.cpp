#include "fracperc/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "fracperc/errors.hpp"

namespace fracperc {

namespace {

std::vector<LatticeIFS::Cell> full_grid(int d, std::int64_t L) {
  std::vector<LatticeIFS::Cell> out;
  LatticeIFS::Cell c(static_cast<std::size_t>(d), 0);
  while (true) {
    out.push_back(c);
    int k = d - 1;
    while (k >= 0 && ++c[static_cast<std::size_t>(k)] == L) c[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return out;
}

}  // namespace

LatticeIFS::LatticeIFS(int dimension, std::int64_t base, std::vector<Cell> cells)
    : dimension_(dimension), base_(base), cells_(std::move(cells)) {
  if (dimension_ < 1) throw InputError("lattice dimension must be >= 1");
  if (base_ < 2) throw InputError("lattice base L must be >= 2");
  if (cells_.empty()) throw InputError("lattice IFS needs at least one cell");
  std::set<Cell> seen;
  for (const auto& c : cells_) {
    if (c.size() != static_cast<std::size_t>(dimension_)) throw InputError("cell has wrong dimension");
    for (auto x : c)
      if (x < 0 || x >= base_) throw InputError("cell coordinate outside [0, L)");
    if (!seen.insert(c).second) throw InputError("duplicate lattice cell");
  }
}

bool LatticeIFS::contains(const Cell& c) const {
  return std::find(cells_.begin(), cells_.end(), c) != cells_.end();
}

std::vector<LatticeIFS::Cell> LatticeIFS::removed_cells() const {
  std::vector<Cell> out;
  for (auto& c : full_grid(dimension_, base_))
    if (!contains(c)) out.push_back(c);
  return out;
}

Direction::Direction(std::vector<std::int64_t> components) : components_(std::move(components)) {
  std::int64_t g = 0;
  for (auto x : components_) g = std::gcd(g, x);
  if (g == 0) throw InputError("projection direction must be nonzero");
  for (auto& x : components_) x /= g;
}

Direction Direction::parse(const std::string& text) {
  std::vector<std::int64_t> comps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      comps.push_back(std::stoll(item, &used));
      if (used != item.size()) throw InputError("bad direction component: " + item);
    } catch (const std::logic_error&) {
      throw InputError("bad direction component: " + item);
    }
  }
  if (comps.empty()) throw InputError("empty direction");
  return Direction(std::move(comps));
}

std::string Direction::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < components_.size(); ++i) os << (i ? "," : "") << components_[i];
  return os.str();
}

Direction Direction::negated() const {
  auto c = components_;
  for (auto& x : c) x = -x;
  return Direction(std::move(c));
}

LatticeIFS menger() {
  std::vector<LatticeIFS::Cell> cells;
  for (auto& c : full_grid(3, 3)) {
    int centered = static_cast<int>(c[0] == 1) + static_cast<int>(c[1] == 1) + static_cast<int>(c[2] == 1);
    if (centered < 2) cells.push_back(c);
  }
  return LatticeIFS(3, 3, std::move(cells));
}

LatticeIFS sierpinski() {
  std::vector<LatticeIFS::Cell> cells;
  for (auto& c : full_grid(2, 3))
    if (!(c[0] == 1 && c[1] == 1)) cells.push_back(c);
  return LatticeIFS(2, 3, std::move(cells));
}

Projection project_with_provenance(const LatticeIFS& lat, const Direction& dir) {
  if (dir.size() != static_cast<std::size_t>(lat.dimension()))
    throw InputError("direction dimension does not match lattice dimension");
  std::vector<std::pair<std::int64_t, LatticeIFS::Cell>> tagged;
  std::vector<std::int64_t> raw;
  for (const auto& cell : lat.cells()) {
    std::int64_t v = 0;
    for (std::size_t k = 0; k < cell.size(); ++k) v += dir.components()[k] * cell[k];
    tagged.emplace_back(v, cell);
    raw.push_back(v);
  }
  LineIFS line = normalize(lat.base(), raw);
  std::sort(tagged.begin(), tagged.end());
  Projection out{line, {}, {}};
  for (auto& [v, cell] : tagged) {
    out.raw_values.push_back(v);
    out.map_cells.push_back(cell);
  }
  return out;
}

LineIFS project(const LatticeIFS& lat, const Direction& dir) {
  return project_with_provenance(lat, dir).line;
}

}  // namespace fracperc
