#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fracperc/int_matrix.hpp"
#include "fracperc/lattice.hpp"
#include "fracperc/line_ifs.hpp"
#include "fracperc/type_system.hpp"

namespace fracperc {

/// A retained word, stored as (parent index on the previous level, last letter).
struct SurvivalNode {
  std::uint32_t parent = 0;
  std::uint32_t letter = 0;
  std::uint64_t key = 0;
};

/// Realization of the coin-tossing construction up to a fixed depth.
///
/// The node with address key k keeps child j iff to_unit(derive_key(k, j)) < p,
/// so realizations for different p sharing a seed are nested.
struct SurvivalSet {
  std::uint32_t arity = 2;
  int depth = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  /// levels[0] is the root; levels[k] holds the retained words of length k.
  std::vector<std::vector<SurvivalNode>> levels;
  /// Generation stopped early because a level exceeded the node cap.
  bool truncated = false;

  std::size_t count(int level) const { return levels.at(static_cast<std::size_t>(level)).size(); }
  /// First level with no retained word, if any.
  std::optional<int> extinct_level() const;
  /// Full word of node `index` on `level`.
  std::vector<std::uint32_t> word(int level, std::size_t index) const;
};

struct SurvivalOptions {
  std::size_t max_level_nodes = 4000000;
};

SurvivalSet sample_survival(std::uint32_t arity, double p, int depth, std::uint64_t seed,
                            const SurvivalOptions& options = {});

struct CoverageStats {
  int depth = 0;
  std::uint64_t cells = 0;    ///< hull cells of length L^(1-n)
  std::uint64_t covered = 0;  ///< cells met by a retained level-n cylinder
  double measure = 0.0;       ///< covered * L^(1-n), in [0, hull length]
  double hull_length = 0.0;
  std::uint64_t longest_run = 0;
  bool full() const { return covered == cells; }
};

/// Covered L-adic cells of the projected depth-n approximation. The survival
/// arity must equal the number of maps; letters index maps in expansion order.
CoverageStats project_survival(const LineIFS& ifs, const SurvivalSet& s);
CoverageStats project_survival(const LatticeIFS& lattice, const Direction& dir, const SurvivalSet& s);

/// Counts, for every pair of basic types (U, V), the retained level-|w| words i
/// with f_i(J^V) = J^U_w. With p = 1 this is A_w(U, V).
IntMatrix count_type_transitions(const TypeSystem& ts, const SurvivalSet& s, const Word& w);

/// log(#retained at depth n) / (n log L); NaN for an extinct or depth-0 set.
double empirical_box_dimension(const SurvivalSet& s, std::int64_t base);

/// Galton-Watson process with Binomial(8, p^2) offspring, counting retained
/// face-adjacent sub-cube pairs across a shared face of the Menger sponge.
struct InterfaceResult {
  double p = 0.0;
  int depth = 0;
  std::uint64_t replicas = 0;
  std::uint64_t extinct = 0;       ///< extinct by `depth` (capped runs count as surviving)
  std::uint64_t extinct_at_one = 0;
  double frequency = 0.0;
  double std_error = 0.0;
  double fixed_point = 1.0;        ///< smallest root of q = (1 - p^2 + p^2 q)^8
  double finite_depth = 1.0;       ///< f^depth(0)
  double mean_offspring = 0.0;     ///< 8 p^2
};

InterfaceResult interface_process(double p, int depth, std::uint64_t replicas, std::uint64_t seed,
                                  std::uint64_t population_cap = 100000, unsigned threads = 1);

/// One row of the simulate command output.
struct ReplicaStats {
  std::uint64_t replica = 0;
  std::uint64_t retained_count = 0;
  double proj_measure = 0.0;
  std::uint64_t longest_run = 0;
  bool full_cover = false;
  std::optional<int> extinct_level;
};

/// Independent replicas keyed by derive_key(seed, r).
std::vector<ReplicaStats> simulate_replicas(const LineIFS& ifs, double p, int depth, std::uint64_t replicas,
                                            std::uint64_t seed, unsigned threads = 1,
                                            const SurvivalOptions& options = {});

}  // namespace fracperc
