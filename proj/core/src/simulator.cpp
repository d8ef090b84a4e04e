#include "fracperc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracperc/errors.hpp"
#include "fracperc/parallel.hpp"
#include "fracperc/phase.hpp"
#include "fracperc/random.hpp"

namespace fracperc {

std::optional<int> SurvivalSet::extinct_level() const {
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (levels[k].empty()) return static_cast<int>(k);
  return std::nullopt;
}

std::vector<std::uint32_t> SurvivalSet::word(int level, std::size_t index) const {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(level));
  for (int k = level; k > 0; --k) {
    const auto& node = levels[static_cast<std::size_t>(k)][index];
    out[static_cast<std::size_t>(k - 1)] = node.letter;
    index = node.parent;
  }
  return out;
}

SurvivalSet sample_survival(std::uint32_t arity, double p, int depth, std::uint64_t seed,
                            const SurvivalOptions& options) {
  if (arity < 2) throw InputError("arity must be >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1]");
  if (depth < 0) throw InputError("depth must be >= 0");
  SurvivalSet s;
  s.arity = arity;
  s.depth = depth;
  s.p = p;
  s.seed = seed;
  s.levels.push_back({SurvivalNode{0, 0, splitmix64(seed)}});
  for (int k = 1; k <= depth; ++k) {
    const auto& prev = s.levels.back();
    std::vector<SurvivalNode> next;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (std::uint32_t j = 0; j < arity; ++j) {
        const std::uint64_t key = derive_key(prev[i].key, j);
        if (to_unit(key) < p) next.push_back({static_cast<std::uint32_t>(i), j, key});
      }
      if (next.size() > options.max_level_nodes) {
        s.truncated = true;
        return s;
      }
    }
    s.levels.push_back(std::move(next));
  }
  return s;
}

namespace {

/// X_k = L X_{k-1} + t_{i_k} for every retained node of the deepest level.
std::vector<std::int64_t> level_positions(const LineIFS& ifs, const SurvivalSet& s, int level) {
  std::vector<std::int64_t> pos{0};
  for (int k = 1; k <= level; ++k) {
    const auto& nodes = s.levels[static_cast<std::size_t>(k)];
    std::vector<std::int64_t> next(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      next[i] = ifs.base() * pos[nodes[i].parent] + ifs.map_translation(nodes[i].letter);
    pos = std::move(next);
  }
  return pos;
}

void require_compatible(const LineIFS& ifs, const SurvivalSet& s) {
  if (static_cast<std::int64_t>(s.arity) != ifs.total_maps())
    throw InputError("survival arity " + std::to_string(s.arity) + " does not match the " +
                     std::to_string(ifs.total_maps()) + " maps of the IFS");
  if (s.truncated) throw InputError("survival set was truncated by the node cap");
}

}  // namespace

CoverageStats project_survival(const LineIFS& ifs, const SurvivalSet& s) {
  require_compatible(ifs, s);
  const int n = s.depth;
  const std::int64_t L = ifs.base();
  const std::int64_t nt = ifs.n_tilde();
  CoverageStats out;
  out.depth = n;
  out.hull_length = static_cast<double>(ifs.hull_length());
  const double cell = std::pow(static_cast<double>(L), 1.0 - n);
  if (n == 0) {
    out.cells = static_cast<std::uint64_t>(ifs.hull_length());
    out.covered = out.cells;
    out.longest_run = out.cells;
    out.measure = out.hull_length;
    return out;
  }
  std::int64_t cells = nt;
  for (int k = 0; k < n; ++k) {
    if (cells > (std::int64_t{1} << 40) / L) throw InputError("projection depth too large for a cell array");
    cells *= L;
  }
  out.cells = static_cast<std::uint64_t>(cells);
  // Cylinder with position X covers cells [X, X + n_tilde).
  std::vector<std::int32_t> diff(static_cast<std::size_t>(cells) + 1, 0);
  for (std::int64_t x : level_positions(ifs, s, n)) {
    ++diff[static_cast<std::size_t>(x)];
    --diff[static_cast<std::size_t>(x + nt)];
  }
  std::int64_t run = 0;
  std::int32_t active = 0;
  for (std::int64_t j = 0; j < cells; ++j) {
    active += diff[static_cast<std::size_t>(j)];
    if (active > 0) {
      ++out.covered;
      out.longest_run = std::max<std::uint64_t>(out.longest_run, static_cast<std::uint64_t>(++run));
    } else {
      run = 0;
    }
  }
  out.measure = static_cast<double>(out.covered) * cell;
  return out;
}

CoverageStats project_survival(const LatticeIFS& lattice, const Direction& dir, const SurvivalSet& s) {
  return project_survival(project(lattice, dir), s);
}

IntMatrix count_type_transitions(const TypeSystem& ts, const SurvivalSet& s, const Word& w) {
  const LineIFS& ifs = ts.parent();
  require_compatible(ifs, s);
  const int n = static_cast<int>(w.size());
  if (n < 1 || n > s.depth) throw InputError("word length must lie in [1, depth]");
  if (w.alphabet != ts.digit_count()) throw InputError("word alphabet must be L");
  const std::int64_t L = ifs.base();
  std::int64_t scale = 1;
  std::int64_t value = 0;
  for (auto d : w.digits) {
    scale *= L;
    value = value * L + d;
  }
  const auto& offsets = ts.basic_offsets();
  const std::size_t N = offsets.size();
  IntMatrix out(N, N);
  // f_i(J^V) = J^U_w  iff  X_n(i) + o_V = o_U L^n + val(w).
  for (std::int64_t x : level_positions(ifs, s, n))
    for (std::size_t v = 0; v < N; ++v) {
      const std::int64_t target = x + offsets[v] - value;
      if (target < 0 || target % scale != 0) continue;
      auto it = std::find(offsets.begin(), offsets.end(), target / scale);
      if (it != offsets.end()) out(static_cast<std::size_t>(it - offsets.begin()), v) += 1;
    }
  return out;
}

double empirical_box_dimension(const SurvivalSet& s, std::int64_t base) {
  if (s.depth == 0 || s.truncated || s.count(s.depth) == 0) return std::numeric_limits<double>::quiet_NaN();
  return std::log(static_cast<double>(s.count(s.depth))) / (s.depth * std::log(static_cast<double>(base)));
}

InterfaceResult interface_process(double p, int depth, std::uint64_t replicas, std::uint64_t seed,
                                  std::uint64_t population_cap, unsigned threads) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0, 1]");
  if (depth < 1 || replicas < 1) throw InputError("depth and replicas must be >= 1");
  const double q = p * p;
  InterfaceResult out;
  out.p = p;
  out.depth = depth;
  out.replicas = replicas;
  out.mean_offspring = 8.0 * q;
  out.fixed_point = binomial_extinction_probability(8, q);
  out.finite_depth = binomial_extinction_by(8, q, depth);

  std::vector<int> died_at(replicas, 0);  // 0 = alive at `depth` or capped
  parallel_for(replicas, threads, [&](std::size_t r) {
    CounterRng rng(derive_key(seed, r));
    std::uint64_t population = 1;
    for (int k = 1; k <= depth; ++k) {
      std::uint64_t next = 0;
      for (std::uint64_t i = 0; i < population * 8; ++i) next += rng.uniform() < q ? 1 : 0;
      population = next;
      if (population == 0) {
        died_at[r] = k;
        return;
      }
      if (population > population_cap) return;
    }
  });
  for (int k : died_at) {
    if (k > 0) ++out.extinct;
    if (k == 1) ++out.extinct_at_one;
  }
  out.frequency = static_cast<double>(out.extinct) / static_cast<double>(replicas);
  out.std_error = std::sqrt(out.frequency * (1.0 - out.frequency) / static_cast<double>(replicas));
  return out;
}

std::vector<ReplicaStats> simulate_replicas(const LineIFS& ifs, double p, int depth, std::uint64_t replicas,
                                            std::uint64_t seed, unsigned threads, const SurvivalOptions& options) {
  if (replicas < 1) throw InputError("replicas must be >= 1");
  std::vector<ReplicaStats> out(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    SurvivalSet s = sample_survival(static_cast<std::uint32_t>(ifs.total_maps()), p, depth, derive_key(seed, r), options);
    if (s.truncated) throw InputError("replica exceeded the node cap; lower depth or p");
    CoverageStats cov = project_survival(ifs, s);
    out[r] = {r, s.count(depth), cov.measure, cov.longest_run, cov.full(), s.extinct_level()};
  });
  return out;
}

}  // namespace fracperc
