#include "fracperc/line_ifs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "fracperc/errors.hpp"

namespace fracperc {

LineIFS::LineIFS(std::int64_t base, std::vector<Translation> translations)
    : base_(base), translations_(std::move(translations)) {
  if (base_ < 2) throw InputError("contraction base L must be >= 2");
  if (translations_.empty()) throw InputError("IFS needs at least one translation");
  if (translations_.front().offset != 0) throw InputError("normal form requires t_0 = 0");
  for (std::size_t j = 0; j < translations_.size(); ++j) {
    if (translations_[j].multiplicity < 1) throw InputError("multiplicities must be >= 1");
    if (j > 0 && translations_[j].offset <= translations_[j - 1].offset)
      throw InputError("translations must be strictly increasing");
  }
  if (translations_.size() < 2)
    throw InputError("IFS with a single distinct map has a one-point attractor");
  std::int64_t last = translations_.back().offset;
  if (last % (base_ - 1) != 0) throw InputError("(L-1) must divide the largest translation");
  n_tilde_ = last / (base_ - 1);
  expansion_ends_.reserve(translations_.size());
  for (const auto& t : translations_) {
    total_maps_ += t.multiplicity;
    expansion_ends_.push_back(total_maps_);
  }
}

std::vector<Rational> LineIFS::weights() const {
  std::vector<Rational> q;
  q.reserve(translations_.size());
  for (const auto& t : translations_) q.push_back(make_rational(t.multiplicity, total_maps_));
  return q;
}

std::size_t LineIFS::map_distinct_index(std::int64_t i) const {
  if (i < 0 || i >= total_maps_) throw InputError("map index out of range");
  auto it = std::upper_bound(expansion_ends_.begin(), expansion_ends_.end(), i);
  return static_cast<std::size_t>(it - expansion_ends_.begin());
}

std::int64_t LineIFS::map_translation(std::int64_t i) const {
  return translations_[map_distinct_index(i)].offset;
}

std::string LineIFS::describe() const {
  std::ostringstream os;
  os << "L=" << base_ << " t={";
  for (std::size_t j = 0; j < translations_.size(); ++j)
    os << (j ? "," : "") << translations_[j].offset;
  os << "} n=(";
  for (std::size_t j = 0; j < translations_.size(); ++j)
    os << (j ? "," : "") << translations_[j].multiplicity;
  os << ")";
  return os.str();
}

LineIFS normalize(std::int64_t base, std::span<const std::int64_t> raw) {
  if (base < 2) throw InputError("contraction base L must be >= 2");
  if (raw.empty()) throw InputError("empty translation set");
  std::int64_t lo = *std::min_element(raw.begin(), raw.end());
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t t : raw) ++counts[t - lo];
  std::int64_t last = counts.rbegin()->first;
  std::int64_t factor = 1;
  if (last % (base - 1) != 0) factor = (base - 1) / std::gcd(base - 1, last);
  std::vector<Translation> tr;
  tr.reserve(counts.size());
  for (const auto& [t, n] : counts) tr.push_back({t * factor, n});
  LineIFS out(base, std::move(tr));
  out.set_rescale_factor(factor);
  return out;
}

LineIFS scale(const LineIFS& ifs, std::int64_t factor) {
  if (factor < 1) throw InputError("scale factor must be a positive integer");
  std::vector<Translation> tr = ifs.translations();
  for (auto& t : tr) t.offset *= factor;
  LineIFS out(ifs.base(), std::move(tr));
  out.set_rescale_factor(ifs.rescale_factor());
  return out;
}

LineIFS minimal_form(const LineIFS& ifs) {
  std::int64_t g = 0;
  for (const auto& t : ifs.translations()) g = std::gcd(g, t.offset);
  std::int64_t last = ifs.translations().back().offset;
  std::int64_t best = 1;
  for (std::int64_t d = 1; d * d <= g; ++d) {
    if (g % d != 0) continue;
    for (std::int64_t cand : {d, g / d})
      if ((last / cand) % (ifs.base() - 1) == 0) best = std::max(best, cand);
  }
  std::vector<Translation> tr = ifs.translations();
  for (auto& t : tr) t.offset /= best;
  return LineIFS(ifs.base(), std::move(tr));
}

Word::Word(std::vector<std::uint32_t> d, std::uint32_t alphabet_size)
    : digits(std::move(d)), alphabet(alphabet_size) {
  if (alphabet == 0) throw InputError("word alphabet must be non-empty");
  for (auto x : digits)
    if (x >= alphabet) throw InputError("word digit outside alphabet");
}

Word Word::parse(std::string_view text, std::uint32_t alphabet_size) {
  std::vector<std::uint32_t> d;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw InputError("word digits must be decimal");
    d.push_back(static_cast<std::uint32_t>(ch - '0'));
  }
  return Word(std::move(d), alphabet_size);
}

std::string Word::to_string() const {
  std::string s;
  for (auto x : digits) {
    if (alphabet <= 10) {
      s.push_back(static_cast<char>('0' + x));
    } else {
      if (!s.empty()) s.push_back('.');
      s += std::to_string(x);
    }
  }
  return s;
}

}  // namespace fracperc
