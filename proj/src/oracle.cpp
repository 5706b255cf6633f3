#include "arcflow/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "arcflow/error.hpp"

namespace arcflow {

std::vector<std::uint64_t> enumerate_all_patterns(const Instance& inst) {
  int m = inst.size();
  if (m > 20) throw Error("too many items for exhaustive pattern enumeration (m > 20)");
  std::vector<int> w = inst.widths();
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    std::int64_t total = 0;
    for (int k = 0; k < m; ++k)
      if (mask & (1ULL << k)) total += w[static_cast<std::size_t>(k)];
    if (total <= inst.capacity()) out.push_back(mask);
  }
  return out;
}

std::vector<int> width_multiset(const Instance& inst, std::uint64_t mask) {
  std::vector<int> widths;
  for (int k = 0; k < inst.size(); ++k)
    if (mask & (1ULL << k)) widths.push_back(inst.items()[static_cast<std::size_t>(k)].width);
  std::sort(widths.begin(), widths.end());
  return widths;
}

namespace {

// Residual demands packed 6 bits per item (total demand <= 60 fits).
std::uint64_t pack_residual(const std::vector<std::int64_t>& res) {
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < res.size(); ++k)
    key |= static_cast<std::uint64_t>(res[k]) << (6 * k);
  return key;
}

struct SearchState {
  int capacity = 0;
  std::vector<int> widths;
  std::vector<std::uint64_t> patterns;     // nonempty, decreasing total width
  std::vector<std::int64_t> pattern_width; // total width per pattern
  std::unordered_map<std::uint64_t, std::int64_t> best_used;  // dominance memo
  std::int64_t best = 0;
};

std::int64_t lower_bound(const SearchState& s, const std::vector<std::int64_t>& res) {
  std::int64_t max_res = 0, area = 0;
  for (std::size_t k = 0; k < res.size(); ++k) {
    max_res = std::max(max_res, res[k]);
    area += res[k] * s.widths[k];
  }
  std::int64_t area_bound = (area + s.capacity - 1) / s.capacity;
  return std::max(max_res, area_bound);
}

void dfs(SearchState& s, std::vector<std::int64_t>& res, std::int64_t used) {
  if (used >= s.best) return;
  int first = -1;
  std::uint64_t support = 0;
  for (std::size_t k = 0; k < res.size(); ++k) {
    if (res[k] > 0) {
      if (first < 0) first = static_cast<int>(k);
      support |= 1ULL << k;
    }
  }
  if (first < 0) {
    s.best = used;
    return;
  }
  if (used + lower_bound(s, res) >= s.best) return;
  std::uint64_t key = pack_residual(res);
  auto it = s.best_used.find(key);
  if (it != s.best_used.end() && it->second <= used) return;
  s.best_used[key] = used;

  // Some bin must cover the first unmet item; subsets of the residual
  // support suffice since patterns are closed under taking subsets.
  for (std::size_t p = 0; p < s.patterns.size(); ++p) {
    std::uint64_t pat = s.patterns[p];
    if (!(pat & (1ULL << first))) continue;
    if ((pat & support) != pat) continue;
    for (std::size_t k = 0; k < res.size(); ++k)
      if (pat & (1ULL << k)) --res[k];
    dfs(s, res, used + 1);
    for (std::size_t k = 0; k < res.size(); ++k)
      if (pat & (1ULL << k)) ++res[k];
  }
}

}  // namespace

std::int64_t exact_solve_small(const Instance& inst) {
  if (inst.size() > 10) throw Error("exact oracle guard: m > 10");
  if (inst.total_demand() > 60) throw Error("exact oracle guard: total demand > 60");
  if (inst.size() == 0) return 0;

  SearchState s;
  s.capacity = inst.capacity();
  s.widths = inst.widths();
  for (std::uint64_t mask : enumerate_all_patterns(inst)) {
    if (mask == 0) continue;
    std::int64_t total = 0;
    for (std::size_t k = 0; k < s.widths.size(); ++k)
      if (mask & (1ULL << k)) total += s.widths[k];
    s.patterns.push_back(mask);
    s.pattern_width.push_back(total);
  }
  std::vector<std::size_t> order(s.patterns.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (s.pattern_width[a] != s.pattern_width[b]) return s.pattern_width[a] > s.pattern_width[b];
    return s.patterns[a] < s.patterns[b];
  });
  std::vector<std::uint64_t> sorted_patterns;
  std::vector<std::int64_t> sorted_width;
  for (std::size_t k : order) {
    sorted_patterns.push_back(s.patterns[k]);
    sorted_width.push_back(s.pattern_width[k]);
  }
  s.patterns = std::move(sorted_patterns);
  s.pattern_width = std::move(sorted_width);

  std::vector<std::int64_t> res = inst.demands();
  s.best = inst.total_demand() + 1;  // worse than singletons, fixed by first descent
  dfs(s, res, 0);
  return s.best;
}

}  // namespace arcflow
