#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace arcflow {

/// One item type: a width and how many units of it must be produced.
/// Types are distinct entities even when their widths coincide.
struct Item {
  int width = 0;
  std::int64_t demand = 0;
  int original_index = 0;  // position in the instance before any sorting

  friend bool operator==(const Item&, const Item&) = default;
};

/// A 0-1 cutting stock instance: roll capacity W plus the item types.
/// Every pattern may contain at most one unit of each type.
class Instance {
 public:
  Instance() = default;

  /// Validates invariants: capacity >= 1, 1 <= width <= capacity, demand >= 1.
  /// original_index is assigned from the list position. Throws Error.
  Instance(int capacity, std::vector<std::pair<int, std::int64_t>> width_demand);

  int capacity() const { return capacity_; }
  const std::vector<Item>& items() const { return items_; }
  int size() const { return static_cast<int>(items_.size()); }

  std::vector<int> widths() const;
  std::vector<std::int64_t> demands() const;
  std::int64_t total_demand() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int capacity_ = 1;
  std::vector<Item> items_;
};

/// splitmix64. Deterministic across platforms; good enough for instance
/// generation, not for cryptography.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw from [lo, hi]. Modulo bias is negligible at the range
  /// sizes used here.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
  }
};

/// Parses the instance text format:
///   line 1: "<m> <W>", lines 2..m+1: "<w_i> <b_i>".
/// Tokens may be separated by arbitrary whitespace; lines whose first
/// non-blank character is '#' are comments. Errors carry a line number.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);

/// Inverse of parse_instance: parse(serialize(x)) == x.
std::string serialize_instance(const Instance& inst);

/// Generates a benchmark instance for classes 1..10.
/// Classes 1-6 draw all widths/demands from one interval per class;
/// classes 7-10 assign ceil(0.7 n) items to the class's own range and split
/// the remainder round-robin over the other three ranges.
Instance generate_class(int class_id, int n_items, std::uint64_t seed);

/// Bar relaxation of a 2D strip packing input: one item type per rectangle,
/// width = rectangle width, demand = rectangle height. Rectangles wider than
/// the strip are rejected.
Instance bar_relaxation(int strip_width,
                        const std::vector<std::pair<int, std::int64_t>>& rectangles);

}  // namespace arcflow
