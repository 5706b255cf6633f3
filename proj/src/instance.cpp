#include "arcflow/instance.hpp"

#include <array>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <istream>
#include <sstream>

#include "arcflow/error.hpp"

namespace arcflow {

namespace {

Error line_error(const std::string& msg, int line) {
  std::ostringstream os;
  os << msg << " at line " << line;
  return Error(os.str());
}

}  // namespace

Instance::Instance(int capacity, std::vector<std::pair<int, std::int64_t>> width_demand)
    : capacity_(capacity) {
  if (capacity < 1) throw Error("capacity must be positive");
  items_.reserve(width_demand.size());
  for (std::size_t k = 0; k < width_demand.size(); ++k) {
    auto [w, b] = width_demand[k];
    if (w < 1) throw Error("width must be positive");
    if (w > capacity) throw Error("width exceeds capacity");
    if (b < 1) throw Error("demand must be positive");
    items_.push_back(Item{w, b, static_cast<int>(k)});
  }
}

std::vector<int> Instance::widths() const {
  std::vector<int> w;
  w.reserve(items_.size());
  for (const Item& it : items_) w.push_back(it.width);
  return w;
}

std::vector<std::int64_t> Instance::demands() const {
  std::vector<std::int64_t> b;
  b.reserve(items_.size());
  for (const Item& it : items_) b.push_back(it.demand);
  return b;
}

std::int64_t Instance::total_demand() const {
  std::int64_t total = 0;
  for (const Item& it : items_) total += it.demand;
  return total;
}

namespace {

struct Token {
  std::string text;
  int line = 0;
};

std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = 0;
    // a line whose first non-blank character is '#' is a comment
    std::size_t first = line.find_first_not_of(" \t\r\f\v");
    if (first == std::string::npos || line[first] == '#') continue;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos > start) tokens.push_back(Token{line.substr(start, pos - start), lineno});
    }
  }
  return tokens;
}

std::int64_t parse_int(const Token& tok) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(tok.text.c_str(), &end, 10);
  if (errno == ERANGE || end == tok.text.c_str() || *end != '\0')
    throw line_error("malformed token '" + tok.text + "'", tok.line);
  return v;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::vector<Token> tokens = tokenize(in);
  int last_line = tokens.empty() ? 1 : tokens.back().line;
  std::size_t pos = 0;
  auto need = [&](const char* what) -> const Token& {
    if (pos >= tokens.size())
      throw line_error(std::string("unexpected end of input: missing ") + what, last_line);
    return tokens[pos++];
  };

  const Token& mtok = need("item count");
  std::int64_t m = parse_int(mtok);
  if (m < 0) throw line_error("item count must be nonnegative", mtok.line);
  const Token& wtok = need("capacity");
  std::int64_t cap = parse_int(wtok);
  if (cap < 1) throw line_error("capacity must be positive", wtok.line);

  std::vector<std::pair<int, std::int64_t>> items;
  items.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) {
    const Token& tw = need("item width");
    std::int64_t w = parse_int(tw);
    if (w < 1) throw line_error("width must be positive", tw.line);
    if (w > cap) throw line_error("width exceeds capacity", tw.line);
    const Token& tb = need("item demand");
    std::int64_t b = parse_int(tb);
    if (b < 1) throw line_error("demand must be positive", tb.line);
    items.emplace_back(static_cast<int>(w), b);
  }
  if (pos != tokens.size())
    throw line_error("item count mismatch: unexpected extra data", tokens[pos].line);
  return Instance(static_cast<int>(cap), std::move(items));
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << inst.size() << ' ' << inst.capacity() << '\n';
  for (const Item& it : inst.items()) os << it.width << ' ' << it.demand << '\n';
  return os.str();
}

namespace {

struct ClassRange {
  int w_lo, w_hi;
  int b_lo, b_hi;
};

constexpr int kClassCapacity[10] = {10, 30, 40, 100, 100, 300, 100, 100, 100, 100};

// Classes 1-6: every item drawn from one interval.
constexpr ClassRange kUniformRange[6] = {
    {1, 10, 1, 10},  {1, 10, 1, 10},   {1, 35, 1, 35},
    {1, 35, 1, 35},  {1, 100, 1, 100}, {1, 100, 1, 100},
};

// Type ranges of classes 7-10 (indexed 0..3 for classes 7..10).
constexpr ClassRange kTypeRange[4] = {
    {66, 100, 1, 50},
    {1, 50, 66, 100},
    {50, 100, 50, 100},
    {1, 50, 1, 50},
};

}  // namespace

Instance generate_class(int class_id, int n_items, std::uint64_t seed) {
  if (class_id < 1 || class_id > 10) throw Error("class id must be in 1..10");
  if (n_items < 1) throw Error("item count must be positive");
  SplitMix64 rng(seed);
  int capacity = kClassCapacity[class_id - 1];
  std::vector<std::pair<int, std::int64_t>> items;
  items.reserve(static_cast<std::size_t>(n_items));

  auto draw = [&](const ClassRange& r) {
    int w = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(r.w_lo),
                                         static_cast<std::uint64_t>(r.w_hi)));
    auto b = static_cast<std::int64_t>(rng.uniform(static_cast<std::uint64_t>(r.b_lo),
                                                   static_cast<std::uint64_t>(r.b_hi)));
    items.emplace_back(w, b);
  };

  if (class_id <= 6) {
    const ClassRange& r = kUniformRange[class_id - 1];
    for (int k = 0; k < n_items; ++k) draw(r);
  } else {
    // ceil(0.7 n) items from the class's own range, remainder split over the
    // other three ranges, leftover distributed round-robin.
    int own = static_cast<int>((7LL * n_items + 9) / 10);
    int rem = n_items - own;
    std::array<int, 4> counts = {0, 0, 0, 0};
    counts[static_cast<std::size_t>(class_id - 7)] = own;
    std::array<int, 3> others{};
    int o = 0;
    for (int t = 0; t < 4; ++t)
      if (t != class_id - 7) others[static_cast<std::size_t>(o++)] = t;
    // split rem as base + round-robin extras in ascending type order
    int base = rem / 3, extra = rem % 3;
    for (int k = 0; k < 3; ++k)
      counts[static_cast<std::size_t>(others[static_cast<std::size_t>(k)])] = base + (k < extra ? 1 : 0);
    int t_order[4];
    t_order[0] = class_id - 7;
    for (int k = 0; k < 3; ++k) t_order[k + 1] = others[static_cast<std::size_t>(k)];
    for (int k = 0; k < 4; ++k) {
      int t = t_order[k];
      for (int c = 0; c < counts[static_cast<std::size_t>(t)]; ++c) draw(kTypeRange[t]);
    }
  }
  return Instance(capacity, std::move(items));
}

Instance bar_relaxation(int strip_width,
                        const std::vector<std::pair<int, std::int64_t>>& rectangles) {
  if (strip_width < 1) throw Error("strip width must be positive");
  for (const auto& [w, h] : rectangles) {
    if (w < 1) throw Error("rectangle width must be positive");
    if (w > strip_width) throw Error("rectangle wider than strip");
    if (h < 1) throw Error("rectangle height must be positive");
  }
  return Instance(strip_width, rectangles);
}

}  // namespace arcflow
