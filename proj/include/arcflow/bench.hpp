#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arcflow {

/// One benchmark row: bound/optimum metrics, graph sizes and compression
/// ratios of the final graph, and wall-clock timings in seconds.
struct BenchRecord {
  int class_id = 0;
  int m = 0;
  int capacity = 0;
  std::uint64_t seed = 0;
  double z_lp = 0.0;
  std::int64_t z_ip = 0;
  int n_cols = 0;
  std::size_t n_v = 0;
  std::size_t n_a = 0;
  double ratio_v = 0.0;
  double ratio_a = 0.0;
  double t_cg = 0.0;
  double t_af_lp = 0.0;
  double t_af_ip = 0.0;
  bool hit_limit = false;  // reported, not part of the CSV row
};

/// Exact column order of the CSV hand-off.
std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& r);

/// Generates the (class_id, m, seed) instance and measures column generation,
/// the arc-flow root relaxation and the exact arc-flow solve.
BenchRecord run_bench_instance(int class_id, int m, std::uint64_t seed,
                               double time_limit_sec);

/// Parses "3", "1,4,9" or "2..7" into an explicit list.
std::vector<std::int64_t> parse_int_list(const std::string& text);

}  // namespace arcflow
