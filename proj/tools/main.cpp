// Command-line front end: instance generation, exact solving, bounds, graph
// statistics, DOT and LP-file dumps, and the benchmark harness.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arcflow/bench.hpp"
#include "arcflow/colgen.hpp"
#include "arcflow/error.hpp"
#include "arcflow/graph.hpp"
#include "arcflow/instance.hpp"
#include "arcflow/knapsack.hpp"
#include "arcflow/milp.hpp"
#include "arcflow/oracle.hpp"

namespace {

using nlohmann::json;

arcflow::Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw arcflow::Error("cannot open instance file '" + path + "'");
  return arcflow::parse_instance(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw arcflow::Error("cannot open output file '" + path + "'");
  out << text;
}

arcflow::ArcFlowGraph graph_for_stage(const arcflow::Instance& inst, const std::string& stage) {
  arcflow::ArcFlowGraph g = arcflow::build_graph(inst);
  if (stage == "final") return arcflow::compress_final(g);
  return g;
}

int cmd_gen(int class_id, int m, std::uint64_t seed, const std::string& out_path) {
  arcflow::Instance inst = arcflow::generate_class(class_id, m, seed);
  write_file(out_path, arcflow::serialize_instance(inst));
  return 0;
}

// Re-checks a solve result before printing it: pattern feasibility, demand
// coverage and the bin count.
void verify_solution(const arcflow::Instance& inst, const arcflow::PatternSolution& sol,
                     std::int64_t z) {
  std::vector<std::int64_t> covered(static_cast<std::size_t>(inst.size()), 0);
  std::int64_t bins = 0;
  for (const auto& [pattern, mult] : sol.patterns) {
    if (mult <= 0) throw arcflow::Error("verification failed: nonpositive multiplicity");
    std::int64_t width = 0;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
      if (!pattern[k]) continue;
      width += inst.items()[k].width;
      covered[k] += mult;
    }
    if (width > inst.capacity()) throw arcflow::Error("verification failed: pattern too wide");
    bins += mult;
  }
  for (std::size_t k = 0; k < covered.size(); ++k)
    if (covered[k] < inst.items()[k].demand)
      throw arcflow::Error("verification failed: demand not covered");
  if (bins != z) throw arcflow::Error("verification failed: bin count mismatch");
}

int cmd_solve(const std::string& path, const std::string& method, double time_limit,
              bool as_json) {
  arcflow::Instance inst = load_instance(path);

  if (method == "colgen-lp") {
    arcflow::ColgenResult cg = arcflow::solve_root(inst);
    if (as_json) {
      json j{{"method", "colgen-lp"}, {"z_lp", cg.z_lp}, {"cols", cg.n_columns},
             {"iterations", cg.iterations}};
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "z_lp = " << cg.z_lp << "\n";
      std::cout << "cols = " << cg.n_columns << "\n";
    }
    return 0;
  }

  arcflow::ArcFlowGraph g = arcflow::compress_final(arcflow::build_graph(inst));
  arcflow::MilpModel model = arcflow::build_model(g, inst.demands());
  arcflow::SolveLimits limits;
  limits.time_limit_sec = time_limit;
  arcflow::MilpSolution sol = arcflow::solve(model, limits);
  arcflow::PatternSolution patterns = arcflow::decompose_flow(g, sol.flows, sol.objective);
  verify_solution(inst, patterns, sol.objective);

  const char* status = sol.status == arcflow::MilpStatus::Optimal ? "optimal" : "limit";
  if (as_json) {
    json jpat = json::array();
    for (const auto& [pattern, mult] : patterns.patterns) {
      json items = json::array(), widths = json::array();
      for (std::size_t k = 0; k < pattern.size(); ++k) {
        if (!pattern[k]) continue;
        items.push_back(k);
        widths.push_back(inst.items()[k].width);
      }
      jpat.push_back(json{{"multiplicity", mult}, {"items", items}, {"widths", widths}});
    }
    json j{{"method", "arcflow"},      {"z_ip", sol.objective}, {"status", status},
           {"lp_bound", sol.lp_bound}, {"nodes", sol.nodes_explored}, {"patterns", jpat}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "z_ip = " << sol.objective << " (" << status << ", lp_bound = " << sol.lp_bound
              << ", nodes = " << sol.nodes_explored << ")\n";
    for (const auto& [pattern, mult] : patterns.patterns) {
      std::cout << "pattern x" << mult << ":";
      for (std::size_t k = 0; k < pattern.size(); ++k)
        if (pattern[k]) std::cout << ' ' << inst.items()[k].width;
      std::cout << "  (items";
      for (std::size_t k = 0; k < pattern.size(); ++k)
        if (pattern[k]) std::cout << ' ' << k;
      std::cout << ")\n";
    }
  }
  return 0;
}

int cmd_bound(const std::string& path, double tol) {
  arcflow::Instance inst = load_instance(path);
  arcflow::ColgenResult cg = arcflow::solve_root(inst, tol);
  std::cout << "z_lp = " << cg.z_lp << "\n";
  std::cout << "cols = " << cg.n_columns << "\n";
  return 0;
}

int cmd_stats(const std::string& path, const std::string& stage) {
  arcflow::Instance inst = load_instance(path);
  arcflow::ArcFlowGraph g = graph_for_stage(inst, stage);
  arcflow::GraphStats s = arcflow::graph_stats(g, inst);
  arcflow::ArcFlowGraph dp = arcflow::dp_graph(inst);
  std::cout << "stage " << stage << "\n";
  std::cout << "vertices " << s.n_vertices << "\n";
  std::cout << "arcs " << s.n_arcs << "\n";
  std::cout << "dp_vertices " << dp.node_count() << "\n";
  std::cout << "dp_arcs " << dp.arc_count() << "\n";
  std::cout << "ratio_v " << s.ratio_v << "\n";
  std::cout << "ratio_a " << s.ratio_a << "\n";
  return 0;
}

int cmd_dot(const std::string& path, const std::string& out_path, const std::string& stage) {
  arcflow::Instance inst = load_instance(path);
  write_file(out_path, arcflow::export_dot(graph_for_stage(inst, stage)));
  return 0;
}

int cmd_export_lp(const std::string& path, const std::string& out_path) {
  arcflow::Instance inst = load_instance(path);
  arcflow::ArcFlowGraph g = arcflow::compress_final(arcflow::build_graph(inst));
  arcflow::MilpModel model = arcflow::build_model(g, inst.demands());
  write_file(out_path, arcflow::export_lp_file(model));
  return 0;
}

int cmd_bench(const std::string& classes, const std::string& sizes, const std::string& seeds,
              const std::string& csv_path, double time_limit, int jobs) {
  std::vector<std::int64_t> class_list = arcflow::parse_int_list(classes);
  std::vector<std::int64_t> size_list = arcflow::parse_int_list(sizes);
  std::vector<std::int64_t> seed_list = arcflow::parse_int_list(seeds);

  struct Task {
    int class_id;
    int m;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::int64_t c : class_list)
    for (std::int64_t m : size_list)
      for (std::int64_t s : seed_list)
        tasks.push_back(Task{static_cast<int>(c), static_cast<int>(m),
                             static_cast<std::uint64_t>(s)});

  std::vector<arcflow::BenchRecord> records(tasks.size());
  std::vector<std::string> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) break;
      const Task& t = tasks[k];
      try {
        records[k] = arcflow::run_bench_instance(t.class_id, t.m, t.seed, time_limit);
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "class " << t.class_id << " m " << t.m << " seed " << t.seed << ": z_lp="
                  << records[k].z_lp << " z_ip=" << records[k].z_ip
                  << (records[k].hit_limit ? " (time limit hit)" : "") << "\n";
      } catch (const std::exception& e) {
        failures[k] = e.what();
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "class " << t.class_id << " m " << t.m << " seed " << t.seed
                  << ": error: " << e.what() << "\n";
      }
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  // records land in deterministic task order regardless of completion order
  bool write_header = true;
  {
    std::ifstream existing(csv_path);
    if (existing && existing.peek() != std::ifstream::traits_type::eof()) write_header = false;
  }
  std::ofstream out(csv_path, std::ios::app);
  if (!out) throw arcflow::Error("cannot open CSV file '" + csv_path + "'");
  if (write_header) out << arcflow::bench_csv_header() << "\n";
  int failed = 0;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    if (!failures[k].empty()) {
      ++failed;
      continue;
    }
    out << arcflow::bench_csv_row(records[k]) << "\n";
  }
  if (failed > 0) std::cerr << failed << " instance(s) failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact 0-1 cutting stock solver on a compressed arc-flow graph"};
  app.require_subcommand(1);

  int gen_class = 1, gen_m = 10;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark-class instance file");
  gen->add_option("--class", gen_class, "Benchmark class (1-10)")->required();
  gen->add_option("--m", gen_m, "Number of item types")->required();
  gen->add_option("--seed", gen_seed, "Generator seed")->required();
  gen->add_option("--out", gen_out, "Output instance path")->required();

  std::string solve_path, solve_method = "arcflow";
  double solve_time_limit = std::numeric_limits<double>::infinity();
  bool solve_json = false;
  auto* solve = app.add_subcommand("solve", "Solve an instance exactly");
  solve->add_option("instance", solve_path, "Instance file")->required();
  solve->add_option("--method", solve_method, "arcflow | colgen-lp")
      ->check(CLI::IsMember({"arcflow", "colgen-lp"}));
  solve->add_option("--time-limit", solve_time_limit, "Time limit in seconds");
  solve->add_flag("--json", solve_json, "Structured output");

  std::string bound_path;
  double bound_tol = 1e-7;
  auto* bound = app.add_subcommand("bound", "Column generation lower bound");
  bound->add_option("instance", bound_path, "Instance file")->required();
  bound->add_option("--tol", bound_tol, "Reduced cost tolerance");

  std::string stats_path, stats_stage = "final";
  auto* stats = app.add_subcommand("stats", "Graph sizes and compression ratios");
  stats->add_option("instance", stats_path, "Instance file")->required();
  stats->add_option("--stage", stats_stage, "built | final")
      ->check(CLI::IsMember({"built", "final"}));

  std::string dot_path, dot_out, dot_stage = "final";
  auto* dot = app.add_subcommand("dot", "Write the graph in DOT format");
  dot->add_option("instance", dot_path, "Instance file")->required();
  dot->add_option("--out", dot_out, "Output DOT path")->required();
  dot->add_option("--stage", dot_stage, "built | final")
      ->check(CLI::IsMember({"built", "final"}));

  std::string lp_path, lp_out;
  auto* export_lp = app.add_subcommand("export-lp", "Write the integer model as an LP file");
  export_lp->add_option("instance", lp_path, "Instance file")->required();
  export_lp->add_option("--out", lp_out, "Output LP path")->required();

  std::string bench_classes, bench_sizes, bench_seeds, bench_csv;
  double bench_time_limit = std::numeric_limits<double>::infinity();
  int bench_jobs = 1;
  auto* bench = app.add_subcommand("bench", "Run the benchmark harness, appending CSV rows");
  bench->add_option("--classes", bench_classes, "Class list, e.g. 1,3,5")->required();
  bench->add_option("--sizes", bench_sizes, "Item counts, e.g. 20,40")->required();
  bench->add_option("--seeds", bench_seeds, "Seed list or range, e.g. 1..10")->required();
  bench->add_option("--csv", bench_csv, "CSV output path")->required();
  bench->add_option("--time-limit", bench_time_limit, "Per-instance time limit in seconds");
  bench->add_option("--jobs", bench_jobs, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_class, gen_m, gen_seed, gen_out);
    if (solve->parsed()) return cmd_solve(solve_path, solve_method, solve_time_limit, solve_json);
    if (bound->parsed()) return cmd_bound(bound_path, bound_tol);
    if (stats->parsed()) return cmd_stats(stats_path, stats_stage);
    if (dot->parsed()) return cmd_dot(dot_path, dot_out, dot_stage);
    if (export_lp->parsed()) return cmd_export_lp(lp_path, lp_out);
    if (bench->parsed())
      return cmd_bench(bench_classes, bench_sizes, bench_seeds, bench_csv, bench_time_limit,
                       bench_jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
