#include "arcflow/bench.hpp"

#include <chrono>
#include <sstream>

#include "arcflow/colgen.hpp"
#include "arcflow/error.hpp"
#include "arcflow/graph.hpp"
#include "arcflow/instance.hpp"
#include "arcflow/milp.hpp"

namespace arcflow {

std::string bench_csv_header() {
  return "class,m,W,seed,z_lp,z_ip,cols,nv,na,ratio_v,ratio_a,t_cg,t_af_lp,t_af_ip";
}

std::string bench_csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << r.class_id << ',' << r.m << ',' << r.capacity << ',' << r.seed << ',' << r.z_lp << ','
     << r.z_ip << ',' << r.n_cols << ',' << r.n_v << ',' << r.n_a << ',' << r.ratio_v << ','
     << r.ratio_a << ',';
  os.precision(3);
  os << r.t_cg << ',' << r.t_af_lp << ',' << r.t_af_ip;
  return os.str();
}

BenchRecord run_bench_instance(int class_id, int m, std::uint64_t seed, double time_limit_sec) {
  using Clock = std::chrono::steady_clock;
  auto seconds_since = [](Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  };

  Instance inst = generate_class(class_id, m, seed);
  BenchRecord r;
  r.class_id = class_id;
  r.m = m;
  r.capacity = inst.capacity();
  r.seed = seed;

  auto t_cg = Clock::now();
  ColgenResult cg = solve_root(inst);
  r.t_cg = seconds_since(t_cg);
  r.z_lp = cg.z_lp;
  r.n_cols = cg.n_columns;

  auto t_build = Clock::now();
  ArcFlowGraph g = compress_final(build_graph(inst));
  MilpModel model = build_model(g, inst.demands());
  double build_seconds = seconds_since(t_build);

  GraphStats stats = graph_stats(g, inst);
  r.n_v = stats.n_vertices;
  r.n_a = stats.n_arcs;
  r.ratio_v = stats.ratio_v;
  r.ratio_a = stats.ratio_a;

  auto t_lp = Clock::now();
  LpSolution relaxation = solve_lp(model.lp);
  if (relaxation.status != LpStatus::Optimal)
    throw Error("arc-flow relaxation did not solve to optimality");
  r.t_af_lp = build_seconds + seconds_since(t_lp);

  auto t_ip = Clock::now();
  SolveLimits limits;
  limits.time_limit_sec = time_limit_sec;
  MilpSolution ip = solve(model, limits);
  r.t_af_ip = build_seconds + seconds_since(t_ip);
  r.z_ip = ip.objective;
  r.hit_limit = ip.status == MilpStatus::Limit;
  return r;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  auto parse_number = [&](const std::string& part) -> std::int64_t {
    try {
      std::size_t used = 0;
      std::int64_t v = std::stoll(part, &used);
      if (used != part.size()) throw Error("bad integer list entry '" + part + "'");
      return v;
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error("bad integer list entry '" + part + "'");
    }
  };
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty()) throw Error("empty entry in integer list '" + text + "'");
    std::size_t dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_number(part));
    } else {
      std::int64_t lo = parse_number(part.substr(0, dots));
      std::int64_t hi = parse_number(part.substr(dots + 2));
      if (hi < lo) throw Error("descending range '" + part + "'");
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace arcflow
