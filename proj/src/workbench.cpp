#include "danforge/workbench.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "danforge/bounds.hpp"
#include "danforge/construct.hpp"
#include "danforge/error.hpp"
#include "danforge/generators.hpp"
#include "danforge/io.hpp"
#include "danforge/parallel.hpp"
#include "danforge/rng.hpp"
#include "danforge/spanners.hpp"

namespace danforge {

namespace {

constexpr std::size_t kAllPairsGuard = 2000;

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

double lower_bound_at(const Demand& demand, std::size_t delta) {
  return entropy_lower_bound(demand, std::max<std::size_t>(2, delta)).lower_bound;
}

struct Instance {
  std::string id;
  std::string family;
  const Demand& demand;
  EntropyStats h;
};

BenchRecord base_record(const Instance& inst, std::string algo) {
  BenchRecord r;
  r.instance_id = inst.id;
  r.family = inst.family;
  r.n = inst.demand.node_count();
  r.m = inst.demand.support_size();
  r.algo = std::move(algo);
  r.h_xy = inst.h.hx_given_y;
  r.h_yx = inst.h.hy_given_x;
  return r;
}

void set_epl(BenchRecord& r, double epl) {
  r.epl = epl;
  r.ratio_epl_over_entropy = epl / (r.h_xy + r.h_yx + 2.0);
}

BenchRecord from_report(const Instance& inst, const BuildReport& report, std::size_t claimed, double ms) {
  auto r = base_record(inst, report.algo);
  r.delta_bound_claimed = claimed;
  r.max_degree_observed = report.max_degree;
  set_epl(r, report.epl);
  r.lower_bound = lower_bound_at(inst.demand, claimed != 0 ? claimed : report.max_degree);
  r.wall_time_ms = ms;
  return r;
}

BenchRecord from_spanner(const Instance& inst, const std::string& algo, const SpannerResult& s, double ms) {
  auto r = base_record(inst, algo);
  r.max_degree_observed = degree_stats(s.spanner).max_degree;
  set_epl(r, epl(inst.demand, s.spanner));
  r.lower_bound = lower_bound_at(inst.demand, r.max_degree_observed);
  r.nd = s.distortion.nd;
  if (!std::isnan(s.distortion.apd)) r.apd = s.distortion.apd;
  r.wall_time_ms = ms;
  return r;
}

using Task = std::function<std::vector<BenchRecord>()>;

std::string instance_name(std::string_view suite, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", index);
  return std::string(suite) + "-" + buf;
}

Demand random_small_demand(SplitMix64& rng) {
  const std::size_t n = 3 + rng.below(4);
  std::vector<WeightedPair> raw;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = 0; b < n; ++b) {
      if (a != b && rng.uniform() < 0.45) raw.push_back({a, b, 0.05 + rng.uniform()});
    }
  }
  if (raw.empty()) raw.push_back({0, 1, 1.0});
  return normalize(n, raw);
}

std::vector<Task> sandwich_tasks(std::uint64_t seed, bool timing) {
  SplitMix64 root(seed);
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < 200; ++k) {
    auto rng = root.split();
    auto demand = std::make_shared<Demand>(random_small_demand(rng));
    for (std::size_t delta : {2, 3}) {
      const auto id = instance_name("sandwich", tasks.size());
      tasks.push_back([demand, delta, id, timing] {
        const Instance inst{id, "random_small", *demand, entropy_stats(*demand, 2.0)};
        const double lb = lower_bound_at(*demand, delta);
        std::vector<BenchRecord> out;

        Stopwatch watch(timing);
        const auto oracle = brute_force_bnd(*demand, delta);
        auto r = base_record(inst, "oracle");
        r.delta_bound_claimed = delta;
        r.max_degree_observed = degree_stats(oracle.witness).max_degree;
        set_epl(r, oracle.optimum);
        r.lower_bound = lb;
        r.wall_time_ms = watch.elapsed_ms();
        out.push_back(r);

        auto consider = [&](auto&& build) {
          Stopwatch w(timing);
          const BuildReport report = build();
          if (report.max_degree > delta) return;
          auto row = from_report(inst, report, delta, w.elapsed_ms());
          row.lower_bound = lb;
          out.push_back(row);
        };
        if (classify(*demand).is_tree) consider([&] { return build_tree_dan(*demand); });
        consider([&] { return build_sparse_dan(*demand); });
        consider([&] { return build_dary_dan(*demand, std::max<std::size_t>(2, delta - 1)); });
        consider([&] { return spanner_to_dan(*demand, HostNetwork::support_of(*demand)); });
        return out;
      });
    }
  }
  return tasks;
}

std::vector<Task> tree_tasks(std::uint64_t seed, bool timing) {
  SplitMix64 root(seed);
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < 100; ++k) {
    GenSpec spec;
    spec.family = Family::tree;
    spec.n = 5 + (495 * k) / 99;
    spec.skew = static_cast<double>(k % 3);
    spec.seed = root.next();
    const auto id = instance_name("tree_family", k);
    tasks.push_back([spec, id, timing] {
      const auto gen = generate(spec);
      const Instance inst{id, "tree", gen.demand, entropy_stats(gen.demand, 2.0)};
      Stopwatch watch(timing);
      const auto report = build_tree_dan(gen.demand);
      return std::vector{from_report(inst, report, report.degree_bound, watch.elapsed_ms())};
    });
  }
  return tasks;
}

std::vector<Task> sparse_tasks(std::uint64_t seed, bool timing) {
  SplitMix64 root(seed);
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < 100; ++k) {
    GenSpec spec;
    spec.family = Family::sparse_random;
    spec.n = 20 + (480 * k) / 99;
    spec.m = spec.n * (1 + k % 4);
    spec.skew = static_cast<double>(k % 3);
    spec.hub_skew = 0.5 * static_cast<double>(k % 5);
    spec.seed = root.next();
    const auto id = instance_name("sparse_family", k);
    tasks.push_back([spec, id, timing] {
      const auto gen = generate(spec);
      const Instance inst{id, "sparse_random", gen.demand, entropy_stats(gen.demand, 2.0)};
      Stopwatch watch(timing);
      const auto report = build_sparse_dan(gen.demand);
      return std::vector{from_report(inst, report, report.degree_bound, watch.elapsed_ms())};
    });
  }
  return tasks;
}

std::vector<Task> ldd_tasks(std::uint64_t seed, bool timing) {
  SplitMix64 root(seed);
  std::vector<Task> tasks;
  for (std::size_t side = 10; side <= 30; side += 5) {
    GenSpec spec;
    spec.family = Family::thick_grid;
    spec.rows = spec.cols = side;
    spec.radius = 2;
    spec.seed = root.next();
    const auto id = instance_name("ldd_family", tasks.size());
    tasks.push_back([spec, id, timing] {
      const auto gen = generate(spec);
      const Instance inst{id, "thick_grid", gen.demand, entropy_stats(gen.demand, 2.0)};
      std::vector<BenchRecord> out;
      Stopwatch w1(timing);
      const auto sub = build_ldd_spanner(gen.support, SpannerVariant::subgraph);
      out.push_back(from_spanner(inst, "ldd", sub, w1.elapsed_ms()));
      Stopwatch w2(timing);
      const auto metric = build_ldd_spanner(gen.support, SpannerVariant::metric);
      out.push_back(from_spanner(inst, "ldd-metric", metric, w2.elapsed_ms()));
      Stopwatch w3(timing);
      const auto report = spanner_to_dan(gen.demand, sub.spanner);
      out.push_back(from_report(inst, report, report.degree_bound, w3.elapsed_ms()));
      return out;
    });
  }
  return tasks;
}

std::vector<Task> hypercube_tasks(std::uint64_t seed, bool timing) {
  (void)seed;  // the family is fully determined by d
  std::vector<Task> tasks;
  for (std::size_t d = 4; d <= 10; ++d) {
    const auto id = instance_name("hypercube_family", tasks.size());
    tasks.push_back([d, id, timing] {
      GenSpec spec;
      spec.family = Family::hypercube;
      spec.d = d;
      const auto gen = generate(spec);
      const Instance inst{id, "hypercube", gen.demand, entropy_stats(gen.demand, 2.0)};
      std::vector<BenchRecord> out;
      Stopwatch w1(timing);
      const auto s = hypercube_spanner(d);
      out.push_back(from_spanner(inst, "hypercube", s, w1.elapsed_ms()));
      Stopwatch w2(timing);
      const auto report = spanner_to_dan(gen.demand, s.spanner);
      out.push_back(from_report(inst, report, report.degree_bound, w2.elapsed_ms()));
      return out;
    });
  }
  return tasks;
}

std::vector<Task> divergence_tasks(std::uint64_t seed, bool timing) {
  SplitMix64 root(seed);
  std::vector<Task> tasks;
  for (Family family : {Family::clique_lines, Family::star_of_cliques}) {
    for (std::size_t n : {64, 256, 1024}) {
      GenSpec spec;
      spec.family = family;
      spec.n = n;
      spec.seed = root.next();
      const auto id = instance_name("distortion_divergence", tasks.size());
      tasks.push_back([spec, id, timing] {
        const auto gen = generate(spec);
        const Instance inst{id, std::string(to_string(spec.family)), gen.demand, entropy_stats(gen.demand, 2.0)};
        Stopwatch watch(timing);
        SpannerResult s;
        s.spanner = divergence_spanner(spec);
        s.edge_count = s.spanner.edge_count();
        s.distortion = measure_distortion(gen.support, s.spanner, true);
        return std::vector{from_spanner(inst, "divergence", s, watch.elapsed_ms())};
      });
    }
  }
  return tasks;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"sandwich",  "tree_family",      "sparse_family",
                                                   "ldd_family", "hypercube_family", "distortion_divergence"};
  return names;
}

std::vector<BenchRecord> run_suite(std::string_view name, std::uint64_t seed, bool timing) {
  std::vector<Task> tasks;
  if (name == "sandwich") {
    tasks = sandwich_tasks(seed, timing);
  } else if (name == "tree_family") {
    tasks = tree_tasks(seed, timing);
  } else if (name == "sparse_family") {
    tasks = sparse_tasks(seed, timing);
  } else if (name == "ldd_family") {
    tasks = ldd_tasks(seed, timing);
  } else if (name == "hypercube_family") {
    tasks = hypercube_tasks(seed, timing);
  } else if (name == "distortion_divergence") {
    tasks = divergence_tasks(seed, timing);
  } else {
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + std::string(name) + "'");
  }
  std::vector<std::vector<BenchRecord>> results(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { results[i] = tasks[i](); });
  std::vector<BenchRecord> records;
  for (auto& batch : results) {
    for (auto& r : batch) records.push_back(std::move(r));
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const BenchRecord& a, const BenchRecord& b) { return a.instance_id < b.instance_id; });
  return records;
}

std::string to_csv(std::span<const BenchRecord> records) {
  std::ostringstream out;
  out << "instance_id,family,n,m,algo,delta_bound_claimed,max_degree_observed,epl,h_xy,h_yx,"
         "lower_bound,ratio_epl_over_entropy,wall_time_ms,nd,apd\n";
  for (const auto& r : records) {
    out << csv_field(r.instance_id) << ',' << csv_field(r.family) << ',' << r.n << ',' << r.m << ','
        << csv_field(r.algo) << ',' << r.delta_bound_claimed << ',' << r.max_degree_observed << ','
        << format_double(r.epl) << ',' << format_double(r.h_xy) << ',' << format_double(r.h_yx) << ','
        << format_double(r.lower_bound) << ',' << format_double(r.ratio_epl_over_entropy) << ','
        << format_double(r.wall_time_ms) << ',' << (r.nd ? format_double(*r.nd) : "") << ','
        << (r.apd ? format_double(*r.apd) : "") << '\n';
  }
  return out.str();
}

namespace {

void emit(const std::string& out_path, const std::string& data) {
  if (out_path.empty()) {
    std::cout << data;
  } else {
    write_file(out_path, data);
  }
}

void emit_json(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

void require_all_pairs_guard(const HostNetwork& graph) {
  if (graph.node_count() > kAllPairsGuard) {
    throw Error(ErrorCode::TooLarge, "all-pairs computations are limited to n <= " + std::to_string(kAllPairsGuard));
  }
}

std::size_t count_disconnected(const Demand& demand, const HostNetwork& graph) {
  std::size_t missing = 0;
  for (NodeId src = 0; src < demand.node_count(); ++src) {
    const auto row = demand.row(src);
    if (row.empty()) continue;
    const auto dist = bfs_distances(graph, src);
    for (const auto& e : row) missing += dist[e.dst] == kUnreachable ? 1 : 0;
  }
  return missing;
}

void check_shape(const Demand& demand, const HostNetwork& graph) {
  if (demand.node_count() != graph.node_count()) {
    throw Error(ErrorCode::ShapeMismatch, "demand has " + std::to_string(demand.node_count()) +
                                              " nodes but graph has " + std::to_string(graph.node_count()));
  }
}

}  // namespace

int cli(int argc, const char* const* argv) {
  CLI::App app{"Design and check bounded-degree demand-aware networks"};
  app.require_subcommand(1);
  std::function<int()> action;

  // gen
  std::string family = "tree", gen_out, support_out, spanner_out;
  GenSpec spec;
  auto* gen = app.add_subcommand("gen", "Generate a demand (JSON)");
  gen->add_option("--family", family, "Demand family")->required();
  gen->add_option("--n", spec.n, "Node count");
  gen->add_option("--d", spec.d, "Hypercube dimension");
  gen->add_option("--rows", spec.rows, "Grid rows");
  gen->add_option("--cols", spec.cols, "Grid columns");
  gen->add_option("--radius", spec.radius, "Grid neighbourhood radius");
  gen->add_option("--r", spec.r, "Degree of regular_uniform");
  gen->add_option("--m", spec.m, "Arc count of sparse_random (default 3n)");
  gen->add_option("--seed", spec.seed, "Seed");
  gen->add_option("--skew", spec.skew, "Zipf exponent of the weights");
  gen->add_option("--hub-skew", spec.hub_skew, "Zipf exponent of endpoint popularity (sparse_random)");
  gen->add_option("--out", gen_out, "Output file (default stdout)");
  gen->add_option("--support-out", support_out, "Also write the support graph");
  gen->add_option("--spanner-out", spanner_out, "Also write the companion spanner (clique_lines, star_of_cliques)");
  gen->callback([&] {
    action = [&] {
      spec.family = family_from_string(family);
      const auto g = generate(spec);
      Json doc = demand_to_json(g.demand);
      doc["meta"] = {{"family", family}, {"seed", spec.seed}, {"rng", SplitMix64::kAlgorithm}, {"skew", spec.skew}};
      emit(gen_out, doc.dump(2) + "\n");
      if (!support_out.empty()) write_file(support_out, graph_to_text(g.support));
      if (!spanner_out.empty()) write_file(spanner_out, graph_to_text(divergence_spanner(spec)));
      return 0;
    };
  });

  // build
  std::string demand_path, graph_path, algo, build_out, spanner_path;
  std::size_t delta = 0;
  auto* build = app.add_subcommand("build", "Build a DAN for a demand");
  build->add_option("--demand", demand_path, "Demand JSON")->required();
  build->add_option("--algo", algo, "Construction")
      ->required()
      ->check(CLI::IsMember({"tree", "sparse", "dary", "spanner2dan", "ldd"}));
  build->add_option("--delta", delta, "Arity for dary; degree budget to check for the others");
  build->add_option("--spanner", spanner_path, "Spanner graph for spanner2dan (default: demand support)");
  build->add_option("--out", build_out, "Write the network here (text format)");
  build->callback([&] {
    action = [&] {
      const auto demand = read_demand(demand_path);
      BuildReport report;
      if (algo == "tree") {
        report = build_tree_dan(demand);
      } else if (algo == "sparse") {
        report = build_sparse_dan(demand);
      } else if (algo == "dary") {
        if (delta == 0) throw Error(ErrorCode::BadArity, "dary needs --delta");
        report = build_dary_dan(demand, delta);
      } else if (algo == "spanner2dan") {
        const auto spanner = spanner_path.empty() ? HostNetwork::support_of(demand) : read_graph(spanner_path);
        report = spanner_to_dan(demand, spanner);
      } else {
        const auto s = build_ldd_spanner(HostNetwork::support_of(demand), SpannerVariant::subgraph);
        report = spanner_to_dan(demand, s.spanner);
        report.algo = "ldd";
      }
      if (delta != 0 && algo != "dary" && report.max_degree > delta) {
        report.warnings.push_back("max degree " + std::to_string(report.max_degree) + " exceeds --delta " +
                                  std::to_string(delta));
      }
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      if (!build_out.empty()) write_file(build_out, graph_to_text(report.network));
      emit_json(report_to_json(report));
      return 0;
    };
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Expected path length of a demand on a network");
  eval->add_option("--demand", demand_path, "Demand JSON")->required();
  eval->add_option("--graph", graph_path, "Network")->required();
  eval->callback([&] {
    action = [&] {
      const auto demand = read_demand(demand_path);
      const auto graph = read_graph(graph_path);
      check_shape(demand, graph);
      const auto stats = degree_stats(graph);
      const auto h = entropy_stats(demand, 2.0);
      const double e = epl(demand, graph);
      Json doc = {{"epl", std::isfinite(e) ? Json(e) : Json(nullptr)},
                  {"max_degree", stats.max_degree},
                  {"avg_degree", stats.avg_degree},
                  {"h_xy", h.hx_given_y},
                  {"h_yx", h.hy_given_x}};
      emit_json(doc);
      return 0;
    };
  });

  // lb
  auto* lb = app.add_subcommand("lb", "Entropy lower bound on the EPL of any degree-delta network");
  lb->add_option("--demand", demand_path, "Demand JSON")->required();
  lb->add_option("--delta", delta, "Degree bound")->required();
  lb->callback([&] {
    action = [&] {
      emit_json(bound_to_json(entropy_lower_bound(read_demand(demand_path), delta)));
      return 0;
    };
  });

  // oracle
  std::size_t n_max = 7;
  auto* oracle = app.add_subcommand("oracle", "Exact optimum by exhaustive search (small n)");
  oracle->add_option("--demand", demand_path, "Demand JSON")->required();
  oracle->add_option("--delta", delta, "Degree bound")->required();
  oracle->add_option("--n-max", n_max, "Largest n to accept (at most 10)");
  oracle->callback([&] {
    action = [&] {
      emit_json(oracle_to_json(brute_force_bnd(read_demand(demand_path), delta, n_max)));
      return 0;
    };
  });

  // spanner
  std::size_t t = 3, dim = 0;
  std::string spanner_algo, spanner_graph_out;
  auto* span = app.add_subcommand("spanner", "Build a spanner of a graph");
  span->add_option("--algo", spanner_algo, "Spanner algorithm")
      ->required()
      ->check(CLI::IsMember({"ldd", "ldd-metric", "greedy", "hypercube"}));
  span->add_option("--graph", graph_path, "Input graph");
  span->add_option("--demand", demand_path, "Use the support of this demand as input graph");
  span->add_option("--t", t, "Stretch for greedy");
  span->add_option("--d", dim, "Dimension for hypercube");
  span->add_option("--out", spanner_graph_out, "Write the spanner here (text format)");
  span->callback([&] {
    action = [&] {
      SpannerResult s;
      if (spanner_algo == "hypercube") {
        if (dim == 0) throw Error(ErrorCode::BadSpec, "hypercube needs --d");
        s = hypercube_spanner(dim);
      } else {
        HostNetwork graph;
        if (!graph_path.empty()) {
          graph = read_graph(graph_path);
        } else if (!demand_path.empty()) {
          graph = HostNetwork::support_of(read_demand(demand_path));
        } else {
          throw Error(ErrorCode::BadSpec, "spanner needs --graph or --demand");
        }
        require_all_pairs_guard(graph);
        if (spanner_algo == "greedy") {
          s = greedy_spanner(graph, t);
        } else {
          s = build_ldd_spanner(graph, spanner_algo == "ldd" ? SpannerVariant::subgraph : SpannerVariant::metric);
        }
      }
      if (!spanner_graph_out.empty()) write_file(spanner_graph_out, graph_to_text(s.spanner));
      emit_json(spanner_stats_to_json(s));
      return 0;
    };
  });

  // bench
  std::string suite, bench_out;
  std::uint64_t seed = 1;
  bool timing = false;
  auto* bench = app.add_subcommand("bench", "Run an experiment suite and write CSV");
  bench->add_option("--suite", suite, "Suite name")->required();
  bench->add_option("--seed", seed, "Seed");
  bench->add_option("--out", bench_out, "CSV file (default stdout)");
  bench->add_flag("--timing", timing, "Measure wall time (output is then not reproducible)");
  bench->callback([&] {
    action = [&] {
      std::cerr << "running suite " << suite << " with " << worker_count() << " workers\n";
      const auto records = run_suite(suite, seed, timing);
      emit(bench_out, to_csv(records));
      std::cerr << records.size() << " records\n";
      return 0;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Check a network against a degree bound and a demand");
  verify->add_option("--demand", demand_path, "Demand JSON")->required();
  verify->add_option("--graph", graph_path, "Network")->required();
  verify->add_option("--delta", delta, "Degree bound")->required();
  verify->callback([&] {
    action = [&] {
      const auto demand = read_demand(demand_path);
      const auto graph = read_graph(graph_path);
      check_shape(demand, graph);
      const auto stats = degree_stats(graph);
      const std::size_t missing = count_disconnected(demand, graph);
      const bool ok = stats.max_degree <= delta && missing == 0;
      const double e = epl(demand, graph);
      Json doc = {{"ok", ok},
                  {"max_degree", stats.max_degree},
                  {"delta", delta},
                  {"disconnected_pairs", missing},
                  {"epl", std::isfinite(e) ? Json(e) : Json(nullptr)},
                  {"lower_bound", delta >= 2 ? Json(entropy_lower_bound(demand, delta).lower_bound) : Json(nullptr)}};
      emit_json(doc);
      return ok ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    std::cerr << Json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
}

}  // namespace danforge
