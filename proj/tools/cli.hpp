#pragma once

// Command-line front end. Machine-readable results go to stdout (or --out),
// diagnostics to stderr. Exit status: 0 success, 1 failed verification,
// 2 usage or input error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "advice_hunt/advice_hunt.hpp"

namespace advice_hunt::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Writes to a file when a path is given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
    }
    os_ = file_.is_open() ? static_cast<std::ostream*>(&file_) : &fallback;
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

inline Instance load_instance(const std::string& graph_path, const std::string& instance_path, bool need_endpoints) {
  std::optional<PortLabeledGraph> graph;
  std::optional<NodeId> start;
  std::optional<NodeId> treasure;
  if (!instance_path.empty()) {
    ParsedFile f = load_graph_file(instance_path);
    graph = std::move(f.graph);
    start = f.start;
    treasure = f.treasure;
  }
  if (!graph_path.empty()) {
    ParsedFile f = load_graph_file(graph_path);
    if (!f.graph) throw UsageError("'" + graph_path + "' contains no graph");
    graph = std::move(f.graph);
  }
  if (!graph) throw UsageError("a graph is required (--graph or an --instance file with a graph)");
  Instance inst{std::move(*graph), 0, 0};
  if (need_endpoints) {
    if (!start || !treasure) throw UsageError("instance needs 'start' and 'treasure' lines");
    if (*start >= inst.graph.node_count() || *treasure >= inst.graph.node_count()) {
      throw UsageError("start/treasure index out of range for the graph");
    }
    inst.start = *start;
    inst.treasure = *treasure;
  }
  return inst;
}

inline BitString load_advice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open advice file '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  try {
    return BitString::from_string(line);
  } catch (const std::invalid_argument& e) {
    throw UsageError("advice file '" + path + "': " + e.what());
  }
}

inline std::vector<Port> parse_ports(const std::string& text) {
  std::vector<Port> ports;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      ports.push_back(static_cast<Port>(v));
    } catch (const std::exception&) {
      throw UsageError("bad port list '" + text + "'");
    }
  }
  return ports;
}

inline std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const Port p : parse_ports(text)) out.push_back(p);
  return out;
}

inline std::string join(const std::vector<std::uint64_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

inline void write_plan_summary(std::ostream& os, const PortLabeledGraph& g, const AdvicePlan& plan) {
  std::vector<std::uint64_t> lengths;
  for (const auto& a : plan.substrings) lengths.push_back(a.size());
  os << "D=" << plan.distance() << '\n'
     << "e=" << g.edge_count() << '\n'
     << "logsum=" << plan.logsum << '\n'
     << "requested_ell=" << plan.requested_ell << '\n'
     << "ell=" << plan.ell << '\n'
     << "beta=" << plan.beta.numerator() << '/' << plan.beta.denominator() << '\n'
     << "advice_bits=" << plan.encoded.size() << '\n'
     << "A_max=" << plan.max_substring_length() << '\n'
     << "substring_lengths=" << join(lengths) << '\n';
}

/// Runs a sweep over every budget and checks found, bound, and the final
/// cost-D row. Returns the number of failing rows.
inline std::size_t verify_instance_bounds(const Instance& inst, std::ostream& out, const std::string& tag) {
  const std::uint64_t logsum = create_advice(inst.graph, inst.start, inst.treasure, 0).logsum;
  std::vector<std::uint64_t> ells;
  for (std::uint64_t l = 0; l <= logsum; ++l) ells.push_back(l);
  const auto rows = sweep(inst.graph, inst.start, inst.treasure, ells);
  std::size_t failures = 0;
  for (const auto& r : rows) {
    if (!r.found || !r.holds) ++failures;
  }
  if (rows.back().cost != rows.back().distance) ++failures;
  out << tag << " rows=" << rows.size() << " failures=" << failures << '\n';
  return failures;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Treasure hunt and rendezvous with advice"};
  app.require_subcommand(1);

  std::string graph_path, instance_path, out_path, advice_path, trace_path, graph_out_path;
  std::string ell_text, ports_text, ells_text, mode_text = "certified";
  std::uint64_t seed = 0, n = 0, e = 0, D = 0, k = 0, M = 0, target_cost = 0, count = 1;
  std::optional<std::uint64_t> start_opt, treasure_opt, a_opt, b_opt;
  unsigned jobs = 1;

  auto add_io = [&](CLI::App* c) {
    c->add_option("--graph", graph_path, "Graph file");
    c->add_option("--instance", instance_path, "Instance file (graph with start/treasure)");
    c->add_option("--out", out_path, "Output file (default stdout)");
  };

  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->require_subcommand(1);
  auto* gen_cat = gen->add_subcommand("caterpillar", "Member of the caterpillar family T(D,k)");
  gen_cat->add_option("--D", D, "Distance")->required();
  gen_cat->add_option("--k", k, "Branching (k >= 2)")->required();
  gen_cat->add_option("--ports", ports_text, "Forward ports p_0,...,p_{D-1}")->required();
  auto* gen_random = gen->add_subcommand("random", "Random connected graph");
  gen_random->add_option("--n", n, "Nodes")->required();
  gen_random->add_option("--e", e, "Edges")->required();
  auto* gen_tree = gen->add_subcommand("tree", "Random tree");
  gen_tree->add_option("--n", n, "Nodes")->required();
  for (auto* c : {gen_random, gen_tree}) {
    c->add_option("--seed", seed, "Random seed")->required();
    c->add_option("--start", start_opt, "Start node (default: seeded choice)");
    c->add_option("--treasure", treasure_opt, "Treasure node (default: seeded choice)");
  }
  for (auto* c : {gen_cat, gen_random, gen_tree}) {
    c->add_option("--out", out_path, "Instance file (default stdout)");
    c->add_option("--graph-out", graph_out_path, "Also write the bare graph here");
  }

  auto* advise = app.add_subcommand("advise", "Build advice for an instance");
  add_io(advise);
  advise->add_option("--ell", ell_text, "Advice budget, or 'max' for LogSum");
  advise->add_option("--target-cost", target_cost, "Pick the smallest budget meeting this cost");
  advise->add_option("--mode", mode_text, "Budget selection: certified | empirical")
      ->check(CLI::IsMember({"certified", "empirical"}));
  advise->add_option("--advice", advice_path, "Advice output file");

  auto* hunt = app.add_subcommand("hunt", "Run FindTreasure with given advice");
  add_io(hunt);
  hunt->add_option("--advice", advice_path, "Advice file")->required();
  hunt->add_option("--trace", trace_path, "Write the move trace here");

  auto* rv = app.add_subcommand("rendezvous", "Rendezvous via the treasure-hunt reduction");
  add_io(rv);
  rv->add_option("--a", a_opt, "Start of agent a (default: instance start)");
  rv->add_option("--b", b_opt, "Start of agent b (default: instance treasure)");
  rv->add_option("--ell", ell_text, "Advice budget for the hunting agent, or 'max'");

  auto* sw = app.add_subcommand("sweep", "Cost/advice tradeoff table as CSV");
  add_io(sw);
  sw->add_option("--ells", ells_text, "Comma-separated budgets (default: all)");
  sw->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1U, 256U));

  auto* verify = app.add_subcommand("verify", "Run the analysis oracles");
  verify->require_subcommand(1);
  auto* v_claim = verify->add_subcommand("claim1", "Lattice-point count versus (6M)^D/D!");
  v_claim->add_option("--D", D, "Dimension")->required();
  v_claim->add_option("--M", M, "Maximum sum")->required();
  auto* v_census = verify->add_subcommand("census", "Caterpillar family size versus k^D");
  v_census->add_option("--D", D, "Distance")->required();
  v_census->add_option("--k", k, "Branching")->required();
  auto* v_bounds = verify->add_subcommand("bounds", "Cost bounds over every advice budget");
  add_io(v_bounds);
  v_bounds->add_option("--n", n, "Nodes of generated instances");
  v_bounds->add_option("--e", e, "Edges of generated instances (default: tree)");
  v_bounds->add_option("--seed", seed, "First seed");
  v_bounds->add_option("--count", count, "Number of generated instances");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (gen->parsed()) {
      Instance inst;
      if (gen_cat->parsed()) {
        inst = make_caterpillar(CaterpillarSpec{D, k, parse_ports(ports_text)});
      } else {
        const std::size_t edges = gen_tree->parsed() ? (n == 0 ? 0 : n - 1) : e;
        inst = with_random_endpoints(random_connected_graph(n, edges, seed), seed);
        if (start_opt) inst.start = static_cast<NodeId>(*start_opt);
        if (treasure_opt) inst.treasure = static_cast<NodeId>(*treasure_opt);
        if (inst.start >= inst.graph.node_count() || inst.treasure >= inst.graph.node_count()) {
          throw UsageError("start/treasure out of range");
        }
      }
      Sink sink(out_path, out);
      write_instance(*sink, inst);
      if (!graph_out_path.empty()) {
        Sink g(graph_out_path, out);
        write_graph(*g, inst.graph);
      }
      return kOk;
    }

    if (advise->parsed()) {
      const Instance inst = load_instance(graph_path, instance_path, true);
      AdvicePlan plan;
      if (!ell_text.empty() && advise->count("--target-cost") > 0) {
        throw UsageError("--ell and --target-cost are mutually exclusive");
      }
      if (advise->count("--target-cost") > 0) {
        const auto mode = mode_text == "empirical" ? SelectionMode::empirical : SelectionMode::certified;
        plan = select_ell(inst.graph, inst.start, inst.treasure, target_cost, mode).plan;
      } else {
        if (ell_text.empty()) throw UsageError("advise needs --ell or --target-cost");
        std::uint64_t ell = 0;
        if (ell_text == "max") {
          ell = create_advice(inst.graph, inst.start, inst.treasure, 0).logsum;
        } else {
          ell = parse_list(ell_text).at(0);
        }
        plan = create_advice(inst.graph, inst.start, inst.treasure, ell);
      }
      if (!advice_path.empty()) {
        Sink a(advice_path, out);
        *a << plan.encoded << '\n';
      }
      Sink sink(out_path, out);
      write_plan_summary(*sink, inst.graph, plan);
      if (advice_path.empty()) *sink << "advice=" << plan.encoded << '\n';
      return kOk;
    }

    if (hunt->parsed()) {
      const Instance inst = load_instance(graph_path, instance_path, true);
      const BitString advice = load_advice(advice_path);
      const AdvicePayload payload = decode(advice);
      const HuntOutcome run = find_treasure(inst.graph, inst.start, inst.treasure, advice);
      const std::uint64_t ell = payload.total_substring_bits();
      const std::uint64_t logsum = payload.logsum();
      const std::size_t dist = payload.distance();
      Sink sink(out_path, out);
      *sink << "found=" << (run.found ? "true" : "false") << '\n' << "cost=" << run.cost << '\n' << "D=" << dist << '\n'
            << "ell=" << ell << '\n';
      const bool full = logsum == 0 || ell >= logsum;
      const Rational beta = logsum == 0 ? Rational(1) : Rational(static_cast<std::int64_t>(ell), static_cast<std::int64_t>(logsum));
      *sink << "beta=" << beta.numerator() << '/' << beta.denominator() << '\n';
      std::uint64_t a_max = 0;
      for (const auto& s : payload.substrings) a_max = std::max<std::uint64_t>(a_max, s.size());
      auto emit = [&](const char* key, BoundKind kind) {
        if (full) {
          *sink << key << '=' << dist << '\n';
        } else {
          const UpperBound b = cost_bound(kind, dist, inst.graph.edge_count(), ell, logsum, a_max);
          *sink << key << '=' << b.to_decimal() << '\n';
        }
      };
      emit("bound_general", BoundKind::general);
      if (inst.graph.is_tree()) emit("bound_tree", BoundKind::tree);
      if (!trace_path.empty()) {
        Sink t(trace_path, out);
        for (const Move& m : run.trace) {
          if (m.kind == MoveKind::forward) {
            *t << "F " << m.port << '\n';
          } else {
            *t << "B\n";
          }
        }
      }
      return kOk;
    }

    if (rv->parsed()) {
      const bool need = !a_opt || !b_opt;
      Instance inst = load_instance(graph_path, instance_path, need);
      const auto a = static_cast<NodeId>(a_opt.value_or(inst.start));
      const auto b = static_cast<NodeId>(b_opt.value_or(inst.treasure));
      if (a >= inst.graph.node_count() || b >= inst.graph.node_count()) throw UsageError("start index out of range");
      if (a == b) throw UsageError("agents must start at distinct nodes");
      std::optional<std::uint64_t> ell;
      if (!ell_text.empty() && ell_text != "max") ell = parse_list(ell_text).at(0);
      const RendezvousOutcome r = rendezvous_via_th(inst.graph, a, b, ell);
      Sink sink(out_path, out);
      *sink << "met=" << (r.met ? "true" : "false") << '\n'
            << "meeting_node=" << (r.met ? std::to_string(r.meeting_node) : std::string("none")) << '\n'
            << "rounds=" << r.rounds << '\n'
            << "total_cost=" << r.total_cost << '\n'
            << "advice_bits_a=" << r.advice_a.size() << '\n'
            << "advice_bits_b=" << r.advice_b.size() << '\n';
      return kOk;
    }

    if (sw->parsed()) {
      const Instance inst = load_instance(graph_path, instance_path, true);
      std::vector<std::uint64_t> ells;
      if (ells_text.empty()) {
        const std::uint64_t logsum = create_advice(inst.graph, inst.start, inst.treasure, 0).logsum;
        for (std::uint64_t l = 0; l <= logsum; ++l) ells.push_back(l);
      } else {
        ells = parse_list(ells_text);
      }
      const auto rows = sweep(inst.graph, inst.start, inst.treasure, ells, jobs);
      Sink sink(out_path, out);
      write_sweep_csv(*sink, rows);
      return kOk;
    }

    if (verify->parsed()) {
      if (v_claim->parsed()) {
        const TupleCount t = count_tuples_bruteforce(D, M);
        out << "exact=" << t.exact_count << " binomial=" << t.stars_and_bars << " bound=" << t.bound << '\n';
        const bool ok = t.counts_agree() && t.within_bound();
        if (!ok) err << "claim1 check failed\n";
        return ok ? kOk : kVerificationFailed;
      }
      if (v_census->parsed()) {
        const CensusResult c = caterpillar_census(D, k);
        out << "count=" << c.distinct << " specs=" << c.specs << " expected=" << c.expected << '\n';
        if (!c.holds()) err << "census check failed\n";
        return c.holds() ? kOk : kVerificationFailed;
      }
      if (v_bounds->parsed()) {
        std::size_t failures = 0;
        if (!instance_path.empty() || !graph_path.empty()) {
          failures += verify_instance_bounds(load_instance(graph_path, instance_path, true), out, "instance");
        } else {
          if (n < 2) throw UsageError("verify bounds needs --instance or --n >= 2");
          const std::size_t edges = v_bounds->count("--e") > 0 ? e : n - 1;
          for (std::uint64_t s = seed; s < seed + count; ++s) {
            const Instance inst = with_random_endpoints(random_connected_graph(n, edges, s), s);
            failures += verify_instance_bounds(inst, out, "seed=" + std::to_string(s));
          }
        }
        if (failures) err << "bounds check failed on " << failures << " row(s)\n";
        return failures ? kVerificationFailed : kOk;
      }
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const MalformedAdvice& e) {
    err << "error: malformed advice: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace advice_hunt::cli
