// Command-line front end: gen-graph, simulate, ingest, infer, eval, curve, sweep.

#include <glob.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "netinf/cascade.hpp"
#include "netinf/error.hpp"
#include "netinf/evaluation.hpp"
#include "netinf/inference.hpp"
#include "netinf/ingest.hpp"
#include "netinf/kronecker.hpp"
#include "netinf/sweep.hpp"
#include "netinf/text.hpp"

namespace fs = std::filesystem;
using namespace netinf;

namespace {

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> paths;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0)
    for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  globfree(&g);
  return paths;
}

void add_inference_options(CLI::App* cmd, InferenceConfig& config) {
  cmd->add_option("--alpha", config.alpha, "Assumed transmission rate (time units)")
      ->capture_default_str();
  cmd->add_option("--beta", config.beta, "Per-edge transmission probability")->capture_default_str();
  cmd->add_option("--epsilon", config.epsilon, "Background infection rate")->capture_default_str();
  cmd->add_option("--tolerance", config.gain_tolerance, "Stop when the best gain is at or below this")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infer diffusion networks from cascade infection times"};
  app.require_subcommand(1);

  // gen-graph
  KroneckerSeed seed;
  std::string graph_out;
  std::vector<double> matrix;
  auto* gen = app.add_subcommand("gen-graph", "Generate a Kronecker ground-truth graph");
  gen->add_option("--power", seed.power, "Kronecker power (2^power nodes)")->required();
  gen->add_option("--edges", seed.target_edges, "Number of directed edges")->required();
  gen->add_option("--seed", seed.rng_seed, "RNG seed")->required();
  gen->add_option("--matrix", matrix, "Seed matrix a,b,c,d (row-major)")
      ->delimiter(',')
      ->expected(4);
  gen->add_option("--out", graph_out, "Output graph file")->required();

  // simulate
  std::string sim_graph, sim_out;
  std::size_t sim_count = 0, sim_budget = 0;
  double sim_coverage = 0.85;
  TransmissionModel model;
  auto* sim = app.add_subcommand("simulate", "Simulate SI cascades over a graph");
  sim->add_option("--graph", sim_graph, "Ground-truth graph file")->required();
  sim->add_option("--count", sim_count, "Number of cascades")->required();
  sim->add_option("--beta", model.beta)->capture_default_str();
  sim->add_option("--alpha-min", model.alpha_min)->capture_default_str();
  sim->add_option("--alpha-max", model.alpha_max)->capture_default_str();
  sim->add_option("--coverage", sim_coverage, "Target fraction of nodes in >= 1 cascade")
      ->capture_default_str();
  sim->add_option("--horizon", model.horizon, "Observation window (default unbounded)");
  sim->add_option("--retry-budget", sim_budget, "Re-rooting attempts (default 10 * count)");
  sim->add_option("--seed", model.rng_seed)->required();
  sim->add_option("--out", sim_out, "Output cascade file")->required();

  // ingest
  std::string ingest_in, stats_out, cascades_out;
  std::size_t min_length = 1;
  std::optional<std::int64_t> min_votes;
  std::vector<std::size_t> stats_range;
  auto* ing = app.add_subcommand("ingest", "Clean a submission log into cascades");
  ing->add_option("--in", ingest_in, "Submission log CSV")->required();
  ing->add_option("--min-length", min_length, "Minimum cascade length")->required();
  ing->add_option("--min-votes", min_votes, "Drop submissions below this vote count");
  ing->add_option("--stats-out", stats_out, "Threshold statistics CSV")->required();
  ing->add_option("--stats-range", stats_range, "Emit stats rows for every length LO,HI")
      ->delimiter(',')
      ->expected(2);
  ing->add_option("--cascades-out", cascades_out, "Output cascade file")->required();

  // infer
  std::string infer_in, infer_out;
  InferenceConfig infer_config;
  auto* inf = app.add_subcommand("infer", "Greedy network inference");
  inf->add_option("--cascades", infer_in, "Cascade file")->required();
  inf->add_option("--k", infer_config.k, "Maximum number of edges")->required();
  add_inference_options(inf, infer_config);
  inf->add_option("--out", infer_out, "Output edge list")->required();

  // eval
  std::string eval_in, eval_truth, eval_baseline, eval_out, eval_degrees, eval_format;
  auto* ev = app.add_subcommand("eval", "Score and export an inferred network");
  ev->add_option("--inferred", eval_in, "Inferred edge list")->required();
  ev->add_option("--truth", eval_truth, "Ground-truth graph file");
  ev->add_option("--baseline", eval_baseline, "Inferred edge list to diff against");
  ev->add_option("--format", eval_format, "dot or edgelist")->required();
  ev->add_option("--degrees", eval_degrees, "Write in/out degree table CSV");
  ev->add_option("--out", eval_out, "Output document")->required();

  // curve
  std::string curve_dir, curve_out;
  auto* cur = app.add_subcommand("curve", "Edges found per dataset and k from a sweep directory");
  cur->add_option("--dir", curve_dir, "Sweep output directory")->required();
  cur->add_option("--out", curve_out, "Curve CSV")->required();

  // sweep
  std::string sweep_glob, sweep_dir;
  std::vector<std::size_t> sweep_ks{100, 250, 500, 1000, 2000, 5000, 10000, 50000};
  sweep::SweepOptions sweep_options;
  std::uint64_t mem_cap = 0;
  InferenceConfig sweep_config;
  auto* sw = app.add_subcommand("sweep", "Run inference over datasets x iteration counts");
  sw->add_option("--datasets", sweep_glob, "Glob of cascade files")->required();
  sw->add_option("--ks", sweep_ks, "Iteration counts")->delimiter(',')->capture_default_str();
  sw->add_option("--workers", sweep_options.workers)->capture_default_str();
  sw->add_flag("--resume", sweep_options.resume, "Skip tasks whose output already parses");
  sw->add_option("--mem-cap", mem_cap, "Memory cap in bytes for concurrently running tasks");
  sw->add_option("--mem-base", sweep_options.memory_model.base_bytes)->capture_default_str();
  sw->add_option("--mem-per-transmission", sweep_options.memory_model.bytes_per_transmission)
      ->capture_default_str();
  add_inference_options(sw, sweep_config);
  sw->add_option("--out-dir", sweep_dir, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (!matrix.empty()) std::copy(matrix.begin(), matrix.end(), seed.entries.begin());
      const auto graph = kronecker_generate(seed);
      save_graph(graph_out, graph);
      std::cout << "nodes=" << graph.node_count() << " edges=" << graph.edge_count() << '\n';
    } else if (*sim) {
      const auto graph = load_graph(sim_graph);
      const auto gen_result = generate_cascade_set(graph, model, sim_count, sim_coverage, sim_budget);
      save_cascades(sim_out, gen_result.set);
      std::cout << "cascades=" << gen_result.set.cascades.size()
                << " transmissions=" << gen_result.set.transmissions()
                << " coverage=" << text::format_fixed(gen_result.coverage, 4)
                << " replacements=" << gen_result.replacements << '\n';
      if (!gen_result.coverage_met)
        std::cerr << "warning: coverage target " << sim_coverage << " not met\n";
    } else if (*ing) {
      auto cleaned = ingest::clean(ingest::load_submissions(ingest_in));
      std::cout << "dropped=" << cleaned.dropped << " retained=" << cleaned.records.size() << '\n';
      const auto lists = ingest::build_event_lists(cleaned.records);
      std::vector<ingest::ThresholdStats> rows;
      if (stats_range.empty()) stats_range = {min_length, min_length};
      for (std::size_t l = stats_range[0]; l <= stats_range[1]; ++l)
        rows.push_back(ingest::stats(ingest::threshold(lists, l, min_votes), l));
      std::ostringstream csv;
      ingest::write_stats_csv(csv, rows);
      text::write_file_atomic(stats_out, csv.str());
      const auto set = ingest::to_cascade_set(ingest::threshold(lists, min_length, min_votes));
      save_cascades(cascades_out, set);
      std::cout << "cascades=" << set.cascades.size() << " nodes=" << set.nodes.size() << '\n';
    } else if (*inf) {
      const auto set = load_cascades(infer_in);
      const auto network = infer(set, infer_config);
      save_inferred(infer_out, network, infer_config);
      std::cout << "edges=" << network.selections.size()
                << " saturated=" << (network.saturated ? "true" : "false") << '\n';
    } else if (*ev) {
      const auto inferred = load_inferred(eval_in);
      std::optional<InferredFile> baseline;
      if (!eval_baseline.empty()) baseline = load_inferred(eval_baseline);
      const auto format = eval::parse_export_format(eval_format);
      text::write_file_atomic(
          eval_out,
          eval::export_graph(inferred.network, baseline ? &baseline->network : nullptr, format));
      if (!eval_truth.empty())
        std::cout << eval::format_report(eval::precision_recall(inferred.network, load_graph(eval_truth)));
      if (!eval_degrees.empty())
        text::write_file_atomic(eval_degrees,
                                eval::format_degree_csv(eval::degree_table(inferred.network)));
    } else if (*cur) {
      static const std::regex name(R"((.+)\.k([0-9]+)\.edges)");
      std::vector<eval::RunRecord> runs;
      for (const auto& entry : fs::directory_iterator(curve_dir)) {
        std::smatch m;
        const std::string file = entry.path().filename().string();
        if (!std::regex_match(file, m, name)) continue;
        runs.push_back({m[1], std::stoul(m[2]), load_inferred(entry.path().string()).network});
      }
      text::write_file_atomic(curve_out, eval::format_curve_csv(eval::iteration_curve(runs)));
    } else if (*sw) {
      auto datasets = expand_glob(sweep_glob);
      if (datasets.empty()) throw InvalidArgument("no datasets match " + sweep_glob);
      fs::create_directories(sweep_dir);
      const auto tasks = sweep::build_matrix(datasets, sweep_ks, sweep_config, sweep_dir);
      if (mem_cap > 0) sweep_options.memory_cap = mem_cap;
      std::ofstream log(fs::path(sweep_dir) / "sweep.log", std::ios::app);
      sweep_options.log = &log;
      const auto result = sweep::dispatch(tasks, sweep_options);
      std::cout << "tasks=" << tasks.size() << " completed=" << result.completed.size()
                << " failed=" << result.failed.size() << '\n';
      for (const auto& f : result.failed) std::cerr << f.task.id() << ": " << f.error << '\n';
      return result.failed.empty() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
