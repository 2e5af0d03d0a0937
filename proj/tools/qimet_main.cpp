#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qimet/d_metric.hpp"
#include "qimet/generators.hpp"
#include "qimet/gh_distance.hpp"
#include "qimet/interpolation.hpp"
#include "qimet/io.hpp"
#include "qimet/propsuite.hpp"
#include "qimet/qi_distance.hpp"

namespace {

using nlohmann::json;
using namespace qimet;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write " + out_path);
  out << text;
}

std::uint64_t env_max_evals() {
  if (const char* env = std::getenv("QIMET_MAX_EVALS")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw BadParams("QIMET_MAX_EVALS is not a number");
    }
  }
  return search::kDefaultMaxEvals;
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfExponent;
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw BadExponent("cannot parse norm exponent '" + text + "'");
  }
}

json map_pair_json(const MapPair& mp) {
  return json{{"f", mp.f}, {"g", mp.g}};
}

json correspondence_json(const Correspondence& R) {
  json pairs = json::array();
  for (const auto& [i, j] : R.pairs()) pairs.push_back({i, j});
  return json{{"nX", R.nX()}, {"nY", R.nY()}, {"pairs", pairs}};
}

struct CommonFlags {
  std::uint64_t seed = 0;
  std::uint64_t max_evals = 0;  // 0 = default/env
  int threads = 1;
  double tolerance = kValidationTol;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "RNG seed");
  cmd->add_option("--max-evals", flags.max_evals,
                  "Exact-mode enumeration cap / search-mode evaluations per restart "
                  "(default: QIMET_MAX_EVALS or 10^8)");
  cmd->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--tolerance", flags.tolerance, "Metric validation tolerance");
  cmd->add_option("-o,--output", flags.out_path, "Write the report/file here instead of stdout");
}

int run_gen(const std::string& kind, const json& params, const CommonFlags& flags) {
  FiniteMetricSpace space = [&] {
    if (kind == "two_point") return gen_two_point(params.at("d").get<double>());
    if (kind == "lattice")
      return gen_scaled_lattice(params.at("alpha").get<double>(),
                                params.at("count").get<std::size_t>());
    if (kind == "polyline")
      return gen_polyline_chain(params.at("segments").get<std::size_t>(),
                                params.at("spu").get<double>());
    if (kind == "lp_grid")
      return gen_lp_grid(parse_exponent(params.at("p").get<std::string>()),
                         params.at("dim").get<std::size_t>(),
                         params.at("side").get<std::size_t>());
    if (kind == "interp_grid")
      return gen_interpolated_norm_grid(params.at("t").get<double>(),
                                        params.at("dim").get<std::size_t>(),
                                        params.at("side").get<std::size_t>());
    if (kind == "random")
      return random_space(params.at("n").get<std::size_t>(), flags.seed,
                          params.at("lo").get<double>(), params.at("hi").get<double>(),
                          params.at("slack").get<double>());
    throw BadParams("unknown generator kind " + kind);
  }();
  emit(io::space_to_json(space), flags.out_path);
  return 0;
}

int run_dist(const std::string& method, bool search_mode, const std::string& file_a,
             const std::string& file_b, bool want_witness, int restarts,
             double init_temp, double cooling, const CommonFlags& flags) {
  const auto X = io::read_space(file_a, flags.tolerance);
  const auto Y = io::read_space(file_b, flags.tolerance);
  const int threads = resolve_threads(flags.threads);
  const std::uint64_t cap = flags.max_evals ? flags.max_evals : env_max_evals();

  search::SearchBudget budget;
  budget.max_evaluations = flags.max_evals ? flags.max_evals : 20'000;
  budget.restarts = restarts;
  budget.rng_seed = flags.seed;
  budget.initial_temperature = init_temp;
  budget.cooling_rate = cooling;

  json report;
  report["method"] = method;
  report["mode"] = search_mode ? "search" : "exact";

  if (method == "gh") {
    const auto r = search_mode ? gh::gh_search(X, Y, budget, threads)
                               : gh::gh_exact_result(X, Y, cap, threads);
    report["value"] = r.best_value;
    report["evaluations"] = r.evaluations_used;
    report["certified_exact"] = r.certified_exact;
    if (want_witness) report["witness"] = map_pair_json(r.best_witness);
  } else if (method == "qhat") {
    const auto r = search_mode ? qi::qhat_search(X, Y, budget, threads)
                               : qi::qhat_exact_result(X, Y, cap, threads);
    report["value"] = r.best_value;
    report["evaluations"] = r.evaluations_used;
    report["certified_exact"] = r.certified_exact;
    if (want_witness) {
      report["witness"] = map_pair_json(r.best_witness);
      report["witness"]["r"] = r.best_value;
    }
  } else if (method == "dmetric") {
    const auto r = search_mode ? dmetric::d_search(X, Y, budget, threads)
                               : dmetric::d_exact_result(X, Y, cap, threads);
    report["value"] = r.best_value;
    report["evaluations"] = r.evaluations_used;
    report["certified_exact"] = r.certified_exact;
    if (want_witness) report["witness"] = correspondence_json(r.best_witness);
  } else {
    throw BadParams("unknown method " + method);
  }

  emit(report.dump(2) + "\n", flags.out_path);
  return 0;
}

int run_path(const std::string& file_x, const std::string& file_y,
             const std::string& file_r, const std::string& partitions_csv,
             int samples, const CommonFlags& flags) {
  const auto X = io::read_space(file_x, flags.tolerance);
  const auto Y = io::read_space(file_y, flags.tolerance);
  const auto R = io::read_correspondence(file_r);
  const auto fam = interp::InterpolationFamily::make(R, X, Y);

  std::vector<std::size_t> partition_counts;
  std::stringstream list(partitions_csv);
  std::string item;
  while (std::getline(list, item, ',')) {
    try {
      partition_counts.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw BadParams("cannot parse partition count '" + item + "'");
    }
  }
  if (partition_counts.empty()) throw BadParams("need at least one partition count");

  json report;
  report["r"] = fam.r;
  report["bound"] = dmetric::bound_qhat_from_d(fam.r);
  report["estimates"] = json::array();
  for (const auto parts : partition_counts)
    report["estimates"].push_back(
        {{"partitions", parts}, {"length", interp::path_length_estimate(fam, parts)}});

  report["samples"] = json::array();
  if (samples == 1) {
    report["samples"].push_back(interp::sample(fam, 0.0).rows());
  } else if (samples > 1) {
    for (int i = 0; i < samples; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
      report["samples"].push_back(interp::sample(fam, t).rows());
    }
  }

  emit(report.dump(2) + "\n", flags.out_path);
  return 0;
}

int run_verify(const std::string& suite, int trials, int families,
               double slack, const CommonFlags& flags) {
  propsuite::SuiteOptions opt;
  opt.trials = trials;
  opt.seed = flags.seed;
  opt.slack = slack;
  opt.threads = resolve_threads(flags.threads);
  if (flags.max_evals) opt.max_evals = flags.max_evals;

  propsuite::SuiteReport result;
  if (suite == "triangle_d") {
    result = propsuite::run_triangle_d(opt);
  } else if (suite == "bounds") {
    result = propsuite::run_bounds(opt);
  } else if (suite == "composition") {
    result = propsuite::run_composition(opt);
  } else if (suite == "eps_iso") {
    result = propsuite::run_eps_iso(opt);
  } else if (suite == "path") {
    opt.trials = families;
    opt.max_points = 5;
    result = propsuite::run_path(opt);
  } else if (suite == "reduction") {
    result = propsuite::run_reduction(opt);
  } else {
    throw BadParams("unknown suite " + suite);
  }

  json report;
  report["suite"] = result.suite;
  report["trials"] = result.trials;
  report["failures"] = result.failures;
  report["worst_slack"] = result.worst_slack;
  report["passed"] = result.passed();
  report["seed"] = flags.seed;
  if (!result.notes.empty()) report["notes"] = result.notes;
  emit(report.dump(2) + "\n", flags.out_path);
  return result.passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distances between finite metric spaces: Gromov-Hausdorff, the "
               "quasi-isometric distance, the correspondence metric D, and "
               "continuous deformation paths"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a metric space file");
  gen->require_subcommand(1);
  CommonFlags gen_flags;
  double gp_d = 1.0, gp_alpha = 1.0, gp_spu = 0.0, gp_t = 0.5, gp_lo = 0.5, gp_hi = 4.0,
         gp_slack = 0.0;
  std::size_t gp_count = 5, gp_segments = 3, gp_dim = 2, gp_side = 2, gp_n = 4;
  std::string gp_p = "2";

  auto* g_two = gen->add_subcommand("two_point", "Two points at distance d");
  g_two->add_option("--d", gp_d, "Distance")->required();
  add_common(g_two, gen_flags);

  auto* g_lat = gen->add_subcommand("lattice", "Scaled lattice {0, a, 2a, ...}");
  g_lat->add_option("--alpha", gp_alpha, "Scale")->required();
  g_lat->add_option("--count", gp_count, "Point count")->required();
  add_common(g_lat, gen_flags);

  auto* g_poly = gen->add_subcommand("polyline", "Right-angle polygonal chain");
  g_poly->add_option("--segments", gp_segments, "Segment count")->required();
  g_poly->add_option("--samples-per-unit", gp_spu, "Interior sample density");
  add_common(g_poly, gen_flags);

  auto* g_lp = gen->add_subcommand("lp_grid", "Integer grid under the l_p norm");
  g_lp->add_option("--p", gp_p, "Exponent (>= 1 or 'inf')")->required();
  g_lp->add_option("--dim", gp_dim, "Dimension");
  g_lp->add_option("--side", gp_side, "Grid side");
  add_common(g_lp, gen_flags);

  auto* g_interp = gen->add_subcommand("interp_grid", "Grid under (1-t)l1 + t l2");
  g_interp->add_option("--t", gp_t, "Interpolation parameter")->required();
  g_interp->add_option("--dim", gp_dim, "Dimension");
  g_interp->add_option("--side", gp_side, "Grid side");
  add_common(g_interp, gen_flags);

  auto* g_rand = gen->add_subcommand("random", "Seeded random space (triangle-repaired)");
  g_rand->add_option("--n", gp_n, "Point count")->required();
  g_rand->add_option("--lo", gp_lo, "Entry lower bound");
  g_rand->add_option("--hi", gp_hi, "Entry upper bound");
  g_rand->add_option("--slack", gp_slack, "Post-repair inflation");
  add_common(g_rand, gen_flags);

  // dist
  auto* dist_cmd = app.add_subcommand("dist", "Distance between two space files");
  CommonFlags dist_flags;
  std::string dist_method, dist_a, dist_b;
  bool dist_exact = false, dist_search = false, dist_witness = false;
  int dist_restarts = 8;
  double dist_temp = 1.0, dist_cooling = 0.995;
  dist_cmd->add_option("fileA", dist_a, "First space file")->required();
  dist_cmd->add_option("fileB", dist_b, "Second space file")->required();
  dist_cmd->add_option("--method", dist_method, "gh | qhat | dmetric")->required();
  dist_cmd->add_flag("--exact", dist_exact, "Exact enumeration (default)");
  dist_cmd->add_flag("--search", dist_search, "Simulated-annealing upper bound");
  dist_cmd->add_flag("--witness", dist_witness, "Include the optimal witness");
  dist_cmd->add_option("--restarts", dist_restarts, "Annealing restarts");
  dist_cmd->add_option("--init-temp", dist_temp, "Annealing initial temperature");
  dist_cmd->add_option("--cooling", dist_cooling, "Annealing cooling rate in (0,1)");
  add_common(dist_cmd, dist_flags);

  // path
  auto* path_cmd = app.add_subcommand("path", "Deformation path report for a correspondence");
  CommonFlags path_flags;
  std::string path_x, path_y, path_r, path_partitions = "16,64,256,1024";
  int path_samples = 0;
  path_cmd->add_option("fileX", path_x, "First space file")->required();
  path_cmd->add_option("fileY", path_y, "Second space file")->required();
  path_cmd->add_option("fileR", path_r, "Correspondence file")->required();
  path_cmd->add_option("--partitions", path_partitions, "Comma-separated partition counts");
  path_cmd->add_option("--samples", path_samples, "Number of sampled matrices to embed");
  add_common(path_cmd, path_flags);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite on seeded instances");
  CommonFlags verify_flags;
  verify_flags.seed = 1;
  std::string verify_suite;
  int verify_trials = 200, verify_families = 20;
  double verify_slack = 0.0;
  verify_cmd
      ->add_option("suite", verify_suite,
                   "triangle_d | bounds | composition | eps_iso | path | reduction")
      ->required();
  verify_cmd->add_option("--trials", verify_trials, "Trial count");
  verify_cmd->add_option("--families", verify_families, "Family count (path suite)");
  verify_cmd->add_option("--slack", verify_slack, "Random-space post-repair inflation");
  add_common(verify_cmd, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (g_two->parsed()) return run_gen("two_point", {{"d", gp_d}}, gen_flags);
    if (g_lat->parsed())
      return run_gen("lattice", {{"alpha", gp_alpha}, {"count", gp_count}}, gen_flags);
    if (g_poly->parsed())
      return run_gen("polyline", {{"segments", gp_segments}, {"spu", gp_spu}}, gen_flags);
    if (g_lp->parsed())
      return run_gen("lp_grid", {{"p", gp_p}, {"dim", gp_dim}, {"side", gp_side}}, gen_flags);
    if (g_interp->parsed())
      return run_gen("interp_grid", {{"t", gp_t}, {"dim", gp_dim}, {"side", gp_side}},
                     gen_flags);
    if (g_rand->parsed())
      return run_gen("random",
                     {{"n", gp_n}, {"lo", gp_lo}, {"hi", gp_hi}, {"slack", gp_slack}},
                     gen_flags);
    if (dist_cmd->parsed()) {
      if (dist_exact && dist_search)
        throw BadParams("--exact and --search are mutually exclusive");
      return run_dist(dist_method, dist_search, dist_a, dist_b, dist_witness,
                      dist_restarts, dist_temp, dist_cooling, dist_flags);
    }
    if (path_cmd->parsed())
      return run_path(path_x, path_y, path_r, path_partitions, path_samples, path_flags);
    if (verify_cmd->parsed())
      return run_verify(verify_suite, verify_trials, verify_families, verify_slack,
                        verify_flags);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
