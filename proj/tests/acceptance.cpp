// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exits with the failure count.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "qimet/generators.hpp"
#include "qimet/gh_distance.hpp"
#include "qimet/propsuite.hpp"
#include "qimet/rng.hpp"

using namespace qimet;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool passed, const std::string& detail) {
  std::cout << (passed ? "[PASS] " : "[FAIL] ") << index << ". " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!passed) ++failures;
}

void report_suite(int index, const std::string& name, const propsuite::SuiteReport& r,
                  double elapsed_s) {
  std::ostringstream detail;
  detail << r.trials << " trials, worst slack " << r.worst_slack << ", " << elapsed_s
         << " s";
  if (!r.notes.empty()) detail << "; first failure: " << r.notes.front();
  report(index, name, r.passed(), detail.str());
}

template <typename F>
double timed(F&& run) {
  const auto start = std::chrono::steady_clock::now();
  run();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int suite_threads() {
  return static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
}

std::string cli_path(int argc, char** argv) {
  if (argc > 1) return argv[1];
#ifdef QIMET_CLI_PATH
  return QIMET_CLI_PATH;
#else
  return "";
#endif
}

int run_cmd(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void criterion_two_point_closed_form() {
  SplitMix64 rng(1101);
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = rng.uniform(0.1, 5.0);
    const double b = rng.uniform(0.1, 5.0);
    const double value = gh::gh_exact(gen_two_point(a), gen_two_point(b));
    const double err = std::abs(value - 0.5 * std::abs(a - b));
    worst = std::max(worst, err);
    if (err > 1e-12) ok = false;
  }
  std::ostringstream detail;
  detail << "50 pairs, max |error| = " << worst;
  report(11, "two-point gh closed form |a-b|/2 within 1e-12", ok, detail.str());
}

void criterion_cli_determinism(const std::string& cli) {
  if (cli.empty()) {
    report(12, "CLI determinism", false, "no CLI path provided");
    return;
  }
  const auto dir = std::filesystem::temp_directory_path() / "qimet_acceptance";
  std::filesystem::create_directories(dir);
  auto at = [&](const std::string& name) { return (dir / name).string(); };
  auto quoted = [](const std::string& s) { return "'" + s + "'"; };

  bool ok = true;
  std::string detail;
  auto run_twice = [&](const std::string& args, const std::string& out_name) {
    const std::string out1 = at(out_name + "_1.json");
    const std::string out2 = at(out_name + "_2.json");
    if (run_cmd(cli + " " + args + " -o " + quoted(out1)) != 0 ||
        run_cmd(cli + " " + args + " -o " + quoted(out2)) != 0) {
      ok = false;
      detail = "command failed: " + args;
      return;
    }
    if (slurp(out1) != slurp(out2)) {
      ok = false;
      detail = "reports differ: " + args;
    }
  };

  run_twice("gen random --n 4 --seed 7", "gen");
  const std::string a = at("space_a.json");
  const std::string b = at("space_b.json");
  if (run_cmd(cli + " gen random --n 4 --seed 41 -o " + quoted(a)) != 0 ||
      run_cmd(cli + " gen random --n 4 --seed 42 -o " + quoted(b)) != 0) {
    ok = false;
    detail = "space generation failed";
  } else {
    for (const std::string method : {"gh", "qhat", "dmetric"})
      run_twice("dist --method " + method + " --search --seed 5 --witness " + quoted(a) +
                    " " + quoted(b),
                "dist_" + method);
    run_twice("verify bounds --trials 3 --seed 9", "verify");
  }
  report(12, "byte-identical reports for seeded search/random commands", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::cout << "acceptance suite" << std::endl;
  const int threads = suite_threads();

  {
    propsuite::SuiteOptions opt;
    opt.trials = 1000;
    opt.seed = 1001;
    opt.max_points = 5;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_oracle_qdis(opt); });
    report_suite(1, "qdis closed form vs bisection oracle within 1e-9", r, s);
  }
  {
    propsuite::SuiteOptions opt;
    opt.trials = 1000;
    opt.seed = 1002;
    opt.max_points = 5;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_oracle_min_r(opt); });
    report_suite(2, "min_r closed form vs bisection oracle within 1e-9", r, s);
  }
  {
    propsuite::SuiteOptions opt;
    opt.trials = 100;
    opt.seed = 1003;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_reduction(opt); });
    report_suite(3, "map-pair reduction equals subset enumeration on 3x3", r, s);
  }
  {
    propsuite::SuiteOptions opt;
    opt.trials = 200;
    opt.seed = 1004;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_triangle_d(opt); });
    report_suite(4, "triangle inequality for D on 200 triples", r, s);
  }
  {
    propsuite::SuiteOptions opt;
    opt.trials = 200;
    opt.seed = 1005;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_bounds(opt); });
    report_suite(5, "mutual bounds D <= ln(1+2 qhat), qhat <= e^{2D}-e^D", r, s);
  }
  {
    propsuite::SuiteOptions opt;
    opt.trials = 200;
    opt.seed = 1006;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_gh_to_qi(opt); });
    report_suite(6, "qhat <= 4 gh on 200 exact pairs", r, s);
  }
  {
    propsuite::SuiteOptions opt;
    opt.trials = 200;
    opt.seed = 1007;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_qhat_triangle(opt); });
    report_suite(7, "generalized triangle bound 2(r+r'+rr') on 200 triples", r, s);
  }
  {
    propsuite::SuiteOptions opt;
    opt.trials = 200;
    opt.seed = 1008;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_composition(opt); });
    report_suite(8, "composed constants certify composed witnesses (200 pairs)", r, s);
  }
  {
    propsuite::SuiteOptions opt;
    opt.trials = 100;
    opt.seed = 1009;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_eps_iso(opt); });
    report_suite(9, "both directions of the eps-isometry theorem (100 pairs)", r, s);
  }
  {
    propsuite::SuiteOptions opt;
    opt.trials = 20;
    opt.seed = 1010;
    opt.max_points = 5;
    opt.threads = threads;
    propsuite::SuiteReport r;
    const double s = timed([&] { r = propsuite::run_path(opt); });
    report_suite(10, "R_t endpoints, step bounds, path length, slope (20 families)", r, s);
  }

  criterion_two_point_closed_form();
  criterion_cli_determinism(cli_path(argc, argv));

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " ("
            << (12 - failures) << "/12)" << std::endl;
  return failures;
}
