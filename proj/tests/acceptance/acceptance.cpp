// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "otsp/assembly.hpp"
#include "otsp/baseline.hpp"
#include "otsp/chains.hpp"
#include "otsp/decomposition.hpp"
#include "otsp/instance_io.hpp"
#include "otsp/oracle.hpp"
#include "otsp/rng.hpp"
#include "otsp/spanning.hpp"

using namespace otsp;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

GenKind kind_for(int i) { return i % 2 ? GenKind::Euclidean : GenKind::RandomClosure; }

// Shared state: criteria 3, 4, 5 and 8 reuse the runs of 1 and 2.
struct Solved {
  Instance inst;
  PreparedInstance prep;
  OtspRun run;
};

std::vector<Solved> certified;
double certify_seconds = 0;
std::vector<Instance> mean_instances;
std::vector<Rational> mean_lp;

Outcome guarantee() {
  Rng rng(20240611);
  const Rational bound = guarantee_constant();
  Rational worst = 0;
  int fails = 0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 100; ++i) {
    const int n = 8 + static_cast<int>(rng.below(33));
    const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(8, n) - 1)));
    auto inst = generate(kind_for(i), n, k, 1000 + static_cast<std::uint64_t>(i));
    auto prep = prepare(inst);
    auto run = run_derandomized(inst, prep);
    const Rational ratio = from_int64(run.certificate.cost) / run.certificate.c_lp;
    worst = std::max(worst, ratio);
    if (from_int64(run.certificate.cost) > bound * run.certificate.c_lp) ++fails;
    certified.push_back({std::move(inst), std::move(prep), std::move(run)});
  }
  certify_seconds = seconds_since(t0);
  return {fails == 0 && certify_seconds < 600,
          "100 instances, worst cost/c_LP " + decimal_upper(worst) + " (bound 1.86787944118), " + std::to_string(fails) +
              " over, " + fixed(certify_seconds, 1) + " s"};
}

Outcome randomized_mean() {
  const Rational bound = parse_fraction("19179/10000");
  Rational worst = 0;
  int fails = 0;
  for (int i = 0; i < 10; ++i) {
    auto inst = generate(kind_for(i), 12, 3, 5000 + static_cast<std::uint64_t>(i));
    auto prep = prepare(inst);
    Rational total = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) total += from_int64(run_randomized(inst, prep, seed).certificate.cost);
    const Rational mean = total / 200 / prep.lp.objective;
    worst = std::max(worst, mean);
    if (mean > bound) ++fails;
    mean_lp.push_back(prep.lp.objective);
    mean_instances.push_back(std::move(inst));
  }
  return {fails == 0, "10 instances x 200 seeds, worst mean cost/c_LP " + decimal_upper(worst) + " (bound 1.9179)"};
}

// Instances of criteria 1 and 2 with n <= 12, plus their LP values and optima.
struct Small {
  const Instance* inst;
  Rational c_lp;
  Cost opt;
  Cost derand = -1;
};
std::vector<Small> small;

Outcome lp_lower_bound() {
  for (const auto& s : certified)
    if (s.inst.n() <= 12) small.push_back({&s.inst, s.run.certificate.c_lp, solve_exact(s.inst).cost, s.run.certificate.cost});
  for (std::size_t i = 0; i < mean_instances.size(); ++i)
    small.push_back({&mean_instances[i], mean_lp[i], solve_exact(mean_instances[i]).cost});
  int fails = 0;
  Rational tightest = 0;
  for (const auto& s : small) {
    if (s.c_lp > s.opt) ++fails;
    tightest = std::max(tightest, Rational(s.c_lp / s.opt));
  }
  return {fails == 0 && !small.empty(), std::to_string(small.size()) + " instances with n <= 12, max c_LP/OPT " +
                                            decimal_upper(tightest) + ", " + std::to_string(fails) + " violations"};
}

StrollPoint ladder_point() {
  std::map<Edge, Rational> x;
  auto put = [&](int u, int v, const char* val) { x[make_edge(u, v)] = parse_fraction(val); };
  put(0, 1, "3/4");
  put(1, 2, "1/2");
  put(1, 3, "1/4");
  put(2, 3, "1/4");
  put(2, 4, "3/4");
  put(3, 5, "1/2");
  put(4, 5, "1/4");
  put(4, 6, "1/2");
  put(5, 6, "1/4");
  put(6, 11, "3/4");
  put(0, 7, "1/4");
  put(7, 8, "1/4");
  put(8, 9, "1/4");
  put(9, 10, "1/4");
  put(10, 11, "1/4");
  return make_stroll_point(0, 0, 11, 12, x);
}

WeightedTreeFamily quarter_family() {
  return family_from_json(R"({"s":0,"t":11,"trees":[
    {"mu":"1/4","edges":[[0,7],[7,8],[8,9],[9,10],[10,11]]},
    {"mu":"1/4","edges":[[0,1],[1,3],[3,5],[5,6],[6,11],[4,5],[2,4]]},
    {"mu":"1/4","edges":[[0,1],[1,2],[2,4],[4,6],[6,11],[2,3],[3,5]]},
    {"mu":"1/4","edges":[[0,1],[1,2],[2,4],[4,6],[6,11]]}]})");
}

Outcome decomposition_identities() {
  int strolls = 0, fails = 0;
  std::string first;
  for (const auto& s : certified) {
    const auto& group = s.prep.dist.groups.at(0);
    for (std::size_t i = 0; i < s.prep.lp.strolls.size(); ++i) {
      ++strolls;
      auto rep = verify_decomposition(s.prep.lp.strolls[i], group.families.at(i));
      if (!rep.ok) {
        ++fails;
        if (first.empty()) first = rep.violations.front();
      }
    }
  }
  const auto ladder = ladder_point();
  const bool ours = verify_decomposition(ladder, decompose(ladder)).ok;
  const bool quarters = verify_decomposition(ladder, quarter_family()).ok;
  return {fails == 0 && ours && quarters,
          std::to_string(strolls) + " strolls, " + std::to_string(fails) + " failures" + (first.empty() ? "" : " (" + first + ")") +
              "; ladder point decomposes: " + (ours ? "yes" : "no") + ", four-tree family verifies: " +
              (quarters ? "yes" : "no")};
}

Outcome structural_bounds() {
  const Rational inv_e = inv_e_power_lower(1);
  int fails = 0;
  Rational worst_iso = 0;
  for (const auto& s : certified) {
    const auto& c = s.run.certificate;
    if (from_int64(c.c_mst) > c.c_lp) ++fails;
    if (from_int64(2 * c.c_j) > c.c_lp) ++fails;
    if (c.c_f > c.ev_bound) ++fails;
    // straight from the LP coverage values, independent of the tree families
    for (Vertex v = 0; v < s.inst.n(); ++v) {
      if (s.inst.is_ordered(v)) continue;
      Rational p = 1;
      for (const auto& st : s.prep.lp.strolls) p *= 1 - st.y[static_cast<std::size_t>(v)];
      worst_iso = std::max(worst_iso, p);
      if (p > inv_e) ++fails;
    }
  }
  return {fails == 0, std::to_string(certified.size()) + " runs, " + std::to_string(fails) +
                          " violations of MST/J/F bounds; worst prod(1 - y_v) " + decimal_upper(worst_iso) + " (1/e > " +
                          decimal_lower(inv_e) + ")"};
}

Outcome oracle_cross_validation() {
  Rng rng(77);
  int dp_fails = 0, join_fails = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    auto inst = generate(kind_for(i), n, k, 9000 + static_cast<std::uint64_t>(i));
    if (solve_exact(inst).cost != solve_bruteforce(inst).cost) ++dp_fails;
  }
  for (int i = 0; i < 50; ++i) {
    const int n = 4 + static_cast<int>(rng.below(13));
    auto costs = generate(kind_for(i), n, 2, 9500 + static_cast<std::uint64_t>(i)).costs();
    std::vector<Vertex> vs(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) vs[static_cast<std::size_t>(v)] = v;
    for (std::size_t j = vs.size(); j > 1; --j) std::swap(vs[j - 1], vs[rng.below(j)]);
    std::size_t q = 2 * (1 + rng.below(5));
    vs.resize(std::min(q, vs.size() - vs.size() % 2));
    std::sort(vs.begin(), vs.end());
    if (min_cost_q_join(costs, vs).cost(costs) != min_cost_perfect_matching_dp(costs, vs).cost) ++join_fails;
  }
  return {dp_fails == 0 && join_fails == 0, "exact DP vs enumeration (n <= 8): " + std::to_string(dp_fails) +
                                                "/50 disagree; q-join vs subset DP (|Q| <= 10): " +
                                                std::to_string(join_fails) + "/50 disagree"};
}

Outcome chain_guarantee() {
  Rng rng(31);
  int fails = 0;
  std::array<Rational, 4> worst{};
  for (int i = 0; i < 30; ++i) {
    const int l = 1 + i % 3;
    const int n = 6 + static_cast<int>(rng.below(6));
    std::vector<int> sizes(static_cast<std::size_t>(l), 1);
    for (int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - l + 1))); extra > 0; --extra)
      ++sizes[rng.below(static_cast<std::uint64_t>(l))];
    auto inst = generate_chains(kind_for(i), n, sizes, 7000 + static_cast<std::uint64_t>(i));
    const Cost cost = solve_chains(inst).tour.cost;
    const Cost opt = solve_exact_chains(inst).cost;
    const Rational ratio = from_int64(cost) / from_int64(opt);
    worst[static_cast<std::size_t>(l)] = std::max(worst[static_cast<std::size_t>(l)], ratio);
    if (ratio > chain_constant(l)) ++fails;
  }
  return {fails == 0, "30 instances, worst cost/OPT by l: 1 -> " + decimal_upper(worst[1]) + ", 2 -> " +
                          decimal_upper(worst[2]) + ", 3 -> " + decimal_upper(worst[3]) + "; " + std::to_string(fails) +
                          " over l + 1/2 + 1/e^l"};
}

Outcome baseline_comparison() {
  int fails = 0;
  double base_sum = 0, derand_sum = 0;
  int derand_count = 0;
  for (const auto& s : small) {
    const Cost b = baseline_52(*s.inst).tour.cost;
    if (2 * b > 5 * s.opt) ++fails;
    base_sum += static_cast<double>(b) / static_cast<double>(s.opt);
    if (s.derand >= 0) {
      derand_sum += static_cast<double>(s.derand) / static_cast<double>(s.opt);
      ++derand_count;
    }
  }
  const double base_mean = base_sum / static_cast<double>(small.size());
  const double derand_mean = derand_count ? derand_sum / derand_count : 0;
  return {fails == 0 && !small.empty(),
          std::to_string(small.size()) + " instances, " + std::to_string(fails) + " over 2.5 OPT; mean cost/OPT baseline " +
              fixed(base_mean) + ", derand " + fixed(derand_mean) + " (" + std::to_string(derand_count) +
              " instances)" + (derand_mean <= base_mean ? "" : " [derand mean above baseline]")};
}

std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return "popen failed";
  std::array<char, 4096> buf;
  for (std::size_t got; (got = std::fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), got);
  const int status = pclose(p);
  return out + "\n[status " + std::to_string(status) + "]";
}

Outcome determinism(const std::string& cli) {
  const fs::path dir = fs::temp_directory_path() / "otsp_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir / "inst");
  auto sh = [&](const std::string& args) { return run_capture("'" + cli + "' " + args); };
  auto file = [&](const std::string& rel) { return "'" + (dir / rel).string() + "'"; };
  std::vector<std::string> differs;

  for (int i = 0; i < 8; ++i) {
    const std::string args = std::string("gen --kind ") + (i % 2 ? "euclidean" : "random_closure") + " --n " +
                             std::to_string(9 + i) + " --k " + std::to_string(2 + i % 4) + " --seed " +
                             std::to_string(300 + i);
    const std::string a = sh(args + " -o " + file("inst/g" + std::to_string(i) + ".json"));
    const std::string first = read_file(dir / ("inst/g" + std::to_string(i) + ".json"));
    sh(args + " -o " + file("inst/g" + std::to_string(i) + ".json"));
    if (read_file(dir / ("inst/g" + std::to_string(i) + ".json")) != first) differs.push_back("gen " + args);
    if (sh(args) != sh(args)) differs.push_back("gen stdout " + args);
  }
  for (int i = 0; i < 8; i += 3) {
    const std::string inst = file("inst/g" + std::to_string(i) + ".json");
    for (const char* fmt : {"", " --json"})
      if (sh("solve " + inst + " --algo derand" + fmt) != sh("solve " + inst + " --algo derand" + fmt))
        differs.push_back("solve derand " + std::to_string(i) + fmt);
  }
  const std::string bench = "bench --dir " + file("inst") + " --algos derand,baseline,approx --seed 4";
  const std::string s1 = sh(bench + " -o " + file("r1.json") + " --csv " + file("r1.csv"));
  const std::string s2 = sh(bench + " -o " + file("r2.json") + " --csv " + file("r2.csv"));
  if (s1 != s2) differs.push_back("bench stdout");
  if (read_file(dir / "r1.json") != read_file(dir / "r2.json")) differs.push_back("bench report");
  if (read_file(dir / "r1.csv") != read_file(dir / "r2.csv")) differs.push_back("bench csv");
  const bool ran = s1.find("[status 0]") != std::string::npos;
  fs::remove_all(dir);

  std::string detail = "8 gen, 6 solve, 1 bench command pairs; ";
  detail += differs.empty() ? "all byte-identical" : "differ: " + differs.front();
  if (!ran) detail += "; bench did not exit 0";
  return {differs.empty() && ran, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "otsp";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"guarantee certification", guarantee},
      {"randomized mean", randomized_mean},
      {"LP lower bound", lp_lower_bound},
      {"decomposition identities", decomposition_identities},
      {"structural bounds", structural_bounds},
      {"oracle cross-validation", oracle_cross_validation},
      {"chain guarantee", chain_guarantee},
      {"baseline", baseline_comparison},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail << " ("
              << fixed(seconds_since(t0), 1) << " s)" << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failed) << "/"
            << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
