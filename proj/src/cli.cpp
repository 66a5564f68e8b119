#include "otsp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <exception>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "otsp/assembly.hpp"
#include "otsp/baseline.hpp"
#include "otsp/chains.hpp"
#include "otsp/error.hpp"
#include "otsp/instance_io.hpp"
#include "otsp/oracle.hpp"

namespace otsp {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kOracleMaxN = 12;

std::string ratio_text(const Rational& r) { return decimal_upper(r, 10); }

ojson decimal(const std::string& s) { return ojson::parse(s); }

void put_tour(ojson& j, const Tour& t) {
  j["cost"] = t.cost;
  j["tour"] = t.cycle;
}

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParameterError("--chains expects comma-separated sizes, got '" + s + "'");
    }
  }
  return out;
}

ChainInstance as_chains(const InstanceDocument& doc) {
  if (doc.is_chain()) return doc.chain_instance();
  auto inst = doc.instance();
  return ChainInstance(inst.costs(), {inst.order()});
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string file, algo = "derand";
  std::uint64_t seed = 0;
  int trials = 1;
  bool json = false, parallel = false;
  bool seeded = false;  // --seed given: chains sample instead of derandomizing
  std::string dump;
};

std::string dump_document(const PreparedInstance& prep) {
  ojson j;
  j["lp"] = ojson::parse(relaxation_to_json(prep.lp));
  auto fams = ojson::array();
  for (int i = 0; i < prep.dist.stroll_count(); ++i) fams.push_back(ojson::parse(family_to_json(prep.dist.family(i))));
  j["families"] = fams;
  return j.dump(1) + "\n";
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const auto doc = load_instance(a.file);
  AssemblyOptions ao;
  ao.exec = a.parallel ? lp::Exec::Parallel : lp::Exec::Serial;
  ojson j;
  j["algo"] = a.algo;
  if (doc.costs.scale() != 1) j["scale"] = doc.costs.scale();

  if (a.algo == "chains") {
    ChainOptions co;
    co.assembly = ao;
    co.derandomized = !a.seeded;
    co.seed = a.seed;
    auto r = solve_chains(as_chains(doc), co);
    auto cj = ojson::parse(r.to_json());
    for (auto it = cj.begin(); it != cj.end(); ++it) j[it.key()] = it.value();
  } else if (a.algo == "exact") {
    auto r = doc.is_chain() ? solve_exact_chains(doc.chain_instance()) : solve_exact(doc.instance());
    put_tour(j, r.tour);
    j["states"] = r.states;
  } else {
    if (doc.is_chain()) throw ParameterError("instance has chains; use --algo chains or exact");
    const auto inst = doc.instance();
    if (a.algo == "baseline") {
      auto r = baseline_52(inst);
      put_tour(j, r.tour);
      j["method"] = r.method;
    } else if (a.algo == "approx" || a.algo == "derand") {
      const auto prep = prepare(inst, ao);
      if (!a.dump.empty()) write_file(a.dump, dump_document(prep));
      std::optional<OtspRun> best;
      Rational total = 0;
      const int trials = a.algo == "derand" ? 1 : std::max(1, a.trials);
      for (int t = 0; t < trials; ++t) {
        auto run = a.algo == "derand" ? run_derandomized(inst, prep)
                                      : run_randomized(inst, prep, a.seed + static_cast<std::uint64_t>(t));
        total += from_int64(run.assembly.tour.cost);
        if (!best || run.assembly.tour.cost < best->assembly.tour.cost) best = std::move(run);
      }
      auto cj = ojson::parse(best->certificate.to_json());
      for (auto it = cj.begin(); it != cj.end(); ++it) j[it.key()] = it.value();
      j["tour"] = best->assembly.tour.cycle;
      if (trials > 1) {
        j["trials"] = trials;
        j["mean_cost"] = to_fraction_string(total / trials);
        if (sgn(prep.lp.objective) > 0) j["mean_ratio_vs_lp"] = decimal(ratio_text(total / trials / prep.lp.objective));
      }
    } else {
      throw ParameterError("unknown --algo '" + a.algo + "' (approx | derand | baseline | exact | chains)");
    }
  }

  if (a.json) {
    out << j.dump() << "\n";
    return 0;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "guesses") continue;
    out << it.key() << ": ";
    if (it.value().is_array()) {
      for (std::size_t i = 0; i < it.value().size(); ++i) out << (i ? " " : "") << it.value()[i].dump();
    } else if (it.value().is_string()) {
      out << it.value().get<std::string>();
    } else {
      out << it.value().dump();
    }
    out << "\n";
  }
  return 0;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string kind = "euclidean", chains, output, format = "json";
  int n = 0, k = 0;
  std::uint64_t seed = 0;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto kind = parse_gen_kind(a.kind);
  if ((a.k > 0) == !a.chains.empty()) throw ParameterError("gen needs exactly one of --k and --chains");
  const InstanceDocument doc =
      a.chains.empty() ? document(generate(kind, a.n, a.k, a.seed)) : document(generate_chains(kind, a.n, parse_sizes(a.chains), a.seed));
  std::string text;
  if (a.format == "json")
    text = to_json(doc);
  else if (a.format == "text")
    text = to_text(doc);
  else
    throw ParameterError("unknown --format '" + a.format + "' (json | text)");
  if (a.output.empty())
    out << text;
  else
    write_file(a.output, text);
  return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string dir, algos = "derand,baseline", output, csv;
  int jobs = 1;
  std::uint64_t seed = 0;
  bool timings = false, parallel = false;
};

struct AlgoOutcome {
  bool ran = false;
  Cost cost = 0;
  std::string error;
  double seconds = 0;
};

struct BenchRow {
  std::string file;
  int n = 0;
  std::optional<int> k;
  std::vector<int> chain_sizes;
  std::optional<Rational> c_lp;
  std::optional<Cost> opt;
  std::map<std::string, AlgoOutcome> algos;
  std::string error;
};

BenchRow bench_one(const fs::path& path, const std::vector<std::string>& algos, const BenchArgs& a) {
  BenchRow row;
  row.file = path.filename().string();
  try {
    const auto doc = load_instance(path);
    row.n = doc.costs.size();
    AssemblyOptions ao;
    ao.exec = a.parallel ? lp::Exec::Parallel : lp::Exec::Serial;
    std::optional<PreparedInstance> prep;
    std::optional<Instance> inst;
    std::optional<ChainInstance> chains;
    if (doc.is_chain()) {
      chains = doc.chain_instance();
      for (const auto& c : chains->chains()) row.chain_sizes.push_back(static_cast<int>(c.size()));
    } else {
      inst = doc.instance();
      row.k = inst->k();
    }
    auto timed = [&](const std::string& name, auto&& fn) {
      AlgoOutcome o;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        o.cost = fn();
        o.ran = true;
      } catch (const Error& e) {
        o.error = e.what();
      }
      o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.algos[name] = o;
    };
    auto prepared = [&]() -> const PreparedInstance& {
      if (!prep) {
        prep = prepare(*inst, ao);
        row.c_lp = prep->lp.objective;
      }
      return *prep;
    };
    if (row.n <= kOracleMaxN) row.opt = chains ? solve_exact_chains(*chains).cost : solve_exact(*inst).cost;
    for (const auto& name : algos) {
      if (chains) {
        if (name == "chains") timed(name, [&] { return solve_chains(*chains).tour.cost; });
        if (name == "exact" && row.opt) timed(name, [&] { return *row.opt; });
        continue;
      }
      if (name == "derand") timed(name, [&] { return run_derandomized(*inst, prepared()).assembly.tour.cost; });
      if (name == "approx") timed(name, [&] { return run_randomized(*inst, prepared(), a.seed).assembly.tour.cost; });
      if (name == "baseline") timed(name, [&] { return baseline_52(*inst).tour.cost; });
      if (name == "exact" && row.n <= kOracleMaxN) timed(name, [&] { return solve_exact(*inst).cost; });
      if (name == "chains")
        timed(name, [&] { return solve_chains(ChainInstance(inst->costs(), {inst->order()})).tour.cost; });
    }
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  std::vector<std::string> algos;
  {
    std::stringstream ss(a.algos);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) algos.push_back(tok);
  }
  for (const auto& x : algos)
    if (x != "approx" && x != "derand" && x != "baseline" && x != "exact" && x != "chains")
      throw ParameterError("unknown algorithm '" + x + "' in --algos");
  if (!fs::is_directory(a.dir)) throw ParameterError("not a directory: " + a.dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(a.dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ParameterError("no instance files in " + a.dir);

  std::vector<BenchRow> rows(files.size());
  std::vector<std::exception_ptr> errs(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, a.jobs))
  for (int i = 0; i < static_cast<int>(files.size()); ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = bench_one(files[static_cast<std::size_t>(i)], algos, a);
    } catch (...) {
      errs[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);

  struct Agg {
    int count = 0, vs_opt = 0;
    Rational sum_lp = 0, max_lp = 0, sum_opt = 0, max_opt = 0;
    int with_lp = 0;
  };
  std::map<std::string, Agg> agg;
  ojson report;
  auto arr = ojson::array();
  std::ostringstream csv;
  csv << "file,algo,n,k,c_lp,cost,ratio_vs_lp,opt,ratio_vs_opt\n";
  bool failed = false;
  for (const auto& r : rows) {
    ojson o;
    o["file"] = r.file;
    o["n"] = r.n;
    if (r.k) o["k"] = *r.k;
    if (!r.chain_sizes.empty()) o["chains"] = r.chain_sizes;
    if (r.c_lp) o["c_lp"] = to_fraction_string(*r.c_lp);
    if (r.opt) o["opt"] = *r.opt;
    if (!r.error.empty()) {
      o["error"] = r.error;
      failed = true;
    }
    ojson per;
    out << r.file << " n=" << r.n;
    if (r.k) out << " k=" << *r.k;
    if (!r.error.empty()) out << " error: " << r.error;
    for (const auto& name : algos) {
      auto it = r.algos.find(name);
      if (it == r.algos.end()) continue;
      const auto& x = it->second;
      ojson z;
      if (!x.ran) {
        z["error"] = x.error;
        failed = true;
        per[name] = z;
        out << " " << name << "=error";
        continue;
      }
      auto& g = agg[name];
      ++g.count;
      z["cost"] = x.cost;
      std::string rlp = "", ropt = "";
      if (r.c_lp && sgn(*r.c_lp) > 0) {
        Rational q = from_int64(x.cost) / *r.c_lp;
        rlp = ratio_text(q);
        z["ratio_vs_lp"] = decimal(rlp);
        g.sum_lp += q;
        if (q > g.max_lp) g.max_lp = q;
        ++g.with_lp;
      }
      if (r.opt && *r.opt > 0) {
        Rational q(mpz_class(std::to_string(x.cost)), mpz_class(std::to_string(*r.opt)));
        q.canonicalize();
        ropt = ratio_text(q);
        z["ratio_vs_opt"] = decimal(ropt);
        g.sum_opt += q;
        if (q > g.max_opt) g.max_opt = q;
        ++g.vs_opt;
      }
      if (a.timings) z["seconds"] = x.seconds;
      per[name] = z;
      out << " " << name << "=" << x.cost;
      csv << r.file << "," << name << "," << r.n << "," << (r.k ? std::to_string(*r.k) : "") << ","
          << (r.c_lp ? decimal_upper(*r.c_lp, 6) : "") << "," << x.cost << "," << rlp << ","
          << (r.opt ? std::to_string(*r.opt) : "") << "," << ropt << "\n";
    }
    out << "\n";
    o["algos"] = per;
    arr.push_back(o);
  }
  report["instances"] = arr;
  ojson summary;
  out << "summary";
  for (const auto& name : algos) {
    auto it = agg.find(name);
    if (it == agg.end()) continue;
    const auto& g = it->second;
    ojson s;
    s["count"] = g.count;
    if (g.with_lp) {
      s["max_ratio_vs_lp"] = decimal(ratio_text(g.max_lp));
      s["mean_ratio_vs_lp"] = decimal(ratio_text(g.sum_lp / g.with_lp));
    }
    if (g.vs_opt) {
      s["max_ratio_vs_opt"] = decimal(ratio_text(g.max_opt));
      s["mean_ratio_vs_opt"] = decimal(ratio_text(g.sum_opt / g.vs_opt));
    }
    summary[name] = s;
    out << " " << name << ":";
    if (g.with_lp) out << " max_lp=" << ratio_text(g.max_lp) << " mean_lp=" << ratio_text(g.sum_lp / g.with_lp);
    if (g.vs_opt) out << " mean_opt=" << ratio_text(g.sum_opt / g.vs_opt);
  }
  out << "\n";
  report["summary"] = summary;
  if (!a.output.empty()) write_file(a.output, report.dump(1) + "\n");
  if (!a.csv.empty()) write_file(a.csv, csv.str());
  return failed ? 1 : 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string instance, tour, lp, decomposition;
};

std::vector<Vertex> read_tour(const std::string& text, std::optional<Cost>& cost) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    try {
      auto j = nlohmann::json::parse(text);
      if (j.is_array()) return j.get<std::vector<Vertex>>();
      if (j.contains("cost")) cost = j.at("cost").get<Cost>();
      return j.at("tour").get<std::vector<Vertex>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("tour file: ") + e.what());
    }
  }
  std::vector<Vertex> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("tour file: not a vertex: '" + tok + "'");
    }
  }
  return out;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const int given = !a.tour.empty() + !a.lp.empty() + !a.decomposition.empty();
  if (given != 1) throw ParameterError("verify needs exactly one of --tour, --lp, --decomposition");
  const auto doc = load_instance(a.instance);
  std::vector<std::string> problems;

  if (!a.tour.empty()) {
    std::optional<Cost> cost;
    const auto cycle = read_tour(read_file(a.tour), cost);
    if (!is_permutation_cycle(cycle, doc.costs.size())) problems.push_back("tour is not a permutation of all vertices");
    else if (doc.is_chain() ? !check_chain_order(cycle, doc.chain_instance().chains())
                            : !visits_in_cyclic_order(cycle, doc.instance().order()))
      problems.push_back("tour violates the order constraints");
    if (problems.empty() && cost && *cost != cycle_cost(doc.costs, cycle))
      problems.push_back("stated cost " + std::to_string(*cost) + " differs from " +
                         std::to_string(cycle_cost(doc.costs, cycle)));
    if (problems.empty()) out << "tour ok: cost " << cycle_cost(doc.costs, cycle) << "\n";
  } else {
    if (doc.is_chain()) throw ParameterError("LP and decomposition dumps refer to single-order instances");
    const auto inst = doc.instance();
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(a.lp.empty() ? a.decomposition : a.lp));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("dump: ") + e.what());
    }
    const auto lp_text = j.contains("lp") ? j["lp"].dump() : j.dump();
    const auto sol = relaxation_from_json(lp_text, inst);
    if (auto why = verify_relaxation(inst, sol); !why.empty()) problems.push_back("LP: " + why);
    if (!a.decomposition.empty()) {
      if (!j.contains("families") || !j["families"].is_array()) throw ParseError("decomposition dump: missing 'families'");
      if (j["families"].size() != sol.strolls.size())
        throw ParseError("decomposition dump: one family per stroll expected");
      ConnectingTreeDistribution dist;
      dist.n = inst.n();
      dist.groups.push_back({inst.order(), {}});
      for (std::size_t i = 0; i < sol.strolls.size(); ++i) {
        auto fam = family_from_json(j["families"][i].dump());
        auto rep = verify_decomposition(sol.strolls[i], fam);
        for (const auto& v : rep.violations) problems.push_back("stroll " + std::to_string(i) + ": " + v);
        dist.groups.front().families.push_back(std::move(fam));
      }
      if (problems.empty())
        if (auto why = dist.validate(); !why.empty()) problems.push_back("distribution: " + why);
    }
    if (problems.empty()) out << (a.lp.empty() ? "decomposition ok" : "lp ok") << ": c_lp " << to_fraction_string(sol.objective) << "\n";
  }
  for (const auto& p : problems) err << "verify: " << p << "\n";
  return problems.empty() ? 0 : 1;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Resource:
      return 2;
    case ErrorKind::Consistency:
      return 70;
    default:
      return 1;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ordered TSP approximation: LP relaxation, tree sampling, derandomized tours"};
  app.name(args.empty() ? "otsp" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("file", sa.file, "Instance (JSON or text)")->required();
  solve->add_option("--algo", sa.algo, "approx | derand | baseline | exact | chains")->capture_default_str();
  solve->add_option("--seed", sa.seed, "Seed for approx (first trial); with chains, sample instead of derandomizing");
  solve->add_option("--trials", sa.trials, "Seeds tried by approx; the best tour is kept");
  solve->add_flag("--json", sa.json, "Machine-readable output");
  solve->add_flag("--parallel", sa.parallel, "OpenMP kernels");
  solve->add_option("--dump", sa.dump, "Write LP and tree families (approx/derand)");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--kind", ga.kind, "euclidean | random_closure")->capture_default_str();
  gen->add_option("--n", ga.n, "Vertices")->required();
  gen->add_option("--k", ga.k, "Ordered vertices");
  gen->add_option("--chains", ga.chains, "Chain sizes, e.g. 3,2");
  gen->add_option("--seed", ga.seed, "Seed")->required();
  gen->add_option("-o,--output", ga.output, "Output file (default stdout)");
  gen->add_option("--format", ga.format, "json | text")->capture_default_str();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a directory of instances");
  bench->add_option("--dir", ba.dir, "Instance directory")->required();
  bench->add_option("--algos", ba.algos, "Comma-separated algorithms")->capture_default_str();
  bench->add_option("--jobs", ba.jobs, "Instances solved concurrently");
  bench->add_option("--seed", ba.seed, "Seed for approx");
  bench->add_option("-o,--output", ba.output, "Report JSON");
  bench->add_option("--csv", ba.csv, "Per-run CSV (cost vs c_LP)");
  bench->add_flag("--timings", ba.timings, "Include wall-clock seconds (breaks byte-identical reports)");
  bench->add_flag("--parallel", ba.parallel, "OpenMP kernels inside each instance");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a tour, an LP dump or a decomposition dump");
  verify->add_option("instance", va.instance, "Instance file")->required();
  verify->add_option("--tour", va.tour, "Tour file (JSON with \"tour\" or a vertex list)");
  verify->add_option("--lp", va.lp, "LP dump");
  verify->add_option("--decomposition", va.decomposition, "LP plus tree families dump");

  // CLI11 consumes the arguments from the back
  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << "\n\n" << app.help();
    return 64;
  }

  try {
    sa.seeded = solve->count("--seed") > 0;
    if (*solve) return cmd_solve(sa, out);
    if (*gen) return cmd_gen(ga, out);
    if (*bench) return cmd_bench(ba, out);
    if (*verify) return cmd_verify(va, out, err);
  } catch (const Error& e) {
    err << app.get_name() << ": " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << app.get_name() << ": " << e.what() << "\n";
    return 70;
  }
  return 64;
}

}  // namespace otsp
