#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "timm/errors.hpp"
#include "timm/generators.hpp"
#include "timm/io.hpp"
#include "timm/kd_immersion.hpp"
#include "timm/oracle.hpp"
#include "timm/tt_immersion.hpp"
#include "timm/verifier.hpp"

namespace {

using namespace timm;

// Exit codes shared by all subcommands:
//   0 success / pass, 1 negative result (not found, verification failed),
//   2 unreadable input or bad parameters, 3 violated internal guarantee,
//   4 oracle budget exhausted (no verdict).
constexpr int kExitFound = 0;
constexpr int kExitNegative = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitUnknown = 4;

void print_degree_summary(const Tournament& t) {
  int lo = t.size();
  int hi = 0;
  for (int v = 0; v < t.size(); ++v) {
    const int d = t.out_degree(v);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (t.size() == 0) lo = 0;
  std::cout << "n=" << t.size() << " min-out=" << lo << " max-out=" << hi << "\n";
}

struct GenOpts {
  std::string name;
  int n = 0;
  int k = 0;
  std::vector<int> parts;
  std::string out;
  std::uint64_t seed = 1;
};

int run_gen(const GenOpts& opt) {
  Tournament t = [&] {
    if (opt.name == "random") return random_tournament(opt.n, opt.seed);
    if (opt.name == "transitive") return transitive_tournament(opt.n);
    if (opt.name == "regular") return regular_tournament(opt.n);
    if (opt.name == "near-regular") return near_regular_tournament(opt.n, opt.seed);
    if (opt.name == "triangle-blowup") {
      if (opt.parts.size() != 3)
        throw std::invalid_argument("triangle-blowup needs --parts a,b,c");
      return triangle_blowup(opt.parts[0], opt.parts[1], opt.parts[2]);
    }
    return min_outdegree_construction(opt.k, opt.n);
  }();
  write_tournament_file(opt.out, t);
  print_degree_summary(t);
  return kExitFound;
}

struct FindOpts {
  std::string task;
  std::string input;
  std::string cert;
  int k = 1;
  std::string mode = "adaptive";
  std::optional<double> p;
  int retries = 8;
  int threshold = 59;
  bool best_effort = false;
  std::uint64_t seed = 1;
};

void emit_certificate(const Tournament& t, const Immersion& im, int max_len,
                      const std::string& path) {
  if (const auto bad = verify_immersion(t, im, max_len, true))
    throw InternalConsistencyError("certificate verifies before writing",
                                   bad->describe());
  if (!path.empty()) write_certificate_file(path, im);
}

int run_find(const FindOpts& opt) {
  const Tournament t = read_tournament_file(opt.input);

  if (opt.task == "tt") {
    TtConfig cfg;
    cfg.mode = opt.mode == "faithful" ? TtMode::faithful : TtMode::adaptive;
    cfg.sample_probability = opt.p;
    cfg.retries = opt.retries;
    cfg.seed = opt.seed;
    const TtResult got = find_tt_immersion(t, opt.k, cfg);
    if (got.immersion) {
      emit_certificate(t, *got.immersion, 2, opt.cert);
      std::cout << "result: found\n"
                << "paths: " << got.immersion->paths.size() << "\n"
                << "via: " << (got.via_fallback ? "chain" : "sampling") << "\n"
                << "best_good: " << got.best_good << "\n";
      return kExitFound;
    }
    std::cout << "result: failure\n"
              << "best_good: " << got.best_good << "\n"
              << "chain: " << got.fallback_chain << "\n";
    return kExitNegative;
  }

  KdOptions kd;
  kd.threshold_c = opt.threshold;
  kd.best_effort = opt.best_effort;
  const KdResult got = find_kd_immersion(t, opt.k, kd);
  if (got.status == KdStatus::found) {
    emit_certificate(t, *got.immersion, 3, opt.cert);
    std::cout << "result: found\n"
              << "paths: " << got.immersion->paths.size() << "\n"
              << "trace: " << got.trace.summary() << "\n";
    return kExitFound;
  }
  std::cout << "result: " << (got.status == KdStatus::infeasible ? "infeasible" : "exhausted")
            << "\n"
            << "reason: " << got.reason << "\n"
            << "trace: " << got.trace.summary() << "\n";
  return kExitNegative;
}

struct VerifyOpts {
  std::string input;
  std::string cert;
  int max_len = 0;  // 0: default by pattern
  bool strong = true;
};

int run_verify(const VerifyOpts& opt) {
  const Tournament t = read_tournament_file(opt.input);
  const Immersion im = read_certificate_file(opt.cert);
  const int max_len =
      opt.max_len > 0 ? opt.max_len
                      : (im.pattern == PatternKind::transitive_tournament ? 2 : 3);
  if (const auto bad = verify_immersion(t, im, max_len, opt.strong)) {
    std::cout << "violation: " << bad->describe() << "\n";
    return kExitNegative;
  }
  std::cout << "ok\n";
  return kExitFound;
}

struct OracleFindOpts {
  std::string task;
  std::string input;
  std::string cert;
  int k = 1;
  int max_len = 0;
  bool strong = true;
  std::uint64_t budget = 10'000'000;
};

int run_oracle_find(const OracleFindOpts& opt) {
  const Tournament t = read_tournament_file(opt.input);
  const PatternKind pattern = opt.task == "tt" ? PatternKind::transitive_tournament
                                               : PatternKind::complete_digraph;
  const int max_len = opt.max_len > 0 ? opt.max_len : (opt.task == "tt" ? 2 : 3);
  OracleOptions oracle;
  oracle.node_budget = opt.budget;
  oracle.strong = opt.strong;
  const OracleResult got = oracle_find_immersion(t, pattern, opt.k, max_len, oracle);
  switch (got.status) {
    case OracleStatus::found:
      if (opt.strong) {
        emit_certificate(t, *got.immersion, max_len, opt.cert);
      } else if (!opt.cert.empty()) {
        write_certificate_file(opt.cert, *got.immersion);
      }
      std::cout << "result: found\nnodes: " << got.nodes_used << "\n";
      return kExitFound;
    case OracleStatus::exhausted:
      std::cout << "result: exhausted\nnodes: " << got.nodes_used << "\n";
      return kExitNegative;
    case OracleStatus::budget_exceeded:
    default:
      std::cout << "result: unknown\nnodes: " << got.nodes_used << "\n";
      return kExitUnknown;
  }
}

struct FBoundOpts {
  int k = 2;
  int n_max = 6;
  std::string witness;
  std::uint64_t budget = 10'000'000;
};

int run_oracle_fbound(const FBoundOpts& opt) {
  OracleOptions oracle;
  oracle.node_budget = opt.budget;

  oracle.strong = true;
  const FBoundResult strong = oracle_f_bound(opt.k, opt.n_max, oracle);
  oracle.strong = false;
  const FBoundResult plain = oracle_f_bound(opt.k, opt.n_max, oracle);

  const auto report = [&](const char* tag, const FBoundResult& r) {
    if (r.budget_exhausted)
      std::cout << tag << ": unknown (budget)\n";
    else if (r.value)
      std::cout << tag << ": f(" << opt.k << ") = " << *r.value << "\n";
    else
      std::cout << tag << ": f(" << opt.k << ") > " << opt.n_max
                << " (counterexample at n=" << r.last_counterexample_n << ")\n";
  };
  report("strong", strong);
  report("plain", plain);

  if (!opt.witness.empty() && strong.counterexample)
    write_tournament_file(opt.witness, *strong.counterexample);

  if (strong.budget_exhausted || plain.budget_exhausted) return kExitUnknown;
  return strong.value ? kExitFound : kExitNegative;
}

struct ExperimentOpts {
  tools::ExperimentPlan plan;
  std::string k_text = "2";
  std::string n_text = "8k";
  std::string seeds_text;
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out_csv;
  std::string out_json;
};

int run_experiment_cmd(ExperimentOpts& opt) {
  opt.plan.k_range = tools::KRange::parse(opt.k_text);
  opt.plan.n_rule = tools::NRule::parse(opt.n_text);
  if (!opt.seeds_text.empty()) {
    std::size_t at = 0;
    while (at <= opt.seeds_text.size()) {
      const auto comma = opt.seeds_text.find(',', at);
      const std::string piece = opt.seeds_text.substr(
          at, comma == std::string::npos ? std::string::npos : comma - at);
      if (piece.empty()) throw std::invalid_argument("--seeds: empty entry");
      opt.plan.seeds.push_back(std::stoull(piece));
      if (comma == std::string::npos) break;
      at = comma + 1;
    }
  } else {
    for (int i = 0; i < opt.trials; ++i)
      opt.plan.seeds.push_back(opt.seed + static_cast<std::uint64_t>(i));
  }

  const auto rows = tools::run_experiment(opt.plan);

  std::ofstream csv(opt.out_csv);
  if (!csv) throw std::invalid_argument("cannot open " + opt.out_csv + " for writing");
  tools::write_csv(csv, rows);

  const std::string summary = tools::summary_json(opt.plan, rows);
  if (opt.out_json.empty()) {
    std::cout << summary << "\n";
  } else {
    std::ofstream js(opt.out_json);
    if (!js) throw std::invalid_argument("cannot open " + opt.out_json + " for writing");
    js << summary << "\n";
  }
  std::cerr << "experiment: " << rows.size() << " rows -> " << opt.out_csv << "\n";
  return kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strong immersion toolkit for tournaments"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int workers = 1;
  std::uint64_t budget = 10'000'000;
  bool best_effort = false;
  app.add_option("--seed", seed, "base random seed")->capture_default_str();
  app.add_option("--workers", workers, "experiment worker threads")
      ->capture_default_str();
  app.add_option("--budget", budget, "oracle search node budget")
      ->capture_default_str();
  app.add_flag("--best-effort", best_effort,
               "run the k-digraph engine below its degree threshold");

  GenOpts gen;
  auto* cmd_gen = app.add_subcommand("gen", "write a tournament file");
  cmd_gen->fallthrough();
  cmd_gen->add_option("name", gen.name, "generator")
      ->required()
      ->check(CLI::IsMember({"random", "transitive", "regular", "near-regular",
                             "triangle-blowup", "min-outdegree"}));
  cmd_gen->add_option("--n", gen.n, "vertex count");
  cmd_gen->add_option("--k", gen.k, "parameter k (min-outdegree)");
  cmd_gen->add_option("--parts", gen.parts, "triangle-blowup part sizes")
      ->delimiter(',')
      ->expected(3);
  cmd_gen->add_option("-o,--output", gen.out, "output path")->required();

  FindOpts find;
  auto* cmd_find = app.add_subcommand("find", "search for a strong immersion");
  cmd_find->fallthrough();
  cmd_find->add_option("task", find.task, "tt (transitive pattern) or kd (complete digraph)")
      ->required()
      ->check(CLI::IsMember({"tt", "kd"}));
  cmd_find->add_option("-i,--input", find.input, "tournament file")->required();
  cmd_find->add_option("-k", find.k, "pattern order")->required();
  cmd_find->add_option("-o,--certificate", find.cert, "certificate output path");
  cmd_find->add_option("--mode", find.mode, "tt sampling mode")
      ->check(CLI::IsMember({"faithful", "adaptive"}))
      ->capture_default_str();
  double p_value = 0.0;
  auto* p_opt = cmd_find->add_option("--p", p_value, "tt sampling probability override");
  cmd_find->add_option("--retries", find.retries, "tt sampling retries")
      ->capture_default_str();
  cmd_find->add_option("--threshold", find.threshold, "kd degree threshold C")
      ->capture_default_str();

  VerifyOpts verify;
  auto* cmd_verify = app.add_subcommand("verify", "check a certificate");
  cmd_verify->fallthrough();
  cmd_verify->add_option("-i,--input", verify.input, "tournament file")->required();
  cmd_verify->add_option("-c,--certificate", verify.cert, "certificate file")->required();
  cmd_verify->add_option("--max-len", verify.max_len,
                         "path length cap (default 2 for tt, 3 for kd)");
  cmd_verify->add_flag("--strong,!--no-strong", verify.strong,
                       "forbid branch vertices inside paths");

  auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive ground truth");
  cmd_oracle->require_subcommand(1);
  cmd_oracle->fallthrough();

  OracleFindOpts ofind;
  auto* cmd_ofind = cmd_oracle->add_subcommand("find", "exhaustive search on one instance");
  cmd_ofind->fallthrough();
  cmd_ofind->add_option("task", ofind.task, "tt or kd")
      ->required()
      ->check(CLI::IsMember({"tt", "kd"}));
  cmd_ofind->add_option("-i,--input", ofind.input, "tournament file")->required();
  cmd_ofind->add_option("-k", ofind.k, "pattern order")->required();
  cmd_ofind->add_option("-o,--certificate", ofind.cert, "certificate output path");
  cmd_ofind->add_option("--max-len", ofind.max_len,
                        "path length cap (default 2 for tt, 3 for kd)");
  cmd_ofind->add_flag("--strong,!--no-strong", ofind.strong,
                      "forbid branch vertices inside paths");

  FBoundOpts fbound;
  auto* cmd_fbound = cmd_oracle->add_subcommand(
      "fbound", "least n forcing the transitive pattern, by full enumeration");
  cmd_fbound->fallthrough();
  cmd_fbound->add_option("-k", fbound.k, "pattern order")->required();
  cmd_fbound->add_option("--n-max", fbound.n_max, "enumeration cap (<= 6)")
      ->capture_default_str();
  cmd_fbound->add_option("--witness", fbound.witness,
                         "write the largest counterexample here");

  ExperimentOpts exp;
  auto* cmd_exp = app.add_subcommand("experiment", "batch runs with a CSV record");
  cmd_exp->fallthrough();
  cmd_exp->add_option("--task", exp.plan.task, "tt, kd or oracle")
      ->required()
      ->check(CLI::IsMember({"tt", "kd", "oracle"}));
  cmd_exp->add_option("--k", exp.k_text, "k or lo..hi")->capture_default_str();
  cmd_exp->add_option("--n-rule", exp.n_text, "n as 240, 30k or 118k+1")
      ->capture_default_str();
  cmd_exp->add_option("--generator", exp.plan.generator, "instance family")
      ->check(CLI::IsMember({"random", "transitive", "regular", "near-regular",
                             "triangle-blowup", "min-outdegree"}))
      ->capture_default_str();
  cmd_exp->add_option("--trials", exp.trials, "trials per k (seeds counted up from --seed)")
      ->capture_default_str();
  cmd_exp->add_option("--seeds", exp.seeds_text, "explicit comma-separated seed list");
  cmd_exp->add_option("--mode", exp.plan.mode, "tt sampling mode")->capture_default_str();
  cmd_exp->add_option("--threshold", exp.plan.threshold_c, "kd degree threshold C")
      ->capture_default_str();
  cmd_exp->add_option("--out-csv", exp.out_csv, "per-trial record")->required();
  cmd_exp->add_option("--out-json", exp.out_json, "summary path (stdout when absent)");
  cmd_exp->add_option("--cert-dir", exp.plan.cert_dir,
                      "write certificates of successful trials here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_gen) {
      gen.seed = seed;
      return run_gen(gen);
    }
    if (*cmd_find) {
      find.seed = seed;
      find.best_effort = best_effort;
      if (*p_opt) find.p = p_value;
      return run_find(find);
    }
    if (*cmd_verify) return run_verify(verify);
    if (*cmd_ofind) {
      ofind.budget = budget;
      return run_oracle_find(ofind);
    }
    if (*cmd_fbound) {
      fbound.budget = budget;
      return run_oracle_fbound(fbound);
    }
    if (*cmd_exp) {
      exp.seed = seed;
      exp.plan.workers = workers;
      exp.plan.budget = budget;
      exp.plan.best_effort = best_effort;
      return run_experiment_cmd(exp);
    }
  } catch (const InternalConsistencyError& e) {
    std::cerr << "internal consistency violation: " << e.inequality() << ": " << e.what()
              << "\n";
    return kExitInternal;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
