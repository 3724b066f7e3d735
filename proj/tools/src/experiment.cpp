#include "experiment.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "timm/errors.hpp"
#include "timm/generators.hpp"
#include "timm/io.hpp"
#include "timm/kd_immersion.hpp"
#include "timm/oracle.hpp"
#include "timm/rng.hpp"
#include "timm/tt_immersion.hpp"

namespace timm::tools {

namespace {

int parse_int(const std::string& raw, const char* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(raw, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": not a number: '" + raw + "'");
  }
  if (used != raw.size())
    throw std::invalid_argument(std::string(what) + ": trailing junk in '" + raw + "'");
  return value;
}

struct Job {
  int k = 0;
  int n = 0;
  std::uint64_t seed = 0;
  int trial = 0;
};

std::string blowup_parts(int n) {
  const int a = n / 3 + (n % 3 > 0 ? 1 : 0);
  const int b = n / 3 + (n % 3 > 1 ? 1 : 0);
  const int c = n / 3;
  return std::to_string(a) + ";" + std::to_string(b) + ";" + std::to_string(c);
}

Tournament make_instance(const ExperimentPlan& plan, const Job& job, std::string* params) {
  *params = "n=" + std::to_string(job.n);
  if (plan.generator == "random") return random_tournament(job.n, job.seed);
  if (plan.generator == "transitive") return transitive_tournament(job.n);
  if (plan.generator == "regular") return regular_tournament(job.n);
  if (plan.generator == "near-regular") return near_regular_tournament(job.n, job.seed);
  if (plan.generator == "triangle-blowup") {
    *params += ";parts=" + blowup_parts(job.n);
    const int a = job.n / 3 + (job.n % 3 > 0 ? 1 : 0);
    const int b = job.n / 3 + (job.n % 3 > 1 ? 1 : 0);
    return triangle_blowup(a, b, job.n / 3);
  }
  if (plan.generator == "min-outdegree") {
    *params += ";k=" + std::to_string(job.k);
    return min_outdegree_construction(job.k, job.n);
  }
  throw std::invalid_argument("unknown generator '" + plan.generator + "'");
}

std::string cert_path(const ExperimentPlan& plan, const Job& job) {
  return plan.cert_dir + "/" + plan.task + "_k" + std::to_string(job.k) + "_n" +
         std::to_string(job.n) + "_t" + std::to_string(job.trial) + ".cert";
}

ExperimentRow run_job(const ExperimentPlan& plan, const Job& job) {
  ExperimentRow row;
  row.task = plan.task;
  row.k = job.k;
  row.n = job.n;
  row.generator = plan.task == "oracle" ? "all" : plan.generator;
  row.seed = job.seed;
  row.trial = job.trial;
  row.mode = plan.task == "tt"   ? plan.mode
             : plan.task == "kd" ? (plan.best_effort ? "best-effort" : "strict")
                                 : "exhaustive";

  const auto start = std::chrono::steady_clock::now();
  try {
    if (plan.task == "tt") {
      Tournament t = make_instance(plan, job, &row.params);
      TtConfig cfg;
      cfg.mode = plan.mode == "faithful" ? TtMode::faithful : TtMode::adaptive;
      cfg.seed = job.seed;
      const TtResult got = find_tt_immersion(t, job.k, cfg);
      if (got.immersion) {
        row.outcome = "success";
        row.detail = "best_good=" + std::to_string(got.best_good);
        if (got.via_fallback) row.detail += ";fallback";
        if (!plan.cert_dir.empty()) {
          row.certificate = cert_path(plan, job);
          write_certificate_file(row.certificate, *got.immersion);
        }
      } else {
        row.outcome = "failure";
        row.detail = "best_good=" + std::to_string(got.best_good) +
                     ";chain=" + std::to_string(got.fallback_chain);
      }
    } else if (plan.task == "kd") {
      Tournament t = make_instance(plan, job, &row.params);
      KdOptions opt;
      opt.threshold_c = plan.threshold_c;
      opt.best_effort = plan.best_effort;
      const KdResult got = find_kd_immersion(t, job.k, opt);
      switch (got.status) {
        case KdStatus::found:
          row.outcome = "success";
          row.detail = got.trace.summary();
          if (!plan.cert_dir.empty()) {
            row.certificate = cert_path(plan, job);
            write_certificate_file(row.certificate, *got.immersion);
          }
          break;
        case KdStatus::infeasible:
          row.outcome = "infeasible";
          row.detail = got.reason;
          break;
        case KdStatus::exhausted:
          row.outcome = "failure";
          row.detail = got.reason;
          break;
      }
    } else {  // oracle: exact f bound up to n = rule(k)
      OracleOptions opt;
      opt.node_budget = plan.budget;
      const FBoundResult got = oracle_f_bound(job.k, job.n, opt);
      if (got.budget_exhausted) {
        row.outcome = "unknown";
        row.detail = "budget";
      } else if (got.value) {
        row.outcome = "success";
        row.detail = "f=" + std::to_string(*got.value);
      } else {
        row.outcome = "failure";
        row.detail = "f>" + std::to_string(job.n);
      }
    }
  } catch (const InternalConsistencyError& e) {
    row.outcome = "error";
    row.detail = std::string("internal: ") + e.inequality();
  } catch (const std::exception& e) {
    row.outcome = "error";
    row.detail = e.what();
  }
  const auto stop = std::chrono::steady_clock::now();
  row.wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  return row;
}

std::string csv_field(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) out.push_back(c == ',' || c == '\n' ? ' ' : c);
  return out;
}

}  // namespace

std::string NRule::text() const {
  if (coeff == 0) return std::to_string(offset);
  std::string out = std::to_string(coeff) + "k";
  if (offset != 0) out += "+" + std::to_string(offset);
  return out;
}

NRule NRule::parse(const std::string& raw) {
  const auto kpos = raw.find('k');
  NRule rule;
  if (kpos == std::string::npos) {
    rule.offset = parse_int(raw, "n-rule");
  } else {
    rule.coeff = parse_int(raw.substr(0, kpos), "n-rule coefficient");
    if (kpos + 1 < raw.size()) {
      if (raw[kpos + 1] != '+')
        throw std::invalid_argument("n-rule: expected '+' after k in '" + raw + "'");
      rule.offset = parse_int(raw.substr(kpos + 2), "n-rule offset");
    }
  }
  if (rule.coeff < 0 || rule.offset < 0)
    throw std::invalid_argument("n-rule: negative parts in '" + raw + "'");
  return rule;
}

std::string KRange::text() const {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

KRange KRange::parse(const std::string& raw) {
  KRange range;
  const auto dots = raw.find("..");
  if (dots == std::string::npos) {
    range.lo = range.hi = parse_int(raw, "k-range");
  } else {
    range.lo = parse_int(raw.substr(0, dots), "k-range low");
    range.hi = parse_int(raw.substr(dots + 2), "k-range high");
  }
  if (range.lo < 1 || range.hi < range.lo)
    throw std::invalid_argument("k-range: need 1 <= lo <= hi in '" + raw + "'");
  return range;
}

std::vector<ExperimentRow> run_experiment(const ExperimentPlan& plan) {
  if (plan.task != "tt" && plan.task != "kd" && plan.task != "oracle")
    throw std::invalid_argument("experiment task must be tt, kd or oracle");

  std::vector<Job> jobs;
  for (int k = plan.k_range.lo; k <= plan.k_range.hi; ++k) {
    if (plan.task == "oracle") {
      jobs.push_back({k, plan.n_rule.apply(k), 0, 0});
      continue;
    }
    int trial = 0;
    for (std::uint64_t base : plan.seeds)
      // One stream per (k, trial); the derived value is recorded so a row
      // can be replayed without the whole plan.
      jobs.push_back({k, plan.n_rule.apply(k),
                      mix_seed(base, static_cast<std::uint64_t>(k)), trial++});
  }

  std::vector<ExperimentRow> rows(jobs.size());
  const int workers =
      std::max(1, std::min<int>(plan.workers, static_cast<int>(jobs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) rows[i] = run_job(plan, jobs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= jobs.size()) return;
          rows[i] = run_job(plan, jobs[i]);
        }
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "task,k,n,generator,params,seed,trial,mode,outcome,detail,certificate,wall_ms\n";
  for (const auto& r : rows) {
    out << r.task << ',' << r.k << ',' << r.n << ',' << csv_field(r.generator) << ','
        << csv_field(r.params) << ',' << r.seed << ',' << r.trial << ','
        << csv_field(r.mode) << ',' << r.outcome << ',' << csv_field(r.detail) << ','
        << csv_field(r.certificate) << ',' << r.wall_ms << '\n';
  }
}

std::string summary_json(const ExperimentPlan& plan,
                         const std::vector<ExperimentRow>& rows) {
  nlohmann::json summary;
  summary["task"] = plan.task;
  summary["generator"] = plan.task == "oracle" ? "all" : plan.generator;
  summary["k_range"] = plan.k_range.text();
  summary["n_rule"] = plan.n_rule.text();
  summary["rows"] = rows.size();

  std::map<std::pair<int, int>, std::map<std::string, int>> cells;
  for (const auto& r : rows) ++cells[{r.k, r.n}][r.outcome];

  summary["cells"] = nlohmann::json::array();
  for (const auto& [key, counts] : cells) {
    nlohmann::json cell;
    cell["k"] = key.first;
    cell["n"] = key.second;
    int total = 0;
    for (const auto& [outcome, count] : counts) {
      cell[outcome] = count;
      total += count;
    }
    cell["trials"] = total;
    const auto hit = counts.find("success");
    cell["rate"] =
        total == 0 ? 0.0
                   : static_cast<double>(hit == counts.end() ? 0 : hit->second) / total;
    summary["cells"].push_back(std::move(cell));
  }

  if (plan.task == "oracle") {
    nlohmann::json bounds = nlohmann::json::object();
    for (const auto& r : rows)
      if (r.outcome == "success" && r.detail.rfind("f=", 0) == 0)
        bounds[std::to_string(r.k)] = parse_int(r.detail.substr(2), "f value");
    summary["f_values"] = std::move(bounds);
  }
  return summary.dump(2);
}

}  // namespace timm::tools
