#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "poq/bench.hpp"
#include "poq/evaluator.hpp"
#include "poq/parser.hpp"

namespace poq {
namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

// Linear interpolation between closest ranks.
double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return v[lo] + (v[hi] - v[lo]) * (pos - static_cast<double>(lo));
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
    i = j + 1;
  }
  return r;
}

double timed_ms(const EventLog& log, const Query& q, EvalMode mode) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = eval_log(log, q, mode);
  const auto t1 = std::chrono::steady_clock::now();
  // Keeps the call observable to the optimizer.
  if (result.per_trace.size() != log.size()) return -1;
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::vector<BenchRecord> run_bench(const EventLog& log,
                                   const std::vector<Query>& queries,
                                   std::size_t repetitions) {
  if (repetitions == 0)
    throw BenchError(BenchError::Code::InvalidConfig,
                     "repetitions must be positive");
  std::vector<BenchRecord> out;
  out.reserve(queries.size());
  for (const auto& q : queries) {
    BenchRecord rec;
    rec.query = format(q);
    rec.total_leaves = q.leaf_count();

    const auto short_res = eval_log(log, q, EvalMode::ShortCircuit);
    const auto full_res = eval_log(log, q, EvalMode::Full);
    rec.median_leaves_evaluated = short_res.median_leaves_evaluated();
    rec.median_leaves_evaluated_full = full_res.median_leaves_evaluated();
    rec.matched_count = short_res.matched_traces.size();
    rec.modes_agree = short_res.matched_traces == full_res.matched_traces;

    std::vector<double> ts, tf;
    for (std::size_t r = 0; r < repetitions; ++r) {
      ts.push_back(timed_ms(log, q, EvalMode::ShortCircuit));
      tf.push_back(timed_ms(log, q, EvalMode::Full));
    }
    rec.t_short_ms = median(std::move(ts));
    rec.t_full_ms = median(std::move(tf));
    out.push_back(std::move(rec));
  }
  return out;
}

std::optional<double> spearman(const std::vector<double>& x,
                               const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

BenchReport emit_report(const std::vector<BenchRecord>& records,
                        const std::optional<QueryGenConfig>& profile) {
  if (records.empty())
    throw BenchError(BenchError::Code::EmptyInput, "no bench records");

  BenchReport report;
  std::string csv =
      "query,total_leaves,median_leaves_evaluated,matched,t_short_ms,"
      "t_full_ms\n";
  std::vector<double> leaves, t_short, ratio;
  std::size_t multi = 0, multi_saved = 0, disagreements = 0;
  for (const auto& r : records) {
    csv += csv_field(r.query) + "," + std::to_string(r.total_leaves) + "," +
           fmt(r.median_leaves_evaluated) + "," +
           std::to_string(r.matched_count) + "," + fmt(r.t_short_ms) + "," +
           fmt(r.t_full_ms) + "\n";
    leaves.push_back(r.median_leaves_evaluated);
    t_short.push_back(r.t_short_ms);
    if (r.t_short_ms > 0) ratio.push_back(r.t_full_ms / r.t_short_ms);
    if (r.total_leaves > 1) {
      ++multi;
      if (r.median_leaves_evaluated < static_cast<double>(r.total_leaves))
        ++multi_saved;
    }
    if (!r.modes_agree) ++disagreements;
  }
  report.csv = std::move(csv);

  nlohmann::json summary;
  summary["queries"] = records.size();
  const auto rho = spearman(leaves, t_short);
  summary["spearman_leaves_vs_t_short"] =
      rho ? nlohmann::json(*rho) : nlohmann::json(nullptr);
  if (!ratio.empty()) {
    summary["speedup_full_over_short"] = {
        {"min", *std::min_element(ratio.begin(), ratio.end())},
        {"p25", quantile(ratio, 0.25)},
        {"median", quantile(ratio, 0.5)},
        {"p75", quantile(ratio, 0.75)},
        {"max", *std::max_element(ratio.begin(), ratio.end())},
        {"mean", std::accumulate(ratio.begin(), ratio.end(), 0.0) /
                     static_cast<double>(ratio.size())}};
  } else {
    summary["speedup_full_over_short"] = nullptr;
  }
  summary["multi_leaf_queries"] = multi;
  summary["multi_leaf_with_fewer_leaves_evaluated"] = multi_saved;
  summary["mode_disagreements"] = disagreements;
  summary["profile"] = profile ? profile->to_json() : nlohmann::json(nullptr);
  report.summary = std::move(summary);
  return report;
}

std::string deterministic_csv(const std::vector<BenchRecord>& records) {
  std::string csv = "query,total_leaves,median_leaves_evaluated,matched\n";
  for (const auto& r : records) {
    csv += csv_field(r.query) + "," + std::to_string(r.total_leaves) + "," +
           fmt(r.median_leaves_evaluated) + "," +
           std::to_string(r.matched_count) + "\n";
  }
  return csv;
}

}  // namespace poq
