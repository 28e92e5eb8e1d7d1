#include <algorithm>

#include "poq/bench.hpp"
#include "poq/random.hpp"

namespace poq {
namespace {

constexpr std::int64_t kEpochMs = 1'609'459'200'000;  // 2021-01-01T00:00:00Z

class TraceBuilder {
 public:
  TraceBuilder(std::mt19937_64& rng, const SyntheticLogConfig& cfg,
               std::string case_id, std::size_t& next_id, std::int64_t t0)
      : rng_(rng), cfg_(cfg), case_id_(std::move(case_id)), next_id_(next_id),
        now_(t0) {}

  void step(const std::string& label) { block({label}); }

  // Activities start within a short window of each other and overlap.
  void block(const std::vector<std::string>& labels) {
    std::int64_t end = now_;
    for (const auto& l : labels) {
      const std::int64_t s = now_ + rnd::between(rng_, 0, 30);
      const std::int64_t c = s + rnd::between(rng_, 10, 240);
      add(l, s, c);
      end = std::max(end, c);
    }
    now_ = end + rnd::between(rng_, 1, 60);
  }

  // Point activities completing at the same instant, without start.
  void simultaneous(const std::vector<std::string>& labels) {
    const std::int64_t c = now_ + rnd::between(rng_, 5, 60);
    for (const auto& l : labels) add(l, std::nullopt, c);
    now_ = c + rnd::between(rng_, 1, 60);
  }

  std::vector<ActivityInstance> take() { return std::move(out_); }

 private:
  void add(const std::string& label, std::optional<std::int64_t> start,
           std::int64_t complete) {
    ActivityInstance inst;
    inst.id = std::to_string(++next_id_);
    inst.case_id = case_id_;
    inst.label = label;
    inst.complete = Timestamp{kEpochMs + complete * 60'000};
    if (start && rnd::chance(rng_, cfg_.start_probability))
      inst.start = Timestamp{kEpochMs + *start * 60'000};
    out_.push_back(std::move(inst));
  }

  std::mt19937_64& rng_;
  const SyntheticLogConfig& cfg_;
  std::string case_id_;
  std::size_t& next_id_;
  std::int64_t now_;
  std::vector<ActivityInstance> out_;
};

}  // namespace

EventLog synthetic_log(const SyntheticLogConfig& config) {
  std::mt19937_64 rng(config.seed);
  std::size_t next_id = 0;
  std::vector<Trace> traces;
  traces.reserve(config.traces);

  for (std::size_t i = 0; i < config.traces; ++i) {
    TraceBuilder b(rng, config, std::to_string(i + 1), next_id,
                   static_cast<std::int64_t>(i) * 97);
    b.step("CRR");
    b.step("DC");

    // Information requests, possibly repeated with a document re-check.
    const auto rounds = rnd::between(rng, 0, 2);
    for (std::int64_t r = 0; r < rounds; ++r) {
      std::vector<std::string> asks;
      if (rnd::chance(rng, 0.8)) asks.push_back("RIP");
      if (rnd::chance(rng, 0.6)) asks.push_back("RIT");
      if (asks.empty()) asks.push_back("RIP");
      b.block(asks);
      b.step("DC");
    }

    std::vector<std::string> assess = {"CA"};
    if (rnd::chance(rng, 0.7)) assess.push_back("SRA");
    if (rnd::chance(rng, 0.15)) assess.push_back("FRC");
    b.block(assess);

    if (rnd::chance(rng, 0.6)) {
      if (rnd::chance(rng, 0.5))
        b.simultaneous({"PI", "LTV"});
      else
        b.block({"PI", "LTV"});
    } else if (rnd::chance(rng, 0.5)) {
      b.step("LTV");
    }

    if (rnd::chance(rng, 0.1)) b.step("ESC");
    b.step("DM");
    if (rnd::chance(rng, 0.5))
      b.block({"AN", "AR"});
    else if (rnd::chance(rng, 0.5))
      b.step("AN");

    traces.push_back(Trace::build(b.take()));
  }
  return EventLog("synthetic-" + std::to_string(config.seed), std::move(traces));
}

}  // namespace poq
