#pragma once

// Shared test helpers: a compact trace notation and fixture paths.
//
//   "A[0,10] B[-,12] C*3[20,30]"
//
// Each item is label[start,complete] in seconds after 2021-06-01T00:00:00Z;
// '-' marks an absent start and "*n" repeats the instance n times. Ids are
// assigned 1, 2, ... in item order.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poq/log_model.hpp"

namespace poq::test {

inline constexpr std::int64_t kBaseMs = 1'622'505'600'000;

inline std::vector<ActivityInstance> instances(std::string_view spec,
                                               const std::string& case_id = "t") {
  std::vector<ActivityInstance> out;
  std::size_t i = 0;
  std::size_t next_id = 1;
  const auto skip_ws = [&] {
    while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i])))
      ++i;
  };
  const auto number = [&]() -> std::int64_t {
    std::size_t j = i;
    if (j < spec.size() && spec[j] == '-') ++j;
    while (j < spec.size() && std::isdigit(static_cast<unsigned char>(spec[j])))
      ++j;
    const std::int64_t v = std::stoll(std::string(spec.substr(i, j - i)));
    i = j;
    return v;
  };
  for (skip_ws(); i < spec.size(); skip_ws()) {
    const std::size_t label_begin = i;
    while (i < spec.size() && spec[i] != '[' && spec[i] != '*') ++i;
    const std::string label(spec.substr(label_begin, i - label_begin));
    std::size_t repeat = 1;
    if (spec[i] == '*') {
      ++i;
      repeat = static_cast<std::size_t>(number());
    }
    if (spec[i++] != '[') throw std::invalid_argument("expected '['");
    std::optional<std::int64_t> start;
    if (spec[i] == '-' && spec[i + 1] == ',') {
      ++i;
    } else {
      start = number();
    }
    if (spec[i++] != ',') throw std::invalid_argument("expected ','");
    const std::int64_t complete = number();
    if (spec[i++] != ']') throw std::invalid_argument("expected ']'");
    for (std::size_t r = 0; r < repeat; ++r) {
      ActivityInstance a;
      a.id = std::to_string(next_id++);
      a.case_id = case_id;
      a.label = label;
      if (start) a.start = Timestamp{kBaseMs + *start * 1000};
      a.complete = Timestamp{kBaseMs + complete * 1000};
      out.push_back(std::move(a));
    }
  }
  return out;
}

inline Trace make_trace(std::string_view spec, const std::string& case_id = "t") {
  return Trace::build(instances(spec, case_id));
}

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(POQ_FIXTURE_DIR) / name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture(name), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Random trace over `alphabet` with up to `max_size` instances. Times are
/// drawn from a small range so ties and overlaps are frequent.
inline Trace random_trace(std::mt19937_64& rng,
                          const std::vector<std::string>& alphabet,
                          std::size_t max_size, const std::string& case_id = "r") {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_size);
  std::uniform_int_distribution<std::size_t> label_dist(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> time_dist(0, 12);
  std::uniform_int_distribution<int> len_dist(0, 4);
  std::bernoulli_distribution has_start(0.5);
  const std::size_t n = size_dist(rng);
  std::vector<ActivityInstance> v;
  for (std::size_t i = 0; i < n; ++i) {
    ActivityInstance a;
    a.id = case_id + "-" + std::to_string(i + 1);
    a.case_id = case_id;
    a.label = alphabet[label_dist(rng)];
    const int s = time_dist(rng);
    const int c = s + len_dist(rng);
    if (has_start(rng)) a.start = Timestamp{kBaseMs + s * 1000};
    a.complete = Timestamp{kBaseMs + c * 1000};
    v.push_back(std::move(a));
  }
  return Trace::build(std::move(v));
}

/// Position of the instance with the given id.
inline std::size_t pos_of(const Trace& t, std::string_view id) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.instance(i).id == id) return i;
  throw std::out_of_range("no instance " + std::string(id));
}

}  // namespace poq::test
