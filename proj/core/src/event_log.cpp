#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "poq/error.hpp"
#include "poq/log_model.hpp"

namespace poq {

const char* to_string(LogErrc code) {
  switch (code) {
    case LogErrc::EmptyTrace: return "EmptyTrace";
    case LogErrc::MixedCaseIds: return "MixedCaseIds";
    case LogErrc::DuplicateInstanceId: return "DuplicateInstanceId";
    case LogErrc::CyclicOrder: return "CyclicOrder";
    case LogErrc::MissingColumn: return "MissingColumn";
    case LogErrc::UnparsableTimestamp: return "UnparsableTimestamp";
    case LogErrc::StartAfterComplete: return "StartAfterComplete";
    case LogErrc::MalformedCsv: return "MalformedCsv";
    case LogErrc::MalformedXml: return "MalformedXml";
    case LogErrc::MissingTimestamp: return "MissingTimestamp";
    case LogErrc::EmptyInput: return "EmptyInput";
    case LogErrc::UnknownFormat: return "UnknownFormat";
    case LogErrc::Io: return "Io";
  }
  return "Unknown";
}

EventLog::EventLog(std::string log_id, std::vector<Trace> traces)
    : log_id_(std::move(log_id)), traces_(std::move(traces)) {
  keys_.reserve(traces_.size());
  std::unordered_set<std::string_view> ids;
  for (const auto& t : traces_) {
    for (const auto& inst : t.instances()) {
      ++alphabet_[inst.label];
      if (!ids.insert(inst.id).second) {
        throw LogError(LogErrc::DuplicateInstanceId,
                       "duplicate activity instance id '" + inst.id + "'");
      }
    }
    keys_.push_back(variant_key(t));
  }

  std::unordered_map<std::string_view, std::size_t> group_of;
  for (std::size_t i = 0; i < traces_.size(); ++i) {
    auto [it, inserted] = group_of.try_emplace(keys_[i], variants_.size());
    if (inserted) variants_.push_back({keys_[i], {}, i});
    variants_[it->second].trace_indices.push_back(i);
  }
  std::stable_sort(variants_.begin(), variants_.end(),
                   [](const VariantGroup& a, const VariantGroup& b) {
                     if (a.trace_indices.size() != b.trace_indices.size())
                       return a.trace_indices.size() > b.trace_indices.size();
                     return a.canonical_key < b.canonical_key;
                   });
  variant_of_trace_.assign(traces_.size(), 0);
  for (std::size_t g = 0; g < variants_.size(); ++g)
    for (auto t : variants_[g].trace_indices) variant_of_trace_[t] = g;
}

}  // namespace poq
