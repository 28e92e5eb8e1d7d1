#include <algorithm>
#include <set>

#include "poq/error.hpp"
#include "poq/log_model.hpp"

namespace poq {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

// Numeric strings compare by value (length first after stripping leading
// zeros); anything else lexicographically, numbers before text.
int compare_ids(std::string_view a, std::string_view b) {
  const bool na = all_digits(a), nb = all_digits(b);
  if (na && nb) {
    auto strip = [](std::string_view s) {
      const auto p = s.find_first_not_of('0');
      return p == std::string_view::npos ? std::string_view{} : s.substr(p);
    };
    const auto sa = strip(a), sb = strip(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size() ? -1 : 1;
    const int c = sa.compare(sb);
    if (c != 0) return c;
    return a.compare(b);
  }
  if (na != nb) return na ? -1 : 1;
  return a.compare(b);
}

}  // namespace

bool instance_less(const ActivityInstance& a, const ActivityInstance& b) {
  if (a.complete != b.complete) return a.complete < b.complete;
  if (a.start != b.start) return a.start < b.start;  // nullopt first
  return compare_ids(a.id, b.id) < 0;
}

bool timestamp_precedes(const ActivityInstance& a,
                        const ActivityInstance& b) {
  if (b.start) return a.complete < *b.start;
  return a.complete < b.complete;
}

Trace Trace::build(std::vector<ActivityInstance> instances) {
  if (instances.empty())
    throw LogError(LogErrc::EmptyTrace, "trace has no activity instances");

  const std::string& case_id = instances.front().case_id;
  std::set<std::string_view> ids;
  for (const auto& inst : instances) {
    if (inst.case_id != case_id) {
      throw LogError(LogErrc::MixedCaseIds,
                     "instances of cases '" + case_id + "' and '" +
                         inst.case_id + "' in one trace");
    }
    if (inst.start && *inst.start > inst.complete) {
      throw LogError(LogErrc::StartAfterComplete,
                     "instance '" + inst.id + "' starts after it completes");
    }
    if (!ids.insert(inst.id).second) {
      throw LogError(LogErrc::DuplicateInstanceId,
                     "duplicate activity instance id '" + inst.id + "'");
    }
  }

  Trace t;
  t.case_id_ = case_id;
  t.instances_ = std::move(instances);
  std::stable_sort(t.instances_.begin(), t.instances_.end(), instance_less);

  const std::size_t n = t.instances_.size();
  t.order_ = Relation(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && timestamp_precedes(t.instances_[a], t.instances_[b]))
        t.order_.insert(a, b);

  t.reduction_ = transitive_reduction(t.order_);

  t.minimal_.assign(n, 0);
  t.maximal_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    t.minimal_[i] = !t.order_.has_predecessor(i);
    t.maximal_[i] = !t.order_.has_successor(i);
    t.by_label_[t.instances_[i].label].push_back(i);
  }
  return t;
}

std::vector<std::size_t> Trace::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (minimal_[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> Trace::maximal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (maximal_[i]) out.push_back(i);
  return out;
}

std::span<const std::size_t> Trace::with_label(std::string_view label) const {
  const auto it = by_label_.find(label);
  if (it == by_label_.end()) return {};
  return it->second;
}

}  // namespace poq
