#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poq/relation.hpp"
#include "poq/timestamp.hpp"

namespace poq {

/// One executed activity of a case. `start` is absent when only completion
/// was recorded; when present it never exceeds `complete`.
struct ActivityInstance {
  std::string id;
  std::string case_id;
  std::string label;
  std::optional<Timestamp> start;
  Timestamp complete;

  friend bool operator==(const ActivityInstance&,
                         const ActivityInstance&) = default;
};

/// Instance ordering used everywhere: complete, then start (absent first),
/// then id (numeric ids compare numerically).
bool instance_less(const ActivityInstance& a, const ActivityInstance& b);

/// a precedes b iff a completes before b starts, or, when b has no start,
/// before b completes.
bool timestamp_precedes(const ActivityInstance& a, const ActivityInstance& b);

/// The instances of one case together with the strict partial order derived
/// from their timestamps and its transitive reduction. Immutable.
///
/// Instances are addressed by position in `instances()`; relations use the
/// same positions.
class Trace {
 public:
  /// Sorts the instances, derives the order and reduces it.
  /// Throws LogError: EmptyTrace, MixedCaseIds, DuplicateInstanceId,
  /// StartAfterComplete.
  static Trace build(std::vector<ActivityInstance> instances);

  const std::string& case_id() const noexcept { return case_id_; }
  std::span<const ActivityInstance> instances() const noexcept {
    return instances_;
  }
  const ActivityInstance& instance(std::size_t i) const {
    return instances_[i];
  }
  std::size_t size() const noexcept { return instances_.size(); }

  const Relation& order() const noexcept { return order_; }
  const Relation& reduction() const noexcept { return reduction_; }

  bool precedes(std::size_t a, std::size_t b) const noexcept {
    return order_.contains(a, b);
  }
  bool directly_precedes(std::size_t a, std::size_t b) const noexcept {
    return reduction_.contains(a, b);
  }
  /// Neither precedes the other. Holds for a == b.
  bool parallel(std::size_t a, std::size_t b) const noexcept {
    return !order_.contains(a, b) && !order_.contains(b, a);
  }

  bool is_minimal(std::size_t i) const noexcept { return minimal_[i] != 0; }
  bool is_maximal(std::size_t i) const noexcept { return maximal_[i] != 0; }
  std::vector<std::size_t> minimal_elements() const;
  std::vector<std::size_t> maximal_elements() const;

  /// Positions of instances carrying `label`, ascending. Empty if none.
  std::span<const std::size_t> with_label(std::string_view label) const;

  /// Labels present in this trace with their multiplicity.
  const std::map<std::string, std::vector<std::size_t>, std::less<>>&
  label_index() const noexcept {
    return by_label_;
  }

 private:
  Trace() = default;

  std::string case_id_;
  std::vector<ActivityInstance> instances_;
  Relation order_;
  Relation reduction_;
  std::vector<char> minimal_;
  std::vector<char> maximal_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_label_;
};

/// Canonical form of the labeled transitive reduction. Two traces get equal
/// keys iff a label-preserving isomorphism maps one reduction onto the other.
std::string variant_key(const Trace& trace);

struct VariantGroup {
  std::string canonical_key;
  /// Indices into EventLog::traces(), ascending.
  std::vector<std::size_t> trace_indices;
  /// First trace of the group.
  std::size_t representative = 0;
};

/// Immutable collection of traces. Variant keys and groups are computed on
/// construction.
class EventLog {
 public:
  EventLog() = default;
  EventLog(std::string log_id, std::vector<Trace> traces);

  const std::string& log_id() const noexcept { return log_id_; }
  std::span<const Trace> traces() const noexcept { return traces_; }
  const Trace& trace(std::size_t i) const { return traces_[i]; }
  std::size_t size() const noexcept { return traces_.size(); }

  /// Label -> number of instances across the log.
  const std::map<std::string, std::size_t>& label_alphabet() const noexcept {
    return alphabet_;
  }

  const std::string& variant_key_of(std::size_t trace_index) const {
    return keys_[trace_index];
  }
  std::size_t variant_index_of(std::size_t trace_index) const {
    return variant_of_trace_[trace_index];
  }
  /// Sorted by trace count descending, ties by key.
  std::span<const VariantGroup> variants() const noexcept { return variants_; }

 private:
  std::string log_id_;
  std::vector<Trace> traces_;
  std::map<std::string, std::size_t> alphabet_;
  std::vector<std::string> keys_;
  std::vector<std::size_t> variant_of_trace_;
  std::vector<VariantGroup> variants_;
};

}  // namespace poq
