// Minimal downstream program built against an installed poq package.
#include <iostream>

#include "poq/evaluator.hpp"
#include "poq/parser.hpp"
#include "poq/service.hpp"

int main() {
  poq::Service service;
  const auto r = service.upload(
      "case,activity,complete\nc,A,2021-01-01T00:00:00Z\n", "csv", "x");
  const auto id = r.body["log_id"].get<std::string>();
  const auto q = service.query(id, R"({"text": "'A' isC"})");
  std::cout << q.body["matched_trace_count"] << '\n';
  return q.body["matched_trace_count"] == 1 ? 0 : 1;
}
