#include "cli.hpp"

#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>

#include "poq/bench.hpp"
#include "poq/error.hpp"
#include "poq/evaluator.hpp"
#include "poq/ingest.hpp"
#include "poq/parser.hpp"
#include "poq/rewrite.hpp"
#include "poq/service.hpp"

namespace poq::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogError(LogErrc::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Query text from argv or --query-file, trailing newlines trimmed.
std::string query_text(const std::string& inline_text,
                       const std::string& file) {
  std::string text = file.empty() ? inline_text : read_file(file);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.pop_back();
  return text;
}

std::string activities(const EventLog& log, std::size_t variant) {
  const Trace& t = log.trace(log.variants()[variant].representative);
  std::string s;
  for (const auto& inst : t.instances()) {
    if (!s.empty()) s += ' ';
    s += inst.label;
  }
  return s;
}

struct QueryOptions {
  std::string log_path;
  std::string text;
  std::string query_file;
  std::string mode = "short";
  bool json = false;
  bool table = false;
  bool desugar = false;
  unsigned threads = 1;
  CsvMapping mapping;
};

int cmd_query(const QueryOptions& o, std::ostream& out, std::ostream& err) {
  if (o.text.empty() == o.query_file.empty()) {
    err << "error: give the query either inline or with --query-file\n";
    return kUsage;
  }
  const std::string text = query_text(o.text, o.query_file);
  Query q = [&] {
    try {
      return parse(text);
    } catch (const ParseError& e) {
      err << caret_diagnostic(text, e.offset(), e.what());
      throw;
    }
  }();
  if (o.desugar) q = desugar(q);

  const EventLog log = load_log_file(o.log_path, o.mapping);
  const EvalMode mode =
      o.mode == "full" ? EvalMode::Full : EvalMode::ShortCircuit;
  const LogResult result = eval_log(log, q, mode, o.threads);

  if (o.json) {
    out << ApiResponse{200, result_to_json(log, q, mode, result)}.dump();
    return kOk;
  }
  if (o.desugar) out << "desugared: " << format(q) << '\n';
  out << result.matched_traces.size() << '/' << log.size()
      << " traces matched\n";
  out << result.matched_variants.size() << '/' << log.variants().size()
      << " variants matched\n";
  out << "mode " << to_string(mode) << ", " << result.total_leaves
      << " leaves, median " << result.median_leaves_evaluated()
      << " evaluated, "
      << std::chrono::duration<double, std::milli>(result.wall_time).count()
      << " ms\n";
  if (!result.matched_variants.empty()) {
    out << '\n' << std::setw(8) << "traces" << "  activities\n";
    for (const auto& mv : result.matched_variants) {
      out << std::setw(8) << mv.count << "  "
          << activities(log, mv.variant_index) << '\n';
    }
  }
  return kOk;
}

int cmd_variants(const std::string& path, const CsvMapping& mapping,
                 bool json, std::ostream& out) {
  const EventLog log = load_log_file(path, mapping);
  if (json) {
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t i = 0; i < log.variants().size(); ++i)
      list.push_back(variant_to_json(log, i));
    out << nlohmann::json{{"trace_count", log.size()},
                          {"variant_count", log.variants().size()},
                          {"variants", std::move(list)}}
               .dump(2)
        << '\n';
    return kOk;
  }
  out << log.size() << " traces, " << log.variants().size() << " variants\n";
  out << std::setw(6) << "rank" << std::setw(9) << "traces"
      << "  activities\n";
  for (std::size_t i = 0; i < log.variants().size(); ++i) {
    out << std::setw(6) << i + 1 << std::setw(9)
        << log.variants()[i].trace_indices.size() << "  "
        << activities(log, i) << '\n';
  }
  return kOk;
}

struct BenchOptions {
  std::string log_path;
  std::size_t synthetic = 0;
  std::size_t n = 200;
  std::uint64_t seed = 42;
  std::size_t reps = 5;
  std::string out_csv;
  std::string summary;
  bool deterministic = false;
  CsvMapping mapping;
};

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  if (o.log_path.empty() == (o.synthetic == 0)) {
    err << "error: give exactly one of --log and --synthetic\n";
    return kUsage;
  }
  const EventLog log =
      o.synthetic ? synthetic_log({.traces = o.synthetic})
                  : load_log_file(o.log_path, o.mapping);
  QueryGenConfig cfg;
  cfg.seed = o.seed;
  const auto queries = generate_queries(log, cfg, o.n);
  const auto records = run_bench(log, queries, o.reps);
  auto report = emit_report(records, cfg);
  report.summary["log"] = {{"id", log.log_id()},
                           {"traces", log.size()},
                           {"variants", log.variants().size()}};

  const std::string csv =
      o.deterministic ? deterministic_csv(records) : report.csv;
  if (!o.out_csv.empty()) {
    std::ofstream f(o.out_csv, std::ios::binary);
    if (!f) throw LogError(LogErrc::Io, "cannot write " + o.out_csv);
    f << csv;
  } else {
    out << csv;
  }
  if (!o.summary.empty()) {
    std::ofstream f(o.summary, std::ios::binary);
    if (!f) throw LogError(LogErrc::Io, "cannot write " + o.summary);
    f << report.summary.dump(2) << '\n';
  }
  if (!o.out_csv.empty()) out << report.summary.dump(2) << '\n';
  return kOk;
}

int cmd_serve(const std::string& host, int port, const std::string& logs_dir,
              std::size_t max_upload_mb, std::ostream& out) {
  ServiceConfig cfg;
  cfg.max_upload_bytes = max_upload_mb << 20;
  Service service(cfg);
  if (!logs_dir.empty()) {
    const auto n = service.preload_directory(logs_dir);
    out << "loaded " << n << " log(s) from " << logs_dir << '\n';
  }

  // Signals are taken synchronously by a watcher thread; every other thread
  // (including the server's workers) inherits the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  HttpServer server(service);
  const int bound = server.bind(host, port);
  out << "listening on http://" << host << ':' << bound << std::endl;

  std::thread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
  out << "stopped\n";
  return kOk;
}

void add_mapping(CLI::App* cmd, CsvMapping& m) {
  cmd->add_option("--case-col", m.case_id, "CSV case id column")
      ->capture_default_str();
  cmd->add_option("--activity-col", m.label, "CSV activity label column")
      ->capture_default_str();
  cmd->add_option("--start-col", m.start, "CSV start timestamp column")
      ->capture_default_str();
  cmd->add_option("--complete-col", m.complete,
                  "CSV complete timestamp column")
      ->capture_default_str();
  cmd->add_option("--id-col", m.id, "CSV instance id column")
      ->capture_default_str();
}

}  // namespace

std::string caret_diagnostic(const std::string& text, std::size_t offset,
                             const std::string& message) {
  offset = std::min(offset, text.size());
  const std::size_t line_begin =
      offset == 0 ? 0 : text.rfind('\n', offset - 1) + 1;
  std::size_t line_end = text.find('\n', offset);
  if (line_end == std::string::npos) line_end = text.size();
  std::size_t span_end = offset;
  while (span_end < line_end && !std::isspace(static_cast<unsigned char>(
                                    text[span_end])))
    ++span_end;
  const std::size_t width = std::max<std::size_t>(1, span_end - offset);

  std::string s = "error: " + message + "\n";
  s += "  " + text.substr(line_begin, line_end - line_begin) + "\n";
  s += "  " + std::string(offset - line_begin, ' ') + std::string(width, '^') +
       "\n";
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Query engine for partially ordered event logs", "poq"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "poq 0.3.0");

  QueryOptions qo;
  auto* query = app.add_subcommand("query", "Evaluate a query on a log");
  query->add_option("log", qo.log_path, "Event log (.csv, .xes, .xes.gz)")
      ->required();
  query->add_option("query", qo.text, "Query text");
  query->add_option("--query-file", qo.query_file, "Read the query from a file");
  query->add_option("--mode", qo.mode, "Evaluation strategy")
      ->check(CLI::IsMember({"short", "full"}))
      ->capture_default_str();
  auto* json_flag = query->add_flag("--json", qo.json, "JSON output");
  query->add_flag("--table", qo.table, "Table output (default)")
      ->excludes(json_flag);
  query->add_flag("--desugar", qo.desugar,
                  "Evaluate the desugared query and print its text");
  query->add_option("--threads", qo.threads, "Evaluation threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  add_mapping(query, qo.mapping);

  std::string variants_path;
  CsvMapping variants_mapping;
  bool variants_json = false;
  auto* variants = app.add_subcommand("variants", "List trace variants");
  variants->add_option("log", variants_path, "Event log")->required();
  variants->add_flag("--json", variants_json, "JSON output");
  add_mapping(variants, variants_mapping);

  std::string desugar_text;
  auto* desugar_cmd =
      app.add_subcommand("desugar", "Print the query with sugar removed");
  desugar_cmd->add_option("query", desugar_text, "Query text")->required();

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Runtime vs evaluated leaves");
  bench->add_option("--log", bo.log_path, "Event log");
  bench->add_option("--synthetic", bo.synthetic,
                    "Use a synthetic log with this many traces");
  bench->add_option("--n", bo.n, "Number of queries")->capture_default_str();
  bench->add_option("--seed", bo.seed, "Generator seed")->capture_default_str();
  bench->add_option("--reps", bo.reps, "Timed repetitions per mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--out", bo.out_csv, "CSV report path (default stdout)");
  bench->add_option("--summary", bo.summary, "JSON summary path");
  bench->add_flag("--deterministic", bo.deterministic,
                  "Omit timing columns from the CSV");
  add_mapping(bench, bo.mapping);

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string logs_dir;
  std::size_t max_upload_mb = 256;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve->add_option("--logs", logs_dir, "Preload logs from this directory")
      ->check(CLI::ExistingDirectory);
  serve->add_option("--max-upload-mb", max_upload_mb)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*query) return cmd_query(qo, out, err);
    if (*variants)
      return cmd_variants(variants_path, variants_mapping, variants_json, out);
    if (*desugar_cmd) {
      try {
        out << format(desugar(parse(desugar_text))) << '\n';
      } catch (const ParseError& e) {
        err << caret_diagnostic(desugar_text, e.offset(), e.what());
        return kQuerySyntax;
      }
      return kOk;
    }
    if (*bench) return cmd_bench(bo, out, err);
    if (*serve) return cmd_serve(host, port, logs_dir, max_upload_mb, out);
  } catch (const ParseError&) {
    return kQuerySyntax;  // diagnostic already printed
  } catch (const LogError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const BenchError& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == BenchError::Code::InvalidConfig ? kUsage : kDataError;
  } catch (const ServiceError& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ServiceError::Code::InvalidPort ? kUsage : kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace poq::cli
