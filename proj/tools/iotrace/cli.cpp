#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "iotrace/aggregator/aggregator.hpp"
#include "iotrace/aggregator/viewer_json.hpp"
#include "iotrace/debuginfo/debug_index.hpp"
#include "iotrace/debuginfo/errors.hpp"
#include "iotrace/docgen/io_table.hpp"
#include "iotrace/docgen/site.hpp"
#include "iotrace/model/session_codec.hpp"
#include "iotrace/selector/selector.hpp"
#include "iotrace/tracer/tracer.hpp"
#include "iotrace/version.hpp"
#include "report.hpp"

namespace iotrace::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad inputs CLI11 cannot see, such as an empty function list.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string binary;
  std::string src;
  std::string functions_file;
  std::vector<std::string> functions;
  std::optional<std::uint64_t> seed;
  unsigned max_depth = 3;
  std::size_t string_cap = 256;
  bool discard_on_failure = false;
  std::optional<unsigned> timeout;
  std::string out;
  std::string strategy = "random";
  std::string filter;
  std::string examples;
  std::string input;
  std::string function;
  std::vector<std::string> target_args;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::vector<std::string> read_function_list(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::string safe_file_stem(const std::string& function) {
  std::string out;
  for (char c : function) out.push_back(c == ':' || c == '/' ? '_' : c);
  return out;
}

// -- pipeline steps shared by the subcommands and `all` ----------------------

std::string discover(const debuginfo::DebugIndex& index, const Options& o) {
  std::optional<fs::path> src;
  if (!o.src.empty()) src = o.src;
  const auto in_src = source_functions(index, src);
  std::string out;
  for (const auto& name : index.list_functions(o.filter)) {
    if (!in_src.count(name)) continue;
    try {
      index.resolve_function(name);
      out += name + "\n";
    } catch (const debuginfo::DebugInfoError& e) {
      if (e.kind() != debuginfo::DebugInfoError::Kind::Ambiguous) throw;
      std::vector<std::string> qualified;
      for (const auto& f : index.functions()) {
        if (f.name == name && declared_under(f, src)) {
          qualified.push_back(f.qualified_name());
        }
      }
      std::sort(qualified.begin(), qualified.end());
      qualified.erase(std::unique(qualified.begin(), qualified.end()), qualified.end());
      for (const auto& q : qualified) out += q + "\n";
    }
  }
  return out;
}

tracer::TraceConfig trace_config(const Options& o, std::vector<std::string> functions) {
  tracer::TraceConfig config;
  config.functions = std::move(functions);
  config.max_deref_depth = o.max_depth;
  config.string_cap_bytes = o.string_cap;
  config.discard_on_failure = o.discard_on_failure;
  if (o.timeout) config.timeout = std::chrono::seconds(*o.timeout);
  return config;
}

model::TraceSession run_trace(const debuginfo::DebugIndex& index, const Options& o,
                              std::vector<std::string> functions, const fs::path& out_path,
                              std::ostream& err) {
  if (functions.empty()) throw UsageError("no functions to trace");
  for (const auto& name : functions) {
    try {
      if (index.resolve_function(name).variadic) {
        err << "tracer: warning: " << name << " is variadic; only named parameters are recorded\n";
      }
    } catch (const debuginfo::DebugInfoError&) {
      // The tracer reports unknown names itself.
    }
  }
  try {
    auto session = tracer::trace(o.binary, o.target_args, index,
                                 trace_config(o, std::move(functions)));
    write_file(out_path, model::encode_session(session));
    return session;
  } catch (const tracer::TraceError& e) {
    if (e.partial()) write_file(out_path, model::encode_session(*e.partial()));
    throw;
  }
}

std::string run_select(const model::TraceSession& session, const Options& o, std::ostream& err) {
  selector::SelectionStrategy strategy;
  strategy.kind = selector::parse_strategy(o.strategy);
  if (strategy.kind == selector::SelectionStrategy::Kind::Random) {
    strategy.seed = o.seed ? *o.seed : selector::default_seed(session);
    if (!o.seed) err << "select: using seed " << strategy.seed << "\n";
  }
  return model::encode_examples(selector::select_all(session, strategy));
}

std::map<std::string, docgen::DocComment> load_docs(const Options& o, std::ostream& err) {
  std::vector<std::string> warnings;
  auto docs = docgen::extract_doc_comments(docgen::collect_sources(o.src), &warnings);
  for (const auto& w : warnings) err << "docgen: warning: " << w << "\n";
  return docs;
}

void run_doc(const debuginfo::DebugIndex& index, const std::vector<model::IOExample>& examples,
             const Options& o, const fs::path& dir, std::ostream& err) {
  const auto docs = load_docs(o, err);
  docgen::render_site(docgen::assemble_site(index, docs, examples), dir);
}

// Returns false when the function has nothing to chart.
bool run_export(const model::TraceSession& session, const std::string& function,
                const fs::path& out_path) {
  auto it = session.records.find(function);
  if (it == session.records.end()) {
    throw aggregator::AggregatorError(aggregator::AggregatorError::Kind::EmptyInput,
                                      "no records of " + function + " in the trace");
  }
  auto tuples = aggregator::build_tuples(it->second);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  aggregator::export_viewer_json(tuples, aggregator::histograms(tuples), out_path);
  return true;
}

std::string run_report(const debuginfo::DebugIndex& index,
                       const std::vector<model::IOExample>& examples, const Options& o,
                       std::ostream& err) {
  std::optional<fs::path> src;
  std::map<std::string, docgen::DocComment> docs;
  std::string library = fs::path(o.binary).filename().string();
  if (!o.src.empty()) {
    src = o.src;
    docs = load_docs(o, err);
    auto name = fs::weakly_canonical(o.src).filename().string();
    if (!name.empty()) library = name;
  }
  return format_report({coverage(library, source_functions(index, src), docs, examples)});
}

model::TraceSession load_session(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return model::decode_session(in);
}

std::vector<model::IOExample> load_examples(const std::string& path) {
  if (path.empty()) return {};
  return model::decode_examples(read_file(path));
}

std::vector<std::string> requested_functions(const Options& o) {
  if (!o.functions_file.empty()) return read_function_list(o.functions_file);
  return o.functions;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

int describe_failure(std::ostream& err) {
  try {
    throw;
  } catch (const UsageError& e) {
    err << "iotrace: " << e.what() << "\n";
    return kUsage;
  } catch (const debuginfo::DebugInfoError& e) {
    err << "debuginfo: " << debuginfo::to_string(e.kind()) << ": " << e.what() << "\n";
  } catch (const tracer::TraceError& e) {
    err << "tracer: " << tracer::to_string(e.kind()) << ": " << e.what() << "\n";
  } catch (const model::DecodeError& e) {
    err << "model: " << e.what() << "\n";
  } catch (const model::InvariantViolation& e) {
    err << "model: " << e.what() << "\n";
  } catch (const selector::SelectorError& e) {
    err << "selector: " << e.what() << "\n";
  } catch (const docgen::ShapeMismatch& e) {
    err << "docgen: ShapeMismatch: " << e.what() << "\n";
  } catch (const aggregator::AggregatorError& e) {
    err << "aggregator: " << aggregator::to_string(e.kind()) << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "iotrace: " << e.what() << "\n";
  }
  return kRuntime;
}

void add_trace_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-depth", o.max_depth, "Pointer hops followed per value")
      ->check(CLI::Range(1u, 64u));
  cmd->add_option("--string-cap", o.string_cap, "Bytes kept per C string")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  cmd->add_flag("--discard-on-failure", o.discard_on_failure,
                "Drop all records when the target fails");
  cmd->add_option("--timeout", o.timeout, "Seconds before the target is killed");
  cmd->add_option("args", o.target_args, "Arguments for the target (after --)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Record real I/O examples of C functions and render them as documentation",
               "iotrace"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* discover_cmd = app.add_subcommand("discover", "List traceable functions");
  discover_cmd->add_option("--binary", o.binary, "Target executable")
      ->required()
      ->check(CLI::ExistingFile);
  discover_cmd->add_option("--src", o.src, "Only functions declared under this directory")
      ->check(CLI::ExistingPath);
  discover_cmd->add_option("--filter", o.filter, "Glob on function names");
  discover_cmd->add_option("-o,--out", o.out, "Output file (default stdout)");

  auto* trace_cmd = app.add_subcommand("trace", "Run a target and record watched calls");
  trace_cmd->add_option("--binary", o.binary, "Target executable")
      ->required()
      ->check(CLI::ExistingFile);
  auto* list_opt = trace_cmd->add_option("--functions", o.functions_file, "Function-name file")
                       ->check(CLI::ExistingFile);
  auto* fn_opt = trace_cmd->add_option("--function", o.functions, "Function to watch");
  list_opt->excludes(fn_opt);
  trace_cmd->add_option("-o,--out", o.out, "Trace file")->required();
  add_trace_flags(trace_cmd, o);

  auto* select_cmd = app.add_subcommand("select", "Pick one example call per function");
  select_cmd->add_option("input", o.input, "Trace file")->required()->check(CLI::ExistingFile);
  select_cmd->add_option("--strategy", o.strategy, "random, first or last");
  select_cmd->add_option("--seed", o.seed, "Seed for the random strategy");
  select_cmd->add_option("-o,--out", o.out, "examples.json (default stdout)");

  auto* doc_cmd = app.add_subcommand("doc", "Render the HTML documentation site");
  doc_cmd->add_option("--binary", o.binary, "Executable with debug info")
      ->required()
      ->check(CLI::ExistingFile);
  doc_cmd->add_option("--src", o.src, "Source directory")->required()->check(CLI::ExistingPath);
  doc_cmd->add_option("--examples", o.examples, "examples.json")->check(CLI::ExistingFile);
  doc_cmd->add_option("-o,--out", o.out, "Site directory")->required();

  auto* export_cmd = app.add_subcommand("export", "Write viewer JSON for one function");
  export_cmd->add_option("input", o.input, "Trace file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--function", o.function, "Function to export")->required();
  export_cmd->add_option("-o,--out", o.out, "Viewer JSON file")->required();

  auto* report_cmd = app.add_subcommand("report", "Print documentation coverage counts");
  report_cmd->add_option("--binary", o.binary, "Executable with debug info")
      ->required()
      ->check(CLI::ExistingFile);
  report_cmd->add_option("--src", o.src, "Source directory")->check(CLI::ExistingPath);
  report_cmd->add_option("--examples", o.examples, "examples.json")->check(CLI::ExistingFile);

  auto* all_cmd = app.add_subcommand("all", "discover, trace, select, doc, export and report");
  all_cmd->add_option("--binary", o.binary, "Target executable")
      ->required()
      ->check(CLI::ExistingFile);
  all_cmd->add_option("--src", o.src, "Source directory")->required()->check(CLI::ExistingPath);
  all_cmd->add_option("--seed", o.seed, "Seed for example selection");
  all_cmd->add_option("-o,--out", o.out, "Output directory")->required();
  add_trace_flags(all_cmd, o);

  std::vector<std::string> argv_storage{"iotrace"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*discover_cmd) {
      auto index = debuginfo::load_debug_info(o.binary);
      emit(discover(index, o), o.out, out);
    } else if (*trace_cmd) {
      auto index = debuginfo::load_debug_info(o.binary);
      auto session = run_trace(index, o, requested_functions(o), o.out, err);
      if (session.discarded) {
        err << "tracer: target " << session.exit_status.describe()
            << "; records discarded\n";
        return kTargetFailed;
      }
      if (!session.exit_status.success()) {
        err << "tracer: warning: target " << session.exit_status.describe() << "\n";
      }
    } else if (*select_cmd) {
      emit(run_select(load_session(o.input), o, err), o.out, out);
    } else if (*doc_cmd) {
      auto index = debuginfo::load_debug_info(o.binary);
      run_doc(index, load_examples(o.examples), o, o.out, err);
    } else if (*export_cmd) {
      run_export(load_session(o.input), o.function, o.out);
    } else if (*report_cmd) {
      auto index = debuginfo::load_debug_info(o.binary);
      out << run_report(index, load_examples(o.examples), o, err);
    } else if (*all_cmd) {
      const fs::path dir = o.out;
      fs::create_directories(dir);
      auto index = debuginfo::load_debug_info(o.binary);
      const std::string listing = discover(index, o);
      write_file(dir / "functions.txt", listing);
      auto session = run_trace(index, o, read_function_list(dir / "functions.txt"),
                               dir / "trace.iotrace.jsonl", err);
      if (session.discarded) {
        err << "tracer: target " << session.exit_status.describe()
            << "; records discarded\n";
        return kTargetFailed;
      }
      const std::string examples_json = run_select(session, o, err);
      write_file(dir / "examples.json", examples_json);
      const auto examples = model::decode_examples(examples_json);
      run_doc(index, examples, o, dir / "site", err);
      for (const auto& [function, records] : session.records) {
        try {
          run_export(session, function,
                     dir / "viewer" / (safe_file_stem(function) + ".viewer.json"));
        } catch (const aggregator::AggregatorError& e) {
          if (e.kind() != aggregator::AggregatorError::Kind::EmptyInput) throw;
        }
      }
      const std::string report = run_report(index, examples, o, err);
      write_file(dir / "report.txt", report);
      out << report;
    }
  } catch (...) {
    return describe_failure(err);
  }
  return kOk;
}

}  // namespace iotrace::cli
