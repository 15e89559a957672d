#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "topicforge/matrix_io.hpp"
#include "topicforge/query.hpp"
#include "topicforge/serialization.hpp"
#include "topicforge/service.hpp"
#include "topicforge/text_pipeline.hpp"
#include "topicforge/topic_model.hpp"
#include "topicforge/workspace.hpp"

namespace topicforge::cli {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::optional<std::string> workspace;
  bool json = false;
};

struct IngestOptions {
  std::string input;
  std::string name;
  std::string stopwords_file;
  bool no_default_stopwords = false;
  std::size_t min_count = 4;
  bool no_stem = false;
  bool no_lowercase = false;
};

struct QueryOptions {
  std::string corpus;
  std::vector<std::string> docs;
  std::vector<std::string> terms;
  std::vector<std::string> diff;
  bool exclusive = false;
  bool sparsity = false;
};

struct FactorizeCliOptions {
  std::string corpus;
  std::string name;
  NmfConfig config;
  unsigned threads = 0;
};

struct TopicsOptions {
  std::string factorization;
  std::size_t top_k = 0;  // 0: min(10, n)
  std::vector<std::string> names;
  std::string rank_one;
  std::optional<double> threshold;
  int precision = 4;
};

struct ExportOptions {
  std::string kind;  // corpus | factorization
  std::string name;
  std::string format = "json";
  std::string part = "all";
  std::string output;
};

void emit(std::ostream& out, const std::string& text, const std::string& output_file) {
  if (output_file.empty()) {
    out << text;
  } else {
    write_file_atomic(output_file, text);
  }
}

Corpus load_input(const IngestOptions& o) {
  const fs::path input(o.input);
  std::error_code ec;
  if (!fs::exists(input, ec)) throw Error(ErrorCode::Io, o.input + " does not exist");
  if (fs::is_directory(input, ec) || input.extension() == ".json") {
    std::vector<Document> docs;
    if (fs::is_directory(input, ec)) {
      docs = load_documents_from_dir(input);
    } else {
      Json j;
      try {
        j = Json::parse(read_file(input));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, o.input + ": " + e.what());
      }
      if (j.is_object() && j.contains("rows")) return Corpus::from_matrix(matrix_from_json(j));
      if (j.is_object() && j.contains("matrix")) return corpus_from_json(j);
      docs = load_documents_from_json(input);
    }
    PipelineConfig config;
    if (!o.no_default_stopwords) config.stopwords = default_stopwords();
    if (!o.stopwords_file.empty()) config.stopwords.merge(load_stopwords(o.stopwords_file));
    config.min_total_count = o.min_count;
    config.stem = !o.no_stem;
    config.lowercase = !o.no_lowercase;
    return build_corpus(std::move(docs), config);
  }
  if (input.extension() == ".csv") return Corpus::from_matrix(matrix_from_csv(read_file(input)));
  throw Error(ErrorCode::Io, o.input + ": expected a directory, .json or .csv file");
}

int cmd_ingest(const GlobalOptions& g, const IngestOptions& o, std::ostream& out) {
  Workspace ws(Workspace::resolve_root(g.workspace));
  Corpus corpus = load_input(o);
  std::string name = o.name;
  if (name.empty()) {
    fs::path p(o.input);
    if (!p.has_filename()) p = p.parent_path();
    name = slugify(p.stem().string());
  }
  ws.save_corpus(name, corpus);
  if (g.json) {
    Json j;
    j["corpus"] = name;
    j.update(corpus_summary_json(corpus));
    out << dump(j) << '\n';
    return kOk;
  }
  out << "corpus " << name << ": " << corpus.matrix.n_rows() << " x " << corpus.matrix.n_cols()
      << " (terms x documents)\n";
  const auto totals = term_totals(corpus);
  const std::size_t shown = std::min<std::size_t>(10, totals.size());
  std::size_t w = 0;
  for (std::size_t i = 0; i < shown; ++i) w = std::max(w, totals.labels()[i].size());
  out << "top terms:\n";
  for (std::size_t i = 0; i < shown; ++i) {
    out << "  " << std::left << std::setw(static_cast<int>(w)) << totals.labels()[i] << "  "
        << format_double(totals[i]) << '\n';
  }
  return kOk;
}

void print_vector(std::ostream& out, const QueryResult& q) {
  out << q.description << '\n';
  std::size_t w = 0;
  for (const auto& l : q.vector.labels()) w = std::max(w, l.size());
  for (std::size_t i = 0; i < q.vector.size(); ++i) {
    out << "  " << std::left << std::setw(static_cast<int>(w)) << q.vector.labels()[i] << "  "
        << format_double(q.vector[i]) << '\n';
  }
}

int cmd_query(const GlobalOptions& g, const QueryOptions& o, std::ostream& out) {
  const int given = !o.docs.empty() + !o.terms.empty() + !o.diff.empty() + o.exclusive +
                    o.sparsity;
  if (given != 1) {
    throw Error(ErrorCode::InvalidConfig,
                "give exactly one of --docs, --terms, --diff, --exclusive, --sparsity");
  }
  Workspace ws(Workspace::resolve_root(g.workspace));
  const Corpus corpus = ws.load_corpus(o.corpus);
  const auto& a = corpus.matrix;
  if (o.exclusive) {
    const auto terms = exclusive_terms(a);
    if (g.json) {
      Json j;
      j["exclusive_terms"] = to_json(terms);
      out << dump(j) << '\n';
    } else {
      for (const auto& t : terms) out << t.term << " → " << t.document << '\n';
    }
    return kOk;
  }
  if (o.sparsity) {
    const double s = sparsity(a);
    if (g.json) {
      Json j;
      j["sparsity"] = s;
      out << dump(j) << '\n';
    } else {
      out << "sparsity: " << format_double(s) << '\n';
    }
    return kOk;
  }
  QueryResult q;
  if (!o.docs.empty()) {
    q = terms_for_docs(a, o.docs);
  } else if (!o.terms.empty()) {
    q = docs_for_terms(a, o.terms);
  } else {
    if (o.diff.size() != 2) throw Error(ErrorCode::InvalidConfig, "--diff takes A,B");
    q = doc_difference(a, o.diff[0], o.diff[1]);
  }
  if (g.json) {
    out << dump(to_json(q)) << '\n';
  } else {
    print_vector(out, q);
  }
  return kOk;
}

int cmd_factorize(const GlobalOptions& g, const FactorizeCliOptions& o, std::ostream& out) {
  Workspace ws(Workspace::resolve_root(g.workspace));
  const Corpus corpus = ws.load_corpus(o.corpus);
  validate(o.config);
  FactorizeOptions run_options;
  run_options.threads = o.threads;
  const Factorization f = factorize(corpus.matrix, o.config, run_options);
  const std::string name =
      o.name.empty() ? o.corpus + "-r" + std::to_string(o.config.rank) + "-s" +
                           std::to_string(o.config.seed)
                     : o.name;
  ws.save_factorization(name, o.corpus, f);
  if (g.json) {
    Json j;
    j["factorization"] = name;
    j["residual"] = f.final_error();
    j["iterations"] = f.iterations;
    j["converged"] = f.converged;
    out << dump(j) << '\n';
  } else {
    out << "factorization " << name << ": rank " << f.rank() << ", residual "
        << std::setprecision(6) << f.final_error() << ", iterations " << f.iterations
        << ", converged " << (f.converged ? "yes" : "no") << ", best restart "
        << f.restart_index + 1 << " of " << f.config.restarts << '\n';
  }
  return kOk;
}

int cmd_topics(const GlobalOptions& g, const TopicsOptions& o, std::ostream& out) {
  Workspace ws(Workspace::resolve_root(g.workspace));
  StoredFactorization stored = ws.load_factorization(o.factorization);
  Factorization& f = stored.factorization;
  if (!o.names.empty()) {
    for (const auto& assignment : o.names) {
      const auto eq = assignment.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorCode::InvalidConfig, "--name expects TOPIC=NAME, got '" + assignment + "'");
      }
      f = rename_topic(f, assignment.substr(0, eq), assignment.substr(eq + 1));
    }
    ws.save_factorization(o.factorization, stored.corpus, f);
  }
  if (!o.rank_one.empty()) {
    const LabeledMatrix m = rank_one_term(f, o.rank_one);
    if (g.json) {
      out << dump(to_json(m)) << '\n';
    } else {
      out << to_csv(m);
    }
    return kOk;
  }
  const std::size_t k = o.top_k ? o.top_k : std::min<std::size_t>(10, f.w.n_rows());
  const TopicView view = make_topic_view(f, k);
  if (g.json) {
    out << dump(to_json(view)) << '\n';
  } else {
    out << render_topic_report(view, {o.precision, o.threshold});
  }
  return kOk;
}

int cmd_export(const GlobalOptions& g, const ExportOptions& o, std::ostream& out) {
  Workspace ws(Workspace::resolve_root(g.workspace));
  const bool csv = o.format == "csv";
  if (o.kind == "corpus") {
    const Corpus c = ws.load_corpus(o.name);
    if (o.part == "all" && !csv) {
      emit(out, dump(to_json(c.matrix)) + "\n", o.output);
    } else if (o.part == "corpus") {
      emit(out, dump(to_json(c)) + "\n", o.output);
    } else {
      emit(out, csv ? to_csv(c.matrix) : dump(to_json(c.matrix)) + "\n", o.output);
    }
    return kOk;
  }
  const StoredFactorization stored = ws.load_factorization(o.name);
  const Factorization& f = stored.factorization;
  if (o.part == "w" || o.part == "h") {
    const LabeledMatrix& m = o.part == "w" ? f.w : f.h;
    emit(out, csv ? to_csv(m) : dump(to_json(m)) + "\n", o.output);
  } else if (o.part == "residuals") {
    emit(out, csv ? residual_curve_csv(f) : dump(residual_curve_json(f)) + "\n", o.output);
  } else {
    if (csv) throw Error(ErrorCode::InvalidConfig, "--part all has no CSV form");
    Json j;
    j["corpus"] = stored.corpus;
    j.update(to_json(f));
    emit(out, dump(j) + "\n", o.output);
  }
  return kOk;
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::Parse:
      return kIo;
    case ErrorCode::EmptyCorpus:
      return kEmpty;
    case ErrorCode::UnknownLabel:
    case ErrorCode::UnknownTopic:
    case ErrorCode::UnknownDocument:
    case ErrorCode::NotFound:
    case ErrorCode::DuplicateName:
      return kUnknown;
    default:
      return kInvalid;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"topicforge: term-document matrices, NMF topics, and queries"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--workspace", global.workspace,
                 "Workspace directory (default $TOPICFORGE_WORKSPACE or ./.topicforge)");
  app.add_flag("--json", global.json, "Emit JSON instead of tables");

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a corpus from documents or a matrix");
  ingest_cmd->add_option("input", ingest.input,
                         "Directory of .txt files, documents JSON, or matrix CSV/JSON")
      ->required();
  ingest_cmd->add_option("--name", ingest.name, "Corpus name (default: input file stem)");
  ingest_cmd->add_option("--stopwords", ingest.stopwords_file, "Extra stop-word file");
  ingest_cmd->add_flag("--no-default-stopwords", ingest.no_default_stopwords,
                       "Do not use the bundled English stop words");
  ingest_cmd->add_option("--min-count", ingest.min_count,
                         "Drop terms seen fewer times across the corpus")
      ->capture_default_str();
  ingest_cmd->add_flag("--no-stem", ingest.no_stem, "Disable Porter stemming");
  ingest_cmd->add_flag("--no-lowercase", ingest.no_lowercase, "Keep original case");

  QueryOptions query;
  auto* query_cmd = app.add_subcommand("query", "Matrix-vector queries over a corpus");
  query_cmd->add_option("corpus", query.corpus)->required();
  query_cmd->add_option("--docs", query.docs, "Term counts over these documents")
      ->delimiter(',');
  query_cmd->add_option("--terms", query.terms, "Document counts over these terms")
      ->delimiter(',');
  query_cmd->add_option("--diff", query.diff, "Term count difference A,B")->delimiter(',');
  query_cmd->add_flag("--exclusive", query.exclusive, "Terms found in exactly one document");
  query_cmd->add_flag("--sparsity", query.sparsity, "Fraction of zero entries");

  FactorizeCliOptions fact;
  auto* fact_cmd = app.add_subcommand("factorize", "Nonnegative factorization V ~ WH");
  fact_cmd->add_option("corpus", fact.corpus)->required();
  fact_cmd->add_option("--rank", fact.config.rank, "Number of topics r")->capture_default_str();
  fact_cmd->add_option("--restarts", fact.config.restarts)->capture_default_str();
  fact_cmd->add_option("--seed", fact.config.seed)->capture_default_str();
  fact_cmd->add_option("--max-iters", fact.config.max_iters)->capture_default_str();
  fact_cmd->add_option("--tol", fact.config.rel_tol, "Relative error change stopping rule")
      ->capture_default_str();
  fact_cmd->add_option("--epsilon", fact.config.epsilon)->capture_default_str();
  fact_cmd->add_flag("--normalize-w", fact.config.normalize_w, "Unit-sum W columns");
  fact_cmd->add_option("--threads", fact.threads, "Restart worker threads (0 = all cores)");
  fact_cmd->add_option("--name", fact.name, "Factorization name");

  TopicsOptions topics;
  auto* topics_cmd = app.add_subcommand("topics", "Topic report for a factorization");
  topics_cmd->add_option("factorization", topics.factorization)->required();
  topics_cmd->add_option("--top-k", topics.top_k, "Terms per topic (default min(10, n))");
  topics_cmd->add_option("--name", topics.names, "Rename a topic: TOPIC=NAME (repeatable)");
  topics_cmd->add_option("--rank-one", topics.rank_one, "Print one topic's rank-one matrix");
  topics_cmd->add_option("--threshold", topics.threshold, "Show loadings below this as 0");
  topics_cmd->add_option("--precision", topics.precision, "Significant digits")
      ->capture_default_str();

  ExportOptions exp;
  auto* export_cmd = app.add_subcommand("export", "Write stored matrices and curves");
  export_cmd->add_option("kind", exp.kind)
      ->required()
      ->check(CLI::IsMember({"corpus", "factorization"}));
  export_cmd->add_option("name", exp.name)->required();
  export_cmd->add_option("--format", exp.format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  export_cmd->add_option("--part", exp.part,
                         "corpus: all|corpus; factorization: all|w|h|residuals")
      ->check(CLI::IsMember({"all", "corpus", "w", "h", "residuals"}))
      ->capture_default_str();
  export_cmd->add_option("--output", exp.output, "Write to a file instead of stdout");

  std::vector<std::string> argv_storage{"topicforge"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (ingest_cmd->parsed()) return cmd_ingest(global, ingest, out);
    if (query_cmd->parsed()) return cmd_query(global, query, out);
    if (fact_cmd->parsed()) return cmd_factorize(global, fact, out);
    if (topics_cmd->parsed()) return cmd_topics(global, topics, out);
    if (export_cmd->parsed()) return cmd_export(global, exp, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kInvalid;
}

}  // namespace topicforge::cli
