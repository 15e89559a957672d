#include "topicforge/service.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>

#include "topicforge/query.hpp"
#include "topicforge/serialization.hpp"
#include "topicforge/topic_model.hpp"

namespace topicforge {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> path_segments(std::string_view path) {
  std::vector<std::string> out;
  for (auto& s : split(path, '/'))
    if (!s.empty()) out.push_back(std::move(s));
  return out;
}

std::vector<std::string> label_list(const std::string& csv) {
  std::vector<std::string> out;
  for (auto& s : split(csv, ','))
    if (!s.empty()) out.push_back(std::move(s));
  return out;
}

ApiResponse json_response(int status, const Json& j) { return {status, dump(j)}; }

ApiResponse error_response(int status, std::string_view code, std::string_view message) {
  return {status, error_body(code, message)};
}

ApiResponse error_response(const Error& e) {
  return error_response(http_status(e.code()), to_string(e.code()), e.what());
}

Json parse_body(const std::string& body) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON body: ") + e.what());
  }
}

std::size_t parse_count(const std::string& text, const char* name) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::Parse, std::string(name) + " must be a nonnegative integer");
  }
  return value;
}

}  // namespace

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotFound:
    case ErrorCode::UnknownTopic:
    case ErrorCode::UnknownDocument:
      return 404;
    case ErrorCode::DuplicateName:
      return 409;
    case ErrorCode::EmptyCorpus:
    case ErrorCode::RankTooLarge:
    case ErrorCode::InvalidConfig:
    case ErrorCode::NegativeInput:
    case ErrorCode::ZeroColumn:
      return 422;
    case ErrorCode::Io:
      return 500;
    default:
      return 400;
  }
}

std::string error_body(std::string_view code, std::string_view message) {
  Json j;
  j["error"] = code;
  j["message"] = message;
  return dump(j);
}

Json corpus_summary_json(const Corpus& corpus, std::size_t top) {
  const auto totals = term_totals(corpus);
  Json terms = Json::array();
  for (std::size_t i = 0; i < std::min(top, totals.size()); ++i) {
    terms.push_back(Json::array({totals.labels()[i], totals[i]}));
  }
  Json j;
  j["n_terms"] = corpus.matrix.n_rows();
  j["n_docs"] = corpus.matrix.n_cols();
  j["top_terms"] = std::move(terms);
  return j;
}

// SessionStore ---------------------------------------------------------------

SessionStore::SessionStore(std::optional<std::filesystem::path> workspace) {
  if (!workspace) return;
  workspace_.emplace(*workspace);
  for (const auto& name : workspace_->corpus_names()) {
    corpora_[name] = std::make_shared<const Corpus>(workspace_->load_corpus(name));
  }
  for (const auto& name : workspace_->factorization_names()) {
    auto stored = workspace_->load_factorization(name);
    if (corpora_.contains(stored.corpus)) {
      factorizations_[name] = std::make_shared<const StoredFactorization>(std::move(stored));
    }
  }
}

std::string SessionStore::next_id(const char* prefix, std::uint64_t& counter) const {
  while (true) {
    std::string id = std::string(prefix) + std::to_string(++counter);
    if (!corpora_.contains(id) && !factorizations_.contains(id)) return id;
  }
}

std::string SessionStore::add_corpus(Corpus corpus) {
  auto value = std::make_shared<const Corpus>(std::move(corpus));
  std::unique_lock lock(mutex_);
  std::string id = next_id("c", corpus_counter_);
  if (workspace_) workspace_->save_corpus(id, *value);
  corpora_.emplace(id, std::move(value));
  return id;
}

std::shared_ptr<const Corpus> SessionStore::corpus(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = corpora_.find(id);
  if (it == corpora_.end()) throw Error(ErrorCode::NotFound, "no corpus '" + id + "'");
  return it->second;
}

std::vector<std::string> SessionStore::corpus_ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : corpora_) ids.push_back(id);
  return ids;
}

std::string SessionStore::add_factorization(const std::string& corpus_id, Factorization f) {
  auto value = std::make_shared<const StoredFactorization>(
      StoredFactorization{corpus_id, std::move(f)});
  std::unique_lock lock(mutex_);
  if (!corpora_.contains(corpus_id)) {
    throw Error(ErrorCode::NotFound, "no corpus '" + corpus_id + "'");
  }
  std::string id = next_id("f", factorization_counter_);
  if (workspace_) workspace_->save_factorization(id, corpus_id, value->factorization);
  factorizations_.emplace(id, std::move(value));
  return id;
}

std::shared_ptr<const StoredFactorization> SessionStore::factorization(
    const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = factorizations_.find(id);
  if (it == factorizations_.end()) {
    throw Error(ErrorCode::NotFound, "no factorization '" + id + "'");
  }
  return it->second;
}

void SessionStore::rename_topic(const std::string& factorization_id, const std::string& topic,
                                const std::string& name) {
  std::unique_lock lock(mutex_);
  auto it = factorizations_.find(factorization_id);
  if (it == factorizations_.end()) {
    throw Error(ErrorCode::NotFound, "no factorization '" + factorization_id + "'");
  }
  auto renamed = std::make_shared<const StoredFactorization>(StoredFactorization{
      it->second->corpus, topicforge::rename_topic(it->second->factorization, topic, name)});
  if (workspace_) {
    workspace_->save_factorization(factorization_id, renamed->corpus, renamed->factorization);
  }
  it->second = std::move(renamed);
}

// Service --------------------------------------------------------------------

Service::Service() : Service(Options{}) {}

Service::Service(Options options) : options_(std::move(options)), store_(options_.workspace) {}

ApiResponse Service::handle(const ApiRequest& request) {
  const auto seg = path_segments(request.path);
  const std::string& method = request.method;
  try {
    if (!seg.empty() && seg[0] == "corpora") {
      if (seg.size() == 1) {
        if (method == "POST") return create_corpus(request);
        if (method == "GET") {
          Json j;
          j["corpora"] = store_.corpus_ids();
          return json_response(200, j);
        }
      } else if (seg.size() == 3 && seg[2] == "matrix" && method == "GET") {
        return corpus_matrix(seg[1]);
      } else if (seg.size() == 3 && seg[2] == "query" && method == "GET") {
        return corpus_query(seg[1], request);
      } else if (seg.size() == 3 && seg[2] == "factorizations" && method == "POST") {
        return create_factorization(seg[1], request);
      } else if (seg.size() == 2 && method == "GET") {
        auto c = store_.corpus(seg[1]);
        return json_response(200, corpus_summary_json(*c));
      }
    } else if (!seg.empty() && seg[0] == "factorizations") {
      if (seg.size() == 2 && method == "GET") return factorization(seg[1]);
      if (seg.size() == 3 && seg[2] == "topics" && method == "GET") {
        return topics(seg[1], request);
      }
      if (seg.size() == 3 && seg[2] == "residual-curve" && method == "GET") {
        return residual_curve(seg[1]);
      }
      if (seg.size() == 4 && seg[2] == "topics" && method == "PATCH") {
        return rename(seg[1], seg[3], request);
      }
    }
    return error_response(404, "NotFound", "no route for " + method + " " + request.path);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  }
}

ApiResponse Service::create_corpus(const ApiRequest& request) {
  const Json body = parse_body(request.body);
  if (!body.is_object()) throw Error(ErrorCode::Parse, "body must be a JSON object");
  Corpus corpus;
  if (auto m = body.find("matrix"); m != body.end()) {
    corpus = Corpus::from_matrix(matrix_from_json(*m));
  } else {
    auto docs = body.find("documents");
    if (docs == body.end() || !docs->is_array() || docs->empty()) {
      throw Error(ErrorCode::Parse, "\"documents\" must be a nonempty array");
    }
    std::vector<Document> documents;
    for (const auto& d : *docs) documents.push_back(document_from_json(d));
    PipelineConfig config = default_pipeline_config();
    if (auto c = body.find("config"); c != body.end()) config = pipeline_config_from_json(*c);
    corpus = build_corpus(std::move(documents), config);
  }
  Json summary = corpus_summary_json(corpus);
  const std::string id = store_.add_corpus(std::move(corpus));
  Json j;
  j["corpus_id"] = id;
  j.update(summary);
  return json_response(201, j);
}

ApiResponse Service::corpus_matrix(const std::string& id) {
  return json_response(200, to_json(store_.corpus(id)->matrix));
}

ApiResponse Service::corpus_query(const std::string& id, const ApiRequest& request) {
  auto corpus = store_.corpus(id);
  const auto& a = corpus->matrix;
  const auto& q = request.query;
  const int given = static_cast<int>(q.contains("docs")) + q.contains("terms") +
                    q.contains("diff") + q.contains("exclusive") + q.contains("sparsity");
  if (given != 1) {
    throw Error(ErrorCode::Parse,
                "give exactly one of docs, terms, diff, exclusive, sparsity");
  }
  if (auto it = q.find("docs"); it != q.end()) {
    return json_response(200, to_json(terms_for_docs(a, label_list(it->second))));
  }
  if (auto it = q.find("terms"); it != q.end()) {
    return json_response(200, to_json(docs_for_terms(a, label_list(it->second))));
  }
  if (auto it = q.find("diff"); it != q.end()) {
    auto pair = label_list(it->second);
    if (pair.size() != 2) throw Error(ErrorCode::Parse, "diff takes two document labels");
    return json_response(200, to_json(doc_difference(a, pair[0], pair[1])));
  }
  if (q.contains("exclusive")) {
    Json j;
    j["exclusive_terms"] = to_json(exclusive_terms(a));
    return json_response(200, j);
  }
  Json j;
  j["sparsity"] = sparsity(a);
  return json_response(200, j);
}

ApiResponse Service::create_factorization(const std::string& id, const ApiRequest& request) {
  auto corpus = store_.corpus(id);
  const Json body = request.body.empty() ? Json::object() : parse_body(request.body);
  const NmfConfig config = nmf_config_from_json(body);
  Factorization f = factorize(corpus->matrix, config, options_.factorize);
  Json j;
  j["residual"] = f.final_error();
  j["iterations"] = f.iterations;
  j["converged"] = f.converged;
  const std::string fid = store_.add_factorization(id, std::move(f));
  Json out;
  out["factorization_id"] = fid;
  out.update(j);
  return json_response(201, out);
}

ApiResponse Service::factorization(const std::string& id) {
  auto stored = store_.factorization(id);
  Json j;
  j["corpus"] = stored->corpus;
  j.update(to_json(stored->factorization));
  return json_response(200, j);
}

ApiResponse Service::topics(const std::string& id, const ApiRequest& request) {
  auto stored = store_.factorization(id);
  const auto& f = stored->factorization;
  std::size_t k = std::min<std::size_t>(10, f.w.n_rows());
  if (auto it = request.query.find("k"); it != request.query.end()) k = parse_count(it->second, "k");
  return json_response(200, to_json(make_topic_view(f, k)));
}

ApiResponse Service::residual_curve(const std::string& id) {
  return json_response(200, residual_curve_json(store_.factorization(id)->factorization));
}

ApiResponse Service::rename(const std::string& id, const std::string& topic,
                            const ApiRequest& request) {
  const Json body = parse_body(request.body);
  std::string name;
  if (body.is_object() && body.contains("name") && body["name"].is_string()) {
    name = body["name"].get<std::string>();
  } else if (body.is_string()) {
    name = body.get<std::string>();
  } else {
    throw Error(ErrorCode::Parse, "body must be {\"name\": \"...\"}");
  }
  store_.rename_topic(id, topic, name);
  return {204, "", "application/json"};
}

}  // namespace topicforge
