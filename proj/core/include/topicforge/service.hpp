#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "topicforge/error.hpp"
#include "topicforge/matrix_io.hpp"
#include "topicforge/nmf.hpp"
#include "topicforge/text_pipeline.hpp"
#include "topicforge/workspace.hpp"

namespace topicforge {

/// In-memory corpora and factorizations keyed by generated ids, optionally
/// mirrored into a Workspace so the CLI can read what the service created.
///
/// Reads take a shared lock; inserts and topic renames take it exclusively.
class SessionStore {
 public:
  explicit SessionStore(std::optional<std::filesystem::path> workspace = std::nullopt);

  std::string add_corpus(Corpus corpus);
  std::shared_ptr<const Corpus> corpus(const std::string& id) const;
  std::vector<std::string> corpus_ids() const;

  /// Errors: NotFound when the corpus id is unknown.
  std::string add_factorization(const std::string& corpus_id, Factorization f);
  std::shared_ptr<const StoredFactorization> factorization(const std::string& id) const;

  /// Errors: NotFound, UnknownTopic, DuplicateName, InvalidLabel.
  void rename_topic(const std::string& factorization_id, const std::string& topic,
                    const std::string& name);

 private:
  std::string next_id(const char* prefix, std::uint64_t& counter) const;

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const Corpus>> corpora_;
  std::map<std::string, std::shared_ptr<const StoredFactorization>> factorizations_;
  std::uint64_t corpus_counter_ = 0;
  std::uint64_t factorization_counter_ = 0;
  std::optional<Workspace> workspace_;
};

struct ApiRequest {
  std::string method;  ///< "GET", "POST", "PATCH"
  std::string path;    ///< without query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// HTTP status for a library error code.
int http_status(ErrorCode code) noexcept;

/// Routes JSON requests onto the library. Transport-free so it can be
/// exercised directly; HttpServer adapts it to sockets.
///
///   POST  /corpora                              -> 201 corpus summary
///   GET   /corpora                              -> ids
///   GET   /corpora/{id}/matrix                  -> matrix JSON
///   GET   /corpora/{id}/query?docs=|terms=|diff=|exclusive|sparsity
///   POST  /corpora/{id}/factorizations          -> 201 run summary
///   GET   /factorizations/{id}                  -> factorization JSON
///   GET   /factorizations/{id}/topics?k=K       -> topic report JSON
///   GET   /factorizations/{id}/residual-curve   -> residual history JSON
///   PATCH /factorizations/{id}/topics/{g}       -> 204
class Service {
 public:
  struct Options {
    std::optional<std::filesystem::path> workspace;
    FactorizeOptions factorize;
  };

  Service();
  explicit Service(Options options);

  ApiResponse handle(const ApiRequest& request);

  SessionStore& store() noexcept { return store_; }

 private:
  ApiResponse create_corpus(const ApiRequest& request);
  ApiResponse corpus_matrix(const std::string& id);
  ApiResponse corpus_query(const std::string& id, const ApiRequest& request);
  ApiResponse create_factorization(const std::string& id, const ApiRequest& request);
  ApiResponse factorization(const std::string& id);
  ApiResponse topics(const std::string& id, const ApiRequest& request);
  ApiResponse residual_curve(const std::string& id);
  ApiResponse rename(const std::string& id, const std::string& topic, const ApiRequest& request);

  Options options_;
  SessionStore store_;
};

/// Corpus summary shared by POST /corpora and `topicforge ingest --json`.
Json corpus_summary_json(const Corpus& corpus, std::size_t top = 10);

/// Error payload {"error": <code>, "message": <text>}.
std::string error_body(std::string_view code, std::string_view message);

struct ServerOptions {
  std::string bind = "127.0.0.1";
  int port = 7878;  ///< 0 picks a free port
  /// Value for Access-Control-Allow-Origin; empty disables CORS headers.
  std::string cors_origin = "*";
  int timeout_seconds = 30;
};

/// cpp-httplib front end for a Service.
class HttpServer {
 public:
  HttpServer(Service& service, ServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket and returns the bound port. Errors: Io.
  int bind();
  /// Blocks serving requests until stop(). Call bind() first.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace topicforge
