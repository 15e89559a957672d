#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topicforge/nmf.hpp"
#include "topicforge/text_pipeline.hpp"

namespace topicforge {

/// [A-Za-z0-9][A-Za-z0-9._-]* up to 128 characters.
bool is_slug(std::string_view name) noexcept;
/// Best-effort conversion of arbitrary text into a slug ("corpus" if nothing survives).
std::string slugify(std::string_view text);

struct StoredFactorization {
  std::string corpus;
  Factorization factorization;
};

/// Plain-JSON store on disk:
///   <root>/corpora/<name>.json
///   <root>/factorizations/<name>.json   (factorization JSON plus "corpus")
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  /// --workspace flag, else $TOPICFORGE_WORKSPACE, else ./.topicforge
  static std::filesystem::path resolve_root(const std::optional<std::string>& flag);

  const std::filesystem::path& root() const noexcept { return root_; }

  void save_corpus(const std::string& name, const Corpus& corpus) const;
  Corpus load_corpus(const std::string& name) const;
  bool has_corpus(const std::string& name) const;
  std::vector<std::string> corpus_names() const;

  /// Errors: NotFound when `corpus` is not in the workspace.
  void save_factorization(const std::string& name, const std::string& corpus,
                          const Factorization& f) const;
  StoredFactorization load_factorization(const std::string& name) const;
  bool has_factorization(const std::string& name) const;
  std::vector<std::string> factorization_names() const;

 private:
  std::filesystem::path corpus_path(const std::string& name) const;
  std::filesystem::path factorization_path(const std::string& name) const;

  std::filesystem::path root_;
};

/// Writes via a temporary file and rename. Errors: Io.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace topicforge
