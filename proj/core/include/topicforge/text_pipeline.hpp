#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "topicforge/labeled_matrix.hpp"

namespace topicforge {

struct Document {
  std::string id;  ///< unique within a corpus; becomes the column label
  std::string title;
  std::string body;  ///< UTF-8; the only field that is counted
};

struct PipelineConfig {
  std::set<std::string> stopwords;
  /// Terms whose corpus-wide count is below this are dropped.
  std::size_t min_total_count = 4;
  bool stem = true;
  bool lowercase = true;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Config with the bundled English stop-word list and default thresholds.
PipelineConfig default_pipeline_config();

/// Documents plus their term-by-document count matrix.
///
/// Rows are terms sorted by descending total count (ties lexicographic),
/// columns are document ids in input order. A corpus can also wrap a
/// hand-entered matrix, in which case `documents` is empty.
struct Corpus {
  std::vector<Document> documents;
  PipelineConfig config;
  LabeledMatrix matrix;

  const std::vector<std::string>& vocabulary() const { return matrix.rows().labels(); }

  static Corpus from_matrix(LabeledMatrix m);
};

/// Maximal runs of Unicode letters; everything else separates tokens.
/// Lowercases when config.lowercase is set. Invalid UTF-8 bytes are separators.
std::vector<std::string> tokenize(std::string_view text, const PipelineConfig& config);

/// Porter stem of a lowercase token.
std::string stem(std::string_view token);

/// Tokenize, drop stop words (before and after stemming), stem, count, and
/// drop rare terms. Errors: DuplicateDocumentId, InvalidLabel, EmptyCorpus.
Corpus build_corpus(std::vector<Document> documents, const PipelineConfig& config);

/// Row sums of the corpus matrix, sorted descending; ties keep row order.
LabeledVector term_totals(const LabeledMatrix& matrix);
LabeledVector term_totals(const Corpus& corpus);

/// Bundled English stop words (lowercase).
const std::set<std::string>& default_stopwords();

/// One word per line; '#' starts a comment; blank lines ignored. Errors: Io.
std::set<std::string> load_stopwords(const std::filesystem::path& path);
std::set<std::string> parse_stopwords(std::string_view text);

/// Every *.txt file in the directory, sorted by name; id = file stem.
/// Errors: Io (missing, unreadable, or no .txt files).
std::vector<Document> load_documents_from_dir(const std::filesystem::path& dir);

/// [{"id": ..., "title": ..., "body": ...}, ...]. Errors: Io, Parse.
std::vector<Document> load_documents_from_json(const std::filesystem::path& file);

/// Reads a whole file. Errors: Io.
std::string read_file(const std::filesystem::path& path);

}  // namespace topicforge
