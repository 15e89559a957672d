#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topicforge/labeled_matrix.hpp"
#include "topicforge/nmf.hpp"

namespace topicforge {

// Reading a factorization as topics. A topic is a column of W and the
// matching row of H; its name is that column/row label ("topic-1" until a
// person renames it).
//
// Topic references accept either the current name or a 1-based index
// ("2"); a name match wins.

struct TermWeight {
  std::string term;
  double weight = 0.0;
  friend bool operator==(const TermWeight&, const TermWeight&) = default;
};

struct TopicLoading {
  std::string topic;
  double weight = 0.0;
  friend bool operator==(const TopicLoading&, const TopicLoading&) = default;
};

/// Errors: UnknownTopic.
std::size_t resolve_topic(const LabelIndex& topics, std::string_view ref);

/// k largest entries of the topic's W column, descending, ties by term.
/// Errors: UnknownTopic, KOutOfRange (k < 1 or k > n).
std::vector<TermWeight> top_terms(const Factorization& f, std::string_view topic,
                                  std::size_t k);

/// The document's H column, labeled by topic. Errors: UnknownDocument.
std::vector<TopicLoading> loadings(const Factorization& f, std::string_view document);

/// (W column g) · (H row g), labeled like V. Errors: UnknownTopic.
LabeledMatrix rank_one_term(const Factorization& f, std::string_view topic);

/// WH.
LabeledMatrix reconstruct(const Factorization& f);

/// Relabels W's column and H's row. Errors: UnknownTopic, DuplicateName, InvalidLabel.
Factorization rename_topic(const Factorization& f, std::string_view topic,
                           const std::string& name);

struct TopicView {
  std::vector<std::string> names;
  std::vector<std::vector<TermWeight>> top_terms;  ///< per topic, descending
  LabeledMatrix loadings;                          ///< H with topic-named rows
};

/// Errors: KOutOfRange.
TopicView make_topic_view(const Factorization& f, std::size_t k);

/// Errors: UnknownTopic, DuplicateName, InvalidLabel.
TopicView name_topic(const TopicView& view, std::string_view topic, const std::string& name);

struct RenderOptions {
  int precision = 4;
  /// Loadings below this print as 0 (display only).
  std::optional<double> threshold;
};

/// Side-by-side term/weight columns, one per topic, then the loadings table.
std::string render_topic_report(const TopicView& view, const RenderOptions& options = {});

}  // namespace topicforge
