#pragma once

#include <string>
#include <vector>

#include "topicforge/matrix_io.hpp"
#include "topicforge/nmf.hpp"
#include "topicforge/query.hpp"
#include "topicforge/text_pipeline.hpp"
#include "topicforge/topic_model.hpp"

namespace topicforge {

// JSON shapes shared by the CLI workspace and the HTTP service. Both front
// ends call these, which keeps their output byte-identical.

Json to_json(const NmfConfig& c);
/// Missing fields take NmfConfig defaults. Errors: Parse.
NmfConfig nmf_config_from_json(const Json& j);

Json to_json(const PipelineConfig& c);
/// Missing "stopwords" means the bundled list. Errors: Parse.
PipelineConfig pipeline_config_from_json(const Json& j);

Json to_json(const Document& d);
Document document_from_json(const Json& j);

Json to_json(const Corpus& c);
Corpus corpus_from_json(const Json& j);

// {"W", "H", "residual_history", "iterations", "converged", "config",
//  "restart_index", "restart_errors"}
Json to_json(const Factorization& f);
Factorization factorization_from_json(const Json& j);

// {"labels", "values", "description"}
Json to_json(const QueryResult& q);

Json to_json(const std::vector<ExclusiveTerm>& terms);

// {"topics": [{"name", "top_terms": [["term", w], ...]}], "loadings": <matrix>}
Json to_json(const TopicView& view);

// {"residual_history": [...]}
Json residual_curve_json(const Factorization& f);
/// "iteration,residual" header then one line per iteration (1-based).
std::string residual_curve_csv(const Factorization& f);

/// Compact dump used for every wire/stdout payload.
std::string dump(const Json& j);

}  // namespace topicforge
