#include "topicforge/serialization.hpp"

#include "topicforge/error.hpp"

namespace topicforge {

namespace {

template <typename Fn>
auto parsing(const char* what, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

template <typename T>
void read_optional(const Json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->template get<T>();
}

}  // namespace

Json to_json(const NmfConfig& c) {
  Json j;
  j["rank"] = c.rank;
  j["max_iters"] = c.max_iters;
  j["rel_tol"] = c.rel_tol;
  j["epsilon"] = c.epsilon;
  j["restarts"] = c.restarts;
  j["seed"] = c.seed;
  j["normalize_w"] = c.normalize_w;
  return j;
}

NmfConfig nmf_config_from_json(const Json& j) {
  return parsing("NMF config", [&] {
    if (!j.is_object()) throw Error(ErrorCode::Parse, "NMF config must be an object");
    NmfConfig c;
    // Negative integers would wrap; reject them as invalid values instead.
    for (const char* key : {"rank", "max_iters", "restarts"}) {
      if (auto it = j.find(key); it != j.end() && it->is_number_integer() && it->get<long long>() < 0) {
        throw Error(ErrorCode::InvalidConfig, std::string(key) + " must be nonnegative");
      }
    }
    read_optional(j, "rank", c.rank);
    read_optional(j, "max_iters", c.max_iters);
    read_optional(j, "rel_tol", c.rel_tol);
    read_optional(j, "epsilon", c.epsilon);
    read_optional(j, "restarts", c.restarts);
    read_optional(j, "seed", c.seed);
    read_optional(j, "normalize_w", c.normalize_w);
    return c;
  });
}

Json to_json(const PipelineConfig& c) {
  Json j;
  j["stopwords"] = std::vector<std::string>(c.stopwords.begin(), c.stopwords.end());
  j["min_total_count"] = c.min_total_count;
  j["stem"] = c.stem;
  j["lowercase"] = c.lowercase;
  return j;
}

PipelineConfig pipeline_config_from_json(const Json& j) {
  return parsing("pipeline config", [&] {
    if (!j.is_object()) throw Error(ErrorCode::Parse, "pipeline config must be an object");
    PipelineConfig c = default_pipeline_config();
    if (auto it = j.find("stopwords"); it != j.end() && !it->is_null()) {
      auto words = it->get<std::vector<std::string>>();
      c.stopwords = std::set<std::string>(words.begin(), words.end());
    }
    if (auto it = j.find("min_total_count");
        it != j.end() && it->is_number_integer() && it->get<long long>() < 0) {
      throw Error(ErrorCode::InvalidConfig, "min_total_count must be nonnegative");
    }
    read_optional(j, "min_total_count", c.min_total_count);
    read_optional(j, "stem", c.stem);
    read_optional(j, "lowercase", c.lowercase);
    return c;
  });
}

Json to_json(const Document& d) {
  Json j;
  j["id"] = d.id;
  j["title"] = d.title;
  j["body"] = d.body;
  return j;
}

Document document_from_json(const Json& j) {
  return parsing("document", [&] {
    return Document{j.at("id").get<std::string>(), j.value("title", std::string()),
                    j.value("body", std::string())};
  });
}

Json to_json(const Corpus& c) {
  Json docs = Json::array();
  for (const auto& d : c.documents) docs.push_back(to_json(d));
  Json j;
  j["config"] = to_json(c.config);
  j["documents"] = std::move(docs);
  j["matrix"] = to_json(c.matrix);
  return j;
}

Corpus corpus_from_json(const Json& j) {
  return parsing("corpus", [&] {
    Corpus c;
    c.config = pipeline_config_from_json(j.at("config"));
    for (const auto& d : j.at("documents")) c.documents.push_back(document_from_json(d));
    c.matrix = matrix_from_json(j.at("matrix"));
    return c;
  });
}

Json to_json(const Factorization& f) {
  Json j;
  j["W"] = to_json(f.w);
  j["H"] = to_json(f.h);
  j["residual_history"] = f.residual_history;
  j["iterations"] = f.iterations;
  j["converged"] = f.converged;
  j["config"] = to_json(f.config);
  j["restart_index"] = f.restart_index;
  j["restart_errors"] = f.restart_errors;
  return j;
}

Factorization factorization_from_json(const Json& j) {
  return parsing("factorization", [&] {
    Factorization f;
    f.w = matrix_from_json(j.at("W"));
    f.h = matrix_from_json(j.at("H"));
    f.residual_history = j.at("residual_history").get<std::vector<double>>();
    f.iterations = j.at("iterations").get<std::size_t>();
    f.converged = j.at("converged").get<bool>();
    f.config = nmf_config_from_json(j.at("config"));
    f.restart_index = j.value("restart_index", std::size_t{0});
    f.restart_errors = j.value("restart_errors", std::vector<double>{});
    if (f.w.n_cols() != f.h.n_rows() || !(f.w.cols() == f.h.rows())) {
      throw Error(ErrorCode::DimensionMismatch, "W columns and H rows disagree");
    }
    return f;
  });
}

Json to_json(const QueryResult& q) {
  Json j = to_json(q.vector);
  j["description"] = q.description;
  return j;
}

Json to_json(const std::vector<ExclusiveTerm>& terms) {
  Json arr = Json::array();
  for (const auto& t : terms) {
    Json e;
    e["term"] = t.term;
    e["document"] = t.document;
    arr.push_back(std::move(e));
  }
  return arr;
}

Json to_json(const TopicView& view) {
  Json topics = Json::array();
  for (std::size_t g = 0; g < view.names.size(); ++g) {
    Json terms = Json::array();
    for (const auto& tw : view.top_terms[g]) terms.push_back(Json::array({tw.term, tw.weight}));
    Json t;
    t["name"] = view.names[g];
    t["top_terms"] = std::move(terms);
    topics.push_back(std::move(t));
  }
  Json j;
  j["topics"] = std::move(topics);
  j["loadings"] = to_json(view.loadings);
  return j;
}

Json residual_curve_json(const Factorization& f) {
  Json j;
  j["residual_history"] = f.residual_history;
  return j;
}

std::string residual_curve_csv(const Factorization& f) {
  std::string out = "iteration,residual\n";
  for (std::size_t t = 0; t < f.residual_history.size(); ++t) {
    out += std::to_string(t + 1) + "," + format_double(f.residual_history[t]) + "\n";
  }
  return out;
}

std::string dump(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

}  // namespace topicforge
