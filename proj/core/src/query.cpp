#include "topicforge/query.hpp"

#include <algorithm>

#include "topicforge/error.hpp"

namespace topicforge {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

void require_selection(const std::vector<std::string>& selection, const char* axis) {
  if (selection.empty()) {
    throw Error(ErrorCode::EmptySelection, std::string("select at least one ") + axis);
  }
}

}  // namespace

QueryResult terms_for_docs(const LabeledMatrix& a, const std::vector<std::string>& docs) {
  require_selection(docs, "document");
  auto v = matvec(a, indicator(a.cols(), docs));
  return {std::move(v), "term counts over documents {" + join(docs) + "}"};
}

QueryResult docs_for_terms(const LabeledMatrix& a, const std::vector<std::string>& terms) {
  require_selection(terms, "term");
  auto v = matvec(transpose(a), indicator(a.rows(), terms));
  return {std::move(v), "document counts over terms {" + join(terms) + "}"};
}

QueryResult doc_difference(const LabeledMatrix& a, const std::string& doc_a,
                           const std::string& doc_b) {
  auto diff = subtract(indicator(a.cols(), {doc_a}), indicator(a.cols(), {doc_b}));
  return {matvec(a, diff), "term count difference " + doc_a + " - " + doc_b};
}

std::vector<ExclusiveTerm> exclusive_terms(const LabeledMatrix& a) {
  std::vector<ExclusiveTerm> out;
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    std::size_t nonzero = 0;
    std::size_t where = 0;
    for (std::size_t j = 0; j < a.n_cols(); ++j) {
      if (a(i, j) != 0.0) {
        ++nonzero;
        where = j;
      }
    }
    if (nonzero == 1) out.push_back({a.rows()[i], a.cols()[where]});
  }
  return out;
}

double sparsity(const LabeledMatrix& a) {
  const auto v = a.values();
  const auto zeros = std::count(v.begin(), v.end(), 0.0);
  return static_cast<double>(zeros) / static_cast<double>(v.size());
}

}  // namespace topicforge
