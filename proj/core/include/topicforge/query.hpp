#pragma once

#include <string>
#include <utility>
#include <vector>

#include "topicforge/labeled_matrix.hpp"

namespace topicforge {

// Questions over a term-by-document matrix, answered as matrix-vector
// products with indicator vectors. Any LabeledMatrix works, not only one
// built by the text pipeline.

struct QueryResult {
  LabeledVector vector;
  std::string description;
};

/// A · indicator(docs). Errors: UnknownLabel, EmptySelection.
QueryResult terms_for_docs(const LabeledMatrix& a, const std::vector<std::string>& docs);

/// Aᵀ · indicator(terms). Errors: UnknownLabel, EmptySelection.
QueryResult docs_for_terms(const LabeledMatrix& a, const std::vector<std::string>& terms);

/// A · (e_a - e_b). Entries may be negative. Errors: UnknownLabel.
QueryResult doc_difference(const LabeledMatrix& a, const std::string& doc_a,
                           const std::string& doc_b);

struct ExclusiveTerm {
  std::string term;
  std::string document;
  friend bool operator==(const ExclusiveTerm&, const ExclusiveTerm&) = default;
};

/// Terms whose row has exactly one nonzero entry, in row order.
std::vector<ExclusiveTerm> exclusive_terms(const LabeledMatrix& a);

/// Fraction of entries exactly equal to zero.
double sparsity(const LabeledMatrix& a);

}  // namespace topicforge
