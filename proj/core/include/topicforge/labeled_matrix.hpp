#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace topicforge {

/// Ordered, unique, nonblank labels for one axis of a matrix or vector.
///
/// Lookup by name is O(1); the index is built once at construction and the
/// object is immutable afterwards.
class LabelIndex {
 public:
  LabelIndex() = default;
  /// Throws InvalidLabel for blank labels and DuplicateLabel for repeats.
  explicit LabelIndex(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::string& operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws UnknownLabel.
  std::size_t at(std::string_view label) const;
  bool contains(std::string_view label) const { return find(label).has_value(); }

  auto begin() const noexcept { return labels_.begin(); }
  auto end() const noexcept { return labels_.end(); }

  friend bool operator==(const LabelIndex& a, const LabelIndex& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> positions_;
};

/// True when the label is nonempty after trimming surrounding whitespace.
bool is_valid_label(std::string_view label) noexcept;

/// Vector of finite reals, each entry tagged with a label.
class LabeledVector {
 public:
  LabeledVector() = default;
  LabeledVector(std::vector<std::string> labels, std::vector<double> values);
  LabeledVector(LabelIndex labels, std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  const LabelIndex& labels() const noexcept { return labels_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::string_view label) const { return values_[labels_.at(label)]; }

  friend bool operator==(const LabeledVector& a, const LabeledVector& b) {
    return a.labels_ == b.labels_ && a.values_ == b.values_;
  }

 private:
  LabelIndex labels_;
  std::vector<double> values_;
};

/// Dense real matrix with labeled rows and columns, stored row-major.
///
/// Immutable once built: every operation below returns a new matrix, so
/// instances can be shared freely between threads.
class LabeledMatrix {
 public:
  LabeledMatrix() = default;

  /// `values` is row-major with |rows| * |cols| entries.
  /// Errors: DuplicateLabel, InvalidLabel, DimensionMismatch, NonFiniteEntry.
  LabeledMatrix(std::vector<std::string> rows, std::vector<std::string> cols,
                std::vector<double> values);
  LabeledMatrix(LabelIndex rows, LabelIndex cols, std::vector<double> values);

  /// Convenience for literals: one inner vector per row.
  static LabeledMatrix from_rows(std::vector<std::string> rows,
                                 std::vector<std::string> cols,
                                 const std::vector<std::vector<double>>& data);

  std::size_t n_rows() const noexcept { return rows_.size(); }
  std::size_t n_cols() const noexcept { return cols_.size(); }
  const LabelIndex& rows() const noexcept { return rows_; }
  const LabelIndex& cols() const noexcept { return cols_; }
  std::span<const double> values() const noexcept { return values_; }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * cols_.size() + j];
  }
  double at(std::string_view row, std::string_view col) const {
    return (*this)(rows_.at(row), cols_.at(col));
  }

  LabeledVector row(std::size_t i) const;
  LabeledVector col(std::size_t j) const;

  /// Exact equality of labels (in order) and entries.
  friend bool operator==(const LabeledMatrix& a, const LabeledMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.values_ == b.values_;
  }

 private:
  LabelIndex rows_;
  LabelIndex cols_;
  std::vector<double> values_;
};

// Construction helpers.
LabeledMatrix zeros(std::vector<std::string> rows, std::vector<std::string> cols);
LabeledMatrix ones(std::vector<std::string> rows, std::vector<std::string> cols);
LabeledMatrix filled(std::vector<std::string> rows, std::vector<std::string> cols,
                     double value);
LabeledMatrix identity(std::vector<std::string> labels);
/// "prefix1", "prefix2", ... "prefixN".
std::vector<std::string> numbered_labels(std::string_view prefix, std::size_t n);

/// 1.0 at each selected label, 0.0 elsewhere. Errors: UnknownLabel.
LabeledVector indicator(const LabelIndex& labels,
                        const std::vector<std::string>& selected);

/// A·v. v must carry exactly A's column labels, in order (LabelMismatch).
LabeledVector matvec(const LabeledMatrix& a, const LabeledVector& v);

LabeledMatrix transpose(const LabeledMatrix& a);

/// A·B. A's column labels must equal B's row labels as ordered lists;
/// use relabel() to coerce deliberately. Errors: DimensionMismatch, LabelMismatch.
LabeledMatrix matmul(const LabeledMatrix& a, const LabeledMatrix& b);

/// Same values under new labels. Empty lists keep the existing labels.
LabeledMatrix relabel(const LabeledMatrix& a, std::vector<std::string> rows,
                      std::vector<std::string> cols);

// Elementwise arithmetic. Binary forms require identical labels per axis.
LabeledMatrix add(const LabeledMatrix& a, const LabeledMatrix& b);
LabeledMatrix subtract(const LabeledMatrix& a, const LabeledMatrix& b);
LabeledMatrix scale(const LabeledMatrix& a, double factor);
LabeledMatrix hadamard_mul(const LabeledMatrix& a, const LabeledMatrix& b);
/// a ÷ (b + epsilon). A zero denominator raises DivisionByZero.
LabeledMatrix hadamard_div(const LabeledMatrix& a, const LabeledMatrix& b,
                           double epsilon = 0.0);

LabeledVector add(const LabeledVector& a, const LabeledVector& b);
LabeledVector subtract(const LabeledVector& a, const LabeledVector& b);

double frobenius_norm(const LabeledMatrix& a);
double frobenius_distance(const LabeledMatrix& a, const LabeledMatrix& b);

/// Reorder rows and columns by label; data travels with its labels.
/// Errors: UnknownLabel, NotAPermutation.
LabeledMatrix permute(const LabeledMatrix& a, const std::vector<std::string>& row_order,
                      const std::vector<std::string>& col_order);

/// Same label sets per axis and, after aligning b to a's order, every entry
/// within tol.
bool label_aligned_equal(const LabeledMatrix& a, const LabeledMatrix& b,
                         double tol = 0.0);

/// Largest |a_ij - b_ij| for identically labeled matrices.
double max_abs_difference(const LabeledMatrix& a, const LabeledMatrix& b);

}  // namespace topicforge
