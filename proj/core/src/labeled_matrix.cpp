#include "topicforge/labeled_matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include "topicforge/error.hpp"

namespace topicforge {

namespace {

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

void require_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::NonFiniteEntry,
                  "entry " + std::to_string(i) + " is not finite");
    }
  }
}

void require_same_axes(const LabeledMatrix& a, const LabeledMatrix& b,
                       std::string_view op) {
  if (a.n_rows() != b.n_rows() || a.n_cols() != b.n_cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(op) + ": shapes " + std::to_string(a.n_rows()) + "x" +
                    std::to_string(a.n_cols()) + " and " + std::to_string(b.n_rows()) +
                    "x" + std::to_string(b.n_cols()) + " differ");
  }
  if (!(a.rows() == b.rows()) || !(a.cols() == b.cols())) {
    throw Error(ErrorCode::LabelMismatch, std::string(op) + ": labels differ");
  }
}

template <typename Fn>
LabeledMatrix zip(const LabeledMatrix& a, const LabeledMatrix& b, std::string_view op,
                  Fn fn) {
  require_same_axes(a, b, op);
  auto av = a.values();
  auto bv = b.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < av.size(); ++i) out[i] = fn(av[i], bv[i]);
  return {a.rows(), a.cols(), std::move(out)};
}

std::vector<std::size_t> permutation_of(const LabelIndex& axis,
                                        const std::vector<std::string>& order) {
  if (order.size() != axis.size()) {
    throw Error(ErrorCode::NotAPermutation,
                "order lists " + std::to_string(order.size()) + " labels, axis has " +
                    std::to_string(axis.size()));
  }
  std::vector<std::size_t> positions;
  std::vector<bool> seen(axis.size(), false);
  positions.reserve(order.size());
  for (const auto& label : order) {
    std::size_t p = axis.at(label);
    if (seen[p]) throw Error(ErrorCode::NotAPermutation, "label repeated: " + quoted(label));
    seen[p] = true;
    positions.push_back(p);
  }
  return positions;
}

}  // namespace

bool is_valid_label(std::string_view label) noexcept {
  return std::any_of(label.begin(), label.end(),
                     [](unsigned char c) { return !std::isspace(c); });
}

LabelIndex::LabelIndex(std::vector<std::string> labels) : labels_(std::move(labels)) {
  positions_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!is_valid_label(labels_[i])) {
      throw Error(ErrorCode::InvalidLabel, "blank label at position " + std::to_string(i));
    }
    if (!positions_.emplace(labels_[i], i).second) {
      throw Error(ErrorCode::DuplicateLabel, "duplicate label " + quoted(labels_[i]));
    }
  }
}

std::optional<std::size_t> LabelIndex::find(std::string_view label) const {
  auto it = positions_.find(std::string(label));
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

std::size_t LabelIndex::at(std::string_view label) const {
  if (auto p = find(label)) return *p;
  throw Error(ErrorCode::UnknownLabel, "unknown label " + quoted(label));
}

LabeledVector::LabeledVector(std::vector<std::string> labels, std::vector<double> values)
    : LabeledVector(LabelIndex(std::move(labels)), std::move(values)) {}

LabeledVector::LabeledVector(LabelIndex labels, std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
  if (labels_.size() != values_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(labels_.size()) + " labels for " +
                    std::to_string(values_.size()) + " values");
  }
  require_finite(values_);
}

LabeledMatrix::LabeledMatrix(std::vector<std::string> rows, std::vector<std::string> cols,
                             std::vector<double> values)
    : LabeledMatrix(LabelIndex(std::move(rows)), LabelIndex(std::move(cols)),
                    std::move(values)) {}

LabeledMatrix::LabeledMatrix(LabelIndex rows, LabelIndex cols, std::vector<double> values)
    : rows_(std::move(rows)), cols_(std::move(cols)), values_(std::move(values)) {
  if (rows_.empty() || cols_.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix needs at least one row and column");
  }
  if (values_.size() != rows_.size() * cols_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(values_.size()) + " values for a " +
                    std::to_string(rows_.size()) + "x" + std::to_string(cols_.size()) +
                    " matrix");
  }
  require_finite(values_);
}

LabeledMatrix LabeledMatrix::from_rows(std::vector<std::string> rows,
                                       std::vector<std::string> cols,
                                       const std::vector<std::vector<double>>& data) {
  std::vector<double> flat;
  for (const auto& r : data) {
    if (r.size() != cols.size()) {
      throw Error(ErrorCode::DimensionMismatch, "ragged row in matrix literal");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  if (data.size() != rows.size()) {
    throw Error(ErrorCode::DimensionMismatch, "row count differs from row labels");
  }
  return {std::move(rows), std::move(cols), std::move(flat)};
}

LabeledVector LabeledMatrix::row(std::size_t i) const {
  auto first = values_.begin() + static_cast<std::ptrdiff_t>(i * n_cols());
  return {cols_, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n_cols()))};
}

LabeledVector LabeledMatrix::col(std::size_t j) const {
  std::vector<double> out(n_rows());
  for (std::size_t i = 0; i < n_rows(); ++i) out[i] = (*this)(i, j);
  return {rows_, std::move(out)};
}

LabeledMatrix filled(std::vector<std::string> rows, std::vector<std::string> cols,
                     double value) {
  std::vector<double> v(rows.size() * cols.size(), value);
  return {std::move(rows), std::move(cols), std::move(v)};
}

LabeledMatrix zeros(std::vector<std::string> rows, std::vector<std::string> cols) {
  return filled(std::move(rows), std::move(cols), 0.0);
}

LabeledMatrix ones(std::vector<std::string> rows, std::vector<std::string> cols) {
  return filled(std::move(rows), std::move(cols), 1.0);
}

LabeledMatrix identity(std::vector<std::string> labels) {
  const std::size_t n = labels.size();
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto copy = labels;
  return {std::move(labels), std::move(copy), std::move(v)};
}

std::vector<std::string> numbered_labels(std::string_view prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

LabeledVector indicator(const LabelIndex& labels, const std::vector<std::string>& selected) {
  std::vector<double> v(labels.size(), 0.0);
  for (const auto& s : selected) v[labels.at(s)] = 1.0;
  return {labels, std::move(v)};
}

LabeledVector matvec(const LabeledMatrix& a, const LabeledVector& v) {
  if (v.size() != a.n_cols()) {
    throw Error(ErrorCode::LabelMismatch, "vector length differs from column count");
  }
  if (!(v.labels() == a.cols())) {
    throw Error(ErrorCode::LabelMismatch, "vector labels differ from column labels");
  }
  std::vector<double> out(a.n_rows(), 0.0);
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.n_cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return {a.rows(), std::move(out)};
}

LabeledMatrix transpose(const LabeledMatrix& a) {
  const std::size_t n = a.n_rows();
  const std::size_t m = a.n_cols();
  std::vector<double> out(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out[j * n + i] = a(i, j);
  return {a.cols(), a.rows(), std::move(out)};
}

LabeledMatrix matmul(const LabeledMatrix& a, const LabeledMatrix& b) {
  if (a.n_cols() != b.n_rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "inner dimensions " + std::to_string(a.n_cols()) + " and " +
                    std::to_string(b.n_rows()) + " differ");
  }
  if (!(a.cols() == b.rows())) {
    throw Error(ErrorCode::LabelMismatch, "inner labels differ; relabel() to coerce");
  }
  const std::size_t n = a.n_rows();
  const std::size_t k = a.n_cols();
  const std::size_t m = b.n_cols();
  auto av = a.values();
  auto bv = b.values();
  std::vector<double> out(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* dst = out.data() + i * m;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = av[i * k + p];
      const double* src = bv.data() + p * m;
      for (std::size_t j = 0; j < m; ++j) dst[j] += s * src[j];
    }
  }
  return {a.rows(), b.cols(), std::move(out)};
}

LabeledMatrix relabel(const LabeledMatrix& a, std::vector<std::string> rows,
                      std::vector<std::string> cols) {
  LabelIndex r = rows.empty() ? a.rows() : LabelIndex(std::move(rows));
  LabelIndex c = cols.empty() ? a.cols() : LabelIndex(std::move(cols));
  auto v = a.values();
  return {std::move(r), std::move(c), std::vector<double>(v.begin(), v.end())};
}

LabeledMatrix add(const LabeledMatrix& a, const LabeledMatrix& b) {
  return zip(a, b, "add", [](double x, double y) { return x + y; });
}

LabeledMatrix subtract(const LabeledMatrix& a, const LabeledMatrix& b) {
  return zip(a, b, "subtract", [](double x, double y) { return x - y; });
}

LabeledMatrix hadamard_mul(const LabeledMatrix& a, const LabeledMatrix& b) {
  return zip(a, b, "hadamard_mul", [](double x, double y) { return x * y; });
}

LabeledMatrix hadamard_div(const LabeledMatrix& a, const LabeledMatrix& b, double epsilon) {
  return zip(a, b, "hadamard_div", [epsilon](double x, double y) {
    const double d = y + epsilon;
    if (d == 0.0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    return x / d;
  });
}

LabeledMatrix scale(const LabeledMatrix& a, double factor) {
  auto v = a.values();
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [factor](double x) { return x * factor; });
  return {a.rows(), a.cols(), std::move(out)};
}

LabeledVector add(const LabeledVector& a, const LabeledVector& b) {
  if (!(a.labels() == b.labels())) throw Error(ErrorCode::LabelMismatch, "add: labels differ");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return {a.labels(), std::move(out)};
}

LabeledVector subtract(const LabeledVector& a, const LabeledVector& b) {
  if (!(a.labels() == b.labels())) {
    throw Error(ErrorCode::LabelMismatch, "subtract: labels differ");
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return {a.labels(), std::move(out)};
}

double frobenius_norm(const LabeledMatrix& a) {
  double sum = 0.0;
  for (double x : a.values()) sum += x * x;
  return std::sqrt(sum);
}

double frobenius_distance(const LabeledMatrix& a, const LabeledMatrix& b) {
  require_same_axes(a, b, "frobenius_distance");
  auto av = a.values();
  auto bv = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    const double d = av[i] - bv[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

LabeledMatrix permute(const LabeledMatrix& a, const std::vector<std::string>& row_order,
                      const std::vector<std::string>& col_order) {
  auto rp = permutation_of(a.rows(), row_order);
  auto cp = permutation_of(a.cols(), col_order);
  std::vector<double> out;
  out.reserve(a.values().size());
  for (std::size_t i : rp)
    for (std::size_t j : cp) out.push_back(a(i, j));
  return {row_order, col_order, std::move(out)};
}

bool label_aligned_equal(const LabeledMatrix& a, const LabeledMatrix& b, double tol) {
  if (a.n_rows() != b.n_rows() || a.n_cols() != b.n_cols()) return false;
  std::vector<std::size_t> rmap(a.n_rows());
  std::vector<std::size_t> cmap(a.n_cols());
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    auto p = b.rows().find(a.rows()[i]);
    if (!p) return false;
    rmap[i] = *p;
  }
  for (std::size_t j = 0; j < a.n_cols(); ++j) {
    auto p = b.cols().find(a.cols()[j]);
    if (!p) return false;
    cmap[j] = *p;
  }
  for (std::size_t i = 0; i < a.n_rows(); ++i)
    for (std::size_t j = 0; j < a.n_cols(); ++j)
      if (!(std::abs(a(i, j) - b(rmap[i], cmap[j])) <= tol)) return false;
  return true;
}

double max_abs_difference(const LabeledMatrix& a, const LabeledMatrix& b) {
  require_same_axes(a, b, "max_abs_difference");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

}  // namespace topicforge
