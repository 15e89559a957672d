#pragma once

// Shared fixtures and independent numeric oracles for the test binaries.
// Oracles work on plain nested vectors so they share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "topicforge/labeled_matrix.hpp"

#ifndef TOPICFORGE_FIXTURE_DIR
#error "TOPICFORGE_FIXTURE_DIR must be defined by the build"
#endif

namespace tf_test {

using Grid = std::vector<std::vector<double>>;

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(TOPICFORGE_FIXTURE_DIR) / name;
}

inline const std::vector<std::string>& animal_terms() {
  static const std::vector<std::string> t{"venom", "death", "danger", "survive", "madagascar"};
  return t;
}
inline const std::vector<std::string>& animal_docs() {
  static const std::vector<std::string> d{"Jellyfish", "Cobra", "Snail", "Octopus"};
  return d;
}

inline topicforge::LabeledMatrix animals() {
  return topicforge::LabeledMatrix::from_rows(animal_terms(), animal_docs(),
                                              {{32, 44, 1, 18},
                                               {9, 3, 0, 2},
                                               {6, 4, 0, 4},
                                               {2, 0, 0, 1},
                                               {0, 0, 2, 0}});
}

inline const std::vector<std::string>& movie_titles() {
  static const std::vector<std::string> m{"Alien", "Jaws", "Beetlejuice", "Animal House",
                                          "Life of Brian"};
  return m;
}
inline const std::vector<std::string>& movie_people() {
  static const std::vector<std::string> p{"Cindy", "Dora", "Alice", "Becky"};
  return p;
}

// The ratings matrix used for the factorization walkthrough.
inline topicforge::LabeledMatrix movies() {
  return topicforge::LabeledMatrix::from_rows(
      movie_titles(), movie_people(),
      {{4, 5, 4, 1}, {5, 5, 5, 1}, {5, 3, 2, 2}, {4, 2, 1, 5}, {5, 1, 1, 5}});
}

// Reference two-topic factors and their residual, 4 significant digits.
inline const Grid& reference_w2() {
  static const Grid g{{6.968, 1.086}, {7.908, 1.364}, {3.763, 3.558}, {0.5117, 6.448}, {0, 7.197}};
  return g;
}
inline const Grid& reference_h2() {
  static const Grid g{{0.5171, 0.6379, 0.5707, 0}, {0.6658, 0.1897, 0.1095, 0.7133}};
  return g;
}
inline const Grid& reference_residual2() {
  static const Grid g{{-0.3256, 0.3496, -0.09564, 0.2257},
                      {0.002296, -0.3033, 0.337, 0.02677},
                      {0.6857, -0.07508, -0.5374, -0.5376},
                      {-0.5576, 0.4506, 0.001623, 0.4004},
                      {0.2088, -0.365, 0.2117, -0.1333}};
  return g;
}
inline const Grid& reference_w1() {
  static const Grid g{{7.137}, {8.214}, {6.398}, {5.974}, {6.155}};
  return g;
}
inline const Grid& reference_h1() {
  static const Grid g{{0.6709, 0.4898, 0.406, 0.381}};
  return g;
}
inline const Grid& reference_residual1() {
  static const Grid g{{-0.7885, 1.504, 1.102, -1.72},
                      {-0.511, 0.977, 1.665, -2.13},
                      {0.7077, -0.1334, -0.5976, -0.4378},
                      {-0.008175, -0.926, -1.426, 2.724},
                      {0.8703, -2.015, -1.499, 2.655}};
  return g;
}

inline Grid to_grid(const topicforge::LabeledMatrix& m) {
  Grid g(m.n_rows(), std::vector<double>(m.n_cols()));
  for (std::size_t i = 0; i < m.n_rows(); ++i)
    for (std::size_t j = 0; j < m.n_cols(); ++j) g[i][j] = m(i, j);
  return g;
}

inline topicforge::LabeledMatrix from_grid(const Grid& g, const std::string& row_prefix = "r",
                                           const std::string& col_prefix = "c") {
  return topicforge::LabeledMatrix::from_rows(
      topicforge::numbered_labels(row_prefix, g.size()),
      topicforge::numbered_labels(col_prefix, g.at(0).size()), g);
}

// Naive triple loop.
inline Grid naive_matmul(const Grid& a, const Grid& b) {
  Grid c(a.size(), std::vector<double>(b.at(0).size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < b.size(); ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

inline Grid naive_sub(const Grid& a, const Grid& b) {
  Grid c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] -= b[i][j];
  return c;
}

inline double naive_norm(const Grid& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (double x : row) s += x * x;
  return std::sqrt(s);
}

// Largest singular value by power iteration on AᵀA.
inline double top_singular_value(const Grid& a, int iterations = 5000) {
  const std::size_t m = a.at(0).size();
  std::vector<double> x(m, 1.0);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> ax(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < m; ++j) ax[i] += a[i][j] * x[j];
    std::vector<double> y(m, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < m; ++j) y[j] += a[i][j] * ax[i];
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (std::size_t j = 0; j < m; ++j) x[j] = y[j] / norm;
    const double prev = lambda;
    lambda = norm;
    if (it > 10 && std::abs(lambda - prev) <= 1e-15 * lambda) break;
  }
  return std::sqrt(lambda);
}

// ‖A - A_1‖_F for the best rank-1 approximation A_1.
inline double rank1_svd_residual(const Grid& a) {
  const double total = naive_norm(a);
  const double s1 = top_singular_value(a);
  return std::sqrt(std::max(0.0, total * total - s1 * s1));
}

inline Grid random_grid(std::size_t n, std::size_t m, std::uint64_t seed, double lo = 0.0,
                        double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Grid g(n, std::vector<double>(m));
  for (auto& row : g)
    for (double& x : row) x = dist(rng);
  return g;
}

// Uniform on (0,1], drawn independently of the library's initializer.
inline Grid random_positive_grid(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Grid g(n, std::vector<double>(m));
  for (auto& row : g)
    for (double& x : row) x = 1.0 - dist(rng);
  return g;
}

inline Grid random_int_grid(std::size_t n, std::size_t m, std::uint64_t seed, int lo, int hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(lo, hi);
  Grid g(n, std::vector<double>(m));
  for (auto& row : g)
    for (double& x : row) x = dist(rng);
  return g;
}

// Synthetic corpus: `groups` disjoint vocabularies of `vocab` letter-only
// words, `docs_per_group` documents each with `tokens` tokens drawn from its
// group. Words look like "qa", "qb", ... with a group-specific prefix.
struct SyntheticDoc {
  std::string id;
  std::string body;
  std::size_t group;
};

inline std::string group_word(std::size_t group, std::size_t index) {
  std::string w;
  w += static_cast<char>('a' + group);
  w += static_cast<char>('a' + index / 26);
  w += static_cast<char>('a' + index % 26);
  w += "x";
  return w;
}

inline std::vector<SyntheticDoc> synthetic_corpus(std::uint64_t seed, std::size_t groups = 3,
                                                  std::size_t vocab = 20,
                                                  std::size_t docs_per_group = 10,
                                                  std::size_t tokens = 50) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
  std::vector<SyntheticDoc> docs;
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t d = 0; d < docs_per_group; ++d) {
      SyntheticDoc doc;
      doc.id = "doc-" + std::to_string(g) + "-" + std::to_string(d);
      doc.group = g;
      for (std::size_t t = 0; t < tokens; ++t) {
        if (t) doc.body += ' ';
        doc.body += group_word(g, pick(rng));
      }
      docs.push_back(std::move(doc));
    }
  }
  return docs;
}

}  // namespace tf_test
