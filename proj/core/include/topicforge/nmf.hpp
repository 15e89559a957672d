#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "topicforge/labeled_matrix.hpp"

namespace topicforge {

/// Solver settings for V ≈ WH under the Frobenius objective.
struct NmfConfig {
  std::size_t rank = 2;
  std::size_t max_iters = 2000;
  /// Stop once |e(t-1) - e(t)| / max(e(t-1), 1e-30) falls below this.
  double rel_tol = 1e-7;
  /// Added to every update denominator, never to numerators.
  double epsilon = 1e-12;
  std::size_t restarts = 1;
  std::uint64_t seed = 0;
  /// Rescale W columns to unit sum after each W update (H compensates).
  bool normalize_w = false;

  friend bool operator==(const NmfConfig&, const NmfConfig&) = default;
};

/// Throws InvalidConfig when any field is out of range.
void validate(const NmfConfig& config);

/// Result of one factorization run (the best of all restarts).
struct Factorization {
  LabeledMatrix w;  ///< n x r; rows = V rows, cols = topic labels
  LabeledMatrix h;  ///< r x m; rows = topic labels, cols = V cols
  /// Frobenius error ‖V - WH‖ after each iteration.
  std::vector<double> residual_history;
  std::size_t iterations = 0;
  bool converged = false;
  NmfConfig config;
  std::size_t restart_index = 0;
  /// Final error of every restart, indexed by restart.
  std::vector<double> restart_errors;

  std::size_t rank() const noexcept { return w.n_cols(); }
  /// Last entry of residual_history; 0 when no iteration ran.
  double final_error() const noexcept {
    return residual_history.empty() ? 0.0 : residual_history.back();
  }
};

struct Factors {
  LabeledMatrix w;
  LabeledMatrix h;
};

struct StepResult {
  LabeledMatrix w;
  LabeledMatrix h;
  double error = 0.0;
};

/// Default topic labels "topic-1" .. "topic-r".
std::vector<std::string> topic_labels(std::size_t rank);

/// Per-restart seed: a splitmix64 finalizer over seed + (restart + 1) * golden gamma.
std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart) noexcept;

/// W then H filled with i.i.d. uniform (0,1] draws from mt19937_64(seed).
/// Errors: NegativeInput, RankTooLarge, InvalidConfig (rank 0).
Factors initialize(const LabeledMatrix& v, std::size_t rank, std::uint64_t seed);

/// H ⊙ (WᵀV) ÷ (WᵀWH + epsilon). Entries that are exactly zero stay zero.
LabeledMatrix update_h(const LabeledMatrix& v, const LabeledMatrix& w,
                       const LabeledMatrix& h, double epsilon);

/// W ⊙ (VHᵀ) ÷ (WHHᵀ + epsilon).
LabeledMatrix update_w(const LabeledMatrix& v, const LabeledMatrix& w,
                       const LabeledMatrix& h, double epsilon);

/// Scales W columns to unit sum and H rows by the old sums, so WH is kept.
/// A column with zero sum raises ZeroColumn.
Factors normalize_columns(const LabeledMatrix& w, const LabeledMatrix& h);

/// One iteration: update_h, update_w, then normalize_columns when enabled.
StepResult step(const LabeledMatrix& v, const LabeledMatrix& w, const LabeledMatrix& h,
                const NmfConfig& config);

struct FactorizeOptions {
  /// Worker threads for restarts; 0 picks hardware concurrency. The result
  /// does not depend on this value.
  unsigned threads = 0;
};

/// Best-of-`restarts` multiplicative-update factorization.
/// Errors: NegativeInput, RankTooLarge, InvalidConfig.
Factorization factorize(const LabeledMatrix& v, const NmfConfig& config,
                        const FactorizeOptions& options = {});

struct Residual {
  LabeledMatrix matrix;  ///< V - WH
  double norm = 0.0;
};

Residual residual(const LabeledMatrix& v, const Factorization& f);
Residual residual(const LabeledMatrix& v, const LabeledMatrix& w, const LabeledMatrix& h);

}  // namespace topicforge
