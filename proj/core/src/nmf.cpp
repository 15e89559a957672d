#include "topicforge/nmf.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <random>
#include <thread>

#include "topicforge/error.hpp"

namespace topicforge {

namespace {

// Row-major scratch matrix for the inner loop; labels are attached only at
// the API boundary.
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Dense() = default;
  Dense(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}
  explicit Dense(const LabeledMatrix& m)
      : rows(m.n_rows()), cols(m.n_cols()), a(m.values().begin(), m.values().end()) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// C = A B
Dense mul(const Dense& x, const Dense& y) {
  Dense c(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    double* dst = c.a.data() + i * c.cols;
    for (std::size_t p = 0; p < x.cols; ++p) {
      const double s = x(i, p);
      if (s == 0.0) continue;
      const double* src = y.a.data() + p * y.cols;
      for (std::size_t j = 0; j < y.cols; ++j) dst[j] += s * src[j];
    }
  }
  return c;
}

// C = Aᵀ B
Dense mul_tn(const Dense& x, const Dense& y) {
  Dense c(x.cols, y.cols);
  for (std::size_t p = 0; p < x.rows; ++p) {
    const double* src = y.a.data() + p * y.cols;
    for (std::size_t i = 0; i < x.cols; ++i) {
      const double s = x(p, i);
      if (s == 0.0) continue;
      double* dst = c.a.data() + i * c.cols;
      for (std::size_t j = 0; j < y.cols; ++j) dst[j] += s * src[j];
    }
  }
  return c;
}

// C = A Bᵀ
Dense mul_nt(const Dense& x, const Dense& y) {
  Dense c(x.rows, y.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double* xi = x.a.data() + i * x.cols;
    for (std::size_t j = 0; j < y.rows; ++j) {
      const double* yj = y.a.data() + j * y.cols;
      double acc = 0.0;
      for (std::size_t p = 0; p < x.cols; ++p) acc += xi[p] * yj[p];
      c(i, j) = acc;
    }
  }
  return c;
}

// target := target ⊙ numer ÷ (denom + epsilon), keeping exact zeros locked.
void multiplicative_update(Dense& target, const Dense& numer, const Dense& denom,
                           double epsilon) {
  for (std::size_t k = 0; k < target.a.size(); ++k) {
    double& x = target.a[k];
    if (x == 0.0) continue;
    const double d = denom.a[k] + epsilon;
    if (d == 0.0) {
      throw Error(ErrorCode::DivisionByZero, "zero update denominator with epsilon = 0");
    }
    x = x * numer.a[k] / d;
    assert(x >= 0.0);
  }
}

void update_h_dense(const Dense& v, const Dense& w, Dense& h, double epsilon) {
  const Dense wtv = mul_tn(w, v);
  const Dense wtw = mul_tn(w, w);
  const Dense wtwh = mul(wtw, h);
  multiplicative_update(h, wtv, wtwh, epsilon);
}

void update_w_dense(const Dense& v, Dense& w, const Dense& h, double epsilon) {
  const Dense vht = mul_nt(v, h);
  const Dense hht = mul_nt(h, h);
  const Dense whht = mul(w, hht);
  multiplicative_update(w, vht, whht, epsilon);
}

// Returns false when some column of w sums to zero.
bool normalize_dense(Dense& w, Dense& h) {
  std::vector<double> sums(w.cols, 0.0);
  for (std::size_t i = 0; i < w.rows; ++i)
    for (std::size_t g = 0; g < w.cols; ++g) sums[g] += w(i, g);
  if (std::any_of(sums.begin(), sums.end(), [](double s) { return !(s > 0.0); })) return false;
  for (std::size_t i = 0; i < w.rows; ++i)
    for (std::size_t g = 0; g < w.cols; ++g) w(i, g) /= sums[g];
  for (std::size_t g = 0; g < h.rows; ++g)
    for (std::size_t j = 0; j < h.cols; ++j) h(g, j) *= sums[g];
  return true;
}

double error_dense(const Dense& v, const Dense& w, const Dense& h) {
  const Dense wh = mul(w, h);
  double sum = 0.0;
  for (std::size_t k = 0; k < v.a.size(); ++k) {
    const double d = v.a[k] - wh.a[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

void step_dense(const Dense& v, Dense& w, Dense& h, const NmfConfig& config) {
  update_h_dense(v, w, h, config.epsilon);
  update_w_dense(v, w, h, config.epsilon);
  if (config.normalize_w && !normalize_dense(w, h)) {
    throw Error(ErrorCode::ZeroColumn, "a column of W collapsed to zero");
  }
}

// Uniform on (0, 1] from the top 53 bits; identical on every platform.
double unit_open_closed(std::mt19937_64& gen) {
  return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

void require_nonnegative(const LabeledMatrix& v) {
  for (double x : v.values()) {
    if (x < 0.0) throw Error(ErrorCode::NegativeInput, "input matrix has a negative entry");
  }
}

void require_rank(const LabeledMatrix& v, std::size_t rank) {
  if (rank == 0) throw Error(ErrorCode::InvalidConfig, "rank must be at least 1");
  const std::size_t limit = std::min(v.n_rows(), v.n_cols());
  if (rank > limit) {
    throw Error(ErrorCode::RankTooLarge, "rank " + std::to_string(rank) +
                                             " exceeds min(n, m) = " + std::to_string(limit));
  }
}

void require_conformable(const LabeledMatrix& v, const LabeledMatrix& w,
                         const LabeledMatrix& h) {
  if (w.n_rows() != v.n_rows() || h.n_cols() != v.n_cols() || w.n_cols() != h.n_rows()) {
    throw Error(ErrorCode::DimensionMismatch, "V, W, H shapes do not conform");
  }
  if (!(w.rows() == v.rows()) || !(h.cols() == v.cols()) || !(w.cols() == h.rows())) {
    throw Error(ErrorCode::LabelMismatch, "V, W, H labels do not conform");
  }
}

struct RunResult {
  Dense w;
  Dense h;
  std::vector<double> history;
  std::size_t iterations = 0;
  bool converged = false;
};

RunResult run_restart(const Dense& v, const LabeledMatrix& labeled_v, const NmfConfig& config,
                      std::uint64_t seed) {
  Factors init = initialize(labeled_v, config.rank, seed);
  RunResult run{Dense(init.w), Dense(init.h), {}, 0, false};
  run.history.reserve(std::min<std::size_t>(config.max_iters, 1u << 16));
  double prev = error_dense(v, run.w, run.h);
  for (std::size_t t = 0; t < config.max_iters; ++t) {
    step_dense(v, run.w, run.h, config);
    const double err = error_dense(v, run.w, run.h);
    run.history.push_back(err);
    run.iterations = t + 1;
    if (std::abs(prev - err) / std::max(prev, 1e-30) < config.rel_tol) {
      run.converged = true;
      break;
    }
    prev = err;
  }
  return run;
}

}  // namespace

void validate(const NmfConfig& config) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (config.rank < 1) fail("rank must be at least 1");
  if (config.max_iters < 1) fail("max_iters must be at least 1");
  if (!(config.rel_tol >= 0.0) || !std::isfinite(config.rel_tol)) fail("rel_tol must be >= 0");
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) fail("epsilon must be > 0");
  if (config.restarts < 1) fail("restarts must be at least 1");
}

std::vector<std::string> topic_labels(std::size_t rank) {
  return numbered_labels("topic-", rank);
}

std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart) noexcept {
  std::uint64_t z = seed + (static_cast<std::uint64_t>(restart) + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Factors initialize(const LabeledMatrix& v, std::size_t rank, std::uint64_t seed) {
  require_nonnegative(v);
  require_rank(v, rank);
  std::mt19937_64 gen(seed);
  std::vector<double> w(v.n_rows() * rank);
  std::vector<double> h(rank * v.n_cols());
  for (double& x : w) x = unit_open_closed(gen);
  for (double& x : h) x = unit_open_closed(gen);
  auto topics = topic_labels(rank);
  return {LabeledMatrix(v.rows(), LabelIndex(topics), std::move(w)),
          LabeledMatrix(LabelIndex(topics), v.cols(), std::move(h))};
}

LabeledMatrix update_h(const LabeledMatrix& v, const LabeledMatrix& w, const LabeledMatrix& h,
                       double epsilon) {
  require_conformable(v, w, h);
  Dense hd(h);
  update_h_dense(Dense(v), Dense(w), hd, epsilon);
  return {h.rows(), h.cols(), std::move(hd.a)};
}

LabeledMatrix update_w(const LabeledMatrix& v, const LabeledMatrix& w, const LabeledMatrix& h,
                       double epsilon) {
  require_conformable(v, w, h);
  Dense wd(w);
  update_w_dense(Dense(v), wd, Dense(h), epsilon);
  return {w.rows(), w.cols(), std::move(wd.a)};
}

Factors normalize_columns(const LabeledMatrix& w, const LabeledMatrix& h) {
  if (w.n_cols() != h.n_rows()) {
    throw Error(ErrorCode::DimensionMismatch, "W columns differ from H rows");
  }
  Dense wd(w);
  Dense hd(h);
  if (!normalize_dense(wd, hd)) {
    throw Error(ErrorCode::ZeroColumn, "W has a column with zero sum");
  }
  return {LabeledMatrix(w.rows(), w.cols(), std::move(wd.a)),
          LabeledMatrix(h.rows(), h.cols(), std::move(hd.a))};
}

StepResult step(const LabeledMatrix& v, const LabeledMatrix& w, const LabeledMatrix& h,
                const NmfConfig& config) {
  require_conformable(v, w, h);
  const Dense vd(v);
  Dense wd(w);
  Dense hd(h);
  step_dense(vd, wd, hd, config);
  const double err = error_dense(vd, wd, hd);
  return {LabeledMatrix(w.rows(), w.cols(), std::move(wd.a)),
          LabeledMatrix(h.rows(), h.cols(), std::move(hd.a)), err};
}

Factorization factorize(const LabeledMatrix& v, const NmfConfig& config,
                        const FactorizeOptions& options) {
  validate(config);
  require_nonnegative(v);
  require_rank(v, config.rank);

  const auto topics = topic_labels(config.rank);
  const bool all_zero =
      std::all_of(v.values().begin(), v.values().end(), [](double x) { return x == 0.0; });
  if (all_zero) {
    // Any nonnegative product fits exactly; iterating would divide 0 by 0.
    Factorization f{zeros(v.rows().labels(), topics), zeros(topics, v.cols().labels()),
                    {}, 0, true, config, 0, std::vector<double>(config.restarts, 0.0)};
    return f;
  }

  const Dense vd(v);
  std::vector<RunResult> runs(config.restarts);
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(config.restarts));

  if (threads == 1) {
    for (std::size_t k = 0; k < config.restarts; ++k)
      runs[k] = run_restart(vd, v, config, restart_seed(config.seed, k));
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t k = next++; k < config.restarts; k = next++)
              runs[k] = run_restart(vd, v, config, restart_seed(config.seed, k));
          } catch (...) {
            failures[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : failures)
      if (e) std::rethrow_exception(e);
  }

  std::vector<double> finals(runs.size());
  std::size_t best = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    finals[k] = runs[k].history.empty() ? 0.0 : runs[k].history.back();
    if (finals[k] < finals[best]) best = k;
  }
  RunResult& r = runs[best];
  return Factorization{LabeledMatrix(v.rows(), LabelIndex(topics), std::move(r.w.a)),
                       LabeledMatrix(LabelIndex(topics), v.cols(), std::move(r.h.a)),
                       std::move(r.history),
                       r.iterations,
                       r.converged,
                       config,
                       best,
                       std::move(finals)};
}

Residual residual(const LabeledMatrix& v, const LabeledMatrix& w, const LabeledMatrix& h) {
  require_conformable(v, w, h);
  LabeledMatrix diff = subtract(v, matmul(w, h));
  const double norm = frobenius_norm(diff);
  return {std::move(diff), norm};
}

Residual residual(const LabeledMatrix& v, const Factorization& f) {
  return residual(v, f.w, f.h);
}

}  // namespace topicforge
