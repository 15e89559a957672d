#include "topicforge/topic_model.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

#include "topicforge/error.hpp"

namespace topicforge {

namespace {

std::vector<TermWeight> sorted_column(const LabeledMatrix& w, std::size_t g, std::size_t k) {
  if (k < 1 || k > w.n_rows()) {
    throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " outside [1, " +
                                            std::to_string(w.n_rows()) + "]");
  }
  std::vector<TermWeight> all;
  all.reserve(w.n_rows());
  for (std::size_t i = 0; i < w.n_rows(); ++i) all.push_back({w.rows()[i], w(i, g)});
  auto by_weight = [](const TermWeight& a, const TermWeight& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.term < b.term;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                    by_weight);
  all.resize(k);
  return all;
}

void require_new_name(const std::vector<std::string>& names, std::size_t g,
                      const std::string& name) {
  if (!is_valid_label(name)) throw Error(ErrorCode::InvalidLabel, "topic name is blank");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i != g && names[i] == name) {
      throw Error(ErrorCode::DuplicateName, "topic name '" + name + "' already in use");
    }
  }
}

std::string fmt(double x, int precision) {
  std::ostringstream out;
  out << std::setprecision(precision) << x;
  return out.str();
}

// Display width in code points, so UTF-8 labels line up.
std::size_t width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string pad(std::string_view s, std::size_t w, bool right = false) {
  const std::size_t n = width(s);
  std::string fill(w > n ? w - n : 0, ' ');
  return right ? fill + std::string(s) : std::string(s) + fill;
}

}  // namespace

std::size_t resolve_topic(const LabelIndex& topics, std::string_view ref) {
  if (auto p = topics.find(ref)) return *p;
  std::size_t index = 0;
  auto [ptr, ec] = std::from_chars(ref.data(), ref.data() + ref.size(), index);
  if (ec == std::errc() && ptr == ref.data() + ref.size() && index >= 1 &&
      index <= topics.size()) {
    return index - 1;
  }
  throw Error(ErrorCode::UnknownTopic, "unknown topic '" + std::string(ref) + "'");
}

std::vector<TermWeight> top_terms(const Factorization& f, std::string_view topic,
                                  std::size_t k) {
  return sorted_column(f.w, resolve_topic(f.w.cols(), topic), k);
}

std::vector<TopicLoading> loadings(const Factorization& f, std::string_view document) {
  auto j = f.h.cols().find(document);
  if (!j) {
    throw Error(ErrorCode::UnknownDocument, "unknown document '" + std::string(document) + "'");
  }
  std::vector<TopicLoading> out;
  for (std::size_t g = 0; g < f.h.n_rows(); ++g) out.push_back({f.h.rows()[g], f.h(g, *j)});
  return out;
}

LabeledMatrix rank_one_term(const Factorization& f, std::string_view topic) {
  const std::size_t g = resolve_topic(f.w.cols(), topic);
  const std::size_t n = f.w.n_rows();
  const std::size_t m = f.h.n_cols();
  std::vector<double> out(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out[i * m + j] = f.w(i, g) * f.h(g, j);
  return {f.w.rows(), f.h.cols(), std::move(out)};
}

LabeledMatrix reconstruct(const Factorization& f) { return matmul(f.w, f.h); }

Factorization rename_topic(const Factorization& f, std::string_view topic,
                           const std::string& name) {
  const std::size_t g = resolve_topic(f.w.cols(), topic);
  auto names = f.w.cols().labels();
  require_new_name(names, g, name);
  names[g] = name;
  Factorization out = f;
  out.w = relabel(f.w, {}, names);
  out.h = relabel(f.h, names, {});
  return out;
}

TopicView make_topic_view(const Factorization& f, std::size_t k) {
  TopicView view;
  view.names = f.w.cols().labels();
  for (std::size_t g = 0; g < f.rank(); ++g) view.top_terms.push_back(sorted_column(f.w, g, k));
  view.loadings = f.h;
  return view;
}

TopicView name_topic(const TopicView& view, std::string_view topic, const std::string& name) {
  const std::size_t g = resolve_topic(view.loadings.rows(), topic);
  require_new_name(view.names, g, name);
  TopicView out = view;
  out.names[g] = name;
  out.loadings = relabel(view.loadings, out.names, {});
  return out;
}

std::string render_topic_report(const TopicView& view, const RenderOptions& options) {
  std::ostringstream out;
  const std::size_t r = view.names.size();
  std::vector<std::size_t> term_w(r, 0);
  std::vector<std::size_t> weight_w(r, 0);
  std::vector<std::vector<std::string>> weights(r);
  std::size_t depth = 0;
  for (std::size_t g = 0; g < r; ++g) {
    term_w[g] = width(view.names[g]);
    for (const auto& tw : view.top_terms[g]) {
      term_w[g] = std::max(term_w[g], width(tw.term));
      weights[g].push_back(fmt(tw.weight, options.precision));
      weight_w[g] = std::max(weight_w[g], weights[g].back().size());
    }
    depth = std::max(depth, view.top_terms[g].size());
  }
  auto column_width = [&](std::size_t g) { return term_w[g] + 2 + weight_w[g]; };
  const std::string gap = "    ";
  for (std::size_t g = 0; g < r; ++g) {
    if (g) out << gap;
    out << pad(view.names[g], column_width(g));
  }
  out << '\n';
  for (std::size_t g = 0; g < r; ++g) {
    if (g) out << gap;
    out << std::string(column_width(g), '-');
  }
  out << '\n';
  for (std::size_t row = 0; row < depth; ++row) {
    for (std::size_t g = 0; g < r; ++g) {
      if (g) out << gap;
      if (row < view.top_terms[g].size()) {
        out << pad(view.top_terms[g][row].term, term_w[g] + 2)
            << pad(weights[g][row], weight_w[g], true);
      } else {
        out << std::string(column_width(g), ' ');
      }
    }
    out << '\n';
  }

  const auto& h = view.loadings;
  std::size_t label_w = 0;
  for (const auto& name : h.rows()) label_w = std::max(label_w, width(name));
  std::vector<std::vector<std::string>> cells(h.n_rows(), std::vector<std::string>(h.n_cols()));
  std::vector<std::size_t> col_w(h.n_cols());
  for (std::size_t j = 0; j < h.n_cols(); ++j) col_w[j] = width(h.cols()[j]);
  for (std::size_t g = 0; g < h.n_rows(); ++g) {
    for (std::size_t j = 0; j < h.n_cols(); ++j) {
      double x = h(g, j);
      if (options.threshold && x < *options.threshold) x = 0.0;
      cells[g][j] = fmt(x, options.precision);
      col_w[j] = std::max(col_w[j], cells[g][j].size());
    }
  }
  out << "\nloadings\n" << std::string(label_w, ' ');
  for (std::size_t j = 0; j < h.n_cols(); ++j) out << "  " << pad(h.cols()[j], col_w[j], true);
  out << '\n';
  for (std::size_t g = 0; g < h.n_rows(); ++g) {
    out << pad(h.rows()[g], label_w);
    for (std::size_t j = 0; j < h.n_cols(); ++j) out << "  " << pad(cells[g][j], col_w[j], true);
    out << '\n';
  }
  return out.str();
}

}  // namespace topicforge
