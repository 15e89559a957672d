#include "topicforge/text_pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "topicforge/error.hpp"
#include "topicforge/porter_stemmer.hpp"

namespace topicforge {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at text[i] and advances i. Malformed
// sequences yield kInvalid and consume a single byte.
char32_t next_code_point(std::string_view text, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return kInvalid;
  }
  if (i + len > text.size()) {
    ++i;
    return kInvalid;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(text[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++i;
    return kInvalid;
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

struct Range {
  char32_t lo;
  char32_t hi;
};

// Letter blocks (general category L*) for the scripts a classroom corpus is
// likely to contain. Combining marks are not letters.
constexpr Range kLetterRanges[] = {
    {0x41, 0x5A},       {0x61, 0x7A},       {0xAA, 0xAA},       {0xB5, 0xB5},
    {0xBA, 0xBA},       {0xC0, 0xD6},       {0xD8, 0xF6},       {0xF8, 0x2C1},
    {0x2C6, 0x2D1},     {0x2E0, 0x2E4},     {0x370, 0x374},     {0x376, 0x377},
    {0x37A, 0x37D},     {0x37F, 0x37F},     {0x386, 0x386},     {0x388, 0x3FF},
    {0x400, 0x481},     {0x48A, 0x52F},     {0x531, 0x556},     {0x561, 0x587},
    {0x5D0, 0x5EA},     {0x620, 0x64A},     {0x671, 0x6D3},     {0x904, 0x939},
    {0xE01, 0xE30},     {0x10A0, 0x10FF},   {0x1E00, 0x1FBC},   {0x1FC2, 0x1FCC},
    {0x1FD0, 0x1FDB},   {0x1FE0, 0x1FEC},   {0x1FF2, 0x1FFC},   {0x3041, 0x3096},
    {0x30A1, 0x30FA},   {0x3400, 0x4DBF},   {0x4E00, 0x9FFF},   {0xAC00, 0xD7A3},
    {0xF900, 0xFAFF},   {0xFF21, 0xFF3A},   {0xFF41, 0xFF5A},
};

bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp == 0x3F6) return false;  // Greek reversed lunate epsilon symbol (Sm)
  for (const auto& r : kLetterRanges)
    if (cp >= r.lo && cp <= r.hi) return true;
  return false;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0xC0) return cp;
  if ((cp >= 0xC0 && cp <= 0xDE && cp != 0xD7)) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x130) return 'i';
    if (cp == 0x178) return 0xFF;
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
      return (cp % 2 == 1) ? cp + 1 : cp;
    }
    if (cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x386 && cp <= 0x38F) {
    switch (cp) {
      case 0x386: return 0x3AC;
      case 0x388: return 0x3AD;
      case 0x389: return 0x3AE;
      case 0x38A: return 0x3AF;
      case 0x38C: return 0x3CC;
      case 0x38E: return 0x3CD;
      case 0x38F: return 0x3CE;
      default: return cp;
    }
  }
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if ((cp >= 0x460 && cp <= 0x481) || (cp >= 0x48A && cp <= 0x4BF) ||
      (cp >= 0x4D0 && cp <= 0x52F)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x531 && cp <= 0x556) return cp + 0x30;
  if (cp >= 0x1E00 && cp <= 0x1EFF) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;
  return cp;
}

}  // namespace

PipelineConfig default_pipeline_config() {
  PipelineConfig config;
  config.stopwords = default_stopwords();
  return config;
}

Corpus Corpus::from_matrix(LabeledMatrix m) {
  Corpus c;
  c.config.min_total_count = 0;
  c.config.stem = false;
  c.matrix = std::move(m);
  return c;
}

std::vector<std::string> tokenize(std::string_view text, const PipelineConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = next_code_point(text, i);
    if (cp != kInvalid && is_letter(cp)) {
      append_utf8(current, config.lowercase ? to_lower(cp) : cp);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string stem(std::string_view token) { return porter_stem(token); }

Corpus build_corpus(std::vector<Document> documents, const PipelineConfig& config) {
  if (documents.empty()) throw Error(ErrorCode::EmptyCorpus, "no documents");
  std::vector<std::string> ids;
  ids.reserve(documents.size());
  for (const auto& d : documents) ids.push_back(d.id);
  try {
    LabelIndex check(ids);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DuplicateLabel) {
      throw Error(ErrorCode::DuplicateDocumentId, e.what());
    }
    throw;
  }

  const std::size_t m = documents.size();
  std::map<std::string, std::vector<double>> counts;
  for (std::size_t j = 0; j < m; ++j) {
    for (auto& token : tokenize(documents[j].body, config)) {
      if (config.stopwords.contains(token)) continue;
      std::string term = config.stem ? porter_stem(token) : std::move(token);
      if (config.stem && config.stopwords.contains(term)) continue;
      auto [it, inserted] = counts.try_emplace(std::move(term));
      if (inserted) it->second.assign(m, 0.0);
      it->second[j] += 1.0;
    }
  }

  struct Row {
    const std::string* term;
    const std::vector<double>* values;
    double total;
  };
  std::vector<Row> rows;
  for (const auto& [term, values] : counts) {
    double total = 0.0;
    for (double x : values) total += x;
    if (total >= static_cast<double>(config.min_total_count)) {
      rows.push_back({&term, &values, total});
    }
  }
  if (rows.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "no term survives filtering (min_total_count = " +
                                            std::to_string(config.min_total_count) + ")");
  }
  // counts is a std::map, so rows already arrive in lexicographic order.
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.total > b.total; });

  std::vector<std::string> terms;
  std::vector<double> values;
  terms.reserve(rows.size());
  values.reserve(rows.size() * m);
  for (const auto& r : rows) {
    terms.push_back(*r.term);
    values.insert(values.end(), r.values->begin(), r.values->end());
  }
  Corpus corpus;
  corpus.matrix = LabeledMatrix(std::move(terms), std::move(ids), std::move(values));
  corpus.documents = std::move(documents);
  corpus.config = config;
  return corpus;
}

LabeledVector term_totals(const LabeledMatrix& matrix) {
  std::vector<std::pair<std::string, double>> totals;
  totals.reserve(matrix.n_rows());
  for (std::size_t i = 0; i < matrix.n_rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < matrix.n_cols(); ++j) sum += matrix(i, j);
    totals.emplace_back(matrix.rows()[i], sum);
  }
  // Ties keep row order; built corpora already order ties lexicographically.
  std::stable_sort(totals.begin(), totals.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> labels;
  std::vector<double> values;
  for (auto& [t, v] : totals) {
    labels.push_back(std::move(t));
    values.push_back(v);
  }
  return {std::move(labels), std::move(values)};
}

LabeledVector term_totals(const Corpus& corpus) { return term_totals(corpus.matrix); }

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      "a",          "about",   "above",   "after",   "again",   "against", "all",
      "also",       "am",      "an",      "and",     "any",     "are",     "as",
      "at",         "be",      "because", "been",    "before",  "being",   "below",
      "between",    "both",    "but",     "by",      "can",     "could",   "d",
      "did",        "do",      "does",    "doing",   "down",    "during",  "each",
      "etc",        "few",     "for",     "from",    "further", "had",     "has",
      "have",       "having",  "he",      "her",     "here",    "hers",    "herself",
      "him",        "himself", "his",     "how",     "i",       "if",      "in",
      "into",       "is",      "it",      "its",     "itself",  "just",    "ll",
      "m",          "may",     "me",      "might",   "more",    "most",    "must",
      "my",         "myself",  "no",      "nor",     "not",     "now",     "o",
      "of",         "off",     "on",      "once",    "only",    "or",      "other",
      "our",        "ours",    "ourselves", "out",   "over",    "own",     "re",
      "s",          "same",    "shall",   "she",     "should",  "so",      "some",
      "such",       "t",       "than",    "that",    "the",     "their",   "theirs",
      "them",       "themselves", "then", "there",   "these",   "they",    "this",
      "those",      "through", "to",      "too",     "under",   "until",   "up",
      "us",         "ve",      "very",    "was",     "we",      "were",    "what",
      "when",       "where",   "which",   "while",   "who",     "whom",    "why",
      "will",       "with",    "would",   "y",       "you",     "your",    "yours",
      "yourself",   "yourselves",
  };
  return words;
}

std::set<std::string> parse_stopwords(std::string_view text) {
  std::set<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string word = line.substr(first, last - first + 1);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.insert(std::move(word));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error reading " + path.string());
  return buf.str();
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
  return parse_stopwords(read_file(path));
}

std::vector<Document> load_documents_from_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::Io, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::Io, "cannot list " + dir.string() + ": " + ec.message());
  if (files.empty()) throw Error(ErrorCode::Io, "no .txt documents in " + dir.string());
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& f : files) {
    std::string stem_name = f.stem().string();
    docs.push_back({stem_name, stem_name, read_file(f)});
  }
  return docs;
}

std::vector<Document> load_documents_from_json(const std::filesystem::path& file) {
  const std::string text = read_file(file);
  try {
    auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw Error(ErrorCode::Parse, "document JSON must be an array");
    std::vector<Document> docs;
    for (const auto& d : j) {
      docs.push_back({d.at("id").get<std::string>(), d.value("title", std::string()),
                      d.value("body", std::string())});
    }
    return docs;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, file.string() + ": " + e.what());
  }
}

}  // namespace topicforge
