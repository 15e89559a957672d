#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <utility>

#include "support.hpp"
#include "topicforge/error.hpp"
#include "topicforge/matrix_io.hpp"
#include "topicforge/porter_stemmer.hpp"
#include "topicforge/text_pipeline.hpp"

using namespace topicforge;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::Io;
}

PipelineConfig bare(std::size_t min_count = 0, bool stem = false) {
  PipelineConfig c;
  c.stopwords = {};
  c.min_total_count = min_count;
  c.stem = stem;
  return c;
}

std::vector<double> values_of(const LabeledVector& v) {
  return {v.values().begin(), v.values().end()};
}

}  // namespace

TEST(Porter, PublishedExamples) {
  const std::vector<std::pair<const char*, const char*>> cases = {
      {"caresses", "caress"},     {"ponies", "poni"},         {"ties", "ti"},
      {"caress", "caress"},       {"cats", "cat"},            {"feed", "feed"},
      {"agreed", "agre"},         {"plastered", "plaster"},   {"bled", "bled"},
      {"motoring", "motor"},      {"sing", "sing"},           {"conflated", "conflat"},
      {"troubled", "troubl"},     {"sized", "size"},          {"hopping", "hop"},
      {"tanned", "tan"},          {"falling", "fall"},        {"hissing", "hiss"},
      {"fizzed", "fizz"},         {"failing", "fail"},        {"filing", "file"},
      {"happy", "happi"},         {"sky", "sky"},             {"relational", "relat"},
      {"conditional", "condit"},  {"rational", "ration"},     {"digitizer", "digit"},
      {"operator", "oper"},       {"feudalism", "feudal"},    {"decisiveness", "decis"},
      {"hopefulness", "hope"},    {"callousness", "callous"}, {"formaliti", "formal"},
      {"sensitiviti", "sensit"},  {"sensibiliti", "sensibl"}, {"triplicate", "triplic"},
      {"formative", "form"},      {"formalize", "formal"},    {"electriciti", "electr"},
      {"electrical", "electr"},   {"hopeful", "hope"},        {"goodness", "good"},
      {"revival", "reviv"},       {"allowance", "allow"},     {"inference", "infer"},
      {"airliner", "airlin"},     {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
      {"defensible", "defens"},   {"irritant", "irrit"},      {"replacement", "replac"},
      {"adjustment", "adjust"},   {"dependent", "depend"},    {"adoption", "adopt"},
      {"communism", "commun"},    {"activate", "activ"},      {"angulariti", "angular"},
      {"homologous", "homolog"},  {"effective", "effect"},    {"bowdlerize", "bowdler"},
      {"probate", "probat"},      {"rate", "rate"},           {"cease", "ceas"},
      {"controll", "control"},    {"roll", "roll"},           {"generalizations", "gener"},
      {"oscillators", "oscil"},
  };
  for (const auto& [word, expected] : cases) EXPECT_EQ(porter_stem(word), expected) << word;
}

TEST(Porter, ShortAndForeignWordsUnchanged) {
  EXPECT_EQ(porter_stem("is"), "is");
  EXPECT_EQ(porter_stem("a"), "a");
  EXPECT_EQ(porter_stem(""), "");
  EXPECT_EQ(porter_stem("größen"), "größen");
}

TEST(Stem, DomainVocabulary) {
  EXPECT_EQ(stem("eigenvalues"), stem("eigenvalue"));
  EXPECT_EQ(stem("functions"), stem("function"));
  EXPECT_EQ(stem("matrix"), stem("matrix"));
  EXPECT_EQ(stem("matrices"), "matric");
}

TEST(Stem, IdempotentOnDomainWords) {
  for (const char* w : {"eigenvalues", "functions", "matrix", "vectors", "theorem", "groups",
                        "integration", "probability", "encryption", "algorithm", "geometry",
                        "differential", "equations", "topology", "numbers"}) {
    const auto once = stem(w);
    EXPECT_EQ(stem(once), once) << w;
  }
  // The algorithm is not idempotent in general.
  EXPECT_EQ(stem("agreed"), "agre");
  EXPECT_EQ(stem("agre"), "agr");
}

TEST(Tokenize, Examples) {
  const auto c = default_pipeline_config();
  EXPECT_EQ(tokenize("Euclid's algorithm", c),
            (std::vector<std::string>{"euclid", "s", "algorithm"}));
  EXPECT_TRUE(tokenize("", c).empty());
  EXPECT_EQ(tokenize("RSA encryption", c), (std::vector<std::string>{"rsa", "encryption"}));
}

TEST(Tokenize, SeparatorsAndCase) {
  auto c = default_pipeline_config();
  EXPECT_EQ(tokenize("non-negative 2x2 matrix_factor", c),
            (std::vector<std::string>{"non", "negative", "x", "matrix", "factor"}));
  c.lowercase = false;
  EXPECT_EQ(tokenize("Eigen Value", c), (std::vector<std::string>{"Eigen", "Value"}));
}

TEST(Tokenize, UnicodeLetters) {
  const auto c = default_pipeline_config();
  EXPECT_EQ(tokenize("Gödel's ΣΥΝΟΛΑ Ёлка", c),
            (std::vector<std::string>{"gödel", "s", "συνολα", "ёлка"}));
  // invalid UTF-8 separates
  EXPECT_EQ(tokenize("ab\xFF" "cd", c), (std::vector<std::string>{"ab", "cd"}));
}

TEST(BuildCorpus, HandCountedTwoDocs) {
  const Corpus c = build_corpus({{"doc1", "", "cat cat dog"}, {"doc2", "", "dog fish"}}, bare());
  EXPECT_EQ(c.matrix, LabeledMatrix::from_rows({"cat", "dog", "fish"}, {"doc1", "doc2"},
                                               {{2, 0}, {1, 1}, {0, 1}}));
  EXPECT_EQ(c.vocabulary(), (std::vector<std::string>{"cat", "dog", "fish"}));
  EXPECT_EQ(values_of(term_totals(c)), (std::vector<double>{2, 2, 1}));
  EXPECT_EQ(code_of([] {
              build_corpus({{"doc1", "", "cat cat dog"}, {"doc2", "", "dog fish"}}, bare(4));
            }),
            ErrorCode::EmptyCorpus);
}

TEST(BuildCorpus, StopWords) {
  auto config = bare();
  config.stopwords = {"the", "and"};
  const Corpus c = build_corpus({{"d", "", "the cat and the dog"}}, config);
  EXPECT_EQ(c.vocabulary(), (std::vector<std::string>{"cat", "dog"}));
}

TEST(BuildCorpus, StopWordsMatchAfterStemmingToo) {
  auto config = bare(0, true);
  config.stopwords = {"us"};
  // "use" stems to "us"
  const Corpus c = build_corpus({{"d", "", "use the graph"}}, config);
  EXPECT_EQ(c.vocabulary(), (std::vector<std::string>{"graph", "the"}));
}

TEST(BuildCorpus, Errors) {
  EXPECT_EQ(code_of([] { build_corpus({}, bare()); }), ErrorCode::EmptyCorpus);
  EXPECT_EQ(code_of([] { build_corpus({{"d", "", ""}}, bare()); }), ErrorCode::EmptyCorpus);
  EXPECT_EQ(code_of([] { build_corpus({{"d", "", "a"}, {"d", "", "b"}}, bare()); }),
            ErrorCode::DuplicateDocumentId);
}

TEST(BuildCorpus, TitleIsNotCounted) {
  const Corpus c = build_corpus({{"d", "Zebra", "cat"}}, bare());
  EXPECT_EQ(c.vocabulary(), (std::vector<std::string>{"cat"}));
}

TEST(BuildCorpus, ThresholdStraddle) {
  // cat: 3 total, dog: 4 total, fish: 5 total, spread over documents
  const std::vector<Document> docs = {{"a", "", "cat dog fish fish"},
                                      {"b", "", "cat dog dog fish"},
                                      {"c", "", "cat dog fish fish"}};
  const Corpus at4 = build_corpus(docs, bare(4));
  EXPECT_EQ(at4.vocabulary(), (std::vector<std::string>{"fish", "dog"}));
  const Corpus at3 = build_corpus(docs, bare(3));
  EXPECT_EQ(at3.vocabulary(), (std::vector<std::string>{"fish", "dog", "cat"}));
  const Corpus at5 = build_corpus(docs, bare(5));
  EXPECT_EQ(at5.vocabulary(), (std::vector<std::string>{"fish"}));
}

TEST(BuildCorpus, EigenvalueFormsMergeOnlyWhenStemming) {
  const std::vector<Document> docs = {{"a", "", "Eigenvalue problems"},
                                      {"b", "", "eigenvalues of a matrix"}};
  auto on = default_pipeline_config();
  on.min_total_count = 0;
  const Corpus merged = build_corpus(docs, on);
  EXPECT_TRUE(merged.matrix.rows().contains("eigenvalu"));
  EXPECT_EQ(merged.matrix.at("eigenvalu", "a"), 1.0);
  EXPECT_EQ(merged.matrix.at("eigenvalu", "b"), 1.0);
  auto off = on;
  off.stem = false;
  const Corpus split = build_corpus(docs, off);
  EXPECT_TRUE(split.matrix.rows().contains("eigenvalue"));
  EXPECT_TRUE(split.matrix.rows().contains("eigenvalues"));
  EXPECT_EQ(merged.matrix.n_rows() + 1, split.matrix.n_rows());
}

TEST(BuildCorpus, PipelineFixtureMatchesHandCount) {
  auto config = default_pipeline_config();
  config.min_total_count = 1;
  const Corpus c =
      build_corpus(load_documents_from_dir(tf_test::fixture("pipeline_docs")), config);
  EXPECT_EQ(c.matrix, matrix_from_csv(read_file(tf_test::fixture("pipeline_expected.csv"))));
}

TEST(BuildCorpus, AnimalTextFixture) {
  auto config = default_pipeline_config();
  config.min_total_count = 0;
  config.stem = false;
  const Corpus c = build_corpus(load_documents_from_dir(tf_test::fixture("animal_docs")), config);
  EXPECT_TRUE(label_aligned_equal(c.matrix, tf_test::animals()));
}

TEST(TermTotals, AnimalsKeepRowOrderOnTies) {
  const auto totals = term_totals(tf_test::animals());
  EXPECT_EQ(totals.labels().labels(),
            (std::vector<std::string>{"venom", "death", "danger", "survive", "madagascar"}));
  EXPECT_EQ(values_of(totals), (std::vector<double>{95, 14, 14, 3, 2}));
}

TEST(PipelineProperty, DeterministicAndOrderInvariant) {
  auto config = default_pipeline_config();
  config.min_total_count = 1;
  auto docs = load_documents_from_dir(tf_test::fixture("pipeline_docs"));
  const Corpus a = build_corpus(docs, config);
  const Corpus b = build_corpus(docs, config);
  EXPECT_EQ(a.matrix, b.matrix);
  std::reverse(docs.begin(), docs.end());
  const Corpus r = build_corpus(docs, config);
  EXPECT_TRUE(label_aligned_equal(a.matrix, r.matrix));
  double total_a = 0, total_r = 0;
  for (double x : a.matrix.values()) total_a += x;
  for (double x : r.matrix.values()) total_r += x;
  EXPECT_EQ(total_a, total_r);
}

TEST(PipelineProperty, EntriesAreCountsAndFilteringIsMonotone) {
  const auto synthetic = tf_test::synthetic_corpus(3, 3, 20, 4, 30);
  std::vector<Document> docs;
  for (const auto& d : synthetic) docs.push_back({d.id, "", d.body});
  std::size_t previous_rows = std::numeric_limits<std::size_t>::max();
  for (std::size_t threshold = 0; threshold <= 12; ++threshold) {
    Corpus c;
    try {
      c = build_corpus(docs, bare(threshold));
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::EmptyCorpus);
      previous_rows = 0;
      continue;
    }
    EXPECT_LE(c.matrix.n_rows(), previous_rows);
    previous_rows = c.matrix.n_rows();
    for (double x : c.matrix.values()) {
      EXPECT_GE(x, 0.0);
      EXPECT_EQ(x, std::floor(x));
    }
    const auto totals = term_totals(c);
    const auto sums = matvec(c.matrix, indicator(c.matrix.cols(), c.matrix.cols().labels()));
    for (std::size_t i = 0; i < totals.size(); ++i) {
      EXPECT_GE(totals[i], static_cast<double>(threshold));
      EXPECT_EQ(totals[i], sums.at(totals.labels()[i]));
    }
  }
}

TEST(Loading, StopWordFileAndJsonDocuments) {
  const fs::path dir = fs::temp_directory_path() / "topicforge-pipeline-load";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "stop.txt") << "# comment\nthe\n  And  \n\nof # trailing\n";
  EXPECT_EQ(load_stopwords(dir / "stop.txt"), (std::set<std::string>{"the", "and", "of"}));
  std::ofstream(dir / "docs.json")
      << R"([{"id":"x","title":"T","body":"cat"},{"id":"y","body":"dog"}])";
  const auto docs = load_documents_from_json(dir / "docs.json");
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].title, "T");
  EXPECT_EQ(docs[1].title, "");
  std::ofstream(dir / "bad.json") << R"({"id":"x"})";
  EXPECT_EQ(code_of([&] { load_documents_from_json(dir / "bad.json"); }), ErrorCode::Parse);
  fs::create_directories(dir / "empty");
  EXPECT_EQ(code_of([&] { load_documents_from_dir(dir / "empty"); }), ErrorCode::Io);
  EXPECT_EQ(code_of([&] { read_file(dir / "missing.txt"); }), ErrorCode::Io);
  fs::remove_all(dir);
}

TEST(Loading, DirectoryDocumentsSortedByStem) {
  const auto docs = load_documents_from_dir(tf_test::fixture("animal_docs"));
  std::vector<std::string> ids;
  for (const auto& d : docs) ids.push_back(d.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"Cobra", "Jellyfish", "Octopus", "Snail"}));
}
