#include "topicforge/porter_stemmer.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace topicforge {

namespace {

// Working buffer plus the stem boundary `j` used by the measure tests.
class Stemmer {
 public:
  explicit Stemmer(std::string word) : b_(std::move(word)) {}

  std::string run() {
    if (b_.size() <= 2) return b_;
    step1ab();
    if (b_.size() > 1) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_;
  }

 private:
  std::string b_;
  std::size_t j_ = 0;  // length of the stem left after removing a matched suffix

  bool cons(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !cons(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in b_[0, j_).
  int measure() const {
    int n = 0;
    std::size_t i = 0;
    while (true) {
      if (i >= j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i >= j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i >= j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (std::size_t i = 0; i < j_; ++i)
      if (!cons(i)) return true;
    return false;
  }

  // b_[0, end) ends with a double consonant.
  bool double_cons(std::size_t end) const {
    if (end < 2) return false;
    if (b_[end - 1] != b_[end - 2]) return false;
    return cons(end - 1);
  }

  // b_[0, end) ends consonant-vowel-consonant, last not w, x or y.
  bool cvc(std::size_t end) const {
    if (end < 3) return false;
    const std::size_t i = end - 1;
    if (!cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char c = b_[i];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view suffix) {
    if (suffix.size() > b_.size()) return false;
    if (b_.compare(b_.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
    j_ = b_.size() - suffix.size();
    return true;
  }

  void set_to(std::string_view replacement) {
    b_.resize(j_);
    b_ += replacement;
  }

  void replace_if_measure_positive(std::string_view replacement) {
    if (measure() > 0) set_to(replacement);
  }

  void step1ab() {
    if (b_.back() == 's') {
      if (ends("sses")) {
        set_to("ss");
      } else if (ends("ies")) {
        set_to("i");
      } else if (b_.size() >= 2 && b_[b_.size() - 2] != 's') {
        b_.pop_back();
      }
    }
    if (ends("eed")) {
      if (measure() > 0) b_.pop_back();
      return;
    }
    bool stripped = false;
    if (ends("ed") && vowel_in_stem()) {
      b_.resize(j_);
      stripped = true;
    } else if (ends("ing") && vowel_in_stem()) {
      b_.resize(j_);
      stripped = true;
    }
    if (!stripped) return;
    j_ = b_.size();
    if (ends("at")) {
      set_to("ate");
    } else if (ends("bl")) {
      set_to("ble");
    } else if (ends("iz")) {
      set_to("ize");
    } else if (double_cons(b_.size())) {
      const char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else {
      j_ = b_.size();
      if (measure() == 1 && cvc(b_.size())) b_ += 'e';
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_.back() = 'i';
  }

  void step2() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 20> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},    {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
    }};
    apply_first(rules);
  }

  void step3() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_first(rules);
  }

  template <std::size_t N>
  void apply_first(const std::array<std::pair<std::string_view, std::string_view>, N>& rules) {
    // Only the longest matching suffix is tried, even if its measure test fails.
    const std::pair<std::string_view, std::string_view>* best = nullptr;
    for (const auto& rule : rules) {
      if (rule.first.size() <= b_.size() &&
          b_.compare(b_.size() - rule.first.size(), rule.first.size(), rule.first) == 0 &&
          (!best || rule.first.size() > best->first.size())) {
        best = &rule;
      }
    }
    if (!best) return;
    ends(best->first);
    replace_if_measure_positive(best->second);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> suffixes{
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
    std::string_view best;
    for (auto s : suffixes) {
      if (s.size() <= b_.size() && b_.compare(b_.size() - s.size(), s.size(), s) == 0 &&
          s.size() > best.size()) {
        best = s;
      }
    }
    if (best.empty()) return;
    ends(best);
    if (best == "ion") {
      if (j_ == 0 || (b_[j_ - 1] != 's' && b_[j_ - 1] != 't')) return;
    }
    if (measure() > 1) b_.resize(j_);
  }

  void step5() {
    j_ = b_.size();
    if (b_.back() == 'e') {
      j_ = b_.size() - 1;
      const int m = measure();
      if (m > 1 || (m == 1 && !cvc(j_))) b_.pop_back();
    }
    j_ = b_.size();
    if (b_.back() == 'l' && double_cons(b_.size()) && measure() > 1) b_.pop_back();
  }
};

}  // namespace

std::string porter_stem(std::string_view word) {
  const bool plain = std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; });
  if (!plain) return std::string(word);
  return Stemmer(std::string(word)).run();
}

}  // namespace topicforge
