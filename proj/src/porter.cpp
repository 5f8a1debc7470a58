#include "lmrank/porter.hpp"

#include <array>
#include <cstddef>

namespace lmrank {
namespace {

bool is_consonant(const std::string& w, std::size_t i) {
  char c = w[i];
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return false;
    case 'y':
      return i == 0 ? true : !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// m in the [C](VC)^m[V] decomposition of w[0..len).
int measure(const std::string& w, std::size_t len) {
  int m = 0;
  std::size_t i = 0;
  while (i < len && is_consonant(w, i)) ++i;
  while (i < len) {
    while (i < len && !is_consonant(w, i)) ++i;
    if (i == len) break;
    ++m;
    while (i < len && is_consonant(w, i)) ++i;
  }
  return m;
}

bool contains_vowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

bool ends_double_consonant(const std::string& w, std::size_t len) {
  return len >= 2 && w[len - 1] == w[len - 2] && is_consonant(w, len - 1);
}

// *o: stem ends cvc where the final c is not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
  if (len < 3) return false;
  char last = w[len - 1];
  return is_consonant(w, len - 3) && !is_consonant(w, len - 2) &&
         is_consonant(w, len - 1) && last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Within a step, only the longest matching suffix is considered; its
// condition is tested and the step ends either way.
template <std::size_t N>
const Rule* longest_match(const std::string& w, const std::array<Rule, N>& rules) {
  const Rule* best = nullptr;
  for (const Rule& r : rules) {
    if (ends_with(w, r.suffix) &&
        (best == nullptr || r.suffix.size() > best->suffix.size()))
      best = &r;
  }
  return best;
}

void apply(std::string& w, const Rule& r) {
  w.resize(w.size() - r.suffix.size());
  w.append(r.replacement);
}

void step1a(std::string& w) {
  static constexpr std::array<Rule, 4> rules{{
      {"sses", "ss"}, {"ies", "i"}, {"ss", "ss"}, {"s", ""}}};
  if (const Rule* r = longest_match(w, rules)) apply(w, *r);
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    return;
  }
  bool stripped = false;
  if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
    w.resize(w.size() - 2);
    stripped = true;
  } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
    w.resize(w.size() - 3);
    stripped = true;
  }
  if (!stripped) return;

  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w, w.size())) {
    char last = w.back();
    if (last != 'l' && last != 's' && last != 'z') w.pop_back();
  } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) w.back() = 'i';
}

void step2(std::string& w) {
  static constexpr std::array<Rule, 20> rules{{
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
      {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
      {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
      {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
      {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
      {"iviti", "ive"},   {"biliti", "ble"}}};
  if (const Rule* r = longest_match(w, rules))
    if (measure(w, w.size() - r->suffix.size()) > 0) apply(w, *r);
}

void step3(std::string& w) {
  static constexpr std::array<Rule, 7> rules{{
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""}}};
  if (const Rule* r = longest_match(w, rules))
    if (measure(w, w.size() - r->suffix.size()) > 0) apply(w, *r);
}

void step4(std::string& w) {
  static constexpr std::array<Rule, 19> rules{{
      {"al", ""},    {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
      {"able", ""},  {"ible", ""}, {"ant", ""},  {"ement", ""},
      {"ment", ""},  {"ent", ""},  {"ion", ""},  {"ou", ""},  {"ism", ""},
      {"ate", ""},   {"iti", ""},  {"ous", ""},  {"ive", ""}, {"ize", ""}}};
  const Rule* r = longest_match(w, rules);
  if (!r) return;
  std::size_t stem_len = w.size() - r->suffix.size();
  if (measure(w, stem_len) <= 1) return;
  if (r->suffix == "ion" && stem_len > 0 && w[stem_len - 1] != 's' &&
      w[stem_len - 1] != 't')
    return;
  apply(w, *r);
}

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  int m = measure(w, w.size() - 1);
  if (m > 1 || (m == 1 && !ends_cvc(w, w.size() - 1))) w.pop_back();
}

void step5b(std::string& w) {
  if (measure(w, w.size()) > 1 && ends_double_consonant(w, w.size()) &&
      w.back() == 'l')
    w.pop_back();
}

}  // namespace

std::string porter_stem(std::string_view word) {
  std::string w(word);
  if (w.empty()) return w;
  step1a(w);
  if (!w.empty()) step1b(w);
  if (!w.empty()) step1c(w);
  if (!w.empty()) step2(w);
  if (!w.empty()) step3(w);
  if (!w.empty()) step4(w);
  if (!w.empty()) step5a(w);
  if (!w.empty()) step5b(w);
  return w;
}

}  // namespace lmrank
