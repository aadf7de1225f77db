#include "quillen/words.hpp"

#include <cctype>

#include "quillen/errors.hpp"

namespace quillen {

namespace {

class WordParser {
 public:
  WordParser(const std::string& text, const std::vector<std::string>& names)
      : s_(text), names_(names) {}

  Word parse() {
    Word w = word();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  Word word() {
    Word w;
    for (;;) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      if (pos_ == s_.size() || s_[pos_] == ')' || s_[pos_] == ']' || s_[pos_] == ',') return w;
      w = w * factor();
    }
  }

  Word factor() {
    Word a = atom();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      a = a.power(integer());
    }
    return a;
  }

  Word atom() {
    skip();
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      return commutator(u, v);
    }
    if (c == '1' && (pos_ + 1 == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return {};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      for (std::size_t g = 0; g < names_.size(); ++g)
        if (names_[g] == name) return Word::generator(static_cast<std::uint32_t>(g));
      fail("unknown generator '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int integer() {
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an exponent");
    long v = std::stol(s_.substr(start, pos_ - start));
    if (v > 1'000'000 || v < -1'000'000) fail("exponent out of range");
    return static_cast<int>(v);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ == s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidInput("word \"" + s_ + "\" at position " + std::to_string(pos_) + ": " + why);
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  if (text.empty()) throw InvalidInput("empty word (use \"1\" for the identity)");
  return WordParser(text, names).parse();
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long e = static_cast<long>(j - i) * ls[i].exponent;
    if (!out.empty()) out += ' ';
    out += ls[i].generator < names.size() ? names[ls[i].generator] : "x" + std::to_string(ls[i].generator);
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

FinitePresentation parse_presentation(const std::vector<std::string>& generators,
                                      const std::vector<std::string>& relators) {
  FinitePresentation p;
  p.generator_count = generators.size();
  p.generator_names = generators;
  for (const auto& r : relators) p.relators.push_back(parse_word(r, generators));
  return p;
}

}  // namespace quillen
