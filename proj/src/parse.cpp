// Recursive-descent parser for the word grammar in docs/word_grammar.md.
#include <cctype>
#include <limits>

#include "parasurf/word.hpp"

namespace parasurf {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int rank, CommutatorConvention conv)
      : text_(text), rank_(rank), conv_(conv) {}

  Word run() {
    skip_space();
    if (at_end()) return Word(rank_);
    Word w = expr();
    skip_space();
    if (!at_end()) fail("unexpected '" + std::string(1, peek()) + "'");
    return w;
  }

 private:
  // expr := term { ['*'] term }
  Word expr() {
    Word w = term();
    for (;;) {
      skip_space();
      if (at_end()) break;
      char ch = peek();
      if (ch == '*') {
        ++pos_;
        skip_space();
        w = w * term();
      } else if (starts_factor(ch)) {
        w = w * term();
      } else {
        break;
      }
    }
    return w;
  }

  // term := factor { '^' (integer | factor) }
  Word term() {
    Word w = factor();
    for (;;) {
      skip_space();
      if (at_end() || peek() != '^') break;
      ++pos_;
      skip_space();
      if (at_end()) fail("expected exponent or conjugator after '^'");
      char ch = peek();
      if (ch == '-' || ch == '+' || std::isdigit(static_cast<unsigned char>(ch))) {
        w = w.pow(integer());
      } else if (starts_factor(ch)) {
        w = conjugate(w, factor());
      } else {
        fail("expected exponent or conjugator after '^'");
      }
    }
    return w;
  }

  // factor := generator | '1' | '(' expr ')' | '[' expr ',' expr {',' expr} ']'
  Word factor() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    const std::size_t start = pos_;
    char ch = peek();
    if (ch == 'a' || ch == 'A') {
      ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        fail_at("generator needs an index", start);
      }
      std::int64_t index = digits();
      if (index < 1 || index > rank_) {
        fail_at("unknown generator index " + std::to_string(index) + " (rank " +
                    std::to_string(rank_) + ")",
                start);
      }
      return Word::generator(rank_, static_cast<int>(index), ch == 'a' ? 1 : -1);
    }
    if (ch == '1') {
      ++pos_;
      return Word(rank_);
    }
    if (ch == '(') {
      ++pos_;
      Word w = expr();
      expect(')');
      return w;
    }
    if (ch == '[') {
      ++pos_;
      Word w = expr();
      expect(',');
      w = commutator(w, expr(), conv_);
      for (;;) {
        skip_space();
        if (!at_end() && peek() == ',') {
          ++pos_;
          w = commutator(w, expr(), conv_);
        } else {
          break;
        }
      }
      expect(']');
      return w;
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::int64_t integer() {
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
      skip_space();
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    std::int64_t n = digits();
    return negative ? -n : n;
  }

  std::int64_t digits() {
    const std::size_t start = pos_;
    std::int64_t n = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      if (n > (std::numeric_limits<std::int64_t>::max() - 9) / 10) fail_at("integer too large", start);
      n = n * 10 + (peek() - '0');
      ++pos_;
    }
    return n;
  }

  static bool starts_factor(char ch) {
    return ch == 'a' || ch == 'A' || ch == '(' || ch == '[' || ch == '1';
  }

  void expect(char ch) {
    skip_space();
    if (at_end()) fail(std::string("expected '") + ch + "' but input ended");
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] static void fail_at(const std::string& what, std::size_t at) {
    throw ParseError(what, at);
  }

  std::string_view text_;
  int rank_;
  CommutatorConvention conv_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, int rank, CommutatorConvention conv) {
  if (rank < 1) throw std::invalid_argument("parse_word: rank must be >= 1");
  return Parser(text, rank, conv).run();
}

}  // namespace parasurf
