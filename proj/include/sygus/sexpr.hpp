#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "sygus/error.hpp"

namespace sygus {

/// S-expression with source positions (1-based).
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t col = 1;

  bool is_atom() const { return !is_list; }
  bool is_symbol(std::string_view s) const { return !is_list && atom == s; }
  std::string where() const { return std::to_string(line) + ":" + std::to_string(col); }
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  SExpr read() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError(line_, col_, "unexpected end of input");
    SExpr e;
    e.line = line_;
    e.col = col_;
    char c = text_[pos_];
    if (c == ')') throw SyntaxError(line_, col_, "unexpected ')'");
    if (c == '(') {
      e.is_list = true;
      advance();
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw SyntaxError(e.line, e.col, "unbalanced '('");
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == '|') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != '|') e.atom += advance();
      if (pos_ >= text_.size()) throw SyntaxError(e.line, e.col, "unterminated quoted symbol");
      advance();
      return e;
    }
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      e.atom += advance();
    }
    return e;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline std::vector<SExpr> read_sexprs(std::string_view text) { return SExprReader(text).read_all(); }

inline bool is_numeral(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace sygus
