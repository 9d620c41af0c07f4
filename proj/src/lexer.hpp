#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace compo::detail {

enum class Lex { Ident, String, Placeholder, Arrow, FatArrow, Punct };

struct Lexeme {
  Lex kind;
  std::string text;  // identifier, unquoted string, placeholder digits, or punctuation
  std::size_t column;
};

/// Splits one line of a grammar or pair file. `#` outside a string starts a
/// comment. Throws InputError with the column of the offending character.
std::vector<Lexeme> lex_line(std::string_view line, const std::string& file, std::size_t line_no);

/// Cursor over one lexed line with positional diagnostics.
class LineReader {
 public:
  LineReader(std::vector<Lexeme> lexemes, std::string file, std::size_t line_no,
             std::size_t line_length)
      : lexemes_(std::move(lexemes)),
        file_(std::move(file)),
        line_no_(line_no),
        line_length_(line_length) {}

  bool done() const { return pos_ >= lexemes_.size(); }
  const Lexeme& peek() const;
  bool peek_is(Lex kind, std::string_view text = {}) const;

  std::string ident(const char* what);
  std::string string(const char* what);
  void expect(Lex kind, std::string_view text, const char* what);
  bool accept(Lex kind, std::string_view text = {});
  void expect_end();

  [[noreturn]] void fail(const std::string& message) const;
  std::size_t line() const { return line_no_; }
  std::size_t column() const;
  const std::string& file() const { return file_; }

 private:
  std::vector<Lexeme> lexemes_;
  std::size_t pos_ = 0;
  std::string file_;
  std::size_t line_no_;
  std::size_t line_length_;
};

}  // namespace compo::detail
