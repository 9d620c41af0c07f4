#include "lexer.hpp"

#include <cctype>
#include <cstring>

#include "compo/errors.hpp"

namespace compo::detail {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool ends_ident(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (is_space(c) || std::strchr("():,{}\"#$", c)) return true;
  if ((c == '-' || c == '=') && i + 1 < s.size() && s[i + 1] == '>') return true;
  return c == '=';
}

}  // namespace

std::vector<Lexeme> lex_line(std::string_view s, const std::string& file, std::size_t line_no) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t col = i + 1;
    if (is_space(c)) {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '\\' && i + 1 < s.size()) {
          text += s[i + 1];
          i += 2;
        } else if (s[i] == '"') {
          closed = true;
          ++i;
          break;
        } else {
          text += s[i++];
        }
      }
      if (!closed) throw InputError("unterminated string", file, line_no, col);
      out.push_back({Lex::String, std::move(text), col});
    } else if (c == '$') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i + 1) throw InputError("expected digits after '$'", file, line_no, col);
      out.push_back({Lex::Placeholder, std::string(s.substr(i + 1, j - i - 1)), col});
      i = j;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Lex::Arrow, "->", col});
      i += 2;
    } else if (c == '=' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Lex::FatArrow, "=>", col});
      i += 2;
    } else if (std::strchr("():,{}=", c)) {
      out.push_back({Lex::Punct, std::string(1, c), col});
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !ends_ident(s, j)) ++j;
      out.push_back({Lex::Ident, std::string(s.substr(i, j - i)), col});
      i = j;
    }
  }
  return out;
}

const Lexeme& LineReader::peek() const {
  if (done()) fail("unexpected end of line");
  return lexemes_[pos_];
}

bool LineReader::peek_is(Lex kind, std::string_view text) const {
  if (done()) return false;
  const auto& l = lexemes_[pos_];
  return l.kind == kind && (text.empty() || l.text == text);
}

std::size_t LineReader::column() const {
  return done() ? line_length_ + 1 : lexemes_[pos_].column;
}

void LineReader::fail(const std::string& message) const {
  throw InputError(message, file_, line_no_, column());
}

std::string LineReader::ident(const char* what) {
  if (!peek_is(Lex::Ident)) fail(std::string("expected ") + what);
  return lexemes_[pos_++].text;
}

std::string LineReader::string(const char* what) {
  if (!peek_is(Lex::String)) fail(std::string("expected ") + what);
  return lexemes_[pos_++].text;
}

void LineReader::expect(Lex kind, std::string_view text, const char* what) {
  if (!peek_is(kind, text)) fail(std::string("expected ") + what);
  ++pos_;
}

bool LineReader::accept(Lex kind, std::string_view text) {
  if (!peek_is(kind, text)) return false;
  ++pos_;
  return true;
}

void LineReader::expect_end() {
  if (!done()) fail("unexpected '" + lexemes_[pos_].text + "'");
}

}  // namespace compo::detail
