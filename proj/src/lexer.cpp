#include "lexer.hpp"

#include <cctype>
#include <map>

namespace scid::frontend {

std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::KwWidth: return "'width'";
    case Tok::KwFunc: return "'func'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwBound: return "'bound'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwBreak: return "'break'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Assign: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Caret: return "'^'";
    case Tok::Tilde: return "'~'";
    case Tok::Bang: return "'!'";
    case Tok::Shl: return "'<<'";
    case Tok::Shr: return "'>>'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  static const std::map<std::string, Tok, std::less<>> keywords{
      {"width", Tok::KwWidth}, {"func", Tok::KwFunc},     {"if", Tok::KwIf},       {"else", Tok::KwElse},
      {"while", Tok::KwWhile}, {"bound", Tok::KwBound},   {"return", Tok::KwReturn}, {"break", Tok::KwBreak},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto peek = [&](std::size_t off = 0) -> char { return i + off < src.size() ? src[i + off] : '\0'; };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '/' && peek(1) == '/') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (c == '/' && peek(1) == '*') {
      const SourceLoc start{line, col};
      advance(2);
      while (i < src.size() && !(src[i] == '*' && peek(1) == '/')) advance();
      if (i >= src.size()) throw SyntaxError("unterminated comment", start);
      advance(2);
      continue;
    }
    Token t;
    t.loc = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.text = std::string(src.substr(i, j - i));
      auto kw = keywords.find(t.text);
      t.kind = kw != keywords.end() ? kw->second : Tok::Ident;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      int base = 10;
      if (c == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
        base = 16;
        j += 2;
      }
      const std::size_t digits = j;
      while (j < src.size() && std::isxdigit(static_cast<unsigned char>(src[j]))) {
        if (base == 10 && !std::isdigit(static_cast<unsigned char>(src[j]))) break;
        ++j;
      }
      if (j == digits) throw SyntaxError("malformed integer literal", t.loc);
      t.text = std::string(src.substr(i, j - i));
      try {
        t.value = std::stoull(std::string(src.substr(digits, j - digits)), nullptr, base);
      } catch (const std::out_of_range&) {
        throw SyntaxError("integer literal out of range", t.loc);
      }
      t.kind = Tok::Int;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    std::size_t len = 2;
    if (two('<', '<')) t.kind = Tok::Shl;
    else if (two('>', '>')) t.kind = Tok::Shr;
    else if (two('=', '=')) t.kind = Tok::EqEq;
    else if (two('!', '=')) t.kind = Tok::NotEq;
    else if (two('<', '=')) t.kind = Tok::Le;
    else if (two('>', '=')) t.kind = Tok::Ge;
    else if (two('&', '&')) t.kind = Tok::AndAnd;
    else if (two('|', '|')) t.kind = Tok::OrOr;
    else {
      len = 1;
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case ',': t.kind = Tok::Comma; break;
        case ';': t.kind = Tok::Semi; break;
        case '=': t.kind = Tok::Assign; break;
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '&': t.kind = Tok::Amp; break;
        case '|': t.kind = Tok::Pipe; break;
        case '^': t.kind = Tok::Caret; break;
        case '~': t.kind = Tok::Tilde; break;
        case '!': t.kind = Tok::Bang; break;
        case '<': t.kind = Tok::Lt; break;
        case '>': t.kind = Tok::Gt; break;
        default: throw SyntaxError(std::string("unexpected character '") + c + "'", t.loc);
      }
    }
    t.text = std::string(src.substr(i, len));
    advance(len);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.loc = {line, col};
  out.push_back(end);
  return out;
}

}  // namespace scid::frontend
