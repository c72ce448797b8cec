#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scid/ast.hpp"

namespace scid::frontend {

enum class Tok {
  End, Ident, Int,
  KwWidth, KwFunc, KwIf, KwElse, KwWhile, KwBound, KwReturn, KwBreak,
  LParen, RParen, LBrace, RBrace, Comma, Semi, Assign,
  Plus, Minus, Star, Amp, Pipe, Caret, Tilde, Bang, Shl, Shr,
  EqEq, NotEq, Lt, Le, Gt, Ge, AndAnd, OrOr,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::uint64_t value = 0;
  SourceLoc loc;
};

std::vector<Token> lex(std::string_view src);
std::string_view tok_name(Tok t);

}  // namespace scid::frontend
