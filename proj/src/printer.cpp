#include <sstream>

#include "scid/ast.hpp"

namespace scid::frontend {

namespace {

void emit(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Literal: os << e.value; return;
    case Expr::Kind::Variable: os << e.name; return;
    case Expr::Kind::Unary:
      os << op_text(e.unary_op) << "(";
      emit(os, e.operands[0]);
      os << ")";
      return;
    case Expr::Kind::Binary:
      os << "(";
      emit(os, e.operands[0]);
      os << " " << op_text(e.binary_op) << " ";
      emit(os, e.operands[1]);
      os << ")";
      return;
    case Expr::Kind::Call:
      os << e.name << "(";
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) os << ", ";
        emit(os, e.operands[i]);
      }
      os << ")";
      return;
  }
}

void emit_block(std::ostream& os, const std::vector<Stmt>& body, int indent);

void emit(std::ostream& os, const Stmt& s, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case Stmt::Kind::Assign:
      os << pad << s.target << " = ";
      emit(os, s.expr);
      os << ";\n";
      return;
    case Stmt::Kind::Call:
      os << pad;
      emit(os, s.expr);
      os << ";\n";
      return;
    case Stmt::Kind::If:
      os << pad << "if (";
      emit(os, s.expr);
      os << ") ";
      emit_block(os, s.body, indent);
      if (!s.else_body.empty()) {
        os << " else ";
        emit_block(os, s.else_body, indent);
      }
      os << "\n";
      return;
    case Stmt::Kind::While:
      os << pad << "while (";
      emit(os, s.expr);
      os << ") bound " << s.bound << " ";
      emit_block(os, s.body, indent);
      os << "\n";
      return;
    case Stmt::Kind::Return:
      os << pad << "return";
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        os << (i ? ", " : " ");
        emit(os, s.values[i]);
      }
      os << ";\n";
      return;
    case Stmt::Kind::Break: os << pad << "break;\n"; return;
  }
}

void emit_block(std::ostream& os, const std::vector<Stmt>& body, int indent) {
  os << "{\n";
  for (const Stmt& s : body) emit(os, s, indent + 1);
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << "}";
}

}  // namespace

std::string print(const Expr& e) {
  std::ostringstream os;
  emit(os, e);
  return os.str();
}

std::string print(const Program& p) {
  std::ostringstream os;
  os << "width " << p.width << ";\n";
  for (const Function& f : p.functions) {
    os << "\nfunc " << f.name << "(";
    for (std::size_t i = 0; i < f.params.size(); ++i) os << (i ? ", " : "") << f.params[i];
    os << ") ";
    emit_block(os, f.body, 0);
    os << "\n";
  }
  return os.str();
}

}  // namespace scid::frontend
