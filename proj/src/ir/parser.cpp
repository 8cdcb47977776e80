// SPDX-License-Identifier: Apache-2.0
#include "rtune/ir/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rtune {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  static const char* kTwoChar[] = {"==", "!=", "<=", ">=", "&&", "||"};
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), line});
      i = j;
      continue;
    }
    bool two = false;
    if (i + 1 < src.size()) {
      for (const char* t : kTwoChar) {
        if (src[i] == t[0] && src[i + 1] == t[1]) {
          out.push_back({Tok::Punct, t, line});
          i += 2;
          two = true;
          break;
        }
      }
    }
    if (two) continue;
    if (std::string_view("{}()[];,:#=<>+-*/%!").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), line});
      ++i;
      continue;
    }
    throw ProgramError(std::string("unexpected character '") + c + "'", line);
  }
  out.push_back({Tok::End, "<end of input>", line});
  return out;
}

// ---------------------------------------------------------------------------
// Untyped syntax
// ---------------------------------------------------------------------------

struct Ast {
  enum class K { Num, Name, Len, Status, True, False, Neg, Not, Arith, And, Or, Rel, Group };
  K k = K::Num;
  Int value = 0;
  std::string name;
  BinOpKind arith = BinOpKind::Add;
  RelOp rel = RelOp::Eq;
  std::vector<Ast> kids;
  int line = 0;
};

struct PreStmt {
  enum class K { Assign, Havoc, Load, Store, Assume, Assert, Alloc, Free, Deref };
  K k;
  int line;
  std::string dst;  // assigned variable, array (Store/Load source), or handle
  std::string array;
  Ast rhs;  // Assign rhs, Assume/Assert cond, Store value
  Ast index;
  Bound lo = 0, hi = 0;
  AssertionKind kind = AssertionKind::DivZero;
  int id = 0;
};

struct PreTerm {
  enum class K { Goto, Branch, Return } k = K::Return;
  int line = 0;
  Ast cond;
  std::string then_target, else_target;
};

struct PreBlock {
  std::string name;
  int line;
  std::vector<PreStmt> stmts;
  PreTerm term;
};

struct PreFunction {
  std::string name;
  int line;
  std::vector<std::string> params;
  std::vector<std::pair<std::string, std::string>> arrays;  // (array, length var)
  std::vector<int> array_lines;
  std::vector<PreBlock> blocks;
};

bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw = {"fn",     "block", "array", "assume", "assert", "alloc", "free",
                                           "deref",  "goto",  "br",    "then",   "else",   "return", "havoc",
                                           "true",   "false", "len",   "status", "inf"};
  return kw.count(s) > 0;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<PreFunction> parse() {
    std::vector<PreFunction> fns;
    while (peek().kind != Tok::End) fns.push_back(function());
    if (fns.empty()) fail("expected 'fn'");
    return fns;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(const char* text) const { return peek().kind != Tok::End && peek().text == text && peek().kind != Tok::Number; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ProgramError(what + " near '" + peek().text + "'", peek().line);
  }
  void expect(const char* text) {
    if (!at(text)) fail(std::string("expected '") + text + "'");
    next();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected identifier");
    return next().text;
  }
  Int number() {
    if (peek().kind != Tok::Number) fail("expected integer");
    const std::string& s = peek().text;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size() || v > Bound::kMaxFinite) throw std::out_of_range(s);
      next();
      return v;
    } catch (const std::exception&) {
      fail("integer literal out of range");
    }
  }

  PreFunction function() {
    PreFunction f;
    f.line = peek().line;
    expect("fn");
    f.name = ident();
    if (at("(")) {
      next();
      if (!at(")")) {
        f.params.push_back(ident());
        while (at(",")) {
          next();
          f.params.push_back(ident());
        }
      }
      expect(")");
    }
    expect("{");
    while (at("array")) {
      f.array_lines.push_back(peek().line);
      next();
      std::string a = ident();
      expect("[");
      std::string n = ident();
      expect("]");
      expect(";");
      f.arrays.emplace_back(std::move(a), std::move(n));
    }
    while (at("block")) f.blocks.push_back(block());
    if (f.blocks.empty()) fail("function without blocks");
    expect("}");
    return f;
  }

  PreBlock block() {
    PreBlock b;
    b.line = peek().line;
    expect("block");
    b.name = ident();
    expect("{");
    for (;;) {
      if (at("goto") || at("br") || at("return")) {
        b.term = terminator();
        break;
      }
      if (at("}")) fail("block '" + b.name + "' has no terminator");
      b.stmts.push_back(statement());
    }
    if (!at("}")) fail("statement after terminator");
    next();
    return b;
  }

  PreTerm terminator() {
    PreTerm t;
    t.line = peek().line;
    if (at("goto")) {
      next();
      t.k = PreTerm::K::Goto;
      t.then_target = ident();
    } else if (at("br")) {
      next();
      t.k = PreTerm::K::Branch;
      expect("(");
      t.cond = expr();
      expect(")");
      expect("then");
      expect(":");
      t.then_target = ident();
      expect("else");
      expect(":");
      t.else_target = ident();
    } else {
      expect("return");
      t.k = PreTerm::K::Return;
    }
    expect(";");
    return t;
  }

  Bound bound() {
    bool neg = false;
    if (at("-")) {
      next();
      neg = true;
    } else if (at("+")) {
      next();
    }
    if (at("inf")) {
      next();
      return neg ? kMinusInf : kPlusInf;
    }
    const Int v = number();
    return Bound(neg ? -v : v);
  }

  PreStmt statement() {
    PreStmt s;
    s.line = peek().line;
    if (at("assume")) {
      next();
      s.k = PreStmt::K::Assume;
      s.rhs = expr();
    } else if (at("assert")) {
      next();
      s.k = PreStmt::K::Assert;
      std::string kind = ident_or_kind();
      auto k = parse_assertion_kind(kind);
      if (!k) throw ProgramError("unknown assertion kind '" + kind + "'", s.line);
      s.kind = *k;
      expect(":");
      s.rhs = expr();
      expect("#");
      s.id = static_cast<int>(number());
    } else if (at("alloc") || at("free") || at("deref")) {
      const std::string op = next().text;
      s.k = op == "alloc" ? PreStmt::K::Alloc : (op == "free" ? PreStmt::K::Free : PreStmt::K::Deref);
      expect("(");
      s.dst = ident();
      expect(")");
    } else {
      std::string name = ident();
      if (at("[")) {
        next();
        s.k = PreStmt::K::Store;
        s.array = name;
        s.index = expr();
        expect("]");
        expect("=");
        s.rhs = expr();
      } else {
        expect("=");
        s.dst = name;
        if (at("havoc")) {
          next();
          s.k = PreStmt::K::Havoc;
          expect("(");
          s.lo = bound();
          expect(",");
          s.hi = bound();
          expect(")");
        } else if (peek().kind == Tok::Ident && !is_keyword(peek().text) && peek(1).text == "[") {
          s.k = PreStmt::K::Load;
          s.array = ident();
          next();
          s.index = expr();
          expect("]");
        } else {
          s.k = PreStmt::K::Assign;
          s.rhs = expr();
        }
      }
    }
    expect(";");
    return s;
  }

  // Assertion kinds may contain dashes (div-zero).
  std::string ident_or_kind() {
    std::string s = ident();
    while (at("-") && peek(1).kind == Tok::Ident) {
      next();
      s += "-" + next().text;
    }
    return s;
  }

  Ast node(Ast::K k, int line) {
    Ast a;
    a.k = k;
    a.line = line;
    return a;
  }

  Ast expr() { return disjunction(); }

  Ast disjunction() {
    Ast first = conjunction();
    if (!at("||")) return first;
    Ast a = node(Ast::K::Or, first.line);
    a.kids.push_back(std::move(first));
    while (at("||")) {
      next();
      a.kids.push_back(conjunction());
    }
    return a;
  }

  Ast conjunction() {
    Ast first = negation();
    if (!at("&&")) return first;
    Ast a = node(Ast::K::And, first.line);
    a.kids.push_back(std::move(first));
    while (at("&&")) {
      next();
      a.kids.push_back(negation());
    }
    return a;
  }

  Ast negation() {
    if (at("!")) {
      Ast a = node(Ast::K::Not, next().line);
      a.kids.push_back(negation());
      return a;
    }
    return relation();
  }

  Ast relation() {
    Ast lhs = additive();
    static const std::pair<const char*, RelOp> ops[] = {{"<", RelOp::Lt},  {"<=", RelOp::Le}, {">", RelOp::Gt},
                                                        {">=", RelOp::Ge}, {"==", RelOp::Eq}, {"!=", RelOp::Ne}};
    for (const auto& [text, op] : ops) {
      if (at(text)) {
        Ast a = node(Ast::K::Rel, next().line);
        a.rel = op;
        a.kids.push_back(std::move(lhs));
        a.kids.push_back(additive());
        return a;
      }
    }
    return lhs;
  }

  Ast additive() {
    Ast lhs = multiplicative();
    while (at("+") || at("-")) {
      Ast a = node(Ast::K::Arith, peek().line);
      a.arith = next().text == "+" ? BinOpKind::Add : BinOpKind::Sub;
      a.kids.push_back(std::move(lhs));
      a.kids.push_back(multiplicative());
      lhs = std::move(a);
    }
    return lhs;
  }

  Ast multiplicative() {
    Ast lhs = unary();
    while (at("*") || at("/") || at("%")) {
      Ast a = node(Ast::K::Arith, peek().line);
      const std::string op = next().text;
      a.arith = op == "*" ? BinOpKind::Mul : (op == "/" ? BinOpKind::Div : BinOpKind::Mod);
      a.kids.push_back(std::move(lhs));
      a.kids.push_back(unary());
      lhs = std::move(a);
    }
    return lhs;
  }

  Ast unary() {
    if (at("-")) {
      Ast a = node(Ast::K::Neg, next().line);
      a.kids.push_back(unary());
      return a;
    }
    return atom();
  }

  Ast atom() {
    const int line = peek().line;
    if (peek().kind == Tok::Number) {
      Ast a = node(Ast::K::Num, line);
      a.value = number();
      return a;
    }
    if (at("(")) {
      next();
      Ast a = node(Ast::K::Group, line);
      a.kids.push_back(expr());
      expect(")");
      return a;
    }
    if (at("true") || at("false")) {
      return node(next().text == "true" ? Ast::K::True : Ast::K::False, line);
    }
    if (at("len") || at("status")) {
      Ast a = node(next().text == "len" ? Ast::K::Len : Ast::K::Status, line);
      expect("(");
      a.name = ident();
      expect(")");
      return a;
    }
    Ast a = node(Ast::K::Name, line);
    a.name = ident();
    return a;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Typing and lowering
// ---------------------------------------------------------------------------

const Ast& strip(const Ast& a) { return a.k == Ast::K::Group ? strip(a.kids[0]) : a; }

bool syntactically_boolean(const Ast& a) {
  switch (a.k) {
    case Ast::K::True:
    case Ast::K::False:
    case Ast::K::Not:
    case Ast::K::And:
    case Ast::K::Or:
    case Ast::K::Rel:
      return true;
    case Ast::K::Group:
      return syntactically_boolean(a.kids[0]);
    default:
      return false;
  }
}

// An operand of a binary operation: a variable or an optionally negated literal.
bool is_atom(const Ast& a) {
  switch (a.k) {
    case Ast::K::Num:
    case Ast::K::Name:
    case Ast::K::Len:
    case Ast::K::Status:
      return true;
    case Ast::K::Neg:
      return a.kids[0].k == Ast::K::Num;
    default:
      return false;
  }
}

void collect_names(const Ast& a, std::vector<std::pair<std::string, int>>& out) {
  if (a.k == Ast::K::Name) out.emplace_back(a.name, a.line);
  for (const Ast& k : a.kids) collect_names(k, out);
}

class Lowerer {
 public:
  explicit Lowerer(const PreFunction& pf) : pf_(pf) {}

  Function lower() {
    f_.name = pf_.name;
    infer_bools();
    declare_ints();
    declare_synthetic();
    lower_blocks();
    check_definite_assignment();
    return std::move(f_);
  }

 private:
  void infer_bools() {
    for (const PreBlock& b : pf_.blocks) {
      for (const PreStmt& s : b.stmts) {
        if (s.k == PreStmt::K::Assign && syntactically_boolean(s.rhs)) bool_names_.insert(s.dst);
      }
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (const PreBlock& b : pf_.blocks) {
        for (const PreStmt& s : b.stmts) {
          if (s.k != PreStmt::K::Assign || bool_names_.count(s.dst)) continue;
          const Ast& r = strip(s.rhs);
          if (r.k == Ast::K::Name && bool_names_.count(r.name)) {
            bool_names_.insert(s.dst);
            changed = true;
          }
        }
      }
    }
    for (const std::string& p : pf_.params) {
      if (bool_names_.count(p)) throw ProgramError("parameter '" + p + "' must be an integer", pf_.line);
    }
  }

  void declare_int(const std::string& name, int line) {
    if (int_ids_.count(name)) return;
    if (bool_names_.count(name)) throw ProgramError("variable '" + name + "' is boolean, integer expected", line);
    if (array_ids_.count(name) || is_keyword(name)) throw ProgramError("'" + name + "' is not a variable", line);
    int_ids_[name] = static_cast<VarId>(f_.int_vars.size());
    f_.int_vars.push_back(name);
    f_.int_roles.push_back(IntVarRole::Program);
  }

  void declare_bool(const std::string& name) {
    if (bool_ids_.count(name)) return;
    bool_ids_[name] = static_cast<VarId>(f_.bool_vars.size());
    f_.bool_vars.push_back(name);
  }

  void declare_ints() {
    for (std::size_t i = 0; i < pf_.arrays.size(); ++i) {
      const auto& [a, n] = pf_.arrays[i];
      if (array_ids_.count(a)) throw ProgramError("array '" + a + "' declared twice", pf_.array_lines[i]);
      array_ids_[a] = static_cast<std::uint32_t>(i);
    }
    for (const std::string& p : pf_.params) {
      if (int_ids_.count(p)) throw ProgramError("duplicate parameter '" + p + "'", pf_.line);
      declare_int(p, pf_.line);
      f_.params.push_back(int_ids_[p]);
    }
    for (std::size_t i = 0; i < pf_.arrays.size(); ++i) declare_int(pf_.arrays[i].second, pf_.array_lines[i]);
    for (const PreBlock& b : pf_.blocks) {
      for (const PreStmt& s : b.stmts) {
        switch (s.k) {
          case PreStmt::K::Assign:
          case PreStmt::K::Havoc:
          case PreStmt::K::Load:
            if (bool_names_.count(s.dst)) {
              if (s.k != PreStmt::K::Assign) throw ProgramError("boolean '" + s.dst + "' assigned an integer", s.line);
              declare_bool(s.dst);
            } else {
              declare_int(s.dst, s.line);
            }
            break;
          case PreStmt::K::Alloc:
          case PreStmt::K::Free:
          case PreStmt::K::Deref:
            if (!handle_ids_.count(s.dst)) {
              handle_ids_[s.dst] = static_cast<std::uint32_t>(handle_order_.size());
              handle_order_.push_back(s.dst);
            }
            break;
          default:
            break;
        }
      }
    }
  }

  void declare_synthetic() {
    for (const std::string& h : handle_order_) {
      const auto v = static_cast<VarId>(f_.int_vars.size());
      f_.int_vars.push_back("status(" + h + ")");
      f_.int_roles.push_back(IntVarRole::Status);
      f_.handles.push_back({h, v});
    }
    for (const auto& [a, n] : pf_.arrays) {
      const auto v = static_cast<VarId>(f_.int_vars.size());
      f_.int_vars.push_back(a + "[*]");
      f_.int_roles.push_back(IntVarRole::Cell);
      f_.arrays.push_back({a, int_ids_.at(n), v});
    }
    f_.int_vars.push_back("$tmp");
    f_.int_roles.push_back(IntVarRole::Scratch);
  }

  VarId int_var(const std::string& name, int line) const {
    auto it = int_ids_.find(name);
    if (it == int_ids_.end()) {
      if (bool_names_.count(name)) throw ProgramError("boolean '" + name + "' used as an integer", line);
      throw ProgramError("undeclared variable '" + name + "'", line);
    }
    return it->second;
  }

  std::uint32_t array(const std::string& name, int line) const {
    auto it = array_ids_.find(name);
    if (it == array_ids_.end()) throw ProgramError("undeclared array '" + name + "'", line);
    return it->second;
  }

  std::optional<LinExpr> linear(const Ast& a) const {
    switch (a.k) {
      case Ast::K::Num:
        return LinExpr::constant_of(a.value);
      case Ast::K::Name:
        return LinExpr::var(int_var(a.name, a.line));
      case Ast::K::Len:
        return LinExpr::var(f_.arrays.at(array(a.name, a.line)).length);
      case Ast::K::Status: {
        auto it = handle_ids_.find(a.name);
        if (it == handle_ids_.end()) throw ProgramError("unknown handle '" + a.name + "'", a.line);
        return LinExpr::var(f_.handles[it->second].status);
      }
      case Ast::K::Group:
        return linear(a.kids[0]);
      case Ast::K::Neg: {
        auto e = linear(a.kids[0]);
        if (!e) return std::nullopt;
        return e->scaled(-1);
      }
      case Ast::K::Arith: {
        auto l = linear(a.kids[0]);
        auto r = linear(a.kids[1]);
        if (!l || !r) return std::nullopt;
        switch (a.arith) {
          case BinOpKind::Add:
            return *l + *r;
          case BinOpKind::Sub:
            return *l - *r;
          case BinOpKind::Mul:
            if (l->is_constant()) return r->scaled(l->constant);
            if (r->is_constant()) return l->scaled(r->constant);
            return std::nullopt;
          default:
            return std::nullopt;
        }
      }
      default:
        throw ProgramError("boolean expression where an integer is expected", a.line);
    }
  }

  LinExpr require_linear(const Ast& a) const {
    auto e = linear(a);
    if (!e) throw ProgramError("expression is not linear", a.line);
    return *e;
  }

  BoolExpr boolean(const Ast& a) const {
    switch (a.k) {
      case Ast::K::True:
        return BoolExpr::constant(true);
      case Ast::K::False:
        return BoolExpr::constant(false);
      case Ast::K::Group:
        return boolean(a.kids[0]);
      case Ast::K::Name: {
        auto it = bool_ids_.find(a.name);
        if (it == bool_ids_.end()) {
          if (int_ids_.count(a.name)) throw ProgramError("integer '" + a.name + "' used as a condition", a.line);
          throw ProgramError("undeclared variable '" + a.name + "'", a.line);
        }
        return BoolExpr::variable(it->second);
      }
      case Ast::K::Not:
        return BoolExpr::negation(boolean(a.kids[0]));
      case Ast::K::And:
      case Ast::K::Or: {
        std::vector<BoolExpr> args;
        for (const Ast& k : a.kids) args.push_back(boolean(k));
        return a.k == Ast::K::And ? BoolExpr::conjunction(std::move(args)) : BoolExpr::disjunction(std::move(args));
      }
      case Ast::K::Rel:
        return BoolExpr::compare(require_linear(a.kids[0]), a.rel, require_linear(a.kids[1]));
      default:
        throw ProgramError("integer expression where a condition is expected", a.line);
    }
  }

  Stmt lower_stmt(const PreStmt& s) {
    switch (s.k) {
      case PreStmt::K::Assign: {
        if (bool_ids_.count(s.dst)) return stmt::BoolAssign{bool_ids_.at(s.dst), boolean(s.rhs)};
        const VarId dst = int_var(s.dst, s.line);
        const Ast& r = s.rhs;
        if (r.k == Ast::K::Arith && is_atom(r.kids[0]) && is_atom(r.kids[1])) {
          return stmt::BinOp{dst, require_linear(r.kids[0]), r.arith, require_linear(r.kids[1])};
        }
        auto e = linear(r);
        if (!e) throw ProgramError("right-hand side must be linear or a single binary operation", s.line);
        return stmt::Assign{dst, *e};
      }
      case PreStmt::K::Havoc:
        if (s.lo > s.hi) throw ProgramError("empty havoc range", s.line);
        return stmt::Havoc{int_var(s.dst, s.line), s.lo, s.hi};
      case PreStmt::K::Load:
        return stmt::ArrLoad{int_var(s.dst, s.line), array(s.array, s.line), require_linear(s.index)};
      case PreStmt::K::Store:
        return stmt::ArrStore{array(s.array, s.line), require_linear(s.index), require_linear(s.rhs)};
      case PreStmt::K::Assume:
        return stmt::Assume{boolean(s.rhs)};
      case PreStmt::K::Assert:
        return stmt::Assert{s.kind, boolean(s.rhs), s.id};
      case PreStmt::K::Alloc:
        return stmt::Alloc{handle_ids_.at(s.dst)};
      case PreStmt::K::Free:
        return stmt::Free{handle_ids_.at(s.dst)};
      case PreStmt::K::Deref:
        return stmt::Deref{handle_ids_.at(s.dst)};
    }
    throw ProgramError("unsupported statement", s.line);
  }

  void lower_blocks() {
    std::map<std::string, std::uint32_t> block_ids;
    for (std::size_t i = 0; i < pf_.blocks.size(); ++i) {
      if (!block_ids.emplace(pf_.blocks[i].name, static_cast<std::uint32_t>(i)).second) {
        throw ProgramError("duplicate block '" + pf_.blocks[i].name + "'", pf_.blocks[i].line);
      }
    }
    auto target = [&](const std::string& name, int line) {
      auto it = block_ids.find(name);
      if (it == block_ids.end()) throw ProgramError("dangling branch target '" + name + "'", line);
      return it->second;
    };
    for (const PreBlock& pb : pf_.blocks) {
      Block b;
      b.name = pb.name;
      std::vector<int> lines;
      for (const PreStmt& s : pb.stmts) {
        b.stmts.push_back(lower_stmt(s));
        lines.push_back(s.line);
      }
      switch (pb.term.k) {
        case PreTerm::K::Goto:
          b.term = term::Goto{target(pb.term.then_target, pb.term.line)};
          break;
        case PreTerm::K::Branch:
          b.term = term::Branch{boolean(pb.term.cond), target(pb.term.then_target, pb.term.line),
                                target(pb.term.else_target, pb.term.line)};
          break;
        case PreTerm::K::Return:
          b.term = term::Return{};
          break;
      }
      lines.push_back(pb.term.line);
      f_.blocks.push_back(std::move(b));
      lines_.push_back(std::move(lines));
    }
    f_.entry = 0;
  }

  // ----- definite assignment -----

  struct Defined {
    std::vector<bool> ints, bools;
    bool operator==(const Defined&) const = default;
  };

  static void uses(const LinExpr& e, std::vector<VarId>& ints) {
    for (const auto& [v, c] : e.terms) ints.push_back(v);
  }
  static void uses(const BoolExpr& e, std::vector<VarId>& ints, std::vector<VarId>& bools) {
    switch (e.kind) {
      case BoolExpr::Kind::Var:
        bools.push_back(e.var);
        break;
      case BoolExpr::Kind::Cmp:
        uses(e.lhs, ints);
        uses(e.rhs, ints);
        break;
      default:
        for (const BoolExpr& a : e.args) uses(a, ints, bools);
    }
  }

  void stmt_uses(const Stmt& s, std::vector<VarId>& ints, std::vector<VarId>& bools) const {
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, stmt::Assign>) {
            uses(st.expr, ints);
          } else if constexpr (std::is_same_v<T, stmt::BinOp>) {
            uses(st.lhs, ints);
            uses(st.rhs, ints);
          } else if constexpr (std::is_same_v<T, stmt::BoolAssign>) {
            uses(st.expr, ints, bools);
          } else if constexpr (std::is_same_v<T, stmt::Assume> || std::is_same_v<T, stmt::Assert>) {
            uses(st.cond, ints, bools);
          } else if constexpr (std::is_same_v<T, stmt::ArrStore>) {
            uses(st.index, ints);
            uses(st.value, ints);
            ints.push_back(f_.arrays[st.array].length);
          } else if constexpr (std::is_same_v<T, stmt::ArrLoad>) {
            uses(st.index, ints);
            ints.push_back(f_.arrays[st.array].length);
          }
        },
        s);
  }

  static void stmt_defs(const Stmt& s, Defined& d) {
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, stmt::Assign> || std::is_same_v<T, stmt::BinOp> ||
                        std::is_same_v<T, stmt::Havoc> || std::is_same_v<T, stmt::ArrLoad>) {
            d.ints[st.dst] = true;
          } else if constexpr (std::is_same_v<T, stmt::BoolAssign>) {
            d.bools[st.dst] = true;
          }
        },
        s);
  }

  void check_definite_assignment() {
    const std::size_t nb = f_.blocks.size();
    Defined all{std::vector<bool>(f_.num_ints(), true), std::vector<bool>(f_.num_bools(), true)};
    Defined init{std::vector<bool>(f_.num_ints(), false), std::vector<bool>(f_.num_bools(), false)};
    for (VarId v = 0; v < f_.num_ints(); ++v) {
      if (f_.int_roles[v] != IntVarRole::Program) init.ints[v] = true;
    }
    for (VarId p : f_.params) init.ints[p] = true;

    std::vector<Defined> in(nb, all);
    in[f_.entry] = init;
    auto transfer = [&](std::uint32_t b) {
      Defined d = in[b];
      for (const Stmt& s : f_.blocks[b].stmts) stmt_defs(s, d);
      return d;
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (std::uint32_t b = 0; b < nb; ++b) {
        const Defined out = transfer(b);
        for (std::uint32_t s : f_.successors(b)) {
          Defined merged = in[s];
          if (s == f_.entry) continue;
          for (std::size_t i = 0; i < merged.ints.size(); ++i) merged.ints[i] = merged.ints[i] && out.ints[i];
          for (std::size_t i = 0; i < merged.bools.size(); ++i) merged.bools[i] = merged.bools[i] && out.bools[i];
          if (!(merged == in[s])) {
            in[s] = std::move(merged);
            changed = true;
          }
        }
      }
    }
    // Back edges into the entry block cannot undefine its initial set.
    for (std::uint32_t b = 0; b < nb; ++b) {
      Defined d = in[b];
      const Block& blk = f_.blocks[b];
      for (std::size_t i = 0; i <= blk.stmts.size(); ++i) {
        std::vector<VarId> ints, bools;
        if (i < blk.stmts.size()) {
          stmt_uses(blk.stmts[i], ints, bools);
        } else if (const auto* br = std::get_if<term::Branch>(&blk.term)) {
          uses(br->cond, ints, bools);
        }
        for (VarId v : ints) {
          if (!d.ints[v]) throw ProgramError("undeclared variable '" + f_.int_vars[v] + "'", lines_[b][i]);
        }
        for (VarId v : bools) {
          if (!d.bools[v]) throw ProgramError("undeclared variable '" + f_.bool_vars[v] + "'", lines_[b][i]);
        }
        if (i < blk.stmts.size()) stmt_defs(blk.stmts[i], d);
      }
    }
  }

  const PreFunction& pf_;
  Function f_;
  std::set<std::string> bool_names_;
  std::unordered_map<std::string, VarId> int_ids_, bool_ids_;
  std::unordered_map<std::string, std::uint32_t> array_ids_, handle_ids_;
  std::vector<std::string> handle_order_;
  std::vector<std::vector<int>> lines_;
};

}  // namespace

Program parse_program(std::string_view text) {
  Parser parser(lex(text));
  std::vector<PreFunction> pfs = parser.parse();
  Program p;
  std::set<std::string> names;
  std::map<int, int> ids;  // id -> line
  for (const PreFunction& pf : pfs) {
    if (!names.insert(pf.name).second) throw ProgramError("duplicate function '" + pf.name + "'", pf.line);
    for (const PreBlock& b : pf.blocks) {
      for (const PreStmt& s : b.stmts) {
        if (s.k != PreStmt::K::Assert) continue;
        if (!ids.emplace(s.id, s.line).second) {
          throw ProgramError("duplicate assertion id #" + std::to_string(s.id), s.line);
        }
      }
    }
    p.functions.push_back(Lowerer(pf).lower());
  }
  return p;
}

Program parse_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProgramError("cannot open program file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

std::string term_text(const Function& f, VarId v, Int c) {
  const std::string& name = f.int_vars[v];
  std::string var = name;
  for (const ArrayDecl& a : f.arrays) {
    (void)a;
  }
  for (const HandleDecl& h : f.handles) {
    if (h.status == v) var = "status(" + h.name + ")";
  }
  if (c == 1) return var;
  if (c == -1) return "-" + var;
  return std::to_string(c) + "*" + var;
}

std::string bound_text(const Bound& b) {
  if (b.is_plus_infinity()) return "inf";
  if (b.is_minus_infinity()) return "-inf";
  return std::to_string(b.value());
}

std::string assign_rhs(const Function& f, const LinExpr& e) {
  const std::string s = print_expr(f, e);
  const bool single = e.terms.empty() || (e.terms.size() == 1 && e.constant == 0);
  return single ? s : "(" + s + ")";
}

}  // namespace

std::string print_expr(const Function& f, const LinExpr& e) {
  std::string out;
  for (const auto& [v, c] : e.terms) {
    if (out.empty()) {
      out = term_text(f, v, c);
    } else if (c < 0) {
      out += " - " + term_text(f, v, -c);
    } else {
      out += " + " + term_text(f, v, c);
    }
  }
  if (out.empty()) return std::to_string(e.constant);
  if (e.constant > 0) out += " + " + std::to_string(e.constant);
  if (e.constant < 0) out += " - " + std::to_string(-e.constant);
  return out;
}

std::string print_expr(const Function& f, const BoolExpr& e) {
  switch (e.kind) {
    case BoolExpr::Kind::Const:
      return e.value ? "true" : "false";
    case BoolExpr::Kind::Var:
      return f.bool_vars[e.var];
    case BoolExpr::Kind::Cmp:
      return print_expr(f, e.lhs) + " " + to_string(e.op) + " " + print_expr(f, e.rhs);
    case BoolExpr::Kind::Not: {
      const BoolExpr& a = e.args[0];
      const bool atomic = a.kind == BoolExpr::Kind::Var || a.kind == BoolExpr::Kind::Const;
      return atomic ? "!" + print_expr(f, a) : "!(" + print_expr(f, a) + ")";
    }
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      std::string out = "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += e.kind == BoolExpr::Kind::And ? " && " : " || ";
        const BoolExpr& a = e.args[i];
        const bool wrap = a.kind == BoolExpr::Kind::Cmp;
        out += wrap ? print_expr(f, a) : print_expr(f, a);
      }
      return out + ")";
    }
  }
  return "?";
}

std::string print_stmt(const Function& f, const Stmt& s) {
  return std::visit(
      [&](const auto& st) -> std::string {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, stmt::Assign>) {
          return f.int_vars[st.dst] + " = " + assign_rhs(f, st.expr) + ";";
        } else if constexpr (std::is_same_v<T, stmt::BinOp>) {
          return f.int_vars[st.dst] + " = " + print_expr(f, st.lhs) + " " + to_string(st.op) + " " +
                 print_expr(f, st.rhs) + ";";
        } else if constexpr (std::is_same_v<T, stmt::BoolAssign>) {
          return f.bool_vars[st.dst] + " = " + print_expr(f, st.expr) + ";";
        } else if constexpr (std::is_same_v<T, stmt::Havoc>) {
          return f.int_vars[st.dst] + " = havoc(" + bound_text(st.lo) + ", " + bound_text(st.hi) + ");";
        } else if constexpr (std::is_same_v<T, stmt::Assume>) {
          return "assume " + print_expr(f, st.cond) + ";";
        } else if constexpr (std::is_same_v<T, stmt::Assert>) {
          return std::string("assert ") + keyword(st.kind) + ": " + print_expr(f, st.cond) + " #" +
                 std::to_string(st.id) + ";";
        } else if constexpr (std::is_same_v<T, stmt::ArrStore>) {
          return f.arrays[st.array].name + "[" + print_expr(f, st.index) + "] = " + print_expr(f, st.value) + ";";
        } else if constexpr (std::is_same_v<T, stmt::ArrLoad>) {
          return f.int_vars[st.dst] + " = " + f.arrays[st.array].name + "[" + print_expr(f, st.index) + "];";
        } else if constexpr (std::is_same_v<T, stmt::Alloc>) {
          return "alloc(" + f.handles[st.handle].name + ");";
        } else if constexpr (std::is_same_v<T, stmt::Free>) {
          return "free(" + f.handles[st.handle].name + ");";
        } else {
          return "deref(" + f.handles[st.handle].name + ");";
        }
      },
      s);
}

std::string print_program(const Program& p) {
  std::ostringstream out;
  for (std::size_t fi = 0; fi < p.functions.size(); ++fi) {
    const Function& f = p.functions[fi];
    if (fi) out << "\n";
    out << "fn " << f.name;
    if (!f.params.empty()) {
      out << "(";
      for (std::size_t i = 0; i < f.params.size(); ++i) out << (i ? ", " : "") << f.int_vars[f.params[i]];
      out << ")";
    }
    out << " {\n";
    for (const ArrayDecl& a : f.arrays) out << "  array " << a.name << "[" << f.int_vars[a.length] << "];\n";
    for (const Block& b : f.blocks) {
      out << "  block " << b.name << " {\n";
      for (const Stmt& s : b.stmts) out << "    " << print_stmt(f, s) << "\n";
      out << "    ";
      if (const auto* g = std::get_if<term::Goto>(&b.term)) {
        out << "goto " << f.blocks[g->target].name << ";\n";
      } else if (const auto* br = std::get_if<term::Branch>(&b.term)) {
        out << "br (" << print_expr(f, br->cond) << ") then: " << f.blocks[br->then_target].name
            << " else: " << f.blocks[br->else_target].name << ";\n";
      } else {
        out << "return;\n";
      }
      out << "  }\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace rtune
