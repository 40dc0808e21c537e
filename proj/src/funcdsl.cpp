#include "oplab/funcdsl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "oplab/errors.hpp"

namespace oplab::funcdsl {

enum class Op : std::uint8_t { Const, VarX, VarY, Add, Sub, Mul, Div, Neg, Pow, Exp, Log, Abs, Ind };

struct Node {
  Op op = Op::Const;
  double value = 0.0;  // constant, or the exponent of Pow
  Variable var = Variable::X;
  double lo = 0.0;
  double hi = 0.0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string number_text(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

bool is_integer(double c) { return std::isfinite(c) && c == std::trunc(c); }

double power(double base, double c) {
  if (base == 0.0 && c < 0.0) throw DomainError("0 raised to the negative power " + number_text(c));
  if (base < 0.0 && !is_integer(c)) {
    throw DomainError("negative base raised to the non-integer power " + number_text(c));
  }
  return std::pow(base, c);
}

double apply(Op op, double a, double b, double c) {
  switch (op) {
    case Op::Add:
      return a + b;
    case Op::Sub:
      return a - b;
    case Op::Mul:
      // Measure-theory convention: an indicator that is off wins over inf.
      return (a == 0.0 || b == 0.0) ? 0.0 : a * b;
    case Op::Div:
      return a / b;
    case Op::Neg:
      return -a;
    case Op::Pow:
      return power(a, c);
    case Op::Exp:
      return std::exp(a);
    case Op::Log:
      if (!(a > 0.0)) throw DomainError("log of non-positive value " + number_text(a));
      return std::log(a);
    case Op::Abs:
      return std::fabs(a);
    default:
      return 0.0;
  }
}

NodePtr constant(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = v;
  return n;
}

NodePtr unary(Op op, NodePtr a, double c = 0.0) {
  if (a->op == Op::Const) return constant(apply(op, a->value, 0.0, c));
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->value = c;
  return n;
}

NodePtr binary(Op op, NodePtr a, NodePtr b) {
  if (a->op == Op::Const && b->op == Op::Const) {
    return constant(apply(op, a->value, b->value, 0.0));
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

// ---------------------------------------------------------------- lexer

enum class Tok { Number, Ident, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  double number = 0.0;
  std::string text;
  char symbol = '\0';
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) return;
    const char ch = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.')) {
        ++end;
      }
      if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
        std::size_t exp_end = end + 1;
        if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
        if (exp_end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp_end]))) {
          while (exp_end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp_end]))) {
            ++exp_end;
          }
          end = exp_end;
        }
      }
      double value = 0.0;
      const auto res = std::from_chars(src_.data() + pos_, src_.data() + end, value);
      if (res.ec != std::errc() || res.ptr != src_.data() + end) {
        throw ParseError("malformed number at offset " + std::to_string(pos_),
                         ParseError::Kind::Syntax, pos_);
      }
      tok_.kind = Tok::Number;
      tok_.number = value;
      pos_ = end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) {
        ++end;
      }
      tok_.kind = Tok::Ident;
      tok_.text = std::string(src_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    static constexpr std::string_view kSymbols = "+-*/^(),";
    if (kSymbols.find(ch) != std::string_view::npos) {
      tok_.kind = Tok::Symbol;
      tok_.symbol = ch;
      ++pos_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + ch + "' at offset " +
                         std::to_string(pos_),
                     ParseError::Kind::Syntax, pos_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

// ---------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  NodePtr parse_all() {
    if (lex_.peek().kind == Tok::End) {
      throw ParseError("empty expression", ParseError::Kind::Syntax, 0);
    }
    NodePtr e = expr();
    if (lex_.peek().kind != Tok::End) unexpected(lex_.peek());
    return e;
  }

 private:
  [[noreturn]] static void unexpected(const Token& t) {
    std::string what;
    switch (t.kind) {
      case Tok::End:
        what = "end of input";
        break;
      case Tok::Number:
        what = "number";
        break;
      case Tok::Ident:
        what = "'" + t.text + "'";
        break;
      case Tok::Symbol:
        what = std::string("'") + t.symbol + "'";
        break;
    }
    throw ParseError("syntax error: unexpected " + what + " at offset " + std::to_string(t.offset),
                     ParseError::Kind::Syntax, t.offset);
  }

  bool at_symbol(char c) const {
    return lex_.peek().kind == Tok::Symbol && lex_.peek().symbol == c;
  }

  void expect_symbol(char c) {
    if (!at_symbol(c)) unexpected(lex_.peek());
    lex_.take();
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (at_symbol('+') || at_symbol('-')) {
      const Op op = lex_.take().symbol == '+' ? Op::Add : Op::Sub;
      lhs = binary(op, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = signed_factor();
    while (at_symbol('*') || at_symbol('/')) {
      const Op op = lex_.take().symbol == '*' ? Op::Mul : Op::Div;
      lhs = binary(op, lhs, signed_factor());
    }
    return lhs;
  }

  NodePtr signed_factor() {
    if (at_symbol('-')) {
      lex_.take();
      return unary(Op::Neg, signed_factor());
    }
    if (at_symbol('+')) {
      lex_.take();
      return signed_factor();
    }
    return power_expr();
  }

  NodePtr power_expr() {
    NodePtr base = primary();
    if (!at_symbol('^')) return base;
    lex_.take();
    const std::size_t at = lex_.peek().offset;
    NodePtr exponent = signed_factor();
    if (exponent->op != Op::Const) {
      throw ParseError("exponent at offset " + std::to_string(at) + " must be a constant expression",
                       ParseError::Kind::NonConstantExponent, at);
    }
    return unary(Op::Pow, base, exponent->value);
  }

  std::vector<std::pair<NodePtr, std::size_t>> arguments() {
    std::vector<std::pair<NodePtr, std::size_t>> args;
    expect_symbol('(');
    if (at_symbol(')')) {
      lex_.take();
      return args;
    }
    for (;;) {
      const std::size_t at = lex_.peek().offset;
      args.emplace_back(expr(), at);
      if (at_symbol(',')) {
        lex_.take();
        continue;
      }
      expect_symbol(')');
      return args;
    }
  }

  NodePtr primary() {
    const Token t = lex_.peek();
    if (t.kind == Tok::Number) {
      lex_.take();
      return constant(t.number);
    }
    if (t.kind == Tok::Symbol && t.symbol == '(') {
      lex_.take();
      NodePtr e = expr();
      expect_symbol(')');
      return e;
    }
    if (t.kind != Tok::Ident) unexpected(t);
    lex_.take();
    if (t.text == "x" || t.text == "y") {
      auto n = std::make_shared<Node>();
      n->op = t.text == "x" ? Op::VarX : Op::VarY;
      return n;
    }
    if (t.text == "pi") return constant(std::numbers::pi);
    if (t.text == "inf") return constant(kInf);

    Op op = Op::Const;
    if (t.text == "exp") op = Op::Exp;
    else if (t.text == "log") op = Op::Log;
    else if (t.text == "abs") op = Op::Abs;
    else if (t.text == "ind") op = Op::Ind;
    else {
      throw ParseError("unknown identifier '" + t.text + "' at offset " + std::to_string(t.offset),
                       ParseError::Kind::UnknownIdentifier, t.offset);
    }
    if (!at_symbol('(')) unexpected(lex_.peek());
    auto args = arguments();
    if (op != Op::Ind) {
      if (args.size() != 1) {
        throw ParseError(t.text + " takes 1 argument, got " + std::to_string(args.size()),
                         ParseError::Kind::Arity, t.offset);
      }
      return unary(op, args[0].first);
    }
    return indicator(t, args);
  }

  static NodePtr indicator(const Token& t, const std::vector<std::pair<NodePtr, std::size_t>>& args) {
    if (args.size() != 2 && args.size() != 3) {
      throw ParseError("ind takes 2 or 3 arguments, got " + std::to_string(args.size()),
                       ParseError::Kind::Arity, t.offset);
    }
    Variable var = Variable::X;
    std::size_t first = 0;
    if (args.size() == 3) {
      const Op v = args[0].first->op;
      if (v != Op::VarX && v != Op::VarY) {
        throw ParseError("first argument of 3-argument ind must be x or y",
                         ParseError::Kind::Syntax, args[0].second);
      }
      var = v == Op::VarX ? Variable::X : Variable::Y;
      first = 1;
    }
    for (std::size_t i = first; i < args.size(); ++i) {
      if (args[i].first->op != Op::Const) {
        throw ParseError("indicator bound at offset " + std::to_string(args[i].second) +
                             " must be a constant",
                         ParseError::Kind::Syntax, args[i].second);
      }
    }
    const double lo = args[first].first->value;
    const double hi = args[first + 1].first->value;
    if (!(lo < hi)) {
      throw ParseError("indicator needs lo < hi", ParseError::Kind::Syntax, args[first].second);
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Ind;
    n->var = var;
    n->lo = lo;
    n->hi = hi;
    return n;
  }

  Lexer lex_;
};

// ---------------------------------------------------------------- printing

std::string print(const Node& n) {
  switch (n.op) {
    case Op::Const:
      return number_text(n.value);
    case Op::VarX:
      return "x";
    case Op::VarY:
      return "y";
    case Op::Add:
      return "(" + print(*n.a) + " + " + print(*n.b) + ")";
    case Op::Sub:
      return "(" + print(*n.a) + " - " + print(*n.b) + ")";
    case Op::Mul:
      return "(" + print(*n.a) + " * " + print(*n.b) + ")";
    case Op::Div:
      return "(" + print(*n.a) + " / " + print(*n.b) + ")";
    case Op::Neg:
      return "(-" + print(*n.a) + ")";
    case Op::Pow:
      return "(" + print(*n.a) + " ^ " + number_text(n.value) + ")";
    case Op::Exp:
      return "exp(" + print(*n.a) + ")";
    case Op::Log:
      return "log(" + print(*n.a) + ")";
    case Op::Abs:
      return "abs(" + print(*n.a) + ")";
    case Op::Ind:
      return std::string("ind(") + (n.var == Variable::X ? "x" : "y") + ", " +
             number_text(n.lo) + ", " + number_text(n.hi) + ")";
  }
  return {};
}

// ---------------------------------------------------------------- analysis

bool uses_y_anywhere(const Node& n) {
  if (n.op == Op::VarY) return true;
  if (n.op == Op::Ind && n.var == Variable::Y) return true;
  return (n.a && uses_y_anywhere(*n.a)) || (n.b && uses_y_anywhere(*n.b));
}

void collect_breakpoints(const Node& n, Variable v, std::vector<double>& out) {
  if (n.op == Op::Ind && n.var == v) {
    if (std::isfinite(n.lo)) out.push_back(n.lo);
    if (std::isfinite(n.hi)) out.push_back(n.hi);
  }
  if (n.a) collect_breakpoints(*n.a, v, out);
  if (n.b) collect_breakpoints(*n.b, v, out);
}

using Interval = std::pair<double, double>;
constexpr Interval kEmpty{kInf, -kInf};
constexpr Interval kFull{-kInf, kInf};

Interval hull(Interval p, Interval q) { return {std::min(p.first, q.first), std::max(p.second, q.second)}; }
Interval meet(Interval p, Interval q) { return {std::max(p.first, q.first), std::min(p.second, q.second)}; }

Interval support_of(const Node& n, Variable v) {
  switch (n.op) {
    case Op::Const:
      return n.value == 0.0 ? kEmpty : kFull;
    case Op::Ind:
      return n.var == v ? Interval{n.lo, n.hi} : kFull;
    case Op::Add:
    case Op::Sub:
      return hull(support_of(*n.a, v), support_of(*n.b, v));
    case Op::Mul:
      return meet(support_of(*n.a, v), support_of(*n.b, v));
    case Op::Div:
    case Op::Neg:
    case Op::Abs:
      return support_of(*n.a, v);
    case Op::Pow:
      return n.value > 0.0 ? support_of(*n.a, v) : kFull;
    default:
      return kFull;
  }
}

using Kind = Asymptote::Kind;

// Positive when |f| grows toward the endpoint, negative when it vanishes.
double growth(double exponent, Endpoint e) {
  return e == Endpoint::ZeroRight ? -exponent : exponent;
}

Asymptote make(Kind k, double exponent = 0.0, int sign = 0) { return {k, exponent, sign}; }

Asymptote negate(Asymptote a) {
  a.sign = -a.sign;
  return a;
}

Asymptote add(Asymptote p, Asymptote q, Endpoint e) {
  if (p.kind == Kind::Zero) return q;
  if (q.kind == Kind::Zero) return p;
  if (p.kind == Kind::Unknown || q.kind == Kind::Unknown) return make(Kind::Unknown);
  if (p.kind == Kind::Fast && q.kind == Kind::Fast) return make(Kind::Fast, 0.0, p.sign == q.sign ? p.sign : 0);
  if (p.kind == Kind::Fast) return q;
  if (q.kind == Kind::Fast) return p;
  const double gp = growth(p.exponent, e);
  const double gq = growth(q.exponent, e);
  if (gp > gq) return p;
  if (gq > gp) return q;
  return make(Kind::Power, p.exponent, p.sign == q.sign ? p.sign : 0);
}

Asymptote multiply(Asymptote p, Asymptote q) {
  if (p.kind == Kind::Zero || q.kind == Kind::Zero) return make(Kind::Zero);
  if (p.kind == Kind::Unknown || q.kind == Kind::Unknown) return make(Kind::Unknown);
  if (p.kind == Kind::Fast || q.kind == Kind::Fast) return make(Kind::Fast, 0.0, p.sign * q.sign);
  return make(Kind::Power, p.exponent + q.exponent, p.sign * q.sign);
}

Asymptote divide(Asymptote p, Asymptote q) {
  if (q.kind == Kind::Zero || q.kind == Kind::Unknown || q.kind == Kind::Fast) return make(Kind::Unknown);
  if (p.kind == Kind::Zero) return make(Kind::Zero);
  if (p.kind == Kind::Unknown) return make(Kind::Unknown);
  if (p.kind == Kind::Fast) return make(Kind::Fast, 0.0, p.sign * q.sign);
  return make(Kind::Power, p.exponent - q.exponent, p.sign * q.sign);
}

Asymptote raise(Asymptote p, double c) {
  if (c == 0.0) return make(Kind::Power, 0.0, 1);
  int sign = 0;
  if (p.sign == 1) {
    sign = 1;
  } else if (p.sign == -1 && is_integer(c)) {
    sign = std::fmod(std::fabs(c), 2.0) == 0.0 ? 1 : -1;
  }
  switch (p.kind) {
    case Kind::Zero:
      return c > 0.0 ? make(Kind::Zero) : make(Kind::Unknown);
    case Kind::Fast:
      return c > 0.0 ? make(Kind::Fast, 0.0, sign) : make(Kind::Unknown);
    case Kind::Power:
      return make(Kind::Power, p.exponent * c, sign);
    default:
      return make(Kind::Unknown);
  }
}

Asymptote exponential(Asymptote p, Endpoint e) {
  switch (p.kind) {
    case Kind::Zero:
    case Kind::Fast:
      return make(Kind::Power, 0.0, 1);
    case Kind::Power:
      if (growth(p.exponent, e) <= 0.0) return make(Kind::Power, 0.0, 1);
      return p.sign == -1 ? make(Kind::Fast, 0.0, 1) : make(Kind::Unknown);
    default:
      return make(Kind::Unknown);
  }
}

Asymptote logarithm(Asymptote p, Endpoint e) {
  if (p.kind != Kind::Power) return make(Kind::Unknown);
  const double g = growth(p.exponent, e);
  if (g == 0.0) return make(Kind::Power, 0.0, 0);
  if (p.sign != 1) return make(Kind::Unknown);
  return make(Kind::Power, 0.0, g > 0.0 ? 1 : -1);
}

Asymptote analyse(const Node& n, Variable v, Endpoint e) {
  const Op own = v == Variable::X ? Op::VarX : Op::VarY;
  switch (n.op) {
    case Op::Const:
      if (n.value == 0.0) return make(Kind::Zero);
      return make(Kind::Power, 0.0, n.value > 0.0 ? 1 : -1);
    case Op::VarX:
    case Op::VarY:
      if (n.op == own) return make(Kind::Power, 1.0, e == Endpoint::MinusInfinity ? -1 : 1);
      // The other variable is a fixed generic value; y is always positive.
      return make(Kind::Power, 0.0, n.op == Op::VarY ? 1 : 0);
    case Op::Ind: {
      if (n.var != v) return make(Kind::Power, 0.0, 1);
      bool on = false;
      switch (e) {
        case Endpoint::ZeroRight:
          on = n.lo <= 0.0 && n.hi > 0.0;
          break;
        case Endpoint::PlusInfinity:
          on = std::isinf(n.hi);
          break;
        case Endpoint::MinusInfinity:
          on = std::isinf(n.lo);
          break;
      }
      return on ? make(Kind::Power, 0.0, 1) : make(Kind::Zero);
    }
    case Op::Add:
      return add(analyse(*n.a, v, e), analyse(*n.b, v, e), e);
    case Op::Sub:
      return add(analyse(*n.a, v, e), negate(analyse(*n.b, v, e)), e);
    case Op::Mul:
      return multiply(analyse(*n.a, v, e), analyse(*n.b, v, e));
    case Op::Div:
      return divide(analyse(*n.a, v, e), analyse(*n.b, v, e));
    case Op::Neg:
      return negate(analyse(*n.a, v, e));
    case Op::Abs: {
      Asymptote a = analyse(*n.a, v, e);
      a.sign = 1;
      return a;
    }
    case Op::Pow:
      return raise(analyse(*n.a, v, e), n.value);
    case Op::Exp:
      return exponential(analyse(*n.a, v, e), e);
    case Op::Log:
      return logarithm(analyse(*n.a, v, e), e);
  }
  return make(Kind::Unknown);
}

// Unknown behaviour is treated as non-integrable so that quadrature refuses
// the request instead of returning a silently wrong number.
double left_exponent_of(const Asymptote& a) {
  switch (a.kind) {
    case Kind::Power:
      return a.exponent;
    case Kind::Zero:
    case Kind::Fast:
      return kInf;
    default:
      return -kInf;
  }
}

double decay_exponent_of(const Asymptote& a) {
  switch (a.kind) {
    case Kind::Power:
      return -a.exponent;
    case Kind::Zero:
    case Kind::Fast:
      return kInf;
    default:
      return -kInf;
  }
}

void compile(const Node& n, std::vector<std::uint8_t>& ops, std::vector<std::array<double, 3>>& data,
             std::size_t& depth, std::size_t& max_depth) {
  auto emit = [&](Op op, double value, double lo, double hi) {
    ops.push_back(static_cast<std::uint8_t>(op));
    data.push_back({value, lo, hi});
  };
  switch (n.op) {
    case Op::Const:
    case Op::VarX:
    case Op::VarY:
      emit(n.op, n.value, 0.0, 0.0);
      max_depth = std::max(max_depth, ++depth);
      return;
    case Op::Ind:
      emit(Op::Ind, n.var == Variable::X ? 0.0 : 1.0, n.lo, n.hi);
      max_depth = std::max(max_depth, ++depth);
      return;
    default:
      break;
  }
  compile(*n.a, ops, data, depth, max_depth);
  if (n.b) {
    compile(*n.b, ops, data, depth, max_depth);
    --depth;
  }
  emit(n.op, n.value, 0.0, 0.0);
}

}  // namespace

// ---------------------------------------------------------------- Expr

Expr parse(std::string_view src) {
  Parser parser(src);
  Expr e;
  NodePtr root = parser.parse_all();
  std::vector<std::uint8_t> ops;
  std::vector<std::array<double, 3>> data;
  std::size_t depth = 0;
  compile(*root, ops, data, depth, e.depth_);
  auto program = std::make_shared<std::vector<Expr::Instr>>();
  program->reserve(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    program->push_back({ops[i], data[i][0], data[i][1], data[i][2]});
  }
  e.uses_y_ = uses_y_anywhere(*root);
  e.root_ = std::move(root);
  e.program_ = std::move(program);
  return e;
}

double Expr::run(double x, double y) const {
  constexpr std::size_t kSmall = 64;
  std::array<double, kSmall> small{};
  std::vector<double> large;
  double* st = small.data();
  if (depth_ > kSmall) {
    large.resize(depth_);
    st = large.data();
  }
  std::size_t top = 0;
  for (const Instr& in : *program_) {
    const auto op = static_cast<Op>(in.op);
    switch (op) {
      case Op::Const:
        st[top++] = in.value;
        break;
      case Op::VarX:
        st[top++] = x;
        break;
      case Op::VarY:
        st[top++] = y;
        break;
      case Op::Ind: {
        const double v = in.value == 0.0 ? x : y;
        st[top++] = (v >= in.lo && v <= in.hi) ? 1.0 : 0.0;
        break;
      }
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
      case Op::Div:
        --top;
        st[top - 1] = apply(op, st[top - 1], st[top], 0.0);
        break;
      default:
        st[top - 1] = apply(op, st[top - 1], 0.0, in.value);
        break;
    }
  }
  return st[0];
}

double Expr::operator()(double x) const {
  if (uses_y_) throw DomainError("expression uses y but was evaluated with x only");
  return run(x, 0.0);
}

double Expr::operator()(double x, double y) const { return run(x, y); }

std::string Expr::str() const { return print(*root_); }

std::vector<double> Expr::breakpoints(Variable v) const {
  std::vector<double> out;
  collect_breakpoints(*root_, v, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<double, double> Expr::support(Variable v) const { return support_of(*root_, v); }

Asymptote Expr::asymptote(Variable v, Endpoint e) const { return analyse(*root_, v, e); }

quad::SingularityHints Expr::hints_1d() const {
  quad::SingularityHints h;
  for (double b : breakpoints(Variable::X)) {
    if (b > 0.0) h.breakpoints.push_back(b);
  }
  const auto [lo, hi] = support(Variable::X);
  h.support_lo = std::max(lo, 0.0);
  h.support_hi = hi;
  h.left_exponent = left_exponent_of(asymptote(Variable::X, Endpoint::ZeroRight));
  h.decay_exponent = decay_exponent_of(asymptote(Variable::X, Endpoint::PlusInfinity));
  return h;
}

quad::LineHints Expr::hints_line_x() const {
  quad::LineHints h;
  h.breakpoints = breakpoints(Variable::X);
  const auto [lo, hi] = support(Variable::X);
  h.support_lo = lo;
  h.support_hi = hi;
  h.decay_exponent = std::min(decay_exponent_of(asymptote(Variable::X, Endpoint::PlusInfinity)),
                              decay_exponent_of(asymptote(Variable::X, Endpoint::MinusInfinity)));
  return h;
}

quad::SingularityHints Expr::hints_y() const {
  quad::SingularityHints h;
  for (double b : breakpoints(Variable::Y)) {
    if (b > 0.0) h.breakpoints.push_back(b);
  }
  const auto [lo, hi] = support(Variable::Y);
  h.support_lo = std::max(lo, 0.0);
  h.support_hi = hi;
  h.left_exponent = left_exponent_of(asymptote(Variable::Y, Endpoint::ZeroRight));
  h.decay_exponent = decay_exponent_of(asymptote(Variable::Y, Endpoint::PlusInfinity));
  return h;
}

Func1D Expr::to_func1d() const {
  if (uses_y_) throw DomainError("expression '" + str() + "' uses y; expected a function of x");
  Expr self = *this;
  return Func1D{[self](double x) { return self.run(x, 0.0); }, hints_1d(), str()};
}

Func2D Expr::to_func2d() const {
  Expr self = *this;
  return Func2D{[self](double x, double y) { return self.run(x, y); }, hints_line_x(), hints_y(), str()};
}

double eval(const Expr& e, double x) { return e(x); }
double eval(const Expr& e, double x, double y) { return e(x, y); }

}  // namespace oplab::funcdsl
