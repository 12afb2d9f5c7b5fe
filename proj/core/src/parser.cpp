#include "subdiv/parser.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "subdiv/mlp.hpp"

namespace subdiv {

namespace {

struct Token {
  enum class Kind {
    End, Newline, Ident, Number, String,
    LParen, RParen, LBracket, RBracket, Comma, Colon,
    Plus, Minus, Star, Slash, Caret, Assign, Le, EqEq
  };
  Kind kind;
  std::string text;
  double number = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_ws_and_comments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    char c = src_[pos_];
    if (c == '\n' || c == ';') {
      advance();
      t.kind = Token::Kind::Newline;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        t.text += src_[pos_];
        advance();
      }
      t.kind = Token::Kind::Ident;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      std::string num;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '.')) {
        num += src_[pos_];
        advance();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t save = pos_;
        std::string exp;
        exp += src_[pos_];
        advance();
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
          exp += src_[pos_];
          advance();
        }
        if (pos_ < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() &&
                 std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            exp += src_[pos_];
            advance();
          }
          num += exp;
        } else {
          pos_ = save;  // 'e' was an identifier start, not an exponent
        }
      }
      t.kind = Token::Kind::Number;
      t.text = num;
      try {
        t.number = std::stod(num);
      } catch (...) {
        throw ParseError(t.line, t.col, "bad numeric literal '" + num + "'");
      }
      return t;
    }
    if (c == '"') {
      advance();
      while (pos_ < src_.size() && src_[pos_] != '"') {
        t.text += src_[pos_];
        advance();
      }
      if (pos_ >= src_.size())
        throw ParseError(t.line, t.col, "unterminated string");
      advance();
      t.kind = Token::Kind::String;
      return t;
    }
    advance();
    switch (c) {
      case '(': t.kind = Token::Kind::LParen; return t;
      case ')': t.kind = Token::Kind::RParen; return t;
      case '[': t.kind = Token::Kind::LBracket; return t;
      case ']': t.kind = Token::Kind::RBracket; return t;
      case ',': t.kind = Token::Kind::Comma; return t;
      case ':': t.kind = Token::Kind::Colon; return t;
      case '+': t.kind = Token::Kind::Plus; return t;
      case '*': t.kind = Token::Kind::Star; return t;
      case '/': t.kind = Token::Kind::Slash; return t;
      case '^': t.kind = Token::Kind::Caret; return t;
      case '-': t.kind = Token::Kind::Minus; return t;
      case '=':
        if (pos_ < src_.size() && src_[pos_] == '=') {
          advance();
          t.kind = Token::Kind::EqEq;
        } else {
          t.kind = Token::Kind::Assign;
        }
        return t;
      case '<':
        if (pos_ < src_.size() && src_[pos_] == '=') {
          advance();
          t.kind = Token::Kind::Le;
          return t;
        }
        throw ParseError(t.line, t.col, "expected '<='");
      default:
        throw ParseError(t.line, t.col,
                         std::string("unexpected character '") + c + "'");
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(const std::string& text, std::string base_dir)
      : lexer_(text), base_dir_(std::move(base_dir)) {
    cur_ = lexer_.next();
  }

  Problem run() {
    bool have_obj = false;
    while (cur_.kind != Token::Kind::End) {
      if (cur_.kind == Token::Kind::Newline) {
        consume();
        continue;
      }
      expect_ident();
      if (cur_.text == "var") {
        parse_var();
      } else if (cur_.text == "obj") {
        if (have_obj) fail("duplicate objective");
        parse_obj();
        have_obj = true;
      } else if (cur_.text == "con") {
        parse_con();
      } else if (cur_.text == "ann") {
        parse_ann();
      } else {
        fail("expected 'var', 'obj', 'con' or 'ann', got '" + cur_.text + "'");
      }
      end_statement();
    }
    if (!have_obj) fail("empty objective: no 'obj:' statement");
    problem_.dag = builder_.take();
    return std::move(problem_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(cur_.line, cur_.col, msg);
  }

  void consume() { cur_ = lexer_.next(); }

  void expect(Token::Kind k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    consume();
  }

  void expect_ident() {
    if (cur_.kind != Token::Kind::Ident) fail("expected identifier");
  }

  void end_statement() {
    if (cur_.kind == Token::Kind::Newline) {
      consume();
    } else if (cur_.kind != Token::Kind::End) {
      fail("expected end of statement");
    }
  }

  std::string take_ident() {
    expect_ident();
    std::string name = cur_.text;
    consume();
    return name;
  }

  double signed_number() {
    bool neg = false;
    if (cur_.kind == Token::Kind::Minus) {
      neg = true;
      consume();
    }
    if (cur_.kind != Token::Kind::Number) fail("expected number");
    double v = cur_.number;
    consume();
    return neg ? -v : v;
  }

  void parse_var() {
    consume();  // var
    std::string name = take_ident();
    if (vars_.count(name) || anns_.count(name))
      fail("duplicate identifier '" + name + "'");
    if (cur_.kind != Token::Kind::Ident || cur_.text != "in")
      fail("expected 'in'");
    consume();
    expect(Token::Kind::LBracket, "'['");
    double lo = signed_number();
    expect(Token::Kind::Comma, "','");
    double hi = signed_number();
    expect(Token::Kind::RBracket, "']'");
    if (!(lo <= hi)) fail("variable '" + name + "' has empty bounds");
    std::uint32_t idx = problem_.n++;
    vars_[name] = idx;
    problem_.names.push_back(name);
    problem_.box.dims.emplace_back(lo, hi);
  }

  void parse_obj() {
    consume();  // obj
    expect(Token::Kind::Colon, "':'");
    problem_.objective = parse_expr();
  }

  void parse_con() {
    consume();  // con
    take_ident();  // constraint name (documentation only)
    expect(Token::Kind::Colon, "':'");
    NodeId e = parse_expr();
    bool is_eq;
    if (cur_.kind == Token::Kind::Le) {
      is_eq = false;
    } else if (cur_.kind == Token::Kind::EqEq) {
      is_eq = true;
    } else {
      fail("expected '<= 0' or '== 0'");
    }
    consume();
    if (cur_.kind != Token::Kind::Number || cur_.number != 0.0)
      fail("constraint right-hand side must be 0");
    consume();
    (is_eq ? problem_.eq : problem_.ineq).push_back(e);
  }

  void parse_ann() {
    consume();  // ann
    std::string name = take_ident();
    if (vars_.count(name) || anns_.count(name))
      fail("duplicate identifier '" + name + "'");
    expect(Token::Kind::Assign, "'='");
    if (cur_.kind != Token::Kind::Ident || cur_.text != "mlp")
      fail("expected 'mlp'");
    consume();
    expect(Token::Kind::LParen, "'('");
    if (cur_.kind != Token::Kind::String) fail("expected weights file string");
    std::string path = cur_.text;
    consume();
    std::vector<NodeId> args;
    while (cur_.kind == Token::Kind::Comma) {
      consume();
      args.push_back(parse_expr());
    }
    expect(Token::Kind::RParen, "')'");

    if (!base_dir_.empty() &&
        !std::filesystem::path(path).is_absolute()) {
      path = (std::filesystem::path(base_dir_) / path).string();
    }
    std::vector<LayerSpec> layers;
    try {
      layers = load_ann_weights(path);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    std::vector<NodeId> outs;
    try {
      outs = build_mlp(builder_, layers, args);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (outs.size() != 1)
      fail("ann '" + name + "' must have a scalar output, got " +
           std::to_string(outs.size()));
    anns_[name] = outs[0];
  }

  // expression ::= term { (+|-) term }
  NodeId parse_expr() {
    NodeId lhs = parse_term();
    while (cur_.kind == Token::Kind::Plus || cur_.kind == Token::Kind::Minus) {
      BinOp op = cur_.kind == Token::Kind::Plus ? BinOp::Add : BinOp::Sub;
      consume();
      NodeId rhs = parse_term();
      lhs = builder_.binary(op, lhs, rhs);
    }
    return lhs;
  }

  // term ::= unary { (*|/) unary }
  NodeId parse_term() {
    NodeId lhs = parse_unary();
    while (cur_.kind == Token::Kind::Star || cur_.kind == Token::Kind::Slash) {
      BinOp op = cur_.kind == Token::Kind::Star ? BinOp::Mul : BinOp::Div;
      consume();
      NodeId rhs = parse_unary();
      lhs = builder_.binary(op, lhs, rhs);
    }
    return lhs;
  }

  // unary ::= - unary | power
  NodeId parse_unary() {
    if (cur_.kind == Token::Kind::Minus) {
      consume();
      return builder_.unary(UnOp::Neg, parse_unary());
    }
    return parse_power();
  }

  // power ::= atom [ ^ exponent ]   (right-associative)
  NodeId parse_power() {
    NodeId base = parse_atom();
    if (cur_.kind != Token::Kind::Caret) return base;
    consume();
    // integer literal exponents lower to the dedicated power intrinsic
    bool neg = false;
    if (cur_.kind == Token::Kind::Minus) {
      // peek: -3 as literal exponent
      neg = true;
      consume();
    }
    if (cur_.kind == Token::Kind::Number) {
      double v = cur_.number;
      if (v == std::floor(v) && std::abs(v) <= 1e9 &&
          cur_.text.find('.') == std::string::npos &&
          cur_.text.find('e') == std::string::npos &&
          cur_.text.find('E') == std::string::npos) {
        consume();
        int k = static_cast<int>(neg ? -v : v);
        // no further ^ chaining after an integer exponent literal
        return builder_.unary(UnOp::PowInt, base, k);
      }
    }
    NodeId expo = neg ? builder_.unary(UnOp::Neg, parse_unary()) : parse_unary();
    // general powers: b^e = exp(e * log(b)), inheriting log's domain
    NodeId logb = builder_.unary(UnOp::Log, base);
    return builder_.unary(UnOp::Exp, builder_.binary(BinOp::Mul, expo, logb));
  }

  NodeId parse_atom() {
    switch (cur_.kind) {
      case Token::Kind::Number: {
        double v = cur_.number;
        consume();
        return builder_.constant(v);
      }
      case Token::Kind::LParen: {
        consume();
        NodeId e = parse_expr();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Ident: {
        std::string name = cur_.text;
        Token save = cur_;
        consume();
        if (cur_.kind == Token::Kind::LParen) {
          consume();
          NodeId arg = parse_expr();
          expect(Token::Kind::RParen, "')'");
          if (name == "exp") return builder_.unary(UnOp::Exp, arg);
          if (name == "log") return builder_.unary(UnOp::Log, arg);
          if (name == "sin") return builder_.unary(UnOp::Sin, arg);
          if (name == "cos") return builder_.unary(UnOp::Cos, arg);
          if (name == "tanh") return builder_.unary(UnOp::Tanh, arg);
          if (name == "sqrt") return builder_.unary(UnOp::Sqrt, arg);
          throw ParseError(save.line, save.col,
                           "unknown function '" + name + "'");
        }
        if (auto it = vars_.find(name); it != vars_.end())
          return builder_.variable(it->second);
        if (auto it = anns_.find(name); it != anns_.end()) return it->second;
        throw ParseError(save.line, save.col,
                         "unknown identifier " + name);
      }
      default:
        fail("expected expression");
    }
  }

  Lexer lexer_;
  Token cur_;
  std::string base_dir_;
  DagBuilder builder_;
  Problem problem_;
  std::map<std::string, std::uint32_t> vars_;
  std::map<std::string, NodeId> anns_;
};

}  // namespace

Problem parse_problem(const std::string& text, const std::string& base_dir) {
  return Parser(text, base_dir).run();
}

Problem parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(),
                       std::filesystem::path(path).parent_path().string());
}

}  // namespace subdiv
