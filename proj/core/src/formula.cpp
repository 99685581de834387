#include "delearn/formula.hpp"

#include <cctype>
#include <sstream>

namespace delearn {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> kids;
};


Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw InputError("invalid atom '" + name + "'");
  return Formula(std::make_shared<const Node>(Node{Kind::atom, std::move(name), {}}));
}
Formula Formula::top() { return Formula(std::make_shared<const Node>(Node{Kind::top, {}, {}})); }
Formula Formula::bottom() {
  return Formula(std::make_shared<const Node>(Node{Kind::bottom, {}, {}}));
}
Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::negation, {}, {std::move(f)}}));
}
Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::conjunction, {}, {std::move(lhs), std::move(rhs)}}));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::disjunction, {}, {std::move(lhs), std::move(rhs)}}));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::implication, {}, {std::move(lhs), std::move(rhs)}}));
}
Formula Formula::equivalence(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::equivalence, {}, {std::move(lhs), std::move(rhs)}}));
}
Formula Formula::knows(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::knows, {}, {std::move(f)}}));
}
Formula Formula::knows_whether(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::knows_whether, {}, {std::move(f)}}));
}
Formula Formula::event_box(std::string model, Formula f) {
  if (!is_identifier(model)) throw InputError("invalid event model name '" + model + "'");
  return Formula(std::make_shared<const Node>(Node{Kind::event_box, std::move(model), {std::move(f)}}));
}
Formula Formula::action_box(std::string action, Formula f) {
  if (!is_identifier(action)) throw InputError("invalid action name '" + action + "'");
  return Formula(std::make_shared<const Node>(Node{Kind::action_box, std::move(action), {std::move(f)}}));
}

Formula Formula::all_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conjunction(acc, parts[i]);
  return acc;
}

Formula Formula::any_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return bottom();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disjunction(acc, parts[i]);
  return acc;
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }

const Formula& Formula::lhs() const {
  if (node_->kids.empty()) throw std::logic_error("formula has no operand");
  return node_->kids.front();
}
const Formula& Formula::rhs() const {
  if (node_->kids.size() < 2) throw std::logic_error("formula has no right operand");
  return node_->kids[1];
}

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
    case Kind::equivalence:
      return true;
    default:
      return false;
  }
}

bool Formula::is_unary() const {
  switch (kind()) {
    case Kind::negation:
    case Kind::knows:
    case Kind::knows_whether:
    case Kind::event_box:
    case Kind::action_box:
      return true;
    default:
      return false;
  }
}

bool Formula::is_static() const {
  if (kind() == Kind::event_box || kind() == Kind::action_box) return false;
  if (is_unary()) return lhs().is_static();
  if (is_binary()) return lhs().is_static() && rhs().is_static();
  return true;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name && a.node_->kids == b.node_->kids;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { ident, lparen, rparen, lbracket, rbracket, tilde, amp, bar, arrow, iff, end };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (i_ >= src_.size()) {
        out.push_back({Tok::end, {}, i_});
        return out;
      }
      const std::size_t start = i_;
      const char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_' ||
                                    src_[i_] == '\'')) {
          ++i_;
        }
        out.push_back({Tok::ident, std::string(src_.substr(start, i_ - start)), start});
        continue;
      }
      ++i_;
      switch (c) {
        case '(': out.push_back({Tok::lparen, "(", start}); break;
        case ')': out.push_back({Tok::rparen, ")", start}); break;
        case '[': out.push_back({Tok::lbracket, "[", start}); break;
        case ']': out.push_back({Tok::rbracket, "]", start}); break;
        case '~': out.push_back({Tok::tilde, "~", start}); break;
        case '&': out.push_back({Tok::amp, "&", start}); break;
        case '|': out.push_back({Tok::bar, "|", start}); break;
        case '-':
          if (i_ < src_.size() && src_[i_] == '>') {
            ++i_;
            out.push_back({Tok::arrow, "->", start});
            break;
          }
          fail(start, "expected '->'");
        case '<':
          if (src_.substr(i_, 2) == "->") {
            i_ += 2;
            out.push_back({Tok::iff, "<->", start});
            break;
          }
          fail(start, "expected '<->'");
        default:
          fail(start, std::string("unexpected character '") + c + "'");
      }
    }
  }

  [[noreturn]] static void fail(std::size_t pos, const std::string& what) {
    throw InputError("formula syntax error at position " + std::to_string(pos) + ": " + what);
  }

 private:
  void skip_space() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, BoxKind boxes) : toks_(std::move(tokens)), boxes_(boxes) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().type != Tok::end) Lexer::fail(peek().pos, "unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& next() { return toks_[k_++]; }
  void expect(Tok t, const char* what) {
    if (peek().type != t) Lexer::fail(peek().pos, std::string("expected ") + what);
    ++k_;
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (peek().type == Tok::iff) {
      next();
      return Formula::equivalence(lhs, parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().type == Tok::arrow) {
      next();
      return Formula::implication(lhs, parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula acc = parse_and();
    while (peek().type == Tok::bar) {
      next();
      acc = Formula::disjunction(acc, parse_and());
    }
    return acc;
  }

  Formula parse_and() {
    Formula acc = parse_unary();
    while (peek().type == Tok::amp) {
      next();
      acc = Formula::conjunction(acc, parse_unary());
    }
    return acc;
  }

  Formula parse_unary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::tilde:
        next();
        return Formula::negation(parse_unary());
      case Tok::lbracket: {
        next();
        if (peek().type != Tok::ident) Lexer::fail(peek().pos, "expected a name inside '[...]'");
        std::string name = next().text;
        expect(Tok::rbracket, "']'");
        Formula body = parse_unary();
        return boxes_ == BoxKind::event ? Formula::event_box(std::move(name), body)
                                        : Formula::action_box(std::move(name), body);
      }
      case Tok::lparen: {
        next();
        Formula inner = parse_iff();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident: {
        next();
        if (t.text == "K") return Formula::knows(parse_unary());
        if (t.text == "Kw") return Formula::knows_whether(parse_unary());
        if (t.text == "true") return Formula::top();
        if (t.text == "false") return Formula::bottom();
        return Formula::atom(t.text);
      }
      case Tok::end:
        Lexer::fail(t.pos, "unexpected end of formula");
      default:
        Lexer::fail(t.pos, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
  BoxKind boxes_;
};

// Binding strength; larger binds tighter.
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::equivalence: return 1;
    case Formula::Kind::implication: return 2;
    case Formula::Kind::disjunction: return 3;
    case Formula::Kind::conjunction: return 4;
    default: return 5;
  }
}

const char* symbol(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::equivalence: return " <-> ";
    case Formula::Kind::implication: return " -> ";
    case Formula::Kind::disjunction: return " | ";
    case Formula::Kind::conjunction: return " & ";
    default: return "";
  }
}

bool right_assoc(Formula::Kind k) {
  return k == Formula::Kind::implication || k == Formula::Kind::equivalence;
}

void render_into(const Formula& f, std::ostringstream& out);

void render_operand(const Formula& f, bool parens, std::ostringstream& out) {
  if (parens) out << '(';
  render_into(f, out);
  if (parens) out << ')';
}

// Prefix operators take an operand that is itself prefix or atomic; anything
// binary gets parenthesised.
void render_prefixed(const char* op, bool spaced, const Formula& operand, std::ostringstream& out) {
  out << op;
  if (operand.is_binary()) {
    render_operand(operand, true, out);
  } else {
    if (spaced) out << ' ';
    render_into(operand, out);
  }
}

void render_into(const Formula& f, std::ostringstream& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::atom: out << f.name(); return;
    case K::top: out << "true"; return;
    case K::bottom: out << "false"; return;
    case K::negation: render_prefixed("~", false, f.lhs(), out); return;
    case K::knows: render_prefixed("K", true, f.lhs(), out); return;
    case K::knows_whether: render_prefixed("Kw", true, f.lhs(), out); return;
    case K::event_box:
    case K::action_box: {
      const std::string op = "[" + f.name() + "]";
      render_prefixed(op.c_str(), true, f.lhs(), out);
      return;
    }
    default: break;
  }
  const int prec = precedence(f.kind());
  const bool rassoc = right_assoc(f.kind());
  const int lp = precedence(f.lhs().kind());
  const int rp = precedence(f.rhs().kind());
  render_operand(f.lhs(), lp < prec || (lp == prec && rassoc), out);
  out << symbol(f.kind());
  render_operand(f.rhs(), rp < prec || (rp == prec && !rassoc), out);
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Formula::Kind::atom) {
    out.insert(f.name());
    return;
  }
  if (f.is_unary()) collect_atoms(f.lhs(), out);
  if (f.is_binary()) {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  }
}

}  // namespace

Formula parse_formula(std::string_view text, BoxKind boxes) {
  Lexer lexer(text);
  Parser parser(lexer.run(), boxes);
  return parser.parse();
}

std::string render(const Formula& f) {
  std::ostringstream out;
  render_into(f, out);
  return out.str();
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

}  // namespace delearn
