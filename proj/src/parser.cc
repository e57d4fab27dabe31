#include "revbisim/parser.hh"

#include <cctype>

namespace revbisim {

ParseError::ParseError(std::size_t position, std::string expected,
                       std::string found)
    : std::runtime_error("parse error at offset " + std::to_string(position) +
                         ": expected " + expected + ", found " +
                         (found.empty() ? std::string("end of input")
                                        : "'" + found + "'")),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

/// Character cursor shared by both grammars.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool peek_is(std::string_view s) {
    skip_space();
    return text_.substr(pos_, s.size()) == s;
  }

  bool accept(std::string_view s) {
    if (peek_is(s)) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view s) {
    if (!accept(s)) {
      fail("'" + std::string(s) + "'");
    }
  }

  /// Reads [a-z][a-z0-9_]* without consuming on failure.
  std::optional<std::string> identifier() {
    skip_space();
    std::size_t end = pos_;
    if (end < text_.size() && text_[end] >= 'a' && text_[end] <= 'z') {
      ++end;
      while (end < text_.size() &&
             ((text_[end] >= 'a' && text_[end] <= 'z') ||
              (text_[end] >= '0' && text_[end] <= '9') || text_[end] == '_')) {
        ++end;
      }
      std::string name(text_.substr(pos_, end - pos_));
      pos_ = end;
      return name;
    }
    return std::nullopt;
  }

  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

  [[noreturn]] void fail(std::string expected) {
    skip_space();
    std::size_t end = pos_;
    while (end < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[end]))) {
      ++end;
      if (end - pos_ >= 16) {
        break;
      }
    }
    throw ParseError(pos_, std::move(expected),
                     std::string(text_.substr(pos_, end - pos_)));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class TermParser {
 public:
  explicit TermParser(std::string_view text) : in_(text) {}

  ProcessTerm parse() {
    ProcessTerm p = sum();
    if (!in_.at_end()) {
      in_.fail("'+' or end of input");
    }
    return p;
  }

 private:
  ProcessTerm sum() {
    ProcessTerm p = prefix();
    while (in_.accept("+")) {
      p = ProcessTerm::choice(std::move(p), prefix());
    }
    return p;
  }

  ProcessTerm prefix() {
    if (in_.accept("0")) {
      return ProcessTerm::nil();
    }
    if (in_.accept("(")) {
      ProcessTerm p = sum();
      in_.expect(")");
      return p;
    }
    auto name = in_.identifier();
    if (!name) {
      in_.fail("'0', '(' or an action");
    }
    bool executed = in_.accept("!");
    in_.expect(".");
    ProcessTerm cont = prefix();
    Action a(std::move(*name));
    return executed ? ProcessTerm::exec_prefix(std::move(a), std::move(cont))
                    : ProcessTerm::prefix(std::move(a), std::move(cont));
  }

  Scanner in_;
};

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : in_(text) {}

  Formula parse() {
    Formula f = conj();
    if (!in_.at_end()) {
      in_.fail("'&' or end of input");
    }
    return f;
  }

 private:
  Formula conj() {
    Formula f = unary();
    while (in_.accept("&")) {
      f = Formula::conjunction(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    if (in_.accept("~")) {
      return Formula::negation(unary());
    }
    if (in_.accept("<<")) {
      Action a = action();
      bool back = in_.accept("!");
      in_.expect(">>");
      Formula body = unary();
      if (a.is_tau()) {
        return back ? Formula::weak_back_tau_diamond(std::move(body))
                    : Formula::weak_tau_diamond(std::move(body));
      }
      return back ? Formula::weak_back_diamond(std::move(a), std::move(body))
                  : Formula::weak_diamond(std::move(a), std::move(body));
    }
    if (in_.accept("<")) {
      Action a = action();
      bool back = in_.accept("!");
      in_.expect(">");
      Formula body = unary();
      return back ? Formula::back_diamond(std::move(a), std::move(body))
                  : Formula::diamond(std::move(a), std::move(body));
    }
    if (in_.accept("(")) {
      Formula f = conj();
      in_.expect(")");
      return f;
    }
    std::size_t start = in_.position();
    auto word = in_.identifier();
    if (word == "tt") {
      return Formula::truth();
    }
    if (word == "init") {
      return Formula::init();
    }
    if (word == "until") {
      in_.expect("(");
      Formula hold = conj();
      in_.expect(",");
      Action a = action();
      in_.expect(",");
      Formula reach = conj();
      in_.expect(")");
      return Formula::until(std::move(hold), std::move(a), std::move(reach));
    }
    in_.rewind(start);
    in_.fail("'tt', 'init', 'until', '~', '(' or a modality");
  }

  Action action() {
    auto name = in_.identifier();
    if (!name) {
      in_.fail("an action");
    }
    return Action(std::move(*name));
  }

  Scanner in_;
};

void render_term_into(const ProcessTerm& p, const RenderOptions& options,
                      std::string& out) {
  switch (p.kind()) {
    case ProcessTerm::Kind::Nil:
      out += '0';
      return;
    case ProcessTerm::Kind::Prefix:
    case ProcessTerm::Kind::ExecPrefix: {
      out += p.action().name();
      if (p.kind() == ProcessTerm::Kind::ExecPrefix) {
        out += options.dagger ? "†" : "!";
      }
      out += '.';
      const ProcessTerm& cont = p.continuation();
      bool paren = cont.kind() == ProcessTerm::Kind::Choice;
      if (paren) out += '(';
      render_term_into(cont, options, out);
      if (paren) out += ')';
      return;
    }
    case ProcessTerm::Kind::Choice: {
      render_term_into(p.left(), options, out);
      out += " + ";
      bool paren = p.right().kind() == ProcessTerm::Kind::Choice;
      if (paren) out += '(';
      render_term_into(p.right(), options, out);
      if (paren) out += ')';
      return;
    }
  }
}

void render_formula_into(const Formula& f, std::string& out);

void render_operand(const Formula& f, std::string& out) {
  bool paren = f.connective() == Connective::And;
  if (paren) out += '(';
  render_formula_into(f, out);
  if (paren) out += ')';
}

void render_formula_into(const Formula& f, std::string& out) {
  switch (f.connective()) {
    case Connective::True:
      out += "tt";
      return;
    case Connective::Init:
      out += "init";
      return;
    case Connective::Not:
      out += '~';
      render_operand(f.operand(), out);
      return;
    case Connective::And:
      render_formula_into(f.left(), out);
      out += " & ";
      render_operand(f.right(), out);
      return;
    case Connective::Diamond:
      out += '<' + f.action().name() + '>';
      render_operand(f.operand(), out);
      return;
    case Connective::BackDiamond:
      out += '<' + f.action().name() + "!>";
      render_operand(f.operand(), out);
      return;
    case Connective::WeakTauDiamond:
      out += "<<tau>>";
      render_operand(f.operand(), out);
      return;
    case Connective::WeakDiamond:
      out += "<<" + f.action().name() + ">>";
      render_operand(f.operand(), out);
      return;
    case Connective::WeakBackTauDiamond:
      out += "<<tau!>>";
      render_operand(f.operand(), out);
      return;
    case Connective::WeakBackDiamond:
      out += "<<" + f.action().name() + "!>>";
      render_operand(f.operand(), out);
      return;
    case Connective::Until:
      out += "until(";
      render_formula_into(f.left(), out);
      out += ", " + f.action().name() + ", ";
      render_formula_into(f.right(), out);
      out += ')';
      return;
  }
}

}  // namespace

ProcessTerm parse_term(std::string_view text) {
  return TermParser(text).parse();
}

Formula parse_formula(std::string_view text) {
  return FormulaParser(text).parse();
}

std::string render_term(const ProcessTerm& p, RenderOptions options) {
  std::string out;
  render_term_into(p, options, out);
  return out;
}

std::string render_formula(const Formula& f) {
  std::string out;
  render_formula_into(f, out);
  return out;
}

}  // namespace revbisim
