#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "revbisim/formula.hh"
#include "revbisim/term.hh"

namespace revbisim {

/// Syntax error in term or formula text. `position` is a 0-based byte offset
/// into the input, at most the input length.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::string expected, std::string found);

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

// Term grammar (whitespace insignificant):
//   sum    ::= prefix ('+' prefix)*          left-associative
//   prefix ::= '0' | ACT '.' prefix | ACT '!' '.' prefix | '(' sum ')'
//   ACT    ::= [a-z][a-z0-9_]*
//
// The result is not checked for reachability.
ProcessTerm parse_term(std::string_view text);

// Formula grammar; '&' is left-associative and binds loosest:
//   conj  ::= unary ('&' unary)*
//   unary ::= '~' unary | '<' ACT ['!'] '>' unary | '<<' ACT ['!'] '>>' unary
//           | 'tt' | 'init' | 'until' '(' conj ',' ACT ',' conj ')'
//           | '(' conj ')'
// `<<a>>` and `<<a!>>` with a visible action are the weak visible
// modalities; `<<tau>>` and `<<tau!>>` the weak tau modalities.
Formula parse_formula(std::string_view text);

struct RenderOptions {
  /// Display executed prefixes with a dagger glyph instead of '!'. Output in
  /// this mode is not parseable.
  bool dagger = false;
};

/// Canonical text; parse_term(render_term(p)) == p.
std::string render_term(const ProcessTerm& p, RenderOptions options = {});

/// Canonical text; parse_formula(render_formula(f)) == f.
std::string render_formula(const Formula& f);

}  // namespace revbisim
