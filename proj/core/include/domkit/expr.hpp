#pragma once

#include <string>
#include <variant>

#include "domkit/cut.hpp"
#include "domkit/dom.hpp"

namespace domkit {

// Z | Q | Zloc(p) | lex(G, ...)
Group parse_group(const std::string& text);

// cuts(G) | tilde(G) | group(G) | G | trivial(n) | table(path) | path.tbl
// | dual(C) | inf(C) | shift(C) | quotient(C) | cutsof(C)
DomPtr parse_carrier(const std::string& text);

// Either an element or a signature (from sign(..), printable only).
using Value = std::variant<Element, Signature>;

// expr := term { op term },  op := + | +R | - | -L    (left associative, one precedence level)
// term := neg(expr) | width(expr) | abs(expr) | sign(expr) | ( expr ) | literal
// Operators are separated by whitespace; literals contain none. A cut's side sign follows ')' directly.
// Throws ParseError on bad syntax, TypeError on values outside the carrier.
Value evaluate(const Dom& d, const std::string& text);
std::string format_value(const Dom& d, const Value& v);

}  // namespace domkit
