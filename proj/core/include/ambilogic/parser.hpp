// ===== parser.hpp — formula surface syntax =====
//
// Grammar, loosest binding last:
//
//   phi      ::= "true" | ident | "!" phi | phi "&" phi | phi "|" phi
//              | phi "->" phi | phi "<->" phi | "(" phi ")"
//              | probsum cmp rat
//              | "B_" int "(" phi ")" | "K_" int "(" phi ")"
//              | "EB^" int "_{" intlist "}" "(" phi ")"
//              | "CB_{" intlist "}" "(" phi ")"
//   probsum  ::= term ("+" term)*
//   term     ::= [rat "*"] "Pr_" int "(" phi ")"
//   cmp      ::= ">=" | "<=" | ">" | "<" | "="
//   rat      ::= ["-"] int ["/" int]
//
// "!" binds tightest, then "&", "|", "->", "<->". "&" and "|" associate
// left, "->" and "<->" right. A probability atom swallows everything up to
// its comparison, so parenthesize it when it sits under a connective (the
// canonical printer always does). "true", "EB", "B_<n>", "K_<n>", "Pr_<n>"
// and identifiers starting "CB_" are reserved and cannot name propositions.

#pragma once

#include "ambilogic/formula.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ambilogic {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, std::string what, std::vector<std::string> expected = {})
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + what),
        line(line),
        col(col),
        expected(std::move(expected)) {}

  int line;
  int col;
  std::vector<std::string> expected;
};

// Parses one formula; the whole input must be consumed. Input is capped at
// 64 KiB. Throws ParseError.
FormulaId parse_formula(std::string_view text, FormulaFactory& factory);

// Parses "n" or "n/d" with optional leading '-'; used for CLI arguments.
// Throws ParseError on malformed input or a zero denominator.
Rational parse_rational_text(std::string_view text);

}  // namespace ambilogic
