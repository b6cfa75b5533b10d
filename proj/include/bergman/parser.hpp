#ifndef BERGMAN_PARSER_HPP
#define BERGMAN_PARSER_HPP

#include "bergman/symbols.hpp"
#include "bergman/toeplitz.hpp"

#include "json.hpp"

#include <string>

namespace bergman {

/// Syntax error with the byte offset of the offending token.
struct parse_error : std::runtime_error {
    size_t offset;
    parse_error(const std::string& what, size_t off)
        : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

/// Symbol expression grammar (exact arithmetic; rationals stay rational):
///
///   expr    := ['-'] term (('+'|'-') term)*
///   term    := factor ('*' factor)*
///   factor  := primary ('^' uint)*
///   primary := number | 'i' | coord | 'conj(' expr ')' | '(' expr ')'
///            | 'radial(' coord ';' piece (',' piece)* ')'
///   piece   := '[' rat ',' rat ']' ':' rpoly
///   rpoly   := ['-'] rterm (('+'|'-') rterm)*
///   rterm   := rat [['*'] 'r' ['^' uint]] | 'r' ['^' uint]
///   coord   := 'z' digits
///   number  := digits ['/' digits | '.' digits]
///
/// Sums of products are expanded on construction, so the result is always in
/// the tensor-term normal form.
SymbolExpr parse_symbol(const std::string& text, int n);

/// Operator expression grammar: opexpr := opterm (('+'|'-') opterm)*;
/// opterm := 'T(' expr ')' ('*' 'T(' expr ')')*.
OperatorExpr parse_operator(const std::string& text, int n);

/// Canonical text form (reparses to a structurally equal expression).
std::string symbol_to_text(const SymbolExpr& s);
std::string operator_to_text(const OperatorExpr& expr);

/// JSON mirror of the symbol AST; exact rationals serialized as strings.
nlohmann::ordered_json symbol_to_json(const SymbolExpr& s);
SymbolExpr symbol_from_json(const nlohmann::ordered_json& j);

}  // namespace bergman

#endif
