#pragma once

#include <string>
#include <vector>

#include "sl/diag.hpp"

namespace sl {

enum class Tok {
    Ident,   // lowercase-leading identifier
    UIdent,  // uppercase-leading identifier
    Int,
    Str,
    TyVar,   // 'a — only so polymorphic typedefs get a decent diagnostic
    // keywords
    KwSignature, KwSpecification, KwType, KwStartfrom, KwDynamic, KwAxiom,
    KwContext, KwInference, KwWhen, KwOf, KwLet, KwRec, KwAnd, KwMatch,
    KwWith, KwIf, KwThen, KwElse, KwIn, KwTrue, KwFalse, KwBox,
    // punctuation and operators
    LParen, RParen, Comma, Colon, Semi2, Bar, Star, Arrow,
    DArrow,    // ==>
    BarDArrow, // |==>
    RuleSep,   // a run of three or more dashes
    Eq, Neq, Lt, Le, Gt, Ge, Plus, Minus, Underscore, Hash,
    Eof
};

struct Token {
    Tok kind;
    std::string text; // identifier body / string contents / digits
    long long ival = 0;
    SourceLoc loc;
};

std::string tok_name(Tok k);

/// Tokenizes a whole source buffer. Comments are `(* ... *)` and nest.
/// Throws ParseError on lexical errors.
std::vector<Token> lex(const std::string& src);

} // namespace sl
