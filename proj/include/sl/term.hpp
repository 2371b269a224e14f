#pragma once

// Object-language terms: immutable trees of constructor applications over
// string and integer leaves, plus parsing, printing and structural
// type validation against a signature.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sl/ast.hpp"

namespace sl {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { Constr, Str, Int };
    Kind kind;
    std::string ctor;          // Constr
    std::vector<TermPtr> args; // Constr: flat, arity = signature arity
    std::string sval;          // Str
    long long ival = 0;        // Int

    static TermPtr constr(std::string name, std::vector<TermPtr> args = {});
    static TermPtr str(std::string s);
    static TermPtr intv(long long v);
};

bool term_equal(const TermPtr& a, const TermPtr& b);

/// Total order (kind, then head, then arguments); gives listings a
/// canonical sequence.
bool term_less(const TermPtr& a, const TermPtr& b);

int term_size(const TermPtr& t);

/// Nullary constructors print bare, unary ones by juxtaposition with the
/// argument parenthesized when compound, wider ones as `C(a,b)`.
std::string pretty_term(const TermPtr& t);

/// Parses one term (an optional ';;' may follow). Constructors must be
/// declared, arities and argument types must match, and when `expected`
/// is given the whole term must have that type; violations throw
/// ParseError with the offending position.
TermPtr parse_term(const Signature& sig, const std::string& src, ObjTypePtr expected = nullptr);

/// Validates an already-built term, e.g. one produced by rewriting.
/// Returns a message locating the fault by constructor path
/// ("App[1].Lam[2]: expected M, found string"), or nullopt if well-typed.
std::optional<std::string> typecheck_term(const Signature& sig, const TermPtr& t,
                                          const ObjTypePtr& expected);

} // namespace sl
