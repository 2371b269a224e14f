#pragma once

// Abstract syntax for SL specifications: signature, patterns, the
// meta-language of rule actions, auxiliary functions, dynamic value-set
// definitions, evaluation-context definitions, and rules.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sl/diag.hpp"

namespace sl {

// -------- object types --------

struct ObjType;
using ObjTypePtr = std::shared_ptr<const ObjType>;

/// Types of object-language values: declared ADT names, the builtin
/// leaf types, flat tuples (arity >= 2), and inference unknowns that
/// exist only while the checker runs.
struct ObjType {
    enum class Kind { Named, Str, Int, Bool, Tuple, Unknown };
    Kind kind;
    std::string name;                // Named
    std::vector<ObjTypePtr> elems;   // Tuple
    int uvar = -1;                   // Unknown

    static ObjTypePtr named(std::string n);
    static ObjTypePtr str();
    static ObjTypePtr intty();
    static ObjTypePtr boolty();
    static ObjTypePtr tuple(std::vector<ObjTypePtr> elems);
    static ObjTypePtr unknown(int id);
};

bool type_equal(const ObjTypePtr& a, const ObjTypePtr& b);
std::string type_to_string(const ObjTypePtr& t);

/// The type of a one-hole context: filling a hole of type `hole`
/// produces a term of type `whole`.
struct ContextType {
    ObjTypePtr hole;
    ObjTypePtr whole;
};

bool context_type_equal(const ContextType& a, const ContextType& b);
std::string context_type_to_string(const ContextType& t);

// -------- signature --------

struct Constructor {
    std::string name;
    std::vector<ObjTypePtr> args; // flat argument types; arity = args.size()
    SourceLoc loc;
};

struct TypeDef {
    std::string name;
    std::vector<Constructor> ctors;
    SourceLoc loc;
};

struct Signature {
    std::vector<TypeDef> typedefs;
    std::string start_type;
    SourceLoc start_loc;

    const TypeDef* find_type(const std::string& name) const;
    /// Looks a constructor up across all typedefs; also yields its owner.
    const Constructor* find_ctor(const std::string& name, const TypeDef** owner = nullptr) const;
};

/// A constructor's single pattern-level argument type: none for nullary,
/// the arg itself for unary, a tuple for higher arities.
ObjTypePtr ctor_arg_type(const Constructor& c);

// -------- patterns --------

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Pattern {
    enum class Kind {
        Wildcard,      // _
        Var,           // x                       (name)
        Nullary,       // C                       (name)
        Applied,       // C p                     (name, sub)
        Tuple,         // (p1,...,pk), k >= 2     (elems)
        Alt,           // p | q                   (sub, sub2)
        Alias,         // p as x                  (sub, name)
        TypeConstraint,// (p : type t)            (sub, ty)
        DynConstraint, // (p : D), p in {_, var}  (sub, name)
        CtxFill,       // (p : N) q               (sub = binder, name, sub2 = filler)
        Hole           // BOX — context definitions only
    };
    Kind kind;
    SourceLoc loc;
    std::string name;
    PatternPtr sub;
    PatternPtr sub2;
    std::vector<PatternPtr> elems;
    ObjTypePtr ty;

    static PatternPtr wildcard(SourceLoc loc = {});
    static PatternPtr var(std::string n, SourceLoc loc = {});
    static PatternPtr nullary(std::string n, SourceLoc loc = {});
    static PatternPtr applied(std::string n, PatternPtr arg, SourceLoc loc = {});
    static PatternPtr tuple(std::vector<PatternPtr> elems, SourceLoc loc = {});
    static PatternPtr alt(PatternPtr l, PatternPtr r, SourceLoc loc = {});
    static PatternPtr alias(PatternPtr p, std::string n, SourceLoc loc = {});
    static PatternPtr type_constraint(PatternPtr p, ObjTypePtr t, SourceLoc loc = {});
    static PatternPtr dyn(PatternPtr p, std::string def, SourceLoc loc = {});
    static PatternPtr ctx(PatternPtr binder, std::string def, PatternPtr filler, SourceLoc loc = {});
    static PatternPtr hole(SourceLoc loc = {});
};

/// Number of hole occurrences, counted syntactically; -1 when the two
/// sides of an alternative disagree (every reading of a context arm must
/// place the same holes).
int count_holes(const PatternPtr& p);

// -------- meta-language expressions --------

struct MetaExpr;
using MetaExprPtr = std::shared_ptr<const MetaExpr>;

struct MetaExpr {
    enum class Kind {
        Var,    // name
        Str,    // str
        Int,    // ival
        Bool,   // bval
        Constr, // name, args (flat, or a single tuple-valued arg)
        Tuple,  // args, >= 2
        Call,   // name, args — aux function or builtin
        Fill,   // name = context variable, args[0] = filler
        If,     // args = {cond, then, else}
        Let,    // let_names (+ let_tuple), args = {bound, body}
        BinOp   // name = operator symbol, args = {lhs, rhs}
    };
    Kind kind;
    SourceLoc loc;
    std::string name;
    std::string str;
    long long ival = 0;
    bool bval = false;
    std::vector<MetaExprPtr> args;
    std::vector<std::string> let_names;
    bool let_tuple = false;

    static MetaExprPtr var(std::string n, SourceLoc loc = {});
    static MetaExprPtr lit_str(std::string s, SourceLoc loc = {});
    static MetaExprPtr lit_int(long long v, SourceLoc loc = {});
    static MetaExprPtr lit_bool(bool v, SourceLoc loc = {});
    static MetaExprPtr constr(std::string n, std::vector<MetaExprPtr> args, SourceLoc loc = {});
    static MetaExprPtr tuple(std::vector<MetaExprPtr> args, SourceLoc loc = {});
    static MetaExprPtr call(std::string n, std::vector<MetaExprPtr> args, SourceLoc loc = {});
    static MetaExprPtr fill(std::string ctxvar, MetaExprPtr arg, SourceLoc loc = {});
    static MetaExprPtr ifexpr(MetaExprPtr c, MetaExprPtr t, MetaExprPtr e, SourceLoc loc = {});
    static MetaExprPtr letexpr(std::vector<std::string> names, bool tuple_pat, MetaExprPtr bound,
                               MetaExprPtr body, SourceLoc loc = {});
    static MetaExprPtr binop(std::string op, MetaExprPtr l, MetaExprPtr r, SourceLoc loc = {});
};

// -------- definitions and rules --------

struct AuxClause {
    PatternPtr pat;   // restricted: no dynamic constraints, no context fillings
    MetaExprPtr body;
};

struct AuxFun {
    std::string name;
    std::vector<std::string> params;
    /// Index of the param the clause patterns scrutinize; nullopt for a
    /// plain-expression body (single wildcard clause).
    std::optional<int> scrutinee;
    std::vector<AuxClause> clauses;
    bool recursive = false;
    /// Functions declared in one `let rec ... and ...` group share an id.
    int group = -1;
    SourceLoc loc;
};

struct DynamicDef {
    std::string name;
    PatternPtr pattern;
    SourceLoc loc;
};

struct ContextDef {
    std::string name;
    std::vector<PatternPtr> arms; // each contains exactly one hole
    SourceLoc loc;
};

struct Rule {
    enum class Kind { Axiom, Inference };
    Kind kind;
    std::string name;
    SourceLoc loc;
    PatternPtr lhs;          // axiom LHS / inference conclusion LHS
    MetaExprPtr cond;        // optional `when`
    MetaExprPtr rhs;         // axiom RHS / inference conclusion RHS
    MetaExprPtr premise_lhs; // inference only
    PatternPtr premise_rhs;  // inference only (restricted pattern)
};

struct Spec {
    Signature sig;
    std::vector<AuxFun> auxfuns;
    std::vector<DynamicDef> dynamics;
    std::vector<ContextDef> contexts;
    std::vector<Rule> rules;
};

// Structural equality, ignoring source locations. Used by round-trip tests.
bool ast_equal(const PatternPtr& a, const PatternPtr& b);
bool ast_equal(const MetaExprPtr& a, const MetaExprPtr& b);
bool ast_equal(const Spec& a, const Spec& b);

} // namespace sl
