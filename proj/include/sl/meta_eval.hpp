#pragma once

// Evaluation of rule actions and auxiliary functions. Values extend
// object terms with tuples, booleans, bare strings/ints, and contexts
// reified as functions from a hole-filling value to a value.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sl/diag.hpp"
#include "sl/term.hpp"

namespace sl {

struct MetaValue;
using ReconFn = std::function<MetaValue(const MetaValue&)>;

struct MetaValue {
    enum class Kind { Term, Tuple, Bool, Int, Str, Recon };
    Kind kind = Kind::Bool;
    TermPtr term;
    std::vector<MetaValue> tuple;
    bool bval = false;
    long long ival = 0;
    std::string sval;
    std::shared_ptr<const ReconFn> recon;

    static MetaValue of_term(TermPtr t);
    static MetaValue of_tuple(std::vector<MetaValue> vs);
    static MetaValue of_bool(bool b);
    static MetaValue of_int(long long v);
    static MetaValue of_str(std::string s);
    static MetaValue of_recon(ReconFn f);
};

/// String/int leaves become bare values; constructor terms stay terms.
MetaValue term_to_value(const TermPtr& t);

/// Inverse of term_to_value where possible; tuples, booleans and
/// contexts cannot appear inside terms and raise EvalError.
TermPtr value_to_term(const MetaValue& v);

/// The payload a constructor match binds: the lone argument's value, or
/// a tuple of them for arity >= 2. Must not be called on nullary terms.
MetaValue ctor_payload(const TermPtr& t);

// -------- environments (persistent, structure-shared) --------

struct EnvNode;
using EnvPtr = std::shared_ptr<const EnvNode>;

struct EnvNode {
    std::string name;
    MetaValue value;
    EnvPtr parent;
};

EnvPtr env_bind(EnvPtr env, std::string name, MetaValue value);
const MetaValue* env_lookup(const EnvPtr& env, const std::string& name);

// -------- evaluation --------

/// Source of globally fresh object-variable names for one run.
struct FreshNameSupply {
    long long next = 0;
    std::string make() { return "_g" + std::to_string(next++); }
};

std::map<std::string, const AuxFun*> build_aux_index(const Spec& spec);

struct EvalCtx {
    const Signature* sig;
    const std::map<std::string, const AuxFun*>* aux;
    FreshNameSupply* fresh;
    int max_depth = 100000;
    int depth = 0;
};

/// Evaluates one expression; auxiliary calls run their clauses in
/// textual order, first match wins. Throws EvalError on genuine faults
/// (no matching clause, depth exceeded, ill-shaped value).
MetaValue eval_meta(EvalCtx& ctx, const MetaExprPtr& e, const EnvPtr& env);

} // namespace sl
