#pragma once

// The target of pattern compilation: a tree-shaped matching automaton.
// Values flow through named term references ("$0", "$1", ...); user
// pattern variables are bound from those references. Failure is a
// first-class outcome — Choice states try alternatives in order, and
// sub-match calls (RefLet) resume enumeration of the callee's own
// alternatives when their caller rejects a result.

#include <memory>
#include <string>
#include <vector>

#include "sl/ast.hpp"

namespace sl {

struct State;
using StatePtr = std::shared_ptr<const State>;

/// A call into another automaton, made while matching.
struct MatchCall {
    enum class Kind {
        Dynamic, ///< does `arg` satisfy a dynamic value-set definition
        Context, ///< decompose `arg` by a context definition -> (context, hole)
        Rewrite1 ///< rewrite `arg` once at the root -> successor term
    };
    Kind kind;
    /// Definition name for Dynamic/Context; subject-type key for Rewrite1.
    std::string def;
    /// Argument expression, evaluated in the environment at the call.
    MetaExprPtr arg;
};

struct State {
    enum class Kind { Branch, Accept, Choice, Fail, RefLet, Cond, BindLet };
    Kind kind = Kind::Fail;

    // Branch: test the head constructor of `subject`; a matching case
    // binds the constructor payload (one value; a tuple for arity >= 2)
    // to `bound` ("" for nullary constructors).
    std::string subject;
    struct Case {
        std::string ctor;
        std::string bound;
        StatePtr next;
    };
    std::vector<Case> cases;
    StatePtr fallback; // taken when no case applies

    // Accept: `action` evaluated in the final environment. For
    // decompositions the action is the reconstruction body with "$hole"
    // free, and the result is the pair (\hole. action, value of $hole).
    MetaExprPtr action;
    std::string label;
    bool is_decomp = false;

    // Choice: alternatives tried until one yields a result.
    std::vector<StatePtr> alts;

    // RefLet: `names` receive the call's results (two for Context —
    // the reconstruction and the hole's content — one otherwise), then
    // `body` runs; a failing call fails this state.
    std::vector<std::string> names;
    MatchCall call;
    StatePtr body;

    // Cond: proceed to `body` when `cond` is true, fail otherwise.
    MetaExprPtr cond;

    // BindLet: bind `names` from the value of `src` — the whole value,
    // or its components when `tuple_bind` is set — then run `body`.
    bool tuple_bind = false;
    std::string src;

    static StatePtr fail();
    static StatePtr accept(MetaExprPtr action, std::string label, bool is_decomp);
    static StatePtr branch(std::string subject, std::vector<Case> cases, StatePtr fallback);
    static StatePtr choice(std::vector<StatePtr> alts);
    static StatePtr reflet(std::vector<std::string> names, MatchCall call, StatePtr body);
    static StatePtr cond_state(MetaExprPtr cond, StatePtr body);
    static StatePtr bindlet(std::vector<std::string> names, bool tuple_bind, std::string src,
                            StatePtr body);
};

struct Automaton {
    enum class Kind { Dynamic, Context, Rewrite1, Step };
    Kind kind;
    std::string name; ///< display name, e.g. "match_V" or "rewrite1[M]"
    /// Lookup key: definition name (Dynamic/Context) or subject-type
    /// string (Rewrite1/Step).
    std::string key;
    StatePtr root; ///< matches the reference "$0"
};

} // namespace sl
