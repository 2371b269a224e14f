#pragma once

// Runs compiled automata over terms: dynamic membership, context
// decomposition, single root rewrites, the step relation, exhaustive
// successor enumeration, and full evaluation traces.
//
// Matching is backtracking search with failure as a value: every state
// handler returns whether some acceptance downstream satisfied the
// caller's continuation. A continuation that always declines makes the
// search exhaustive, which is how enumeration works. Choice alternatives
// are visited in a freshly drawn random order at every visit, so a seed
// fixes the entire run while still exercising rule overlap.

#include <cstdint>
#include <optional>

#include "sl/compile.hpp"
#include "sl/meta_eval.hpp"

namespace sl {

struct RunOptions {
    std::uint64_t seed = 0;    ///< drives Choice exploration order
    int max_steps = 10000;     ///< evaluation cutoff
    int max_aux_depth = 100000; ///< auxiliary-function recursion cutoff
};

/// One step of the step relation: the successor term and the rule
/// labels that produced it, innermost first ("betav,eval").
struct Step {
    TermPtr term;
    std::string label;
};

struct Trace {
    TermPtr initial;
    std::vector<Step> steps;
    bool hit_step_limit = false; ///< stopped by max_steps, not by normal form
};

/// One way of splitting a term as context-around-subterm. Filling the
/// reconstruction with the hole's content rebuilds the original term.
struct Decomposition {
    MetaValue recon; ///< context reified as a function (Kind::Recon)
    TermPtr hole;    ///< the subterm found in the hole
};

/// Applies a reified context to a filler term.
TermPtr apply_recon(const MetaValue& recon, const TermPtr& filler);

/// The printed form of a run: the initial term, then per step a
/// " ==>    by <labels>" line followed by the successor term.
std::string render_trace(const Trace& trace);

class Engine {
public:
    explicit Engine(const CompiledSpec& cs);

    /// Does `t` belong to the dynamic definition `def`?
    bool matches_dynamic(const std::string& def, const TermPtr& t, const RunOptions& opts = {});

    /// Every decomposition of `t` under the context definition `def`.
    std::vector<Decomposition> decompositions(const std::string& def, const TermPtr& t,
                                              const RunOptions& opts = {});

    /// One rewrite of `t` at the root, by the axioms alone.
    std::optional<Step> rewrite_root(const TermPtr& t, const RunOptions& opts = {});

    /// One step of the step relation, or nullopt when `t` is stuck. A
    /// specification without inference rules steps by root rewriting.
    std::optional<Step> step(const TermPtr& t, const RunOptions& opts = {});

    /// All distinct (successor, label) pairs reachable from `t` in one
    /// step, sorted by printed term then label.
    std::vector<Step> enumerate_steps(const TermPtr& t, const RunOptions& opts = {});

    /// Iterates the step relation from `t` until stuck or max_steps.
    Trace evaluate(const TermPtr& t, const RunOptions& opts = {});

private:
    struct Runner;

    const CompiledSpec& cs_;
    std::map<std::string, const AuxFun*> aux_;
    FreshNameSupply fresh_;
    bool has_inference_ = false;

    std::string subject_key(const TermPtr& t) const;
    const Automaton* step_automaton(const TermPtr& t) const;
    std::optional<Step> step_in(Runner& r, const TermPtr& t);
};

} // namespace sl
