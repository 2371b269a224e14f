#pragma once

// Compiles a checked specification into matching automata: one per
// dynamic definition, one per context definition, and per subject type
// one root-rewrite automaton (the axioms) and one step automaton (the
// inference rules).

#include <map>

#include "sl/automaton.hpp"
#include "sl/typecheck.hpp"

namespace sl {

struct CompiledSpec {
    CheckedSpec checked;
    /// In presentation order: dynamics, contexts, root-rewrite groups,
    /// step groups — each in specification order.
    std::vector<Automaton> automata;

    const Automaton* find(Automaton::Kind kind, const std::string& key) const;
};

CompiledSpec compile_spec(CheckedSpec checked);

/// Structural sanity scan over one automaton: every reference read must
/// be bound on its path, bound references must be unique, Branch cases
/// must test distinct constructors, and every Branch carries a fallback.
/// Returns the violations found (empty = sound).
std::vector<std::string> verify_automaton(const Automaton& a);

} // namespace sl
