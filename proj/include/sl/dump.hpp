#pragma once

// Human-readable rendering of compiled automata. States are numbered in
// the order printed (preorder), nested two spaces per level. Term
// references print as t0, t1, ... and the hole reference prints as
// "hole"; `let` lines bind user variables and references alike, `ref`
// lines call into another automaton, and spread constructor
// applications print flattened (App(a,b), not App((a,b))).

#include <string>

#include "sl/compile.hpp"

namespace sl {

std::string dump_automaton(const Automaton& a);

/// All automata — dynamics, contexts, root-rewrite groups, step groups —
/// separated by blank lines.
std::string dump_spec(const CompiledSpec& cs);

} // namespace sl
