#pragma once

// Whole-specification type checking: assigns every dynamic definition a
// subject type, every context definition a hole and result type, every
// auxiliary function a monomorphic signature, and every rule a subject
// type, by unification. Recursive definitions are typed by solving their
// constraints as one system.

#include <map>
#include <vector>

#include "sl/ast.hpp"
#include "sl/diag.hpp"

namespace sl {

/// First-order unification over ObjType with an occurs check.
/// Unknowns are allocated here and resolved against the current bindings.
class Unifier {
public:
    ObjTypePtr fresh();
    /// Follows bindings until a non-bound head, resolving recursively
    /// inside tuples; unbound unknowns stay as themselves.
    ObjTypePtr resolve(const ObjTypePtr& t) const;
    bool unify(const ObjTypePtr& a, const ObjTypePtr& b);
    bool occurs(int uvar, const ObjTypePtr& t) const;
    /// True when resolve(t) contains no unknowns.
    bool fully_resolved(const ObjTypePtr& t) const;

private:
    std::vector<ObjTypePtr> bind_;
};

struct AuxSig {
    std::vector<ObjTypePtr> params;
    ObjTypePtr result;
};

/// A specification together with everything the compiler and engine need
/// from type checking. All recorded types are fully resolved.
struct CheckedSpec {
    Spec spec;
    std::map<std::string, ObjTypePtr> dynamic_types;
    std::map<std::string, ContextType> context_types;
    std::map<std::string, AuxSig> aux_sigs;
    /// Subject type of each rule, indexed like spec.rules.
    std::vector<ObjTypePtr> rule_subjects;
    /// Subject type of each inference rule's premise; null for axioms.
    std::vector<ObjTypePtr> premise_subjects;
};

struct CheckResult {
    CheckedSpec checked;
    std::vector<Diagnostic> diags;

    bool ok() const {
        for (const auto& d : diags)
            if (d.sev == Severity::Error) return false;
        return true;
    }
};

CheckResult check_spec(Spec spec);

} // namespace sl
