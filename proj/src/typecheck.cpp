#include "sl/typecheck.hpp"

#include <set>

namespace sl {

// -------- unifier --------

ObjTypePtr Unifier::fresh() {
    bind_.push_back(nullptr);
    return ObjType::unknown(static_cast<int>(bind_.size()) - 1);
}

ObjTypePtr Unifier::resolve(const ObjTypePtr& t) const {
    if (!t) return t;
    if (t->kind == ObjType::Kind::Unknown) {
        const ObjTypePtr& b = bind_[t->uvar];
        return b ? resolve(b) : t;
    }
    if (t->kind == ObjType::Kind::Tuple) {
        std::vector<ObjTypePtr> elems;
        elems.reserve(t->elems.size());
        for (const auto& e : t->elems) elems.push_back(resolve(e));
        return ObjType::tuple(std::move(elems));
    }
    return t;
}

bool Unifier::occurs(int uvar, const ObjTypePtr& t) const {
    ObjTypePtr r = resolve(t);
    if (r->kind == ObjType::Kind::Unknown) return r->uvar == uvar;
    if (r->kind == ObjType::Kind::Tuple)
        for (const auto& e : r->elems)
            if (occurs(uvar, e)) return true;
    return false;
}

bool Unifier::unify(const ObjTypePtr& a0, const ObjTypePtr& b0) {
    ObjTypePtr a = resolve(a0);
    ObjTypePtr b = resolve(b0);
    if (a->kind == ObjType::Kind::Unknown && b->kind == ObjType::Kind::Unknown &&
        a->uvar == b->uvar)
        return true;
    if (a->kind == ObjType::Kind::Unknown) {
        if (occurs(a->uvar, b)) return false;
        bind_[a->uvar] = b;
        return true;
    }
    if (b->kind == ObjType::Kind::Unknown) {
        if (occurs(b->uvar, a)) return false;
        bind_[b->uvar] = a;
        return true;
    }
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case ObjType::Kind::Named: return a->name == b->name;
    case ObjType::Kind::Tuple: {
        if (a->elems.size() != b->elems.size()) return false;
        for (size_t i = 0; i < a->elems.size(); ++i)
            if (!unify(a->elems[i], b->elems[i])) return false;
        return true;
    }
    default: return true;
    }
}

bool Unifier::fully_resolved(const ObjTypePtr& t) const {
    ObjTypePtr r = resolve(t);
    if (r->kind == ObjType::Kind::Unknown) return false;
    if (r->kind == ObjType::Kind::Tuple)
        for (const auto& e : r->elems)
            if (!fully_resolved(e)) return false;
    return true;
}

// -------- checker --------

namespace {

/// What a name is bound to inside one rule, clause or definition.
struct VarInfo {
    ObjTypePtr term;                // set iff the var names a term
    std::optional<ContextType> ctx; // set iff the var names a context
};
using Env = std::map<std::string, VarInfo>;

struct Checker {
    Spec spec;
    Unifier uni;
    std::vector<Diagnostic> diags;

    std::map<std::string, ObjTypePtr> dyn_ty;
    std::map<std::string, ContextType> ctx_ty;
    std::map<std::string, AuxSig> aux_sigs;

    // Set while checking the arms of one context definition.
    ObjTypePtr current_hole;
    std::string current_def;

    explicit Checker(Spec s) : spec(std::move(s)) {}

    void error(SourceLoc loc, const std::string& msg) {
        diags.push_back({loc, Severity::Error, msg});
    }

    std::string show(const ObjTypePtr& t) { return type_to_string(uni.resolve(t)); }

    // ---- patterns ----

    bool bind_term(Env& env, const std::string& name, const ObjTypePtr& ty, SourceLoc loc) {
        auto [it, fresh] = env.emplace(name, VarInfo{ty, std::nullopt});
        (void)it;
        if (!fresh) {
            error(loc, "variable '" + name + "' is bound twice");
            return false;
        }
        return true;
    }

    bool bind_ctx(Env& env, const std::string& name, const ContextType& ty, SourceLoc loc) {
        auto [it, fresh] = env.emplace(name, VarInfo{nullptr, ty});
        (void)it;
        if (!fresh) {
            error(loc, "variable '" + name + "' is bound twice");
            return false;
        }
        return true;
    }

    bool infer_pattern(const PatternPtr& p, const ObjTypePtr& expected, Env& env) {
        switch (p->kind) {
        case Pattern::Kind::Wildcard: return true;
        case Pattern::Kind::Var: return bind_term(env, p->name, expected, p->loc);
        case Pattern::Kind::Nullary:
        case Pattern::Kind::Applied: {
            const TypeDef* owner = nullptr;
            const Constructor* c = spec.sig.find_ctor(p->name, &owner);
            if (!c) {
                error(p->loc, "unknown constructor '" + p->name + "'");
                return false;
            }
            if (!uni.unify(expected, ObjType::named(owner->name))) {
                error(p->loc, "constructor '" + p->name + "' builds a " + owner->name +
                                  ", but a " + show(expected) + " is expected here");
                return false;
            }
            if (p->kind == Pattern::Kind::Nullary) {
                if (!c->args.empty()) {
                    error(p->loc, "constructor '" + p->name + "' expects " +
                                      std::to_string(c->args.size()) + " arguments, got 0");
                    return false;
                }
                return true;
            }
            if (c->args.empty()) {
                error(p->loc, "constructor '" + p->name + "' expects 0 arguments");
                return false;
            }
            return infer_pattern(p->sub, ctor_arg_type(*c), env);
        }
        case Pattern::Kind::Tuple: {
            std::vector<ObjTypePtr> elems;
            for (size_t i = 0; i < p->elems.size(); ++i) elems.push_back(uni.fresh());
            if (!uni.unify(expected, ObjType::tuple(elems))) {
                error(p->loc, "tuple pattern of " + std::to_string(p->elems.size()) +
                                  " components, but a " + show(expected) + " is expected here");
                return false;
            }
            bool ok = true;
            for (size_t i = 0; i < p->elems.size(); ++i)
                ok &= infer_pattern(p->elems[i], elems[i], env);
            return ok;
        }
        case Pattern::Kind::Alias: {
            bool ok = infer_pattern(p->sub, expected, env);
            return bind_term(env, p->name, expected, p->loc) && ok;
        }
        case Pattern::Kind::TypeConstraint: {
            if (p->ty->kind == ObjType::Kind::Named && !spec.sig.find_type(p->ty->name)) {
                error(p->loc, "unknown type '" + p->ty->name + "'");
                return false;
            }
            if (!uni.unify(expected, p->ty)) {
                error(p->loc, "type constraint " + type_to_string(p->ty) + " conflicts with " +
                                  show(expected));
                return false;
            }
            return infer_pattern(p->sub, p->ty, env);
        }
        case Pattern::Kind::DynConstraint: {
            auto it = dyn_ty.find(p->name);
            if (it == dyn_ty.end()) {
                error(p->loc, "unknown dynamic definition '" + p->name + "'");
                return false;
            }
            if (!uni.unify(expected, it->second)) {
                error(p->loc, "dynamic definition '" + p->name + "' matches a " +
                                  show(it->second) + ", but a " + show(expected) +
                                  " is expected here");
                return false;
            }
            return infer_pattern(p->sub, expected, env);
        }
        case Pattern::Kind::CtxFill: {
            auto it = ctx_ty.find(p->name);
            if (it == ctx_ty.end()) {
                error(p->loc, "unknown context definition '" + p->name + "'");
                return false;
            }
            if (!uni.unify(expected, it->second.whole)) {
                error(p->loc, "context definition '" + p->name + "' builds a " +
                                  show(it->second.whole) + ", but a " + show(expected) +
                                  " is expected here");
                return false;
            }
            bool ok = true;
            if (p->sub->kind == Pattern::Kind::Var)
                ok &= bind_ctx(env, p->sub->name, {it->second.hole, expected}, p->sub->loc);
            ok &= infer_pattern(p->sub2, it->second.hole, env);
            return ok;
        }
        case Pattern::Kind::Hole: {
            if (!current_hole) {
                error(p->loc, "BOX outside a context definition");
                return false;
            }
            if (!uni.unify(expected, current_hole)) {
                error(p->loc, "in context definition '" + current_def +
                                  "': the hole is used at type " + show(expected) +
                                  ", but other arms give it type " + show(current_hole));
                return false;
            }
            return true;
        }
        case Pattern::Kind::Alt: {
            Env left = env, right = env;
            bool ok = infer_pattern(p->sub, expected, left);
            ok &= infer_pattern(p->sub2, expected, right);
            if (!ok) return false;
            std::set<std::string> new_left, new_right;
            for (const auto& [k, v] : left)
                if (!env.count(k)) new_left.insert(k);
            for (const auto& [k, v] : right)
                if (!env.count(k)) new_right.insert(k);
            if (new_left != new_right) {
                error(p->loc, "alternative pattern branches must bind the same variables");
                return false;
            }
            for (const auto& k : new_left) {
                VarInfo& a = left[k];
                VarInfo& b = right[k];
                if ((a.term == nullptr) != (b.term == nullptr)) {
                    error(p->loc, "variable '" + k +
                                      "' is a term in one alternative and a context in the other");
                    return false;
                }
                bool same = a.term ? uni.unify(a.term, b.term)
                                   : uni.unify(a.ctx->hole, b.ctx->hole) &&
                                         uni.unify(a.ctx->whole, b.ctx->whole);
                if (!same) {
                    error(p->loc, "variable '" + k + "' has different types in the alternatives");
                    return false;
                }
                env[k] = a;
            }
            return true;
        }
        }
        return false;
    }

    // ---- meta expressions ----

    ObjTypePtr infer_meta(const MetaExprPtr& e, Env& env) {
        switch (e->kind) {
        case MetaExpr::Kind::Var: {
            auto it = env.find(e->name);
            if (it == env.end()) {
                error(e->loc, "unbound variable '" + e->name + "'");
                return uni.fresh();
            }
            if (!it->second.term) {
                error(e->loc, "context variable '" + e->name +
                                  "' can only be used by filling it");
                return uni.fresh();
            }
            return it->second.term;
        }
        case MetaExpr::Kind::Str: return ObjType::str();
        case MetaExpr::Kind::Int: return ObjType::intty();
        case MetaExpr::Kind::Bool: return ObjType::boolty();
        case MetaExpr::Kind::Tuple: {
            std::vector<ObjTypePtr> elems;
            for (const auto& a : e->args) elems.push_back(infer_meta(a, env));
            return ObjType::tuple(std::move(elems));
        }
        case MetaExpr::Kind::Constr: {
            const TypeDef* owner = nullptr;
            const Constructor* c = spec.sig.find_ctor(e->name, &owner);
            if (!c) {
                error(e->loc, "unknown constructor '" + e->name + "'");
                return uni.fresh();
            }
            ObjTypePtr result = ObjType::named(owner->name);
            if (e->args.size() == c->args.size()) {
                for (size_t i = 0; i < e->args.size(); ++i) {
                    ObjTypePtr got = infer_meta(e->args[i], env);
                    if (!uni.unify(got, c->args[i]))
                        error(e->args[i]->loc, "constructor '" + e->name + "' argument " +
                                                   std::to_string(i + 1) + ": expected " +
                                                   type_to_string(c->args[i]) + ", found " +
                                                   show(got));
                }
                return result;
            }
            if (e->args.size() == 1 && c->args.size() >= 2) {
                // One expression can supply all arguments if it is a tuple
                // of the right shape.
                ObjTypePtr got = infer_meta(e->args[0], env);
                if (!uni.unify(got, ctor_arg_type(*c)))
                    error(e->args[0]->loc, "constructor '" + e->name + "' expects a " +
                                               type_to_string(ctor_arg_type(*c)) + ", found " +
                                               show(got));
                return result;
            }
            error(e->loc, "constructor '" + e->name + "' expects " +
                              std::to_string(c->args.size()) + " arguments, got " +
                              std::to_string(e->args.size()));
            return result;
        }
        case MetaExpr::Kind::Call: {
            if (e->name == "freshname") {
                if (!e->args.empty())
                    error(e->loc, "freshname expects no arguments");
                return ObjType::str();
            }
            auto it = aux_sigs.find(e->name);
            if (it == aux_sigs.end()) {
                error(e->loc, "unknown function '" + e->name + "'");
                return uni.fresh();
            }
            const AuxSig& sig = it->second;
            if (e->args.size() != sig.params.size()) {
                error(e->loc, "function '" + e->name + "' expects " +
                                  std::to_string(sig.params.size()) + " arguments, got " +
                                  std::to_string(e->args.size()));
                return sig.result;
            }
            for (size_t i = 0; i < e->args.size(); ++i) {
                ObjTypePtr got = infer_meta(e->args[i], env);
                if (!uni.unify(got, sig.params[i]))
                    error(e->args[i]->loc, "function '" + e->name + "' argument " +
                                               std::to_string(i + 1) + ": expected " +
                                               show(sig.params[i]) + ", found " + show(got));
            }
            return sig.result;
        }
        case MetaExpr::Kind::Fill: {
            auto it = env.find(e->name);
            if (it == env.end()) {
                error(e->loc, "unbound context variable '" + e->name + "'");
                return uni.fresh();
            }
            if (!it->second.ctx) {
                error(e->loc, "variable '" + e->name + "' is not a context, it cannot be filled");
                return uni.fresh();
            }
            ObjTypePtr got = infer_meta(e->args[0], env);
            if (!uni.unify(got, it->second.ctx->hole))
                error(e->args[0]->loc, "filling context '" + e->name + "': expected " +
                                           show(it->second.ctx->hole) + ", found " + show(got));
            return it->second.ctx->whole;
        }
        case MetaExpr::Kind::If: {
            ObjTypePtr c = infer_meta(e->args[0], env);
            if (!uni.unify(c, ObjType::boolty()))
                error(e->args[0]->loc, "'if' condition must be bool, found " + show(c));
            ObjTypePtr t = infer_meta(e->args[1], env);
            ObjTypePtr f = infer_meta(e->args[2], env);
            if (!uni.unify(t, f))
                error(e->loc,
                      "branches of 'if' have different types: " + show(t) + " and " + show(f));
            return t;
        }
        case MetaExpr::Kind::Let: {
            ObjTypePtr bound = infer_meta(e->args[0], env);
            Env inner = env;
            if (e->let_tuple) {
                std::vector<ObjTypePtr> elems;
                for (size_t i = 0; i < e->let_names.size(); ++i) elems.push_back(uni.fresh());
                if (!uni.unify(bound, ObjType::tuple(elems)))
                    error(e->loc, "'let' pattern of " + std::to_string(e->let_names.size()) +
                                      " components, but the expression has type " + show(bound));
                for (size_t i = 0; i < e->let_names.size(); ++i)
                    inner[e->let_names[i]] = VarInfo{elems[i], std::nullopt};
                for (size_t i = 0; i < e->let_names.size(); ++i)
                    for (size_t j = i + 1; j < e->let_names.size(); ++j)
                        if (e->let_names[i] == e->let_names[j])
                            error(e->loc, "variable '" + e->let_names[i] + "' is bound twice");
            } else {
                inner[e->let_names[0]] = VarInfo{bound, std::nullopt};
            }
            return infer_meta(e->args[1], inner);
        }
        case MetaExpr::Kind::BinOp: {
            ObjTypePtr l = infer_meta(e->args[0], env);
            ObjTypePtr r = infer_meta(e->args[1], env);
            if (e->name == "+" || e->name == "-" || e->name == "*") {
                if (!uni.unify(l, ObjType::intty()))
                    error(e->args[0]->loc, "'" + e->name + "' needs int operands, found " + show(l));
                if (!uni.unify(r, ObjType::intty()))
                    error(e->args[1]->loc, "'" + e->name + "' needs int operands, found " + show(r));
                return ObjType::intty();
            }
            if (e->name == "<" || e->name == "<=" || e->name == ">" || e->name == ">=") {
                if (!uni.unify(l, ObjType::intty()))
                    error(e->args[0]->loc, "'" + e->name + "' needs int operands, found " + show(l));
                if (!uni.unify(r, ObjType::intty()))
                    error(e->args[1]->loc, "'" + e->name + "' needs int operands, found " + show(r));
                return ObjType::boolty();
            }
            // = and <> compare strings or ints.
            if (!uni.unify(l, r)) {
                error(e->loc, "'" + e->name + "' compares a " + show(l) + " with a " + show(r));
                return ObjType::boolty();
            }
            ObjTypePtr res = uni.resolve(l);
            if (res->kind != ObjType::Kind::Unknown && res->kind != ObjType::Kind::Str &&
                res->kind != ObjType::Kind::Int)
                error(e->loc, "'" + e->name + "' needs string or int operands, found " + show(l));
            return ObjType::boolty();
        }
        }
        return uni.fresh();
    }

    // ---- definitions and rules ----

    // ---- definition cycles ----

    // Names a pattern consults at its root, before any constructor is
    // taken apart: following such a reference re-examines the same term,
    // so a definition that can reach itself this way never terminates.
    static void root_refs(const PatternPtr& p, std::set<std::string>& out) {
        switch (p->kind) {
        case Pattern::Kind::Alt:
            root_refs(p->sub, out);
            root_refs(p->sub2, out);
            return;
        case Pattern::Kind::Alias:
        case Pattern::Kind::TypeConstraint: root_refs(p->sub, out); return;
        case Pattern::Kind::DynConstraint:
        case Pattern::Kind::CtxFill: out.insert(p->name); return;
        default: return;
        }
    }

    void check_def_cycles() {
        std::map<std::string, std::set<std::string>> edges;
        std::map<std::string, std::pair<bool, SourceLoc>> meta; // is_context, loc
        for (const auto& d : spec.dynamics) {
            meta[d.name] = {false, d.loc};
            root_refs(d.pattern, edges[d.name]);
        }
        for (const auto& c : spec.contexts) {
            meta[c.name] = {true, c.loc};
            auto& out = edges[c.name];
            for (const auto& arm : c.arms) root_refs(arm, out);
        }
        for (const auto& [name, direct] : edges) {
            std::set<std::string> seen;
            std::vector<std::string> work(direct.begin(), direct.end());
            bool cyclic = false;
            while (!work.empty() && !cyclic) {
                std::string cur = work.back();
                work.pop_back();
                if (cur == name) cyclic = true;
                if (!seen.insert(cur).second) continue;
                auto it = edges.find(cur);
                if (it == edges.end()) continue;
                work.insert(work.end(), it->second.begin(), it->second.end());
            }
            if (cyclic)
                error(meta[name].second,
                      std::string(meta[name].first ? "context" : "dynamic") + " definition '" +
                          name + "' refers back to itself before matching any constructor");
        }
    }

    void check_dynamics_and_contexts() {
        for (const auto& d : spec.dynamics) dyn_ty[d.name] = uni.fresh();
        for (const auto& c : spec.contexts) ctx_ty[c.name] = {uni.fresh(), uni.fresh()};

        for (const auto& d : spec.dynamics) {
            Env env;
            infer_pattern(d.pattern, dyn_ty[d.name], env);
        }
        for (const auto& c : spec.contexts) {
            current_hole = ctx_ty[c.name].hole;
            current_def = c.name;
            size_t before = diags.size();
            for (size_t k = 0; k < c.arms.size(); ++k) {
                Env env;
                if (!infer_pattern(c.arms[k], ctx_ty[c.name].whole, env) &&
                    k > 0 && diags.size() > before)
                    error(c.arms[k]->loc, "context definition '" + c.name +
                                              "': arms disagree about its type");
            }
            current_hole = nullptr;
            current_def.clear();
        }

        for (const auto& d : spec.dynamics)
            if (!uni.fully_resolved(dyn_ty[d.name]))
                error(d.loc, "cannot determine the type of dynamic definition '" + d.name + "'");
        for (const auto& c : spec.contexts)
            if (!uni.fully_resolved(ctx_ty[c.name].hole) ||
                !uni.fully_resolved(ctx_ty[c.name].whole))
                error(c.loc, "cannot determine the type of context definition '" + c.name + "'");
    }

    void check_aux_group(size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            const AuxFun& f = spec.auxfuns[i];
            AuxSig sig;
            for (size_t k = 0; k < f.params.size(); ++k) sig.params.push_back(uni.fresh());
            sig.result = uni.fresh();
            aux_sigs[f.name] = std::move(sig);
        }
        for (size_t i = begin; i < end; ++i) {
            const AuxFun& f = spec.auxfuns[i];
            const AuxSig& sig = aux_sigs[f.name];
            for (const auto& cl : f.clauses) {
                Env env;
                for (size_t k = 0; k < f.params.size(); ++k)
                    env[f.params[k]] = VarInfo{sig.params[k], std::nullopt};
                if (f.scrutinee)
                    infer_pattern(cl.pat, sig.params[*f.scrutinee], env);
                ObjTypePtr got = infer_meta(cl.body, env);
                if (!uni.unify(got, sig.result))
                    error(cl.body->loc, "function '" + f.name + "' returns a " + show(got) +
                                            " here, but a " + show(sig.result) + " elsewhere");
            }
        }
        for (size_t i = begin; i < end; ++i) {
            const AuxFun& f = spec.auxfuns[i];
            AuxSig& sig = aux_sigs[f.name];
            for (size_t k = 0; k < f.params.size(); ++k) {
                if (!uni.fully_resolved(sig.params[k]))
                    error(f.loc, "cannot determine the type of parameter '" + f.params[k] +
                                     "' of function '" + f.name + "'");
                sig.params[k] = uni.resolve(sig.params[k]);
            }
            if (!uni.fully_resolved(sig.result))
                error(f.loc, "cannot determine the result type of function '" + f.name + "'");
            sig.result = uni.resolve(sig.result);
        }
    }

    void check_rule(size_t idx, std::vector<ObjTypePtr>& subjects,
                    std::vector<ObjTypePtr>& premises) {
        const Rule& r = spec.rules[idx];
        ObjTypePtr subject = uni.fresh();
        ObjTypePtr premise;
        Env env;
        infer_pattern(r.lhs, subject, env);
        if (r.kind == Rule::Kind::Inference) {
            premise = infer_meta(r.premise_lhs, env);
            infer_pattern(r.premise_rhs, premise, env);
        }
        if (r.cond) {
            ObjTypePtr c = infer_meta(r.cond, env);
            if (!uni.unify(c, ObjType::boolty()))
                error(r.cond->loc, "the 'when' condition of rule '" + r.name +
                                       "' must be bool, found " + show(c));
        }
        ObjTypePtr got = infer_meta(r.rhs, env);
        if (!uni.unify(subject, got))
            error(r.rhs->loc,
                  "rule '" + r.name + "' rewrites a " + show(subject) + " to a " + show(got));
        if (!uni.fully_resolved(subject))
            error(r.loc, "cannot determine the subject type of rule '" + r.name + "'");
        subjects[idx] = uni.resolve(subject);
        if (r.kind == Rule::Kind::Inference) {
            if (!uni.fully_resolved(premise))
                error(r.loc,
                      "cannot determine the premise type of rule '" + r.name + "'");
            premises[idx] = uni.resolve(premise);
        }
    }

    CheckResult run() {
        check_dynamics_and_contexts();
        check_def_cycles();

        for (size_t i = 0; i < spec.auxfuns.size();) {
            size_t j = i + 1;
            while (j < spec.auxfuns.size() && spec.auxfuns[i].group >= 0 &&
                   spec.auxfuns[j].group == spec.auxfuns[i].group)
                ++j;
            check_aux_group(i, j);
            i = j;
        }

        std::vector<ObjTypePtr> subjects(spec.rules.size());
        std::vector<ObjTypePtr> premises(spec.rules.size());
        for (size_t i = 0; i < spec.rules.size(); ++i) check_rule(i, subjects, premises);

        CheckResult res;
        res.checked.spec = std::move(spec);
        for (auto& [name, ty] : dyn_ty) res.checked.dynamic_types[name] = uni.resolve(ty);
        for (auto& [name, ty] : ctx_ty)
            res.checked.context_types[name] = {uni.resolve(ty.hole), uni.resolve(ty.whole)};
        res.checked.aux_sigs = std::move(aux_sigs);
        res.checked.rule_subjects = std::move(subjects);
        res.checked.premise_subjects = std::move(premises);
        res.diags = std::move(diags);
        return res;
    }
};

} // namespace

CheckResult check_spec(Spec spec) {
    Checker c(std::move(spec));
    return c.run();
}

} // namespace sl
