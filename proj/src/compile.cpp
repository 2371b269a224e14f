#include "sl/compile.hpp"

#include <functional>
#include <set>

namespace sl {

// -------- state factories --------

StatePtr State::fail() {
    static StatePtr f = std::make_shared<State>();
    return f;
}
StatePtr State::accept(MetaExprPtr action, std::string label, bool is_decomp) {
    auto s = std::make_shared<State>();
    s->kind = Kind::Accept;
    s->action = std::move(action);
    s->label = std::move(label);
    s->is_decomp = is_decomp;
    return s;
}
StatePtr State::branch(std::string subject, std::vector<Case> cases, StatePtr fallback) {
    auto s = std::make_shared<State>();
    s->kind = Kind::Branch;
    s->subject = std::move(subject);
    s->cases = std::move(cases);
    s->fallback = std::move(fallback);
    return s;
}
StatePtr State::choice(std::vector<StatePtr> alts) {
    auto s = std::make_shared<State>();
    s->kind = Kind::Choice;
    s->alts = std::move(alts);
    return s;
}
StatePtr State::reflet(std::vector<std::string> names, MatchCall call, StatePtr body) {
    auto s = std::make_shared<State>();
    s->kind = Kind::RefLet;
    s->names = std::move(names);
    s->call = std::move(call);
    s->body = std::move(body);
    return s;
}
StatePtr State::cond_state(MetaExprPtr cond, StatePtr body) {
    auto s = std::make_shared<State>();
    s->kind = Kind::Cond;
    s->cond = std::move(cond);
    s->body = std::move(body);
    return s;
}
StatePtr State::bindlet(std::vector<std::string> names, bool tuple_bind, std::string src,
                        StatePtr body) {
    auto s = std::make_shared<State>();
    s->kind = Kind::BindLet;
    s->names = std::move(names);
    s->tuple_bind = tuple_bind;
    s->src = std::move(src);
    s->body = std::move(body);
    return s;
}

// -------- reconstruction substitution --------

namespace {

/// Replaces free occurrences of the variable `name` in `e`. Only used on
/// reconstruction expressions, which contain no binders that could
/// capture, but Let shadowing is respected for robustness.
MetaExprPtr subst_var(const MetaExprPtr& e, const std::string& name, const MetaExprPtr& repl) {
    if (!e) return e;
    switch (e->kind) {
    case MetaExpr::Kind::Var: return e->name == name ? repl : e;
    case MetaExpr::Kind::Str:
    case MetaExpr::Kind::Int:
    case MetaExpr::Kind::Bool: return e;
    case MetaExpr::Kind::Let: {
        MetaExprPtr bound = subst_var(e->args[0], name, repl);
        bool shadowed = false;
        for (const auto& n : e->let_names) shadowed |= n == name;
        MetaExprPtr body = shadowed ? e->args[1] : subst_var(e->args[1], name, repl);
        return MetaExpr::letexpr(e->let_names, e->let_tuple, bound, body, e->loc);
    }
    default: {
        std::vector<MetaExprPtr> args;
        args.reserve(e->args.size());
        bool changed = false;
        for (const auto& a : e->args) {
            args.push_back(subst_var(a, name, repl));
            changed |= args.back() != a;
        }
        std::string head = e->name;
        if (e->kind == MetaExpr::Kind::Fill && head == name) {
            // A context reference is renamed only to another variable.
            if (repl->kind == MetaExpr::Kind::Var) {
                head = repl->name;
                changed = true;
            }
        }
        if (!changed) return e;
        auto copy = std::make_shared<MetaExpr>(*e);
        copy->args = std::move(args);
        copy->name = std::move(head);
        return copy;
    }
    }
}

// -------- matrix compilation --------

struct PendingBind {
    std::vector<std::string> names;
    std::string src;
    bool tuple;
};

struct Row {
    std::vector<PatternPtr> pats;
    std::vector<PendingBind> binds;
    MetaExprPtr recon; // context rows only
    std::function<StatePtr(const MetaExprPtr& recon)> finish;

    void subst_recon(const std::string& ref, const MetaExprPtr& repl) {
        if (recon) recon = subst_var(recon, ref, repl);
    }
};

enum class ColKind { Wild, Tup, Ctor, Dyn, Ctx };

ColKind col_kind(const PatternPtr& p) {
    switch (p->kind) {
    case Pattern::Kind::Wildcard: return ColKind::Wild;
    case Pattern::Kind::Tuple: return ColKind::Tup;
    case Pattern::Kind::Nullary:
    case Pattern::Kind::Applied: return ColKind::Ctor;
    case Pattern::Kind::DynConstraint: return ColKind::Dyn;
    case Pattern::Kind::CtxFill: return ColKind::Ctx;
    default: return ColKind::Wild; // unreachable after normalization
    }
}

struct Compiler {
    const CheckedSpec& cs;
    int next_ref = 0;

    std::string fresh() { return "$" + std::to_string(next_ref++); }

    /// Rewrites a row until its patterns are structural: constraints are
    /// dropped, variables / aliases / holes become pending bindings, and
    /// alternatives split the row in place (order preserved).
    void normalize_row(Row row, const std::vector<std::string>& cols, std::vector<Row>& out) {
        for (;;) {
            bool changed = false;
            for (size_t j = 0; j < row.pats.size(); ++j) {
                const PatternPtr p = row.pats[j];
                switch (p->kind) {
                case Pattern::Kind::TypeConstraint:
                    row.pats[j] = p->sub;
                    changed = true;
                    break;
                case Pattern::Kind::Alias:
                    row.binds.push_back({{p->name}, cols[j], false});
                    row.pats[j] = p->sub;
                    changed = true;
                    break;
                case Pattern::Kind::Var:
                    row.binds.push_back({{p->name}, cols[j], false});
                    row.pats[j] = Pattern::wildcard();
                    changed = true;
                    break;
                case Pattern::Kind::Hole:
                    row.binds.push_back({{"$hole"}, cols[j], false});
                    row.subst_recon(cols[j], MetaExpr::var("$hole"));
                    row.pats[j] = Pattern::wildcard();
                    changed = true;
                    break;
                case Pattern::Kind::DynConstraint:
                    if (p->sub->kind == Pattern::Kind::Var) {
                        row.binds.push_back({{p->sub->name}, cols[j], false});
                        row.pats[j] = Pattern::dyn(Pattern::wildcard(), p->name);
                        changed = true;
                    }
                    break;
                default: break;
                }
            }
            if (changed) continue;
            for (size_t j = 0; j < row.pats.size(); ++j) {
                if (row.pats[j]->kind != Pattern::Kind::Alt) continue;
                Row left = row, right = row;
                left.pats[j] = row.pats[j]->sub;
                right.pats[j] = row.pats[j]->sub2;
                normalize_row(std::move(left), cols, out);
                normalize_row(std::move(right), cols, out);
                return;
            }
            out.push_back(std::move(row));
            return;
        }
    }

    StatePtr wrap_binds(const Row& row, StatePtr leaf) {
        for (auto it = row.binds.rbegin(); it != row.binds.rend(); ++it)
            leaf = State::bindlet(it->names, it->tuple, it->src, std::move(leaf));
        return leaf;
    }

    static StatePtr choice_of(std::vector<StatePtr> alts) {
        if (alts.size() == 1) return alts[0];
        return State::choice(std::move(alts));
    }

    StatePtr compile_matrix(std::vector<std::string> cols, std::vector<Row> in_rows) {
        std::vector<Row> rows;
        for (auto& r : in_rows) normalize_row(std::move(r), cols, rows);
        if (rows.empty()) return State::fail();

        bool all_wild = true;
        for (const auto& r : rows)
            for (const auto& p : r.pats)
                all_wild &= p->kind == Pattern::Kind::Wildcard;
        if (cols.empty() || all_wild) {
            std::vector<StatePtr> alts;
            alts.reserve(rows.size());
            for (const auto& r : rows) alts.push_back(wrap_binds(r, r.finish(r.recon)));
            return choice_of(std::move(alts));
        }

        // Split on the leftmost column: maximal consecutive runs of rows
        // whose first pattern can be tested by one state.
        std::vector<StatePtr> alts;
        size_t i = 0;
        while (i < rows.size()) {
            ColKind kind = col_kind(rows[i].pats[0]);
            size_t j = i + 1;
            while (j < rows.size() && col_kind(rows[j].pats[0]) == kind &&
                   ((kind != ColKind::Dyn && kind != ColKind::Ctx) ||
                    rows[j].pats[0]->name == rows[i].pats[0]->name))
                ++j;
            std::vector<Row> run(rows.begin() + i, rows.begin() + j);
            alts.push_back(compile_group(cols, std::move(run), kind));
            i = j;
        }
        return choice_of(std::move(alts));
    }

    StatePtr compile_group(const std::vector<std::string>& cols, std::vector<Row> run,
                           ColKind kind) {
        std::vector<std::string> rest(cols.begin() + 1, cols.end());

        switch (kind) {
        case ColKind::Wild: {
            for (auto& r : run) r.pats.erase(r.pats.begin());
            return compile_matrix(rest, std::move(run));
        }
        case ColKind::Tup: {
            size_t n = run[0].pats[0]->elems.size();
            std::vector<std::string> names;
            for (size_t k = 0; k < n; ++k) names.push_back(fresh());
            std::vector<MetaExprPtr> refs;
            for (const auto& nm : names) refs.push_back(MetaExpr::var(nm));
            MetaExprPtr repl = MetaExpr::tuple(refs);
            std::vector<std::string> newcols = names;
            newcols.insert(newcols.end(), rest.begin(), rest.end());
            for (auto& r : run) {
                std::vector<PatternPtr> pats = r.pats[0]->elems;
                pats.insert(pats.end(), r.pats.begin() + 1, r.pats.end());
                r.pats = std::move(pats);
                r.subst_recon(cols[0], repl);
            }
            return State::bindlet(names, true, cols[0],
                                  compile_matrix(std::move(newcols), std::move(run)));
        }
        case ColKind::Ctor: {
            std::vector<std::string> order;
            for (const auto& r : run) {
                const std::string& c = r.pats[0]->name;
                bool seen = false;
                for (const auto& o : order) seen |= o == c;
                if (!seen) order.push_back(c);
            }
            std::vector<State::Case> cases;
            for (const auto& cname : order) {
                const Constructor* ctor = cs.spec.sig.find_ctor(cname);
                bool nullary = ctor->args.empty();
                std::string bound = nullary ? std::string() : fresh();
                MetaExprPtr repl = MetaExpr::constr(
                    cname, nullary ? std::vector<MetaExprPtr>{}
                                   : std::vector<MetaExprPtr>{MetaExpr::var(bound)});
                std::vector<std::string> newcols;
                if (!nullary) newcols.push_back(bound);
                newcols.insert(newcols.end(), rest.begin(), rest.end());
                std::vector<Row> sub;
                for (const auto& r : run) {
                    if (r.pats[0]->name != cname) continue;
                    Row nr = r;
                    std::vector<PatternPtr> pats;
                    if (!nullary) pats.push_back(r.pats[0]->sub);
                    pats.insert(pats.end(), r.pats.begin() + 1, r.pats.end());
                    nr.pats = std::move(pats);
                    nr.subst_recon(cols[0], repl);
                    sub.push_back(std::move(nr));
                }
                cases.push_back({cname, bound, compile_matrix(newcols, std::move(sub))});
            }
            return State::branch(cols[0], std::move(cases), State::fail());
        }
        case ColKind::Dyn: {
            std::string def = run[0].pats[0]->name;
            std::string result = fresh();
            for (auto& r : run) {
                r.pats.erase(r.pats.begin());
                r.subst_recon(cols[0], MetaExpr::var(result));
            }
            return State::reflet(
                {result}, {MatchCall::Kind::Dynamic, def, MetaExpr::var(cols[0])},
                compile_matrix(rest, std::move(run)));
        }
        case ColKind::Ctx: {
            std::string def = run[0].pats[0]->name;
            std::string crecon = fresh();
            std::string chole = fresh();
            MetaExprPtr repl = MetaExpr::fill(crecon, MetaExpr::var(chole));
            std::vector<std::string> newcols{chole};
            newcols.insert(newcols.end(), rest.begin(), rest.end());
            for (auto& r : run) {
                const PatternPtr binder = r.pats[0]->sub;
                if (binder->kind == Pattern::Kind::Var)
                    r.binds.push_back({{binder->name}, crecon, false});
                std::vector<PatternPtr> pats{r.pats[0]->sub2};
                pats.insert(pats.end(), r.pats.begin() + 1, r.pats.end());
                r.pats = std::move(pats);
                r.subst_recon(cols[0], repl);
            }
            return State::reflet(
                {crecon, chole}, {MatchCall::Kind::Context, def, MetaExpr::var(cols[0])},
                compile_matrix(std::move(newcols), std::move(run)));
        }
        }
        return State::fail();
    }
};

} // namespace

// -------- whole-spec compilation --------

const Automaton* CompiledSpec::find(Automaton::Kind kind, const std::string& key) const {
    for (const auto& a : automata)
        if (a.kind == kind && a.key == key) return &a;
    return nullptr;
}

CompiledSpec compile_spec(CheckedSpec checked) {
    CompiledSpec out;
    Compiler comp{checked, 0};
    const Spec& spec = checked.spec;

    for (const auto& d : spec.dynamics) {
        comp.next_ref = 1;
        Row row;
        row.pats = {d.pattern};
        std::string name = d.name;
        row.finish = [name](const MetaExprPtr&) {
            return State::accept(MetaExpr::var("$0"), name, false);
        };
        StatePtr root = comp.compile_matrix({"$0"}, {std::move(row)});
        out.automata.push_back({Automaton::Kind::Dynamic, "match_" + d.name, d.name, root});
    }

    for (const auto& c : spec.contexts) {
        comp.next_ref = 1;
        std::vector<Row> rows;
        for (const auto& arm : c.arms) {
            Row row;
            row.pats = {arm};
            row.recon = MetaExpr::var("$0");
            std::string name = c.name;
            row.finish = [name](const MetaExprPtr& recon) {
                return State::accept(recon, name, true);
            };
            rows.push_back(std::move(row));
        }
        StatePtr root = comp.compile_matrix({"$0"}, std::move(rows));
        out.automata.push_back({Automaton::Kind::Context, "match_" + c.name, c.name, root});
    }

    // Rules are grouped per subject type, keeping specification order
    // both across groups (first appearance) and within them.
    auto group_rules = [&](Rule::Kind k) {
        std::vector<std::pair<std::string, std::vector<size_t>>> groups;
        for (size_t i = 0; i < spec.rules.size(); ++i) {
            if (spec.rules[i].kind != k) continue;
            std::string key = type_to_string(checked.rule_subjects[i]);
            bool found = false;
            for (auto& g : groups)
                if (g.first == key) {
                    g.second.push_back(i);
                    found = true;
                }
            if (!found) groups.push_back({key, {i}});
        }
        return groups;
    };

    for (const auto& [key, idxs] : group_rules(Rule::Kind::Axiom)) {
        comp.next_ref = 1;
        std::vector<Row> rows;
        for (size_t i : idxs) {
            const Rule* r = &spec.rules[i];
            Row row;
            row.pats = {r->lhs};
            row.finish = [r](const MetaExprPtr&) {
                StatePtr leaf = State::accept(r->rhs, r->name, false);
                if (r->cond) leaf = State::cond_state(r->cond, std::move(leaf));
                return leaf;
            };
            rows.push_back(std::move(row));
        }
        StatePtr root = comp.compile_matrix({"$0"}, std::move(rows));
        out.automata.push_back({Automaton::Kind::Rewrite1, "rewrite1[" + key + "]", key, root});
    }

    for (const auto& [key, idxs] : group_rules(Rule::Kind::Inference)) {
        comp.next_ref = 1;
        std::vector<Row> rows;
        for (size_t i : idxs) {
            const Rule* r = &spec.rules[i];
            std::string premise_key = type_to_string(checked.premise_subjects[i]);
            Compiler* cp = &comp;
            Row row;
            row.pats = {r->lhs};
            row.finish = [r, premise_key, cp](const MetaExprPtr&) {
                StatePtr leaf = State::accept(r->rhs, r->name, false);
                if (r->cond) leaf = State::cond_state(r->cond, std::move(leaf));
                MatchCall call{MatchCall::Kind::Rewrite1, premise_key, r->premise_lhs};
                switch (r->premise_rhs->kind) {
                case Pattern::Kind::Var:
                    return State::reflet({r->premise_rhs->name}, call, std::move(leaf));
                case Pattern::Kind::Wildcard:
                    return State::reflet({cp->fresh()}, call, std::move(leaf));
                default: {
                    // A structured premise pattern gets its own matrix
                    // over the rewriting result.
                    std::string res = cp->fresh();
                    Row sub;
                    sub.pats = {r->premise_rhs};
                    sub.finish = [leaf](const MetaExprPtr&) { return leaf; };
                    return State::reflet({res}, call,
                                         cp->compile_matrix({res}, {std::move(sub)}));
                }
                }
            };
            rows.push_back(std::move(row));
        }
        StatePtr root = comp.compile_matrix({"$0"}, std::move(rows));
        out.automata.push_back({Automaton::Kind::Step, "step[" + key + "]", key, root});
    }

    out.checked = std::move(checked);
    return out;
}

// -------- structural verification --------

namespace {

void free_meta_vars(const MetaExprPtr& e, std::set<std::string>& bound,
                    std::set<std::string>& free) {
    if (!e) return;
    switch (e->kind) {
    case MetaExpr::Kind::Var:
        if (!bound.count(e->name)) free.insert(e->name);
        return;
    case MetaExpr::Kind::Fill:
        if (!bound.count(e->name)) free.insert(e->name);
        free_meta_vars(e->args[0], bound, free);
        return;
    case MetaExpr::Kind::Let: {
        free_meta_vars(e->args[0], bound, free);
        std::vector<std::string> added;
        for (const auto& n : e->let_names)
            if (bound.insert(n).second) added.push_back(n);
        free_meta_vars(e->args[1], bound, free);
        for (const auto& n : added) bound.erase(n);
        return;
    }
    default:
        for (const auto& a : e->args) free_meta_vars(a, bound, free);
        return;
    }
}

std::set<std::string> free_meta_vars(const MetaExprPtr& e) {
    std::set<std::string> bound, free;
    free_meta_vars(e, bound, free);
    return free;
}

struct Verifier {
    std::vector<std::string> faults;

    void fault(const std::string& msg) { faults.push_back(msg); }

    void need(const std::set<std::string>& scope, const std::string& name, const char* what) {
        if (!scope.count(name)) fault(std::string(what) + " reads unbound reference '" + name + "'");
    }

    void need_expr(const std::set<std::string>& scope, const MetaExprPtr& e, const char* what) {
        for (const auto& v : free_meta_vars(e))
            need(scope, v, what);
    }

    void add_names(std::set<std::string>& scope, const std::vector<std::string>& names) {
        for (const auto& n : names) {
            if (n.size() > 1 && n[0] == '$' && n != "$hole" && scope.count(n))
                fault("reference '" + n + "' is bound twice on one path");
            scope.insert(n);
        }
    }

    void walk(const StatePtr& s, std::set<std::string> scope) {
        if (!s) {
            fault("null state");
            return;
        }
        switch (s->kind) {
        case State::Kind::Fail: return;
        case State::Kind::Accept:
            need_expr(scope, s->action, "accept");
            if (s->is_decomp) need(scope, "$hole", "decomposition accept");
            return;
        case State::Kind::Choice:
            for (const auto& a : s->alts) walk(a, scope);
            return;
        case State::Kind::Cond:
            need_expr(scope, s->cond, "condition");
            walk(s->body, std::move(scope));
            return;
        case State::Kind::BindLet: {
            need(scope, s->src, "binding");
            add_names(scope, s->names);
            walk(s->body, std::move(scope));
            return;
        }
        case State::Kind::RefLet: {
            need_expr(scope, s->call.arg, "sub-match call");
            size_t want = s->call.kind == MatchCall::Kind::Context ? 2 : 1;
            if (s->names.size() != want)
                fault("sub-match call binds " + std::to_string(s->names.size()) +
                      " names, expected " + std::to_string(want));
            add_names(scope, s->names);
            walk(s->body, std::move(scope));
            return;
        }
        case State::Kind::Branch: {
            need(scope, s->subject, "branch");
            std::set<std::string> seen;
            for (const auto& c : s->cases) {
                if (!seen.insert(c.ctor).second)
                    fault("branch tests constructor '" + c.ctor + "' twice");
                std::set<std::string> inner = scope;
                if (!c.bound.empty()) add_names(inner, {c.bound});
                walk(c.next, std::move(inner));
            }
            if (!s->fallback)
                fault("branch on '" + s->subject + "' has no fallback");
            else
                walk(s->fallback, scope);
            return;
        }
        }
    }
};

} // namespace

std::vector<std::string> verify_automaton(const Automaton& a) {
    Verifier v;
    v.walk(a.root, {"$0"});
    return v.faults;
}

} // namespace sl
