#include "sl/meta_eval.hpp"

namespace sl {

MetaValue MetaValue::of_term(TermPtr t) {
    MetaValue v;
    v.kind = Kind::Term;
    v.term = std::move(t);
    return v;
}
MetaValue MetaValue::of_tuple(std::vector<MetaValue> vs) {
    MetaValue v;
    v.kind = Kind::Tuple;
    v.tuple = std::move(vs);
    return v;
}
MetaValue MetaValue::of_bool(bool b) {
    MetaValue v;
    v.kind = Kind::Bool;
    v.bval = b;
    return v;
}
MetaValue MetaValue::of_int(long long i) {
    MetaValue v;
    v.kind = Kind::Int;
    v.ival = i;
    return v;
}
MetaValue MetaValue::of_str(std::string s) {
    MetaValue v;
    v.kind = Kind::Str;
    v.sval = std::move(s);
    return v;
}
MetaValue MetaValue::of_recon(ReconFn f) {
    MetaValue v;
    v.kind = Kind::Recon;
    v.recon = std::make_shared<const ReconFn>(std::move(f));
    return v;
}

static const char* kind_name(MetaValue::Kind k) {
    switch (k) {
    case MetaValue::Kind::Term: return "term";
    case MetaValue::Kind::Tuple: return "tuple";
    case MetaValue::Kind::Bool: return "boolean";
    case MetaValue::Kind::Int: return "int";
    case MetaValue::Kind::Str: return "string";
    case MetaValue::Kind::Recon: return "context";
    }
    return "value";
}

MetaValue term_to_value(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Str: return MetaValue::of_str(t->sval);
    case Term::Kind::Int: return MetaValue::of_int(t->ival);
    case Term::Kind::Constr: return MetaValue::of_term(t);
    }
    return MetaValue::of_term(t);
}

TermPtr value_to_term(const MetaValue& v) {
    switch (v.kind) {
    case MetaValue::Kind::Term: return v.term;
    case MetaValue::Kind::Str: return Term::str(v.sval);
    case MetaValue::Kind::Int: return Term::intv(v.ival);
    default:
        throw EvalError(std::string("a ") + kind_name(v.kind) +
                        " value cannot appear inside a term");
    }
}

MetaValue ctor_payload(const TermPtr& t) {
    if (t->args.size() == 1) return term_to_value(t->args[0]);
    std::vector<MetaValue> parts;
    parts.reserve(t->args.size());
    for (const auto& a : t->args) parts.push_back(term_to_value(a));
    return MetaValue::of_tuple(std::move(parts));
}

// -------- environments --------

EnvPtr env_bind(EnvPtr env, std::string name, MetaValue value) {
    auto node = std::make_shared<EnvNode>();
    node->name = std::move(name);
    node->value = std::move(value);
    node->parent = std::move(env);
    return node;
}

const MetaValue* env_lookup(const EnvPtr& env, const std::string& name) {
    for (const EnvNode* n = env.get(); n; n = n->parent.get())
        if (n->name == name) return &n->value;
    return nullptr;
}

// -------- evaluation --------

std::map<std::string, const AuxFun*> build_aux_index(const Spec& spec) {
    std::map<std::string, const AuxFun*> index;
    for (const auto& f : spec.auxfuns) index[f.name] = &f;
    return index;
}

namespace {

/// Matches an aux-clause pattern against a value, appending bindings.
/// Alternatives roll failed bindings back.
bool match_clause(const PatternPtr& p, const MetaValue& v,
                  std::vector<std::pair<std::string, MetaValue>>& binds) {
    switch (p->kind) {
    case Pattern::Kind::Wildcard: return true;
    case Pattern::Kind::Var:
        binds.push_back({p->name, v});
        return true;
    case Pattern::Kind::TypeConstraint: return match_clause(p->sub, v, binds);
    case Pattern::Kind::Alias:
        if (!match_clause(p->sub, v, binds)) return false;
        binds.push_back({p->name, v});
        return true;
    case Pattern::Kind::Alt: {
        size_t mark = binds.size();
        if (match_clause(p->sub, v, binds)) return true;
        binds.resize(mark);
        return match_clause(p->sub2, v, binds);
    }
    case Pattern::Kind::Nullary:
        return v.kind == MetaValue::Kind::Term && v.term->kind == Term::Kind::Constr &&
               v.term->ctor == p->name && v.term->args.empty();
    case Pattern::Kind::Applied: {
        if (v.kind != MetaValue::Kind::Term || v.term->kind != Term::Kind::Constr ||
            v.term->ctor != p->name || v.term->args.empty())
            return false;
        return match_clause(p->sub, ctor_payload(v.term), binds);
    }
    case Pattern::Kind::Tuple: {
        if (v.kind != MetaValue::Kind::Tuple || v.tuple.size() != p->elems.size()) return false;
        size_t mark = binds.size();
        for (size_t i = 0; i < p->elems.size(); ++i)
            if (!match_clause(p->elems[i], v.tuple[i], binds)) {
                binds.resize(mark);
                return false;
            }
        return true;
    }
    default:
        // Dynamic/context constructs cannot appear here (enforced at parse).
        throw EvalError("unsupported pattern in a function clause");
    }
}

MetaValue call_aux(EvalCtx& ctx, const AuxFun& f, std::vector<MetaValue> args);

MetaValue eval_in(EvalCtx& ctx, const MetaExprPtr& e, const EnvPtr& env) {
    switch (e->kind) {
    case MetaExpr::Kind::Var: {
        const MetaValue* v = env_lookup(env, e->name);
        if (!v) throw EvalError("unbound variable '" + e->name + "'");
        return *v;
    }
    case MetaExpr::Kind::Str: return MetaValue::of_str(e->str);
    case MetaExpr::Kind::Int: return MetaValue::of_int(e->ival);
    case MetaExpr::Kind::Bool: return MetaValue::of_bool(e->bval);
    case MetaExpr::Kind::Tuple: {
        std::vector<MetaValue> parts;
        parts.reserve(e->args.size());
        for (const auto& a : e->args) parts.push_back(eval_in(ctx, a, env));
        return MetaValue::of_tuple(std::move(parts));
    }
    case MetaExpr::Kind::Constr: {
        const Constructor* c = ctx.sig->find_ctor(e->name);
        if (!c) throw EvalError("unknown constructor '" + e->name + "'");
        std::vector<MetaValue> vals;
        vals.reserve(e->args.size());
        for (const auto& a : e->args) vals.push_back(eval_in(ctx, a, env));
        if (vals.size() == 1 && c->args.size() >= 2) {
            // One tuple value supplies all constructor arguments.
            MetaValue v = std::move(vals[0]);
            if (v.kind != MetaValue::Kind::Tuple || v.tuple.size() != c->args.size())
                throw EvalError("constructor '" + e->name + "' applied to an ill-shaped value");
            vals = std::move(v.tuple);
        }
        if (vals.size() != c->args.size())
            throw EvalError("constructor '" + e->name + "' expects " +
                            std::to_string(c->args.size()) + " arguments, got " +
                            std::to_string(vals.size()));
        std::vector<TermPtr> parts;
        parts.reserve(vals.size());
        for (const auto& v : vals) parts.push_back(value_to_term(v));
        return MetaValue::of_term(Term::constr(e->name, std::move(parts)));
    }
    case MetaExpr::Kind::Call: {
        if (e->name == "freshname") return MetaValue::of_str(ctx.fresh->make());
        auto it = ctx.aux->find(e->name);
        if (it == ctx.aux->end()) throw EvalError("unknown function '" + e->name + "'");
        std::vector<MetaValue> args;
        args.reserve(e->args.size());
        for (const auto& a : e->args) args.push_back(eval_in(ctx, a, env));
        return call_aux(ctx, *it->second, std::move(args));
    }
    case MetaExpr::Kind::Fill: {
        const MetaValue* c = env_lookup(env, e->name);
        if (!c) throw EvalError("unbound variable '" + e->name + "'");
        if (c->kind != MetaValue::Kind::Recon)
            throw EvalError("variable '" + e->name + "' holds a " + kind_name(c->kind) +
                            ", it cannot be filled");
        return (*c->recon)(eval_in(ctx, e->args[0], env));
    }
    case MetaExpr::Kind::If: {
        MetaValue c = eval_in(ctx, e->args[0], env);
        if (c.kind != MetaValue::Kind::Bool)
            throw EvalError("'if' condition evaluated to a " + std::string(kind_name(c.kind)));
        return eval_in(ctx, e->args[c.bval ? 1 : 2], env);
    }
    case MetaExpr::Kind::Let: {
        MetaValue bound = eval_in(ctx, e->args[0], env);
        EnvPtr inner = env;
        if (e->let_tuple) {
            if (bound.kind != MetaValue::Kind::Tuple ||
                bound.tuple.size() != e->let_names.size())
                throw EvalError("'let' pattern does not fit the value");
            for (size_t i = 0; i < e->let_names.size(); ++i)
                inner = env_bind(inner, e->let_names[i], bound.tuple[i]);
        } else {
            inner = env_bind(inner, e->let_names[0], std::move(bound));
        }
        return eval_in(ctx, e->args[1], inner);
    }
    case MetaExpr::Kind::BinOp: {
        MetaValue l = eval_in(ctx, e->args[0], env);
        MetaValue r = eval_in(ctx, e->args[1], env);
        const std::string& op = e->name;
        if (op == "+" || op == "-" || op == "*" || op == "<" || op == "<=" || op == ">" ||
            op == ">=") {
            if (l.kind != MetaValue::Kind::Int || r.kind != MetaValue::Kind::Int)
                throw EvalError("'" + op + "' applied to non-int values");
            if (op == "+") return MetaValue::of_int(l.ival + r.ival);
            if (op == "-") return MetaValue::of_int(l.ival - r.ival);
            if (op == "*") return MetaValue::of_int(l.ival * r.ival);
            if (op == "<") return MetaValue::of_bool(l.ival < r.ival);
            if (op == "<=") return MetaValue::of_bool(l.ival <= r.ival);
            if (op == ">") return MetaValue::of_bool(l.ival > r.ival);
            return MetaValue::of_bool(l.ival >= r.ival);
        }
        bool eq;
        if (l.kind == MetaValue::Kind::Str && r.kind == MetaValue::Kind::Str)
            eq = l.sval == r.sval;
        else if (l.kind == MetaValue::Kind::Int && r.kind == MetaValue::Kind::Int)
            eq = l.ival == r.ival;
        else
            throw EvalError("'" + op + "' compares only strings or ints");
        return MetaValue::of_bool(op == "=" ? eq : !eq);
    }
    }
    throw EvalError("malformed expression");
}

MetaValue call_aux(EvalCtx& ctx, const AuxFun& f, std::vector<MetaValue> args) {
    if (args.size() != f.params.size())
        throw EvalError("function '" + f.name + "' expects " +
                        std::to_string(f.params.size()) + " arguments, got " +
                        std::to_string(args.size()));
    if (++ctx.depth > ctx.max_depth) {
        ctx.depth--;
        throw EvalError("recursion depth exceeded in function '" + f.name + "'");
    }
    EnvPtr env;
    for (size_t i = 0; i < args.size(); ++i) env = env_bind(env, f.params[i], args[i]);
    MetaValue result;
    bool done = false;
    if (!f.scrutinee) {
        result = eval_in(ctx, f.clauses[0].body, env);
        done = true;
    } else {
        const MetaValue& subject = args[*f.scrutinee];
        for (const auto& cl : f.clauses) {
            std::vector<std::pair<std::string, MetaValue>> binds;
            if (!match_clause(cl.pat, subject, binds)) continue;
            EnvPtr clause_env = env;
            for (auto& [name, value] : binds)
                clause_env = env_bind(clause_env, name, std::move(value));
            result = eval_in(ctx, cl.body, clause_env);
            done = true;
            break;
        }
    }
    ctx.depth--;
    if (!done)
        throw EvalError("no clause of function '" + f.name + "' matches its argument");
    return result;
}

} // namespace

MetaValue eval_meta(EvalCtx& ctx, const MetaExprPtr& e, const EnvPtr& env) {
    return eval_in(ctx, e, env);
}

} // namespace sl
