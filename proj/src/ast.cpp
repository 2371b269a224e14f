#include "sl/ast.hpp"

namespace sl {

// -------- object types --------

static ObjTypePtr mk(ObjType::Kind k) {
    auto t = std::make_shared<ObjType>();
    t->kind = k;
    return t;
}

ObjTypePtr ObjType::named(std::string n) {
    auto t = std::make_shared<ObjType>();
    t->kind = Kind::Named;
    t->name = std::move(n);
    return t;
}
ObjTypePtr ObjType::str() { return mk(Kind::Str); }
ObjTypePtr ObjType::intty() { return mk(Kind::Int); }
ObjTypePtr ObjType::boolty() { return mk(Kind::Bool); }
ObjTypePtr ObjType::tuple(std::vector<ObjTypePtr> elems) {
    auto t = std::make_shared<ObjType>();
    t->kind = Kind::Tuple;
    t->elems = std::move(elems);
    return t;
}
ObjTypePtr ObjType::unknown(int id) {
    auto t = std::make_shared<ObjType>();
    t->kind = Kind::Unknown;
    t->uvar = id;
    return t;
}

bool type_equal(const ObjTypePtr& a, const ObjTypePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case ObjType::Kind::Named: return a->name == b->name;
    case ObjType::Kind::Tuple: {
        if (a->elems.size() != b->elems.size()) return false;
        for (size_t i = 0; i < a->elems.size(); ++i)
            if (!type_equal(a->elems[i], b->elems[i])) return false;
        return true;
    }
    case ObjType::Kind::Unknown: return a->uvar == b->uvar;
    default: return true;
    }
}

std::string type_to_string(const ObjTypePtr& t) {
    if (!t) return "<null>";
    switch (t->kind) {
    case ObjType::Kind::Named: return t->name;
    case ObjType::Kind::Str: return "string";
    case ObjType::Kind::Int: return "int";
    case ObjType::Kind::Bool: return "bool";
    case ObjType::Kind::Unknown: return "?" + std::to_string(t->uvar);
    case ObjType::Kind::Tuple: {
        std::string s;
        for (size_t i = 0; i < t->elems.size(); ++i) {
            if (i) s += "*";
            const auto& e = t->elems[i];
            if (e && e->kind == ObjType::Kind::Tuple)
                s += "(" + type_to_string(e) + ")";
            else
                s += type_to_string(e);
        }
        return s;
    }
    }
    return "<bad>";
}

bool context_type_equal(const ContextType& a, const ContextType& b) {
    return type_equal(a.hole, b.hole) && type_equal(a.whole, b.whole);
}

std::string context_type_to_string(const ContextType& t) {
    return type_to_string(t.hole) + " o-> " + type_to_string(t.whole);
}

// -------- signature --------

const TypeDef* Signature::find_type(const std::string& name) const {
    for (const auto& td : typedefs)
        if (td.name == name) return &td;
    return nullptr;
}

const Constructor* Signature::find_ctor(const std::string& name, const TypeDef** owner) const {
    for (const auto& td : typedefs)
        for (const auto& c : td.ctors)
            if (c.name == name) {
                if (owner) *owner = &td;
                return &c;
            }
    return nullptr;
}

ObjTypePtr ctor_arg_type(const Constructor& c) {
    if (c.args.empty()) return nullptr;
    if (c.args.size() == 1) return c.args[0];
    return ObjType::tuple(c.args);
}

// -------- patterns --------

static std::shared_ptr<Pattern> mkpat(Pattern::Kind k, SourceLoc loc) {
    auto p = std::make_shared<Pattern>();
    p->kind = k;
    p->loc = loc;
    return p;
}

PatternPtr Pattern::wildcard(SourceLoc loc) { return mkpat(Kind::Wildcard, loc); }
PatternPtr Pattern::var(std::string n, SourceLoc loc) {
    auto p = mkpat(Kind::Var, loc);
    p->name = std::move(n);
    return p;
}
PatternPtr Pattern::nullary(std::string n, SourceLoc loc) {
    auto p = mkpat(Kind::Nullary, loc);
    p->name = std::move(n);
    return p;
}
PatternPtr Pattern::applied(std::string n, PatternPtr arg, SourceLoc loc) {
    auto p = mkpat(Kind::Applied, loc);
    p->name = std::move(n);
    p->sub = std::move(arg);
    return p;
}
PatternPtr Pattern::tuple(std::vector<PatternPtr> elems, SourceLoc loc) {
    auto p = mkpat(Kind::Tuple, loc);
    p->elems = std::move(elems);
    return p;
}
PatternPtr Pattern::alt(PatternPtr l, PatternPtr r, SourceLoc loc) {
    auto p = mkpat(Kind::Alt, loc);
    p->sub = std::move(l);
    p->sub2 = std::move(r);
    return p;
}
PatternPtr Pattern::alias(PatternPtr inner, std::string n, SourceLoc loc) {
    auto p = mkpat(Kind::Alias, loc);
    p->sub = std::move(inner);
    p->name = std::move(n);
    return p;
}
PatternPtr Pattern::type_constraint(PatternPtr inner, ObjTypePtr t, SourceLoc loc) {
    auto p = mkpat(Kind::TypeConstraint, loc);
    p->sub = std::move(inner);
    p->ty = std::move(t);
    return p;
}
PatternPtr Pattern::dyn(PatternPtr inner, std::string def, SourceLoc loc) {
    auto p = mkpat(Kind::DynConstraint, loc);
    p->sub = std::move(inner);
    p->name = std::move(def);
    return p;
}
PatternPtr Pattern::ctx(PatternPtr binder, std::string def, PatternPtr filler, SourceLoc loc) {
    auto p = mkpat(Kind::CtxFill, loc);
    p->sub = std::move(binder);
    p->name = std::move(def);
    p->sub2 = std::move(filler);
    return p;
}
PatternPtr Pattern::hole(SourceLoc loc) { return mkpat(Kind::Hole, loc); }

int count_holes(const PatternPtr& p) {
    if (!p) return 0;
    switch (p->kind) {
    case Pattern::Kind::Hole: return 1;
    case Pattern::Kind::Wildcard:
    case Pattern::Kind::Var:
    case Pattern::Kind::Nullary: return 0;
    case Pattern::Kind::Applied:
    case Pattern::Kind::Alias:
    case Pattern::Kind::TypeConstraint:
    case Pattern::Kind::DynConstraint: return count_holes(p->sub);
    case Pattern::Kind::Alt: {
        // Either alternative may be taken, so both must place the same
        // number of holes; -1 marks disagreement.
        int l = count_holes(p->sub);
        int r = count_holes(p->sub2);
        if (l < 0 || r < 0 || l != r) return -1;
        return l;
    }
    case Pattern::Kind::CtxFill: {
        int l = count_holes(p->sub);
        int r = count_holes(p->sub2);
        if (l < 0 || r < 0) return -1;
        return l + r;
    }
    case Pattern::Kind::Tuple: {
        int n = 0;
        for (const auto& e : p->elems) {
            int c = count_holes(e);
            if (c < 0) return -1;
            n += c;
        }
        return n;
    }
    }
    return 0;
}

// -------- meta expressions --------

static std::shared_ptr<MetaExpr> mkexp(MetaExpr::Kind k, SourceLoc loc) {
    auto e = std::make_shared<MetaExpr>();
    e->kind = k;
    e->loc = loc;
    return e;
}

MetaExprPtr MetaExpr::var(std::string n, SourceLoc loc) {
    auto e = mkexp(Kind::Var, loc);
    e->name = std::move(n);
    return e;
}
MetaExprPtr MetaExpr::lit_str(std::string s, SourceLoc loc) {
    auto e = mkexp(Kind::Str, loc);
    e->str = std::move(s);
    return e;
}
MetaExprPtr MetaExpr::lit_int(long long v, SourceLoc loc) {
    auto e = mkexp(Kind::Int, loc);
    e->ival = v;
    return e;
}
MetaExprPtr MetaExpr::lit_bool(bool v, SourceLoc loc) {
    auto e = mkexp(Kind::Bool, loc);
    e->bval = v;
    return e;
}
MetaExprPtr MetaExpr::constr(std::string n, std::vector<MetaExprPtr> args, SourceLoc loc) {
    auto e = mkexp(Kind::Constr, loc);
    e->name = std::move(n);
    e->args = std::move(args);
    return e;
}
MetaExprPtr MetaExpr::tuple(std::vector<MetaExprPtr> args, SourceLoc loc) {
    auto e = mkexp(Kind::Tuple, loc);
    e->args = std::move(args);
    return e;
}
MetaExprPtr MetaExpr::call(std::string n, std::vector<MetaExprPtr> args, SourceLoc loc) {
    auto e = mkexp(Kind::Call, loc);
    e->name = std::move(n);
    e->args = std::move(args);
    return e;
}
MetaExprPtr MetaExpr::fill(std::string ctxvar, MetaExprPtr arg, SourceLoc loc) {
    auto e = mkexp(Kind::Fill, loc);
    e->name = std::move(ctxvar);
    e->args = {std::move(arg)};
    return e;
}
MetaExprPtr MetaExpr::ifexpr(MetaExprPtr c, MetaExprPtr t, MetaExprPtr el, SourceLoc loc) {
    auto e = mkexp(Kind::If, loc);
    e->args = {std::move(c), std::move(t), std::move(el)};
    return e;
}
MetaExprPtr MetaExpr::letexpr(std::vector<std::string> names, bool tuple_pat, MetaExprPtr bound,
                              MetaExprPtr body, SourceLoc loc) {
    auto e = mkexp(Kind::Let, loc);
    e->let_names = std::move(names);
    e->let_tuple = tuple_pat;
    e->args = {std::move(bound), std::move(body)};
    return e;
}
MetaExprPtr MetaExpr::binop(std::string op, MetaExprPtr l, MetaExprPtr r, SourceLoc loc) {
    auto e = mkexp(Kind::BinOp, loc);
    e->name = std::move(op);
    e->args = {std::move(l), std::move(r)};
    return e;
}

// -------- structural equality --------

bool ast_equal(const PatternPtr& a, const PatternPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name) return false;
    if (!ast_equal(a->sub, b->sub) || !ast_equal(a->sub2, b->sub2)) return false;
    if (a->elems.size() != b->elems.size()) return false;
    for (size_t i = 0; i < a->elems.size(); ++i)
        if (!ast_equal(a->elems[i], b->elems[i])) return false;
    if ((a->ty == nullptr) != (b->ty == nullptr)) return false;
    if (a->ty && !type_equal(a->ty, b->ty)) return false;
    return true;
}

bool ast_equal(const MetaExprPtr& a, const MetaExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name || a->str != b->str || a->ival != b->ival ||
        a->bval != b->bval || a->let_tuple != b->let_tuple || a->let_names != b->let_names)
        return false;
    if (a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!ast_equal(a->args[i], b->args[i])) return false;
    return true;
}

static bool sig_equal(const Signature& a, const Signature& b) {
    if (a.start_type != b.start_type) return false;
    if (a.typedefs.size() != b.typedefs.size()) return false;
    for (size_t i = 0; i < a.typedefs.size(); ++i) {
        const auto& x = a.typedefs[i];
        const auto& y = b.typedefs[i];
        if (x.name != y.name || x.ctors.size() != y.ctors.size()) return false;
        for (size_t j = 0; j < x.ctors.size(); ++j) {
            if (x.ctors[j].name != y.ctors[j].name) return false;
            if (x.ctors[j].args.size() != y.ctors[j].args.size()) return false;
            for (size_t k = 0; k < x.ctors[j].args.size(); ++k)
                if (!type_equal(x.ctors[j].args[k], y.ctors[j].args[k])) return false;
        }
    }
    return true;
}

bool ast_equal(const Spec& a, const Spec& b) {
    if (!sig_equal(a.sig, b.sig)) return false;
    if (a.auxfuns.size() != b.auxfuns.size() || a.dynamics.size() != b.dynamics.size() ||
        a.contexts.size() != b.contexts.size() || a.rules.size() != b.rules.size())
        return false;
    for (size_t i = 0; i < a.auxfuns.size(); ++i) {
        const auto& x = a.auxfuns[i];
        const auto& y = b.auxfuns[i];
        if (x.name != y.name || x.params != y.params || x.scrutinee != y.scrutinee ||
            x.recursive != y.recursive || x.clauses.size() != y.clauses.size())
            return false;
        for (size_t j = 0; j < x.clauses.size(); ++j)
            if (!ast_equal(x.clauses[j].pat, y.clauses[j].pat) ||
                !ast_equal(x.clauses[j].body, y.clauses[j].body))
                return false;
    }
    for (size_t i = 0; i < a.dynamics.size(); ++i)
        if (a.dynamics[i].name != b.dynamics[i].name ||
            !ast_equal(a.dynamics[i].pattern, b.dynamics[i].pattern))
            return false;
    for (size_t i = 0; i < a.contexts.size(); ++i) {
        if (a.contexts[i].name != b.contexts[i].name ||
            a.contexts[i].arms.size() != b.contexts[i].arms.size())
            return false;
        for (size_t j = 0; j < a.contexts[i].arms.size(); ++j)
            if (!ast_equal(a.contexts[i].arms[j], b.contexts[i].arms[j])) return false;
    }
    for (size_t i = 0; i < a.rules.size(); ++i) {
        const auto& x = a.rules[i];
        const auto& y = b.rules[i];
        if (x.kind != y.kind || x.name != y.name) return false;
        if (!ast_equal(x.lhs, y.lhs) || !ast_equal(x.cond, y.cond) || !ast_equal(x.rhs, y.rhs))
            return false;
        if (!ast_equal(x.premise_lhs, y.premise_lhs) || !ast_equal(x.premise_rhs, y.premise_rhs))
            return false;
    }
    return true;
}

} // namespace sl
