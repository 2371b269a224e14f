#include "sl/parser.hpp"

#include <map>
#include <set>

#include "sl/lexer.hpp"

namespace sl {

namespace {

enum class NameClass { Type, Ctor, Dynamic, Context };

struct Parser {
    std::vector<Token> toks;
    size_t i = 0;
    Spec spec;
    std::vector<Diagnostic>* warnings;

    // Uppercase names share one namespace so patterns can be classified
    // while parsing; declare-before-use is required throughout.
    std::map<std::string, NameClass> upper;
    std::set<std::string> aux_names;
    std::set<std::string> rule_names;
    bool in_context_arm = false;
    int next_group = 0;

    explicit Parser(const std::string& src, std::vector<Diagnostic>* w)
        : toks(lex(src)), warnings(w) {}

    [[noreturn]] void fail(SourceLoc at, const std::string& msg) {
        throw ParseError({at, Severity::Error, msg});
    }
    void warn(SourceLoc at, const std::string& msg) {
        if (warnings) warnings->push_back({at, Severity::Warning, msg});
    }

    const Token& peek(size_t ahead = 0) const {
        size_t j = i + ahead;
        return j < toks.size() ? toks[j] : toks.back();
    }
    bool at(Tok k) const { return peek().kind == k; }
    Token advance() { return toks[i < toks.size() - 1 ? i++ : i]; }
    Token expect(Tok k, const std::string& what) {
        if (!at(k))
            fail(peek().loc, "expected " + what + ", found " + tok_name(peek().kind));
        return advance();
    }

    void declare_upper(const std::string& name, NameClass nc, SourceLoc loc) {
        auto [it, fresh] = upper.emplace(name, nc);
        (void)it;
        if (!fresh) fail(loc, "duplicate definition name '" + name + "'");
    }

    bool is_known_fun(const std::string& name) const {
        return name == "freshname" || aux_names.count(name) != 0;
    }

    // -------- types --------

    ObjTypePtr parse_type_atom(bool allow_tuple_paren) {
        const Token& t = peek();
        if (t.kind == Tok::UIdent) {
            advance();
            return ObjType::named(t.text);
        }
        if (t.kind == Tok::Ident) {
            advance();
            if (t.text == "string") return ObjType::str();
            if (t.text == "int") return ObjType::intty();
            fail(t.loc, "unknown builtin type '" + t.text + "' (expected 'string' or 'int')");
        }
        if (t.kind == Tok::TyVar)
            fail(t.loc, "type parameters are not supported ('" + t.text + "')");
        if (t.kind == Tok::LParen && allow_tuple_paren) {
            advance();
            ObjTypePtr inner = parse_type_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        fail(t.loc, "expected a type name, found " + tok_name(t.kind));
    }

    ObjTypePtr parse_type_expr() {
        std::vector<ObjTypePtr> parts;
        parts.push_back(parse_type_atom(true));
        while (at(Tok::Star)) {
            advance();
            parts.push_back(parse_type_atom(true));
        }
        if (parts.size() == 1) return parts[0];
        return ObjType::tuple(std::move(parts));
    }

    // -------- signature --------

    void parse_typedef() {
        SourceLoc loc = expect(Tok::KwType, "'type'").loc;
        if (at(Tok::TyVar))
            fail(peek().loc, "type parameters are not supported ('" + peek().text + "')");
        Token name = expect(Tok::UIdent, "a type name");
        expect(Tok::Eq, "'='");
        TypeDef td;
        td.name = name.text;
        td.loc = loc;
        declare_upper(name.text, NameClass::Type, name.loc);
        for (;;) {
            Token cn = expect(Tok::UIdent, "a constructor name");
            Constructor c;
            c.name = cn.text;
            c.loc = cn.loc;
            declare_upper(cn.text, NameClass::Ctor, cn.loc);
            if (at(Tok::KwOf)) {
                advance();
                // Constructor arguments are flat: a '*'-separated list of
                // type names, so every argument has a term representation.
                c.args.push_back(parse_type_atom(false));
                while (at(Tok::Star)) {
                    advance();
                    c.args.push_back(parse_type_atom(false));
                }
            }
            td.ctors.push_back(std::move(c));
            if (at(Tok::Bar)) {
                advance();
                continue;
            }
            break;
        }
        expect(Tok::Semi2, "';;'");
        spec.sig.typedefs.push_back(std::move(td));
    }

    void parse_signature() {
        expect(Tok::KwSignature, "'SIGNATURE'");
        expect(Tok::Colon, "':'");
        bool saw_start = false;
        while (!at(Tok::KwSpecification)) {
            if (at(Tok::KwType)) {
                parse_typedef();
            } else if (at(Tok::KwStartfrom)) {
                SourceLoc loc = advance().loc;
                Token t = expect(Tok::UIdent, "a type name");
                if (saw_start) fail(loc, "duplicate 'startfrom'");
                saw_start = true;
                spec.sig.start_type = t.text;
                spec.sig.start_loc = t.loc;
                expect(Tok::Semi2, "';;'");
            } else {
                fail(peek().loc, "expected 'type', 'startfrom' or 'SPECIFICATION', found " +
                                     tok_name(peek().kind));
            }
        }
        if (spec.sig.typedefs.empty()) fail(peek().loc, "signature declares no types");
        if (!saw_start) fail(peek().loc, "signature is missing 'startfrom'");
        // Validate type references now that every typedef is known.
        for (const auto& td : spec.sig.typedefs)
            for (const auto& c : td.ctors)
                for (const auto& a : c.args)
                    if (a->kind == ObjType::Kind::Named && !spec.sig.find_type(a->name))
                        fail(c.loc, "constructor '" + c.name + "' mentions unknown type '" +
                                        a->name + "'");
        if (!spec.sig.find_type(spec.sig.start_type))
            fail(spec.sig.start_loc, "'startfrom' names unknown type '" + spec.sig.start_type + "'");
    }

    // -------- patterns --------

    bool starts_pattern_atom() const {
        switch (peek().kind) {
        case Tok::Underscore:
        case Tok::Ident:
        case Tok::UIdent:
        case Tok::KwBox:
        case Tok::LParen: return true;
        default: return false;
        }
    }

    PatternPtr classify_bare_upper(const Token& t) {
        auto it = upper.find(t.text);
        if (it == upper.end()) fail(t.loc, "unknown name '" + t.text + "' in pattern");
        switch (it->second) {
        case NameClass::Ctor:
            // `C(...)` is atomic, like in terms, so it can stand where
            // only an atom may (say, as the filler of a context).
            if (at(Tok::LParen)) return Pattern::applied(t.text, parse_paren_pattern(), t.loc);
            return Pattern::nullary(t.text, t.loc);
        case NameClass::Dynamic: return Pattern::dyn(Pattern::wildcard(t.loc), t.text, t.loc);
        case NameClass::Context:
            if (in_context_arm)
                return Pattern::ctx(Pattern::wildcard(t.loc), t.text, Pattern::hole(t.loc), t.loc);
            fail(t.loc, "context name '" + t.text + "' needs a filler pattern");
        case NameClass::Type:
            fail(t.loc, "type name '" + t.text + "' cannot be used as a pattern");
        }
        fail(t.loc, "unknown name '" + t.text + "' in pattern");
    }

    PatternPtr parse_pattern_atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Underscore: advance(); return Pattern::wildcard(t.loc);
        case Tok::Ident: advance(); return Pattern::var(t.text, t.loc);
        case Tok::KwBox:
            advance();
            if (!in_context_arm) fail(t.loc, "BOX outside a context definition");
            return Pattern::hole(t.loc);
        case Tok::UIdent: advance(); return classify_bare_upper(t);
        case Tok::LParen: return parse_paren_pattern();
        default:
            fail(t.loc, "expected a pattern, found " + tok_name(t.kind));
        }
    }

    // '(' already peeked: grouping, tuple, type constraint, dynamic
    // constraint, or context filling.
    PatternPtr parse_paren_pattern() {
        Token open = expect(Tok::LParen, "'('");
        PatternPtr first = parse_pattern();
        if (at(Tok::Comma)) {
            std::vector<PatternPtr> elems{first};
            while (at(Tok::Comma)) {
                advance();
                elems.push_back(parse_pattern());
            }
            expect(Tok::RParen, "')'");
            return Pattern::tuple(std::move(elems), open.loc);
        }
        if (at(Tok::Colon)) {
            advance();
            if (at(Tok::KwType)) {
                advance();
                ObjTypePtr ty = parse_type_expr();
                expect(Tok::RParen, "')'");
                return Pattern::type_constraint(first, ty, open.loc);
            }
            Token name = expect(Tok::UIdent, "a dynamic or context name");
            auto it = upper.find(name.text);
            if (it == upper.end() ||
                (it->second != NameClass::Dynamic && it->second != NameClass::Context))
                fail(name.loc, "unknown dynamic or context name '" + name.text + "'");
            if (first->kind != Pattern::Kind::Wildcard && first->kind != Pattern::Kind::Var)
                fail(first->loc, "pattern under a '" + name.text +
                                     "' constraint must be '_' or a variable");
            expect(Tok::RParen, "')'");
            if (it->second == NameClass::Dynamic)
                return Pattern::dyn(first, name.text, open.loc);
            // Context: an explicit filler may follow; inside a context
            // definition an absent filler is the hole itself.
            if (starts_pattern_atom())
                return Pattern::ctx(first, name.text, parse_pattern_atom(), open.loc);
            if (in_context_arm)
                return Pattern::ctx(first, name.text, Pattern::hole(open.loc), open.loc);
            fail(open.loc, "context filling '(" + std::string(first->kind == Pattern::Kind::Var
                                                                  ? first->name
                                                                  : "_") +
                               ":" + name.text + ")' needs a filler pattern");
        }
        expect(Tok::RParen, "')'");
        return first;
    }

    PatternPtr parse_app_pattern() {
        const Token& t = peek();
        if (t.kind == Tok::UIdent) {
            auto it = upper.find(t.text);
            if (it == upper.end()) fail(t.loc, "unknown name '" + t.text + "' in pattern");
            if (it->second == NameClass::Ctor) {
                advance();
                // A parenthesized argument goes through the general paren
                // rule, so `C (p1,p2)`, `C (p : V)` and `C (h : H) q` all
                // mean what they look like.
                if (starts_pattern_atom())
                    return Pattern::applied(t.text, parse_pattern_atom(), t.loc);
                return Pattern::nullary(t.text, t.loc);
            }
            if (it->second == NameClass::Context) {
                advance();
                if (starts_pattern_atom())
                    return Pattern::ctx(Pattern::wildcard(t.loc), t.text, parse_pattern_atom(),
                                        t.loc);
                return classify_bare_upper_tail(t);
            }
            advance();
            return classify_bare_upper(t); // dynamic or error
        }
        return parse_pattern_atom();
    }

    // A bare context name with no filler: hole inside an arm, error outside.
    PatternPtr classify_bare_upper_tail(const Token& t) {
        if (in_context_arm)
            return Pattern::ctx(Pattern::wildcard(t.loc), t.text, Pattern::hole(t.loc), t.loc);
        fail(t.loc, "context name '" + t.text + "' needs a filler pattern");
    }

    PatternPtr parse_as_pattern() {
        PatternPtr p = parse_app_pattern();
        while (is_as()) {
            SourceLoc loc = advance().loc;
            Token name = expect(Tok::Ident, "a variable name");
            p = Pattern::alias(p, name.text, loc);
        }
        return p;
    }

    bool is_as() const { return peek().kind == Tok::Ident && peek().text == "as"; }

    PatternPtr parse_pattern() {
        PatternPtr p = parse_as_pattern();
        while (at(Tok::Bar)) {
            SourceLoc loc = advance().loc;
            PatternPtr q = parse_as_pattern();
            p = Pattern::alt(p, q, loc);
        }
        return p;
    }

    /// Rejects constructs that are illegal in aux-function clause patterns
    /// and inference premise patterns.
    void require_restricted(const PatternPtr& p, const char* where) {
        if (!p) return;
        switch (p->kind) {
        case Pattern::Kind::DynConstraint:
            fail(p->loc, std::string("dynamic constraints are not allowed in ") + where);
        case Pattern::Kind::CtxFill:
            fail(p->loc, std::string("context fillings are not allowed in ") + where);
        case Pattern::Kind::Hole:
            fail(p->loc, std::string("BOX is not allowed in ") + where);
        case Pattern::Kind::Tuple:
            for (const auto& e : p->elems) require_restricted(e, where);
            return;
        default:
            require_restricted(p->sub, where);
            require_restricted(p->sub2, where);
        }
    }

    // -------- meta expressions --------

    bool starts_expr_atom() const {
        switch (peek().kind) {
        case Tok::Ident:
        case Tok::Int:
        case Tok::Str:
        case Tok::KwTrue:
        case Tok::KwFalse:
        case Tok::LParen: return true;
        default: return false;
        }
    }

    MetaExprPtr parse_expr_atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Ident: advance(); return MetaExpr::var(t.text, t.loc);
        case Tok::Int: advance(); return MetaExpr::lit_int(t.ival, t.loc);
        case Tok::Str: advance(); return MetaExpr::lit_str(t.text, t.loc);
        case Tok::KwTrue: advance(); return MetaExpr::lit_bool(true, t.loc);
        case Tok::KwFalse: advance(); return MetaExpr::lit_bool(false, t.loc);
        case Tok::Minus: {
            advance();
            Token n = expect(Tok::Int, "an integer literal");
            return MetaExpr::lit_int(-n.ival, n.loc);
        }
        case Tok::LParen: {
            advance();
            std::vector<MetaExprPtr> parts;
            parts.push_back(parse_expr());
            while (at(Tok::Comma)) {
                advance();
                parts.push_back(parse_expr());
            }
            expect(Tok::RParen, "')'");
            if (parts.size() == 1) return parts[0];
            return MetaExpr::tuple(std::move(parts), t.loc);
        }
        default:
            fail(t.loc, "expected an expression, found " + tok_name(t.kind));
        }
    }

    std::vector<MetaExprPtr> parse_paren_expr_list() {
        expect(Tok::LParen, "'('");
        std::vector<MetaExprPtr> args;
        if (!at(Tok::RParen)) {
            args.push_back(parse_expr());
            while (at(Tok::Comma)) {
                advance();
                args.push_back(parse_expr());
            }
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    MetaExprPtr parse_app_expr() {
        const Token& t = peek();
        if (t.kind == Tok::UIdent) {
            auto it = upper.find(t.text);
            if (it == upper.end() || it->second != NameClass::Ctor)
                fail(t.loc, "name '" + t.text + "' is not a constructor");
            advance();
            if (at(Tok::LParen))
                return MetaExpr::constr(t.text, parse_paren_expr_list(), t.loc);
            if (starts_expr_atom())
                return MetaExpr::constr(t.text, {parse_expr_atom()}, t.loc);
            return MetaExpr::constr(t.text, {}, t.loc);
        }
        if (t.kind == Tok::Ident) {
            if (is_known_fun(t.text) && peek(1).kind == Tok::LParen) {
                advance();
                return MetaExpr::call(t.text, parse_paren_expr_list(), t.loc);
            }
            advance();
            MetaExprPtr head = MetaExpr::var(t.text, t.loc);
            if (starts_expr_atom())
                return MetaExpr::fill(t.text, parse_expr_atom(), t.loc);
            return head;
        }
        return parse_expr_atom();
    }

    MetaExprPtr parse_mul_expr() {
        MetaExprPtr e = parse_app_expr();
        while (at(Tok::Star)) {
            SourceLoc loc = advance().loc;
            e = MetaExpr::binop("*", e, parse_app_expr(), loc);
        }
        return e;
    }

    MetaExprPtr parse_add_expr() {
        MetaExprPtr e = parse_mul_expr();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            Token op = advance();
            e = MetaExpr::binop(op.kind == Tok::Plus ? "+" : "-", e, parse_mul_expr(), op.loc);
        }
        return e;
    }

    MetaExprPtr parse_cmp_expr() {
        MetaExprPtr e = parse_add_expr();
        std::string op;
        switch (peek().kind) {
        case Tok::Eq: op = "="; break;
        case Tok::Neq: op = "<>"; break;
        case Tok::Lt: op = "<"; break;
        case Tok::Le: op = "<="; break;
        case Tok::Gt: op = ">"; break;
        case Tok::Ge: op = ">="; break;
        default: return e;
        }
        SourceLoc loc = advance().loc;
        return MetaExpr::binop(op, e, parse_add_expr(), loc);
    }

    MetaExprPtr parse_expr() {
        const Token& t = peek();
        if (t.kind == Tok::KwIf) {
            advance();
            MetaExprPtr c = parse_expr();
            expect(Tok::KwThen, "'then'");
            MetaExprPtr th = parse_expr();
            expect(Tok::KwElse, "'else'");
            MetaExprPtr el = parse_expr();
            return MetaExpr::ifexpr(c, th, el, t.loc);
        }
        if (t.kind == Tok::KwLet) {
            advance();
            std::vector<std::string> names;
            bool tuple_pat = false;
            if (at(Tok::LParen)) {
                tuple_pat = true;
                advance();
                names.push_back(expect(Tok::Ident, "a variable name").text);
                expect(Tok::Comma, "','");
                names.push_back(expect(Tok::Ident, "a variable name").text);
                while (at(Tok::Comma)) {
                    advance();
                    names.push_back(expect(Tok::Ident, "a variable name").text);
                }
                expect(Tok::RParen, "')'");
            } else {
                names.push_back(expect(Tok::Ident, "a variable name").text);
            }
            expect(Tok::Eq, "'='");
            MetaExprPtr bound = parse_expr();
            expect(Tok::KwIn, "'in'");
            MetaExprPtr body = parse_expr();
            return MetaExpr::letexpr(std::move(names), tuple_pat, bound, body, t.loc);
        }
        return parse_cmp_expr();
    }

    // -------- specification items --------

    void parse_open_directive() {
        SourceLoc loc = expect(Tok::Hash, "'#'").loc;
        Token name = expect(Tok::Ident, "a directive name");
        if (name.text != "open") fail(name.loc, "unknown directive '#" + name.text + "'");
        Token arg = expect(Tok::Str, "a module name");
        expect(Tok::Semi2, "';;'");
        warn(loc, "'#open \"" + arg.text + "\"' is ignored");
    }

    void parse_let_group() {
        expect(Tok::KwLet, "'let'");
        bool recursive = at(Tok::KwRec);
        if (recursive) advance();
        int group = next_group++;

        struct Pending {
            std::string name;
            std::vector<std::string> params;
            SourceLoc loc;
            size_t body_start; // token index
        };

        // First pass over the group headers so recursive groups can call
        // every member; bodies are parsed in a second pass.
        std::vector<Pending> pend;
        for (;;) {
            Token name = expect(Tok::Ident, "a function name");
            if (name.text == "freshname")
                fail(name.loc, "'freshname' is a builtin and cannot be redefined");
            if (aux_names.count(name.text))
                fail(name.loc, "duplicate definition name '" + name.text + "'");
            Pending p;
            p.name = name.text;
            p.loc = name.loc;
            expect(Tok::LParen, "'('");
            p.params.push_back(expect(Tok::Ident, "a parameter name").text);
            while (at(Tok::Comma)) {
                advance();
                p.params.push_back(expect(Tok::Ident, "a parameter name").text);
            }
            expect(Tok::RParen, "')'");
            for (size_t a = 0; a < p.params.size(); ++a)
                for (size_t b = a + 1; b < p.params.size(); ++b)
                    if (p.params[a] == p.params[b])
                        fail(p.loc, "duplicate parameter '" + p.params[a] + "'");
            expect(Tok::Eq, "'='");
            if (recursive) aux_names.insert(p.name);
            p.body_start = i;
            skip_fun_body();
            pend.push_back(std::move(p));
            if (at(Tok::KwAnd)) {
                if (!recursive)
                    fail(peek().loc, "'and' requires 'let rec'");
                advance();
                continue;
            }
            break;
        }
        expect(Tok::Semi2, "';;'");
        size_t end = i;

        for (const auto& p : pend) {
            i = p.body_start;
            AuxFun f;
            f.name = p.name;
            f.params = p.params;
            f.recursive = recursive;
            f.group = group;
            f.loc = p.loc;
            parse_fun_body(f);
            if (!recursive) aux_names.insert(f.name);
            spec.auxfuns.push_back(std::move(f));
        }
        i = end;
    }

    // Skips a function body up to the next group-level 'and' or ';;'.
    void skip_fun_body() {
        int depth = 0;
        for (;;) {
            const Token& t = peek();
            if (t.kind == Tok::Eof) fail(t.loc, "unterminated 'let' definition");
            if (depth == 0 && (t.kind == Tok::Semi2 || t.kind == Tok::KwAnd)) return;
            if (t.kind == Tok::LParen) depth++;
            if (t.kind == Tok::RParen) depth--;
            // 'let ... in' inside a body nests its own 'and'-free scope; the
            // only KwAnd at depth 0 belongs to the group.
            advance();
        }
    }

    void parse_fun_body(AuxFun& f) {
        if (at(Tok::KwMatch)) {
            advance();
            Token scr = expect(Tok::Ident, "a parameter name");
            int index = -1;
            for (size_t k = 0; k < f.params.size(); ++k)
                if (f.params[k] == scr.text) index = static_cast<int>(k);
            if (index < 0)
                fail(scr.loc, "match scrutinee '" + scr.text + "' is not a parameter of '" +
                                  f.name + "'");
            f.scrutinee = index;
            expect(Tok::KwWith, "'with'");
            if (at(Tok::Bar)) advance(); // optional leading bar
            for (;;) {
                AuxClause cl;
                cl.pat = parse_pattern();
                require_restricted(cl.pat, "aux-function patterns");
                expect(Tok::Arrow, "'->'");
                cl.body = parse_expr();
                f.clauses.push_back(std::move(cl));
                if (at(Tok::Bar)) {
                    advance();
                    continue;
                }
                break;
            }
        } else {
            AuxClause cl;
            cl.pat = Pattern::wildcard(peek().loc);
            cl.body = parse_expr();
            f.scrutinee = std::nullopt;
            f.clauses.push_back(std::move(cl));
        }
    }

    void parse_dynamic() {
        expect(Tok::KwDynamic, "'dynamic'");
        Token name = expect(Tok::UIdent, "a dynamic-definition name");
        declare_upper(name.text, NameClass::Dynamic, name.loc);
        expect(Tok::Eq, "'='");
        DynamicDef d;
        d.name = name.text;
        d.loc = name.loc;
        d.pattern = parse_pattern();
        expect(Tok::Semi2, "';;'");
        spec.dynamics.push_back(std::move(d));
    }

    void parse_context() {
        expect(Tok::KwContext, "'context'");
        Token name = expect(Tok::UIdent, "a context-definition name");
        declare_upper(name.text, NameClass::Context, name.loc);
        expect(Tok::Eq, "'='");
        ContextDef d;
        d.name = name.text;
        d.loc = name.loc;
        in_context_arm = true;
        for (;;) {
            SourceLoc arm_loc = peek().loc;
            PatternPtr arm = parse_as_pattern(); // top-level '|' separates arms
            int holes = count_holes(arm);
            if (holes < 0) {
                in_context_arm = false;
                fail(arm_loc, "the alternatives of a context arm must agree about the hole");
            }
            if (holes != 1) {
                in_context_arm = false;
                fail(arm_loc, "context arm has " + std::to_string(holes) + " holes");
            }
            d.arms.push_back(arm);
            if (at(Tok::Bar)) {
                advance();
                continue;
            }
            break;
        }
        in_context_arm = false;
        expect(Tok::Semi2, "';;'");
        spec.contexts.push_back(std::move(d));
    }

    std::string parse_rule_name() {
        Token name = expect(Tok::Ident, "a rule name");
        if (!rule_names.insert(name.text).second)
            fail(name.loc, "duplicate definition name '" + name.text + "'");
        return name.text;
    }

    void parse_axiom() {
        SourceLoc loc = expect(Tok::KwAxiom, "'axiom'").loc;
        Rule r;
        r.kind = Rule::Kind::Axiom;
        r.loc = loc;
        r.name = parse_rule_name();
        expect(Tok::Colon, "':'");
        r.lhs = parse_pattern();
        if (at(Tok::KwWhen)) {
            advance();
            r.cond = parse_expr();
        }
        expect(Tok::DArrow, "'==>'");
        r.rhs = parse_expr();
        expect(Tok::Semi2, "';;'");
        spec.rules.push_back(std::move(r));
    }

    void parse_inference() {
        SourceLoc loc = expect(Tok::KwInference, "'inference'").loc;
        Rule r;
        r.kind = Rule::Kind::Inference;
        r.loc = loc;
        r.name = parse_rule_name();
        expect(Tok::Colon, "':'");
        r.premise_lhs = parse_expr();
        expect(Tok::DArrow, "'==>'");
        r.premise_rhs = parse_pattern();
        require_restricted(r.premise_rhs, "premise patterns");
        expect(Tok::RuleSep, "a '---' separator");
        r.lhs = parse_pattern();
        if (at(Tok::KwWhen)) {
            advance();
            r.cond = parse_expr();
        }
        expect(Tok::BarDArrow, "'|==>'");
        r.rhs = parse_expr();
        expect(Tok::Semi2, "';;'");
        spec.rules.push_back(std::move(r));
    }

    void parse_specification() {
        expect(Tok::KwSpecification, "'SPECIFICATION'");
        expect(Tok::Colon, "':'");
        while (!at(Tok::Eof)) {
            switch (peek().kind) {
            case Tok::Hash: parse_open_directive(); break;
            case Tok::KwLet: parse_let_group(); break;
            case Tok::KwDynamic: parse_dynamic(); break;
            case Tok::KwContext: parse_context(); break;
            case Tok::KwAxiom: parse_axiom(); break;
            case Tok::KwInference: parse_inference(); break;
            default:
                fail(peek().loc,
                     "expected a definition ('let', 'dynamic', 'axiom', 'context', "
                     "'inference'), found " +
                         tok_name(peek().kind));
            }
        }
    }

    Spec run() {
        parse_signature();
        parse_specification();
        return std::move(spec);
    }
};

} // namespace

Spec parse_spec(const std::string& src, std::vector<Diagnostic>* warnings) {
    Parser p(src, warnings);
    return p.run();
}

} // namespace sl
