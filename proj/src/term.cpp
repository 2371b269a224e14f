#include "sl/term.hpp"

#include "sl/lexer.hpp"
#include "sl/pretty.hpp"

namespace sl {

TermPtr Term::constr(std::string name, std::vector<TermPtr> args) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Constr;
    t->ctor = std::move(name);
    t->args = std::move(args);
    return t;
}
TermPtr Term::str(std::string s) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Str;
    t->sval = std::move(s);
    return t;
}
TermPtr Term::intv(long long v) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Int;
    t->ival = v;
    return t;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Term::Kind::Str: return a->sval == b->sval;
    case Term::Kind::Int: return a->ival == b->ival;
    case Term::Kind::Constr: {
        if (a->ctor != b->ctor || a->args.size() != b->args.size()) return false;
        for (size_t i = 0; i < a->args.size(); ++i)
            if (!term_equal(a->args[i], b->args[i])) return false;
        return true;
    }
    }
    return false;
}

bool term_less(const TermPtr& a, const TermPtr& b) {
    if (a == b) return false;
    if (a->kind != b->kind) return a->kind < b->kind;
    switch (a->kind) {
    case Term::Kind::Str: return a->sval < b->sval;
    case Term::Kind::Int: return a->ival < b->ival;
    case Term::Kind::Constr: {
        if (a->ctor != b->ctor) return a->ctor < b->ctor;
        for (size_t i = 0; i < a->args.size() && i < b->args.size(); ++i) {
            if (term_less(a->args[i], b->args[i])) return true;
            if (term_less(b->args[i], a->args[i])) return false;
        }
        return a->args.size() < b->args.size();
    }
    }
    return false;
}

int term_size(const TermPtr& t) {
    if (!t) return 0;
    int n = 1;
    for (const auto& a : t->args) n += term_size(a);
    return n;
}

static void print_term(std::string& out, const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Str: out += quote_string(t->sval); return;
    case Term::Kind::Int: out += std::to_string(t->ival); return;
    case Term::Kind::Constr:
        out += t->ctor;
        if (t->args.empty()) return;
        if (t->args.size() == 1) {
            const TermPtr& a = t->args[0];
            bool compound = a->kind == Term::Kind::Constr && !a->args.empty();
            out += compound ? " (" : " ";
            print_term(out, a);
            if (compound) out += ")";
            return;
        }
        out += "(";
        for (size_t i = 0; i < t->args.size(); ++i) {
            if (i) out += ",";
            print_term(out, t->args[i]);
        }
        out += ")";
        return;
    }
}

std::string pretty_term(const TermPtr& t) {
    std::string out;
    print_term(out, t);
    return out;
}

// -------- parsing --------

namespace {

const char* type_name_of(const Signature& sig, const TermPtr& t, const TypeDef** owner) {
    switch (t->kind) {
    case Term::Kind::Str: return "string";
    case Term::Kind::Int: return "int";
    case Term::Kind::Constr:
        if (sig.find_ctor(t->ctor, owner)) return (*owner)->name.c_str();
        return nullptr;
    }
    return nullptr;
}

bool term_has_type(const Signature& sig, const TermPtr& t, const ObjTypePtr& ty) {
    switch (ty->kind) {
    case ObjType::Kind::Str: return t->kind == Term::Kind::Str;
    case ObjType::Kind::Int: return t->kind == Term::Kind::Int;
    case ObjType::Kind::Named: {
        if (t->kind != Term::Kind::Constr) return false;
        const TypeDef* owner = nullptr;
        return sig.find_ctor(t->ctor, &owner) && owner->name == ty->name;
    }
    default: return false;
    }
}

struct TermParser {
    const Signature& sig;
    std::vector<Token> toks;
    size_t i = 0;

    TermParser(const Signature& s, const std::string& src) : sig(s), toks(lex(src)) {}

    [[noreturn]] void fail(SourceLoc at, const std::string& msg) {
        throw ParseError({at, Severity::Error, msg});
    }
    const Token& peek() const { return toks[i]; }
    Token advance() { return toks[i < toks.size() - 1 ? i++ : i]; }

    bool starts_atom() const {
        switch (peek().kind) {
        case Tok::UIdent:
        case Tok::Str:
        case Tok::Int:
        case Tok::Minus:
        case Tok::LParen: return true;
        default: return false;
        }
    }

    TermPtr parse(SourceLoc* loc_out) {
        const Token& t = peek();
        if (loc_out) *loc_out = t.loc;
        switch (t.kind) {
        case Tok::Str: advance(); return Term::str(t.text);
        case Tok::Int: advance(); return Term::intv(t.ival);
        case Tok::Minus: {
            advance();
            if (peek().kind != Tok::Int)
                fail(peek().loc, "expected an integer literal after '-'");
            return Term::intv(-advance().ival);
        }
        case Tok::LParen: {
            advance();
            TermPtr inner = parse(nullptr);
            if (peek().kind != Tok::RParen)
                fail(peek().loc, "expected ')', found " + tok_name(peek().kind));
            advance();
            return inner;
        }
        case Tok::UIdent: {
            advance();
            const Constructor* c = sig.find_ctor(t.text);
            if (!c) fail(t.loc, "unknown constructor '" + t.text + "'");
            std::vector<TermPtr> args;
            std::vector<SourceLoc> arg_locs;
            if (peek().kind == Tok::LParen) {
                advance();
                SourceLoc al;
                args.push_back(parse(&al));
                arg_locs.push_back(al);
                while (peek().kind == Tok::Comma) {
                    advance();
                    args.push_back(parse(&al));
                    arg_locs.push_back(al);
                }
                if (peek().kind != Tok::RParen)
                    fail(peek().loc, "expected ',' or ')', found " + tok_name(peek().kind));
                advance();
            } else if (starts_atom()) {
                SourceLoc al = peek().loc;
                args.push_back(parse(&al));
                arg_locs.push_back(al);
            }
            if (args.size() != c->args.size())
                fail(t.loc, "constructor '" + t.text + "' expects " +
                                std::to_string(c->args.size()) + " arguments, got " +
                                std::to_string(args.size()));
            for (size_t k = 0; k < args.size(); ++k)
                if (!term_has_type(sig, args[k], c->args[k])) {
                    const TypeDef* owner = nullptr;
                    const char* found = type_name_of(sig, args[k], &owner);
                    fail(arg_locs[k], "constructor '" + t.text + "' argument " +
                                          std::to_string(k + 1) + ": expected " +
                                          type_to_string(c->args[k]) + ", found " +
                                          (found ? found : "an unknown constructor"));
                }
            return Term::constr(t.text, std::move(args));
        }
        default:
            fail(t.loc, "expected a term, found " + tok_name(t.kind));
        }
    }
};

} // namespace

TermPtr parse_term(const Signature& sig, const std::string& src, ObjTypePtr expected) {
    TermParser p(sig, src);
    SourceLoc root_loc;
    TermPtr t = p.parse(&root_loc);
    if (p.peek().kind == Tok::Semi2) p.advance();
    if (p.peek().kind != Tok::Eof)
        p.fail(p.peek().loc, "trailing input after the term");
    if (expected && !term_has_type(sig, t, expected)) {
        const TypeDef* owner = nullptr;
        const char* found = type_name_of(sig, t, &owner);
        p.fail(root_loc, "expected a term of type " + type_to_string(expected) + ", found " +
                             (found ? found : "an unknown constructor"));
    }
    return t;
}

// -------- structural validation --------

namespace {

std::optional<std::string> check_at(const Signature& sig, const TermPtr& t, const ObjTypePtr& ty,
                                    const std::string& path) {
    auto fault = [&](const std::string& msg) -> std::optional<std::string> {
        return path.empty() ? msg : path + ": " + msg;
    };
    const TypeDef* owner = nullptr;
    const char* found = type_name_of(sig, t, &owner);
    if (!found && t->kind == Term::Kind::Constr)
        return fault("unknown constructor '" + t->ctor + "'");
    if (!term_has_type(sig, t, ty))
        return fault("expected " + type_to_string(ty) + ", found " + found);
    if (t->kind != Term::Kind::Constr) return std::nullopt;
    const Constructor* c = sig.find_ctor(t->ctor);
    if (t->args.size() != c->args.size())
        return fault("constructor '" + t->ctor + "' expects " + std::to_string(c->args.size()) +
                     " arguments, got " + std::to_string(t->args.size()));
    for (size_t k = 0; k < t->args.size(); ++k) {
        std::string sub = (path.empty() ? "" : path + ".") + t->ctor + "[" +
                          std::to_string(k + 1) + "]";
        if (auto err = check_at(sig, t->args[k], c->args[k], sub)) return err;
    }
    return std::nullopt;
}

} // namespace

std::optional<std::string> typecheck_term(const Signature& sig, const TermPtr& t,
                                          const ObjTypePtr& expected) {
    return check_at(sig, t, expected, "");
}

} // namespace sl
