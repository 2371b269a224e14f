#include "sl/dump.hpp"

#include <cctype>

#include "sl/pretty.hpp"

namespace sl {

namespace {

/// "$0" -> "t0", "$hole" -> "hole"; anything else passes through.
std::string show_ref(const std::string& name) {
    if (name == "$hole") return "hole";
    if (name.size() >= 2 && name[0] == '$') {
        bool digits = true;
        for (size_t i = 1; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
        if (digits) return "t" + name.substr(1);
    }
    return name;
}

/// Rewrites an action for display: references renamed, and a constructor
/// applied to one tuple (which spreads over its arguments when run)
/// shown as a plain multi-argument application.
MetaExprPtr display_expr(const MetaExprPtr& e) {
    switch (e->kind) {
    case MetaExpr::Kind::Var: return MetaExpr::var(show_ref(e->name), e->loc);
    case MetaExpr::Kind::Str:
    case MetaExpr::Kind::Int:
    case MetaExpr::Kind::Bool: return e;
    case MetaExpr::Kind::Constr: {
        std::vector<MetaExprPtr> args;
        if (e->args.size() == 1 && e->args[0]->kind == MetaExpr::Kind::Tuple) {
            for (const auto& a : e->args[0]->args) args.push_back(display_expr(a));
        } else {
            for (const auto& a : e->args) args.push_back(display_expr(a));
        }
        return MetaExpr::constr(e->name, std::move(args), e->loc);
    }
    case MetaExpr::Kind::Tuple: {
        std::vector<MetaExprPtr> args;
        for (const auto& a : e->args) args.push_back(display_expr(a));
        return MetaExpr::tuple(std::move(args), e->loc);
    }
    case MetaExpr::Kind::Call: {
        std::vector<MetaExprPtr> args;
        for (const auto& a : e->args) args.push_back(display_expr(a));
        return MetaExpr::call(e->name, std::move(args), e->loc);
    }
    case MetaExpr::Kind::Fill:
        return MetaExpr::fill(show_ref(e->name), display_expr(e->args[0]), e->loc);
    case MetaExpr::Kind::If:
        return MetaExpr::ifexpr(display_expr(e->args[0]), display_expr(e->args[1]),
                                display_expr(e->args[2]), e->loc);
    case MetaExpr::Kind::Let:
        return MetaExpr::letexpr(e->let_names, e->let_tuple, display_expr(e->args[0]),
                                 display_expr(e->args[1]), e->loc);
    case MetaExpr::Kind::BinOp:
        return MetaExpr::binop(e->name, display_expr(e->args[0]), display_expr(e->args[1]),
                               e->loc);
    }
    return e;
}

std::string show_expr(const MetaExprPtr& e) { return pretty_expr(display_expr(e)); }

std::string callee_name(const MatchCall& call) {
    switch (call.kind) {
    case MatchCall::Kind::Dynamic:
    case MatchCall::Kind::Context: return "match_" + call.def;
    case MatchCall::Kind::Rewrite1: return "rewrite1[" + call.def + "]";
    }
    return call.def;
}

struct Dumper {
    std::string out;
    int counter = 0;

    void line(int depth, const std::string& text) {
        out.append(static_cast<size_t>(depth) * 2, ' ');
        out += text;
        out += '\n';
    }

    static std::string name_list(const std::vector<std::string>& names, bool parens) {
        std::string s;
        if (parens) s += '(';
        for (size_t i = 0; i < names.size(); ++i) {
            if (i) s += ',';
            s += show_ref(names[i]);
        }
        if (parens) s += ')';
        return s;
    }

    void print_state(const StatePtr& s, int depth) {
        int k = counter++;
        std::string head = "S" + std::to_string(k) + ": ";
        switch (s->kind) {
        case State::Kind::Fail:
            line(depth, head + "fail");
            return;
        case State::Kind::Accept: {
            if (s->is_decomp) {
                line(depth, head + "accept (\\hole. " + show_expr(s->action) + ", hole)");
                return;
            }
            std::string t = head + "accept " + show_expr(s->action);
            if (!s->label.empty()) t += " [" + s->label + "]";
            line(depth, t);
            return;
        }
        case State::Kind::Branch: {
            line(depth, head + "branch " + show_ref(s->subject));
            for (const auto& c : s->cases) {
                std::string arm = "case " + c.ctor;
                if (!c.bound.empty()) arm += "(" + show_ref(c.bound) + ")";
                line(depth + 1, arm + " -> S" + std::to_string(counter));
                print_state(c.next, depth + 2);
            }
            if (s->fallback->kind == State::Kind::Fail) {
                line(depth + 1, "default -> fail");
            } else {
                line(depth + 1, "default -> S" + std::to_string(counter));
                print_state(s->fallback, depth + 2);
            }
            return;
        }
        case State::Kind::Choice: {
            line(depth, head + "choice");
            for (const auto& alt : s->alts) print_state(alt, depth + 1);
            return;
        }
        case State::Kind::RefLet: {
            line(depth, head + "ref " + name_list(s->names, s->names.size() > 1) + " = " +
                            callee_name(s->call) + "(" + show_expr(s->call.arg) + ") in");
            print_state(s->body, depth + 1);
            return;
        }
        case State::Kind::Cond: {
            line(depth, head + "when " + show_expr(s->cond));
            print_state(s->body, depth + 1);
            return;
        }
        case State::Kind::BindLet: {
            line(depth, head + "let " + name_list(s->names, s->tuple_bind) + " = " +
                            show_ref(s->src) + " in");
            print_state(s->body, depth + 1);
            return;
        }
        }
    }
};

} // namespace

std::string dump_automaton(const Automaton& a) {
    Dumper d;
    d.out = a.name + "(t0):\n";
    d.print_state(a.root, 1);
    return d.out;
}

std::string dump_spec(const CompiledSpec& cs) {
    std::string out;
    for (size_t i = 0; i < cs.automata.size(); ++i) {
        if (i) out += '\n';
        out += dump_automaton(cs.automata[i]);
    }
    return out;
}

} // namespace sl
