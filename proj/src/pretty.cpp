#include "sl/pretty.hpp"

#include <algorithm>
#include <sstream>

namespace sl {

std::string quote_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

// Pattern precedence, loosest first. A node is parenthesized when the
// position it prints into demands something tighter than its own level.
enum PatLvl { PatAlt = 0, PatAs = 1, PatApp = 2, PatAtom = 3 };

void print_pat(std::string& out, const PatternPtr& p, int lvl);

void print_pat_list(std::string& out, const std::vector<PatternPtr>& ps) {
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i) out += ",";
        print_pat(out, ps[i], PatAlt);
    }
}

void print_pat(std::string& out, const PatternPtr& p, int lvl) {
    switch (p->kind) {
    case Pattern::Kind::Wildcard: out += "_"; return;
    case Pattern::Kind::Var: out += p->name; return;
    case Pattern::Kind::Nullary: out += p->name; return;
    case Pattern::Kind::Hole: out += "BOX"; return;
    case Pattern::Kind::Tuple:
        out += "(";
        print_pat_list(out, p->elems);
        out += ")";
        return;
    case Pattern::Kind::TypeConstraint:
        out += "(";
        print_pat(out, p->sub, PatAlt);
        out += " : type " + type_to_string(p->ty) + ")";
        return;
    case Pattern::Kind::DynConstraint:
        if (p->sub->kind == Pattern::Kind::Wildcard) {
            out += p->name;
        } else {
            out += "(";
            print_pat(out, p->sub, PatAtom);
            out += ":" + p->name + ")";
        }
        return;
    case Pattern::Kind::Alt: {
        bool paren = lvl > PatAlt;
        if (paren) out += "(";
        print_pat(out, p->sub, PatAlt);
        out += " | ";
        print_pat(out, p->sub2, PatAs);
        if (paren) out += ")";
        return;
    }
    case Pattern::Kind::Alias: {
        bool paren = lvl > PatAs;
        if (paren) out += "(";
        print_pat(out, p->sub, PatAs);
        out += " as " + p->name;
        if (paren) out += ")";
        return;
    }
    case Pattern::Kind::Applied: {
        if (p->sub->kind == Pattern::Kind::Tuple) {
            out += p->name + "(";
            print_pat_list(out, p->sub->elems);
            out += ")";
            return;
        }
        bool paren = lvl > PatApp;
        if (paren) out += "(";
        out += p->name + " ";
        print_pat(out, p->sub, PatAtom);
        if (paren) out += ")";
        return;
    }
    case Pattern::Kind::CtxFill: {
        std::string head;
        if (p->sub->kind == Pattern::Kind::Wildcard) {
            head = p->name;
        } else {
            head = "(";
            print_pat(head, p->sub, PatAtom);
            head += ":" + p->name + ")";
        }
        if (p->sub2->kind == Pattern::Kind::Hole) {
            out += head;
            return;
        }
        bool paren = lvl > PatApp;
        if (paren) out += "(";
        out += head + " ";
        print_pat(out, p->sub2, PatAtom);
        if (paren) out += ")";
        return;
    }
    }
}

// Expression precedence, loosest first.
enum ExpLvl { ExpTop = 0, ExpCmp = 1, ExpAdd = 2, ExpMul = 3, ExpApp = 4, ExpAtom = 5 };

int binop_level(const std::string& op) {
    if (op == "+" || op == "-") return ExpAdd;
    if (op == "*") return ExpMul;
    return ExpCmp;
}

void print_exp(std::string& out, const MetaExprPtr& e, int lvl);

void print_exp_list(std::string& out, const std::vector<MetaExprPtr>& es) {
    for (size_t i = 0; i < es.size(); ++i) {
        if (i) out += ",";
        print_exp(out, es[i], ExpTop);
    }
}

void print_exp(std::string& out, const MetaExprPtr& e, int lvl) {
    switch (e->kind) {
    case MetaExpr::Kind::Var: out += e->name; return;
    case MetaExpr::Kind::Str: out += quote_string(e->str); return;
    case MetaExpr::Kind::Bool: out += e->bval ? "true" : "false"; return;
    case MetaExpr::Kind::Int: {
        // A juxtaposed negative literal would read as a subtraction.
        bool paren = e->ival < 0 && lvl >= ExpAtom;
        if (paren) out += "(";
        out += std::to_string(e->ival);
        if (paren) out += ")";
        return;
    }
    case MetaExpr::Kind::Tuple:
        out += "(";
        print_exp_list(out, e->args);
        out += ")";
        return;
    case MetaExpr::Kind::Call: {
        // Call syntax is not an expression atom: as a constructor or
        // filling argument it needs the explicit grouping.
        bool paren = lvl >= ExpAtom;
        if (paren) out += "(";
        out += e->name + "(";
        print_exp_list(out, e->args);
        out += ")";
        if (paren) out += ")";
        return;
    }
    case MetaExpr::Kind::Constr: {
        if (e->args.empty()) {
            // Same again: at argument positions a bare constructor name
            // would not be taken as an expression.
            bool paren = lvl >= ExpAtom;
            if (paren) out += "(";
            out += e->name;
            if (paren) out += ")";
            return;
        }
        if (e->args.size() == 1 && e->args[0]->kind != MetaExpr::Kind::Tuple) {
            bool paren = lvl > ExpApp;
            if (paren) out += "(";
            out += e->name + " ";
            print_exp(out, e->args[0], ExpAtom);
            if (paren) out += ")";
            return;
        }
        // Multiple arguments — or one tuple-valued argument, which keeps
        // an extra pair of parentheses to stay distinct.
        out += e->name + "(";
        print_exp_list(out, e->args);
        out += ")";
        return;
    }
    case MetaExpr::Kind::Fill: {
        bool paren = lvl > ExpApp;
        if (paren) out += "(";
        out += e->name + " ";
        print_exp(out, e->args[0], ExpAtom);
        if (paren) out += ")";
        return;
    }
    case MetaExpr::Kind::BinOp: {
        int nat = binop_level(e->name);
        bool paren = lvl > nat;
        if (paren) out += "(";
        // Comparisons are non-associative; + - * associate left.
        print_exp(out, e->args[0], nat == ExpCmp ? ExpAdd : nat);
        out += " " + e->name + " ";
        print_exp(out, e->args[1], nat + 1);
        if (paren) out += ")";
        return;
    }
    case MetaExpr::Kind::If: {
        bool paren = lvl > ExpTop;
        if (paren) out += "(";
        out += "if ";
        print_exp(out, e->args[0], ExpTop);
        out += " then ";
        print_exp(out, e->args[1], ExpTop);
        out += " else ";
        print_exp(out, e->args[2], ExpTop);
        if (paren) out += ")";
        return;
    }
    case MetaExpr::Kind::Let: {
        bool paren = lvl > ExpTop;
        if (paren) out += "(";
        out += "let ";
        if (e->let_tuple) {
            out += "(";
            for (size_t i = 0; i < e->let_names.size(); ++i) {
                if (i) out += ",";
                out += e->let_names[i];
            }
            out += ")";
        } else {
            out += e->let_names[0];
        }
        out += " = ";
        print_exp(out, e->args[0], ExpTop);
        out += " in ";
        print_exp(out, e->args[1], ExpTop);
        if (paren) out += ")";
        return;
    }
    }
}

std::string render_aux_group(const std::vector<const AuxFun*>& group) {
    std::string out;
    for (size_t gi = 0; gi < group.size(); ++gi) {
        const AuxFun& f = *group[gi];
        if (gi == 0)
            out += f.recursive ? "let rec " : "let ";
        else
            out += "and ";
        out += f.name + "(";
        for (size_t i = 0; i < f.params.size(); ++i) {
            if (i) out += ",";
            out += f.params[i];
        }
        out += ") = ";
        if (f.scrutinee) {
            out += "match " + f.params[*f.scrutinee] + " with\n";
            for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
                out += ci == 0 ? "    " : "  | ";
                print_pat(out, f.clauses[ci].pat, PatAlt);
                out += " -> ";
                print_exp(out, f.clauses[ci].body, ExpTop);
                if (ci + 1 < f.clauses.size()) out += "\n";
            }
        } else {
            print_exp(out, f.clauses[0].body, ExpTop);
        }
        if (gi + 1 < group.size()) out += "\n";
    }
    out += ";;";
    return out;
}

} // namespace

std::string pretty_pattern(const PatternPtr& p) {
    std::string out;
    print_pat(out, p, PatAlt);
    return out;
}

std::string pretty_expr(const MetaExprPtr& e) {
    std::string out;
    print_exp(out, e, ExpTop);
    return out;
}

std::string pretty_spec(const Spec& spec) {
    std::ostringstream out;
    out << "SIGNATURE:\n\n";
    for (const auto& td : spec.sig.typedefs) {
        out << "type " << td.name << " =";
        for (size_t i = 0; i < td.ctors.size(); ++i) {
            const auto& c = td.ctors[i];
            out << (i ? " | " : " ") << c.name;
            for (size_t j = 0; j < c.args.size(); ++j)
                out << (j ? "*" : " of ") << type_to_string(c.args[j]);
        }
        out << ";;\n";
    }
    out << "\nstartfrom " << spec.sig.start_type << ";;\n";
    out << "\nSPECIFICATION:\n";

    struct Item {
        SourceLoc loc;
        std::string text;
    };
    std::vector<Item> items;

    for (size_t i = 0; i < spec.auxfuns.size();) {
        std::vector<const AuxFun*> group{&spec.auxfuns[i]};
        size_t j = i + 1;
        while (j < spec.auxfuns.size() && spec.auxfuns[i].group >= 0 &&
               spec.auxfuns[j].group == spec.auxfuns[i].group)
            group.push_back(&spec.auxfuns[j++]);
        items.push_back({spec.auxfuns[i].loc, render_aux_group(group)});
        i = j;
    }
    for (const auto& d : spec.dynamics)
        items.push_back({d.loc, "dynamic " + d.name + " = " + pretty_pattern(d.pattern) + ";;"});
    for (const auto& d : spec.contexts) {
        std::string s = "context " + d.name + " = ";
        for (size_t i = 0; i < d.arms.size(); ++i) {
            if (i) s += " | ";
            // Top-level '|' separates arms, so each arm prints as if it
            // stood in an alternative.
            std::string arm;
            print_pat(arm, d.arms[i], PatAs);
            s += arm;
        }
        items.push_back({d.loc, s + ";;"});
    }
    for (const auto& r : spec.rules) {
        std::string s;
        if (r.kind == Rule::Kind::Axiom) {
            s = "axiom " + r.name + ": " + pretty_pattern(r.lhs);
            if (r.cond) s += " when " + pretty_expr(r.cond);
            s += " ==> " + pretty_expr(r.rhs) + ";;";
        } else {
            s = "inference " + r.name + ": " + pretty_expr(r.premise_lhs) + " ==> " +
                pretty_pattern(r.premise_rhs) + "\n   ------------------------------\n   " +
                pretty_pattern(r.lhs);
            if (r.cond) s += " when " + pretty_expr(r.cond);
            s += " |==> " + pretty_expr(r.rhs) + ";;";
        }
        items.push_back({r.loc, s});
    }

    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.loc.line != b.loc.line) return a.loc.line < b.loc.line;
        return a.loc.col < b.loc.col;
    });
    for (const auto& it : items) out << "\n" << it.text << "\n";
    return out.str();
}

} // namespace sl
