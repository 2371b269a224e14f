#include "doctest.h"

#include "helpers.hpp"
#include "sl/lexer.hpp"
#include "sl/pretty.hpp"

using namespace sl;

namespace {

std::string lex_error(const std::string& src) {
    try {
        lex(src);
    } catch (const ParseError& e) {
        return e.diag.message;
    }
    return "";
}

std::string parse_error(const std::string& src) {
    try {
        parse_spec(src);
    } catch (const ParseError& e) {
        return e.diag.message;
    }
    return "";
}

std::string with_sig(const std::string& body) {
    return "SIGNATURE:\n"
           "type M = Var of string | Lam of string * M | App of M * M;;\n"
           "startfrom M;;\n"
           "SPECIFICATION:\n" +
           body;
}

} // namespace

TEST_CASE("lexer: token stream basics") {
    auto toks = lex("axiom (x, _) ==> |==> ----- BOX 42 \"hi\"");
    REQUIRE(toks.size() == 13); // 12 tokens plus eof
    CHECK(toks[0].kind == Tok::KwAxiom);
    CHECK(toks[1].kind == Tok::LParen);
    CHECK(toks[2].kind == Tok::Ident);
    CHECK(toks[2].text == "x");
    CHECK(toks[3].kind == Tok::Comma);
    CHECK(toks[4].kind == Tok::Underscore);
    CHECK(toks[5].kind == Tok::RParen);
    CHECK(toks[6].kind == Tok::DArrow);
    CHECK(toks[7].kind == Tok::BarDArrow);
    CHECK(toks[8].kind == Tok::RuleSep);
    CHECK(toks[9].kind == Tok::KwBox);
    CHECK(toks[10].kind == Tok::Int);
    CHECK(toks[10].ival == 42);
    CHECK(toks[11].kind == Tok::Str);
    CHECK(toks[11].text == "hi");
}

TEST_CASE("lexer: comments nest") {
    auto toks = lex("a (* one (* two *) still one *) b");
    REQUIRE(toks.size() == 3); // a, b, eof
    CHECK(toks[0].text == "a");
    CHECK(toks[1].text == "b");
    CHECK(lex_error("(* never closed") == "unterminated comment");
}

TEST_CASE("lexer: the many faces of '-'") {
    // Negative literals are assembled by the parsers; the lexer only
    // distinguishes minus, arrow, and the inference-rule separator.
    auto toks = lex("- -3 -> ----");
    REQUIRE(toks.size() == 6);
    CHECK(toks[0].kind == Tok::Minus);
    CHECK(toks[1].kind == Tok::Minus);
    CHECK(toks[2].kind == Tok::Int);
    CHECK(toks[3].kind == Tok::Arrow);
    CHECK(toks[4].kind == Tok::RuleSep);
    CHECK(lex_error("--") == "unexpected '--'");
    CHECK(lex_error("999999999999999999999") ==
          "integer literal out of range: 999999999999999999999");
}

TEST_CASE("lexer: single semicolon hint") {
    CHECK(lex_error("type M = A;") == "unexpected ';' (did you mean ';;'?)");
}

TEST_CASE("lexer: leading underscore is reserved") {
    CHECK(lex_error("_foo") == "identifiers may not start with '_'");
    // A bare underscore is the wildcard, not an identifier.
    CHECK(lex("_")[0].kind == Tok::Underscore);
}

TEST_CASE("lexer: string literals") {
    auto toks = lex("\"a\\\"b\\\\c\"");
    CHECK(toks[0].text == "a\"b\\c");
    CHECK(lex_error("\"a\\qb\"") == "invalid escape '\\q' in string literal");
    CHECK(lex_error("\"open") == "unterminated string literal");
    CHECK(lex_error("\"line\nbreak\"") == "unterminated string literal");
}

TEST_CASE("lexer: generated-name strings are reserved") {
    // Strings that collide with the fresh-name generator are refused so
    // freshness claims stay honest; near-misses are fine.
    CHECK(lex_error("\"_g12\"") == "string literal \"_g12\" uses a reserved fresh-name");
    CHECK(lex("\"_g\"")[0].text == "_g");
    CHECK(lex("\"_gx\"")[0].text == "_gx");
    CHECK(lex("\"x_g1\"")[0].text == "x_g1");
}

TEST_CASE("parser: corpus specs round-trip through the pretty printer") {
    for (const auto& e : corpus_entries(slt::corpus_dir())) {
        CAPTURE(e.name);
        Spec first = parse_spec(read_text_file(e.spec_path));
        std::string printed = pretty_spec(first);
        CAPTURE(printed);
        Spec second = parse_spec(printed);
        CHECK(ast_equal(first, second));
        // Printing is a normal form: it is stable under reparsing.
        CHECK(pretty_spec(second) == printed);
    }
}

TEST_CASE("parser: construct-dense spec round-trips") {
    std::string src = with_sig(
        "let rec size(t) = match t with\n"
        "    Var _ -> 1\n"
        "  | Lam(_, b) -> 1 + size(b)\n"
        "  | App(f, a) -> size(f) + size(a)\n"
        "and spin(t) = if size(t) < 3 then t else spin(t);;\n"
        "let pick(t) = match t with\n"
        "    (App(f, _) as w | Lam(_, (f as w))) -> (f, w)\n"
        "  | _ -> (t, t);;\n"
        "dynamic V = Lam _ | Var (_ : type string);;\n"
        "context H = BOX | App(H, _) | App((_ : V), H);;\n"
        "axiom a1: App(Lam(x, b), (v : V)) ==> let (p, q) = pick(b) in\n"
        "    if x = \"k\" then p else q;;\n"
        "axiom a2: (t : type M) when 1 + 2 * 3 <= 7 ==> t;;\n"
        "inference i1:\n"
        "    t1 ==> t2\n"
        "  ---------------\n"
        "    (h : H) t1 |==> h t2;;\n");
    Spec first = parse_spec(src);
    std::string printed = pretty_spec(first);
    CAPTURE(printed);
    Spec second = parse_spec(printed);
    CHECK(ast_equal(first, second));
    CHECK(pretty_spec(second) == printed);
}

TEST_CASE("parser: operator precedence in conditions") {
    Spec s = parse_spec(with_sig("axiom a: Var x when 1 + 2 * 3 <= 7 ==> Var x;;"));
    const MetaExprPtr& c = s.rules[0].cond;
    REQUIRE(c);
    // <= binds loosest, * binds tighter than +.
    REQUIRE(c->kind == MetaExpr::Kind::BinOp);
    CHECK(c->name == "<=");
    CHECK(c->args[0]->name == "+");
    CHECK(c->args[0]->args[1]->name == "*");
}

TEST_CASE("parser: ignored directives warn") {
    std::vector<Diagnostic> warnings;
    parse_spec(with_sig("#open \"namesupply\";;\n"), &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].sev == Severity::Warning);
    CHECK(warnings[0].message == "'#open \"namesupply\"' is ignored");
    CHECK(parse_error(with_sig("#fetch \"x\";;")) == "unknown directive '#fetch'");
}

TEST_CASE("parser: signature shape errors") {
    CHECK(parse_error("SIGNATURE:\nstartfrom M;;\nSPECIFICATION:\n") ==
          "signature declares no types");
    CHECK(parse_error("SIGNATURE:\ntype M = A;;\nSPECIFICATION:\n") ==
          "signature is missing 'startfrom'");
    CHECK(parse_error("SIGNATURE:\ntype M = A;;\nstartfrom N;;\nSPECIFICATION:\n") ==
          "'startfrom' names unknown type 'N'");
    CHECK(parse_error("SIGNATURE:\ntype M = A of Q;;\nstartfrom M;;\nSPECIFICATION:\n") ==
          "constructor 'A' mentions unknown type 'Q'");
    CHECK(parse_error("SIGNATURE:\ntype M = A of 'a;;\nstartfrom M;;\nSPECIFICATION:\n") ==
          "type parameters are not supported ('a')");
    CHECK(parse_error("SIGNATURE:\ntype M = A of bool;;\nstartfrom M;;\nSPECIFICATION:\n") ==
          "unknown builtin type 'bool' (expected 'string' or 'int')");
}

TEST_CASE("parser: duplicate and reserved definition names") {
    CHECK(parse_error(with_sig("dynamic V = Lam _;;\ndynamic V = Var _;;")) ==
          "duplicate definition name 'V'");
    CHECK(parse_error(with_sig("context H = BOX;;\ndynamic H = Lam _;;")) ==
          "duplicate definition name 'H'");
    CHECK(parse_error(with_sig("axiom a: Var x ==> Var x;;\naxiom a: Var y ==> Var y;;")) ==
          "duplicate definition name 'a'");
    CHECK(parse_error(with_sig("let freshname(a) = a;;")) ==
          "'freshname' is a builtin and cannot be redefined");
}

TEST_CASE("parser: pattern name resolution") {
    CHECK(parse_error(with_sig("dynamic V = Foo _;;")) == "unknown name 'Foo' in pattern");
    CHECK(parse_error(with_sig("dynamic V = M;;")) ==
          "type name 'M' cannot be used as a pattern");
    CHECK(parse_error(with_sig("context H = BOX;;\ndynamic V = H _;;")) == "");
    CHECK(parse_error(with_sig("dynamic V = (_ : W);;")) ==
          "unknown dynamic or context name 'W'");
    CHECK(parse_error(with_sig("dynamic V = (Lam _ : V);;")) ==
          "pattern under a 'V' constraint must be '_' or a variable");
}

TEST_CASE("parser: hole placement rules") {
    CHECK(parse_error(with_sig("dynamic V = BOX;;")) == "BOX outside a context definition");
    CHECK(parse_error(with_sig("context H = App(_, _);;")) == "context arm has 0 holes");
    CHECK(parse_error(with_sig("context H = App(BOX, BOX);;")) == "context arm has 2 holes");
    CHECK(parse_error(with_sig("context H = BOX | App((H | Lam _), _);;")) ==
          "the alternatives of a context arm must agree about the hole");
    // Both alternatives place one hole: legal, whichever side matches.
    CHECK(parse_error(with_sig("context H = BOX | App((App(H, _) | Lam(_, H)), _);;")) == "");
    // A context applied to a hole-free filler places no hole.
    CHECK(parse_error(with_sig("context H = BOX | H _;;")).find("context arm has 0 holes") !=
          std::string::npos);
}

TEST_CASE("parser: fillers are mandatory outside context arms") {
    std::string pre = "context H = BOX;;\n";
    CHECK(parse_error(with_sig(pre + "axiom a: (h : H) ==> Var \"x\";;")) ==
          "context filling '(h:H)' needs a filler pattern");
    CHECK(parse_error(with_sig(pre + "axiom a: App(H, _) ==> Var \"x\";;")) ==
          "context name 'H' needs a filler pattern");
}

TEST_CASE("parser: aux and premise patterns are plain") {
    std::string pre = "dynamic V = Lam _;;\ncontext H = BOX;;\n";
    CHECK(parse_error(with_sig(pre + "let f(a) = match a with (_ : V) -> a;;")) ==
          "dynamic constraints are not allowed in aux-function patterns");
    CHECK(parse_error(with_sig(pre + "let f(a) = match a with (h : H) _ -> a;;")) ==
          "context fillings are not allowed in aux-function patterns");
    CHECK(parse_error(with_sig(pre +
                               "inference i:\n t1 ==> (x : V)\n -----\n App(t1, a) |==> a;;")) ==
          "dynamic constraints are not allowed in premise patterns");
}

TEST_CASE("parser: aux function shape errors") {
    CHECK(parse_error(with_sig("let f(a) = match b with _ -> a;;")) ==
          "match scrutinee 'b' is not a parameter of 'f'");
    CHECK(parse_error(with_sig("let f(a) = a and g(b) = b;;")) == "'and' requires 'let rec'");
    CHECK(parse_error(with_sig("let f(a, a) = a;;")) == "duplicate parameter 'a'");
    CHECK(parse_error(with_sig("let f(a) = Pair;;")) == "name 'Pair' is not a constructor");
}

TEST_CASE("parser: locations point at the offending token") {
    try {
        parse_spec(with_sig("dynamic V = Foo _;;"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.diag.loc.line == 5);
        CHECK(e.diag.loc.col == 13);
    }
}
