#include "doctest.h"

#include "gen.hpp"
#include "helpers.hpp"
#include "sl/term.hpp"

using namespace sl;

namespace {

std::string term_error(const Signature& sig, const std::string& src, ObjTypePtr expected = nullptr,
                       SourceLoc* loc = nullptr) {
    try {
        parse_term(sig, src, expected);
    } catch (const ParseError& e) {
        if (loc) *loc = e.diag.loc;
        return e.diag.message;
    }
    return "";
}

const Signature& lam_sig() {
    static CheckedSpec cs = slt::check_ok(slt::corpus_source("cbv"));
    return cs.spec.sig;
}

const Signature& arith_sig() {
    static CheckedSpec cs = slt::check_ok(slt::corpus_source("arith"));
    return cs.spec.sig;
}

} // namespace

TEST_CASE("terms: parsing shapes") {
    const Signature& sig = lam_sig();
    TermPtr t = parse_term(sig, "App(Lam(\"y\", Var \"y\"), Var \"z\");;");
    REQUIRE(t->kind == Term::Kind::Constr);
    REQUIRE(t->args.size() == 2);
    CHECK(t->args[0]->ctor == "Lam");
    CHECK(t->args[0]->args[0]->sval == "y");
    // The ';;' terminator is optional, parentheses group, and unary
    // constructors take a juxtaposed atom.
    CHECK(term_equal(t, parse_term(sig, "App((Lam(\"y\", (Var \"y\"))), Var \"z\")")));
    TermPtr n = parse_term(arith_sig(), "IsNeg (Num -2)");
    CHECK(n->args[0]->args[0]->ival == -2);
}

TEST_CASE("terms: printed forms") {
    CHECK(pretty_term(Term::constr("T", {})) == "T");
    CHECK(pretty_term(Term::constr("Num", {Term::intv(-2)})) == "Num -2");
    CHECK(pretty_term(Term::constr("Var", {Term::str("x")})) == "Var \"x\"");
    CHECK(pretty_term(Term::constr("IsNeg", {Term::constr("Num", {Term::intv(-1)})})) ==
          "IsNeg (Num -1)");
    CHECK(pretty_term(Term::constr("Dbl", {Term::constr("T", {})})) == "Dbl T");
    CHECK(pretty_term(Term::constr("App", {Term::constr("Var", {Term::str("f")}),
                                           Term::constr("Var", {Term::str("a")})})) ==
          "App(Var \"f\",Var \"a\")");
    CHECK(pretty_term(Term::str("a\"b\\c")) == "\"a\\\"b\\\\c\"");
}

TEST_CASE("terms: every small term reparses to itself") {
    for (const auto& t : slt::all_terms(lam_sig(), "M", 4)) {
        CAPTURE(pretty_term(t));
        CHECK(term_equal(t, parse_term(lam_sig(), pretty_term(t))));
    }
    for (const auto& t : slt::all_terms(arith_sig(), "E", 3)) {
        CAPTURE(pretty_term(t));
        CHECK(term_equal(t, parse_term(arith_sig(), pretty_term(t))));
    }
}

TEST_CASE("terms: random large terms reparse to themselves") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        TermPtr t = slt::random_term(lam_sig(), "M", rng, 12);
        CAPTURE(pretty_term(t));
        CHECK(term_equal(t, parse_term(lam_sig(), pretty_term(t))));
    }
    for (int i = 0; i < 200; ++i) {
        TermPtr t = slt::random_term(arith_sig(), "E", rng, 12);
        CAPTURE(pretty_term(t));
        CHECK(term_equal(t, parse_term(arith_sig(), pretty_term(t))));
    }
}

TEST_CASE("terms: parse errors name the fault and its position") {
    const Signature& sig = lam_sig();
    SourceLoc loc;
    CHECK(term_error(sig, "Foo(1)", nullptr, &loc) == "unknown constructor 'Foo'");
    CHECK(loc.line == 1);
    CHECK(loc.col == 1);
    CHECK(term_error(sig, "App(Var \"x\")") == "constructor 'App' expects 2 arguments, got 1");
    CHECK(term_error(sig, "Lam(Var \"x\", Var \"y\")", nullptr, &loc) ==
          "constructor 'Lam' argument 1: expected string, found M");
    CHECK(loc.col == 5);
    CHECK(term_error(sig, "Var \"x\" Var \"y\"") == "trailing input after the term");
    CHECK(term_error(sig, "Var \"x\";; 3") == "trailing input after the term");
    CHECK(term_error(sig, "Var(3)") == "constructor 'Var' argument 1: expected string, found int");
    CHECK(term_error(sig, "3", ObjType::named("M")) == "expected a term of type M, found int");
    CHECK(term_error(sig, "Num 3") == "unknown constructor 'Num'");
    CHECK(term_error(sig, "") == "expected a term, found end of input");
}

TEST_CASE("terms: structural validation locates faults by path") {
    const Signature& sig = lam_sig();
    ObjTypePtr m = ObjType::named("M");
    TermPtr good = parse_term(sig, "App(Lam(\"x\", Var \"x\"), Var \"y\")");
    CHECK(typecheck_term(sig, good, m) == std::nullopt);

    TermPtr bad = Term::constr(
        "App", {Term::constr("Lam", {Term::str("x"), Term::str("oops")}), Term::str("y")});
    auto err1 = typecheck_term(sig, bad, m);
    REQUIRE(err1.has_value());
    CHECK(*err1 == "App[1].Lam[2]: expected M, found string");

    TermPtr unknown = Term::constr("App", {Term::constr("Zap", {}), good});
    auto err2 = typecheck_term(sig, unknown, m);
    REQUIRE(err2.has_value());
    CHECK(*err2 == "App[1]: unknown constructor 'Zap'");

    TermPtr thin = Term::constr("App", {good});
    auto err3 = typecheck_term(sig, thin, m);
    REQUIRE(err3.has_value());
    CHECK(*err3 == "constructor 'App' expects 2 arguments, got 1");
}

TEST_CASE("terms: ordering and equality") {
    const Signature& sig = arith_sig();
    TermPtr a = parse_term(sig, "Num 1");
    TermPtr b = parse_term(sig, "Num 2");
    TermPtr c = parse_term(sig, "Plus(Num 1, Num 1)");
    CHECK(term_equal(a, parse_term(sig, "Num 1")));
    CHECK(!term_equal(a, b));
    CHECK(term_less(a, b));
    CHECK(!term_less(b, a));
    CHECK(!term_less(a, a));
    // A strict weak order: exactly one of <, >, == holds.
    std::vector<TermPtr> all = {a, b, c};
    for (const auto& x : all)
        for (const auto& y : all) {
            int rels = (term_less(x, y) ? 1 : 0) + (term_less(y, x) ? 1 : 0) +
                       (term_equal(x, y) ? 1 : 0);
            CHECK(rels == 1);
        }
}
