#include "doctest.h"

#include "gen.hpp"
#include "helpers.hpp"
#include "oracle.hpp"
#include "sl/meta_eval.hpp"

using namespace sl;

namespace {

/// A ready-to-evaluate harness around one checked specification.
struct Evaluator {
    CheckedSpec cs;
    std::map<std::string, const AuxFun*> aux;
    FreshNameSupply fresh;
    int max_depth = 100000;

    explicit Evaluator(const std::string& src)
        : cs(slt::check_ok(src)), aux(build_aux_index(cs.spec)) {}

    MetaValue operator()(const MetaExprPtr& e, EnvPtr env = nullptr) {
        EvalCtx ctx{&cs.spec.sig, &aux, &fresh, max_depth, 0};
        return eval_meta(ctx, e, env);
    }
};

std::string eval_error(Evaluator& ev, const MetaExprPtr& e, EnvPtr env = nullptr) {
    try {
        ev(e, env);
    } catch (const EvalError& err) {
        return err.what();
    }
    return "";
}

} // namespace

TEST_CASE("meta values: terms convert back and forth") {
    TermPtr t = Term::constr("Lam", {Term::str("x"), Term::constr("Var", {Term::str("x")})});
    MetaValue v = term_to_value(t);
    REQUIRE(v.kind == MetaValue::Kind::Term);
    CHECK(term_equal(value_to_term(v), t));
    // Leaves become bare values, not term wrappers.
    CHECK(term_to_value(Term::intv(3)).kind == MetaValue::Kind::Int);
    CHECK(term_to_value(Term::str("s")).kind == MetaValue::Kind::Str);
    CHECK(term_equal(value_to_term(MetaValue::of_int(-7)), Term::intv(-7)));
    CHECK_THROWS_WITH_AS(value_to_term(MetaValue::of_bool(true)),
                         "a boolean value cannot appear inside a term", EvalError);
    CHECK_THROWS_WITH_AS(value_to_term(MetaValue::of_tuple({})),
                         "a tuple value cannot appear inside a term", EvalError);
}

TEST_CASE("meta values: constructor payloads") {
    TermPtr lam = Term::constr("Lam", {Term::str("x"), Term::constr("Var", {Term::str("x")})});
    MetaValue pay = ctor_payload(lam);
    REQUIRE(pay.kind == MetaValue::Kind::Tuple);
    REQUIRE(pay.tuple.size() == 2);
    CHECK(pay.tuple[0].sval == "x");
    MetaValue single = ctor_payload(Term::constr("Var", {Term::str("y")}));
    CHECK(single.kind == MetaValue::Kind::Str);
}

TEST_CASE("meta values: environments shadow and share") {
    EnvPtr base = env_bind(nullptr, "x", MetaValue::of_int(1));
    EnvPtr inner = env_bind(base, "x", MetaValue::of_int(2));
    REQUIRE(env_lookup(base, "x") != nullptr);
    CHECK(env_lookup(base, "x")->ival == 1);
    CHECK(env_lookup(inner, "x")->ival == 2);
    CHECK(env_lookup(inner, "y") == nullptr);
}

TEST_CASE("meta eval: expression forms") {
    Evaluator ev(slt::corpus_source("arith"));
    // Arithmetic and comparison.
    MetaExprPtr arith = MetaExpr::binop(
        "+", MetaExpr::lit_int(2),
        MetaExpr::binop("*", MetaExpr::lit_int(3), MetaExpr::lit_int(4), {}), {});
    CHECK(ev(arith).ival == 14);
    CHECK(ev(MetaExpr::binop("<", MetaExpr::lit_int(2), MetaExpr::lit_int(3), {})).bval);
    CHECK(ev(MetaExpr::binop("=", MetaExpr::lit_str("a"), MetaExpr::lit_str("a"), {})).bval);
    CHECK(ev(MetaExpr::binop("<>", MetaExpr::lit_str("a"), MetaExpr::lit_str("b"), {})).bval);
    // Conditionals and let, including tuple destructuring.
    MetaExprPtr ife = MetaExpr::ifexpr(MetaExpr::lit_bool(false), MetaExpr::lit_int(1),
                                       MetaExpr::lit_int(2), {});
    CHECK(ev(ife).ival == 2);
    MetaExprPtr lete = MetaExpr::letexpr(
        {"p", "q"}, true,
        MetaExpr::tuple({MetaExpr::lit_int(10), MetaExpr::lit_int(20)}, {}),
        MetaExpr::binop("-", MetaExpr::var("p", {}), MetaExpr::var("q", {}), {}), {});
    CHECK(ev(lete).ival == -10);
    // Constructors rebuild terms.
    MetaValue num = ev(MetaExpr::constr("Num", {MetaExpr::lit_int(5)}, {}));
    CHECK(pretty_term(value_to_term(num)) == "Num 5");
}

TEST_CASE("meta eval: a tuple value spreads over constructor arguments") {
    Evaluator ev(slt::corpus_source("cbv"));
    EnvPtr env = env_bind(nullptr, "pay",
                          MetaValue::of_tuple({MetaValue::of_str("x"),
                                               term_to_value(Term::constr("Var", {Term::str("x")}))}));
    MetaValue v = ev(MetaExpr::constr("Lam", {MetaExpr::var("pay", {})}, {}), env);
    CHECK(pretty_term(value_to_term(v)) == "Lam(\"x\",Var \"x\")");
    // A malformed payload is a fault, not a silent mismatch.
    EnvPtr bad = env_bind(nullptr, "pay", MetaValue::of_tuple({MetaValue::of_str("x")}));
    CHECK(eval_error(ev, MetaExpr::constr("Lam", {MetaExpr::var("pay", {})}, {}), bad) ==
          "constructor 'Lam' applied to an ill-shaped value");
}

TEST_CASE("meta eval: freshname counts from zero per supply") {
    Evaluator ev(slt::corpus_source("cbv"));
    CHECK(ev(MetaExpr::call("freshname", {}, {})).sval == "_g0");
    CHECK(ev(MetaExpr::call("freshname", {}, {})).sval == "_g1");
    ev.fresh.next = 0;
    CHECK(ev(MetaExpr::call("freshname", {}, {})).sval == "_g0");
}

TEST_CASE("meta eval: faults carry the offending construct") {
    Evaluator ev(slt::corpus_source("cbv"));
    CHECK(eval_error(ev, MetaExpr::var("nope", {})) == "unbound variable 'nope'");
    CHECK(eval_error(ev, MetaExpr::constr("Zap", {}, {})) == "unknown constructor 'Zap'");
    // One argument for a two-slot constructor is an attempted spread.
    CHECK(eval_error(ev, MetaExpr::constr("Lam", {MetaExpr::lit_str("x")}, {})) ==
          "constructor 'Lam' applied to an ill-shaped value");
    CHECK(eval_error(ev, MetaExpr::constr("Lam", {MetaExpr::lit_str("x"), MetaExpr::lit_str("y"),
                                                  MetaExpr::lit_str("z")},
                                          {})) == "constructor 'Lam' expects 2 arguments, got 3");
    CHECK(eval_error(ev, MetaExpr::call("mystery", {}, {})) == "unknown function 'mystery'");
    CHECK(eval_error(ev, MetaExpr::ifexpr(MetaExpr::lit_int(1), MetaExpr::lit_int(1),
                                          MetaExpr::lit_int(2), {})) ==
          "'if' condition evaluated to a int");
    CHECK(eval_error(ev, MetaExpr::binop("+", MetaExpr::lit_str("a"), MetaExpr::lit_int(1), {})) ==
          "'+' applied to non-int values");
    CHECK(eval_error(ev, MetaExpr::binop("=", MetaExpr::lit_bool(true),
                                         MetaExpr::lit_bool(true), {})) ==
          "'=' compares only strings or ints");
    EnvPtr env = env_bind(nullptr, "h", MetaValue::of_int(3));
    CHECK(eval_error(ev, MetaExpr::fill("h", MetaExpr::lit_int(1), {}), env) ==
          "variable 'h' holds a int, it cannot be filled");
    CHECK(eval_error(ev, MetaExpr::letexpr({"p", "q"}, true, MetaExpr::lit_int(1),
                                           MetaExpr::var("p", {}), {})) ==
          "'let' pattern does not fit the value");
}

TEST_CASE("meta eval: recursion depth is bounded") {
    Evaluator ev(
        "SIGNATURE:\n"
        "type M = A;;\n"
        "startfrom M;;\n"
        "SPECIFICATION:\n"
        "let rec spin(n) = if n < 0 then 0 else spin(n + 1);;\n");
    // A limit deep enough to prove the guard, shallow enough for the
    // test binary's ordinary stack.
    ev.max_depth = 500;
    CHECK(eval_error(ev, MetaExpr::call("spin", {MetaExpr::lit_int(0)}, {})) ==
          "recursion depth exceeded in function 'spin'");
}

TEST_CASE("meta eval: clause selection is first match") {
    Evaluator ev(
        "SIGNATURE:\n"
        "type M = A | B | Wrap of M;;\n"
        "startfrom M;;\n"
        "SPECIFICATION:\n"
        "let tag(t) = match t with A -> 1 | Wrap _ -> 2 | (A | B) -> 3;;\n");
    auto run = [&](const char* term_src) {
        EnvPtr env = env_bind(nullptr, "t", term_to_value(parse_term(ev.cs.spec.sig, term_src)));
        return ev(MetaExpr::call("tag", {MetaExpr::var("t", {})}, {}), env).ival;
    };
    CHECK(run("A") == 1);
    CHECK(run("Wrap A") == 2);
    CHECK(run("B") == 3);
    EnvPtr env = env_bind(nullptr, "t", MetaValue::of_int(9));
    CHECK(eval_error(ev, MetaExpr::call("tag", {MetaExpr::var("t", {})}, {}), env) ==
          "no clause of function 'tag' matches its argument");
}

TEST_CASE("meta eval: the bundled substitution is capture-avoiding") {
    Evaluator ev(slt::corpus_source("cbv"));
    const Signature& sig = ev.cs.spec.sig;
    auto subst = [&](const TermPtr& t, const std::string& x, const TermPtr& s) {
        EnvPtr env = env_bind(nullptr, "t", term_to_value(t));
        env = env_bind(env, "x", MetaValue::of_str(x));
        env = env_bind(env, "s", term_to_value(s));
        MetaExprPtr call = MetaExpr::call(
            "subst", {MetaExpr::var("t", {}), MetaExpr::var("x", {}), MetaExpr::var("s", {})}, {});
        return value_to_term(ev(call, env));
    };

    // The classic capture case: substituting y under a binder named y.
    TermPtr body = parse_term(sig, "Lam(\"y\", App(Var \"x\", Var \"y\"))");
    TermPtr got = subst(body, "x", parse_term(sig, "Var \"y\""));
    CHECK(slt::alpha_equal(got, parse_term(sig, "Lam(\"q\", App(Var \"y\", Var \"q\"))")));
    CHECK(!slt::alpha_equal(got, parse_term(sig, "Lam(\"q\", App(Var \"q\", Var \"q\"))")));

    // Against the independent model, across every small term.
    std::vector<TermPtr> pop = slt::all_terms(sig, "M", 4);
    std::vector<TermPtr> fillers = {parse_term(sig, "Var \"y\""),
                                    parse_term(sig, "Lam(\"y\", Var \"x\")"),
                                    parse_term(sig, "App(Var \"x\", Var \"z\")")};
    for (const auto& t : pop)
        for (const auto& s : fillers) {
            CAPTURE(pretty_term(t));
            CAPTURE(pretty_term(s));
            CHECK(slt::alpha_equal(subst(t, "x", s), slt::ref_subst(t, "x", s)));
        }
}
