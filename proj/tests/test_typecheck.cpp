#include "doctest.h"

#include "helpers.hpp"

using namespace sl;

namespace {

std::string with_sig(const std::string& body) {
    return "SIGNATURE:\n"
           "type M = Var of string | Lam of string * M | App of M * M;;\n"
           "startfrom M;;\n"
           "SPECIFICATION:\n" +
           body;
}

std::string with_two_types(const std::string& body) {
    return "SIGNATURE:\n"
           "type M = A | Wrap of M;;\n"
           "type N = B;;\n"
           "startfrom M;;\n"
           "SPECIFICATION:\n" +
           body;
}

bool has(const std::string& all, const std::string& needle) {
    return all.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("typecheck: corpus specs get the expected types") {
    CheckedSpec cbv = slt::check_ok(slt::corpus_source("cbv"));
    CHECK(type_to_string(cbv.dynamic_types.at("V")) == "M");
    CHECK(context_type_to_string(cbv.context_types.at("H")) == "M o-> M");
    const AuxSig& subst = cbv.aux_sigs.at("subst");
    REQUIRE(subst.params.size() == 3);
    CHECK(type_to_string(subst.params[0]) == "M");
    CHECK(type_to_string(subst.params[1]) == "string");
    CHECK(type_to_string(subst.params[2]) == "M");
    CHECK(type_to_string(subst.result) == "M");
    REQUIRE(cbv.rule_subjects.size() == 2);
    CHECK(type_to_string(cbv.rule_subjects[0]) == "M");
    CHECK(type_to_string(cbv.rule_subjects[1]) == "M");
    CHECK(cbv.premise_subjects[0] == nullptr); // axioms have no premise
    CHECK(type_to_string(cbv.premise_subjects[1]) == "M");

    CheckedSpec arith = slt::check_ok(slt::corpus_source("arith"));
    CHECK(type_to_string(arith.dynamic_types.at("W")) == "E");
    CHECK(context_type_to_string(arith.context_types.at("H")) == "E o-> E");
    CHECK(type_to_string(arith.aux_sigs.at("double").params[0]) == "int");
    CHECK(type_to_string(arith.aux_sigs.at("double").result) == "int");
}

TEST_CASE("typecheck: mutually recursive functions") {
    CheckedSpec cs = slt::check_ok(with_sig(
        "let rec evn(n) = if n = 0 then true else odd(n - 1)\n"
        "and odd(n) = if n = 0 then false else evn(n - 1);;\n"));
    CHECK(type_to_string(cs.aux_sigs.at("evn").params[0]) == "int");
    CHECK(type_to_string(cs.aux_sigs.at("odd").params[0]) == "int");
    // bool is representable in signatures only through results.
    CHECK(cs.aux_sigs.at("evn").result->kind == ObjType::Kind::Bool);
}

TEST_CASE("typecheck: tuple results destructure") {
    CheckedSpec cs = slt::check_ok(with_sig(
        "let split(t) = match t with App(f, a) -> (f, a) | _ -> (t, t);;\n"
        "axiom swap: App(f, a) ==> let (p, q) = split(App(f, a)) in App(q, p);;\n"));
    CHECK(type_to_string(cs.aux_sigs.at("split").result) == "M*M");
}

TEST_CASE("typecheck: rule subject mismatches") {
    CHECK(has(slt::check_errors(with_two_types("axiom bad: A ==> B;;")),
              "rule 'bad' rewrites a M to a N"));
    CHECK(has(slt::check_errors(with_two_types("axiom r: x ==> x;;")),
              "cannot determine the subject type of rule 'r'"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Var x when x ==> Var x;;")),
              "the 'when' condition of rule 'r' must be bool, found string"));
}

TEST_CASE("typecheck: context holes must agree") {
    std::string errs = slt::check_errors(
        "SIGNATURE:\n"
        "type M = Lift of M | Pair of string * M | A;;\n"
        "startfrom M;;\n"
        "SPECIFICATION:\n"
        "context H = Lift BOX | Pair(BOX, _);;\n");
    CHECK(has(errs, "the hole is used at type"));
    CHECK(has(errs, "context definition 'H': arms disagree about its type"));
}

TEST_CASE("typecheck: definitions must consume input before recursing") {
    CHECK(has(slt::check_errors(with_two_types("dynamic V = (_ : V);;")),
              "dynamic definition 'V' refers back to itself before matching any constructor"));
    CHECK(has(slt::check_errors(with_two_types("context H = BOX | H BOX;;")),
              "context definition 'H' refers back to itself before matching any constructor"));
    // Guarded self-reference is the normal recursive case.
    CHECK(slt::check_errors(with_two_types("dynamic V = A | Wrap (_ : V);;")) == "");
    CHECK(slt::check_errors(with_two_types("context H = BOX | Wrap H;;")) == "");
}

TEST_CASE("typecheck: pattern faults") {
    CHECK(has(slt::check_errors(with_sig("axiom r: App(x, x) ==> x;;")),
              "variable 'x' is bound twice"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Var (Lam _) ==> Var \"x\";;")),
              "constructor 'Lam' builds a M, but a string is expected here"));
    CHECK(has(slt::check_errors(with_sig("dynamic V = Lam _;;\n"
                                         "axiom r: Var (x : V) ==> Var x;;")),
              "dynamic definition 'V' matches a M, but a string is expected here"));
    CHECK(has(slt::check_errors(with_sig("axiom r: (Var x | App(x, _)) ==> x;;")),
              "variable 'x' has different types in the alternatives"));
    CHECK(has(slt::check_errors(with_sig("context H = BOX;;\n"
                                         "axiom r: ((h : H) (Lam _) | h) ==> Var \"x\";;")),
              "variable 'h' is a term in one alternative and a context in the other"));
    CHECK(has(slt::check_errors(with_sig("axiom r: (Var x | Lam _) ==> Var \"y\";;")),
              "alternative pattern branches must bind the same variables"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Lam(x, b, c) ==> b;;")),
              "tuple pattern of 3 components"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Var (x : type int) ==> Var x;;")),
              "type constraint int conflicts with"));
    CHECK(has(slt::check_errors(with_sig("axiom r: (x : type Q) ==> x;;")), "unknown type 'Q'"));
}

TEST_CASE("typecheck: expression faults") {
    CHECK(has(slt::check_errors(with_sig("axiom r: Lam(x, b) ==> y;;")), "unbound variable 'y'"));
    CHECK(has(slt::check_errors(with_sig("context H = BOX;;\n"
                                         "axiom r: (h : H) Lam(x, b) ==> h;;")),
              "context variable 'h' can only be used by filling it"));
    CHECK(has(slt::check_errors(with_sig("context H = BOX;;\n"
                                         "axiom r: (h : H) Lam(x, b) ==> h 3;;")),
              "filling context 'h': expected M, found int"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Var x ==> if x then Var x else Var x;;")),
              "'if' condition must be bool, found string"));
    CHECK(has(slt::check_errors(
                  with_sig("axiom r: Var x when (if true then 1 else Var x) = 1 ==> Var x;;")),
              "branches of 'if' have different types: int and M"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Var x when x + 1 = 2 ==> Var x;;")),
              "'+' needs int operands, found string"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Var x when x = 2 ==> Var x;;")),
              "'=' compares a string with a int"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Lam(x, b) when b = b ==> b;;")),
              "'=' needs string or int operands, found M"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Var x ==> let (p, q) = Var x in p;;")),
              "'let' pattern of 2 components, but the expression has type M"));
    // With no such function declared, `g(x)` can only be a filling.
    CHECK(has(slt::check_errors(with_sig("axiom r: Var x ==> g(x);;")),
              "unbound context variable 'g'"));
    CHECK(has(slt::check_errors(with_sig("let id(a) = App(a, a);;\n"
                                         "axiom r: Lam(x, b) ==> id(b, b);;")),
              "function 'id' expects 1 arguments, got 2"));
    CHECK(has(slt::check_errors(with_sig("axiom r: Var x ==> Var (freshname(x));;")),
              "freshname expects no arguments"));
    CHECK(has(slt::check_errors(with_sig(
                  "let f(a) = match a with Var _ -> 1 | _ -> \"s\";;")),
              "function 'f' returns a string here, but a int elsewhere"));
}

TEST_CASE("typecheck: underdetermined functions are rejected") {
    std::string errs = slt::check_errors(with_sig("let mystery(t) = (t, t);;"));
    CHECK(has(errs, "cannot determine the type of parameter 't' of function 'mystery'"));
    CHECK(has(errs, "cannot determine the result type of function 'mystery'"));
}
