#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "generators.hpp"
#include "naive_subst.hpp"
#include "proofkit/rewriting.hpp"
#include "proofkit/syntax.hpp"
#include "proofkit/typing.hpp"

using namespace proofkit;

namespace {

FormulaPtr F(const std::string& s) { return parse_formula(s); }
TermPtr T(const std::string& s) { return parse_term(s); }

ErrorKind failure(SystemId sys, const Environment& env, const std::string& m, const TypecheckOptions& o = {}) {
    try {
        typecheck(sys, env, T(m), o);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("typechecked: " << m);
    return ErrorKind::InvariantViolation;
}

}  // namespace

TEST_CASE("typecheck examples") {
    CHECK(identical(typecheck(SystemId::IPC, {{"x", F("X")}}, T("x")), F("X")));
    CHECK(alpha_eq(typecheck(SystemId::F, {}, T("tfun X => fun w:X => w")), F("forall X. X -> X")));
    Environment z{{"z", F("forall X. X")}};
    CHECK(identical(typecheck(SystemId::F, z, T("z [Y -> Y]")), F("Y -> Y")));
    CHECK(failure(SystemId::FAT, z, "z [Y -> Y]") == ErrorKind::NonAtomicInstantiation);
    CHECK(identical(typecheck(SystemId::FAT, z, T("z [Y]")), F("Y")));
}

TEST_CASE("IPC rules") {
    Environment env{{"m", F("X | Y")}, {"f", F("X -> Z")}, {"g", F("Y -> Z")}, {"b", F("bot")}};
    CHECK(identical(typecheck(SystemId::IPC, env, T("case m of { x:X => f x ; y:Y => g y } : Z")), F("Z")));
    CHECK(identical(typecheck(SystemId::IPC, env, T("abort[X & Y] b")), F("X & Y")));
    CHECK(identical(typecheck(SystemId::IPC, env, T("fun y:Y => in1[Z|Y] (g y)")), F("Y -> Z | Y")));
    CHECK(identical(typecheck(SystemId::IPC, env, T("<f, g>.2")), F("Y -> Z")));
}

TEST_CASE("typecheck errors") {
    Environment env{{"x", F("X")}, {"f", F("X -> Y")}};
    CHECK(failure(SystemId::IPC, env, "y") == ErrorKind::UnboundVariable);
    CHECK(failure(SystemId::IPC, env, "f f") == ErrorKind::TypeMismatch);
    CHECK(failure(SystemId::IPC, env, "x.1") == ErrorKind::TypeMismatch);
    CHECK(failure(SystemId::IPC, env, "tfun X => x") == ErrorKind::NotInSystem);
    CHECK(failure(SystemId::F, env, "in1[X|Y] x") == ErrorKind::NotInSystem);
    CHECK(failure(SystemId::F, env, "fun b:bot => b") == ErrorKind::NotInSystem);
    CHECK(failure(SystemId::IPC, env, "case x of { a:X => a ; b:Y => a } : X") == ErrorKind::TypeMismatch);
    CHECK(failure(SystemId::IPC, {{"m", F("X | Y")}}, "case m of { a:X => a ; b:Y => a } : X") ==
          ErrorKind::UnboundVariable);
    CHECK(failure(SystemId::IPC, {{"m", F("X | Y")}}, "case m of { a:X => a ; b:Y => b } : X") ==
          ErrorKind::TypeMismatch);

    // the mismatch is reported at the offending subterm
    try {
        typecheck(SystemId::IPC, env, T("fun u:Y => <u, f u>"));
        FAIL("expected a mismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TypeMismatch);
        CHECK(e.position() == Position{0, 1});
    }
}

TEST_CASE("forall introduction proviso") {
    Environment env{{"x", F("X")}};
    TypecheckOptions strict;
    strict.strictProviso = true;
    CHECK(failure(SystemId::F, env, "tfun X => x", strict) == ErrorKind::ForallProvisoViolated);
    // without the strict option the binder is renamed away from the environment
    FormulaPtr a = typecheck(SystemId::F, env, T("tfun X => x"));
    REQUIRE(a->kind == Formula::Kind::Forall);
    CHECK(a->name != "X");
    CHECK(alpha_eq(a, F("forall V. X")));
    CHECK(identical(typecheck(SystemId::F, env, T("(tfun X => x) [Y]")), F("X")));
    CHECK(alpha_eq(typecheck(SystemId::F, env, T("tfun Y => x"), strict), F("forall Y. X")));
}

TEST_CASE("environments") {
    Environment env;
    env.insert("x", F("X"));
    CHECK_THROWS_AS(env.insert("x", F("Y")), Error);
    try {
        env.insert("x", F("Y"));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicateBinding);
    }
    Environment e2 = env.extended("x", F("Y"));
    CHECK(identical(*e2.lookup("x"), F("Y")));
    CHECK(e2.size() == 1);

    TermPtr m = T("fun y:Y => case m of { a:A => y ; b:B => tfun X => b } : Y");
    Environment at = env_at(env, m, {0, 2});
    CHECK(identical(*at.lookup("y"), F("Y")));
    CHECK(identical(*at.lookup("b"), F("B")));
    CHECK_FALSE(at.contains("a"));
    CHECK(env_at(env, m, {}) == env);
    CHECK_THROWS_AS(env_at(env, m, {0, 3}), Error);
}

TEST_CASE("elimination context typing") {
    CHECK(identical(typecheck_elim_context(SystemId::IPC, {}, ElimContext::proj_hole(1), F("A & B")), F("A")));
    CHECK(identical(typecheck_elim_context(SystemId::IPC, {}, ElimContext::proj_hole(2), F("A & B")), F("B")));
    CHECK(identical(typecheck_elim_context(SystemId::F, {}, ElimContext::tyapp_hole(F("Y")), F("forall X. X -> X")),
                    F("Y -> Y")));
    Environment env{{"n", F("A")}};
    CHECK(identical(typecheck_elim_context(SystemId::IPC, env, ElimContext::app_hole(T("n")), F("A -> B")), F("B")));
    CHECK(identical(typecheck_elim_context(SystemId::IPC, {}, ElimContext::abort_hole(F("C")), F("bot")), F("C")));
    auto cs = ElimContext::case_hole("x", F("A"), T("fun u:B => x"), "y", F("B"), T("fun u:B => u"), F("B -> A"));
    CHECK(failure(SystemId::IPC, {}, "x") == ErrorKind::UnboundVariable);
    CHECK_THROWS(typecheck_elim_context(SystemId::IPC, {}, cs, F("A | B")));
    auto good = ElimContext::case_hole("x", F("A"), T("fun u:B => x"), "y", F("B"), T("fun u:B => n"), F("B -> A"));
    CHECK(identical(typecheck_elim_context(SystemId::IPC, env, good, F("A | B")), F("B -> A")));

    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvariantViolation;
    };
    CHECK(kind([&] { typecheck_elim_context(SystemId::IPC, env, ElimContext::app_hole(T("n")), F("X")); }) ==
          ErrorKind::HoleTypeMismatch);
    CHECK(kind([&] { typecheck_elim_context(SystemId::IPC, {}, ElimContext::proj_hole(1), F("A -> B")); }) ==
          ErrorKind::HoleTypeMismatch);
    CHECK(kind([&] { typecheck_elim_context(SystemId::F, {}, ElimContext::tyapp_hole(F("Y")), F("X")); }) ==
          ErrorKind::HoleTypeMismatch);
    CHECK(kind([&] { typecheck_elim_context(SystemId::FAT, {}, ElimContext::tyapp_hole(F("Y -> Y")),
                                            F("forall X. X")); }) == ErrorKind::NonAtomicInstantiation);
    CHECK(kind([&] { typecheck_elim_context(SystemId::IPC, {}, ElimContext::abort_hole(F("C")), F("A")); }) ==
          ErrorKind::HoleTypeMismatch);
    // the argument itself must fit the implication's premiss
    CHECK(kind([&] { typecheck_elim_context(SystemId::IPC, env, ElimContext::app_hole(T("n")), F("B -> B")); }) ==
          ErrorKind::TypeMismatch);
}

TEST_CASE("elimination contexts agree with typing the filled term") {
    testgen::IpcGen g(41);
    testgen::Rng rng(42);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        testgen::Sample s = g.sample();
        std::map<Position, std::pair<Environment, FormulaPtr>> types;
        TypecheckOptions o;
        o.hook = [&](const Position& p, const Environment& e, const TermPtr&, const FormulaPtr& a) {
            types[p] = {e, a};
        };
        typecheck(SystemId::IPC, s.env, s.term, o);
        for (const auto& [p, ea] : types) {
            TermPtr t = *subterm_at(s.term, p);
            std::optional<ElimContext> e;
            switch (t->kind) {
            case Term::Kind::App: e = ElimContext::app_hole(t->b); break;
            case Term::Kind::Proj: e = ElimContext::proj_hole(t->index); break;
            case Term::Kind::Abort: e = ElimContext::abort_hole(t->ty); break;
            case Term::Kind::Case: e = ElimContext::case_hole(t->x, t->ty, t->b, t->y, t->ty2, t->c, t->ty3); break;
            default: break;
            }
            if (!e) continue;
            CHECK(identical(fill(*e, t->a), t));
            Position head = p;
            head.push_back(0);
            FormulaPtr got = typecheck_elim_context(SystemId::IPC, ea.first, *e, types.at(head).second);
            CHECK(identical(got, ea.second));
            ++checked;
        }
        (void)rng;
    }
    CHECK(checked > 500);
}

TEST_CASE("fine redex examples") {
    CHECK(is_fine_redex({{"z", encode_bot()}}, T("z [X -> Y]"), RuleId::rho_abort));
    CHECK_FALSE(is_fine_redex({{"z", F("forall X. X -> X")}}, T("z [X -> Y]"), RuleId::rho_abort));
    Environment env{{"m", encode_or(F("X"), F("Y"))}, {"p", F("X -> C1 & C2")}, {"q", F("Y -> C1 & C2")}};
    TermPtr r = T("m [C1 & C2] <fun x:X => p x, fun y:Y => q y>");
    CHECK(is_fine_redex(env, r, RuleId::rho_case));
    // annotations that disagree with the disjuncts
    TermPtr wrong = T("m [C1 & C2] <fun x:Y => q x, fun y:X => p y>");
    CHECK_FALSE(is_fine_redex({{"m", encode_or(F("X"), F("Y"))}, {"p", F("X -> C1 & C2")}, {"q", F("Y -> C1 & C2")}},
                              wrong, RuleId::rho_case));
    // beta is always fine
    CHECK(is_fine_redex({}, T("(fun x:X => x) y"), RuleId::beta_imp));
    try {
        is_fine_redex({}, T("z [X -> X]"), RuleId::rho_case);
        FAIL("expected NotARedex");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotARedex);
    }
}

TEST_CASE("hook order is post-order") {
    std::vector<Position> seen;
    TypecheckOptions o;
    o.hook = [&](const Position& p, const Environment&, const TermPtr&, const FormulaPtr&) { seen.push_back(p); };
    typecheck(SystemId::IPC, {{"f", F("X -> X")}, {"x", F("X")}}, T("<f x, x>"), o);
    std::vector<Position> want{{0, 0}, {0, 1}, {0}, {1}, {}};
    CHECK(seen == want);
}

TEST_CASE("types are invariant under renaming of binders") {
    testgen::IpcGen g(51);
    testgen::FGen f(52, false);
    for (int i = 0; i < 300; ++i) {
        for (auto [sys, s] : {std::pair{SystemId::IPC, g.sample()}, std::pair{SystemId::F, f.sample()}}) {
            FormulaPtr a = typecheck(sys, s.env, s.term);
            CHECK(alpha_eq(a, s.type));
            naive::Freshener fr;
            TermPtr r = fr.term(s.term, {}, {});
            CHECK(alpha_eq(typecheck(sys, s.env, r), a));
        }
    }
}

TEST_CASE("atomic terms type the same in F") {
    testgen::FGen g(61, true);
    for (int i = 0; i < 400; ++i) {
        testgen::Sample s = g.sample();
        FormulaPtr a = typecheck(SystemId::FAT, s.env, s.term);
        CHECK(alpha_eq(typecheck(SystemId::F, s.env, s.term), a));
    }
    // and some F terms are not atomic
    testgen::FGen h(62, false);
    int rejected = 0;
    for (int i = 0; i < 200; ++i) {
        testgen::Sample s = h.sample();
        try {
            typecheck(SystemId::FAT, s.env, s.term);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NonAtomicInstantiation);
            ++rejected;
        }
    }
    CHECK(rejected > 0);
}

TEST_CASE("subject reduction on generated terms") {
    struct Src {
        SystemId sys;
        std::function<testgen::Sample()> next;
    };
    testgen::IpcGen ipc(71);
    testgen::FGen f(72, false), fat(73, true);
    std::vector<Src> srcs{{SystemId::IPC, [&] { return ipc.sample(); }},
                          {SystemId::F, [&] { return f.sample(); }},
                          {SystemId::FAT, [&] { return fat.sample(); }}};
    for (auto& src : srcs) {
        std::size_t steps = 0;
        for (int i = 0; i < 300; ++i) {
            testgen::Sample s = src.next();
            FormulaPtr a = typecheck(src.sys, s.env, s.term);
            for (const Redex& r : find_redexes(src.sys, s.env, s.term, rules_of(src.sys))) {
                if (!r.fine) continue;
                TermPtr n = step(src.sys, s.env, s.term, r);
                CHECK_MESSAGE(alpha_eq(typecheck(src.sys, s.env, n), a), print(s.term));
                ++steps;
            }
        }
        CHECK(steps > 300);
    }
}

TEST_CASE("a disjunction-fine head is never absurdity-fine") {
    testgen::FGen g(81, false);
    int pairs = 0;
    for (int i = 0; i < 400; ++i) {
        testgen::Sample s = g.sample();
        for (const Redex& r : find_redexes(SystemId::F, s.env, s.term, {RuleId::rho_case})) {
            if (!r.fine) continue;
            Position head = r.position;
            head.push_back(0);
            try {
                Redex other = redex_at(SystemId::F, s.env, s.term, RuleId::rho_abort, head);
                CHECK_FALSE(other.fine);
                ++pairs;
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::NotARedex);
            }
        }
    }
    CHECK(pairs > 20);
}
