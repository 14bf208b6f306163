#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "generators.hpp"
#include "oracles.hpp"
#include "proofkit/analysis.hpp"
#include "proofkit/syntax.hpp"

using namespace proofkit;

namespace {

FormulaPtr F(const std::string& s) { return parse_formula(s); }
TermPtr T(const std::string& s) { return parse_term(s); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvariantViolation;
}

std::vector<RuleId> rules_in(const ReductionTrace& t) {
    std::vector<RuleId> out;
    for (const auto& s : t.steps) out.push_back(s.rule);
    return out;
}

bool all_administrative(const ReductionTrace& t) {
    return std::all_of(t.steps.begin(), t.steps.end(), [](const TraceStep& s) {
        return s.administrative && (s.rule == RuleId::beta_imp || s.rule == RuleId::beta_and ||
                                    s.rule == RuleId::beta_all);
    });
}

std::map<RuleId, int> histogram(const ReductionTrace& t) {
    std::map<RuleId, int> h;
    for (const auto& s : t.steps) ++h[s.rule];
    return h;
}


}  // namespace

TEST_CASE("formula size") {
    CHECK(formula_size(F("X")) == 0);
    CHECK(formula_size(F("X -> Y")) == 1);
    CHECK(formula_size(F("forall X. X & X")) == 2);
    CHECK(formula_size(F("X -> X -> X")) == 6);
    // the premiss does not count
    CHECK(formula_size(F("(X & X & X) -> Y")) == 1);
    CHECK(formula_size(F("Y -> X & X")) == 2 * 1 * 1 + 3 * 1 + 1);
    testgen::FGen g(151, false);
    for (int i = 0; i < 500; ++i) {
        FormulaPtr a = g.formula(4);
        CHECK(formula_size(a) == oracle::size(a));
    }
    // large sizes need more than 64 bits
    FormulaPtr big = F("X");
    for (int i = 0; i < 8; ++i) big = fimp(F("Y"), big);
    CHECK(formula_size(big) > Natural(std::numeric_limits<std::uint64_t>::max()));
    CHECK(formula_size(big) == oracle::size(big));
}

TEST_CASE("weight examples") {
    CHECK(weight({{"x", F("X")}}, T("x")).total == 0);
    WeightReport one = weight({{"z", encode_bot()}}, T("z [X & X]"));
    CHECK(one.total == 1);
    REQUIRE(one.perPreRedex.size() == 1);
    CHECK(one.perPreRedex[0].position.empty());
    CHECK(weight({{"z", encode_bot()}}, T("<z [X], z [X]>")).total == 0);

    // nested: the outer pre-redex scales the inner ones by |C| + 1
    Environment env{{"o", encode_or(F("X"), F("Y"))}, {"z", encode_bot()}};
    TermPtr nested = T("o [C1 & C2] <fun x:X => z [C1 & C2], fun y:Y => z [C1 & C2]>");
    WeightReport w = weight(env, nested);
    CHECK(w.total == 5);
    CHECK(w.perPreRedex.size() == 3);
    // a non-fine instantiation is not a pre-redex
    CHECK(weight({{"k", F("forall T. T -> T")}}, T("k [X -> X]")).total == 0);
    CHECK(kind_of([] { weight({{"x", F("X")}}, T("x x")); }) == ErrorKind::NotTypable);
}

TEST_CASE("weight agrees with the reference and decreases") {
    testgen::FGen g(161, false);
    std::size_t steps = 0;
    for (int i = 0; i < 300; ++i) {
        testgen::Sample s = g.sample();
        WeightReport w = weight(s.env, s.term);
        CHECK(w.total == oracle::weight(s.env, s.term));
        Natural sum = 0;
        for (const auto& p : w.perPreRedex) sum += p.contribution;
        CHECK(sum == w.total);
        AtomicNormalForm nf = atomic_nf(s.env, s.term);
        REQUIRE(nf.weights.size() == nf.trace.size() + 1);
        for (std::size_t k = 0; k < nf.trace.size(); ++k) {
            Natural next = oracle::weight(s.env, nf.trace.steps[k].result);
            CHECK(next == nf.weights[k + 1]);
            CHECK(nf.weights[k] > nf.weights[k + 1]);
            ++steps;
        }
    }
    CHECK(steps > 200);
}

TEST_CASE("atomic normal forms") {
    AtomicNormalForm a = atomic_nf({{"z", encode_bot()}}, T("z [X -> Y]"));
    CHECK(alpha_eq(a.nf, T("fun w:X => z [Y]")));
    CHECK(a.trace.size() == 1);
    CHECK(identical(atomic_nf({{"x", F("X")}}, T("x")).nf, T("x")));
    CHECK(kind_of([] { atomic_nf({{"x", F("X")}}, T("x [Y]")); }) == ErrorKind::NotTypable);

    testgen::IpcGen g(171);
    for (int i = 0; i < 150; ++i) {
        testgen::Sample s = g.sample();
        Environment env = rp_env(s.env);
        TermPtr r = rp_term(s.term);
        AtomicNormalForm lo = atomic_nf(env, r, Strategy::lo());
        CHECK(alpha_eq(lo.nf, at_term(s.term)));
        CHECK(alpha_eq(atomic_nf(env, r, Strategy::li()).nf, lo.nf));
        CHECK(alpha_eq(atomic_nf(env, r, Strategy::random(i)).nf, lo.nf));
        CHECK(lo.trace.all_fine());
        verify_trace(SystemId::F, env, lo.trace);
    }
}

TEST_CASE("delta decompositions") {
    struct Case {
        std::string term;
        std::size_t length;
    };
    Environment env{{"o", encode_or(F("X"), F("Y"))}, {"pp", F("C1 -> C2")}, {"p1", F("C1")}, {"p2", F("C2")}};
    for (const Case& c : std::vector<Case>{
             {"o [C1 -> C2] <fun x:X => fun a:C1 => pp a, fun y:Y => fun d:C1 => pp d>", 3},
             {"o [forall T. T -> T] <fun x:X => tfun T => fun a:T => a, fun y:Y => tfun S => fun a:S => a>", 3},
             {"o [C1 & C2] <fun x:X => <p1, p2>, fun y:Y => <p1, p2>>", 5}}) {
        CAPTURE(c.term);
        TermPtr m = T(c.term);
        Redex r = redex_at(SystemId::F, env, m, RuleId::delta, {});
        ReductionTrace t = decompose_delta(env, m, r);
        REQUIRE(t.size() == c.length);
        CHECK(t.steps[0].rule == RuleId::rho_case);
        for (std::size_t i = 1; i < t.size(); ++i) {
            RuleId k = t.steps[i].rule;
            CHECK((k == RuleId::beta_imp || k == RuleId::beta_and || k == RuleId::beta_all));
        }
        CHECK(alpha_eq(t.final_term(), step(SystemId::F, env, m, r)));
        CHECK(t.all_fine());
        verify_trace(SystemId::F, env, t);
    }
    // under a binder the trace is shifted and the local environment extended
    TermPtr under = T("fun q:W => o [C1 & C2] <fun x:X => <p1, p2>, fun y:Y => <p1, p2>>");
    Redex r = redex_at(SystemId::F, env, under, RuleId::delta, {0});
    ReductionTrace t = decompose_delta(env, under, r);
    for (const auto& s : t.steps) {
        CHECK(s.position.at(0) == 0);
        CHECK(s.localEnv.contains("q"));
    }
    CHECK(alpha_eq(t.final_term(), step(SystemId::F, env, under, r)));
    Redex wrong{{}, RuleId::delta, env, true};
    CHECK(kind_of([&] { decompose_delta(env, under, wrong); }) == ErrorKind::NotARedex);
}

TEST_CASE("eps decompositions") {
    Environment env{{"o", encode_or(F("X"), F("Y"))},
                    {"z", encode_bot()},
                    {"pt", F("forall T. T -> C1")},
                    {"c1", F("C1")}};
    TermPtr m = T("o [forall T. T -> C1] <fun x:X => pt, fun y:Y => pt> [C2]");
    Redex r = redex_at(SystemId::F, env, m, RuleId::eps_case, {});
    ReductionTrace t = decompose_eps(env, m, r);
    CHECK(rules_in(t) == std::vector<RuleId>{RuleId::rho_case, RuleId::beta_all});
    CHECK(alpha_eq(t.final_term(), step(SystemId::F, env, m, r)));

    TermPtr a = T("z [C1 -> C2] c1");
    Redex ra = redex_at(SystemId::F, env, a, RuleId::eps_abort, {});
    ReductionTrace ta = decompose_eps(env, a, ra);
    CHECK(rules_in(ta) == std::vector<RuleId>{RuleId::rho_abort, RuleId::beta_imp});
    CHECK(alpha_eq(ta.final_term(), T("z [C2]")));
    CHECK(ta.all_fine());
}

TEST_CASE("rho expansions") {
    Environment env{{"o", encode_or(F("X"), F("Y"))}, {"z", encode_bot()}, {"pa", F("C1 & C2")}};
    TermPtr m = T("z [C1 & C2]");
    Redex r = redex_at(SystemId::F, env, m, RuleId::rho_abort, {});
    RhoExpansion e = expand_rho(env, m, r, ExpandMode::Eps);
    CHECK(alpha_eq(e.expansion, T("<(z [C1 & C2]).1, (z [C1 & C2]).2>")));
    CHECK(rules_in(e.trace) == std::vector<RuleId>{RuleId::eps_abort, RuleId::eps_abort});
    CHECK(alpha_eq(e.trace.final_term(), T("<z [C1], z [C2]>")));
    REQUIRE(e.etaSteps.size() == 1);
    CHECK(e.etaSteps[0].first == RuleId::eta_and);
    CHECK(kind_of([&] { expand_rho(env, m, r, ExpandMode::Delta); }) == ErrorKind::RuleNotApplicable);

    TermPtr c = T("o [C1 & C2] <fun x:X => pa, fun y:Y => pa>");
    Redex rc = redex_at(SystemId::F, env, c, RuleId::rho_case, {});
    TermPtr contractum = step(SystemId::F, env, c, rc);
    for (ExpandMode mode : {ExpandMode::Delta, ExpandMode::Eps}) {
        RhoExpansion x = expand_rho(env, c, rc, mode);
        CHECK(alpha_eq(x.trace.final_term(), contractum));
        for (const auto& s : x.trace.steps)
            CHECK(s.rule == (mode == ExpandMode::Delta ? RuleId::delta : RuleId::eps_case));
        // the recorded eta steps undo the expansion
        TermPtr back = x.expansion;
        for (const auto& [rule, pos] : x.etaSteps) back = step(SystemId::F, env, back, redex_at(SystemId::F, env, back, rule, pos));
        CHECK(alpha_eq(back, c));
        CHECK(alpha_eq(typecheck(SystemId::F, env, x.expansion), typecheck(SystemId::F, env, c)));
    }
}

TEST_CASE("simulation examples") {
    Environment env{{"n", F("A")}, {"p", F("A -> C")}, {"q", F("B -> C")}, {"b", F("bot")}, {"m", F("A | B")}};
    TermPtr m = T("case in1[A|B] n of { x:A => p x ; y:B => q y } : C");
    ReductionTrace t = simulate_step(env, m, redex_at(SystemId::IPC, env, m, RuleId::beta_or, {}));
    CHECK(rules_in(t) ==
          std::vector<RuleId>{RuleId::beta_all, RuleId::beta_imp, RuleId::beta_and, RuleId::beta_imp});
    CHECK(alpha_eq(t.initial, rp_term(m)));
    CHECK(alpha_eq(t.final_term(), T("p n")));

    TermPtr w = T("abort[C] (abort[bot] b)");
    ReductionTrace tw = simulate_step(env, w, redex_at(SystemId::IPC, env, w, RuleId::varpi_bot, {}));
    CHECK(rules_in(tw) == std::vector<RuleId>{RuleId::eps_abort});
    CHECK(alpha_eq(tw.final_term(), T("b [C]")));

    TermPtr u = T("fun k:D => case in1[A|B] n of { x:A => p x ; y:B => q y } : C");
    ReductionTrace tu = simulate_step(env, u, redex_at(SystemId::IPC, env, u, RuleId::beta_or, {0}));
    REQUIRE(tu.size() == 4);
    for (const auto& s : tu.steps) {
        CHECK(s.position.at(0) == 0);
        CHECK(s.localEnv.contains("k"));
    }
    CHECK(alpha_eq(tu.final_term(), T("fun k:D => p n")));

    TermPtr e = T("case m of { x:A => in1[A|B] x ; y:B => in2[A|B] y } : A | B");
    ReductionTrace te = simulate_step(env, e, redex_at(SystemId::IPC, env, e, RuleId::eta_or, {}));
    CHECK(te.size() == 7);
    auto h = histogram(te);
    CHECK(h[RuleId::delta] == 2);
    CHECK(h[RuleId::eta_imp] == 3);
    CHECK(h[RuleId::eta_and] == 1);
    CHECK(h[RuleId::eta_all] == 1);
    CHECK(alpha_eq(te.final_term(), T("m")));
    CHECK(te.all_fine());
    verify_trace(SystemId::F, rp_env(env), te);

    CHECK(kind_of([&] { simulate_step(env, T("x x"), Redex{{}, RuleId::beta_imp, {}, true}); }) ==
          ErrorKind::NotTypable);
}

TEST_CASE("diagram for eta on disjunction") {
    Environment env{{"m", F("A | B")}};
    TermPtr e = T("case m of { x:A => in1[A|B] x ; y:B => in2[A|B] y } : A | B");
    Diagram d = build_diagram(env, e, redex_at(SystemId::IPC, env, e, RuleId::eta_or, {}));
    verify_diagram(d);
    CHECK_FALSE(d.simple);
    CHECK(alpha_eq(d.q1, T("tfun X => fun w:(A -> X) & (B -> X) => m [X] <fun x:A => (w.1) x, fun y:B => (w.2) y>")));
    CHECK(alpha_eq(d.q2, d.nAt));
    CHECK(alpha_eq(d.nAt, T("m")));
    CHECK(d.mAtToQ1.size() == 4);
    CHECK(all_administrative(d.mAtToQ1));
    CHECK(histogram(d.mAtToQ1)[RuleId::beta_all] == 2);
    auto h = histogram(d.q1ToQ2);
    CHECK(d.q1ToQ2.size() == 5);
    CHECK(h[RuleId::eta_imp] == 3);
    CHECK(h[RuleId::eta_and] == 1);
    CHECK(h[RuleId::eta_all] == 1);
    for (const auto& s : d.mRpToQ1.steps)
        CHECK((s.rule == RuleId::delta || s.rule == RuleId::rho_case || s.rule == RuleId::rho_abort));
    CHECK(histogram(d.mRpToQ1)[RuleId::delta] == 2);
    CHECK(d.mRpToQ1.all_fine());
}

TEST_CASE("diagram for commuting absurdity past a case") {
    Environment env{{"m", F("A | B")}, {"bf", F("A -> bot")}, {"bg", F("B -> bot")}};
    TermPtr t = T("abort[Z] (case m of { x:A => bf x ; y:B => bg y } : bot)");
    Diagram d = build_diagram(env, t, redex_at(SystemId::IPC, env, t, RuleId::pi_bot, {}));
    verify_diagram(d);
    CHECK(alpha_eq(d.q1, d.mAt));
    CHECK(d.mAtToQ1.size() == 0);
    CHECK(d.nAtToQ2.size() == 0);

    TermPtr t2 = T("abort[Z -> Z] (case m of { x:A => bf x ; y:B => bg y } : bot)");
    Diagram d2 = build_diagram(env, t2, redex_at(SystemId::IPC, env, t2, RuleId::pi_bot, {}));
    verify_diagram(d2);
    CHECK(all_administrative(d2.mAtToQ1));
    CHECK(all_administrative(d2.nAtToQ2));
}

TEST_CASE("diagram for case of case") {
    Environment env{{"m", F("A | B")}, {"f", F("A -> D")}, {"g", F("B -> E")},
                    {"h1", F("D -> C1 -> C2")}, {"h2", F("E -> C1 -> C2")},
                    {"k1", F("D -> C1 & C2")}, {"k2", F("E -> C1 & C2")}};
    TermPtr imp = T("case (case m of { x:A => in1[D|E] (f x) ; y:B => in2[D|E] (g y) } : D | E) of "
                    "{ u:D => h1 u ; v:E => h2 v } : C1 -> C2");
    Diagram d = build_diagram(env, imp, redex_at(SystemId::IPC, env, imp, RuleId::pi_or, {}));
    verify_diagram(d);
    CHECK(d.nAtToQ2.size() == 2);
    CHECK(all_administrative(d.nAtToQ2));
    CHECK(histogram(d.nAtToQ2)[RuleId::beta_imp] == 2);

    TermPtr conj = T("case (case m of { x:A => in1[D|E] (f x) ; y:B => in2[D|E] (g y) } : D | E) of "
                     "{ u:D => k1 u ; v:E => k2 v } : C1 & C2");
    Diagram dc = build_diagram(env, conj, redex_at(SystemId::IPC, env, conj, RuleId::pi_or, {}));
    verify_diagram(dc);
    CHECK(dc.nAtToQ2.size() == 4);
    CHECK(histogram(dc.nAtToQ2)[RuleId::beta_and] == 4);
    CHECK(all_administrative(dc.nAtToQ2));
}

TEST_CASE("simple diagrams and rejected rules") {
    Environment env{{"n", F("A")}, {"p", F("A -> C -> C")}, {"q", F("B -> C -> C")}, {"b", F("bot")}};
    TermPtr m = T("case in1[A|B] n of { x:A => p x ; y:B => q y } : C -> C");
    Diagram d = build_diagram(env, m, redex_at(SystemId::IPC, env, m, RuleId::beta_or, {}));
    verify_diagram(d);
    CHECK(d.simple);
    CHECK(alpha_eq(d.q1, d.mAt));
    CHECK(alpha_eq(d.q2, d.nAt));

    TermPtr w = T("(abort[C -> C] b) c");
    Environment we{{"b", F("bot")}, {"c", F("C")}};
    Diagram dw = build_diagram(we, w, redex_at(SystemId::IPC, we, w, RuleId::varpi_imp, {}));
    verify_diagram(dw);
    CHECK(dw.simple);

    TermPtr beta = T("(fun x:A => x) n");
    CHECK(kind_of([&] { build_diagram(env, beta, redex_at(SystemId::IPC, env, beta, RuleId::beta_imp, {})); }) ==
          ErrorKind::RuleNotApplicable);

    // a tampered leg is caught
    Diagram bad = d;
    bad.q1 = d.nAt;
    CHECK(kind_of([&] { verify_diagram(bad); }) == ErrorKind::InvariantViolation);
}

TEST_CASE("local confluence") {
    Environment env{{"z", encode_bot()}, {"w", encode_bot()}};
    ConfluenceReport r = check_local_confluence(env, T("<z [X -> X], w [X & X]>"), {RuleId::rho_case, RuleId::rho_abort});
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.all_joined());
    CHECK(r.pairs[0].stepsFirst <= 2);
    CHECK(r.pairs[0].stepsSecond <= 2);

    ConfluenceReport single = check_local_confluence(env, T("z [X -> X]"), {RuleId::rho_abort});
    CHECK(single.pairs.empty());
    CHECK(single.all_joined());

    // nested redexes: one inside the instantiated argument of the other
    ConfluenceReport nested =
        check_local_confluence(env, T("z [(X & X) -> X] (w [X & X])"), {RuleId::rho_case, RuleId::rho_abort});
    CHECK(nested.pairs.size() == 1);
    CHECK(nested.all_joined());

    testgen::FGen g(181, false);
    for (int i = 0; i < 60; ++i) {
        testgen::Sample s = g.sample(6);
        CHECK(check_local_confluence(s.env, s.term, {RuleId::rho_case, RuleId::rho_abort}).all_joined());
    }
}
