#include <doctest.h>

#include <random>

#include "residua/fixtures.hpp"
#include "residua/monitor.hpp"
#include "residua/oracle.hpp"
#include "residua/residual.hpp"
#include "residua/textio.hpp"

#include "oracle_helpers.hpp"

using namespace residua;

namespace {

DateSpec fig5() { return parse_date(fixtures::fig5_date()); }
ProgramModel combined() {
    return parse_program(fixtures::fig4_combined_prog());
}

} // namespace

TEST_CASE("equivalence is reflexive") {
    DateSpec d = fig5();
    EquivResult r = equiv_on_program(d, d, combined(), 5);
    CHECK(r.equivalent());
    CHECK(r.checked > 0);
}

TEST_CASE("residual2 of the payment property is program-equivalent") {
    DateSpec d = fig5();
    ProgramModel p = combined();
    ResidualReport r2 = residual2(d, {p});
    EquivResult r = equiv_on_program(d, r2.residual, p, 8);
    CHECK(r.equivalent());
}

TEST_CASE("a deliberate mutation is caught by enumeration") {
    // Deleting the activate transition strands the mutant in q_b, so the
    // first post-activation pay of a user flips its verdict.
    DateSpec d = fig5();
    std::vector<Transition> keep;
    for (const auto& tr : d.transitions) {
        if (!(tr.source == "q_b" && tr.event == "activate"))
            keep.push_back(tr);
    }
    DateSpec mutant = restrict_transitions(d, keep);
    EquivResult r = equiv_on_program(d, mutant, combined(), 4);
    CHECK_FALSE(r.equivalent());
    REQUIRE(r.mismatches.size() >= 1);
    // The counterexample replays to the recorded verdicts.
    const Mismatch& m = r.mismatches.front();
    CHECK(run(d, m.ground_a).verdict == m.verdict_a);
    CHECK(run(mutant, m.ground_b).verdict == m.verdict_b);

    // Deleting the q_b pay transition is NOT visible on these CFGs: the
    // program only pays after a whitelist, by which point the monitor
    // has certainly left q_b. The enumeration rightly stays silent.
    std::vector<Transition> keep_pay;
    for (const auto& tr : d.transitions) {
        if (!(tr.source == "q_b" && tr.event == "pay"))
            keep_pay.push_back(tr);
    }
    CHECK(equiv_on_program(d, restrict_transitions(d, keep_pay), combined(), 4)
              .equivalent());
}

TEST_CASE("random_instance is deterministic and well formed") {
    GenConfig cfg;
    cfg.seed = 99;
    auto [d1, p1] = random_instance(cfg);
    auto [d2, p2] = random_instance(cfg);
    CHECK(print_date(d1) == print_date(d2));
    CHECK(print_program(p1) == print_program(p2));

    // Serializable and reparseable.
    CHECK(parse_date(print_date(d1)) == d1);
    CHECK(parse_program(print_program(p1)) == p1);

    cfg.seed = 100;
    auto [d3, p3] = random_instance(cfg);
    CHECK(print_date(d3) != print_date(d1)); // overwhelmingly likely
    (void)p3;
}

TEST_CASE("degenerate single-state instances") {
    GenConfig cfg;
    cfg.max_states = 1;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        cfg.seed = seed;
        auto [d, p] = random_instance(cfg);
        REQUIRE(d.states.size() == 1);
        // A single-state DATE either stays whole (modulo absent-event
        // transitions) or collapses to the empty residual.
        ResidualReport r = residual0(d, p);
        if (!r.residual.empty()) {
            CHECK(r.residual.states == d.states);
            CHECK(r.residual.bad == d.bad);
            CHECK(r.residual.initial == d.initial);
        }
    }
}

TEST_CASE("random instances: all residual levels are program-equivalent") {
    GenConfig cfg;
    std::mt19937_64 seeds(20240601);
    for (int i = 0; i < 100; ++i) {
        cfg.seed = seeds();
        auto [d, p] = random_instance(cfg);
        CAPTURE(cfg.seed);

        ResidualReport r0 = residual0(d, p);
        CHECK(equiv_on_program(d, r0.residual, p, cfg.trace_bound)
                  .equivalent());

        ResidualReport r1 = residual1_union(r0.residual, p);
        CHECK(equiv_on_program(d, r1.residual, p, cfg.trace_bound, r1.silenced)
                  .equivalent());

        ResidualReport r2 = residual2(r1.residual, {p});
        SilencedSet silenced = r1.silenced;
        silenced.insert(r2.silenced.begin(), r2.silenced.end());
        CHECK(equiv_on_program(d, r2.residual, p, cfg.trace_bound, silenced)
                  .equivalent());
    }
}

TEST_CASE("iterated residual2 is equivalent on the language intersection") {
    GenConfig cfg;
    std::mt19937_64 seeds(777);
    for (int i = 0; i < 40; ++i) {
        cfg.seed = seeds();
        auto [d, p1] = random_instance(cfg);
        GenConfig cfg2 = cfg;
        cfg2.seed = seeds();
        auto [unused, p2] = random_instance(cfg2);
        (void)unused;
        CAPTURE(cfg.seed);
        CAPTURE(cfg2.seed);

        ResidualReport r = residual2(d, {p1, p2});
        std::set<GroundTrace> g1 = testing::ground_language(p1, 5);
        std::set<GroundTrace> g2 = testing::ground_language(p2, 5);
        for (const auto& t : g1) {
            if (!g2.count(t)) continue;
            CHECK(run(d, t).verdict.violation ==
                  run(r.residual, t).verdict.violation);
        }
    }
}

TEST_CASE("fixpoint iteration of residual2 stays sound") {
    GenConfig cfg;
    std::mt19937_64 seeds(31337);
    for (int i = 0; i < 40; ++i) {
        cfg.seed = seeds();
        auto [d, p] = random_instance(cfg);
        CAPTURE(cfg.seed);
        ResidualReport r = residual2(d, {p}, /*fixpoint=*/true);
        CHECK(equiv_on_program(d, r.residual, p, cfg.trace_bound, r.silenced)
                  .equivalent());
        // The fixpoint never keeps more transitions than one pass.
        ResidualReport once = residual2(d, {p});
        CHECK(r.residual.transitions.size() <=
              once.residual.transitions.size());
    }
}

TEST_CASE("static approximation covers concrete runs from any state") {
    GenConfig cfg;
    std::mt19937_64 seeds(4242);
    for (int i = 0; i < 1000; ++i) {
        cfg.seed = seeds();
        auto [d, p] = random_instance(cfg);
        (void)p;
        std::mt19937_64 rng(seeds());
        std::vector<StateId> states(d.states.begin(), d.states.end());
        StateId q = states[rng() % states.size()];
        VarState theta = d.initial_vars();
        for (auto& [name, value] : theta.values)
            value = Value::of_int(static_cast<std::int64_t>(rng() % 5));
        GroundTrace t = random_ground_trace(d, rng, 8);

        StateId concrete = q;
        VarState vars = theta;
        for (const auto& e : t) {
            StepResult s = concrete_step(d, concrete, vars, e);
            concrete = s.state;
            vars = s.vars;
        }
        StateSet abstract = static_run(d, {q}, t);
        CAPTURE(cfg.seed);
        CHECK(abstract.count(concrete));
    }
}

TEST_CASE("alphabet restriction keeps verdicts on covered traces") {
    GenConfig cfg;
    std::mt19937_64 seeds(515);
    for (int i = 0; i < 1000; ++i) {
        cfg.seed = seeds();
        auto [d, p] = random_instance(cfg);
        (void)p;
        std::mt19937_64 rng(seeds());
        GroundTrace t = random_ground_trace(d, rng, 6);
        std::set<EventName> sigma(t.begin(), t.end());
        // A random superset of the trace alphabet.
        for (const auto& e : d.alphabet) {
            if (rng() % 2 == 0) sigma.insert(e);
        }
        CAPTURE(cfg.seed);
        CHECK(run(d, t).verdict ==
              run(restrict_alphabet(d, sigma), t).verdict);
    }
}

TEST_CASE("visible mutations are detected by the oracle") {
    GenConfig cfg;
    std::mt19937_64 seeds(616);
    int with_candidate = 0, detected = 0;
    while (with_candidate < 25) {
        cfg.seed = seeds();
        auto [d, p] = random_instance(cfg);
        std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
        auto victim = testing::find_visible_mutation(d, p, cfg.trace_bound, rng);
        if (!victim) continue;
        ++with_candidate;
        DateSpec mutant = testing::delete_transition(d, *victim);
        EquivResult r = equiv_on_program(d, mutant, p, cfg.trace_bound);
        if (!r.equivalent()) ++detected;
    }
    CHECK(detected == with_candidate);
}
