// Acceptance suite: one timed pass/fail line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "residua/bench.hpp"
#include "residua/fixtures.hpp"
#include "residua/monitor.hpp"
#include "residua/oracle.hpp"
#include "residua/residual.hpp"
#include "residua/textio.hpp"

#include "oracle_helpers.hpp"

using namespace residua;

namespace {

struct Checker {
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string fixture_path(const char* name) {
    return std::string(RESIDUA_FIXTURE_DIR) + "/" + name;
}

double g_max_pipeline_seconds = 0.0; // shared between criteria 4 and 8

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion bodies -------------------------------------------------------

void criterion1(Checker& c) {
    DateSpec d = parse_date(fixtures::fig3_date());
    ProgramModel p = parse_program(fixtures::fig3_linear_prog());
    ResidualReport r = residual2(d, {p});
    for (const auto& tr : r.residual.transitions) {
        c.require(!(tr.source == "q1" && tr.event == "whiteList"),
                  "whiteList transition from q1 survived: " + tr.key());
    }
    bool removed_both = true;
    std::size_t white_removed = 0;
    for (const auto& tr : r.removed_transitions) {
        if (tr.source == "q1" && tr.event == "whiteList") ++white_removed;
    }
    removed_both = white_removed == 2;
    c.require(removed_both, "expected both whiteList transitions removed");
    c.require(r.statically_satisfied, "residual should be empty");
    c.require(r.residual.empty(), "residual should have no states");
}

void criterion2(Checker& c) {
    DateSpec d = parse_date(fixtures::fig5_date());
    ProgramModel p = parse_program(fixtures::fig4_combined_prog());

    ResidualReport r0 = residual0(d, p);
    c.require(r0.removed_transitions.size() == 2,
              "residual0 must remove exactly two transitions");
    for (const auto& tr : r0.removed_transitions) {
        c.require(tr.event == "transfer",
                  "residual0 removed a non-transfer transition: " + tr.key());
    }
    c.require(print_date(r0.residual) ==
                  read_file(fixture_path("expected/fig5_residual0.date")),
              "residual0 output differs from the committed fixture");

    ResidualReport r1 = residual1_union(r0.residual, p);
    c.require(print_silenced(r1.silenced) ==
                  read_file(fixture_path("expected/fig5_level1.silenced")),
              "level-1 silenced set differs from the committed fixture");
    for (const auto& [id, ev] : r1.silenced) {
        c.require(id == "bronze", "non-bronze pair silenced: " + id);
    }

    ResidualReport r2 = residual2(r1.residual, {p});
    c.require(r2.residual.transitions.size() == 3,
              "residual2 must leave exactly three transitions");
    c.require(print_date(r2.residual) ==
                  read_file(fixture_path("expected/fig5_residual2.date")),
              "residual2 output differs from the committed fixture");
}

void criterion3(Checker& c) {
    BenchScenario s;
    s.users = 1000;
    s.seed = 42;
    BenchReport r = run_bench(s);
    c.require(r.levels.size() == 4, "expected levels none,0,1,2");

    for (std::size_t i = 1; i < r.levels.size(); ++i) {
        c.require(r.levels[i].stats.events_delivered <=
                      r.levels[i - 1].stats.events_delivered,
                  "events_delivered must be monotone non-increasing");
        c.require(r.levels[i].verdicts_agree_with_none,
                  "verdicts must agree with the unanalysed run");
    }
    c.require(r.levels[1].bronze_delivered > 0,
              "level 0 should still deliver bronze events");
    c.require(r.levels[2].bronze_delivered == 0,
              "level 1 must eliminate all bronze deliveries");
    c.require(r.levels[3].bronze_delivered == 0,
              "level 2 must keep bronze deliveries at zero");
    c.require(r.levels[3].stats.transitions_evaluated * 2 <=
                  r.levels[1].stats.transitions_evaluated,
              "level 2 must halve transitions_evaluated vs level 0");
}

void criterion4(Checker& c) {
    GenConfig cfg;
    std::mt19937_64 seeds(0xC0FFEE);
    std::size_t failures_before = c.failures.size();
    for (int i = 0; i < 1000 && c.failures.size() == failures_before; ++i) {
        cfg.seed = seeds();
        auto [d, p] = random_instance(cfg);
        std::ostringstream tag;
        tag << "seed " << cfg.seed;

        Clock::time_point t0 = Clock::now();
        ResidualReport r0 = residual0(d, p);
        ResidualReport r1 = residual1_union(r0.residual, p);
        ResidualReport r2 = residual2(r1.residual, {p});
        double pipeline = seconds_since(t0);
        if (pipeline > g_max_pipeline_seconds)
            g_max_pipeline_seconds = pipeline;

        c.require(
            equiv_on_program(d, r0.residual, p, cfg.trace_bound).equivalent(),
            "residual0 mismatch at " + tag.str());
        c.require(equiv_on_program(d, r1.residual, p, cfg.trace_bound,
                                   r1.silenced)
                      .equivalent(),
                  "residual1_union mismatch at " + tag.str());
        SilencedSet merged = r1.silenced;
        merged.insert(r2.silenced.begin(), r2.silenced.end());
        c.require(
            equiv_on_program(d, r2.residual, p, cfg.trace_bound, merged)
                .equivalent(),
            "residual2 mismatch at " + tag.str());

        // Iterated residual2 over two models, the second a sub-language
        // of the first, so the intersection is the second's language.
        ProgramModel p2 = p;
        std::mt19937_64 rng(cfg.seed ^ 0xABCDEF);
        ProgramModel trimmed = p2;
        trimmed.edges.clear();
        for (const auto& e : p2.edges) {
            if (rng() % 10 < 7) trimmed.edges.push_back(e);
        }
        ResidualReport iter = residual2(d, {p, trimmed});
        c.require(
            equiv_on_program(d, iter.residual, trimmed, cfg.trace_bound)
                .equivalent(),
            "iterated residual2 mismatch at " + tag.str());
    }

    // Theorem spot checks: the concrete run stays inside the static
    // approximation, and alphabet restriction preserves verdicts.
    std::mt19937_64 seeds2(0xFACADE);
    for (int i = 0; i < 1000 && c.failures.size() == failures_before; ++i) {
        cfg.seed = seeds2();
        auto [d, p] = random_instance(cfg);
        (void)p;
        std::mt19937_64 rng(seeds2());
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
        c.require(static_run(d, {q}, t).count(concrete) == 1,
                  "static approximation missed the concrete state (seed " +
                      std::to_string(cfg.seed) + ")");

        GroundTrace t2 = random_ground_trace(d, rng, 6);
        std::set<EventName> sigma(t2.begin(), t2.end());
        for (const auto& e : d.alphabet) {
            if (rng() % 2 == 0) sigma.insert(e);
        }
        c.require(run(d, t2).verdict ==
                      run(restrict_alphabet(d, sigma), t2).verdict,
                  "alphabet restriction changed a verdict (seed " +
                      std::to_string(cfg.seed) + ")");
    }
}

void criterion5(Checker& c) {
    DateSpec d = parse_date(fixtures::fig3_date());

    RunResult r = run(d, {"greyList", "transfer", "transfer", "whiteList"});
    c.require(r.verdict == Verdict::violation_at(3),
              "expected VIOLATION at 3, got " + to_string(r.verdict));
    c.require(r.final_state == "q3", "expected final state q3");
    c.require(r.final_vars.values.at("transferCount") == Value::of_int(2),
              "expected transferCount 2 at the violation");

    r = run(d, {"greyList", "transfer", "transfer", "transfer", "whiteList"});
    c.require(r.verdict == Verdict::ok(),
              "expected OK, got " + to_string(r.verdict));
    c.require(r.final_state == "q0", "expected final state q0");
    c.require(r.final_vars.values.at("transferCount") == Value::of_int(0),
              "expected transferCount reset to 0");
}

void criterion6(Checker& c) {
    GenConfig cfg;
    std::mt19937_64 seeds(0xBAD5EED);
    int with_candidate = 0, detected = 0, attempts = 0;
    while (with_candidate < 100 && attempts < 5000) {
        ++attempts;
        cfg.seed = seeds();
        auto [d, p] = random_instance(cfg);
        std::mt19937_64 rng(cfg.seed ^ 0x5EED);
        auto victim =
            testing::find_visible_mutation(d, p, cfg.trace_bound, rng);
        if (!victim) continue;
        ++with_candidate;
        DateSpec mutant = testing::delete_transition(d, *victim);
        if (!equiv_on_program(d, mutant, p, cfg.trace_bound).equivalent())
            ++detected;
    }
    c.require(with_candidate == 100,
              "could not assemble 100 mutable instances");
    c.require(detected >= 99, "oracle detected only " +
                                  std::to_string(detected) + "/100 mutations");
}

void criterion7(Checker& c) {
    // parse/print identity on every fixture.
    for (const char* name : {"fig1.date", "fig3.date", "fig3_full.date",
                             "fig5.date"}) {
        DateSpec d = parse_date(read_file(fixture_path(name)));
        c.require(parse_date(print_date(d)) == d,
                  std::string("date round trip failed for ") + name);
    }
    for (const char* name :
         {"fig2.prog", "fig3_linear.prog", "fig4_bronze.prog",
          "fig4_silver.prog", "fig4_combined.prog"}) {
        ProgramModel p = parse_program(read_file(fixture_path(name)));
        c.require(parse_program(print_program(p)) == p,
                  std::string("program round trip failed for ") + name);
    }

    // Identical seeds produce byte-identical reports and bench output.
    DateSpec d = parse_date(fixtures::fig5_date());
    ProgramModel p = parse_program(fixtures::fig4_combined_prog());
    auto render = [&]() {
        ResidualReport r1 = residual1_union(residual0(d, p).residual, p);
        ResidualReport r2 = residual2(r1.residual, {p});
        return print_report(r2) + print_silenced(r1.silenced) +
               print_date(r2.residual);
    };
    c.require(render() == render(), "analysis output is not byte-stable");

    BenchScenario s;
    s.users = 60;
    s.seed = 7;
    std::string b1 = print_bench(s, run_bench(s));
    std::string b2 = print_bench(s, run_bench(s));
    c.require(b1 == b2, "bench output is not byte-stable");
}

void criterion8(Checker& c) {
    DateSpec d = parse_date(fixtures::fig5_date());
    ProgramModel p = parse_program(fixtures::fig4_combined_prog());
    Clock::time_point t0 = Clock::now();
    ResidualReport r0 = residual0(d, p);
    ResidualReport r1 = residual1_union(r0.residual, p);
    ResidualReport r2 = residual2(r1.residual, {p});
    (void)r2;
    double fig4_time = seconds_since(t0);
    c.require(fig4_time < 2.0, "level-2 analysis of the combined CFG took " +
                                   std::to_string(fig4_time) + "s");
    c.require(g_max_pipeline_seconds < 2.0,
              "slowest generated-instance analysis took " +
                  std::to_string(g_max_pipeline_seconds) + "s");
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Checker&)> body;
};

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "fig3 residual2 reproduction", 1.0, criterion1},
        {2, "fig5/fig4 analysis cascade", 5.0, criterion2},
        {3, "benchmark overhead proxy", 60.0, criterion3},
        {4, "theorem suite on 1000 random instances", 600.0, criterion4},
        {5, "fig3 monitoring semantics", 1.0, criterion5},
        {6, "mutation sensitivity calibration", 300.0, criterion6},
        {7, "round trips and determinism", 10.0, criterion7},
        {8, "analysis cost", 2.0, criterion8},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Checker checker;
        Clock::time_point start = Clock::now();
        try {
            criterion.body(checker);
        } catch (const std::exception& e) {
            checker.failures.push_back(std::string("exception: ") + e.what());
        }
        double elapsed = seconds_since(start);
        if (elapsed >= criterion.budget_seconds) {
            std::ostringstream msg;
            msg << "runtime " << elapsed << "s exceeds budget "
                << criterion.budget_seconds << "s";
            checker.failures.push_back(msg.str());
        }
        bool ok = checker.failures.empty();
        failed += ok ? 0 : 1;
        std::printf("%s criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL",
                    criterion.id, criterion.title, elapsed);
        for (const auto& failure : checker.failures)
            std::printf("     - %s\n", failure.c_str());
    }
    return failed == 0 ? 0 : 1;
}
