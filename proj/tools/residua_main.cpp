#include <iostream>

#include <CLI11.hpp>

#include "residua/bench.hpp"
#include "residua/monitor.hpp"
#include "residua/oracle.hpp"
#include "residua/residual.hpp"
#include "residua/textio.hpp"

namespace {

using namespace residua;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitResource = 5;

/// Cumulative analysis pipeline shared by `analyze` and `equiv`:
/// level 0 restricts to each program's alphabet, level 1 adds the
/// per-identifier union with silencing, level 2 prunes unusable
/// transitions (over the program sequence, optionally to fixpoint).
ResidualReport run_cascade(const DateSpec& d,
                           const std::vector<ProgramModel>& programs,
                           int level, bool fixpoint) {
    DateSpec cur = d;
    SilencedSet silenced;
    for (const auto& p : programs) {
        ResidualReport r0 = residual0(cur, p);
        cur = r0.residual;
    }
    if (level >= 1) {
        for (const auto& p : programs) {
            ResidualReport r1 = residual1_union(cur, p);
            silenced.insert(r1.silenced.begin(), r1.silenced.end());
            cur = r1.residual;
        }
    }
    ResidualReport report;
    if (level >= 2) {
        report = residual2(cur, programs, fixpoint);
        silenced.insert(report.silenced.begin(), report.silenced.end());
        cur = report.residual;
    }
    report.level = level;
    report.residual = cur;
    report.silenced = std::move(silenced);
    report.statically_satisfied = cur.empty();
    report.removed_states = d.states.size() - cur.states.size();
    std::set<std::string> kept;
    for (const auto& tr : cur.transitions) kept.insert(tr.key());
    report.removed_transitions.clear();
    for (const auto& tr : d.transitions) {
        if (!kept.count(tr.key())) report.removed_transitions.push_back(tr);
    }
    return report;
}

std::vector<ProgramModel> load_programs(const std::vector<std::string>& paths) {
    std::vector<ProgramModel> out;
    for (const auto& path : paths)
        out.push_back(parse_program(read_file(path)));
    return out;
}

int cmd_analyze(const std::string& date_path,
                const std::vector<std::string>& program_paths, int level,
                bool fixpoint, const std::string& out_date,
                const std::string& out_silenced,
                const std::string& out_report) {
    DateSpec d = parse_date(read_file(date_path));
    ResidualReport report =
        run_cascade(d, load_programs(program_paths), level, fixpoint);
    if (!out_date.empty()) write_file(out_date, print_date(report.residual));
    if (!out_silenced.empty())
        write_file(out_silenced, print_silenced(report.silenced));
    if (!out_report.empty()) write_file(out_report, print_report(report));
    std::cout << print_report(report);
    return kExitOk;
}

int cmd_monitor(const std::string& date_path, const std::string& trace_path,
                const std::string& silenced_path, bool halt_on_violation) {
    DateSpec d = parse_date(read_file(date_path));
    ParamTrace rt = parse_param_trace(read_file(trace_path));
    SilencedSet silenced;
    if (!silenced_path.empty())
        silenced = parse_silenced(read_file(silenced_path));
    MonitorResult m = monitor(d, rt, silenced, halt_on_violation);
    bool any_violation = false;
    for (const auto& [rep, verdict] : m.verdicts) {
        std::cout << rep << " " << to_string(verdict) << "\n";
        any_violation = any_violation || verdict.violation;
    }
    std::cout << "events_total " << m.stats.events_total << "\n"
              << "events_delivered " << m.stats.events_delivered << "\n"
              << "transitions_evaluated " << m.stats.transitions_evaluated
              << "\n"
              << "monitors_created " << m.stats.monitors_created << "\n"
              << "violations " << m.stats.violations << "\n";
    return any_violation ? kExitViolation : kExitOk;
}

int cmd_equiv(const std::string& date_path,
              const std::vector<std::string>& program_paths, int level,
              bool fixpoint, std::size_t bound, const std::string& against,
              const std::string& silenced_path) {
    DateSpec d = parse_date(read_file(date_path));
    std::vector<ProgramModel> programs = load_programs(program_paths);
    ResidualReport report;
    if (against.empty()) {
        report = run_cascade(d, programs, level, fixpoint);
    } else {
        report.residual = parse_date(read_file(against));
        if (!silenced_path.empty())
            report.silenced = parse_silenced(read_file(silenced_path));
    }

    std::size_t checked = 0, mismatches = 0;
    const Mismatch* first = nullptr;
    std::vector<EquivResult> results;
    for (const auto& p : programs) {
        results.push_back(
            equiv_on_program(d, report.residual, p, bound, report.silenced));
        checked += results.back().checked;
        mismatches += results.back().mismatches.size();
        if (first == nullptr && !results.back().mismatches.empty())
            first = &results.back().mismatches.front();
    }
    std::cout << "checked=" << checked << " mismatches=" << mismatches
              << " bound=" << bound << "\n";
    if (first != nullptr) {
        std::cout << "# counterexample (id " << first->id << ", "
                  << to_string(first->verdict_a) << " vs "
                  << to_string(first->verdict_b) << ")\n"
                  << print_param_trace(first->trace);
        return kExitMismatch;
    }
    return kExitOk;
}

int cmd_bench(std::size_t users, std::uint64_t seed, int level) {
    BenchScenario s;
    s.users = users;
    s.seed = seed;
    s.max_level = level;
    BenchReport report = run_bench(s);
    std::cout << print_bench(s, report);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Residual analysis for guarded symbolic monitoring automata"};
    app.require_subcommand(1);

    std::string date_path, trace_path, silenced_path, against_path;
    std::string out_date, out_silenced, out_report;
    std::vector<std::string> program_paths;
    int level = 2;
    bool fixpoint = false, halt_on_violation = false;
    std::size_t bound = 6, users = 1000;
    std::uint64_t seed = 42;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "Compute a residual property and silencing set");
    analyze->add_option("--date", date_path)->required();
    analyze->add_option("--program", program_paths)->required();
    analyze->add_option("--level", level)->check(CLI::Range(0, 2));
    analyze->add_flag("--fixpoint", fixpoint);
    analyze->add_option("--out-date", out_date);
    analyze->add_option("--out-silenced", out_silenced);
    analyze->add_option("--out-report", out_report);

    CLI::App* mon = app.add_subcommand(
        "monitor", "Run parametrised monitoring over a trace file");
    mon->add_option("--date", date_path)->required();
    mon->add_option("--trace", trace_path)->required();
    mon->add_option("--silenced", silenced_path);
    mon->add_flag("--halt-on-violation", halt_on_violation);

    CLI::App* equiv = app.add_subcommand(
        "equiv", "Check bounded-trace equivalence of a residual");
    equiv->add_option("--date", date_path)->required();
    equiv->add_option("--program", program_paths)->required();
    equiv->add_option("--level", level)->check(CLI::Range(0, 2));
    equiv->add_flag("--fixpoint", fixpoint);
    equiv->add_option("--bound", bound);
    equiv->add_option("--against", against_path,
                      "compare against this .date instead of the computed "
                      "residual");
    equiv->add_option("--silenced", silenced_path);

    CLI::App* bench = app.add_subcommand(
        "bench", "Transaction-system monitoring benchmark");
    bench->add_option("--users", users);
    bench->add_option("--seed", seed);
    bench->add_option("--level", level)->check(CLI::Range(0, 2));

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed())
            return cmd_analyze(date_path, program_paths, level, fixpoint,
                               out_date, out_silenced, out_report);
        if (mon->parsed())
            return cmd_monitor(date_path, trace_path, silenced_path,
                               halt_on_violation);
        if (equiv->parsed())
            return cmd_equiv(date_path, program_paths, level, fixpoint, bound,
                             against_path, silenced_path);
        if (bench->parsed()) return cmd_bench(users, seed, level);
    } catch (const residua::ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const residua::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
