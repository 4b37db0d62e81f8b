#include "residua/bench.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "residua/fixtures.hpp"
#include "residua/residual.hpp"
#include "residua/textio.hpp"

namespace residua {

void BenchScenario::validate() const {
    if (users < 1) throw SpecError("bench needs at least one user");
    if (steps < 1) throw SpecError("bench needs at least one step per user");
    double sum = mix[0] + mix[1] + mix[2];
    if (std::abs(sum - 1.0) > 1e-9)
        throw SpecError("bench mix proportions must sum to 1");
    if (max_level < -1 || max_level > 2)
        throw SpecError("bench level must be in {none,0,1,2}");
}

double BenchReport::delivered_ratio(std::size_t level_index) const {
    double base = static_cast<double>(levels.at(0).stats.events_delivered);
    if (base == 0) return 1.0;
    return static_cast<double>(levels.at(level_index).stats.events_delivered) /
           base;
}

double BenchReport::evaluated_ratio(std::size_t level_index) const {
    double base =
        static_cast<double>(levels.at(0).stats.transitions_evaluated);
    if (base == 0) return 1.0;
    return static_cast<double>(
               levels.at(level_index).stats.transitions_evaluated) /
           base;
}

namespace {

struct Walker {
    // node -> outgoing (event, next node)
    std::map<std::string, std::vector<std::pair<EventName, std::string>>> out;
    std::string entry;

    explicit Walker(const ProgramModel& p) : entry(p.entry) {
        for (const auto& e : p.edges) {
            if (!e.label.eps)
                out[e.from].push_back({e.label.event, e.to});
        }
    }
};

enum class UserType { Bronze, Silver, Gold };

const char* static_id(UserType t) {
    switch (t) {
    case UserType::Bronze: return "bronze";
    case UserType::Silver: return "silver";
    case UserType::Gold: return "gold";
    }
    return "?";
}

std::string format_ratio(double r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", r);
    return buf;
}

} // namespace

BenchReport run_bench(const BenchScenario& s) {
    s.validate();

    DateSpec property = parse_date(fixtures::fig5_date());
    ProgramModel combined = parse_program(fixtures::fig4_combined_prog());
    Walker bronze_walk(parse_program(fixtures::fig4_bronze_prog()));
    Walker silver_walk(parse_program(fixtures::fig4_silver_prog()));

    // One-time analysis cascade; levels are cumulative.
    struct LevelSetup {
        std::string label;
        DateSpec date;
        SilencedSet silenced; // over static ids
    };
    std::vector<LevelSetup> setups;
    setups.push_back({"none", property, {}});
    if (s.max_level >= 0) {
        ResidualReport r0 = residual0(property, combined);
        setups.push_back({"0", r0.residual, {}});
        if (s.max_level >= 1) {
            ResidualReport r1 = residual1_union(r0.residual, combined);
            setups.push_back({"1", r1.residual, r1.silenced});
            if (s.max_level >= 2) {
                ResidualReport r2 = residual2(r1.residual, {combined});
                SilencedSet merged = r1.silenced;
                merged.insert(r2.silenced.begin(), r2.silenced.end());
                setups.push_back({"2", r2.residual, merged});
            }
        }
    }

    // Deterministic population and walks.
    std::size_t n_bronze =
        static_cast<std::size_t>(s.mix[0] * static_cast<double>(s.users));
    std::size_t n_silver =
        static_cast<std::size_t>(s.mix[1] * static_cast<double>(s.users));
    if (n_bronze + n_silver > s.users) n_silver = s.users - n_bronze;
    std::vector<UserType> types;
    std::vector<IdName> user_ids;
    for (std::size_t u = 0; u < s.users; ++u) {
        UserType t = u < n_bronze                ? UserType::Bronze
                     : u < n_bronze + n_silver   ? UserType::Silver
                                                 : UserType::Gold;
        types.push_back(t);
        user_ids.push_back("u" + std::to_string(u));
    }

    std::mt19937_64 rng(s.seed);
    std::vector<ParamTrace> per_user(s.users);
    for (std::size_t u = 0; u < s.users; ++u) {
        const Walker& w =
            types[u] == UserType::Bronze ? bronze_walk : silver_walk;
        std::string node = w.entry;
        for (std::size_t step = 0; step < s.steps; ++step) {
            const auto& choices = w.out.at(node);
            const auto& [ev, next] = choices[rng() % choices.size()];
            per_user[u].push_back({user_ids[u], ev});
            node = next;
        }
    }
    ParamTrace global;
    global.reserve(s.users * s.steps);
    for (std::size_t step = 0; step < s.steps; ++step) {
        for (std::size_t u = 0; u < s.users; ++u)
            global.push_back(per_user[u][step]);
    }

    AliasRelations identity;
    for (const auto& id : user_ids) identity.must.insert({id, id});
    identity.may = identity.must;

    BenchReport report;
    std::map<IdName, Verdict> baseline;
    for (const auto& setup : setups) {
        // Expand static silencing to this population: a pair applies to
        // every user of the component's type.
        SilencedSet runtime_silenced;
        for (std::size_t u = 0; u < s.users; ++u) {
            for (const auto& [sid, ev] : setup.silenced) {
                if (sid == static_id(types[u]))
                    runtime_silenced.insert({user_ids[u], ev});
            }
        }

        MonitorResult m =
            monitor(setup.date, global, identity, runtime_silenced);

        BenchReport::Level level;
        level.label = setup.label;
        level.stats = m.stats;
        for (std::size_t u = 0; u < s.users; ++u) {
            if (types[u] != UserType::Bronze) continue;
            for (const auto& pair : per_user[u]) {
                if (!runtime_silenced.count(pair) && !setup.date.empty() &&
                    setup.date.alphabet.count(pair.second))
                    ++level.bronze_delivered;
            }
        }
        if (report.levels.empty()) {
            baseline = m.verdicts;
        } else {
            for (const auto& [rep, v] : baseline) {
                auto it = m.verdicts.find(rep);
                Verdict other = it == m.verdicts.end() ? Verdict::ok()
                                                       : it->second;
                if (other.violation != v.violation) {
                    level.verdicts_agree_with_none = false;
                    break;
                }
            }
        }
        report.levels.push_back(std::move(level));
    }
    return report;
}

std::string print_bench(const BenchScenario& s, const BenchReport& r) {
    std::ostringstream out;
    out << "bench users=" << s.users << " steps=" << s.steps
        << " seed=" << s.seed << "\n";
    for (const auto& level : r.levels) {
        out << "level " << level.label << ": total="
            << level.stats.events_total
            << " delivered=" << level.stats.events_delivered
            << " evaluated=" << level.stats.transitions_evaluated
            << " monitors=" << level.stats.monitors_created
            << " violations=" << level.stats.violations
            << " bronze_delivered=" << level.bronze_delivered
            << " agree=" << (level.verdicts_agree_with_none ? "yes" : "no")
            << "\n";
    }
    out << "ratio delivered:";
    for (std::size_t i = 0; i < r.levels.size(); ++i)
        out << " " << r.levels[i].label << "=" << format_ratio(
            r.delivered_ratio(i));
    out << "\n";
    out << "ratio evaluated:";
    for (std::size_t i = 0; i < r.levels.size(); ++i)
        out << " " << r.levels[i].label << "=" << format_ratio(
            r.evaluated_ratio(i));
    out << "\n";
    return out.str();
}

} // namespace residua
