#include "residua/oracle.hpp"

#include <algorithm>

namespace residua {

namespace {

enum class PosKind { Include, Exclude, Branch };

} // namespace

EquivResult equiv_on_program(const DateSpec& da, const DateSpec& db,
                             const ProgramModel& p, std::size_t bound,
                             const SilencedSet& silenced_b) {
    EquivResult result;
    result.bound = bound;
    std::size_t budget = trace_limit();
    std::size_t branches_examined = 0;

    std::vector<ParamTrace> traces = enumerate_traces(p, bound);
    for (const ParamTrace& rt : traces) {
        for (const IdName& x : p.ids) {
            ++result.checked;

            std::vector<PosKind> kinds(rt.size());
            std::vector<std::size_t> branch_positions;
            for (std::size_t i = 0; i < rt.size(); ++i) {
                const auto& [y, ev] = rt[i];
                if (p.aliases.must_related(x, y)) {
                    kinds[i] = PosKind::Include;
                } else if (!p.aliases.may_related(x, y)) {
                    kinds[i] = PosKind::Exclude;
                } else {
                    kinds[i] = PosKind::Branch;
                    branch_positions.push_back(i);
                }
            }
            if (branch_positions.size() >= 20)
                throw ResourceLimit("projection branch fan-out too large");

            std::size_t combos = std::size_t{1} << branch_positions.size();
            bool mismatch_found = false;
            for (std::size_t mask = 0; mask < combos && !mismatch_found;
                 ++mask) {
                if (++branches_examined > budget)
                    throw ResourceLimit("projection branch enumeration "
                                        "exceeded " +
                                        std::to_string(budget));
                GroundTrace ta, tb;
                for (std::size_t i = 0, b = 0; i < rt.size(); ++i) {
                    bool include;
                    if (kinds[i] == PosKind::Include) {
                        include = true;
                    } else if (kinds[i] == PosKind::Exclude) {
                        include = false;
                    } else {
                        include = (mask >> b) & 1;
                        ++b;
                    }
                    if (!include) continue;
                    ta.push_back(rt[i].second);
                    if (!silenced_b.count(rt[i])) tb.push_back(rt[i].second);
                }
                Verdict va = run(da, ta).verdict;
                Verdict vb = run(db, tb).verdict;
                if (va.violation != vb.violation) {
                    result.mismatches.push_back(
                        {rt, x, std::move(ta), std::move(tb), va, vb});
                    mismatch_found = true;
                }
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

namespace {

// Deterministic across platforms; std::uniform_int_distribution is not.
std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

bool chance(std::mt19937_64& rng, int percent) {
    return static_cast<int>(rng() % 100) < percent;
}

Expr random_int_expr(std::mt19937_64& rng,
                     const std::vector<std::string>& vars) {
    std::int64_t k = static_cast<std::int64_t>(pick(rng, 5));
    if (vars.empty()) return make_int(k);
    const std::string& v = vars[pick(rng, vars.size())];
    switch (pick(rng, 4)) {
    case 0: return make_int(k);
    case 1: return make_var(v);
    case 2: return make_binary(ExprOp::Add, make_var(v), make_int(1 + k % 2));
    default: return make_binary(ExprOp::Sub, make_var(v), make_int(1));
    }
}

Expr random_guard(std::mt19937_64& rng, const std::vector<std::string>& vars) {
    if (vars.empty() || chance(rng, 40)) return make_bool(true);
    const std::string& v = vars[pick(rng, vars.size())];
    std::int64_t k = static_cast<std::int64_t>(pick(rng, 4));
    switch (pick(rng, 4)) {
    case 0: return make_binary(ExprOp::Lt, make_var(v), make_int(k));
    case 1: return make_binary(ExprOp::Ge, make_var(v), make_int(k));
    case 2: return make_binary(ExprOp::Eq, make_var(v), make_int(k));
    default:
        return make_binary(ExprOp::Gt,
                           make_binary(ExprOp::Add, make_var(v), make_int(1)),
                           make_int(k));
    }
}

Action random_action(std::mt19937_64& rng,
                     const std::vector<std::string>& vars) {
    Action a;
    if (vars.empty()) return a;
    std::size_t n = pick(rng, 3); // 0..2 assignments
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& v = vars[pick(rng, vars.size())];
        a.assigns.push_back({v, random_int_expr(rng, vars)});
    }
    return a;
}

} // namespace

namespace {

// Generated models must stay brute-forceable at the configured trace
// bound; oversized candidates are rejected and redrawn from the same
// deterministic stream.
constexpr std::size_t kInstanceTraceCap = 20000;

std::pair<DateSpec, ProgramModel> random_instance_once(const GenConfig& cfg,
                                                       std::mt19937_64& rng) {
    DateSpec d;
    d.name = "gen";
    d.param = "x";
    std::size_t n_states = 1 + pick(rng, cfg.max_states);
    std::size_t n_events = 1 + pick(rng, cfg.max_events);
    std::size_t n_vars = pick(rng, cfg.max_int_vars + 1);

    std::vector<StateId> states;
    for (std::size_t i = 0; i < n_states; ++i) {
        states.push_back("q" + std::to_string(i));
        d.states.insert(states.back());
    }
    d.initial = states[0];
    std::vector<EventName> events;
    for (std::size_t i = 0; i < n_events; ++i) {
        events.push_back("e" + std::to_string(i));
        d.alphabet.insert(events.back());
    }
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < n_vars; ++i) {
        vars.push_back("v" + std::to_string(i));
        d.vars.push_back({vars.back(), ValueKind::Int,
                          Value::of_int(static_cast<std::int64_t>(
                              pick(rng, 3)))});
    }
    for (const auto& q : states) {
        if (q == d.initial ? chance(rng, 5) : chance(rng, 25))
            d.bad.insert(q);
    }

    // Deterministic by construction: per (state, event) either one
    // transition or a complementary guard pair v < k / v >= k.
    std::vector<std::pair<StateId, EventName>> slots;
    for (const auto& q : states)
        for (const auto& e : events) slots.push_back({q, e});
    for (std::size_t i = slots.size(); i > 1; --i)
        std::swap(slots[i - 1], slots[pick(rng, i)]);
    std::size_t n_slots =
        std::min(slots.size(), pick(rng, cfg.max_transitions + 1));
    for (std::size_t i = 0; i < n_slots; ++i) {
        const auto& [q, e] = slots[i];
        if (!vars.empty() && chance(rng, 30)) {
            const std::string& v = vars[pick(rng, vars.size())];
            std::int64_t k = static_cast<std::int64_t>(1 + pick(rng, 3));
            d.transitions.push_back(
                {q, e, make_binary(ExprOp::Lt, make_var(v), make_int(k)),
                 random_action(rng, vars), states[pick(rng, n_states)]});
            d.transitions.push_back(
                {q, e, make_binary(ExprOp::Ge, make_var(v), make_int(k)),
                 random_action(rng, vars), states[pick(rng, n_states)]});
        } else {
            d.transitions.push_back({q, e, random_guard(rng, vars),
                                     random_action(rng, vars),
                                     states[pick(rng, n_states)]});
        }
    }
    d.sort_transitions();
    d.validate();

    ProgramModel p;
    p.name = "genprog";
    std::size_t n_nodes = 1 + pick(rng, cfg.max_nodes);
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        nodes.push_back("n" + std::to_string(i));
        p.nodes.insert(nodes.back());
    }
    p.entry = nodes[0];
    std::size_t n_ids = 1 + pick(rng, 3);
    std::vector<IdName> ids;
    for (std::size_t i = 0; i < n_ids; ++i) {
        ids.push_back("x" + std::to_string(i));
        p.ids.insert(ids.back());
    }

    std::vector<IdPair> must_pairs, may_pairs;
    if (n_ids >= 2 && chance(rng, 30))
        must_pairs.push_back(make_pair_sorted(ids[0], ids[1]));
    if (n_ids >= 2 && chance(rng, 30)) {
        // One may-entangled class pair, congruent with must.
        std::size_t other = 1 + pick(rng, n_ids - 1);
        may_pairs.push_back(make_pair_sorted(ids[0], ids[other]));
        for (const auto& pr : must_pairs) {
            if (pr.first == ids[0] || pr.second == ids[0]) {
                const IdName& sibling =
                    pr.first == ids[0] ? pr.second : pr.first;
                if (sibling != ids[other])
                    may_pairs.push_back(make_pair_sorted(sibling, ids[other]));
            }
        }
    }
    p.aliases = close_relations(p.ids, must_pairs, may_pairs);

    std::size_t n_edges = 1 + pick(rng, cfg.max_edges);
    for (std::size_t i = 0; i < n_edges; ++i) {
        ProgramModel::Edge e;
        e.from = nodes[pick(rng, n_nodes)];
        e.to = nodes[pick(rng, n_nodes)];
        if (chance(rng, 15)) {
            e.label = EdgeLabel::silent();
        } else {
            EventName ev = chance(rng, 15)
                               ? "t" + std::to_string(pick(rng, 2))
                               : events[pick(rng, n_events)];
            e.label = EdgeLabel::of(ids[pick(rng, n_ids)], std::move(ev));
        }
        p.edges.push_back(std::move(e));
    }
    p.sort_edges();
    p.validate();

    return {std::move(d), std::move(p)};
}

} // namespace

std::pair<DateSpec, ProgramModel> random_instance(const GenConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    for (;;) {
        auto candidate = random_instance_once(cfg, rng);
        try {
            enumerate_traces(candidate.second, cfg.trace_bound,
                             kInstanceTraceCap);
            return candidate;
        } catch (const ResourceLimit&) {
            // redraw
        }
    }
}

GroundTrace random_ground_trace(const DateSpec& d, std::mt19937_64& rng,
                                std::size_t max_len) {
    GroundTrace t;
    if (d.alphabet.empty()) return t;
    std::vector<EventName> events(d.alphabet.begin(), d.alphabet.end());
    std::size_t len = pick(rng, max_len + 1);
    for (std::size_t i = 0; i < len; ++i)
        t.push_back(events[pick(rng, events.size())]);
    return t;
}

} // namespace residua
