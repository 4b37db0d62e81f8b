#include "residua/residual.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace residua {

namespace {

/// Per (source, event) view of the static transition relation, with the
/// literal-guard tests evaluated once.
struct ApproxIndex {
    struct Entry {
        std::vector<StateId> targets; // guards not literally false
        bool true_exit = false;       // literally-true guard to another state
    };
    std::map<std::pair<StateId, EventName>, Entry> by_key;

    explicit ApproxIndex(const DateSpec& d) {
        for (const auto& tr : d.transitions) {
            if (is_literally_false(tr.guard)) continue;
            Entry& e = by_key[{tr.source, tr.event}];
            e.targets.push_back(tr.target);
            if (tr.target != tr.source && is_literally_true(tr.guard))
                e.true_exit = true;
        }
    }

    StateSet step(const StateId& q, const EventName& e) const {
        StateSet out;
        auto it = by_key.find({q, e});
        if (it != by_key.end()) {
            out.insert(it->second.targets.begin(), it->second.targets.end());
            if (!it->second.true_exit) out.insert(q);
        } else {
            out.insert(q);
        }
        return out;
    }
};

/// The events the deployed property actually instruments; the empty
/// residual instruments nothing.
std::set<EventName> monitored_alphabet(const DateSpec& d) {
    return d.empty() ? std::set<EventName>{} : d.alphabet;
}

/// Conservative per-identifier silencing: property events on the
/// identifier's class's reachable edges, provided the per-id residual no
/// longer listens to any of them and the identifier is not may-entangled
/// beyond its own must-class.
void collect_silenced(const DateSpec& stage_input, const ProgramModel& p,
                      const IdName& x, const DateSpec& per_id_residual,
                      SilencedSet& out) {
    std::set<EventName> residual_alpha = monitored_alphabet(per_id_residual);
    std::set<EventName> property_alpha = monitored_alphabet(stage_input);
    if (p.aliases.may_component(x) != p.aliases.must_class(x)) return;
    std::set<std::string> reach = p.reachable_nodes();
    for (const auto& e : p.edges) {
        if (e.label.eps || !reach.count(e.from)) continue;
        if (!p.aliases.must_related(e.label.id, x)) continue;
        if (!property_alpha.count(e.label.event)) continue;
        if (residual_alpha.count(e.label.event)) continue;
        out.insert({x, e.label.event});
    }
}

} // namespace

const char* to_string(StateClass c) {
    switch (c) {
    case StateClass::BadAfter: return "badAfter";
    case StateClass::GoodEntryPoint: return "goodEntryPoint";
    case StateClass::Useless: return "useless";
    }
    return "?";
}

StateSet approx_step(const DateSpec& d, const StateId& q, const EventName& e) {
    if (!d.states.count(q))
        throw SpecError("approx_step: state '" + q + "' not declared");
    StateSet out;
    bool true_exit = false;
    for (const auto& tr : d.transitions) {
        if (tr.source != q || tr.event != e) continue;
        if (is_literally_false(tr.guard)) continue;
        out.insert(tr.target);
        if (tr.target != q && is_literally_true(tr.guard)) true_exit = true;
    }
    if (!true_exit) out.insert(q);
    return out;
}

StateSet static_run(const DateSpec& d, const StateSet& start,
                    const GroundTrace& t) {
    for (const auto& q : start) {
        if (!d.states.count(q))
            throw SpecError("static_run: state '" + q + "' not declared");
    }
    ApproxIndex idx(d);
    StateSet cur = start;
    for (const auto& e : t) {
        StateSet next;
        for (const auto& q : cur) {
            StateSet step = idx.step(q, e);
            next.insert(step.begin(), step.end());
        }
        cur = std::move(next);
    }
    return cur;
}

std::map<StateId, StateClass> classify_states(const DateSpec& d) {
    std::map<StateId, StateClass> out;
    if (d.empty()) return out;

    ApproxIndex idx(d);

    // Static successor edges; reachability is reflexive on top of these.
    std::map<StateId, StateSet> succ;
    for (const auto& q : d.states) succ[q] = {};
    for (const auto& [key, entry] : idx.by_key) {
        for (const auto& target : entry.targets)
            succ[key.first].insert(target);
    }

    auto bfs = [&](const StateSet& start, bool forward) {
        StateSet seen = start;
        std::deque<StateId> work(start.begin(), start.end());
        while (!work.empty()) {
            StateId cur = work.front();
            work.pop_front();
            if (forward) {
                for (const auto& n : succ[cur]) {
                    if (!seen.count(n)) {
                        seen.insert(n);
                        work.push_back(n);
                    }
                }
            } else {
                for (const auto& [q, targets] : succ) {
                    if (targets.count(cur) && !seen.count(q)) {
                        seen.insert(q);
                        work.push_back(q);
                    }
                }
            }
        }
        return seen;
    };

    StateSet forward = bfs({d.initial}, true);
    StateSet reaches_bad =
        d.bad.empty() ? StateSet{} : bfs(StateSet(d.bad), false);

    StateSet bad_after;
    for (const auto& q : d.states) {
        if (forward.count(q) && reaches_bad.count(q)) bad_after.insert(q);
    }

    for (const auto& q : d.states) {
        if (bad_after.count(q)) {
            out[q] = StateClass::BadAfter;
            continue;
        }
        bool entry_point = false;
        for (const auto& [key, entry] : idx.by_key) {
            if (!bad_after.count(key.first)) continue;
            for (const auto& target : entry.targets) {
                if (target == q) {
                    entry_point = true;
                    break;
                }
            }
            if (entry_point) break;
        }
        out[q] = entry_point ? StateClass::GoodEntryPoint : StateClass::Useless;
    }
    return out;
}

DateSpec reachable_reduce(const DateSpec& d) {
    if (d.empty()) return d;
    auto classes = classify_states(d);

    auto useful = [&](const StateId& q) {
        return classes.at(q) != StateClass::Useless;
    };

    DateSpec out = d;
    if (!useful(d.initial)) {
        out.states.clear();
        out.initial.clear();
        out.bad.clear();
        out.transitions.clear();
        return out;
    }
    out.states.clear();
    out.bad.clear();
    out.transitions.clear();
    for (const auto& q : d.states) {
        if (useful(q)) out.states.insert(q);
    }
    for (const auto& q : d.bad) {
        if (useful(q)) out.bad.insert(q);
    }
    for (const auto& tr : d.transitions) {
        if (useful(tr.source) && useful(tr.target))
            out.transitions.push_back(tr);
    }
    return out;
}

namespace {

std::vector<Transition> transition_difference(const DateSpec& original,
                                              const DateSpec& reduced) {
    std::set<std::string> kept;
    for (const auto& tr : reduced.transitions) kept.insert(tr.key());
    std::vector<Transition> removed;
    for (const auto& tr : original.transitions) {
        if (!kept.count(tr.key())) removed.push_back(tr);
    }
    return removed;
}

DateSpec empty_like(const DateSpec& d) {
    DateSpec out = d;
    out.states.clear();
    out.initial.clear();
    out.bad.clear();
    out.transitions.clear();
    return out;
}

} // namespace

ResidualReport residual0(const DateSpec& d, const ProgramModel& p) {
    ResidualReport r;
    r.level = 0;
    r.residual = reachable_reduce(restrict_alphabet(d, alphabet_of(p)));
    r.removed_transitions = transition_difference(d, r.residual);
    r.removed_states = d.states.size() - r.residual.states.size();
    r.statically_satisfied = r.residual.empty();
    return r;
}

DateSpec residual1(const DateSpec& d, const ProgramModel& p, const IdName& x) {
    return reachable_reduce(restrict_alphabet(d, alphabet_of_id(p, x)));
}

ResidualReport residual1_union(const DateSpec& d, const ProgramModel& p) {
    ResidualReport r;
    r.level = 1;
    DateSpec acc = empty_like(d);
    for (const auto& x : p.ids) {
        DateSpec rx = residual1(d, p, x);
        collect_silenced(d, p, x, rx, r.silenced);
        acc = union_dates(acc, rx);
        r.per_id.emplace(x, std::move(rx));
    }
    r.residual = std::move(acc);
    r.removed_transitions = transition_difference(d, r.residual);
    r.removed_states = d.states.size() - r.residual.states.size();
    r.statically_satisfied = r.residual.empty();
    return r;
}

std::vector<Transition> used_transitions(const DateSpec& d,
                                         const ProgramModel& p,
                                         const IdName& x) {
    if (d.empty()) return {};
    EventGraph g = project_static(p, x);
    ApproxIndex idx(d);

    // Product reachability between the projection graph and the static
    // transition relation; epsilon edges advance the graph only.
    std::map<std::string, std::vector<const EventGraph::Edge*>> out_edges;
    for (const auto& e : g.edges) out_edges[e.from].push_back(&e);

    std::set<std::pair<std::string, StateId>> seen;
    std::deque<std::pair<std::string, StateId>> work;
    std::size_t cap = product_limit();
    auto push = [&](const std::string& n, const StateId& q) {
        if (seen.emplace(n, q).second) {
            if (seen.size() > cap)
                throw ResourceLimit("product reachability exceeded " +
                                    std::to_string(cap) + " pairs");
            work.emplace_back(n, q);
        }
    };
    push(g.entry, d.initial);

    std::set<std::pair<StateId, EventName>> fired;
    while (!work.empty()) {
        auto [n, q] = work.front();
        work.pop_front();
        auto it = out_edges.find(n);
        if (it == out_edges.end()) continue;
        for (const EventGraph::Edge* e : it->second) {
            if (!e->event) {
                push(e->to, q);
                continue;
            }
            fired.insert({q, *e->event});
            for (const auto& q2 : idx.step(q, *e->event)) push(e->to, q2);
        }
    }

    std::vector<Transition> used;
    for (const auto& tr : d.transitions) {
        if (is_literally_false(tr.guard)) continue;
        if (fired.count({tr.source, tr.event})) used.push_back(tr);
    }
    return used;
}

ResidualReport residual2(const DateSpec& d,
                         const std::vector<ProgramModel>& ps,
                         bool fixpoint) {
    if (ps.empty()) throw SpecError("residual2 needs at least one program");
    ResidualReport r;
    r.level = 2;
    DateSpec cur = d;
    for (const auto& p : ps) {
        std::size_t removed_for_p = 0;
        for (;;) {
            std::vector<Transition> used_all;
            for (const auto& x : p.ids) {
                std::vector<Transition> used_x = used_transitions(cur, p, x);
                DateSpec rx =
                    reachable_reduce(restrict_transitions(cur, used_x));
                collect_silenced(cur, p, x, rx, r.silenced);
                used_all.insert(used_all.end(), used_x.begin(), used_x.end());
                r.per_id[x] = std::move(rx);
            }
            DateSpec next = reachable_reduce(restrict_transitions(cur, used_all));
            std::size_t removed_now =
                cur.transitions.size() - next.transitions.size();
            removed_for_p += removed_now;
            cur = std::move(next);
            if (!fixpoint || removed_now == 0) break;
        }
        r.step_removed.push_back(removed_for_p);
    }
    r.residual = std::move(cur);
    r.removed_transitions = transition_difference(d, r.residual);
    r.removed_states = d.states.size() - r.residual.states.size();
    r.statically_satisfied = r.residual.empty();
    return r;
}

} // namespace residua
