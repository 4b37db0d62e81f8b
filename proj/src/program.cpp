#include "residua/program.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace residua {

IdPair make_pair_sorted(const IdName& a, const IdName& b) {
    return a <= b ? IdPair{a, b} : IdPair{b, a};
}

bool AliasRelations::must_related(const IdName& a, const IdName& b) const {
    return a == b || must.count(make_pair_sorted(a, b)) > 0;
}

bool AliasRelations::may_related(const IdName& a, const IdName& b) const {
    return a == b || may.count(make_pair_sorted(a, b)) > 0;
}

std::set<IdName> AliasRelations::must_class(const IdName& a) const {
    std::set<IdName> out = {a};
    for (const auto& [x, y] : must) {
        if (x == a) out.insert(y);
        if (y == a) out.insert(x);
    }
    return out;
}

std::set<IdName> AliasRelations::may_component(const IdName& a) const {
    std::set<IdName> out = {a};
    std::deque<IdName> work = {a};
    while (!work.empty()) {
        IdName cur = work.front();
        work.pop_front();
        for (const auto& [x, y] : may) {
            if (x == cur && !out.count(y)) {
                out.insert(y);
                work.push_back(y);
            }
            if (y == cur && !out.count(x)) {
                out.insert(x);
                work.push_back(x);
            }
        }
    }
    return out;
}

IdName AliasRelations::representative(const IdName& a) const {
    return *must_class(a).begin();
}

AliasRelations close_relations(const std::set<IdName>& ids,
                               const std::vector<IdPair>& must_pairs,
                               const std::vector<IdPair>& may_pairs,
                               const std::vector<IdPair>& not_may_pairs) {
    auto check_declared = [&](const IdPair& pr, const char* rel) {
        if (!ids.count(pr.first) || !ids.count(pr.second))
            throw SpecError(std::string(rel) + " pair (" + pr.first + ", " +
                            pr.second + ") references undeclared identifier");
    };

    // Union-find for the must closure.
    std::map<IdName, IdName> parent;
    for (const auto& id : ids) parent[id] = id;
    std::function<IdName(const IdName&)> find = [&](const IdName& a) -> IdName {
        IdName root = a;
        while (parent[root] != root) root = parent[root];
        return root;
    };
    for (const auto& pr : must_pairs) {
        check_declared(pr, "must");
        parent[find(pr.first)] = find(pr.second);
    }

    AliasRelations out;
    for (const auto& a : ids) {
        out.must.insert({a, a});
        out.may.insert({a, a});
        for (const auto& b : ids) {
            if (a < b && find(a) == find(b)) {
                out.must.insert({a, b});
                out.may.insert({a, b});
            }
        }
    }
    for (const auto& pr : may_pairs) {
        check_declared(pr, "may");
        out.may.insert(make_pair_sorted(pr.first, pr.second));
    }
    for (const auto& pr : not_may_pairs) {
        check_declared(pr, "notmay");
        IdPair key = make_pair_sorted(pr.first, pr.second);
        if (out.must.count(key))
            throw ContradictoryAliases("(" + key.first + ", " + key.second +
                                       ") is must-alias but marked not-may");
        if (out.may.count(key))
            throw ContradictoryAliases("(" + key.first + ", " + key.second +
                                       ") is both may and not-may");
    }
    return out;
}

std::string to_string(const EdgeLabel& l) {
    if (l.eps) return "eps";
    return l.id + "." + l.event;
}

std::string to_string(const ParamTrace& t) {
    std::string out = "<";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) out += ", ";
        out += t[i].first + "." + t[i].second;
    }
    return out + ">";
}

void ProgramModel::sort_edges() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void ProgramModel::validate() const {
    if (!is_valid_name(name))
        throw SpecError("invalid program name '" + name + "'");
    if (nodes.empty()) throw SpecError("program has no nodes");
    if (!nodes.count(entry))
        throw SpecError("entry node '" + entry + "' not declared");
    for (const auto& n : nodes) {
        if (!is_valid_name(n)) throw SpecError("invalid node name '" + n + "'");
    }
    for (const auto& id : ids) {
        if (!is_valid_name(id))
            throw SpecError("invalid identifier '" + id + "'");
    }
    for (const auto& e : edges) {
        if (!nodes.count(e.from) || !nodes.count(e.to))
            throw SpecError("edge references undeclared node ('" + e.from +
                            "' -> '" + e.to + "')");
        if (!e.label.eps) {
            if (!ids.count(e.label.id))
                throw SpecError("edge identifier '" + e.label.id +
                                "' not declared");
            if (!is_valid_name(e.label.event))
                throw SpecError("invalid event name '" + e.label.event + "'");
        }
    }
    for (const auto& pr : aliases.must) {
        if (!ids.count(pr.first) || !ids.count(pr.second))
            throw SpecError("must relation references undeclared identifier");
    }
    for (const auto& pr : aliases.may) {
        if (!ids.count(pr.first) || !ids.count(pr.second))
            throw SpecError("may relation references undeclared identifier");
    }
    for (const auto& pr : aliases.must) {
        if (!aliases.may.count(pr))
            throw SpecError("must pair (" + pr.first + ", " + pr.second +
                            ") missing from may relation");
    }
}

std::set<std::string> ProgramModel::reachable_nodes() const {
    std::set<std::string> seen = {entry};
    std::deque<std::string> work = {entry};
    while (!work.empty()) {
        std::string cur = work.front();
        work.pop_front();
        for (const auto& e : edges) {
            if (e.from == cur && !seen.count(e.to)) {
                seen.insert(e.to);
                work.push_back(e.to);
            }
        }
    }
    return seen;
}

bool ProgramModel::operator==(const ProgramModel& o) const {
    return name == o.name && nodes == o.nodes && entry == o.entry &&
           edges == o.edges && ids == o.ids && aliases == o.aliases;
}

GroundTrace project_runtime(const ParamTrace& rt, const IdName& x,
                            const AliasRelations& aliases) {
    GroundTrace out;
    for (const auto& [id, ev] : rt) {
        if (aliases.must_related(id, x)) out.push_back(ev);
    }
    return out;
}

EventGraph project_static(const ProgramModel& p, const IdName& x) {
    if (!p.ids.count(x))
        throw SpecError("projection identifier '" + x + "' not declared");
    EventGraph g;
    g.nodes = p.nodes;
    g.entry = p.entry;
    for (const auto& e : p.edges) {
        if (e.label.eps) {
            g.edges.push_back({e.from, std::nullopt, e.to});
        } else if (p.aliases.must_related(e.label.id, x)) {
            g.edges.push_back({e.from, e.label.event, e.to});
        } else if (!p.aliases.may_related(e.label.id, x)) {
            g.edges.push_back({e.from, std::nullopt, e.to});
        } else {
            g.edges.push_back({e.from, e.label.event, e.to});
            g.edges.push_back({e.from, std::nullopt, e.to});
        }
    }
    return g;
}

namespace {

std::set<std::string> eps_closure(const EventGraph& g,
                                  const std::set<std::string>& start) {
    std::set<std::string> seen = start;
    std::deque<std::string> work(start.begin(), start.end());
    while (!work.empty()) {
        std::string cur = work.front();
        work.pop_front();
        for (const auto& e : g.edges) {
            if (e.from == cur && !e.event && !seen.count(e.to)) {
                seen.insert(e.to);
                work.push_back(e.to);
            }
        }
    }
    return seen;
}

} // namespace

std::vector<GroundTrace> EventGraph::enumerate(std::size_t bound) const {
    std::vector<GroundTrace> out;
    GroundTrace current;
    std::size_t cap = trace_limit();

    // Subset walk: every distinct label sequence is visited exactly once.
    std::function<void(const std::set<std::string>&)> go =
        [&](const std::set<std::string>& frontier) {
            out.push_back(current);
            if (out.size() > cap)
                throw ResourceLimit("trace enumeration exceeded " +
                                    std::to_string(cap) + " traces");
            if (current.size() >= bound) return;
            std::map<EventName, std::set<std::string>> next;
            for (const auto& n : frontier) {
                for (const auto& e : edges) {
                    if (e.from == n && e.event) next[*e.event].insert(e.to);
                }
            }
            for (const auto& [ev, targets] : next) {
                current.push_back(ev);
                go(eps_closure(*this, targets));
                current.pop_back();
            }
        };
    go(eps_closure(*this, {entry}));

    std::sort(out.begin(), out.end(), [](const GroundTrace& a,
                                         const GroundTrace& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

bool EventGraph::accepts(const GroundTrace& t) const {
    std::set<std::string> frontier = eps_closure(*this, {entry});
    for (const auto& ev : t) {
        std::set<std::string> next;
        for (const auto& n : frontier) {
            for (const auto& e : edges) {
                if (e.from == n && e.event && *e.event == ev)
                    next.insert(e.to);
            }
        }
        if (next.empty()) return false;
        frontier = eps_closure(*this, next);
    }
    return true;
}

std::set<EventName> EventGraph::alphabet() const {
    std::set<std::string> reach = eps_closure(*this, {entry});
    std::deque<std::string> work(reach.begin(), reach.end());
    while (!work.empty()) {
        std::string cur = work.front();
        work.pop_front();
        for (const auto& e : edges) {
            if (e.from == cur && !reach.count(e.to)) {
                reach.insert(e.to);
                work.push_back(e.to);
            }
        }
    }
    std::set<EventName> out;
    for (const auto& e : edges) {
        if (e.event && reach.count(e.from)) out.insert(*e.event);
    }
    return out;
}

std::set<EventName> alphabet_of(const ProgramModel& p) {
    std::set<std::string> reach = p.reachable_nodes();
    std::set<EventName> out;
    for (const auto& e : p.edges) {
        if (!e.label.eps && reach.count(e.from)) out.insert(e.label.event);
    }
    return out;
}

std::set<EventName> alphabet_of_id(const ProgramModel& p, const IdName& x) {
    if (!p.ids.count(x))
        throw SpecError("identifier '" + x + "' not declared");
    std::set<std::string> reach = p.reachable_nodes();
    std::set<EventName> out;
    for (const auto& e : p.edges) {
        if (!e.label.eps && reach.count(e.from) &&
            p.aliases.may_related(e.label.id, x))
            out.insert(e.label.event);
    }
    return out;
}

std::vector<ParamTrace> enumerate_traces(const ProgramModel& p,
                                         std::size_t bound, std::size_t cap) {
    // Same subset walk as EventGraph::enumerate, over (id, event) labels.
    struct LabeledGraph {
        const ProgramModel& p;
        std::set<std::string> closure(const std::set<std::string>& s) const {
            std::set<std::string> seen = s;
            std::deque<std::string> work(s.begin(), s.end());
            while (!work.empty()) {
                std::string cur = work.front();
                work.pop_front();
                for (const auto& e : p.edges) {
                    if (e.from == cur && e.label.eps && !seen.count(e.to)) {
                        seen.insert(e.to);
                        work.push_back(e.to);
                    }
                }
            }
            return seen;
        }
    } g{p};

    std::vector<ParamTrace> out;
    ParamTrace current;
    if (cap == 0) cap = trace_limit();

    std::function<void(const std::set<std::string>&)> go =
        [&](const std::set<std::string>& frontier) {
            out.push_back(current);
            if (out.size() > cap)
                throw ResourceLimit("trace enumeration exceeded " +
                                    std::to_string(cap) + " traces");
            if (current.size() >= bound) return;
            std::map<std::pair<IdName, EventName>, std::set<std::string>> next;
            for (const auto& n : frontier) {
                for (const auto& e : p.edges) {
                    if (e.from == n && !e.label.eps)
                        next[{e.label.id, e.label.event}].insert(e.to);
                }
            }
            for (const auto& [label, targets] : next) {
                current.push_back(label);
                go(g.closure(targets));
                current.pop_back();
            }
        };
    go(g.closure({p.entry}));

    std::sort(out.begin(), out.end(), [](const ParamTrace& a,
                                         const ParamTrace& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

ParamTrace silence(const ParamTrace& t, const SilencedSet& E) {
    ParamTrace out;
    for (const auto& pr : t) {
        if (!E.count(pr)) out.push_back(pr);
    }
    return out;
}

ProgramModel silence_model(const ProgramModel& p, const SilencedSet& E) {
    ProgramModel out = p;
    for (auto& e : out.edges) {
        if (!e.label.eps && E.count({e.label.id, e.label.event}))
            e.label = EdgeLabel::silent();
    }
    out.sort_edges();
    return out;
}

} // namespace residua
