#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "residua/date.hpp"

namespace residua {

using IdName = std::string;
using IdPair = std::pair<IdName, IdName>; // stored with first <= second

IdPair make_pair_sorted(const IdName& a, const IdName& b);

/// Must (equivalence) and may (reflexive, symmetric) alias relations over
/// the declared identifiers, stored closed.
struct AliasRelations {
    std::set<IdPair> must;
    std::set<IdPair> may;

    bool must_related(const IdName& a, const IdName& b) const;
    bool may_related(const IdName& a, const IdName& b) const;

    /// Members of a's must-equivalence class, a included.
    std::set<IdName> must_class(const IdName& a) const;
    /// Members of a's connected component under may, a included.
    std::set<IdName> may_component(const IdName& a) const;
    /// Least member of a's must class.
    IdName representative(const IdName& a) const;

    bool operator==(const AliasRelations& o) const {
        return must == o.must && may == o.may;
    }
};

/// Builds closed relations from raw pairs: must is closed reflexively,
/// symmetrically and transitively; may reflexively and symmetrically over
/// (input may ∪ closed must). A pair both in must and in `not_may` is a
/// contradiction.
AliasRelations close_relations(const std::set<IdName>& ids,
                               const std::vector<IdPair>& must_pairs,
                               const std::vector<IdPair>& may_pairs,
                               const std::vector<IdPair>& not_may_pairs = {});

/// Edge label: silent, or an (identifier, event) pair.
struct EdgeLabel {
    bool eps = true;
    IdName id;
    EventName event;

    static EdgeLabel silent() { return {}; }
    static EdgeLabel of(IdName i, EventName e) {
        return {false, std::move(i), std::move(e)};
    }

    bool operator==(const EdgeLabel& o) const {
        return eps == o.eps && (eps || (id == o.id && event == o.event));
    }
    bool operator<(const EdgeLabel& o) const {
        if (eps != o.eps) return eps; // eps sorts first
        if (id != o.id) return id < o.id;
        return event < o.event;
    }
};

std::string to_string(const EdgeLabel& l);

/// Sequence of (identifier, event) pairs.
using ParamTrace = std::vector<std::pair<IdName, EventName>>;

std::string to_string(const ParamTrace& t);

/// Static program abstraction: a flow graph whose trace language is the
/// prefix-closed set of labels along finite paths from the entry node.
struct ProgramModel {
    std::string name;
    std::set<std::string> nodes;
    std::string entry;
    struct Edge {
        std::string from;
        EdgeLabel label;
        std::string to;

        bool operator<(const Edge& o) const {
            if (from != o.from) return from < o.from;
            if (!(label == o.label)) return label < o.label;
            return to < o.to;
        }
        bool operator==(const Edge& o) const {
            return from == o.from && label == o.label && to == o.to;
        }
    };
    std::vector<Edge> edges; // kept sorted & unique
    std::set<IdName> ids;
    AliasRelations aliases;

    void sort_edges();
    void validate() const;

    /// Nodes reachable from entry.
    std::set<std::string> reachable_nodes() const;

    bool operator==(const ProgramModel& o) const;
};

/// Per-identifier static projection: a nondeterministic graph over bare
/// events with epsilon edges, sharing the program's nodes and entry.
struct EventGraph {
    std::set<std::string> nodes;
    std::string entry;
    struct Edge {
        std::string from;
        std::optional<EventName> event; // nullopt = epsilon
        std::string to;
    };
    std::vector<Edge> edges;

    /// All label sequences of length <= bound, deduplicated and sorted.
    std::vector<GroundTrace> enumerate(std::size_t bound) const;

    /// Membership of t in the path language (simulation over ε-closures).
    bool accepts(const GroundTrace& t) const;

    /// Events on edges reachable from entry.
    std::set<EventName> alphabet() const;
};

/// rt ↓ x: the subsequence of events whose identifier is must-equivalent
/// to x, order preserved.
GroundTrace project_runtime(const ParamTrace& rt, const IdName& x,
                            const AliasRelations& aliases);

/// P ⇓ x as a graph: must-aliased labels keep their event, not-may labels
/// turn silent, may-but-not-must labels yield both branches.
EventGraph project_static(const ProgramModel& p, const IdName& x);

/// Events on non-silent edges reachable from entry.
std::set<EventName> alphabet_of(const ProgramModel& p);

/// Events on reachable edges whose identifier may-aliases x; exactly the
/// events appearing in some trace of P ⇓ x.
std::set<EventName> alphabet_of_id(const ProgramModel& p, const IdName& x);

/// All parametrised label sequences of paths from entry with at most
/// `bound` non-silent labels; deduplicated, prefix-closed, sorted by
/// (length, then pairwise id/event). Throws ResourceLimit past the cap
/// (defaults to the global trace limit).
std::vector<ParamTrace> enumerate_traces(const ProgramModel& p,
                                         std::size_t bound,
                                         std::size_t cap = 0);

using SilencedSet = std::set<std::pair<IdName, EventName>>;

/// Drops every pair in E, preserving order.
ParamTrace silence(const ParamTrace& t, const SilencedSet& E);

/// Replaces every edge labeled with a pair in E by a silent edge.
ProgramModel silence_model(const ProgramModel& p, const SilencedSet& E);

} // namespace residua
