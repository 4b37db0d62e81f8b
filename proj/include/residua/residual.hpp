#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "residua/date.hpp"
#include "residua/program.hpp"

namespace residua {

using StateSet = std::set<StateId>;

enum class StateClass { BadAfter, GoodEntryPoint, Useless };

const char* to_string(StateClass c);

/// Static successor set for one event (Def of the approximating
/// transition relation): targets of transitions whose guard is not
/// literally false, plus q itself unless a literally-true guard forces
/// an exit to a different state.
StateSet approx_step(const DateSpec& d, const StateId& q, const EventName& e);

/// Fold of the static transition function over a ground trace.
StateSet static_run(const DateSpec& d, const StateSet& start,
                    const GroundTrace& t);

/// badAfter: reachable from the initial state (reflexively) and some bad
/// state reachable from it. goodEntryPoint: not badAfter, one static
/// transition away from a badAfter state. Everything else is useless.
std::map<StateId, StateClass> classify_states(const DateSpec& d);

/// Keeps the useful states and the transitions between them. When the
/// initial state is not useful the result is the empty DATE (statically
/// satisfied; running it yields OK).
DateSpec reachable_reduce(const DateSpec& d);

/// Reduced property plus the instrumentation that can be silenced.
struct ResidualReport {
    DateSpec residual;
    SilencedSet silenced;
    int level = 0;
    std::map<IdName, DateSpec> per_id;
    std::vector<Transition> removed_transitions; // vs. the input DATE
    std::size_t removed_states = 0;              // vs. the input DATE
    std::vector<std::size_t> step_removed; // per program, residual2 only
    bool statically_satisfied = false;
};

/// Absent-event pruning: reduce after restricting to the program's
/// alphabet. Never silences anything.
ResidualReport residual0(const DateSpec& d, const ProgramModel& p);

/// Object-specific absent-event pruning for one identifier.
DateSpec residual1(const DateSpec& d, const ProgramModel& p, const IdName& x);

/// Union of the per-identifier residuals, with per-identifier silencing:
/// a pair (x, e) is silenced when e is a property event occurring on x's
/// class's reachable edges, x's residual has no events left to monitor,
/// and x's may-component coincides with its must-class (entangled
/// identifiers are never silenced).
ResidualReport residual1_union(const DateSpec& d, const ProgramModel& p);

/// Transitions of d usable by some trace of P ⇓ x, computed as a product
/// reachability fixpoint between the projection graph and the static
/// transition relation. Never returns a literally-false guard.
std::vector<Transition> used_transitions(const DateSpec& d,
                                         const ProgramModel& p,
                                         const IdName& x);

/// Unusable-transition pruning, applied for each program in order; with
/// `fixpoint` each program is reapplied until no transition is removed.
/// Per-identifier silencing follows the same conservative rule as
/// residual1_union, evaluated against the per-identifier residual.
ResidualReport residual2(const DateSpec& d,
                         const std::vector<ProgramModel>& ps,
                         bool fixpoint = false);

} // namespace residua
