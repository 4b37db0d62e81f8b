#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "residua/expr.hpp"

namespace residua {

using StateId = std::string;
using EventName = std::string;

/// Sequence of bare events, one object's view of an execution.
using GroundTrace = std::vector<EventName>;

/// Declared monitoring variable with its initial value.
struct VarDecl {
    std::string name;
    ValueKind kind;
    Value initial;

    bool operator==(const VarDecl& o) const {
        return name == o.name && kind == o.kind && initial == o.initial;
    }
};

/// Guarded transition: source --event | guard -> action--> target.
struct Transition {
    StateId source;
    EventName event;
    Expr guard;   // bool-typed
    Action action;
    StateId target;

    /// Canonical text used for set semantics, ordering and printing.
    std::string key() const;
};

bool operator==(const Transition& a, const Transition& b);
bool operator<(const Transition& a, const Transition& b);

/// Monitoring verdict for one ground trace. `index` is the 0-based
/// position of the event whose processing first entered a bad state;
/// -1 means the initial state was already bad ("initially violated").
struct Verdict {
    bool violation = false;
    std::int64_t index = 0;

    static Verdict ok() { return {false, 0}; }
    static Verdict violation_at(std::int64_t i) { return {true, i}; }

    bool operator==(const Verdict& o) const {
        return violation == o.violation && (!violation || index == o.index);
    }
    bool operator!=(const Verdict& o) const { return !(*this == o); }
};

std::string to_string(const Verdict& v);

/// A guarded symbolic monitoring automaton (timer-free DATE).
///
/// The empty form (no states) is first class: it is the "statically
/// satisfied" residual, and running it yields OK on every trace.
struct DateSpec {
    std::string name;
    std::string param; // identifier binder, documentation only
    std::set<EventName> alphabet;
    std::vector<VarDecl> vars;
    std::set<StateId> states;
    StateId initial;
    std::set<StateId> bad;
    std::vector<Transition> transitions; // kept sorted & unique by key()

    bool empty() const { return states.empty(); }

    TypeEnv type_env() const;
    VarState initial_vars() const;

    /// Sorts/dedupes transitions and checks every structural invariant:
    /// state/alphabet membership, well-typed guards and actions, and
    /// duplicate-edge rejection (same source/event/guard text must agree
    /// on action and target). Throws SpecError.
    void validate() const;

    void sort_transitions();

    bool operator==(const DateSpec& o) const;
};

/// Result of running a trace to the end.
struct RunResult {
    Verdict verdict;
    StateId final_state;
    VarState final_vars;
    std::int64_t guards_evaluated = 0;
    std::int64_t bad_entries = 0;
};

struct StepResult {
    StateId state;
    VarState vars;
    std::int64_t guards_evaluated = 0;
};

bool eval_guard(const Expr& g, const VarState& vars);

/// One event against the concrete transition function. Stays put when no
/// transition is enabled (implicit totality, also for events outside the
/// alphabet); throws NondeterminismError when two are enabled at once.
StepResult concrete_step(const DateSpec& d, const StateId& q,
                         const VarState& vars, const EventName& e);

/// Runs a whole ground trace from the initial configuration. Bad states
/// may have outgoing transitions; the verdict records the first entry
/// and the run continues for final-state reporting.
RunResult run(const DateSpec& d, const GroundTrace& t);

/// Restriction to d.alphabet ∩ sigma; transitions on dropped events go
/// with it, everything else is unchanged.
DateSpec restrict_alphabet(const DateSpec& d, const std::set<EventName>& sigma);

/// Keeps only transitions present in `keep` (matched by key).
DateSpec restrict_transitions(const DateSpec& d,
                              const std::vector<Transition>& keep);

/// True when the two automata can be component-wise unioned, i.e. they
/// look like restrictions of one parent DATE.
bool compatible(const DateSpec& a, const DateSpec& b);

/// Component-wise union (Def of ⊔). Empty operands are identities.
/// Throws IncompatibleUnion when `compatible` fails or the union would
/// break duplicate-edge rejection.
DateSpec union_dates(const DateSpec& a, const DateSpec& b);

} // namespace residua
