#pragma once

#include <map>
#include <string>

#include "residua/date.hpp"
#include "residua/program.hpp"

namespace residua {

/// Desk-scale activation counters, the stand-in for wall-clock overhead.
struct ActivationStats {
    std::int64_t events_total = 0;
    std::int64_t events_delivered = 0;
    std::int64_t transitions_evaluated = 0;
    std::int64_t monitors_created = 0;
    std::int64_t violations = 0;
    std::int64_t bad_entries_total = 0; // auxiliary, not part of the five

    ActivationStats& operator+=(const ActivationStats& o) {
        events_total += o.events_total;
        events_delivered += o.events_delivered;
        transitions_evaluated += o.transitions_evaluated;
        monitors_created += o.monitors_created;
        violations += o.violations;
        bad_entries_total += o.bad_entries_total;
        return *this;
    }
};

struct MonitorResult {
    std::map<IdName, Verdict> verdicts; // keyed by must-class representative
    ActivationStats stats;
};

/// Online parametrised monitoring: one template instance per must-class,
/// created lazily at the first delivered event. Silenced pairs are
/// skipped before delivery; events outside the template alphabet advance
/// a class's position but are inert. Verdict indices are positions in
/// the class's projected (non-silenced) trace, matching the run
/// semantics on that projection. Single-threaded; distinct pools are
/// independent.
class MonitorPool {
public:
    MonitorPool(DateSpec tmpl, AliasRelations aliases, SilencedSet silenced,
                bool halt_on_violation = false);

    /// Feeds one (identifier, event) pair; throws NondeterminismError
    /// with the offending class and index.
    void feed(const std::pair<IdName, EventName>& pair);

    const ActivationStats& stats() const { return stats_; }
    std::map<IdName, Verdict> verdicts() const;

private:
    struct Instance {
        StateId state;
        VarState vars;
        Verdict verdict = Verdict::ok();
        bool created = false;
        bool halted = false;
        std::int64_t position = 0;
    };

    DateSpec template_;
    AliasRelations aliases_;
    SilencedSet silenced_;
    bool halt_on_violation_;
    bool initially_bad_;
    std::map<IdName, Instance> classes_;
    std::map<IdName, IdName> rep_cache_;
    ActivationStats stats_;
};

/// Runs a whole parametrised trace through a fresh pool.
MonitorResult monitor(const DateSpec& d, const ParamTrace& rt,
                      const AliasRelations& aliases, const SilencedSet& silenced,
                      bool halt_on_violation = false);

/// Convenience overload with identity aliasing over the trace's ids.
MonitorResult monitor(const DateSpec& d, const ParamTrace& rt,
                      const SilencedSet& silenced = {},
                      bool halt_on_violation = false);

struct ClassAgreement {
    Verdict verdict_a;
    Verdict verdict_b;
    bool agree = true; // same OK/VIOLATION classification
};

struct CompareResult {
    std::map<IdName, ClassAgreement> per_class;
    bool all_agree = true;
};

/// Monitors the trace twice, dA unsilenced and dB with silencedB, and
/// reports per-class classification agreement. Disagreement on traces
/// outside the analysed program's language is possible and is reported,
/// not thrown.
CompareResult replay_compare(const DateSpec& da, const DateSpec& db,
                             const ParamTrace& rt, const AliasRelations& aliases,
                             const SilencedSet& silenced_b);

} // namespace residua
