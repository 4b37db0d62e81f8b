#include "residua/monitor.hpp"

namespace residua {

namespace {

AliasRelations identity_aliases(const ParamTrace& rt) {
    std::set<IdName> ids;
    for (const auto& [id, ev] : rt) ids.insert(id);
    return close_relations(ids, {}, {});
}

} // namespace

MonitorPool::MonitorPool(DateSpec tmpl, AliasRelations aliases,
                         SilencedSet silenced, bool halt_on_violation)
    : template_(std::move(tmpl)), aliases_(std::move(aliases)),
      silenced_(std::move(silenced)), halt_on_violation_(halt_on_violation),
      initially_bad_(!template_.empty() &&
                     template_.bad.count(template_.initial) > 0) {}

void MonitorPool::feed(const std::pair<IdName, EventName>& pair) {
    const auto& [id, ev] = pair;
    ++stats_.events_total;

    auto rep_it = rep_cache_.find(id);
    if (rep_it == rep_cache_.end())
        rep_it = rep_cache_.emplace(id, aliases_.representative(id)).first;
    const IdName& rep = rep_it->second;
    Instance& inst = classes_[rep]; // every mentioned class is reported
    if (initially_bad_ && !inst.verdict.violation) {
        inst.verdict = Verdict::violation_at(-1);
        ++stats_.violations;
        if (halt_on_violation_) inst.halted = true;
    }
    if (silenced_.count(pair)) return;

    // Verdict indices follow the run semantics on the projected trace,
    // so events outside the alphabet still advance the position while
    // being inert.
    if (!template_.empty() && template_.alphabet.count(ev)) {
        ++stats_.events_delivered;
        if (!inst.halted) {
            if (!inst.created) {
                inst.created = true;
                inst.state = template_.initial;
                inst.vars = template_.initial_vars();
                ++stats_.monitors_created;
                if (initially_bad_) ++stats_.bad_entries_total;
            }
            StepResult s;
            try {
                s = concrete_step(template_, inst.state, inst.vars, ev);
            } catch (const NondeterminismError& err) {
                throw NondeterminismError("class '" + rep + "' at index " +
                                          std::to_string(inst.position) +
                                          ": " + err.what());
            }
            stats_.transitions_evaluated += s.guards_evaluated;
            bool entered_bad =
                s.state != inst.state && template_.bad.count(s.state) > 0;
            inst.state = std::move(s.state);
            inst.vars = std::move(s.vars);
            if (entered_bad) {
                ++stats_.bad_entries_total;
                if (!inst.verdict.violation) {
                    inst.verdict = Verdict::violation_at(inst.position);
                    ++stats_.violations;
                    if (halt_on_violation_) inst.halted = true;
                }
            }
        }
    }
    ++inst.position;
}

std::map<IdName, Verdict> MonitorPool::verdicts() const {
    std::map<IdName, Verdict> out;
    for (const auto& [rep, inst] : classes_) out[rep] = inst.verdict;
    return out;
}

MonitorResult monitor(const DateSpec& d, const ParamTrace& rt,
                      const AliasRelations& aliases,
                      const SilencedSet& silenced, bool halt_on_violation) {
    MonitorPool pool(d, aliases, silenced, halt_on_violation);
    for (const auto& pair : rt) pool.feed(pair);
    return {pool.verdicts(), pool.stats()};
}

MonitorResult monitor(const DateSpec& d, const ParamTrace& rt,
                      const SilencedSet& silenced, bool halt_on_violation) {
    return monitor(d, rt, identity_aliases(rt), silenced, halt_on_violation);
}

CompareResult replay_compare(const DateSpec& da, const DateSpec& db,
                             const ParamTrace& rt,
                             const AliasRelations& aliases,
                             const SilencedSet& silenced_b) {
    MonitorResult ra = monitor(da, rt, aliases, {});
    MonitorResult rb = monitor(db, rt, aliases, silenced_b);
    CompareResult out;
    for (const auto& [rep, va] : ra.verdicts) {
        ClassAgreement cls;
        cls.verdict_a = va;
        auto it = rb.verdicts.find(rep);
        cls.verdict_b = it == rb.verdicts.end() ? Verdict::ok() : it->second;
        cls.agree = cls.verdict_a.violation == cls.verdict_b.violation;
        if (!cls.agree) out.all_agree = false;
        out.per_class[rep] = cls;
    }
    return out;
}

} // namespace residua
