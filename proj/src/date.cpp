#include "residua/date.hpp"

#include <algorithm>
#include <map>

namespace residua {

std::string Transition::key() const {
    return source + " -> " + target + " on " + event + " if " +
           to_string(guard) + " do " + to_string(action);
}

bool operator==(const Transition& a, const Transition& b) {
    return a.source == b.source && a.event == b.event && a.target == b.target &&
           expr_equal(a.guard, b.guard) && action_equal(a.action, b.action);
}

bool operator<(const Transition& a, const Transition& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.event != b.event) return a.event < b.event;
    std::string ga = to_string(a.guard);
    std::string gb = to_string(b.guard);
    if (ga != gb) return ga < gb;
    if (a.target != b.target) return a.target < b.target;
    return to_string(a.action) < to_string(b.action);
}

std::string to_string(const Verdict& v) {
    if (!v.violation) return "OK";
    return "VIOLATION@" + std::to_string(v.index);
}

TypeEnv DateSpec::type_env() const {
    TypeEnv env;
    for (const auto& v : vars) env[v.name] = v.kind;
    return env;
}

VarState DateSpec::initial_vars() const {
    VarState s;
    for (const auto& v : vars) s.values[v.name] = v.initial;
    return s;
}

void DateSpec::sort_transitions() {
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end(),
                                  [](const Transition& a, const Transition& b) {
                                      return a == b;
                                  }),
                      transitions.end());
}

void DateSpec::validate() const {
    if (empty()) {
        if (!initial.empty() || !bad.empty() || !transitions.empty())
            throw SpecError("empty DATE '" + name +
                            "' must have no initial, bad or transitions");
        return;
    }
    if (!is_valid_name(name))
        throw SpecError("invalid DATE name '" + name + "'");
    if (!states.count(initial))
        throw SpecError("initial state '" + initial + "' not declared");
    for (const auto& q : bad) {
        if (!states.count(q))
            throw SpecError("bad state '" + q + "' not declared");
    }
    for (const auto& e : alphabet) {
        if (!is_valid_name(e))
            throw SpecError("invalid event name '" + e + "'");
    }
    TypeEnv env;
    for (const auto& v : vars) {
        if (!is_valid_name(v.name))
            throw SpecError("invalid variable name '" + v.name + "'");
        if (env.count(v.name))
            throw SpecError("duplicate variable '" + v.name + "'");
        if (v.initial.kind != v.kind)
            throw SpecError("initial value of '" + v.name +
                            "' has the wrong type");
        env[v.name] = v.kind;
    }

    // Duplicate-edge rejection: one (source, event, guard text) may carry
    // only one action/target.
    std::map<std::string, const Transition*> seen;
    for (const auto& tr : transitions) {
        if (!states.count(tr.source))
            throw SpecError("transition source '" + tr.source +
                            "' not declared");
        if (!states.count(tr.target))
            throw SpecError("transition target '" + tr.target +
                            "' not declared");
        if (!alphabet.count(tr.event))
            throw SpecError("transition event '" + tr.event +
                            "' not in alphabet");
        if (typecheck(tr.guard, env) != ValueKind::Bool)
            throw SpecError("guard of '" + tr.key() + "' is not boolean");
        typecheck(tr.action, env);
        std::string dup_key =
            tr.source + "|" + tr.event + "|" + to_string(tr.guard);
        auto [it, inserted] = seen.emplace(dup_key, &tr);
        if (!inserted && !(*it->second == tr))
            throw SpecError("duplicate transition from '" + tr.source +
                            "' on '" + tr.event + "' with guard '" +
                            to_string(tr.guard) + "'");
    }
}

bool DateSpec::operator==(const DateSpec& o) const {
    if (name != o.name || param != o.param || alphabet != o.alphabet ||
        states != o.states || initial != o.initial || bad != o.bad)
        return false;
    if (vars != o.vars) return false;
    if (transitions.size() != o.transitions.size()) return false;
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        if (!(transitions[i] == o.transitions[i])) return false;
    }
    return true;
}

bool eval_guard(const Expr& g, const VarState& vars) {
    return eval(g, vars).b;
}

StepResult concrete_step(const DateSpec& d, const StateId& q,
                         const VarState& vars, const EventName& e) {
    const Transition* enabled = nullptr;
    std::int64_t evaluated = 0;
    for (const auto& tr : d.transitions) {
        if (tr.source != q || tr.event != e) continue;
        ++evaluated;
        if (!eval_guard(tr.guard, vars)) continue;
        if (enabled != nullptr)
            throw NondeterminismError(
                "two transitions enabled from '" + q + "' on '" + e +
                "' with " + to_string(vars) + ": '" + enabled->key() +
                "' and '" + tr.key() + "'");
        enabled = &tr;
    }
    if (enabled == nullptr) return {q, vars, evaluated};
    return {enabled->target, apply_action(enabled->action, vars), evaluated};
}

RunResult run(const DateSpec& d, const GroundTrace& t) {
    RunResult r;
    r.verdict = Verdict::ok();
    if (d.empty()) return r;
    StateId q = d.initial;
    VarState vars = d.initial_vars();
    if (d.bad.count(q)) {
        r.verdict = Verdict::violation_at(-1);
        r.bad_entries = 1;
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        StepResult s = concrete_step(d, q, vars, t[i]);
        r.guards_evaluated += s.guards_evaluated;
        bool entered_bad = s.state != q && d.bad.count(s.state) > 0;
        q = std::move(s.state);
        vars = std::move(s.vars);
        if (entered_bad) {
            ++r.bad_entries;
            if (!r.verdict.violation)
                r.verdict = Verdict::violation_at(static_cast<std::int64_t>(i));
        }
    }
    r.final_state = q;
    r.final_vars = vars;
    return r;
}

DateSpec restrict_alphabet(const DateSpec& d, const std::set<EventName>& sigma) {
    DateSpec out = d;
    out.alphabet.clear();
    for (const auto& e : d.alphabet) {
        if (sigma.count(e)) out.alphabet.insert(e);
    }
    out.transitions.clear();
    for (const auto& tr : d.transitions) {
        if (out.alphabet.count(tr.event)) out.transitions.push_back(tr);
    }
    return out;
}

DateSpec restrict_transitions(const DateSpec& d,
                              const std::vector<Transition>& keep) {
    std::set<std::string> keys;
    for (const auto& tr : keep) keys.insert(tr.key());
    DateSpec out = d;
    out.transitions.clear();
    for (const auto& tr : d.transitions) {
        if (keys.count(tr.key())) out.transitions.push_back(tr);
    }
    return out;
}

bool compatible(const DateSpec& a, const DateSpec& b) {
    if (a.empty() || b.empty()) return true;
    if (a.initial != b.initial) return false;
    if (a.vars != b.vars) return false;
    // A shared state must agree on badness, a shared transition key on
    // action and target; disagreement means the operands cannot be
    // restrictions of one parent.
    for (const auto& q : a.states) {
        if (b.states.count(q) && a.bad.count(q) != b.bad.count(q))
            return false;
    }
    std::map<std::string, const Transition*> in_a;
    for (const auto& tr : a.transitions) {
        in_a.emplace(tr.source + "|" + tr.event + "|" + to_string(tr.guard),
                     &tr);
    }
    for (const auto& tr : b.transitions) {
        auto it =
            in_a.find(tr.source + "|" + tr.event + "|" + to_string(tr.guard));
        if (it != in_a.end() && !(*it->second == tr)) return false;
    }
    return true;
}

DateSpec union_dates(const DateSpec& a, const DateSpec& b) {
    if (!compatible(a, b))
        throw IncompatibleUnion("'" + a.name + "' and '" + b.name +
                                "' are not restrictions of one parent DATE");
    if (a.empty()) return b;
    if (b.empty()) return a;
    DateSpec out = a;
    out.alphabet.insert(b.alphabet.begin(), b.alphabet.end());
    out.states.insert(b.states.begin(), b.states.end());
    out.bad.insert(b.bad.begin(), b.bad.end());
    out.transitions.insert(out.transitions.end(), b.transitions.begin(),
                           b.transitions.end());
    out.sort_transitions();
    out.validate(); // revalidates determinism of the union
    return out;
}

} // namespace residua
