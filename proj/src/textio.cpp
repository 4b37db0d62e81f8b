#include "residua/textio.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace residua {

namespace {

struct Line {
    int number;
    std::string text; // comment-stripped
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        bool blank = true;
        for (char c : raw) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        }
        if (!blank) out.push_back({number, raw});
    }
    return out;
}

struct Word {
    std::string text;
    int col; // 1-based start column
};

std::vector<Word> split_words(const std::string& line) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() &&
               std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() &&
               !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        out.push_back({line.substr(start, i - start),
                       static_cast<int>(start) + 1});
    }
    return out;
}

std::string require_name(const Word& w, int line, const char* what) {
    if (!is_valid_name(w.text))
        throw SpecError(std::string("invalid ") + what + " '" + w.text + "'",
                        line, w.col);
    return w.text;
}

// Star pseudo-transition awaiting expansion.
struct StarTransition {
    StateId source;
    StateId target;
    int line;
};

} // namespace

DateSpec parse_date(const std::string& text) {
    DateSpec d;
    std::vector<StarTransition> stars;
    std::vector<int> trans_lines; // parallel to d.transitions while parsing
    bool saw_date = false, saw_initial = false, saw_param = false;

    for (const auto& line : split_lines(text)) {
        std::vector<Word> words = split_words(line.text);
        const std::string& head = words[0].text;
        auto arg_count = words.size() - 1;

        if (!saw_date && head != "date")
            throw SpecError("expected 'date <name>' as the first directive",
                            line.number, words[0].col);

        if (head == "date") {
            if (saw_date)
                throw SpecError("duplicate 'date' line", line.number,
                                words[0].col);
            if (arg_count != 1)
                throw SpecError("'date' takes exactly one name", line.number,
                                words[0].col);
            d.name = require_name(words[1], line.number, "DATE name");
            saw_date = true;
        } else if (head == "param") {
            if (saw_param || arg_count != 1)
                throw SpecError("'param' takes exactly one token", line.number,
                                words[0].col);
            d.param = require_name(words[1], line.number, "param");
            saw_param = true;
        } else if (head == "alphabet") {
            for (std::size_t i = 1; i < words.size(); ++i)
                d.alphabet.insert(
                    require_name(words[i], line.number, "event name"));
        } else if (head == "var") {
            if (arg_count != 4 || words[3].text != "=")
                throw SpecError("expected 'var int|bool <name> = <literal>'",
                                line.number, words[0].col);
            VarDecl v;
            if (words[1].text == "int")
                v.kind = ValueKind::Int;
            else if (words[1].text == "bool")
                v.kind = ValueKind::Bool;
            else
                throw SpecError("variable kind must be int or bool",
                                line.number, words[1].col);
            v.name = require_name(words[2], line.number, "variable name");
            const std::string& lit = words[4].text;
            if (v.kind == ValueKind::Bool) {
                if (lit == "true")
                    v.initial = Value::of_bool(true);
                else if (lit == "false")
                    v.initial = Value::of_bool(false);
                else
                    throw SpecError("boolean initial value must be true|false",
                                    line.number, words[4].col);
            } else {
                try {
                    v.initial = Value::of_int(std::stoll(lit));
                } catch (const std::exception&) {
                    throw SpecError("bad integer literal '" + lit + "'",
                                    line.number, words[4].col);
                }
            }
            d.vars.push_back(std::move(v));
        } else if (head == "states") {
            for (std::size_t i = 1; i < words.size(); ++i)
                d.states.insert(
                    require_name(words[i], line.number, "state name"));
        } else if (head == "initial") {
            if (saw_initial || arg_count != 1)
                throw SpecError("'initial' takes exactly one state",
                                line.number, words[0].col);
            d.initial = require_name(words[1], line.number, "state name");
            saw_initial = true;
        } else if (head == "bad") {
            for (std::size_t i = 1; i < words.size(); ++i)
                d.bad.insert(require_name(words[i], line.number, "state name"));
        } else if (head == "trans") {
            if (arg_count < 5 || words[2].text != "->" || words[4].text != "on")
                throw SpecError(
                    "expected 'trans <q> -> <q2> on <event> [if ...] [do ...]'",
                    line.number, words[0].col);
            Transition tr;
            tr.source = require_name(words[1], line.number, "state name");
            tr.target = require_name(words[3], line.number, "state name");
            tr.guard = make_bool(true);

            bool star = words[5].text == "*";
            if (!star)
                tr.event = require_name(words[5], line.number, "event name");

            // Find optional `if`/`do` sections by word position, then hand
            // the raw substrings to the expression parser so that error
            // columns line up.
            std::size_t if_idx = 0, do_idx = 0;
            for (std::size_t i = 6; i < words.size(); ++i) {
                if (words[i].text == "if" && if_idx == 0 && do_idx == 0)
                    if_idx = i;
                if (words[i].text == "do" && do_idx == 0) do_idx = i;
            }
            if (words.size() > 6 && if_idx != 6 && do_idx != 6)
                throw SpecError("expected 'if' or 'do' after the event",
                                line.number, words[6].col);
            auto slice = [&](std::size_t from_word, std::size_t to_word) {
                int begin = words[from_word].col + 2; // past "if"/"do"
                int end = to_word < words.size()
                              ? words[to_word].col - 1
                              : static_cast<int>(line.text.size());
                return std::pair<std::string, int>(
                    line.text.substr(begin, end - begin), begin + 1);
            };
            if (if_idx != 0) {
                auto [src, col] =
                    slice(if_idx, do_idx != 0 ? do_idx : words.size());
                tr.guard = parse_expr(src, line.number, col);
            }
            if (do_idx != 0) {
                auto [src, col] = slice(do_idx, words.size());
                tr.action = parse_action(src, line.number, col);
            }
            if (star) {
                if (if_idx != 0 || do_idx != 0)
                    throw SpecError(
                        "'*' transitions cannot carry a guard or action",
                        line.number, words[5].col);
                stars.push_back({tr.source, tr.target, line.number});
            } else {
                d.transitions.push_back(std::move(tr));
                trans_lines.push_back(line.number);
            }
        } else {
            throw SpecError("unknown directive '" + head + "'", line.number,
                            words[0].col);
        }
    }

    if (!saw_date) throw SpecError("empty input: missing 'date' line");
    if (!d.states.empty() && !saw_initial)
        throw SpecError("missing 'initial' line");

    // Star expansion, two-phase: coverage is read off the explicit
    // transitions only, so overlapping stars expand to conflicting
    // duplicates and are rejected below rather than racing each other.
    std::vector<std::pair<Transition, int>> expanded;
    for (const auto& st : stars) {
        if (!d.states.count(st.source) || !d.states.count(st.target))
            throw SpecError("'*' transition references undeclared state",
                            st.line, 1);
        for (const auto& e : d.alphabet) {
            bool covered = false;
            for (const auto& tr : d.transitions) {
                if (tr.source == st.source && tr.event == e) {
                    covered = true;
                    break;
                }
            }
            if (!covered)
                expanded.push_back(
                    {{st.source, e, make_bool(true), Action{}, st.target},
                     st.line});
        }
    }
    std::vector<std::pair<Transition, int>> positioned;
    for (std::size_t i = 0; i < d.transitions.size(); ++i)
        positioned.push_back({d.transitions[i], trans_lines[i]});
    positioned.insert(positioned.end(), expanded.begin(), expanded.end());
    for (const auto& [tr, line] : expanded) d.transitions.push_back(tr);

    // Per-transition checks with source positions.
    TypeEnv env = d.type_env();
    std::map<std::string, std::pair<Transition, int>> seen;
    for (const auto& [tr, line] : positioned) {
        if (!d.states.count(tr.source))
            throw SpecError("transition source '" + tr.source +
                            "' not declared", line, 1);
        if (!d.states.count(tr.target))
            throw SpecError("transition target '" + tr.target +
                            "' not declared", line, 1);
        if (!d.alphabet.count(tr.event))
            throw SpecError("transition event '" + tr.event +
                            "' not in alphabet", line, 1);
        try {
            if (typecheck(tr.guard, env) != ValueKind::Bool)
                throw SpecError("guard is not boolean");
            typecheck(tr.action, env);
        } catch (const SpecError& e) {
            throw SpecError(e.message(), line, 1);
        }
        std::string key =
            tr.source + "|" + tr.event + "|" + to_string(tr.guard);
        auto [it, inserted] = seen.emplace(key, std::make_pair(tr, line));
        if (!inserted && !(it->second.first == tr))
            throw SpecError("duplicate transition from '" + tr.source +
                            "' on '" + tr.event + "' with guard '" +
                            to_string(tr.guard) + "'", line, 1);
    }

    d.sort_transitions();
    try {
        d.validate();
    } catch (const SpecError& e) {
        if (e.line() > 0) throw;
        throw SpecError(e.message(), 1, 1);
    }
    return d;
}

std::string print_date(const DateSpec& d) {
    std::ostringstream out;
    out << "date " << d.name << "\n";
    if (!d.param.empty()) out << "param " << d.param << "\n";
    out << "alphabet";
    for (const auto& e : d.alphabet) out << " " << e;
    out << "\n";
    for (const auto& v : d.vars) {
        out << "var " << to_string(v.kind) << " " << v.name << " = "
            << to_string(v.initial) << "\n";
    }
    out << "states";
    for (const auto& q : d.states) out << " " << q;
    out << "\n";
    if (!d.empty()) out << "initial " << d.initial << "\n";
    if (!d.bad.empty()) {
        out << "bad";
        for (const auto& q : d.bad) out << " " << q;
        out << "\n";
    }
    DateSpec sorted = d;
    sorted.sort_transitions();
    for (const auto& tr : sorted.transitions) {
        out << "trans " << tr.source << " -> " << tr.target << " on "
            << tr.event;
        bool trivially_true =
            tr.guard->op == ExprOp::BoolLit && tr.guard->bool_val;
        if (!trivially_true) out << " if " << to_string(tr.guard);
        if (!tr.action.is_skip()) out << " do " << to_string(tr.action);
        out << "\n";
    }
    return out.str();
}

namespace {

void parse_pairs(const std::vector<Word>& words, int line,
                 std::vector<IdPair>& out) {
    if ((words.size() - 1) % 2 != 0)
        throw SpecError("alias pairs need an even number of identifiers", line,
                        words[0].col);
    for (std::size_t i = 1; i + 1 < words.size(); i += 2) {
        out.push_back({require_name(words[i], line, "identifier"),
                       require_name(words[i + 1], line, "identifier")});
    }
}

} // namespace

ProgramModel parse_program(const std::string& text) {
    ProgramModel p;
    std::vector<IdPair> must_pairs, may_pairs, not_may_pairs;
    bool saw_program = false, saw_entry = false;

    for (const auto& line : split_lines(text)) {
        std::vector<Word> words = split_words(line.text);
        const std::string& head = words[0].text;
        auto arg_count = words.size() - 1;

        if (!saw_program && head != "program")
            throw SpecError("expected 'program <name>' as the first directive",
                            line.number, words[0].col);

        if (head == "program") {
            if (saw_program || arg_count != 1)
                throw SpecError("'program' takes exactly one name",
                                line.number, words[0].col);
            p.name = require_name(words[1], line.number, "program name");
            saw_program = true;
        } else if (head == "ids") {
            for (std::size_t i = 1; i < words.size(); ++i)
                p.ids.insert(
                    require_name(words[i], line.number, "identifier"));
        } else if (head == "must") {
            parse_pairs(words, line.number, must_pairs);
        } else if (head == "may") {
            parse_pairs(words, line.number, may_pairs);
        } else if (head == "notmay") {
            parse_pairs(words, line.number, not_may_pairs);
        } else if (head == "nodes") {
            for (std::size_t i = 1; i < words.size(); ++i)
                p.nodes.insert(require_name(words[i], line.number, "node"));
        } else if (head == "entry") {
            if (saw_entry || arg_count != 1)
                throw SpecError("'entry' takes exactly one node", line.number,
                                words[0].col);
            p.entry = require_name(words[1], line.number, "node");
            saw_entry = true;
        } else if (head == "edge") {
            if (arg_count != 5 || words[2].text != "->" ||
                words[4].text != ":")
                throw SpecError("expected 'edge <n> -> <n2> : <id>.<event>|eps'",
                                line.number, words[0].col);
            ProgramModel::Edge e;
            e.from = require_name(words[1], line.number, "node");
            e.to = require_name(words[3], line.number, "node");
            const std::string& label = words[5].text;
            if (label == "eps") {
                e.label = EdgeLabel::silent();
            } else {
                std::size_t dot = label.find('.');
                if (dot == std::string::npos)
                    throw SpecError("edge label must be <id>.<event> or eps",
                                    line.number, words[5].col);
                std::string id = label.substr(0, dot);
                std::string ev = label.substr(dot + 1);
                if (!is_valid_name(id) || !is_valid_name(ev))
                    throw SpecError("bad edge label '" + label + "'",
                                    line.number, words[5].col);
                e.label = EdgeLabel::of(id, ev);
            }
            p.edges.push_back(std::move(e));
        } else {
            throw SpecError("unknown directive '" + head + "'", line.number,
                            words[0].col);
        }
    }

    if (!saw_program) throw SpecError("empty input: missing 'program' line");
    if (!saw_entry) throw SpecError("missing 'entry' line");

    p.aliases = close_relations(p.ids, must_pairs, may_pairs, not_may_pairs);
    p.sort_edges();
    p.validate();
    return p;
}

std::string print_program(const ProgramModel& p) {
    std::ostringstream out;
    out << "program " << p.name << "\n";
    if (!p.ids.empty()) {
        out << "ids";
        for (const auto& id : p.ids) out << " " << id;
        out << "\n";
    }
    for (const auto& [a, b] : p.aliases.must) {
        if (a != b) out << "must " << a << " " << b << "\n";
    }
    for (const auto& [a, b] : p.aliases.may) {
        if (a != b && !p.aliases.must.count({a, b}))
            out << "may " << a << " " << b << "\n";
    }
    out << "nodes";
    for (const auto& n : p.nodes) out << " " << n;
    out << "\n";
    out << "entry " << p.entry << "\n";
    ProgramModel sorted = p;
    sorted.sort_edges();
    for (const auto& e : sorted.edges) {
        out << "edge " << e.from << " -> " << e.to << " : "
            << to_string(e.label) << "\n";
    }
    return out.str();
}

ParamTrace parse_param_trace(const std::string& text) {
    ParamTrace out;
    for (const auto& line : split_lines(text)) {
        std::vector<Word> words = split_words(line.text);
        if (words.size() != 2)
            throw SpecError("expected '<id> <event>' per line", line.number,
                            words[0].col);
        out.push_back({require_name(words[0], line.number, "identifier"),
                       require_name(words[1], line.number, "event name")});
    }
    return out;
}

GroundTrace parse_ground_trace(const std::string& text) {
    GroundTrace out;
    for (const auto& line : split_lines(text)) {
        std::vector<Word> words = split_words(line.text);
        if (words.size() != 1)
            throw SpecError("expected one event per line", line.number,
                            words[0].col);
        out.push_back(require_name(words[0], line.number, "event name"));
    }
    return out;
}

std::string print_param_trace(const ParamTrace& t) {
    std::ostringstream out;
    for (const auto& [id, ev] : t) out << id << " " << ev << "\n";
    return out.str();
}

SilencedSet parse_silenced(const std::string& text) {
    SilencedSet out;
    for (const auto& line : split_lines(text)) {
        std::vector<Word> words = split_words(line.text);
        if (words.size() != 2)
            throw SpecError("expected '<id> <event>' per line", line.number,
                            words[0].col);
        out.insert({require_name(words[0], line.number, "identifier"),
                    require_name(words[1], line.number, "event name")});
    }
    return out;
}

std::string print_silenced(const SilencedSet& s) {
    std::ostringstream out;
    for (const auto& [id, ev] : s) out << id << " " << ev << "\n";
    return out.str();
}

std::string print_report(const ResidualReport& r) {
    std::ostringstream out;
    out << "level " << r.level << "\n";
    out << "removed_transitions " << r.removed_transitions.size() << "\n";
    out << "removed_states " << r.removed_states << "\n";
    out << "silenced_pairs " << r.silenced.size() << "\n";
    out << "statically_satisfied "
        << (r.statically_satisfied ? "true" : "false") << "\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError("cannot write '" + path + "'");
    out << content;
}

} // namespace residua
