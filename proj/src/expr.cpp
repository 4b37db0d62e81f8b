#include "residua/expr.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace residua {

namespace {

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                     static_cast<std::uint64_t>(b));
}

std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) -
                                     static_cast<std::uint64_t>(b));
}

std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                     static_cast<std::uint64_t>(b));
}

std::int64_t wrap_neg(std::int64_t a) {
    return static_cast<std::int64_t>(-static_cast<std::uint64_t>(a));
}

const std::array<const char*, 16> kKeywords = {
    "or",  "and",   "not",  "true",    "false", "skip", "if",    "do",
    "on",  "eps",   "trans", "date",   "param", "var",  "states", "edge",
};

} // namespace

bool is_valid_name(const std::string& token) {
    if (token.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(token[0])) && token[0] != '_')
        return false;
    for (char c : token) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    }
    for (const char* kw : kKeywords) {
        if (token == kw) return false;
    }
    return true;
}

std::string to_string(const Value& v) {
    if (v.kind == ValueKind::Int) return std::to_string(v.i);
    return v.b ? "true" : "false";
}

const char* to_string(ValueKind k) {
    return k == ValueKind::Int ? "int" : "bool";
}

std::string to_string(const VarState& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [name, value] : s.values) {
        if (!first) out += ", ";
        first = false;
        out += name + ": " + to_string(value);
    }
    out += "}";
    return out;
}

Expr make_int(std::int64_t v) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::IntLit;
    n->int_val = v;
    return n;
}

Expr make_bool(bool v) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::BoolLit;
    n->bool_val = v;
    return n;
}

Expr make_var(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Var;
    n->var = std::move(name);
    return n;
}

Expr make_unary(ExprOp op, Expr a) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->args = {std::move(a)};
    return n;
}

Expr make_binary(ExprOp op, Expr a, Expr b) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    return n;
}

ValueKind typecheck(const Expr& e, const TypeEnv& env) {
    switch (e->op) {
    case ExprOp::IntLit:
        return ValueKind::Int;
    case ExprOp::BoolLit:
        return ValueKind::Bool;
    case ExprOp::Var: {
        auto it = env.find(e->var);
        if (it == env.end())
            throw SpecError("unbound variable '" + e->var + "'");
        return it->second;
    }
    case ExprOp::Neg:
        if (typecheck(e->args[0], env) != ValueKind::Int)
            throw SpecError("operand of unary '-' must be int");
        return ValueKind::Int;
    case ExprOp::Add:
    case ExprOp::Sub:
    case ExprOp::Mul:
        if (typecheck(e->args[0], env) != ValueKind::Int ||
            typecheck(e->args[1], env) != ValueKind::Int)
            throw SpecError("arithmetic operands must be int");
        return ValueKind::Int;
    case ExprOp::Lt:
    case ExprOp::Le:
    case ExprOp::Ge:
    case ExprOp::Gt:
        if (typecheck(e->args[0], env) != ValueKind::Int ||
            typecheck(e->args[1], env) != ValueKind::Int)
            throw SpecError("comparison operands must be int");
        return ValueKind::Bool;
    case ExprOp::Eq:
    case ExprOp::Ne: {
        ValueKind l = typecheck(e->args[0], env);
        ValueKind r = typecheck(e->args[1], env);
        if (l != r)
            throw SpecError("equality operands must have the same type");
        return ValueKind::Bool;
    }
    case ExprOp::Not:
        if (typecheck(e->args[0], env) != ValueKind::Bool)
            throw SpecError("operand of 'not' must be bool");
        return ValueKind::Bool;
    case ExprOp::And:
    case ExprOp::Or:
        if (typecheck(e->args[0], env) != ValueKind::Bool ||
            typecheck(e->args[1], env) != ValueKind::Bool)
            throw SpecError("boolean operands required");
        return ValueKind::Bool;
    }
    throw SpecError("unreachable expression kind");
}

Value eval(const Expr& e, const VarState& state) {
    switch (e->op) {
    case ExprOp::IntLit:
        return Value::of_int(e->int_val);
    case ExprOp::BoolLit:
        return Value::of_bool(e->bool_val);
    case ExprOp::Var: {
        auto it = state.values.find(e->var);
        if (it == state.values.end())
            throw SpecError("unbound variable '" + e->var + "' at evaluation");
        return it->second;
    }
    case ExprOp::Neg:
        return Value::of_int(wrap_neg(eval(e->args[0], state).i));
    case ExprOp::Add:
        return Value::of_int(
            wrap_add(eval(e->args[0], state).i, eval(e->args[1], state).i));
    case ExprOp::Sub:
        return Value::of_int(
            wrap_sub(eval(e->args[0], state).i, eval(e->args[1], state).i));
    case ExprOp::Mul:
        return Value::of_int(
            wrap_mul(eval(e->args[0], state).i, eval(e->args[1], state).i));
    case ExprOp::Lt:
        return Value::of_bool(eval(e->args[0], state).i <
                              eval(e->args[1], state).i);
    case ExprOp::Le:
        return Value::of_bool(eval(e->args[0], state).i <=
                              eval(e->args[1], state).i);
    case ExprOp::Ge:
        return Value::of_bool(eval(e->args[0], state).i >=
                              eval(e->args[1], state).i);
    case ExprOp::Gt:
        return Value::of_bool(eval(e->args[0], state).i >
                              eval(e->args[1], state).i);
    case ExprOp::Eq:
        return Value::of_bool(eval(e->args[0], state) ==
                              eval(e->args[1], state));
    case ExprOp::Ne:
        return Value::of_bool(eval(e->args[0], state) !=
                              eval(e->args[1], state));
    case ExprOp::Not:
        return Value::of_bool(!eval(e->args[0], state).b);
    case ExprOp::And:
        return Value::of_bool(eval(e->args[0], state).b &&
                              eval(e->args[1], state).b);
    case ExprOp::Or:
        return Value::of_bool(eval(e->args[0], state).b ||
                              eval(e->args[1], state).b);
    }
    throw SpecError("unreachable expression kind");
}

namespace {

bool is_literal(const Expr& e) {
    return e->op == ExprOp::IntLit || e->op == ExprOp::BoolLit;
}

} // namespace

Expr fold(const Expr& e) {
    if (e->args.empty()) return e;
    std::vector<Expr> folded;
    folded.reserve(e->args.size());
    bool all_literal = true;
    bool changed = false;
    for (const auto& a : e->args) {
        Expr f = fold(a);
        changed = changed || f != a;
        all_literal = all_literal && is_literal(f);
        folded.push_back(std::move(f));
    }
    if (all_literal) {
        auto n = std::make_shared<ExprNode>(*e);
        n->args = folded;
        Value v = eval(n, VarState{});
        return v.kind == ValueKind::Int ? make_int(v.i) : make_bool(v.b);
    }
    if (!changed) return e;
    auto n = std::make_shared<ExprNode>(*e);
    n->args = std::move(folded);
    return n;
}

bool is_literally_true(const Expr& e) {
    Expr f = fold(e);
    return f->op == ExprOp::BoolLit && f->bool_val;
}

bool is_literally_false(const Expr& e) {
    Expr f = fold(e);
    return f->op == ExprOp::BoolLit && !f->bool_val;
}

namespace {

// Precedence levels, loosest first: or < and < not < cmp < add < mul < unary.
int precedence(ExprOp op) {
    switch (op) {
    case ExprOp::Or: return 1;
    case ExprOp::And: return 2;
    case ExprOp::Not: return 3;
    case ExprOp::Lt:
    case ExprOp::Le:
    case ExprOp::Eq:
    case ExprOp::Ne:
    case ExprOp::Ge:
    case ExprOp::Gt: return 4;
    case ExprOp::Add:
    case ExprOp::Sub: return 5;
    case ExprOp::Mul: return 6;
    case ExprOp::Neg: return 7;
    default: return 8;
    }
}

const char* op_token(ExprOp op) {
    switch (op) {
    case ExprOp::Or: return "or";
    case ExprOp::And: return "and";
    case ExprOp::Not: return "not";
    case ExprOp::Lt: return "<";
    case ExprOp::Le: return "<=";
    case ExprOp::Eq: return "==";
    case ExprOp::Ne: return "!=";
    case ExprOp::Ge: return ">=";
    case ExprOp::Gt: return ">";
    case ExprOp::Add: return "+";
    case ExprOp::Sub: return "-";
    case ExprOp::Mul: return "*";
    case ExprOp::Neg: return "-";
    default: return "?";
    }
}

// Prints with the minimal parentheses that survive a reparse: a child is
// wrapped iff its precedence is below what its position requires. Binary
// operators are left-associative; comparisons are non-associative.
void print_expr(const Expr& e, int min_prec, std::string& out) {
    switch (e->op) {
    case ExprOp::IntLit:
        out += std::to_string(e->int_val);
        return;
    case ExprOp::BoolLit:
        out += e->bool_val ? "true" : "false";
        return;
    case ExprOp::Var:
        out += e->var;
        return;
    default:
        break;
    }

    int prec = precedence(e->op);
    bool need_parens = prec < min_prec;
    if (need_parens) out += "(";
    if (e->op == ExprOp::Not) {
        out += "not ";
        print_expr(e->args[0], prec, out);
    } else if (e->op == ExprOp::Neg) {
        out += "-";
        print_expr(e->args[0], prec, out);
    } else if (prec == 4) { // comparisons: both sides must be additive
        print_expr(e->args[0], prec + 1, out);
        out += " ";
        out += op_token(e->op);
        out += " ";
        print_expr(e->args[1], prec + 1, out);
    } else {
        print_expr(e->args[0], prec, out);
        out += " ";
        out += op_token(e->op);
        out += " ";
        print_expr(e->args[1], prec + 1, out);
    }
    if (need_parens) out += ")";
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_expr(e, 0, out);
    return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a == b) return true;
    if (a->op != b->op) return false;
    switch (a->op) {
    case ExprOp::IntLit: return a->int_val == b->int_val;
    case ExprOp::BoolLit: return a->bool_val == b->bool_val;
    case ExprOp::Var: return a->var == b->var;
    default: break;
    }
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i) {
        if (!expr_equal(a->args[i], b->args[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Lexing and recursive-descent parsing
// ---------------------------------------------------------------------------

namespace {

enum class TokKind { Ident, Int, Op, End };

struct Token {
    TokKind kind;
    std::string text;
    int col;
};

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;
    int line;
    int col_base;

    explicit Lexer(const std::string& s, int line_, int col_base_)
        : src(s), line(line_), col_base(col_base_) {}

    [[noreturn]] void fail(const std::string& msg, int col) const {
        throw SpecError(msg, line, col);
    }

    int column() const { return col_base + static_cast<int>(pos); }

    Token next() {
        while (pos < src.size() &&
               std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
        int col = column();
        if (pos >= src.size()) return {TokKind::End, "", col};
        char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < src.size() &&
                   std::isdigit(static_cast<unsigned char>(src[pos])))
                ++pos;
            return {TokKind::Int, src.substr(start, pos - start), col};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                    src[pos] == '_'))
                ++pos;
            return {TokKind::Ident, src.substr(start, pos - start), col};
        }
        auto two = [&](char a, char b) {
            return c == a && pos + 1 < src.size() && src[pos + 1] == b;
        };
        if (two('<', '=') || two('>', '=') || two('=', '=') || two('!', '=') ||
            two(':', '=')) {
            pos += 2;
            return {TokKind::Op, src.substr(pos - 2, 2), col};
        }
        if (c == '<' || c == '>' || c == '=' || c == '+' || c == '-' ||
            c == '*' || c == '(' || c == ')' || c == ';') {
            ++pos;
            return {TokKind::Op, std::string(1, c), col};
        }
        fail(std::string("unexpected character '") + c + "'", col);
    }
};

struct Parser {
    Lexer lex;
    Token tok;

    Parser(const std::string& s, int line, int col_base)
        : lex(s, line, col_base) {
        tok = lex.next();
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw SpecError(msg, lex.line, tok.col);
    }

    void advance() { tok = lex.next(); }

    bool at_op(const char* t) const {
        return tok.kind == TokKind::Op && tok.text == t;
    }
    bool at_word(const char* t) const {
        return tok.kind == TokKind::Ident && tok.text == t;
    }

    Expr parse_or() {
        Expr l = parse_and();
        while (at_word("or")) {
            advance();
            l = make_binary(ExprOp::Or, l, parse_and());
        }
        return l;
    }

    Expr parse_and() {
        Expr l = parse_not();
        while (at_word("and")) {
            advance();
            l = make_binary(ExprOp::And, l, parse_not());
        }
        return l;
    }

    Expr parse_not() {
        if (at_word("not")) {
            advance();
            return make_unary(ExprOp::Not, parse_not());
        }
        return parse_cmp();
    }

    Expr parse_cmp() {
        Expr l = parse_add();
        ExprOp op;
        if (at_op("<")) op = ExprOp::Lt;
        else if (at_op("<=")) op = ExprOp::Le;
        else if (at_op("==") || at_op("=")) op = ExprOp::Eq;
        else if (at_op("!=")) op = ExprOp::Ne;
        else if (at_op(">=")) op = ExprOp::Ge;
        else if (at_op(">")) op = ExprOp::Gt;
        else return l;
        advance();
        return make_binary(op, l, parse_add());
    }

    Expr parse_add() {
        Expr l = parse_mul();
        while (at_op("+") || at_op("-")) {
            ExprOp op = at_op("+") ? ExprOp::Add : ExprOp::Sub;
            advance();
            l = make_binary(op, l, parse_mul());
        }
        return l;
    }

    Expr parse_mul() {
        Expr l = parse_unary();
        while (at_op("*")) {
            advance();
            l = make_binary(ExprOp::Mul, l, parse_unary());
        }
        return l;
    }

    Expr parse_unary() {
        if (at_op("-")) {
            advance();
            return make_unary(ExprOp::Neg, parse_unary());
        }
        return parse_atom();
    }

    Expr parse_atom() {
        if (tok.kind == TokKind::Int) {
            std::int64_t v;
            try {
                v = std::stoll(tok.text);
            } catch (const std::exception&) {
                fail("integer literal out of range");
            }
            advance();
            return make_int(v);
        }
        if (at_word("true")) {
            advance();
            return make_bool(true);
        }
        if (at_word("false")) {
            advance();
            return make_bool(false);
        }
        if (tok.kind == TokKind::Ident) {
            if (!is_valid_name(tok.text))
                fail("reserved word '" + tok.text + "' cannot name a variable");
            Expr v = make_var(tok.text);
            advance();
            return v;
        }
        if (at_op("(")) {
            advance();
            Expr inner = parse_or();
            if (!at_op(")")) fail("expected ')'");
            advance();
            return inner;
        }
        fail("expected expression");
    }

    Assign parse_assign() {
        if (tok.kind != TokKind::Ident || !is_valid_name(tok.text))
            fail("expected variable name in assignment");
        std::string name = tok.text;
        advance();
        if (!at_op(":=")) fail("expected ':=' in assignment");
        advance();
        return {std::move(name), parse_or()};
    }

    Action parse_action_body() {
        Action a;
        if (at_word("skip")) {
            advance();
            return a;
        }
        a.assigns.push_back(parse_assign());
        while (at_op(";")) {
            advance();
            a.assigns.push_back(parse_assign());
        }
        return a;
    }

    void expect_end(const char* what) {
        if (tok.kind != TokKind::End)
            fail(std::string("trailing input after ") + what);
    }
};

} // namespace

Expr parse_expr(const std::string& text, int line, int col_base) {
    Parser p(text, line, col_base);
    Expr e = p.parse_or();
    p.expect_end("expression");
    return e;
}

Action parse_action(const std::string& text, int line, int col_base) {
    Parser p(text, line, col_base);
    Action a = p.parse_action_body();
    p.expect_end("action");
    return a;
}

void typecheck(const Action& a, const TypeEnv& env) {
    for (const auto& as : a.assigns) {
        auto it = env.find(as.var);
        if (it == env.end())
            throw SpecError("assignment to undeclared variable '" + as.var +
                            "'");
        if (typecheck(as.rhs, env) != it->second)
            throw SpecError("assignment to '" + as.var +
                            "' has mismatched type");
    }
}

VarState apply_action(const Action& a, const VarState& state) {
    VarState out = state;
    for (const auto& as : a.assigns) {
        out.values[as.var] = eval(as.rhs, out);
    }
    return out;
}

std::string to_string(const Action& a) {
    if (a.is_skip()) return "skip";
    std::string out;
    for (std::size_t i = 0; i < a.assigns.size(); ++i) {
        if (i > 0) out += "; ";
        out += a.assigns[i].var + " := " + to_string(a.assigns[i].rhs);
    }
    return out;
}

bool action_equal(const Action& a, const Action& b) {
    if (a.assigns.size() != b.assigns.size()) return false;
    for (std::size_t i = 0; i < a.assigns.size(); ++i) {
        if (a.assigns[i].var != b.assigns[i].var) return false;
        if (!expr_equal(a.assigns[i].rhs, b.assigns[i].rhs)) return false;
    }
    return true;
}

} // namespace residua
