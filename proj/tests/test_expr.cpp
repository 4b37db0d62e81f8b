#include <doctest.h>

#include <functional>
#include <limits>
#include <random>

#include "residua/expr.hpp"

using namespace residua;

namespace {

VarState vars(std::initializer_list<std::pair<std::string, std::int64_t>> vs) {
    VarState s;
    for (const auto& [name, value] : vs)
        s.values[name] = Value::of_int(value);
    return s;
}

} // namespace

TEST_CASE("guard evaluation examples") {
    // Constant guard holds everywhere.
    CHECK(eval(parse_expr("true"), vars({{"x", 7}})).b);

    // Two transfers performed, threshold of three not reached.
    CHECK_FALSE(
        eval(parse_expr("transferCount >= 3"), vars({{"transferCount", 2}})).b);

    CHECK_FALSE(
        eval(parse_expr("transferCount < 3"), vars({{"transferCount", 3}})).b);
}

TEST_CASE("action application examples") {
    VarState s = vars({{"x", 5}});
    CHECK(apply_action(parse_action("skip"), s) == s);

    VarState t = vars({{"transferCount", 0}});
    VarState t2 =
        apply_action(parse_action("transferCount := transferCount + 1"), t);
    CHECK(t2.values.at("transferCount") == Value::of_int(1));
    CHECK(t.values.at("transferCount") == Value::of_int(0)); // input unchanged

    // Left-to-right: y sees the new x.
    VarState u = apply_action(parse_action("x := 1; y := x + 1"),
                              vars({{"x", 0}, {"y", 0}}));
    CHECK(u.values.at("x") == Value::of_int(1));
    CHECK(u.values.at("y") == Value::of_int(2));
}

TEST_CASE("precedence and parenthesised printing") {
    CHECK(eval(parse_expr("2 + 3 * 4"), {}).i == 14);
    CHECK(eval(parse_expr("(2 + 3) * 4"), {}).i == 20);
    CHECK(to_string(parse_expr("(2 + 3) * 4")) == "(2 + 3) * 4");
    CHECK(to_string(parse_expr("2 + 3 * 4")) == "2 + 3 * 4");
    CHECK(to_string(parse_expr("not (a or b)")) == "not (a or b)");
    CHECK(to_string(parse_expr("a - (b - c)")) == "a - (b - c)");
    CHECK(to_string(parse_expr("a - b - c")) == "a - b - c");
    CHECK(eval(parse_expr("not x < 3"), vars({{"x", 5}})).b); // not (x < 3)
}

TEST_CASE("constant folding is literal-only") {
    CHECK(is_literally_true(parse_expr("1 < 2")));
    CHECK(is_literally_false(parse_expr("2 < 1")));
    CHECK(is_literally_true(parse_expr("true and (3 >= 2)")));
    // A variable blocks folding even when the value could not matter.
    CHECK_FALSE(is_literally_true(parse_expr("x >= 0 or true or x < 0")));
    CHECK_FALSE(is_literally_false(parse_expr("x < 0 and false")));
}

TEST_CASE("type checking rejects bad expressions at load time") {
    TypeEnv env = {{"n", ValueKind::Int}, {"b", ValueKind::Bool}};
    CHECK(typecheck(parse_expr("n < 3 and b"), env) == ValueKind::Bool);
    CHECK_THROWS_AS(typecheck(parse_expr("missing < 3"), env), SpecError);
    CHECK_THROWS_AS(typecheck(parse_expr("b + 1"), env), SpecError);
    CHECK_THROWS_AS(typecheck(parse_expr("n and b"), env), SpecError);
    CHECK_THROWS_AS(typecheck(parse_expr("n == b"), env), SpecError);
    Action a = parse_action("n := b");
    CHECK_THROWS_AS(typecheck(a, env), SpecError);
    Action undeclared = parse_action("ghost := 1");
    CHECK_THROWS_AS(typecheck(undeclared, env), SpecError);
}

TEST_CASE("integer arithmetic wraps at 64 bits") {
    std::int64_t maxv = std::numeric_limits<std::int64_t>::max();
    VarState s;
    s.values["m"] = Value::of_int(maxv);
    CHECK(eval(parse_expr("m + 1"), s).i ==
          std::numeric_limits<std::int64_t>::min());
    s.values["m"] = Value::of_int(std::numeric_limits<std::int64_t>::min());
    CHECK(eval(parse_expr("-m"), s).i ==
          std::numeric_limits<std::int64_t>::min());
}

TEST_CASE("parse/print round trip on random expressions") {
    std::mt19937_64 rng(7);
    TypeEnv env = {{"x", ValueKind::Int}, {"y", ValueKind::Int}};

    std::function<Expr(int)> gen_int = [&](int depth) -> Expr {
        if (depth == 0 || rng() % 3 == 0) {
            switch (rng() % 3) {
            case 0: return make_int(static_cast<std::int64_t>(rng() % 10));
            case 1: return make_var("x");
            default: return make_var("y");
            }
        }
        ExprOp ops[] = {ExprOp::Add, ExprOp::Sub, ExprOp::Mul, ExprOp::Neg};
        ExprOp op = ops[rng() % 4];
        if (op == ExprOp::Neg) return make_unary(op, gen_int(depth - 1));
        return make_binary(op, gen_int(depth - 1), gen_int(depth - 1));
    };
    std::function<Expr(int)> gen_bool = [&](int depth) -> Expr {
        if (depth == 0 || rng() % 4 == 0) {
            ExprOp cmps[] = {ExprOp::Lt, ExprOp::Le, ExprOp::Eq,
                             ExprOp::Ne, ExprOp::Ge, ExprOp::Gt};
            return make_binary(cmps[rng() % 6], gen_int(1), gen_int(1));
        }
        switch (rng() % 4) {
        case 0: return make_bool(rng() % 2 == 0);
        case 1: return make_unary(ExprOp::Not, gen_bool(depth - 1));
        case 2:
            return make_binary(ExprOp::And, gen_bool(depth - 1),
                               gen_bool(depth - 1));
        default:
            return make_binary(ExprOp::Or, gen_bool(depth - 1),
                               gen_bool(depth - 1));
        }
    };

    for (int i = 0; i < 300; ++i) {
        Expr e = gen_bool(3);
        Expr reparsed = parse_expr(to_string(e));
        CAPTURE(to_string(e));
        CHECK(expr_equal(e, reparsed));
        CHECK(typecheck(reparsed, env) == ValueKind::Bool);
        VarState s = vars({{"x", static_cast<std::int64_t>(rng() % 7)},
                           {"y", static_cast<std::int64_t>(rng() % 7)}});
        CHECK(eval(e, s) == eval(reparsed, s));
    }
}

TEST_CASE("positioned parse errors") {
    try {
        parse_expr("x <", 12, 10);
        FAIL("expected SpecError");
    } catch (const SpecError& e) {
        CHECK(e.line() == 12);
        CHECK(e.column() >= 10);
    }
    CHECK_THROWS_AS(parse_expr("do < 3"), SpecError); // reserved word
    CHECK_THROWS_AS(parse_expr("1 ++ 2"), SpecError);
    CHECK_THROWS_AS(parse_expr("(1 + 2"), SpecError);
}
