#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "residua/errors.hpp"

namespace residua {

enum class ValueKind { Int, Bool };

/// A monitoring-variable value: 64-bit signed integer or boolean.
/// Integer arithmetic wraps in two's complement.
struct Value {
    ValueKind kind = ValueKind::Int;
    std::int64_t i = 0;
    bool b = false;

    static Value of_int(std::int64_t v) { return {ValueKind::Int, v, false}; }
    static Value of_bool(bool v) { return {ValueKind::Bool, 0, v}; }

    bool operator==(const Value& o) const {
        return kind == o.kind && (kind == ValueKind::Int ? i == o.i : b == o.b);
    }
    bool operator!=(const Value& o) const { return !(*this == o); }
};

std::string to_string(const Value& v);
const char* to_string(ValueKind k);

/// Valuation of the declared monitoring variables.
struct VarState {
    std::map<std::string, Value> values;

    bool operator==(const VarState& o) const { return values == o.values; }
    bool operator!=(const VarState& o) const { return !(*this == o); }
};

std::string to_string(const VarState& s);

enum class ExprOp {
    IntLit,
    BoolLit,
    Var,
    Neg,   // unary minus
    Add,
    Sub,
    Mul,
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
    Not,
    And,
    Or,
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

/// Immutable expression tree. Shared freely; never mutated after build.
struct ExprNode {
    ExprOp op;
    std::int64_t int_val = 0;
    bool bool_val = false;
    std::string var;
    std::vector<Expr> args;
};

Expr make_int(std::int64_t v);
Expr make_bool(bool v);
Expr make_var(std::string name);
Expr make_unary(ExprOp op, Expr a);
Expr make_binary(ExprOp op, Expr a, Expr b);

/// Variable name -> kind, used for static type checks.
using TypeEnv = std::map<std::string, ValueKind>;

/// Type of `e` under `env`; throws SpecError on unbound names or kind
/// mismatches. Load-time only: a checked expression never fails at
/// evaluation time.
ValueKind typecheck(const Expr& e, const TypeEnv& env);

/// Evaluate a checked expression. Total and side-effect free.
Value eval(const Expr& e, const VarState& state);

/// Constant-fold literal-only subexpressions (1 < 2 becomes true).
/// No algebraic identities and no satisfiability reasoning.
Expr fold(const Expr& e);

bool is_literally_true(const Expr& e);
bool is_literally_false(const Expr& e);

/// Canonical printing; parse(print(e)) reproduces the same tree.
std::string to_string(const Expr& e);

/// Syntactic equality of expression trees.
bool expr_equal(const Expr& a, const Expr& b);

/// Parse an expression. `line`/`col_base` seed error positions.
Expr parse_expr(const std::string& text, int line = 0, int col_base = 1);

/// One `var := expr` step.
struct Assign {
    std::string var;
    Expr rhs;
};

/// A (possibly empty) assignment sequence, applied left to right.
/// The empty sequence is `skip`.
struct Action {
    std::vector<Assign> assigns;

    bool is_skip() const { return assigns.empty(); }
};

void typecheck(const Action& a, const TypeEnv& env);
VarState apply_action(const Action& a, const VarState& state);
std::string to_string(const Action& a);
bool action_equal(const Action& a, const Action& b);

/// Parse `skip` or `v := e{; v := e}`.
Action parse_action(const std::string& text, int line = 0, int col_base = 1);

/// True for tokens that name things (events, states, variables,
/// identifiers, nodes): [A-Za-z_][A-Za-z0-9_]* and not a keyword.
bool is_valid_name(const std::string& token);

} // namespace residua
