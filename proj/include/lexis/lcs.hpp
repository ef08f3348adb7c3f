// lcs.hpp — the LCS term language: AST, parser, printer, normalizer,
// structural equality, and variable substitution.
//
// Concrete syntax (UTF-8, whitespace-insensitive between tokens):
//
//   expr     := disj
//   disj     := conj (":" RATIONAL)? ("|" conj (":" RATIONAL)?)*
//   conj     := seq ("&" seq)*
//   seq      := unit+                       shape rules below
//   unit     := "[" expr-or-shape "]" | "<" statename ">" | ident
//
// Shapes inside a bracket:
//   [t1 CAUSE t2]        -> Cause            (CAUSE is the only infix operator)
//   [OP rest...]         -> Apply(OP, rest)  rest parsed greedily as one expr;
//                                            [OP t <s>] pairs t with <s> first
//   [term <state>]       -> Attribution      (also [term [NOT <state>]])
//   [entity [OP ...]]    -> Agentive
//   [expr]               -> grouping
//
// Operator keywords are a closed set supplied by the caller (the lexicon's
// OPERATOR lines); bare identifiers are template variables when listed in
// ParseOptions::variables, ground entities otherwise.  "ARE" parses as a
// plural "IS".
//
// All values are immutable after construction; every function here is pure
// and safe for concurrent use.

#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lexis {

struct LcsTerm;
using TermPtr = std::shared_ptr<const LcsTerm>;

// ── term AST ────────────────────────────────────────────────────────────────

enum class TermKind {
    Var,          // free template variable (x, y, z, a, b, p)
    Entity,       // ground referent (m, dress, carpet^1)
    State,        // angle-bracket state constant (<mended>)
    Attribution,  // [dress <mended>]
    Apply,        // [BECOME t], [EVERY t], [NOT <s>], ...
    Cause,        // [x CAUSE t]
    Agentive,     // [f [COMFORT t]]
    And,          // t1 & t2 & ...
    Or            // [t1 | t2], optionally weighted [t1 : 0.8 | t2 : 0.2]
};

struct LcsTerm {
    TermKind kind;
    std::string name;               // Var/Entity/State name, Apply operator
    std::vector<TermPtr> children;  // subterms, ordered
    std::vector<double> weights;    // Or only; empty = unweighted
    bool plural = false;            // Apply IS parsed from "ARE"

    // Attribution: children = {subject, state}; Cause: {agent, effect};
    // Agentive: {agent, action}; Apply: {argument}.
    const TermPtr& subject() const { return children[0]; }
    const TermPtr& state() const { return children[1]; }
    const TermPtr& agent() const { return children[0]; }
    const TermPtr& effect() const { return children[1]; }
    const TermPtr& action() const { return children[1]; }
    const TermPtr& argument() const { return children[0]; }
};

TermPtr make_var(std::string name);
TermPtr make_entity(std::string name);
TermPtr make_state(std::string name);
TermPtr make_attribution(TermPtr subject, TermPtr state);
TermPtr make_apply(std::string op, TermPtr argument, bool plural = false);
TermPtr make_cause(TermPtr agent, TermPtr effect);
TermPtr make_agentive(TermPtr agent, TermPtr action);
TermPtr make_conjunction(std::vector<TermPtr> conjuncts);
TermPtr make_disjunction(std::vector<TermPtr> disjuncts,
                         std::vector<double> weights = {});

// True for <state> and [NOT <state>] forms; these sit in the state position
// of an Attribution.
bool is_state_like(const TermPtr& term);

// ── predicate atoms (the LCS' layer) ────────────────────────────────────────

struct PredicateAtom {
    bool negated = false;
    std::string predicate;
    std::vector<std::string> args;  // length 1 or 2

    std::string to_string() const;  // "act(m, dress)", "!torn(dress)"
    bool operator==(const PredicateAtom&) const = default;
};

// ── errors ──────────────────────────────────────────────────────────────────

struct LcsParseError : std::runtime_error {
    enum class Code {
        UnbalancedBrackets,
        UnknownToken,
        EmptyExpression,
        MixedWeights,
        WeightSum,
        BadShape
    };
    Code code;
    std::size_t position;  // byte offset into the input text

    LcsParseError(Code c, std::size_t pos, const std::string& msg)
        : std::runtime_error(msg), code(c), position(pos) {}
};

struct SubstituteError : std::runtime_error {
    enum class Code { UnboundVariable, UnknownBinding };
    Code code;
    std::string variable;

    SubstituteError(Code c, std::string var, const std::string& msg)
        : std::runtime_error(msg), code(c), variable(std::move(var)) {}
};

// ── operations ──────────────────────────────────────────────────────────────

// The seed operator keywords; a lexicon may extend the set.
const std::set<std::string>& default_operators();

struct ParseOptions {
    std::set<std::string> variables;  // idents parsed as Var instead of Entity
    std::set<std::string> operators = default_operators();
};

// Names a template may bind: the variable alphabet of the shipped templates.
const std::set<std::string>& template_variables();

// Parses concrete syntax into a normalized term.  Throws LcsParseError.
TermPtr parse(std::string_view text, const ParseOptions& options = {});

// Canonical text; parse(print(t)) is structurally equal to normalize(t).
std::string print(const TermPtr& term);

// Flattens nested And/Or and removes double negation.  Idempotent.
TermPtr normalize(const TermPtr& term);

// Structural equality after normalization.  And/Or are order-sensitive;
// Or weights compare within 1e-9.
bool equal(const TermPtr& a, const TermPtr& b);

enum class ExtraBindingPolicy { Ignore, Error };

// Replaces every Var with an Entity; the result is ground.
// Throws SubstituteError{UnboundVariable} for a free variable without a
// binding, and {UnknownBinding} for an unused binding under Error policy.
TermPtr substitute(const TermPtr& term,
                   const std::map<std::string, std::string>& bindings,
                   ExtraBindingPolicy policy = ExtraBindingPolicy::Ignore);

std::set<std::string> free_vars(const TermPtr& term);

// Formats an Or weight the way print() does ("0.8", "0.25").
std::string format_weight(double w);

}  // namespace lexis
