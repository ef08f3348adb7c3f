// event.hpp — event-type inventory and the ES tree: transitions with a
// process and a resulting state, processes with subevent sequences, and
// predicate-form (LCS') annotations on every node.
//
// Values are immutable once built; construction and rendering are pure.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lexis/lcs.hpp"

namespace lexis {

// ── event types ─────────────────────────────────────────────────────────────

enum class EventKind { S, P, T };
enum class TransitionSubtype { Achievement, Accomplishment };

struct EventType {
    EventKind kind = EventKind::S;
    std::optional<TransitionSubtype> subtype;  // only valid when kind == T

    static EventType state() { return {EventKind::S, {}}; }
    static EventType process() { return {EventKind::P, {}}; }
    static EventType transition(std::optional<TransitionSubtype> sub = {}) {
        return {EventKind::T, sub};
    }

    std::string to_string() const;  // "S", "P", "T", "T_ACH", "T_ACC"
    static EventType from_string(const std::string& text);  // throws invalid_argument
    bool operator==(const EventType&) const = default;
};

// ── event nodes ─────────────────────────────────────────────────────────────

// A transition node has exactly two children: a process and the resulting
// state.  S nodes and leaf P nodes have no children.  Every negated atom in
// an S node has a positive counterpart in the sibling P node.
struct EventNode {
    EventType etype;
    std::vector<PredicateAtom> predicates;
    std::vector<EventNode> children;
    std::optional<int> subevent_count;  // P nodes drawn as e1.....en

    const EventNode& process_child() const { return children.at(0); }
    const EventNode& state_child() const { return children.at(1); }
};

struct EventModelError : std::runtime_error {
    enum class Code { EmptyResultState, EmptyPredicates, MalformedNode };
    Code code;
    EventModelError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

// Builds a T node.  The P child carries process and persisted predicates;
// the S child negates the opposed process predicates (everything except
// "act" atoms and persisted atoms) and adds the result and persisted atoms.
EventNode build_transition(const std::vector<PredicateAtom>& process_preds,
                           const std::vector<PredicateAtom>& result_state_preds,
                           const std::vector<PredicateAtom>& persisted_preds,
                           std::optional<TransitionSubtype> subtype = {});

// Builds a leaf P node with n subevents (n >= 1; n == 1 renders without the
// e1.....en branch).
EventNode build_process(const std::vector<PredicateAtom>& preds, int n_subevents);

PredicateAtom negate(PredicateAtom atom);

// Checks the structural invariants above; returns a description of the first
// violation, or nothing when the node is well-formed.
std::optional<std::string> check_node(const EventNode& node);

// Deterministic ASCII tree: T/P/S labels, slash-backslash branches,
// predicates joined by " & ", negations printed on the line above the
// result atoms of an S node.
std::string render_ascii(const EventNode& node);

// ── analysis bundle ─────────────────────────────────────────────────────────

// The ES / LCS' / LCS triple for one clause, plus how it was derived.
struct Analysis {
    EventNode es;
    TermPtr lcs;  // ground
    std::vector<PredicateAtom> lcs_prime_process;
    std::vector<PredicateAtom> lcs_prime_state;  // empty for pure P events
    std::string template_id;
    std::map<std::string, std::string> bindings;  // template variable -> lexeme id
};

}  // namespace lexis
