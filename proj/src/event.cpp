// event.cpp — ES construction and ASCII rendering.

#include "lexis/event.hpp"

#include <algorithm>
#include <stdexcept>

namespace lexis {

std::string EventType::to_string() const {
    switch (kind) {
        case EventKind::S: return "S";
        case EventKind::P: return "P";
        case EventKind::T:
            if (!subtype) return "T";
            return *subtype == TransitionSubtype::Achievement ? "T_ACH" : "T_ACC";
    }
    return "?";
}

EventType EventType::from_string(const std::string& text) {
    if (text == "S") return state();
    if (text == "P") return process();
    if (text == "T") return transition();
    if (text == "T_ACH") return transition(TransitionSubtype::Achievement);
    if (text == "T_ACC") return transition(TransitionSubtype::Accomplishment);
    throw std::invalid_argument("unknown event type '" + text + "'");
}

PredicateAtom negate(PredicateAtom atom) {
    atom.negated = !atom.negated;
    return atom;
}

namespace {

bool contains(const std::vector<PredicateAtom>& atoms, const PredicateAtom& a) {
    return std::find(atoms.begin(), atoms.end(), a) != atoms.end();
}

}  // namespace

EventNode build_transition(const std::vector<PredicateAtom>& process_preds,
                           const std::vector<PredicateAtom>& result_state_preds,
                           const std::vector<PredicateAtom>& persisted_preds,
                           std::optional<TransitionSubtype> subtype) {
    if (process_preds.empty())
        throw EventModelError(EventModelError::Code::EmptyPredicates,
                              "transition requires process predicates");
    if (result_state_preds.empty())
        throw EventModelError(EventModelError::Code::EmptyResultState,
                              "transition requires a result state");

    EventNode process;
    process.etype = EventType::process();
    process.predicates = process_preds;
    for (const auto& a : persisted_preds)
        if (!contains(process.predicates, a)) process.predicates.push_back(a);

    EventNode state;
    state.etype = EventType::state();
    // The culmination negates the opposed preconditions: every process
    // predicate except act() atoms and persisted properties.
    for (const auto& a : process_preds) {
        if (a.predicate == "act" || contains(persisted_preds, a)) continue;
        state.predicates.push_back(negate(a));
    }
    for (const auto& a : result_state_preds)
        if (!contains(state.predicates, a)) state.predicates.push_back(a);
    for (const auto& a : persisted_preds)
        if (!contains(state.predicates, a)) state.predicates.push_back(a);

    EventNode t;
    t.etype = EventType::transition(subtype);
    t.children.push_back(std::move(process));
    t.children.push_back(std::move(state));
    return t;
}

EventNode build_process(const std::vector<PredicateAtom>& preds, int n_subevents) {
    if (preds.empty())
        throw EventModelError(EventModelError::Code::EmptyPredicates,
                              "process requires predicates");
    if (n_subevents < 1)
        throw EventModelError(EventModelError::Code::MalformedNode,
                              "process requires at least one subevent");
    EventNode p;
    p.etype = EventType::process();
    p.predicates = preds;
    p.subevent_count = n_subevents;
    return p;
}

std::optional<std::string> check_node(const EventNode& node) {
    if (node.etype.subtype && node.etype.kind != EventKind::T)
        return "subtype on a non-transition node";
    switch (node.etype.kind) {
        case EventKind::T: {
            if (node.children.size() != 2) return "transition must have exactly two children";
            if (node.children[0].etype.kind != EventKind::P)
                return "first child of a transition must be a process";
            if (node.children[1].etype.kind != EventKind::S)
                return "second child of a transition must be a state";
            const auto& p = node.children[0];
            for (const auto& a : node.children[1].predicates) {
                if (!a.negated) continue;
                if (!contains(p.predicates, negate(a)))
                    return "state negates '" + a.to_string() +
                           "' without a positive counterpart in the process";
            }
            for (const auto& c : node.children)
                if (auto err = check_node(c)) return err;
            return std::nullopt;
        }
        case EventKind::P:
        case EventKind::S:
            if (!node.children.empty()) return "leaf node must not have children";
            return std::nullopt;
    }
    return std::nullopt;
}

// ── rendering ───────────────────────────────────────────────────────────────

namespace {

struct Block {
    std::vector<std::string> lines;
    std::size_t width = 0;
    std::size_t center = 0;  // column of the node label
};

std::string spaces(std::size_t n) { return std::string(n, ' '); }

std::string centered(const std::string& text, std::size_t width) {
    if (text.size() >= width) return text;
    return spaces((width - text.size()) / 2) + text;
}

std::string join_atoms(const std::vector<PredicateAtom>& atoms, bool negated) {
    std::string out;
    for (const auto& a : atoms) {
        if (a.negated != negated) continue;
        if (!out.empty()) out += " & ";
        out += a.to_string();
    }
    return out;
}

const char* kSubeventRow = "e1.....en";

Block state_block(const EventNode& node) {
    Block b;
    std::string negs = join_atoms(node.predicates, true);
    std::string rest = join_atoms(node.predicates, false);
    b.width = std::max({negs.size(), rest.size(), std::size_t{1}});
    b.center = b.width / 2;
    b.lines.push_back(centered("S", b.width));
    b.lines.push_back(centered("|", b.width));
    if (!negs.empty()) b.lines.push_back(centered(negs, b.width));
    if (!negs.empty() && !rest.empty()) b.lines.push_back(centered("|", b.width));
    if (!rest.empty()) b.lines.push_back(centered(rest, b.width));
    return b;
}

Block process_block(const EventNode& node) {
    Block b;
    std::string preds = join_atoms(node.predicates, false);
    std::string negs = join_atoms(node.predicates, true);
    if (!negs.empty()) preds = preds.empty() ? negs : negs + " & " + preds;
    bool branched = node.subevent_count.value_or(1) >= 2;
    b.width = std::max(preds.size(), std::string(kSubeventRow).size());
    b.center = b.width / 2;
    b.lines.push_back(centered("P", b.width));
    if (branched) {
        b.lines.push_back(centered("/ \\", b.width));
        b.lines.push_back(centered("/   \\", b.width));
        b.lines.push_back(centered(kSubeventRow, b.width));
        b.lines.push_back(centered("|", b.width));
    }
    b.lines.push_back(preds);
    return b;
}

std::string rstrip(std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

Block transition_block(const EventNode& node) {
    Block left = process_block(node.process_child());
    Block right = state_block(node.state_child());
    const std::size_t gap = 3;

    std::size_t lcol = left.center;
    std::size_t rcol = left.width + gap + right.center;
    std::size_t tcol = (lcol + rcol) / 2;
    std::size_t spread = rcol > lcol ? rcol - lcol : 2;
    std::size_t d1 = std::max<std::size_t>(1, spread / 6);
    std::size_t d2 = std::max<std::size_t>(d1 + 1, spread / 3);
    d1 = std::min(d1, tcol);
    d2 = std::min(d2, tcol);

    Block b;
    b.width = left.width + gap + right.width;
    b.center = tcol;
    b.lines.push_back(spaces(tcol) + "T");
    b.lines.push_back(spaces(tcol - d1) + "/" + spaces(2 * d1 - 1) + "\\");
    b.lines.push_back(spaces(tcol - d2) + "/" + spaces(2 * d2 - 1) + "\\");
    std::size_t rows = std::max(left.lines.size(), right.lines.size());
    for (std::size_t i = 0; i < rows; ++i) {
        std::string l = i < left.lines.size() ? left.lines[i] : "";
        l.resize(left.width + gap, ' ');
        std::string r = i < right.lines.size() ? right.lines[i] : "";
        b.lines.push_back(l + r);
    }
    return b;
}

}  // namespace

std::string render_ascii(const EventNode& node) {
    Block b;
    switch (node.etype.kind) {
        case EventKind::T: b = transition_block(node); break;
        case EventKind::P: b = process_block(node); break;
        case EventKind::S: b = state_block(node); break;
    }
    std::string out;
    for (const auto& line : b.lines) {
        out += rstrip(line);
        out += '\n';
    }
    return out;
}

}  // namespace lexis
