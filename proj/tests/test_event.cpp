// Event node construction and ASCII rendering.

#include <doctest.h>

#include <sstream>

#include "lexis/event.hpp"
#include "support.hpp"

using namespace lexis;

namespace {

PredicateAtom atom(const std::string& pred, const std::vector<std::string>& args,
                   bool negated = false) {
    return PredicateAtom{negated, pred, args};
}

bool has_line(const std::string& text, const std::string& wanted) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t a = line.find_first_not_of(' ');
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(' ');
        if (line.substr(a, b - a + 1) == wanted) return true;
    }
    return false;
}

bool has_substring_line(const std::string& text, const std::string& wanted) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.find(wanted) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("build_transition states the culmination") {
    EventNode t = build_transition({atom("act", {"m", "dress"}), atom("torn", {"dress"})},
                                   {atom("mended", {"dress"})}, {});
    REQUIRE(t.etype.kind == EventKind::T);
    REQUIRE(t.children.size() == 2);
    CHECK(t.state_child().predicates ==
          std::vector<PredicateAtom>{atom("torn", {"dress"}, true), atom("mended", {"dress"})});
    CHECK_FALSE(check_node(t).has_value());
}

TEST_CASE("persisted predicates appear on both sides") {
    EventNode t = build_transition(
        {atom("act", {"m", "dress"}), atom("torn", {"dress"}), atom("red", {"dress"})},
        {atom("mended", {"dress"})}, {atom("red", {"dress"})});
    CHECK(t.process_child().predicates ==
          std::vector<PredicateAtom>{atom("act", {"m", "dress"}), atom("torn", {"dress"}),
                                     atom("red", {"dress"})});
    CHECK(t.state_child().predicates ==
          std::vector<PredicateAtom>{atom("torn", {"dress"}, true), atom("mended", {"dress"}),
                                     atom("red", {"dress"})});
    CHECK_FALSE(check_node(t).has_value());
}

TEST_CASE("a transition needs a result state") {
    CHECK_THROWS_AS(build_transition({atom("act", {"m", "dress"})}, {}, {}), EventModelError);
    try {
        build_transition({atom("act", {"m", "dress"})}, {}, {});
    } catch (const EventModelError& e) {
        CHECK(e.code == EventModelError::Code::EmptyResultState);
    }
}

TEST_CASE("build_process") {
    EventNode p = build_process({atom("act", {"f", "child"}), atom("crying", {"child"}),
                                 atom("comfort", {"child"})},
                                2);
    CHECK(p.etype.kind == EventKind::P);
    CHECK(p.subevent_count == 2);
    CHECK(p.children.empty());

    EventNode single = build_process({atom("act", {"m", "table"})}, 1);
    CHECK(single.subevent_count == 1);

    CHECK_THROWS_AS(build_process({}, 1), EventModelError);
}

TEST_CASE("negate is an involution") {
    PredicateAtom torn = atom("torn", {"dress"});
    CHECK(negate(torn) == atom("torn", {"dress"}, true));
    CHECK(negate(negate(torn)) == torn);
    CHECK(negate(atom("leaky", {"faucet"}, true)) == atom("leaky", {"faucet"}));
    CHECK(negate(atom("drowning", {"man"})) == atom("drowning", {"man"}, true));
}

TEST_CASE("render_ascii draws the transition figure") {
    EventNode t = build_transition({atom("act", {"m", "dress"}), atom("torn", {"dress"})},
                                   {atom("mended", {"dress"})}, {});
    std::string out = render_ascii(t);
    CHECK(has_line(out, "T"));
    CHECK(has_substring_line(out, "P"));
    CHECK(has_substring_line(out, "S"));
    CHECK(has_substring_line(out, "/"));
    CHECK(has_substring_line(out, "\\"));
    CHECK(has_substring_line(out, "act(m, dress) & torn(dress)"));
    CHECK(has_substring_line(out, "!torn(dress)"));
    CHECK(has_substring_line(out, "mended(dress)"));
    // Stable across invocations.
    CHECK(render_ascii(t) == out);
}

TEST_CASE("render_ascii on processes") {
    EventNode p = build_process({atom("act", {"f", "child"}), atom("crying", {"child"})}, 2);
    std::string out = render_ascii(p);
    CHECK(has_line(out, "P"));
    CHECK(has_line(out, "e1.....en"));
    CHECK(has_substring_line(out, "act(f, child) & crying(child)"));

    // A degenerate single-subevent process renders as label plus predicates.
    EventNode single = build_process({atom("act", {"m", "table"})}, 1);
    std::string compact = render_ascii(single);
    CHECK(has_line(compact, "P"));
    CHECK(has_line(compact, "act(m, table)"));
    CHECK(std::count(compact.begin(), compact.end(), '\n') == 2);
}

TEST_CASE("check_node rejects malformed trees") {
    EventNode bad;
    bad.etype = EventType::transition();
    CHECK(check_node(bad).has_value());

    EventNode subtyped_leaf;
    subtyped_leaf.etype = EventType::state();
    subtyped_leaf.etype.subtype = TransitionSubtype::Achievement;
    CHECK(check_node(subtyped_leaf).has_value());

    // An S-node negation without a positive counterpart in P.
    EventNode t = build_transition({atom("act", {"m", "dress"}), atom("torn", {"dress"})},
                                   {atom("mended", {"dress"})}, {});
    t.children[1].predicates.push_back(atom("red", {"dress"}, true));
    CHECK(check_node(t).has_value());
}

TEST_CASE("event type round-trips through its label") {
    for (const char* label : {"S", "P", "T", "T_ACH", "T_ACC"})
        CHECK(EventType::from_string(label).to_string() == label);
    CHECK_THROWS_AS(EventType::from_string("Q"), std::invalid_argument);
}
