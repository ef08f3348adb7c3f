// Clause analysis: template selection, opposition, shifts, NP states,
// persistence, and the full golden derivations.

#include <doctest.h>

#include <algorithm>

#include "lexis/analyzer.hpp"
#include "support.hpp"

using namespace lexis;
using lexis::testing::golden_corpus;
using lexis::testing::shipped_lexicon;

namespace {

ClauseDescriptor clause_of(const std::string& id) {
    for (const auto& item : golden_corpus())
        if (item.id == id) return parse_clause(item.clause_line);
    FAIL("no golden item " << id);
    return {};
}

bool has_atom(const std::vector<PredicateAtom>& atoms, const std::string& rendered) {
    return std::any_of(atoms.begin(), atoms.end(),
                       [&](const PredicateAtom& a) { return a.to_string() == rendered; });
}

AnalyzeError::Code analyze_error(const ClauseDescriptor& clause) {
    try {
        analyze(shipped_lexicon(), clause);
    } catch (const AnalyzeError& e) {
        return e.code;
    }
    FAIL("expected AnalyzeError");
    return AnalyzeError::Code::BadClause;
}

}  // namespace

TEST_CASE("parse_clause") {
    ClauseDescriptor c = parse_clause(
        "CLAUSE subj=waiter^1 verb=fill^1 obj=glass^1 adj=empty^1 quant=every "
        "pp=with^1:water^1 persist=false p=0.75");
    CHECK(c.subject == "waiter^1");
    CHECK(c.verb == "fill^1");
    CHECK(c.object == "glass^1");
    CHECK(c.adjectives == std::vector<std::string>{"empty^1"});
    CHECK(c.quantifier == Quantifier::Every);
    REQUIRE(c.pp.has_value());
    CHECK(c.pp->first == "with^1");
    CHECK(c.pp->second == "water^1");
    CHECK_FALSE(c.assume_persistence);
    CHECK(c.persistence_p == doctest::Approx(0.75));

    auto code_of = [](const std::string& line) {
        try {
            parse_clause(line);
        } catch (const AnalyzeError& e) {
            return e.code;
        }
        return AnalyzeError::Code::NoTemplate;
    };
    CHECK(code_of("CLAUSE subj=a verb=b") == AnalyzeError::Code::BadClause);
    CHECK(code_of("CLAUSE subj=a verb=b obj=c sub=z") == AnalyzeError::Code::BadClause);
    CHECK(code_of("CLAUSE subj=a verb=b obj=c quant=some") == AnalyzeError::Code::BadClause);
    CHECK(code_of("CLAUSE subj=a verb=b obj=c pp=with^1") == AnalyzeError::Code::BadClause);
    CHECK(code_of("subj=a verb=b obj=c") == AnalyzeError::Code::BadClause);
}

TEST_CASE("select_template") {
    const Lexicon& lex = shipped_lexicon();
    CHECK(select_template(lex, clause_of("2a")) == "fixed-state1");
    CHECK(select_template(lex, clause_of("3")) == "fixed-state3");
    CHECK(select_template(lex, clause_of("9")) == "filled-water-state1");
    CHECK(select_template(lex, clause_of("1a")) == "mended-state1");
    CHECK(select_template(lex, clause_of("10b")) == "clean-state1");

    ClauseDescriptor no_template = clause_of("1a");
    no_template.verb = "cry^1";
    CHECK(analyze_error(no_template) == AnalyzeError::Code::NoTemplate);
}

TEST_CASE("ambiguous template candidates are reported") {
    std::string text = save(shipped_lexicon());
    text += "LEXEME zz^1 SPELLING=\"zz\" SENSE=\"s\" POS=VBD\n";
    text += "TEMPLATE zz-statex ETYPE=T LCS=\"[x CAUSE [BECOME [y <zzed>]]]\"\n";
    text += "TEMPLATE zz-statey ETYPE=T LCS=\"[x CAUSE [BECOME [y <zzed>]]]\"\n";
    Lexicon lex = load_string(text);
    ClauseDescriptor clause;
    clause.subject = "person-mary";
    clause.verb = "zz^1";
    clause.object = "dress^1";
    try {
        select_template(lex, clause);
        FAIL("expected AmbiguousTemplate");
    } catch (const AnalyzeError& e) {
        CHECK(e.code == AnalyzeError::Code::AmbiguousTemplate);
    }
}

TEST_CASE("detect_opposition") {
    const Lexicon& lex = shipped_lexicon();
    OppositionPartition p = detect_opposition(lex, "mend^2", {"torn^1", "red"});
    CHECK(p.opposed == std::vector<std::string>{"torn^1"});
    CHECK(p.persisted == std::vector<std::string>{"red"});

    p = detect_opposition(lex, "fix^3", {"leaky^1", "blue^1"});
    CHECK(p.opposed == std::vector<std::string>{"leaky^1"});
    CHECK(p.persisted == std::vector<std::string>{"blue^1"});

    p = detect_opposition(lex, "comfort^1", {"cry^1"});
    CHECK(p.opposed.empty());
    CHECK(p.persisted == std::vector<std::string>{"cry^1"});

    // No result adjective at all: everything persists.
    p = detect_opposition(lex, "paint^1", {"white^1"});
    CHECK(p.opposed.empty());
}

TEST_CASE("opposition partitions are exhaustive and disjoint") {
    const Lexicon& lex = shipped_lexicon();
    for (const auto& item : golden_corpus()) {
        ClauseDescriptor c = parse_clause(item.clause_line);
        OppositionPartition p = detect_opposition(lex, c.verb, c.adjectives);
        CHECK(p.opposed.size() + p.persisted.size() == c.adjectives.size());
        for (const auto& adj : c.adjectives) {
            bool in_opposed = std::count(p.opposed.begin(), p.opposed.end(), adj) > 0;
            bool in_persisted = std::count(p.persisted.begin(), p.persisted.end(), adj) > 0;
            CHECK(in_opposed != in_persisted);
        }
    }
}

TEST_CASE("apply_adverbial_shift") {
    const Lexicon& lex = shipped_lexicon();
    AnalysisPlan brush;
    brush.template_id = "brushed-state1";
    brush.etype = EventType::process();

    AnalysisPlan shifted = apply_adverbial_shift(lex, brush, "clean^2");
    CHECK(shifted.template_id == "clean-state1");
    CHECK(shifted.etype.kind == EventKind::T);
    CHECK(shifted.etype.subtype == TransitionSubtype::Accomplishment);
    CHECK(shifted.anchor_adjective == "clean^3");

    AnalysisPlan paint_base;  // no verb template at all
    paint_base.etype = EventType::process();
    AnalysisPlan blue = apply_adverbial_shift(lex, paint_base, "blue^2");
    CHECK(blue.template_id == "blue-state1");
    CHECK(blue.etype.kind == EventKind::T);

    try {
        apply_adverbial_shift(lex, brush, "the^1");
        FAIL("expected NotShiftEligible");
    } catch (const AnalyzeError& e) {
        CHECK(e.code == AnalyzeError::Code::NotShiftEligible);
    }
}

TEST_CASE("np_state shapes") {
    const Lexicon& lex = shipped_lexicon();
    NpState plain = np_state(lex, "dress^1", {"red"});
    CHECK(plain.shape == NpState::Shape::PlainSingleState);
    CHECK(print(plain.term) == "[IS [dress <red>]]");

    NpState multi = np_state(lex, "dress^1", {"red", "torn^1"});
    CHECK(multi.shape == NpState::Shape::MultiState);
    CHECK(print(multi.term) == "[IS [IS [dress <red>] <torn>]]");

    NpState entity = np_state(lex, "dress^1", {});
    CHECK(entity.shape == NpState::Shape::Entity);
    CHECK(print(entity.term) == "dress");

    CHECK_THROWS_AS(np_state(lex, "mend^1", {}), AnalyzeError);
}

TEST_CASE("persistence_variant weights the persisted conjunct") {
    const Lexicon& lex = shipped_lexicon();
    Analysis analysis = analyze(lex, clause_of("1b"));
    TermPtr weighted = persistence_variant(lex, analysis, "red", 0.8);
    CHECK(print(weighted) ==
          "[m CAUSE [BECOME [dress <mended>]]] & "
          "[IS [dress <red>] : 0.8 | IS [dress [NOT <red>]] : 0.2]");

    CHECK(print(persistence_variant(lex, analysis, "red", 1.0)) == print(analysis.lcs));

    try {
        persistence_variant(lex, analysis, "red", 0.5);
        FAIL("expected BadWeight");
    } catch (const AnalyzeError& e) {
        CHECK(e.code == AnalyzeError::Code::BadWeight);
    }
    try {
        persistence_variant(lex, analysis, "torn^1", 0.8);
        FAIL("expected NoPersistedAdjective");
    } catch (const AnalyzeError& e) {
        CHECK(e.code == AnalyzeError::Code::NoPersistedAdjective);
    }
}

TEST_CASE("item 1a: opposition culminates") {
    Analysis a = analyze(shipped_lexicon(), clause_of("1a"));
    CHECK(a.template_id == "mended-state1");
    CHECK(a.es.etype.to_string() == "T_ACH");
    CHECK(print(a.lcs) == "[m CAUSE [BECOME [dress <mended>]]]");
    CHECK(has_atom(a.lcs_prime_process, "act(m, dress)"));
    CHECK(has_atom(a.lcs_prime_process, "torn(dress)"));
    CHECK(has_atom(a.lcs_prime_state, "!torn(dress)"));
    CHECK(has_atom(a.lcs_prime_state, "mended(dress)"));
    CHECK_FALSE(check_node(a.es).has_value());
    CHECK(a.bindings.at("x") == "person-cathie");
    CHECK(a.bindings.at("y") == "dress^1");
}

TEST_CASE("item 1b: the red property persists on both sides") {
    Analysis a = analyze(shipped_lexicon(), clause_of("1b"));
    CHECK(print(a.lcs) == "[m CAUSE [BECOME [dress <mended>]]] & [IS [dress <red>]]");
    CHECK(has_atom(a.lcs_prime_process, "red(dress)"));
    CHECK(has_atom(a.lcs_prime_state, "red(dress)"));
    CHECK(has_atom(a.lcs_prime_state, "!torn(dress)"));
    CHECK(has_atom(a.lcs_prime_state, "mended(dress)"));
}

TEST_CASE("implicit preconditions appear when no clause adjective opposes") {
    // "Cathie mended the red dress" names no torn state, yet the culmination
    // still negates it: mending presupposes the tear.
    ClauseDescriptor c = clause_of("1a");
    c.adjectives = {"red"};
    Analysis a = analyze(shipped_lexicon(), c);
    CHECK(has_atom(a.lcs_prime_process, "torn(dress)"));
    CHECK(has_atom(a.lcs_prime_state, "!torn(dress)"));
    CHECK(has_atom(a.lcs_prime_state, "red(dress)"));
}

TEST_CASE("item 2a: quantified fixing") {
    Analysis a = analyze(shipped_lexicon(), clause_of("2a"));
    CHECK(a.template_id == "fixed-state1");
    CHECK(print(a.lcs) == "[p CAUSE [BECOME [EVERY [faucet <fixed>]]]]");
    CHECK(has_atom(a.lcs_prime_process, "act(p, every(faucet))"));
    CHECK(has_atom(a.lcs_prime_state, "!leaky(faucet)"));
    CHECK(has_atom(a.lcs_prime_state, "fixed(faucet)"));
}

TEST_CASE("item 4: mixture binds subject, pp object, and object") {
    Analysis a = analyze(shipped_lexicon(), clause_of("4"));
    CHECK(a.template_id == "mixed-state1");
    CHECK(print(a.lcs) ==
          "[j CAUSE [BECOME [SUBSTANCE-OF [water <milky>] & [milk <watery>]]]]");
    CHECK(a.bindings.at("x") == "person-john");
    CHECK(a.bindings.at("y") == "water^1");
    CHECK(a.bindings.at("z") == "milk^1");
    CHECK(has_atom(a.lcs_prime_process, "act(j, water)"));
    CHECK(has_atom(a.lcs_prime_process, "plain(water)"));
    CHECK(has_atom(a.lcs_prime_process, "powdered(milk)"));
    CHECK(has_atom(a.lcs_prime_state, "!plain(water)"));
    CHECK(has_atom(a.lcs_prime_state, "!powdered(milk)"));
    CHECK(has_atom(a.lcs_prime_state, "milky(water)"));
    CHECK(has_atom(a.lcs_prime_state, "watery(milk)"));

    ClauseDescriptor no_pp = clause_of("4");
    no_pp.pp.reset();
    CHECK(analyze_error(no_pp) == AnalyzeError::Code::MissingClausePart);
}

TEST_CASE("item 5: comforting is a process") {
    Analysis a = analyze(shipped_lexicon(), clause_of("5"));
    CHECK(a.es.etype.kind == EventKind::P);
    CHECK(a.es.subevent_count == 2);
    CHECK(a.lcs_prime_state.empty());
    CHECK(print(a.lcs) ==
          "[f [COMFORT [child <crying>]]] & [f CAUSE [BECOME [child <comforted>]]]");
    CHECK(has_atom(a.lcs_prime_process, "act(f, child)"));
    CHECK(has_atom(a.lcs_prime_process, "crying(child)"));
    CHECK(has_atom(a.lcs_prime_process, "comfort(child)"));
}

TEST_CASE("item 9: pp selects the filled-with-water template") {
    Analysis a = analyze(shipped_lexicon(), clause_of("9"));
    CHECK(a.template_id == "filled-water-state1");
    CHECK(print(a.lcs) == "[w CAUSE [BECOME [EVERY [glass <filled-with-water>]]]]");
    CHECK(has_atom(a.lcs_prime_process, "act(w, every(glass))"));
    CHECK(has_atom(a.lcs_prime_process, "empty(glass)"));
    CHECK(has_atom(a.lcs_prime_state, "!empty(glass)"));
    CHECK(has_atom(a.lcs_prime_state, "filled-with-water(glass)"));
}

TEST_CASE("items 10a/10b: the adverb shifts the process to a transition") {
    Analysis plain = analyze(shipped_lexicon(), clause_of("10a"));
    CHECK(plain.es.etype.kind == EventKind::P);
    CHECK(print(plain.lcs) ==
          "[j [BRUSH [carpet <dirty>]]] & [j CAUSE [BECOME [carpet <brushed>]]]");
    CHECK(has_atom(plain.lcs_prime_process, "brush(carpet)"));
    CHECK(has_atom(plain.lcs_prime_process, "dirty(carpet)"));

    Analysis shifted = analyze(shipped_lexicon(), clause_of("10b"));
    CHECK(shifted.es.etype.kind == EventKind::T);
    CHECK(shifted.es.etype.subtype == TransitionSubtype::Accomplishment);
    CHECK(print(shifted.lcs) == "[j CAUSE [BECOME [carpet <clean>]]]");
    CHECK(has_atom(shifted.lcs_prime_state, "!dirty(carpet)"));
    CHECK(has_atom(shifted.lcs_prime_state, "clean(carpet)"));
}

TEST_CASE("binding rejection: a carpet cannot mend a dress") {
    ClauseDescriptor c = clause_of("1a");
    c.subject = "carpet^1";
    CHECK(analyze_error(c) == AnalyzeError::Code::BindingRejected);
}

TEST_CASE("persist=false turns persisted properties into weighted disjunctions") {
    ClauseDescriptor c = clause_of("1b");
    c.assume_persistence = false;
    Analysis a = analyze(shipped_lexicon(), c, {});
    CHECK(print(a.lcs) ==
          "[m CAUSE [BECOME [dress <mended>]]] & "
          "[IS [dress <red>] : 0.8 | IS [dress [NOT <red>]] : 0.2]");
    // The property held before the event but is not asserted after it.
    CHECK(has_atom(a.lcs_prime_process, "red(dress)"));
    CHECK_FALSE(has_atom(a.lcs_prime_state, "red(dress)"));

    c.persistence_p = 1.0;  // certainty degenerates to the plain conjunct
    Analysis certain = analyze(shipped_lexicon(), c, {});
    CHECK(print(certain.lcs) ==
          "[m CAUSE [BECOME [dress <mended>]]] & [IS [dress <red>]]");

    c.persistence_p = 0.5;  // must exceed one half
    CHECK(analyze_error(c) == AnalyzeError::Code::BadWeight);
}

TEST_CASE("adjectives must be adjectival") {
    ClauseDescriptor c = clause_of("1a");
    c.adjectives = {"the^1"};
    CHECK(analyze_error(c) == AnalyzeError::Code::BadPos);
}

TEST_CASE("golden corpus: every analysis matches its expected LCS") {
    const Lexicon& lex = shipped_lexicon();
    for (const auto& item : golden_corpus()) {
        CAPTURE(item.id);
        Analysis a = analyze(lex, parse_clause(item.clause_line));
        CHECK(equal(a.lcs, parse(item.expected_lcs)));
        CHECK(print(a.lcs) == item.expected_lcs);
        CHECK_FALSE(check_node(a.es).has_value());
        // Binding soundness: re-validate every recorded binding.
        for (const auto& [var, lexeme_id] : a.bindings)
            CHECK(lex.can_bind(a.template_id, var, lexeme_id));
    }
}

TEST_CASE("analyses are deterministic") {
    const Lexicon& lex = shipped_lexicon();
    for (const auto& item : golden_corpus()) {
        Analysis a = analyze(lex, parse_clause(item.clause_line));
        Analysis b = analyze(lex, parse_clause(item.clause_line));
        CHECK(print(a.lcs) == print(b.lcs));
        CHECK(render_ascii(a.es) == render_ascii(b.es));
    }
}

TEST_CASE("distinct corpus analyses render distinctly") {
    const Lexicon& lex = shipped_lexicon();
    std::vector<std::string> renders;
    for (const auto& item : golden_corpus())
        renders.push_back(render_ascii(analyze(lex, parse_clause(item.clause_line)).es));
    for (std::size_t i = 0; i < renders.size(); ++i)
        for (std::size_t j = i + 1; j < renders.size(); ++j) CHECK(renders[i] != renders[j]);
}
