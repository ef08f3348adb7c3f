// analyzer.hpp — turns a structured clause descriptor into a full Analysis:
// template selection, binding checks, opposition detection, property
// persistence, quantifier and adverbial rules, and ES/LCS'/LCS construction.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexis/event.hpp"
#include "lexis/lcs.hpp"
#include "lexis/lexicon.hpp"

namespace lexis {

// ── clause descriptors ──────────────────────────────────────────────────────

enum class Quantifier { Every };

struct ClauseDescriptor {
    std::string subject;  // lexeme ids
    std::string verb;
    std::string object;
    std::vector<std::string> adjectives;  // attributive modifiers of the object
    std::optional<Quantifier> quantifier;
    std::optional<std::string> result_adverbial;         // POS /RB
    std::optional<std::pair<std::string, std::string>> pp;  // (preposition, object)
    bool assume_persistence = true;
    std::optional<double> persistence_p;  // overrides the configured default
};

// Textual form:
//   CLAUSE subj=<id> verb=<id> obj=<id> [adj=<id>[,<id>...]] [quant=every]
//          [adv=<id>] [pp=<prep-id>:<obj-id>] [persist=<true|false>] [p=<rational>]
ClauseDescriptor parse_clause(const std::string& line);

// ── NP state templates ──────────────────────────────────────────────────────

struct NpState {
    enum class Shape { Entity, PlainSingleState, Mixture, MultiState };
    Shape shape;
    TermPtr term;
};

// ── errors ──────────────────────────────────────────────────────────────────

struct AnalyzeError : std::runtime_error {
    enum class Code {
        BindingRejected,
        NoTemplate,
        AmbiguousTemplate,
        NotShiftEligible,
        BadPos,
        BadClause,
        MissingClausePart,
        BadWeight,
        NoPersistedAdjective
    };
    Code code;
    AnalyzeError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

const char* analyze_error_name(AnalyzeError::Code code);

// ── configuration ───────────────────────────────────────────────────────────

struct AnalyzerConfig {
    double persistence_p = 0.8;  // in (0.5, 1]: persisted branch outweighs negated
    int subevent_count = 2;      // presentational n for process nodes
};

// ── operations ──────────────────────────────────────────────────────────────

// Deterministic template choice for a clause.  Candidates are templates whose
// id is prefixed by the verb's result adjective spelling (or the adverb's when
// a result adverbial is present); EVERY-bearing templates are kept exactly
// when the clause is quantified, pp-specific templates preferred when a pp is
// present, then the lowest-numbered id wins.
std::string select_template(const Lexicon& lexicon, const ClauseDescriptor& clause);

struct OppositionPartition {
    std::vector<std::string> opposed;    // adjectives negated at the culmination
    std::vector<std::string> persisted;  // adjectives carried into the result state
};

// Splits the clause adjectives against the verb's culmination state.
OppositionPartition detect_opposition(const Lexicon& lexicon, const std::string& verb,
                                      const std::vector<std::string>& adjectives);

// Intermediate shape of an analysis before ES/LCS construction.
struct AnalysisPlan {
    std::string template_id;       // empty: bare process base with no template
    EventType etype;
    std::string anchor_adjective;  // lexeme id anchoring opposition, may be empty
    bool shifted = false;
};

// Event-type shift by a result adverbial: P becomes T (accomplishment) and
// the result state is replaced by the adverb's declared state.
AnalysisPlan apply_adverbial_shift(const Lexicon& lexicon, const AnalysisPlan& base,
                                   const std::string& adverb_id);

// NP state template for an object and its adjective stack, nested
// innermost-first in list order.
NpState np_state(const Lexicon& lexicon, const std::string& object_id,
                 const std::vector<std::string>& adjective_ids);

// Replaces the persisted conjunct [IS [y <a>]] by the weighted disjunction
// [IS [y <a>] : p | IS [y [NOT <a>]] : 1-p].  p must lie in (0.5, 1]; p == 1
// degenerates to the plain conjunct.
TermPtr persistence_variant(const Lexicon& lexicon, const Analysis& analysis,
                            const std::string& persisted_adjective, double p);

// Full derivation for one clause.
Analysis analyze(const Lexicon& lexicon, const ClauseDescriptor& clause,
                 const AnalyzerConfig& config = {});

}  // namespace lexis
