// lexicon.hpp — the lexicon proper: lexeme feature structures, event
// templates, capability assignments (LSCL), sparse LET overrides, and the
// semantic relation matrix (SRM), together with the LEXF v1 file format.
//
// LEXF v1 is line-oriented UTF-8; '#' starts a comment, blank lines are
// ignored, quoted strings use double quotes with backslash escapes:
//
//   OPERATOR <IDENT>
//   LEXEME <id> SPELLING="..." SENSE="..." POS=<TAG> [REF=<symbol>]
//   TEMPLATE <id> ETYPE=<S|P|T|T_ACH|T_ACC> LCS="<lcs-expr>"
//   SLOT <template-id> <var> REQUIRES=<cap>[,<cap>...]
//   CAP <lexeme-id> <cap>[,<cap>...]
//   LET <template-id> <var> <lexeme-id> <0|1>
//   REL <ANTONYM|SYNONYM> <lexeme-id> <lexeme-id>
//   RESULT <verb-lexeme-id> <adjective-lexeme-id>
//
// REF stores the discourse referent symbol used when a lexeme is substituted
// into a template (defaults to the lowercased spelling).  Canonical save
// order: OPERATOR, LEXEME, TEMPLATE, SLOT, CAP, LET, REL, RESULT, each block
// sorted by id.
//
// A Lexicon is immutable after load; all queries are pure reads and safe for
// concurrent use.

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lexis/event.hpp"
#include "lexis/lcs.hpp"

namespace lexis {

// ── part-of-speech tags (Penn subset) ───────────────────────────────────────

enum class Pos { VB, VBD, VBG, NN, NNP, JJ, RB, DT, IN };

std::string pos_to_string(Pos pos);
std::optional<Pos> pos_from_string(const std::string& tag);

// ── record types ────────────────────────────────────────────────────────────

struct Lexeme {
    std::string id;        // unique index, e.g. mend^1, person-cathie
    std::string spelling;
    std::string sense;
    Pos pos = Pos::NN;
    std::string referent;  // LCS symbol; lowercased spelling unless REF given
};

struct EventTemplate {
    std::string id;  // e.g. mended-state1
    EventType etype;
    TermPtr lcs;     // with free variables
    std::map<std::string, std::set<std::string>> slots;  // keys == free_vars(lcs)
};

enum class RelationKind { Antonym, Synonym };

struct SrmRelation {
    RelationKind kind;
    std::string a, b;  // stored once with a < b, queried both ways
};

// ── diagnostics ─────────────────────────────────────────────────────────────

struct Diagnostic {
    enum class Code {
        SyntaxError,
        DanglingReference,
        DuplicateId,
        BadPos,
        SlotMismatch,
        SelfRelation
    };
    Code code;
    int line = 0;  // 0 when not tied to a source line
    std::string message;

    std::string to_string(const std::string& file = "") const;
};

const char* diagnostic_code_name(Diagnostic::Code code);

struct LexiconError : std::runtime_error {
    Diagnostic diagnostic;
    explicit LexiconError(Diagnostic d)
        : std::runtime_error(d.to_string()), diagnostic(std::move(d)) {}
};

struct LookupError : std::runtime_error {
    enum class Code { UnknownLexeme, UnknownTemplate, UnknownVariable };
    Code code;
    std::string id;
    LookupError(Code c, std::string which, const std::string& msg)
        : std::runtime_error(msg), code(c), id(std::move(which)) {}
};

// ── the lexicon ─────────────────────────────────────────────────────────────

class Lexicon {
public:
    std::map<std::string, Lexeme> lexemes;
    std::map<std::string, EventTemplate> templates;
    std::map<std::string, std::set<std::string>> capabilities;  // LSCL
    std::map<std::tuple<std::string, std::string, std::string>, bool> let_overrides;
    std::vector<SrmRelation> relations;
    std::set<std::string> operators = default_operators();
    std::map<std::string, std::string> results;  // verb id -> adjective id

    const Lexeme* find_lexeme(const std::string& id) const;
    const EventTemplate* find_template(const std::string& id) const;
    const Lexeme& lexeme(const std::string& id) const;          // throws LookupError
    const EventTemplate& event_template(const std::string& id) const;

    // LET override wins; otherwise the slot's required capabilities must be
    // a subset of the lexeme's capabilities (empty requirement allows all).
    bool can_bind(const std::string& template_id, const std::string& variable,
                  const std::string& lexeme_id) const;

    // Semantic opposition: a direct ANTONYM pair, or an ANTONYM reached over
    // exactly one SYNONYM hop on either side.  Symmetric, irreflexive.
    bool opposed(const std::string& a, const std::string& b) const;

    // The declared adjective for a verb's culmination state, if any.
    std::optional<std::string> result_adjective(const std::string& verb_id) const;

    bool antonym_pair(const std::string& a, const std::string& b) const;
    bool synonym_pair(const std::string& a, const std::string& b) const;
};

// ── load / save / validate ──────────────────────────────────────────────────

struct LoadResult {
    Lexicon lexicon;
    std::vector<Diagnostic> diagnostics;
};

// Parses LEXF, collecting every diagnostic instead of stopping at the first.
LoadResult load_lenient(std::istream& in);

// Total load: returns a fully validated lexicon or throws LexiconError with
// the first diagnostic (lowest line number).
Lexicon load(std::istream& in);
Lexicon load_string(const std::string& text);
Lexicon load_file(const std::string& path);

// Canonical LEXF text; load(save(L)) == L and save is a fixpoint.
std::string save(const Lexicon& lexicon);

// Re-checks the Lexicon invariants on an in-memory instance; empty when all
// hold, otherwise one diagnostic per violation in a stable order.
std::vector<Diagnostic> validate(const Lexicon& lexicon);

}  // namespace lexis
