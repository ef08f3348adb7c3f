// analyzer.cpp — clause analysis: template selection, binding, opposition,
// persistence, quantifier and adverbial handling, ES/LCS'/LCS assembly.

#include "lexis/analyzer.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>

namespace lexis {

const char* analyze_error_name(AnalyzeError::Code code) {
    switch (code) {
        case AnalyzeError::Code::BindingRejected: return "BindingRejected";
        case AnalyzeError::Code::NoTemplate: return "NoTemplate";
        case AnalyzeError::Code::AmbiguousTemplate: return "AmbiguousTemplate";
        case AnalyzeError::Code::NotShiftEligible: return "NotShiftEligible";
        case AnalyzeError::Code::BadPos: return "BadPos";
        case AnalyzeError::Code::BadClause: return "BadClause";
        case AnalyzeError::Code::MissingClausePart: return "MissingClausePart";
        case AnalyzeError::Code::BadWeight: return "BadWeight";
        case AnalyzeError::Code::NoPersistedAdjective: return "NoPersistedAdjective";
    }
    return "AnalyzeError";
}

// ── clause parsing ──────────────────────────────────────────────────────────

namespace {

using Code = AnalyzeError::Code;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

ClauseDescriptor parse_clause(const std::string& line) {
    std::istringstream in(line);
    std::string field;
    if (!(in >> field) || field != "CLAUSE")
        throw AnalyzeError(Code::BadClause, "clause line must start with CLAUSE");
    ClauseDescriptor clause;
    std::set<std::string> seen;
    while (in >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos)
            throw AnalyzeError(Code::BadClause, "expected key=value, got '" + field + "'");
        std::string key = field.substr(0, eq);
        std::string value = field.substr(eq + 1);
        if (value.empty())
            throw AnalyzeError(Code::BadClause, "empty value for clause key '" + key + "'");
        if (!seen.insert(key).second)
            throw AnalyzeError(Code::BadClause, "duplicate clause key '" + key + "'");
        if (key == "subj") clause.subject = value;
        else if (key == "verb") clause.verb = value;
        else if (key == "obj") clause.object = value;
        else if (key == "adj") clause.adjectives = split(value, ',');
        else if (key == "quant") {
            if (value != "every")
                throw AnalyzeError(Code::BadClause, "bad value for clause key 'quant'");
            clause.quantifier = Quantifier::Every;
        } else if (key == "adv") clause.result_adverbial = value;
        else if (key == "pp") {
            auto parts = split(value, ':');
            if (parts.size() != 2)
                throw AnalyzeError(Code::BadClause, "bad value for clause key 'pp'");
            clause.pp = {parts[0], parts[1]};
        } else if (key == "persist") {
            if (value == "true") clause.assume_persistence = true;
            else if (value == "false") clause.assume_persistence = false;
            else throw AnalyzeError(Code::BadClause, "bad value for clause key 'persist'");
        } else if (key == "p") {
            try {
                clause.persistence_p = std::stod(value);
            } catch (const std::exception&) {
                throw AnalyzeError(Code::BadClause, "bad value for clause key 'p'");
            }
        } else {
            throw AnalyzeError(Code::BadClause, "unknown clause key '" + key + "'");
        }
    }
    for (const char* req : {"subj", "verb", "obj"})
        if (!seen.count(req))
            throw AnalyzeError(Code::BadClause, std::string("missing clause key '") + req + "'");
    return clause;
}

// ── template structure helpers ──────────────────────────────────────────────

namespace {

struct AttrSlot {
    std::string name;   // variable or entity in subject position
    bool is_var;
    std::string state;  // state constant name
};

// Attributions reached under a BECOME application, in order of appearance.
// These are the transitioning states of a template.
void collect_become_attrs(const TermPtr& term, bool under_become,
                          std::vector<AttrSlot>& out) {
    if (term->kind == TermKind::Apply && term->name == "BECOME") {
        collect_become_attrs(term->argument(), true, out);
        return;
    }
    if (under_become && term->kind == TermKind::Attribution) {
        const TermPtr& subj = term->subject();
        const TermPtr& st = term->state();
        if ((subj->kind == TermKind::Var || subj->kind == TermKind::Entity) &&
            st->kind == TermKind::State) {
            out.push_back({subj->name, subj->kind == TermKind::Var, st->name});
            return;
        }
    }
    for (const auto& c : term->children) collect_become_attrs(c, under_become, out);
}

std::optional<std::string> find_agent_var(const TermPtr& term) {
    if (term->kind == TermKind::Cause || term->kind == TermKind::Agentive) {
        if (term->agent()->kind == TermKind::Var) return term->agent()->name;
    }
    for (const auto& c : term->children)
        if (auto v = find_agent_var(c)) return v;
    return std::nullopt;
}

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Agentive action operators become process atoms: [x [COMFORT [y <crying>]]]
// contributes comfort(y).
void collect_action_atoms(const TermPtr& term,
                          std::vector<std::pair<std::string, std::string>>& out) {
    if (term->kind == TermKind::Agentive && term->action()->kind == TermKind::Apply) {
        const TermPtr& arg = term->action()->argument();
        std::vector<AttrSlot> attrs;
        collect_become_attrs(arg, true, attrs);
        if (!attrs.empty())
            out.push_back({lowercase(term->action()->name), attrs.front().name});
    }
    for (const auto& c : term->children) collect_action_atoms(c, out);
}

bool contains_every(const TermPtr& term) {
    if (term->kind == TermKind::Apply && term->name == "EVERY") return true;
    for (const auto& c : term->children)
        if (contains_every(c)) return true;
    return false;
}

// Trailing number of a template id (mended-state1 -> 1); INT_MAX when absent.
int template_number(const std::string& id) {
    std::size_t end = id.size();
    std::size_t begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(id[begin - 1]))) --begin;
    if (begin == end) return INT_MAX;
    try {
        return std::stoi(id.substr(begin));
    } catch (const std::out_of_range&) {
        return INT_MAX;
    }
}

bool id_has_component(const std::string& id, const std::string& component) {
    auto parts = split(id, '-');
    return std::find(parts.begin(), parts.end(), component) != parts.end();
}

// The adjective lexeme a state constant denotes: exact spelling match first
// (JJ preferred), then progressively stripping trailing hyphen components
// (<filled-with-water> resolves through "filled").
const Lexeme* state_adjective(const Lexicon& lex, const std::string& state) {
    std::string name = state;
    while (!name.empty()) {
        const Lexeme* best = nullptr;
        for (const auto& [id, l] : lex.lexemes) {
            if (l.spelling != name) continue;
            if (!best || (l.pos == Pos::JJ && best->pos != Pos::JJ)) best = &l;
        }
        if (best) return best;
        auto cut = name.rfind('-');
        if (cut == std::string::npos) break;
        name.resize(cut);
    }
    return nullptr;
}

std::vector<std::string> antonyms_of(const Lexicon& lex, const std::string& id) {
    std::vector<std::string> out;
    for (const auto& r : lex.relations) {
        if (r.kind != RelationKind::Antonym) continue;
        if (r.a == id) out.push_back(r.b);
        else if (r.b == id) out.push_back(r.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Candidate templates for an anchor spelling: ids equal to it or prefixed by
// it at a hyphen boundary.
std::vector<const EventTemplate*> anchored_templates(const Lexicon& lex,
                                                     const std::string& anchor) {
    std::vector<const EventTemplate*> out;
    for (const auto& [id, t] : lex.templates)
        if (id == anchor || (id.size() > anchor.size() + 1 &&
                             id.compare(0, anchor.size(), anchor) == 0 &&
                             id[anchor.size()] == '-'))
            out.push_back(&t);
    return out;
}

const EventTemplate* choose_template(const Lexicon& lex, const std::string& anchor,
                                     bool quantified,
                                     const std::optional<std::string>& pp_object_spelling,
                                     const std::string& who) {
    std::vector<const EventTemplate*> candidates = anchored_templates(lex, anchor);
    if (candidates.empty())
        throw AnalyzeError(Code::NoTemplate, "no template for '" + who + "'");

    // Quantified clauses select among EVERY-bearing templates and plain
    // clauses exclude them.
    std::vector<const EventTemplate*> filtered;
    for (const auto* t : candidates)
        if (contains_every(t->lcs) == quantified) filtered.push_back(t);
    if (quantified && filtered.empty())
        filtered = candidates;  // EVERY stays implicit in the act() atom
    if (filtered.empty())
        throw AnalyzeError(Code::NoTemplate, "no template for '" + who + "'");

    if (pp_object_spelling) {
        std::vector<const EventTemplate*> pp_specific;
        for (const auto* t : filtered)
            if (id_has_component(t->id, *pp_object_spelling)) pp_specific.push_back(t);
        if (!pp_specific.empty()) filtered = std::move(pp_specific);
    }

    const EventTemplate* best = nullptr;
    bool tie = false;
    for (const auto* t : filtered) {
        if (!best) { best = t; continue; }
        int a = template_number(t->id), b = template_number(best->id);
        if (a < b) { best = t; tie = false; }
        else if (a == b) tie = true;
    }
    if (tie) {
        std::string ids;
        for (const auto* t : filtered) ids += (ids.empty() ? "" : ", ") + t->id;
        throw AnalyzeError(Code::AmbiguousTemplate, "ambiguous templates: " + ids);
    }
    return best;
}

// Anchor spelling for a verb: its declared result adjective, else its own
// spelling (VBD spellings are participles: "mixed", "filled", ...).
std::string verb_anchor_spelling(const Lexicon& lex, const Lexeme& verb) {
    if (auto adj = lex.result_adjective(verb.id)) return lex.lexeme(*adj).spelling;
    return verb.spelling;
}

const Lexeme* opposition_anchor(const Lexicon& lex, const EventTemplate& tmpl,
                                const Lexeme& verb) {
    std::vector<AttrSlot> attrs;
    collect_become_attrs(tmpl.lcs, false, attrs);
    if (!attrs.empty())
        if (const Lexeme* adj = state_adjective(lex, attrs.back().state)) return adj;
    if (auto id = lex.result_adjective(verb.id)) return &lex.lexeme(*id);
    return nullptr;
}

}  // namespace

// ── public operations ───────────────────────────────────────────────────────

std::string select_template(const Lexicon& lexicon, const ClauseDescriptor& clause) {
    const Lexeme& verb = lexicon.lexeme(clause.verb);
    std::string anchor;
    std::string who = clause.verb;
    if (clause.result_adverbial) {
        const Lexeme& adv = lexicon.lexeme(*clause.result_adverbial);
        auto target = lexicon.result_adjective(adv.id);
        if (adv.pos != Pos::RB || !target)
            throw AnalyzeError(Code::NotShiftEligible,
                               "'" + adv.id + "' is not a shift-eligible adverbial");
        anchor = lexicon.lexeme(*target).spelling;
        who = adv.id;
    } else {
        anchor = verb_anchor_spelling(lexicon, verb);
    }
    std::optional<std::string> pp_spelling;
    if (clause.pp) pp_spelling = lexicon.lexeme(clause.pp->second).spelling;
    return choose_template(lexicon, anchor, clause.quantifier.has_value(), pp_spelling, who)
        ->id;
}

OppositionPartition detect_opposition(const Lexicon& lexicon, const std::string& verb_id,
                                      const std::vector<std::string>& adjectives) {
    const Lexeme& verb = lexicon.lexeme(verb_id);
    const Lexeme* anchor = nullptr;
    if (auto id = lexicon.result_adjective(verb_id)) {
        anchor = &lexicon.lexeme(*id);
    } else {
        auto candidates = anchored_templates(lexicon, verb_anchor_spelling(lexicon, verb));
        const EventTemplate* best = nullptr;
        for (const auto* t : candidates)
            if (!best || template_number(t->id) < template_number(best->id)) best = t;
        if (best) anchor = opposition_anchor(lexicon, *best, verb);
    }
    OppositionPartition out;
    for (const auto& adj : adjectives) {
        lexicon.lexeme(adj);
        if (anchor && lexicon.opposed(anchor->id, adj)) out.opposed.push_back(adj);
        else out.persisted.push_back(adj);
    }
    return out;
}

AnalysisPlan apply_adverbial_shift(const Lexicon& lexicon, const AnalysisPlan& base,
                                   const std::string& adverb_id) {
    const Lexeme& adv = lexicon.lexeme(adverb_id);
    if (adv.pos != Pos::RB)
        throw AnalyzeError(Code::NotShiftEligible,
                           "'" + adverb_id + "' has POS " + pos_to_string(adv.pos) +
                               ", shift requires RB");
    auto target = lexicon.result_adjective(adverb_id);
    if (!target)
        throw AnalyzeError(Code::NotShiftEligible,
                           "'" + adverb_id + "' declares no result state");
    const Lexeme& anchor = lexicon.lexeme(*target);
    const EventTemplate* tmpl =
        choose_template(lexicon, anchor.spelling, false, std::nullopt, adverb_id);
    AnalysisPlan plan = base;
    plan.template_id = tmpl->id;
    plan.etype = EventType::transition(TransitionSubtype::Accomplishment);
    plan.anchor_adjective = anchor.id;
    plan.shifted = true;
    return plan;
}

NpState np_state(const Lexicon& lexicon, const std::string& object_id,
                 const std::vector<std::string>& adjective_ids) {
    const Lexeme& object = lexicon.lexeme(object_id);
    if (object.pos != Pos::NN && object.pos != Pos::NNP)
        throw AnalyzeError(Code::BadPos, "np_state object '" + object_id + "' has POS " +
                                             pos_to_string(object.pos));
    NpState out;
    if (adjective_ids.empty()) {
        out.shape = NpState::Shape::Entity;
        out.term = make_entity(object.referent);
        return out;
    }
    TermPtr term = make_attribution(make_entity(object.referent),
                                    make_state(lexicon.lexeme(adjective_ids[0]).spelling));
    for (std::size_t i = 1; i < adjective_ids.size(); ++i)
        term = make_apply("IS", make_attribution(
                                    term, make_state(lexicon.lexeme(adjective_ids[i]).spelling)));
    out.term = make_apply("IS", std::move(term));
    out.shape = adjective_ids.size() == 1 ? NpState::Shape::PlainSingleState
                                          : NpState::Shape::MultiState;
    return out;
}

TermPtr persistence_variant(const Lexicon& lexicon, const Analysis& analysis,
                            const std::string& persisted_adjective, double p) {
    if (!(p > 0.5 && p <= 1.0))
        throw AnalyzeError(Code::BadWeight, "persistence weight must lie in (0.5, 1]");
    const Lexeme& adj = lexicon.lexeme(persisted_adjective);
    if (p == 1.0) return analysis.lcs;  // certainty: plain conjunct stands

    auto matches = [&](const TermPtr& t) {
        return t->kind == TermKind::Apply && t->name == "IS" &&
               t->argument()->kind == TermKind::Attribution &&
               t->argument()->state()->kind == TermKind::State &&
               t->argument()->state()->name == adj.spelling;
    };
    auto variant = [&](const TermPtr& conjunct) {
        const TermPtr& attr = conjunct->argument();
        TermPtr negated = make_apply(
            "IS", make_attribution(attr->subject(),
                                   make_apply("NOT", make_state(adj.spelling))));
        return make_disjunction({conjunct, negated}, {p, 1.0 - p});
    };

    if (matches(analysis.lcs)) return variant(analysis.lcs);
    if (analysis.lcs->kind == TermKind::And) {
        std::vector<TermPtr> conjuncts;
        bool found = false;
        for (const auto& c : analysis.lcs->children) {
            if (!found && matches(c)) {
                conjuncts.push_back(variant(c));
                found = true;
            } else {
                conjuncts.push_back(c);
            }
        }
        if (found) return make_conjunction(std::move(conjuncts));
    }
    throw AnalyzeError(Code::NoPersistedAdjective,
                       "analysis has no persisted conjunct for '" + persisted_adjective + "'");
}

// ── analyze ─────────────────────────────────────────────────────────────────

Analysis analyze(const Lexicon& lexicon, const ClauseDescriptor& clause,
                 const AnalyzerConfig& config) {
    const Lexeme& subject = lexicon.lexeme(clause.subject);
    const Lexeme& verb = lexicon.lexeme(clause.verb);
    const Lexeme& object = lexicon.lexeme(clause.object);

    std::vector<const Lexeme*> adjectives;
    for (const auto& id : clause.adjectives) {
        const Lexeme& adj = lexicon.lexeme(id);
        if (adj.pos != Pos::JJ && adj.pos != Pos::VBG)
            throw AnalyzeError(Code::BadPos,
                               "adjective '" + id + "' has POS " + pos_to_string(adj.pos));
        adjectives.push_back(&adj);
    }

    double p = clause.persistence_p.value_or(config.persistence_p);
    if (!(p > 0.5 && p <= 1.0))
        throw AnalyzeError(Code::BadWeight, "persistence weight must lie in (0.5, 1]");

    // Plan: template, event type, opposition anchor.
    AnalysisPlan plan;
    if (clause.result_adverbial) {
        plan.etype = EventType::process();
        plan = apply_adverbial_shift(lexicon, plan, *clause.result_adverbial);
    } else {
        plan.template_id = select_template(lexicon, clause);
        plan.etype = lexicon.event_template(plan.template_id).etype;
    }
    const EventTemplate& tmpl = lexicon.event_template(plan.template_id);
    const Lexeme* anchor = plan.shifted ? &lexicon.lexeme(plan.anchor_adjective)
                                        : opposition_anchor(lexicon, tmpl, verb);

    // Bind template variables: agent from the subject, the last transitioning
    // attribution from the object, a second attribution from the pp object.
    std::vector<AttrSlot> attrs;
    collect_become_attrs(tmpl.lcs, false, attrs);
    if (attrs.empty())
        throw AnalyzeError(Code::MissingClausePart,
                           "template '" + tmpl.id + "' has no transitioning state");

    std::map<std::string, std::string> bindings;  // var -> lexeme id
    if (auto agent = find_agent_var(tmpl.lcs)) bindings[*agent] = subject.id;
    if (attrs.back().is_var) bindings[attrs.back().name] = object.id;
    if (attrs.size() == 2 && attrs.front().is_var) {
        if (!clause.pp)
            throw AnalyzeError(Code::MissingClausePart,
                               "template '" + tmpl.id + "' needs a prepositional object");
        bindings[attrs.front().name] = clause.pp->second;
    }
    for (const auto& [var, _] : tmpl.slots)
        if (!bindings.count(var))
            throw AnalyzeError(Code::MissingClausePart,
                               "no clause part binds variable '" + var + "' of template '" +
                                   tmpl.id + "'");

    for (const auto& [var, lexeme_id] : bindings)
        if (!lexicon.can_bind(tmpl.id, var, lexeme_id))
            throw AnalyzeError(Code::BindingRejected, "BindingRejected(" + tmpl.id + ", " +
                                                          var + ", " + lexeme_id + ")");

    // Opposition partition of the clause adjectives.
    OppositionPartition partition;
    for (const auto* adj : adjectives) {
        if (anchor && lexicon.opposed(anchor->id, adj->id))
            partition.opposed.push_back(adj->id);
        else
            partition.persisted.push_back(adj->id);
    }

    // Referent map for substitution and predicate arguments.
    std::map<std::string, std::string> referents;
    for (const auto& [var, lexeme_id] : bindings)
        referents[var] = lexicon.lexeme(lexeme_id).referent;
    auto slot_referent = [&](const AttrSlot& slot) {
        return slot.is_var ? referents.at(slot.name) : slot.name;
    };

    // LCS: the instantiated template plus one [IS ...] conjunct per persisted
    // adjective whose state the template does not already mention.
    TermPtr lcs_main = substitute(tmpl.lcs, referents);
    std::set<std::string> template_states;
    for (const auto& a : attrs) template_states.insert(a.state);
    {
        std::vector<AttrSlot> all_attrs;
        collect_become_attrs(tmpl.lcs, true, all_attrs);  // includes [IS ...] states
        for (const auto& a : all_attrs) template_states.insert(a.state);
    }

    std::vector<TermPtr> conjuncts{lcs_main};
    for (const auto& adj_id : partition.persisted) {
        const Lexeme& adj = lexicon.lexeme(adj_id);
        if (template_states.count(adj.spelling)) continue;
        TermPtr conjunct = make_apply(
            "IS", make_attribution(make_entity(object.referent), make_state(adj.spelling)));
        if (!clause.assume_persistence && p < 1.0) {
            TermPtr negated = make_apply(
                "IS", make_attribution(make_entity(object.referent),
                                       make_apply("NOT", make_state(adj.spelling))));
            conjunct = make_disjunction({conjunct, negated}, {p, 1.0 - p});
        }
        conjuncts.push_back(std::move(conjunct));
    }
    TermPtr lcs = normalize(conjuncts.size() == 1 ? conjuncts.front()
                                                  : make_conjunction(std::move(conjuncts)));

    // ES and LCS'.
    std::string subject_ref = subject.referent;
    std::string object_ref = object.referent;
    std::string act_target = slot_referent(attrs.front());
    if (clause.quantifier) act_target = "every(" + act_target + ")";
    PredicateAtom act{false, "act", {subject_ref, act_target}};

    Analysis analysis;
    analysis.template_id = tmpl.id;
    analysis.bindings = bindings;

    if (plan.etype.kind == EventKind::T) {
        // Preconditions per transitioning attribution: opposed clause
        // adjectives cover the object's attribution; an attribution with no
        // covering adjective contributes its state adjective's antonyms
        // (implicit preconditions, e.g. plain(water) for the mixture).
        std::vector<PredicateAtom> process{act};
        for (const auto& slot : attrs) {
            std::string ref = slot_referent(slot);
            bool is_object_slot = slot.is_var
                                      ? bindings.at(slot.name) == object.id
                                      : ref == object.referent;
            bool covered = false;
            if (is_object_slot) {
                for (const auto& adj_id : partition.opposed) {
                    process.push_back({false, lexicon.lexeme(adj_id).spelling, {ref}});
                    covered = true;
                }
            }
            if (!covered) {
                if (const Lexeme* state_adj = state_adjective(lexicon, slot.state))
                    for (const auto& ant : antonyms_of(lexicon, state_adj->id))
                        process.push_back({false, lexicon.lexeme(ant).spelling, {ref}});
            }
        }
        std::vector<PredicateAtom> results;
        for (const auto& slot : attrs)
            results.push_back({false, slot.state, {slot_referent(slot)}});
        std::vector<PredicateAtom> persisted;
        for (const auto& adj_id : partition.persisted)
            persisted.push_back({false, lexicon.lexeme(adj_id).spelling, {object_ref}});

        EventNode es = build_transition(process, results,
                                        clause.assume_persistence ? persisted
                                                                  : std::vector<PredicateAtom>{},
                                        plan.etype.subtype);
        if (!clause.assume_persistence)
            for (const auto& a : persisted) es.children[0].predicates.push_back(a);
        analysis.lcs_prime_process = es.process_child().predicates;
        analysis.lcs_prime_state = es.state_child().predicates;
        analysis.es = std::move(es);
    } else {
        std::vector<PredicateAtom> preds{act};
        for (const auto* adj : adjectives)
            preds.push_back({false, adj->spelling, {object_ref}});
        std::vector<std::pair<std::string, std::string>> actions;
        collect_action_atoms(tmpl.lcs, actions);
        for (const auto& [op, target] : actions) {
            std::string ref = referents.count(target) ? referents.at(target) : target;
            preds.push_back({false, op, {ref}});
        }
        analysis.es = build_process(preds, config.subevent_count);
        analysis.lcs_prime_process = analysis.es.predicates;
    }

    analysis.lcs = std::move(lcs);
    return analysis;
}

}  // namespace lexis
