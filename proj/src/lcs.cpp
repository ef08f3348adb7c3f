// lcs.cpp — parser, printer, and rewriting for the LCS term language.

#include "lexis/lcs.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace lexis {

namespace {

constexpr double kWeightTolerance = 1e-9;

TermPtr node(TermKind kind, std::string name, std::vector<TermPtr> children,
             std::vector<double> weights = {}, bool plural = false) {
    auto t = std::make_shared<LcsTerm>();
    t->kind = kind;
    t->name = std::move(name);
    t->children = std::move(children);
    t->weights = std::move(weights);
    t->plural = plural;
    return t;
}

}  // namespace

TermPtr make_var(std::string name) { return node(TermKind::Var, std::move(name), {}); }
TermPtr make_entity(std::string name) { return node(TermKind::Entity, std::move(name), {}); }
TermPtr make_state(std::string name) { return node(TermKind::State, std::move(name), {}); }

TermPtr make_attribution(TermPtr subject, TermPtr state) {
    return node(TermKind::Attribution, "", {std::move(subject), std::move(state)});
}

TermPtr make_apply(std::string op, TermPtr argument, bool plural) {
    return node(TermKind::Apply, std::move(op), {std::move(argument)}, {}, plural);
}

TermPtr make_cause(TermPtr agent, TermPtr effect) {
    return node(TermKind::Cause, "", {std::move(agent), std::move(effect)});
}

TermPtr make_agentive(TermPtr agent, TermPtr action) {
    return node(TermKind::Agentive, "", {std::move(agent), std::move(action)});
}

TermPtr make_conjunction(std::vector<TermPtr> conjuncts) {
    return node(TermKind::And, "", std::move(conjuncts));
}

TermPtr make_disjunction(std::vector<TermPtr> disjuncts, std::vector<double> weights) {
    return node(TermKind::Or, "", std::move(disjuncts), std::move(weights));
}

bool is_state_like(const TermPtr& term) {
    if (!term) return false;
    if (term->kind == TermKind::State) return true;
    if (term->kind == TermKind::Apply && term->name == "NOT")
        return is_state_like(term->argument());
    return false;
}

std::string PredicateAtom::to_string() const {
    std::string out = negated ? "!" : "";
    out += predicate;
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i];
    }
    out += ')';
    return out;
}

const std::set<std::string>& default_operators() {
    static const std::set<std::string> ops = {
        "CAUSE", "BECOME", "IS", "ARE", "EVERY",
        "NOT",   "SUBSTANCE-OF", "COMFORT", "CLEAN", "BRUSH"};
    return ops;
}

const std::set<std::string>& template_variables() {
    static const std::set<std::string> vars = {"a", "b", "p", "x", "y", "z"};
    return vars;
}

// ── tokenizer ───────────────────────────────────────────────────────────────

namespace {

enum class Tok { LBracket, RBracket, State, Ident, Amp, Pipe, Colon, Number, End };

struct Token {
    Tok type;
    std::string text;
    std::size_t pos;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '^' || c == '-' || c == '_';
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '[') { out.push_back({Tok::LBracket, "[", i++}); continue; }
        if (c == ']') { out.push_back({Tok::RBracket, "]", i++}); continue; }
        if (c == '&') { out.push_back({Tok::Amp, "&", i++}); continue; }
        if (c == '|') { out.push_back({Tok::Pipe, "|", i++}); continue; }
        if (c == ':') { out.push_back({Tok::Colon, ":", i++}); continue; }
        if (c == '<') {
            std::size_t start = i++;
            std::string name;
            while (i < text.size() && text[i] != '>') {
                if (!ident_char(text[i]))
                    throw LcsParseError(LcsParseError::Code::UnknownToken, i,
                                        "bad character in state name");
                name += text[i++];
            }
            if (i >= text.size())
                throw LcsParseError(LcsParseError::Code::UnknownToken, start,
                                    "unterminated state constant");
            ++i;  // '>'
            if (name.empty())
                throw LcsParseError(LcsParseError::Code::UnknownToken, start,
                                    "empty state constant");
            out.push_back({Tok::State, std::move(name), start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            std::string num;
            int dots = 0;
            while (i < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
                if (text[i] == '.') ++dots;
                num += text[i++];
            }
            if (dots > 1 || num.back() == '.')
                throw LcsParseError(LcsParseError::Code::UnknownToken, start,
                                    "malformed number '" + num + "'");
            out.push_back({Tok::Number, std::move(num), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            std::string name;
            while (i < text.size() && ident_char(text[i])) name += text[i++];
            out.push_back({Tok::Ident, std::move(name), start});
            continue;
        }
        throw LcsParseError(LcsParseError::Code::UnknownToken, i,
                            std::string("unknown token '") + c + "'");
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

// ── recursive-descent parser ────────────────────────────────────────────────

class Parser {
public:
    Parser(std::vector<Token> tokens, const ParseOptions& options)
        : tokens_(std::move(tokens)), options_(options) {}

    TermPtr run() {
        if (peek().type == Tok::End)
            throw err(LcsParseError::Code::EmptyExpression, "empty expression");
        if (peek().type == Tok::RBracket)
            throw err(LcsParseError::Code::UnbalancedBrackets, "unmatched ']'");
        TermPtr t = parse_disj();
        if (peek().type == Tok::RBracket)
            throw err(LcsParseError::Code::UnbalancedBrackets, "unmatched ']'");
        if (peek().type != Tok::End)
            throw err(LcsParseError::Code::UnknownToken, "trailing input");
        return t;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const ParseOptions& options_;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    Token take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

    LcsParseError err(LcsParseError::Code code, const std::string& msg) const {
        return LcsParseError(code, peek().pos, msg);
    }

    bool is_operator(const std::string& name) const {
        return options_.operators.count(name) > 0;
    }
    bool is_variable(const std::string& name) const {
        return options_.variables.count(name) > 0;
    }

    bool at_expr_end() const {
        Tok t = peek().type;
        return t == Tok::End || t == Tok::RBracket;
    }

    // disj := disjunct (":" NUMBER)? ("|" disjunct (":" NUMBER)?)*
    TermPtr parse_disj() {
        std::vector<TermPtr> disjuncts;
        std::vector<double> weights;
        bool any_weight = false;
        for (;;) {
            disjuncts.push_back(parse_disjunct());
            if (peek().type == Tok::Colon) {
                take();
                if (peek().type != Tok::Number)
                    throw err(LcsParseError::Code::UnknownToken, "expected weight after ':'");
                Token w = take();
                double value;
                try {
                    value = std::stod(w.text);
                } catch (const std::exception&) {
                    throw LcsParseError(LcsParseError::Code::UnknownToken, w.pos,
                                        "malformed weight '" + w.text + "'");
                }
                weights.push_back(value);
                any_weight = true;
            } else {
                weights.push_back(-1.0);
            }
            if (peek().type != Tok::Pipe) break;
            take();
        }
        if (disjuncts.size() == 1) return disjuncts.front();
        if (any_weight) {
            double sum = 0.0;
            for (double w : weights) {
                if (w < 0.0)
                    throw err(LcsParseError::Code::MixedWeights,
                              "some but not all disjuncts carry weights");
                sum += w;
            }
            if (std::fabs(sum - 1.0) > kWeightTolerance)
                throw err(LcsParseError::Code::WeightSum, "disjunct weights must sum to 1");
            return make_disjunction(std::move(disjuncts), std::move(weights));
        }
        return make_disjunction(std::move(disjuncts));
    }

    // An operator-initial disjunct applies the operator to everything up to
    // the next '|', ':', or closing bracket, so [SUBSTANCE-OF [y <milky>] &
    // [z <watery>]] is one application over the conjunction while
    // [IS A | IS B] stays a disjunction of two applications.
    TermPtr parse_disjunct() {
        if (peek().type == Tok::Ident && is_operator(peek().text) && peek().text != "CAUSE") {
            Tok next = peek(1).type;
            if (next != Tok::RBracket && next != Tok::End && next != Tok::Pipe &&
                next != Tok::Colon && next != Tok::Amp) {
                Token op = take();
                return finish_apply(op.text, parse_conj(/*apply_arg=*/true));
            }
        }
        return parse_conj(false);
    }

    // conj := seq ("&" seq)*
    TermPtr parse_conj(bool apply_arg) {
        std::vector<TermPtr> conjuncts{parse_seq(apply_arg)};
        while (peek().type == Tok::Amp) {
            take();
            conjuncts.push_back(parse_seq(apply_arg));
        }
        if (conjuncts.size() == 1) return conjuncts.front();
        return make_conjunction(std::move(conjuncts));
    }

    // seq := unit+ followed by a shape rule.
    TermPtr parse_seq(bool apply_arg) {
        std::vector<TermPtr> units;
        std::vector<std::size_t> unit_pos;
        std::vector<std::string> idents;  // raw ident text per unit ("" otherwise)
        while (!at_expr_end() && peek().type != Tok::Amp && peek().type != Tok::Pipe &&
               peek().type != Tok::Colon) {
            unit_pos.push_back(peek().pos);
            if (peek().type == Tok::Ident) {
                idents.push_back(peek(0).text);
            } else {
                idents.push_back("");
            }
            units.push_back(parse_unit());
        }
        if (units.empty())
            throw err(LcsParseError::Code::EmptyExpression, "expected a term");
        return shape(units, idents, unit_pos, apply_arg);
    }

    TermPtr parse_unit() {
        const Token& t = peek();
        switch (t.type) {
            case Tok::State: {
                Token s = take();
                return make_state(s.text);
            }
            case Tok::Ident: {
                Token id = take();
                if (is_variable(id.text)) return make_var(id.text);
                return make_entity(id.text);  // operator idents resolved by shape()
            }
            case Tok::LBracket:
                return parse_bracket();
            default:
                throw err(LcsParseError::Code::UnknownToken, "unexpected token '" + t.text + "'");
        }
    }

    TermPtr parse_bracket() {
        Token open = take();  // '['
        if (peek().type == Tok::End)
            throw LcsParseError(LcsParseError::Code::UnbalancedBrackets, open.pos,
                                "unclosed '['");
        TermPtr content;
        try {
            content = parse_disj();
        } catch (const LcsParseError& e) {
            // Errors at end of input inside a bracket are truncation.
            if (e.code != LcsParseError::Code::UnbalancedBrackets && peek().type == Tok::End)
                throw LcsParseError(LcsParseError::Code::UnbalancedBrackets, open.pos,
                                    "unclosed '['");
            throw;
        }
        if (peek().type != Tok::RBracket)
            throw LcsParseError(LcsParseError::Code::UnbalancedBrackets, open.pos,
                                "missing ']' for '['");
        take();
        return content;
    }

    TermPtr finish_apply(const std::string& op, TermPtr arg) {
        bool plural = (op == "ARE");
        std::string name = plural ? "IS" : op;
        return make_apply(name, std::move(arg), plural);
    }

    TermPtr shape(std::vector<TermPtr>& units, const std::vector<std::string>& idents,
                  const std::vector<std::size_t>& unit_pos, bool apply_arg) {
        if (units.size() == 1) {
            // A lone operator ident outside application position is an error.
            if (!idents[0].empty() && is_operator(idents[0]))
                throw LcsParseError(LcsParseError::Code::BadShape, unit_pos[0],
                                    "operator '" + idents[0] + "' used without an argument");
            return units[0];
        }
        if (units.size() == 2) {
            // [term <state>] or [term [NOT <state>]] -> Attribution
            if (is_state_like(units[1]))
                return make_attribution(units[0], units[1]);
            // [entity [OP ...]] -> Agentive
            bool agent_ok = units[0]->kind == TermKind::Entity || units[0]->kind == TermKind::Var;
            bool action_ok = units[1]->kind == TermKind::Apply ||
                             units[1]->kind == TermKind::Cause ||
                             units[1]->kind == TermKind::Agentive;
            if (agent_ok && action_ok && !idents[0].empty() && !is_operator(idents[0]))
                return make_agentive(units[0], units[1]);
        }
        if (units.size() == 3 && idents[1] == "CAUSE")
            return make_cause(units[0], units[2]);
        // Multi-argument application: [OP a b] means [OP a & b].
        if (apply_arg) return make_conjunction(std::move(units));
        throw LcsParseError(LcsParseError::Code::BadShape, unit_pos[0],
                            "unrecognized bracket shape");
    }
};

}  // namespace

TermPtr parse(std::string_view text, const ParseOptions& options) {
    Parser parser(tokenize(text), options);
    return normalize(parser.run());
}

// ── printer ─────────────────────────────────────────────────────────────────

std::string format_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", w);
    return buf;
}

namespace {

// And prints inline (conjuncts joined by " & "); everything else prints as a
// self-delimiting unit.
std::string print_inline(const TermPtr& term) {
    if (term->kind == TermKind::And) {
        std::string out;
        for (std::size_t i = 0; i < term->children.size(); ++i) {
            if (i) out += " & ";
            out += print_inline(term->children[i]);
        }
        return out;
    }
    return print(term);
}

// Body of an application without its surrounding brackets ("IS [dress <red>]").
std::string apply_body(const TermPtr& term) {
    std::string op = term->plural && term->name == "IS" ? "ARE" : term->name;
    const TermPtr& arg = term->argument();
    // Nested-attribution flattening: [IS [IS [dress <red>] <torn>]] keeps the
    // three-part inner bracket.
    if (arg->kind == TermKind::Attribution && arg->subject()->kind != TermKind::Entity &&
        arg->subject()->kind != TermKind::Var)
        return op + " " + print(arg->subject()) + " " + print(arg->state());
    return op + " " + print_inline(arg);
}

// Disjuncts share the enclosing Or brackets, so an application prints in its
// bare "OP arg" form: [IS [dress <red>] : 0.8 | IS [dress [NOT <red>]] : 0.2].
std::string print_disjunct(const TermPtr& term) {
    if (term->kind == TermKind::Apply) return apply_body(term);
    return print_inline(term);
}

}  // namespace

std::string print(const TermPtr& term) {
    switch (term->kind) {
        case TermKind::Var:
        case TermKind::Entity:
            return term->name;
        case TermKind::State:
            return "<" + term->name + ">";
        case TermKind::Attribution:
            return "[" + print(term->subject()) + " " + print(term->state()) + "]";
        case TermKind::Apply:
            return "[" + apply_body(term) + "]";
        case TermKind::Cause:
            return "[" + print(term->agent()) + " CAUSE " + print(term->effect()) + "]";
        case TermKind::Agentive:
            return "[" + print(term->agent()) + " " + print(term->action()) + "]";
        case TermKind::And:
            return print_inline(term);
        case TermKind::Or: {
            std::string out = "[";
            for (std::size_t i = 0; i < term->children.size(); ++i) {
                if (i) out += " | ";
                out += print_disjunct(term->children[i]);
                if (!term->weights.empty()) out += " : " + format_weight(term->weights[i]);
            }
            return out + "]";
        }
    }
    return "";
}

// ── normalize ───────────────────────────────────────────────────────────────

TermPtr normalize(const TermPtr& term) {
    switch (term->kind) {
        case TermKind::Var:
        case TermKind::Entity:
        case TermKind::State:
            return term;
        case TermKind::Attribution:
            return make_attribution(normalize(term->subject()), normalize(term->state()));
        case TermKind::Apply: {
            TermPtr arg = normalize(term->argument());
            if (term->name == "NOT" && arg->kind == TermKind::Apply && arg->name == "NOT")
                return arg->argument();
            return make_apply(term->name, std::move(arg), term->plural);
        }
        case TermKind::Cause:
            return make_cause(normalize(term->agent()), normalize(term->effect()));
        case TermKind::Agentive:
            return make_agentive(normalize(term->agent()), normalize(term->action()));
        case TermKind::And: {
            std::vector<TermPtr> flat;
            for (const auto& c : term->children) {
                TermPtr n = normalize(c);
                if (n->kind == TermKind::And)
                    flat.insert(flat.end(), n->children.begin(), n->children.end());
                else
                    flat.push_back(std::move(n));
            }
            if (flat.size() == 1) return flat.front();
            return make_conjunction(std::move(flat));
        }
        case TermKind::Or: {
            std::vector<TermPtr> flat;
            std::vector<double> weights;
            bool weighted = !term->weights.empty();
            for (std::size_t i = 0; i < term->children.size(); ++i) {
                TermPtr n = normalize(term->children[i]);
                double w = weighted ? term->weights[i] : 1.0;
                if (n->kind == TermKind::Or) {
                    // Splice nested disjuncts, distributing this slot's weight.
                    bool inner_weighted = !n->weights.empty();
                    for (std::size_t j = 0; j < n->children.size(); ++j) {
                        flat.push_back(n->children[j]);
                        double inner = inner_weighted
                                           ? n->weights[j]
                                           : 1.0 / static_cast<double>(n->children.size());
                        weights.push_back(w * inner);
                    }
                } else {
                    flat.push_back(std::move(n));
                    weights.push_back(w);
                }
            }
            if (flat.size() == 1) return flat.front();
            if (weighted) return make_disjunction(std::move(flat), std::move(weights));
            return make_disjunction(std::move(flat));
        }
    }
    return term;
}

// ── equality ────────────────────────────────────────────────────────────────

namespace {

bool structural_equal(const TermPtr& a, const TermPtr& b) {
    if (a->kind != b->kind || a->name != b->name || a->plural != b->plural)
        return false;
    if (a->children.size() != b->children.size()) return false;
    if (a->weights.empty() != b->weights.empty()) return false;
    for (std::size_t i = 0; i < a->weights.size(); ++i)
        if (std::fabs(a->weights[i] - b->weights[i]) > kWeightTolerance) return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!structural_equal(a->children[i], b->children[i])) return false;
    return true;
}

}  // namespace

bool equal(const TermPtr& a, const TermPtr& b) {
    return structural_equal(normalize(a), normalize(b));
}

// ── substitution and free variables ─────────────────────────────────────────

namespace {

void collect_vars(const TermPtr& term, std::set<std::string>& out) {
    if (term->kind == TermKind::Var) {
        out.insert(term->name);
        return;
    }
    for (const auto& c : term->children) collect_vars(c, out);
}

TermPtr node_copy(const TermPtr& proto, std::vector<TermPtr> children) {
    auto t = std::make_shared<LcsTerm>();
    t->kind = proto->kind;
    t->name = proto->name;
    t->children = std::move(children);
    t->weights = proto->weights;
    t->plural = proto->plural;
    return t;
}

TermPtr substitute_rec(const TermPtr& term,
                       const std::map<std::string, std::string>& bindings) {
    switch (term->kind) {
        case TermKind::Var: {
            auto it = bindings.find(term->name);
            if (it == bindings.end())
                throw SubstituteError(SubstituteError::Code::UnboundVariable, term->name,
                                      "unbound variable '" + term->name + "'");
            return make_entity(it->second);
        }
        case TermKind::Entity:
        case TermKind::State:
            return term;
        default: {
            std::vector<TermPtr> children;
            children.reserve(term->children.size());
            for (const auto& c : term->children) children.push_back(substitute_rec(c, bindings));
            return node_copy(term, std::move(children));
        }
    }
}

}  // namespace

TermPtr substitute(const TermPtr& term,
                   const std::map<std::string, std::string>& bindings,
                   ExtraBindingPolicy policy) {
    if (policy == ExtraBindingPolicy::Error) {
        std::set<std::string> vars = free_vars(term);
        for (const auto& [name, _] : bindings)
            if (!vars.count(name))
                throw SubstituteError(SubstituteError::Code::UnknownBinding, name,
                                      "binding for '" + name + "' does not occur in template");
    }
    return substitute_rec(term, bindings);
}

std::set<std::string> free_vars(const TermPtr& term) {
    std::set<std::string> out;
    collect_vars(term, out);
    return out;
}

}  // namespace lexis
