// lexicon.cpp — LEXF parsing, canonical save, and lexicon queries.

#include "lexis/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace lexis {

std::string pos_to_string(Pos pos) {
    switch (pos) {
        case Pos::VB: return "VB";
        case Pos::VBD: return "VBD";
        case Pos::VBG: return "VBG";
        case Pos::NN: return "NN";
        case Pos::NNP: return "NNP";
        case Pos::JJ: return "JJ";
        case Pos::RB: return "RB";
        case Pos::DT: return "DT";
        case Pos::IN: return "IN";
    }
    return "NN";
}

std::optional<Pos> pos_from_string(const std::string& tag) {
    static const std::map<std::string, Pos> table = {
        {"VB", Pos::VB},   {"VBD", Pos::VBD}, {"VBG", Pos::VBG},
        {"NN", Pos::NN},   {"NNP", Pos::NNP}, {"JJ", Pos::JJ},
        {"RB", Pos::RB},   {"DT", Pos::DT},   {"IN", Pos::IN}};
    auto it = table.find(tag);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

const char* diagnostic_code_name(Diagnostic::Code code) {
    switch (code) {
        case Diagnostic::Code::SyntaxError: return "SyntaxError";
        case Diagnostic::Code::DanglingReference: return "DanglingReference";
        case Diagnostic::Code::DuplicateId: return "DuplicateId";
        case Diagnostic::Code::BadPos: return "BadPos";
        case Diagnostic::Code::SlotMismatch: return "SlotMismatch";
        case Diagnostic::Code::SelfRelation: return "SelfRelation";
    }
    return "Error";
}

std::string Diagnostic::to_string(const std::string& file) const {
    std::string out = "ERROR ";
    out += file.empty() ? "<lexicon>" : file;
    out += ":" + std::to_string(line) + " ";
    out += diagnostic_code_name(code);
    out += ": ";
    out += message;
    return out;
}

// ── queries ─────────────────────────────────────────────────────────────────

const Lexeme* Lexicon::find_lexeme(const std::string& id) const {
    auto it = lexemes.find(id);
    return it == lexemes.end() ? nullptr : &it->second;
}

const EventTemplate* Lexicon::find_template(const std::string& id) const {
    auto it = templates.find(id);
    return it == templates.end() ? nullptr : &it->second;
}

const Lexeme& Lexicon::lexeme(const std::string& id) const {
    const Lexeme* l = find_lexeme(id);
    if (!l)
        throw LookupError(LookupError::Code::UnknownLexeme, id, "unknown lexeme '" + id + "'");
    return *l;
}

const EventTemplate& Lexicon::event_template(const std::string& id) const {
    const EventTemplate* t = find_template(id);
    if (!t)
        throw LookupError(LookupError::Code::UnknownTemplate, id,
                          "unknown template '" + id + "'");
    return *t;
}

bool Lexicon::can_bind(const std::string& template_id, const std::string& variable,
                       const std::string& lexeme_id) const {
    const EventTemplate& tmpl = event_template(template_id);
    lexeme(lexeme_id);
    auto slot = tmpl.slots.find(variable);
    if (slot == tmpl.slots.end())
        throw LookupError(LookupError::Code::UnknownVariable, variable,
                          "template '" + template_id + "' has no variable '" + variable + "'");
    auto let = let_overrides.find({template_id, variable, lexeme_id});
    if (let != let_overrides.end()) return let->second;
    auto caps = capabilities.find(lexeme_id);
    for (const auto& req : slot->second) {
        if (caps == capabilities.end() || !caps->second.count(req)) return false;
    }
    return true;
}

bool Lexicon::antonym_pair(const std::string& a, const std::string& b) const {
    for (const auto& r : relations)
        if (r.kind == RelationKind::Antonym &&
            ((r.a == a && r.b == b) || (r.a == b && r.b == a)))
            return true;
    return false;
}

bool Lexicon::synonym_pair(const std::string& a, const std::string& b) const {
    for (const auto& r : relations)
        if (r.kind == RelationKind::Synonym &&
            ((r.a == a && r.b == b) || (r.a == b && r.b == a)))
            return true;
    return false;
}

bool Lexicon::opposed(const std::string& a, const std::string& b) const {
    lexeme(a);
    lexeme(b);
    if (a == b) return false;
    if (antonym_pair(a, b)) return true;
    for (const auto& r : relations) {
        if (r.kind != RelationKind::Antonym) continue;
        // one synonym hop on either side of the antonym pair
        if (r.a == a && synonym_pair(r.b, b)) return true;
        if (r.b == a && synonym_pair(r.a, b)) return true;
        if (r.a == b && synonym_pair(r.b, a)) return true;
        if (r.b == b && synonym_pair(r.a, a)) return true;
    }
    return false;
}

std::optional<std::string> Lexicon::result_adjective(const std::string& verb_id) const {
    lexeme(verb_id);
    auto it = results.find(verb_id);
    if (it == results.end()) return std::nullopt;
    return it->second;
}

// ── LEXF parsing ────────────────────────────────────────────────────────────

namespace {

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string default_referent(const Lexeme& l) {
    if (l.spelling.empty() || l.spelling.find(' ') != std::string::npos) return l.id;
    return lowercase(l.spelling);
}

// Splits a line into fields, honoring double quotes with \" and \\ escapes.
// Quoted and unquoted runs may be glued (KEY="value").
std::optional<std::vector<std::string>> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool in_field = false, in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '\\' && i + 1 < line.size()) {
                cur += line[++i];
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cur += c;
            }
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            in_field = true;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (in_field) {
                out.push_back(cur);
                cur.clear();
                in_field = false;
            }
            continue;
        }
        cur += c;
        in_field = true;
    }
    if (in_quotes) return std::nullopt;
    if (in_field) out.push_back(cur);
    return out;
}

// KEY=value attribute; returns value or nullopt when the field is not KEY=...
std::optional<std::string> attr(const std::string& field, const std::string& key) {
    if (field.size() < key.size() + 1) return std::nullopt;
    if (field.compare(0, key.size(), key) != 0 || field[key.size()] != '=') return std::nullopt;
    return field.substr(key.size() + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct RawLine {
    int line;
    std::vector<std::string> fields;
};

struct Collector {
    std::vector<Diagnostic> diagnostics;

    void add(Diagnostic::Code code, int line, std::string msg) {
        diagnostics.push_back({code, line, std::move(msg)});
    }
};

}  // namespace

LoadResult load_lenient(std::istream& in) {
    LoadResult result;
    Collector diag;
    Lexicon& lex = result.lexicon;
    lex.operators.clear();

    // Pass 1: split lines into records, grouped by directive so that file
    // order does not matter (fmt canonicalizes arbitrary orderings).
    std::vector<RawLine> operators, lexemes, templates, slots, caps, lets, rels, results;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto fields_opt = split_fields(line);
        if (!fields_opt) {
            diag.add(Diagnostic::Code::SyntaxError, lineno, "unterminated quote");
            continue;
        }
        std::vector<std::string> fields = *fields_opt;
        if (fields.empty() || fields[0][0] == '#') continue;
        const std::string& kind = fields[0];
        RawLine raw{lineno, std::move(fields)};
        if (kind == "OPERATOR") operators.push_back(std::move(raw));
        else if (kind == "LEXEME") lexemes.push_back(std::move(raw));
        else if (kind == "TEMPLATE") templates.push_back(std::move(raw));
        else if (kind == "SLOT") slots.push_back(std::move(raw));
        else if (kind == "CAP") caps.push_back(std::move(raw));
        else if (kind == "LET") lets.push_back(std::move(raw));
        else if (kind == "REL") rels.push_back(std::move(raw));
        else if (kind == "RESULT") results.push_back(std::move(raw));
        else diag.add(Diagnostic::Code::SyntaxError, lineno, "unknown directive '" + kind + "'");
    }

    // Pass 2: build records in dependency order.
    for (const auto& r : operators) {
        if (r.fields.size() != 2) {
            diag.add(Diagnostic::Code::SyntaxError, r.line, "OPERATOR takes one name");
            continue;
        }
        lex.operators.insert(r.fields[1]);
    }
    if (lex.operators.empty()) lex.operators = default_operators();

    for (const auto& r : lexemes) {
        if (r.fields.size() < 2) {
            diag.add(Diagnostic::Code::SyntaxError, r.line, "LEXEME needs an id");
            continue;
        }
        Lexeme l;
        l.id = r.fields[1];
        std::optional<std::string> pos_text, ref;
        bool ok = true;
        for (std::size_t i = 2; i < r.fields.size(); ++i) {
            if (auto v = attr(r.fields[i], "SPELLING")) l.spelling = *v;
            else if (auto v2 = attr(r.fields[i], "SENSE")) l.sense = *v2;
            else if (auto v3 = attr(r.fields[i], "POS")) pos_text = *v3;
            else if (auto v4 = attr(r.fields[i], "REF")) ref = *v4;
            else {
                diag.add(Diagnostic::Code::SyntaxError, r.line,
                         "bad LEXEME attribute '" + r.fields[i] + "'");
                ok = false;
            }
        }
        if (!ok) continue;
        if (!pos_text) {
            diag.add(Diagnostic::Code::SyntaxError, r.line, "LEXEME needs POS=");
            continue;
        }
        auto pos = pos_from_string(*pos_text);
        if (!pos) {
            diag.add(Diagnostic::Code::BadPos, r.line,
                     "'" + *pos_text + "' is not an accepted tag");
            continue;
        }
        l.pos = *pos;
        l.referent = ref.value_or(default_referent(l));
        if (!lex.lexemes.emplace(l.id, l).second)
            diag.add(Diagnostic::Code::DuplicateId, r.line, "duplicate lexeme '" + l.id + "'");
    }

    for (const auto& r : templates) {
        if (r.fields.size() < 2) {
            diag.add(Diagnostic::Code::SyntaxError, r.line, "TEMPLATE needs an id");
            continue;
        }
        EventTemplate t;
        t.id = r.fields[1];
        std::optional<std::string> etype_text, lcs_text;
        for (std::size_t i = 2; i < r.fields.size(); ++i) {
            if (auto v = attr(r.fields[i], "ETYPE")) etype_text = *v;
            else if (auto v2 = attr(r.fields[i], "LCS")) lcs_text = *v2;
        }
        if (!etype_text || !lcs_text) {
            diag.add(Diagnostic::Code::SyntaxError, r.line, "TEMPLATE needs ETYPE= and LCS=");
            continue;
        }
        try {
            t.etype = EventType::from_string(*etype_text);
        } catch (const std::invalid_argument& e) {
            diag.add(Diagnostic::Code::SyntaxError, r.line, e.what());
            continue;
        }
        try {
            ParseOptions opts;
            opts.variables = template_variables();
            opts.operators = lex.operators;
            t.lcs = parse(*lcs_text, opts);
        } catch (const LcsParseError& e) {
            diag.add(Diagnostic::Code::SyntaxError, r.line,
                     "bad LCS in template '" + t.id + "' at offset " +
                         std::to_string(e.position) + ": " + e.what());
            continue;
        }
        for (const auto& v : free_vars(t.lcs)) t.slots[v] = {};
        if (!lex.templates.emplace(t.id, t).second)
            diag.add(Diagnostic::Code::DuplicateId, r.line, "duplicate template '" + t.id + "'");
    }

    for (const auto& r : slots) {
        if (r.fields.size() != 4) {
            diag.add(Diagnostic::Code::SyntaxError, r.line,
                     "SLOT takes <template-id> <var> REQUIRES=...");
            continue;
        }
        auto req = attr(r.fields[3], "REQUIRES");
        if (!req) {
            diag.add(Diagnostic::Code::SyntaxError, r.line, "SLOT needs REQUIRES=");
            continue;
        }
        auto tmpl = lex.templates.find(r.fields[1]);
        if (tmpl == lex.templates.end()) {
            diag.add(Diagnostic::Code::DanglingReference, r.line,
                     "SLOT names unknown template '" + r.fields[1] + "'");
            continue;
        }
        auto slot = tmpl->second.slots.find(r.fields[2]);
        if (slot == tmpl->second.slots.end()) {
            diag.add(Diagnostic::Code::SlotMismatch, r.line,
                     "variable '" + r.fields[2] + "' is not free in template '" +
                         r.fields[1] + "'");
            continue;
        }
        for (const auto& cap : split_commas(*req)) slot->second.insert(cap);
    }

    for (const auto& r : caps) {
        if (r.fields.size() != 3) {
            diag.add(Diagnostic::Code::SyntaxError, r.line, "CAP takes <lexeme-id> <cap,...>");
            continue;
        }
        if (!lex.lexemes.count(r.fields[1])) {
            diag.add(Diagnostic::Code::DanglingReference, r.line,
                     "CAP names unknown lexeme '" + r.fields[1] + "'");
            continue;
        }
        for (const auto& cap : split_commas(r.fields[2]))
            lex.capabilities[r.fields[1]].insert(cap);
    }

    for (const auto& r : lets) {
        if (r.fields.size() != 5 || (r.fields[4] != "0" && r.fields[4] != "1")) {
            diag.add(Diagnostic::Code::SyntaxError, r.line,
                     "LET takes <template-id> <var> <lexeme-id> <0|1>");
            continue;
        }
        auto tmpl = lex.templates.find(r.fields[1]);
        if (tmpl == lex.templates.end()) {
            diag.add(Diagnostic::Code::DanglingReference, r.line,
                     "LET names unknown template '" + r.fields[1] + "'");
            continue;
        }
        if (!tmpl->second.slots.count(r.fields[2])) {
            diag.add(Diagnostic::Code::SlotMismatch, r.line,
                     "variable '" + r.fields[2] + "' is not free in template '" +
                         r.fields[1] + "'");
            continue;
        }
        if (!lex.lexemes.count(r.fields[3])) {
            diag.add(Diagnostic::Code::DanglingReference, r.line,
                     "LET names unknown lexeme '" + r.fields[3] + "'");
            continue;
        }
        auto key = std::make_tuple(r.fields[1], r.fields[2], r.fields[3]);
        if (!lex.let_overrides.emplace(key, r.fields[4] == "1").second)
            diag.add(Diagnostic::Code::DuplicateId, r.line,
                     "duplicate LET entry for (" + r.fields[1] + ", " + r.fields[2] + ", " +
                         r.fields[3] + ")");
    }

    for (const auto& r : rels) {
        if (r.fields.size() != 4) {
            diag.add(Diagnostic::Code::SyntaxError, r.line,
                     "REL takes <ANTONYM|SYNONYM> <id> <id>");
            continue;
        }
        RelationKind kind;
        if (r.fields[1] == "ANTONYM") kind = RelationKind::Antonym;
        else if (r.fields[1] == "SYNONYM") kind = RelationKind::Synonym;
        else {
            diag.add(Diagnostic::Code::SyntaxError, r.line,
                     "unknown relation kind '" + r.fields[1] + "'");
            continue;
        }
        bool ok = true;
        for (int i : {2, 3}) {
            if (!lex.lexemes.count(r.fields[i])) {
                diag.add(Diagnostic::Code::DanglingReference, r.line,
                         "REL names unknown lexeme '" + r.fields[i] + "'");
                ok = false;
            }
        }
        if (!ok) continue;
        if (r.fields[2] == r.fields[3]) {
            diag.add(Diagnostic::Code::SelfRelation, r.line,
                     "relation of '" + r.fields[2] + "' with itself");
            continue;
        }
        SrmRelation rel{kind, std::min(r.fields[2], r.fields[3]),
                        std::max(r.fields[2], r.fields[3])};
        bool dup = std::any_of(lex.relations.begin(), lex.relations.end(), [&](const auto& x) {
            return x.kind == rel.kind && x.a == rel.a && x.b == rel.b;
        });
        if (!dup) lex.relations.push_back(std::move(rel));
    }

    for (const auto& r : results) {
        if (r.fields.size() != 3) {
            diag.add(Diagnostic::Code::SyntaxError, r.line,
                     "RESULT takes <verb-lexeme-id> <adjective-lexeme-id>");
            continue;
        }
        bool ok = true;
        for (int i : {1, 2}) {
            if (!lex.lexemes.count(r.fields[i])) {
                diag.add(Diagnostic::Code::DanglingReference, r.line,
                         "RESULT names unknown lexeme '" + r.fields[i] + "'");
                ok = false;
            }
        }
        if (!ok) continue;
        if (!lex.results.emplace(r.fields[1], r.fields[2]).second)
            diag.add(Diagnostic::Code::DuplicateId, r.line,
                     "duplicate RESULT for '" + r.fields[1] + "'");
    }

    std::stable_sort(diag.diagnostics.begin(), diag.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
    result.diagnostics = std::move(diag.diagnostics);
    return result;
}

Lexicon load(std::istream& in) {
    LoadResult r = load_lenient(in);
    if (!r.diagnostics.empty()) throw LexiconError(r.diagnostics.front());
    return std::move(r.lexicon);
}

Lexicon load_string(const std::string& text) {
    std::istringstream in(text);
    return load(in);
}

Lexicon load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file '" + path + "'");
    return load(in);
}

// ── canonical save ──────────────────────────────────────────────────────────

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string join_caps(const std::set<std::string>& caps) {
    std::string out;
    for (const auto& c : caps) {
        if (!out.empty()) out += ',';
        out += c;
    }
    return out;
}

}  // namespace

std::string save(const Lexicon& lex) {
    std::ostringstream out;
    out << "# LEXF v1\n";
    // The seed operator set is implicit; only a customized set is written out.
    if (lex.operators != default_operators())
        for (const auto& op : lex.operators) out << "OPERATOR " << op << "\n";
    for (const auto& [id, l] : lex.lexemes) {
        out << "LEXEME " << id << " SPELLING=" << quote(l.spelling)
            << " SENSE=" << quote(l.sense) << " POS=" << pos_to_string(l.pos);
        if (l.referent != default_referent(l)) out << " REF=" << l.referent;
        out << "\n";
    }
    for (const auto& [id, t] : lex.templates) {
        out << "TEMPLATE " << id << " ETYPE=" << t.etype.to_string()
            << " LCS=" << quote(print(t.lcs)) << "\n";
    }
    for (const auto& [id, t] : lex.templates)
        for (const auto& [var, req] : t.slots)
            if (!req.empty())
                out << "SLOT " << id << " " << var << " REQUIRES=" << join_caps(req) << "\n";
    for (const auto& [id, caps] : lex.capabilities)
        if (!caps.empty()) out << "CAP " << id << " " << join_caps(caps) << "\n";
    for (const auto& [key, allowed] : lex.let_overrides)
        out << "LET " << std::get<0>(key) << " " << std::get<1>(key) << " "
            << std::get<2>(key) << " " << (allowed ? "1" : "0") << "\n";
    std::vector<SrmRelation> rels = lex.relations;
    std::sort(rels.begin(), rels.end(), [](const SrmRelation& a, const SrmRelation& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.a != b.a) return a.a < b.a;
        return a.b < b.b;
    });
    for (const auto& r : rels)
        out << "REL " << (r.kind == RelationKind::Antonym ? "ANTONYM" : "SYNONYM") << " "
            << r.a << " " << r.b << "\n";
    for (const auto& [verb, adj] : lex.results) out << "RESULT " << verb << " " << adj << "\n";
    return out.str();
}

// ── validate ────────────────────────────────────────────────────────────────

std::vector<Diagnostic> validate(const Lexicon& lex) {
    std::vector<Diagnostic> out;
    auto add = [&](Diagnostic::Code code, const std::string& msg) {
        out.push_back({code, 0, msg});
    };

    for (const auto& [id, t] : lex.templates) {
        if (!t.lcs) {
            add(Diagnostic::Code::SyntaxError, "template '" + id + "' has no LCS");
            continue;
        }
        std::set<std::string> vars = free_vars(t.lcs);
        for (const auto& [var, _] : t.slots)
            if (!vars.count(var))
                add(Diagnostic::Code::SlotMismatch,
                    "template '" + id + "' slot '" + var + "' is not a free variable");
        for (const auto& v : vars)
            if (!t.slots.count(v))
                add(Diagnostic::Code::SlotMismatch,
                    "template '" + id + "' free variable '" + v + "' has no slot");
    }
    for (const auto& [id, _] : lex.capabilities)
        if (!lex.lexemes.count(id))
            add(Diagnostic::Code::DanglingReference, "CAP names unknown lexeme '" + id + "'");
    for (const auto& [key, _] : lex.let_overrides) {
        const auto& [tid, var, lid] = key;
        auto t = lex.templates.find(tid);
        if (t == lex.templates.end())
            add(Diagnostic::Code::DanglingReference, "LET names unknown template '" + tid + "'");
        else if (!t->second.slots.count(var))
            add(Diagnostic::Code::SlotMismatch,
                "LET variable '" + var + "' is not free in template '" + tid + "'");
        if (!lex.lexemes.count(lid))
            add(Diagnostic::Code::DanglingReference, "LET names unknown lexeme '" + lid + "'");
    }
    for (const auto& r : lex.relations) {
        if (r.a == r.b)
            add(Diagnostic::Code::SelfRelation, "relation of '" + r.a + "' with itself");
        for (const auto& id : {r.a, r.b})
            if (!lex.lexemes.count(id))
                add(Diagnostic::Code::DanglingReference,
                    "REL names unknown lexeme '" + id + "'");
    }
    for (const auto& [verb, adj] : lex.results)
        for (const auto& id : {verb, adj})
            if (!lex.lexemes.count(id))
                add(Diagnostic::Code::DanglingReference,
                    "RESULT names unknown lexeme '" + id + "'");
    return out;
}

}  // namespace lexis
