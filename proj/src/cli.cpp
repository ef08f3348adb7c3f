// cli.cpp — subcommand dispatch and output assembly.

#include "lexis/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace lexis {

namespace {

constexpr const char* kSeparator = "----------------------------------------";  // 40 dashes

std::string join_preds(const std::vector<PredicateAtom>& atoms) {
    std::string out;
    for (const auto& a : atoms) {
        if (!out.empty()) out += " & ";
        out += a.to_string();
    }
    return out;
}

struct Session {
    std::string lexicon_path = "./lexicon.lexf";
    std::string mode_name = "all";
    double persistence_p = 0.8;
    bool strict = false;
    bool no_persist = false;

    OutputMode mode() const {
        if (mode_name == "tree") return OutputMode::Tree;
        if (mode_name == "lcs") return OutputMode::Lcs;
        if (mode_name == "predicates") return OutputMode::Predicates;
        return OutputMode::All;
    }
    AnalyzerConfig config() const {
        AnalyzerConfig c;
        c.persistence_p = persistence_p;
        return c;
    }
};

std::optional<Lexicon> open_lexicon(const Session& s, std::ostream& err) {
    std::ifstream in(s.lexicon_path);
    if (!in) {
        err << "error: cannot open lexicon '" << s.lexicon_path << "'\n";
        return std::nullopt;
    }
    try {
        return load(in);
    } catch (const LexiconError& e) {
        err << e.diagnostic.to_string(s.lexicon_path) << "\n";
        return std::nullopt;
    }
}

ClauseDescriptor parse_clause_line(const std::string& line, const Session& s) {
    ClauseDescriptor clause = parse_clause(line);
    if (s.no_persist && line.find("persist=") == std::string::npos)
        clause.assume_persistence = false;
    return clause;
}

int cmd_validate(const Session& s, std::ostream& out, std::ostream& err) {
    (void)out;
    std::ifstream in(s.lexicon_path);
    if (!in) {
        err << "error: cannot open lexicon '" << s.lexicon_path << "'\n";
        return 2;
    }
    LoadResult result = load_lenient(in);
    std::vector<Diagnostic> diagnostics = std::move(result.diagnostics);
    for (const auto& d : validate(result.lexicon)) diagnostics.push_back(d);
    for (const auto& d : diagnostics) err << d.to_string(s.lexicon_path) << "\n";
    return diagnostics.empty() ? 0 : 1;
}

int cmd_analyze(const Session& s, const std::string& clause_line, std::ostream& out,
                std::ostream& err) {
    auto lexicon = open_lexicon(s, err);
    if (!lexicon) return 2;
    try {
        ClauseDescriptor clause = parse_clause_line(clause_line, s);
        Analysis analysis = analyze(*lexicon, clause, s.config());
        out << render_analysis(analysis, s.mode());
    } catch (const AnalyzeError& e) {
        err << "error: " << analyze_error_name(e.code) << ": " << e.what() << "\n";
        return 1;
    } catch (const LookupError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int cmd_batch(const Session& s, const std::string& path, std::ostream& out,
              std::ostream& err) {
    auto lexicon = open_lexicon(s, err);
    if (!lexicon) return 2;
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot open batch file '" << path << "'\n";
        return 2;
    }
    std::string line;
    int lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        try {
            ClauseDescriptor clause = parse_clause_line(trimmed, s);
            Analysis analysis = analyze(*lexicon, clause, s.config());
            if (!first) out << kSeparator << "\n";
            out << render_analysis(analysis, s.mode());
            first = false;
        } catch (const std::exception& e) {
            if (s.strict) {
                err << "error: line " << lineno << ": " << e.what() << "\n";
                return 1;
            }
            err << "warning: line " << lineno << ": " << e.what() << "\n";
        }
    }
    return 0;
}

int cmd_fmt(const Session& s, std::ostream& out, std::ostream& err) {
    std::ifstream in(s.lexicon_path);
    if (!in) {
        err << "error: cannot open lexicon '" << s.lexicon_path << "'\n";
        return 2;
    }
    try {
        out << save(load(in));
    } catch (const LexiconError& e) {
        err << e.diagnostic.to_string(s.lexicon_path) << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

std::string render_analysis(const Analysis& analysis, OutputMode mode) {
    std::ostringstream out;
    switch (mode) {
        case OutputMode::Tree:
            out << render_ascii(analysis.es);
            break;
        case OutputMode::Lcs:
            out << "LCS: " << print(analysis.lcs) << "\n";
            break;
        case OutputMode::Predicates:
            out << "LCS' P: " << join_preds(analysis.lcs_prime_process) << "\n";
            if (!analysis.lcs_prime_state.empty())
                out << "LCS' S: " << join_preds(analysis.lcs_prime_state) << "\n";
            break;
        case OutputMode::All:
            out << "ES:\n" << render_ascii(analysis.es) << "\n";
            out << "LCS' P: " << join_preds(analysis.lcs_prime_process) << "\n";
            if (!analysis.lcs_prime_state.empty())
                out << "LCS' S: " << join_preds(analysis.lcs_prime_state) << "\n";
            out << "LCS: " << print(analysis.lcs) << "\n";
            break;
    }
    return out.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Session session;
    CLI::App app{"lexis: event-structure analyses from clause descriptors"};
    app.require_subcommand(1);
    app.add_option("--lexicon", session.lexicon_path, "lexicon file (LEXF)")
        ->envname("LEXIS_LEXICON");
    app.add_option("--mode", session.mode_name, "output mode")
        ->check(CLI::IsMember({"tree", "lcs", "predicates", "all"}));
    app.add_option("--p", session.persistence_p, "persistence likelihood in (0.5, 1]")
        ->check(CLI::Range(std::nextafter(0.5, 1.0), 1.0));
    app.add_flag("--strict", session.strict, "stop batch processing at the first error");
    app.add_flag("--no-persist", session.no_persist,
                 "emit weighted disjunctions instead of assuming persistence");

    auto* validate_cmd = app.add_subcommand("validate", "check a lexicon file");
    std::string clause_line;
    auto* analyze_cmd = app.add_subcommand("analyze", "analyze one clause descriptor");
    analyze_cmd->add_option("clause", clause_line, "CLAUSE subj=... verb=... obj=... [...]")
        ->required();
    std::string batch_path;
    auto* batch_cmd = app.add_subcommand("batch", "analyze a file of CLAUSE lines");
    batch_cmd->add_option("file", batch_path, "batch file")->required();
    auto* fmt_cmd = app.add_subcommand("fmt", "print the canonical form of a lexicon");
    for (auto* cmd : {validate_cmd, analyze_cmd, batch_cmd, fmt_cmd}) cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(session, out, err);
        if (analyze_cmd->parsed()) return cmd_analyze(session, clause_line, out, err);
        if (batch_cmd->parsed()) return cmd_batch(session, batch_path, out, err);
        if (fmt_cmd->parsed()) return cmd_fmt(session, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace lexis
