// support.hpp — shared fixtures for the test and acceptance suites: repo
// paths, the shipped lexicon, the golden corpus, and a seeded random-term
// generator for round-trip properties.

#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lexis/analyzer.hpp"
#include "lexis/lexicon.hpp"

namespace lexis::testing {

inline std::string repo_path(const std::string& rel) {
    return std::string(LEXIS_REPO_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline const Lexicon& shipped_lexicon() {
    static Lexicon lex = load_file(repo_path("data/lexicon.lexf"));
    return lex;
}

struct GoldenItem {
    std::string id;           // "1a", "2b", ...
    std::string clause_line;  // CLAUSE ...
    std::string expected_lcs;
};

// Pairs the CLAUSE lines of corpus.clauses with expected_lcs.tsv in order.
inline const std::vector<GoldenItem>& golden_corpus() {
    static std::vector<GoldenItem> items = [] {
        std::vector<std::string> clauses;
        {
            std::istringstream in(read_file(repo_path("data/golden/corpus.clauses")));
            std::string line;
            while (std::getline(in, line)) {
                if (line.rfind("CLAUSE", 0) == 0) clauses.push_back(line);
            }
        }
        std::vector<GoldenItem> out;
        std::istringstream in(read_file(repo_path("data/golden/expected_lcs.tsv")));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            GoldenItem item;
            item.id = line.substr(0, tab);
            item.expected_lcs = line.substr(tab + 1);
            out.push_back(std::move(item));
        }
        if (out.size() != clauses.size())
            throw std::runtime_error("golden corpus and expected LCS lists disagree");
        for (std::size_t i = 0; i < out.size(); ++i) out[i].clause_line = clauses[i];
        return out;
    }();
    return items;
}

// ── seeded term generator ───────────────────────────────────────────────────
//
// Produces normalized terms whose printed form reparses to the same
// structure: no nested And/And or Or/Or, no NOT-NOT chains, agents and
// attribution subjects restricted to the shapes the grammar can read back.

class TermGenerator {
public:
    explicit TermGenerator(std::uint64_t seed) : rng_(seed) {}

    TermPtr term(int depth) { return gen(depth, /*allow_var=*/true); }

    static const std::set<std::string>& variables() { return template_variables(); }

private:
    std::mt19937_64 rng_;

    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

    std::string entity_name() {
        static const std::vector<std::string> pool = {
            "m",       "j",     "w",       "dress", "faucet",  "tire",
            "water",   "milk",  "child",   "house", "man",     "table",
            "glass",   "carpet", "mend^1", "person-cathie", "carpet^1"};
        return pool[pick(static_cast<int>(pool.size()))];
    }

    std::string var_name() {
        static const std::vector<std::string> pool = {"x", "y", "z", "a", "b", "p"};
        return pool[pick(static_cast<int>(pool.size()))];
    }

    std::string state_name() {
        static const std::vector<std::string> pool = {
            "mended", "torn", "red", "blue", "fixed", "clean",
            "dirty",  "milky", "watery", "filled-with-water"};
        return pool[pick(static_cast<int>(pool.size()))];
    }

    std::string operator_name(bool action) {
        static const std::vector<std::string> actions = {"COMFORT", "CLEAN", "BRUSH"};
        static const std::vector<std::string> plain = {"BECOME", "IS", "EVERY",
                                                       "SUBSTANCE-OF"};
        const auto& pool = action ? actions : plain;
        return pool[pick(static_cast<int>(pool.size()))];
    }

    TermPtr leaf(bool allow_var) {
        switch (pick(allow_var ? 3 : 2)) {
            case 0: return make_entity(entity_name());
            case 1: return make_state(state_name());
            default: return make_var(var_name());
        }
    }

    TermPtr simple_subject(bool allow_var) {
        if (allow_var && pick(2) == 0) return make_var(var_name());
        return make_entity(entity_name());
    }

    TermPtr state_like_term() {
        TermPtr s = make_state(state_name());
        if (pick(3) == 0) return make_apply("NOT", s);
        return s;
    }

    TermPtr attribution(int depth, bool allow_var) {
        TermPtr subject;
        switch (depth > 1 ? pick(3) : 0) {
            case 1: subject = attribution(depth - 1, allow_var); break;
            case 2: subject = apply(depth - 1, allow_var); break;
            default: subject = simple_subject(allow_var); break;
        }
        return make_attribution(subject, state_like_term());
    }

    TermPtr apply(int depth, bool allow_var) {
        std::string op = operator_name(false);
        bool plural = op == "IS" && pick(4) == 0;
        TermPtr arg;
        switch (depth > 1 ? pick(3) : 0) {
            case 1: arg = apply(depth - 1, allow_var); break;
            case 2: {
                std::vector<TermPtr> conj;
                int n = 2 + pick(2);
                for (int i = 0; i < n; ++i) conj.push_back(attribution(depth - 1, allow_var));
                arg = make_conjunction(std::move(conj));
                break;
            }
            default: arg = attribution(depth - 1, allow_var); break;
        }
        return make_apply(op, std::move(arg), plural);
    }

    TermPtr action_term(int depth, bool allow_var) {
        switch (depth > 1 ? pick(3) : 0) {
            case 1: return make_cause(simple_subject(allow_var), apply(depth - 1, allow_var));
            case 2:
                return make_agentive(simple_subject(allow_var),
                                     make_apply(operator_name(true),
                                                attribution(depth - 1, allow_var)));
            default: return make_apply(operator_name(true), attribution(depth - 1, allow_var));
        }
    }

    // Conjuncts/disjuncts: self-delimiting shapes only.
    TermPtr junct(int depth, bool allow_var) {
        switch (depth > 1 ? pick(4) : 3) {
            case 0: return make_cause(simple_subject(allow_var), apply(depth - 1, allow_var));
            case 1: return attribution(depth, allow_var);
            case 2:
                return make_agentive(simple_subject(allow_var), action_term(depth - 1, allow_var));
            default: return apply(depth, allow_var);
        }
    }

    std::vector<double> weights(int n) {
        // Multiples of 1/64 so printing and reparsing is exact.
        std::vector<int> grid(n, 1);
        int rest = 64 - n;
        for (int i = 0; i < n - 1; ++i) {
            int take = rest > 0 ? pick(rest + 1) : 0;
            grid[i] += take;
            rest -= take;
        }
        grid[n - 1] += rest;
        std::vector<double> out;
        for (int g : grid) out.push_back(static_cast<double>(g) / 64.0);
        return out;
    }

    TermPtr gen(int depth, bool allow_var) {
        if (depth <= 0) return leaf(allow_var);
        switch (pick(8)) {
            case 0: return leaf(allow_var);
            case 1: return attribution(depth, allow_var);
            case 2: return apply(depth, allow_var);
            case 3: return make_cause(simple_subject(allow_var), apply(depth - 1, allow_var));
            case 4:
                return make_agentive(simple_subject(allow_var), action_term(depth - 1, allow_var));
            case 5: {
                std::vector<TermPtr> conj;
                int n = 2 + pick(3);
                for (int i = 0; i < n; ++i) conj.push_back(junct(depth - 1, allow_var));
                return make_conjunction(std::move(conj));
            }
            default: {
                std::vector<TermPtr> disj;
                int n = 2 + pick(2);
                for (int i = 0; i < n; ++i) disj.push_back(junct(depth - 1, allow_var));
                if (pick(2) == 0) {
                    auto w = weights(n);
                    return make_disjunction(std::move(disj), std::move(w));
                }
                return make_disjunction(std::move(disj));
            }
        }
    }
};

}  // namespace lexis::testing
