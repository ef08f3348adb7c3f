// cli.hpp — command-line front end: validate lexicons, run single or batch
// analyses, render ES trees and LCS output, dump canonical lexicon form.

#pragma once

#include <iosfwd>
#include <string>

#include "lexis/analyzer.hpp"

namespace lexis {

enum class OutputMode { Tree, Lcs, Predicates, All };

// One analysis block in the given mode (used by both analyze and batch).
std::string render_analysis(const Analysis& analysis, OutputMode mode);

// Exit status: 0 success, 1 semantic/analysis failure, 2 I/O or syntax
// failure.  Streams are injected so tests can run commands in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lexis
