#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ach/term.hpp"

namespace ach {

struct ParseError : std::runtime_error {
    ParseError(int line, int col, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + what),
          line(line), col(col) {}
    int line, col;
};

/// A parsed problem file.
///
/// Grammar, line oriented; `#` starts a comment anywhere:
///   bound: <nat>                       (optional, default 10)
///   vars: <id> <id> ...
///   consts: <id> <id> ...
///   problem:
///   <term> =? <term>                   (one equation per line)
///
/// Term syntax: `ident`, `ident(t, ..., t)` for free symbols, `h(t)`,
/// `t + t` with + at lowest precedence and parentheses allowed.
/// Identifiers are [a-zA-Z][a-zA-Z0-9_]*; the prefix `_v` is reserved for
/// generated variables; `h` is reserved. Every bare identifier must be
/// declared as a variable or constant; applied identifiers are free symbols
/// with arity fixed by first use.
struct ProblemFile {
    unsigned bound = 10;
    bool bound_set = false;
    std::vector<std::string> vars;
    std::vector<std::string> consts;
    std::map<std::string, unsigned> free_arity;
    std::vector<std::pair<Term, Term>> equations;

    std::set<std::string> var_set() const { return {vars.begin(), vars.end()}; }
};

ProblemFile parse_problem(std::string_view text);

} // namespace ach
