#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ach/ac_unify.hpp"
#include "ach/depth.hpp"
#include "ach/flat.hpp"
#include "ach/subst.hpp"

namespace ach {

enum class FailReason { Occur, Clash, Bound };

struct EngineLimits {
    std::size_t max_branches = 100000;
    long timeout_ms = -1; // < 0: no timeout
    int max_ac_rounds = 4;
};

/// One search state: remaining flattened equations (sorted, deduplicated),
/// the depth bookkeeping, the substitution accumulated so far, and the
/// branch-local fresh-variable source.
struct State {
    std::vector<FlatEq> eqs;
    DepthMap depths;
    bool depth_exceeded = false;
    std::string depth_culprit;
    Substitution sigma;
    FreshVars fresh;
    int ac_rounds = 0;
};

/// Normalizes a state: sorts and deduplicates the equations (set
/// semantics), seeds missing depth entries at 0, and re-runs depth
/// propagation against `bound`.
State make_state(std::vector<FlatEq> eqs, DepthMap depths, Substitution sigma, FreshVars fresh,
                 unsigned bound, int ac_rounds);

/// Termination measure: splittable sum count, symbol count, unsolved
/// variable count, pre-orientation count (always 0 here, the flat
/// representation is oriented), equation count, and the per-variable depth
/// slack (bound + 1 - depth) as a multiset. Compared lexicographically with
/// the multiset extension on the slack component.
struct Measure {
    unsigned splittable = 0;
    unsigned symbols = 0;
    unsigned unsolved = 0;
    unsigned preoriented = 0;
    unsigned eq_count = 0;
    std::vector<unsigned> slack; // sorted descending
};

std::strong_ordering compare(const Measure& a, const Measure& b);
inline bool operator<(const Measure& a, const Measure& b) { return compare(a, b) < 0; }
std::string to_string(const Measure& m);

Measure measure_of(const State& st, unsigned bound);

struct Progressed {
    std::vector<State> branches; // nonempty
    const char* rule;
};
/// No rule applies. Only reachable with an empty equation set, where the
/// accumulated substitution is the branch's answer.
struct Stuck {};
struct Bottom {
    FailReason reason;
};
struct LimitNote {
    std::string what;
};
using StepResult = std::variant<Progressed, Stuck, Bottom, LimitNote>;

/// Applies exactly one rule, chosen by fixed priority: occur check, bound
/// check, trivial, variable-variable elimination, clash, decomposition,
/// splitting, AC unification (only once no other rule fires, and only when
/// two sum equations share a left variable), then variable elimination of
/// the first remaining equation. Depth propagation is folded into successor
/// construction.
StepResult step(const State& st, unsigned bound, const EngineLimits& limits = {});

/// The splitting rule applied to x =? h(y) together with x =? x1 + ... + xn:
/// replaces the sum equation by y =? v1 + ... + vn and xi =? h(vi) for fresh
/// vi. Side conditions (x distinct from y and from every xi) are guaranteed
/// by the occur check's priority.
State split_once(const State& st, std::size_t h_idx, std::size_t sum_idx, unsigned bound);

/// Decomposition of two same-headed equations on one variable: keeps the
/// first, drops the second, adds argument-wise equations.
State decompose_once(const State& st, std::size_t first_idx, std::size_t second_idx,
                     unsigned bound);

enum class SolveStatus { Unifiable, NoSolution, ResourceLimit };

struct TraceStep {
    const char* rule;
    Measure before, after;
    bool exempt; // AC unification and VE2 are outside the decrease claim
};

struct SolveStats {
    std::map<std::string, std::size_t> rule_counts;
    std::size_t states_processed = 0;
    std::size_t solved_branches = 0;
    std::size_t failed_branches = 0;
    double ms = 0.0;
};

struct SolveOptions {
    unsigned bound = 10;
    EngineLimits limits;
    bool record_trace = false;
    bool fifo = false; // exploration order; default depth-first
    std::optional<std::uint64_t> shuffle_seed; // randomized pop order
};

struct SolveResult {
    SolveStatus status = SolveStatus::NoSolution;
    /// Restricted to the problem's variables, fresh range variables renamed
    /// canonically, sorted by printed form, duplicates removed.
    std::vector<Substitution> unifiers;
    /// Full per-branch substitutions in exploration order.
    std::vector<Substitution> full;
    SolveStats stats;
    std::vector<TraceStep> trace;
    std::string limit_note;
};

/// Flattens, propagates, then exhausts the rule system over a worklist of
/// branches, collecting the substitution of every branch that empties its
/// equation set. NoSolution is reported only when every branch failed;
/// exceeding a resource limit is reported as ResourceLimit, never as
/// NoSolution.
SolveResult solve(const std::vector<std::pair<Term, Term>>& problem,
                  const SolveOptions& opts = {});

/// Canonical names for the rule counters, in reporting order.
const std::vector<std::string>& rule_names();

} // namespace ach
