#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ach/term.hpp"

namespace ach {

/// x =? y
struct VarVarEq {
    std::string left, right;
    auto operator<=>(const VarVarEq&) const = default;
};

/// x =? h(arg)
struct HEq {
    std::string left, arg;
    auto operator<=>(const HEq&) const = default;
};

/// x =? y1 + ... + yn, parts sorted, counted with multiplicity, n >= 2.
struct SumEq {
    std::string left;
    std::vector<std::string> parts;
    auto operator<=>(const SumEq&) const = default;
};

/// x =? f(x1, ..., xn); n may be 0, which covers constants.
struct FreeEq {
    std::string left, fn;
    std::vector<std::string> args;
    auto operator<=>(const FreeEq&) const = default;
};

using FlatEq = std::variant<VarVarEq, HEq, SumEq, FreeEq>;

const std::string& left_of(const FlatEq& eq);
/// The right-hand side rebuilt as a term.
Term rhs_term(const FlatEq& eq);
void collect_eq_vars(const FlatEq& eq, std::set<std::string>& out);
bool mentions_in_rhs(const FlatEq& eq, const std::string& var);

std::strong_ordering compare(const FlatEq& a, const FlatEq& b);
inline bool flat_less(const FlatEq& a, const FlatEq& b) { return compare(a, b) < 0; }
std::string to_string(const FlatEq& eq);

/// Source of variables guaranteed disjoint from user identifiers: the
/// parser rejects user names starting with the reserved prefix.
class FreshVars {
public:
    static constexpr std::string_view kPrefix = "_v";

    std::string next();
    unsigned generated() const { return counter_; }

    static bool is_fresh(std::string_view name);
    /// Generation index of a fresh name; 0 for non-fresh names. Used to
    /// orient variable elimination towards eliminating the newest variable.
    static unsigned index_of(std::string_view name);

private:
    unsigned counter_ = 0;
};

using DepthMap = std::map<std::string, unsigned>;

struct FlattenResult {
    std::vector<FlatEq> equations;
    /// Every variable of the problem, original and fresh, mapped to 0.
    DepthMap depth_seed;
    /// For input pair i, the indices of the equation(s) carrying its two
    /// sides: equal indices when one side was already a variable.
    std::vector<std::pair<std::size_t, std::size_t>> tops;
};

/// Rewrites a system of term equations into the four flattened shapes,
/// introducing fresh variables for nested subterms. Nested sums collapse
/// into a single n-ary SumEq. The result is a conservative extension:
/// substituting the fresh variables back out reproduces the input modulo AC.
FlattenResult flatten(const std::vector<std::pair<Term, Term>>& problem, FreshVars& fresh);

/// Flattens `left =? rhs` onto an existing variable, appending definitions
/// for fresh subterm names to `out` and seeding them in `seed`. Returns the
/// index of the equation whose left side is `left`.
std::size_t flatten_onto(const std::string& left, const Term& rhs, std::vector<FlatEq>& out,
                         DepthMap& seed, FreshVars& fresh);

} // namespace ach
