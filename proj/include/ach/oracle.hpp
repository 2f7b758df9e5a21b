#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ach/subst.hpp"
#include "ach/term.hpp"

namespace ach {

/// Raised when a brute-force search space passes its guard. Never a silent
/// truncation.
struct TooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite, deterministically enumerable set of ground terms.
struct UniverseSpec {
    std::vector<std::string> constants;
    unsigned max_h_height = 2;
    unsigned max_summands = 3;
    std::vector<std::pair<std::string, unsigned>> free_symbols;
    unsigned max_term_size = 4; // node count
};

/// All ground terms within the spec, ordered by size then term order.
std::vector<Term> universe_terms(const UniverseSpec& u);

/// True iff sigma solves every equation modulo the homomorphic AC theory
/// and keeps both instantiated sides within h-height `bound`. Heights are
/// read off the R1-normal form, which the normalization leaves unchanged.
/// Variables outside the domain stand for themselves.
bool verify_unifier(const std::vector<std::pair<Term, Term>>& problem, const Substitution& sigma,
                    unsigned bound);

/// All ground substitutions over the universe that solve the problem within
/// the bound, in deterministic order, one canonical representative per
/// solution. Throws TooLargeError when |universe|^|vars| exceeds the guard.
std::vector<Substitution> enumerate_ground_unifiers(
    const std::vector<std::pair<Term, Term>>& problem, const UniverseSpec& u, unsigned bound,
    std::uint64_t candidate_guard = 10'000'000);

/// Simultaneous match of pattern terms against target terms modulo the
/// homomorphic AC theory. Every variable occurring in a pattern may be
/// bound; target occurrences are rigid. Sums are matched by brute force
/// over multiset partitions; an h-pattern may absorb a group of h-headed
/// summands through the homomorphism identity. Throws TooLargeError past
/// `node_guard` explored nodes.
std::optional<Substitution> match_modulo_ach(
    const std::vector<std::pair<Term, Term>>& pattern_target, std::size_t node_guard = 2'000'000);

/// Def-4 style generality: true iff some instantiation of sigma's range
/// variables makes x*sigma equal x*theta modulo the theory for every x in
/// `on`. With theta ground this is the instance-of test.
bool is_instance(const Substitution& sigma, const Substitution& theta,
                 const std::set<std::string>& on, std::size_t node_guard = 2'000'000);

struct CompletenessReport {
    std::size_t ground_count = 0;
    std::vector<Substitution> uncovered;
    bool ok() const { return uncovered.empty(); }
};

/// Checks that every ground unifier found by enumeration is an instance of
/// some member of `answers` on the problem's variables.
CompletenessReport check_completeness(const std::vector<std::pair<Term, Term>>& problem,
                                      const std::vector<Substitution>& answers,
                                      const UniverseSpec& u, unsigned bound,
                                      std::uint64_t candidate_guard = 10'000'000);

/// Removes every member that is an instance of another (keeping the
/// canonically first of mutually-equivalent pairs). On a complete input the
/// result is the minimal complete set.
std::vector<Substitution> minimize_unifiers(std::vector<Substitution> answers,
                                            const std::set<std::string>& on);

} // namespace ach
