#pragma once

#include <map>
#include <string>
#include <vector>

#include "ach/flat.hpp"
#include "ach/subst.hpp"

namespace ach {

/// One equation between variable sums, both sides counted with
/// multiplicity. A variable may occur on both sides.
struct MultisetEq {
    std::map<std::string, unsigned> left, right;
};

MultisetEq multiset_eq(const std::vector<std::string>& left,
                       const std::vector<std::string>& right);

/// Complete set of AC unifiers of one variable-sum equation.
///
/// Each distinct variable becomes one column of a linear Diophantine
/// equation whose coefficient is its left multiplicity minus its right
/// multiplicity (a variable shared by both sides contributes the merged
/// net coefficient, so the two occurrences stay consistent by
/// construction). One fresh variable is associated to each minimal basis
/// element; subsets of the basis giving every column a nonzero total yield
/// the unifiers, enumerated by increasing subset size and deduplicated
/// modulo renaming of the fresh variables. When a shared variable forces
/// its column to zero in every solution, no subset qualifies and the empty
/// set is returned.
std::vector<Substitution> unify_multiset_eq(const MultisetEq& eq, FreshVars& fresh);

/// Complete set of unifiers for a simultaneous system of sum equations:
/// equations sharing a left variable are paired into multiset equations,
/// the remaining ones bind their left variable; solved one at a time with
/// substitution composition in between, cross-producting the per-equation
/// sets, and pruning duplicates. An empty system yields the identity.
std::vector<Substitution> unify_sum_system(const std::vector<SumEq>& system, FreshVars& fresh);

/// Equational form of a unifier: {x -> t} becomes the flat equation
/// x =? t. Ranges must be variables or sums of variables.
std::vector<FlatEq> to_equations(const Substitution& unifier);

/// Renames the fresh variables of `s` to _v1, _v2, ... in first-occurrence
/// order over the ranges (bindings visited in domain order). Used both to
/// deduplicate unifier sets modulo renaming and to make printed output
/// independent of internal counter state.
Substitution canonical_fresh_renaming(const Substitution& s);

/// Sorts by printed form and drops entries equal modulo fresh renaming.
std::vector<Substitution> dedup_renamed(std::vector<Substitution> subs);

} // namespace ach
