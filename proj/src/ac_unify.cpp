#include "ach/ac_unify.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ach/dioph.hpp"

namespace ach {

namespace {

using VarCount = std::map<std::string, unsigned>;

Term term_of_counts(const VarCount& m) {
    std::vector<Term> parts;
    for (const auto& [v, k] : m)
        for (unsigned i = 0; i < k; ++i)
            parts.push_back(Term::variable(v));
    if (parts.empty())
        throw std::logic_error("term_of_counts: empty multiset");
    return parts.size() == 1 ? parts.front() : Term::sum(std::move(parts));
}

/// Enumerates index combinations of size k from [0, n) in lexicographic
/// order, invoking f on each; f returns false to keep going, true to stop.
template <typename F>
bool for_each_combination(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    if (k > n)
        return false;
    while (true) {
        if (f(idx))
            return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

MultisetEq multiset_eq(const std::vector<std::string>& left,
                       const std::vector<std::string>& right) {
    MultisetEq eq;
    for (const auto& v : left)
        ++eq.left[v];
    for (const auto& v : right)
        ++eq.right[v];
    return eq;
}

std::vector<Substitution> unify_multiset_eq(const MultisetEq& eq, FreshVars& fresh) {
    if (eq.left.empty() || eq.right.empty())
        throw std::invalid_argument("unify_multiset_eq: both sides must be nonempty");
    if (eq.left == eq.right)
        return {Substitution{}};

    // A bare variable against a sum it does not occur in binds directly.
    if (eq.left.size() == 1 && eq.left.begin()->second == 1 &&
        !eq.right.count(eq.left.begin()->first)) {
        Substitution s;
        s.bind(eq.left.begin()->first, term_of_counts(eq.right));
        return {s};
    }
    if (eq.right.size() == 1 && eq.right.begin()->second == 1 &&
        !eq.left.count(eq.right.begin()->first)) {
        Substitution s;
        s.bind(eq.right.begin()->first, term_of_counts(eq.left));
        return {s};
    }

    std::vector<std::string> cols;
    std::vector<long long> coeffs;
    {
        std::set<std::string> names;
        for (const auto& [v, k] : eq.left)
            names.insert(v);
        for (const auto& [v, k] : eq.right)
            names.insert(v);
        for (const auto& v : names) {
            long long l = 0, r = 0;
            if (auto it = eq.left.find(v); it != eq.left.end())
                l = it->second;
            if (auto it = eq.right.find(v); it != eq.right.end())
                r = it->second;
            cols.push_back(v);
            coeffs.push_back(l - r);
        }
    }

    auto basis = minimal_solutions(coeffs);
    const std::size_t n = basis.size();
    if (n > 22)
        throw std::runtime_error("unify_multiset_eq: basis too large for subset enumeration");

    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        names.push_back(fresh.next());

    std::vector<Substitution> out;
    for (std::size_t size = 1; size <= n; ++size) {
        for_each_combination(n, size, [&](const std::vector<std::size_t>& subset) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                unsigned total = 0;
                for (std::size_t k : subset)
                    total += basis[k][i];
                if (total == 0)
                    return false;
            }
            Substitution s;
            for (std::size_t i = 0; i < cols.size(); ++i) {
                std::vector<Term> parts;
                for (std::size_t k : subset)
                    for (unsigned c = 0; c < basis[k][i]; ++c)
                        parts.push_back(Term::variable(names[k]));
                s.bind(cols[i], parts.size() == 1 ? parts.front() : Term::sum(std::move(parts)));
            }
            out.push_back(std::move(s));
            return false;
        });
    }
    return dedup_renamed(std::move(out));
}

namespace {

/// Applies a partial unifier (ranges are variables or variable sums) to a
/// variable multiset.
VarCount instantiate_counts(const VarCount& counts, const Substitution& s) {
    VarCount out;
    for (const auto& [v, k] : counts) {
        const Term* b = s.find(v);
        if (!b) {
            out[v] += k;
            continue;
        }
        if (b->is_var()) {
            out[b->symbol()] += k;
        } else if (b->kind() == TermKind::Sum) {
            for (const Term& p : b->args()) {
                if (!p.is_var())
                    throw std::logic_error("unify_sum_system: non-variable summand in range");
                out[p.symbol()] += k;
            }
        } else {
            throw std::logic_error("unify_sum_system: range is not a variable sum");
        }
    }
    return out;
}

Substitution compose_subst(const Substitution& sigma, const Substitution& theta) {
    Substitution out;
    for (const auto& [v, t] : sigma.bindings())
        out.bind(v, theta.apply(t));
    for (const auto& [v, t] : theta.bindings())
        if (!out.binds(v))
            out.bind(v, t);
    return out;
}

} // namespace

std::vector<Substitution> unify_sum_system(const std::vector<SumEq>& system, FreshVars& fresh) {
    std::vector<Substitution> partials{Substitution{}};
    if (system.empty())
        return partials;

    std::vector<SumEq> eqs = system;
    std::sort(eqs.begin(), eqs.end());
    eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());

    // Jobs are multiset equations. Two equations with the same left variable
    // pair up right against right; every group then contributes one binding
    // job {x} =? rhs. Pair jobs run before binding jobs.
    std::vector<std::pair<VarCount, VarCount>> jobs;
    std::vector<std::pair<VarCount, VarCount>> binding_jobs;
    for (std::size_t i = 0; i < eqs.size();) {
        std::size_t j = i;
        while (j < eqs.size() && eqs[j].left == eqs[i].left)
            ++j;
        VarCount first;
        for (const auto& p : eqs[i].parts)
            ++first[p];
        for (std::size_t k = i + 1; k < j; ++k) {
            VarCount other;
            for (const auto& p : eqs[k].parts)
                ++other[p];
            jobs.emplace_back(first, std::move(other));
        }
        VarCount lhs;
        lhs[eqs[i].left] = 1;
        binding_jobs.emplace_back(std::move(lhs), std::move(first));
        i = j;
    }
    jobs.insert(jobs.end(), binding_jobs.begin(), binding_jobs.end());

    for (const auto& [jl, jr] : jobs) {
        std::vector<Substitution> next;
        for (const Substitution& sigma : partials) {
            VarCount l = instantiate_counts(jl, sigma);
            VarCount r = instantiate_counts(jr, sigma);
            if (l == r) {
                next.push_back(sigma);
                continue;
            }
            MultisetEq me{std::move(l), std::move(r)};
            for (Substitution& theta : unify_multiset_eq(me, fresh))
                next.push_back(compose_subst(sigma, theta));
        }
        partials = std::move(next);
        if (partials.empty())
            break;
    }
    return dedup_renamed(std::move(partials));
}

std::vector<FlatEq> to_equations(const Substitution& unifier) {
    std::vector<FlatEq> out;
    for (const auto& [x, t] : unifier.bindings()) {
        if (t.is_var()) {
            out.push_back(VarVarEq{x, t.symbol()});
        } else if (t.kind() == TermKind::Sum) {
            std::vector<std::string> parts;
            parts.reserve(t.args().size());
            for (const Term& p : t.args()) {
                if (!p.is_var())
                    throw std::logic_error("to_equations: non-variable summand");
                parts.push_back(p.symbol());
            }
            out.push_back(SumEq{x, std::move(parts)});
        } else {
            throw std::logic_error("to_equations: range is not a variable sum");
        }
    }
    return out;
}

Substitution canonical_fresh_renaming(const Substitution& s) {
    std::map<std::string, std::string> rename;
    unsigned next = 0;
    // indices assigned scanning bindings in domain order, range variables in
    // canonical term order
    for (const auto& [v, t] : s.bindings()) {
        std::set<std::string> vs;
        collect_vars(t, vs);
        for (const auto& w : vs) {
            if (!FreshVars::is_fresh(w) || rename.count(w))
                continue;
            rename.emplace(w, std::string(FreshVars::kPrefix) + std::to_string(++next));
        }
        (void)v;
    }
    Substitution renamer;
    for (const auto& [from, to] : rename)
        if (from != to)
            renamer.bind(from, Term::variable(to));
    Substitution out;
    for (const auto& [v, t] : s.bindings())
        out.bind(v, renamer.apply(t));
    return out;
}

std::vector<Substitution> dedup_renamed(std::vector<Substitution> subs) {
    std::vector<std::pair<std::string, Substitution>> keyed;
    keyed.reserve(subs.size());
    for (Substitution& s : subs) {
        Substitution canon = canonical_fresh_renaming(s);
        keyed.emplace_back(to_string(canon), std::move(s));
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Substitution> out;
    std::string last;
    for (auto& [key, s] : keyed) {
        if (!out.empty() && key == last)
            continue;
        last = key;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace ach
