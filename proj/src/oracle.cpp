#include "ach/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace ach {

namespace {

/// Multiset of summands: a sum's arguments, or the term itself.
std::vector<Term> summands(const Term& t) {
    if (t.kind() == TermKind::Sum)
        return t.args();
    return {t};
}

} // namespace

std::vector<Term> universe_terms(const UniverseSpec& u) {
    const unsigned cap = std::max<unsigned>(u.max_term_size, 1);
    // terms_by_size[s]: all terms of exactly s nodes
    std::vector<std::vector<Term>> by_size(cap + 1);
    for (const auto& c : u.constants)
        by_size[1].push_back(Term::constant(c));

    auto non_sums_upto = [&](unsigned s) {
        std::vector<Term> out;
        for (unsigned k = 1; k <= s; ++k)
            for (const Term& t : by_size[k])
                if (t.kind() != TermKind::Sum)
                    out.push_back(t);
        return out;
    };

    for (unsigned s = 2; s <= cap; ++s) {
        std::vector<Term>& bucket = by_size[s];
        for (const Term& t : by_size[s - 1])
            if (h_height(t) < u.max_h_height)
                bucket.push_back(Term::h(t));
        for (const auto& [fn, arity] : u.free_symbols) {
            if (arity == 0 || arity + 1 > s)
                continue;
            // ordered argument tuples with sizes summing to s - 1
            std::vector<Term> args;
            std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned budget) {
                if (pos == arity) {
                    if (budget == 0)
                        bucket.push_back(Term::app(fn, args));
                    return;
                }
                unsigned reserve = arity - pos - 1; // later arguments need >= 1 node each
                for (unsigned k = 1; budget >= k + reserve; ++k)
                    for (const Term& t : by_size[k]) {
                        args.push_back(t);
                        rec(pos + 1, budget - k);
                        args.pop_back();
                    }
            };
            rec(0, s - 1);
        }
        // sums: non-decreasing sequences of non-sum terms, 2..max_summands
        // parts, sizes summing to s - 1
        std::vector<Term> atoms = non_sums_upto(s - 2 + 1);
        std::vector<Term> parts;
        std::function<void(std::size_t, unsigned)> rec_sum = [&](std::size_t start,
                                                                 unsigned budget) {
            if (parts.size() >= 2 && budget == 0)
                bucket.push_back(Term::sum(parts));
            if (parts.size() == u.max_summands)
                return;
            for (std::size_t i = start; i < atoms.size(); ++i) {
                unsigned k = static_cast<unsigned>(term_size(atoms[i]));
                if (k > budget)
                    continue;
                parts.push_back(atoms[i]);
                rec_sum(i, budget - k);
                parts.pop_back();
            }
        };
        if (u.max_summands >= 2)
            rec_sum(0, s - 1);
    }

    std::vector<Term> all;
    for (unsigned s = 1; s <= cap; ++s) {
        std::sort(by_size[s].begin(), by_size[s].end(),
                  [](const Term& a, const Term& b) { return compare(a, b) < 0; });
        by_size[s].erase(std::unique(by_size[s].begin(), by_size[s].end()), by_size[s].end());
        all.insert(all.end(), by_size[s].begin(), by_size[s].end());
    }
    return all;
}

bool verify_unifier(const std::vector<std::pair<Term, Term>>& problem, const Substitution& sigma,
                    unsigned bound) {
    for (const auto& [s, t] : problem) {
        Term ls = normalize_r1(sigma.apply(s));
        Term rs = normalize_r1(sigma.apply(t));
        if (!ac_equal(ls, rs))
            return false;
        if (h_height(ls) > bound || h_height(rs) > bound)
            return false;
    }
    return true;
}

std::vector<Substitution> enumerate_ground_unifiers(
    const std::vector<std::pair<Term, Term>>& problem, const UniverseSpec& u, unsigned bound,
    std::uint64_t candidate_guard) {
    std::set<std::string> var_set;
    for (const auto& [s, t] : problem) {
        collect_vars(s, var_set);
        collect_vars(t, var_set);
    }
    std::vector<std::string> vars(var_set.begin(), var_set.end());
    std::vector<Term> universe = universe_terms(u);
    if (universe.empty())
        return {};

    double candidates = std::pow(static_cast<double>(universe.size()),
                                 static_cast<double>(vars.size()));
    if (candidates > static_cast<double>(candidate_guard))
        throw TooLargeError("ground enumeration would need " + std::to_string(candidates) +
                            " candidates (guard " + std::to_string(candidate_guard) + ")");

    // an equation can be checked as soon as every variable it mentions is
    // assigned
    std::vector<std::vector<std::size_t>> ready(vars.size() + 1);
    for (std::size_t e = 0; e < problem.size(); ++e) {
        std::set<std::string> vs;
        collect_vars(problem[e].first, vs);
        collect_vars(problem[e].second, vs);
        std::size_t last = 0;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vs.count(vars[i]))
                last = i + 1;
        ready[last].push_back(e);
    }

    std::vector<Substitution> found;
    Substitution partial;
    std::function<bool(std::size_t)> check_ready = [&](std::size_t depth) {
        for (std::size_t e : ready[depth]) {
            Term ls = normalize_r1(partial.apply(problem[e].first));
            Term rs = normalize_r1(partial.apply(problem[e].second));
            if (!ac_equal(ls, rs) || h_height(ls) > bound || h_height(rs) > bound)
                return false;
        }
        return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == vars.size()) {
            found.push_back(partial);
            return;
        }
        for (const Term& t : universe) {
            partial.bind(vars[depth], t);
            if (check_ready(depth + 1))
                rec(depth + 1);
            partial.unbind(vars[depth]);
        }
    };
    if (check_ready(0))
        rec(0);
    return found;
}

namespace {

struct Matcher {
    std::map<std::string, Term> binding;
    std::size_t nodes = 0;
    std::size_t guard;

    void tick() {
        if (++nodes > guard)
            throw TooLargeError("ach match guard tripped");
    }

    using Cont = std::function<bool()>;
    using Counts = std::map<Term, unsigned, bool (*)(const Term&, const Term&)>;

    static bool term_lt(const Term& a, const Term& b) { return compare(a, b) < 0; }

    static Counts counts_of(const std::vector<Term>& parts) {
        Counts c(&term_lt);
        for (const Term& p : parts)
            ++c[p];
        return c;
    }

    static Term term_of(const Counts& c) {
        std::vector<Term> parts;
        for (const auto& [t, k] : c)
            for (unsigned i = 0; i < k; ++i)
                parts.push_back(t);
        return parts.size() == 1 ? parts.front() : Term::sum(std::move(parts));
    }

    bool match(const Term& p, const Term& t, const Cont& k) {
        tick();
        switch (p.kind()) {
        case TermKind::Variable: {
            auto it = binding.find(p.symbol());
            if (it != binding.end())
                return ac_equal(it->second, t) && k();
            binding.emplace(p.symbol(), t);
            if (k())
                return true;
            binding.erase(p.symbol());
            return false;
        }
        case TermKind::Constant:
            return p == t && k();
        case TermKind::FreeApp: {
            if (t.kind() != TermKind::FreeApp || t.symbol() != p.symbol() ||
                t.args().size() != p.args().size())
                return false;
            return match_list(p.args(), t.args(), 0, k);
        }
        case TermKind::HApp: {
            if (t.kind() == TermKind::HApp)
                return match(p.args()[0], t.args()[0], k);
            if (t.kind() == TermKind::Sum) {
                std::vector<Term> stripped;
                stripped.reserve(t.args().size());
                for (const Term& part : t.args()) {
                    if (part.kind() != TermKind::HApp)
                        return false;
                    stripped.push_back(part.args()[0]);
                }
                return match(p.args()[0], Term::sum(std::move(stripped)), k);
            }
            return false;
        }
        case TermKind::Sum: {
            if (t.kind() != TermKind::Sum)
                return false;
            Counts remaining = counts_of(t.args());
            std::vector<Term> pat = p.args();
            return match_sum(pat, remaining, k);
        }
        }
        return false;
    }

    bool match_list(const std::vector<Term>& ps, const std::vector<Term>& ts, std::size_t i,
                    const Cont& k) {
        if (i == ps.size())
            return k();
        return match(ps[i], ts[i], [&] { return match_list(ps, ts, i + 1, k); });
    }

    // Picks the most constrained pattern summand first: rigid heads, then
    // already-bound variables, then h-applications, then free variables.
    std::size_t pick(const std::vector<Term>& pat) {
        auto rank = [&](const Term& p) {
            switch (p.kind()) {
            case TermKind::Constant:
            case TermKind::FreeApp:
                return 0;
            case TermKind::Variable:
                return binding.count(p.symbol()) ? 1 : 3;
            case TermKind::HApp:
                return 2;
            default:
                return 4;
            }
        };
        std::size_t best = 0;
        for (std::size_t i = 1; i < pat.size(); ++i)
            if (rank(pat[i]) < rank(pat[best]))
                best = i;
        return best;
    }

    bool match_sum(std::vector<Term>& pat, Counts& remaining, const Cont& k) {
        tick();
        if (pat.empty()) {
            if (!remaining.empty())
                return false;
            return k();
        }
        std::size_t pi = pick(pat);
        Term p = pat[pi];
        pat.erase(pat.begin() + static_cast<std::ptrdiff_t>(pi));
        bool ok = match_part(p, pat, remaining, k);
        pat.insert(pat.begin() + static_cast<std::ptrdiff_t>(pi), p);
        return ok;
    }

    bool match_part(const Term& p, std::vector<Term>& pat, Counts& remaining, const Cont& k) {
        switch (p.kind()) {
        case TermKind::Constant: {
            auto it = remaining.find(p);
            if (it == remaining.end())
                return false;
            take(remaining, p, 1);
            bool ok = match_sum(pat, remaining, k);
            give(remaining, p, 1);
            return ok;
        }
        case TermKind::FreeApp: {
            // try every distinct same-headed target summand
            std::vector<Term> candidates;
            for (const auto& [t, c] : remaining)
                if (t.kind() == TermKind::FreeApp && t.symbol() == p.symbol() &&
                    t.args().size() == p.args().size())
                    candidates.push_back(t);
            for (const Term& cand : candidates) {
                take(remaining, cand, 1);
                bool ok = match(p, cand, [&] { return match_sum(pat, remaining, k); });
                give(remaining, cand, 1);
                if (ok)
                    return true;
            }
            return false;
        }
        case TermKind::Variable: {
            auto it = binding.find(p.symbol());
            if (it != binding.end()) {
                // value's summands must be available verbatim
                std::vector<Term> need = summands(it->second);
                Counts need_counts = counts_of(need);
                for (const auto& [t, c] : need_counts) {
                    auto rt = remaining.find(t);
                    if (rt == remaining.end() || rt->second < c)
                        return false;
                }
                for (const auto& [t, c] : need_counts)
                    take(remaining, t, c);
                bool ok = match_sum(pat, remaining, k);
                for (const auto& [t, c] : need_counts)
                    give(remaining, t, c);
                return ok;
            }
            if (pat.empty()) {
                // last pattern part swallows the rest
                if (remaining.empty())
                    return false;
                Term value = term_of(remaining);
                Counts empty(&term_lt);
                std::swap(remaining, empty);
                binding.emplace(p.symbol(), value);
                bool ok = match_sum(pat, remaining, k);
                if (!ok)
                    binding.erase(p.symbol());
                std::swap(remaining, empty);
                return ok;
            }
            return for_each_submultiset(remaining, /*h_only=*/false, [&](const Counts& chosen) {
                Term value = term_of(chosen);
                binding.emplace(p.symbol(), value);
                for (const auto& [t, c] : chosen)
                    take(remaining, t, c);
                bool ok = match_sum(pat, remaining, k);
                for (const auto& [t, c] : chosen)
                    give(remaining, t, c);
                if (!ok)
                    binding.erase(p.symbol());
                return ok;
            });
        }
        case TermKind::HApp: {
            return for_each_submultiset(remaining, /*h_only=*/true, [&](const Counts& chosen) {
                Term target = term_of(chosen);
                for (const auto& [t, c] : chosen)
                    take(remaining, t, c);
                bool ok = match(p, target, [&] { return match_sum(pat, remaining, k); });
                for (const auto& [t, c] : chosen)
                    give(remaining, t, c);
                return ok;
            });
        }
        default:
            return false; // nested sums cannot appear inside a canonical sum
        }
    }

    static void take(Counts& c, const Term& t, unsigned n) {
        auto it = c.find(t);
        it->second -= n;
        if (it->second == 0)
            c.erase(it);
    }
    static void give(Counts& c, const Term& t, unsigned n) { c[t] += n; }

    /// Enumerates nonempty sub-multisets of `from` (restricted to h-headed
    /// entries when `h_only`), invoking f; f returns true to stop.
    template <typename F>
    bool for_each_submultiset(const Counts& from, bool h_only, F&& f) {
        std::vector<std::pair<Term, unsigned>> entries;
        for (const auto& [t, c] : from)
            if (!h_only || t.kind() == TermKind::HApp)
                entries.emplace_back(t, c);
        if (entries.empty())
            return false;
        std::vector<unsigned> chosen(entries.size(), 0);
        std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
            if (i == entries.size()) {
                bool any = false;
                for (unsigned c : chosen)
                    if (c) {
                        any = true;
                        break;
                    }
                if (!any)
                    return false;
                tick();
                Counts sub(&term_lt);
                for (std::size_t j = 0; j < entries.size(); ++j)
                    if (chosen[j])
                        sub[entries[j].first] = chosen[j];
                return f(sub);
            }
            for (unsigned c = 0; c <= entries[i].second; ++c) {
                chosen[i] = c;
                if (rec(i + 1))
                    return true;
            }
            chosen[i] = 0;
            return false;
        };
        return rec(0);
    }
};

} // namespace

std::optional<Substitution> match_modulo_ach(
    const std::vector<std::pair<Term, Term>>& pattern_target, std::size_t node_guard) {
    Matcher m;
    m.guard = node_guard;
    std::vector<std::pair<Term, Term>> goals;
    goals.reserve(pattern_target.size());
    for (const auto& [p, t] : pattern_target)
        goals.emplace_back(normalize_r1(p), normalize_r1(t));

    std::function<bool(std::size_t)> run = [&](std::size_t i) -> bool {
        if (i == goals.size())
            return true;
        return m.match(goals[i].first, goals[i].second, [&] { return run(i + 1); });
    };
    if (!run(0))
        return std::nullopt;
    Substitution out;
    for (const auto& [v, t] : m.binding)
        out.bind(v, t);
    return out;
}

bool is_instance(const Substitution& sigma, const Substitution& theta,
                 const std::set<std::string>& on, std::size_t node_guard) {
    std::vector<std::pair<Term, Term>> goals;
    for (const auto& x : on) {
        Term xv = Term::variable(x);
        goals.emplace_back(sigma.apply(xv), theta.apply(xv));
    }
    return match_modulo_ach(goals, node_guard).has_value();
}

CompletenessReport check_completeness(const std::vector<std::pair<Term, Term>>& problem,
                                      const std::vector<Substitution>& answers,
                                      const UniverseSpec& u, unsigned bound,
                                      std::uint64_t candidate_guard) {
    std::set<std::string> on;
    for (const auto& [s, t] : problem) {
        collect_vars(s, on);
        collect_vars(t, on);
    }
    CompletenessReport report;
    for (const Substitution& ground : enumerate_ground_unifiers(problem, u, bound, candidate_guard)) {
        ++report.ground_count;
        bool covered = false;
        for (const Substitution& sigma : answers)
            if (is_instance(sigma, ground, on)) {
                covered = true;
                break;
            }
        if (!covered)
            report.uncovered.push_back(ground);
    }
    return report;
}

std::vector<Substitution> minimize_unifiers(std::vector<Substitution> answers,
                                            const std::set<std::string>& on) {
    std::sort(answers.begin(), answers.end(), [](const Substitution& a, const Substitution& b) {
        return to_string(a) < to_string(b);
    });
    const std::size_t n = answers.size();
    std::vector<bool> dropped(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n && !dropped[i]; ++j) {
            if (j == i || dropped[j])
                continue;
            if (!is_instance(answers[j], answers[i], on))
                continue;
            // j is at least as general as i; drop i unless they are
            // equivalent and i is the canonical representative
            if (is_instance(answers[i], answers[j], on) && i < j)
                continue;
            dropped[i] = true;
        }
    }
    std::vector<Substitution> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!dropped[i])
            out.push_back(std::move(answers[i]));
    return out;
}

} // namespace ach
