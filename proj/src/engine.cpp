#include "ach/engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <deque>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ach {

namespace rule {
constexpr const char* kTrivial = "trivial";
constexpr const char* kVe1 = "ve1";
constexpr const char* kVe2 = "ve2";
constexpr const char* kOrient = "orient";
constexpr const char* kDecompose = "decompose";
constexpr const char* kSplitting = "splitting";
constexpr const char* kAcUnify = "ac_unify";
constexpr const char* kOccurCheck = "occur_check";
constexpr const char* kClash = "clash";
constexpr const char* kBoundCheck = "bound_check";
} // namespace rule

const std::vector<std::string>& rule_names() {
    static const std::vector<std::string> names = {
        rule::kTrivial,  rule::kVe1,        rule::kVe2,   rule::kOrient,
        rule::kDecompose, rule::kSplitting, rule::kAcUnify, rule::kOccurCheck,
        rule::kClash,    rule::kBoundCheck,
    };
    return names;
}

State make_state(std::vector<FlatEq> eqs, DepthMap depths, Substitution sigma, FreshVars fresh,
                 unsigned bound, int ac_rounds) {
    std::sort(eqs.begin(), eqs.end(), flat_less);
    eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());
    DepthOutcome out = propagate_depths(eqs, std::move(depths), bound);
    State st;
    st.eqs = std::move(eqs);
    st.depths = std::move(out.depths);
    st.depth_exceeded = out.exceeded;
    st.depth_culprit = out.culprit;
    st.sigma = std::move(sigma);
    st.fresh = fresh;
    st.ac_rounds = ac_rounds;
    return st;
}

std::strong_ordering compare(const Measure& a, const Measure& b) {
    if (auto c = a.splittable <=> b.splittable; c != 0)
        return c;
    if (auto c = a.symbols <=> b.symbols; c != 0)
        return c;
    if (auto c = a.unsolved <=> b.unsolved; c != 0)
        return c;
    if (auto c = a.preoriented <=> b.preoriented; c != 0)
        return c;
    if (auto c = a.eq_count <=> b.eq_count; c != 0)
        return c;
    // Dershowitz-Manna order on finite multisets of naturals coincides with
    // lexicographic comparison of the descending-sorted sequences, shorter
    // prefix smaller.
    return std::lexicographical_compare_three_way(a.slack.begin(), a.slack.end(),
                                                  b.slack.begin(), b.slack.end());
}

std::string to_string(const Measure& m) {
    std::ostringstream os;
    os << "(" << m.splittable << ", " << m.symbols << ", " << m.unsolved << ", " << m.preoriented
       << ", " << m.eq_count << ", {";
    for (std::size_t i = 0; i < m.slack.size(); ++i)
        os << (i ? " " : "") << m.slack[i];
    os << "})";
    return os.str();
}

Measure measure_of(const State& st, unsigned bound) {
    Measure m;
    m.eq_count = static_cast<unsigned>(st.eqs.size());
    std::set<std::string> h_heads;
    for (const FlatEq& eq : st.eqs)
        if (std::holds_alternative<HEq>(eq))
            h_heads.insert(left_of(eq));

    std::map<std::string, unsigned> occurrences;
    std::map<std::string, unsigned> left_counts;
    for (const FlatEq& eq : st.eqs) {
        ++occurrences[left_of(eq)];
        ++left_counts[left_of(eq)];
        if (const auto* ve = std::get_if<VarVarEq>(&eq)) {
            ++occurrences[ve->right];
        } else if (const auto* he = std::get_if<HEq>(&eq)) {
            ++occurrences[he->arg];
            m.symbols += 1;
        } else if (const auto* se = std::get_if<SumEq>(&eq)) {
            for (const auto& p : se->parts)
                ++occurrences[p];
            m.symbols += static_cast<unsigned>(se->parts.size()) - 1;
            if (h_heads.count(se->left))
                ++m.splittable;
        } else if (const auto* fe = std::get_if<FreeEq>(&eq)) {
            for (const auto& a : fe->args)
                ++occurrences[a];
            m.symbols += 1;
        }
    }
    for (const auto& [v, occ] : occurrences) {
        bool solved = occ == 1 && left_counts[v] == 1;
        if (!solved)
            ++m.unsolved;
    }
    for (const auto& [v, occ] : occurrences) {
        auto it = st.depths.find(v);
        unsigned d = it == st.depths.end() ? 0 : it->second;
        m.slack.push_back(bound + 1 >= d ? bound + 1 - d : 0);
        (void)occ;
    }
    std::sort(m.slack.rbegin(), m.slack.rend());
    return m;
}

namespace {

/// Renames a single variable inside a flat equation, left side included.
FlatEq rename_in_eq(const FlatEq& eq, const std::string& from, const std::string& to) {
    struct V {
        const std::string& from;
        const std::string& to;
        const std::string& fix(const std::string& v) const { return v == from ? to : v; }
        FlatEq operator()(const VarVarEq& e) const { return VarVarEq{fix(e.left), fix(e.right)}; }
        FlatEq operator()(const HEq& e) const { return HEq{fix(e.left), fix(e.arg)}; }
        FlatEq operator()(const SumEq& e) const {
            SumEq out{fix(e.left), {}};
            out.parts.reserve(e.parts.size());
            for (const auto& p : e.parts)
                out.parts.push_back(fix(p));
            std::sort(out.parts.begin(), out.parts.end());
            return out;
        }
        FlatEq operator()(const FreeEq& e) const {
            FreeEq out{fix(e.left), e.fn, {}};
            out.args.reserve(e.args.size());
            for (const auto& a : e.args)
                out.args.push_back(fix(a));
            return out;
        }
    };
    return std::visit(V{from, to}, eq);
}

/// Variable-variable orientation: eliminate the variable generated later,
/// keeping user variables in solution ranges; between two user variables the
/// left one goes.
std::pair<std::string, std::string> ve1_orientation(const std::string& l, const std::string& r) {
    const bool lf = FreshVars::is_fresh(l);
    const bool rf = FreshVars::is_fresh(r);
    if (lf != rf)
        return lf ? std::make_pair(l, r) : std::make_pair(r, l);
    if (lf && rf)
        return FreshVars::index_of(l) >= FreshVars::index_of(r) ? std::make_pair(l, r)
                                                                : std::make_pair(r, l);
    return {l, r};
}

struct PairScan {
    std::optional<std::pair<std::size_t, std::size_t>> clash, decomp, split;
    bool ac_pair = false;
};

PairScan scan_same_left(const std::vector<FlatEq>& eqs) {
    PairScan scan;
    std::size_t i = 0;
    while (i < eqs.size()) {
        std::size_t j = i;
        while (j < eqs.size() && left_of(eqs[j]) == left_of(eqs[i]))
            ++j;
        for (std::size_t a = i; a < j; ++a) {
            for (std::size_t b = a + 1; b < j; ++b) {
                const FlatEq& A = eqs[a];
                const FlatEq& B = eqs[b];
                const bool ha = std::holds_alternative<HEq>(A);
                const bool hb = std::holds_alternative<HEq>(B);
                const bool sa = std::holds_alternative<SumEq>(A);
                const bool sb = std::holds_alternative<SumEq>(B);
                const bool fa = std::holds_alternative<FreeEq>(A);
                const bool fb = std::holds_alternative<FreeEq>(B);
                if (ha && hb) {
                    if (!scan.decomp)
                        scan.decomp = {a, b};
                } else if (fa && fb) {
                    if (std::get<FreeEq>(A).fn == std::get<FreeEq>(B).fn) {
                        if (!scan.decomp)
                            scan.decomp = {a, b};
                    } else if (!scan.clash) {
                        scan.clash = {a, b};
                    }
                } else if ((ha && fb) || (fa && hb) || (sa && fb) || (fa && sb)) {
                    if (!scan.clash)
                        scan.clash = {a, b};
                } else if (ha && sb) {
                    if (!scan.split)
                        scan.split = {a, b};
                } else if (sa && hb) {
                    if (!scan.split)
                        scan.split = {b, a};
                } else if (sa && sb) {
                    scan.ac_pair = true;
                }
            }
        }
        i = j;
    }
    return scan;
}

} // namespace

State split_once(const State& st, std::size_t h_idx, std::size_t sum_idx, unsigned bound) {
    const auto& he = std::get<HEq>(st.eqs[h_idx]);
    const auto& se = std::get<SumEq>(st.eqs[sum_idx]);
    assert(he.left == se.left);
    assert(he.left != he.arg);
    FreshVars fresh = st.fresh;
    DepthMap depths = st.depths;

    std::vector<FlatEq> eqs;
    eqs.reserve(st.eqs.size() + se.parts.size());
    for (std::size_t k = 0; k < st.eqs.size(); ++k)
        if (k != sum_idx)
            eqs.push_back(st.eqs[k]);

    std::vector<std::string> fresh_parts;
    fresh_parts.reserve(se.parts.size());
    for (std::size_t k = 0; k < se.parts.size(); ++k) {
        std::string v = fresh.next();
        depths.emplace(v, 0);
        fresh_parts.push_back(v);
        eqs.push_back(HEq{se.parts[k], v});
    }
    std::sort(fresh_parts.begin(), fresh_parts.end());
    eqs.push_back(SumEq{he.arg, std::move(fresh_parts)});
    return make_state(std::move(eqs), std::move(depths), st.sigma, fresh, bound, st.ac_rounds);
}

State decompose_once(const State& st, std::size_t first_idx, std::size_t second_idx,
                     unsigned bound) {
    std::vector<FlatEq> eqs;
    eqs.reserve(st.eqs.size() + 2);
    for (std::size_t k = 0; k < st.eqs.size(); ++k)
        if (k != second_idx)
            eqs.push_back(st.eqs[k]);
    const FlatEq& A = st.eqs[first_idx];
    const FlatEq& B = st.eqs[second_idx];
    if (const auto* ha = std::get_if<HEq>(&A)) {
        const auto& hb = std::get<HEq>(B);
        eqs.push_back(VarVarEq{ha->arg, hb.arg});
    } else {
        const auto& fa = std::get<FreeEq>(A);
        const auto& fb = std::get<FreeEq>(B);
        assert(fa.fn == fb.fn && fa.args.size() == fb.args.size());
        for (std::size_t k = 0; k < fa.args.size(); ++k)
            eqs.push_back(VarVarEq{fa.args[k], fb.args[k]});
    }
    return make_state(std::move(eqs), st.depths, st.sigma, st.fresh, bound, st.ac_rounds);
}

StepResult step(const State& st, unsigned bound, const EngineLimits& limits) {
    const auto& eqs = st.eqs;
    if (eqs.empty())
        return Stuck{};

    // occur check, highest priority; the side condition looks through sigma
    for (const FlatEq& eq : eqs) {
        if (std::holds_alternative<VarVarEq>(eq))
            continue;
        Term rhs = st.sigma.apply(rhs_term(eq));
        if (occurs(left_of(eq), rhs))
            return Bottom{FailReason::Occur};
    }

    if (st.depth_exceeded)
        return Bottom{FailReason::Bound};

    for (std::size_t i = 0; i < eqs.size(); ++i) {
        const auto* ve = std::get_if<VarVarEq>(&eqs[i]);
        if (ve && ve->left == ve->right) {
            std::vector<FlatEq> rest;
            rest.reserve(eqs.size() - 1);
            for (std::size_t k = 0; k < eqs.size(); ++k)
                if (k != i)
                    rest.push_back(eqs[k]);
            return Progressed{
                {make_state(std::move(rest), st.depths, st.sigma, st.fresh, bound, st.ac_rounds)},
                rule::kTrivial};
        }
    }

    for (std::size_t i = 0; i < eqs.size(); ++i) {
        const auto* ve = std::get_if<VarVarEq>(&eqs[i]);
        if (!ve)
            continue;
        auto [gone, kept] = ve1_orientation(ve->left, ve->right);
        std::vector<FlatEq> rest;
        rest.reserve(eqs.size() - 1);
        for (std::size_t k = 0; k < eqs.size(); ++k)
            if (k != i)
                rest.push_back(rename_in_eq(eqs[k], gone, kept));
        Substitution sigma = st.sigma;
        sigma.compose_with(gone, Term::variable(kept));
        DepthMap depths = st.depths;
        unsigned dg = depths.count(gone) ? depths[gone] : 0;
        unsigned& dk = depths[kept];
        dk = std::max(dk, dg);
        return Progressed{
            {make_state(std::move(rest), std::move(depths), std::move(sigma), st.fresh, bound,
                        st.ac_rounds)},
            rule::kVe1};
    }

    // Orient never fires: the flat representation keeps variables on the left.

    PairScan scan = scan_same_left(eqs);
    if (scan.clash)
        return Bottom{FailReason::Clash};
    if (scan.decomp)
        return Progressed{{decompose_once(st, scan.decomp->first, scan.decomp->second, bound)},
                          rule::kDecompose};
    if (scan.split)
        return Progressed{{split_once(st, scan.split->first, scan.split->second, bound)},
                          rule::kSplitting};

    if (scan.ac_pair) {
        if (st.ac_rounds >= limits.max_ac_rounds)
            return LimitNote{"ac unification round limit reached"};
        std::vector<SumEq> psi;
        std::vector<FlatEq> rest;
        for (const FlatEq& eq : eqs) {
            if (const auto* se = std::get_if<SumEq>(&eq))
                psi.push_back(*se);
            else
                rest.push_back(eq);
        }
        FreshVars fresh = st.fresh;
        std::vector<Substitution> thetas = unify_sum_system(psi, fresh);
        if (thetas.empty())
            return Bottom{FailReason::Clash};
        std::vector<State> branches;
        branches.reserve(thetas.size());
        for (const Substitution& theta : thetas) {
            std::vector<FlatEq> next = rest;
            for (FlatEq& eq : to_equations(theta))
                next.push_back(std::move(eq));
            branches.push_back(make_state(std::move(next), st.depths, st.sigma, fresh, bound,
                                          st.ac_rounds + 1));
        }
        return Progressed{std::move(branches), rule::kAcUnify};
    }

    // variable elimination of the first equation; all left variables are
    // distinct here and the occur check already passed
    {
        const FlatEq& eq = eqs.front();
        const std::string& x = left_of(eq);
        Term t = rhs_term(eq);
        Substitution single;
        single.bind(x, t);

        std::vector<FlatEq> rest;
        DepthMap depths = st.depths;
        FreshVars fresh = st.fresh;
        for (std::size_t k = 1; k < eqs.size(); ++k) {
            assert(left_of(eqs[k]) != x);
            if (!mentions_in_rhs(eqs[k], x)) {
                rest.push_back(eqs[k]);
                continue;
            }
            Term new_rhs = single.apply(rhs_term(eqs[k]));
            flatten_onto(left_of(eqs[k]), new_rhs, rest, depths, fresh);
        }
        Substitution sigma = st.sigma;
        sigma.compose_with(x, t);
        return Progressed{
            {make_state(std::move(rest), std::move(depths), std::move(sigma), fresh, bound,
                        st.ac_rounds)},
            rule::kVe2};
    }
}

namespace {

Substitution presentable(const Substitution& full, const std::set<std::string>& keep) {
    return canonical_fresh_renaming(full.restricted(keep));
}

} // namespace

SolveResult solve(const std::vector<std::pair<Term, Term>>& problem, const SolveOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    for (const auto& name : rule_names())
        res.stats.rule_counts[name] = 0;

    std::set<std::string> problem_vars;
    for (const auto& [s, t] : problem) {
        collect_vars(s, problem_vars);
        collect_vars(t, problem_vars);
    }

    FreshVars fresh;
    FlattenResult flat = flatten(problem, fresh);
    State root = make_state(std::move(flat.equations), std::move(flat.depth_seed), Substitution{},
                            fresh, opts.bound, 0);

    std::deque<State> work;
    work.push_back(std::move(root));
    std::mt19937_64 rng(opts.shuffle_seed.value_or(0));
    bool limited = false;

    while (!work.empty()) {
        if (opts.limits.timeout_ms >= 0) {
            auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
            if (elapsed > opts.limits.timeout_ms) {
                limited = true;
                res.limit_note = "timeout";
                break;
            }
        }
        State st = [&]() {
            if (opts.shuffle_seed) {
                std::uniform_int_distribution<std::size_t> pick(0, work.size() - 1);
                std::size_t i = pick(rng);
                std::swap(work[i], work.back());
                State out = std::move(work.back());
                work.pop_back();
                return out;
            }
            if (opts.fifo) {
                State out = std::move(work.front());
                work.pop_front();
                return out;
            }
            State out = std::move(work.back());
            work.pop_back();
            return out;
        }();
        ++res.stats.states_processed;

        Measure before;
        if (opts.record_trace)
            before = measure_of(st, opts.bound);

        StepResult r = step(st, opts.bound, opts.limits);
        if (auto* p = std::get_if<Progressed>(&r)) {
            ++res.stats.rule_counts[p->rule];
            const bool exempt =
                std::string_view(p->rule) == rule::kAcUnify || std::string_view(p->rule) == rule::kVe2;
            for (State& b : p->branches) {
                if (opts.record_trace)
                    res.trace.push_back({p->rule, before, measure_of(b, opts.bound), exempt});
                work.push_back(std::move(b));
            }
            if (work.size() > opts.limits.max_branches) {
                limited = true;
                res.limit_note = "branch limit";
                break;
            }
        } else if (std::get_if<Stuck>(&r)) {
            if (!st.eqs.empty())
                throw std::logic_error("engine stuck on a nonempty equation set");
            ++res.stats.solved_branches;
            res.full.push_back(st.sigma);
        } else if (auto* b = std::get_if<Bottom>(&r)) {
            ++res.stats.failed_branches;
            switch (b->reason) {
            case FailReason::Occur:
                ++res.stats.rule_counts[rule::kOccurCheck];
                break;
            case FailReason::Clash:
                ++res.stats.rule_counts[rule::kClash];
                break;
            case FailReason::Bound:
                ++res.stats.rule_counts[rule::kBoundCheck];
                break;
            }
        } else if (auto* l = std::get_if<LimitNote>(&r)) {
            limited = true;
            if (res.limit_note.empty())
                res.limit_note = l->what;
        }
    }

    std::vector<std::pair<std::string, Substitution>> keyed;
    for (const Substitution& full : res.full) {
        Substitution u = presentable(full, problem_vars);
        keyed.emplace_back(to_string(u), std::move(u));
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string last;
    for (auto& [key, u] : keyed) {
        if (!res.unifiers.empty() && key == last)
            continue;
        last = key;
        res.unifiers.push_back(std::move(u));
    }

    res.status = limited              ? SolveStatus::ResourceLimit
                 : res.unifiers.empty() ? SolveStatus::NoSolution
                                        : SolveStatus::Unifiable;
    res.stats.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                       .count();
    return res;
}

} // namespace ach
