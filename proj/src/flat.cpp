#include "ach/flat.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ach {

const std::string& left_of(const FlatEq& eq) {
    return std::visit([](const auto& e) -> const std::string& { return e.left; }, eq);
}

Term rhs_term(const FlatEq& eq) {
    struct V {
        Term operator()(const VarVarEq& e) const { return Term::variable(e.right); }
        Term operator()(const HEq& e) const { return Term::h(Term::variable(e.arg)); }
        Term operator()(const SumEq& e) const {
            std::vector<Term> parts;
            parts.reserve(e.parts.size());
            for (const auto& p : e.parts)
                parts.push_back(Term::variable(p));
            return Term::sum(std::move(parts));
        }
        Term operator()(const FreeEq& e) const {
            if (e.args.empty())
                return Term::constant(e.fn);
            std::vector<Term> args;
            args.reserve(e.args.size());
            for (const auto& a : e.args)
                args.push_back(Term::variable(a));
            return Term::app(e.fn, std::move(args));
        }
    };
    return std::visit(V{}, eq);
}

void collect_eq_vars(const FlatEq& eq, std::set<std::string>& out) {
    out.insert(left_of(eq));
    struct V {
        std::set<std::string>& out;
        void operator()(const VarVarEq& e) const { out.insert(e.right); }
        void operator()(const HEq& e) const { out.insert(e.arg); }
        void operator()(const SumEq& e) const { out.insert(e.parts.begin(), e.parts.end()); }
        void operator()(const FreeEq& e) const { out.insert(e.args.begin(), e.args.end()); }
    };
    std::visit(V{out}, eq);
}

bool mentions_in_rhs(const FlatEq& eq, const std::string& var) {
    struct V {
        const std::string& var;
        bool operator()(const VarVarEq& e) const { return e.right == var; }
        bool operator()(const HEq& e) const { return e.arg == var; }
        bool operator()(const SumEq& e) const {
            return std::find(e.parts.begin(), e.parts.end(), var) != e.parts.end();
        }
        bool operator()(const FreeEq& e) const {
            return std::find(e.args.begin(), e.args.end(), var) != e.args.end();
        }
    };
    return std::visit(V{var}, eq);
}

namespace {

int kind_rank(const FlatEq& eq) {
    return static_cast<int>(eq.index());
}

std::strong_ordering compare_vec(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b) {
    if (auto c = a.size() <=> b.size(); c != 0)
        return c;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (auto c = a[i] <=> b[i]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

} // namespace

std::strong_ordering compare(const FlatEq& a, const FlatEq& b) {
    if (auto c = left_of(a) <=> left_of(b); c != 0)
        return c;
    if (auto c = kind_rank(a) <=> kind_rank(b); c != 0)
        return c;
    switch (a.index()) {
    case 0:
        return std::get<VarVarEq>(a).right <=> std::get<VarVarEq>(b).right;
    case 1:
        return std::get<HEq>(a).arg <=> std::get<HEq>(b).arg;
    case 2:
        return compare_vec(std::get<SumEq>(a).parts, std::get<SumEq>(b).parts);
    default: {
        const auto& fa = std::get<FreeEq>(a);
        const auto& fb = std::get<FreeEq>(b);
        if (auto c = fa.fn <=> fb.fn; c != 0)
            return c;
        return compare_vec(fa.args, fb.args);
    }
    }
}

std::string to_string(const FlatEq& eq) {
    std::ostringstream os;
    os << left_of(eq) << " =? " << to_string(rhs_term(eq));
    return os.str();
}

std::string FreshVars::next() {
    std::ostringstream os;
    os << kPrefix << ++counter_;
    return os.str();
}

bool FreshVars::is_fresh(std::string_view name) {
    return name.size() > kPrefix.size() && name.substr(0, kPrefix.size()) == kPrefix;
}

unsigned FreshVars::index_of(std::string_view name) {
    if (!is_fresh(name))
        return 0;
    unsigned value = 0;
    auto digits = name.substr(kPrefix.size());
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
        return 0;
    return value;
}

std::size_t flatten_onto(const std::string& left, const Term& rhs, std::vector<FlatEq>& out,
                         DepthMap& seed, FreshVars& fresh) {
    auto var_for = [&](const Term& t) -> std::string {
        if (t.is_var())
            return t.symbol();
        std::string v = fresh.next();
        seed.emplace(v, 0);
        flatten_onto(v, t, out, seed, fresh);
        return v;
    };
    switch (rhs.kind()) {
    case TermKind::Variable:
        out.push_back(VarVarEq{left, rhs.symbol()});
        break;
    case TermKind::Constant:
        out.push_back(FreeEq{left, rhs.symbol(), {}});
        break;
    case TermKind::HApp:
        out.push_back(HEq{left, var_for(rhs.args()[0])});
        break;
    case TermKind::Sum: {
        std::vector<std::string> parts;
        parts.reserve(rhs.args().size());
        for (const Term& a : rhs.args())
            parts.push_back(var_for(a));
        std::sort(parts.begin(), parts.end());
        out.push_back(SumEq{left, std::move(parts)});
        break;
    }
    case TermKind::FreeApp: {
        std::vector<std::string> args;
        args.reserve(rhs.args().size());
        for (const Term& a : rhs.args())
            args.push_back(var_for(a));
        out.push_back(FreeEq{left, rhs.symbol(), std::move(args)});
        break;
    }
    }
    return out.size() - 1;
}

FlattenResult flatten(const std::vector<std::pair<Term, Term>>& problem, FreshVars& fresh) {
    FlattenResult r;
    for (const auto& [s, t] : problem) {
        std::set<std::string> vs;
        collect_vars(s, vs);
        collect_vars(t, vs);
        for (const auto& v : vs)
            r.depth_seed.emplace(v, 0);
    }
    for (const auto& [s, t] : problem) {
        if (s.is_var() && t.is_var()) {
            r.equations.push_back(VarVarEq{s.symbol(), t.symbol()});
            std::size_t i = r.equations.size() - 1;
            r.tops.emplace_back(i, i);
        } else if (s.is_var()) {
            std::size_t i = flatten_onto(s.symbol(), t, r.equations, r.depth_seed, fresh);
            r.tops.emplace_back(i, i);
        } else if (t.is_var()) {
            std::size_t i = flatten_onto(t.symbol(), s, r.equations, r.depth_seed, fresh);
            r.tops.emplace_back(i, i);
        } else {
            std::string v = fresh.next();
            r.depth_seed.emplace(v, 0);
            std::size_t i = flatten_onto(v, s, r.equations, r.depth_seed, fresh);
            std::size_t j = flatten_onto(v, t, r.equations, r.depth_seed, fresh);
            r.tops.emplace_back(i, j);
        }
    }
    return r;
}

} // namespace ach
