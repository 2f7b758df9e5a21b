#include "ach/subst.hpp"

#include <sstream>
#include <stdexcept>

namespace ach {

void Substitution::bind(const std::string& var, const Term& t) {
    auto [it, inserted] = map_.emplace(var, t);
    (void)it;
    if (!inserted)
        throw std::logic_error("bind: variable already bound: " + var);
}

Term Substitution::apply(const Term& t) const {
    switch (t.kind()) {
    case TermKind::Variable: {
        const Term* b = find(t.symbol());
        return b ? *b : t;
    }
    case TermKind::Constant:
        return t;
    case TermKind::HApp:
        return Term::h(apply(t.args()[0]));
    case TermKind::FreeApp: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args())
            args.push_back(apply(a));
        return Term::app(t.symbol(), std::move(args));
    }
    case TermKind::Sum: {
        std::vector<Term> parts;
        parts.reserve(t.args().size());
        for (const Term& a : t.args())
            parts.push_back(apply(a));
        return Term::sum(std::move(parts));
    }
    }
    throw std::logic_error("unreachable term kind");
}

void Substitution::compose_with(const std::string& var, const Term& t) {
    if (binds(var))
        throw std::logic_error("compose: variable already in domain: " + var);
    if (occurs(var, t))
        throw std::logic_error("compose: occur check violated for " + var);
    Substitution single;
    single.map_.emplace(var, t);
    for (auto& [v, range] : map_)
        range = single.apply(range);
    map_.emplace(var, t);
}

Substitution Substitution::restricted(const std::set<std::string>& keep) const {
    Substitution out;
    for (const auto& [v, t] : map_)
        if (keep.count(v))
            out.map_.emplace(v, t);
    return out;
}

bool operator==(const Substitution& a, const Substitution& b) {
    if (a.map_.size() != b.map_.size())
        return false;
    auto ia = a.map_.begin();
    auto ib = b.map_.begin();
    for (; ia != a.map_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second)
            return false;
    return true;
}

Substitution compose(Substitution sigma, const std::string& var, const Term& t) {
    sigma.compose_with(var, t);
    return sigma;
}

std::string to_string(const Substitution& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [v, t] : s.bindings()) {
        if (!first)
            os << ", ";
        first = false;
        os << v << " -> " << to_string(t);
    }
    os << "}";
    return os.str();
}

} // namespace ach
