#include "ach/term.hpp"

#include <algorithm>
#include <sstream>

namespace ach {

Term Term::make(TermKind kind, std::string sym, std::vector<Term> args) {
    auto rep = std::make_shared<Rep>();
    rep->kind = kind;
    rep->sym = std::move(sym);
    rep->args = std::move(args);
    return Term(std::move(rep));
}

Term Term::variable(std::string name) {
    if (name.empty())
        throw MalformedTermError("variable with empty name");
    return make(TermKind::Variable, std::move(name), {});
}

Term Term::constant(std::string name) {
    if (name.empty())
        throw MalformedTermError("constant with empty name");
    return make(TermKind::Constant, std::move(name), {});
}

Term Term::h(const Term& arg) {
    return make(TermKind::HApp, "", {arg});
}

Term Term::app(std::string fn, std::vector<Term> args) {
    if (fn.empty())
        throw MalformedTermError("application with empty symbol");
    if (args.empty())
        throw MalformedTermError("free application needs arity >= 1; use constant()");
    return make(TermKind::FreeApp, std::move(fn), std::move(args));
}

Term Term::sum(std::vector<Term> parts) {
    if (parts.empty())
        throw MalformedTermError("empty sum");
    std::vector<Term> flat;
    flat.reserve(parts.size());
    for (const Term& p : parts) {
        if (p.kind() == TermKind::Sum)
            flat.insert(flat.end(), p.args().begin(), p.args().end());
        else
            flat.push_back(p);
    }
    if (flat.size() == 1)
        return flat.front();
    std::sort(flat.begin(), flat.end(),
              [](const Term& a, const Term& b) { return compare(a, b) < 0; });
    return make(TermKind::Sum, "", std::move(flat));
}

std::strong_ordering compare(const Term& a, const Term& b) {
    if (a.rep_ == b.rep_)
        return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0)
        return c;
    if (auto c = a.symbol() <=> b.symbol(); c != 0)
        return c;
    if (auto c = a.args().size() <=> b.args().size(); c != 0)
        return c;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (auto c = compare(a.args()[i], b.args()[i]); c != 0)
            return c;
    return std::strong_ordering::equal;
}

bool operator==(const Term& a, const Term& b) {
    return compare(a, b) == 0;
}

Term canonicalize(const Term& t) {
    switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
        return t;
    case TermKind::HApp:
        return Term::h(canonicalize(t.args()[0]));
    case TermKind::FreeApp: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args())
            args.push_back(canonicalize(a));
        return Term::app(t.symbol(), std::move(args));
    }
    case TermKind::Sum: {
        std::vector<Term> parts;
        parts.reserve(t.args().size());
        for (const Term& a : t.args())
            parts.push_back(canonicalize(a));
        return Term::sum(std::move(parts));
    }
    }
    throw MalformedTermError("unreachable term kind");
}

bool ac_equal(const Term& a, const Term& b) {
    return a == b;
}

Term normalize_r1(const Term& t) {
    switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
        return t;
    case TermKind::FreeApp: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args())
            args.push_back(normalize_r1(a));
        return Term::app(t.symbol(), std::move(args));
    }
    case TermKind::Sum: {
        std::vector<Term> parts;
        parts.reserve(t.args().size());
        for (const Term& a : t.args())
            parts.push_back(normalize_r1(a));
        return Term::sum(std::move(parts));
    }
    case TermKind::HApp: {
        Term inner = normalize_r1(t.args()[0]);
        if (inner.kind() == TermKind::Sum) {
            std::vector<Term> parts;
            parts.reserve(inner.args().size());
            for (const Term& p : inner.args())
                parts.push_back(Term::h(p));
            return Term::sum(std::move(parts));
        }
        return Term::h(inner);
    }
    }
    throw MalformedTermError("unreachable term kind");
}

bool ach_equal(const Term& a, const Term& b) {
    return ac_equal(normalize_r1(a), normalize_r1(b));
}

unsigned h_height(const Term& t) {
    switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
        return 0;
    case TermKind::HApp:
        return 1 + h_height(t.args()[0]);
    default: {
        unsigned best = 0;
        for (const Term& a : t.args())
            best = std::max(best, h_height(a));
        return best;
    }
    }
}

std::size_t term_size(const Term& t) {
    std::size_t n = 1;
    for (const Term& a : t.args())
        n += term_size(a);
    return n;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
    if (t.kind() == TermKind::Variable) {
        out.insert(t.symbol());
        return;
    }
    for (const Term& a : t.args())
        collect_vars(a, out);
}

std::set<std::string> vars_of(const Term& t) {
    std::set<std::string> out;
    collect_vars(t, out);
    return out;
}

bool occurs(std::string_view var, const Term& t) {
    if (t.kind() == TermKind::Variable)
        return t.symbol() == var;
    for (const Term& a : t.args())
        if (occurs(var, a))
            return true;
    return false;
}

namespace {

void print_term(const Term& t, std::ostream& os) {
    switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
        os << t.symbol();
        return;
    case TermKind::HApp:
        os << "h(";
        print_term(t.args()[0], os);
        os << ")";
        return;
    case TermKind::FreeApp: {
        os << t.symbol() << "(";
        bool first = true;
        for (const Term& a : t.args()) {
            if (!first)
                os << ", ";
            first = false;
            print_term(a, os);
        }
        os << ")";
        return;
    }
    case TermKind::Sum: {
        bool first = true;
        for (const Term& a : t.args()) {
            if (!first)
                os << " + ";
            first = false;
            print_term(a, os);
        }
        return;
    }
    }
}

} // namespace

std::string to_string(const Term& t) {
    std::ostringstream os;
    print_term(t, os);
    return os.str();
}

} // namespace ach
