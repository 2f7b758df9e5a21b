#pragma once

#include <compare>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ach {

/// Raised when a term constructor is handed structurally invalid input
/// (empty sum, zero-arity application, and so on).
struct MalformedTermError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class TermKind : unsigned char { Variable, Constant, FreeApp, HApp, Sum };

/// Immutable first-order term over variables, constants, free symbols with
/// fixed arity, the unary symbol h, and the AC symbol +.
///
/// Every Term is kept in AC-canonical form: a sum never has a sum as a
/// direct child, sum arguments are sorted by the total term order (with
/// duplicates, so a sum is a sorted multiset), and a sum has at least two
/// arguments. Copies are cheap (shared immutable representation).
class Term {
public:
    static Term variable(std::string name);
    static Term constant(std::string name);
    static Term h(const Term& arg);
    static Term app(std::string fn, std::vector<Term> args);
    /// Builds the canonical n-ary sum of `parts`. A single part is returned
    /// unchanged; nested sums are spliced; parts are sorted.
    static Term sum(std::vector<Term> parts);

    TermKind kind() const { return rep_->kind; }
    /// Symbol name; empty for h-applications and sums.
    const std::string& symbol() const { return rep_->sym; }
    const std::vector<Term>& args() const { return rep_->args; }

    bool is_var() const { return rep_->kind == TermKind::Variable; }

private:
    struct Rep {
        TermKind kind;
        std::string sym;
        std::vector<Term> args;
    };
    explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    static Term make(TermKind kind, std::string sym, std::vector<Term> args);

    std::shared_ptr<const Rep> rep_;

    friend std::strong_ordering compare(const Term&, const Term&);
    friend bool operator==(const Term&, const Term&);
};

/// Fixed total order on terms: kind, then symbol, then arity, then
/// arguments lexicographically. Any fixed total order would do; this one is
/// the tie-breaker that makes canonical forms unique.
std::strong_ordering compare(const Term& a, const Term& b);
bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

/// Rebuilds a term bottom-up through the canonicalizing constructors.
/// Idempotent; the factories already canonicalize, so this is the identity
/// on any Term built through them.
Term canonicalize(const Term& t);

/// Equality modulo associativity and commutativity of + only. On canonical
/// forms this is structural equality (sums compare as sorted multisets).
bool ac_equal(const Term& a, const Term& b);

/// Normal form under h(x1 + x2) -> h(x1) + h(x2), applied everywhere and
/// re-canonicalized. The rule is convergent modulo AC, so the result is
/// unique per AC class.
Term normalize_r1(const Term& t);

/// Equality modulo AC plus the homomorphism identity: compares
/// R1-normal forms modulo AC.
bool ach_equal(const Term& a, const Term& b);

/// Maximum number of nested h applications along any root-to-leaf path.
unsigned h_height(const Term& t);

/// Number of nodes (sums count as one node plus their arguments).
std::size_t term_size(const Term& t);

void collect_vars(const Term& t, std::set<std::string>& out);
std::set<std::string> vars_of(const Term& t);
bool occurs(std::string_view var, const Term& t);

/// Printed form: sums as "a + b" (lowest precedence, no parentheses needed
/// on canonical terms), applications as "f(a, b)".
std::string to_string(const Term& t);

} // namespace ach
