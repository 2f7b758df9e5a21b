#include <doctest.h>

#include <random>

#include "ach/ac_unify.hpp"
#include "ach/oracle.hpp"

using namespace ach;

namespace {

Term apply_counts(const Substitution& s, const std::map<std::string, unsigned>& counts) {
    std::vector<Term> parts;
    for (const auto& [v, k] : counts)
        for (unsigned i = 0; i < k; ++i)
            parts.push_back(s.apply(Term::variable(v)));
    return parts.size() == 1 ? parts.front() : Term::sum(std::move(parts));
}

} // namespace

TEST_CASE("x + y =? z + y1 yields the classic seven unifiers") {
    FreshVars fresh;
    MultisetEq eq = multiset_eq({"x", "y"}, {"z", "y1"});
    auto unifiers = unify_multiset_eq(eq, fresh);
    CHECK(unifiers.size() == 7);
    for (const Substitution& s : unifiers)
        CHECK(ac_equal(apply_counts(s, eq.left), apply_counts(s, eq.right)));

    // the two variable-identification solutions are present
    std::set<std::string> on{"x", "y", "z", "y1"};
    Substitution xz_yy1;
    xz_yy1.bind("x", Term::variable("c1"));
    xz_yy1.bind("z", Term::variable("c1"));
    xz_yy1.bind("y", Term::variable("c2"));
    xz_yy1.bind("y1", Term::variable("c2"));
    bool found = false;
    for (const Substitution& s : unifiers)
        found = found || (is_instance(s, xz_yy1, on) && is_instance(xz_yy1, s, on));
    CHECK(found);
}

TEST_CASE("shared variables cancel structurally") {
    FreshVars fresh;
    auto unifiers = unify_multiset_eq(multiset_eq({"x", "y1"}, {"x", "y2"}), fresh);
    REQUIRE(unifiers.size() == 1);
    // the one answer identifies y1 and y2 and leaves x arbitrary
    const Substitution& s = unifiers[0];
    CHECK(*s.find("y1") == *s.find("y2"));
    CHECK(s.find("x")->is_var());
}

TEST_CASE("a bare variable binds to the whole sum") {
    FreshVars fresh;
    auto unifiers = unify_multiset_eq(multiset_eq({"x"}, {"y", "z"}), fresh);
    REQUIRE(unifiers.size() == 1);
    CHECK(*unifiers[0].find("x") == Term::sum({Term::variable("y"), Term::variable("z")}));
    CHECK(fresh.generated() == 0);
}

TEST_CASE("degenerate self-growth has no unifier") {
    FreshVars fresh;
    CHECK(unify_multiset_eq(multiset_eq({"v"}, {"v", "y"}), fresh).empty());
    CHECK(unify_multiset_eq(multiset_eq({"v", "v"}, {"v"}), fresh).empty());
}

TEST_CASE("doubled variables force identification") {
    FreshVars fresh;
    // x + x =? y + y has exactly the x = y class
    auto unifiers = unify_multiset_eq(multiset_eq({"x", "x"}, {"y", "y"}), fresh);
    REQUIRE(unifiers.size() == 1);
    CHECK(*unifiers[0].find("x") == *unifiers[0].find("y"));
}

TEST_CASE("unify_sum_system pairs equations that share a left variable") {
    FreshVars fresh;
    std::vector<SumEq> psi{SumEq{"v", {"x", "y"}}, SumEq{"v", {"w", "z"}}};
    auto unifiers = unify_sum_system(psi, fresh);
    CHECK(unifiers.size() == 7);
    for (const Substitution& s : unifiers) {
        Term lhs = s.apply(Term::sum({Term::variable("x"), Term::variable("y")}));
        Term rhs = s.apply(Term::sum({Term::variable("w"), Term::variable("z")}));
        CHECK(ac_equal(lhs, rhs));
        CHECK(ac_equal(s.apply(Term::variable("v")), lhs));
    }
}

TEST_CASE("a lone sum equation becomes its binding") {
    FreshVars fresh;
    auto unifiers = unify_sum_system({SumEq{"v", {"x1", "x2"}}}, fresh);
    REQUIRE(unifiers.size() == 1);
    CHECK(*unifiers[0].find("v") ==
          Term::sum({Term::variable("x1"), Term::variable("x2")}));
}

TEST_CASE("the empty system has the identity as its complete set") {
    FreshVars fresh;
    auto unifiers = unify_sum_system({}, fresh);
    REQUIRE(unifiers.size() == 1);
    CHECK(unifiers[0].empty());
}

TEST_CASE("chained sums compose") {
    FreshVars fresh;
    // v =? x + y together with x =? z + w
    std::vector<SumEq> psi{SumEq{"v", {"x", "y"}}, SumEq{"x", {"w", "z"}}};
    auto unifiers = unify_sum_system(psi, fresh);
    REQUIRE(unifiers.size() == 1);
    const Substitution& s = unifiers[0];
    CHECK(ac_equal(*s.find("v"),
                   Term::sum({Term::variable("w"), Term::variable("z"), Term::variable("y")})));
}

TEST_CASE("equational form of a unifier") {
    Substitution s;
    s.bind("x", Term::variable("y"));
    auto eqs = to_equations(s);
    REQUIRE(eqs.size() == 1);
    CHECK(std::get<VarVarEq>(eqs[0]) == VarVarEq{"x", "y"});

    Substitution t;
    t.bind("x", Term::sum({Term::variable("v1"), Term::variable("v2")}));
    t.bind("y", Term::variable("v2"));
    auto eqs2 = to_equations(t);
    REQUIRE(eqs2.size() == 2);
    CHECK(std::get<SumEq>(eqs2[0]) == SumEq{"x", {"v1", "v2"}});
    CHECK(std::get<VarVarEq>(eqs2[1]) == VarVarEq{"y", "v2"});
}

TEST_CASE("identical inputs give identical outputs") {
    auto run = [] {
        FreshVars fresh;
        std::vector<SumEq> psi{SumEq{"v", {"x", "y"}}, SumEq{"v", {"w", "z"}}};
        std::vector<std::string> out;
        for (const Substitution& s : unify_sum_system(psi, fresh))
            out.push_back(to_string(s));
        return out;
    };
    CHECK(run() == run());
}

TEST_CASE("soundness on random variable-sum equations") {
    std::mt19937_64 rng(59);
    std::vector<std::string> pool{"x", "y", "z", "u", "w"};
    std::uniform_int_distribution<std::size_t> len(1, 3), pick(0, pool.size() - 1);
    for (int iter = 0; iter < 120; ++iter) {
        std::vector<std::string> left, right;
        for (std::size_t i = 0, n = len(rng); i < n; ++i)
            left.push_back(pool[pick(rng)]);
        for (std::size_t i = 0, n = len(rng); i < n; ++i)
            right.push_back(pool[pick(rng)]);
        MultisetEq eq = multiset_eq(left, right);
        FreshVars fresh;
        for (const Substitution& s : unify_multiset_eq(eq, fresh)) {
            CAPTURE(to_string(s));
            CHECK(ac_equal(apply_counts(s, eq.left), apply_counts(s, eq.right)));
        }
    }
}

TEST_CASE("desk-scale completeness against ground enumeration") {
    // every ground solution over {a, b} with at most four summands per
    // variable must be an instance of some returned unifier
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> cases{
        {{"x", "y"}, {"z", "y1"}},
        {{"x", "x"}, {"y", "z"}},
        {{"x", "y"}, {"x", "z"}},
        {{"x"}, {"y", "z"}},
    };
    UniverseSpec universe;
    universe.constants = {"a", "b"};
    universe.max_h_height = 0;
    universe.max_summands = 4;
    universe.max_term_size = 5;

    for (const auto& [left, right] : cases) {
        MultisetEq eq = multiset_eq(left, right);
        FreshVars fresh;
        auto unifiers = unify_multiset_eq(eq, fresh);

        std::vector<Term> lparts, rparts;
        for (const auto& v : left)
            lparts.push_back(Term::variable(v));
        for (const auto& v : right)
            rparts.push_back(Term::variable(v));
        Term lhs = lparts.size() == 1 ? lparts.front() : Term::sum(lparts);
        Term rhs = rparts.size() == 1 ? rparts.front() : Term::sum(rparts);

        auto report = check_completeness({{lhs, rhs}}, unifiers, universe, 0);
        CAPTURE(to_string(lhs));
        CAPTURE(to_string(rhs));
        CHECK(report.ground_count > 0);
        CHECK(report.uncovered.empty());
    }
}
