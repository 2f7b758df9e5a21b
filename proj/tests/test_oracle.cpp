#include <doctest.h>

#include "ach/oracle.hpp"

using namespace ach;

namespace {
Term v(const char* n) { return Term::variable(n); }
Term c(const char* n) { return Term::constant(n); }
} // namespace

TEST_CASE("universe enumeration is deterministic and size-ordered") {
    UniverseSpec u;
    u.constants = {"a", "b"};
    u.max_h_height = 1;
    u.max_summands = 2;
    u.max_term_size = 3;
    auto terms = universe_terms(u);
    REQUIRE(!terms.empty());
    CHECK(terms[0] == c("a"));
    CHECK(terms[1] == c("b"));
    for (std::size_t i = 1; i < terms.size(); ++i)
        CHECK(term_size(terms[i - 1]) <= term_size(terms[i]));
    // no duplicates, heights respected, widths respected
    for (std::size_t i = 1; i < terms.size(); ++i)
        CHECK(terms[i - 1] != terms[i]);
    for (const Term& t : terms) {
        CHECK(h_height(t) <= 1);
        if (t.kind() == TermKind::Sum)
            CHECK(t.args().size() <= 2);
    }
    // h(a + b) fits in 4 nodes and appears once the cap allows it
    u.max_term_size = 4;
    auto wider = universe_terms(u);
    Term target = Term::h(Term::sum({c("a"), c("b")}));
    CHECK(std::count(wider.begin(), wider.end(), target) == 1);
}

TEST_CASE("verify_unifier accepts the golden answers") {
    Substitution xy;
    xy.bind("x", v("y"));
    CHECK(verify_unifier({{Term::h(Term::h(v("x"))), Term::h(Term::h(v("y")))}}, xy, 10));

    Substitution both;
    both.bind("x", Term::h(v("z")));
    both.bind("y", Term::h(v("z")));
    CHECK(verify_unifier({{v("x"), v("y")}, {v("x"), Term::h(v("z"))}}, both, 10));

    // clashing heads cannot be fixed by any substitution
    Substitution any;
    any.bind("x", c("a"));
    CHECK_FALSE(verify_unifier(
        {{Term::app("f", {v("x"), v("y")}), Term::app("g", {Term::h(v("z"))})}}, any, 10));
}

TEST_CASE("verify_unifier enforces the height bound") {
    Substitution deep;
    deep.bind("x", Term::h(Term::h(v("y"))));
    std::vector<std::pair<Term, Term>> problem{{v("x"), Term::h(Term::h(v("y")))}};
    CHECK(verify_unifier(problem, deep, 2));
    CHECK_FALSE(verify_unifier(problem, deep, 1));
}

TEST_CASE("ground enumeration lists exactly the solutions") {
    UniverseSpec u;
    u.constants = {"a", "b"};
    u.max_h_height = 1;
    u.max_summands = 2;
    u.max_term_size = 1;
    auto found = enumerate_ground_unifiers({{v("x"), v("y")}}, u, 1);
    REQUIRE(found.size() == 2);
    CHECK(*found[0].find("x") == *found[0].find("y"));
    CHECK(*found[1].find("x") == *found[1].find("y"));
}

TEST_CASE("an unsolvable problem has no ground unifiers") {
    UniverseSpec u;
    u.constants = {"a", "b"};
    u.max_h_height = 2;
    u.max_summands = 3;
    u.max_term_size = 4;
    auto found = enumerate_ground_unifiers({{Term::h(v("y")), Term::sum({v("y"), v("x")})}}, u, 2);
    CHECK(found.empty());
}

TEST_CASE("the homomorphism identity shows up in ground solutions") {
    UniverseSpec u;
    u.constants = {"a", "b"};
    u.max_h_height = 2;
    u.max_summands = 2;
    u.max_term_size = 4;
    auto found = enumerate_ground_unifiers({{Term::h(v("y")), Term::sum({v("x1"), v("x2")})}}, u, 2);
    CHECK(!found.empty());
    Substitution wanted;
    wanted.bind("y", Term::sum({c("a"), c("b")}));
    wanted.bind("x1", Term::h(c("a")));
    wanted.bind("x2", Term::h(c("b")));
    bool present = false;
    for (const Substitution& s : found)
        present = present || s == wanted;
    CHECK(present);
}

TEST_CASE("the enumeration guard is explicit") {
    UniverseSpec u;
    u.constants = {"a", "b"};
    u.max_term_size = 4;
    std::vector<std::pair<Term, Term>> big{
        {Term::sum({v("q1"), v("q2"), v("q3"), v("q4")}),
         Term::sum({v("q5"), v("q6"), v("q7"), v("q8")})}};
    CHECK_THROWS_AS(enumerate_ground_unifiers(big, u, 2, 1000), TooLargeError);
}

TEST_CASE("instance checks match modulo the theory") {
    std::set<std::string> on{"x"};
    Substitution sum_pattern;
    sum_pattern.bind("x", Term::sum({v("_v1"), v("_v2")}));
    Substitution ground;
    ground.bind("x", Term::sum({c("a"), c("b")}));
    CHECK(is_instance(sum_pattern, ground, on));

    Substitution h_pattern;
    h_pattern.bind("x", Term::h(v("_v1")));
    Substitution just_a;
    just_a.bind("x", c("a"));
    CHECK_FALSE(is_instance(h_pattern, just_a, on));

    // h over a fresh variable absorbs a sum of h-terms
    Substitution h_sum;
    h_sum.bind("x", Term::sum({Term::h(c("a")), Term::h(c("b"))}));
    CHECK(is_instance(h_pattern, h_sum, on));
}

TEST_CASE("instance check against a listed answer of the running example") {
    // second branch of the x + y =? z + y1 answer set:
    // v -> c + z + y, x -> c + z, y1 -> c + y
    Substitution sigma;
    sigma.bind("v", Term::sum({v("_v9"), v("z"), v("y")}));
    sigma.bind("x", Term::sum({v("_v9"), v("z")}));
    sigma.bind("y1", Term::sum({v("_v9"), v("y")}));

    Substitution theta;
    theta.bind("v", Term::sum({c("a"), c("b"), c("k")}));
    theta.bind("x", Term::sum({c("a"), c("b")}));
    theta.bind("y", c("k"));
    theta.bind("y1", Term::sum({c("a"), c("k")}));
    theta.bind("z", c("b"));
    CHECK(is_instance(sigma, theta, {"v", "x", "y", "y1", "z"}));

    Substitution wrong;
    wrong.bind("v", Term::sum({c("a"), c("b"), c("k")}));
    wrong.bind("x", c("k"));
    wrong.bind("y", Term::sum({c("a"), c("b")}));
    wrong.bind("y1", Term::sum({c("a"), c("k")}));
    wrong.bind("z", c("b"));
    CHECK_FALSE(is_instance(sigma, wrong, {"v", "x", "y", "y1", "z"}));
}

TEST_CASE("is_instance is reflexive on ground substitutions") {
    Substitution g;
    g.bind("x", Term::sum({c("a"), Term::h(c("b"))}));
    g.bind("y", Term::h(Term::h(c("a"))));
    CHECK(is_instance(g, g, {"x", "y"}));
}

TEST_CASE("completeness reports uncovered ground unifiers") {
    UniverseSpec u;
    u.constants = {"a", "b"};
    u.max_h_height = 1;
    u.max_summands = 2;
    u.max_term_size = 2;
    std::vector<std::pair<Term, Term>> problem{{v("x"), v("y")}};

    // the empty answer set covers nothing: definite negative control
    auto bad = check_completeness(problem, {}, u, 1);
    CHECK(bad.ground_count > 0);
    CHECK_FALSE(bad.ok());

    Substitution mgu;
    mgu.bind("x", v("y"));
    auto good = check_completeness(problem, {mgu}, u, 1);
    CHECK(good.ok());
}

TEST_CASE("minimization keeps exactly the non-instances") {
    Substitution general;
    general.bind("x", Term::sum({v("_v1"), v("_v2")}));
    Substitution specific;
    specific.bind("x", Term::sum({v("_v1"), v("_v1"), v("_v2")}));
    Substitution incomparable;
    incomparable.bind("x", Term::h(v("_v1")));

    auto kept = minimize_unifiers({general, specific, incomparable}, {"x"});
    CHECK(kept.size() == 2);

    // mutually equivalent answers collapse to one
    Substitution renamed;
    renamed.bind("x", Term::sum({v("_v7"), v("_v8")}));
    auto collapsed = minimize_unifiers({general, renamed}, {"x"});
    CHECK(collapsed.size() == 1);
}

TEST_CASE("match is consistent across repeated pattern variables") {
    // _v1 + _v1 matches a + a but not a + b
    auto ok = match_modulo_ach({{Term::sum({v("_v1"), v("_v1")}), Term::sum({c("a"), c("a")})}});
    CHECK(ok.has_value());
    auto bad = match_modulo_ach({{Term::sum({v("_v1"), v("_v1")}), Term::sum({c("a"), c("b")})}});
    CHECK_FALSE(bad.has_value());
}

TEST_CASE("match distributes h over chosen groups") {
    // h(_v1) + _v2 against h(a) + h(b) + c: _v1 can take a + b
    Term pattern = Term::sum({Term::h(v("_v1")), v("_v2")});
    Term target = Term::sum({Term::h(c("a")), Term::h(c("b")), c("k")});
    auto m = match_modulo_ach({{pattern, target}});
    REQUIRE(m.has_value());
    Substitution s = *m;
    Term image = normalize_r1(s.apply(pattern));
    CHECK(ac_equal(image, normalize_r1(target)));
}
