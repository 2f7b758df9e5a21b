#include <doctest.h>

#include <random>

#include "ach/flat.hpp"
#include "support/oracles.hpp"

using namespace ach;

namespace {

Term v(const char* n) { return Term::variable(n); }
Term c(const char* n) { return Term::constant(n); }

} // namespace

TEST_CASE("flatten produces the four shapes with direct n-ary sums") {
    FreshVars fresh;
    Term lhs = Term::h(Term::h(v("x")));
    Term rhs = Term::sum({Term::sum({v("s"), v("w")}), Term::sum({v("y"), v("z")})});
    FlattenResult flat = flatten({{lhs, rhs}}, fresh);

    // v =? h(v5), v5 =? h(x), v =? s + w + y + z
    REQUIRE(flat.equations.size() == 3);
    std::size_t h_count = 0, sum_count = 0;
    for (const FlatEq& eq : flat.equations) {
        if (const auto* se = std::get_if<SumEq>(&eq)) {
            ++sum_count;
            CHECK(se->parts == std::vector<std::string>{"s", "w", "y", "z"});
        }
        if (std::holds_alternative<HEq>(eq))
            ++h_count;
    }
    CHECK(h_count == 2);
    CHECK(sum_count == 1);
    // every fresh variable enters the depth seed at zero
    for (const auto& [var, depth] : flat.depth_seed)
        CHECK(depth == 0);
}

TEST_CASE("already-flat input stays put") {
    FreshVars fresh;
    FlattenResult flat = flatten({{v("x"), v("y")}}, fresh);
    REQUIRE(flat.equations.size() == 1);
    CHECK(std::get<VarVarEq>(flat.equations[0]) == VarVarEq{"x", "y"});
    CHECK(fresh.generated() == 0);
}

TEST_CASE("constants flatten to zero-arity free equations") {
    FreshVars fresh;
    FlattenResult flat = flatten({{v("x"), c("a")}}, fresh);
    REQUIRE(flat.equations.size() == 1);
    const auto& fe = std::get<FreeEq>(flat.equations[0]);
    CHECK(fe.fn == "a");
    CHECK(fe.args.empty());
}

TEST_CASE("substituting fresh variables back reconstructs the problem") {
    std::mt19937_64 rng(31);
    testing::GenConfig cfg;
    for (int i = 0; i < 200; ++i) {
        auto problem = testing::random_problem(rng, cfg, 3);
        FreshVars fresh;
        FlattenResult flat = flatten(problem, fresh);
        auto rebuilt = testing::reconstruct_problem(flat);
        REQUIRE(rebuilt.size() == problem.size());
        for (std::size_t k = 0; k < problem.size(); ++k)
            CHECK(testing::same_equation(problem[k], rebuilt[k]));
    }
}

TEST_CASE("fresh names never collide with user identifiers") {
    FreshVars fresh;
    CHECK(fresh.next() == "_v1");
    CHECK(fresh.next() == "_v2");
    CHECK(FreshVars::is_fresh("_v10"));
    CHECK_FALSE(FreshVars::is_fresh("x"));
    CHECK_FALSE(FreshVars::is_fresh("v1"));
    CHECK(FreshVars::index_of("_v17") == 17);
}
