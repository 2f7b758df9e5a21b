#include <doctest.h>

#include <random>

#include "ach/dioph.hpp"
#include "support/oracles.hpp"

using namespace ach;

TEST_CASE("x = y has the unit solution") {
    auto basis = dioph_minimal_basis({1}, {1});
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == DiophSolution{1, 1});
}

TEST_CASE("x1 + x2 = y1 + y2 has the four unit pairings") {
    auto basis = dioph_minimal_basis({1, 1}, {1, 1});
    std::vector<DiophSolution> expected{
        {0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 0}};
    CHECK(basis == expected);
}

TEST_CASE("2x = y forces doubling") {
    auto basis = dioph_minimal_basis({2}, {1});
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == DiophSolution{1, 2});
}

TEST_CASE("zero and negative merged coefficients are handled") {
    // 0*x + y - z = 0: x is free, y must equal z
    auto sols = minimal_solutions({0, 1, -1});
    std::vector<DiophSolution> expected{{0, 1, 1}, {1, 0, 0}};
    CHECK(sols == expected);

    // u = 0 alone has no nonzero solution
    CHECK(minimal_solutions({1}).empty());
}

TEST_CASE("basis elements are pairwise incomparable") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<unsigned> len(1, 4), coeff(1, 3);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<unsigned> a(len(rng)), b(len(rng));
        for (auto& x : a)
            x = coeff(rng);
        for (auto& x : b)
            x = coeff(rng);
        auto basis = dioph_minimal_basis(a, b);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                if (i == j)
                    continue;
                bool leq = true;
                for (std::size_t k = 0; k < basis[i].size(); ++k)
                    if (basis[i][k] > basis[j][k])
                        leq = false;
                CHECK_FALSE(leq);
            }
    }
}

TEST_CASE("basis matches brute-force enumeration up to the classical bound") {
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<unsigned> len(1, 4), coeff(1, 3);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<unsigned> a(len(rng)), b(len(rng));
        for (auto& x : a)
            x = coeff(rng);
        for (auto& x : b)
            x = coeff(rng);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(dioph_minimal_basis(a, b) == testing::dioph_minimal_brute(a, b));
    }
}

TEST_CASE("every small solution is a combination of basis elements") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<unsigned> len(1, 3), coeff(1, 3);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<unsigned> a(len(rng)), b(len(rng));
        for (auto& x : a)
            x = coeff(rng);
        for (auto& x : b)
            x = coeff(rng);
        auto basis = dioph_minimal_basis(a, b);
        const std::size_t n = a.size() + b.size();

        // enumerate all solutions with components <= 3 and greedily reduce
        // by basis elements; completeness means reduction reaches zero
        std::vector<unsigned> v(n, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == n) {
                long long sum = 0;
                for (std::size_t k = 0; k < a.size(); ++k)
                    sum += static_cast<long long>(a[k]) * v[k];
                for (std::size_t k = 0; k < b.size(); ++k)
                    sum -= static_cast<long long>(b[k]) * v[a.size() + k];
                bool zero = std::all_of(v.begin(), v.end(), [](unsigned x) { return x == 0; });
                if (sum != 0 || zero)
                    return;
                std::vector<unsigned> rest = v;
                bool reduced = true;
                while (reduced && !std::all_of(rest.begin(), rest.end(),
                                               [](unsigned x) { return x == 0; })) {
                    reduced = false;
                    for (const auto& m : basis) {
                        bool fits = true;
                        for (std::size_t k = 0; k < n; ++k)
                            if (m[k] > rest[k])
                                fits = false;
                        if (fits) {
                            for (std::size_t k = 0; k < n; ++k)
                                rest[k] -= m[k];
                            reduced = true;
                            break;
                        }
                    }
                }
                CHECK(std::all_of(rest.begin(), rest.end(), [](unsigned x) { return x == 0; }));
                return;
            }
            for (unsigned x = 0; x <= 3; ++x) {
                v[i] = x;
                rec(i + 1);
            }
            v[i] = 0;
        };
        rec(0);
    }
}
