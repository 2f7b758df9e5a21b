#include "ach/dioph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ach {

std::vector<DiophSolution> minimal_solutions(const std::vector<long long>& coeffs) {
    const std::size_t d = coeffs.size();
    std::vector<DiophSolution> minimals;
    if (d == 0)
        return minimals;

    auto dominated = [&](const DiophSolution& v) {
        for (const DiophSolution& m : minimals) {
            bool leq = true;
            for (std::size_t i = 0; i < d; ++i)
                if (m[i] > v[i]) {
                    leq = false;
                    break;
                }
            if (leq)
                return true;
        }
        return false;
    };
    auto defect_of = [&](const DiophSolution& v) {
        long long s = 0;
        for (std::size_t i = 0; i < d; ++i)
            s += coeffs[i] * static_cast<long long>(v[i]);
        return s;
    };

    std::set<DiophSolution> frontier;
    for (std::size_t i = 0; i < d; ++i) {
        DiophSolution e(d, 0);
        e[i] = 1;
        frontier.insert(std::move(e));
    }

    unsigned level = 0;
    while (!frontier.empty()) {
        if (++level > 256)
            throw std::runtime_error("diophantine search level guard tripped");
        std::set<DiophSolution> next;
        for (const DiophSolution& v : frontier) {
            long long defect = defect_of(v);
            if (defect == 0) {
                if (!dominated(v))
                    minimals.push_back(v);
                continue;
            }
            for (std::size_t k = 0; k < d; ++k) {
                if ((defect > 0 && coeffs[k] < 0) || (defect < 0 && coeffs[k] > 0)) {
                    DiophSolution w = v;
                    ++w[k];
                    if (!dominated(w))
                        next.insert(std::move(w));
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(minimals.begin(), minimals.end());
    return minimals;
}

std::vector<DiophSolution> dioph_minimal_basis(const std::vector<unsigned>& left,
                                               const std::vector<unsigned>& right) {
    if (left.empty() || right.empty())
        throw std::invalid_argument("dioph_minimal_basis: both sides must be nonempty");
    std::vector<long long> c;
    c.reserve(left.size() + right.size());
    for (unsigned a : left) {
        if (a == 0)
            throw std::invalid_argument("dioph_minimal_basis: coefficients must be >= 1");
        c.push_back(static_cast<long long>(a));
    }
    for (unsigned b : right) {
        if (b == 0)
            throw std::invalid_argument("dioph_minimal_basis: coefficients must be >= 1");
        c.push_back(-static_cast<long long>(b));
    }
    return minimal_solutions(c);
}

} // namespace ach
