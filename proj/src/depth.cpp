#include "ach/depth.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ach {

DepthOutcome propagate_depths(const std::vector<FlatEq>& eqs, DepthMap start, unsigned bound,
                              std::optional<std::uint64_t> scan_seed) {
    DepthOutcome out;
    out.depths = std::move(start);
    for (const FlatEq& eq : eqs) {
        std::set<std::string> vs;
        collect_eq_vars(eq, vs);
        for (const auto& v : vs)
            out.depths.emplace(v, 0);
    }

    std::vector<std::size_t> order(eqs.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(scan_seed.value_or(0));

    bool changed = true;
    auto raise_to = [&](const std::string& v, unsigned want) {
        unsigned& cur = out.depths[v];
        if (cur < want) {
            cur = want;
            changed = true;
            if (cur > bound) {
                out.exceeded = true;
                out.culprit = v;
            }
        }
    };
    while (changed) {
        changed = false;
        if (scan_seed)
            std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t idx : order) {
            const FlatEq& eq = eqs[idx];
            const unsigned base = out.depths[left_of(eq)];
            if (const auto* he = std::get_if<HEq>(&eq)) {
                raise_to(he->arg, base + 1);
            } else if (const auto* se = std::get_if<SumEq>(&eq)) {
                for (const auto& p : se->parts)
                    raise_to(p, base);
            } else if (const auto* fe = std::get_if<FreeEq>(&eq)) {
                for (const auto& a : fe->args)
                    raise_to(a, base);
            }
            if (out.exceeded)
                return out;
        }
    }
    return out;
}

unsigned max_val(const DepthMap& depths) {
    unsigned best = 0;
    for (const auto& [v, d] : depths)
        best = std::max(best, d);
    return best;
}

VarGraph build_graph(const std::vector<FlatEq>& eqs) {
    VarGraph g;
    for (const FlatEq& eq : eqs) {
        collect_eq_vars(eq, g.vertices);
        const std::string& from = left_of(eq);
        if (const auto* he = std::get_if<HEq>(&eq)) {
            g.edges.push_back({from, he->arg, "h"});
        } else if (const auto* se = std::get_if<SumEq>(&eq)) {
            for (const auto& p : se->parts)
                g.edges.push_back({from, p, "+"});
        } else if (const auto* fe = std::get_if<FreeEq>(&eq)) {
            for (const auto& a : fe->args)
                g.edges.push_back({from, a, fe->fn});
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

} // namespace ach
