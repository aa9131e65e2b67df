#ifndef PRIO_CONSTRAINT_HPP
#define PRIO_CONSTRAINT_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <variant>
#include <vector>

#include "flow.hpp"
#include "instance.hpp"

namespace prio {

/// Membership and rank queries for the facility family of an instance. Facility sets are given as
/// facility positions.
class constraint_oracle {
public:
    explicit constraint_oracle(const instance& inst) : spec_(&inst.constraint), nf_(inst.num_facilities()) {
        if (const auto* g = std::get_if<general_matroid>(spec_)) {
            if (nf_ > max_matroid_ground) {
                throw unsupported_error("general matroid ground set too large");
            }
            std::vector<int> pos(inst.metric.size(), -1);
            for (int f = 0; f < nf_; ++f) {
                pos[inst.facilities[f]] = f;
            }
            indep_.assign(std::size_t{1} << nf_, 0);
            for (const auto& set : g->independent_sets) {
                std::uint32_t mask = 0;
                for (int p : set) {
                    mask |= 1u << pos[p];
                }
                indep_[mask] = 1;
            }
        }
    }

    const constraint_spec& spec() const { return *spec_; }
    int num_facilities() const { return nf_; }

    bool feasible(const std::vector<int>& set) const {
        std::vector<int> s = set;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return std::visit(
            [&](const auto& c) -> bool {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, cardinality>) {
                    return static_cast<int>(s.size()) <= c.k;
                } else if constexpr (std::is_same_v<T, partition_matroid>) {
                    std::vector<int> used(c.cap.size(), 0);
                    for (int f : s) {
                        if (++used[c.class_of[f]] > c.cap[c.class_of[f]]) {
                            return false;
                        }
                    }
                    return true;
                } else if constexpr (std::is_same_v<T, general_matroid>) {
                    std::uint32_t mask = 0;
                    for (int f : s) {
                        mask |= 1u << f;
                    }
                    return indep_[mask] != 0;
                } else {
                    long long w = 0;
                    for (int f : s) {
                        w += c.weight[f];
                    }
                    return w <= c.budget;
                }
            },
            *spec_);
    }

    bool feasible_mask(std::uint64_t mask) const {
        if (!indep_.empty()) {
            return indep_[mask] != 0;
        }
        std::vector<int> s;
        for (int f = 0; f < nf_; ++f) {
            if (mask >> f & 1u) {
                s.push_back(f);
            }
        }
        return feasible(s);
    }

    /// Rank of every subset of the ground set (matroid constraints, ground set <= 20).
    std::vector<std::uint8_t> rank_table() const {
        if (nf_ > max_matroid_ground) {
            throw unsupported_error("rank table needs a ground set of at most 20 facilities");
        }
        std::size_t size = std::size_t{1} << nf_;
        std::vector<std::uint8_t> rank(size, 0);
        for (std::size_t mask = 1; mask < size; ++mask) {
            if (feasible_mask(mask)) {
                rank[mask] = static_cast<std::uint8_t>(std::popcount(mask));
                continue;
            }
            std::uint8_t best = 0;
            for (int e = 0; e < nf_; ++e) {
                if (mask >> e & 1u) {
                    best = std::max(best, rank[mask & ~(std::size_t{1} << e)]);
                }
            }
            rank[mask] = best;
        }
        return rank;
    }

    /// Pick one distinct facility from every group so that the picks form a feasible set.
    /// Returns the picks aligned with `groups`, or an empty optional.
    std::optional<std::vector<int>> transversal(const std::vector<std::vector<int>>& groups) const {
        if (groups.empty()) {
            return std::vector<int>{};
        }
        for (const auto& gr : groups) {
            if (gr.empty()) {
                return std::nullopt;
            }
        }
        return std::visit(
            [&](const auto& c) -> std::optional<std::vector<int>> {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, cardinality>) {
                    if (static_cast<int>(groups.size()) > c.k) {
                        return std::nullopt;
                    }
                    return class_transversal(groups, std::vector<int>(nf_, 0), {c.k});
                } else if constexpr (std::is_same_v<T, partition_matroid>) {
                    return class_transversal(groups, c.class_of, c.cap);
                } else if constexpr (std::is_same_v<T, general_matroid>) {
                    return matroid_transversal(groups);
                } else {
                    return knapsack_transversal(groups, c);
                }
            },
            *spec_);
    }

private:
    // Max flow groups -> facilities -> classes; every facility in at most one group pick.
    std::optional<std::vector<int>> class_transversal(const std::vector<std::vector<int>>& groups,
                                                      const std::vector<int>& class_of,
                                                      const std::vector<int>& cap) const {
        flow_network net;
        int s = net.add_node(node_role::source);
        int t = net.add_node(node_role::sink);
        std::vector<int> gnode, fnode(nf_, -1), cnode;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            gnode.push_back(net.add_node(node_role::vertex, 1));
            net.add_arc(s, gnode.back(), 1);
        }
        for (int c : cap) {
            cnode.push_back(net.add_node(node_role::klass, c));
            net.add_arc(cnode.back(), t);
        }
        std::vector<std::pair<int, int>> pick_arcs;  // (group, facility) per arc index offset
        int first_pick_arc = static_cast<int>(net.arcs().size());
        for (std::size_t i = 0; i < groups.size(); ++i) {
            for (int f : groups[i]) {
                if (fnode[f] < 0) {
                    fnode[f] = net.add_node(node_role::facility, 1);
                }
                net.add_arc(gnode[i], fnode[f], 1);
                pick_arcs.emplace_back(static_cast<int>(i), f);
            }
        }
        for (int f = 0; f < nf_; ++f) {
            if (fnode[f] >= 0) {
                net.add_arc(fnode[f], cnode[class_of[f]]);
            }
        }
        flow_result res = min_cost_max_flow(net);
        if (res.value != static_cast<long long>(groups.size())) {
            return std::nullopt;
        }
        std::vector<int> pick(groups.size(), -1);
        for (std::size_t j = 0; j < pick_arcs.size(); ++j) {
            if (res.arc_flow[first_pick_arc + j] > 0) {
                pick[pick_arcs[j].first] = pick_arcs[j].second;
            }
        }
        return pick;
    }

    std::optional<std::vector<int>> matroid_transversal(const std::vector<std::vector<int>>& groups) const {
        std::size_t g = groups.size();
        for (std::size_t mask = 0; mask < indep_.size(); ++mask) {
            if (!indep_[mask] || static_cast<std::size_t>(std::popcount(mask)) != g) {
                continue;
            }
            std::vector<std::vector<int>> restricted(g);
            for (std::size_t i = 0; i < g; ++i) {
                for (int f : groups[i]) {
                    if (mask >> f & 1u) {
                        restricted[i].push_back(f);
                    }
                }
            }
            if (auto pick = class_transversal(restricted, std::vector<int>(nf_, 0), {static_cast<int>(g)})) {
                return pick;
            }
        }
        return std::nullopt;
    }

    // Cheapest system of distinct representatives via min-cost flow.
    std::optional<std::vector<int>> knapsack_transversal(const std::vector<std::vector<int>>& groups,
                                                         const knapsack& c) const {
        flow_network net;
        int s = net.add_node(node_role::source);
        int t = net.add_node(node_role::sink);
        // Large per-group reward forces full matchings before weight is traded off.
        double reward = 1.0;
        for (long long w : c.weight) {
            reward += static_cast<double>(w);
        }
        std::vector<int> gnode, fnode(nf_, -1);
        for (std::size_t i = 0; i < groups.size(); ++i) {
            gnode.push_back(net.add_node(node_role::vertex, 1, -reward));
            net.add_arc(s, gnode.back(), 1);
        }
        std::vector<std::pair<int, int>> pick_arcs;
        int first_pick_arc = static_cast<int>(net.arcs().size());
        for (std::size_t i = 0; i < groups.size(); ++i) {
            for (int f : groups[i]) {
                if (fnode[f] < 0) {
                    fnode[f] = net.add_node(node_role::facility, 1, static_cast<double>(c.weight[f]));
                }
                net.add_arc(gnode[i], fnode[f], 1);
                pick_arcs.emplace_back(static_cast<int>(i), f);
            }
        }
        for (int f = 0; f < nf_; ++f) {
            if (fnode[f] >= 0) {
                net.add_arc(fnode[f], t);
            }
        }
        flow_result res = min_cost_max_flow(net);
        if (res.value != static_cast<long long>(groups.size())) {
            return std::nullopt;
        }
        std::vector<int> pick(groups.size(), -1);
        long long total = 0;
        for (std::size_t j = 0; j < pick_arcs.size(); ++j) {
            if (res.arc_flow[first_pick_arc + j] > 0) {
                pick[pick_arcs[j].first] = pick_arcs[j].second;
                total += c.weight[pick_arcs[j].second];
            }
        }
        if (total > c.budget) {
            return std::nullopt;
        }
        return pick;
    }

    const constraint_spec* spec_;
    int nf_;
    std::vector<char> indep_;
};

}  // namespace prio

#endif
