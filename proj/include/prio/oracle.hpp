#ifndef PRIO_ORACLE_HPP
#define PRIO_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "constraint.hpp"
#include "contact.hpp"
#include "instance.hpp"
#include "pathpack.hpp"
#include "solution.hpp"

namespace prio {

inline constexpr int oracle_max_facilities = 16;
inline constexpr int oracle_max_clients = 20;
inline constexpr int oracle_max_vertices = 10;

namespace detail {

inline void check_oracle_size(const instance& inst) {
    if (inst.num_facilities() > oracle_max_facilities || inst.num_clients() > oracle_max_clients) {
        throw unsupported_error("brute force is limited to 16 facilities and 20 clients");
    }
}

inline std::vector<int> mask_members(std::uint32_t mask, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        if (mask >> i & 1u) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace detail

/// Exact optimum by enumerating every feasible facility subset in increasing mask order; the first
/// subset reaching the optimal dilation is returned.
inline solution brute_force_optimum(const instance& inst) {
    detail::check_oracle_size(inst);
    constraint_oracle oracle(inst);
    int nf = inst.num_facilities();
    int nc = inst.num_clients();
    solution best;
    best.status = solve_status::infeasible;
    best.method = "brute-force";
    best.factor = 1.0;
    double best_alpha = inf;
    std::vector<double> ratio(nc);
    for (std::uint32_t mask = 0; mask < (1u << nf); ++mask) {
        std::vector<int> s = detail::mask_members(mask, nf);
        if (!oracle.feasible(s)) {
            continue;
        }
        double alpha = 0.0;
        if (inst.m > 0) {
            for (int c = 0; c < nc; ++c) {
                double d = inf;
                for (int f : s) {
                    d = std::min(d, inst.cf(c, f));
                }
                ratio[c] = d / inst.radius[c];
            }
            std::vector<double> sorted = ratio;
            std::sort(sorted.begin(), sorted.end());
            alpha = sorted[inst.m - 1];
        }
        if (alpha < best_alpha) {
            best_alpha = alpha;
            best.centers = s;
            best.status = solve_status::feasible;
        }
    }
    if (best.status == solve_status::feasible && best_alpha == inf) {
        best.status = solve_status::infeasible;
        best.centers.clear();
    }
    if (best.status == solve_status::feasible) {
        finalize(inst, best);
    } else {
        best.certificate = "no feasible center set covers m clients";
    }
    return best;
}

/// Whether some feasible center set covers at least m clients within alpha * r(v).
inline bool brute_force_feasible_at(const instance& inst, double alpha) {
    detail::check_oracle_size(inst);
    constraint_oracle oracle(inst);
    int nf = inst.num_facilities();
    double eps = inst.eps();
    for (std::uint32_t mask = 0; mask < (1u << nf); ++mask) {
        std::vector<int> s = detail::mask_members(mask, nf);
        if (!oracle.feasible(s)) {
            continue;
        }
        int count = 0;
        for (int c = 0; c < inst.num_clients(); ++c) {
            for (int f : s) {
                if (inst.cf(c, f) <= alpha * inst.radius[c] + eps) {
                    ++count;
                    break;
                }
            }
        }
        if (count >= inst.m) {
            return true;
        }
    }
    return false;
}

namespace detail {

template <class Accept>
path_packing best_packing(const contact_graph& g, Accept&& accept) {
    if (g.size() > oracle_max_vertices) {
        throw unsupported_error("brute-force path packing is limited to 10 vertices");
    }
    path_packing best;
    for_each_packing(g, [&](const std::vector<std::vector<int>>& paths) {
        double value = 0.0;
        for (const auto& p : paths) {
            for (int v : p) {
                value += g.vertices[v].lambda;
            }
        }
        if (value <= best.value) {
            return;
        }
        std::vector<int> facilities;
        if (accept(paths, facilities)) {
            best.paths = paths;
            best.sink_facility = facilities;
            best.value = value;
        }
    });
    return best;
}

}  // namespace detail

/// Best packing with at most k paths.
inline path_packing brute_force_path_packing(const contact_graph& g, int k) {
    return detail::best_packing(g, [&](const std::vector<std::vector<int>>& paths, std::vector<int>& fac) {
        fac.assign(paths.size(), -1);
        return static_cast<int>(paths.size()) <= k;
    });
}

/// Best packing whose sinks' cheapest candidate facilities cost at most `budget` in total.
inline path_packing brute_force_path_packing(const contact_graph& g, const std::vector<long long>& facility_weight,
                                             long long budget) {
    return detail::best_packing(g, [&](const std::vector<std::vector<int>>& paths, std::vector<int>& fac) {
        long long total = 0;
        fac.clear();
        for (const auto& p : paths) {
            const auto& y = g.vertices[p.back()].candidates;
            if (y.empty()) {
                return false;
            }
            int pick = y.front();
            for (int f : y) {
                if (facility_weight[f] < facility_weight[pick]) {
                    pick = f;
                }
            }
            fac.push_back(pick);
            total += facility_weight[pick];
        }
        return total <= budget;
    });
}

/// Best packing whose sinks admit distinct facilities forming a feasible set.
inline path_packing brute_force_path_packing(const contact_graph& g, const constraint_oracle& oracle) {
    return detail::best_packing(g, [&](const std::vector<std::vector<int>>& paths, std::vector<int>& fac) {
        std::vector<std::vector<int>> groups;
        for (const auto& p : paths) {
            groups.push_back(g.vertices[p.back()].candidates);
        }
        auto pick = oracle.transversal(groups);
        if (!pick) {
            return false;
        }
        fac = *pick;
        return true;
    });
}

}  // namespace prio

#endif
