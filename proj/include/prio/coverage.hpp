#ifndef PRIO_COVERAGE_HPP
#define PRIO_COVERAGE_HPP

#include <algorithm>
#include <bit>
#include <optional>
#include <variant>
#include <vector>

#include "constraint.hpp"
#include "instance.hpp"
#include "lp.hpp"
#include "solution.hpp"

namespace prio {

/// Fractional coverage of every client at dilation `alpha`, with the facility values behind it.
struct coverage_vector {
    std::vector<double> cov;  // aligned with clients
    std::vector<double> x;    // aligned with facilities
    double alpha = 0.0;
    double value = 0.0;  // objective of the LP that produced it
};

/// Variable layout of the coverage LP: x_f first, then cov_v.
struct coverage_layout {
    int nf = 0;
    int nc = 0;
    int x(int f) const { return f; }
    int cov(int c) const { return nf + c; }
};

struct coverage_lp_options {
    /// Objective weights on cov; all ones when empty.
    std::vector<double> weight;
    /// Add the row sum(cov) >= m.
    bool target_row = true;
    /// Enumerate every rank row for explicit matroid families up front.
    bool rank_rows = true;
    /// Accept knapsack constraints (budget row plus zeroing of unaffordable facilities).
    bool allow_knapsack = false;
};

/// Variables 0 <= x_f <= 1 and 0 <= cov_v <= 1 with cov_v <= sum of x_f over the facilities within
/// alpha * r(v); maximise sum cov (or the weighted sum); facility side from the constraint.
inline lp_model build_coverage_lp(const instance& inst, double alpha, const coverage_lp_options& opt) {
    const auto& spec = inst.constraint;
    if (std::holds_alternative<knapsack>(spec) && !opt.allow_knapsack) {
        throw unsupported_error("the natural knapsack LP is not a valid relaxation target; use round_or_cut_knapsack");
    }
    coverage_layout lay{inst.num_facilities(), inst.num_clients()};
    lp_model lp;
    lp.sense = objective_sense::maximize;
    for (int f = 0; f < lay.nf; ++f) {
        lp.add_var(0.0, 1.0, 0.0);
    }
    for (int c = 0; c < lay.nc; ++c) {
        lp.add_var(0.0, 1.0, opt.weight.empty() ? 1.0 : opt.weight[c]);
    }
    double eps = inst.eps();
    for (int c = 0; c < lay.nc; ++c) {
        std::vector<std::pair<int, double>> row{{lay.cov(c), 1.0}};
        double reach = alpha * inst.radius[c];
        for (int f = 0; f < lay.nf; ++f) {
            if (inst.cf(c, f) <= reach + eps) {
                row.emplace_back(lay.x(f), -1.0);
            }
        }
        lp.add_sparse_row(row, relation::le, 0.0);
    }
    if (opt.target_row) {
        std::vector<std::pair<int, double>> row;
        for (int c = 0; c < lay.nc; ++c) {
            row.emplace_back(lay.cov(c), 1.0);
        }
        lp.add_sparse_row(row, relation::ge, static_cast<double>(inst.m));
    }
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, cardinality>) {
                std::vector<std::pair<int, double>> row;
                for (int f = 0; f < lay.nf; ++f) {
                    row.emplace_back(lay.x(f), 1.0);
                }
                lp.add_sparse_row(row, relation::le, static_cast<double>(c.k));
            } else if constexpr (std::is_same_v<T, partition_matroid>) {
                for (std::size_t cls = 0; cls < c.cap.size(); ++cls) {
                    std::vector<std::pair<int, double>> row;
                    for (int f = 0; f < lay.nf; ++f) {
                        if (c.class_of[f] == static_cast<int>(cls)) {
                            row.emplace_back(lay.x(f), 1.0);
                        }
                    }
                    if (!row.empty()) {
                        lp.add_sparse_row(row, relation::le, static_cast<double>(c.cap[cls]));
                    }
                }
            } else if constexpr (std::is_same_v<T, general_matroid>) {
                if (opt.rank_rows) {
                    auto rank = constraint_oracle(inst).rank_table();
                    for (std::size_t mask = 1; mask < rank.size(); ++mask) {
                        if (rank[mask] < std::popcount(mask)) {
                            std::vector<std::pair<int, double>> row;
                            for (int f = 0; f < lay.nf; ++f) {
                                if (mask >> f & 1u) {
                                    row.emplace_back(lay.x(f), 1.0);
                                }
                            }
                            lp.add_sparse_row(row, relation::le, static_cast<double>(rank[mask]));
                        }
                    }
                }
            } else {
                std::vector<std::pair<int, double>> row;
                for (int f = 0; f < lay.nf; ++f) {
                    row.emplace_back(lay.x(f), static_cast<double>(c.weight[f]));
                    if (c.weight[f] > c.budget) {
                        lp.hi[lay.x(f)] = 0.0;
                    }
                }
                lp.add_sparse_row(row, relation::le, static_cast<double>(c.budget));
            }
        },
        spec);
    return lp;
}

inline lp_model build_coverage_lp(const instance& inst, double alpha) {
    return build_coverage_lp(inst, alpha, coverage_lp_options{});
}

/// Solve a coverage LP; explicit matroid families get their rank rows by separation over all
/// subsets (ground set <= 20), so only violated rows are ever added.
inline lp_solution solve_coverage_lp(const instance& inst, double alpha, coverage_lp_options opt, solve_stats* stats) {
    bool separate = std::holds_alternative<general_matroid>(inst.constraint);
    if (separate) {
        opt.rank_rows = false;
    }
    lp_model lp = build_coverage_lp(inst, alpha, opt);
    std::vector<std::uint8_t> rank;
    if (separate) {
        rank = constraint_oracle(inst).rank_table();
    }
    int nf = inst.num_facilities();
    while (true) {
        lp_solution sol = solve_lp(lp);
        if (stats) {
            stats->lp_pivots += sol.pivots;
            ++stats->lp_solves;
        }
        if (!separate || sol.status != lp_status::optimal) {
            return sol;
        }
        double worst = 1e-7;
        std::size_t worst_mask = 0;
        for (std::size_t mask = 1; mask < rank.size(); ++mask) {
            double load = -static_cast<double>(rank[mask]);
            for (int f = 0; f < nf; ++f) {
                if (mask >> f & 1u) {
                    load += sol.values[f];
                }
            }
            if (load > worst) {
                worst = load;
                worst_mask = mask;
            }
        }
        if (worst_mask == 0) {
            return sol;
        }
        std::vector<std::pair<int, double>> row;
        for (int f = 0; f < nf; ++f) {
            if (worst_mask >> f & 1u) {
                row.emplace_back(f, 1.0);
            }
        }
        lp.add_sparse_row(row, relation::le, static_cast<double>(rank[worst_mask]));
    }
}

/// Coverage vector maximising sum cov at dilation alpha, or none when fewer than m units of
/// coverage are achievable.
inline std::optional<coverage_vector> lp_feasible_at(const instance& inst, double alpha, solve_stats* stats = nullptr) {
    lp_solution sol = solve_coverage_lp(inst, alpha, coverage_lp_options{}, stats);
    if (sol.status != lp_status::optimal || sol.objective_value < inst.m - lp_tolerance * (1.0 + inst.m)) {
        return std::nullopt;
    }
    coverage_layout lay{inst.num_facilities(), inst.num_clients()};
    coverage_vector cv;
    cv.alpha = alpha;
    cv.value = sol.objective_value;
    cv.x.assign(sol.values.begin(), sol.values.begin() + lay.nf);
    cv.cov.assign(sol.values.begin() + lay.nf, sol.values.end());
    return cv;
}

}  // namespace prio

#endif
