#ifndef PRIO_SOLVE_HPP
#define PRIO_SOLVE_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "constraint.hpp"
#include "contact.hpp"
#include "coverage.hpp"
#include "filter.hpp"
#include "instance.hpp"
#include "pathpack.hpp"
#include "solution.hpp"

namespace prio {

/// A linear inequality over client coverage: sum coef[v] * cov(v) <= rhs.
struct coverage_cut {
    std::vector<double> coef;  // aligned with clients
    double rhs = 0.0;
};

struct solve_options {
    /// Cutting-plane rounds before the exhaustive fallback; 0 means 10 * |C|.
    int max_cut_rounds = 0;
    /// Largest facility count for exhaustive fallbacks and cut certification.
    int exhaustive_limit = 16;
};

namespace detail {

class stopwatch {
public:
    stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline solution feasible_solution(const instance& inst, std::vector<int> centers, double factor, std::string method) {
    solution s;
    s.status = solve_status::feasible;
    s.centers = std::move(centers);
    s.factor = factor;
    s.method = std::move(method);
    finalize(inst, s);
    return s;
}

inline solution failed_solution(solve_status status, std::string why, double factor, std::string method) {
    solution s;
    s.status = status;
    s.certificate = std::move(why);
    s.factor = factor;
    s.method = std::move(method);
    return s;
}

inline std::optional<solution> empty_target(const instance& inst, const std::string& method) {
    if (inst.m != 0) {
        return std::nullopt;
    }
    if (!constraint_oracle(inst).feasible({})) {
        return failed_solution(solve_status::infeasible, "empty center set is not feasible", 1.0, method);
    }
    return feasible_solution(inst, {}, 1.0, method);
}

// Binary search over the candidate dilations. `attempt(alpha)` must be sound in the sense that an
// infeasible verdict implies alpha < OPT; monotonicity is not required because the search keeps
// the invariant "attempt(hi) succeeded".
template <class Attempt>
solution dilation_search(const instance& inst, Attempt&& attempt) {
    std::vector<double> cands = candidate_dilations(inst);
    int steps = 0;
    solution best = attempt(cands.back());
    ++steps;
    if (best.status != solve_status::feasible) {
        best.stats.search_steps = steps;
        return best;
    }
    std::size_t lo = 0;
    std::size_t hi = cands.size() - 1;
    solution first = attempt(cands[0]);
    ++steps;
    if (first.status == solve_status::feasible) {
        first.stats.search_steps = steps;
        return first;
    }
    if (first.status == solve_status::undetermined) {
        first.stats.search_steps = steps;
        return first;
    }
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        solution s = attempt(cands[mid]);
        ++steps;
        if (s.status == solve_status::feasible) {
            hi = mid;
            best = std::move(s);
        } else if (s.status == solve_status::infeasible) {
            lo = mid;
        } else {
            s.stats.search_steps = steps;
            return s;
        }
    }
    best.stats.search_steps = steps;
    return best;
}

}  // namespace detail

/// 2-approximation for Priority k-Center (C = F, cardinality, m = |C|): at dilation alpha the
/// filter with phi = 1/r over radii alpha * r(v) opens its representatives when there are at most k.
inline solution solve_plesnik(const instance& inst) {
    detail::stopwatch clock;
    const auto* card = std::get_if<cardinality>(&inst.constraint);
    if (!card || !inst.is_center() || inst.m != inst.num_clients()) {
        throw unsupported_error("solve_plesnik needs a center instance with a cardinality constraint and m = |C|");
    }
    const std::string method = "plesnik";
    if (auto s = detail::empty_target(inst, method)) {
        return *s;
    }
    std::vector<double> phi(inst.num_clients());
    for (int c = 0; c < inst.num_clients(); ++c) {
        phi[c] = 1.0 / inst.radius[c];
    }
    std::vector<int> all(inst.num_clients());
    for (int c = 0; c < inst.num_clients(); ++c) {
        all[c] = c;
    }
    auto dist = [&](int a, int b) { return inst.cc(a, b); };
    auto attempt = [&](double alpha) {
        std::vector<double> scaled(inst.radius.size());
        for (std::size_t i = 0; i < scaled.size(); ++i) {
            scaled[i] = alpha * inst.radius[i];
        }
        filter_output fo = filter(all, scaled, phi, dist, filter_mode::standard, inst.eps());
        if (static_cast<int>(fo.reps.size()) > card->k) {
            return detail::failed_solution(solve_status::infeasible,
                                           "more than k representatives", 2.0, method);
        }
        return detail::feasible_solution(inst, fo.reps, 2.0, method);
    };
    solution s = detail::dilation_search(inst, attempt);
    s.stats.runtime_ms = clock.ms();
    return s;
}

/// 3-approximation for the no-outlier supplier problem under any constraint: representatives of
/// the filter with phi = 1/r each need one facility within alpha * r_u, and the picks must be
/// jointly feasible.
inline solution solve_supplier(const instance& inst) {
    detail::stopwatch clock;
    if (inst.m != inst.num_clients()) {
        throw unsupported_error("solve_supplier needs m = |C|");
    }
    const std::string method = "supplier";
    if (auto s = detail::empty_target(inst, method)) {
        return *s;
    }
    constraint_oracle oracle(inst);
    std::vector<double> phi(inst.num_clients());
    std::vector<int> all(inst.num_clients());
    for (int c = 0; c < inst.num_clients(); ++c) {
        phi[c] = 1.0 / inst.radius[c];
        all[c] = c;
    }
    auto dist = [&](int a, int b) { return inst.cc(a, b); };
    auto attempt = [&](double alpha) {
        std::vector<double> scaled(inst.radius.size());
        for (std::size_t i = 0; i < scaled.size(); ++i) {
            scaled[i] = alpha * inst.radius[i];
        }
        filter_output fo = filter(all, scaled, phi, dist, filter_mode::standard, inst.eps());
        std::vector<std::vector<int>> groups;
        for (int u : fo.reps) {
            groups.push_back(facilities_within(inst, u, scaled[u]));
        }
        auto pick = oracle.transversal(groups);
        if (!pick) {
            return detail::failed_solution(solve_status::infeasible,
                                           "no feasible facility choice for the representative groups", 3.0, method);
        }
        return detail::feasible_solution(inst, *pick, 3.0, method);
    };
    solution s = detail::dilation_search(inst, attempt);
    s.stats.runtime_ms = clock.ms();
    return s;
}

enum class outlier_pipeline { generic, distinct_radii, powers_of_b, knapsack_forest };

/// Pipeline choice for the outlier solvers and the guarantee it carries.
struct pipeline_plan {
    outlier_pipeline kind = outlier_pipeline::generic;
    double factor = 9.0;
    double base = 2.0;  // bucket base for generic / powers_of_b / knapsack_forest
    int distinct = 0;   // number of distinct radii
};

inline pipeline_plan choose_pipeline(const instance& inst) {
    pipeline_plan plan;
    plan.distinct = count_distinct(inst.radius);
    if (std::holds_alternative<knapsack>(inst.constraint)) {
        plan.kind = outlier_pipeline::knapsack_forest;
        plan.factor = 14.0;
        plan.base = 4.0;
        return plan;
    }
    bool card = std::holds_alternative<cardinality>(inst.constraint);
    if (card && plan.distinct <= 4) {
        // A single radius class only has one-vertex paths, which cost 3.
        plan.kind = outlier_pipeline::distinct_radii;
        plan.factor = std::max(3.0, 2.0 * plan.distinct - 1.0);
    }
    if (!card && plan.distinct == 1) {
        plan.kind = outlier_pipeline::powers_of_b;
        plan.factor = 3.0;
    }
    if (plan.distinct >= 2) {
        if (auto b = detect_power_base(inst.radius)) {
            double f = (3.0 * *b - 1.0) / (*b - 1.0);
            if (f <= plan.factor) {
                plan.kind = outlier_pipeline::powers_of_b;
                plan.factor = f;
                plan.base = *b;
            }
        }
    }
    return plan;
}

inline const char* pipeline_name(outlier_pipeline k) {
    switch (k) {
    case outlier_pipeline::generic: return "outliers-b2";
    case outlier_pipeline::distinct_radii: return "outliers-distinct-radii";
    case outlier_pipeline::powers_of_b: return "outliers-powers-of-b";
    case outlier_pipeline::knapsack_forest: return "outliers-knapsack-forest";
    }
    return "?";
}

inline radius_buckets plan_buckets(const instance& inst, const pipeline_plan& plan) {
    if (plan.kind == outlier_pipeline::distinct_radii) {
        return bucket_by_value(inst.radius);
    }
    return bucket_by_radius(inst.radius, plan.base);
}

/// Round an LP coverage vector (cardinality or matroid constraints): filter per class with
/// phi = cov, contact DAG, path packing, centers. Empty when the packing covers fewer than m.
inline std::optional<solution> round_coverage(const instance& inst, const coverage_vector& cv,
                                              const pipeline_plan& plan) {
    radius_buckets buckets = plan_buckets(inst, plan);
    contact_graph g =
        filtered_contact_graph(inst, buckets, cv.cov, cv.alpha, filter_mode::standard, contact_kind::dag);
    path_packing p;
    center_rule rule = center_rule::facility_near_sink;
    if (const auto* card = std::get_if<cardinality>(&inst.constraint)) {
        p = solve_wkpp(g, card->k);
        if (plan.kind == outlier_pipeline::distinct_radii) {
            rule = center_rule::last_arc_witness;
        } else if (inst.is_center()) {
            rule = center_rule::center_sink;
        }
    } else {
        p = solve_wmatpp(g, constraint_oracle(inst));
    }
    if (p.value < inst.m - 1e-9) {
        return std::nullopt;
    }
    return detail::feasible_solution(inst, extract_centers(p, g, inst, rule), plan.factor, pipeline_name(plan.kind));
}

struct round_or_cut_result {
    solve_status status = solve_status::infeasible;
    solution sol;
    std::vector<coverage_cut> cuts;
    int rounds = 0;
};

namespace detail {

// Budget-feasible facility subsets of a knapsack instance, visited in increasing mask order.
template <class Fn>
void for_each_affordable(const instance& inst, Fn&& fn) {
    const auto& kn = std::get<knapsack>(inst.constraint);
    int nf = inst.num_facilities();
    std::uint32_t limit = 1u << nf;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        long long w = 0;
        for (int f = 0; f < nf && w <= kn.budget; ++f) {
            if (mask >> f & 1u) {
                w += kn.weight[f];
            }
        }
        if (w <= kn.budget) {
            fn(mask);
        }
    }
}

inline std::vector<int> mask_to_set(std::uint32_t mask, int nf) {
    std::vector<int> s;
    for (int f = 0; f < nf; ++f) {
        if (mask >> f & 1u) {
            s.push_back(f);
        }
    }
    return s;
}

// max sum_f val(f) over w(S) <= B (0/1 knapsack by budget).
inline double facility_knapsack_bound(const std::vector<double>& val, const std::vector<long long>& w, long long budget) {
    std::vector<double> best(static_cast<std::size_t>(budget) + 1, 0.0);
    for (std::size_t f = 0; f < val.size(); ++f) {
        if (val[f] <= 0 || w[f] > budget) {
            continue;
        }
        for (long long b = budget; b >= w[f]; --b) {
            best[b] = std::max(best[b], best[b - w[f]] + val[f]);
        }
    }
    return best[budget];
}

}  // namespace detail

/// Cutting-plane loop for knapsack constraints at dilation alpha. Each round maximises the
/// (weighted) coverage over the base rows and the cuts so far, rounds the coverage through the
/// modified filter, the contact forest and the tree DP, and either returns centers (dilation at
/// most 14 alpha) or adds a cut sum lambda(v) cov(v) <= rhs that every integral solution satisfies.
/// With `weight` the target is "weight covered > threshold" and cuts use rhs = threshold;
/// without it the target is "at least m clients" and cuts use rhs = m - 1.
inline round_or_cut_result knapsack_round_or_cut(const instance& inst, double alpha, const solve_options& opt,
                                                 const std::vector<double>* weight, double threshold) {
    round_or_cut_result res;
    const auto& kn = std::get<knapsack>(inst.constraint);
    int nc = inst.num_clients();
    int nf = inst.num_facilities();
    bool weighted = weight != nullptr;
    double target = weighted ? threshold : static_cast<double>(inst.m);
    double cut_rhs = weighted ? threshold : static_cast<double>(inst.m) - 1.0;
    double tol = 1e-7 * (1.0 + std::abs(target));
    const std::string method = "outliers-knapsack-forest";
    auto reaches = [&](double value) { return weighted ? value > target + tol : value >= target - 1e-9; };

    if (!weighted && inst.m > nc) {
        res.sol = detail::failed_solution(solve_status::infeasible, "m exceeds the number of clients", 14.0, method);
        return res;
    }
    coverage_lp_options lo;
    lo.allow_knapsack = true;
    lo.target_row = false;
    if (weighted) {
        lo.weight = *weight;
    }
    lp_model lp = build_coverage_lp(inst, alpha, lo);
    coverage_layout lay{nf, nc};
    radius_buckets buckets = bucket_by_radius(inst.radius, 4.0);
    int cap = opt.max_cut_rounds > 0 ? opt.max_cut_rounds : 10 * std::max(1, nc);
    double eps = inst.eps();

    // Clients covered (at alpha * r) by each facility subset, as a weight.
    auto covered_weight = [&](std::uint32_t mask) {
        double total = 0.0;
        for (int c = 0; c < nc; ++c) {
            for (int f = 0; f < nf; ++f) {
                if ((mask >> f & 1u) && inst.cf(c, f) <= alpha * inst.radius[c] + eps) {
                    total += weighted ? (*weight)[c] : 1.0;
                    break;
                }
            }
        }
        return total;
    };
    auto exhaustive = [&]() {
        double best = -1.0;
        std::uint32_t best_mask = 0;
        detail::for_each_affordable(inst, [&](std::uint32_t mask) {
            double v = covered_weight(mask);
            if (v > best) {
                best = v;
                best_mask = mask;
            }
        });
        if (reaches(best)) {
            res.status = solve_status::feasible;
            res.sol = detail::feasible_solution(inst, detail::mask_to_set(best_mask, nf), 14.0, method + "+exhaustive");
        } else {
            res.status = solve_status::infeasible;
            res.sol = detail::failed_solution(solve_status::infeasible, "exhaustive search found no covering set", 14.0,
                                              method);
        }
    };

    solve_stats stats;
    for (res.rounds = 0; res.rounds < cap; ++res.rounds) {
        lp_solution sol = solve_lp(lp);
        stats.lp_pivots += sol.pivots;
        ++stats.lp_solves;
        double value = sol.status == lp_status::optimal ? sol.objective_value : -inf;
        bool lp_short = weighted ? value <= target + tol : value < target - tol;
        if (lp_short) {
            res.status = solve_status::infeasible;
            res.sol = detail::failed_solution(solve_status::infeasible,
                                              "coverage LP with " + std::to_string(res.cuts.size()) +
                                                  " cuts cannot reach the target",
                                              14.0, method);
            res.sol.stats = stats;
            res.sol.stats.cuts_added = static_cast<int>(res.cuts.size());
            return res;
        }
        std::vector<double> cov(sol.values.begin() + lay.nf, sol.values.end());
        contact_graph g = filtered_contact_graph(inst, buckets, cov, alpha, filter_mode::modified,
                                                 contact_kind::forest, weight);
        dp_index mode = weighted ? dp_index::weight : dp_index::value;
        path_packing p = solve_wnappp_dp(g, kn.weight, kn.budget, mode);
        if (reaches(p.value)) {
            res.status = solve_status::feasible;
            res.sol = detail::feasible_solution(inst, extract_centers(p, g, inst, center_rule::facility_near_sink), 14.0,
                                                method);
            res.sol.stats = stats;
            res.sol.stats.cuts_added = static_cast<int>(res.cuts.size());
            return res;
        }

        coverage_cut cut;
        cut.coef.assign(nc, 0.0);
        for (const auto& v : g.vertices) {
            cut.coef[v.point] = v.lambda;
        }
        cut.rhs = cut_rhs;
        bool certified = !g.pruned;
        if (!certified) {
            std::vector<double> val(nf, 0.0);
            for (const auto& v : g.vertices) {
                for (int f = 0; f < nf; ++f) {
                    if (inst.cf(v.point, f) <= v.radius + eps) {
                        val[f] += v.lambda;
                    }
                }
            }
            certified = detail::facility_knapsack_bound(val, kn.weight, kn.budget) <= cut_rhs + tol;
        }
        if (!certified) {
            if (nf > opt.exhaustive_limit) {
                res.status = solve_status::undetermined;
                res.sol = detail::failed_solution(solve_status::undetermined, "cut could not be certified", 14.0, method);
                return res;
            }
            double best = -1.0;
            std::uint32_t best_mask = 0;
            detail::for_each_affordable(inst, [&](std::uint32_t mask) {
                double total = 0.0;
                for (const auto& v : g.vertices) {
                    for (int f = 0; f < nf; ++f) {
                        if ((mask >> f & 1u) && inst.cf(v.point, f) <= v.radius + eps) {
                            total += v.lambda;
                            break;
                        }
                    }
                }
                if (total > best) {
                    best = total;
                    best_mask = mask;
                }
            });
            if (reaches(best)) {
                // Members of covered representatives lie within 2 r_v + 2 r_w < 10 r_w of the set.
                res.status = solve_status::feasible;
                res.sol = detail::feasible_solution(inst, detail::mask_to_set(best_mask, nf), 14.0,
                                                    method + "+representative-cover");
                res.sol.stats = stats;
                res.sol.stats.cuts_added = static_cast<int>(res.cuts.size());
                return res;
            }
        }
        std::vector<std::pair<int, double>> row;
        for (int c = 0; c < nc; ++c) {
            if (cut.coef[c] != 0.0) {
                row.emplace_back(lay.cov(c), cut.coef[c]);
            }
        }
        lp.add_sparse_row(row, relation::le, cut.rhs);
        res.cuts.push_back(std::move(cut));
    }
    if (nf <= opt.exhaustive_limit) {
        exhaustive();
    } else {
        res.status = solve_status::undetermined;
        res.sol = detail::failed_solution(solve_status::undetermined, "cut round limit reached", 14.0, method);
    }
    res.sol.stats = stats;
    res.sol.stats.cuts_added = static_cast<int>(res.cuts.size());
    return res;
}

inline round_or_cut_result round_or_cut_knapsack(const instance& inst, double alpha, const solve_options& opt = {}) {
    if (!std::holds_alternative<knapsack>(inst.constraint)) {
        throw unsupported_error("round_or_cut_knapsack needs a knapsack constraint");
    }
    return knapsack_round_or_cut(inst, alpha, opt, nullptr, 0.0);
}

/// Outlier solver for center and supplier instances under any constraint. Picks the pipeline with
/// the best guarantee for the radius structure, binary searches the dilation on LP feasibility
/// (cardinality / matroid) or on round-or-cut termination (knapsack), then rounds once.
inline solution solve_outliers(const instance& inst, const solve_options& opt = {}) {
    detail::stopwatch clock;
    pipeline_plan plan = choose_pipeline(inst);
    std::string method = pipeline_name(plan.kind);
    if (auto s = detail::empty_target(inst, method)) {
        return *s;
    }
    solve_stats total;
    solution out;
    if (plan.kind == outlier_pipeline::knapsack_forest) {
        auto attempt = [&](double alpha) {
            round_or_cut_result r = round_or_cut_knapsack(inst, alpha, opt);
            total.lp_pivots += r.sol.stats.lp_pivots;
            total.lp_solves += r.sol.stats.lp_solves;
            total.cuts_added += static_cast<int>(r.cuts.size());
            return r.sol;
        };
        out = detail::dilation_search(inst, attempt);
    } else {
        std::vector<double> cands = candidate_dilations(inst);
        std::optional<coverage_vector> at_hi = lp_feasible_at(inst, cands.back(), &total);
        int steps = 1;
        if (!at_hi) {
            out = detail::failed_solution(solve_status::infeasible,
                                          "coverage LP infeasible at the largest candidate dilation", plan.factor,
                                          method);
        } else {
            std::size_t hi = cands.size() - 1;
            std::optional<coverage_vector> at_zero = lp_feasible_at(inst, cands[0], &total);
            ++steps;
            if (at_zero) {
                hi = 0;
                at_hi = at_zero;
            } else {
                std::size_t lo = 0;
                while (hi - lo > 1) {
                    std::size_t mid = lo + (hi - lo) / 2;
                    auto cv = lp_feasible_at(inst, cands[mid], &total);
                    ++steps;
                    if (cv) {
                        hi = mid;
                        at_hi = std::move(cv);
                    } else {
                        lo = mid;
                    }
                }
            }
            // Rounding at the smallest LP-feasible candidate is guaranteed to reach m; later
            // candidates are only visited if floating point error breaks that.
            for (std::size_t i = hi; i < cands.size(); ++i) {
                if (i != hi) {
                    at_hi = lp_feasible_at(inst, cands[i], &total);
                    ++steps;
                    if (!at_hi) {
                        continue;
                    }
                }
                if (auto s = round_coverage(inst, *at_hi, plan)) {
                    out = std::move(*s);
                    if (i != hi) {
                        out.certificate = "rounding succeeded only above the smallest LP-feasible dilation";
                    }
                    break;
                }
            }
            if (out.status != solve_status::feasible && out.certificate.empty()) {
                out = detail::failed_solution(solve_status::undetermined, "rounding never reached m", plan.factor,
                                              method);
            }
        }
        total.search_steps = steps;
    }
    int steps = out.stats.search_steps;
    out.stats = total;
    if (steps > 0) {
        out.stats.search_steps = steps;
    }
    out.stats.runtime_ms = clock.ms();
    return out;
}

/// Supplier instances (C and F arbitrary) go through the same pipelines; candidate facilities and
/// witnesses are restricted to F and centers come from the facility at each sink.
inline solution solve_supplier_outliers(const instance& inst, const solve_options& opt = {}) {
    return solve_outliers(inst, opt);
}

enum class variant { center, supplier };

/// Entry point used by the CLI: no-outlier instances go to the 2- or 3-approximation, the rest to
/// the outlier pipelines.
inline solution solve(const instance& inst, variant v, const solve_options& opt = {}) {
    if (v == variant::center && !inst.is_center()) {
        throw unsupported_error("center variant needs clients = facilities = all points");
    }
    if (inst.m == inst.num_clients()) {
        if (v == variant::center && std::holds_alternative<cardinality>(inst.constraint)) {
            return solve_plesnik(inst);
        }
        return solve_supplier(inst);
    }
    return solve_outliers(inst, opt);
}

}  // namespace prio

#endif
