#ifndef PRIO_FAIRNESS_HPP
#define PRIO_FAIRNESS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "constraint.hpp"
#include "contact.hpp"
#include "coverage.hpp"
#include "filter.hpp"
#include "instance.hpp"
#include "lp.hpp"
#include "pathpack.hpp"
#include "solution.hpp"
#include "solve.hpp"

namespace prio {

/// NR(v): smallest radius whose closed ball around v holds ceil(n/k) points, v included.
inline std::vector<double> compute_nr_radii(const metric_space& metric, int k) {
    if (k < 1) {
        throw error("neighborhood radius needs k >= 1");
    }
    std::size_t n = metric.size();
    std::size_t ell = (n + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k);
    std::vector<double> out(n, 0.0);
    if (ell <= 1) {
        return out;
    }
    std::vector<double> row(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
            row[u] = metric(v, u);
        }
        std::nth_element(row.begin(), row.begin() + (ell - 1), row.end());
        out[v] = row[ell - 1];
    }
    return out;
}

/// Individually fair clustering: at most k centers with d(v, S) <= 2 NR(v) for every point.
/// Centers and covered clients are point ids. alpha reports max d(v,S)/NR(v), with 0/0 read as 0.
inline solution solve_jkl_fair(const metric_space& metric, int k) {
    int n = static_cast<int>(metric.size());
    std::vector<double> nr = compute_nr_radii(metric, k);
    solution s;
    s.status = solve_status::feasible;
    s.factor = 2.0;
    s.method = "jkl-fair";
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) {
        all[i] = i;
    }
    bool zero = std::any_of(nr.begin(), nr.end(), [](double r) { return r <= 0.0; });
    if (n == 0) {
        return s;
    }
    if (!zero) {
        instance inst = make_center_instance(metric, nr, cardinality{k}, n);
        s = solve_plesnik(inst);
        s.method = "jkl-fair";
    } else if (k >= n) {
        s.centers = all;
    } else {
        // Duplicated points give NR = 0; the filter at dilation 1 still opens at most k centers.
        std::vector<double> phi(n);
        for (int i = 0; i < n; ++i) {
            phi[i] = nr[i] > 0 ? 1.0 / nr[i] : inf;
        }
        auto dist = [&](int a, int b) { return metric(a, b); };
        filter_output fo = filter(all, nr, phi, dist, filter_mode::standard, 1e-9 * metric.max_distance());
        s.centers = fo.reps;
    }
    s.covered = all;
    s.alpha = 0.0;
    double eps = 1e-9 * metric.max_distance();
    for (int v = 0; v < n; ++v) {
        double d = inf;
        for (int c : s.centers) {
            d = std::min(d, metric(v, c));
        }
        if (d <= eps) {
            continue;
        }
        s.alpha = std::max(s.alpha, nr[v] > 0 ? d / nr[v] : inf);
    }
    return s;
}

/// Distribution over feasible center sets (facility positions).
struct lottery_solution {
    solve_status status = solve_status::infeasible;
    std::vector<std::vector<int>> support;
    std::vector<double> probability;
    double alpha = 0.0;           // dilation at which the demands are met
    double achieved_alpha = 0.0;  // smallest dilation at which this distribution meets them
    std::vector<double> achieved;  // per client probability of coverage at alpha
    std::vector<double> certificate_mu;  // dual witness when no exact distribution exists
    double certificate_m = 0.0;
    std::string certificate;
    int rounds = 0;
};

inline double default_lottery_factor(const instance& inst) {
    if (std::holds_alternative<knapsack>(inst.constraint)) {
        return 14.0;
    }
    if (std::holds_alternative<general_matroid>(inst.constraint)) {
        throw unsupported_error("lottery supports cardinality, partition matroid and knapsack constraints");
    }
    return 9.0;
}

struct fpfc_result {
    solve_status status = solve_status::infeasible;
    std::vector<int> centers;
};

/// Find a feasible S with sum of weight over clients within factor * r(v) of S above `threshold`,
/// or prove that no S reaches it within r(v).
inline fpfc_result solve_fpfc(const instance& inst, const std::vector<double>& weight, double threshold,
                              const solve_options& opt = {}) {
    fpfc_result out;
    double tol = 1e-7 * (1.0 + std::abs(threshold));
    if (std::holds_alternative<knapsack>(inst.constraint)) {
        round_or_cut_result r = knapsack_round_or_cut(inst, 1.0, opt, &weight, threshold);
        out.status = r.status;
        if (r.status == solve_status::feasible) {
            out.centers = r.sol.centers;
        }
        return out;
    }
    coverage_lp_options lo;
    lo.weight = weight;
    lo.target_row = false;
    lp_solution lp = solve_coverage_lp(inst, 1.0, lo, nullptr);
    if (lp.status != lp_status::optimal || lp.objective_value <= threshold + tol) {
        out.status = solve_status::infeasible;
        return out;
    }
    coverage_vector cv;
    cv.alpha = 1.0;
    cv.x.assign(lp.values.begin(), lp.values.begin() + inst.num_facilities());
    cv.cov.assign(lp.values.begin() + inst.num_facilities(), lp.values.end());
    radius_buckets buckets = bucket_by_radius(inst.radius, 2.0);
    contact_graph g = filtered_contact_graph(inst, buckets, cv.cov, 1.0, filter_mode::standard, contact_kind::dag, &weight);
    path_packing p;
    center_rule rule = center_rule::facility_near_sink;
    if (const auto* card = std::get_if<cardinality>(&inst.constraint)) {
        p = solve_wkpp(g, card->k);
        if (inst.is_center()) {
            rule = center_rule::center_sink;
        }
    } else {
        p = solve_wmatpp(g, constraint_oracle(inst));
    }
    if (p.value <= threshold + tol) {
        out.status = solve_status::undetermined;
        return out;
    }
    out.status = solve_status::feasible;
    out.centers = extract_centers(p, g, inst, rule);
    return out;
}

namespace detail {

inline std::vector<char> covered_by(const instance& inst, const std::vector<int>& set, double alpha) {
    std::vector<char> out(inst.num_clients(), 0);
    double eps = inst.eps();
    for (int c = 0; c < inst.num_clients(); ++c) {
        for (int f : set) {
            if (inst.cf(c, f) <= alpha * inst.radius[c] + eps) {
                out[c] = 1;
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

/// Lottery model: a distribution over feasible center sets such that every client v is within
/// factor * r(v) of the drawn set with probability at least prob(v). Cutting planes on the dual
/// (mu, m) generate center sets through the fair-coverage subproblem; once the dual closes, the
/// restricted primal over the generated sets gives a basic distribution.
inline lottery_solution solve_lottery(const instance& inst, double factor = 0.0, const solve_options& opt = {}) {
    if (!inst.prob_demand) {
        throw error("lottery needs prob_demand");
    }
    if (factor <= 0.0) {
        factor = default_lottery_factor(inst);
    } else {
        default_lottery_factor(inst);
    }
    const auto& prob = *inst.prob_demand;
    int nc = inst.num_clients();
    lottery_solution out;
    out.alpha = factor;
    constraint_oracle oracle(inst);
    std::vector<std::vector<int>> sets;
    std::vector<std::vector<char>> cover;

    lp_model dual;
    dual.sense = objective_sense::maximize;
    for (int c = 0; c < nc; ++c) {
        dual.add_var(0.0, 1.0, prob[c]);
    }
    int mvar = dual.add_var(0.0, static_cast<double>(nc), -1.0);
    int cap = 50 * (nc + 1);
    bool closed = false;
    for (out.rounds = 0; out.rounds < cap; ++out.rounds) {
        lp_solution d = solve_lp(dual);
        if (d.status != lp_status::optimal) {
            out.status = solve_status::undetermined;
            out.certificate = "dual LP not solvable";
            return out;
        }
        if (d.objective_value <= 1e-9) {
            closed = true;
            break;
        }
        double scale = 1.0 / d.objective_value;
        std::vector<double> mu(nc);
        for (int c = 0; c < nc; ++c) {
            mu[c] = d.values[c] * scale;
        }
        double mth = d.values[mvar] * scale;
        fpfc_result f = solve_fpfc(inst, mu, mth, opt);
        if (f.status == solve_status::infeasible) {
            out.status = solve_status::infeasible;
            out.certificate_mu = mu;
            out.certificate_m = mth;
            out.certificate = "dual point with sum prob*mu >= m + 1 while no feasible set covers weight above m";
            return out;
        }
        if (f.status != solve_status::feasible ||
            std::find(sets.begin(), sets.end(), f.centers) != sets.end()) {
            out.status = solve_status::undetermined;
            out.certificate = "fair-coverage subproblem returned no new violated set";
            return out;
        }
        std::vector<char> cv = detail::covered_by(inst, f.centers, factor);
        std::vector<std::pair<int, double>> row{{mvar, -1.0}};
        for (int c = 0; c < nc; ++c) {
            if (cv[c]) {
                row.emplace_back(c, 1.0);
            }
        }
        dual.add_sparse_row(row, relation::le, 0.0);
        sets.push_back(f.centers);
        cover.push_back(std::move(cv));
    }
    if (!closed) {
        out.status = solve_status::undetermined;
        out.certificate = "dual cutting-plane round limit reached";
        return out;
    }
    if (sets.empty()) {
        std::vector<int> pick;
        for (int f = 0; f < inst.num_facilities(); ++f) {
            if (oracle.feasible({f})) {
                pick = {f};
                break;
            }
        }
        sets.push_back(pick);
        cover.push_back(detail::covered_by(inst, pick, factor));
    }

    lp_model primal;
    primal.sense = objective_sense::feasibility;
    int ns = static_cast<int>(sets.size());
    for (int s = 0; s < ns; ++s) {
        primal.add_var(0.0, inf, 0.0);
    }
    primal.add_row(std::vector<double>(ns, 1.0), relation::eq, 1.0);
    for (int c = 0; c < nc; ++c) {
        std::vector<double> row(ns, 0.0);
        for (int s = 0; s < ns; ++s) {
            row[s] = cover[s][c] ? 1.0 : 0.0;
        }
        primal.add_row(std::move(row), relation::ge, prob[c]);
    }
    lp_solution z = solve_lp(primal);
    if (z.status != lp_status::optimal) {
        out.status = solve_status::undetermined;
        out.certificate = "restricted primal infeasible after the dual closed";
        return out;
    }
    double total = 0.0;
    for (int s = 0; s < ns; ++s) {
        if (z.values[s] > 1e-12) {
            total += z.values[s];
        }
    }
    out.achieved.assign(nc, 0.0);
    for (int s = 0; s < ns; ++s) {
        if (z.values[s] <= 1e-12) {
            continue;
        }
        double p = z.values[s] / total;
        out.support.push_back(sets[s]);
        out.probability.push_back(p);
        for (int c = 0; c < nc; ++c) {
            if (cover[s][c]) {
                out.achieved[c] += p;
            }
        }
    }
    if (static_cast<int>(out.support.size()) > nc + 1) {
        throw error("restricted primal returned a non-basic distribution");
    }
    out.status = solve_status::feasible;
    out.achieved_alpha = 0.0;
    for (int c = 0; c < nc; ++c) {
        if (prob[c] <= 1e-6) {
            continue;
        }
        std::vector<std::pair<double, double>> by_ratio;
        for (std::size_t s = 0; s < out.support.size(); ++s) {
            double d = inf;
            for (int f : out.support[s]) {
                d = std::min(d, inst.cf(c, f));
            }
            by_ratio.emplace_back(d / inst.radius[c], out.probability[s]);
        }
        std::sort(by_ratio.begin(), by_ratio.end());
        double acc = 0.0;
        for (auto [ratio, p] : by_ratio) {
            acc += p;
            if (acc >= prob[c] - 1e-6) {
                out.achieved_alpha = std::max(out.achieved_alpha, ratio);
                break;
            }
        }
    }
    return out;
}

/// Empty string when every support set is feasible, probabilities form a distribution, and each
/// client's coverage probability at `alpha` reaches its demand within 1e-6.
inline std::string check_lottery(const instance& inst, const lottery_solution& sol) {
    if (sol.status != solve_status::feasible) {
        return "";
    }
    constraint_oracle oracle(inst);
    double total = 0.0;
    for (std::size_t s = 0; s < sol.support.size(); ++s) {
        if (!oracle.feasible(sol.support[s])) {
            return "support set violates the constraint";
        }
        if (sol.probability[s] < -1e-12) {
            return "negative probability";
        }
        total += sol.probability[s];
    }
    if (std::abs(total - 1.0) > 1e-9) {
        return "probabilities do not sum to 1";
    }
    if (static_cast<int>(sol.support.size()) > inst.num_clients() + 1) {
        return "support larger than |C| + 1";
    }
    const auto& prob = *inst.prob_demand;
    for (int c = 0; c < inst.num_clients(); ++c) {
        double p = 0.0;
        for (std::size_t s = 0; s < sol.support.size(); ++s) {
            if (detail::covered_by(inst, sol.support[s], sol.alpha)[c]) {
                p += sol.probability[s];
            }
        }
        if (p < prob[c] - 1e-6) {
            return "client " + std::to_string(c) + " demand not met";
        }
    }
    return "";
}

}  // namespace prio

#endif
