#ifndef PRIO_SOLUTION_HPP
#define PRIO_SOLUTION_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "constraint.hpp"
#include "instance.hpp"

namespace prio {

struct solve_stats {
    int cuts_added = 0;
    long long lp_pivots = 0;
    int lp_solves = 0;
    int search_steps = 0;
    double runtime_ms = 0.0;
};

/// Centers are facility positions, covered clients are client positions.
struct solution {
    solve_status status = solve_status::infeasible;
    std::vector<int> centers;
    std::vector<int> covered;
    double alpha = 0.0;
    double factor = 0.0;  // guarantee of the pipeline that produced the solution
    std::string method;
    std::string certificate;
    solve_stats stats;
};

/// d(v, S) / r(v) for every client; infinity when S is empty.
inline std::vector<double> client_ratios(const instance& inst, const std::vector<int>& centers) {
    std::vector<double> out(inst.num_clients(), inf);
    for (int c = 0; c < inst.num_clients(); ++c) {
        double best = inf;
        for (int f : centers) {
            best = std::min(best, inst.cf(c, f));
        }
        out[c] = best / inst.radius[c];
    }
    return out;
}

/// Smallest dilation at which `centers` covers m clients.
inline double dilation_for(const instance& inst, const std::vector<int>& centers) {
    if (inst.m == 0) {
        return 0.0;
    }
    std::vector<double> r = client_ratios(inst, centers);
    std::nth_element(r.begin(), r.begin() + (inst.m - 1), r.end());
    return r[inst.m - 1];
}

/// Fill alpha and covered from the centers: alpha is the m-th smallest ratio, covered are the
/// clients within alpha * r(v) + eps.
inline void finalize(const instance& inst, solution& sol) {
    std::sort(sol.centers.begin(), sol.centers.end());
    sol.centers.erase(std::unique(sol.centers.begin(), sol.centers.end()), sol.centers.end());
    sol.alpha = dilation_for(inst, sol.centers);
    sol.covered.clear();
    if (inst.m == 0) {
        return;
    }
    double eps = inst.eps();
    for (int c = 0; c < inst.num_clients(); ++c) {
        double d = inf;
        for (int f : sol.centers) {
            d = std::min(d, inst.cf(c, f));
        }
        if (d <= sol.alpha * inst.radius[c] + eps) {
            sol.covered.push_back(c);
        }
    }
}

/// Empty string when the solution re-validates, else the first failure.
inline std::string check_solution(const instance& inst, const solution& sol) {
    if (sol.status != solve_status::feasible) {
        return "";
    }
    for (int f : sol.centers) {
        if (f < 0 || f >= inst.num_facilities()) {
            return "center out of range";
        }
    }
    constraint_oracle oracle(inst);
    if (!oracle.feasible(sol.centers)) {
        return "center set violates the constraint";
    }
    if (static_cast<int>(sol.covered.size()) < inst.m) {
        return "fewer than m clients covered";
    }
    double eps = inst.eps();
    for (int c : sol.covered) {
        double d = inf;
        for (int f : sol.centers) {
            d = std::min(d, inst.cf(c, f));
        }
        if (!(d <= sol.alpha * inst.radius[c] + eps)) {
            return "client " + std::to_string(c) + " is not within alpha * r";
        }
    }
    return "";
}

}  // namespace prio

#endif
