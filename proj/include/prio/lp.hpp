#ifndef PRIO_LP_HPP
#define PRIO_LP_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "common.hpp"

namespace prio {

enum class relation { le, ge, eq };
enum class objective_sense { maximize, minimize, feasibility };
enum class lp_status { optimal, infeasible, unbounded };

inline const char* to_string(lp_status s) {
    switch (s) {
    case lp_status::optimal: return "optimal";
    case lp_status::infeasible: return "infeasible";
    case lp_status::unbounded: return "unbounded";
    }
    return "?";
}

struct lp_row {
    std::vector<double> coef;
    relation rel = relation::le;
    double rhs = 0.0;
};

/// Variables carry finite lower bounds and possibly infinite upper bounds.
struct lp_model {
    int num_vars = 0;
    objective_sense sense = objective_sense::feasibility;
    std::vector<double> objective;
    std::vector<lp_row> rows;
    std::vector<double> lo;
    std::vector<double> hi;

    int add_var(double lower = 0.0, double upper = inf, double obj = 0.0) {
        lo.push_back(lower);
        hi.push_back(upper);
        objective.push_back(obj);
        for (auto& r : rows) {
            r.coef.push_back(0.0);
        }
        return num_vars++;
    }

    void add_row(std::vector<double> coef, relation rel, double rhs) {
        rows.push_back({std::move(coef), rel, rhs});
    }

    void add_sparse_row(const std::vector<std::pair<int, double>>& terms, relation rel, double rhs) {
        std::vector<double> coef(num_vars, 0.0);
        for (auto [j, a] : terms) {
            coef[j] += a;
        }
        add_row(std::move(coef), rel, rhs);
    }
};

struct lp_solution {
    lp_status status = lp_status::infeasible;
    std::vector<double> values;
    double objective_value = 0.0;
    long long pivots = 0;
};

inline constexpr double lp_tolerance = 1e-7;

namespace detail {

class tableau {
public:
    tableau(int rows, int cols) : m_(rows), n_(cols), a_(static_cast<std::size_t>(rows) * (cols + 1), 0.0) {}

    double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * (n_ + 1) + j]; }
    double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * (n_ + 1) + j]; }
    double& rhs(int i) { return at(i, n_); }
    double rhs(int i) const { return at(i, n_); }
    int rows() const { return m_; }
    int cols() const { return n_; }

    void pivot(int r, int c) {
        double p = at(r, c);
        for (int j = 0; j <= n_; ++j) {
            at(r, j) /= p;
        }
        at(r, c) = 1.0;
        for (int i = 0; i < m_; ++i) {
            if (i == r) {
                continue;
            }
            double f = at(i, c);
            if (f == 0.0) {
                continue;
            }
            for (int j = 0; j <= n_; ++j) {
                at(i, j) -= f * at(r, j);
            }
            at(i, c) = 0.0;
        }
    }

    void drop_row(int r) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r) * (n_ + 1),
                 a_.begin() + static_cast<std::ptrdiff_t>(r + 1) * (n_ + 1));
        --m_;
    }

private:
    int m_;
    int n_;
    std::vector<double> a_;
};

enum class phase_result { optimal, unbounded };

// Minimise cost over the current basis with Bland's rule; columns with allowed[j] == false never enter.
inline phase_result run_phase(tableau& t, std::vector<int>& basis, const std::vector<double>& cost,
                              const std::vector<char>& allowed, long long& pivots) {
    constexpr double piv_eps = 1e-9;
    constexpr double rc_eps = 1e-9;
    int m = t.rows();
    int n = t.cols();
    std::vector<double> rc(n);
    while (true) {
        m = t.rows();
        for (int j = 0; j < n; ++j) {
            double v = cost[j];
            for (int i = 0; i < m; ++i) {
                v -= cost[basis[i]] * t.at(i, j);
            }
            rc[j] = v;
        }
        int enter = -1;
        for (int j = 0; j < n; ++j) {
            if (allowed[j] && rc[j] < -rc_eps) {
                enter = j;
                break;
            }
        }
        if (enter < 0) {
            return phase_result::optimal;
        }
        int leave = -1;
        double best = inf;
        for (int i = 0; i < m; ++i) {
            double a = t.at(i, enter);
            if (a <= piv_eps) {
                continue;
            }
            double ratio = std::max(0.0, t.rhs(i)) / a;
            if (leave < 0 || ratio < best - 1e-12) {
                best = ratio;
                leave = i;
            } else if (ratio <= best + 1e-12 && basis[i] < basis[leave]) {
                best = std::min(best, ratio);
                leave = i;
            }
        }
        if (leave < 0) {
            return phase_result::unbounded;
        }
        t.pivot(leave, enter);
        basis[leave] = enter;
        ++pivots;
    }
}

}  // namespace detail

/// Two-phase dense simplex with Bland's smallest-index rule.
inline lp_solution solve_lp(const lp_model& model) {
    int nv = model.num_vars;
    if (static_cast<int>(model.lo.size()) != nv || static_cast<int>(model.hi.size()) != nv ||
        (model.sense != objective_sense::feasibility && static_cast<int>(model.objective.size()) != nv)) {
        throw error("lp model: bound/objective vectors do not match num_vars");
    }
    for (const auto& r : model.rows) {
        if (static_cast<int>(r.coef.size()) != nv) {
            throw error("lp model: row length does not match num_vars");
        }
    }
    for (int j = 0; j < nv; ++j) {
        if (!std::isfinite(model.lo[j])) {
            throw error("lp model: lower bounds must be finite");
        }
        if (model.hi[j] < model.lo[j]) {
            lp_solution s;
            s.status = lp_status::infeasible;
            return s;
        }
    }

    // Shift x = lo + y and add y <= hi - lo rows.
    struct std_row {
        std::vector<double> a;
        relation rel;
        double b;
    };
    std::vector<std_row> rows;
    rows.reserve(model.rows.size() + nv);
    for (const auto& r : model.rows) {
        double b = r.rhs;
        for (int j = 0; j < nv; ++j) {
            b -= r.coef[j] * model.lo[j];
        }
        rows.push_back({r.coef, r.rel, b});
    }
    for (int j = 0; j < nv; ++j) {
        if (std::isfinite(model.hi[j])) {
            std::vector<double> a(nv, 0.0);
            a[j] = 1.0;
            rows.push_back({std::move(a), relation::le, model.hi[j] - model.lo[j]});
        }
    }
    for (auto& r : rows) {
        if (r.b < 0) {
            for (double& x : r.a) {
                x = -x;
            }
            r.b = -r.b;
            if (r.rel == relation::le) {
                r.rel = relation::ge;
            } else if (r.rel == relation::ge) {
                r.rel = relation::le;
            }
        }
    }

    int m = static_cast<int>(rows.size());
    int n_slack = 0;
    int n_art = 0;
    for (const auto& r : rows) {
        n_slack += r.rel != relation::eq;
        n_art += r.rel != relation::le;
    }
    int n = nv + n_slack + n_art;
    int first_art = nv + n_slack;
    detail::tableau t(m, n);
    std::vector<int> basis(m);
    int slack = nv;
    int art = first_art;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nv; ++j) {
            t.at(i, j) = rows[i].a[j];
        }
        t.rhs(i) = rows[i].b;
        if (rows[i].rel == relation::le) {
            t.at(i, slack) = 1.0;
            basis[i] = slack++;
        } else {
            if (rows[i].rel == relation::ge) {
                t.at(i, slack++) = -1.0;
            }
            t.at(i, art) = 1.0;
            basis[i] = art++;
        }
    }

    lp_solution sol;
    std::vector<char> allowed(n, 1);
    if (n_art > 0) {
        std::vector<double> cost(n, 0.0);
        for (int j = first_art; j < n; ++j) {
            cost[j] = 1.0;
        }
        detail::run_phase(t, basis, cost, allowed, sol.pivots);
        double infeas = 0.0;
        double scale = 1.0;
        for (int i = 0; i < t.rows(); ++i) {
            if (basis[i] >= first_art) {
                infeas += t.rhs(i);
            }
            scale = std::max(scale, std::abs(t.rhs(i)));
        }
        if (infeas > lp_tolerance * scale) {
            sol.status = lp_status::infeasible;
            return sol;
        }
        // Drive zero-level artificials out of the basis; rows that cannot pivot are redundant.
        for (int i = 0; i < t.rows();) {
            if (basis[i] < first_art) {
                ++i;
                continue;
            }
            int col = -1;
            for (int j = 0; j < first_art; ++j) {
                if (std::abs(t.at(i, j)) > 1e-9) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                t.pivot(i, col);
                basis[i] = col;
                ++sol.pivots;
                ++i;
            } else {
                t.drop_row(i);
                basis.erase(basis.begin() + i);
            }
        }
        for (int j = first_art; j < n; ++j) {
            allowed[j] = 0;
        }
    }

    if (model.sense != objective_sense::feasibility) {
        std::vector<double> cost(n, 0.0);
        double sign = model.sense == objective_sense::maximize ? -1.0 : 1.0;
        for (int j = 0; j < nv; ++j) {
            cost[j] = sign * model.objective[j];
        }
        if (detail::run_phase(t, basis, cost, allowed, sol.pivots) == detail::phase_result::unbounded) {
            sol.status = lp_status::unbounded;
            return sol;
        }
    }

    sol.values.assign(nv, 0.0);
    for (int i = 0; i < t.rows(); ++i) {
        if (basis[i] < nv) {
            sol.values[basis[i]] = t.rhs(i);
        }
    }
    for (int j = 0; j < nv; ++j) {
        sol.values[j] += model.lo[j];
        if (std::isfinite(model.hi[j])) {
            sol.values[j] = std::min(sol.values[j], model.hi[j]);
        }
        sol.values[j] = std::max(sol.values[j], model.lo[j]);
    }
    sol.status = lp_status::optimal;
    if (model.sense != objective_sense::feasibility) {
        for (int j = 0; j < nv; ++j) {
            sol.objective_value += model.objective[j] * sol.values[j];
        }
    }
    return sol;
}

/// Largest violation of any row or bound by `x`, relative to 1 + |rhs|.
inline double max_violation(const lp_model& model, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& r : model.rows) {
        double lhs = 0.0;
        for (int j = 0; j < model.num_vars; ++j) {
            lhs += r.coef[j] * x[j];
        }
        double v = 0.0;
        if (r.rel == relation::le) {
            v = lhs - r.rhs;
        } else if (r.rel == relation::ge) {
            v = r.rhs - lhs;
        } else {
            v = std::abs(lhs - r.rhs);
        }
        worst = std::max(worst, v / (1.0 + std::abs(r.rhs)));
    }
    for (int j = 0; j < model.num_vars; ++j) {
        worst = std::max(worst, (model.lo[j] - x[j]) / (1.0 + std::abs(model.lo[j])));
        if (std::isfinite(model.hi[j])) {
            worst = std::max(worst, (x[j] - model.hi[j]) / (1.0 + std::abs(model.hi[j])));
        }
    }
    return worst;
}

}  // namespace prio

#endif
