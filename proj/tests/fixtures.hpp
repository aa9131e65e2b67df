// Shared fuzz generators and independent reference computations for the test suites.
#ifndef PRIO_TESTS_FIXTURES_HPP
#define PRIO_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <prio/prio.hpp>

namespace fx {

using rng_t = std::mt19937_64;

inline int uniform(rng_t& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline double unit(rng_t& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

/// Instance on the real line; C = F = all points.
inline prio::instance line_instance(const std::vector<double>& xs, std::vector<double> radius,
                                    prio::constraint_spec c, int m) {
    std::vector<std::vector<double>> pts;
    for (double x : xs) {
        pts.push_back({x});
    }
    prio::instance inst = prio::make_center_instance(prio::metric_space::euclidean(pts), std::move(radius), std::move(c), m);
    prio::validate(inst);
    return inst;
}

/// Supplier instance on the line with clients and facilities at the given coordinates.
inline prio::instance line_supplier(const std::vector<double>& client_x, const std::vector<double>& facility_x,
                                    std::vector<double> radius, prio::constraint_spec c, int m) {
    std::vector<std::vector<double>> pts;
    prio::instance inst;
    for (double x : client_x) {
        inst.clients.push_back(static_cast<int>(pts.size()));
        pts.push_back({x});
    }
    for (double x : facility_x) {
        inst.facilities.push_back(static_cast<int>(pts.size()));
        pts.push_back({x});
    }
    inst.metric = prio::metric_space::euclidean(pts);
    inst.radius = std::move(radius);
    inst.constraint = std::move(c);
    inst.m = m;
    prio::validate(inst);
    return inst;
}

/// Random layered DAG: levels in 1..3, arcs only from higher to lower level, integer lambda.
inline prio::contact_graph random_dag(rng_t& rng, int n, int nf) {
    prio::contact_graph g;
    g.kind = prio::contact_kind::dag;
    g.sinks_need_candidates = unit(rng) < 0.5;
    for (int v = 0; v < n; ++v) {
        prio::contact_vertex cv;
        cv.point = v;
        cv.level = uniform(rng, 1, 3);
        cv.lambda = uniform(rng, 0, 5);
        for (int f = 0; f < nf; ++f) {
            if (unit(rng) < 0.35) {
                cv.candidates.push_back(f);
            }
        }
        g.vertices.push_back(cv);
    }
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (g.vertices[u].level > g.vertices[v].level && unit(rng) < 0.45) {
                g.arcs.push_back({u, v, -1});
            }
        }
    }
    return g;
}

/// Random forest: vertex v > 0 hangs under a random earlier vertex with probability 0.8.
inline prio::contact_graph random_forest(rng_t& rng, int n, int nf) {
    prio::contact_graph g;
    g.kind = prio::contact_kind::forest;
    std::vector<int> depth(n, 0);
    std::vector<int> parent(n, -1);
    for (int v = 1; v < n; ++v) {
        if (unit(rng) < 0.8) {
            parent[v] = uniform(rng, 0, v - 1);
            depth[v] = depth[parent[v]] + 1;
        }
    }
    for (int v = 0; v < n; ++v) {
        prio::contact_vertex cv;
        cv.point = v;
        cv.level = 20 - depth[v];
        cv.lambda = uniform(rng, 0, 6);
        for (int f = 0; f < nf; ++f) {
            if (unit(rng) < 0.3) {
                cv.candidates.push_back(f);
            }
        }
        g.vertices.push_back(cv);
        if (parent[v] >= 0) {
            g.arcs.push_back({parent[v], v, -1});
        }
    }
    return g;
}

/// Knapsack instance with clients in tight clusters around facilities whose weights make fractional
/// openings attractive, so the round-or-cut loop has to cut.
inline prio::instance clustered_knapsack(rng_t& rng) {
    int groups = uniform(rng, 2, 4);
    std::vector<std::vector<double>> pts;
    prio::instance inst;
    prio::knapsack ks;
    std::vector<std::vector<double>> centre;
    for (int g = 0; g < groups; ++g) {
        centre.push_back({unit(rng) * 10, unit(rng) * 10});
        inst.facilities.push_back(static_cast<int>(pts.size()));
        pts.push_back(centre.back());
        ks.weight.push_back(uniform(rng, 2, 5));
    }
    for (int e = uniform(rng, 0, 3); e > 0; --e) {
        inst.facilities.push_back(static_cast<int>(pts.size()));
        pts.push_back({unit(rng) * 10, unit(rng) * 10});
        ks.weight.push_back(uniform(rng, 1, 5));
    }
    int nc = uniform(rng, 4, 12);
    for (int c = 0; c < nc; ++c) {
        const auto& at = centre[uniform(rng, 0, groups - 1)];
        inst.clients.push_back(static_cast<int>(pts.size()));
        pts.push_back({at[0] + unit(rng) * 0.5, at[1] + unit(rng) * 0.5});
        inst.radius.push_back(std::pow(4.0, uniform(rng, 0, 2)) * (0.3 + unit(rng)));
    }
    ks.budget = *std::max_element(ks.weight.begin(), ks.weight.end()) + uniform(rng, 0, 2);
    inst.constraint = ks;
    inst.metric = prio::metric_space::euclidean(pts);
    inst.points = pts;
    inst.m = uniform(rng, 1, nc);
    prio::validate(inst);
    return inst;
}

// ---------------------------------------------------------------------------------------------
// LP reference: enumerate every basis of the constraint system (rows and bounds taken as
// equalities), keep the feasible vertices, and return the best objective. Bounded models only.

struct vertex_result {
    bool feasible = false;
    double objective = 0.0;
};

inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a, std::vector<double> b) {
    int n = static_cast<int>(b.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
                piv = r;
            }
        }
        if (std::abs(a[piv][c]) < 1e-10) {
            return std::nullopt;
        }
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c) {
                continue;
            }
            double f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = b[i] / a[i][i];
    }
    return x;
}

inline vertex_result enumerate_vertices(const prio::lp_model& lp) {
    int n = lp.num_vars;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (const auto& r : lp.rows) {
        rows.push_back(r.coef);
        rhs.push_back(r.rhs);
    }
    for (int j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        rows.push_back(e);
        rhs.push_back(lp.lo[j]);
        rows.push_back(e);
        rhs.push_back(lp.hi[j]);
    }
    int total = static_cast<int>(rows.size());
    vertex_result best;
    double sign = lp.sense == prio::objective_sense::minimize ? -1.0 : 1.0;
    auto feasible = [&](const std::vector<double>& x) {
        for (int j = 0; j < n; ++j) {
            if (x[j] < lp.lo[j] - 1e-7 || x[j] > lp.hi[j] + 1e-7) {
                return false;
            }
        }
        for (const auto& r : lp.rows) {
            double s = 0;
            for (int j = 0; j < n; ++j) {
                s += r.coef[j] * x[j];
            }
            if ((r.rel == prio::relation::le && s > r.rhs + 1e-7) || (r.rel == prio::relation::ge && s < r.rhs - 1e-7) ||
                (r.rel == prio::relation::eq && std::abs(s - r.rhs) > 1e-7)) {
                return false;
            }
        }
        return true;
    };
    // Choose n of the total constraints (lexicographic combinations).
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) {
        idx[i] = i;
    }
    while (n <= total) {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        for (int i : idx) {
            a.push_back(rows[i]);
            b.push_back(rhs[i]);
        }
        if (auto x = solve_square(a, b); x && feasible(*x)) {
            double obj = 0.0;
            for (int j = 0; j < n; ++j) {
                obj += lp.objective[j] * (*x)[j];
            }
            if (lp.sense == prio::objective_sense::feasibility) {
                obj = 0.0;
            }
            if (!best.feasible || sign * obj > sign * best.objective) {
                best.feasible = true;
                best.objective = obj;
            }
        }
        int i = n - 1;
        while (i >= 0 && idx[i] == total - n + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++idx[i];
        for (int k = i + 1; k < n; ++k) {
            idx[k] = idx[k - 1] + 1;
        }
    }
    return best;
}

/// Random bounded LP with 2 or 3 variables in [0, hi] and up to 4 rows of small integer coefficients.
inline prio::lp_model random_lp(rng_t& rng) {
    prio::lp_model lp;
    int n = uniform(rng, 2, 3);
    int sense = uniform(rng, 0, 1);
    lp.sense = sense == 0 ? prio::objective_sense::maximize : prio::objective_sense::minimize;
    for (int j = 0; j < n; ++j) {
        double lo = uniform(rng, -2, 1);
        lp.add_var(lo, lo + uniform(rng, 1, 6), uniform(rng, -5, 5));
    }
    int m = uniform(rng, 1, 4);
    for (int i = 0; i < m; ++i) {
        std::vector<double> coef(n);
        for (double& c : coef) {
            c = uniform(rng, -4, 4);
        }
        int rel = uniform(rng, 0, 5);
        prio::relation r = rel < 3 ? prio::relation::le : rel < 5 ? prio::relation::ge : prio::relation::eq;
        lp.add_row(coef, r, uniform(rng, -6, 8));
    }
    return lp;
}

// ---------------------------------------------------------------------------------------------
// Explicit y-flow from an LP point: every facility f with x_f > 0 sends its mass along the chain of
// representatives whose ball (radius alpha * r) contains f, ordered by level, skipping saturated
// vertices. Returns the flow through each vertex and the total number of path units.

struct y_flow {
    std::vector<double> through;  // per contact vertex
    double units = 0.0;           // total flow leaving the source
    double value = 0.0;           // sum lambda(v) * through(v)
    bool arcs_present = true;     // every consecutive pair on a slice is an arc of g
    bool sinks_have_candidates = true;
};

inline y_flow build_y_flow(const prio::instance& inst, const prio::contact_graph& g, const std::vector<double>& x) {
    y_flow out;
    int n = g.size();
    out.through.assign(n, 0.0);
    double eps = inst.eps();
    for (int f = 0; f < inst.num_facilities(); ++f) {
        double mass = x[f];
        if (mass <= 1e-12) {
            continue;
        }
        std::vector<int> chain;
        for (int v = 0; v < n; ++v) {
            if (inst.cf(g.vertices[v].point, f) <= g.vertices[v].radius + eps) {
                chain.push_back(v);
            }
        }
        std::sort(chain.begin(), chain.end(), [&](int a, int b) { return g.vertices[a].level > g.vertices[b].level; });
        while (mass > 1e-12) {
            std::vector<int> open;
            for (int v : chain) {
                if (out.through[v] < 1.0 - 1e-12) {
                    open.push_back(v);
                }
            }
            if (open.empty()) {
                break;
            }
            double t = mass;
            for (int v : open) {
                t = std::min(t, 1.0 - out.through[v]);
            }
            for (std::size_t i = 0; i + 1 < open.size(); ++i) {
                if (!g.has_arc(open[i], open[i + 1])) {
                    out.arcs_present = false;
                }
            }
            if (!g.can_end_at(open.back())) {
                out.sinks_have_candidates = false;
            }
            for (int v : open) {
                out.through[v] += t;
            }
            out.units += t;
            mass -= t;
        }
    }
    for (int v = 0; v < n; ++v) {
        out.value += g.vertices[v].lambda * out.through[v];
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Exhaustive lottery reference: is there a distribution over all feasible sets meeting the
// demands at dilation alpha? Solved as an LP over every feasible set (|F| small).

inline std::vector<std::vector<int>> all_feasible_sets(const prio::instance& inst) {
    prio::constraint_oracle oracle(inst);
    std::vector<std::vector<int>> out;
    int nf = inst.num_facilities();
    for (std::uint32_t mask = 0; mask < (1u << nf); ++mask) {
        std::vector<int> s;
        for (int f = 0; f < nf; ++f) {
            if (mask >> f & 1u) {
                s.push_back(f);
            }
        }
        if (oracle.feasible(s)) {
            out.push_back(std::move(s));
        }
    }
    return out;
}

inline bool distribution_exists(const prio::instance& inst, double alpha) {
    auto sets = all_feasible_sets(inst);
    // Only maximal coverage patterns matter; dedupe by coverage to keep the LP small.
    std::vector<std::vector<char>> patterns;
    for (const auto& s : sets) {
        std::vector<char> cov = prio::detail::covered_by(inst, s, alpha);
        if (std::find(patterns.begin(), patterns.end(), cov) == patterns.end()) {
            patterns.push_back(std::move(cov));
        }
    }
    prio::lp_model lp;
    lp.sense = prio::objective_sense::feasibility;
    int np = static_cast<int>(patterns.size());
    for (int p = 0; p < np; ++p) {
        lp.add_var(0.0, prio::inf, 0.0);
    }
    lp.add_row(std::vector<double>(np, 1.0), prio::relation::eq, 1.0);
    for (int c = 0; c < inst.num_clients(); ++c) {
        std::vector<double> row(np);
        for (int p = 0; p < np; ++p) {
            row[p] = patterns[p][c] ? 1.0 : 0.0;
        }
        lp.add_row(row, prio::relation::ge, (*inst.prob_demand)[c]);
    }
    return prio::solve_lp(lp).status == prio::lp_status::optimal;
}

/// Planted lottery instance: demands are the coverage probabilities at dilation 1 of a random
/// distribution over 2..4 random feasible sets.
/// Well separated groups on a line (gap 100, spread 1), radii near 1, so no single feasible set
/// reaches every group even at a large dilation.
inline prio::instance separated_groups(rng_t& rng, prio::constraint_kind kind, int n) {
    int groups = uniform(rng, 2, 4);
    std::vector<double> xs(n);
    for (double& x : xs) {
        x = 100.0 * uniform(rng, 0, groups - 1) + unit(rng);
    }
    std::vector<double> r(n);
    for (double& x : r) {
        x = 0.5 + unit(rng);
    }
    prio::constraint_spec c;
    switch (kind) {
        case prio::constraint_kind::partition: {
            prio::partition_matroid pm;
            for (int i = 0; i < n; ++i) {
                pm.class_of.push_back(uniform(rng, 0, 1));
            }
            pm.cap = {1, uniform(rng, 0, 1)};
            c = pm;
            break;
        }
        case prio::constraint_kind::knapsack: {
            prio::knapsack ks;
            for (int i = 0; i < n; ++i) {
                ks.weight.push_back(uniform(rng, 1, 3));
            }
            ks.budget = uniform(rng, 1, 4);
            c = ks;
            break;
        }
        default:
            c = prio::cardinality{uniform(rng, 1, groups - 1)};
    }
    return line_instance(xs, r, c, n);
}

/// Planted lottery instance: demands are the coverage probabilities at dilation 1 of a random
/// distribution over 2..4 random feasible sets.
inline prio::instance planted_lottery(rng_t& rng, std::uint64_t seed, prio::constraint_kind kind) {
    int n = uniform(rng, 3, 10);
    prio::instance inst;
    if (unit(rng) < 0.5) {
        inst = separated_groups(rng, kind, n);
    } else {
        prio::generation_options opt;
        opt.constraint = kind;
        if (unit(rng) < 0.5) {
            opt.num_facilities = uniform(rng, 1, n - 1);
        }
        inst = prio::generate_instance(seed, n, unit(rng) < 0.5 ? "random-radii" : "uniform-radii", opt);
        // Each client is reached at dilation 1 by one random facility, so coverage is partial.
        for (int c = 0; c < inst.num_clients(); ++c) {
            int f = uniform(rng, 0, inst.num_facilities() - 1);
            inst.radius[c] = std::max(0.01, inst.cf(c, f)) * (1.0 + 0.1 * unit(rng));
        }
    }
    auto sets = all_feasible_sets(inst);
    int picks = uniform(rng, 2, 4);
    std::vector<double> z(picks);
    double total = 0;
    for (double& p : z) {
        p = 0.2 + unit(rng);
        total += p;
    }
    std::vector<double> prob(inst.num_clients(), 0.0);
    for (int i = 0; i < picks; ++i) {
        const auto& s = sets[uniform(rng, 0, static_cast<int>(sets.size()) - 1)];
        auto cov = prio::detail::covered_by(inst, s, 1.0);
        for (int c = 0; c < inst.num_clients(); ++c) {
            if (cov[c]) {
                prob[c] += z[i] / total;
            }
        }
    }
    for (double& p : prob) {
        p = std::min(1.0, p);
    }
    inst.prob_demand = prob;
    inst.m = inst.num_clients();
    prio::validate(inst);
    return inst;
}

}  // namespace fx

#endif
