#ifndef PRIO_CONTACT_HPP
#define PRIO_CONTACT_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "filter.hpp"
#include "instance.hpp"

namespace prio {

enum class contact_kind { dag, forest };

struct contact_vertex {
    int point = -1;  // client position of the representative
    int level = 1;
    double radius = 0.0;  // radius used for arc and candidate tests
    double lambda = 0.0;
    std::vector<int> members;     // D(v), client positions
    std::vector<int> candidates;  // Y_v, facility positions
};

struct contact_arc {
    int from = 0;
    int to = 0;
    int witness = -1;  // facility position certifying the arc
};

/// Layered graph over representatives; arcs always descend in level.
struct contact_graph {
    contact_kind kind = contact_kind::dag;
    std::vector<contact_vertex> vertices;
    std::vector<contact_arc> arcs;
    /// Set when the forest needed in-arcs dropped beyond forward-edge removal.
    bool pruned = false;
    /// When set, a path may only end at a vertex with a nonempty candidate set.
    bool sinks_need_candidates = true;

    int size() const { return static_cast<int>(vertices.size()); }

    std::vector<std::vector<int>> successors() const {
        std::vector<std::vector<int>> out(vertices.size());
        for (const auto& a : arcs) {
            out[a.from].push_back(a.to);
        }
        return out;
    }

    std::vector<std::vector<int>> predecessors() const {
        std::vector<std::vector<int>> in(vertices.size());
        for (const auto& a : arcs) {
            in[a.to].push_back(a.from);
        }
        return in;
    }

    bool has_arc(int u, int v) const {
        return std::any_of(arcs.begin(), arcs.end(), [&](const contact_arc& a) { return a.from == u && a.to == v; });
    }

    const contact_arc* find_arc(int u, int v) const {
        for (const auto& a : arcs) {
            if (a.from == u && a.to == v) {
                return &a;
            }
        }
        return nullptr;
    }

    bool can_end_at(int v) const { return !sinks_need_candidates || !vertices[v].candidates.empty(); }
};

/// Facilities within `reach` of client position c; an empty result means the client cannot be
/// served at this radius.
inline std::vector<int> compute_candidate_facilities(const instance& inst, int c, double reach) {
    return facilities_within(inst, c, reach);
}

/// reach[u][v] != 0 when v is reachable from u by a path of length >= 1.
inline std::vector<std::vector<char>> reachability(const contact_graph& g) {
    int n = g.size();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.vertices[a].level < g.vertices[b].level; });
    auto succ = g.successors();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int u : order) {
        for (int v : succ[u]) {
            reach[u][v] = 1;
            for (int w = 0; w < n; ++w) {
                reach[u][w] |= reach[v][w];
            }
        }
    }
    return reach;
}

namespace detail {

// Forward-edge removal over the pre-removal arc set, then keep one in-arc per vertex if needed.
inline void reduce_to_forest(contact_graph& g) {
    auto reach = reachability(g);
    auto succ = g.successors();
    std::vector<contact_arc> kept;
    for (const auto& a : g.arcs) {
        bool forward = false;
        for (int w : succ[a.from]) {
            if (w != a.to && reach[w][a.to]) {
                forward = true;
                break;
            }
        }
        if (!forward) {
            kept.push_back(a);
        }
    }
    std::vector<int> chosen(g.vertices.size(), -1);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        int v = kept[i].to;
        int u = kept[i].from;
        if (chosen[v] < 0) {
            chosen[v] = static_cast<int>(i);
            continue;
        }
        g.pruned = true;
        int cur = kept[chosen[v]].from;
        int lu = g.vertices[u].level;
        int lc = g.vertices[cur].level;
        if (lu < lc || (lu == lc && u < cur)) {
            chosen[v] = static_cast<int>(i);
        }
    }
    g.arcs.clear();
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (chosen[kept[i].to] == static_cast<int>(i)) {
            g.arcs.push_back(kept[i]);
        }
    }
}

}  // namespace detail

/// Contact graph over the per-class representatives. `filtered[i]` is the filter output of class
/// i + 1. Vertex radii are alpha * r(v). An arc u -> v (level(u) > level(v)) needs a facility f with
/// d(u,f) <= r_u and d(v,f) <= r_v (dag) or <= 2 r_v (forest). The forest kind then drops forward
/// edges. lambda(v) is |D(v)|, or the sum of `weight` over D(v) when given.
inline contact_graph build_contact_graph(const radius_buckets& buckets, const std::vector<filter_output>& filtered,
                                         const instance& inst, contact_kind kind, double alpha,
                                         const std::vector<double>* weight = nullptr) {
    if (static_cast<int>(filtered.size()) != buckets.t()) {
        throw error("one filter output per radius class is required");
    }
    contact_graph g;
    g.kind = kind;
    double eps = inst.eps();
    for (int cls = 1; cls <= static_cast<int>(filtered.size()); ++cls) {
        const auto& fo = filtered[cls - 1];
        for (std::size_t i = 0; i < fo.reps.size(); ++i) {
            contact_vertex v;
            v.point = fo.reps[i];
            v.level = cls;
            v.radius = alpha * inst.radius[v.point];
            v.members = fo.children[i];
            for (int c : v.members) {
                v.lambda += weight ? (*weight)[c] : 1.0;
            }
            v.candidates = compute_candidate_facilities(inst, v.point, v.radius);
            g.vertices.push_back(std::move(v));
        }
    }

    int n = g.size();
    int nf = inst.num_facilities();
    double lower_mult = kind == contact_kind::dag ? 1.0 : 2.0;
    std::vector<std::vector<char>> near(n, std::vector<char>(nf, 0)), wide(n, std::vector<char>(nf, 0));
    for (int v = 0; v < n; ++v) {
        const auto& cv = g.vertices[v];
        for (int f = 0; f < nf; ++f) {
            double d = inst.cf(cv.point, f);
            near[v][f] = d <= cv.radius + eps;
            wide[v][f] = d <= lower_mult * cv.radius + eps;
        }
    }
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (g.vertices[u].level <= g.vertices[v].level) {
                continue;
            }
            for (int f = 0; f < nf; ++f) {
                if (near[u][f] && wide[v][f]) {
                    g.arcs.push_back({u, v, f});
                    break;
                }
            }
        }
    }
    if (kind == contact_kind::forest) {
        detail::reduce_to_forest(g);
    }
    return g;
}

/// Per-class filter followed by the contact graph: the common front half of every outlier pipeline.
inline contact_graph filtered_contact_graph(const instance& inst, const radius_buckets& buckets,
                                            const std::vector<double>& cov, double alpha, filter_mode mode,
                                            contact_kind kind, const std::vector<double>* weight = nullptr) {
    std::vector<double> scaled(inst.radius.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        scaled[i] = alpha * inst.radius[i];
    }
    auto dist = [&](int a, int b) { return inst.cc(a, b); };
    std::vector<filter_output> filtered;
    for (const auto& members : buckets.classes) {
        filtered.push_back(filter(members, scaled, cov, dist, mode, inst.eps()));
    }
    return build_contact_graph(buckets, filtered, inst, kind, alpha, weight);
}

/// Text edge list: one `v` line per vertex and one `a` line per arc.
inline std::string export_edge_list(const contact_graph& g) {
    std::ostringstream os;
    os << "# kind " << (g.kind == contact_kind::dag ? "dag" : "forest") << "\n";
    for (int v = 0; v < g.size(); ++v) {
        const auto& cv = g.vertices[v];
        os << "v " << v << " point " << cv.point << " level " << cv.level << " lambda " << cv.lambda << " Y";
        for (int f : cv.candidates) {
            os << ' ' << f;
        }
        os << "\n";
    }
    for (const auto& a : g.arcs) {
        os << "a " << a.from << ' ' << a.to << " witness " << a.witness << "\n";
    }
    return os.str();
}

}  // namespace prio

#endif
