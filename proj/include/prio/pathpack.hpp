#ifndef PRIO_PATHPACK_HPP
#define PRIO_PATHPACK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "constraint.hpp"
#include "contact.hpp"
#include "flow.hpp"

namespace prio {

/// Paths run top (highest level) to sink. `sink_facility[i]` is the facility picked for path i, or -1.
struct path_packing {
    std::vector<std::vector<int>> paths;
    std::vector<int> sink_facility;
    double value = 0.0;
};

inline double packing_value(const contact_graph& g, const path_packing& p) {
    double v = 0.0;
    for (const auto& path : p.paths) {
        for (int x : path) {
            v += g.vertices[x].lambda;
        }
    }
    return v;
}

/// Structural checks shared by all packing kinds: disjointness, arcs, allowed sinks, sink facility
/// membership and the stored value. Returns an empty string on success.
inline std::string validate_packing(const contact_graph& g, const path_packing& p) {
    std::vector<char> used(g.vertices.size(), 0);
    for (std::size_t i = 0; i < p.paths.size(); ++i) {
        const auto& path = p.paths[i];
        if (path.empty()) {
            return "empty path";
        }
        for (std::size_t j = 0; j < path.size(); ++j) {
            int v = path[j];
            if (v < 0 || v >= g.size()) {
                return "vertex out of range";
            }
            if (used[v]) {
                return "vertex " + std::to_string(v) + " used twice";
            }
            used[v] = 1;
            if (j + 1 < path.size() && !g.has_arc(v, path[j + 1])) {
                return "path does not follow arcs";
            }
        }
        if (!g.can_end_at(path.back())) {
            return "path ends at a vertex without candidates";
        }
        if (i < p.sink_facility.size() && p.sink_facility[i] >= 0) {
            const auto& y = g.vertices[path.back()].candidates;
            if (std::find(y.begin(), y.end(), p.sink_facility[i]) == y.end()) {
                return "sink facility outside Y_sink";
            }
        }
    }
    double v = packing_value(g, p);
    if (std::abs(v - p.value) > 1e-9 * (1.0 + std::abs(v))) {
        return "stored value differs from recomputed value";
    }
    return "";
}

/// Network nodes for graph vertices and (partition matroids) facilities.
struct packing_network {
    flow_network net;
    std::vector<int> vertex_node;
    std::vector<int> facility_node;  // indexed by facility position, -1 when absent
};

/// Cardinality: s -> v -> t with node cost -lambda(v), graph arcs, sink capacity k.
/// Partition matroid: v -> f for f in Y_v, f -> class(f) -> t with class capacities.
inline packing_network build_packing_network(const contact_graph& g, const constraint_spec& constraint) {
    packing_network pn;
    auto& net = pn.net;
    int s = net.add_node(node_role::source);
    const auto* card = std::get_if<cardinality>(&constraint);
    const auto* part = std::get_if<partition_matroid>(&constraint);
    if (!card && !part) {
        throw unsupported_error("packing network supports cardinality and partition matroid constraints");
    }
    int t = net.add_node(node_role::sink, card ? std::max(0, card->k) : unbounded_capacity);
    for (const auto& v : g.vertices) {
        pn.vertex_node.push_back(net.add_node(node_role::vertex, 1, -v.lambda));
    }
    for (int v = 0; v < g.size(); ++v) {
        net.add_arc(s, pn.vertex_node[v], 1);
    }
    for (const auto& a : g.arcs) {
        net.add_arc(pn.vertex_node[a.from], pn.vertex_node[a.to], 1);
    }
    if (card) {
        for (int v = 0; v < g.size(); ++v) {
            if (g.can_end_at(v)) {
                net.add_arc(pn.vertex_node[v], t, 1);
            }
        }
        return pn;
    }
    int nf = static_cast<int>(part->class_of.size());
    pn.facility_node.assign(nf, -1);
    std::vector<int> class_node;
    for (int cap : part->cap) {
        class_node.push_back(net.add_node(node_role::klass, cap));
    }
    for (int v = 0; v < g.size(); ++v) {
        for (int f : g.vertices[v].candidates) {
            if (pn.facility_node[f] < 0) {
                pn.facility_node[f] = net.add_node(node_role::facility, 1);
            }
            net.add_arc(pn.vertex_node[v], pn.facility_node[f], 1);
        }
    }
    for (int f = 0; f < nf; ++f) {
        if (pn.facility_node[f] >= 0) {
            net.add_arc(pn.facility_node[f], class_node[part->class_of[f]]);
        }
    }
    for (int c : class_node) {
        net.add_arc(c, t);
    }
    return pn;
}

namespace detail {

inline path_packing decompose_flow(const contact_graph& g, const packing_network& pn, const flow_result& res) {
    const auto& net = pn.net;
    int nv = g.size();
    std::vector<int> node_vertex(net.num_nodes(), -1), node_facility(net.num_nodes(), -1);
    for (int v = 0; v < nv; ++v) {
        node_vertex[pn.vertex_node[v]] = v;
    }
    for (std::size_t f = 0; f < pn.facility_node.size(); ++f) {
        if (pn.facility_node[f] >= 0) {
            node_facility[pn.facility_node[f]] = static_cast<int>(f);
        }
    }
    std::vector<int> next(nv, -1), facility(nv, -1);
    std::vector<char> starts(nv, 0);
    for (std::size_t i = 0; i < net.arcs().size(); ++i) {
        if (res.arc_flow[i] <= 0) {
            continue;
        }
        const auto& a = net.arcs()[i];
        int u = node_vertex[a.from];
        if (a.from == net.source() && node_vertex[a.to] >= 0) {
            starts[node_vertex[a.to]] = 1;
        } else if (u >= 0 && node_vertex[a.to] >= 0) {
            next[u] = node_vertex[a.to];
        } else if (u >= 0 && node_facility[a.to] >= 0) {
            facility[u] = node_facility[a.to];
        }
    }
    path_packing p;
    for (int v = 0; v < nv; ++v) {
        if (!starts[v]) {
            continue;
        }
        std::vector<int> path{v};
        while (next[path.back()] >= 0) {
            path.push_back(next[path.back()]);
        }
        p.sink_facility.push_back(facility[path.back()]);
        p.paths.push_back(std::move(path));
    }
    p.value = packing_value(g, p);
    return p;
}

}  // namespace detail

/// Maximum-value packing of at most k vertex-disjoint paths.
inline path_packing solve_wkpp(const contact_graph& g, int k) {
    packing_network pn = build_packing_network(g, cardinality{k});
    flow_result res = min_cost_max_flow(pn.net);
    return detail::decompose_flow(g, pn, res);
}

/// Call `fn(packing)` for every set of vertex-disjoint paths whose sinks are allowed; each set is
/// visited once. Exponential; meant for graphs of a dozen vertices.
inline void for_each_packing(const contact_graph& g, const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    int n = g.size();
    if (n > 20) {
        throw unsupported_error("packing enumeration is limited to 20 vertices");
    }
    auto succ = g.successors();
    struct path_rec {
        std::vector<int> verts;
        std::uint32_t mask;
    };
    std::vector<path_rec> all;
    std::vector<int> stack;
    std::function<void(int, std::uint32_t)> grow = [&](int v, std::uint32_t mask) {
        stack.push_back(v);
        mask |= 1u << v;
        if (g.can_end_at(v)) {
            all.push_back({stack, mask});
        }
        for (int w : succ[v]) {
            grow(w, mask);
        }
        stack.pop_back();
    };
    for (int v = 0; v < n; ++v) {
        grow(v, 0);
    }
    std::vector<std::vector<int>> containing(n);
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (int v : all[i].verts) {
            containing[v].push_back(static_cast<int>(i));
        }
    }
    std::vector<std::vector<int>> chosen;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t decided) {
        int v = 0;
        while (v < n && (decided >> v & 1u)) {
            ++v;
        }
        if (v == n) {
            fn(chosen);
            return;
        }
        rec(decided | (1u << v));
        for (int pi : containing[v]) {
            if (all[pi].mask & decided) {
                continue;
            }
            chosen.push_back(all[pi].verts);
            rec(decided | all[pi].mask);
            chosen.pop_back();
        }
    };
    rec(0);
}

inline constexpr int max_matroid_fallback_vertices = 12;

/// Maximum-value packing whose sinks admit distinct facilities forming an independent set.
/// Partition matroids go through the extended flow network; explicit matroid families are
/// enumerated (at most 12 vertices).
inline path_packing solve_wmatpp(const contact_graph& g, const constraint_oracle& oracle) {
    const auto& spec = oracle.spec();
    if (std::holds_alternative<partition_matroid>(spec)) {
        packing_network pn = build_packing_network(g, spec);
        flow_result res = min_cost_max_flow(pn.net);
        return detail::decompose_flow(g, pn, res);
    }
    if (!std::holds_alternative<general_matroid>(spec)) {
        throw unsupported_error("solve_wmatpp needs a matroid constraint");
    }
    if (g.size() > max_matroid_fallback_vertices) {
        throw unsupported_error("general matroid path packing is limited to " +
                                std::to_string(max_matroid_fallback_vertices) + " contact vertices");
    }
    path_packing best;
    best.value = -1.0;
    for_each_packing(g, [&](const std::vector<std::vector<int>>& paths) {
        double value = 0.0;
        for (const auto& p : paths) {
            for (int v : p) {
                value += g.vertices[v].lambda;
            }
        }
        if (value <= best.value + 1e-12) {
            return;
        }
        std::vector<std::vector<int>> groups;
        for (const auto& p : paths) {
            groups.push_back(g.vertices[p.back()].candidates);
        }
        if (auto pick = oracle.transversal(groups)) {
            best.paths = paths;
            best.sink_facility = *pick;
            best.value = value;
        }
    });
    best.value = packing_value(g, best);
    return best;
}

enum class dp_index { value, weight };

namespace detail {

// Knapsack-on-trees DP over a forest. Tables are indexed by value (min weight reaching at least
// that value) or by weight (max value within that weight). Each vertex keeps the merge history
// of its children so the optimum can be rebuilt.
class tree_dp {
public:
    tree_dp(const contact_graph& g, const std::vector<long long>& facility_weight, long long budget, dp_index mode)
        : g_(g), budget_(budget), mode_(mode) {
        int n = g.size();
        parent_.assign(n, -1);
        children_.assign(n + 1, {});
        for (const auto& a : g.arcs) {
            if (parent_[a.to] >= 0) {
                throw error("knapsack path packing needs a forest (in-degree <= 1)");
            }
            parent_[a.to] = a.from;
        }
        for (int v = 0; v < n; ++v) {
            children_[parent_[v] >= 0 ? parent_[v] : n].push_back(v);
        }
        weight_.assign(n, big_);
        sink_fac_.assign(n, -1);
        for (int v = 0; v < n; ++v) {
            for (int f : g.vertices[v].candidates) {
                if (facility_weight[f] < weight_[v]) {
                    weight_[v] = facility_weight[f];
                    sink_fac_[v] = f;
                }
            }
            if (!g.can_end_at(v)) {
                weight_[v] = big_;
                sink_fac_[v] = -1;
            }
        }
        if (mode_ == dp_index::value) {
            long long total = 0;
            lambda_.resize(n);
            for (int v = 0; v < n; ++v) {
                double l = g.vertices[v].lambda;
                if (std::abs(l - std::round(l)) > 1e-9 || l < 0) {
                    throw error("value-indexed path packing needs non-negative integer lambda");
                }
                lambda_[v] = std::llround(l);
                total += lambda_[v];
            }
            size_ = static_cast<int>(total) + 1;
        } else {
            size_ = static_cast<int>(budget) + 1;
        }
        depth_.assign(n, 0);
        std::vector<int> order = children_[n];
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (int c : children_[order[i]]) {
                depth_[c] = depth_[order[i]] + 1;
                order.push_back(c);
            }
        }
        own_.assign(n + 1, {});
        steps_.assign(n + 1, {});
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            process(*it);
        }
        merge_children(n);
    }

    // Best table index at the virtual root and the packing it encodes.
    path_packing best() const {
        int n = g_.size();
        path_packing p;
        const auto& root = merged(n);
        int idx = -1;
        if (mode_ == dp_index::value) {
            for (int l = size_ - 1; l >= 1; --l) {
                if (root[l].score <= static_cast<double>(budget_)) {
                    idx = l;
                    break;
                }
            }
        } else if (size_ > 0 && root[size_ - 1].score > 0) {
            idx = size_ - 1;
        }
        if (idx >= 0) {
            collect_children(n, static_cast<int>(steps_[n].size()) - 1, idx, p.paths);
        }
        for (const auto& path : p.paths) {
            p.sink_facility.push_back(sink_fac_[path.back()]);
        }
        p.value = packing_value(g_, p);
        return p;
    }

private:
    struct cell {
        double score;
        int kind;   // merge: 0 keep previous, 1 child only, 2 both; own: 0 sink alone, 1 prepend
        int split;  // index given to the child in a "both" merge
    };

    double none() const { return mode_ == dp_index::value ? inf : -inf; }
    bool better(double a, double b) const { return mode_ == dp_index::value ? a < b : a > b; }

    const std::vector<cell>& merged(int u) const { return steps_[u].empty() ? empty_ : steps_[u].back(); }

    void merge_children(int u) {
        empty_.assign(size_, {none(), -1, 0});
        for (int c : children_[u]) {
            const auto& prev = merged(u);
            const auto& child = own_[c];
            std::vector<cell> next(size_, {none(), -1, 0});
            for (int i = 0; i < size_; ++i) {
                auto offer = [&](double s, int kind, int split) {
                    if (better(s, next[i].score)) {
                        next[i] = {s, kind, split};
                    }
                };
                offer(prev[i].score, 0, 0);
                offer(child[i].score, 1, i);
                for (int j = 0; j <= i; ++j) {
                    double a = prev[i - j].score;
                    double b = child[j].score;
                    if (a == none() || b == none()) {
                        continue;
                    }
                    offer(a + b, 2, j);
                }
            }
            steps_[u].push_back(std::move(next));
        }
    }

    void process(int u) {
        merge_children(u);
        const auto& below = merged(u);
        std::vector<cell> table(size_, {none(), -1, 0});
        for (int i = 0; i < size_; ++i) {
            auto offer = [&](double s, int kind) {
                if (better(s, table[i].score)) {
                    table[i] = {s, kind, 0};
                }
            };
            if (mode_ == dp_index::value) {
                long long lam = lambda_[u];
                if (i <= lam && weight_[u] < big_) {
                    offer(static_cast<double>(weight_[u]), 0);
                }
                int rest = static_cast<int>(std::max<long long>(0, i - lam));
                if (below[rest].score != inf) {
                    offer(below[rest].score, 1);
                }
            } else {
                double lam = g_.vertices[u].lambda;
                if (weight_[u] <= i) {
                    offer(lam, 0);
                }
                if (below[i].score != -inf) {
                    offer(below[i].score + lam, 1);
                }
            }
        }
        own_[u] = std::move(table);
    }

    void collect(int u, int idx, std::vector<std::vector<int>>& out) const {
        const cell& c = own_[u][idx];
        if (c.kind == 0) {
            out.push_back({u});
            return;
        }
        int lower = idx;
        if (mode_ == dp_index::value) {
            lower = static_cast<int>(std::max<long long>(0, idx - lambda_[u]));
        }
        std::size_t first = out.size();
        collect_children(u, static_cast<int>(steps_[u].size()) - 1, lower, out);
        std::size_t top = first;
        for (std::size_t i = first; i < out.size(); ++i) {
            if (depth_[out[i].front()] < depth_[out[top].front()]) {
                top = i;
            }
        }
        std::vector<int> head;
        for (int x = parent_[out[top].front()]; x != u; x = parent_[x]) {
            head.push_back(x);
        }
        head.push_back(u);
        std::reverse(head.begin(), head.end());
        out[top].insert(out[top].begin(), head.begin(), head.end());
    }

    void collect_children(int u, int step, int idx, std::vector<std::vector<int>>& out) const {
        while (step >= 0) {
            const cell& c = steps_[u][step][idx];
            int child = children_[u][step];
            if (c.kind == 0) {
                --step;
            } else if (c.kind == 1) {
                collect(child, idx, out);
                return;
            } else {
                collect(child, c.split, out);
                idx -= c.split;
                --step;
            }
        }
    }

    static constexpr long long big_ = std::numeric_limits<long long>::max() / 4;

    const contact_graph& g_;
    long long budget_;
    dp_index mode_;
    int size_ = 0;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_;
    std::vector<long long> weight_;
    std::vector<int> sink_fac_;
    std::vector<long long> lambda_;
    std::vector<std::vector<cell>> own_;
    std::vector<std::vector<std::vector<cell>>> steps_;
    std::vector<cell> empty_;
};

}  // namespace detail

/// Maximum-value packing on a forest whose sinks' cheapest candidate facilities fit in `budget`.
/// Value-indexed tables need integer lambda; weight-indexed tables need budget + 1 cells.
inline path_packing solve_wnappp_dp(const contact_graph& g, const std::vector<long long>& facility_weight,
                                    long long budget, dp_index mode) {
    if (budget < 0) {
        return {};
    }
    detail::tree_dp dp(g, facility_weight, budget, mode);
    return dp.best();
}

enum class center_rule { center_sink, facility_near_sink, last_arc_witness };

/// Turn a packing into facility positions. center_sink opens the sink representative itself (it
/// must be a facility); facility_near_sink opens the recorded sink facility or the first candidate;
/// last_arc_witness opens the witness of each path's last arc and falls back to the sink rule for
/// single-vertex paths.
inline std::vector<int> extract_centers(const path_packing& p, const contact_graph& g, const instance& inst,
                                        center_rule rule) {
    std::vector<int> fac_of_point(inst.metric.size(), -1);
    for (int f = 0; f < inst.num_facilities(); ++f) {
        fac_of_point[inst.facilities[f]] = f;
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < p.paths.size(); ++i) {
        const auto& path = p.paths[i];
        int sink = path.back();
        if (rule == center_rule::last_arc_witness && path.size() >= 2) {
            const contact_arc* a = g.find_arc(path[path.size() - 2], sink);
            out.push_back(a->witness);
            continue;
        }
        int own = fac_of_point[inst.clients[g.vertices[sink].point]];
        bool sink_itself = rule == center_rule::center_sink ||
                           (rule == center_rule::last_arc_witness && own >= 0 && inst.is_center());
        if (sink_itself) {
            if (own < 0) {
                throw error("sink representative is not a facility");
            }
            out.push_back(own);
            continue;
        }
        int f = i < p.sink_facility.size() ? p.sink_facility[i] : -1;
        if (f < 0) {
            const auto& y = g.vertices[sink].candidates;
            if (y.empty()) {
                throw error("no candidate facility at a path sink");
            }
            f = y.front();
        }
        out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace prio

#endif
