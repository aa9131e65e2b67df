#ifndef PRIO_FLOW_HPP
#define PRIO_FLOW_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "common.hpp"

namespace prio {

enum class node_role { source, sink, vertex, facility, klass };

inline constexpr long long unbounded_capacity = std::numeric_limits<long long>::max() / 4;

struct flow_node {
    node_role role = node_role::vertex;
    long long capacity = unbounded_capacity;
    double cost = 0.0;
};

struct flow_arc {
    int from = 0;
    int to = 0;
    long long capacity = 1;
    double cost = 0.0;
};

/// Acyclic network with capacitated, costed nodes and arcs. Exactly one source and one sink.
class flow_network {
public:
    int add_node(node_role role, long long capacity = unbounded_capacity, double cost = 0.0) {
        if (role == node_role::source) {
            if (source_ >= 0) {
                throw error("flow network already has a source");
            }
            source_ = static_cast<int>(nodes_.size());
        } else if (role == node_role::sink) {
            if (sink_ >= 0) {
                throw error("flow network already has a sink");
            }
            sink_ = static_cast<int>(nodes_.size());
        }
        if (capacity < 0) {
            throw error("negative node capacity");
        }
        nodes_.push_back({role, capacity, cost});
        return static_cast<int>(nodes_.size()) - 1;
    }

    int add_arc(int from, int to, long long capacity = unbounded_capacity, double cost = 0.0) {
        if (from < 0 || to < 0 || from >= num_nodes() || to >= num_nodes()) {
            throw error("arc endpoint out of range");
        }
        if (capacity < 0) {
            throw error("negative arc capacity");
        }
        arcs_.push_back({from, to, capacity, cost});
        return static_cast<int>(arcs_.size()) - 1;
    }

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    const std::vector<flow_node>& nodes() const { return nodes_; }
    const std::vector<flow_arc>& arcs() const { return arcs_; }
    int source() const { return source_; }
    int sink() const { return sink_; }

private:
    std::vector<flow_node> nodes_;
    std::vector<flow_arc> arcs_;
    int source_ = -1;
    int sink_ = -1;
};

struct flow_result {
    long long value = 0;
    double cost = 0.0;
    std::vector<long long> arc_flow;   // aligned with network arcs
    std::vector<long long> node_flow;  // throughput of each node
    int augmentations = 0;
};

/// Topological order of the network nodes; throws if the network has a cycle.
inline std::vector<int> topological_order(const flow_network& net) {
    int n = net.num_nodes();
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const auto& a : net.arcs()) {
        out[a.from].push_back(a.to);
        ++indeg[a.to];
    }
    std::vector<int> order;
    order.reserve(n);
    for (int v = 0; v < n; ++v) {
        if (indeg[v] == 0) {
            order.push_back(v);
        }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (int w : out[order[i]]) {
            if (--indeg[w] == 0) {
                order.push_back(w);
            }
        }
    }
    if (static_cast<int>(order.size()) != n) {
        throw error("flow network has a cycle");
    }
    return order;
}

/// Successive shortest augmenting paths from source to sink. A path is accepted only while its
/// cost is non-positive, so the result maximises -(total cost) and, among such flows, the value
/// is the largest reachable by those augmentations. Node capacities/costs are modelled by
/// splitting every node into an in-half and an out-half.
inline flow_result min_cost_max_flow(const flow_network& net) {
    if (net.source() < 0 || net.sink() < 0) {
        throw error("flow network needs a source and a sink");
    }
    std::vector<int> order = topological_order(net);

    struct edge {
        int to;
        long long cap;
        double cost;
        int rev;
    };
    int nn = net.num_nodes();
    int total = 2 * nn;
    std::vector<std::vector<edge>> g(total);
    auto add_edge = [&](int u, int v, long long cap, double cost) {
        g[u].push_back({v, cap, cost, static_cast<int>(g[v].size())});
        g[v].push_back({u, 0, -cost, static_cast<int>(g[u].size()) - 1});
        return std::pair<int, int>(u, static_cast<int>(g[u].size()) - 1);
    };
    std::vector<std::pair<int, int>> node_edge(nn), arc_edge(net.arcs().size());
    for (int v = 0; v < nn; ++v) {
        node_edge[v] = add_edge(2 * v, 2 * v + 1, net.nodes()[v].capacity, net.nodes()[v].cost);
    }
    for (std::size_t i = 0; i < net.arcs().size(); ++i) {
        const auto& a = net.arcs()[i];
        arc_edge[i] = add_edge(2 * a.from + 1, 2 * a.to, a.capacity, a.cost);
    }
    int s = 2 * net.source();
    int t = 2 * net.sink() + 1;

    // Exact initial potentials: shortest distances over the split DAG in topological order.
    std::vector<double> h(total, inf);
    h[s] = 0.0;
    for (int v : order) {
        for (int half : {2 * v, 2 * v + 1}) {
            if (h[half] == inf) {
                continue;
            }
            for (const auto& e : g[half]) {
                if (e.cap > 0 && h[half] + e.cost < h[e.to]) {
                    h[e.to] = h[half] + e.cost;
                }
            }
        }
    }
    for (double& x : h) {
        if (x == inf) {
            x = 0.0;
        }
    }

    flow_result res;
    std::vector<double> dist(total);
    std::vector<std::pair<int, int>> prev(total);
    using item = std::pair<double, int>;
    while (true) {
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(prev.begin(), prev.end(), std::pair<int, int>(-1, -1));
        dist[s] = 0.0;
        std::priority_queue<item, std::vector<item>, std::greater<item>> pq;
        pq.push({0.0, s});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d > dist[u]) {
                continue;
            }
            for (int i = 0; i < static_cast<int>(g[u].size()); ++i) {
                const edge& e = g[u][i];
                if (e.cap <= 0) {
                    continue;
                }
                double rc = std::max(0.0, e.cost + h[u] - h[e.to]);
                if (d + rc < dist[e.to]) {
                    dist[e.to] = d + rc;
                    prev[e.to] = {u, i};
                    pq.push({dist[e.to], e.to});
                }
            }
        }
        if (dist[t] == inf) {
            break;
        }
        double path_cost = 0.0;
        long long bottleneck = unbounded_capacity;
        for (int v = t; v != s; v = prev[v].first) {
            const edge& e = g[prev[v].first][prev[v].second];
            path_cost += e.cost;
            bottleneck = std::min(bottleneck, e.cap);
        }
        if (path_cost > 1e-9) {
            break;
        }
        for (int v = t; v != s; v = prev[v].first) {
            edge& e = g[prev[v].first][prev[v].second];
            e.cap -= bottleneck;
            g[e.to][e.rev].cap += bottleneck;
        }
        res.value += bottleneck;
        res.cost += path_cost * static_cast<double>(bottleneck);
        ++res.augmentations;
        for (int v = 0; v < total; ++v) {
            if (dist[v] != inf) {
                h[v] += dist[v];
            }
        }
    }

    auto flow_on = [&](std::pair<int, int> ref) {
        const edge& e = g[ref.first][ref.second];
        return g[e.to][e.rev].cap;
    };
    res.node_flow.resize(nn);
    for (int v = 0; v < nn; ++v) {
        res.node_flow[v] = flow_on(node_edge[v]);
    }
    res.arc_flow.resize(net.arcs().size());
    res.cost = 0.0;
    for (int v = 0; v < nn; ++v) {
        res.cost += static_cast<double>(res.node_flow[v]) * net.nodes()[v].cost;
    }
    for (std::size_t i = 0; i < net.arcs().size(); ++i) {
        res.arc_flow[i] = flow_on(arc_edge[i]);
        res.cost += static_cast<double>(res.arc_flow[i]) * net.arcs()[i].cost;
    }
    return res;
}

}  // namespace prio

#endif
