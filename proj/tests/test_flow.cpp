#include <gtest/gtest.h>

#include <prio/prio.hpp>

using namespace prio;

TEST(Flow, SingleArc) {
    flow_network net;
    int s = net.add_node(node_role::source);
    int t = net.add_node(node_role::sink);
    net.add_arc(s, t, 1, 0.0);
    flow_result r = min_cost_max_flow(net);
    EXPECT_EQ(r.value, 1);
    EXPECT_DOUBLE_EQ(r.cost, 0.0);
}

TEST(Flow, NodeCost) {
    flow_network net;
    int s = net.add_node(node_role::source);
    int a = net.add_node(node_role::vertex, 1, -5.0);
    int t = net.add_node(node_role::sink);
    net.add_arc(s, a);
    net.add_arc(a, t);
    flow_result r = min_cost_max_flow(net);
    EXPECT_EQ(r.value, 1);
    EXPECT_DOUBLE_EQ(r.cost, -5.0);
}

TEST(Flow, DiamondPicksCheaperBranch) {
    flow_network net;
    int s = net.add_node(node_role::source);
    int a = net.add_node(node_role::vertex, 1, -5.0);
    int b = net.add_node(node_role::vertex, 1, -1.0);
    int t = net.add_node(node_role::sink, 1);
    int sa = net.add_arc(s, a);
    net.add_arc(s, b);
    net.add_arc(a, t);
    net.add_arc(b, t);
    flow_result r = min_cost_max_flow(net);
    EXPECT_EQ(r.value, 1);
    EXPECT_DOUBLE_EQ(r.cost, -5.0);
    EXPECT_EQ(r.arc_flow[sa], 1);
    EXPECT_EQ(r.node_flow[b], 0);
}

TEST(Flow, PositiveCostPathsSkipped) {
    flow_network net;
    int s = net.add_node(node_role::source);
    int a = net.add_node(node_role::vertex, 1, 2.0);
    int t = net.add_node(node_role::sink);
    net.add_arc(s, a);
    net.add_arc(a, t);
    EXPECT_EQ(min_cost_max_flow(net).value, 0);
}

TEST(Flow, Rejections) {
    flow_network net;
    int s = net.add_node(node_role::source);
    EXPECT_THROW(net.add_node(node_role::source), error);
    EXPECT_THROW(net.add_arc(s, 5), error);
    EXPECT_THROW(min_cost_max_flow(net), error);
    int a = net.add_node(node_role::vertex);
    int b = net.add_node(node_role::vertex);
    net.add_node(node_role::sink);
    net.add_arc(a, b);
    net.add_arc(b, a);
    EXPECT_THROW(min_cost_max_flow(net), error);
}

namespace {

contact_graph isolated(const std::vector<double>& lambda) {
    contact_graph g;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        contact_vertex v;
        v.point = static_cast<int>(i);
        v.lambda = lambda[i];
        v.candidates = {static_cast<int>(i)};
        g.vertices.push_back(v);
    }
    return g;
}

}  // namespace

TEST(PackingNetwork, OneVertex) {
    contact_graph g = isolated({3});
    packing_network pn = build_packing_network(g, cardinality{1});
    flow_result r = min_cost_max_flow(pn.net);
    EXPECT_EQ(r.value, 1);
    EXPECT_DOUBLE_EQ(-r.cost, 3.0);
}

TEST(PackingNetwork, ZeroCapClassBlocks) {
    contact_graph g = isolated({3});
    packing_network pn = build_packing_network(g, partition_matroid{{0}, {0}});
    EXPECT_EQ(min_cost_max_flow(pn.net).value, 0);
}

TEST(PackingNetwork, BestSinglePath) {
    contact_graph g = isolated({3, 4});
    packing_network pn = build_packing_network(g, cardinality{1});
    flow_result r = min_cost_max_flow(pn.net);
    EXPECT_EQ(r.value, 1);
    EXPECT_DOUBLE_EQ(-r.cost, 4.0);
}

TEST(PackingNetwork, KnapsackUnsupported) {
    EXPECT_THROW(build_packing_network(isolated({1}), knapsack{{1}, 1}), unsupported_error);
}
