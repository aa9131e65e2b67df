#ifndef PRIO_GENERATE_HPP
#define PRIO_GENERATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "common.hpp"
#include "fairness.hpp"
#include "instance.hpp"

namespace prio {

enum class profile_kind { uniform_radii, two_radii, powers_of_b, jkl_radii, random_radii };

struct generation_profile {
    profile_kind kind = profile_kind::uniform_radii;
    double base = 2.0;  // powers-of-b
    int k = 2;          // jkl-radii
};

/// Accepts uniform-radii, two-radii, powers-of-b(B) (or powers-of-B), jkl-radii(K), random-radii.
inline generation_profile parse_profile(const std::string& text) {
    auto arg = [&](const std::string& prefix) -> std::optional<std::string> {
        if (text.rfind(prefix, 0) != 0) {
            return std::nullopt;
        }
        std::string rest = text.substr(prefix.size());
        if (!rest.empty() && rest.front() == '(' && rest.back() == ')') {
            rest = rest.substr(1, rest.size() - 2);
        }
        return rest;
    };
    generation_profile p;
    try {
        if (text == "uniform-radii") {
            p.kind = profile_kind::uniform_radii;
        } else if (text == "two-radii") {
            p.kind = profile_kind::two_radii;
        } else if (text == "random-radii") {
            p.kind = profile_kind::random_radii;
        } else if (auto b = arg("powers-of-b")) {
            p.kind = profile_kind::powers_of_b;
            p.base = std::stod(*b);
        } else if (auto b2 = arg("powers-of-")) {
            p.kind = profile_kind::powers_of_b;
            p.base = std::stod(*b2);
        } else if (auto k = arg("jkl-radii")) {
            p.kind = profile_kind::jkl_radii;
            p.k = std::stoi(*k);
        } else {
            throw error("unknown profile '" + text + "'");
        }
    } catch (const std::logic_error&) {
        throw error("bad profile parameter in '" + text + "'");
    }
    if (p.kind == profile_kind::powers_of_b && !(p.base > 1.0)) {
        throw error("powers-of-b needs b > 1");
    }
    if (p.kind == profile_kind::jkl_radii && p.k < 1) {
        throw error("jkl-radii needs k >= 1");
    }
    return p;
}

inline std::string profile_name(const generation_profile& p) {
    switch (p.kind) {
        case profile_kind::uniform_radii: return "uniform-radii";
        case profile_kind::two_radii: return "two-radii";
        case profile_kind::powers_of_b: {
            std::string b = std::to_string(p.base);
            b.erase(b.find_last_not_of('0') + 1);
            if (b.back() == '.') {
                b.pop_back();
            }
            return "powers-of-b(" + b + ")";
        }
        case profile_kind::jkl_radii: return "jkl-radii(" + std::to_string(p.k) + ")";
        case profile_kind::random_radii: return "random-radii";
    }
    return "?";
}

enum class constraint_kind { cardinality, partition, matroid, knapsack };

inline constraint_kind parse_constraint_kind(const std::string& s) {
    if (s == "cardinality") return constraint_kind::cardinality;
    if (s == "partition") return constraint_kind::partition;
    if (s == "matroid") return constraint_kind::matroid;
    if (s == "knapsack") return constraint_kind::knapsack;
    throw error("unknown constraint kind '" + s + "'");
}

struct generation_options {
    constraint_kind constraint = constraint_kind::cardinality;
    int k = 0;                 // cardinality bound; 0 draws one in [1, min(|F|, 4)]
    std::optional<int> m;      // coverage target; unset covers every client
    bool random_m = false;     // draw m uniformly in [1, |C|]
    int num_facilities = 0;    // > 0: the first points are facilities and the rest clients
    int classes = 2;           // partition matroid classes
    long long budget = 0;      // knapsack budget; 0 draws one in [1, 10]
    bool prob_demand = false;  // attach uniform [0, 1] demands
};

namespace detail {

/// Graphic matroid of a random multigraph whose edges are the facilities.
inline general_matroid random_graphic_matroid(std::mt19937_64& rng, int nf) {
    if (nf > 16) {
        throw error("generated matroids are limited to 16 facilities");
    }
    int nv = std::max(2, nf / 2 + 1);
    std::uniform_int_distribution<int> pick(0, nv - 1);
    std::vector<std::pair<int, int>> edge(nf);
    for (auto& e : edge) {
        e.first = pick(rng);
        do {
            e.second = pick(rng);
        } while (e.second == e.first);
    }
    general_matroid g;
    std::vector<int> parent(nv);
    auto find = [&](int x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (std::uint32_t mask = 0; mask < (1u << nf); ++mask) {
        std::iota(parent.begin(), parent.end(), 0);
        bool forest = true;
        std::vector<int> members;
        for (int f = 0; f < nf && forest; ++f) {
            if (mask >> f & 1u) {
                int a = find(edge[f].first), b = find(edge[f].second);
                if (a == b) {
                    forest = false;
                } else {
                    parent[a] = b;
                    members.push_back(f);
                }
            }
        }
        if (forest) {
            g.independent_sets.push_back(std::move(members));
        }
    }
    return g;
}

}  // namespace detail

/// Points uniform in the unit square; Euclidean distances rounded to 1e-6 and closed under
/// shortest paths so the rounded matrix is a metric. Deterministic in (seed, n, profile, options).
inline instance generate_instance(std::uint64_t seed, int n, const generation_profile& profile,
                                  const generation_options& opt = {}) {
    if (n < 1) {
        throw error("generate needs n >= 1");
    }
    if (opt.num_facilities < 0 || (opt.num_facilities > 0 && opt.num_facilities >= n)) {
        throw error("supplier split needs 0 < facilities < n");
    }
    if (profile.kind == profile_kind::jkl_radii && profile.k >= n) {
        throw error("jkl-radii needs k < n");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    instance inst;
    std::vector<std::vector<double>> pts(n, std::vector<double>(2));
    for (auto& p : pts) {
        p[0] = unit(rng);
        p[1] = unit(rng);
    }
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double e = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
            d[i * n + j] = std::round(e * 1e6) / 1e6;
        }
    }
    for (int via = 0; via < n; ++via) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                d[i * n + j] = std::min(d[i * n + j], d[i * n + via] + d[via * n + j]);
            }
        }
    }
    inst.metric = metric_space(n, std::move(d));
    inst.points = pts;
    if (opt.num_facilities > 0) {
        for (int i = 0; i < n; ++i) {
            (i < opt.num_facilities ? inst.facilities : inst.clients).push_back(i);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            inst.clients.push_back(i);
            inst.facilities.push_back(i);
        }
    }
    int nc = inst.num_clients();
    int nf = inst.num_facilities();

    inst.radius.assign(nc, 1.0);
    switch (profile.kind) {
        case profile_kind::uniform_radii:
            break;
        case profile_kind::two_radii: {
            double big = std::uniform_real_distribution<double>(1.5, 6.0)(rng);
            for (int c = 0; c < nc; ++c) {
                inst.radius[c] = c == 0 ? 1.0 : c == 1 ? big : (unit(rng) < 0.5 ? 1.0 : big);
            }
            break;
        }
        case profile_kind::powers_of_b: {
            std::uniform_int_distribution<int> ex(0, 3);
            for (double& r : inst.radius) {
                r = std::pow(profile.base, ex(rng));
            }
            break;
        }
        case profile_kind::jkl_radii: {
            std::vector<double> nr = compute_nr_radii(inst.metric, profile.k);
            double floor = inf;
            for (double x : nr) {
                if (x > 0) {
                    floor = std::min(floor, x);
                }
            }
            for (int c = 0; c < nc; ++c) {
                double r = nr[inst.clients[c]];
                inst.radius[c] = r > 0 ? r : (std::isfinite(floor) ? floor : 1.0);
            }
            break;
        }
        case profile_kind::random_radii: {
            std::uniform_real_distribution<double> lg(0.0, std::log(20.0));
            for (double& r : inst.radius) {
                r = std::exp(lg(rng));
            }
            break;
        }
    }

    switch (opt.constraint) {
        case constraint_kind::cardinality: {
            int k = opt.k > 0 ? opt.k : std::uniform_int_distribution<int>(1, std::min(nf, 4))(rng);
            inst.constraint = cardinality{k};
            break;
        }
        case constraint_kind::partition: {
            int t = std::max(1, opt.classes);
            partition_matroid pm;
            std::uniform_int_distribution<int> cls(0, t - 1);
            for (int f = 0; f < nf; ++f) {
                pm.class_of.push_back(cls(rng));
            }
            std::uniform_int_distribution<int> cap(1, 2);
            for (int i = 0; i < t; ++i) {
                pm.cap.push_back(cap(rng));
            }
            inst.constraint = std::move(pm);
            break;
        }
        case constraint_kind::matroid: {
            general_matroid g = detail::random_graphic_matroid(rng, nf);
            for (auto& set : g.independent_sets) {
                for (int& f : set) {
                    f = inst.facilities[f];
                }
            }
            inst.constraint = std::move(g);
            break;
        }
        case constraint_kind::knapsack: {
            knapsack ks;
            std::uniform_int_distribution<long long> w(1, 5);
            for (int f = 0; f < nf; ++f) {
                ks.weight.push_back(w(rng));
            }
            ks.budget = opt.budget > 0 ? opt.budget : std::uniform_int_distribution<long long>(1, 10)(rng);
            inst.constraint = std::move(ks);
            break;
        }
    }

    if (opt.random_m) {
        inst.m = std::uniform_int_distribution<int>(1, nc)(rng);
    } else {
        inst.m = opt.m ? *opt.m : nc;
    }
    if (opt.prob_demand) {
        std::vector<double> p(nc);
        for (double& x : p) {
            x = unit(rng);
        }
        inst.prob_demand = std::move(p);
    }
    validate(inst);
    return inst;
}

inline instance generate_instance(std::uint64_t seed, int n, const std::string& profile,
                                  const generation_options& opt = {}) {
    return generate_instance(seed, n, parse_profile(profile), opt);
}

}  // namespace prio

#endif
