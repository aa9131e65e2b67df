#ifndef PRIO_INSTANCE_HPP
#define PRIO_INSTANCE_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "common.hpp"

namespace prio {

/// Dense symmetric distance matrix.
class metric_space {
public:
    metric_space() = default;

    metric_space(std::size_t n, std::vector<double> row_major) : n_(n), d_(std::move(row_major)) {
        if (d_.size() != n_ * n_) {
            throw validation_error("distance matrix has " + std::to_string(d_.size()) + " entries, expected " +
                                   std::to_string(n_ * n_));
        }
        for (double x : d_) {
            max_ = std::max(max_, x);
        }
    }

    static metric_space from_rows(const std::vector<std::vector<double>>& rows) {
        std::size_t n = rows.size();
        std::vector<double> flat;
        flat.reserve(n * n);
        for (const auto& r : rows) {
            if (r.size() != n) {
                throw validation_error("distance matrix is not square");
            }
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return metric_space(n, std::move(flat));
    }

    static metric_space euclidean(const std::vector<std::vector<double>>& points) {
        std::size_t n = points.size();
        std::vector<double> flat(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (points[i].size() != points[j].size()) {
                    throw validation_error("points have mixed dimensions");
                }
                double s = 0;
                for (std::size_t c = 0; c < points[i].size(); ++c) {
                    double diff = points[i][c] - points[j][c];
                    s += diff * diff;
                }
                flat[i * n + j] = flat[j * n + i] = std::sqrt(s);
            }
        }
        return metric_space(n, std::move(flat));
    }

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    const std::vector<double>& data() const { return d_; }
    double max_distance() const { return max_; }

    /// Throws validation_error on a negative entry, nonzero diagonal, asymmetry or a triangle violation
    /// beyond 1e-9 times the largest entry.
    void validate() const {
        double tri = 1e-9 * max_;
        for (std::size_t i = 0; i < n_; ++i) {
            if ((*this)(i, i) != 0.0) {
                throw validation_error("dist[" + std::to_string(i) + "][" + std::to_string(i) + "] is not zero");
            }
            for (std::size_t j = 0; j < n_; ++j) {
                double x = (*this)(i, j);
                if (!std::isfinite(x) || x < 0) {
                    throw validation_error("dist[" + std::to_string(i) + "][" + std::to_string(j) +
                                           "] is negative or not finite");
                }
                if (x != (*this)(j, i)) {
                    throw validation_error("dist is not symmetric at (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")");
                }
            }
        }
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t i = 0; i < n_; ++i) {
                double dij = (*this)(i, j);
                for (std::size_t k = 0; k < n_; ++k) {
                    if ((*this)(i, k) > dij + (*this)(j, k) + tri) {
                        throw validation_error("triangle inequality violated for (" + std::to_string(i) + "," +
                                               std::to_string(j) + "," + std::to_string(k) + ")");
                    }
                }
            }
        }
    }

    friend bool operator==(const metric_space&, const metric_space&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
    double max_ = 0.0;
};

struct cardinality {
    int k = 0;
    friend bool operator==(const cardinality&, const cardinality&) = default;
};

/// `class_of` is aligned with the instance's facility list; `cap[c]` bounds class c.
struct partition_matroid {
    std::vector<int> class_of;
    std::vector<int> cap;
    friend bool operator==(const partition_matroid&, const partition_matroid&) = default;
};

/// Explicit independence family; each set lists facility point ids.
struct general_matroid {
    std::vector<std::vector<int>> independent_sets;
    friend bool operator==(const general_matroid&, const general_matroid&) = default;
};

/// `weight` is aligned with the instance's facility list.
struct knapsack {
    std::vector<long long> weight;
    long long budget = 0;
    friend bool operator==(const knapsack&, const knapsack&) = default;
};

using constraint_spec = std::variant<cardinality, partition_matroid, general_matroid, knapsack>;

inline const char* constraint_name(const constraint_spec& c) {
    switch (c.index()) {
    case 0: return "cardinality";
    case 1: return "partition";
    case 2: return "matroid";
    default: return "knapsack";
    }
}

inline constexpr int max_matroid_ground = 20;
inline constexpr long long max_knapsack_budget = 1'000'000;

/// A Priority Center instance. Algorithms address clients and facilities by their position in
/// `clients` / `facilities`; the lists hold point ids of `metric`.
struct instance {
    metric_space metric;
    std::optional<std::vector<std::vector<double>>> points;
    std::vector<int> clients;
    std::vector<int> facilities;
    std::vector<double> radius;  // aligned with clients
    constraint_spec constraint = cardinality{1};
    int m = 0;
    std::optional<std::vector<double>> client_weight;  // aligned with clients
    std::optional<std::vector<double>> prob_demand;    // aligned with clients

    int num_clients() const { return static_cast<int>(clients.size()); }
    int num_facilities() const { return static_cast<int>(facilities.size()); }

    /// Distance between client position c and facility position f.
    double cf(int c, int f) const { return metric(clients[c], facilities[f]); }
    /// Distance between client positions a and b.
    double cc(int a, int b) const { return metric(clients[a], clients[b]); }
    double ff(int a, int b) const { return metric(facilities[a], facilities[b]); }

    /// Comparison slack for d <= alpha * r tests.
    double eps() const { return 1e-9 * metric.max_distance(); }

    bool is_center() const {
        int n = static_cast<int>(metric.size());
        if (num_clients() != n || num_facilities() != n) {
            return false;
        }
        for (int i = 0; i < n; ++i) {
            if (clients[i] != i || facilities[i] != i) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const instance&, const instance&) = default;
};

/// Build a center instance (C = F = all points) with the given radii.
inline instance make_center_instance(metric_space metric, std::vector<double> radius, constraint_spec constraint,
                                     int m) {
    instance inst;
    int n = static_cast<int>(metric.size());
    inst.metric = std::move(metric);
    for (int i = 0; i < n; ++i) {
        inst.clients.push_back(i);
        inst.facilities.push_back(i);
    }
    inst.radius = std::move(radius);
    inst.constraint = std::move(constraint);
    inst.m = m;
    return inst;
}

namespace detail {

inline void check_index_list(const std::vector<int>& ids, std::size_t n, const char* what) {
    std::vector<char> seen(n, 0);
    for (int id : ids) {
        if (id < 0 || static_cast<std::size_t>(id) >= n) {
            throw validation_error(std::string(what) + " id " + std::to_string(id) + " out of range");
        }
        if (seen[id]) {
            throw validation_error(std::string(what) + " id " + std::to_string(id) + " listed twice");
        }
        seen[id] = 1;
    }
}

inline void validate_matroid_family(const instance& inst, const general_matroid& g) {
    int nf = inst.num_facilities();
    if (nf > max_matroid_ground) {
        throw validation_error("general matroid ground set exceeds " + std::to_string(max_matroid_ground) +
                               " facilities");
    }
    std::vector<int> pos(inst.metric.size(), -1);
    for (int f = 0; f < nf; ++f) {
        pos[inst.facilities[f]] = f;
    }
    std::vector<char> indep(std::size_t{1} << nf, 0);
    for (const auto& set : g.independent_sets) {
        std::uint32_t mask = 0;
        for (int p : set) {
            if (p < 0 || static_cast<std::size_t>(p) >= inst.metric.size() || pos[p] < 0) {
                throw validation_error("independent set mentions non-facility point " + std::to_string(p));
            }
            mask |= 1u << pos[p];
        }
        indep[mask] = 1;
    }
    if (!indep[0]) {
        throw validation_error("matroid family must contain the empty set");
    }
    std::vector<std::uint32_t> members;
    for (std::uint32_t mask = 0; mask < indep.size(); ++mask) {
        if (!indep[mask]) {
            continue;
        }
        members.push_back(mask);
        for (int e = 0; e < nf; ++e) {
            if ((mask >> e & 1u) && !indep[mask & ~(1u << e)]) {
                throw validation_error("matroid family is not downward closed");
            }
        }
    }
    // Augmentation only needs checking for |J| = |I| + 1 once the family is downward closed.
    for (std::uint32_t a : members) {
        for (std::uint32_t b : members) {
            if (std::popcount(b) != std::popcount(a) + 1) {
                continue;
            }
            std::uint32_t extra = b & ~a;
            bool ok = false;
            for (int e = 0; e < nf && !ok; ++e) {
                ok = (extra >> e & 1u) && indep[a | (1u << e)];
            }
            if (!ok) {
                throw validation_error("matroid family violates the exchange axiom");
            }
        }
    }
}

}  // namespace detail

/// Throws validation_error when any instance invariant fails.
inline void validate(const instance& inst) {
    inst.metric.validate();
    std::size_t n = inst.metric.size();
    detail::check_index_list(inst.clients, n, "client");
    detail::check_index_list(inst.facilities, n, "facility");
    if (inst.radius.size() != inst.clients.size()) {
        throw validation_error("radius list must be aligned with clients");
    }
    for (double r : inst.radius) {
        if (!(r > 0) || !std::isfinite(r)) {
            throw validation_error("every client radius must be positive and finite");
        }
    }
    if (inst.m < 0 || inst.m > inst.num_clients()) {
        throw validation_error("m must lie in [0, |C|]");
    }
    auto check_aligned = [&](const std::optional<std::vector<double>>& v, const char* what, double hi) {
        if (!v) {
            return;
        }
        if (v->size() != inst.clients.size()) {
            throw validation_error(std::string(what) + " must be aligned with clients");
        }
        for (double x : *v) {
            if (!(x >= 0) || x > hi) {
                throw validation_error(std::string(what) + " value out of range");
            }
        }
    };
    check_aligned(inst.client_weight, "client_weight", inf);
    check_aligned(inst.prob_demand, "prob_demand", 1.0);

    int nf = inst.num_facilities();
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, cardinality>) {
                if (c.k < 0) {
                    throw validation_error("k must be non-negative");
                }
            } else if constexpr (std::is_same_v<T, partition_matroid>) {
                if (static_cast<int>(c.class_of.size()) != nf) {
                    throw validation_error("class_of must be aligned with facilities");
                }
                for (int cls : c.class_of) {
                    if (cls < 0 || cls >= static_cast<int>(c.cap.size())) {
                        throw validation_error("facility class " + std::to_string(cls) + " has no cap");
                    }
                }
                for (int cap : c.cap) {
                    if (cap < 0) {
                        throw validation_error("class caps must be non-negative");
                    }
                }
            } else if constexpr (std::is_same_v<T, general_matroid>) {
                detail::validate_matroid_family(inst, c);
            } else {
                if (static_cast<int>(c.weight.size()) != nf) {
                    throw validation_error("knapsack weights must be aligned with facilities");
                }
                if (c.budget < 0 || c.budget > max_knapsack_budget) {
                    throw validation_error("knapsack budget must lie in [0, " + std::to_string(max_knapsack_budget) +
                                           "]");
                }
                for (long long w : c.weight) {
                    if (w < 0) {
                        throw validation_error("knapsack weights must be non-negative");
                    }
                }
            }
        },
        inst.constraint);
}

/// Sorted distinct ratios d(v,f)/r(v) over all client/facility pairs, plus 0.
inline std::vector<double> candidate_dilations(const instance& inst) {
    std::vector<double> out{0.0};
    for (int c = 0; c < inst.num_clients(); ++c) {
        for (int f = 0; f < inst.num_facilities(); ++f) {
            out.push_back(inst.cf(c, f) / inst.radius[c]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Facilities within `reach` of client position c (closed ball, with the instance tolerance).
inline std::vector<int> facilities_within(const instance& inst, int c, double reach) {
    std::vector<int> out;
    double eps = inst.eps();
    for (int f = 0; f < inst.num_facilities(); ++f) {
        if (inst.cf(c, f) <= reach + eps) {
            out.push_back(f);
        }
    }
    return out;
}

}  // namespace prio

#endif
