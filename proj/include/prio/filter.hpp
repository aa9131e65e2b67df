#ifndef PRIO_FILTER_HPP
#define PRIO_FILTER_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "common.hpp"

namespace prio {

/// Classes are 1-based: `classes[i - 1]` holds the members of class i.
struct radius_buckets {
    double base = 2.0;
    double r_min = 1.0;
    std::vector<int> class_of;  // aligned with the radius vector
    std::vector<std::vector<int>> classes;

    int t() const { return static_cast<int>(classes.size()); }
};

/// Class of an item is floor(log_b(r / r_min)) + 1, i.e. half-open intervals [b^(i-1), b^i) after
/// normalising by the smallest radius. Exact powers land at the start of their interval.
inline radius_buckets bucket_by_radius(const std::vector<double>& radii, double b) {
    if (!(b > 1.0)) {
        throw error("bucket base must exceed 1");
    }
    radius_buckets out;
    out.base = b;
    if (radii.empty()) {
        return out;
    }
    out.r_min = *std::min_element(radii.begin(), radii.end());
    if (!(out.r_min > 0)) {
        throw error("bucketing needs positive radii");
    }
    out.class_of.resize(radii.size());
    int t = 1;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double ratio = radii[i] / out.r_min;
        int cls = 1;
        double bound = b;
        while (ratio >= bound * (1.0 - 1e-12)) {
            bound *= b;
            ++cls;
        }
        out.class_of[i] = cls;
        t = std::max(t, cls);
    }
    out.classes.resize(t);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        out.classes[out.class_of[i] - 1].push_back(static_cast<int>(i));
    }
    return out;
}

/// One class per distinct radius value (exact equality), in increasing order.
inline radius_buckets bucket_by_value(const std::vector<double>& radii) {
    radius_buckets out;
    out.base = 0.0;
    std::vector<double> values = radii;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (!values.empty()) {
        out.r_min = values.front();
    }
    out.class_of.resize(radii.size());
    out.classes.resize(values.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        int cls = static_cast<int>(std::lower_bound(values.begin(), values.end(), radii[i]) - values.begin()) + 1;
        out.class_of[i] = cls;
        out.classes[cls - 1].push_back(static_cast<int>(i));
    }
    return out;
}

inline int count_distinct(const std::vector<double>& radii) {
    std::vector<double> values = radii;
    std::sort(values.begin(), values.end());
    return static_cast<int>(std::unique(values.begin(), values.end()) - values.begin());
}

/// Largest b >= 2 such that every r / r_min is an integer power of b (relative tolerance 1e-9).
/// Needs at least two distinct radii.
inline std::optional<double> detect_power_base(const std::vector<double>& radii) {
    if (radii.empty()) {
        return std::nullopt;
    }
    double r_min = *std::min_element(radii.begin(), radii.end());
    std::vector<double> ratios;
    for (double r : radii) {
        ratios.push_back(r / r_min);
    }
    std::sort(ratios.begin(), ratios.end());
    double smallest = 0.0;
    for (double q : ratios) {
        if (q > 1.0 + 1e-9) {
            smallest = q;
            break;
        }
    }
    if (smallest == 0.0) {
        return std::nullopt;
    }
    for (int j = 1;; ++j) {
        double b = std::pow(smallest, 1.0 / j);
        if (b < 2.0 - 1e-9) {
            return std::nullopt;
        }
        bool ok = true;
        for (double q : ratios) {
            double e = std::log(q) / std::log(b);
            double re = std::round(e);
            if (std::abs(std::pow(b, re) - q) > 1e-9 * q) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return b;
        }
    }
}

enum class filter_mode { standard, modified };

/// `children[i]` is D(reps[i]); the parts partition the input points.
struct filter_output {
    std::vector<int> reps;
    std::vector<std::vector<int>> children;
};

/// Greedy sweep in non-increasing phi (ties: smallest id). A point becomes a representative when no
/// earlier representative captured it; representative u captures an uncovered v when
/// d(u,v) <= r_u + r_v (standard) or d(u,v) <= r_u + 2 r_v (modified), up to `eps`.
/// `r` and `phi` are indexed by point id; `dist(a, b)` returns the distance between ids.
template <class Dist>
filter_output filter(const std::vector<int>& points, const std::vector<double>& r, const std::vector<double>& phi,
                     Dist&& dist, filter_mode mode, double eps = 0.0) {
    std::vector<int> order = points;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (phi[a] != phi[b]) {
            return phi[a] > phi[b];
        }
        return a < b;
    });
    double mult = mode == filter_mode::standard ? 1.0 : 2.0;
    filter_output out;
    std::vector<char> taken(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (taken[i]) {
            continue;
        }
        int u = order[i];
        out.reps.push_back(u);
        out.children.emplace_back();
        for (std::size_t j = i; j < order.size(); ++j) {
            if (taken[j]) {
                continue;
            }
            int v = order[j];
            if (j == i || dist(u, v) <= r[u] + mult * r[v] + eps) {
                taken[j] = 1;
                out.children.back().push_back(v);
            }
        }
    }
    return out;
}

}  // namespace prio

#endif
