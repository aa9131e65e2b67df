#ifndef PRIO_IO_HPP
#define PRIO_IO_HPP

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "fairness.hpp"
#include "instance.hpp"
#include "solution.hpp"

namespace prio {

using json = nlohmann::json;

namespace detail {

inline const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw parse_error(std::string("missing field '") + key + "'");
    }
    return *it;
}

template <class T>
T read_as(const json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw parse_error(std::string("field '") + what + "': " + e.what());
    }
}

inline std::vector<long long> read_integers(const json& j, const char* what) {
    if (!j.is_array()) {
        throw parse_error(std::string("field '") + what + "' must be an array");
    }
    std::vector<long long> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) {
            throw validation_error(std::string("knapsack ") + what +
                                   " must be integers; scale real weights to integers before loading");
        }
        out.push_back(x.get<long long>());
    }
    return out;
}

inline constraint_spec constraint_from_json(const json& j) {
    if (!j.is_object()) {
        throw parse_error("constraint must be an object");
    }
    std::string type = read_as<std::string>(require(j, "type"), "type");
    if (type == "cardinality") {
        return cardinality{read_as<int>(require(j, "k"), "k")};
    }
    if (type == "partition") {
        return partition_matroid{read_as<std::vector<int>>(require(j, "class_of"), "class_of"),
                                 read_as<std::vector<int>>(require(j, "cap"), "cap")};
    }
    if (type == "matroid") {
        return general_matroid{read_as<std::vector<std::vector<int>>>(require(j, "independent_sets"), "independent_sets")};
    }
    if (type == "knapsack") {
        const json& b = require(j, "budget");
        if (!b.is_number_integer()) {
            throw validation_error("knapsack budget must be an integer; scale real weights to integers before loading");
        }
        return knapsack{read_integers(require(j, "weight"), "weight"), b.get<long long>()};
    }
    throw parse_error("unknown constraint type '" + type + "'");
}

inline json constraint_to_json(const constraint_spec& spec) {
    return std::visit(
        [](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, cardinality>) {
                return {{"type", "cardinality"}, {"k", c.k}};
            } else if constexpr (std::is_same_v<T, partition_matroid>) {
                return {{"type", "partition"}, {"class_of", c.class_of}, {"cap", c.cap}};
            } else if constexpr (std::is_same_v<T, general_matroid>) {
                return {{"type", "matroid"}, {"independent_sets", c.independent_sets}};
            } else {
                return {{"type", "knapsack"}, {"weight", c.weight}, {"budget", c.budget}};
            }
        },
        spec);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw io_error("write to '" + path + "' failed");
    }
}

inline std::vector<int> to_point_ids(const std::vector<int>& pos, const std::vector<int>& ids) {
    std::vector<int> out;
    out.reserve(pos.size());
    for (int p : pos) {
        out.push_back(ids[p]);
    }
    return out;
}

inline json number_or_null(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

}  // namespace detail

/// Instance from a parsed document. `dist` wins over `points` when both are present;
/// `clients` and `facilities` default to every point.
inline instance instance_from_json(const json& j) {
    if (!j.is_object()) {
        throw parse_error("instance must be a JSON object");
    }
    instance inst;
    if (j.contains("points")) {
        inst.points = detail::read_as<std::vector<std::vector<double>>>(j.at("points"), "points");
    }
    if (j.contains("dist")) {
        inst.metric = metric_space::from_rows(detail::read_as<std::vector<std::vector<double>>>(j.at("dist"), "dist"));
    } else if (inst.points) {
        inst.metric = metric_space::euclidean(*inst.points);
    } else {
        throw parse_error("instance needs 'dist' or 'points'");
    }
    int n = static_cast<int>(inst.metric.size());
    if (j.contains("n") && detail::read_as<int>(j.at("n"), "n") != n) {
        throw validation_error("'n' does not match the distance data");
    }
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) {
        all[i] = i;
    }
    inst.clients = j.contains("clients") ? detail::read_as<std::vector<int>>(j.at("clients"), "clients") : all;
    inst.facilities = j.contains("facilities") ? detail::read_as<std::vector<int>>(j.at("facilities"), "facilities") : all;
    const json& r = detail::require(j, "radius");
    if (r.is_number()) {
        inst.radius.assign(inst.clients.size(), r.get<double>());
    } else {
        inst.radius = detail::read_as<std::vector<double>>(r, "radius");
    }
    if (j.contains("constraint")) {
        inst.constraint = detail::constraint_from_json(j.at("constraint"));
    }
    inst.m = j.contains("m") ? detail::read_as<int>(j.at("m"), "m") : static_cast<int>(inst.clients.size());
    if (j.contains("client_weight")) {
        inst.client_weight = detail::read_as<std::vector<double>>(j.at("client_weight"), "client_weight");
    }
    if (j.contains("prob_demand")) {
        inst.prob_demand = detail::read_as<std::vector<double>>(j.at("prob_demand"), "prob_demand");
    }
    validate(inst);
    return inst;
}

inline json instance_to_json(const instance& inst) {
    int n = static_cast<int>(inst.metric.size());
    json dist = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int k = 0; k < n; ++k) {
            row.push_back(inst.metric(i, k));
        }
        dist.push_back(std::move(row));
    }
    json j = {{"n", n},
              {"dist", std::move(dist)},
              {"clients", inst.clients},
              {"facilities", inst.facilities},
              {"radius", inst.radius},
              {"constraint", detail::constraint_to_json(inst.constraint)},
              {"m", inst.m}};
    if (inst.points) {
        j["points"] = *inst.points;
    }
    if (inst.client_weight) {
        j["client_weight"] = *inst.client_weight;
    }
    if (inst.prob_demand) {
        j["prob_demand"] = *inst.prob_demand;
    }
    return j;
}

inline instance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(e.what());
    }
    return instance_from_json(j);
}

inline instance load_instance(const std::string& path) {
    return parse_instance(detail::read_file(path));
}

inline void save_instance(const instance& inst, const std::string& path) {
    detail::write_file(path, instance_to_json(inst).dump(2) + "\n");
}

/// Centers and covered clients are written as point ids.
inline json solution_to_json(const instance& inst, const solution& sol) {
    json j = {{"status", to_string(sol.status)},
              {"alpha", detail::number_or_null(sol.alpha)},
              {"factor", sol.factor},
              {"method", sol.method},
              {"centers", detail::to_point_ids(sol.centers, inst.facilities)},
              {"covered", detail::to_point_ids(sol.covered, inst.clients)},
              {"stats",
               {{"cuts_added", sol.stats.cuts_added},
                {"lp_pivots", sol.stats.lp_pivots},
                {"lp_solves", sol.stats.lp_solves},
                {"search_steps", sol.stats.search_steps},
                {"runtime_ms", sol.stats.runtime_ms}}}};
    if (!sol.certificate.empty()) {
        j["certificate"] = sol.certificate;
    }
    if (sol.status == solve_status::feasible) {
        json d = json::array();
        for (double x : client_ratios(inst, sol.centers)) {
            d.push_back(detail::number_or_null(x));
        }
        j["dilations"] = std::move(d);
    }
    return j;
}

inline json lottery_to_json(const instance& inst, const lottery_solution& lot) {
    json support = json::array();
    for (std::size_t s = 0; s < lot.support.size(); ++s) {
        support.push_back({{"centers", detail::to_point_ids(lot.support[s], inst.facilities)},
                           {"probability", lot.probability[s]}});
    }
    json j = {{"status", to_string(lot.status)},
              {"alpha", lot.alpha},
              {"achieved_alpha", lot.achieved_alpha},
              {"support", std::move(support)},
              {"achieved", lot.achieved},
              {"rounds", lot.rounds}};
    if (!lot.certificate.empty()) {
        j["certificate"] = lot.certificate;
    }
    if (!lot.certificate_mu.empty()) {
        j["dual"] = {{"mu", lot.certificate_mu}, {"m", lot.certificate_m}};
    }
    return j;
}

}  // namespace prio

#endif
