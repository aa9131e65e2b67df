// prio: command-line front end for the priority center solvers.
//
// Exit codes: 0 success, 1 error, 2 infeasible, 3 undetermined.

#include <algorithm>
#include <cstdio>
#include <random>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <prio/prio.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_infeasible = 2;
constexpr int exit_undetermined = 3;

int exit_code(prio::solve_status s) {
    switch (s) {
        case prio::solve_status::feasible: return exit_ok;
        case prio::solve_status::infeasible: return exit_infeasible;
        case prio::solve_status::undetermined: return exit_undetermined;
    }
    return exit_error;
}

void emit(const prio::json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        prio::detail::write_file(out, j.dump(2) + "\n");
    }
}

void print_summary(const prio::solution& s) {
    std::printf("status %s\n", prio::to_string(s.status));
    if (s.status == prio::solve_status::feasible) {
        std::printf("alpha %.9g\n", s.alpha);
    }
    std::printf("factor %.9g\nmethod %s\n", s.factor, s.method.c_str());
    std::printf("stats lp_solves=%d lp_pivots=%lld cuts=%d search_steps=%d runtime_ms=%.3f\n", s.stats.lp_solves,
                s.stats.lp_pivots, s.stats.cuts_added, s.stats.search_steps, s.stats.runtime_ms);
    if (!s.certificate.empty()) {
        std::printf("certificate %s\n", s.certificate.c_str());
    }
}

struct bench_row {
    std::string name;
    double factor;
    int runs = 0;
    int infeasible = 0;
    int violations = 0;
    double worst = 0.0;
    double sum = 0.0;
    int rated = 0;
};

int run_bench(std::uint64_t seed, int count, int max_n) {
    using ck = prio::constraint_kind;
    struct plan {
        const char* name;
        double factor;
        const char* profile;
        ck kind;
        bool supplier;
        bool outliers;
    };
    const plan plans[] = {
        {"priority-k-center", 2.0, "random-radii", ck::cardinality, false, false},
        {"k-supplier", 3.0, "random-radii", ck::cardinality, true, false},
        {"matroid-supplier", 3.0, "random-radii", ck::partition, true, false},
        {"knapsack-supplier", 3.0, "random-radii", ck::knapsack, true, false},
        {"pkco", 9.0, "random-radii", ck::cardinality, false, true},
        {"pmco", 9.0, "random-radii", ck::partition, false, true},
        {"pknapco", 14.0, "random-radii", ck::knapsack, false, true},
        {"two-radii", 3.0, "two-radii", ck::cardinality, false, true},
        {"powers-of-2", 5.0, "powers-of-b(2)", ck::cardinality, false, true},
        {"powers-of-4", 11.0 / 3.0, "powers-of-b(4)", ck::cardinality, false, true},
    };
    std::mt19937_64 rng(seed);
    std::vector<bench_row> rows;
    for (const auto& p : plans) {
        bench_row row{p.name, p.factor};
        for (int i = 0; i < count; ++i) {
            int n = std::uniform_int_distribution<int>(p.supplier ? 2 : 1, std::max(p.supplier ? 2 : 1, max_n))(rng);
            prio::generation_options opt;
            opt.constraint = p.kind;
            if (p.supplier) {
                opt.num_facilities = std::uniform_int_distribution<int>(1, std::min(n - 1, prio::oracle_max_facilities))(rng);
            }
            opt.random_m = p.outliers;
            prio::instance inst = prio::generate_instance(rng(), n, p.profile, opt);
            prio::solution best = prio::brute_force_optimum(inst);
            prio::solution got = p.outliers ? prio::solve_outliers(inst)
                                 : p.supplier ? prio::solve_supplier(inst)
                                              : prio::solve_plesnik(inst);
            ++row.runs;
            if (best.status != prio::solve_status::feasible) {
                ++row.infeasible;
                row.violations += got.status != prio::solve_status::infeasible;
                continue;
            }
            if (got.status != prio::solve_status::feasible || !prio::check_solution(inst, got).empty()) {
                ++row.violations;
                continue;
            }
            double rmin = *std::min_element(inst.radius.begin(), inst.radius.end());
            double slack = 1e-9 * inst.metric.max_distance() / rmin;
            if (got.alpha > p.factor * best.alpha * (1 + 1e-9) + slack) {
                ++row.violations;
            }
            if (best.alpha > 0) {
                double r = got.alpha / best.alpha;
                row.worst = std::max(row.worst, r);
                row.sum += r;
                ++row.rated;
            }
        }
        rows.push_back(row);
    }
    std::printf("%-20s %6s %8s %10s %10s %10s %10s\n", "variant", "runs", "factor", "max_ratio", "mean_ratio",
                "infeasible", "violations");
    int violations = 0;
    for (const auto& r : rows) {
        std::printf("%-20s %6d %8.4f %10.4f %10.4f %10d %10d\n", r.name.c_str(), r.runs, r.factor, r.worst,
                    r.rated ? r.sum / r.rated : 0.0, r.infeasible, r.violations);
        violations += r.violations;
    }
    return violations == 0 ? exit_ok : exit_error;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Priority k-center / supplier solvers with matroid, knapsack and outlier constraints"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    int n = 10;
    std::string profile = "uniform-radii";
    std::string out;
    std::string in;
    std::string constraint = "cardinality";
    int k = 0;
    int m = -1;
    int facilities = 0;
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--seed", seed, "random seed")->required();
    gen->add_option("--n", n, "number of points")->required();
    gen->add_option("--profile", profile,
                    "uniform-radii | two-radii | powers-of-b(B) | jkl-radii(K) | random-radii")
        ->required();
    gen->add_option("--out", out, "output file (stdout when omitted)");
    gen->add_option("--constraint", constraint, "cardinality | partition | matroid | knapsack");
    gen->add_option("--k", k, "cardinality bound (random when 0)");
    gen->add_option("--m", m, "coverage target (all clients when negative)");
    gen->add_option("--facilities", facilities, "supplier split: first points are facilities");

    std::string variant = "center";
    auto* solve = app.add_subcommand("solve", "approximate the minimum dilation");
    solve->add_option("--in", in, "instance file")->required();
    solve->add_option("--variant", variant, "center | supplier")->check(CLI::IsMember({"center", "supplier"}));
    solve->add_option("--out", out, "solution file (stdout when omitted)");

    auto* oracle = app.add_subcommand("oracle", "exact optimum by enumeration (small instances)");
    oracle->add_option("--in", in, "instance file")->required();
    oracle->add_option("--out", out, "solution file");

    auto* lottery = app.add_subcommand("lottery", "distribution over center sets meeting prob_demand");
    lottery->add_option("--in", in, "instance file with prob_demand")->required();
    lottery->add_option("--out", out, "output file (stdout when omitted)");

    auto* fair = app.add_subcommand("fair-radii", "individually fair clustering with neighborhood radii");
    fair->add_option("--in", in, "instance file (its metric is used)")->required();
    fair->add_option("--k", k, "number of centers")->required();
    fair->add_option("--out", out, "output file (stdout when omitted)");

    int count = 20;
    int max_n = 10;
    auto* bench = app.add_subcommand("bench", "solver vs oracle on fuzzed instances");
    bench->add_option("--seed", seed, "random seed");
    bench->add_option("--count", count, "instances per variant");
    bench->add_option("--max-n", max_n, "largest instance size")->check(CLI::Range(2, 16));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (*gen) {
            prio::generation_options opt;
            opt.constraint = prio::parse_constraint_kind(constraint);
            opt.k = k;
            if (m >= 0) {
                opt.m = m;
            }
            opt.num_facilities = facilities;
            prio::instance inst = prio::generate_instance(seed, n, profile, opt);
            emit(prio::instance_to_json(inst), out);
            return exit_ok;
        }
        if (*solve) {
            prio::instance inst = prio::load_instance(in);
            prio::solution s =
                prio::solve(inst, variant == "center" ? prio::variant::center : prio::variant::supplier);
            print_summary(s);
            if (!out.empty()) {
                emit(prio::solution_to_json(inst, s), out);
            }
            return exit_code(s.status);
        }
        if (*oracle) {
            prio::instance inst = prio::load_instance(in);
            prio::solution s = prio::brute_force_optimum(inst);
            print_summary(s);
            if (!out.empty()) {
                emit(prio::solution_to_json(inst, s), out);
            }
            return exit_code(s.status);
        }
        if (*lottery) {
            prio::instance inst = prio::load_instance(in);
            prio::lottery_solution l = prio::solve_lottery(inst);
            emit(prio::lottery_to_json(inst, l), out);
            return exit_code(l.status);
        }
        if (*fair) {
            prio::instance inst = prio::load_instance(in);
            std::vector<double> nr = prio::compute_nr_radii(inst.metric, k);
            prio::solution s = prio::solve_jkl_fair(inst.metric, k);
            prio::json j = {{"k", k},
                            {"radius", nr},
                            {"centers", s.centers},
                            {"alpha", prio::detail::number_or_null(s.alpha)},
                            {"method", s.method}};
            emit(j, out);
            return exit_ok;
        }
        if (*bench) {
            return run_bench(seed, count, max_n);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
