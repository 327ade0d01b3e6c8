#pragma once

#include "mukai/heisenberg.hpp"
#include "mukai/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace mukai {

/** Parsed command-line request: surface and vector specs, bounds, output mode. */
struct RunConfig {
    std::string output = "json";
    std::string surface_spec;
    std::string v_spec;
    std::string w_spec;
    std::string parts_spec;
    long long p_max = 0;                     // walls enumerate; 0 derives max(2r, 10)
    long long box = 20;                      // product-check search window
    long long oracle_box = 0;                // movable; 0 skips the sign oracle
    long long d1 = 1, d2 = 1, k = 1, N = 0;  // heisenberg; N = 0 derives d2 * lcm(1..k)
    long long n_min = 1, n_max = 10;         // sweep bounds
    long long r_max = 6, d_max = 4, chi_min = -8;
    long long heis_dmax = 6, heis_kmax = 4;
};

/** Outcome of a verification sweep. */
struct SweepReport {
    Json params;
    long long instances = 0;
    long long passed = 0;
    long long failed = 0;
    bool complete = true;
    std::vector<std::string> failures;  // first few failure descriptions
    double duration_ms = 0.0;
};

namespace detail {

struct JobResult {
    long long checks = 0;
    std::vector<std::string> failures;
};

inline std::string instance_tag(const Surface& s, const MukaiVector& v, const MukaiVector& w) {
    std::ostringstream out;
    out << "n=" << s.n << " v=(" << v.r << "," << v.c1.coords[0] << "," << v.chi << ")"
        << " w=(" << w.r << "," << w.c1.coords[0] << "," << w.chi << ")";
    return out.str();
}

/** Every per-pair assertion of the module property suites, on one sweep instance. */
inline JobResult sweep_instance_checks(const Surface& s, const MukaiVector& v,
                                       const MukaiVector& w) {
    JobResult res;
    auto check = [&](bool ok, const char* what) {
        ++res.checks;
        if (!ok) res.failures.push_back(std::string(what) + " [" + instance_tag(s, v, w) + "]");
    };

    const Int dv = discriminant_half(v, s), dw = discriminant_half(w, s);
    const Int vv = 2 * dv;

    const TwistResult tw = albanese_twist_bundle(v, w, s);
    check(tw.bundle.a * tw.bundle.b * s.n - tw.bundle.c * tw.bundle.c == dv * dw,
          "twist identity a*b*n - c^2 = d_v*d_w");
    check(tw.is_ample, "twist ampleness");
    check(tw.chi_L == dv * dv * dw * dw, "twist chi_L = (d_v*d_w)^2");

    const Int kvw = verlinde_kummer(v, w, s);
    const Int kwv = verlinde_kummer(w, v, s);
    check(kvw > 0 && verlinde_plus(v, w, s) > 0 && verlinde_minus(v, w, s) > 0,
          "verlinde positivity");
    check(kvw * dw * dw == kwv * dv * dv, "verlinde reciprocity");

    const Surface sd = s.dual_surface();
    const MukaiVector f = fm_transform(v, s);
    check(mukai_pairing(f, f, sd) == vv, "transform preserves the self-pairing");
    check(fm_transform(f, sd) == v, "transform involution");

    const ModuliDims md = moduli_dims(v, s);
    check(md.dim_M == vv + 2 && md.dim_K == vv - 2, "moduli dimensions");

    const auto coeffs = w0_w1_decomposition(v, w, s);
    check(coeffs.first > 0 && coeffs.second > 0, "decomposition coefficients positive");

    check(positivity_check(v, w, s), "positivity");
    check(mukai_pairing(w, junli_vector(v, s, 1000), s) > 0,
          "large-polarization pairing at m=1000");

    const Int pmax = std::max<Int>(2 * v.r, 10);
    const auto cands = enumerate_slope_aligned_isotropic(v, s, pmax);
    if (vv > 4 * v.r) {
        check(cands.empty(), "no-wall guarantee agrees with enumeration");
    } else {
        bool bound_ok = true;
        for (const auto& u : cands)
            if (2 * v.r * u.pairing_with_v < u.p * vv) bound_ok = false;
        check(bound_ok, "wall candidate pairing lower bound");
    }

    if (gcd3(v.r, v.c1.coords[0], v.chi) == 1) {
        check(movable_membership(v, w, s).movable, "movable on a non-product surface");
        const Surface sflag = Surface::rank_one(s.n, true);
        const MovableVerdict flagged = movable_membership(v, w, sflag);
        const bool expect = !(v.c1.coords[0] == 1 && v.chi == -1);
        check(flagged.movable == expect, "exceptional case exactly at (d,chi)=(1,-1)");
        if (!flagged.movable)
            check(flagged.exceptional &&
                      flagged.exceptional->case_label == "product-(1,-1)",
                  "exceptional witness label");
    }

    if (v.c1.coords[0] == 1 && w.c1.coords[0] == 1) {
        const Surface sp = Surface::product(s.n);
        const ProductBundle pb = product_fm_bookkeeping({v.r, sp.H, v.chi},
                                                        {w.r, sp.H, w.chi}, sp);
        check(pb.chi_L == dv + dw, "product bookkeeping euler characteristic");
    }

    return res;
}

inline unsigned worker_count(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("MUKAI_LAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned long>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    if (jobs < hw) hw = jobs == 0 ? 1 : static_cast<unsigned>(jobs);
    return hw;
}

}  // namespace detail

/**
 * Runs the per-pair property checks over generate_orthogonal_pairs for every n
 * in range, plus the multiplicity-lemma grid; bounds beyond the supported
 * desk scale are clamped and the report is flagged incomplete.
 */
inline SweepReport run_sweep(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepReport report;
    RunConfig c = cfg;
    auto clamp_high = [&](long long& value, long long cap) {
        if (value > cap) {
            value = cap;
            report.complete = false;
        }
    };
    if (c.n_min < 1) c.n_min = 1;
    clamp_high(c.n_max, 30);
    clamp_high(c.r_max, 10);
    clamp_high(c.d_max, 8);
    if (c.chi_min < -20) {
        c.chi_min = -20;
        report.complete = false;
    }
    clamp_high(c.heis_dmax, 12);
    clamp_high(c.heis_kmax, 6);
    report.params = Json{{"n_min", c.n_min},         {"n_max", c.n_max},
                         {"r_max", c.r_max},         {"d_max", c.d_max},
                         {"chi_min", c.chi_min},     {"heis_dmax", c.heis_dmax},
                         {"heis_kmax", c.heis_kmax}};

    std::vector<std::function<detail::JobResult()>> jobs;
    for (long long n = c.n_min; n <= c.n_max; ++n) {
        const Surface s = Surface::rank_one(n);
        for (const auto& pr : generate_orthogonal_pairs(s, c.r_max, c.d_max, c.chi_min))
            jobs.push_back([s, v = pr.first, w = pr.second]() {
                return detail::sweep_instance_checks(s, v, w);
            });
    }
    if (c.n_min <= c.n_max)
        for (long long d1 = 1; d1 <= c.heis_dmax; ++d1)
            for (long long d2 = d1; d1 * d2 <= c.heis_dmax; d2 += d1)
                for (long long k = 1; k <= c.heis_kmax; ++k)
                    jobs.push_back([d1, d2, k]() {
                        detail::JobResult res;
                        res.checks = 1;
                        if (!verify_multiplicity_lemma(d1, d2, k))
                            res.failures.push_back("multiplicity lemma (" + std::to_string(d1) +
                                                   "," + std::to_string(d2) +
                                                   ") k=" + std::to_string(k));
                        return res;
                    });

    std::vector<detail::JobResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            try {
                results[i] = jobs[i]();
            } catch (const std::exception& e) {
                ++results[i].checks;
                results[i].failures.push_back(std::string("exception: ") + e.what());
            }
        }
    };
    const unsigned workers = detail::worker_count(jobs.size());
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    report.instances = static_cast<long long>(jobs.size());
    for (const auto& r : results) {
        report.passed += r.checks - static_cast<long long>(r.failures.size());
        report.failed += static_cast<long long>(r.failures.size());
        for (const auto& f : r.failures)
            if (report.failures.size() < 20) report.failures.push_back(f);
    }
    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

inline Json sweep_report_to_json(const SweepReport& report) {
    Json j;
    j["params"] = report.params;
    j["instances"] = report.instances;
    j["passed"] = report.passed;
    j["failed"] = report.failed;
    j["complete"] = report.complete;
    j["failures"] = report.failures;
    // wall-clock duration stays off the report: repeated runs must emit identical bytes
    return j;
}

namespace detail {

inline void print_table(const Json& j, std::ostream& out, const std::string& prefix = "") {
    if (j.is_object()) {
        if (j.empty() && !prefix.empty()) {
            out << prefix << ": {}\n";
            return;
        }
        for (const auto& [key, value] : j.items())
            print_table(value, out, prefix.empty() ? key : prefix + "." + key);
    } else if (j.is_array()) {
        if (j.empty()) {
            out << prefix << ": []\n";
            return;
        }
        std::size_t i = 0;
        for (const auto& value : j) print_table(value, out, prefix + "[" + std::to_string(i++) + "]");
    } else if (j.is_string()) {
        out << prefix << ": " << j.get<std::string>() << "\n";
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

inline void emit_report(const Json& report, const std::string& output, std::ostream& out) {
    if (output == "table")
        print_table(report, out);
    else
        out << report.dump() << "\n";
}

}  // namespace detail

/** Parses and executes one command line; returns the process exit code. */
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"exact computations for moduli of sheaves on abelian surfaces:\n"
                 "lattice pairings, Verlinde numbers, walls, cones, and finite\n"
                 "Heisenberg multiplicities",
                 "mukai-lab"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--output", cfg.output, "report format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    const char* surface_help = "surface: rank1:n=<int>[,product], product:n=<int>, JSON, or file";
    const char* vector_help = "Mukai vector: JSON {\"r\":..,\"c1\":[..],\"chi\":..} or file";

    auto* pair_cmd = app.add_subcommand("pair", "pairing, dual, dimensions, transform");
    pair_cmd->add_option("--surface", cfg.surface_spec, surface_help)->required();
    pair_cmd->add_option("--v", cfg.v_spec, vector_help)->required();
    pair_cmd->add_option("--w", cfg.w_spec, "second Mukai vector");

    auto* verlinde_cmd = app.add_subcommand("verlinde", "theta Euler characteristics");
    verlinde_cmd->add_option("--surface", cfg.surface_spec, surface_help)->required();
    verlinde_cmd->add_option("--v", cfg.v_spec, vector_help)->required();
    verlinde_cmd->add_option("--w", cfg.w_spec, vector_help)->required();

    auto* twist_cmd = app.add_subcommand("twist", "descent bundle on the product of duals");
    twist_cmd->add_option("--surface", cfg.surface_spec, surface_help)->required();
    twist_cmd->add_option("--v", cfg.v_spec, vector_help)->required();
    twist_cmd->add_option("--w", cfg.w_spec, vector_help)->required();

    auto* walls_cmd = app.add_subcommand("walls", "wall detection and stratum dimensions");
    walls_cmd->require_subcommand(1);
    auto* enum_cmd = walls_cmd->add_subcommand("enumerate", "slope-aligned isotropic vectors");
    enum_cmd->add_option("--surface", cfg.surface_spec, surface_help)->required();
    enum_cmd->add_option("--v", cfg.v_spec, vector_help)->required();
    enum_cmd->add_option("--p-max", cfg.p_max, "rank bound; 0 derives max(2r, 10)");
    auto* guar_cmd = walls_cmd->add_subcommand("guarantee", "no-wall sufficient condition");
    guar_cmd->add_option("--surface", cfg.surface_spec, surface_help)->required();
    guar_cmd->add_option("--v", cfg.v_spec, vector_help)->required();
    auto* hn_cmd = walls_cmd->add_subcommand("hn-codim", "filtration stratum codimension");
    hn_cmd->add_option("--surface", cfg.surface_spec, surface_help)->required();
    hn_cmd->add_option("--v", cfg.v_spec, vector_help)->required();
    hn_cmd->add_option("--parts", cfg.parts_spec, "JSON array of {\"v\":..,\"ell\":..}")
        ->required();
    auto* prod_cmd = walls_cmd->add_subcommand("product-check", "wall absence on a product");
    prod_cmd->add_option("--surface", cfg.surface_spec, surface_help)->required();
    prod_cmd->add_option("--v", cfg.v_spec, vector_help)->required();
    prod_cmd->add_option("--box", cfg.box, "search window")->capture_default_str();

    auto* movable_cmd = app.add_subcommand("movable", "movable-cone membership");
    movable_cmd->add_option("--surface", cfg.surface_spec, surface_help)->required();
    movable_cmd->add_option("--v", cfg.v_spec, vector_help)->required();
    movable_cmd->add_option("--w", cfg.w_spec, vector_help)->required();
    movable_cmd->add_option("--oracle-box", cfg.oracle_box, "sign-oracle window; 0 skips")
        ->capture_default_str();

    auto* heis_cmd = app.add_subcommand("heisenberg", "finite model multiplicities");
    heis_cmd->add_option("--d1", cfg.d1, "first elementary divisor")->required();
    heis_cmd->add_option("--d2", cfg.d2, "second elementary divisor")->required();
    heis_cmd->add_option("--k", cfg.k, "central weight")->required();
    heis_cmd->add_option("--N", cfg.N, "center order; 0 derives d2 * lcm(1..k)");

    auto* sweep_cmd = app.add_subcommand("sweep", "run every property suite over a grid");
    sweep_cmd->add_option("--n-min", cfg.n_min)->capture_default_str();
    sweep_cmd->add_option("--n-max", cfg.n_max)->capture_default_str();
    sweep_cmd->add_option("--r-max", cfg.r_max)->capture_default_str();
    sweep_cmd->add_option("--d-max", cfg.d_max)->capture_default_str();
    sweep_cmd->add_option("--chi-min", cfg.chi_min)->capture_default_str();
    sweep_cmd->add_option("--heis-dmax", cfg.heis_dmax)->capture_default_str();
    sweep_cmd->add_option("--heis-kmax", cfg.heis_kmax)->capture_default_str();

    for (CLI::App* sub : {pair_cmd, verlinde_cmd, twist_cmd, walls_cmd, movable_cmd, heis_cmd,
                          sweep_cmd})
        sub->fallthrough();
    for (CLI::App* sub : {enum_cmd, guar_cmd, hn_cmd, prod_cmd}) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        Json report;
        if (*pair_cmd) {
            const Surface s = parse_surface_spec(cfg.surface_spec);
            const MukaiVector v = parse_vector_spec(cfg.v_spec);
            const Int d = discriminant_half(v, s);
            report["v"] = vector_to_json(v);
            report["dual_v"] = vector_to_json(dual(v));
            report["self_pairing"] = int_json(2 * d);
            report["d_v"] = int_json(d);
            if (d >= 1) {
                const ModuliDims md = moduli_dims(v, s);
                report["dims"] = Json{{"dim_M", int_json(md.dim_M)}, {"dim_K", int_json(md.dim_K)}};
            } else {
                report["dims"] = nullptr;
            }
            if (s.ns_rank == 1 && v.chi != 0)
                report["fm_v"] = vector_to_json(fm_transform(v, s));
            else
                report["fm_v"] = nullptr;
            if (!cfg.w_spec.empty()) {
                const MukaiVector w = parse_vector_spec(cfg.w_spec);
                report["w"] = vector_to_json(w);
                report["pairing"] = int_json(mukai_pairing(v, w, s));
                report["orthogonal"] = is_orthogonal(v, w, s);
                report["product"] = vector_to_json(mukai_product(v, w, s));
            }
        } else if (*verlinde_cmd) {
            const Surface s = parse_surface_spec(cfg.surface_spec);
            const MukaiVector v = parse_vector_spec(cfg.v_spec);
            const MukaiVector w = parse_vector_spec(cfg.w_spec);
            report["kummer"] = dec_string(verlinde_kummer(v, w, s));
            report["plus"] = dec_string(verlinde_plus(v, w, s));
            report["minus"] = dec_string(verlinde_minus(v, w, s));
        } else if (*twist_cmd) {
            const Surface s = parse_surface_spec(cfg.surface_spec);
            const MukaiVector v = parse_vector_spec(cfg.v_spec);
            const MukaiVector w = parse_vector_spec(cfg.w_spec);
            const TwistResult t = albanese_twist_bundle(v, w, s);
            report["twist"] = Json{{"a", int_json(t.bundle.a)},
                                   {"b", int_json(t.bundle.b)},
                                   {"c", int_json(t.bundle.c)},
                                   {"ample", t.is_ample},
                                   {"chi_L", dec_string(t.chi_L)}};
        } else if (*enum_cmd) {
            const Surface s = parse_surface_spec(cfg.surface_spec);
            const MukaiVector v = parse_vector_spec(cfg.v_spec);
            const Int pmax = cfg.p_max >= 1 ? Int(cfg.p_max) : std::max<Int>(2 * v.r, 10);
            report["p_max"] = int_json(pmax);
            Json cands = Json::array();
            for (const auto& u : enumerate_slope_aligned_isotropic(v, s, pmax))
                cands.push_back(wall_vector_to_json(u));
            report["candidates"] = std::move(cands);
        } else if (*guar_cmd) {
            const Surface s = parse_surface_spec(cfg.surface_spec);
            const MukaiVector v = parse_vector_spec(cfg.v_spec);
            report["guaranteed"] = has_no_wall_guarantee(v, s);
            report["self_pairing"] = int_json(mukai_pairing(v, v, s));
        } else if (*hn_cmd) {
            const Surface s = parse_surface_spec(cfg.surface_spec);
            const MukaiVector v = parse_vector_spec(cfg.v_spec);
            const HNPartition partition = parse_partition_spec(cfg.parts_spec);
            const StratumDims dims = hn_stratum_codimension(v, partition, s);
            report["dim_F"] = int_json(dims.dim_F);
            report["codim"] = int_json(dims.codim);
        } else if (*prod_cmd) {
            const Surface s = parse_surface_spec(cfg.surface_spec);
            const MukaiVector v = parse_vector_spec(cfg.v_spec);
            if (cfg.box < 1) throw std::domain_error("product-check: box must be positive");
            const ProductWallReport rep = product_surface_wall_check(v, s, Int(cfg.box));
            report["companion_rank"] = int_json(rep.companion_rank);
            report["p1_square"] = int_json(rep.p1_square);
            report["examined"] = int_json(rep.examined);
            Json cands = Json::array();
            for (const auto& u : rep.candidates) cands.push_back(wall_vector_to_json(u));
            report["candidates"] = std::move(cands);
        } else if (*movable_cmd) {
            const Surface s = parse_surface_spec(cfg.surface_spec);
            const MukaiVector v = parse_vector_spec(cfg.v_spec);
            const MukaiVector w = parse_vector_spec(cfg.w_spec);
            report = verdict_to_json(movable_membership(v, w, s));
            if (cfg.oracle_box >= 1) {
                const auto entries = brute_force_sign_oracle(v, s, Int(cfg.oracle_box));
                long long strict = 0;
                for (const auto& entry : entries)
                    if (entry.u.p != 0 && entry.sign_w0 * entry.sign_w1 == -1) ++strict;
                report["oracle"] = Json{{"box", cfg.oracle_box},
                                        {"entries", static_cast<long long>(entries.size())},
                                        {"strict_disagreements", strict}};
            }
        } else if (*heis_cmd) {
            long long N = cfg.N;
            if (N == 0) {
                long long l = 1;
                for (long long i = 2; i <= cfg.k; ++i) l = std::lcm(l, i);
                N = cfg.d2 * l;
            }
            const HeisenbergGroup G(cfg.d1, cfg.d2, N);
            Json irreps = Json::array();
            for (const auto& rep : weight_k_irreps(G, cfg.k))
                irreps.push_back(
                    Json{{"dim", rep.dimension}, {"weight", rep.weight}, {"label", rep.label}});
            Json mults = Json::object();
            bool lemma = true;
            for (const auto& [label, mult] : multiplicity_decomposition(G, cfg.k)) {
                mults[label] = mult;
                if (mult < 1) lemma = false;
            }
            report["irreps"] = std::move(irreps);
            report["multiplicities"] = std::move(mults);
            report["lemma_holds"] = lemma;
        } else if (*sweep_cmd) {
            const SweepReport srep = run_sweep(cfg);
            err << "sweep: " << srep.instances << " instances in " << srep.duration_ms
                << " ms\n";
            detail::emit_report(sweep_report_to_json(srep), cfg.output, out);
            if (srep.failed > 0) return 2;
            return srep.complete ? 0 : 1;
        }
        detail::emit_report(report, cfg.output, out);
        return 0;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace mukai
