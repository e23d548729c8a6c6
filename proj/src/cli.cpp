#include "nodal/cli.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nodal/errors.hpp"
#include "nodal/instances.hpp"
#include "nodal/io.hpp"
#include "nodal/lattice.hpp"
#include "nodal/local_global.hpp"
#include "nodal/magnetic.hpp"
#include "nodal/parallel.hpp"

namespace nodal::cli {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string graph_path;
    std::string matrix_path;
    std::optional<std::uint64_t> seed;
    std::string k_selection = "all";
    std::string output_path;
    int grid_per_dim = 32;
    int scan_samples = 64;
    int threads = 0;
    bool exploratory = false;
    double xi_scale = 0.0;  // > 0 selects the canonical family in `gen`
    Tolerances tol;
};

struct Workspace {
    Graph graph;
    CycleStructure cycles;
    SupportedMatrix matrix;
};

void add_tolerance_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--tol-simplicity", opts.tol.simplicity, "eigenvalue gap margin");
    cmd->add_option("--tol-vanishing", opts.tol.vanishing, "eigenvector entry margin");
    cmd->add_option("--tol-distinctness", opts.tol.distinctness, "signing separation margin");
    cmd->add_option("--threads", opts.threads, "worker threads (default: NODAL_THREADS or hw)");
}

void apply_thread_option(const CommonOptions& opts) {
    if (opts.threads > 0) set_thread_count(opts.threads);
}

Workspace load_workspace(const CommonOptions& opts, bool need_matrix) {
    Workspace ws;
    ws.graph = read_graph_file(opts.graph_path);
    ws.cycles = analyze_cycles(ws.graph);
    if (!need_matrix) return ws;
    if (!opts.matrix_path.empty()) {
        ws.matrix = read_matrix_file(opts.matrix_path, ws.graph);
    } else if (opts.seed) {
        GeneratorConfig cfg;
        cfg.seed = *opts.seed;
        ws.matrix = random_gsc_instance(ws.graph, ws.cycles, cfg, opts.tol);
    } else {
        throw InputError("need --matrix or --seed");
    }
    return ws;
}

std::vector<int> parse_k_selection(const std::string& sel, int n) {
    if (sel == "all") {
        std::vector<int> ks(n);
        for (int k = 1; k <= n; ++k) ks[k - 1] = k;
        return ks;
    }
    try {
        size_t used;
        int k = std::stoi(sel, &used);
        if (used != sel.size()) throw std::invalid_argument("trailing");
        if (k < 1 || k > n) throw InputError("--k outside [1," + std::to_string(n) + "]");
        return {k};
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("--k must be an integer or 'all'");
    }
}

void emit(const CommonOptions& opts, const json& j) {
    if (opts.output_path.empty())
        std::cout << dump_json_17(j) << "\n";
    else
        write_json_file(opts.output_path, j);
}

json check_entry(const std::string& tag, bool pass, json detail = json::object()) {
    detail["tag"] = tag;
    detail["pass"] = pass;
    return detail;
}

int verdict_exit(const json& checks) {
    for (const json& c : checks)
        if (!c.at("pass").get<bool>()) return kExitVerdictFail;
    return kExitPass;
}

void require_disjoint(const Workspace& ws, const CommonOptions& opts) {
    if (!ws.cycles.disjoint && !opts.exploratory)
        throw InputError("graph does not have disjoint cycles; rerun with --exploratory to "
                         "report without asserting");
}

// --- subcommand bodies -----------------------------------------------------

int cmd_graph_check(const CommonOptions& opts) {
    Graph g = read_graph_file(opts.graph_path);
    CycleStructure cs = analyze_cycles(g);
    json j;
    j["n"] = g.n;
    j["edge_count"] = g.edge_count();
    j["beta"] = cs.beta;
    j["disjoint_cycles"] = cs.disjoint;
    j["tree_edges"] = json::array();
    for (const auto& [r, s] : cs.tree_edges) j["tree_edges"].push_back({r, s});
    j["representative_edges"] = json::array();
    for (const auto& [r, s] : cs.representative_edges)
        j["representative_edges"].push_back({r, s});
    j["fundamental_cycles"] = cs.fundamental_cycles;
    j["bridges"] = json::array();
    for (const auto& [r, s] : bridges(g)) j["bridges"].push_back({r, s});
    emit(opts, j);
    return kExitPass;
}

int cmd_gen(const CommonOptions& opts) {
    Graph g = read_graph_file(opts.graph_path);
    CycleStructure cs = analyze_cycles(g);
    if (!opts.seed) throw InputError("gen: --seed is required");
    SupportedMatrix h;
    json info;
    if (opts.xi_scale > 0.0) {
        h = canonical_instance(g, opts.xi_scale, *opts.seed);
        info["family"] = "canonical";
        info["xi_scale"] = opts.xi_scale;
    } else {
        GeneratorConfig cfg;
        cfg.seed = *opts.seed;
        h = random_gsc_instance(g, cs, cfg, opts.tol);
        info["family"] = "random-gsc";
    }
    info["seed"] = *opts.seed;
    json out = matrix_to_json(h);
    out["generator"] = info;
    emit(opts, out);
    return kExitPass;
}

int cmd_gsc(const CommonOptions& opts) {
    Workspace ws = load_workspace(opts, true);
    GscReport gsc = check_gsc(ws.matrix, ws.cycles, opts.tol);
    json checks = json::array();
    checks.push_back(check_entry("generic-spectral-condition", gsc.pass,
                                 {{"min_gap", gsc.min_gap},
                                  {"min_entry", gsc.min_entry},
                                  {"strict_support", gsc.strict_support_ok},
                                  {"signings_checked", gsc.signings_checked},
                                  {"full_enumeration", gsc.full_enumeration}}));
    if (gsc.failing_signing)
        checks.back()["failing_signing"] = *gsc.failing_signing;

    for (int k : parse_k_selection(opts.k_selection, ws.graph.n)) {
        DistinctReport d = check_distinct_signings(ws.matrix, ws.cycles, k, opts.tol);
        checks.push_back(check_entry("signing-distinctness", d.pass,
                                     {{"k", k}, {"min_separation", d.min_separation}}));
    }
    json j{{"checks", checks}};
    emit(opts, j);
    return verdict_exit(checks);
}

int cmd_surplus(const CommonOptions& opts) {
    Workspace ws = load_workspace(opts, true);
    require_disjoint(ws, opts);
    json results = json::array();
    bool all_pass = true;
    for (int k : parse_k_selection(opts.k_selection, ws.graph.n)) {
        SurplusDistribution d = surplus_distribution(ws.matrix, ws.cycles, k, opts.tol);
        bool pass = binomial_verdict(d);
        all_pass = all_pass && pass;
        results.push_back(json{{"k", d.k},
                               {"beta", d.beta},
                               {"counts", d.counts},
                               {"per_signing_counts", d.per_signing_counts},
                               {"binomial_pass", pass}});
    }
    json j{{"distributions", results}, {"asserted", !opts.exploratory}};
    emit(opts, j);
    if (opts.exploratory) return kExitPass;
    return all_pass ? kExitPass : kExitVerdictFail;
}

int cmd_verify_binomial(const CommonOptions& opts) {
    Workspace ws = load_workspace(opts, true);
    require_disjoint(ws, opts);
    json checks = json::array();

    GscReport gsc = check_gsc(ws.matrix, ws.cycles, opts.tol);
    checks.push_back(check_entry("generic-spectral-condition", gsc.pass,
                                 {{"min_gap", gsc.min_gap}, {"min_entry", gsc.min_entry}}));

    SigningOrbits orbits = signing_orbits(ws.graph, ws.cycles);
    checks.push_back(check_entry("gauge-orbit-structure",
                                 orbits.orbit_count == (1ull << ws.cycles.beta),
                                 {{"orbit_count", orbits.orbit_count},
                                  {"orbit_size", orbits.orbit_size}}));

    if (gsc.pass) {
        for (int k : parse_k_selection(opts.k_selection, ws.graph.n)) {
            SurplusDistribution d = surplus_distribution(ws.matrix, ws.cycles, k, opts.tol);
            bool pass = binomial_verdict(d);
            bool scale_ok = true;
            for (size_t j2 = 0; j2 < d.counts.size(); ++j2)
                scale_ok = scale_ok &&
                           d.per_signing_counts[j2] == d.counts[j2] * orbits.orbit_size;
            checks.push_back(check_entry("surplus-distribution-binomial", pass,
                                         {{"k", k}, {"counts", d.counts}}));
            checks.push_back(check_entry("per-signing-scaling", scale_ok, {{"k", k}}));
        }
    }
    json j{{"checks", checks}, {"asserted", !opts.exploratory}};
    emit(opts, j);
    if (opts.exploratory) return kExitPass;
    return verdict_exit(checks);
}

int cmd_verify_morse(const CommonOptions& opts) {
    Workspace ws = load_workspace(opts, true);
    require_disjoint(ws, opts);
    json checks = json::array();
    json lattices = json::array();
    for (int k : parse_k_selection(opts.k_selection, ws.graph.n)) {
        MorseReport report = morse_report(ws.matrix, ws.cycles, k, opts.tol);
        double max_offdiag = 0.0;
        for (const MorseEntry& e : report.entries)
            max_offdiag = std::max(max_offdiag, e.max_offdiag);
        checks.push_back(check_entry("morse-index-consistency",
                                     report.all_consistent && !report.indeterminate,
                                     {{"k", k},
                                      {"max_hessian_offdiag", max_offdiag},
                                      {"indeterminate", report.indeterminate}}));

        LatticeReport lattice = lattice_map(ws.matrix, ws.cycles, k, opts.tol);
        json entries = json::array();
        for (const LatticeEntry& e : lattice.entries)
            entries.push_back(json{{"eps", e.eps},
                                   {"jminus", e.jminus},
                                   {"lambda", e.lambda},
                                   {"index", e.index},
                                   {"surplus", e.surplus}});
        lattices.push_back(json{{"k", k},
                                {"entries", entries},
                                {"bijective", lattice.bijective},
                                {"binomial", lattice.binomial},
                                {"indeterminate", lattice.indeterminate}});
        checks.push_back(check_entry("lattice-bijectivity",
                                     lattice.bijective && !lattice.indeterminate, {{"k", k}}));
    }
    json j{{"checks", checks}, {"lattice", lattices}};
    emit(opts, j);
    return verdict_exit(checks);
}

int cmd_verify_monotone(const CommonOptions& opts) {
    Workspace ws = load_workspace(opts, true);
    require_disjoint(ws, opts);
    json checks = json::array();
    const std::uint32_t eps_count = 1u << ws.cycles.beta;
    for (int k : parse_k_selection(opts.k_selection, ws.graph.n)) {
        bool all_monotone = true;
        bool derivatives_ok = true;
        for (std::uint32_t eps = 0; eps < eps_count; ++eps) {
            for (int j = 0; j < ws.cycles.beta; ++j) {
                EdgeScan scan =
                    edge_scan(ws.matrix, ws.cycles, eps, j, k, opts.scan_samples, opts.tol);
                bool monotone = scan.verdict == ScanVerdict::StrictlyIncreasing ||
                                scan.verdict == ScanVerdict::StrictlyDecreasing;
                all_monotone = all_monotone && monotone;
                for (size_t i = 1; i + 1 < scan.derivative.size(); ++i) {
                    bool expected_negative = scan.verdict == ScanVerdict::StrictlyDecreasing;
                    double d = scan.derivative[i];
                    if (std::abs(d) <= 1e-10 || (d < 0.0) != expected_negative)
                        derivatives_ok = false;
                }
            }
        }
        checks.push_back(check_entry("edge-monotonicity", all_monotone, {{"k", k}}));
        checks.push_back(check_entry("interior-derivative-sign", derivatives_ok, {{"k", k}}));
    }
    json j{{"checks", checks}};
    emit(opts, j);
    return verdict_exit(checks);
}

int cmd_verify_localglobal(const CommonOptions& opts) {
    Workspace ws = load_workspace(opts, true);
    require_disjoint(ws, opts);
    json checks = json::array();
    const std::uint32_t eps_count = 1u << ws.cycles.beta;
    const std::uint32_t full = ws.cycles.beta == 0 ? 0u : (1u << ws.cycles.beta) - 1u;
    for (int k : parse_k_selection(opts.k_selection, ws.graph.n)) {
        for (std::uint32_t eps = 0; eps < eps_count; ++eps) {
            JMinusResult jm = j_minus(ws.matrix, ws.cycles, eps, k, opts.tol);
            for (std::uint32_t J : {jm.mask, full ^ jm.mask}) {
                if (std::popcount(J) > 3) continue;  // grid budget
                WeylGridReport report = weyl_localglobal_check(
                    ws.matrix, ws.cycles, eps, k, J, opts.grid_per_dim, opts.tol);
                json detail{{"k", k},
                            {"eps", eps},
                            {"J", J},
                            {"weyl_margin", report.min_weyl_margin},
                            {"rank_eigenvalue", report.max_rank_eigenvalue},
                            {"minmax_margin", report.minmax_margin},
                            {"grid_points", report.grid_points}};
                if (!report.pass) {
                    detail["worst_weyl_point"] = report.worst_weyl_point;
                    detail["worst_minmax_point"] = report.worst_minmax_point;
                }
                checks.push_back(check_entry("local-global-minmax", report.pass, detail));
                if (J == (full ^ jm.mask) && jm.mask == (full ^ jm.mask)) break;
            }
        }
    }
    json j{{"checks", checks}};
    emit(opts, j);
    return verdict_exit(checks);
}

int cmd_verify_schur(const CommonOptions& opts) {
    Workspace ws = load_workspace(opts, true);
    require_disjoint(ws, opts);
    json checks = json::array();
    const std::uint32_t eps_count = 1u << ws.cycles.beta;
    const std::uint32_t full = ws.cycles.beta == 0 ? 0u : (1u << ws.cycles.beta) - 1u;
    for (int k : parse_k_selection(opts.k_selection, ws.graph.n)) {
        for (std::uint32_t eps = 0; eps < eps_count; ++eps) {
            JMinusResult jm = j_minus(ws.matrix, ws.cycles, eps, k, opts.tol);
            for (std::uint32_t J : {jm.mask, full ^ jm.mask}) {
                SupportedMatrix h_eps = apply_symmetry_point(ws.matrix, ws.cycles, eps);
                LocalGlobalCertificate cert =
                    build_certificate(h_eps, ws.cycles, k, J, opts.tol);
                bool decomposition_ok = cert.sum_rj_vs_bob <= 1e-9 &&
                                        cert.s_phi_residual <= 1e-9 &&
                                        cert.rj_det_max <= 1e-10 && cert.rj_sign_constant;
                SchurCheckReport sc = schur_check(cert, h_eps, ws.cycles, opts.tol);
                checks.push_back(check_entry("rank-one-decomposition", decomposition_ok,
                                             {{"k", k},
                                              {"eps", eps},
                                              {"J", J},
                                              {"sum_rj_vs_bob", cert.sum_rj_vs_bob},
                                              {"s_phi_residual", cert.s_phi_residual}}));
                checks.push_back(check_entry("schur-hessian-identity", sc.pass,
                                             {{"k", k},
                                              {"eps", eps},
                                              {"J", J},
                                              {"schur_vs_half_hessian", sc.schur_vs_half_hessian},
                                              {"schur_omega_vs_s", sc.schur_omega_vs_s}}));
                if (J == (full ^ jm.mask) && jm.mask == (full ^ jm.mask)) break;
            }
        }
    }
    json j{{"checks", checks}};
    emit(opts, j);
    return verdict_exit(checks);
}

int cmd_verify_haynsworth(const CommonOptions& opts) {
    Workspace ws = load_workspace(opts, true);
    require_disjoint(ws, opts);
    json checks = json::array();
    const std::uint32_t eps_count = 1u << ws.cycles.beta;
    const std::uint32_t full = ws.cycles.beta == 0 ? 0u : (1u << ws.cycles.beta) - 1u;
    for (int k : parse_k_selection(opts.k_selection, ws.graph.n)) {
        for (std::uint32_t eps = 0; eps < eps_count; ++eps) {
            JMinusResult jm = j_minus(ws.matrix, ws.cycles, eps, k, opts.tol);
            for (std::uint32_t J : {jm.mask, full ^ jm.mask}) {
                SupportedMatrix h_eps = apply_symmetry_point(ws.matrix, ws.cycles, eps);
                LocalGlobalCertificate cert =
                    build_certificate(h_eps, ws.cycles, k, J, opts.tol);
                HaynsworthReport hr = haynsworth_check(cert);
                checks.push_back(check_entry(
                    "inertia-additivity", hr.pass,
                    {{"k", k},
                     {"eps", eps},
                     {"J", J},
                     {"ind_m", hr.inertias.ind_m},
                     {"ind_h_lambda", hr.inertias.ind_h_lambda},
                     {"ind_omega", hr.inertias.ind_omega},
                     {"ind_schur_h", hr.inertias.ind_schur_h},
                     {"ind_schur_omega", hr.inertias.ind_schur_omega},
                     {"indeterminate", hr.indeterminate}}));
                if (J == (full ^ jm.mask) && jm.mask == (full ^ jm.mask)) break;
            }
        }
    }
    json j{{"checks", checks}};
    emit(opts, j);
    return verdict_exit(checks);
}

int cmd_verify_current(const CommonOptions& opts, const std::string& flux_literal) {
    Workspace ws = load_workspace(opts, true);
    json checks = json::array();
    SplitMix64 rng(opts.seed.value_or(1));
    double scale = ws.matrix.frobenius();
    double structure_tol = opts.tol.current_structure * scale;

    double worst_div = 0.0, worst_bridge = 0.0, worst_spread = 0.0, worst_gauge = 0.0;
    int samples = opts.scan_samples;
    for (int i = 0; i < samples; ++i) {
        FluxPoint a = FluxPoint::zero(ws.cycles.beta);
        if (i == 0 && !flux_literal.empty())
            a = parse_flux_literal(flux_literal, ws.cycles.beta);
        else
            for (double& angle : a.angles) angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        int k = 1 + static_cast<int>(rng.next() % ws.graph.n);
        MagneticMatrix m = torus_action(ws.matrix, ws.cycles, a);
        EigenSystem es = eig_herm(m.mat, opts.tol);
        std::vector<cplx> phi = es.vector(k - 1);
        double nrm = norm2(phi);
        for (cplx& z : phi) z /= nrm;
        ProbabilityCurrent cur =
            probability_current(ws.graph, ws.cycles, m, phi, opts.tol);
        worst_div = std::max(worst_div, cur.max_divergence);
        worst_bridge = std::max(worst_bridge, cur.max_bridge_abs);
        worst_spread = std::max(worst_spread, cur.max_cycle_spread);

        GaugeVector theta{std::vector<double>(ws.graph.n)};
        for (double& t : theta.theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
        MagneticMatrix mg = gauge_transform(m, theta);
        std::vector<cplx> phi_g(phi.size());
        for (int v = 0; v < ws.graph.n; ++v)
            phi_g[v] = std::polar(1.0, theta.theta[v]) * phi[v];
        ProbabilityCurrent cur_g =
            probability_current(ws.graph, ws.cycles, mg, phi_g, opts.tol);
        for (size_t e = 0; e < cur.values.size(); ++e)
            worst_gauge = std::max(worst_gauge, std::abs(cur.values[e] - cur_g.values[e]));
    }
    checks.push_back(check_entry("current-divergence-free", worst_div <= structure_tol,
                                 {{"max_divergence", worst_div}}));
    checks.push_back(check_entry("current-bridge-zero", worst_bridge <= structure_tol,
                                 {{"max_bridge", worst_bridge}}));
    checks.push_back(check_entry("current-cycle-constant", worst_spread <= structure_tol,
                                 {{"max_spread", worst_spread}}));
    checks.push_back(check_entry("current-gauge-invariance", worst_gauge <= 1e-12,
                                 {{"max_entry_difference", worst_gauge}}));
    json j{{"checks", checks}, {"samples", samples}};
    emit(opts, j);
    return verdict_exit(checks);
}

int cmd_scan(const CommonOptions& opts, std::uint32_t eps, int cycle, int k) {
    Workspace ws = load_workspace(opts, true);
    if (ws.cycles.beta == 0) throw InputError("scan: graph has no cycles");
    if (ws.cycles.beta > 20) throw InputError("scan: beta exceeds the bitmask limit 20");
    if (cycle < 0 || cycle >= ws.cycles.beta) throw InputError("scan: --cycle out of range");
    if ((eps >> ws.cycles.beta) != 0) throw InputError("scan: --eps out of range");
    EdgeScan scan = edge_scan(ws.matrix, ws.cycles, eps, cycle, k, opts.scan_samples, opts.tol);

    std::ostringstream csv;
    csv << "t,lambda,deriv\n";
    for (size_t i = 0; i < scan.t.size(); ++i)
        csv << format_double_17(scan.t[i]) << "," << format_double_17(scan.lambda[i]) << ","
            << format_double_17(scan.derivative[i]) << "\n";
    json trailer{{"verdict", to_string(scan.verdict)},
                 {"eps", scan.eps},
                 {"cycle", scan.cycle},
                 {"k", scan.k}};
    std::string payload = csv.str() + dump_json_17(trailer, 0) + "\n";
    if (opts.output_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(opts.output_path);
        if (!f) throw InputError("cannot open '" + opts.output_path + "' for writing");
        f << payload;
    }
    bool monotone = scan.verdict == ScanVerdict::StrictlyIncreasing ||
                    scan.verdict == ScanVerdict::StrictlyDecreasing;
    return monotone ? kExitPass : kExitVerdictFail;
}

int cmd_flatband_demo(const CommonOptions& opts) {
    FlatBandInstance inst = flat_band_instance();
    CycleStructure cs = analyze_cycles(inst.h.graph);
    json checks = json::array();

    double worst = 0.0;
    for (int i = 1; i <= 16; ++i) {
        double t = std::numbers::pi * i / 17.0;
        FluxPoint a = FluxPoint::zero(cs.beta);
        a.angles[inst.cycle] = t;
        EigenSystem es = eigensystem_at(inst.h, cs, a, opts.tol);
        double closest = std::numeric_limits<double>::infinity();
        for (double v : es.values) closest = std::min(closest, std::abs(v - inst.lambda));
        worst = std::max(worst, closest);
    }
    checks.push_back(check_entry("flat-band-persistence", worst <= 1e-9,
                                 {{"max_eigenvalue_distance", worst}}));

    int flat_branch = 0;
    for (int k = 1; k <= inst.h.n(); ++k) {
        EdgeScan scan = edge_scan(inst.h, cs, 0, inst.cycle, k, opts.scan_samples, opts.tol);
        if (scan.verdict == ScanVerdict::FlatBand) {
            flat_branch = k;
            break;
        }
    }
    checks.push_back(check_entry("flat-band-scan", flat_branch != 0,
                                 {{"flat_branch_k", flat_branch}}));

    GscReport gsc = check_gsc(inst.h, cs, opts.tol);
    checks.push_back(check_entry("generic-condition-violation", !gsc.pass,
                                 {{"min_gap", gsc.min_gap}, {"min_entry", gsc.min_entry}}));

    json j{{"checks", checks}, {"lambda", inst.lambda}, {"matrix", matrix_to_json(inst.h)}};
    emit(opts, j);
    return verdict_exit(checks);
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"numerical verification of nodal surplus statistics on graphs with disjoint cycles"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string flux_literal;
    std::uint64_t seed_value = 0;
    bool seed_given = false;
    auto add_common = [&](CLI::App* cmd, bool with_matrix) {
        cmd->add_option("--graph", opts.graph_path, "graph JSON file")->required();
        if (with_matrix) {
            cmd->add_option("--matrix", opts.matrix_path, "matrix JSON file");
            cmd->add_option("--seed", seed_value, "generate a seeded instance instead")
                ->each([&](const std::string&) { seed_given = true; });
        }
        cmd->add_option("--out", opts.output_path, "output path (default: stdout)");
        add_tolerance_flags(cmd, opts);
    };

    CLI::App* graph_cmd = app.add_subcommand("graph", "graph file operations");
    graph_cmd->require_subcommand(1);
    CLI::App* graph_check = graph_cmd->add_subcommand("check", "validate and report structure");
    add_common(graph_check, false);

    CLI::App* gen = app.add_subcommand("gen", "generate an instance matrix");
    add_common(gen, false);
    gen->add_option("--seed", seed_value, "generator seed")->required()
        ->each([&](const std::string&) { seed_given = true; });
    gen->add_option("--xi-scale", opts.xi_scale,
                    "emit the diag(1..n)+xi canonical family at this scale");

    CLI::App* gsc = app.add_subcommand("gsc", "generic + distinctness condition checks");
    add_common(gsc, true);
    gsc->add_option("--k", opts.k_selection, "eigenvalue index (1-based) or 'all'");

    CLI::App* surplus = app.add_subcommand("surplus", "surplus distribution over signings");
    add_common(surplus, true);
    surplus->add_option("--k", opts.k_selection, "eigenvalue index (1-based) or 'all'");
    surplus->add_flag("--exploratory", opts.exploratory, "report without asserting");

    CLI::App* verify = app.add_subcommand("verify", "run a verification");
    verify->require_subcommand(1);
    std::vector<std::pair<std::string, std::string>> verify_names = {
        {"binomial", "exact surplus histogram vs C(beta, j) for the selected k"},
        {"morse", "FD Morse index == |J_-| == surplus at every symmetry point"},
        {"monotone", "strict monotonicity of every hypercube-edge scan"},
        {"localglobal", "Weyl bound and min/max inequality over subtorus grids"},
        {"schur", "rank-one decomposition and Schur complement vs half Hessian"},
        {"haynsworth", "inertia additivity for the block certificate"},
        {"current", "probability current structure and gauge invariance"}};
    for (const auto& [name, blurb] : verify_names) {
        CLI::App* sub = verify->add_subcommand(name, blurb);
        add_common(sub, true);
        sub->add_option("--k", opts.k_selection, "eigenvalue index (1-based) or 'all'");
        sub->add_flag("--exploratory", opts.exploratory, "report without asserting");
        if (name == "localglobal")
            sub->add_option("--grid", opts.grid_per_dim, "grid points per dimension");
        if (name == "monotone" || name == "current")
            sub->add_option("--samples", opts.scan_samples, "sample count");
        if (name == "current")
            sub->add_option("--flux", flux_literal,
                            "evaluate the first sample at this flux point, 'j:angle,j:angle'");
    }

    CLI::App* scan = app.add_subcommand("scan", "sample lambda_k along one hypercube edge");
    add_common(scan, true);
    std::uint32_t scan_eps = 0;
    int scan_cycle = 0, scan_k = 1;
    scan->add_option("--eps", scan_eps, "symmetry point bitmask")->required();
    scan->add_option("--cycle", scan_cycle, "cycle coordinate (0-based)")->required();
    scan->add_option("--k", scan_k, "eigenvalue index (1-based)")->required();
    scan->add_option("--samples", opts.scan_samples, "sample count (>= 8)");

    CLI::App* flatband = app.add_subcommand("flatband-demo", "constructive flat-band instance");
    flatband->add_option("--out", opts.output_path, "output path (default: stdout)");
    flatband->add_option("--samples", opts.scan_samples, "scan sample count");
    add_tolerance_flags(flatband, opts);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help() << "\n";
            return kExitPass;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (seed_given) opts.seed = seed_value;

    try {
        apply_thread_option(opts);
        if (graph_check->parsed()) return cmd_graph_check(opts);
        if (gen->parsed()) return cmd_gen(opts);
        if (gsc->parsed()) return cmd_gsc(opts);
        if (surplus->parsed()) return cmd_surplus(opts);
        if (verify->parsed()) {
            CLI::App* sub = verify->get_subcommands().front();
            const std::string& name = sub->get_name();
            if (name == "binomial") return cmd_verify_binomial(opts);
            if (name == "morse") return cmd_verify_morse(opts);
            if (name == "monotone") return cmd_verify_monotone(opts);
            if (name == "localglobal") return cmd_verify_localglobal(opts);
            if (name == "schur") return cmd_verify_schur(opts);
            if (name == "haynsworth") return cmd_verify_haynsworth(opts);
            if (name == "current") return cmd_verify_current(opts, flux_literal);
        }
        if (scan->parsed()) return cmd_scan(opts, scan_eps, scan_cycle, scan_k);
        if (flatband->parsed()) return cmd_flatband_demo(opts);
        std::cerr << "usage error: no subcommand\n";
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return kExitVerdictFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace nodal::cli
