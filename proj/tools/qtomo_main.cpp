// qtomo: tomography with finite-sample confidence certificates.
//
// Subcommands: simulate, estimate, certify, plan, figure2, validate.
// A JSON config file (--config) mirrors every flag; command-line flags win.
// Exit codes: 0 ok, 2 validation error, 3 design not informationally
// complete, 4 validation sweep raised a flag.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtomo/confidence.hpp"
#include "qtomo/estimators.hpp"
#include "qtomo/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace qtomo;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string g_invocation;

ordered_json meta_block() {
    ordered_json m;
    m["version"] = kVersion;
    m["invocation"] = g_invocation;
    return m;
}

std::string csv_header_comment() {
    return "# version: " + std::string(kVersion) + "\n# invocation: " + g_invocation + "\n";
}

void write_text(const std::string& path, const std::string& content) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InvalidTarget("cannot open output file: " + path);
    out << content;
    if (!out) throw InvalidTarget("failed writing output file: " + path);
}

void write_json(const std::string& path, const ordered_json& j) {
    write_text(path, j.dump(2) + "\n");
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidTarget("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

std::string load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidTarget("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Overrides every option the user did not give on the command line with
/// the value found under the same long-flag name in the JSON config file.
struct ConfigMerger {
    CLI::App* app = nullptr;
    json cfg;

    ConfigMerger(CLI::App* a, const std::string& path) : app(a) {
        if (!path.empty()) cfg = load_json(path);
    }
    template <class T>
    void merge(const std::string& flag, T& value) const {
        if (cfg.is_null() || app->count("--" + flag) > 0) return;
        if (cfg.contains(flag)) value = cfg.at(flag).get<T>();
    }
};

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw InvalidEfficiency("--eta must lie in [0, 1]");
}
void check_qubits(int k) {
    if (k < 1) throw UnsupportedDimension("--qubits must be at least 1");
}
void check_delta(double delta) {
    if (!(delta > 0.0)) throw InvalidThreshold("--delta must be positive");
}

long long settings_for(int k) {
    long long s = 1;
    for (int q = 0; q < k; ++q) s *= 3;
    return s;
}

CMatrix state_from_flags(const std::string& preset, const std::string& file, int k) {
    if (!file.empty()) {
        const json j = load_json(file);
        const CMatrix rho = density_from_json(j.contains("state") ? j.at("state") : j);
        if (!is_physical(rho) || std::abs(rho.trace().real() - 1.0) > 1e-9)
            throw UnphysicalState("--state-file does not contain a density matrix");
        return rho;
    }
    try {
        return preset_state(preset, k);
    } catch (const Error&) {
        throw InvalidTarget("--state must be one of mixed, zero, ghz");
    }
}

// --- simulate -------------------------------------------------------------

struct SimulateOpts {
    int qubits = 1;
    double eta = 1.0;
    long long n = 1000; // per setting
    std::string state = "mixed";
    std::string state_file;
    std::uint64_t seed = 0;
    std::string out;
    std::string config;
};

int cmd_simulate(const SimulateOpts& o) {
    check_qubits(o.qubits);
    check_eta(o.eta);
    if (o.n < 1) throw InvalidTarget("--n must be at least 1");
    const CMatrix rho = state_from_flags(o.state, o.state_file, o.qubits);
    const ExperimentDesign design = pauli_design(o.qubits, o.eta, o.n);
    const FrequencyVector f = sample(design, rho, o.seed);

    const fs::path dir(o.out);
    write_text((dir / "frequencies.csv").string(),
               csv_header_comment() + frequencies_to_csv(design, f));

    ordered_json side;
    side["meta"] = meta_block();
    side["generator"]["type"] = "pauli";
    side["generator"]["qubits"] = o.qubits;
    side["generator"]["eta"] = o.eta;
    side["generator"]["n_per_setting"] = o.n;
    side["seed"] = o.seed;
    side["state_source"] = o.state_file.empty() ? o.state : o.state_file;
    side["true_state"] = density_to_json(rho);
    side["design"] = design_to_json(design);
    write_json((dir / "design.json").string(), side);
    std::cout << "wrote " << (dir / "frequencies.csv").string() << " and "
              << (dir / "design.json").string() << "\n";
    return 0;
}

ExperimentDesign design_from_sidecar(const json& side) {
    const json& g = side.at("generator");
    if (g.at("type").get<std::string>() != "pauli")
        throw InvalidTarget("design sidecar: unknown generator type");
    return pauli_design(g.at("qubits").get<int>(), g.at("eta").get<double>(),
                        g.at("n_per_setting").get<long long>());
}

// --- estimate -------------------------------------------------------------

struct EstimateOpts {
    std::string in;
    std::string out;
    bool cls = false;
    std::string target;
    std::vector<std::string> losses{"trace"};
    std::string config;
};

int cmd_estimate(const EstimateOpts& o) {
    const fs::path dir(o.in);
    const json side = load_json((dir / "design.json").string());
    const ExperimentDesign design = design_from_sidecar(side);
    const FrequencyVector f =
        frequencies_from_csv(design, load_text((dir / "frequencies.csv").string()));
    const EstimateRecord rec = estimate_all(design, f, o.cls);

    ordered_json out;
    out["meta"] = meta_block();
    out["estimate"] = estimate_to_json(rec);
    if (!o.target.empty()) {
        const CMatrix target = density_from_json(load_json(o.target));
        ordered_json dist;
        for (const std::string& name : o.losses) {
            const LossKind kind = loss_from_name(name);
            const double v = apply_loss(kind, target, rec.rho_enm);
            dist[name] = v;
            std::printf("delta_%s(target, enm) = %.6f\n", name.c_str(), v);
        }
        out["target_distances"] = std::move(dist);
    }
    const std::string out_path = o.out.empty() ? (dir / "estimate.json").string() : o.out;
    write_json(out_path, out);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

// --- certify --------------------------------------------------------------

struct CertifyOpts {
    int qubits = 1;
    double eta = 1.0;
    double delta = 0.0;
    long long n_total = 0;
    long long n_per = 0;
    std::string loss = "trace";
    bool cls = false;
    double xi = 0.0;
    double zeta = 0.0;
    std::string target;
    std::string est;
    std::string out;
    std::string config;
};

int cmd_certify(const CertifyOpts& o) {
    check_qubits(o.qubits);
    check_eta(o.eta);
    check_delta(o.delta);
    const long long settings = settings_for(o.qubits);
    long long n_total = o.n_total;
    if (n_total <= 0 && o.n_per > 0) n_total = o.n_per * settings;
    if (n_total <= 0) throw InvalidTarget("provide --N (total) or --n (per setting)");
    const LossKind loss = loss_from_name(o.loss);

    // The certificate depends on the counts only through N and the fixed
    // per-setting ratios, so a unit-count design suffices.
    const ExperimentDesign design = pauli_design(o.qubits, o.eta, 1);
    if (!design.ic)
        throw NotInformationallyComplete("design is not informationally complete");
    const ConfidenceReport rep = confidence_level(design, loss, o.delta, n_total);
    std::printf("CL = %.5f  (loss=%s, delta=%g, N=%lld, eta=%g, qubits=%d)\n",
                rep.cl, o.loss.c_str(), o.delta, n_total, o.eta, o.qubits);

    ordered_json out;
    out["meta"] = meta_block();
    out["report"] = report_to_json(rep);

    if (o.cls) {
        const ConfidenceReport crep = cls_confidence_level(design, loss, o.delta, n_total);
        std::printf("CL_cls = %.5f\n", crep.cl);
        out["cls_report"] = report_to_json(crep);
    }

    if (!o.target.empty()) {
        if (o.est.empty())
            throw InvalidTarget("--target requires --est (estimate JSON from `estimate`)");
        const json est = load_json(o.est);
        const CMatrix rho_enm = density_from_json(est.at("estimate").at("rho_enm"));
        const CMatrix target = density_from_json(load_json(o.target));
        const ErrorBudget budget{o.xi, o.zeta};
        ordered_json prep;
        if (loss == LossKind::Infidelity) {
            const double tdist = trace_distance(target, rho_enm);
            const auto [inf_bound, fid_bound] =
                infidelity_preparation_bound(tdist, o.delta, budget);
            std::printf("Delta^IF(target, true) <= %.6f  (fidelity >= %.6f)\n", inf_bound,
                        fid_bound);
            prep["trace_distance_estimate"] = tdist;
            prep["infidelity_bound"] = inf_bound;
            prep["fidelity_lower_bound"] = fid_bound;
        } else {
            const double dist = apply_loss(loss, target, rho_enm);
            const double bound = preparation_bound(dist, o.delta, loss, budget);
            std::printf("Delta^%s(target, true) <= %.6f\n",
                        loss == LossKind::Trace ? "T" : "HS", bound);
            prep["distance_estimate"] = dist;
            prep["bound"] = bound;
        }
        prep["xi"] = o.xi;
        prep["zeta"] = o.zeta;
        out["preparation"] = std::move(prep);
    }

    if (!o.out.empty()) {
        write_json(o.out, out);
        std::cout << "wrote " << o.out << "\n";
    }
    return 0;
}

// --- plan -----------------------------------------------------------------

struct PlanOpts {
    int qubits = 1;
    double eta = 1.0;
    double delta = 0.0;
    std::string loss = "trace";
    double target_cl = 0.0;
    std::string config;
};

int cmd_plan(const PlanOpts& o) {
    check_qubits(o.qubits);
    check_eta(o.eta);
    check_delta(o.delta);
    if (!(o.target_cl > 0.0 && o.target_cl < 1.0))
        throw InvalidTarget("--target-cl must lie in (0, 1)");
    const LossKind loss = loss_from_name(o.loss);
    const long long n = required_samples(o.qubits, o.eta, o.delta, loss, o.target_cl);
    const double achieved = closed_form_cl_k(o.qubits, o.eta, o.delta, n, loss);
    std::printf("N = %lld  (achieved CL = %.6f, target %.6f)\n", n, achieved, o.target_cl);
    return 0;
}

// --- figure2 --------------------------------------------------------------

struct Figure2Opts {
    std::string out = "figure2.csv";
    double delta = 0.07;
    int points = 48;
    long long n_min = 100;
    long long n_max = 3000000;
    std::string config;
};

int cmd_figure2(const Figure2Opts& o) {
    check_delta(o.delta);
    if (o.points < 2 || o.n_min < 1 || o.n_max <= o.n_min)
        throw InvalidTarget("--points/--n-min/--n-max form an invalid grid");
    std::string csv = csv_header_comment();
    csv += "k,eta,N,n_per_setting,cl,one_minus_cl\n";
    char line[192];
    for (int k : {1, 2}) {
        const long long settings = settings_for(k);
        for (double eta : {1.0, 0.9, 0.8}) {
            long long prev_n = -1;
            for (int i = 0; i < o.points; ++i) {
                const double t = static_cast<double>(i) / (o.points - 1);
                const double target =
                    std::exp(std::log(static_cast<double>(o.n_min)) * (1.0 - t) +
                             std::log(static_cast<double>(o.n_max)) * t);
                const long long per =
                    std::max<long long>(1, std::llround(target / settings));
                const long long n = per * settings;
                if (n == prev_n) continue;
                prev_n = n;
                const double cl = closed_form_cl_k(k, eta, o.delta, n, LossKind::Trace);
                std::snprintf(line, sizeof line, "%d,%.17g,%lld,%lld,%.17g,%.17g\n", k,
                              eta, n, per, cl, 1.0 - cl);
                csv += line;
            }
        }
    }
    write_text(o.out, csv);
    std::cout << "wrote " << o.out << "\n";
    return 0;
}

// --- validate -------------------------------------------------------------

struct ValidateOpts {
    int qubits = 1;
    double eta = 0.9;
    double delta = 0.07;
    std::string loss = "trace";
    long long trials = 200;
    std::uint64_t seed = 1;
    std::vector<long long> n_grid;
    std::string out;
    std::string config;
};

int cmd_validate(const ValidateOpts& o) {
    check_qubits(o.qubits);
    check_eta(o.eta);
    check_delta(o.delta);
    if (o.trials < 1) throw InvalidTarget("--trials must be at least 1");
    if (o.out.empty()) throw InvalidTarget("--out directory is required");
    const LossKind loss = loss_from_name(o.loss);

    std::vector<long long> grid = o.n_grid;
    if (grid.empty()) {
        // Desk-scale default: sample sizes whose certified failure bound
        // spans roughly [1e-3, 0.5].
        for (double cl : {0.5, 0.9, 0.99, 0.999})
            grid.push_back(required_samples(o.qubits, o.eta, o.delta, loss, cl));
    }
    std::vector<std::pair<std::string, CMatrix>> states;
    for (const char* name : {"mixed", "zero", "ghz"})
        states.emplace_back(name, preset_state(name, o.qubits));

    const SweepTable table =
        coverage_sweep(o.qubits, o.eta, o.delta, grid, states, o.trials, o.seed, loss);

    const fs::path dir(o.out);
    write_text((dir / "sweep.csv").string(), csv_header_comment() + table.to_csv());
    ordered_json j;
    j["meta"] = meta_block();
    j["sweep"] = table.to_json();
    write_json((dir / "sweep.json").string(), j);

    std::printf("%zu cells, %s\n", table.cells.size(),
                table.any_flagged() ? "FLAGGED" : "all within bounds");
    return table.any_flagged() ? 4 : 0;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) {
        if (i) g_invocation += ' ';
        g_invocation += argv[i];
    }

    CLI::App app{"Quantum state tomography with finite-sample confidence certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    SimulateOpts so;
    CLI::App* sim = app.add_subcommand("simulate", "Sample tomography data for a known state");
    sim->add_option("-k,--qubits", so.qubits, "number of qubits");
    sim->add_option("--eta", so.eta, "detection efficiency in [0, 1]");
    sim->add_option("-n,--n", so.n, "repetitions per measurement setting");
    sim->add_option("--state", so.state, "state preset: mixed, zero, ghz");
    sim->add_option("--state-file", so.state_file, "density matrix JSON file");
    sim->add_option("--seed", so.seed, "PRNG seed");
    sim->add_option("-o,--out", so.out, "output directory")->required();
    sim->add_option("--config", so.config, "JSON config file mirroring the flags");

    EstimateOpts eo;
    CLI::App* est = app.add_subcommand("estimate", "Estimate the state from sampled data");
    est->add_option("-i,--in", eo.in, "directory written by `simulate`")->required();
    est->add_option("-o,--out", eo.out, "output JSON path (default <in>/estimate.json)");
    est->add_flag("--cls", eo.cls, "also run the constrained least squares estimator");
    est->add_option("--target", eo.target, "target density matrix JSON for distance report");
    est->add_option("--loss", eo.losses, "losses to report against the target")
        ->delimiter(',');
    est->add_option("--config", eo.config, "JSON config file mirroring the flags");

    CertifyOpts co;
    CLI::App* cer = app.add_subcommand("certify", "Compute the confidence-level certificate");
    cer->add_option("-k,--qubits", co.qubits, "number of qubits");
    cer->add_option("--eta", co.eta, "detection efficiency in [0, 1]");
    cer->add_option("--delta", co.delta, "error threshold");
    cer->add_option("-N,--N", co.n_total, "total number of samples");
    cer->add_option("-n,--n", co.n_per, "repetitions per setting (alternative to --N)");
    cer->add_option("--loss", co.loss, "loss: hs, trace, infidelity");
    cer->add_flag("--cls", co.cls, "also report the CLS certificate");
    cer->add_option("--xi", co.xi, "systematic error budget");
    cer->add_option("--zeta", co.zeta, "numerical error budget");
    cer->add_option("--target", co.target, "target density matrix JSON (preparation bound)");
    cer->add_option("--est", co.est, "estimate JSON from `estimate`");
    cer->add_option("-o,--out", co.out, "optional report JSON path");
    cer->add_option("--config", co.config, "JSON config file mirroring the flags");

    PlanOpts po;
    CLI::App* plan = app.add_subcommand("plan", "Smallest N reaching a target confidence level");
    plan->add_option("-k,--qubits", po.qubits, "number of qubits");
    plan->add_option("--eta", po.eta, "detection efficiency in [0, 1]");
    plan->add_option("--delta", po.delta, "error threshold");
    plan->add_option("--loss", po.loss, "loss: hs, trace, infidelity");
    plan->add_option("--target-cl", po.target_cl, "target confidence level in (0, 1)");
    plan->add_option("--config", po.config, "JSON config file mirroring the flags");

    Figure2Opts fo;
    CLI::App* fig = app.add_subcommand("figure2", "Emit confidence-level curves as CSV");
    fig->add_option("-o,--out", fo.out, "output CSV path");
    fig->add_option("--delta", fo.delta, "error threshold");
    fig->add_option("--points", fo.points, "grid points per curve");
    fig->add_option("--n-min", fo.n_min, "smallest total N");
    fig->add_option("--n-max", fo.n_max, "largest total N");
    fig->add_option("--config", fo.config, "JSON config file mirroring the flags");

    ValidateOpts vo;
    CLI::App* val = app.add_subcommand("validate", "Monte Carlo coverage sweep");
    val->add_option("-k,--qubits", vo.qubits, "number of qubits");
    val->add_option("--eta", vo.eta, "detection efficiency in [0, 1]");
    val->add_option("--delta", vo.delta, "error threshold");
    val->add_option("--loss", vo.loss, "loss: hs, trace, infidelity");
    val->add_option("--trials", vo.trials, "trials per grid cell");
    val->add_option("--seed", vo.seed, "PRNG base seed");
    val->add_option("--n-grid", vo.n_grid, "explicit total-N grid")->delimiter(',');
    val->add_option("-o,--out", vo.out, "output directory");
    val->add_option("--config", vo.config, "JSON config file mirroring the flags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            const ConfigMerger m(sim, so.config);
            m.merge("qubits", so.qubits);
            m.merge("eta", so.eta);
            m.merge("n", so.n);
            m.merge("state", so.state);
            m.merge("state-file", so.state_file);
            m.merge("seed", so.seed);
            m.merge("out", so.out);
            return cmd_simulate(so);
        }
        if (est->parsed()) {
            const ConfigMerger m(est, eo.config);
            m.merge("in", eo.in);
            m.merge("out", eo.out);
            m.merge("cls", eo.cls);
            m.merge("target", eo.target);
            m.merge("loss", eo.losses);
            return cmd_estimate(eo);
        }
        if (cer->parsed()) {
            const ConfigMerger m(cer, co.config);
            m.merge("qubits", co.qubits);
            m.merge("eta", co.eta);
            m.merge("delta", co.delta);
            m.merge("N", co.n_total);
            m.merge("n", co.n_per);
            m.merge("loss", co.loss);
            m.merge("cls", co.cls);
            m.merge("xi", co.xi);
            m.merge("zeta", co.zeta);
            m.merge("target", co.target);
            m.merge("est", co.est);
            m.merge("out", co.out);
            return cmd_certify(co);
        }
        if (plan->parsed()) {
            const ConfigMerger m(plan, po.config);
            m.merge("qubits", po.qubits);
            m.merge("eta", po.eta);
            m.merge("delta", po.delta);
            m.merge("loss", po.loss);
            m.merge("target-cl", po.target_cl);
            return cmd_plan(po);
        }
        if (fig->parsed()) {
            const ConfigMerger m(fig, fo.config);
            m.merge("out", fo.out);
            m.merge("delta", fo.delta);
            m.merge("points", fo.points);
            m.merge("n-min", fo.n_min);
            m.merge("n-max", fo.n_max);
            return cmd_figure2(fo);
        }
        if (val->parsed()) {
            const ConfigMerger m(val, vo.config);
            m.merge("qubits", vo.qubits);
            m.merge("eta", vo.eta);
            m.merge("delta", vo.delta);
            m.merge("loss", vo.loss);
            m.merge("trials", vo.trials);
            m.merge("seed", vo.seed);
            m.merge("n-grid", vo.n_grid);
            m.merge("out", vo.out);
            return cmd_validate(vo);
        }
    } catch (const NotInformationallyComplete& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
