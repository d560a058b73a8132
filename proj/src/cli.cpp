#include "su2lat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "su2lat/kickedtop.hpp"
#include "su2lat/parallel.hpp"
#include "su2lat/symm.hpp"

namespace su2lat::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Output sink: "-" means stdout.
struct OutFile {
    std::ofstream file;
    std::ostream *os = nullptr;

    explicit OutFile(const std::string &path) {
        if (path.empty() || path == "-") {
            os = &std::cout;
        } else {
            file.open(path);
            if (!file)
                throw ValidationError("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream &stream() { return *os; }
};

using ConfigKV = std::vector<std::pair<std::string, std::string>>;

void write_csv_header(std::ostream &os, const std::string &sub, const ConfigKV &kv) {
    os << "# su2lat " << sub << "\n";
    for (const auto &[k, v] : kv)
        os << "# " << k << "=" << v << "\n";
    os << "# rng=mt19937_64\n";
}

TranslateMode parse_mode(const std::string &s) {
    if (s == "isometry")
        return TranslateMode::Isometry;
    if (s == "circuit")
        return TranslateMode::Circuit;
    throw ValidationError("mode: expected 'isometry' or 'circuit', got '" + s + "'");
}

RotationBackend parse_backend(const std::string &s) {
    if (s == "shear")
        return RotationBackend::Shear;
    if (s == "exact")
        return RotationBackend::ExactOracle;
    throw ValidationError("backend: expected 'shear' or 'exact', got '" + s + "'");
}

/// Collects every violated precondition instead of stopping at the first.
struct Issues {
    std::vector<std::string> list;

    void check(bool ok, const std::string &field, const std::string &why) {
        if (!ok)
            list.push_back(field + ": " + why);
    }
    void require_empty() const {
        if (list.empty())
            return;
        std::string all = "invalid configuration:";
        for (const auto &s : list)
            all += "\n  " + s;
        throw ValidationError(all);
    }
};

void check_grid_shell(Issues &issues, int n, double r0, double width) {
    issues.check(n >= 8 && n <= 256 && is_power_of_two(n), "n",
                 "must be a power of two in [8, 256]");
    if (r0 >= 0.0 && n > 0) {
        issues.check(width > 0.0, "width", "must be positive");
        issues.check(r0 - 0.5 * width > 0.0, "r0", "shell must exclude the origin");
        issues.check(r0 + 0.5 * width < 0.5 * n, "r0", "shell must fit inside n/2");
    }
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i)
        out[i] = points == 1 ? lo : lo + (hi - lo) * double(i) / double(points - 1);
    return out;
}

// ---------------------------------------------------------------- rotate

struct RotateOpts {
    int ell = 2, n = 64, t_bits = -1;
    double alpha = 0, beta = 0, gamma = 0, r0 = -1, width = 3;
    std::string mode = "isometry", backend = "shear", out = "-";
    std::uint64_t seed = 0;
};

int do_rotate(const RotateOpts &o) {
    Issues issues;
    issues.check(o.ell >= 0 && o.ell <= 16, "ell", "must be in [0, 16]");
    check_grid_shell(issues, o.n, o.r0 < 0 ? 0.35 * o.n : o.r0, o.width);
    issues.require_empty();

    PipelineConfig cfg{o.ell, o.n, o.r0, o.width, parse_mode(o.mode), parse_backend(o.backend),
                       o.t_bits};
    std::mt19937_64 rng(o.seed);
    CompactState input = CompactState::random(o.ell, rng);
    RotationSpec rot = RotationSpec::euler(o.alpha, o.beta, o.gamma);
    PipelineResult res = rotate_via_lattice(input, rot, cfg);

    nlohmann::json j;
    j["config"] = {{"ell", o.ell},       {"n", o.n},
                   {"alpha", o.alpha},   {"beta", o.beta},
                   {"gamma", o.gamma},   {"r0", cfg.shell().r0},
                   {"width", o.width},   {"mode", o.mode},
                   {"backend", o.backend}, {"t_bits", cfg.t()},
                   {"seed", o.seed},     {"rng", "mt19937_64"}};
    j["fidelity"] = res.report.fidelity;
    j["leakage"] = res.report.leakage;
    j["gram_max_offdiag"] = res.report.gram_max_offdiag;
    j["residual"] = res.report.residual;
    j["norm_before_renorm"] = res.report.norm_before_renorm;
    j["beta_through_lattice"] = res.report.beta_through_lattice;

    OutFile out(o.out);
    out.stream() << j.dump(2) << "\n";
    std::cerr << "rotate: fidelity=" << fmt(res.report.fidelity)
              << " leakage=" << fmt(res.report.leakage) << "\n";
    return 0;
}

// ---------------------------------------------------------- fidelity-sweep

struct SweepOpts {
    int ell = 3, samples = 10, t_bits = -1;
    std::vector<int> ns{32, 64, 128};
    std::vector<double> betas{kPi / 4};
    double r0 = -1, width = 3;
    std::string mode = "isometry", backend = "shear", out = "-";
    std::uint64_t seed = 1;
};

int do_sweep(const SweepOpts &o) {
    Issues issues;
    issues.check(o.ell >= 0 && o.ell <= 16, "ell", "must be in [0, 16]");
    issues.check(o.samples >= 1, "samples", "must be >= 1");
    issues.check(!o.ns.empty(), "n", "need at least one grid size");
    for (int n : o.ns)
        check_grid_shell(issues, n, o.r0 < 0 ? 0.35 * n : o.r0, o.width);
    issues.require_empty();
    TranslateMode mode = parse_mode(o.mode);
    RotationBackend backend = parse_backend(o.backend);

    struct Row {
        int n;
        double beta, fidelity, leakage;
    };
    std::vector<Row> rows(o.ns.size() * o.betas.size());
    parallel_for(o.ns.size(), [&](std::size_t ni) {
        PipelineConfig cfg{o.ell, o.ns[ni], o.r0, o.width, mode, backend, o.t_bits};
        PipelineContext ctx = make_context(cfg);
        for (std::size_t bi = 0; bi < o.betas.size(); ++bi) {
            std::vector<double> fids, leaks;
            for (int s = 0; s < o.samples; ++s) {
                std::mt19937_64 rng(o.seed + 1000003ULL * s);
                CompactState input = CompactState::random(o.ell, rng);
                RotationSpec rot = RotationSpec::euler(0.0, o.betas[bi], 0.0);
                PipelineResult res = rotate_via_lattice(input, rot, ctx);
                fids.push_back(res.report.fidelity);
                leaks.push_back(res.report.leakage);
            }
            rows[ni * o.betas.size() + bi] =
                Row{o.ns[ni], o.betas[bi], median(fids), median(leaks)};
        }
    });

    OutFile out(o.out);
    ConfigKV kv{{"ell", std::to_string(o.ell)},
                {"mode", o.mode},
                {"backend", o.backend},
                {"samples", std::to_string(o.samples)},
                {"seed", std::to_string(o.seed)},
                {"width", fmt(o.width)}};
    write_csv_header(out.stream(), "fidelity-sweep", kv);
    out.stream() << "ell,n,beta,mode,fidelity,leakage\n";
    for (const Row &r : rows)
        out.stream() << o.ell << "," << r.n << "," << fmt(r.beta) << "," << o.mode << ","
                     << fmt(r.fidelity) << "," << fmt(r.leakage) << "\n";
    std::cerr << "fidelity-sweep: " << rows.size() << " rows\n";
    return 0;
}

// ------------------------------------------------------------- shear-check

struct ShearOpts {
    int n = 64, points = 25;
    std::string axis = "z", out = "-";
};

int do_shear_check(const ShearOpts &o) {
    Issues issues;
    issues.check(o.n >= 8 && o.n <= 256 && is_power_of_two(o.n), "n",
                 "must be a power of two in [8, 256]");
    issues.check(o.points >= 2, "points", "need at least 2 sweep points");
    issues.check(o.axis == "x" || o.axis == "y" || o.axis == "z", "axis", "must be x, y or z");
    issues.require_empty();
    Axis axis = o.axis == "x" ? Axis::X : (o.axis == "y" ? Axis::Y : Axis::Z);

    std::vector<double> thetas = linspace(-kPi / 2, kPi / 2, o.points);
    struct Row {
        double theta, max_disp, mean_disp;
    };
    std::vector<Row> rows(thetas.size());
    Grid3 grid(o.n);
    parallel_for(thetas.size(), [&](std::size_t i) {
        LatticePermutation perm = rotation_2d(grid, axis, thetas[i]);
        DisplacementStats st = displacement_stats(perm, axis, thetas[i], o.n / 4.0);
        rows[i] = Row{thetas[i], st.max, st.mean};
    });

    OutFile out(o.out);
    write_csv_header(out.stream(), "shear-check",
                     {{"n", std::to_string(o.n)},
                      {"points", std::to_string(o.points)},
                      {"axis", o.axis}});
    out.stream() << "theta,n,max_disp,mean_disp,bijective\n";
    for (const Row &r : rows)
        out.stream() << fmt(r.theta) << "," << o.n << "," << fmt(r.max_disp) << ","
                     << fmt(r.mean_disp) << ",true\n";
    std::cerr << "shear-check: " << rows.size() << " thetas, all bijective\n";
    return 0;
}

// -------------------------------------------------------------- prep-check

struct PrepOpts {
    int ell_max = 4, n = 32;
    double r0 = -1, width = 3;
    std::string out = "-";
};

int do_prep_check(const PrepOpts &o) {
    Issues issues;
    issues.check(o.ell_max >= 0 && o.ell_max <= 8, "ell-max", "must be in [0, 8]");
    check_grid_shell(issues, o.n, o.r0 < 0 ? 0.35 * o.n : o.r0, o.width);
    issues.require_empty();

    Grid3 grid(o.n);
    ShellSpec shell{o.r0 < 0 ? 0.35 * o.n : o.r0, o.width};
    struct Row {
        int ell, m;
        double err;
    };
    std::vector<std::pair<int, int>> lm;
    for (int ell = 0; ell <= o.ell_max; ++ell)
        for (int m = -ell; m <= ell; ++m)
            lm.emplace_back(ell, m);
    std::vector<Row> rows(lm.size());
    parallel_for(lm.size(), [&](std::size_t i) {
        auto [ell, m] = lm[i];
        LatticeState prepared = prepare_ylm_lattice(ell, m, grid, shell);
        LatticeState sampled = sample_ylm_state(ell, m, grid, shell);
        double err = 0.0;
        for (size_t k = 0; k < prepared.amps.size(); ++k)
            err = std::max(err, std::abs(prepared.amps[k] - sampled.amps[k]));
        rows[i] = Row{ell, m, err};
    });

    OutFile out(o.out);
    write_csv_header(out.stream(), "prep-check",
                     {{"ell_max", std::to_string(o.ell_max)},
                      {"n", std::to_string(o.n)},
                      {"r0", fmt(shell.r0)},
                      {"width", fmt(o.width)}});
    out.stream() << "ell,m,n,max_abs_err\n";
    for (const Row &r : rows)
        out.stream() << r.ell << "," << r.m << "," << o.n << "," << fmt(r.err) << "\n";
    std::cerr << "prep-check: " << rows.size() << " states\n";
    return 0;
}

// --------------------------------------------------------------- qpe-check

struct QpeOpts {
    int ell = 3, n = 64, t = -1;
    double r0 = -1, width = 3;
    std::string backend = "both", out = "-";
};

int do_qpe_check(const QpeOpts &o) {
    Issues issues;
    issues.check(o.ell >= 0 && o.ell <= 8, "ell", "must be in [0, 8]");
    check_grid_shell(issues, o.n, o.r0 < 0 ? 0.35 * o.n : o.r0, o.width);
    issues.check(o.backend == "shear" || o.backend == "exact" || o.backend == "both", "backend",
                 "must be shear, exact or both");
    issues.require_empty();

    Grid3 grid(o.n);
    ShellSpec shell{o.r0 < 0 ? 0.35 * o.n : o.r0, o.width};
    const int t = o.t < 0 ? min_t_bits(o.ell) : o.t;

    OutFile out(o.out);
    write_csv_header(out.stream(), "qpe-check",
                     {{"ell", std::to_string(o.ell)},
                      {"n", std::to_string(o.n)},
                      {"t", std::to_string(t)},
                      {"backend", o.backend}});
    out.stream() << "ell,m,n,t,backend,p_correct,leakage\n";

    auto run_backend = [&](const std::string &name) {
        TranslateIsometry iso = translate_isometry(o.ell, grid, shell);
        std::unique_ptr<ZRotator> rotator;
        if (name == "exact")
            rotator = std::make_unique<ExactZRotator>(iso);
        else
            rotator = std::make_unique<ShearZRotator>(grid);
        for (int m = -o.ell; m <= o.ell; ++m) {
            LatticeState state = LatticeState::zero(grid);
            if (name == "exact") {
                for (size_t i = 0; i < iso.support.size(); ++i)
                    state.amps[iso.support[i]] = iso.cols(i, m + o.ell);
            } else {
                state = sample_ylm_state(o.ell, m, grid, shell);
            }
            PhaseEstimate est = estimate_m(state, o.ell, t, *rotator);
            double p_correct = est.distribution[outcome_of_m(m, t)];

            CompactState basis = CompactState::basis(o.ell, m);
            TaggedState tagged = name == "exact" ? tagged_from_isometry(basis, iso)
                                                 : translate_with_tag(basis, grid, shell);
            UncomputeResult unc = uncompute_m(tagged, t, *rotator);
            out.stream() << o.ell << "," << m << "," << o.n << "," << t << "," << name << ","
                         << fmt(p_correct) << "," << fmt(unc.leakage) << "\n";
        }
    };
    if (o.backend == "exact" || o.backend == "both")
        run_backend("exact");
    if (o.backend == "shear" || o.backend == "both")
        run_backend("shear");
    std::cerr << "qpe-check: done\n";
    return 0;
}

// ----------------------------------------------------------- hyper-hadamard

struct HyperOpts {
    int n_qubits = 4;
    std::string out = "-";
};

int do_hyper_hadamard(const HyperOpts &o) {
    Issues issues;
    issues.check(o.n_qubits >= 1 && o.n_qubits <= 30, "N", "must be in [1, 30]");
    issues.require_empty();

    Eigen::MatrixXd m = hyper_hadamard(o.n_qubits);
    OutFile out(o.out);
    write_csv_header(out.stream(), "hyper-hadamard", {{"N", std::to_string(o.n_qubits)}});
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c)
            out.stream() << (c ? "," : "") << fmt(m(r, c));
        out.stream() << "\n";
    }
    if (o.n_qubits <= 12) {
        Eigen::Matrix2cd h;
        h << 1, 1, 1, -1;
        h /= std::sqrt(2.0);
        Eigen::MatrixXcd brute = symmetric_restrict(h, o.n_qubits);
        double dev = (brute - m.cast<cplx>()).cwiseAbs().maxCoeff();
        out.stream() << "# max_deviation_from_bruteforce=" << fmt(dev) << "\n";
        std::cerr << "hyper-hadamard: N=" << o.n_qubits << " deviation=" << fmt(dev) << "\n";
    } else {
        std::cerr << "hyper-hadamard: N=" << o.n_qubits << " (brute-force check skipped)\n";
    }
    return 0;
}

// --------------------------------------------------------------- kicked-top

struct TopOpts {
    int j = 4, steps = 5, n = 64, init_m = 1000;
    double c = 3.0, p = kPi / 2, r0 = -1, width = 3;
    bool kick_first = false, scaled_kick = false;
    std::string backend = "lattice", mode = "isometry", out = "-";
};

int do_kicked_top(const TopOpts &o) {
    Issues issues;
    issues.check(o.j >= 0 && o.j <= (o.backend == "lattice" ? 8 : 64), "j",
                 o.backend == "lattice" ? "must be in [0, 8] for lattice runs"
                                        : "must be in [0, 64]");
    issues.check(o.steps >= 0, "steps", "must be nonnegative");
    issues.check(o.backend == "exact" || o.backend == "lattice", "backend",
                 "must be exact or lattice");
    if (o.backend == "lattice")
        check_grid_shell(issues, o.n, o.r0 < 0 ? 0.35 * o.n : o.r0, o.width);
    int init = o.init_m == 1000 ? o.j : o.init_m;
    issues.check(std::abs(init) <= o.j, "init-m", "must satisfy |m| <= j");
    issues.require_empty();

    KickedTopParams params{o.j, o.c, o.p, o.steps, o.kick_first, o.scaled_kick};
    PipelineConfig cfg{o.j, o.n, o.r0, o.width, parse_mode(o.mode), RotationBackend::Shear, -1};
    CompactState initial = CompactState::basis(o.j, init);
    TopBackend second = o.backend == "exact" ? TopBackend::Exact : TopBackend::Lattice;
    auto series = kicked_top_run(initial, params, TopBackend::Exact, second,
                                 second == TopBackend::Lattice ? &cfg : nullptr);

    OutFile out(o.out);
    write_csv_header(out.stream(), "kicked-top",
                     {{"j", std::to_string(o.j)},
                      {"c", fmt(o.c)},
                      {"p", fmt(o.p)},
                      {"steps", std::to_string(o.steps)},
                      {"backend", o.backend},
                      {"n", std::to_string(o.n)},
                      {"init_m", std::to_string(init)},
                      {"kick_first", o.kick_first ? "true" : "false"},
                      {"scaled_kick", o.scaled_kick ? "true" : "false"}});
    out.stream() << "step,fidelity,jz_exact,jz_lattice,leakage\n";
    for (const auto &r : series)
        out.stream() << r.step << "," << fmt(r.fidelity) << "," << fmt(r.jz_a) << ","
                     << fmt(r.jz_b) << "," << fmt(r.leakage) << "\n";
    std::cerr << "kicked-top: " << o.steps << " steps, final fidelity "
              << fmt(series.back().fidelity) << "\n";
    return 0;
}

// ----------------------------------------------------------------- selftest

int do_selftest() {
    struct Check {
        const char *name;
        bool ok;
    };
    std::vector<Check> checks;
    auto add = [&](const char *name, bool ok) { checks.push_back({name, ok}); };

    add("wigner identity rotation is the identity matrix",
        (wigner_oracle(5, RotationSpec::identity()).entries -
         Eigen::MatrixXcd::Identity(11, 11))
                .cwiseAbs()
                .maxCoeff() < 1e-12);

    {
        std::mt19937_64 rng(7);
        WignerMatrix d = wigner_oracle(3, random_rotation(rng));
        add("wigner matrix unitary",
            (d.entries.adjoint() * d.entries - Eigen::MatrixXcd::Identity(7, 7))
                    .cwiseAbs()
                    .maxCoeff() < 1e-10);
    }

    add("Y00 is 1/sqrt(4 pi)",
        std::abs(assoc_legendre_norm(0, 0, 0.3) - 1.0 / std::sqrt(4.0 * kPi)) < 1e-12);

    {
        CompactState s = CompactState::basis(2, 1);
        CompactState r = exact_rotate(s, RotationSpec::euler(kPi / 2, 0, 0));
        add("z-rotation is diagonal phase e^{-im phi}",
            std::abs(r.amp(1) - std::exp(cplx(0, -kPi / 2))) < 1e-12);
    }

    {
        Grid3 g(16);
        LatticePermutation sh = shear_2d(g, Axis::X, Axis::Y, 0.7);
        add("shear composed with its inverse is the identity",
            sh.then(shear_2d(g, Axis::X, Axis::Y, -0.7)).is_identity());
        add("zero shear is the identity", shear_2d(g, Axis::X, Axis::Y, 0.0).is_identity());
        LatticePermutation q = rotation_90(g, Axis::Y, 1);
        add("four quarter-turns are the identity",
            q.then(q).then(q).then(q).is_identity());
    }

    {
        TargetDensity uniform = TargetDensity::normalized(std::vector<double>(16, 1.0));
        PrepPlan plan = build_prep_plan(uniform);
        bool angles_ok = true;
        for (const auto &tbl : plan.angles)
            for (double a : tbl)
                angles_ok = angles_ok && std::abs(a - kPi / 4) < 1e-12;
        add("uniform density gives all cascade angles pi/4", angles_ok);
        std::vector<double> amps = apply_prep(plan);
        bool amp_ok = true;
        for (double a : amps)
            amp_ok = amp_ok && std::abs(a - 0.25) < 1e-12;
        add("uniform cascade prepares the uniform superposition", amp_ok);
        add("interval refinement identity",
            interval_sum(uniform, 4, 0) ==
                interval_sum(uniform, 3, 0) + interval_sum(uniform, 3, 1));
    }

    {
        Eigen::MatrixXd h1 = hyper_hadamard(1);
        add("hyper-Hadamard at N=1 is the Hadamard",
            std::abs(h1(0, 0) - 1 / std::sqrt(2.0)) < 1e-15 &&
                std::abs(h1(1, 1) + 1 / std::sqrt(2.0)) < 1e-15);
        Eigen::MatrixXd h6 = hyper_hadamard(6);
        add("hyper-Hadamard is involutory",
            (h6 * h6 - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
    }

    {
        Eigen::VectorXcd top = add_translate(2, 1, 1);
        add("top-weight M splits into a single term",
            std::abs(top(8) - cplx(1, 0)) < 1e-15 && top.norm() > 0.999999);
    }

    add("zero kick strength is the identity",
        std::abs(kick_phase(CompactState::basis(3, 2), 0.0).amp(2) - cplx(1, 0)) < 1e-15);

    {
        std::mt19937_64 rng(3);
        CompactState s = CompactState::random(2, rng);
        PipelineConfig cfg{2, 32};
        PipelineResult res = rotate_via_lattice(s, RotationSpec::euler(0.4, 0.0, -1.1), cfg);
        add("beta=0 pipeline rotation is exact", std::abs(res.report.fidelity - 1.0) < 1e-12);
    }

    int failed = 0;
    for (const Check &c : checks) {
        std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << "\n";
        if (!c.ok)
            ++failed;
    }
    std::cout << "selftest: " << (checks.size() - failed) << "/" << checks.size() << " passed\n";
    return failed ? 2 : 0;
}

} // namespace

int run(const std::vector<std::string> &args) {
    CLI::App app{"su2lat: lattice-encoded SU(2) rotations on a compact angular-momentum "
                 "register, with exact oracles"};
    app.set_config("--config", "", "key = value config file ([subcommand] sections); "
                                   "command-line flags override file values");
    app.require_subcommand(1);

    RotateOpts rot;
    CLI::App *c_rot = app.add_subcommand("rotate", "one pipeline rotation, JSON report");
    c_rot->add_option("--ell", rot.ell, "angular momentum");
    c_rot->add_option("--n", rot.n, "grid sites per axis (power of two)");
    c_rot->add_option("--alpha", rot.alpha, "Euler alpha (z)");
    c_rot->add_option("--beta", rot.beta, "Euler beta (y)");
    c_rot->add_option("--gamma", rot.gamma, "Euler gamma (z)");
    c_rot->add_option("--r0", rot.r0, "shell radius (default 0.35*n)");
    c_rot->add_option("--width", rot.width, "shell width");
    c_rot->add_option("--mode", rot.mode, "isometry|circuit");
    c_rot->add_option("--backend", rot.backend, "shear|exact");
    c_rot->add_option("--t-bits", rot.t_bits, "QPE ancilla bits (-1 = minimal)");
    c_rot->add_option("--seed", rot.seed, "seed for the random input state");
    c_rot->add_option("--out", rot.out, "output path (- = stdout)");

    SweepOpts sw;
    CLI::App *c_sw = app.add_subcommand("fidelity-sweep", "median fidelity over grid sizes, CSV");
    c_sw->add_option("--ell", sw.ell);
    c_sw->add_option("--n", sw.ns, "grid sizes")->delimiter(',');
    c_sw->add_option("--beta", sw.betas, "y-rotation angles")->delimiter(',');
    c_sw->add_option("--samples", sw.samples, "seeded random input states per point");
    c_sw->add_option("--mode", sw.mode);
    c_sw->add_option("--backend", sw.backend);
    c_sw->add_option("--r0", sw.r0);
    c_sw->add_option("--width", sw.width);
    c_sw->add_option("--seed", sw.seed);
    c_sw->add_option("--out", sw.out);

    ShearOpts sh;
    CLI::App *c_sh = app.add_subcommand("shear-check", "displacement stats over a theta grid, CSV");
    c_sh->add_option("--n", sh.n);
    c_sh->add_option("--points", sh.points);
    c_sh->add_option("--axis", sh.axis);
    c_sh->add_option("--out", sh.out);

    PrepOpts pr;
    CLI::App *c_pr = app.add_subcommand("prep-check", "cascade vs direct sampling deviation, CSV");
    c_pr->add_option("--ell-max", pr.ell_max);
    c_pr->add_option("--n", pr.n);
    c_pr->add_option("--r0", pr.r0);
    c_pr->add_option("--width", pr.width);
    c_pr->add_option("--out", pr.out);

    QpeOpts qp;
    CLI::App *c_qp = app.add_subcommand("qpe-check", "phase-estimation quality per m, CSV");
    c_qp->add_option("--ell", qp.ell);
    c_qp->add_option("--n", qp.n);
    c_qp->add_option("--t", qp.t, "ancilla bits (-1 = minimal)");
    c_qp->add_option("--backend", qp.backend, "shear|exact|both");
    c_qp->add_option("--r0", qp.r0);
    c_qp->add_option("--width", qp.width);
    c_qp->add_option("--out", qp.out);

    HyperOpts hh;
    CLI::App *c_hh = app.add_subcommand("hyper-hadamard", "symmetric-subspace Hadamard, CSV");
    c_hh->add_option("--N", hh.n_qubits, "qubit count");
    c_hh->add_option("--out", hh.out);

    TopOpts tp;
    CLI::App *c_tp = app.add_subcommand("kicked-top", "kicked-top fidelity series, CSV");
    c_tp->add_option("--j", tp.j, "spin size");
    c_tp->add_option("--c", tp.c, "kick strength");
    c_tp->add_option("--p", tp.p, "y-rotation angle");
    c_tp->add_option("--steps", tp.steps);
    c_tp->add_option("--backend", tp.backend, "exact|lattice");
    c_tp->add_option("--n", tp.n);
    c_tp->add_option("--r0", tp.r0);
    c_tp->add_option("--width", tp.width);
    c_tp->add_option("--init-m", tp.init_m, "initial basis state (default +j)");
    c_tp->add_flag("--kick-first", tp.kick_first, "apply the kick before the rotation");
    c_tp->add_flag("--scaled-kick", tp.scaled_kick, "use c/(2j) instead of raw c");
    c_tp->add_option("--out", tp.out);

    CLI::App *c_st = app.add_subcommand("selftest", "run the quick invariant suite");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_rot->parsed())
            return do_rotate(rot);
        if (c_sw->parsed())
            return do_sweep(sw);
        if (c_sh->parsed())
            return do_shear_check(sh);
        if (c_pr->parsed())
            return do_prep_check(pr);
        if (c_qp->parsed())
            return do_qpe_check(qp);
        if (c_hh->parsed())
            return do_hyper_hadamard(hh);
        if (c_tp->parsed())
            return do_kicked_top(tp);
        if (c_st->parsed())
            return do_selftest();
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

int run(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}

} // namespace su2lat::cli
