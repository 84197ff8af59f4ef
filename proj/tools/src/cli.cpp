#include "symdisk_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "symdisk/errors.hpp"
#include "symdisk/extend.hpp"
#include "symdisk/numrange.hpp"
#include "symdisk/realization.hpp"
#include "symdisk/variety.hpp"
#include "symdisk_cli/io.hpp"
#include "symdisk_cli/sweeps.hpp"

namespace symdisk::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt(Complex z) {
    if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z.real()))) return fmt(z.real());
    return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

std::string fmt_list(const std::vector<Complex>& zs) {
    std::string s = "(";
    for (std::size_t i = 0; i < zs.size(); ++i) s += (i ? ", " : "") + fmt(zs[i]);
    return s + ")";
}

std::vector<Complex> to_list(const ComplexVector& v) { return {v.data(), v.data() + v.size()}; }

void print_matrix(std::ostream& out, const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<Complex> row;
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out << "  " << fmt_list(row) << "\n";
    }
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

void emit_json(const JobConfig& cfg, const json& report) {
    if (!cfg.out.empty()) write_atomic(cfg.out, report.dump(2) + "\n");
}

// γ scaled so its largest-modulus entry is 1.
ComplexVector display_gamma(const ComplexVector& g) {
    Eigen::Index k = 0;
    g.cwiseAbs().maxCoeff(&k);
    return g / g(k);
}

}  // namespace

KernelMatrix load_kernel(const std::string& spec, const std::vector<GammaPoint>& nodes, const Tolerances& tol) {
    if (spec == "szego") return KernelMatrix::from_kernel(nodes, szego(), tol);
    if (spec.rfind("model:", 0) == 0) {
        const ExtensionModel m = model_from_matrix(parse_matrix(read_json_file(spec.substr(6))), tol);
        return KernelMatrix::from_kernel(nodes, model_kernel(m, tol), tol);
    }
    if (spec.rfind("table:", 0) == 0)
        return KernelMatrix::from_table(nodes, parse_matrix(read_json_file(spec.substr(6))), tol);
    throw InputError("unknown kernel spec \"" + spec + "\" (use szego, model:<file> or table:<file>)");
}

int cmd_classify(const JobConfig& cfg, std::ostream& out) {
    const ComplexMatrix f = parse_matrix(read_json_file(cfg.input));
    const PencilVariety v(f, cfg.tol);
    const CnuVerdict cnu = is_cnu(f, cfg.tol);
    const DistinguishedVerdict dist = is_distinguished(v, cfg.tol);
    const BivarPoly poly = defining_poly(v).normalized();
    const RegionAuditReport audit = region_audit(v, default_p_grid(), cfg.tol);
    const Spectrum spec = spectrum(f);

    out << "nu: " << fmt(v.numerical_radius()) << "\n";
    out << "spectrum: " << fmt_list(spec) << "\n";
    out << "cnu: " << (cnu.cnu ? "true" : "false") << "\n";
    out << "distinguished: " << (dist.distinguished ? "true" : "false");
    for (const auto& w : dist.witnesses) out << "; witness eigenvalue " << fmt(w);
    out << "\n";
    out << "defining polynomial: " << poly.to_string() << "\n";
    out << "region audit:";
    for (std::size_t r = 0; r < 5; ++r) out << " " << to_string(static_cast<Region>(r)) << "=" << audit.counts[r];
    out << " (" << (audit.cnu ? "strict" : "general") << ") " << verdict(audit.pass) << "\n";

    json report{{"nu", v.numerical_radius()},
                {"cnu", cnu.cnu},
                {"distinguished", dist.distinguished},
                {"polynomial", poly.to_string()},
                {"audit_pass", audit.pass}};
    json ws = json::array();
    for (const auto& w : dist.witnesses) ws.push_back(complex_json(w));
    report["witnesses"] = ws;
    json counts = json::object();
    for (std::size_t r = 0; r < 5; ++r) counts[std::string(to_string(static_cast<Region>(r)))] = audit.counts[r];
    report["region_counts"] = counts;
    emit_json(cfg, report);
    return audit.pass ? kOk : kNumericalError;
}

int cmd_pick(const JobConfig& cfg, std::ostream& out) {
    const PickData data = parse_pick_data(read_json_file(cfg.input));
    data.validate(cfg.tol);
    const KernelMatrix k = load_kernel(cfg.kernel, data.nodes, cfg.tol);
    const ComplexMatrix pick = pick_matrix(k, data.targets, cfg.tol);
    const PsdReport psd = psd_report(pick, cfg.tol);
    const bool is_psd = psd.min_eigenvalue >= -cfg.tol.psd * scale_of(pick);

    out << "kernel: " << cfg.kernel << "\n";
    out << "pick matrix:\n";
    print_matrix(out, pick);
    out << "min eigenvalue: " << fmt(psd.min_eigenvalue) << "\n";
    out << "psd: " << (is_psd ? "true" : "false") << "\n";
    json report{{"kernel", cfg.kernel}, {"pick", matrix_json(pick)}, {"min_eigenvalue", psd.min_eigenvalue}, {"psd", is_psd}};
    if (psd.null_vector) {
        const ComplexVector g = display_gamma(*psd.null_vector);
        out << "active: gamma ∝ " << fmt_list(to_list(g)) << "\n";
        json gj = json::array();
        for (Eigen::Index i = 0; i < g.size(); ++i) gj.push_back(complex_json(g(i)));
        report["gamma"] = gj;
    } else {
        out << "active: no (Pick matrix is nonsingular)\n";
    }
    if (!is_psd) {
        emit_json(cfg, report);
        out << "no certificate: the Pick matrix is not positive semidefinite for this kernel\n";
        return kNoCertificate;
    }

    const AdmissibilityReport a = admissibility_audit(k, cfg.tol.trunc, cfg.tol);
    out << "admissibility: " << verdict(a.pass) << " (|Mp|=" << fmt(a.norm_mp) << ", |Ms|=" << fmt(a.norm_ms)
        << ", nu(F')=" << fmt(a.nu_f) << ", isometry=" << fmt(a.isometry_defect) << ", intertwine_s="
        << fmt(a.intertwine_s) << ", tail=" << fmt(a.tail_bound) << ")\n";
    for (const auto& f : a.failures) out << "  failure: " << f << "\n";
    report["admissible"] = a.pass;
    report["audit"] = json{{"norm_mp", a.norm_mp},           {"norm_ms", a.norm_ms},
                           {"nu_f", a.nu_f},                 {"isometry_defect", a.isometry_defect},
                           {"intertwine_s", a.intertwine_s}, {"intertwine_p", a.intertwine_p},
                           {"tail_bound", a.tail_bound},     {"failures", a.failures}};
    emit_json(cfg, report);
    return a.pass ? kOk : kNumericalError;
}

int cmd_trace(const JobConfig& cfg, std::ostream& out, std::ostream& diag) {
    const PickData data = parse_pick_data(read_json_file(cfg.input));
    data.validate(cfg.tol);
    const KernelMatrix k = load_kernel(cfg.kernel, data.nodes, cfg.tol);
    const PsdReport psd = psd_report(pick_matrix(k, data.targets, cfg.tol), cfg.tol);
    if (!psd.null_vector) throw NoCertificateError("no active kernel found in family");
    const ComplexVector gamma = *psd.null_vector;
    const ExtensionModel m = build_extension(k, cfg.tol);
    const PencilVariety v(m.F, cfg.tol);

    for (std::size_t j = 0; j < m.nodes.size(); ++j) {
        const double room = 0.5 * (1.0 - std::abs(m.nodes[j].p));
        try {
            const SheetTrace t = branch_trace(m, j, std::min(5e-3, room), 20, cfg.tol);
            const TraceStep& last = t.steps.back();
            diag << "node " << j << ": branches=" << t.branch_count << " eps=" << fmt(t.epsilon)
                 << " |z-limit|=" << fmt(std::abs(last.z - t.z_limit)) << " value_error=" << fmt(last.value_error)
                 << " sum_error=" << fmt(last.sum_error) << "\n";
        } catch (const Error& e) {
            diag << "node " << j << ": branch trace unavailable (" << e.what() << ")\n";
        }
    }

    std::ostringstream csv;
    csv << "re_s,im_s,re_p,im_p,re_w,im_w,residual,sheet\n";
    std::size_t rows = 0, inconclusive = 0;
    for (const Complex p : disk_p_grid(cfg.grid_radius, cfg.grid_n)) {
        for (const Complex s : slice_points(v, p)) {
            const GammaPoint x{s, p};
            if (classify_region(x, cfg.tol.mod) != Region::OpenG) continue;
            const double residual = membership_residual(v, x);
            Complex w{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
            int sheet = 1;
            try {
                w = unique_value(m, k, gamma, data.targets, x, cfg.tol);
            } catch (const NumericalError&) {
                sheet = 0;
                ++inconclusive;
            }
            csv << csv_number(s.real()) << ',' << csv_number(s.imag()) << ',' << csv_number(p.real()) << ','
                << csv_number(p.imag()) << ',' << csv_number(w.real()) << ',' << csv_number(w.imag()) << ','
                << csv_number(residual) << ',' << sheet << "\n";
            ++rows;
        }
    }
    if (cfg.out.empty()) {
        out << csv.str();
    } else {
        write_atomic(cfg.out, csv.str());
    }
    diag << "rows: " << rows << " inconclusive: " << inconclusive << "\n";
    return kOk;
}

int cmd_realize(const JobConfig& cfg, std::ostream& out) {
    const json in = read_json_file(cfg.input);
    RealizationModel m;
    json report;
    if (in.is_object() && in.contains("f_values")) {
        require_keys(in, {"tau", "f_values", "nodes", "targets"}, "interpolation input");
        for (const char* key : {"tau", "nodes", "targets"})
            if (!in.contains(key)) throw InputError(std::string("interpolation input: missing \"") + key + "\"");
        const ComplexMatrix tau = parse_matrix(in.at("tau"));
        std::vector<GammaPoint> nodes;
        std::vector<ComplexMatrix> fs, ws;
        for (const auto& n : in.at("nodes")) nodes.push_back(parse_point(n));
        for (const auto& f : in.at("f_values")) fs.push_back(parse_matrix(f));
        for (const auto& w : in.at("targets"))
            ws.push_back(w.is_object() && w.contains("rows") ? parse_matrix(w) : ComplexMatrix::Constant(1, 1, parse_complex(w)));
        m = lurking_isometry_interpolant(tau, fs, nodes, ws, cfg.tol);
        out << "interpolant: built from " << nodes.size() << " nodes (state dimension " << m.state_dim() << ")\n";
        double worst = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j)
            worst = std::max(worst, (eval_model(m, nodes[j], cfg.tol) - ws[j]).norm());
        out << "node mismatch: " << fmt(worst) << "\n";
        report["node_mismatch"] = worst;
    } else {
        m = parse_model(in);
    }
    m.validate(cfg.tol);

    double max_norm = 0.0, max_mismatch = 0.0;
    bool defect_ok = true;
    for (const auto& x : sample_open_g(cfg.grid_radius, cfg.grid_n)) {
        try {
            max_norm = std::max(max_norm, op_norm(eval_model(m, x, cfg.tol)));
            max_mismatch = std::max(max_mismatch, inner_defect(m, x, cfg.tol).mismatch);
        } catch (const NumericalError& e) {
            defect_ok = false;
            out << "  at (" << fmt(x.s) << ", " << fmt(x.p) << "): " << e.what() << "\n";
        }
    }
    const BoundaryAudit b = boundary_unitarity_audit(m, cfg.boundary_n, cfg.tol);
    out << "max |Psi| on G samples: " << fmt(max_norm) << "\n";
    out << "inner-defect mismatch: " << fmt(max_mismatch) << " " << verdict(defect_ok) << "\n";
    out << "boundary defect: " << fmt(b.max_defect) << " over " << b.evaluated << " points (" << b.skipped
        << " skipped) " << verdict(b.pass) << "\n";
    report["model"] = model_json(m);
    report["max_norm"] = max_norm;
    report["inner_mismatch"] = max_mismatch;
    report["boundary_defect"] = b.max_defect;
    report["boundary_skipped"] = b.skipped;
    report["pass"] = defect_ok && b.pass;
    emit_json(cfg, report);
    return defect_ok && b.pass ? kOk : kNumericalError;
}

int cmd_verify(const JobConfig& cfg, std::ostream& out) {
    const auto size = [&](std::size_t dflt) { return cfg.count ? cfg.count : dflt; };
    const std::vector<SweepResult> results{
        equivalence_sweep(cfg.seed, size(200), 5, cfg.tol),
        pu_sweep(cfg.seed + 1, size(100), 4, cfg.tol),
        realization_sweep(cfg.seed + 2, size(50), cfg.tol),
    };
    json report = json::array();
    bool all = true;
    for (const auto& r : results) {
        out << r.name << ": " << verdict(r.pass) << " instances=" << r.instances << " cnu=" << r.positives
            << " disagreements=" << r.disagreements << " r2_hits=" << r.r2_hits << " worst=" << fmt(r.worst) << "\n";
        for (const auto& n : r.notes) out << "  " << n << "\n";
        report.push_back(json{{"name", r.name},
                              {"pass", r.pass},
                              {"instances", r.instances},
                              {"cnu", r.positives},
                              {"disagreements", r.disagreements},
                              {"r2_hits", r.r2_hits},
                              {"worst", r.worst},
                              {"notes", r.notes}});
        all = all && r.pass;
    }
    emit_json(cfg, json{{"seed", cfg.seed}, {"sweeps", report}});
    return all ? kOk : kNumericalError;
}

namespace {

void apply_config_file(JobConfig& cfg, const std::string& path) {
    const json j = read_json_file(path);
    require_keys(j, {"input", "kernel", "out", "grid_radius", "grid_n", "boundary_n", "seed", "count", "tolerances"},
                 "config");
    const auto num = [&](const char* key) {
        if (!j.at(key).is_number()) throw InputError(std::string("config: \"") + key + "\" must be a number");
        return j.at(key).get<double>();
    };
    const auto count = [&](const char* key) {
        if (!j.at(key).is_number_unsigned()) throw InputError(std::string("config: \"") + key + "\" must be a non-negative integer");
        return j.at(key).get<std::uint64_t>();
    };
    if (j.contains("input")) cfg.input = j.at("input").get<std::string>();
    if (j.contains("kernel")) cfg.kernel = j.at("kernel").get<std::string>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("grid_radius")) cfg.grid_radius = num("grid_radius");
    if (j.contains("grid_n")) cfg.grid_n = count("grid_n");
    if (j.contains("boundary_n")) cfg.boundary_n = count("boundary_n");
    if (j.contains("seed")) cfg.seed = count("seed");
    if (j.contains("count")) cfg.count = count("count");
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (!t.is_object()) throw InputError("config: \"tolerances\" must be an object");
        for (const auto& [name, value] : t.items()) {
            if (!value.is_number() || !cfg.tol.set(name, value.get<double>()))
                throw InputError("config: unknown or invalid tolerance \"" + name + "\"");
        }
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    JobConfig cfg;
    try {
        // --tol-<name>=<value> is open-ended, so it is peeled off before CLI11 sees the arguments.
        std::vector<std::string> rest;
        std::vector<std::pair<std::string, double>> tol_overrides;
        for (int i = 1; i < argc; ++i) {
            const std::string a = argv[i];
            if (a.rfind("--tol-", 0) != 0) {
                rest.push_back(a);
                continue;
            }
            const auto eq = a.find('=');
            if (eq == std::string::npos) throw InputError("expected --tol-<name>=<value>, got " + a);
            const std::string name = a.substr(6, eq - 6);
            double value = 0.0;
            try {
                std::size_t used = 0;
                value = std::stod(a.substr(eq + 1), &used);
                if (used != a.size() - eq - 1) throw std::invalid_argument(a);
            } catch (const std::exception&) {
                throw InputError("invalid tolerance value in " + a);
            }
            tol_overrides.emplace_back(name, value);
        }

        CLI::App app{"Distinguished varieties and Pick interpolation on the symmetrized bidisk"};
        app.require_subcommand(1, 1);
        std::string config_path;
        std::string input, kernel, out_path;
        double grid_radius = cfg.grid_radius;
        std::size_t grid_n = cfg.grid_n, boundary_n = cfg.boundary_n, count = cfg.count;
        std::uint64_t seed = cfg.seed;
        app.add_option("--config", config_path, "JSON job configuration");

        const auto common = [&](CLI::App* sub) {
            sub->add_option("--input", input, "input JSON file (or \"input\" in --config)");
            sub->add_option("--out", out_path, "output file (written atomically)");
        };
        auto* classify = app.add_subcommand("classify", "numerical radius, c.n.u. and variety checks for a matrix");
        common(classify);
        auto* pick = app.add_subcommand("pick", "Pick matrix, active-kernel test and admissibility audit");
        common(pick);
        pick->add_option("--kernel", kernel, "szego | model:<file> | table:<file>");
        auto* trace = app.add_subcommand("trace", "uniqueness values along the distinguished variety (CSV)");
        common(trace);
        trace->add_option("--kernel", kernel, "szego | model:<file> | table:<file>");
        trace->add_option("--grid-radius", grid_radius, "p-grid radius");
        trace->add_option("--grid-n", grid_n, "p-grid resolution");
        auto* realize = app.add_subcommand("realize", "evaluate and audit a realization, or build one by interpolation");
        common(realize);
        realize->add_option("--grid-radius", grid_radius, "sample radius inside G");
        realize->add_option("--grid-n", grid_n, "sample resolution inside G");
        realize->add_option("--boundary-n", boundary_n, "distinguished-boundary grid size");
        auto* verify = app.add_subcommand("verify", "seeded randomized sweeps of the structural theorems");
        verify->add_option("--seed", seed, "random seed");
        verify->add_option("--count", count, "instances per sweep (0 = defaults)");
        verify->add_option("--out", out_path, "JSON report");
        for (auto* sub : {classify, pick, trace, realize}) sub->add_option("--seed", seed, "random seed");

        std::vector<std::string> reversed(rest.rbegin(), rest.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::CallForHelp& e) {
            out << app.help();
            return kOk;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << "\n";
            return kInputError;
        }

        if (!config_path.empty()) apply_config_file(cfg, config_path);
        for (const auto& [name, value] : tol_overrides)
            if (!cfg.tol.set(name, value)) throw InputError("unknown tolerance --tol-" + name);
        const auto given = [&](CLI::App* sub, const char* flag) {
            const CLI::Option* o = sub->get_option_no_throw(flag);
            return o != nullptr && o->count() > 0;
        };
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        if (given(sub, "--input")) cfg.input = input;
        if (cfg.command == "pick" || cfg.command == "trace")
            if (given(sub, "--kernel")) cfg.kernel = kernel;
        if (given(sub, "--out")) cfg.out = out_path;
        if (cfg.command == "trace" || cfg.command == "realize") {
            if (given(sub, "--grid-radius")) cfg.grid_radius = grid_radius;
            if (given(sub, "--grid-n")) cfg.grid_n = grid_n;
        }
        if (cfg.command == "realize" && given(sub, "--boundary-n")) cfg.boundary_n = boundary_n;
        if (given(sub, "--seed")) cfg.seed = seed;
        if (cfg.command == "verify" && given(sub, "--count")) cfg.count = count;
        if (!(cfg.grid_radius > 0.0) || cfg.grid_n == 0) throw InputError("grid radius and size must be positive");
        if (cfg.command != "verify" && cfg.input.empty()) throw InputError(cfg.command + ": no input file given");

        if (cfg.command == "classify") return cmd_classify(cfg, out);
        if (cfg.command == "pick") return cmd_pick(cfg, out);
        if (cfg.command == "trace") return cmd_trace(cfg, out, cfg.out.empty() ? err : out);
        if (cfg.command == "realize") return cmd_realize(cfg, out);
        return cmd_verify(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::InvalidInput:
                return kInputError;
            case ErrorKind::Numerical:
                return kNumericalError;
            case ErrorKind::NoCertificate:
                return kNoCertificate;
        }
        return kNumericalError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace symdisk::cli
