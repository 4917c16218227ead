// Command line front end: build a model, run a suite, print the report.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dosc/algebra.hpp"
#include "dosc/clifford.hpp"
#include "dosc/fockspace3d.hpp"
#include "dosc/oscillator.hpp"
#include "dosc/spectrum.hpp"

using namespace dosc;

namespace {

struct RunConfig {
    std::string command;
    int dim = 1;
    double mass = 1.0;
    double omega = 1.0;
    int n_max = -1;
    std::string algebra = "all";
    std::string format = "text";
    double tol = 1e-10;
    bool tol_given = false;
    double edge_tol = 1e-8;
    unsigned seed = 20240601;
    std::string out;
    int n_build = -1;
    bool printed = false;
    std::string basis_out;
};

json config_json(const RunConfig& c, const OscillatorModel& m) {
    json j;
    j["dim"] = c.dim;
    j["mass"] = c.mass;
    j["omega"] = c.omega;
    j["n_max"] = m.cutoff.n_max;
    j["algebra"] = c.algebra;
    j["tol"] = c.tol;
    j["edge_tol"] = c.edge_tol;
    j["seed"] = c.seed;
    if (c.printed) j["printed"] = true;
    return j;
}

std::vector<AlgebraSpec> pick_specs(const RunConfig& c) {
    std::vector<AlgebraSpec> out;
    if (c.algebra == "all") {
        for (auto& s : builtin_specs())
            if (s.dim == c.dim) out.push_back(s);
        return out;
    }
    const AlgebraSpec& s = builtin_spec(c.algebra);
    if (s.dim != c.dim)
        throw ConfigError(s.name + " requires --dim " + std::to_string(s.dim) + ", got " + std::to_string(c.dim));
    out.push_back(s);
    return out;
}

// ---- text and csv rendering ----

std::string status(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string check_line(const CheckResult& c) {
    std::string s = "  " + status(c.pass()) + "  " + fmt_double(c.residual) + " < " + fmt_double(c.tol);
    if (!c.expected) s += " (reported)";
    else if (!*c.expected) s += " (expected to fail)";
    s += "  " + c.id;
    if (!c.note.empty()) s += "  [" + c.note + "]";
    return s + "\n";
}

std::string report_text(const VerificationReport& r, bool all_checks) {
    std::string s = "== " + r.name + ": " + status(r.pass()) + " (" + std::to_string(r.checks.size()) + " checks, " +
                    std::to_string(r.failures()) + " failing, max residual " + fmt_double(r.max_residual()) + ")\n";
    for (const auto& c : r.checks)
        if (all_checks || !c.pass()) s += check_line(c);
    return s;
}

std::string csv_field(const std::string& x) {
    std::string s = "\"";
    for (char ch : x) s += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return s + "\"";
}

std::string reports_csv(const std::vector<VerificationReport>& reps) {
    std::ostringstream o;
    o.precision(6);
    o << std::scientific;
    o << "report,group,id,residual,tol,expected,pass,depth,note\n";
    for (const auto& r : reps)
        for (const auto& c : r.checks)
            o << csv_field(r.name) << ',' << csv_field(c.group) << ',' << csv_field(c.id) << ',' << c.residual << ','
              << c.tol << ',' << (c.expected ? (*c.expected ? "true" : "false") : "null") << ','
              << (c.pass() ? "true" : "false") << ',' << c.depth << ',' << csv_field(c.note) << '\n';
    return o.str();
}

std::string spectrum_text(const SpectrumReport& r) {
    std::ostringstream o;
    char buf[256];
    o << "spectrum: " << status(r.pass) << " (trusted " << r.trusted_count << ", max error " << fmt_double(r.max_error)
      << (r.abs_energy ? ", matched on |E|" : "") << ")\n";
    std::snprintf(buf, sizeof buf, "%14s %14s %10s %5s %5s  %s\n", "E_analytic", "E_numeric", "abs_err", "mult",
                  "found", "labels");
    o << buf;
    for (const auto& m : r.matches) {
        std::snprintf(buf, sizeof buf, "%14.9f %14.9f %10.2e %5d %5d  ", m.analytic, m.numeric, m.abs_err,
                      m.multiplicity, m.numeric_count);
        o << buf << m.labels << "\n";
    }
    for (double u : r.unmatched) o << "unmatched trusted eigenvalue " << fmt_double(u, 10) << "\n";
    return o.str();
}

std::string parastat_text(const VerificationReport& all, int dim) {
    std::ostringstream o;
    o << "parastatistics audit, dim " << dim << ": " << status(all.pass()) << "\n";
    o << "  holds = relation satisfied, fails = violated; * marks a disagreement with the expected outcome\n";
    for (const auto& fam : parastat_families(dim)) {
        o << "  " << fam << "\n";
        for (const auto& c : all.checks) {
            if (c.id.rfind(fam + " ", 0) != 0) continue;
            const std::string schema = c.id.substr(fam.size() + 1);
            char buf[160];
            std::snprintf(buf, sizeof buf, "    %-18s %-6s %-11s %s%s\n", schema.c_str(), c.holds() ? "holds" : "fails",
                          c.expected ? (*c.expected ? "expect hold" : "expect fail") : "reported",
                          fmt_double(c.residual).c_str(), c.pass() ? "" : "  *");
            o << buf;
        }
    }
    return o.str();
}

// ---- suites ----

struct Output {
    json body = json::object();
    std::vector<VerificationReport> reports;
    std::string text;
    std::string csv;
    bool pass = true;
};

void add_reports(Output& out, const std::vector<VerificationReport>& reps, bool all_checks) {
    for (const auto& r : reps) {
        out.reports.push_back(r);
        out.text += report_text(r, all_checks);
        out.pass = out.pass && r.pass();
    }
}

std::vector<VerificationReport> algebra_reports(const RunConfig& c, const OperatorRegistry& reg) {
    VerifyOptions opt;
    opt.tol = c.tol;
    opt.use_printed = c.printed;
    std::vector<VerificationReport> out;
    for (const auto& s : pick_specs(c)) {
        VerificationReport r = verify_algebra(s, reg, opt);
        if (c.printed) r.name += " (printed)";
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<VerificationReport> jacobi_reports(const RunConfig& c, const OperatorRegistry& reg) {
    std::vector<VerificationReport> out;
    for (const auto& s : pick_specs(c)) out.push_back(colour_jacobi_sweep(s, reg, c.tol));
    return out;
}

std::vector<VerificationReport> identity_reports(const RunConfig& c, const OperatorRegistry& reg) {
    VerifyOptions opt;
    opt.tol = c.tol;
    opt.use_printed = c.printed;
    std::vector<VerificationReport> out;
    out.push_back(verify_clifford(dirac_representation(c.dim)));
    out.push_back(verify_relations(c.printed ? "identities (printed)" : "identities", model_identities(c.dim), reg, opt));
    out.push_back(adjoint_report(reg, c.dim));
    if (c.dim == 1) out.push_back(vacuum_report_1d(reg));
    if (c.dim == 2) {
        out.push_back(verify_relations(c.printed ? "witnesses (printed)" : "witnesses", witnesses_2d(c.printed), reg, opt));
        out.push_back(chiral_projector_report(reg, 50, c.seed, c.tol));
    }
    if (c.dim == 3) {
        const RemarkRank rr = remark_rank(reg);
        VerificationReport r;
        r.name = "remark rank";
        CheckResult ch;
        ch.id = "x_1..x_" + std::to_string(rr.generated) + " linearly independent";
        ch.group = "rank";
        ch.residual = rr.generated - rr.rank;
        ch.tol = 0.5;
        ch.note = "rank " + std::to_string(rr.rank);
        r.add(ch);
        out.push_back(r);
    }
    return out;
}

std::vector<VerificationReport> fock_reports(const RunConfig& c, const OperatorRegistry& reg, json* lines) {
    if (c.dim != 3) throw ConfigError("fock-basis requires --dim 3");
    const int n_build = c.n_build >= 0 ? c.n_build : std::min(5, reg.n_max() - 2);
    const FockBasis3D b = build_basis(reg, n_build);
    if (lines) {
        *lines = json::array();
        for (const auto& [lab, v] : b.vectors) lines->push_back(basis_line(lab, v));
    }
    return {verify_basis(reg, b), verify_actions(reg, b), injectivity_report(reg, c.seed)};
}

Output run(const RunConfig& c) {
    const OscillatorModel model = OscillatorModel::make(c.dim, c.mass, c.omega, c.n_max);
    Output out;
    out.body["schema"] = 1;
    out.body["command"] = c.command;
    out.body["config"] = config_json(c, model);

    if (c.command == "spectrum") {
        const double tol = c.tol_given ? c.tol : 1e-8;
        out.body["config"]["tol"] = tol;
        const SpectrumReport r = spectrum_report(model, tol, c.edge_tol);
        out.body["spectrum"] = to_json(r);
        out.text = spectrum_text(r);
        out.csv = to_csv(r);
        out.pass = r.pass;
        out.body["pass"] = out.pass;
        return out;
    }

    const OperatorRegistry reg = build_registry(model);
    if (c.command == "verify-algebra") {
        add_reports(out, algebra_reports(c, reg), true);
    } else if (c.command == "jacobi") {
        add_reports(out, jacobi_reports(c, reg), true);
    } else if (c.command == "parastat-audit") {
        const VerificationReport r = parastatistics_audit_all(reg, c.dim, c.tol);
        out.reports.push_back(r);
        out.text = parastat_text(r, c.dim);
        out.pass = r.pass();
    } else if (c.command == "fock-basis") {
        json lines;
        add_reports(out, fock_reports(c, reg, c.basis_out.empty() ? nullptr : &lines), true);
        if (!c.basis_out.empty()) {
            std::ofstream f(c.basis_out, std::ios::binary);
            if (!f) throw ConfigError("cannot write " + c.basis_out);
            for (const auto& l : lines) f << l.dump() << "\n";
        }
    } else if (c.command == "report-all") {
        add_reports(out, identity_reports(c, reg), false);
        add_reports(out, algebra_reports(c, reg), false);
        {
            RunConfig all = c;
            all.algebra = "all";
            add_reports(out, jacobi_reports(all, reg), false);
        }
        add_reports(out, {parastatistics_audit_all(reg, c.dim, c.tol)}, false);
        if (c.dim == 3) add_reports(out, fock_reports(c, reg, nullptr), false);
        const SpectrumReport s = spectrum_report(model, 1e-8, c.edge_tol);
        out.body["spectrum"] = to_json(s);
        out.text += "== spectrum: " + status(s.pass) + " (trusted " + std::to_string(s.trusted_count) +
                    ", max error " + fmt_double(s.max_error) + ")\n";
        out.pass = out.pass && s.pass;
    }
    json reps = json::array();
    for (const auto& r : out.reports) reps.push_back(to_json(r));
    out.body["reports"] = reps;
    out.body["pass"] = out.pass;
    out.csv = reports_csv(out.reports);
    out.text += std::string("overall: ") + status(out.pass) + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirac oscillator on truncated Fock spaces"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* s) {
        s->add_option("--dim", cfg.dim, "spatial dimension")->check(CLI::Range(1, 3));
        s->add_option("--mass", cfg.mass, "mass m");
        s->add_option("--omega", cfg.omega, "frequency omega");
        s->add_option("--n-max", cfg.n_max, "occupation cutoff per mode (default 40, 16, 8)");
        s->add_option("--algebra", cfg.algebra, "algebra name or all");
        s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_option("--tol", cfg.tol, "residual tolerance");
        s->add_option("--edge-tol", cfg.edge_tol, "edge weight below which an eigenvector is trusted");
        s->add_option("--seed", cfg.seed, "seed for randomised checks");
        s->add_option("--out", cfg.out, "also write the report to this file");
    };
    std::vector<std::pair<std::string, std::string>> cmds{
        {"verify-algebra", "verify relation tables and closure"},
        {"jacobi", "colour Jacobi identity over all generator triples"},
        {"spectrum", "numeric spectrum against the closed forms"},
        {"fock-basis", "build and check the 3D Fock basis"},
        {"parastat-audit", "statistics relations of the ladder families"},
        {"report-all", "every suite for one dimension"},
    };
    for (const auto& [name, help] : cmds) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        if (name == "verify-algebra" || name == "report-all")
            s->add_flag("--printed", cfg.printed, "check the forms as printed instead of the corrected ones");
        if (name == "fock-basis") {
            s->add_option("--n-build", cfg.n_build, "largest n to build (default min(5, n_max-2))");
            s->add_option("--basis-out", cfg.basis_out, "write the basis vectors as JSON lines");
        }
        s->callback([&cfg, s, name = name] {
            cfg.command = name;
            cfg.tol_given = s->count("--tol") > 0;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Output out = run(cfg);
        std::string bytes;
        if (cfg.format == "json") bytes = out.body.dump(2) + "\n";
        else if (cfg.format == "csv") bytes = out.csv;
        else bytes = out.text;
        std::cout << bytes;
        if (!cfg.out.empty()) {
            std::ofstream f(cfg.out, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot write " << cfg.out << "\n";
                return 2;
            }
            f << bytes;
        }
        return out.pass ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
