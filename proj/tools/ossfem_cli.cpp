// Command-line front end: mesh generation, eigenvalue/source solves,
// convergence studies, and VTK export.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 solver failure,
// 4 study aborted with partial results.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "ossfem/eigsolve.hpp"
#include "ossfem/fields_io.hpp"
#include "ossfem/mesh.hpp"
#include "ossfem/mesh_io.hpp"
#include "ossfem/study.hpp"
#include "ossfem/three_field.hpp"
#include "ossfem/two_field.hpp"
#include "ossfem/vtk.hpp"

namespace {

using namespace ossfem;

Mesh make_mesh(const std::string& domain, int n, int target_vertices) {
    const DomainTag tag = domain_tag_from_string(domain);
    if (tag == DomainTag::cracked_square) {
        if (target_vertices <= 0)
            throw std::invalid_argument("cracked domain needs --target-vertices");
        return cracked_square_mesh(target_vertices);
    }
    if (n <= 0) throw std::invalid_argument("domain '" + domain + "' needs --n >= 1");
    return tag == DomainTag::square ? unit_square_mesh(n) : l_shaped_mesh(n);
}

int cmd_mesh(const std::string& domain, int n, int target_vertices, const std::string& out) {
    const Mesh mesh = make_mesh(domain, n, target_vertices);
    save_mesh(mesh, out);
    const MeshStats s = mesh_stats(mesh);
    std::printf("vertices = %d\ntriangles = %d\nh_max = %s\nmin_angle_deg = %s\n", s.vertex_count,
                s.triangle_count, format_double(s.h_max).c_str(),
                format_double(s.min_angle_deg).c_str());
    return 0;
}

struct SolveArgs {
    std::string formulation = "two-field";
    std::string domain = "square";
    int n = 0;
    int target_vertices = 0;
    int order = 1;
    int k = 1;
    double mu = 1.0;
    double c1 = 0.25, c2 = 0.1, c3 = 1.0, c4 = 0.1, c5 = 0.25;
    std::string out_prefix;
    bool probe_large_constants = false;
};

void write_mode_fields(const SolveArgs& args, int mode, double lambda,
                       const std::vector<double>& velocity, const std::vector<double>& pressure,
                       const std::vector<double>* stress) {
    FieldsFile f;
    f.order = args.order;
    f.mode = mode;
    f.lambda = lambda;
    f.fields.push_back({"velocity", 2, velocity});
    f.fields.push_back({"pressure", 1, pressure});
    if (stress) f.fields.push_back({"stress", 3, *stress});
    save_fields(f, args.out_prefix + ".mode" + std::to_string(mode) + ".fields");
}

int cmd_solve(const SolveArgs& args) {
    if (args.order != 1 && args.order != 2) throw std::invalid_argument("--order must be 1 or 2");
    if (args.k < 1) throw std::invalid_argument("--k must be >= 1");
    const Mesh mesh = make_mesh(args.domain, args.n, args.target_vertices);
    const Formulation form = formulation_from_string(args.formulation);

    if (args.probe_large_constants) {
        if (form != Formulation::three_field)
            throw std::invalid_argument("--probe-large-constants applies to the three-field solver");
        const ThreeFieldParams base{args.mu, args.c3, args.c4, args.c5};
        const ThreeFieldParams big{args.mu, 10.0 * args.c3, 10.0 * args.c4, 10.0 * args.c5};
        const auto r0 = solve_three_field_eigs(mesh, args.order, base, 10);
        const auto r1 = solve_three_field_eigs(mesh, args.order, big, 10);
        std::printf("# ten-times-constants probe (informational)\n");
        std::printf("mode  lambda(defaults)      lambda(10x)           rel-deviation\n");
        for (int i = 0; i < 10; ++i) {
            const double a = r0.solution.pairs[i].lambda;
            const double b = r1.solution.pairs[i].lambda;
            const double dev = (b - a) / a;
            std::printf("%4d  %-20s  %-20s  %s%s\n", i + 1, format_double(a).c_str(),
                        format_double(b).c_str(), format_double(dev).c_str(),
                        std::abs(dev) > 0.05 ? "  <-- deviates" : "");
        }
        return 0;
    }

    if (form == Formulation::two_field) {
        const TwoFieldParams p{args.mu, args.c1, args.c2};
        const auto r = solve_two_field_eigs(mesh, args.order, p, args.k);
        for (size_t i = 0; i < r.solution.pairs.size(); ++i) {
            const auto& pair = r.solution.pairs[i];
            std::printf("lambda_%zu = %s  (residual %s)\n", i + 1, format_double(pair.lambda).c_str(),
                        format_double(pair.residual).c_str());
            if (!args.out_prefix.empty())
                write_mode_fields(args, static_cast<int>(i + 1), pair.lambda, r.fields[i].velocity,
                                  r.fields[i].pressure, nullptr);
        }
    } else {
        const ThreeFieldParams p{args.mu, args.c3, args.c4, args.c5};
        const auto r = solve_three_field_eigs(mesh, args.order, p, args.k);
        for (size_t i = 0; i < r.solution.pairs.size(); ++i) {
            const auto& pair = r.solution.pairs[i];
            std::printf("lambda_%zu = %s  (residual %s)\n", i + 1, format_double(pair.lambda).c_str(),
                        format_double(pair.residual).c_str());
            if (!args.out_prefix.empty())
                write_mode_fields(args, static_cast<int>(i + 1), pair.lambda, r.fields[i].velocity,
                                  r.fields[i].pressure, &r.fields[i].stress);
        }
    }
    return 0;
}

int cmd_study(const std::string& config_path, const std::string& out_dir) {
    if (!std::filesystem::exists(config_path))
        throw std::invalid_argument("study config not found: " + config_path);
    const StudyConfig cfg = load_study_config(config_path);
    const StudyReport rep = run_convergence_study(cfg);

    const std::string stem = (std::filesystem::path(out_dir) / report_basename(cfg)).string();
    {
        std::ofstream csv(stem + ".csv");
        if (!csv) throw std::runtime_error("cannot write " + stem + ".csv");
        csv << emit_report_csv(rep);
    }
    {
        std::ofstream md(stem + ".md");
        if (!md) throw std::runtime_error("cannot write " + stem + ".md");
        md << emit_report_markdown(rep);
    }
    std::printf("%s: %zu rows", report_basename(cfg).c_str(), rep.rows.size());
    if (rep.slope) std::printf(", slope %s", format_double(*rep.slope).c_str());
    std::printf(", monotone %s\n", rep.monotone ? "yes" : "no");
    std::printf("wrote %s.csv and %s.md\n", stem.c_str(), stem.c_str());
    return 0;
}

int cmd_export(const std::string& fields_path, const std::string& mesh_path, const std::string& out) {
    std::string resolved = fields_path;
    if (!std::filesystem::exists(resolved) && std::filesystem::exists(resolved + ".fields"))
        resolved += ".fields";
    const FieldsFile fields = load_fields(resolved);
    const Mesh mesh = load_mesh(mesh_path);
    write_vtk(mesh, fields, out);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal-subscale stabilized finite elements for the two- and three-field "
                 "Stokes eigenvalue problems"};
    app.require_subcommand(1);

    // mesh
    auto* mesh_cmd = app.add_subcommand("mesh", "Generate a benchmark triangulation");
    std::string m_domain, m_out;
    int m_n = 0, m_tv = 0;
    mesh_cmd->add_option("--domain", m_domain, "square | lshape | cracked")->required();
    mesh_cmd->add_option("--n", m_n, "divisions per (short) side");
    mesh_cmd->add_option("--target-vertices", m_tv, "target vertex count (cracked)");
    mesh_cmd->add_option("--out", m_out, "output mesh file")->required();

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve a Stokes eigenproblem");
    SolveArgs s;
    solve_cmd->add_option("--formulation", s.formulation, "two-field | three-field");
    solve_cmd->add_option("--domain", s.domain, "square | lshape | cracked")->required();
    solve_cmd->add_option("--n", s.n, "divisions per (short) side");
    solve_cmd->add_option("--target-vertices", s.target_vertices, "target vertex count (cracked)");
    solve_cmd->add_option("--order", s.order, "element order, 1 or 2");
    solve_cmd->add_option("--k", s.k, "number of eigenvalues");
    solve_cmd->add_option("--mu", s.mu, "viscosity");
    solve_cmd->add_option("--c1", s.c1, "pressure-gradient stabilization constant");
    solve_cmd->add_option("--c2", s.c2, "divergence stabilization constant");
    solve_cmd->add_option("--c3", s.c3, "symmetric-gradient stabilization constant");
    solve_cmd->add_option("--c4", s.c4, "divergence stabilization constant (three-field)");
    solve_cmd->add_option("--c5", s.c5, "momentum-residual stabilization constant");
    solve_cmd->add_option("--out-prefix", s.out_prefix, "write {prefix}.mode{i}.fields per mode");
    solve_cmd->add_flag("--probe-large-constants", s.probe_large_constants,
                        "informational ten-times-constants probe (three-field, k=10)");

    // study
    auto* study_cmd = app.add_subcommand("study", "Run a mesh-convergence study");
    std::string st_config, st_outdir = ".";
    study_cmd->add_option("--config", st_config, "study configuration file")->required();
    study_cmd->add_option("--out-dir", st_outdir, "output directory for reports");

    // export
    auto* export_cmd = app.add_subcommand("export", "Export solved fields to legacy VTK");
    std::string e_fields, e_mesh, e_out;
    export_cmd->add_option("--fields", e_fields, "fields file (or its path prefix)")->required();
    export_cmd->add_option("--mesh", e_mesh, "mesh file")->required();
    export_cmd->add_option("--out", e_out, "output VTK file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (mesh_cmd->parsed()) return cmd_mesh(m_domain, m_n, m_tv, m_out);
        if (solve_cmd->parsed()) return cmd_solve(s);
        if (study_cmd->parsed()) return cmd_study(st_config, st_outdir);
        if (export_cmd->parsed()) return cmd_export(e_fields, e_mesh, e_out);
    } catch (const StudyFailure& e) {
        std::fprintf(stderr, "error: %s (%zu rows completed)\n", e.what(), e.partial_rows.size());
        return 4;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const SpectralAnomalyError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ShiftRejectedError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
