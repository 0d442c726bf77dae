#include "ossfem/study.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ossfem/mesh_io.hpp"
#include "ossfem/three_field.hpp"
#include "ossfem/two_field.hpp"

namespace ossfem {

std::string to_string(Formulation f) {
    return f == Formulation::two_field ? "two_field" : "three_field";
}

Formulation formulation_from_string(const std::string& s) {
    if (s == "two_field" || s == "two-field") return Formulation::two_field;
    if (s == "three_field" || s == "three-field") return Formulation::three_field;
    throw std::invalid_argument("unknown formulation: " + s);
}

namespace {

Mesh make_mesh(DomainTag domain, int size) {
    switch (domain) {
        case DomainTag::square: return unit_square_mesh(size);
        case DomainTag::lshape: return l_shaped_mesh(size);
        case DomainTag::cracked_square: return cracked_square_mesh(size);
    }
    throw std::invalid_argument("unknown domain");
}

double solve_eigenvalue(const Mesh& mesh, const StudyConfig& cfg) {
    if (cfg.formulation == Formulation::two_field) {
        const TwoFieldParams p{cfg.params.mu, cfg.params.c1, cfg.params.c2};
        return solve_two_field_eigs(mesh, cfg.order, p, cfg.k)
            .solution.pairs[cfg.eigen_index - 1]
            .lambda;
    }
    const ThreeFieldParams p{cfg.params.mu, cfg.params.c3, cfg.params.c4, cfg.params.c5};
    return solve_three_field_eigs(mesh, cfg.order, p, cfg.k)
        .solution.pairs[cfg.eigen_index - 1]
        .lambda;
}

void validate(const StudyConfig& cfg) {
    if (cfg.sizes.empty()) throw std::invalid_argument("study: sizes must be nonempty");
    for (size_t i = 1; i < cfg.sizes.size(); ++i)
        if (cfg.sizes[i] <= cfg.sizes[i - 1])
            throw std::invalid_argument("study: sizes must be strictly increasing");
    if (!(cfg.reference > 0.0)) throw std::invalid_argument("study: reference must be positive");
    if (cfg.eigen_index < 1) throw std::invalid_argument("study: eigen_index must be >= 1");
    if (cfg.k < cfg.eigen_index) throw std::invalid_argument("study: k must be >= eigen_index");
    if (cfg.order != 1 && cfg.order != 2) throw std::invalid_argument("study: order must be 1 or 2");
}

}  // namespace

StudyReport run_convergence_study(const StudyConfig& config) {
    validate(config);
    StudyReport rep;
    rep.config = config;

    for (int size : config.sizes) {
        try {
            const Mesh mesh = make_mesh(config.domain, size);
            StudyRow row;
            row.size = config.domain == DomainTag::cracked_square ? mesh.vertex_count() : size;
            row.h_max = mesh.h_max;
            row.lambda_h = solve_eigenvalue(mesh, config);
            row.rel_error = (row.lambda_h - config.reference) / config.reference;
            rep.rows.push_back(row);
        } catch (const std::exception& e) {
            throw StudyFailure("study: solve failed at size " + std::to_string(size) + ": " + e.what(),
                               rep.rows);
        }
    }

    rep.monotone = true;
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        if (rep.rows[i].lambda_h < config.reference) rep.monotone = false;
        if (i > 0 && !(rep.rows[i].rel_error < rep.rows[i - 1].rel_error)) rep.monotone = false;
    }

    // Slope over the finest half, cracked domains fitted against sqrt(M) as
    // the effective 1/h.
    const size_t half = (rep.rows.size() + 1) / 2;
    std::vector<std::pair<double, double>> pts;
    for (size_t i = rep.rows.size() - half; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        if (!(r.rel_error > 0.0)) continue;
        const double size_eff =
            config.domain == DomainTag::cracked_square ? std::sqrt(double(r.size)) : double(r.size);
        pts.emplace_back(size_eff, r.rel_error);
    }
    if (pts.size() >= 2) rep.slope = fit_slope(pts);
    return rep;
}

double fit_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_slope: need at least 2 points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [size, err] : points) {
        if (!(size > 0.0)) throw std::invalid_argument("fit_slope: sizes must be positive");
        if (!(err > 0.0)) throw std::invalid_argument("fit_slope: errors must be positive");
        sx += -std::log(size);
        sy += std::log(err);
    }
    const double xbar = sx / double(points.size());
    const double ybar = sy / double(points.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [size, err] : points) {
        const double dx = -std::log(size) - xbar;
        sxx += dx * dx;
        sxy += dx * (std::log(err) - ybar);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_slope: sizes must be distinct");
    return sxy / sxx;
}

std::string emit_report_csv(const StudyReport& report) {
    std::string out = "size,h_max,lambda_h,rel_error\n";
    for (const auto& r : report.rows) {
        out += std::to_string(r.size);
        out += ',';
        out += format_double(r.h_max);
        out += ',';
        out += format_double(r.lambda_h);
        out += ',';
        out += format_double(r.rel_error);
        out += '\n';
    }
    return out;
}

std::string emit_report_markdown(const StudyReport& report) {
    std::ostringstream out;
    const auto& c = report.config;
    out << "# " << (c.name.empty() ? report_basename(c) : c.name) << "\n\n";
    out << "domain: " << to_string(c.domain) << ", formulation: " << to_string(c.formulation)
        << ", order: P" << c.order << ", eigen index: " << c.eigen_index
        << ", reference: " << format_double(c.reference) << "\n\n";
    out << "| size | lambda_h | rel_error |\n|---|---|---|\n";
    for (const auto& r : report.rows)
        out << "| " << r.size << " | " << format_double(r.lambda_h) << " | "
            << format_double(r.rel_error) << " |\n";
    out << "\n";
    if (report.slope)
        out << "fitted slope (finest half): " << format_double(*report.slope) << "\n";
    else
        out << "fitted slope: not available\n";
    out << "monotone from above: " << (report.monotone ? "yes" : "no") << "\n";
    return out.str();
}

std::string report_basename(const StudyConfig& config) {
    return to_string(config.domain) + "_" + to_string(config.formulation) + "_P" +
           std::to_string(config.order);
}

namespace {

struct KeyValues {
    std::map<std::string, std::string> kv;

    const std::string& need(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("study config: missing key '" + key + "'");
        return it->second;
    }
    std::string get(const std::string& key, const std::string& dflt) const {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : it->second;
    }
};

double to_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("study config: bad number '" + s + "'");
    return v;
}

int to_int(const std::string& s) {
    int v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("study config: bad integer '" + s + "'");
    return v;
}

}  // namespace

StudyConfig load_study_config(std::istream& in) {
    KeyValues f;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) f.kv[key] = val;
    }

    StudyConfig cfg;
    cfg.name = f.get("name", "");
    cfg.domain = domain_tag_from_string(f.need("domain"));
    cfg.formulation = formulation_from_string(f.need("formulation"));
    cfg.order = to_int(f.need("order"));
    std::istringstream sizes(f.need("sizes"));
    for (std::string tok; sizes >> tok;) cfg.sizes.push_back(to_int(tok));
    cfg.eigen_index = to_int(f.get("eigen_index", "1"));
    cfg.reference = to_double(f.need("reference"));
    cfg.k = to_int(f.get("k", std::to_string(std::max(1, cfg.eigen_index))));
    cfg.params.mu = to_double(f.get("mu", "1"));
    cfg.params.c1 = to_double(f.get("c1", "0.25"));
    cfg.params.c2 = to_double(f.get("c2", "0.1"));
    cfg.params.c3 = to_double(f.get("c3", "1"));
    cfg.params.c4 = to_double(f.get("c4", "0.1"));
    cfg.params.c5 = to_double(f.get("c5", "0.25"));
    validate(cfg);
    return cfg;
}

StudyConfig load_study_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open study config: " + path);
    return load_study_config(in);
}

void save_study_config(const StudyConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write study config: " + path);
    out << "name = " << config.name << "\n";
    out << "domain = " << to_string(config.domain) << "\n";
    out << "formulation = " << to_string(config.formulation) << "\n";
    out << "order = " << config.order << "\n";
    out << "sizes =";
    for (int s : config.sizes) out << " " << s;
    out << "\n";
    out << "eigen_index = " << config.eigen_index << "\n";
    out << "reference = " << format_double(config.reference) << "\n";
    out << "k = " << config.k << "\n";
    out << "mu = " << format_double(config.params.mu) << "\n";
    out << "c1 = " << format_double(config.params.c1) << "\n";
    out << "c2 = " << format_double(config.params.c2) << "\n";
    out << "c3 = " << format_double(config.params.c3) << "\n";
    out << "c4 = " << format_double(config.params.c4) << "\n";
    out << "c5 = " << format_double(config.params.c5) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ossfem
