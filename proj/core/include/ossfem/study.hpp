#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ossfem/mesh.hpp"

namespace ossfem {

enum class Formulation { two_field, three_field };

std::string to_string(Formulation f);
Formulation formulation_from_string(const std::string& s);

/// Viscosity and all five stabilization constants; each formulation reads its
/// own subset.
struct StudyParams {
    double mu = 1.0;
    double c1 = 0.25;
    double c2 = 0.1;
    double c3 = 1.0;
    double c4 = 0.1;
    double c5 = 0.25;
};

struct StudyConfig {
    std::string name;
    DomainTag domain = DomainTag::square;
    Formulation formulation = Formulation::two_field;
    int order = 1;
    std::vector<int> sizes;  // divisions per side; target vertex counts for cracked
    StudyParams params;
    int eigen_index = 1;  // 1-based, counting multiplicity
    double reference = 0.0;
    int k = 1;  // eigenvalues computed per mesh (>= eigen_index)
};

struct StudyRow {
    int size = 0;  // n, or the actual vertex count M for cracked meshes
    double h_max = 0.0;
    double lambda_h = 0.0;
    double rel_error = 0.0;  // (lambda_h - reference) / reference
};

struct StudyReport {
    StudyConfig config;
    std::vector<StudyRow> rows;
    /// Least-squares convergence slope over the finest half of the rows;
    /// absent with fewer than two positive-error rows there.
    std::optional<double> slope;
    /// True iff rel_error strictly decreases and lambda_h >= reference on
    /// every row.
    bool monotone = false;
};

/// A mesh solve failed mid-study; completed rows ride along.
struct StudyFailure : std::runtime_error {
    StudyFailure(const std::string& msg, std::vector<StudyRow> partial)
        : std::runtime_error(msg), partial_rows(std::move(partial)) {}
    std::vector<StudyRow> partial_rows;
};

StudyReport run_convergence_study(const StudyConfig& config);

/// Least-squares slope of log(error) against log(1/size). Requires at least
/// two points with positive errors.
double fit_slope(const std::vector<std::pair<double, double>>& points);

std::string emit_report_csv(const StudyReport& report);
std::string emit_report_markdown(const StudyReport& report);

/// "{domain}_{formulation}_P{order}" — stem for report files.
std::string report_basename(const StudyConfig& config);

StudyConfig load_study_config(std::istream& in);
StudyConfig load_study_config(const std::string& path);
void save_study_config(const StudyConfig& config, const std::string& path);

}  // namespace ossfem
