#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "thermowork/protocol.hpp"
#include "thermowork/rabi.hpp"
#include "thermowork/thermo.hpp"

namespace thermowork::cli {

using thermo::Temperature;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

inline constexpr std::string_view kCsvSchemaLine = "# thermowork-csv v1";

enum class Model { rabi, two_qubit, custom };
enum class OutputFormat { csv, json };

Model parse_model(std::string_view name);
OutputFormat parse_format(std::string_view name);

// Bipartite model read from JSON: matrices are nested arrays of [re, im] pairs.
struct CustomModel {
    std::size_t d_a = 0;
    std::size_t d_b = 0;
    qmath::Operator h_a;
    qmath::Operator h_b;
    qmath::Operator h_i;
    Temperature temperature;
};

CustomModel parse_custom_model(const nlohmann::json& doc);
CustomModel load_custom_model(const std::string& path);

// Everything needed to evaluate one model at one coupling value.
struct ModelSpec {
    Model model = Model::rabi;
    Temperature temperature;
    std::size_t cutoff = 16;
    double tol = 1e-8;
    std::optional<CustomModel> custom;  // required for Model::custom
};

struct SweepSpec {
    ModelSpec model;
    std::string parameter = "g_over_omega";
    double start = 0.01;
    double stop = 2.0;
    double step = 0.01;
    OutputFormat output_format = OutputFormat::csv;
    std::string output_path;  // empty or "-" writes to stdout

    // Throws std::invalid_argument when start >= stop, step <= 0 or the grid exceeds 1e5 steps.
    void validate() const;
    // Inclusive grid start, start + step, ..., stop; every value snapped to 12 significant
    // digits so the value printed is the value evaluated.
    std::vector<double> values() const;
};

struct AuditSpec {
    std::size_t count = 500;
    std::size_t d_a = 2;
    std::size_t d_b = 2;
    Temperature temperature = Temperature::of(1.0);
    std::uint64_t seed = 0;

    void validate() const;
};

// One output record. Columns that do not apply to a model stay empty.
struct Row {
    double g_over_omega = 0.0;
    std::optional<double> work;
    std::optional<double> work_local_only;
    std::optional<double> bound;
    std::optional<double> efficiency;
    std::optional<double> ground_energy;
    std::optional<double> sz_mean;
    std::optional<double> n_mean;
    std::optional<double> hi_mean;
    std::optional<double> mi_term;
    std::optional<double> converged_cutoff;
    std::optional<double> delta_f_a;
    std::optional<double> delta_f_b;
    std::optional<double> hi_t2;
    std::optional<double> hi_t3;
    std::string status = "ok";

    std::vector<std::pair<std::string_view, std::optional<double>>> numeric_columns() const;
};

// 12 significant digits; lowercase scientific when |x| < 1e-4 or |x| >= 1e6.
std::string format_number(double x);

Row row_from_rabi(const rabi::RabiPoint& point);
Row row_from_report(double g, const protocol::ProtocolReport& report);

// Throws on numerical failure; cmd_* turn that into a marked row and exit status 2.
Row evaluate_row(const ModelSpec& spec, double g);

std::string csv_header();
std::string csv_line(const Row& row);
nlohmann::json row_to_json(const Row& row);
std::string render(const std::vector<Row>& rows, OutputFormat format);

std::string audit_report(const AuditSpec& spec, const protocol::AuditSummary& summary);

int cmd_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& diag);
int cmd_point(const ModelSpec& spec, double g, std::ostream& out, std::ostream& diag);
int cmd_audit(const AuditSpec& spec, std::ostream& out, std::ostream& diag);

}  // namespace thermowork::cli
