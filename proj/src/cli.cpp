#include "thermowork/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "thermowork/errors.hpp"

namespace thermowork::cli {

namespace {

using nlohmann::json;
using qmath::Operator;

constexpr double kMaxGridSteps = 1e5;

qmath::Matrix parse_matrix(const json& rows, std::size_t dim, const char* name) {
    if (!rows.is_array() || rows.size() != dim) {
        throw std::invalid_argument(std::string(name) + ": expected " + std::to_string(dim) +
                                    " rows");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    qmath::Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != dim) {
            throw std::invalid_argument(std::string(name) + ": row " + std::to_string(i) +
                                        " must have " + std::to_string(dim) + " entries");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            const json& entry = row[static_cast<std::size_t>(j)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw std::invalid_argument(std::string(name) + ": entries must be [re, im] pairs");
            }
            m(i, j) = {entry[0].get<double>(), entry[1].get<double>()};
        }
    }
    return m;
}

Operator hermitian_from_json(const json& doc, const char* key, std::size_t dim) {
    if (!doc.contains(key)) {
        throw std::invalid_argument(std::string("custom model is missing '") + key + "'");
    }
    Operator op(parse_matrix(doc.at(key), dim, key));
    if (!op.is_hermitian()) {
        throw std::invalid_argument(std::string(key) + " is not Hermitian within 1e-10");
    }
    return op;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    file << text;
    if (!file.flush()) {
        throw std::runtime_error("failed writing output file '" + path + "'");
    }
}

// 0.5 for g = 0.5: the value used for evaluation is the one that gets printed.
double snap(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

}  // namespace

Model parse_model(std::string_view name) {
    if (name == "rabi") return Model::rabi;
    if (name == "two_qubit") return Model::two_qubit;
    if (name == "custom") return Model::custom;
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

CustomModel parse_custom_model(const json& doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("custom model must be a JSON object");
    }
    CustomModel m;
    try {
        m.d_a = doc.at("d_a").get<std::size_t>();
        m.d_b = doc.at("d_b").get<std::size_t>();
        m.temperature = Temperature::of(doc.value("temperature", 0.0));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("custom model: ") + e.what());
    }
    if (m.d_a == 0 || m.d_b == 0) {
        throw std::invalid_argument("custom model dimensions must be positive");
    }
    m.h_a = hermitian_from_json(doc, "h_a", m.d_a);
    m.h_b = hermitian_from_json(doc, "h_b", m.d_b);
    m.h_i = hermitian_from_json(doc, "h_i", m.d_a * m.d_b);
    return m;
}

CustomModel load_custom_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open model file '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_custom_model(doc);
}

void SweepSpec::validate() const {
    if (parameter != "g_over_omega") {
        throw std::invalid_argument("only the g_over_omega parameter can be swept");
    }
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
        throw std::invalid_argument("sweep requires start < stop");
    }
    if (!(step > 0.0)) {
        throw std::invalid_argument("sweep step must be positive");
    }
    if ((stop - start) / step > kMaxGridSteps) {
        throw std::invalid_argument("sweep grid exceeds 1e5 steps");
    }
    if (start < 0.0 && model.model == Model::rabi) {
        throw std::invalid_argument("Rabi coupling must be non-negative");
    }
}

std::vector<double> SweepSpec::values() const {
    validate();
    const auto steps = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> out;
    out.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        out.push_back(snap(start + static_cast<double>(i) * step));
    }
    return out;
}

void AuditSpec::validate() const {
    if (count < 1) {
        throw std::invalid_argument("audit count must be at least 1");
    }
    if (d_a < 2 || d_a > 6 || d_b < 2 || d_b > 6) {
        throw std::invalid_argument("audit dimensions must each lie in [2, 6]");
    }
}

std::vector<std::pair<std::string_view, std::optional<double>>> Row::numeric_columns() const {
    return {{"g_over_omega", g_over_omega},
            {"work", work},
            {"work_local_only", work_local_only},
            {"bound", bound},
            {"efficiency", efficiency},
            {"ground_energy", ground_energy},
            {"sz_mean", sz_mean},
            {"n_mean", n_mean},
            {"hi_mean", hi_mean},
            {"mi_term", mi_term},
            {"converged_cutoff", converged_cutoff},
            {"delta_f_a", delta_f_a},
            {"delta_f_b", delta_f_b},
            {"hi_t2", hi_t2},
            {"hi_t3", hi_t3}};
}

std::string format_number(double x) {
    char buf[64];
    if (x == 0.0) {
        return "0";
    }
    const double ax = std::abs(x);
    if (ax < 1e-4 || ax >= 1e6) {
        std::snprintf(buf, sizeof buf, "%.11e", x);
    } else {
        std::snprintf(buf, sizeof buf, "%.12g", x);
    }
    return buf;
}

Row row_from_report(double g, const protocol::ProtocolReport& r) {
    Row row;
    row.g_over_omega = g;
    row.work = r.work;
    row.work_local_only = r.work_local_only;
    row.bound = r.bound;
    row.efficiency = r.efficiency;
    row.ground_energy = r.ground_energy;
    row.hi_mean = r.hi_t3;
    row.mi_term = r.mi_term;
    row.delta_f_a = r.delta_f_a;
    row.delta_f_b = r.delta_f_b;
    row.hi_t2 = r.hi_t2;
    row.hi_t3 = r.hi_t3;
    return row;
}

Row row_from_rabi(const rabi::RabiPoint& p) {
    Row row = row_from_report(p.config.g_over_omega, p.report);
    row.work = p.work;
    row.efficiency = p.efficiency;
    row.ground_energy = p.ground_energy;
    row.sz_mean = p.sz_mean;
    row.n_mean = p.n_mean;
    row.hi_mean = p.hi_mean;
    row.converged_cutoff = static_cast<double>(p.converged_cutoff);
    return row;
}

Row evaluate_row(const ModelSpec& spec, double g) {
    switch (spec.model) {
        case Model::rabi: {
            rabi::RabiConfig config;
            config.g_over_omega = g;
            config.fock_cutoff = spec.cutoff;
            config.temperature = spec.temperature;
            config.convergence_tol = spec.tol;
            return row_from_rabi(rabi::auto_converge(config));
        }
        case Model::two_qubit: {
            const Operator h = 0.5 * rabi::sigma_z();
            const Operator coupling = qmath::tensor(rabi::sigma_x(), rabi::sigma_x());
            return row_from_report(g, protocol::run_protocol(protocol::ProtocolInput::make(
                                          h, h, g * coupling, spec.temperature)));
        }
        case Model::custom: {
            if (!spec.custom) {
                throw std::invalid_argument("custom model requires --file");
            }
            const CustomModel& m = *spec.custom;
            return row_from_report(g, protocol::run_protocol(protocol::ProtocolInput::make(
                                          m.h_a, m.h_b, g * m.h_i, spec.temperature)));
        }
    }
    throw std::logic_error("unhandled model");
}

std::string csv_header() {
    std::string line;
    for (const auto& [name, value] : Row{}.numeric_columns()) {
        line += name;
        line += ',';
    }
    return line + "status";
}

std::string csv_line(const Row& row) {
    std::string line;
    for (const auto& [name, value] : row.numeric_columns()) {
        if (value) {
            line += format_number(*value);
        }
        line += ',';
    }
    return line + row.status;
}

json row_to_json(const Row& row) {
    json obj = json::object();
    for (const auto& [name, value] : row.numeric_columns()) {
        const std::string key(name);
        if (value && key == "converged_cutoff") {
            obj[key] = static_cast<std::int64_t>(*value);
        } else if (value) {
            obj[key] = std::strtod(format_number(*value).c_str(), nullptr);
        } else {
            obj[key] = nullptr;
        }
    }
    obj["status"] = row.status;
    return obj;
}

std::string render(const std::vector<Row>& rows, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::csv) {
        os << kCsvSchemaLine << '\n' << csv_header() << '\n';
        for (const Row& row : rows) {
            os << csv_line(row) << '\n';
        }
    } else {
        json arr = json::array();
        for (const Row& row : rows) {
            arr.push_back(row_to_json(row));
        }
        os << arr.dump(2) << '\n';
    }
    return os.str();
}

std::string audit_report(const AuditSpec& spec, const protocol::AuditSummary& s) {
    std::ostringstream os;
    os << "audit count=" << s.count << " dims=" << spec.d_a << 'x' << spec.d_b
       << " temperature=" << format_number(spec.temperature.value()) << " seed=" << spec.seed
       << '\n';
    os << "min_margin=" << format_number(s.min_margin) << '\n';
    os << "median_margin=" << format_number(s.median_margin) << '\n';
    os << "max_efficiency=" << format_number(s.max_efficiency) << '\n';
    os << "max_decomposition_error=" << format_number(s.max_decomposition_error) << '\n';
    os << "violations=" << s.violations.size() << '\n';
    for (const auto& v : s.violations) {
        os << "violation sample=" << v.sample << " margin=" << format_number(v.margin) << '\n';
    }
    return os.str();
}

int cmd_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& diag) {
    std::vector<double> grid;
    try {
        grid = spec.values();
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::vector<Row> rows;
    rows.reserve(grid.size());
    std::size_t failures = 0;
    for (const double g : grid) {
        try {
            rows.push_back(evaluate_row(spec.model, g));
        } catch (const std::invalid_argument& e) {
            diag << "error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const std::exception& e) {
            Row bad;
            bad.g_over_omega = g;
            bad.status = dynamic_cast<const ConvergenceError*>(&e) ? "nonconverged" : "failed";
            rows.push_back(bad);
            ++failures;
            diag << "g_over_omega=" << format_number(g) << ": " << e.what() << '\n';
        }
    }

    try {
        write_output(spec.output_path, render(rows, spec.output_format), out);
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    diag << "sweep: " << rows.size() << " rows, " << failures << " failed\n";
    return failures == 0 ? kExitOk : kExitNumerical;
}

int cmd_point(const ModelSpec& spec, double g, std::ostream& out, std::ostream& diag) {
    try {
        out << row_to_json(evaluate_row(spec, snap(g))).dump(2) << '\n';
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int cmd_audit(const AuditSpec& spec, std::ostream& out, std::ostream& diag) {
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    protocol::AuditConfig config;
    config.count = spec.count;
    config.d_a = spec.d_a;
    config.d_b = spec.d_b;
    config.temperature = spec.temperature;
    config.seed = spec.seed;
    try {
        const protocol::AuditSummary summary = protocol::run_audit(config);
        out << audit_report(spec, summary);
        return summary.violations.empty() ? kExitOk : kExitNumerical;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace thermowork::cli
