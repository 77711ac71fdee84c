#include "wavequbo/report.hpp"

#include "wavequbo/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <ostream>

namespace wavequbo {

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

// CSV fields here never contain quotes; only commas need protecting.
std::string csv_field(const std::string& s) {
    return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

nlohmann::ordered_json json_opt(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw PreconditionError("unknown report format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void emit_report(std::ostream& out, const std::vector<ExperimentReport>& reports, ReportFormat format,
                 bool include_timing) {
    if (format == ReportFormat::Json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
            nlohmann::ordered_json j;
            j["scenario"] = r.scenario;
            j["ansatz"] = std::string(to_string(r.ansatz));
            j["N"] = r.N;
            j["n_spin"] = r.n_spin;
            j["rank"] = r.rank;
            j["DR"] = r.dynamic_range;
            j["g_min"] = json_opt(r.g_min);
            j["SR_sa"] = json_opt(r.sr_sa);
            j["MSE_sa"] = json_opt(r.mse_sa);
            j["MSE_best"] = json_opt(r.mse_best);
            j["ground_energy"] = json_opt(r.ground_energy);
            j["degeneracy"] = r.degeneracy;
            j["gap_status"] = r.gap_status;
            j["relative_sr"] = r.relative_sr;
            j["seed"] = r.seed;
            j["runs"] = r.n_runs;
            if (include_timing) j["seconds"] = r.seconds;
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << '\n';
        return;
    }
    out << "scenario,ansatz,N,n_spin,rank,DR,g_min,SR_sa,MSE_sa,MSE_best,ground_energy,degeneracy,gap_status,"
           "relative_sr,seed,runs";
    if (include_timing) out << ",seconds";
    out << '\n';
    for (const auto& r : reports) {
        out << csv_field(r.scenario) << ',' << to_string(r.ansatz) << ',' << r.N << ',' << r.n_spin << ',' << r.rank
            << ',' << format_number(r.dynamic_range) << ',' << opt(r.g_min) << ',' << opt(r.sr_sa) << ','
            << opt(r.mse_sa) << ',' << opt(r.mse_best) << ',' << opt(r.ground_energy) << ',' << r.degeneracy << ','
            << csv_field(r.gap_status) << ',' << (r.relative_sr ? "true" : "false") << ',' << r.seed << ','
            << r.n_runs;
        if (include_timing) out << ',' << format_number(r.seconds);
        out << '\n';
    }
}

void emit_report(const std::string& path, const std::vector<ExperimentReport>& reports, ReportFormat format,
                 bool include_timing) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write report to '" + path + "'");
    emit_report(out, reports, format, include_timing);
    if (!out) throw PreconditionError("error while writing report to '" + path + "'");
}

}  // namespace wavequbo
