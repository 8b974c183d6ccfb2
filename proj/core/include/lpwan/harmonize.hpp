#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lpwan::harmonize {

enum class StudyKind { Analytical, Simulation, Deployment };

std::string_view to_string(StudyKind k);
StudyKind kind_from_string(std::string_view name);  // case-insensitive

// Raw descriptor of one literature study, in whatever form its source
// reported traffic.  At most one traffic form may be present: message period,
// per-node message rate, totals over an observation window, or the aggregate
// bitrate directly.  Some surveyed studies report none.
struct StudyRecord {
    std::string label;
    StudyKind kind{};

    std::optional<double> t_msg_s;             // period form
    std::optional<double> f_pph;               // rate form: packets/hour/node
    std::optional<double> packets_total;       // totals form
    std::optional<double> observation_s;       //   "
    std::optional<double> mean_payload_bytes;  //   "
    std::optional<double> c_bps;               // aggregate given directly
    std::optional<double> s_msg_bytes;         // message size (period/rate forms)

    std::optional<double> n_total;  // population
    std::optional<double> p_psr;    // packet success ratio
    std::optional<double> p_per;    // packet error ratio

    std::optional<double> d_km;     // geometry: coverage radius...
    std::optional<double> area_km2; // ...or area directly

    std::vector<std::string> assumed;          // descriptor fields the source assumed
    std::map<std::string, double> printed;     // published cells: c_bps, n_rho, c_rho
    std::map<std::string, double> deviations;  // recorded %-deviation notes per cell
    std::string note;

    void validate() const;
};

// Effective successful transmitters: n_total scaled by the success ratio
// (or the error-ratio complement); n_total alone when neither is given.
double effective_transmitters(const StudyRecord& r);

// Aggregate uplink traffic in bps from whichever traffic form is present.
// Bytes are converted to bits.  Throws NotAvailableError when the record
// carries no traffic form.
double aggregate_traffic(const StudyRecord& r);

// One harmonized row: common metrics plus the comparison against the
// published cells.
struct StudyDensities {
    std::string label;
    StudyKind kind{};
    double n = 0.0;                   // effective transmitters
    double area_km2 = 0.0;
    double equivalent_radius_km = 0.0;
    std::optional<double> c_bps;
    double n_rho = 0.0;
    std::optional<double> c_rho;
    std::map<std::string, double> printed;
    std::map<std::string, double> deviation_percent;  // computed vs published
    std::vector<std::string> flagged;  // cells recorded as deviating beyond 5%
    std::string note;
};

StudyDensities study_densities(const StudyRecord& r);

const std::vector<StudyRecord>& builtin_studies();
std::vector<StudyRecord> load_studies(const nlohmann::json& doc);
std::vector<StudyRecord> load_studies_file(const std::string& path);
StudyRecord study_from_json(const nlohmann::json& j);
nlohmann::ordered_json study_to_json(const StudyRecord& r);
nlohmann::ordered_json densities_to_json(const StudyDensities& d);
std::string densities_csv(std::span<const StudyDensities> rows);

}  // namespace lpwan::harmonize
