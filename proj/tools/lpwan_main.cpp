// lpwan: command-line frontend over the core library.  Every subcommand
// delegates to a single library call and re-emits the result; no numeric
// value is recomputed at the formatting stage.

#include <cstdio>
#include <iostream>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpwan/capacity.hpp"
#include "lpwan/costmodel.hpp"
#include "lpwan/errors.hpp"
#include "lpwan/harmonize.hpp"
#include "lpwan/mcsim.hpp"
#include "lpwan/propagation.hpp"
#include "lpwan/regulation.hpp"
#include "lpwan/techplans.hpp"
#include "lpwan/textio.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

enum class Format { Table, Csv, Json };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& name) {
    if (name == "table") return Format::Table;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw UsageError("unknown format '" + name + "' (expected table, csv or json)");
}

// Table mode prints six significant digits; csv keeps the shortest
// round-trip form so values parse back bit-identical.
std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string table_cell(const ordered_json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_number_float()) return fmt6(v.get<double>());
    return v.dump();
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_cell(const ordered_json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return csv_quote(v.get<std::string>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return lpwan::shortest(v.get<double>());
    return v.dump();
}

// One flat object: table as aligned key/value lines, csv as header + one row.
void emit_object(Format f, const ordered_json& payload) {
    if (f == Format::Json) {
        std::cout << payload.dump(2) << "\n";
        return;
    }
    if (f == Format::Csv) {
        std::string head, row;
        for (auto it = payload.begin(); it != payload.end(); ++it) {
            if (!head.empty()) {
                head += ',';
                row += ',';
            }
            head += it.key();
            row += csv_cell(it.value());
        }
        std::cout << head << "\n" << row << "\n";
        return;
    }
    std::size_t width = 0;
    for (auto it = payload.begin(); it != payload.end(); ++it)
        width = std::max(width, it.key().size());
    for (auto it = payload.begin(); it != payload.end(); ++it)
        std::cout << it.key() << std::string(width - it.key().size() + 2, ' ')
                  << table_cell(it.value()) << "\n";
}

// Uniform records: table as aligned columns, csv as header + rows.  Fields
// outside `columns` (notes, per-cell metadata) appear only in json mode.
void emit_records(Format f, const std::vector<ordered_json>& rows,
                  const std::vector<std::string>& columns) {
    if (f == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) arr.push_back(r);
        std::cout << arr.dump(2) << "\n";
        return;
    }
    auto field = [](const ordered_json& r, const std::string& key) -> ordered_json {
        auto it = r.find(key);
        return it == r.end() ? ordered_json(nullptr) : *it;
    };
    if (f == Format::Csv) {
        std::string head;
        for (const auto& c : columns) {
            if (!head.empty()) head += ',';
            head += c;
        }
        std::cout << head << "\n";
        for (const auto& r : rows) {
            std::string line;
            for (const auto& c : columns) {
                if (!line.empty()) line += ',';
                line += csv_cell(field(r, c));
            }
            std::cout << line << "\n";
        }
        return;
    }
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            line.push_back(table_cell(field(r, columns[i])));
            width[i] = std::max(width[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto print_row = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            std::cout << line[i];
            if (i + 1 < line.size()) std::cout << std::string(width[i] - line[i].size() + 2, ' ');
        }
        std::cout << "\n";
    };
    print_row(columns);
    for (const auto& line : cells) print_row(line);
    // Notes don't fit a column; list them under the table.
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto it = rows[i].find("note");
        if (it != rows[i].end() && it->is_string() && !it->get<std::string>().empty())
            std::cout << "note [" << table_cell(field(rows[i], columns[0])) << "]: "
                      << it->get<std::string>() << "\n";
    }
}

// Grid syntax: "lo:hi:count" (inclusive, evenly spaced) or "a,b,c".
std::vector<double> parse_grid(const std::string& text, const char* what) {
    auto bad = [&] {
        return UsageError(std::string(what) +
                          ": expected lo:hi:count or a comma-separated list, got '" + text + "'");
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0.0, hi = 0.0;
        long count = 0;
        char trail = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &count, &trail) != 3 || count < 1)
            throw bad();
        if (count == 1) {
            out.push_back(lo);
        } else {
            for (long i = 0; i < count; ++i)
                out.push_back(lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(count - 1));
        }
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw bad();
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw bad();
        out.push_back(v);
    }
    if (out.empty()) throw bad();
    return out;
}

std::vector<double> parse_tuple(const std::string& text, std::size_t arity, const char* what) {
    auto vals = parse_grid(text, what);
    if (vals.size() != arity)
        throw UsageError(std::string(what) + ": expected " + std::to_string(arity) +
                         " comma-separated values, got '" + text + "'");
    return vals;
}

// ---------------------------------------------------------------------------
// subcommand bodies

std::vector<lpwan::regulation::RegionProfile> resolve_profiles(const std::string& file) {
    if (file.empty()) return lpwan::regulation::builtin_profiles();
    return lpwan::regulation::load_profiles_file(file);
}

int cmd_region_list(Format f, const std::string& profiles_file) {
    const auto profiles = resolve_profiles(profiles_file);
    if (f == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (const auto& p : profiles) arr.push_back(p.region_id);
        std::cout << arr.dump(2) << "\n";
    } else {
        if (f == Format::Csv) std::cout << "region\n";
        for (const auto& p : profiles) std::cout << p.region_id << "\n";
    }
    return 0;
}

int cmd_region_show(Format f, const std::string& profiles_file, const std::string& id) {
    const auto profiles = resolve_profiles(profiles_file);
    const auto& p = lpwan::regulation::find_profile(profiles, id);
    // A nested profile has no natural row shape; every mode gets the full
    // JSON document.
    (void)f;
    std::cout << lpwan::regulation::profile_to_json(p).dump(2) << "\n";
    return 0;
}

int cmd_comply(Format f, const std::string& profiles_file, const std::string& region,
               const std::string& schedule_file) {
    const auto profiles = resolve_profiles(profiles_file);
    const auto& profile = lpwan::regulation::find_profile(profiles, region);
    const auto schedule = lpwan::regulation::schedule_from_file(schedule_file);
    const auto report = lpwan::regulation::check_schedule(profile, schedule);
    if (f == Format::Json) {
        std::cout << lpwan::regulation::report_to_json(report).dump(2) << "\n";
    } else {
        std::vector<ordered_json> rows;
        for (const auto& item : report.items) {
            ordered_json r;
            r["rule"] = item.rule;
            r["verdict"] = std::string(to_string(item.verdict));
            r["measured"] = item.measured ? ordered_json(*item.measured) : ordered_json(nullptr);
            r["limit"] = item.limit ? ordered_json(*item.limit) : ordered_json(nullptr);
            r["unit"] = item.unit;
            r["governing"] = item.governing;
            r["detail"] = item.detail;
            rows.push_back(std::move(r));
        }
        if (f == Format::Table)
            std::cout << "region: " << report.region_id
                      << "\noverall: " << to_string(report.overall) << "\n";
        emit_records(f, rows, {"rule", "verdict", "measured", "limit", "unit", "governing", "detail"});
        if (f == Format::Csv)
            std::cout << "overall," << to_string(report.overall) << ",,,,,\n";
    }
    using lpwan::regulation::Verdict;
    return report.overall == Verdict::Pass ? 0 : 3;
}

int cmd_coverage(Format f, double tx, double freq, double sens) {
    lpwan::propagation::LinkBudget link{tx, sens, freq};
    const double range = lpwan::propagation::max_range(link);
    ordered_json payload;
    payload["tx_dbm"] = tx;
    payload["sensitivity_dbm"] = sens;
    payload["frequency_mhz"] = freq;
    payload["max_range_km"] = range;
    emit_object(f, payload);
    return 0;
}

int cmd_coverage_scale(Format f, const std::string& base, const std::string& to) {
    const auto b = parse_tuple(base, 3, "--base");
    const auto t = parse_tuple(to, 2, "--to");
    lpwan::propagation::RangeAnchor anchor{b[0], b[1], b[2]};
    const double scaled = lpwan::propagation::scale_range(anchor, t[0], t[1]);
    ordered_json payload;
    payload["base_d_km"] = anchor.distance_km;
    payload["base_power_dbm"] = anchor.power_dbm;
    payload["base_frequency_mhz"] = anchor.frequency_mhz;
    payload["target_power_dbm"] = t[0];
    payload["target_frequency_mhz"] = t[1];
    payload["scaled_d_km"] = scaled;
    emit_object(f, payload);
    return 0;
}

const std::vector<std::string> kDensityColumns = {"technology", "region",  "alpha", "channels",
                                                  "d_km",       "c_bps",   "n_rho", "c_rho"};

int cmd_density_row(Format f, const std::string& tech, const std::string& region) {
    const auto t = lpwan::techplans::technology_from_string(tech);
    const auto row = lpwan::techplans::density_estimate(t, region);
    if (f == Format::Csv) {
        std::cout << lpwan::techplans::density_table_csv({&row, 1});
        return 0;
    }
    emit_records(f, {lpwan::techplans::estimate_to_json(row)}, kDensityColumns);
    return 0;
}

int cmd_density_table(Format f) {
    const auto table = lpwan::techplans::density_table();
    if (f == Format::Csv) {
        std::cout << lpwan::techplans::density_table_csv(table);
        return 0;
    }
    std::vector<ordered_json> rows;
    for (const auto& row : table) rows.push_back(lpwan::techplans::estimate_to_json(row));
    emit_records(f, rows, kDensityColumns);
    return 0;
}

int cmd_capacity_cdf(Format f, double d, double h) {
    const double value = lpwan::capacity::distance_cdf(d, h);
    ordered_json payload;
    payload["d_km"] = d;
    payload["h_km"] = h;
    payload["cdf"] = value;
    emit_object(f, payload);
    return 0;
}

int cmd_capacity_nc(Format f, double d, double h, const std::string& mode) {
    using lpwan::capacity::ConcurrentFormula;
    ConcurrentFormula formula;
    if (mode == "paper") {
        formula = ConcurrentFormula::Paper;
    } else if (mode == "geometric") {
        formula = ConcurrentFormula::Geometric;
    } else {
        throw UsageError("--mode must be paper or geometric, got '" + mode + "'");
    }
    const double value = lpwan::capacity::expected_concurrent_transmitters(d, h, formula);
    ordered_json payload;
    payload["d_km"] = d;
    payload["h_km"] = h;
    payload["mode"] = mode;
    payload["expected"] = value;
    emit_object(f, payload);
    return 0;
}

int cmd_capacity_limit(Format f, double d) {
    const double value = lpwan::capacity::asymptotic_channel_density(d);
    ordered_json payload;
    payload["d_km"] = d;
    payload["limit_per_km2"] = value;
    emit_object(f, payload);
    return 0;
}

int cmd_mc_cdf(Format f, double h, double d, std::uint64_t n, std::uint64_t seed, int threads) {
    lpwan::mcsim::SimConfig config;
    config.side = h;
    config.exclusion = d;
    config.n = n;
    config.seed = seed;
    const auto result = lpwan::mcsim::empirical_distance_cdf(config, d, threads);
    emit_object(f, lpwan::mcsim::to_json(result));
    return 0;
}

int cmd_mc_mean(Format f, double h, std::uint64_t n, std::uint64_t seed, int threads) {
    lpwan::mcsim::SimConfig config;
    config.side = h;
    config.exclusion = h;  // unused by the mean estimator, must be positive
    config.n = n;
    config.seed = seed;
    const auto result = lpwan::mcsim::mean_pair_distance(config, threads);
    emit_object(f, lpwan::mcsim::to_json(result));
    return 0;
}

int cmd_mc_admit(Format f, double h, double d, std::uint64_t n, std::uint64_t seed,
                 const std::string& mode) {
    lpwan::mcsim::SimConfig config;
    config.side = h;
    config.exclusion = d;
    config.n = n > 0 ? n : lpwan::mcsim::suggested_stream_length(h, d);
    config.seed = seed;
    using lpwan::mcsim::AdmissionMode;
    if (mode == "paper") {
        config.mode = AdmissionMode::PaperLiteral;
    } else if (mode == "accepted") {
        config.mode = AdmissionMode::AcceptedOnly;
    } else {
        throw UsageError("--mode must be paper or accepted, got '" + mode + "'");
    }
    const auto result = lpwan::mcsim::simulate_admission(config);
    emit_object(f, lpwan::mcsim::to_json(result));
    return 0;
}

int cmd_harmonize(Format f, const std::string& studies_file) {
    const auto studies = studies_file.empty() ? lpwan::harmonize::builtin_studies()
                                              : lpwan::harmonize::load_studies_file(studies_file);
    std::vector<lpwan::harmonize::StudyDensities> rows;
    for (const auto& s : studies) rows.push_back(lpwan::harmonize::study_densities(s));
    if (f == Format::Csv) {
        std::cout << lpwan::harmonize::densities_csv(rows);
        return 0;
    }
    std::vector<ordered_json> records;
    for (const auto& r : rows) records.push_back(lpwan::harmonize::densities_to_json(r));
    emit_records(f, records, {"label", "kind", "n", "d_km", "c_bps", "n_rho", "c_rho"});
    return 0;
}

lpwan::costmodel::GatewayRounding parse_rounding(const std::string& name) {
    if (name == "ceil") return lpwan::costmodel::GatewayRounding::Ceil;
    if (name == "continuous") return lpwan::costmodel::GatewayRounding::Continuous;
    throw UsageError("--rounding must be ceil or continuous, got '" + name + "'");
}

struct CostArgs {
    double area = 0.0;
    double devices = 0.0;
    double xgw = 0.0;
    double xdev = 0.0;
    int channels = 1;
    std::string d_grid;
    std::string alpha_grid;
    std::string rounding = "ceil";
};

int cmd_cost(Format f, const CostArgs& args, bool surface) {
    lpwan::costmodel::DeploymentScenario scenario{args.area, args.devices, args.xgw, args.xdev,
                                                  args.channels};
    const auto d = parse_grid(args.d_grid, "--d-grid");
    const auto alpha = parse_grid(args.alpha_grid, "--alpha-grid");
    const auto rounding = parse_rounding(args.rounding);
    if (surface) {
        const auto points = lpwan::costmodel::cost_surface(scenario, d, alpha, rounding);
        if (f == Format::Csv) {
            std::cout << lpwan::costmodel::surface_csv(points);
            return 0;
        }
        std::vector<ordered_json> rows;
        for (const auto& p : points) rows.push_back(lpwan::costmodel::point_to_json(p));
        emit_records(f, rows, {"d_km", "alpha", "gateways", "cost", "feasible"});
        return 0;
    }
    const auto best = lpwan::costmodel::min_cost(scenario, d, alpha, rounding);
    if (!best) throw lpwan::DomainError("cost min: no feasible grid point");
    emit_object(f, lpwan::costmodel::point_to_json(*best));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity planning and regulation tooling for sub-GHz LPWAN deployments"};
    app.require_subcommand(1);

    std::string format_name = "table";
    app.add_option("--format", format_name, "output format: table, csv or json")
        ->envname("LPWAN_FORMAT")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    int rc = 0;
    auto run = [&](auto&& body) {
        return [&, body]() { rc = body(parse_format(format_name)); };
    };

    // region
    auto* region = app.add_subcommand("region", "regional regulation profiles");
    region->require_subcommand(1);
    std::string profiles_file;
    region->add_option("--profiles", profiles_file, "profile dataset (default: built-in)");
    auto* region_list = region->add_subcommand("list", "list profile identifiers");
    region_list->callback(run([&](Format f) { return cmd_region_list(f, profiles_file); }));
    auto* region_show = region->add_subcommand("show", "dump one profile");
    std::string region_id;
    region_show->add_option("id", region_id, "region identifier")->required();
    region_show->callback(run([&](Format f) { return cmd_region_show(f, profiles_file, region_id); }));

    // comply
    auto* comply = app.add_subcommand("comply", "check a transmission schedule against a region");
    std::string comply_region, comply_schedule, comply_profiles;
    comply->add_option("--region", comply_region, "region identifier")->required();
    comply->add_option("--schedule", comply_schedule, "schedule JSON file")->required();
    comply->add_option("--profiles", comply_profiles, "profile dataset (default: built-in)");
    comply->callback(
        run([&](Format f) { return cmd_comply(f, comply_profiles, comply_region, comply_schedule); }));

    // coverage
    auto* coverage = app.add_subcommand("coverage", "free-space range from a link budget");
    double cov_tx = 0.0, cov_freq = 0.0, cov_sens = 0.0;
    auto* cov_tx_opt = coverage->add_option("--tx", cov_tx, "transmit power, dBm");
    auto* cov_freq_opt = coverage->add_option("--freq", cov_freq, "carrier, MHz");
    auto* cov_sens_opt = coverage->add_option("--sens", cov_sens, "receiver sensitivity, dBm");
    auto* scale = coverage->add_subcommand("scale", "rescale a known radius to new conditions");
    std::string scale_base, scale_to;
    scale->add_option("--base", scale_base, "anchor as d_km,power_dbm,freq_mhz")->required();
    scale->add_option("--to", scale_to, "target as power_dbm,freq_mhz")->required();
    scale->callback(run([&](Format f) { return cmd_coverage_scale(f, scale_base, scale_to); }));
    coverage->callback(run([&](Format f) {
        if (scale->parsed()) return rc;  // handled by the nested command
        if (!*cov_tx_opt || !*cov_freq_opt || !*cov_sens_opt)
            throw CLI::RequiredError("coverage requires --tx, --freq and --sens");
        return cmd_coverage(f, cov_tx, cov_freq, cov_sens);
    }));

    // density
    auto* density = app.add_subcommand("density", "supportable node and traffic densities");
    std::string dens_tech, dens_region;
    auto* dens_tech_opt = density->add_option("--tech", dens_tech, "technology (LoRa or Sigfox)");
    auto* dens_region_opt = density->add_option("--region", dens_region, "region identifier");
    auto* dens_table = density->add_subcommand("table", "all built-in technology/region rows");
    dens_table->callback(run([&](Format f) { return cmd_density_table(f); }));
    density->callback(run([&](Format f) {
        if (dens_table->parsed()) return rc;
        if (!*dens_tech_opt || !*dens_region_opt)
            throw CLI::RequiredError("density requires --tech and --region (or the table subcommand)");
        return cmd_density_row(f, dens_tech, dens_region);
    }));

    // capacity
    auto* capacity = app.add_subcommand("capacity", "closed-form pairwise distance results");
    capacity->require_subcommand(1);
    double cap_d = 0.0, cap_h = 0.0;
    std::string cap_mode = "paper";
    auto* cap_cdf = capacity->add_subcommand("cdf", "P(pair distance <= d) in an h x h square");
    cap_cdf->set_help_flag("--help", "print help");  // frees -h/--h for the side length
    cap_cdf->add_option("--d", cap_d, "distance, km")->required();
    cap_cdf->add_option("--h", cap_h, "square side, km")->required();
    cap_cdf->callback(run([&](Format f) { return cmd_capacity_cdf(f, cap_d, cap_h); }));
    auto* cap_nc = capacity->add_subcommand("nc", "expected concurrent transmitters");
    cap_nc->set_help_flag("--help", "print help");
    cap_nc->add_option("--d", cap_d, "distance, km")->required();
    cap_nc->add_option("--h", cap_h, "square side, km")->required();
    cap_nc->add_option("--mode", cap_mode, "paper or geometric");
    cap_nc->callback(run([&](Format f) { return cmd_capacity_nc(f, cap_d, cap_h, cap_mode); }));
    auto* cap_limit = capacity->add_subcommand("limit", "large-field density limit 1/(pi d^2)");
    cap_limit->add_option("--d", cap_d, "distance, km")->required();
    cap_limit->callback(run([&](Format f) { return cmd_capacity_limit(f, cap_d); }));

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimators (deterministic per seed)");
    mc->require_subcommand(1);
    double mc_h = 1.0, mc_d = 0.0;
    std::uint64_t mc_n = 0, mc_seed = 0;
    int mc_threads = 0;
    std::string mc_mode = "paper";
    auto add_mc_common = [&](CLI::App* cmd, bool needs_d) {
        cmd->set_help_flag("--help", "print help");  // frees -h/--h for the side length
        cmd->add_option("--h", mc_h, "square side, km")->required();
        auto* dopt = cmd->add_option("--d", mc_d, "distance, km");
        if (needs_d) dopt->required();
        cmd->add_option("--n", mc_n, "sample count / stream length");
        cmd->add_option("--seed", mc_seed, "64-bit stream key");
        cmd->add_option("--threads", mc_threads, "worker threads (0 = hardware default)");
    };
    auto* mc_cdf = mc->add_subcommand("cdf", "empirical distance CDF at --d");
    add_mc_common(mc_cdf, true);
    mc_cdf->callback(run([&](Format f) {
        if (mc_n == 0) throw UsageError("mc cdf requires --n");
        return cmd_mc_cdf(f, mc_h, mc_d, mc_n, mc_seed, mc_threads);
    }));
    auto* mc_mean = mc->add_subcommand("mean", "mean pair distance");
    add_mc_common(mc_mean, false);
    mc_mean->callback(run([&](Format f) {
        if (mc_n == 0) throw UsageError("mc mean requires --n");
        return cmd_mc_mean(f, mc_h, mc_n, mc_seed, mc_threads);
    }));
    auto* mc_admit = mc->add_subcommand("admit", "sequential admission with exclusion distance");
    add_mc_common(mc_admit, true);
    mc_admit->add_option("--mode", mc_mode, "paper or accepted");
    mc_admit->callback(
        run([&](Format f) { return cmd_mc_admit(f, mc_h, mc_d, mc_n, mc_seed, mc_mode); }));

    // harmonize
    auto* harmonize = app.add_subcommand("harmonize", "published-study densities on a common basis");
    std::string studies_file;
    harmonize->add_option("--studies", studies_file, "study dataset (default: built-in)");
    harmonize->callback(run([&](Format f) { return cmd_harmonize(f, studies_file); }));

    // cost
    auto* cost = app.add_subcommand("cost", "deployment cost over a coverage/duty grid");
    cost->require_subcommand(1);
    CostArgs cost_args;
    auto add_cost_common = [&](CLI::App* cmd) {
        cmd->add_option("--area", cost_args.area, "deployment area, km^2")->required();
        cmd->add_option("--devices", cost_args.devices, "device count")->required();
        cmd->add_option("--xgw", cost_args.xgw, "gateway unit cost")->required();
        cmd->add_option("--xdev", cost_args.xdev, "device unit cost")->required();
        cmd->add_option("--channels", cost_args.channels, "channels per gateway")->required();
        cmd->add_option("--d-grid", cost_args.d_grid, "radius grid: lo:hi:count or list")->required();
        cmd->add_option("--alpha-grid", cost_args.alpha_grid, "duty grid: lo:hi:count or list")
            ->required();
        cmd->add_option("--rounding", cost_args.rounding, "gateway rounding: ceil or continuous");
    };
    auto* cost_surface = cost->add_subcommand("surface", "full grid as rows");
    add_cost_common(cost_surface);
    cost_surface->callback(run([&](Format f) { return cmd_cost(f, cost_args, true); }));
    auto* cost_min = cost->add_subcommand("min", "cheapest feasible grid point");
    add_cost_common(cost_min);
    cost_min->callback(run([&](Format f) { return cmd_cost(f, cost_args, false); }));

    // `--format` lives on the root but may appear after the subcommand
    // (e.g. `density table --format csv`); let unmatched flags bubble up.
    std::function<void(CLI::App*)> bubble = [&](CLI::App* a) {
        a->fallthrough(true);
        for (auto* sub : a->get_subcommands([](const CLI::App*) { return true; })) bubble(sub);
    };
    bubble(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const lpwan::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
