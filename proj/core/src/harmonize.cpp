#include "lpwan/harmonize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "builtin_data.hpp"
#include "lpwan/errors.hpp"
#include "lpwan/textio.hpp"

namespace lpwan::harmonize {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(StudyKind k) {
    switch (k) {
        case StudyKind::Analytical: return "analytical";
        case StudyKind::Simulation: return "simulation";
        case StudyKind::Deployment: return "deployment";
    }
    return "?";
}

StudyKind kind_from_string(std::string_view name) {
    std::string n(name);
    std::transform(n.begin(), n.end(), n.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (n == "analytical") return StudyKind::Analytical;
    if (n == "simulation") return StudyKind::Simulation;
    if (n == "deployment") return StudyKind::Deployment;
    throw ParseError("unknown study kind '" + std::string(name) + "'");
}

namespace {

int traffic_form_count(const StudyRecord& r) {
    int forms = 0;
    if (r.t_msg_s) ++forms;
    if (r.f_pph) ++forms;
    if (r.packets_total || r.observation_s || r.mean_payload_bytes) ++forms;
    if (r.c_bps) ++forms;
    return forms;
}

}  // namespace

void StudyRecord::validate() const {
    if (label.empty()) throw ValidationError("study: label is empty");
    if (traffic_form_count(*this) > 1)
        throw ValidationError("study " + label + ": more than one traffic form given");
    if ((packets_total || observation_s || mean_payload_bytes) &&
        !(packets_total && observation_s && mean_payload_bytes))
        throw ValidationError("study " + label +
                              ": totals form needs packets_total, observation_s and "
                              "mean_payload_bytes together");
    if ((t_msg_s || f_pph) && !s_msg_bytes)
        throw ValidationError("study " + label + ": period/rate form needs s_msg_bytes");
    if (t_msg_s && *t_msg_s <= 0.0)
        throw ValidationError("study " + label + ": message period must be positive");
    if (observation_s && *observation_s <= 0.0)
        throw ValidationError("study " + label + ": observation time must be positive");
    for (const auto& p : {p_psr, p_per})
        if (p && (*p < 0.0 || *p > 1.0))
            throw ValidationError("study " + label + ": probability outside [0, 1]");
    if (p_psr && p_per && std::abs(*p_psr + *p_per - 1.0) > 1e-9)
        throw ValidationError("study " + label + ": p_psr and p_per do not sum to 1");
    if (d_km && area_km2)
        throw ValidationError("study " + label + ": give either d_km or area_km2, not both");
    if (d_km && *d_km <= 0.0)
        throw ValidationError("study " + label + ": radius must be positive");
    if (area_km2 && *area_km2 <= 0.0)
        throw ValidationError("study " + label + ": area must be positive");
    if (n_total && *n_total < 0.0)
        throw ValidationError("study " + label + ": population must be non-negative");
}

double effective_transmitters(const StudyRecord& r) {
    if (!r.n_total)
        throw NotAvailableError("study " + r.label + ": no population given");
    if (r.p_psr) return *r.n_total * *r.p_psr;
    if (r.p_per) return *r.n_total * (1.0 - *r.p_per);
    return *r.n_total;
}

double aggregate_traffic(const StudyRecord& r) {
    if (r.c_bps) return *r.c_bps;
    if (r.packets_total)
        return *r.packets_total * *r.mean_payload_bytes * 8.0 / *r.observation_s;
    if (r.t_msg_s)
        return effective_transmitters(r) * *r.s_msg_bytes * 8.0 / *r.t_msg_s;
    if (r.f_pph)
        return effective_transmitters(r) * *r.f_pph * *r.s_msg_bytes * 8.0 / 3600.0;
    throw NotAvailableError("study " + r.label + ": no traffic form given");
}

StudyDensities study_densities(const StudyRecord& r) {
    r.validate();
    if (!r.d_km && !r.area_km2)
        throw NotAvailableError("study " + r.label + ": no geometry given");
    StudyDensities out;
    out.label = r.label;
    out.kind = r.kind;
    out.n = effective_transmitters(r);
    out.area_km2 = r.area_km2 ? *r.area_km2 : std::numbers::pi * *r.d_km * *r.d_km;
    out.equivalent_radius_km =
        r.d_km ? *r.d_km : std::sqrt(out.area_km2 / std::numbers::pi);
    if (traffic_form_count(r) > 0) out.c_bps = aggregate_traffic(r);
    out.n_rho = out.n / out.area_km2;
    if (out.c_bps) out.c_rho = *out.c_bps / out.area_km2;
    out.printed = r.printed;
    out.note = r.note;

    auto compare = [&](const char* cell, std::optional<double> computed) {
        const auto it = r.printed.find(cell);
        if (it == r.printed.end() || !computed || it->second == 0.0) return;
        const double dev = 100.0 * std::abs(*computed - it->second) / std::abs(it->second);
        out.deviation_percent[cell] = dev;
        if (r.deviations.count(cell)) out.flagged.push_back(cell);
    };
    compare("c_bps", out.c_bps);
    compare("n_rho", out.n_rho);
    compare("c_rho", out.c_rho);
    return out;
}

// ---------------------------------------------------------------------------
// JSON codecs

namespace {

std::optional<double> opt_number(const json& j, const char* key, const std::string& what) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number())
        throw ParseError(what + ": field '" + key + "' must be a number");
    return it->get<double>();
}

}  // namespace

StudyRecord study_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("study: expected a JSON object");
    StudyRecord r;
    if (!j.contains("label")) throw ParseError("study: missing field 'label'");
    r.label = j["label"].get<std::string>();
    const std::string what = "study " + r.label;
    if (!j.contains("kind")) throw ParseError(what + ": missing field 'kind'");
    r.kind = kind_from_string(j["kind"].get<std::string>());
    r.t_msg_s = opt_number(j, "t_msg_s", what);
    r.f_pph = opt_number(j, "f_pph", what);
    r.packets_total = opt_number(j, "packets_total", what);
    r.observation_s = opt_number(j, "observation_s", what);
    r.mean_payload_bytes = opt_number(j, "mean_payload_bytes", what);
    r.c_bps = opt_number(j, "c_bps", what);
    r.s_msg_bytes = opt_number(j, "s_msg_bytes", what);
    r.n_total = opt_number(j, "n_total", what);
    r.p_psr = opt_number(j, "p_psr", what);
    r.p_per = opt_number(j, "p_per", what);
    r.d_km = opt_number(j, "d_km", what);
    r.area_km2 = opt_number(j, "area_km2", what);
    if (const auto it = j.find("assumed"); it != j.end())
        for (const auto& a : *it) r.assumed.push_back(a.get<std::string>());
    if (const auto it = j.find("printed"); it != j.end())
        for (const auto& [key, value] : it->items()) r.printed[key] = value.get<double>();
    if (const auto it = j.find("deviations"); it != j.end())
        for (const auto& [key, value] : it->items()) r.deviations[key] = value.get<double>();
    r.note = j.value("note", std::string{});
    r.validate();
    return r;
}

ordered_json study_to_json(const StudyRecord& r) {
    ordered_json out;
    out["label"] = r.label;
    out["kind"] = to_string(r.kind);
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) out[key] = *v;
    };
    put("t_msg_s", r.t_msg_s);
    put("f_pph", r.f_pph);
    put("packets_total", r.packets_total);
    put("observation_s", r.observation_s);
    put("mean_payload_bytes", r.mean_payload_bytes);
    put("c_bps", r.c_bps);
    put("s_msg_bytes", r.s_msg_bytes);
    put("n_total", r.n_total);
    put("p_psr", r.p_psr);
    put("p_per", r.p_per);
    put("d_km", r.d_km);
    put("area_km2", r.area_km2);
    if (!r.assumed.empty()) out["assumed"] = r.assumed;
    if (!r.printed.empty()) out["printed"] = r.printed;
    if (!r.deviations.empty()) out["deviations"] = r.deviations;
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

std::vector<StudyRecord> load_studies(const json& doc) {
    const json* list = &doc;
    if (doc.is_object()) {
        const auto it = doc.find("studies");
        if (it == doc.end()) {
            if (doc.empty()) return {};
            throw ParseError("studies: expected a 'studies' array or a bare array");
        }
        list = &*it;
    } else if (doc.is_null()) {
        return {};
    }
    if (!list->is_array()) throw ParseError("studies: expected an array");
    std::vector<StudyRecord> out;
    out.reserve(list->size());
    for (const auto& j : *list) out.push_back(study_from_json(j));
    return out;
}

std::vector<StudyRecord> load_studies_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open study file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return load_studies(doc);
}

const std::vector<StudyRecord>& builtin_studies() {
    static const std::vector<StudyRecord> studies =
        load_studies(json::parse(data::literature_studies_json()));
    return studies;
}

ordered_json densities_to_json(const StudyDensities& d) {
    ordered_json out;
    out["label"] = d.label;
    out["kind"] = to_string(d.kind);
    out["n"] = d.n;
    out["area_km2"] = d.area_km2;
    out["d_km"] = d.equivalent_radius_km;
    out["c_bps"] = d.c_bps ? json(*d.c_bps) : json(nullptr);
    out["n_rho"] = d.n_rho;
    out["c_rho"] = d.c_rho ? json(*d.c_rho) : json(nullptr);
    if (!d.printed.empty()) out["printed"] = d.printed;
    if (!d.deviation_percent.empty()) out["deviation_percent"] = d.deviation_percent;
    if (!d.flagged.empty()) out["flagged"] = d.flagged;
    if (!d.note.empty()) out["note"] = d.note;
    return out;
}

std::string densities_csv(std::span<const StudyDensities> rows) {
    std::string out = "label,kind,n,d_km,c_bps,n_rho,c_rho\n";
    for (const auto& r : rows) {
        out += "\"" + r.label + "\"," + std::string(to_string(r.kind)) + "," + shortest(r.n) +
               "," + shortest(r.equivalent_radius_km) + "," +
               (r.c_bps ? shortest(*r.c_bps) : std::string{}) + "," + shortest(r.n_rho) + "," +
               (r.c_rho ? shortest(*r.c_rho) : std::string{}) + "\n";
    }
    return out;
}

}  // namespace lpwan::harmonize
