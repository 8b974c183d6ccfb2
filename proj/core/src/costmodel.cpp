#include "lpwan/costmodel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lpwan/capacity.hpp"
#include "lpwan/errors.hpp"
#include "lpwan/textio.hpp"

namespace lpwan::costmodel {

void DeploymentScenario::validate() const {
    if (!(area_km2 > 0.0)) throw ValidationError("scenario: area must be positive");
    if (devices < 0.0) throw ValidationError("scenario: device count must be non-negative");
    if (gateway_cost < 0.0 || device_cost < 0.0)
        throw ValidationError("scenario: costs must be non-negative");
    if (channels < 1) throw ValidationError("scenario: channel count must be >= 1");
}

CostPoint deployment_cost(const DeploymentScenario& scenario, double radius_km,
                          double duty_cycle, GatewayRounding rounding) {
    scenario.validate();
    if (!(radius_km > 0.0)) throw DomainError("deployment cost: radius must be positive");
    if (!(duty_cycle > 0.0) || duty_cycle > 1.0)
        throw DomainError("deployment cost: duty cycle must be in (0, 1]");

    CostPoint p;
    p.radius_km = radius_km;
    p.duty_cycle = duty_cycle;
    p.supported_density = capacity::node_density(scenario.channels, duty_cycle, radius_km);
    const double required_density = scenario.devices / scenario.area_km2;
    p.feasible = required_density < p.supported_density;

    const double coverage_km2 = std::numbers::pi * radius_km * radius_km;
    const double gateways_exact = scenario.area_km2 / coverage_km2;
    p.gateways = rounding == GatewayRounding::Ceil ? std::ceil(gateways_exact) : gateways_exact;
    p.total_cost = p.feasible ? p.gateways * scenario.gateway_cost +
                                    scenario.devices * scenario.device_cost
                              : std::numeric_limits<double>::infinity();
    return p;
}

std::vector<CostPoint> cost_surface(const DeploymentScenario& scenario,
                                    std::span<const double> radius_grid_km,
                                    std::span<const double> duty_grid,
                                    GatewayRounding rounding) {
    if (radius_grid_km.empty() || duty_grid.empty())
        throw DomainError("cost surface: grids must be non-empty");
    std::vector<CostPoint> out;
    out.reserve(radius_grid_km.size() * duty_grid.size());
    for (const double d : radius_grid_km)
        for (const double alpha : duty_grid)
            out.push_back(deployment_cost(scenario, d, alpha, rounding));
    return out;
}

std::optional<CostPoint> min_cost(const DeploymentScenario& scenario,
                                  std::span<const double> radius_grid_km,
                                  std::span<const double> duty_grid,
                                  GatewayRounding rounding) {
    std::optional<CostPoint> best;
    for (const CostPoint& p : cost_surface(scenario, radius_grid_km, duty_grid, rounding)) {
        if (!p.feasible) continue;
        if (!best || p.total_cost < best->total_cost ||
            (p.total_cost == best->total_cost &&
             (p.radius_km > best->radius_km ||
              (p.radius_km == best->radius_km && p.duty_cycle > best->duty_cycle))))
            best = p;
    }
    return best;
}

std::string surface_csv(std::span<const CostPoint> points) {
    std::string out = "d_km,alpha,gateways,cost,feasible\n";
    for (const auto& p : points) {
        out += shortest(p.radius_km) + "," + shortest(p.duty_cycle) + "," +
               shortest(p.gateways) + "," + shortest(p.total_cost) + "," +
               (p.feasible ? "true" : "false") + "\n";
    }
    return out;
}

nlohmann::ordered_json point_to_json(const CostPoint& p) {
    nlohmann::ordered_json out;
    out["d_km"] = p.radius_km;
    out["alpha"] = p.duty_cycle;
    out["gateways"] = p.gateways;
    out["cost"] = p.feasible ? nlohmann::json(p.total_cost) : nlohmann::json("inf");
    out["supported_density"] = p.supported_density;
    out["feasible"] = p.feasible;
    return out;
}

}  // namespace lpwan::costmodel
