#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace lpwan::costmodel {

// Economic inputs for one deployment: what to cover, how many devices, and
// the hardware prices.  Currency is unitless.
struct DeploymentScenario {
    double area_km2 = 0.0;
    double devices = 0.0;
    double gateway_cost = 0.0;
    double device_cost = 0.0;
    int channels = 1;

    void validate() const;
};

// Gateways are whole devices by default; continuous mode keeps the smooth
// area ratio for surface plots.
enum class GatewayRounding { Ceil, Continuous };

struct CostPoint {
    double radius_km = 0.0;
    double duty_cycle = 0.0;
    double gateways = 0.0;           // integral in ceil mode
    double total_cost = 0.0;         // +infinity when infeasible
    double supported_density = 0.0;  // devices per km^2 the constraint allows
    bool feasible = false;
};

// Cost of covering the scenario with gateways of the given radius under the
// given duty cycle.  Feasible iff required density < supported density
// (strict); infeasible points carry infinite cost.
CostPoint deployment_cost(const DeploymentScenario& scenario, double radius_km,
                          double duty_cycle, GatewayRounding rounding = GatewayRounding::Ceil);

// Cartesian product of the grids, row-major (radius outer, duty inner).
std::vector<CostPoint> cost_surface(const DeploymentScenario& scenario,
                                    std::span<const double> radius_grid_km,
                                    std::span<const double> duty_grid,
                                    GatewayRounding rounding = GatewayRounding::Ceil);

// Cheapest feasible grid point; ties broken by larger radius, then larger
// duty cycle.  Empty when every grid point is infeasible.
std::optional<CostPoint> min_cost(const DeploymentScenario& scenario,
                                  std::span<const double> radius_grid_km,
                                  std::span<const double> duty_grid,
                                  GatewayRounding rounding = GatewayRounding::Ceil);

std::string surface_csv(std::span<const CostPoint> points);
nlohmann::ordered_json point_to_json(const CostPoint& point);

}  // namespace lpwan::costmodel
