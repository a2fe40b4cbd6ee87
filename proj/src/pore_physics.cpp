#include "porebench/pore_physics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "porebench/errors.hpp"

namespace porebench {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

PoreGeometry default_geometry() { return {20e-9, 20e-9}; }

ElectrolyteConfig default_electrolyte() { return {100.0, 7.575e-9, 7.874e-9, -0.02}; }

BiasConfig default_bias() { return {0.3, 300.0}; }

double resistivity(const ElectrolyteConfig& electrolyte, const PhysicalConstants& constants) {
    require(constants.elementary_charge > 0.0 && constants.avogadro > 0.0,
            "resistivity: physical constants must be positive");
    require(electrolyte.salt_concentration > 0.0, "resistivity: salt concentration must be positive");
    require(electrolyte.cation_mobility >= 0.0 && electrolyte.anion_mobility >= 0.0,
            "resistivity: mobilities must be non-negative");
    const double mobility_sum = electrolyte.cation_mobility + electrolyte.anion_mobility;
    require(mobility_sum > 0.0, "resistivity: at least one carrier must be mobile");
    return 1.0 / (constants.elementary_charge * constants.avogadro * electrolyte.salt_concentration *
                  mobility_sum);
}

double effective_length(const PoreGeometry& geometry) {
    require(geometry.diameter >= 0.0 && geometry.thickness >= 0.0,
            "effective_length: negative geometry");
    return 0.92 * geometry.diameter + geometry.thickness;
}

double pore_resistance(const PoreGeometry& geometry, double rho) {
    require(rho > 0.0, "pore_resistance: resistivity must be positive");
    require(geometry.diameter > 0.0, "pore_resistance: pore diameter must be positive");
    const double d = geometry.diameter;
    return 4.0 * rho * effective_length(geometry) / (std::numbers::pi * d * d);
}

double surface_conductance(const PoreGeometry& geometry, const ElectrolyteConfig& electrolyte) {
    require(geometry.thickness > 0.0, "surface_conductance: pore thickness must be positive");
    require(geometry.diameter >= 0.0, "surface_conductance: negative pore diameter");
    return electrolyte.counterion_mobility() * std::abs(electrolyte.surface_charge_density) *
           std::numbers::pi * geometry.diameter / geometry.thickness;
}

OpenPoreResult open_pore_current(const PoreGeometry& geometry, const ElectrolyteConfig& electrolyte,
                                 const BiasConfig& bias, const PhysicalConstants& constants) {
    OpenPoreResult r{};
    r.resistivity = resistivity(electrolyte, constants);
    r.effective_length = effective_length(geometry);
    r.resistance = pore_resistance(geometry, r.resistivity);
    r.surface_conductance = surface_conductance(geometry, electrolyte);
    r.open_pore_current = bias.voltage * (r.surface_conductance + 1.0 / r.resistance);
    return r;
}

double blockage_amplitude(double open_pore_current, double sphere_diameter, double pore_diameter) {
    require(pore_diameter > 0.0, "blockage_amplitude: pore diameter must be positive");
    require(sphere_diameter > 0.0, "blockage_amplitude: sphere diameter must be positive");
    if (sphere_diameter > pore_diameter) {
        throw DomainError("blockage_amplitude: sphere diameter " + std::to_string(sphere_diameter) +
                          " m exceeds pore diameter " + std::to_string(pore_diameter) + " m");
    }
    const double ratio = sphere_diameter / pore_diameter;
    return open_pore_current * ratio * ratio;
}

}  // namespace porebench
