#pragma once

// Closed-form electrical model of a cylindrical solid-state nanopore:
// electrolyte resistivity, effective transport length, channel resistance,
// surface conductance, open-pore current and steric blockage amplitude.
//
// Everything is SI, double precision. Functions are pure.

namespace porebench {

struct PhysicalConstants {
    double elementary_charge;  // C
    double avogadro;           // 1/mol
    double boltzmann;          // J/K

    // Rounded values the reference generator was parameterised with.
    // This is the default everywhere; it reproduces the published fixtures.
    static constexpr PhysicalConstants generator() { return {1.6e-19, 6.02e23, 1.38e-23}; }

    // CODATA 2018 exact values.
    static constexpr PhysicalConstants codata2018() {
        return {1.602176634e-19, 6.02214076e23, 1.380649e-23};
    }
};

struct PoreGeometry {
    double diameter;   // m
    double thickness;  // m
};

struct ElectrolyteConfig {
    double salt_concentration;      // mol/m^3
    double cation_mobility;         // m^2/(V s)
    double anion_mobility;          // m^2/(V s)
    double surface_charge_density;  // C/m^2

    // Counterions in the double layer carry the opposite sign of the wall charge.
    double counterion_mobility() const {
        return surface_charge_density > 0.0 ? anion_mobility : cation_mobility;
    }
};

struct BiasConfig {
    double voltage;      // V
    double temperature;  // K
};

struct OpenPoreResult {
    double resistivity;          // ohm m
    double effective_length;     // m
    double resistance;           // ohm
    double surface_conductance;  // S
    double open_pore_current;    // A
};

// 20 nm x 20 nm pore, 100 mM KCl, sigma = -0.02 C/m^2, 300 mV, 300 K.
PoreGeometry default_geometry();
ElectrolyteConfig default_electrolyte();
BiasConfig default_bias();

double resistivity(const ElectrolyteConfig& electrolyte,
                   const PhysicalConstants& constants = PhysicalConstants::generator());

// 0.92 d_p + h.
double effective_length(const PoreGeometry& geometry);

double pore_resistance(const PoreGeometry& geometry, double resistivity);

// Uses |sigma|; conductance is non-negative whatever the wall charge sign.
double surface_conductance(const PoreGeometry& geometry, const ElectrolyteConfig& electrolyte);

OpenPoreResult open_pore_current(const PoreGeometry& geometry, const ElectrolyteConfig& electrolyte,
                                 const BiasConfig& bias,
                                 const PhysicalConstants& constants = PhysicalConstants::generator());

// Current deficit of a sphere of diameter `sphere_diameter` inside the pore:
// I_0 (D_np / d_p)^2. Throws DomainError unless 0 < D_np <= d_p.
double blockage_amplitude(double open_pore_current, double sphere_diameter, double pore_diameter);

}  // namespace porebench
