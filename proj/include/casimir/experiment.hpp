#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Order-of-magnitude estimators for a charge tunnelling through a thin
// insulator near metal mirrors. Laboratory units throughout: eV, nm, volts.
namespace casimir::experiment {

struct MaterialMirror {
  std::string name;
  double plasma_frequency = 0.0; ///< eV
  double thickness = 0.0;        ///< nm
};

/// One row of the cavity scenario. The first mirror is the cavity mirror a
/// distance cavity_thickness from the insulator; the remaining ones are the
/// junction electrodes, a distance insulator_thickness away.
struct ExperimentConfig {
  double cavity_thickness = 0.0;    ///< d_C, nm
  double insulator_thickness = 0.0; ///< d_I, nm
  double electrode_thickness = 0.0; ///< d_E, nm
  std::vector<MaterialMirror> mirrors;
  double applied_voltage = 0.0; ///< V0, volts

  /// K = e V0 for a freely accelerated electron (an order-of-magnitude mapping).
  double kinetic_energy() const { return applied_voltage; }

  void validate() const;
};

/// Scenario file contents: one ExperimentConfig per cavity thickness.
struct Scenario {
  std::vector<double> cavities;
  double insulator_thickness = 0.0;
  double electrode_thickness = 0.0;
  std::vector<MaterialMirror> mirrors;
  double applied_voltage = 0.0;

  std::vector<ExperimentConfig> configs() const;
};

/// Four PMMA cavities, Al mirror, Pd and Ni electrodes, V0 = 0.1 mV.
Scenario default_scenario();

/// dU_rms = (e / pi z0) sqrt(K / 2m) for an electron, in eV.
double rms_energy_estimate(double kinetic_eV, double z0_nm);

/// Minkowski-vacuum tunnelling fluctuation e^2 K / (m^2 a^2), in eV.
double minkowski_rms_energy(double kinetic_eV, double barrier_nm);

struct EnhancementRatio {
  double printed_formula = 0.0; ///< a^2 m^(3/2) / (pi e z0 sqrt(K))
  double direct_quotient = 0.0; ///< rms_energy_estimate / minkowski_rms_energy
};

/// Both conventions; they differ by exactly sqrt(2).
EnhancementRatio enhancement_ratio(double kinetic_eV, double barrier_nm, double z0_nm);

enum class MirrorRegime { PerfectMirror, Partial, Transparent };

std::string_view to_string(MirrorRegime regime);

struct RegimeAssessment {
  MirrorRegime regime = MirrorRegime::Partial;
  double omega_p_distance = 0.0;  ///< omega_p * distance, dimensionless
  double omega_p_thickness = 0.0; ///< omega_p * own thickness
  double transparent_threshold = 0.0;
};

inline constexpr double default_transparent_threshold = 0.35;

/// Perfect mirror when omega_p z >= 1, else transparent when
/// omega_p * thickness <= threshold, else partial.
RegimeAssessment regime_classify(const MaterialMirror& mirror, double distance_nm,
                                 double transparent_threshold = default_transparent_threshold);

/// Length scales 1/omega_p as printed in the literature for Al, Pd and Ni.
std::optional<double> quoted_inverse_plasma_length(std::string_view name);

struct MirrorAssessment {
  std::string name;
  double distance = 0.0; ///< nm
  RegimeAssessment assessment;
  double inverse_plasma_length = 0.0; ///< hbar c / omega_p, nm
  std::optional<double> quoted_inverse_plasma_length;
};

struct ModdelRow {
  double cavity_thickness = 0.0; ///< nm
  double z0 = 0.0;               ///< nm, taken as d_C
  double kinetic_energy = 0.0;   ///< eV
  double rms_energy = 0.0;       ///< eV
  double rms_over_kinetic = 0.0;
  std::vector<MirrorAssessment> mirrors;
};

std::vector<ModdelRow> moddel_report(const std::vector<ExperimentConfig>& configs,
                                     double transparent_threshold = default_transparent_threshold);

} // namespace casimir::experiment
