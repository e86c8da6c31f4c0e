#include "casimir/experiment.hpp"

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/units.hpp"

namespace casimir::experiment {

using units::Constants;

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0))
    throw DomainError(std::string(what) + " must be positive");
}

void validate_mirror(const MaterialMirror& m) {
  require_positive(m.plasma_frequency, "plasma frequency");
  require_positive(m.thickness, "mirror thickness");
}

} // namespace

void ExperimentConfig::validate() const {
  require_positive(cavity_thickness, "cavity thickness");
  require_positive(insulator_thickness, "insulator thickness");
  require_positive(electrode_thickness, "electrode thickness");
  require_positive(applied_voltage, "applied voltage");
  if (mirrors.empty())
    throw DomainError("at least one mirror is required");
  for (const auto& m : mirrors)
    validate_mirror(m);
}

std::vector<ExperimentConfig> Scenario::configs() const {
  if (cavities.empty())
    throw DomainError("scenario has no cavity thicknesses");
  std::vector<ExperimentConfig> out;
  for (double d : cavities) {
    ExperimentConfig c{d, insulator_thickness, electrode_thickness, mirrors, applied_voltage};
    c.validate();
    out.push_back(std::move(c));
  }
  return out;
}

Scenario default_scenario() {
  Scenario s;
  s.cavities = {33.0, 79.0, 230.0, 1100.0};
  s.insulator_thickness = 2.3; // 1.3 nm Al2O3 + 1 nm NiO
  s.electrode_thickness = 8.3;
  s.mirrors = {{"Al", 15.0, 150.0}, {"Pd", 7.4, 8.3}, {"Ni", 9.5, 38.0}};
  s.applied_voltage = 1e-4;
  return s;
}

double rms_energy_estimate(double kinetic_eV, double z0_nm) {
  require_positive(kinetic_eV, "kinetic energy");
  const double z0 = units::length_to_natural(z0_nm);
  const double e = Constants::elementary_charge_natural();
  return e / (std::numbers::pi * z0) * std::sqrt(kinetic_eV / (2.0 * Constants::electron_mass));
}

double minkowski_rms_energy(double kinetic_eV, double barrier_nm) {
  require_positive(kinetic_eV, "kinetic energy");
  const double a = units::length_to_natural(barrier_nm);
  const double e = Constants::elementary_charge_natural();
  const double m = Constants::electron_mass;
  return e * e * kinetic_eV / (m * m * a * a);
}

EnhancementRatio enhancement_ratio(double kinetic_eV, double barrier_nm, double z0_nm) {
  require_positive(kinetic_eV, "kinetic energy");
  const double a = units::length_to_natural(barrier_nm);
  const double z0 = units::length_to_natural(z0_nm);
  const double e = Constants::elementary_charge_natural();
  const double m = Constants::electron_mass;
  EnhancementRatio r;
  r.printed_formula = a * a * std::pow(m, 1.5) / (std::numbers::pi * e * z0 * std::sqrt(kinetic_eV));
  r.direct_quotient =
      rms_energy_estimate(kinetic_eV, z0_nm) / minkowski_rms_energy(kinetic_eV, barrier_nm);
  return r;
}

std::string_view to_string(MirrorRegime regime) {
  switch (regime) {
  case MirrorRegime::PerfectMirror:
    return "perfect-mirror";
  case MirrorRegime::Partial:
    return "partial";
  case MirrorRegime::Transparent:
    return "transparent";
  }
  return "unknown";
}

RegimeAssessment regime_classify(const MaterialMirror& mirror, double distance_nm,
                                 double transparent_threshold) {
  validate_mirror(mirror);
  require_positive(transparent_threshold, "transparent threshold");
  RegimeAssessment r;
  r.omega_p_distance = mirror.plasma_frequency * units::length_to_natural(distance_nm);
  r.omega_p_thickness = mirror.plasma_frequency * units::length_to_natural(mirror.thickness);
  r.transparent_threshold = transparent_threshold;
  if (r.omega_p_distance >= 1.0)
    r.regime = MirrorRegime::PerfectMirror;
  else if (r.omega_p_thickness <= transparent_threshold)
    r.regime = MirrorRegime::Transparent;
  else
    r.regime = MirrorRegime::Partial;
  return r;
}

std::optional<double> quoted_inverse_plasma_length(std::string_view name) {
  if (name == "Al")
    return 14.0;
  if (name == "Pd")
    return 22.0;
  if (name == "Ni")
    return 27.0;
  return std::nullopt;
}

std::vector<ModdelRow> moddel_report(const std::vector<ExperimentConfig>& configs,
                                     double transparent_threshold) {
  if (configs.empty())
    throw DomainError("moddel report needs at least one configuration");
  std::vector<ModdelRow> rows;
  rows.reserve(configs.size());
  for (const auto& c : configs) {
    c.validate();
    ModdelRow row;
    row.cavity_thickness = c.cavity_thickness;
    row.z0 = c.cavity_thickness;
    row.kinetic_energy = c.kinetic_energy();
    row.rms_energy = rms_energy_estimate(row.kinetic_energy, row.z0);
    row.rms_over_kinetic = row.rms_energy / row.kinetic_energy;
    for (std::size_t i = 0; i < c.mirrors.size(); ++i) {
      const auto& m = c.mirrors[i];
      MirrorAssessment a;
      a.name = m.name;
      a.distance = i == 0 ? c.cavity_thickness : c.insulator_thickness;
      a.assessment = regime_classify(m, a.distance, transparent_threshold);
      a.inverse_plasma_length = Constants::hbar_c / m.plasma_frequency;
      a.quoted_inverse_plasma_length = quoted_inverse_plasma_length(m.name);
      row.mirrors.push_back(std::move(a));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace casimir::experiment
