#pragma once

#include <string>
#include <string_view>

namespace vacbir::units {

/// Frozen physical constants (CODATA 2018).
///
/// The library works in Heaviside-Lorentz natural units with hbar = c = 1:
///
/// *   energies are expressed in eV,
/// *   lengths and times are expressed in 1/eV,
/// *   pulse energies are expressed in eV,
/// *   peak fields squared are expressed in eV^4.
///
/// Laboratory values enter through `Quantity` and are converted exactly once
/// by `to_natural`. Every function outside this namespace takes and returns
/// unqualified doubles in natural units.
struct Constants {
  static constexpr double electron_mass = 510998.95;      // eV
  static constexpr double hbar_c = 197.326980;             // eV nm
  static constexpr double hbar = 0.658212196;              // eV fs
  static constexpr double fine_structure = 1.0 / 137.035999;
  static constexpr double joule = 6.241509074e18;          // eV per J
  /// Reduced Compton wavelength hbar/(m c), in nm.
  static constexpr double compton_wavelength_reduced = hbar_c / electron_mass;
  /// e^2 in Heaviside-Lorentz units, e^2 = 4 pi alpha.
  static constexpr double elementary_charge_squared =
      4.0 * 3.14159265358979323846 * fine_structure;
};

/// Stable digest over the constants table, recorded in run manifests.
std::string constants_digest();

enum class Dimension {
  length,
  time,
  energy,
  dimensionless,
  photon_count,
  field_squared,
};

std::string_view to_string(Dimension d);

/// A value tagged with its physical dimension.
///
/// Values are held in one canonical laboratory unit per dimension: nm for
/// lengths, fs for times, eV for energies. Dimensionless values, photon
/// counts and natural-unit field squares are stored as-is.
class Quantity {
 public:
  constexpr Quantity(double value, Dimension dimension)
      : value_(value), dimension_(dimension) {}

  static constexpr Quantity nanometres(double v) { return {v, Dimension::length}; }
  static constexpr Quantity micrometres(double v) { return {v * 1e3, Dimension::length}; }
  static constexpr Quantity femtoseconds(double v) { return {v, Dimension::time}; }
  static constexpr Quantity electronvolts(double v) { return {v, Dimension::energy}; }
  static constexpr Quantity joules(double v) { return {v * Constants::joule, Dimension::energy}; }
  static constexpr Quantity scalar(double v) { return {v, Dimension::dimensionless}; }

  constexpr double value() const { return value_; }
  constexpr Dimension dimension() const { return dimension_; }

  Quantity operator+(const Quantity& other) const;
  Quantity operator-(const Quantity& other) const;
  constexpr Quantity operator*(double s) const { return {value_ * s, dimension_}; }
  constexpr Quantity operator/(double s) const { return {value_ / s, dimension_}; }
  /// Ratio of two quantities of the same dimension.
  double operator/(const Quantity& other) const;

  bool operator==(const Quantity&) const = default;

 private:
  double value_;
  Dimension dimension_;
};

/// Converts to natural units: lengths and times to 1/eV, energies to eV.
double to_natural(const Quantity& q);

/// Inverse of `to_natural`.
Quantity from_natural(double value, Dimension target);

/// Parses "<number> <unit>", e.g. "800 nm", "30 fs", "12.914 keV", "30 J".
///
/// Recognised units: pm nm um mm cm m (length); as fs ps ns (time);
/// meV eV keV MeV GeV mJ J kJ (energy); rad mrad urad deg (dimensionless).
/// A bare number is accepted only for dimensionless quantities and photon
/// counts. Throws DimensionError when the unit does not match `expected`.
Quantity parse_quantity(std::string_view text, Dimension expected);

/// Value of `q` expressed in `unit` (one of the units `parse_quantity` knows).
double value_in(const Quantity& q, std::string_view unit);

}  // namespace vacbir::units
