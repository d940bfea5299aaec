#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vacbir/beams.hpp"
#include "vacbir/units.hpp"

namespace vacbir::config {

/// A scenario file: YAML mapping with unit-tagged strings.
///
///     pump:
///       wavelength: "800 nm"
///       pulse_energy: "30 J"
///       duration: "30 fs"
///       waist: "1 um"
///       waist_mode: average        # average | naive | explicit
///       explicit_waist: "1.2 um"   # explicit mode only
///     probe:
///       photon_energy: "12914 eV"
///       photon_count: 1e12
///       duration: "30 fs"
///       waist_1: "1 um"
///       waist_2: "1 um"
///       ellipse_angle: "0 deg"     # default 0
///     offsets: {x0: "0 um", y0: "0 um", z0: "0 um", t0: "0 fs"}  # default 0
///     purity: 5.7e-10              # optional
///     background: {b: 1e-6, epsilon: 0.1}  # optional
///     duration_convention: paper   # paper | fwhm
///     oracle: {include_sum_frequency: false}
///
/// Unknown keys are rejected. Every error names the dotted field path.
class ScenarioDocument {
 public:
  static ScenarioDocument from_file(const std::string& path);
  static ScenarioDocument from_text(std::string_view text);

  ScenarioDocument(const ScenarioDocument& other);
  ScenarioDocument& operator=(const ScenarioDocument& other);
  ScenarioDocument(ScenarioDocument&&) noexcept;
  ScenarioDocument& operator=(ScenarioDocument&&) noexcept;
  ~ScenarioDocument();

  /// Parsed, converted to natural units and validated.
  beams::Scenario scenario() const;

  /// Dimension of a settable scalar field; ValidationError if unknown.
  static units::Dimension dimension_of(std::string_view path);

  /// Overrides one scalar field (used by scans).
  void set(std::string_view path, const units::Quantity& value);

  /// FNV-1a digest of the source text.
  const std::string& digest() const { return digest_; }

 private:
  struct Impl;
  explicit ScenarioDocument(std::unique_ptr<Impl> impl, std::string digest);

  std::unique_ptr<Impl> impl_;
  std::string digest_;
};

/// Every scalar field path the schema knows.
std::vector<std::string> field_paths();

std::string fnv1a_hex(std::string_view data);

}  // namespace vacbir::config
