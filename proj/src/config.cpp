#include "vacbir/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "vacbir/errors.hpp"

namespace vacbir::config {
namespace {

using units::Dimension;

struct FieldSpec {
  std::string_view section;  // empty for top level
  std::string_view key;
  Dimension dimension;
};

constexpr FieldSpec kFields[] = {
    {"pump", "wavelength", Dimension::length},
    {"pump", "pulse_energy", Dimension::energy},
    {"pump", "duration", Dimension::time},
    {"pump", "waist", Dimension::length},
    {"pump", "explicit_waist", Dimension::length},
    {"probe", "photon_energy", Dimension::energy},
    {"probe", "photon_count", Dimension::photon_count},
    {"probe", "duration", Dimension::time},
    {"probe", "waist_1", Dimension::length},
    {"probe", "waist_2", Dimension::length},
    {"probe", "ellipse_angle", Dimension::dimensionless},
    {"offsets", "x0", Dimension::length},
    {"offsets", "y0", Dimension::length},
    {"offsets", "z0", Dimension::length},
    {"offsets", "t0", Dimension::time},
    {"", "purity", Dimension::dimensionless},
    {"background", "b", Dimension::dimensionless},
    {"background", "epsilon", Dimension::dimensionless},
};

// Non-numeric keys.
constexpr std::pair<std::string_view, std::string_view> kSwitches[] = {
    {"pump", "waist_mode"},
    {"", "duration_convention"},
    {"oracle", "include_sum_frequency"},
};

std::string join(std::string_view section, std::string_view key) {
  return section.empty() ? std::string(key) : std::string(section) + "." + std::string(key);
}

const FieldSpec* find_field(std::string_view path) {
  for (const auto& f : kFields) {
    if (join(f.section, f.key) == path) return &f;
  }
  return nullptr;
}

bool known_switch(std::string_view section, std::string_view key) {
  for (const auto& [s, k] : kSwitches) {
    if (s == section && k == key) return true;
  }
  return false;
}

bool known_section(std::string_view name) {
  for (const auto& f : kFields) {
    if (!f.section.empty() && f.section == name) return true;
  }
  for (const auto& [s, k] : kSwitches) {
    if (!s.empty() && s == name) return true;
  }
  return false;
}

bool known_key(std::string_view section, std::string_view key) {
  for (const auto& f : kFields) {
    if (f.section == section && f.key == key) return true;
  }
  return known_switch(section, key);
}

void check_keys(const YAML::Node& root) {
  if (!root.IsMap()) throw ValidationError("<root>", "scenario must be a mapping");
  for (const auto& entry : root) {
    const auto name = entry.first.as<std::string>();
    if (entry.second.IsMap()) {
      if (!known_section(name)) throw ValidationError(name, "unknown section");
      for (const auto& sub : entry.second) {
        const auto key = sub.first.as<std::string>();
        if (!known_key(name, key)) throw ValidationError(join(name, key), "unknown key");
        if (!sub.second.IsScalar()) throw ValidationError(join(name, key), "must be a scalar");
      }
    } else {
      if (known_section(name)) throw ValidationError(name, "must be a mapping");
      if (!known_key("", name)) throw ValidationError(name, "unknown key");
      if (!entry.second.IsScalar()) throw ValidationError(name, "must be a scalar");
    }
  }
}

YAML::Node lookup(const YAML::Node& root, std::string_view section, std::string_view key) {
  if (section.empty()) return root[std::string(key)];
  const YAML::Node sec = root[std::string(section)];
  if (!sec) return YAML::Node();
  return sec[std::string(key)];
}

std::optional<double> read(const YAML::Node& root, std::string_view section,
                           std::string_view key) {
  const FieldSpec* spec = find_field(join(section, key));
  const YAML::Node node = lookup(root, section, key);
  if (!node || node.IsNull()) return std::nullopt;
  try {
    return units::to_natural(units::parse_quantity(node.Scalar(), spec->dimension));
  } catch (const DimensionError& e) {
    throw ValidationError(join(section, key), e.what());
  }
}

double require(const YAML::Node& root, std::string_view section, std::string_view key) {
  const auto v = read(root, section, key);
  if (!v) throw ValidationError(join(section, key), "is required");
  return *v;
}

std::string read_switch(const YAML::Node& root, std::string_view section, std::string_view key,
                        std::string fallback) {
  const YAML::Node node = lookup(root, section, key);
  if (!node || node.IsNull()) return fallback;
  return node.Scalar();
}

std::string format_quantity(const units::Quantity& q) {
  char buf[64];
  const char* unit = "";
  switch (q.dimension()) {
    case Dimension::length: unit = " nm"; break;
    case Dimension::time: unit = " fs"; break;
    case Dimension::energy: unit = " eV"; break;
    default: break;
  }
  std::snprintf(buf, sizeof buf, "%.17g%s", q.value(), unit);
  return buf;
}

}  // namespace

struct ScenarioDocument::Impl {
  YAML::Node root;
};

ScenarioDocument::ScenarioDocument(std::unique_ptr<Impl> impl, std::string digest)
    : impl_(std::move(impl)), digest_(std::move(digest)) {}

ScenarioDocument::ScenarioDocument(const ScenarioDocument& other)
    : impl_(std::make_unique<Impl>(Impl{YAML::Clone(other.impl_->root)})),
      digest_(other.digest_) {}

ScenarioDocument& ScenarioDocument::operator=(const ScenarioDocument& other) {
  if (this != &other) *this = ScenarioDocument(other);
  return *this;
}

ScenarioDocument::ScenarioDocument(ScenarioDocument&&) noexcept = default;
ScenarioDocument& ScenarioDocument::operator=(ScenarioDocument&&) noexcept = default;
ScenarioDocument::~ScenarioDocument() = default;

ScenarioDocument ScenarioDocument::from_text(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ValidationError("<file>", std::string("malformed YAML: ") + e.what());
  }
  check_keys(root);
  return ScenarioDocument(std::make_unique<Impl>(Impl{root}), fnv1a_hex(text));
}

ScenarioDocument ScenarioDocument::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("<file>", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

beams::Scenario ScenarioDocument::scenario() const {
  const YAML::Node& root = impl_->root;
  beams::Scenario s;

  const std::string convention = read_switch(root, "", "duration_convention", "paper");
  if (convention != "paper" && convention != "fwhm") {
    throw ValidationError("duration_convention", "must be 'paper' or 'fwhm'");
  }
  const auto duration = [&](std::string_view section) {
    const double d = require(root, section, "duration");
    return convention == "fwhm" ? beams::duration_from_fwhm(d) : d;
  };

  s.pump.wavelength = require(root, "pump", "wavelength");
  s.pump.pulse_energy = require(root, "pump", "pulse_energy");
  s.pump.duration = duration("pump");
  s.pump.waist = require(root, "pump", "waist");
  const std::string mode = read_switch(root, "pump", "waist_mode", "average");
  if (mode == "average") {
    s.pump.waist_mode = beams::EffectiveWaistMode::average;
  } else if (mode == "naive") {
    s.pump.waist_mode = beams::EffectiveWaistMode::naive;
  } else if (mode == "explicit") {
    s.pump.waist_mode = beams::EffectiveWaistMode::explicit_value;
    s.pump.explicit_waist = require(root, "pump", "explicit_waist");
  } else {
    throw ValidationError("pump.waist_mode", "must be average, naive or explicit");
  }

  s.probe.photon_energy = require(root, "probe", "photon_energy");
  s.probe.photon_count = require(root, "probe", "photon_count");
  s.probe.duration = duration("probe");
  s.probe.waist_1 = require(root, "probe", "waist_1");
  s.probe.waist_2 = require(root, "probe", "waist_2");
  s.probe.ellipse_angle = read(root, "probe", "ellipse_angle").value_or(0.0);

  s.offsets.x0 = read(root, "offsets", "x0").value_or(0.0);
  s.offsets.y0 = read(root, "offsets", "y0").value_or(0.0);
  s.offsets.z0 = read(root, "offsets", "z0").value_or(0.0);
  s.offsets.t0 = read(root, "offsets", "t0").value_or(0.0);

  s.purity = read(root, "", "purity");
  if (root["background"]) {
    s.background = beams::Background{require(root, "background", "b"),
                                      require(root, "background", "epsilon")};
  }

  const YAML::Node sum = lookup(root, "oracle", "include_sum_frequency");
  if (sum && !sum.IsNull()) {
    bool include = true;
    if (!YAML::convert<bool>::decode(sum, include)) {
      throw ValidationError("oracle.include_sum_frequency", "must be a boolean");
    }
    if (include) {
      throw ValidationError("oracle.include_sum_frequency",
                            "the (omega + k) channel is not modelled; only false is accepted");
    }
  }

  beams::validate(s);
  return s;
}

units::Dimension ScenarioDocument::dimension_of(std::string_view path) {
  const FieldSpec* spec = find_field(path);
  if (spec == nullptr) throw ValidationError(std::string(path), "not a settable scalar field");
  return spec->dimension;
}

void ScenarioDocument::set(std::string_view path, const units::Quantity& value) {
  const FieldSpec* spec = find_field(path);
  if (spec == nullptr) throw ValidationError(std::string(path), "not a settable scalar field");
  if (value.dimension() != spec->dimension) {
    throw ValidationError(std::string(path), "expects a " +
                                                 std::string(units::to_string(spec->dimension)) +
                                                 " value");
  }
  const std::string text = format_quantity(value);
  if (spec->section.empty()) {
    impl_->root[std::string(spec->key)] = text;
  } else {
    impl_->root[std::string(spec->section)][std::string(spec->key)] = text;
  }
}

std::vector<std::string> field_paths() {
  std::vector<std::string> out;
  for (const auto& f : kFields) out.push_back(join(f.section, f.key));
  return out;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace vacbir::config
