#include "vacbir/units.hpp"

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "vacbir/errors.hpp"

namespace vacbir::units {
namespace {

struct UnitEntry {
  std::string_view name;
  Dimension dimension;
  double to_canonical;  // multiply to reach nm / fs / eV / plain
};

constexpr double kPi = 3.14159265358979323846;

constexpr std::array<UnitEntry, 21> kUnits{{
    {"pm", Dimension::length, 1e-3},
    {"nm", Dimension::length, 1.0},
    {"um", Dimension::length, 1e3},
    {"\xC2\xB5m", Dimension::length, 1e3},  // µm
    {"mm", Dimension::length, 1e6},
    {"cm", Dimension::length, 1e7},
    {"m", Dimension::length, 1e9},
    {"as", Dimension::time, 1e-3},
    {"fs", Dimension::time, 1.0},
    {"ps", Dimension::time, 1e3},
    {"ns", Dimension::time, 1e6},
    {"meV", Dimension::energy, 1e-3},
    {"eV", Dimension::energy, 1.0},
    {"keV", Dimension::energy, 1e3},
    {"MeV", Dimension::energy, 1e6},
    {"GeV", Dimension::energy, 1e9},
    {"mJ", Dimension::energy, 1e-3 * Constants::joule},
    {"J", Dimension::energy, Constants::joule},
    {"kJ", Dimension::energy, 1e3 * Constants::joule},
    {"rad", Dimension::dimensionless, 1.0},
    {"deg", Dimension::dimensionless, kPi / 180.0},
}};

// Angles in sub-radian units are common enough for scan bounds.
constexpr std::array<UnitEntry, 2> kAngleUnits{{
    {"mrad", Dimension::dimensionless, 1e-3},
    {"urad", Dimension::dimensionless, 1e-6},
}};

const UnitEntry* find_unit(std::string_view name) {
  for (const auto& u : kUnits) {
    if (u.name == name) return &u;
  }
  for (const auto& u : kAngleUnits) {
    if (u.name == name) return &u;
  }
  return nullptr;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

void require_same(Dimension a, Dimension b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string("cannot ") + op + " " + std::string(to_string(a)) +
                         " and " + std::string(to_string(b)));
  }
}

}  // namespace

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::length: return "length";
    case Dimension::time: return "time";
    case Dimension::energy: return "energy";
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::photon_count: return "photon-count";
    case Dimension::field_squared: return "field-squared";
  }
  return "unknown";
}

std::string constants_digest() {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g|%.17g|%.17g|%.17g|%.17g", Constants::electron_mass,
                Constants::hbar_c, Constants::hbar, Constants::fine_structure,
                Constants::joule);
  // FNV-1a, 64 bit
  std::uint64_t h = 1469598103934665603ull;
  for (const char* p = buf; *p != '\0'; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

Quantity Quantity::operator+(const Quantity& other) const {
  require_same(dimension_, other.dimension_, "add");
  return {value_ + other.value_, dimension_};
}

Quantity Quantity::operator-(const Quantity& other) const {
  require_same(dimension_, other.dimension_, "subtract");
  return {value_ - other.value_, dimension_};
}

double Quantity::operator/(const Quantity& other) const {
  require_same(dimension_, other.dimension_, "divide");
  return value_ / other.value_;
}

double to_natural(const Quantity& q) {
  switch (q.dimension()) {
    case Dimension::length: return q.value() / Constants::hbar_c;
    case Dimension::time: return q.value() / Constants::hbar;
    case Dimension::energy:
    case Dimension::dimensionless:
    case Dimension::photon_count:
    case Dimension::field_squared: return q.value();
  }
  throw DimensionError("unknown dimension");
}

Quantity from_natural(double value, Dimension target) {
  switch (target) {
    case Dimension::length: return {value * Constants::hbar_c, target};
    case Dimension::time: return {value * Constants::hbar, target};
    case Dimension::energy:
    case Dimension::dimensionless:
    case Dimension::photon_count:
    case Dimension::field_squared: return {value, target};
  }
  throw DimensionError("unknown dimension");
}

Quantity parse_quantity(std::string_view text, Dimension expected) {
  const std::string s(trim(text));
  if (s.empty()) throw DimensionError("empty quantity");
  errno = 0;
  char* end = nullptr;
  const double number = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || errno == ERANGE || !std::isfinite(number)) {
    throw DimensionError("not a number: '" + s + "'");
  }
  const std::string_view unit = trim(std::string_view(end));
  if (unit.empty()) {
    if (expected == Dimension::dimensionless || expected == Dimension::photon_count) {
      return {number, expected};
    }
    throw DimensionError("missing unit for " + std::string(to_string(expected)) + " in '" + s +
                         "'");
  }
  const UnitEntry* u = find_unit(unit);
  if (u == nullptr) throw DimensionError("unknown unit '" + std::string(unit) + "'");
  if (u->dimension != expected) {
    throw DimensionError("unit '" + std::string(unit) + "' is a " +
                         std::string(to_string(u->dimension)) + ", expected " +
                         std::string(to_string(expected)));
  }
  return {number * u->to_canonical, expected};
}

double value_in(const Quantity& q, std::string_view unit) {
  if (unit.empty()) return q.value();
  const UnitEntry* u = find_unit(unit);
  if (u == nullptr) throw DimensionError("unknown unit '" + std::string(unit) + "'");
  require_same(u->dimension, q.dimension(), "express");
  return q.value() / u->to_canonical;
}

}  // namespace vacbir::units
