#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "confgas/error.hpp"

namespace confgas {

/// Natural units: hbar = m = k_B = 1, hence h = 2 pi.
struct UnitSystem {
  static constexpr double hbar = 1.0;
  static constexpr double mass = 1.0;
  static constexpr double boltzmann = 1.0;
};

/// Heat-kernel descriptors of a planar container: area, total boundary
/// length (outer boundary plus every hole boundary) and number of holes.
class PlanarDomain {
 public:
  /// Validates area > 0, perimeter >= 0, the isoperimetric inequality, and
  /// that perimeter == 0 only occurs with exactly one hole (the free-space
  /// reference where both corrections vanish). Throws GeometryError.
  PlanarDomain(double area, double perimeter, int holes);

  /// Configuration with no boundary or connectivity correction.
  static PlanarDomain free_space(double area) { return PlanarDomain(area, 0.0, 1); }

  double area() const noexcept { return area_; }
  double perimeter() const noexcept { return perimeter_; }
  int holes() const noexcept { return holes_; }
  /// (1 - r) / 6, the connectivity coefficient.
  double connectivity() const noexcept { return (1.0 - holes_) / 6.0; }
  bool is_free_space() const noexcept { return perimeter_ == 0.0 && holes_ == 1; }

  PlanarDomain scaled(double s) const;

 private:
  double area_;
  double perimeter_;
  int holes_;
};

/// Long tube of uniform cross-section.
class TubeDomain {
 public:
  /// Requires length_z >= 10 sqrt(area); throws GeometryError otherwise.
  TubeDomain(PlanarDomain cross_section, double length_z);

  const PlanarDomain& cross_section() const noexcept { return cross_section_; }
  double length_z() const noexcept { return length_z_; }
  double volume() const noexcept { return length_z_ * cross_section_.area(); }
  /// Non-empty when length_z < 100 sqrt(area).
  std::optional<std::string> aspect_warning() const;

 private:
  PlanarDomain cross_section_;
  double length_z_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};
using Ring = std::vector<Point>;

namespace shape {
struct Rectangle {
  double a = 1.0;
  double b = 1.0;
};
struct Disk {
  double radius = 1.0;
};
struct Annulus {
  double inner = 0.5;
  double outer = 1.0;
};
struct PolygonWithHoles {
  Ring outer;
  std::vector<Ring> holes;
};
}  // namespace shape

using ShapeSpec = std::variant<shape::Rectangle, shape::Disk, shape::Annulus, shape::PolygonWithHoles>;

std::string describe(const ShapeSpec& spec);

/// Extracts (area, perimeter, holes) from a shape. Polygons: shoelace area
/// of the outer ring minus the hole areas, summed ring lengths, hole count.
PlanarDomain make_domain(const ShapeSpec& spec);

/// Throws GeometryError unless the shape satisfies its invariants (positive
/// lengths, inner < outer, simple rings, holes strictly inside the outer
/// ring and disjoint from each other).
void validate(const ShapeSpec& spec);

/// Parses `rect:a,b`, `disk:R`, `annulus:Ri,Ro` or `polygon:@file`.
ShapeSpec parse_shape(const std::string& text);

/// Reads rings from text: one `x y` vertex per line, rings separated by
/// blank lines, first ring is the outer boundary. `#` starts a comment.
shape::PolygonWithHoles read_polygon(std::istream& in);
shape::PolygonWithHoles read_polygon_file(const std::filesystem::path& path);

/// lambda = h sqrt(beta) / sqrt(2 pi m) = sqrt(2 pi / T).
double thermal_wavelength(double T);

/// Omega / lambda^2 - L / (4 lambda) + (1 - r) / 6. ModelError if the value
/// is not positive (the wavelength is too large for the container).
double weyl_state_sum(const PlanarDomain& dom, double lambda);

}  // namespace confgas
