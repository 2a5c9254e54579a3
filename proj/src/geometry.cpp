#include "confgas/geometry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace confgas {
namespace {

constexpr double kPi = std::numbers::pi;

double signed_area(const Ring& ring) {
  double twice = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

double ring_length(const Ring& ring) {
  double total = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    total += std::hypot(q.x - p.x, q.y - p.y);
  }
  return total;
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed-segment intersection test (touching counts).
bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(p1, q1, q2)) return true;
  if (d2 == 0 && on_segment(p2, q1, q2)) return true;
  if (d3 == 0 && on_segment(q1, p1, p2)) return true;
  if (d4 == 0 && on_segment(q2, p1, p2)) return true;
  return false;
}

bool point_in_ring(const Point& p, const Ring& ring) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point& a = ring[i];
    const Point& b = ring[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

void check_simple(const Ring& ring, const std::string& name) {
  const std::size_t n = ring.size();
  if (n < 3) throw GeometryError(name + " ring needs at least 3 vertices");
  for (const Point& p : ring) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw GeometryError(name + " ring has a non-finite vertex");
  }
  if (std::abs(signed_area(ring)) == 0.0) throw GeometryError(name + " ring is degenerate (zero area)");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n])) {
        throw GeometryError(name + " ring is not simple");
      }
    }
  }
}

bool rings_cross(const Ring& a, const Ring& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) return true;
    }
  }
  return false;
}

double parse_number(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw GeometryError("cannot parse number '" + text + "' in " + context);
  }
  if (used != text.size()) throw GeometryError("trailing characters in '" + text + "' in " + context);
  return value;
}

std::vector<double> parse_list(const std::string& text, const std::string& context) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, context));
  return out;
}

struct Validator {
  void operator()(const shape::Rectangle& r) const {
    if (!(r.a > 0.0 && r.b > 0.0) || !std::isfinite(r.a) || !std::isfinite(r.b)) {
      throw GeometryError("rectangle sides must be positive");
    }
  }
  void operator()(const shape::Disk& d) const {
    if (!(d.radius > 0.0) || !std::isfinite(d.radius)) throw GeometryError("disk radius must be positive");
  }
  void operator()(const shape::Annulus& a) const {
    if (!(a.inner > 0.0 && a.inner < a.outer) || !std::isfinite(a.outer)) {
      throw GeometryError("annulus requires 0 < inner < outer");
    }
  }
  void operator()(const shape::PolygonWithHoles& p) const {
    check_simple(p.outer, "outer");
    for (std::size_t k = 0; k < p.holes.size(); ++k) {
      const Ring& hole = p.holes[k];
      check_simple(hole, "hole");
      if (rings_cross(p.outer, hole)) throw GeometryError("hole touches the outer ring");
      for (const Point& v : hole) {
        if (!point_in_ring(v, p.outer)) throw GeometryError("hole lies outside the outer ring");
      }
      for (std::size_t m = 0; m < k; ++m) {
        const Ring& other = p.holes[m];
        if (rings_cross(hole, other) || point_in_ring(hole[0], other) || point_in_ring(other[0], hole)) {
          throw GeometryError("holes overlap");
        }
      }
    }
  }
};

}  // namespace

PlanarDomain::PlanarDomain(double area, double perimeter, int holes)
    : area_(area), perimeter_(perimeter), holes_(holes) {
  if (!(area > 0.0) || !std::isfinite(area)) throw GeometryError("area must be positive");
  if (!(perimeter >= 0.0) || !std::isfinite(perimeter)) throw GeometryError("perimeter must be non-negative");
  if (holes < 0) throw GeometryError("hole count must be non-negative");
  if (perimeter == 0.0) {
    if (holes != 1) {
      throw GeometryError("zero perimeter is reserved for the free-space configuration (holes = 1)");
    }
  } else if (perimeter * perimeter < 4.0 * kPi * area * (1.0 - 1e-12)) {
    throw GeometryError("isoperimetric inequality violated: L^2 < 4 pi Omega");
  }
}

PlanarDomain PlanarDomain::scaled(double s) const {
  if (!(s > 0.0)) throw GeometryError("scale factor must be positive");
  return PlanarDomain(s * s * area_, s * perimeter_, holes_);
}

TubeDomain::TubeDomain(PlanarDomain cross_section, double length_z)
    : cross_section_(cross_section), length_z_(length_z) {
  if (!(length_z > 0.0) || !std::isfinite(length_z)) throw GeometryError("tube length must be positive");
  if (length_z < 10.0 * std::sqrt(cross_section.area())) {
    throw GeometryError("tube too short: length_z must be at least 10 sqrt(cross-section area)");
  }
}

std::optional<std::string> TubeDomain::aspect_warning() const {
  if (length_z_ < 100.0 * std::sqrt(cross_section_.area())) {
    return "length_z < 100 sqrt(area); continuum p_z assumption is marginal";
  }
  return std::nullopt;
}

std::string describe(const ShapeSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, shape::Rectangle>) {
          os << "rect:" << s.a << "," << s.b;
        } else if constexpr (std::is_same_v<T, shape::Disk>) {
          os << "disk:" << s.radius;
        } else if constexpr (std::is_same_v<T, shape::Annulus>) {
          os << "annulus:" << s.inner << "," << s.outer;
        } else {
          os << "polygon(" << s.outer.size() << " vertices, " << s.holes.size() << " holes)";
        }
      },
      spec);
  return os.str();
}

void validate(const ShapeSpec& spec) { std::visit(Validator{}, spec); }

PlanarDomain make_domain(const ShapeSpec& spec) {
  validate(spec);
  return std::visit(
      [](const auto& s) -> PlanarDomain {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, shape::Rectangle>) {
          return PlanarDomain(s.a * s.b, 2.0 * (s.a + s.b), 0);
        } else if constexpr (std::is_same_v<T, shape::Disk>) {
          return PlanarDomain(kPi * s.radius * s.radius, 2.0 * kPi * s.radius, 0);
        } else if constexpr (std::is_same_v<T, shape::Annulus>) {
          return PlanarDomain(kPi * (s.outer * s.outer - s.inner * s.inner),
                              2.0 * kPi * (s.inner + s.outer), 1);
        } else {
          double area = std::abs(signed_area(s.outer));
          double length = ring_length(s.outer);
          for (const Ring& hole : s.holes) {
            area -= std::abs(signed_area(hole));
            length += ring_length(hole);
          }
          if (!(area > 0.0)) throw GeometryError("polygon has no area left after removing holes");
          return PlanarDomain(area, length, static_cast<int>(s.holes.size()));
        }
      },
      spec);
}

shape::PolygonWithHoles read_polygon(std::istream& in) {
  std::vector<Ring> rings(1);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double x, y;
    if (!(ls >> x)) {
      if (!rings.back().empty()) rings.emplace_back();
      continue;
    }
    if (!(ls >> y)) throw GeometryError("polygon line " + std::to_string(line_no) + ": expected 'x y'");
    std::string rest;
    if (ls >> rest) throw GeometryError("polygon line " + std::to_string(line_no) + ": extra tokens");
    rings.back().push_back({x, y});
  }
  if (rings.back().empty()) rings.pop_back();
  if (rings.empty()) throw GeometryError("polygon file has no rings");
  for (Ring& ring : rings) {
    // Tolerate an explicitly closed ring.
    if (ring.size() > 1 && ring.front().x == ring.back().x && ring.front().y == ring.back().y) {
      ring.pop_back();
    }
  }
  shape::PolygonWithHoles poly;
  poly.outer = std::move(rings.front());
  poly.holes.assign(std::make_move_iterator(rings.begin() + 1), std::make_move_iterator(rings.end()));
  return poly;
}

shape::PolygonWithHoles read_polygon_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError("cannot open polygon file '" + path.string() + "'");
  return read_polygon(in);
}

ShapeSpec parse_shape(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw GeometryError("shape '" + text + "' lacks a kind prefix");
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  ShapeSpec spec;
  if (kind == "rect") {
    auto v = parse_list(args, text);
    if (v.size() != 2) throw GeometryError("rect needs two sides: rect:a,b");
    spec = shape::Rectangle{v[0], v[1]};
  } else if (kind == "disk") {
    auto v = parse_list(args, text);
    if (v.size() != 1) throw GeometryError("disk needs one radius: disk:R");
    spec = shape::Disk{v[0]};
  } else if (kind == "annulus") {
    auto v = parse_list(args, text);
    if (v.size() != 2) throw GeometryError("annulus needs two radii: annulus:Ri,Ro");
    spec = shape::Annulus{v[0], v[1]};
  } else if (kind == "polygon") {
    if (args.empty() || args[0] != '@') throw GeometryError("polygon expects polygon:@file");
    spec = read_polygon_file(args.substr(1));
  } else {
    throw GeometryError("unknown shape kind '" + kind + "'");
  }
  validate(spec);
  return spec;
}

double thermal_wavelength(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("temperature must be positive");
  return std::sqrt(2.0 * kPi / T);
}

double weyl_state_sum(const PlanarDomain& dom, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("thermal wavelength must be positive");
  const double value = dom.area() / (lambda * lambda) - 0.25 * dom.perimeter() / lambda + dom.connectivity();
  if (!(value > 0.0)) {
    throw ModelError("Weyl state sum is not positive; wavelength too large for the container");
  }
  return value;
}

}  // namespace confgas
