#pragma once
// Shared basics: error taxonomy, angle helpers, a small 2-d vector.
//
// Conventions used across the library:
//   - geometry specs (diameters, feeds, widths) are in mm,
//   - deviations, surface heights and roughness parameters are in um,
//   - angles are degrees at public interfaces, radians inside computations.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gearlab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gear/tool specs that cannot describe a real part (ratios, radii, ordering).
struct InvalidGeometry : Error {
    using Error::Error;
};

// Out-of-domain arguments (negative feeds, zero steps, bad enums, ...).
struct InvalidParams : Error {
    using Error::Error;
};

// Malformed input text; carries a 1-based line number when known.
struct ParseError : Error {
    explicit ParseError(const std::string& what, long line = 0)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_no(line) {}
    long line_no = 0;
};

// File could not be opened / written.
struct IoFailure : Error {
    using Error::Error;
};

// Least-squares or iterative fit did not produce a usable answer.
struct FitFailure : Error {
    using Error::Error;
};

// Trace shorter than the filter needs.
struct FilterLengthError : Error {
    using Error::Error;
};

// Too few samples for the requested statistic.
struct InsufficientData : Error {
    using Error::Error;
};

// No countable features (crossings, peaks, summits) in the data.
struct NoFeatures : Error {
    using Error::Error;
};

// Curve degenerate for the requested construction (constant data etc.).
struct DegenerateCurve : Error {
    using Error::Error;
};

// Simulation left cells that no pass ever cut.
struct EmptyEnvelope : Error {
    using Error::Error;
};

// Two reports cannot be compared (incompatible units).
struct ComparisonMismatch : Error {
    using Error::Error;
};

inline constexpr double pi = std::numbers::pi_v<double>;

constexpr double deg2rad(double d) { return d * (pi / 180.0); }
constexpr double rad2deg(double r) { return r * (180.0 / pi); }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

// Rotate v by an angle given in radians (counter-clockwise positive).
inline Vec2 rotated(const Vec2& v, double rad) {
    const double c = std::cos(rad), s = std::sin(rad);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

}  // namespace gearlab
