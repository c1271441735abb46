#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ringloc {

inline constexpr double kPi = 3.14159265358979323846;

/// Execution policy for the data-parallel kernels. Every kernel that accepts
/// a policy must produce bitwise-identical output under both; the serial path
/// doubles as the reference implementation in tests and benchmarks.
enum class Exec { Serial, Parallel };

/// Wraps an angle to [-pi, pi).
inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

/// Filesystem-level failure (missing file, unwritable directory).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or binary input. Carries a byte or line position when
/// one is known; position() is -1 otherwise.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, long long position = -1)
      : std::runtime_error(what), position_(position) {}
  long long position() const { return position_; }

 private:
  long long position_;
};

/// Structural violation of an on-disk container format (bad magic, version,
/// truncation).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose shapes or scales do not agree.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Geometry too ill-conditioned to solve (fewer than two usable constraints,
/// or all constraint directions collinear).
class DegenerateGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ringloc
