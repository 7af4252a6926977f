#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace pwl2 {

/// A point or direction in the plane.
struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    [[nodiscard]] double norm() const { return std::hypot(x1, x2); }
    [[nodiscard]] bool is_zero() const { return x1 == 0.0 && x2 == 0.0; }
    [[nodiscard]] bool is_finite() const { return std::isfinite(x1) && std::isfinite(x2); }

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x1, -a.x2}; }
    friend Vec2 operator*(double k, Vec2 a) { return {k * a.x1, k * a.x2}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

[[nodiscard]] inline double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }

/// z-component of a x b. Positive when b lies counter-clockwise of a.
[[nodiscard]] inline double cross(Vec2 a, Vec2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }

/// Real 2x2 matrix, row-major entries.
struct Mat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    [[nodiscard]] double trace() const { return a11 + a22; }
    [[nodiscard]] double det() const { return a11 * a22 - a12 * a21; }
    [[nodiscard]] double max_abs() const;
    [[nodiscard]] bool is_finite() const;

    /// Throws Error(Degenerate) when singular.
    [[nodiscard]] Mat2 inverse() const;

    friend Vec2 operator*(const Mat2& m, Vec2 v) {
        return {m.a11 * v.x1 + m.a12 * v.x2, m.a21 * v.x1 + m.a22 * v.x2};
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
                a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
    }
    friend Mat2 operator*(double k, const Mat2& m) {
        return {k * m.a11, k * m.a12, k * m.a21, k * m.a22};
    }
    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// The two half-planes of the normalized system: Plus is x1 > 0, Minus is x1 <= 0.
enum class Side { Plus, Minus };

[[nodiscard]] constexpr Side opposite(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }
[[nodiscard]] const char* to_string(Side s);

enum class ErrorCode {
    InvalidArgument,
    InvalidBoundary,
    NotObservable,
    FocusHasNoDominantReal,
    OriginIsEquilibrium,
    WrongSide,
    InvalidFamily,
    Degenerate,
};

[[nodiscard]] const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<Side> side = std::nullopt)
        : std::runtime_error(what), code_(code), side_(side) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    /// Which half of the system triggered the error, when that is meaningful.
    [[nodiscard]] std::optional<Side> side() const noexcept { return side_; }

private:
    ErrorCode code_;
    std::optional<Side> side_;
};

}  // namespace pwl2
