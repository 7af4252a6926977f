#include "pwl2/linalg.hpp"

#include <algorithm>

namespace pwl2 {

double Mat2::max_abs() const {
    return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

bool Mat2::is_finite() const {
    return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) && std::isfinite(a22);
}

Mat2 Mat2::inverse() const {
    const double d = det();
    if (d == 0.0 || !std::isfinite(d)) {
        throw Error(ErrorCode::Degenerate, "matrix is singular");
    }
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

const char* to_string(Side s) {
    return s == Side::Plus ? "plus" : "minus";
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidBoundary: return "InvalidBoundary";
        case ErrorCode::NotObservable: return "NotObservable";
        case ErrorCode::FocusHasNoDominantReal: return "FocusHasNoDominantReal";
        case ErrorCode::OriginIsEquilibrium: return "OriginIsEquilibrium";
        case ErrorCode::WrongSide: return "WrongSide";
        case ErrorCode::InvalidFamily: return "InvalidFamily";
        case ErrorCode::Degenerate: return "Degenerate";
    }
    return "Unknown";
}

}  // namespace pwl2
