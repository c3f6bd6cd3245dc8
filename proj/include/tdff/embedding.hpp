#ifndef TDFF_EMBEDDING_HPP
#define TDFF_EMBEDDING_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "tdff/errors.hpp"

namespace tdff {

/// A feature vector. Dimension is the element count; all values must be
/// finite, and vectors entering a template are unit-norm.
using EmbeddingVector = std::vector<double>;

/// Norms below this are treated as zero (degenerate embedding upstream).
inline constexpr double kNormEpsilon = 1e-12;

/// Tolerance on the unit-norm invariant for stored encodings.
inline constexpr double kUnitNormTolerance = 1e-5;

inline std::size_t dim(const EmbeddingVector& v) { return v.size(); }

inline bool all_finite(const EmbeddingVector& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

inline double squared_norm(const EmbeddingVector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

inline double l2_norm(const EmbeddingVector& v) { return std::sqrt(squared_norm(v)); }

inline double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size()) {
        throw DimMismatchError("dot: dims " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_unit_norm(const EmbeddingVector& v, double tol = kUnitNormTolerance) {
    return std::abs(l2_norm(v) - 1.0) <= tol;
}

}  // namespace tdff

#endif  // TDFF_EMBEDDING_HPP
