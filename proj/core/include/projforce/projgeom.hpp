#ifndef PROJFORCE_PROJGEOM_HPP
#define PROJFORCE_PROJGEOM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "projforce/gf.hpp"

namespace projforce {

/// Canonical representative of a point of PG(k-1,q): a nonzero length-k
/// vector whose first nonzero coordinate is 1.
using PointList = std::vector<std::vector<FieldElement>>;

/// Rank of a point in the global ordering (lexicographic on the integer
/// encodings of the canonical coordinates). Every module uses this one order.
using PointIndex = int;

inline constexpr std::size_t default_point_cap = 10000;

/// Number of points (q^k - 1)/(q - 1); throws OverflowError beyond the cap.
std::size_t point_count(int q, int k, std::size_t max_points = default_point_cap);

/// The canonical points of PG(k-1,q) in the global order. The k x N matrix
/// with these as columns is G_{k,q}.
PointList enumerate_points(const Field& f, int k, std::size_t max_points = default_point_cap);

/// The N projective codewords of the simplex code: for each point p the
/// vector (dot(p, point_j))_j. Every returned vector has weight q^{k-1}.
std::vector<std::vector<FieldElement>> simplex_codewords(const Field& f, int k,
                                                         std::size_t max_points = default_point_cap);

/// Canonicalize a column (scale so its first nonzero entry is 1) and locate
/// it in the global point order. Returns nullopt for the zero column.
std::optional<PointIndex> classify_column(const Field& f, std::span<const FieldElement> column,
                                          const PointList& points);

/// M_{k,q}: the N x N 0/1 matrix with entry (i,j) = 0 iff point_i . point_j = 0,
/// together with the exact integer action of its closed-form inverse
/// (q M^T - (q-1) J) / q^{k-1}.
class IncidenceSystem {
public:
    IncidenceSystem(const Field& f, int k, std::size_t max_points = default_point_cap);

    const Field& field() const { return field_; }
    int k() const { return k_; }
    int n_points() const { return n_; }
    const PointList& points() const { return points_; }

    int entry(PointIndex i, PointIndex j) const { return m_[static_cast<std::size_t>(i) * n_ + j]; }

    /// q^{k-1}, the common weight of the simplex codewords and the common
    /// row/column sum of M.
    long long row_weight() const { return row_weight_; }

    /// Exact inverse action: numerators[i] = q*(M^T v)_i - (q-1)*sum(v), the
    /// rational result M^{-1} v being numerators / q^{k-1} componentwise.
    /// Pure integer arithmetic. Throws LengthMismatchError.
    std::pair<std::vector<long long>, long long> apply_inverse(std::span<const long long> v) const;

    /// M v (integer arithmetic). Throws LengthMismatchError.
    std::vector<long long> apply(std::span<const long long> v) const;

private:
    Field field_;
    int k_;
    int n_;
    PointList points_;
    std::vector<std::uint8_t> m_; // row-major n_ x n_
    long long row_weight_;
};

} // namespace projforce

#endif
