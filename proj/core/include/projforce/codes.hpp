#ifndef PROJFORCE_CODES_HPP
#define PROJFORCE_CODES_HPP

#include <span>
#include <vector>

#include "projforce/gf.hpp"
#include "projforce/projgeom.hpp"

namespace projforce {

/// Dense row-major matrix over F_q.
struct FqMatrix {
    Field field;
    int rows = 0;
    int cols = 0;
    std::vector<FieldElement> a; // rows * cols entries

    FqMatrix(Field f, int r, int c) : field(std::move(f)), rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    FieldElement& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    FieldElement at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    std::vector<FieldElement> column(int j) const;

    /// x^T M for a length-rows vector x: the codeword of the row space
    /// selected by x.
    std::vector<FieldElement> left_mul(std::span<const FieldElement> x) const;
};

/// Rank over F_q by Gaussian elimination.
int rank(const FqMatrix& m);

/// Number of nonzero entries.
long long hamming_weight(std::span<const FieldElement> v);

/// Full-row-rank matrix whose rows form a basis of the code it generates.
/// Construction throws RankDeficientError when rank < rows.
class GeneratorMatrix {
public:
    explicit GeneratorMatrix(FqMatrix m);
    const FqMatrix& matrix() const { return m_; }
    int k() const { return m_.rows; }
    int n() const { return m_.cols; }

private:
    FqMatrix m_;
};

/// A linear map phi between codes, specified by a domain generator matrix B
/// and an image matrix C whose row i is phi(row i of B). Image rows need not
/// be independent; zero columns are allowed.
struct LinearMap {
    GeneratorMatrix domain;
    FqMatrix image;

    /// Throws LengthMismatchError when row counts differ or fields differ.
    LinearMap(GeneratorMatrix d, FqMatrix c);
};

/// Per-point column multiplicities of a matrix; zero columns are counted
/// separately and assigned to no point.
struct MultiplicityVector {
    std::vector<long long> counts; // indexed by PointIndex
    long long zero_cols = 0;
};

/// Multiset of projective weight changes, stored sorted ascending.
using WeightChangeMultiset = std::vector<long long>;

/// counts[p] = number of columns of m projectively equivalent to point p.
MultiplicityVector multiplicities(const FqMatrix& m, const PointList& points);

/// Weight of the codeword x^T B for each point x, in the global point order.
/// Equals M * multiplicities(B) (tested, not assumed).
std::vector<long long> projective_weights(const GeneratorMatrix& g, const PointList& points);

/// w(x^T B) - w(x^T C) for each point x, in the global point order.
std::vector<long long> weight_change_vector(const LinearMap& phi, const PointList& points);

/// The projective multiset of weight changes of phi, sorted ascending.
WeightChangeMultiset weight_changes(const LinearMap& phi, const PointList& points);

/// Multiplicity criterion: phi is a projection iff no projective multiplicity
/// increases, i.e. multiplicities(C) <= multiplicities(B) componentwise.
bool is_projection(const LinearMap& phi, const PointList& points);

/// Independent matrix-shape check: an injection from the nonzero image
/// columns into the domain columns matching projective classes, found by
/// augmenting-path bipartite matching. Agrees with is_projection (cross-tested).
bool is_projection_by_matching(const LinearMap& phi, const PointList& points);

} // namespace projforce

#endif
