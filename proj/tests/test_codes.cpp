#include <doctest.h>

#include <algorithm>
#include <random>

#include "projforce/codes.hpp"

using namespace projforce;

namespace {

FqMatrix from_rows(const Field& f, const std::vector<std::vector<int>>& rows) {
    FqMatrix m(f, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            m.at(i, j) = static_cast<FieldElement>(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return m;
}

// The two maps from the worked example: V1 is a simplex code, V2 shares a
// codeword class; both send every generator to (1,1).
FqMatrix example_v1(const Field& f) {
    return from_rows(f, {{1, 1, 1, 1, 0, 0, 0}, {1, 1, 0, 0, 1, 1, 0}, {1, 0, 1, 0, 1, 0, 1}});
}

FqMatrix example_v2(const Field& f) {
    return from_rows(f, {{1, 1, 1, 1, 0, 0, 0}, {1, 1, 1, 0, 1, 0, 0}, {1, 1, 0, 0, 0, 1, 1}});
}

FqMatrix example_image(const Field& f) { return from_rows(f, {{1, 1}, {1, 1}, {1, 1}}); }

FqMatrix random_matrix(const Field& f, int rows, int cols, std::mt19937_64& rng) {
    FqMatrix m(f, rows, cols);
    for (auto& e : m.a) e = static_cast<FieldElement>(rng() % static_cast<unsigned>(f.q()));
    return m;
}

} // namespace

TEST_CASE("matrix access, columns, and row-space combinations") {
    Field f(3);
    FqMatrix m = from_rows(f, {{0, 1, 2}, {1, 0, 1}});
    CHECK(m.column(2) == std::vector<FieldElement>{2, 1});
    const std::vector<FieldElement> x = {2, 1};
    CHECK(m.left_mul(x) == std::vector<FieldElement>{1, 2, 2}); // 2*(0,1,2) + (1,0,1)
    CHECK_THROWS_AS(m.left_mul(std::vector<FieldElement>{1}), LengthMismatchError);
}

TEST_CASE("rank over several fields") {
    Field f2(2);
    CHECK(rank(from_rows(f2, {{1, 0}, {0, 1}})) == 2);
    CHECK(rank(from_rows(f2, {{1, 1}, {1, 1}})) == 1);
    CHECK(rank(from_rows(f2, {{0, 0}, {0, 0}})) == 0);
    CHECK(rank(example_v1(f2)) == 3);
    CHECK(rank(example_v2(f2)) == 3);

    Field f4(4);
    // Rows differ by the scalar 2, so the rank drops.
    CHECK(rank(from_rows(f4, {{1, 2, 3}, {2, 3, 1}})) == 1);
    CHECK(rank(from_rows(f4, {{1, 2, 3}, {2, 3, 2}})) == 2);
}

TEST_CASE("hamming weight") {
    CHECK(hamming_weight(std::vector<FieldElement>{0, 0, 0}) == 0);
    CHECK(hamming_weight(std::vector<FieldElement>{1, 0, 2, 3}) == 3);
}

TEST_CASE("generator matrices must have full row rank") {
    Field f(2);
    CHECK_THROWS_AS(GeneratorMatrix(from_rows(f, {{1, 1, 0}, {1, 1, 0}})), RankDeficientError);
    GeneratorMatrix g(example_v1(f));
    CHECK(g.k() == 3);
    CHECK(g.n() == 7);
}

TEST_CASE("linear maps validate dimensions and fields") {
    Field f(2);
    CHECK_NOTHROW(LinearMap(GeneratorMatrix(example_v1(f)), example_image(f)));
    CHECK_THROWS_AS(LinearMap(GeneratorMatrix(example_v1(f)), from_rows(f, {{1, 1}, {1, 1}})), LengthMismatchError);
    Field f3(3);
    CHECK_THROWS_AS(LinearMap(GeneratorMatrix(example_v1(f)), from_rows(f3, {{1}, {1}, {1}})), LengthMismatchError);
}

TEST_CASE("column multiplicities") {
    Field f(2);
    const PointList pts = enumerate_points(f, 3);
    const MultiplicityVector r = multiplicities(example_v1(f), pts);
    CHECK(r.counts == std::vector<long long>{1, 1, 1, 1, 1, 1, 1});
    CHECK(r.zero_cols == 0);

    const MultiplicityVector q = multiplicities(example_image(f), pts);
    std::vector<long long> expected(7, 0);
    expected[6] = 2; // both image columns lie in the class of (1,1,1)
    CHECK(q.counts == expected);
    CHECK(q.zero_cols == 0);

    FqMatrix with_zero = from_rows(f, {{1, 0}, {1, 0}, {1, 0}});
    const MultiplicityVector z = multiplicities(with_zero, pts);
    CHECK(z.zero_cols == 1);
    CHECK(z.counts[6] == 1);
}

TEST_CASE("projective weights of the identity code") {
    Field f(2);
    const PointList pts = enumerate_points(f, 2);
    GeneratorMatrix g(from_rows(f, {{1, 0}, {0, 1}}));
    CHECK(projective_weights(g, pts) == std::vector<long long>{1, 1, 2});
}

TEST_CASE("simplex codes have constant projective weights") {
    Field f(2);
    const PointList pts = enumerate_points(f, 3);
    GeneratorMatrix g(example_v1(f));
    CHECK(projective_weights(g, pts) == std::vector<long long>(7, 4));
}

TEST_CASE("projective weights equal M times the multiplicity vector") {
    std::mt19937_64 rng(271828);
    for (int q : {2, 3}) {
        Field f(q);
        const int k = 3;
        IncidenceSystem sys(f, k);
        for (int trial = 0; trial < 40; ++trial) {
            const int cols = 3 + static_cast<int>(rng() % 8);
            FqMatrix m = random_matrix(f, k, cols, rng);
            if (rank(m) < k) continue;
            GeneratorMatrix g(std::move(m));
            const MultiplicityVector r = multiplicities(g.matrix(), sys.points());
            CHECK(projective_weights(g, sys.points()) == sys.apply(r.counts));
        }
    }
}

TEST_CASE("weight changes of the worked example") {
    Field f(2);
    const PointList pts = enumerate_points(f, 3);
    LinearMap phi1(GeneratorMatrix(example_v1(f)), example_image(f));
    LinearMap phi2(GeneratorMatrix(example_v2(f)), example_image(f));

    const WeightChangeMultiset expected = {2, 2, 2, 2, 4, 4, 4};
    CHECK(weight_changes(phi1, pts) == expected);
    CHECK(weight_changes(phi2, pts) == expected);

    const std::vector<long long> vec = weight_change_vector(phi1, pts);
    WeightChangeMultiset sorted = vec;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == expected);
}

TEST_CASE("projection criterion distinguishes the two example maps") {
    Field f(2);
    const PointList pts = enumerate_points(f, 3);
    LinearMap phi1(GeneratorMatrix(example_v1(f)), example_image(f));
    LinearMap phi2(GeneratorMatrix(example_v2(f)), example_image(f));
    CHECK_FALSE(is_projection(phi1, pts));
    CHECK(is_projection(phi2, pts));
    CHECK_FALSE(is_projection_by_matching(phi1, pts));
    CHECK(is_projection_by_matching(phi2, pts));
}

TEST_CASE("dropping coordinates is always a projection") {
    Field f(2);
    const PointList pts = enumerate_points(f, 3);
    // Zero image: every coordinate dropped.
    LinearMap zero(GeneratorMatrix(example_v1(f)), from_rows(f, {{0, 0}, {0, 0}, {0, 0}}));
    CHECK(is_projection(zero, pts));
    CHECK(is_projection_by_matching(zero, pts));

    // Keep two of the seven columns.
    FqMatrix kept(f, 3, 2);
    const FqMatrix v1 = example_v1(f);
    for (int i = 0; i < 3; ++i) {
        kept.at(i, 0) = v1.at(i, 0);
        kept.at(i, 1) = v1.at(i, 3);
    }
    LinearMap drop(GeneratorMatrix(example_v1(f)), std::move(kept));
    CHECK(is_projection(drop, pts));
    CHECK(is_projection_by_matching(drop, pts));
}

TEST_CASE("both projection criteria agree on random maps") {
    std::mt19937_64 rng(5550123);
    for (int q : {2, 3}) {
        Field f(q);
        const int k = 2;
        const PointList pts = enumerate_points(f, k);
        int projections_seen = 0;
        int rejections_seen = 0;
        for (int trial = 0; trial < 400; ++trial) {
            const int cols = 2 + static_cast<int>(rng() % 5);
            FqMatrix b = random_matrix(f, k, cols, rng);
            if (rank(b) < k) continue;
            FqMatrix c = random_matrix(f, k, 1 + static_cast<int>(rng() % static_cast<unsigned>(cols)), rng);
            LinearMap phi(GeneratorMatrix(std::move(b)), std::move(c));
            const bool direct = is_projection(phi, pts);
            const bool matched = is_projection_by_matching(phi, pts);
            CHECK(direct == matched);
            (direct ? projections_seen : rejections_seen) += 1;
        }
        CHECK(projections_seen > 0);
        CHECK(rejections_seen > 0);
    }
}
