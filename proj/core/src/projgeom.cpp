#include "projforce/projgeom.hpp"

#include <algorithm>
#include <string>

namespace projforce {

std::size_t point_count(int q, int k, std::size_t max_points) {
    if (k < 1) throw Error("dimension k must be at least 1, got " + std::to_string(k));
    // N = 1 + q + ... + q^{k-1}, accumulated against the cap.
    std::size_t n = 0, power = 1;
    for (int i = 0; i < k; ++i) {
        n += power;
        if (n > max_points)
            throw OverflowError("PG(" + std::to_string(k - 1) + "," + std::to_string(q) + ") has more than " +
                                std::to_string(max_points) + " points");
        if (i + 1 < k) power *= static_cast<std::size_t>(q);
    }
    return n;
}

PointList enumerate_points(const Field& f, int k, std::size_t max_points) {
    const int q = f.q();
    const std::size_t n = point_count(q, k, max_points);
    PointList points;
    points.reserve(n);
    // Lexicographic order groups points by the position of the first nonzero
    // coordinate, latest position first: (0,..,0,1) < (0,..,1,*) < ... < (1,*,..,*).
    for (int lead = k - 1; lead >= 0; --lead) {
        std::vector<FieldElement> v(k, 0);
        v[lead] = 1;
        while (true) {
            points.push_back(v);
            // odometer over the free suffix coordinates
            int pos = k - 1;
            while (pos > lead && v[pos] == q - 1) {
                v[pos] = 0;
                --pos;
            }
            if (pos == lead) break;
            ++v[pos];
        }
    }
    return points;
}

std::vector<std::vector<FieldElement>> simplex_codewords(const Field& f, int k, std::size_t max_points) {
    const PointList points = enumerate_points(f, k, max_points);
    const std::size_t n = points.size();
    std::vector<std::vector<FieldElement>> words(n, std::vector<FieldElement>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) words[i][j] = f.dot(points[i], points[j]);
    return words;
}

std::optional<PointIndex> classify_column(const Field& f, std::span<const FieldElement> column,
                                          const PointList& points) {
    std::size_t first = 0;
    while (first < column.size() && column[first] == 0) ++first;
    if (first == column.size()) return std::nullopt;
    std::vector<FieldElement> canon(column.begin(), column.end());
    if (column[first] != 1) {
        const FieldElement scale = f.inv(column[first]);
        for (auto& c : canon) c = f.mul(scale, c);
    }
    auto it = std::lower_bound(points.begin(), points.end(), canon);
    if (it == points.end() || *it != canon)
        throw Error("canonical column not found in point list (length mismatch?)");
    return static_cast<PointIndex>(it - points.begin());
}

IncidenceSystem::IncidenceSystem(const Field& f, int k, std::size_t max_points)
    : field_(f), k_(k), points_(enumerate_points(f, k, max_points)) {
    n_ = static_cast<int>(points_.size());
    row_weight_ = 1;
    for (int i = 1; i < k_; ++i) row_weight_ *= field_.q();
    m_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            m_[static_cast<std::size_t>(i) * n_ + j] = field_.dot(points_[i], points_[j]) != 0 ? 1 : 0;
}

std::pair<std::vector<long long>, long long> IncidenceSystem::apply_inverse(std::span<const long long> v) const {
    if (static_cast<int>(v.size()) != n_)
        throw LengthMismatchError("apply_inverse: vector length " + std::to_string(v.size()) + ", expected " +
                                  std::to_string(n_));
    long long total = 0;
    for (long long x : v) total += x;
    const long long q = field_.q();
    std::vector<long long> numerators(n_);
    for (int i = 0; i < n_; ++i) {
        long long col_sum = 0; // (M^T v)_i, scanning column i
        for (int j = 0; j < n_; ++j)
            if (entry(j, i)) col_sum += v[j];
        numerators[i] = q * col_sum - (q - 1) * total;
    }
    return {std::move(numerators), row_weight_};
}

std::vector<long long> IncidenceSystem::apply(std::span<const long long> v) const {
    if (static_cast<int>(v.size()) != n_)
        throw LengthMismatchError("apply: vector length " + std::to_string(v.size()) + ", expected " +
                                  std::to_string(n_));
    std::vector<long long> out(n_, 0);
    for (int i = 0; i < n_; ++i) {
        long long acc = 0;
        for (int j = 0; j < n_; ++j)
            if (entry(i, j)) acc += v[j];
        out[i] = acc;
    }
    return out;
}

} // namespace projforce
