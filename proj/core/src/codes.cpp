#include "projforce/codes.hpp"

#include <algorithm>
#include <string>

namespace projforce {

std::vector<FieldElement> FqMatrix::column(int j) const {
    std::vector<FieldElement> c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

std::vector<FieldElement> FqMatrix::left_mul(std::span<const FieldElement> x) const {
    if (static_cast<int>(x.size()) != rows)
        throw LengthMismatchError("left_mul: vector length " + std::to_string(x.size()) + ", expected " +
                                  std::to_string(rows));
    std::vector<FieldElement> out(cols, 0);
    for (int i = 0; i < rows; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < cols; ++j) out[j] = field.add(out[j], field.mul(x[i], at(i, j)));
    }
    return out;
}

int rank(const FqMatrix& m) {
    FqMatrix w = m;
    const Field& f = w.field;
    int r = 0;
    for (int col = 0; col < w.cols && r < w.rows; ++col) {
        int pivot = -1;
        for (int i = r; i < w.rows; ++i)
            if (w.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < w.cols; ++j) std::swap(w.a[static_cast<std::size_t>(pivot) * w.cols + j],
                                                   w.a[static_cast<std::size_t>(r) * w.cols + j]);
        const FieldElement scale = f.inv(w.at(r, col));
        for (int j = col; j < w.cols; ++j) w.at(r, j) = f.mul(scale, w.at(r, j));
        for (int i = 0; i < w.rows; ++i) {
            if (i == r || w.at(i, col) == 0) continue;
            const FieldElement factor = w.at(i, col);
            for (int j = col; j < w.cols; ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(factor, w.at(r, j)));
        }
        ++r;
    }
    return r;
}

long long hamming_weight(std::span<const FieldElement> v) {
    return std::count_if(v.begin(), v.end(), [](FieldElement c) { return c != 0; });
}

GeneratorMatrix::GeneratorMatrix(FqMatrix m) : m_(std::move(m)) {
    const int r = rank(m_);
    if (r != m_.rows)
        throw RankDeficientError("generator matrix has rank " + std::to_string(r) + ", expected " +
                                 std::to_string(m_.rows));
}

LinearMap::LinearMap(GeneratorMatrix d, FqMatrix c) : domain(std::move(d)), image(std::move(c)) {
    if (domain.k() != image.rows)
        throw LengthMismatchError("image has " + std::to_string(image.rows) + " rows, domain has " +
                                  std::to_string(domain.k()));
    if (!(domain.matrix().field == image.field))
        throw LengthMismatchError("domain and image are over different fields");
}

MultiplicityVector multiplicities(const FqMatrix& m, const PointList& points) {
    MultiplicityVector mv;
    mv.counts.assign(points.size(), 0);
    for (int j = 0; j < m.cols; ++j) {
        const auto col = m.column(j);
        if (auto p = classify_column(m.field, col, points))
            ++mv.counts[*p];
        else
            ++mv.zero_cols;
    }
    return mv;
}

std::vector<long long> projective_weights(const GeneratorMatrix& g, const PointList& points) {
    std::vector<long long> w(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        w[i] = hamming_weight(g.matrix().left_mul(points[i]));
    return w;
}

std::vector<long long> weight_change_vector(const LinearMap& phi, const PointList& points) {
    std::vector<long long> d(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto u = phi.domain.matrix().left_mul(points[i]);
        const auto v = phi.image.left_mul(points[i]);
        d[i] = hamming_weight(u) - hamming_weight(v);
    }
    return d;
}

WeightChangeMultiset weight_changes(const LinearMap& phi, const PointList& points) {
    WeightChangeMultiset s = weight_change_vector(phi, points);
    std::sort(s.begin(), s.end());
    return s;
}

bool is_projection(const LinearMap& phi, const PointList& points) {
    const auto r = multiplicities(phi.domain.matrix(), points);
    const auto q = multiplicities(phi.image, points);
    for (std::size_t p = 0; p < points.size(); ++p)
        if (q.counts[p] > r.counts[p]) return false;
    return true;
}

namespace {

// Augmenting path search for image column `u` over the class-compatibility graph.
bool augment(int u, const std::vector<std::vector<int>>& adj, std::vector<int>& match_domain,
             std::vector<char>& visited) {
    for (int v : adj[u]) {
        if (visited[v]) continue;
        visited[v] = 1;
        if (match_domain[v] < 0 || augment(match_domain[v], adj, match_domain, visited)) {
            match_domain[v] = u;
            return true;
        }
    }
    return false;
}

} // namespace

bool is_projection_by_matching(const LinearMap& phi, const PointList& points) {
    const Field& f = phi.image.field;
    // Classify every column of B and C once.
    std::vector<std::optional<PointIndex>> dom_class(phi.domain.n()), img_class(phi.image.cols);
    for (int j = 0; j < phi.domain.n(); ++j)
        dom_class[j] = classify_column(f, phi.domain.matrix().column(j), points);
    for (int j = 0; j < phi.image.cols; ++j)
        img_class[j] = classify_column(f, phi.image.column(j), points);

    std::vector<int> nonzero_img;
    for (int j = 0; j < phi.image.cols; ++j)
        if (img_class[j]) nonzero_img.push_back(j);

    std::vector<std::vector<int>> adj(nonzero_img.size());
    for (std::size_t u = 0; u < nonzero_img.size(); ++u)
        for (int v = 0; v < phi.domain.n(); ++v)
            if (dom_class[v] && *dom_class[v] == *img_class[nonzero_img[u]]) adj[u].push_back(v);

    std::vector<int> match_domain(phi.domain.n(), -1);
    for (std::size_t u = 0; u < nonzero_img.size(); ++u) {
        std::vector<char> visited(phi.domain.n(), 0);
        if (!augment(static_cast<int>(u), adj, match_domain, visited)) return false;
    }
    return true;
}

} // namespace projforce
