#include "projforce/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace projforce {

namespace {

long long pow_ll(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Run fn on every distinct permutation of s (sorted ascending) in
// lexicographic order; fn returning true stops the sweep.
template <typename Fn>
void for_each_arrangement(std::vector<long long> s, Fn&& fn) {
    std::sort(s.begin(), s.end());
    do {
        if (fn(s)) return;
    } while (std::next_permutation(s.begin(), s.end()));
}

std::optional<std::vector<long long>> integral_inverse(const IncidenceSystem& sys, const Arrangement& pi) {
    auto [nums, den] = sys.apply_inverse(pi);
    std::vector<long long> d;
    d.reserve(nums.size());
    for (long long num : nums) {
        if (num % den != 0) return std::nullopt;
        d.push_back(num / den);
    }
    return d;
}

} // namespace

ForcingVerdict decide_bruteforce(const Field& f, int k, WeightChangeMultiset s) {
    IncidenceSystem sys(f, k);
    if (sys.n_points() > bruteforce_max_points) throw TooLargeError("bruteforce oracle is capped at 7 points");
    if (static_cast<int>(s.size()) != sys.n_points()) throw SizeMismatchError("multiset size does not match (q^k - 1)/(q - 1)");
    std::sort(s.begin(), s.end());

    ForcingVerdict v;
    v.delta = split_difference(f, k, s);
    v.delta_threshold = -sys.row_weight();

    std::optional<Arrangement> negative_pi;
    bool integral_seen = false;
    for_each_arrangement(s, [&](const Arrangement& pi) {
        ++v.stats.nodes;
        ++v.stats.arrangements;
        auto d = integral_inverse(sys, pi);
        if (!d) return false;
        ++v.stats.integral;
        integral_seen = true;
        if (std::any_of(d->begin(), d->end(), [](long long x) { return x < 0; })) {
            negative_pi = pi;
            return true;
        }
        return false;
    });

    if (negative_pi) {
        auto d = DifferenceVector::from_inverse(sys.apply_inverse(*negative_pi).first, sys.row_weight());
        LinearMap map = construct_map(sys, d);
        Witness w{std::move(map), WeightChangeMultiset{}, std::move(d)};
        w.claimed_changes = weight_changes(w.map, sys.points());
        if (!verify_witness(sys, s, w)) throw Error("bruteforce witness failed verification; this is a bug");
        v.status = ForcingStatus::NotForcing;
        v.reason = ForcingReason::ExhaustiveSearch;
        v.witness = std::move(w);
    } else if (integral_seen) {
        v.status = ForcingStatus::Forcing;
        v.reason = ForcingReason::ExhaustiveSearch;
    } else {
        v.status = ForcingStatus::ForcingVacuous;
        v.reason = ForcingReason::NotRealizable;
    }
    return v;
}

std::vector<std::vector<long long>> integral_difference_vectors(const Field& f, int k, WeightChangeMultiset s) {
    IncidenceSystem sys(f, k);
    if (sys.n_points() > bruteforce_max_points) throw TooLargeError("bruteforce oracle is capped at 7 points");
    if (static_cast<int>(s.size()) != sys.n_points()) throw SizeMismatchError("multiset size does not match (q^k - 1)/(q - 1)");

    std::vector<std::vector<long long>> out;
    for_each_arrangement(std::move(s), [&](const Arrangement& pi) {
        if (auto d = integral_inverse(sys, pi)) out.push_back(std::move(*d));
        return false;
    });
    return out;
}

CharacterizationResult ab_characterization(int k, long long a, long long b) {
    if (k < 2 || a < 0 || b < 0) throw Error("ab characterization needs k >= 2 and nonnegative entries");
    const long long half = pow_ll(2, k - 2);
    const long long full = pow_ll(2, k - 1);
    CharacterizationResult r;
    r.realizable = (a % half == 0) && (b % full == 0);
    if (r.realizable) r.forcing = (b <= 2 * a);
    return r;
}

CharacterizationResult abc_characterization(int k, long long a, long long b, long long c) {
    if (k < 2 || a < 0 || b < 0 || c < 0) throw Error("abc characterization needs k >= 2 and nonnegative entries");
    const long long half = pow_ll(2, k - 2);
    const long long full = pow_ll(2, k - 1);
    CharacterizationResult r;
    const bool divisible = (a % half == 0) && (b % half == 0) && (c % half == 0);
    const int congruent = static_cast<int>(a % full == 0) + static_cast<int>(b % full == 0) + static_cast<int>(c % full == 0);
    r.realizable = divisible && (congruent == 1 || congruent == 3);
    if (r.realizable && k >= 3) {
        const bool triangle = (a <= b + c) && (b <= a + c) && (c <= a + b);
        r.forcing = triangle && (3 * a - b - c >= 0);
    }
    return r;
}

ForcingStatus exhaustive_map_check(const Field& f, int k, const WeightChangeMultiset& s, int max_cols) {
    if (f.q() != 2 || k != 2 || max_cols > map_check_max_cols)
        throw TooLargeError("map-check oracle is limited to q=2, k=2, at most 8 columns");
    IncidenceSystem sys(f, k);
    const int n = sys.n_points();
    if (static_cast<int>(s.size()) != n) throw SizeMismatchError("multiset size does not match (q^k - 1)/(q - 1)");

    WeightChangeMultiset target = s;
    std::sort(target.begin(), target.end());
    const long long total = std::accumulate(target.begin(), target.end(), 0LL);
    const long long col_weight = sys.row_weight();

    // Enumerate nonnegative vectors of a fixed coordinate sum.
    auto compositions = [n](long long sum, auto&& emit) {
        std::vector<long long> v(static_cast<std::size_t>(n), 0);
        auto rec = [&](auto&& self, int pos, long long left) -> bool {
            if (pos == n - 1) {
                v[static_cast<std::size_t>(pos)] = left;
                return emit(v);
            }
            for (long long x = 0; x <= left; ++x) {
                v[static_cast<std::size_t>(pos)] = x;
                if (self(self, pos + 1, left - x)) return true;
            }
            return false;
        };
        return rec(rec, 0, sum);
    };

    auto spans = [&](const std::vector<long long>& r) {
        int cols = 0;
        for (long long x : r) cols += (x != 0);
        if (cols == 0) return false;
        FqMatrix m(f, k, cols);
        int j = 0;
        for (int p = 0; p < n; ++p) {
            if (r[static_cast<std::size_t>(p)] == 0) continue;
            for (int i = 0; i < k; ++i) m.at(i, j) = sys.points()[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
            ++j;
        }
        return rank(m) == k;
    };

    // Column counts fix sum(Q): the weight-change total is col_weight * (sum R - sum Q).
    if (total % col_weight != 0) return ForcingStatus::Forcing;

    bool violation = false;
    for (long long sum_r = 1; sum_r <= max_cols && !violation; ++sum_r) {
        const long long sum_q = sum_r - total / col_weight;
        if (sum_q < 0 || sum_q > sum_r) continue;
        compositions(sum_r, [&](const std::vector<long long>& r) {
            if (!spans(r)) return false;
            return compositions(sum_q, [&](const std::vector<long long>& q) {
                std::vector<long long> d(static_cast<std::size_t>(n));
                for (int p = 0; p < n; ++p) d[static_cast<std::size_t>(p)] = r[static_cast<std::size_t>(p)] - q[static_cast<std::size_t>(p)];
                std::vector<long long> w = sys.apply(d);
                std::sort(w.begin(), w.end());
                if (w != target) return false;
                for (int p = 0; p < n; ++p)
                    if (q[static_cast<std::size_t>(p)] > r[static_cast<std::size_t>(p)]) {
                        violation = true;
                        return true;
                    }
                return false;
            });
        });
    }
    return violation ? ForcingStatus::NotForcing : ForcingStatus::Forcing;
}

} // namespace projforce
