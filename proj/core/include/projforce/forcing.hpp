#ifndef PROJFORCE_FORCING_HPP
#define PROJFORCE_FORCING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "projforce/codes.hpp"
#include "projforce/projgeom.hpp"

namespace projforce {

/// A permutation of the multiset S assigned to point positions, indexed by
/// PointIndex.
using Arrangement = std::vector<long long>;

struct SearchStats {
    std::uint64_t nodes = 0;              // partial assignments visited
    std::uint64_t arrangements = 0;       // complete arrangements reached
    std::uint64_t integral = 0;           // complete arrangements with M^{-1} pi integral
    std::uint64_t pruned_nonintegral = 0; // cut: a finished coordinate is non-integral
    std::uint64_t pruned_bound = 0;       // cut: no coordinate can still reach a negative integer

    SearchStats& operator+=(const SearchStats& o) {
        nodes += o.nodes;
        arrangements += o.arrangements;
        integral += o.integral;
        pruned_nonintegral += o.pruned_nonintegral;
        pruned_bound += o.pruned_bound;
        return *this;
    }
};

/// Raised when the node budget is exceeded; the verdict is never guessed.
class BudgetExhaustedError : public Error {
public:
    BudgetExhaustedError(const std::string& msg, SearchStats s) : Error(msg), stats(s) {}
    SearchStats stats;
};

struct DecideOptions {
    std::uint64_t max_nodes = 1'000'000'000ULL;
    int threads = 1;
    /// Return Forcing immediately when delta_q(S) > -q^{k-1}, without searching.
    bool use_split_difference = true;
};

enum class ForcingStatus { Forcing, NotForcing, ForcingVacuous };
enum class ForcingReason { SplitDifference, ExhaustiveSearch, NotRealizable };

/// D = R - Q = M^{-1} pi for an integral arrangement pi.
struct DifferenceVector {
    std::vector<long long> d;

    /// Exact division of apply_inverse output; throws NonIntegralError when
    /// the denominator does not divide every numerator.
    static DifferenceVector from_inverse(std::span<const long long> numerators, long long denominator);
};

/// An explicit non-projection map realizing S. Always re-verified before
/// being handed out; never trusted.
struct Witness {
    LinearMap map;
    WeightChangeMultiset claimed_changes;
    DifferenceVector d;
};

struct ForcingVerdict {
    ForcingStatus status = ForcingStatus::Forcing;
    ForcingReason reason = ForcingReason::SplitDifference;
    long long delta = 0;           // split difference of S
    long long delta_threshold = 0; // -q^{k-1}
    std::optional<Witness> witness;
    SearchStats stats;

    bool is_forcing() const { return status != ForcingStatus::NotForcing; }
};

/// delta_q(S): with S sorted ascending, the sum of the smallest q^{k-1}
/// elements minus (q-1) times the sum of the rest. Throws SizeMismatchError
/// when |S| != (q^k - 1)/(q - 1).
long long split_difference(const Field& f, int k, WeightChangeMultiset s);

/// The sufficient test: delta_q(S) > -q^{k-1} implies S is projection-forcing.
bool split_difference_forcing(const Field& f, int k, const WeightChangeMultiset& s);

/// The exact minimum entry of M^{-1} pi over all arrangements pi, as the
/// unreduced pair (delta_q(S), q^{k-1}).
std::pair<long long, long long> min_entry_bound(const Field& f, int k, const WeightChangeMultiset& s);

/// Build a map whose multiplicity difference is d: R = max(d,0)+1 (every
/// point appears, so the domain has rank k) and Q = R - d. The result is a
/// projection iff d is nonnegative.
LinearMap construct_map(const IncidenceSystem& sys, const DifferenceVector& d);

/// Recompute everything a Witness claims: weight changes equal S, equal the
/// claimed multiset, and both projection tests reject the map.
bool verify_witness(const IncidenceSystem& sys, const WeightChangeMultiset& s, const Witness& w);

/// The full decision of Theorem-2 type: S is not projection-forcing iff some
/// arrangement pi has M^{-1} pi integral with a negative entry. Searches
/// distinct multiset permutations depth-first (positions in increasing
/// PointIndex order, values ascending), with the first occurrence of min(S)
/// pinned to point 0 by point-transitivity of the collineation group.
/// Deterministic verdict and witness for any thread count: the reported
/// witness is always the lexicographically least successful arrangement.
ForcingVerdict decide(const IncidenceSystem& sys, WeightChangeMultiset s, const DecideOptions& opts = {});
ForcingVerdict decide(const Field& f, int k, WeightChangeMultiset s, const DecideOptions& opts = {});

struct RealizableResult {
    bool realizable = false;
    std::optional<DifferenceVector> d; // from the lexicographically least integral arrangement
    std::optional<LinearMap> map;      // construct_map(d); a projection or not
    SearchStats stats;
};

/// True iff some arrangement pi has M^{-1} pi all-integer.
RealizableResult realizable(const IncidenceSystem& sys, WeightChangeMultiset s, const DecideOptions& opts = {});
RealizableResult realizable(const Field& f, int k, WeightChangeMultiset s, const DecideOptions& opts = {});

} // namespace projforce

#endif
