#ifndef PROJFORCE_ORACLE_HPP
#define PROJFORCE_ORACLE_HPP

#include <optional>

#include "projforce/forcing.hpp"

namespace projforce {

/// Independent reference implementations, deliberately slow and literal.
/// They share no search code with forcing::decide so the two sides can
/// cross-validate each other.

inline constexpr int bruteforce_max_points = 7;

/// Decide by enumerating every distinct arrangement of S with
/// std::next_permutation: no pruning, no symmetry reduction. Same verdict
/// contract as decide. Throws TooLargeError when N > bruteforce_max_points.
ForcingVerdict decide_bruteforce(const Field& f, int k, WeightChangeMultiset s);

/// All difference vectors M^{-1} pi that are integral, one per integral
/// arrangement, in lexicographic arrangement order. Same cap as
/// decide_bruteforce.
std::vector<std::vector<long long>> integral_difference_vectors(const Field& f, int k, WeightChangeMultiset s);

/// Closed-form answers for the near-constant families over F_2.
/// forcing is empty when the question does not apply (S not realizable, or
/// k below the range where the characterization holds).
struct CharacterizationResult {
    bool realizable = false;
    std::optional<bool> forcing;
};

/// S = (2^k - 2) copies of a and one b, q = 2, k >= 2.
/// Realizable iff a = 0 mod 2^{k-2} and b = 0 mod 2^{k-1};
/// then forcing iff b <= 2a.
CharacterizationResult ab_characterization(int k, long long a, long long b);

/// S = (2^k - 3) copies of a plus b and c, q = 2, k >= 2.
/// Realizable iff a, b, c = 0 mod 2^{k-2} and exactly 1 or exactly 3 of
/// them are 0 mod 2^{k-1}; for k >= 3, forcing iff {a,b,c} satisfies the
/// triangle inequality and 3a - b - c >= 0.
CharacterizationResult abc_characterization(int k, long long a, long long b, long long c);

inline constexpr int map_check_max_cols = 8;

/// Definition-level check for q=2, k=2: enumerate every multiplicity pair
/// (R, Q) with sum(R) <= max_cols and R spanning, and test whether some
/// pair realizes S without Q <= R. Never consults the incidence inverse.
/// Throws TooLargeError unless q = 2, k = 2, max_cols <= map_check_max_cols.
ForcingStatus exhaustive_map_check(const Field& f, int k, const WeightChangeMultiset& s, int max_cols);

} // namespace projforce

#endif
