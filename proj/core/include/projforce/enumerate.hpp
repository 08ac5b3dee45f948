#ifndef PROJFORCE_ENUMERATE_HPP
#define PROJFORCE_ENUMERATE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "projforce/forcing.hpp"

namespace projforce {

struct SurveySpec {
    int q = 2;
    int k = 3;
    /// Entry bounds. The published 58-multiset count for q=2, k=3 is
    /// reproduced by [1, 7] with realizable_only; [0, 7] yields 76. Both are
    /// available, the reproducing convention is the default.
    long long min_entry = 1;
    long long max_entry = 7;
    /// When true, non-realizable multisets are tallied separately instead of
    /// counting as (vacuously) forcing.
    bool realizable_only = true;
};

enum class SurveyClass { NonRealizable, ForcingSplitDifference, ForcingSearch, NotForcing };

const char* to_string(SurveyClass c);
const char* to_string(ForcingStatus s);
const char* to_string(ForcingReason r);

/// Streams all non-decreasing sequences of length n with entries in
/// [lo, hi], in lexicographic order.
class MultisetEnumerator {
public:
    MultisetEnumerator(int n, long long lo, long long hi);

    /// Advance to the next multiset; false once the stream is exhausted.
    bool next(WeightChangeMultiset& out);
    /// Number of multisets emitted so far.
    std::uint64_t index() const { return index_; }
    /// Discard multisets until index() == target; used to resume a survey.
    void skip_to(std::uint64_t target);

    /// Total count, C(hi - lo + n, n); throws OverflowError beyond 2^64.
    static std::uint64_t count(int n, long long lo, long long hi);

private:
    int n_;
    long long lo_, hi_;
    WeightChangeMultiset cur_;
    std::uint64_t index_ = 0;
    bool started_ = false;
    bool done_ = false;
};

struct SurveyCounts {
    std::uint64_t total = 0;
    std::uint64_t non_realizable = 0;
    std::uint64_t forcing_split_difference = 0;
    std::uint64_t forcing_search = 0;
    std::uint64_t not_forcing = 0;
};

struct SurveyReport {
    SurveySpec spec;
    SurveyCounts counts;
    /// Forcing multisets in lexicographic order. Includes the non-realizable
    /// (vacuously forcing) ones only when spec.realizable_only is false.
    std::vector<WeightChangeMultiset> forcing;
    /// The forcing multisets certified only by exhaustive search.
    std::vector<WeightChangeMultiset> forcing_beyond_split;
    /// Witnesses for the lexicographically first few NotForcing multisets.
    std::vector<std::pair<WeightChangeMultiset, Witness>> witness_samples;
    /// False when assembled from a run that stopped early.
    bool complete = false;
    /// Aggregate search diagnostics (deterministic when decide runs single-threaded).
    SearchStats search_stats;

    std::uint64_t forcing_count() const {
        return counts.forcing_split_difference + counts.forcing_search +
               (spec.realizable_only ? 0 : counts.non_realizable);
    }
};

struct SurveyOptions {
    /// Per-multiset decision settings; max_nodes caps each classification.
    DecideOptions decide;
    /// Multisets classified concurrently; merged in lexicographic order.
    int threads = 1;
    std::size_t witness_sample_limit = 3;
    /// Resumable state file; empty disables checkpointing.
    std::string checkpoint_path;
    std::uint64_t checkpoint_every = 500;
    /// Load checkpoint_path (when it exists) and continue from it.
    bool resume = false;
    /// Streaming per-multiset rows: multiset, status, reason, delta.
    std::ostream* csv_stream = nullptr;
};

/// Raised when a classification exhausts its node budget; carries everything
/// classified before the failing multiset, flagged incomplete.
class SurveyBudgetError : public BudgetExhaustedError {
public:
    SurveyBudgetError(const std::string& msg, SearchStats s, SurveyReport p)
        : BudgetExhaustedError(msg, s), partial(std::move(p)) {}
    SurveyReport partial;
};

void write_survey_csv_header(std::ostream& os);

/// Classify every multiset in the spec's range. Witnesses for the sampled
/// NotForcing multisets are regenerated after the sweep, so reports are
/// identical whether or not the run was resumed from a checkpoint.
SurveyReport survey(const SurveySpec& spec, const SurveyOptions& opts = {});

} // namespace projforce

#endif
