#include "projforce/forcing.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <thread>

namespace projforce {

namespace {

void check_multiset_size(const Field& f, int k, std::size_t size) {
    if (k < 1) throw SizeMismatchError("dimension k must be at least 1");
    long long n = 0;
    long long power = 1;
    for (int i = 0; i < k; ++i) {
        n += power;
        if (static_cast<unsigned long long>(n) > size) throw SizeMismatchError("multiset size does not match (q^k - 1)/(q - 1)");
        if (i + 1 < k) power *= f.q();
    }
    if (static_cast<unsigned long long>(n) != size) throw SizeMismatchError("multiset size does not match (q^k - 1)/(q - 1)");
}

long long pow_ll(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

enum class SearchMode {
    NegativeIntegral, // witness hunt: integral arrangement with a negative entry
    Integral,         // realizability: any integral arrangement
};

struct SearchProblem {
    const IncidenceSystem* sys;
    int n;                                 // number of points
    long long q;
    long long den;                         // q^{k-1}
    long long base;                        // (q-1) * sum(S)
    std::vector<std::vector<int>> colsup;  // coordinate i -> rows j with M[j][i] == 1
    std::vector<std::vector<int>> rowsup;  // row j -> coordinates i with M[j][i] == 1
    std::vector<long long> values;         // distinct values of S, ascending
    std::vector<int> counts;               // multiplicity of each distinct value
    SearchMode mode;
    std::uint64_t max_nodes;
    int flush_interval;                    // node-count flush period for shared budget

    std::atomic<std::uint64_t>* shared_nodes;
    std::atomic<bool>* budget_abort;
    std::atomic<int>* winner; // least branch index that found a success
};

struct SearchOutcome {
    bool found = false;
    Arrangement pi;
    bool integral_seen = false;
    SearchStats stats;
    bool budget_hit = false;
};

class Worker {
public:
    Worker(const SearchProblem& p, int branch)
        : p_(p),
          branch_(branch),
          cnt_(p.counts),
          t_(p.n, 0),
          rem_(p.n, 0),
          assigned_(p.n, -1),
          unflushed_(0) {
        for (int i = 0; i < p_.n; ++i) rem_[i] = static_cast<int>(p_.colsup[i].size());
    }

    // Assign distinct-value index v at the next position without branching;
    // used by the parallel driver to pin the first two levels. Returns false
    // when a finished coordinate is non-integral.
    bool force(int depth, int v) {
        ++out_.stats.nodes;
        if (!apply(depth, v)) {
            out_.stats.pruned_nonintegral += 1;
            return false;
        }
        return true;
    }

    SearchOutcome run(int start_depth) {
        dfs(start_depth);
        return take();
    }

    SearchOutcome take() {
        out_.budget_hit = budget_hit_;
        return std::move(out_);
    }

private:
    bool cancelled() const {
        if (budget_hit_) return true;
        if (p_.budget_abort != nullptr && p_.budget_abort->load(std::memory_order_relaxed)) return true;
        if (p_.winner != nullptr && p_.winner->load(std::memory_order_relaxed) < branch_) return true;
        return false;
    }

    void count_node() {
        ++out_.stats.nodes;
        if (p_.shared_nodes == nullptr) {
            if (out_.stats.nodes > p_.max_nodes) budget_hit_ = true;
            return;
        }
        if (++unflushed_ >= p_.flush_interval) {
            auto total = p_.shared_nodes->fetch_add(unflushed_, std::memory_order_relaxed) + unflushed_;
            unflushed_ = 0;
            if (total > p_.max_nodes) {
                budget_hit_ = true;
                p_.budget_abort->store(true, std::memory_order_relaxed);
            }
        }
    }

    // Add value values[v] at position pos. Returns false iff a coordinate
    // whose support just completed has a non-integral entry; effects are
    // applied unconditionally so undo() is always the exact inverse.
    bool apply(int pos, int v) {
        --cnt_[v];
        assigned_[pos] = v;
        const long long val = p_.values[v];
        bool ok = true;
        for (int i : p_.rowsup[pos]) {
            t_[i] += val;
            if (--rem_[i] == 0) {
                const long long num = p_.q * t_[i] - p_.base;
                if (num % p_.den != 0)
                    ok = false;
                else if (num < 0)
                    ++negative_final_;
            }
        }
        return ok;
    }

    void undo(int pos, int v) {
        const long long val = p_.values[v];
        for (int i : p_.rowsup[pos]) {
            if (rem_[i] == 0) {
                const long long num = p_.q * t_[i] - p_.base;
                if (num % p_.den == 0 && num < 0) --negative_final_;
            }
            ++rem_[i];
            t_[i] -= val;
        }
        ++cnt_[v];
        assigned_[pos] = -1;
    }

    // True iff some coordinate with open support can still end below zero,
    // assuming it receives the smallest values remaining in the pool.
    bool negative_reachable() {
        int max_rem = 0;
        for (int i = 0; i < p_.n; ++i)
            if (rem_[i] > max_rem) max_rem = rem_[i];
        if (max_rem == 0) return false;

        minsum_.assign(static_cast<std::size_t>(max_rem) + 1, 0);
        int filled = 0;
        long long acc = 0;
        for (std::size_t v = 0; v < p_.values.size() && filled < max_rem; ++v) {
            for (int c = 0; c < cnt_[v] && filled < max_rem; ++c) {
                acc += p_.values[v];
                minsum_[static_cast<std::size_t>(++filled)] = acc;
            }
        }
        for (int i = 0; i < p_.n; ++i) {
            if (rem_[i] == 0) continue;
            if (p_.q * (t_[i] + minsum_[static_cast<std::size_t>(rem_[i])]) - p_.base < 0) return true;
        }
        return false;
    }

    bool leaf() {
        ++out_.stats.arrangements;
        ++out_.stats.integral;
        if (p_.mode == SearchMode::NegativeIntegral && negative_final_ == 0) {
            out_.integral_seen = true;
            return false;
        }
        out_.found = true;
        out_.pi.resize(static_cast<std::size_t>(p_.n));
        for (int pos = 0; pos < p_.n; ++pos) out_.pi[static_cast<std::size_t>(pos)] = p_.values[static_cast<std::size_t>(assigned_[pos])];
        if (p_.winner != nullptr) {
            int cur = p_.winner->load(std::memory_order_relaxed);
            while (cur > branch_ && !p_.winner->compare_exchange_weak(cur, branch_, std::memory_order_relaxed)) {
            }
        }
        return true;
    }

    bool dfs(int depth) {
        if (depth == p_.n) return leaf();
        if (cancelled()) return false;
        const std::size_t nv = p_.values.size();
        for (std::size_t v = 0; v < nv; ++v) {
            if (cnt_[v] == 0) continue;
            count_node();
            if (budget_hit_) return false;
            const bool ok = apply(depth, static_cast<int>(v));
            if (!ok) {
                out_.stats.pruned_nonintegral += 1;
            } else if (p_.mode == SearchMode::NegativeIntegral && negative_final_ == 0 && !negative_reachable()) {
                out_.stats.pruned_bound += 1;
            } else if (dfs(depth + 1)) {
                return true;
            }
            undo(depth, static_cast<int>(v));
            if (cancelled()) return false;
        }
        return false;
    }

    const SearchProblem& p_;
    int branch_;
    std::vector<int> cnt_;
    std::vector<long long> t_;   // partial column sums per coordinate
    std::vector<int> rem_;       // unassigned support positions per coordinate
    std::vector<int> assigned_;  // distinct-value index per position
    std::vector<long long> minsum_;
    int negative_final_ = 0;     // finished coordinates with a negative integral entry
    int unflushed_;
    bool budget_hit_ = false;
    SearchOutcome out_;
};

SearchProblem make_problem(const IncidenceSystem& sys, const std::vector<long long>& sorted, SearchMode mode,
                           std::uint64_t max_nodes) {
    SearchProblem p;
    p.sys = &sys;
    p.n = sys.n_points();
    p.q = sys.field().q();
    p.den = sys.row_weight();
    const long long total = std::accumulate(sorted.begin(), sorted.end(), 0LL);
    p.base = (p.q - 1) * total;
    p.colsup.resize(static_cast<std::size_t>(p.n));
    p.rowsup.resize(static_cast<std::size_t>(p.n));
    for (int j = 0; j < p.n; ++j)
        for (int i = 0; i < p.n; ++i)
            if (sys.entry(j, i) != 0) {
                p.colsup[static_cast<std::size_t>(i)].push_back(j);
                p.rowsup[static_cast<std::size_t>(j)].push_back(i);
            }
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i == 0 || sorted[i] != sorted[i - 1]) {
            p.values.push_back(sorted[i]);
            p.counts.push_back(1);
        } else {
            ++p.counts.back();
        }
    }
    p.mode = mode;
    p.max_nodes = max_nodes;
    p.flush_interval = 512;
    p.shared_nodes = nullptr;
    p.budget_abort = nullptr;
    p.winner = nullptr;
    return p;
}

SearchOutcome search_sequential(SearchProblem& p) {
    Worker w(p, 0);
    const bool viable = w.force(0, 0); // pin min(S) at point 0
    return viable ? w.run(1) : w.take();
}

SearchOutcome search_parallel(SearchProblem& p, int threads) {
    // Branch on the depth-1 value after pinning min(S) at point 0. Every
    // branch index maps to one distinct value, so the least successful
    // branch carries the lexicographically least witness.
    std::vector<int> branch_values;
    for (std::size_t v = 0; v < p.values.size(); ++v) {
        int avail = p.counts[v] - (v == 0 ? 1 : 0);
        if (avail > 0) branch_values.push_back(static_cast<int>(v));
    }

    std::atomic<std::uint64_t> shared_nodes{0};
    std::atomic<bool> budget_abort{false};
    std::atomic<int> winner{std::numeric_limits<int>::max()};
    p.shared_nodes = &shared_nodes;
    p.budget_abort = &budget_abort;
    p.winner = &winner;

    std::vector<SearchOutcome> slots(branch_values.size());
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= branch_values.size()) return;
            Worker w(p, static_cast<int>(b));
            bool viable = w.force(0, 0);
            if (viable) viable = w.force(1, branch_values[b]);
            slots[b] = viable ? w.run(2) : w.take();
        }
    };

    const int nthreads = std::min<int>(threads, static_cast<int>(branch_values.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();

    SearchOutcome merged;
    for (const auto& s : slots) {
        merged.stats += s.stats;
        merged.integral_seen = merged.integral_seen || s.integral_seen;
        merged.budget_hit = merged.budget_hit || s.budget_hit;
    }
    const int win = winner.load();
    if (win != std::numeric_limits<int>::max()) {
        merged.found = true;
        merged.pi = slots[static_cast<std::size_t>(win)].pi;
    }
    return merged;
}

SearchOutcome run_search(const IncidenceSystem& sys, const std::vector<long long>& sorted, SearchMode mode,
                         const DecideOptions& opts) {
    SearchProblem p = make_problem(sys, sorted, mode, opts.max_nodes);
    SearchOutcome out;
    if (opts.threads > 1 && p.n > 2 && p.values.size() > 1)
        out = search_parallel(p, opts.threads);
    else
        out = search_sequential(p);
    if (out.budget_hit) throw BudgetExhaustedError("node budget exhausted before the search completed", out.stats);
    return out;
}

Witness make_witness(const IncidenceSystem& sys, const Arrangement& pi) {
    auto [nums, den] = sys.apply_inverse(pi);
    DifferenceVector d = DifferenceVector::from_inverse(nums, den);
    LinearMap map = construct_map(sys, d);
    WeightChangeMultiset claimed = weight_changes(map, sys.points());
    return Witness{std::move(map), std::move(claimed), std::move(d)};
}

} // namespace

DifferenceVector DifferenceVector::from_inverse(std::span<const long long> numerators, long long denominator) {
    DifferenceVector out;
    out.d.reserve(numerators.size());
    for (long long num : numerators) {
        if (num % denominator != 0) throw NonIntegralError("arrangement does not invert to an integer vector");
        out.d.push_back(num / denominator);
    }
    return out;
}

long long split_difference(const Field& f, int k, WeightChangeMultiset s) {
    check_multiset_size(f, k, s.size());
    std::sort(s.begin(), s.end());
    const long long w = pow_ll(f.q(), k - 1);
    long long low = 0;
    long long high = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (static_cast<long long>(i) < w)
            low += s[i];
        else
            high += s[i];
    }
    return low - (f.q() - 1) * high;
}

bool split_difference_forcing(const Field& f, int k, const WeightChangeMultiset& s) {
    return split_difference(f, k, s) > -pow_ll(f.q(), k - 1);
}

std::pair<long long, long long> min_entry_bound(const Field& f, int k, const WeightChangeMultiset& s) {
    return {split_difference(f, k, s), pow_ll(f.q(), k - 1)};
}

LinearMap construct_map(const IncidenceSystem& sys, const DifferenceVector& d) {
    const int n = sys.n_points();
    if (static_cast<int>(d.d.size()) != n) throw LengthMismatchError("difference vector length does not match the point count");
    const Field& f = sys.field();
    const int k = sys.k();
    const PointList& points = sys.points();

    long long dom_cols = 0;
    long long img_cols = 0;
    for (long long v : d.d) {
        const long long r = std::max(v, 0LL) + 1;
        dom_cols += r;
        img_cols += r - v;
    }

    FqMatrix b(f, k, static_cast<int>(dom_cols));
    FqMatrix c(f, k, static_cast<int>(img_cols));
    int bj = 0;
    int cj = 0;
    for (int p = 0; p < n; ++p) {
        const long long r = std::max(d.d[static_cast<std::size_t>(p)], 0LL) + 1;
        const long long q = r - d.d[static_cast<std::size_t>(p)];
        for (long long t = 0; t < r; ++t, ++bj)
            for (int i = 0; i < k; ++i) b.at(i, bj) = points[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
        for (long long t = 0; t < q; ++t, ++cj)
            for (int i = 0; i < k; ++i) c.at(i, cj) = points[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
    }
    return LinearMap(GeneratorMatrix(std::move(b)), std::move(c));
}

bool verify_witness(const IncidenceSystem& sys, const WeightChangeMultiset& s, const Witness& w) {
    WeightChangeMultiset sorted = s;
    std::sort(sorted.begin(), sorted.end());
    const WeightChangeMultiset recomputed = weight_changes(w.map, sys.points());
    if (recomputed != sorted) return false;
    if (recomputed != w.claimed_changes) return false;
    if (is_projection(w.map, sys.points())) return false;
    if (is_projection_by_matching(w.map, sys.points())) return false;
    const std::vector<long long> changes = weight_change_vector(w.map, sys.points());
    return sys.apply(w.d.d) == changes;
}

ForcingVerdict decide(const IncidenceSystem& sys, WeightChangeMultiset s, const DecideOptions& opts) {
    check_multiset_size(sys.field(), sys.k(), s.size());
    std::sort(s.begin(), s.end());

    ForcingVerdict v;
    v.delta = split_difference(sys.field(), sys.k(), s);
    v.delta_threshold = -sys.row_weight();
    if (opts.use_split_difference && v.delta > v.delta_threshold) {
        v.status = ForcingStatus::Forcing;
        v.reason = ForcingReason::SplitDifference;
        return v;
    }

    SearchOutcome hunt = run_search(sys, s, SearchMode::NegativeIntegral, opts);
    v.stats = hunt.stats;
    if (hunt.found) {
        Witness w = make_witness(sys, hunt.pi);
        if (!verify_witness(sys, s, w)) throw Error("witness failed verification; this is a bug");
        v.status = ForcingStatus::NotForcing;
        v.reason = ForcingReason::ExhaustiveSearch;
        v.witness = std::move(w);
        return v;
    }
    if (hunt.integral_seen) {
        v.status = ForcingStatus::Forcing;
        v.reason = ForcingReason::ExhaustiveSearch;
        return v;
    }

    SearchOutcome any = run_search(sys, s, SearchMode::Integral, opts);
    v.stats += any.stats;
    if (any.found) {
        v.status = ForcingStatus::Forcing;
        v.reason = ForcingReason::ExhaustiveSearch;
    } else {
        v.status = ForcingStatus::ForcingVacuous;
        v.reason = ForcingReason::NotRealizable;
    }
    return v;
}

ForcingVerdict decide(const Field& f, int k, WeightChangeMultiset s, const DecideOptions& opts) {
    check_multiset_size(f, k, s.size());
    if (opts.use_split_difference) {
        const long long delta = split_difference(f, k, s);
        const long long threshold = -pow_ll(f.q(), k - 1);
        if (delta > threshold) {
            ForcingVerdict v;
            v.status = ForcingStatus::Forcing;
            v.reason = ForcingReason::SplitDifference;
            v.delta = delta;
            v.delta_threshold = threshold;
            return v;
        }
    }
    IncidenceSystem sys(f, k);
    return decide(sys, std::move(s), opts);
}

RealizableResult realizable(const IncidenceSystem& sys, WeightChangeMultiset s, const DecideOptions& opts) {
    check_multiset_size(sys.field(), sys.k(), s.size());
    std::sort(s.begin(), s.end());
    SearchOutcome out = run_search(sys, s, SearchMode::Integral, opts);
    RealizableResult r;
    r.stats = out.stats;
    r.realizable = out.found;
    if (out.found) {
        auto [nums, den] = sys.apply_inverse(out.pi);
        r.d = DifferenceVector::from_inverse(nums, den);
        r.map = construct_map(sys, *r.d);
    }
    return r;
}

RealizableResult realizable(const Field& f, int k, WeightChangeMultiset s, const DecideOptions& opts) {
    IncidenceSystem sys(f, k);
    return realizable(sys, std::move(s), opts);
}

} // namespace projforce
