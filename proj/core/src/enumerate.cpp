#include "projforce/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace projforce {

namespace {

using nlohmann::json;

struct ClassifiedItem {
    WeightChangeMultiset s;
    SurveyClass cls = SurveyClass::NonRealizable;
    long long delta = 0;
    SearchStats stats;
};

SurveyClass classify_verdict(const ForcingVerdict& v) {
    switch (v.status) {
        case ForcingStatus::ForcingVacuous: return SurveyClass::NonRealizable;
        case ForcingStatus::NotForcing: return SurveyClass::NotForcing;
        case ForcingStatus::Forcing:
            return v.reason == ForcingReason::SplitDifference ? SurveyClass::ForcingSplitDifference
                                                              : SurveyClass::ForcingSearch;
    }
    throw Error("unreachable verdict status");
}

ClassifiedItem classify(const IncidenceSystem& sys, WeightChangeMultiset s, const DecideOptions& dopts) {
    ClassifiedItem item;
    item.s = std::move(s);
    // Realizability first, in both modes: the split-difference fast path
    // inside decide would otherwise label non-realizable multisets as forcing
    // by split difference, which is true but lands them in the wrong bucket.
    // spec.realizable_only only controls whether this bucket counts as forcing.
    const RealizableResult r = realizable(sys, item.s, dopts);
    item.stats = r.stats;
    if (!r.realizable) {
        item.cls = SurveyClass::NonRealizable;
        item.delta = split_difference(sys.field(), sys.k(), item.s);
        return item;
    }
    const ForcingVerdict v = decide(sys, item.s, dopts);
    item.cls = classify_verdict(v);
    item.delta = v.delta;
    item.stats += v.stats;
    return item;
}

void status_strings(SurveyClass cls, const char*& status, const char*& reason) {
    switch (cls) {
        case SurveyClass::NonRealizable:
            status = "ForcingVacuous";
            reason = "NotRealizable";
            return;
        case SurveyClass::ForcingSplitDifference:
            status = "Forcing";
            reason = "SplitDifference";
            return;
        case SurveyClass::ForcingSearch:
            status = "Forcing";
            reason = "ExhaustiveSearch";
            return;
        case SurveyClass::NotForcing:
            status = "NotForcing";
            reason = "ExhaustiveSearch";
            return;
    }
    throw Error("unreachable survey class");
}

void write_csv_row(std::ostream& os, const ClassifiedItem& item) {
    for (std::size_t i = 0; i < item.s.size(); ++i) {
        if (i > 0) os << ' ';
        os << item.s[i];
    }
    const char* status = nullptr;
    const char* reason = nullptr;
    status_strings(item.cls, status, reason);
    os << ',' << status << ',' << reason << ',' << item.delta << '\n';
}

// Accumulates merged results in lexicographic order; the checkpoint is a
// serialization of exactly this state plus the resume index.
struct SurveyState {
    SurveyCounts counts;
    std::vector<WeightChangeMultiset> forcing;
    std::vector<WeightChangeMultiset> beyond;
    std::vector<WeightChangeMultiset> samples;
    SearchStats stats;
    std::uint64_t next_index = 0;
};

json spec_to_json(const SurveySpec& spec) {
    return json{{"k", spec.k},
                {"max_entry", spec.max_entry},
                {"min_entry", spec.min_entry},
                {"q", spec.q},
                {"realizable_only", spec.realizable_only}};
}

void save_checkpoint(const std::string& path, const SurveySpec& spec, const SurveyState& st) {
    json j;
    j["counts"] = json{{"forcing_search", st.counts.forcing_search},
                       {"forcing_split_difference", st.counts.forcing_split_difference},
                       {"non_realizable", st.counts.non_realizable},
                       {"not_forcing", st.counts.not_forcing},
                       {"total", st.counts.total}};
    j["forcing"] = st.forcing;
    j["forcing_beyond_split"] = st.beyond;
    j["next_index"] = st.next_index;
    j["samples"] = st.samples;
    j["spec"] = spec_to_json(spec);
    j["stats"] = json{{"arrangements", st.stats.arrangements},
                      {"integral", st.stats.integral},
                      {"nodes", st.stats.nodes},
                      {"pruned_bound", st.stats.pruned_bound},
                      {"pruned_nonintegral", st.stats.pruned_nonintegral}};
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw Error("cannot write checkpoint file: " + tmp);
        os << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

bool load_checkpoint(const std::string& path, const SurveySpec& spec, SurveyState& st) {
    std::ifstream is(path);
    if (!is) return false;
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed checkpoint file: ") + e.what());
    }
    if (j.value("spec", json{}) != spec_to_json(spec))
        throw ParseError("checkpoint parameters do not match the requested survey");
    const json& c = j.at("counts");
    st.counts.total = c.at("total").get<std::uint64_t>();
    st.counts.non_realizable = c.at("non_realizable").get<std::uint64_t>();
    st.counts.forcing_split_difference = c.at("forcing_split_difference").get<std::uint64_t>();
    st.counts.forcing_search = c.at("forcing_search").get<std::uint64_t>();
    st.counts.not_forcing = c.at("not_forcing").get<std::uint64_t>();
    st.forcing = j.at("forcing").get<std::vector<WeightChangeMultiset>>();
    st.beyond = j.at("forcing_beyond_split").get<std::vector<WeightChangeMultiset>>();
    st.samples = j.at("samples").get<std::vector<WeightChangeMultiset>>();
    st.next_index = j.at("next_index").get<std::uint64_t>();
    const json& t = j.at("stats");
    st.stats.nodes = t.at("nodes").get<std::uint64_t>();
    st.stats.arrangements = t.at("arrangements").get<std::uint64_t>();
    st.stats.integral = t.at("integral").get<std::uint64_t>();
    st.stats.pruned_nonintegral = t.at("pruned_nonintegral").get<std::uint64_t>();
    st.stats.pruned_bound = t.at("pruned_bound").get<std::uint64_t>();
    return true;
}

void merge_item(SurveyState& st, const ClassifiedItem& item, const SurveySpec& spec, const SurveyOptions& opts) {
    ++st.counts.total;
    st.stats += item.stats;
    switch (item.cls) {
        case SurveyClass::NonRealizable:
            ++st.counts.non_realizable;
            if (!spec.realizable_only) st.forcing.push_back(item.s);
            break;
        case SurveyClass::ForcingSplitDifference:
            ++st.counts.forcing_split_difference;
            st.forcing.push_back(item.s);
            break;
        case SurveyClass::ForcingSearch:
            ++st.counts.forcing_search;
            st.forcing.push_back(item.s);
            st.beyond.push_back(item.s);
            break;
        case SurveyClass::NotForcing:
            ++st.counts.not_forcing;
            if (st.samples.size() < opts.witness_sample_limit) st.samples.push_back(item.s);
            break;
    }
    ++st.next_index;
    if (opts.csv_stream != nullptr) write_csv_row(*opts.csv_stream, item);
}

SurveyReport assemble(const SurveySpec& spec, const SurveyState& st, bool complete) {
    SurveyReport r;
    r.spec = spec;
    r.counts = st.counts;
    r.forcing = st.forcing;
    r.forcing_beyond_split = st.beyond;
    r.complete = complete;
    r.search_stats = st.stats;
    return r;
}

} // namespace

const char* to_string(SurveyClass c) {
    switch (c) {
        case SurveyClass::NonRealizable: return "NonRealizable";
        case SurveyClass::ForcingSplitDifference: return "ForcingSplitDifference";
        case SurveyClass::ForcingSearch: return "ForcingSearch";
        case SurveyClass::NotForcing: return "NotForcing";
    }
    return "?";
}

const char* to_string(ForcingStatus s) {
    switch (s) {
        case ForcingStatus::Forcing: return "Forcing";
        case ForcingStatus::NotForcing: return "NotForcing";
        case ForcingStatus::ForcingVacuous: return "ForcingVacuous";
    }
    return "?";
}

const char* to_string(ForcingReason r) {
    switch (r) {
        case ForcingReason::SplitDifference: return "SplitDifference";
        case ForcingReason::ExhaustiveSearch: return "ExhaustiveSearch";
        case ForcingReason::NotRealizable: return "NotRealizable";
    }
    return "?";
}

MultisetEnumerator::MultisetEnumerator(int n, long long lo, long long hi) : n_(n), lo_(lo), hi_(hi) {
    if (n < 1) throw Error("multiset length must be positive");
    if (lo > hi) throw Error("min_entry exceeds max_entry");
}

bool MultisetEnumerator::next(WeightChangeMultiset& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        cur_.assign(static_cast<std::size_t>(n_), lo_);
    } else {
        int i = n_ - 1;
        while (i >= 0 && cur_[static_cast<std::size_t>(i)] == hi_) --i;
        if (i < 0) {
            done_ = true;
            return false;
        }
        const long long v = ++cur_[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n_; ++j) cur_[static_cast<std::size_t>(j)] = v;
    }
    out = cur_;
    ++index_;
    return true;
}

void MultisetEnumerator::skip_to(std::uint64_t target) {
    WeightChangeMultiset scratch;
    while (index_ < target && next(scratch)) {
    }
}

std::uint64_t MultisetEnumerator::count(int n, long long lo, long long hi) {
    if (n < 1) throw Error("multiset length must be positive");
    if (lo > hi) throw Error("min_entry exceeds max_entry");
    // C(range + n - 1, n) by exact stepwise binomial; the running product
    // stays integral when the factors are consumed in order.
    const unsigned long long range = static_cast<unsigned long long>(hi - lo + 1);
    unsigned __int128 res = 1;
    for (int i = 1; i <= n; ++i) {
        if (res > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("multiset count exceeds 64 bits");
        res = res * (range - 1 + static_cast<unsigned long long>(i)) / static_cast<unsigned long long>(i);
    }
    if (res > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("multiset count exceeds 64 bits");
    return static_cast<std::uint64_t>(res);
}

void write_survey_csv_header(std::ostream& os) { os << "multiset,status,reason,delta\n"; }

SurveyReport survey(const SurveySpec& spec, const SurveyOptions& opts) {
    const Field f(spec.q);
    const IncidenceSystem sys(f, spec.k);
    const int n = sys.n_points();

    SurveyState st;
    if (opts.resume && !opts.checkpoint_path.empty()) load_checkpoint(opts.checkpoint_path, spec, st);

    MultisetEnumerator en(n, spec.min_entry, spec.max_entry);
    en.skip_to(st.next_index);

    const auto checkpoint_due = [&](std::uint64_t index) {
        return !opts.checkpoint_path.empty() && opts.checkpoint_every > 0 && index % opts.checkpoint_every == 0;
    };

    const int threads = std::max(1, opts.threads);
    const std::size_t block_size = threads == 1 ? 1 : static_cast<std::size_t>(8 * threads);
    std::vector<WeightChangeMultiset> block;
    block.reserve(block_size);
    bool exhausted = false;

    try {
        while (!exhausted) {
            block.clear();
            WeightChangeMultiset s;
            while (block.size() < block_size) {
                if (!en.next(s)) {
                    exhausted = true;
                    break;
                }
                block.push_back(s);
            }
            if (block.empty()) break;

            std::vector<ClassifiedItem> items(block.size());
            std::vector<std::exception_ptr> errors(block.size());
            if (threads == 1 || block.size() == 1) {
                for (std::size_t i = 0; i < block.size(); ++i) {
                    try {
                        items[i] = classify(sys, std::move(block[i]), opts.decide);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            } else {
                std::atomic<std::size_t> next{0};
                auto body = [&] {
                    for (;;) {
                        const std::size_t i = next.fetch_add(1);
                        if (i >= block.size()) return;
                        try {
                            items[i] = classify(sys, std::move(block[i]), opts.decide);
                        } catch (...) {
                            errors[i] = std::current_exception();
                        }
                    }
                };
                std::vector<std::thread> pool;
                const int nthreads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), block.size()));
                pool.reserve(static_cast<std::size_t>(nthreads));
                for (int t = 0; t < nthreads; ++t) pool.emplace_back(body);
                for (auto& t : pool) t.join();
            }

            for (std::size_t i = 0; i < block.size(); ++i) {
                if (errors[i]) std::rethrow_exception(errors[i]);
                merge_item(st, items[i], spec, opts);
                if (checkpoint_due(st.next_index)) save_checkpoint(opts.checkpoint_path, spec, st);
            }
        }

        SurveyReport report = assemble(spec, st, true);
        for (const auto& s : st.samples) {
            ForcingVerdict v = decide(sys, s, opts.decide);
            if (v.status != ForcingStatus::NotForcing || !v.witness)
                throw Error("sampled multiset no longer classifies NotForcing; this is a bug");
            report.witness_samples.emplace_back(s, std::move(*v.witness));
        }
        if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, spec, st);
        return report;
    } catch (const BudgetExhaustedError& e) {
        if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, spec, st);
        throw SurveyBudgetError(e.what(), e.stats, assemble(spec, st, false));
    }
}

} // namespace projforce
