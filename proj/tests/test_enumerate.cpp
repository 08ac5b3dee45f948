#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "projforce/enumerate.hpp"
#include "projforce/io.hpp"

using namespace projforce;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("enumerator streams multisets in lexicographic order") {
    MultisetEnumerator e(3, 0, 1);
    WeightChangeMultiset s;
    std::vector<WeightChangeMultiset> got;
    while (e.next(s)) got.push_back(s);
    const std::vector<WeightChangeMultiset> want = {
        {0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    CHECK(got == want);
    CHECK(e.index() == 4);
    CHECK_FALSE(e.next(s)); // stays exhausted
}

TEST_CASE("enumerator handles a single-value range") {
    MultisetEnumerator e(4, 2, 2);
    WeightChangeMultiset s;
    REQUIRE(e.next(s));
    CHECK(s == WeightChangeMultiset{2, 2, 2, 2});
    CHECK_FALSE(e.next(s));
}

TEST_CASE("enumerator count matches the closed form and the stream") {
    CHECK(MultisetEnumerator::count(7, 1, 7) == 1716);
    CHECK(MultisetEnumerator::count(7, 0, 7) == 3432);
    CHECK(MultisetEnumerator::count(3, 0, 2) == 10);
    CHECK(MultisetEnumerator::count(1, -5, 5) == 11);
    CHECK_THROWS_AS(MultisetEnumerator::count(100, 0, 1000), OverflowError);

    MultisetEnumerator e(7, 1, 7);
    WeightChangeMultiset s;
    std::uint64_t n = 0;
    while (e.next(s)) ++n;
    CHECK(n == 1716);
}

TEST_CASE("skip_to fast-forwards the stream") {
    MultisetEnumerator a(7, 1, 7);
    WeightChangeMultiset s;
    for (int i = 0; i < 100; ++i) REQUIRE(a.next(s));
    const WeightChangeMultiset hundredth = s;

    MultisetEnumerator b(7, 1, 7);
    b.skip_to(99);
    CHECK(b.index() == 99);
    REQUIRE(b.next(s));
    CHECK(s == hundredth);
}

TEST_CASE("survey classifies the whole q=2 k=2 range") {
    SurveySpec spec;
    spec.q = 2;
    spec.k = 2;
    spec.min_entry = 0;
    spec.max_entry = 2;
    const SurveyReport r = survey(spec);
    CHECK(r.complete);
    CHECK(r.counts.total == 10);
    CHECK(r.counts.non_realizable == 4);
    CHECK(r.counts.forcing_split_difference == 5);
    CHECK(r.counts.forcing_search == 0);
    CHECK(r.counts.not_forcing == 1);
    CHECK(r.forcing_count() == 5);
    REQUIRE(r.witness_samples.size() == 1);
    CHECK(r.witness_samples[0].first == WeightChangeMultiset{0, 0, 2});
    CHECK(r.witness_samples[0].second.d.d == std::vector<long long>{1, 1, -1});
    CHECK(r.forcing_beyond_split.empty());
}

TEST_CASE("counting vacuous multisets as forcing changes only their bucket") {
    SurveySpec spec;
    spec.q = 2;
    spec.k = 2;
    spec.min_entry = 0;
    spec.max_entry = 2;
    spec.realizable_only = false;
    const SurveyReport r = survey(spec);
    CHECK(r.counts.total == 10);
    CHECK(r.counts.non_realizable == 4);
    CHECK(r.counts.not_forcing == 1);
    CHECK(r.forcing_count() == 9);
    CHECK(r.forcing.size() == 9);
}

TEST_CASE("every reported forcing multiset re-verifies and the rest do not") {
    SurveySpec spec;
    spec.q = 2;
    spec.k = 2;
    spec.min_entry = 0;
    spec.max_entry = 3;
    const SurveyReport r = survey(spec);
    Field f(spec.q);
    IncidenceSystem sys(f, spec.k);
    std::uint64_t seen = 0;
    MultisetEnumerator e(sys.n_points(), spec.min_entry, spec.max_entry);
    WeightChangeMultiset s;
    while (e.next(s)) {
        const bool listed = std::find(r.forcing.begin(), r.forcing.end(), s) != r.forcing.end();
        const RealizableResult rr = realizable(sys, s);
        if (!rr.realizable) {
            CHECK_FALSE(listed);
            continue;
        }
        CHECK(listed == decide(sys, s).is_forcing());
        ++seen;
    }
    CHECK(seen == r.counts.forcing_split_difference + r.counts.forcing_search + r.counts.not_forcing);
}

TEST_CASE("survey output is independent of the thread count") {
    SurveySpec spec;
    spec.q = 2;
    spec.k = 3;
    spec.min_entry = 1;
    spec.max_entry = 3;
    const SurveyReport base = survey(spec);
    for (int threads : {2, 4}) {
        SurveyOptions opts;
        opts.threads = threads;
        const SurveyReport r = survey(spec, opts);
        CHECK(to_json(r) == to_json(base));
    }
}

TEST_CASE("csv streaming writes one row per multiset") {
    SurveySpec spec;
    spec.q = 2;
    spec.k = 2;
    spec.min_entry = 0;
    spec.max_entry = 2;
    std::ostringstream csv;
    write_survey_csv_header(csv);
    SurveyOptions opts;
    opts.csv_stream = &csv;
    survey(spec, opts);
    const std::string text = csv.str();
    std::uint64_t lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 11); // header + 10 rows
    CHECK(text.find("0 0 2,NotForcing,ExhaustiveSearch,-2") != std::string::npos);
    CHECK(text.find("0 0 1,ForcingVacuous,NotRealizable,-1") != std::string::npos);
}

TEST_CASE("a budget stop surrenders a resumable partial report") {
    SurveySpec spec;
    spec.q = 2;
    spec.k = 3;
    spec.min_entry = 1;
    spec.max_entry = 3;
    TempFile ckpt("projforce-test-ckpt.json");

    SurveyOptions tight;
    tight.checkpoint_path = ckpt.path;
    tight.checkpoint_every = 1;
    tight.decide.max_nodes = 40;
    bool stopped = false;
    try {
        survey(spec, tight);
    } catch (const SurveyBudgetError& e) {
        stopped = true;
        CHECK_FALSE(e.partial.complete);
        CHECK(e.partial.counts.total < MultisetEnumerator::count(7, 1, 3));
    }
    REQUIRE(stopped);
    REQUIRE(std::filesystem::exists(ckpt.path));

    SurveyOptions resume;
    resume.checkpoint_path = ckpt.path;
    resume.resume = true;
    const SurveyReport finished = survey(spec, resume);
    CHECK(finished.complete);
    CHECK(to_json(finished) == to_json(survey(spec)));
}

TEST_CASE("resuming from a mismatched checkpoint is refused") {
    TempFile ckpt("projforce-test-ckpt-mismatch.json");
    SurveySpec small;
    small.q = 2;
    small.k = 2;
    small.min_entry = 0;
    small.max_entry = 1;
    SurveyOptions opts;
    opts.checkpoint_path = ckpt.path;
    survey(small, opts);
    REQUIRE(std::filesystem::exists(ckpt.path));

    SurveySpec other = small;
    other.max_entry = 2;
    SurveyOptions resume = opts;
    resume.resume = true;
    CHECK_THROWS_AS(survey(other, resume), ParseError);
}

TEST_CASE("class and status names are stable") {
    CHECK(std::string(to_string(SurveyClass::NonRealizable)) == "NonRealizable");
    CHECK(std::string(to_string(SurveyClass::ForcingSplitDifference)) == "ForcingSplitDifference");
    CHECK(std::string(to_string(SurveyClass::ForcingSearch)) == "ForcingSearch");
    CHECK(std::string(to_string(SurveyClass::NotForcing)) == "NotForcing");
    CHECK(std::string(to_string(ForcingStatus::Forcing)) == "Forcing");
    CHECK(std::string(to_string(ForcingStatus::NotForcing)) == "NotForcing");
    CHECK(std::string(to_string(ForcingStatus::ForcingVacuous)) == "ForcingVacuous");
    CHECK(std::string(to_string(ForcingReason::SplitDifference)) == "SplitDifference");
    CHECK(std::string(to_string(ForcingReason::ExhaustiveSearch)) == "ExhaustiveSearch");
    CHECK(std::string(to_string(ForcingReason::NotRealizable)) == "NotRealizable");
}
