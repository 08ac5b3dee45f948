#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "projforce/enumerate.hpp"
#include "projforce/io.hpp"
#include "projforce/oracle.hpp"

namespace {

using nlohmann::json;
using namespace projforce;

constexpr int exit_ok = 0;
constexpr int exit_not_forcing = 1;
constexpr int exit_bad_input = 2;
constexpr int exit_budget = 3;

struct Common {
    int q = 2;
    int k = 3;
    std::string format = "text";
    std::uint64_t budget = 0; // 0 = unset; resolution order: flag, env, DecideOptions default
    bool budget_set = false;
    int threads = 1;

    bool json_mode() const { return format == "json"; }

    DecideOptions decide_options() const {
        if (threads < 1) throw ParseError("thread count must be at least 1, got " + std::to_string(threads));
        DecideOptions d;
        if (budget_set) {
            d.max_nodes = budget;
        } else if (const char* env = std::getenv("PROJFORCE_BUDGET")) {
            std::size_t used = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(env, &used);
            } catch (const std::exception&) {
                throw ParseError("PROJFORCE_BUDGET is not an unsigned integer");
            }
            if (used != std::string(env).size()) throw ParseError("PROJFORCE_BUDGET is not an unsigned integer");
            d.max_nodes = v;
        }
        d.threads = threads;
        return d;
    }
};

void add_common(CLI::App* cmd, Common& c, bool with_qk = true) {
    if (with_qk) {
        cmd->add_option("--q", c.q, "Field order (prime power, at most 32)");
        cmd->add_option("--k", c.k, "Code dimension");
    }
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--budget", c.budget, "Search node cap (overrides PROJFORCE_BUDGET)")
        ->each([&c](const std::string&) { c.budget_set = true; });
    cmd->add_option("--threads", c.threads, "Worker threads");
}

void print_multiset(std::ostream& os, const WeightChangeMultiset& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) os << ' ';
        os << s[i];
    }
}

void print_stats(std::ostream& os, const SearchStats& st) {
    os << "stats: nodes=" << st.nodes << " arrangements=" << st.arrangements << " integral=" << st.integral
       << " pruned_nonintegral=" << st.pruned_nonintegral << " pruned_bound=" << st.pruned_bound << '\n';
}

void print_witness_text(std::ostream& os, const Witness& w) {
    os << "witness d:";
    for (long long v : w.d.d) os << ' ' << v;
    os << '\n';
    os << "witness domain matrix:\n";
    write_matrix(os, w.map.domain.matrix());
    os << "witness image matrix:\n";
    write_matrix(os, w.map.image);
}

void print_verdict_text(std::ostream& os, const IncidenceSystem& sys, const WeightChangeMultiset& s,
                        const ForcingVerdict& v) {
    os << "q=" << sys.field().q() << " k=" << sys.k() << " N=" << sys.n_points() << '\n';
    os << "multiset: ";
    print_multiset(os, s);
    os << '\n';
    os << "delta: " << v.delta << '\n';
    os << "threshold: " << v.delta_threshold << '\n';
    os << "status: " << to_string(v.status) << '\n';
    os << "reason: " << to_string(v.reason) << '\n';
    print_stats(os, v.stats);
    if (v.witness) print_witness_text(os, *v.witness);
}

int report_verdict(const Common& c, const IncidenceSystem& sys, WeightChangeMultiset s, const ForcingVerdict& v,
                   bool exit_status) {
    std::sort(s.begin(), s.end());
    if (c.json_mode())
        std::cout << to_json(v) << '\n';
    else
        print_verdict_text(std::cout, sys, s, v);
    if (exit_status && v.status == ForcingStatus::NotForcing) return exit_not_forcing;
    return exit_ok;
}

int cmd_check(const Common& c, const WeightChangeMultiset& s, bool exit_status, bool no_split) {
    Field f(c.q);
    IncidenceSystem sys(f, c.k);
    DecideOptions opts = c.decide_options();
    opts.use_split_difference = !no_split;
    ForcingVerdict v = decide(sys, s, opts);
    return report_verdict(c, sys, s, v, exit_status);
}

int cmd_matrix(const Common& c) {
    Field f(c.q);
    IncidenceSystem sys(f, c.k);
    const int n = sys.n_points();
    if (c.json_mode()) {
        json points = json::array();
        for (const auto& p : sys.points()) {
            json coords = json::array();
            for (FieldElement e : p) coords.push_back(static_cast<int>(e));
            points.push_back(std::move(coords));
        }
        json m = json::array();
        json inv = json::array();
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            json irow = json::array();
            for (int j = 0; j < n; ++j) {
                row.push_back(static_cast<int>(sys.entry(i, j)));
                irow.push_back(f.q() * sys.entry(j, i) - (f.q() - 1));
            }
            m.push_back(std::move(row));
            inv.push_back(std::move(irow));
        }
        json j{{"denominator", sys.row_weight()},
               {"inverse_numerators", std::move(inv)},
               {"k", sys.k()},
               {"matrix", std::move(m)},
               {"n", n},
               {"points", std::move(points)},
               {"q", f.q()}};
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << "q=" << f.q() << " k=" << sys.k() << " N=" << n << '\n';
    std::cout << "points:\n";
    for (int i = 0; i < n; ++i) {
        std::cout << i << ':';
        for (FieldElement e : sys.points()[static_cast<std::size_t>(i)]) std::cout << ' ' << static_cast<int>(e);
        std::cout << '\n';
    }
    std::cout << "matrix:\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j > 0) std::cout << ' ';
            std::cout << static_cast<int>(sys.entry(i, j));
        }
        std::cout << '\n';
    }
    std::cout << "inverse numerators (denominator " << sys.row_weight() << "):\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j > 0) std::cout << ' ';
            std::cout << f.q() * sys.entry(j, i) - (f.q() - 1);
        }
        std::cout << '\n';
    }
    return exit_ok;
}

int cmd_verify_map(const Common& c, const std::string& domain_path, const std::string& image_path) {
    FqMatrix domain = read_matrix_file(domain_path);
    FqMatrix image = read_matrix_file(image_path);
    LinearMap map(GeneratorMatrix(std::move(domain)), std::move(image));
    const Field& f = map.domain.matrix().field;
    IncidenceSystem sys(f, map.domain.k());

    const WeightChangeMultiset changes = weight_changes(map, sys.points());
    const bool projection = is_projection(map, sys.points());
    if (projection != is_projection_by_matching(map, sys.points()))
        throw Error("projection criteria disagree; this is a bug");
    const MultiplicityVector r = multiplicities(map.domain.matrix(), sys.points());
    const MultiplicityVector q_vec = multiplicities(map.image, sys.points());

    if (c.json_mode()) {
        json j{{"changes", changes},
               {"domain_multiplicities", json{{"counts", r.counts}, {"zero_columns", r.zero_cols}}},
               {"image_multiplicities", json{{"counts", q_vec.counts}, {"zero_columns", q_vec.zero_cols}}},
               {"projection", projection}};
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << "weight changes: ";
    print_multiset(std::cout, changes);
    std::cout << '\n';
    std::cout << "projection: " << (projection ? "true" : "false") << '\n';
    std::cout << "R:";
    for (long long v : r.counts) std::cout << ' ' << v;
    std::cout << '\n';
    std::cout << "Q:";
    for (long long v : q_vec.counts) std::cout << ' ' << v;
    std::cout << " (zero columns: " << q_vec.zero_cols << ")\n";
    return exit_ok;
}

void print_survey_text(std::ostream& os, const SurveyReport& r) {
    os << "spec: q=" << r.spec.q << " k=" << r.spec.k << " entries [" << r.spec.min_entry << "," << r.spec.max_entry
       << "] realizable_only=" << (r.spec.realizable_only ? "true" : "false") << '\n';
    os << "total: " << r.counts.total << '\n';
    os << "non_realizable: " << r.counts.non_realizable << '\n';
    os << "forcing_split_difference: " << r.counts.forcing_split_difference << '\n';
    os << "forcing_search: " << r.counts.forcing_search << '\n';
    os << "not_forcing: " << r.counts.not_forcing << '\n';
    os << "forcing_count: " << r.forcing_count() << '\n';
    os << "forcing_beyond_split (" << r.forcing_beyond_split.size() << "):\n";
    for (const auto& s : r.forcing_beyond_split) {
        print_multiset(os, s);
        os << '\n';
    }
    os << "complete: " << (r.complete ? "true" : "false") << '\n';
}

int cmd_survey(const Common& c, const SurveySpec& spec_in, const SurveyOptions& opts_in, const std::string& json_path,
               const std::string& csv_path) {
    SurveySpec spec = spec_in;
    spec.q = c.q;
    spec.k = c.k;
    SurveyOptions opts = opts_in;
    opts.decide = c.decide_options();
    opts.decide.threads = 1; // survey parallelism is across multisets
    opts.threads = c.threads;

    std::ofstream csv;
    if (!csv_path.empty()) {
        const bool fresh = !opts.resume || !std::ifstream(csv_path).good();
        csv.open(csv_path, opts.resume ? std::ios::app : std::ios::trunc);
        if (!csv) throw Error("cannot open CSV file: " + csv_path);
        if (fresh) write_survey_csv_header(csv);
        opts.csv_stream = &csv;
    }

    try {
        const SurveyReport report = survey(spec, opts);
        if (!json_path.empty()) {
            std::ofstream js(json_path, std::ios::trunc);
            if (!js) throw Error("cannot open JSON file: " + json_path);
            js << to_json(report) << '\n';
        }
        if (c.json_mode())
            std::cout << to_json(report) << '\n';
        else
            print_survey_text(std::cout, report);
        return exit_ok;
    } catch (const SurveyBudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        print_survey_text(std::cerr, e.partial);
        return exit_budget;
    }
}

int cmd_witness(const Common& c, const WeightChangeMultiset& s) {
    Field f(c.q);
    IncidenceSystem sys(f, c.k);
    ForcingVerdict v = decide(sys, s, c.decide_options());
    if (v.witness && !verify_witness(sys, s, *v.witness)) throw Error("witness failed verification; this is a bug");
    return report_verdict(c, sys, s, v, false);
}

int cmd_realizable(const Common& c, const WeightChangeMultiset& s) {
    Field f(c.q);
    IncidenceSystem sys(f, c.k);
    RealizableResult r = realizable(sys, s, c.decide_options());
    if (c.json_mode()) {
        std::cout << to_json(r) << '\n';
        return exit_ok;
    }
    std::cout << "realizable: " << (r.realizable ? "true" : "false") << '\n';
    if (r.d) {
        std::cout << "d:";
        for (long long v : r.d->d) std::cout << ' ' << v;
        std::cout << '\n';
    }
    if (r.map) {
        std::cout << "domain matrix:\n";
        write_matrix(std::cout, r.map->domain.matrix());
        std::cout << "image matrix:\n";
        write_matrix(std::cout, r.map->image);
    }
    print_stats(std::cout, r.stats);
    return exit_ok;
}

int cmd_split_diff(const Common& c, const WeightChangeMultiset& s) {
    Field f(c.q);
    const auto [delta, den] = min_entry_bound(f, c.k, s);
    const bool forcing = delta > -den;
    if (c.json_mode()) {
        json j{{"delta", delta}, {"delta_threshold", -den}, {"split_difference_forcing", forcing}};
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << "delta: " << delta << '\n';
    std::cout << "threshold: " << -den << '\n';
    std::cout << "split_difference_forcing: " << (forcing ? "true" : "false") << '\n';
    return exit_ok;
}

int report_characterization(const Common& c, const CharacterizationResult& r) {
    if (c.json_mode()) {
        json j{{"realizable", r.realizable}};
        if (r.forcing)
            j["forcing"] = *r.forcing;
        else
            j["forcing"] = nullptr;
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << "realizable: " << (r.realizable ? "true" : "false") << '\n';
    std::cout << "forcing: " << (r.forcing ? (*r.forcing ? "true" : "false") : "n/a") << '\n';
    return exit_ok;
}

int cmd_oracle_bruteforce(const Common& c, const WeightChangeMultiset& s) {
    Field f(c.q);
    IncidenceSystem sys(f, c.k);
    ForcingVerdict v = decide_bruteforce(f, c.k, s);
    return report_verdict(c, sys, s, v, false);
}

int cmd_oracle_map_check(const Common& c, const WeightChangeMultiset& s, int max_cols) {
    Field f(c.q);
    const ForcingStatus status = exhaustive_map_check(f, c.k, s, max_cols);
    if (c.json_mode()) {
        json j{{"max_cols", max_cols}, {"status", to_string(status)}};
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << "status: " << to_string(status) << '\n';
    return exit_ok;
}

int cmd_oracle_diffs(const Common& c, const WeightChangeMultiset& s) {
    Field f(c.q);
    const auto diffs = integral_difference_vectors(f, c.k, s);
    if (c.json_mode()) {
        json j{{"count", diffs.size()}, {"difference_vectors", diffs}};
        std::cout << j.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << "integral difference vectors: " << diffs.size() << '\n';
    for (const auto& d : diffs) {
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i > 0) std::cout << ' ';
            std::cout << d[i];
        }
        std::cout << '\n';
    }
    return exit_ok;
}

int run(int argc, char** argv) {
    CLI::App app{"Decide whether multisets of weight changes force projections"};
    app.require_subcommand(1);

    Common c;

    auto* check = app.add_subcommand("check", "Decide whether a multiset is projection-forcing");
    WeightChangeMultiset check_s;
    bool check_exit_status = false;
    bool check_no_split = false;
    add_common(check, c);
    check->add_option("--multiset", check_s, "Comma-separated weight changes")->required()->delimiter(',');
    check->add_flag("--exit-status", check_exit_status, "Exit 1 when NotForcing instead of reporting via data only");
    check->add_flag("--no-split-difference", check_no_split, "Skip the split-difference fast path");

    auto* matrix = app.add_subcommand("matrix", "Print the point list, M, and its inverse numerators");
    add_common(matrix, c);

    auto* verify = app.add_subcommand("verify-map", "Weight changes and projection test for an explicit map");
    std::string domain_path;
    std::string image_path;
    add_common(verify, c, false);
    verify->add_option("--domain", domain_path, "Domain generator matrix file")->required();
    verify->add_option("--image", image_path, "Image matrix file")->required();

    auto* sv = app.add_subcommand("survey", "Classify every multiset within entry bounds");
    SurveySpec spec;
    SurveyOptions sopts;
    std::string sv_json;
    std::string sv_csv;
    bool include_vacuous = false;
    std::uint64_t sv_sample = 3;
    add_common(sv, c);
    sv->add_option("--min-entry", spec.min_entry, "Smallest entry (default 1)");
    sv->add_option("--max-entry", spec.max_entry, "Largest entry (default 7)");
    sv->add_flag("--include-vacuous", include_vacuous, "Count non-realizable multisets as (vacuously) forcing");
    sv->add_option("--json", sv_json, "Write the full report to this JSON file");
    sv->add_option("--csv", sv_csv, "Stream per-multiset rows to this CSV file");
    sv->add_option("--checkpoint", sopts.checkpoint_path, "Resumable state file");
    sv->add_option("--checkpoint-every", sopts.checkpoint_every, "Checkpoint period in multisets");
    sv->add_flag("--resume", sopts.resume, "Continue from the checkpoint file");
    sv->add_option("--sample", sv_sample, "Witnesses kept for the first NotForcing multisets");

    auto* wit = app.add_subcommand("witness", "Construct a non-projection witness when one exists");
    WeightChangeMultiset wit_s;
    add_common(wit, c);
    wit->add_option("--multiset", wit_s, "Comma-separated weight changes")->required()->delimiter(',');

    auto* re = app.add_subcommand("realizable", "Test whether any linear map realizes the multiset");
    WeightChangeMultiset re_s;
    add_common(re, c);
    re->add_option("--multiset", re_s, "Comma-separated weight changes")->required()->delimiter(',');

    auto* sd = app.add_subcommand("split-diff", "Split difference and its forcing threshold");
    WeightChangeMultiset sd_s;
    add_common(sd, c);
    sd->add_option("--multiset", sd_s, "Comma-separated weight changes")->required()->delimiter(',');

    auto* oracle = app.add_subcommand("oracle", "Independent brute-force reference checks");
    oracle->require_subcommand(1);

    auto* ab = oracle->add_subcommand("ab", "Closed form for (2^k - 2) copies of a and one b, q = 2");
    long long ab_a = 0;
    long long ab_b = 0;
    int ab_k = 3;
    ab->add_option("--k", ab_k, "Code dimension (at least 2)")->required();
    ab->add_option("--a", ab_a, "Repeated entry")->required();
    ab->add_option("--b", ab_b, "Distinguished entry")->required();
    ab->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* abc = oracle->add_subcommand("abc", "Closed form for (2^k - 3) copies of a plus b and c, q = 2");
    long long abc_a = 0;
    long long abc_b = 0;
    long long abc_c = 0;
    int abc_k = 3;
    abc->add_option("--k", abc_k, "Code dimension (at least 2)")->required();
    abc->add_option("--a", abc_a, "Repeated entry")->required();
    abc->add_option("--b", abc_b, "Second entry")->required();
    abc->add_option("--c", abc_c, "Third entry")->required();
    abc->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* bf = oracle->add_subcommand("bruteforce", "Unpruned enumeration of every arrangement");
    WeightChangeMultiset bf_s;
    add_common(bf, c);
    bf->add_option("--multiset", bf_s, "Comma-separated weight changes")->required()->delimiter(',');

    auto* mc = oracle->add_subcommand("map-check", "Definition-level enumeration of bounded maps (q=2, k=2)");
    WeightChangeMultiset mc_s;
    int mc_max_cols = 8;
    add_common(mc, c);
    mc->add_option("--multiset", mc_s, "Comma-separated weight changes")->required()->delimiter(',');
    mc->add_option("--max-cols", mc_max_cols, "Domain column bound (at most 8)");

    auto* df = oracle->add_subcommand("diffs", "All integral difference vectors M^{-1} pi");
    WeightChangeMultiset df_s;
    add_common(df, c);
    df->add_option("--multiset", df_s, "Comma-separated weight changes")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return exit_bad_input;
    }

    try {
        if (*check) return cmd_check(c, check_s, check_exit_status, check_no_split);
        if (*matrix) return cmd_matrix(c);
        if (*verify) return cmd_verify_map(c, domain_path, image_path);
        if (*sv) {
            spec.realizable_only = !include_vacuous;
            sopts.witness_sample_limit = static_cast<std::size_t>(sv_sample);
            return cmd_survey(c, spec, sopts, sv_json, sv_csv);
        }
        if (*wit) return cmd_witness(c, wit_s);
        if (*re) return cmd_realizable(c, re_s);
        if (*sd) return cmd_split_diff(c, sd_s);
        if (*ab) {
            c.k = ab_k;
            return report_characterization(c, ab_characterization(ab_k, ab_a, ab_b));
        }
        if (*abc) {
            c.k = abc_k;
            return report_characterization(c, abc_characterization(abc_k, abc_a, abc_b, abc_c));
        }
        if (*bf) return cmd_oracle_bruteforce(c, bf_s);
        if (*mc) {
            if (!mc->count("--q")) c.q = 2;
            if (!mc->count("--k")) c.k = 2;
            return cmd_oracle_map_check(c, mc_s, mc_max_cols);
        }
        if (*df) return cmd_oracle_diffs(c, df_s);
        return exit_bad_input;
    } catch (const BudgetExhaustedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_bad_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_bad_input;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
