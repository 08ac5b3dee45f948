#include "projforce/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace projforce {

namespace {

using nlohmann::json;

// Strip comments and split into whitespace-separated tokens.
std::vector<std::string> tokenize(std::istream& is) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(is, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    return tokens;
}

long long parse_int(const std::string& tok) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw ParseError("not an integer: '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError("not an integer: '" + tok + "'");
    return value;
}

json matrix_json(const FqMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(static_cast<int>(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"k", m.rows}, {"n", m.cols}, {"q", m.field.q()}, {"rows", std::move(rows)}};
}

json map_json(const LinearMap& m) {
    return json{{"domain", matrix_json(m.domain.matrix())}, {"image", matrix_json(m.image)}};
}

json stats_json(const SearchStats& s) {
    return json{{"arrangements", s.arrangements},
                {"integral", s.integral},
                {"nodes", s.nodes},
                {"pruned_bound", s.pruned_bound},
                {"pruned_nonintegral", s.pruned_nonintegral}};
}

json witness_json(const Witness& w) {
    return json{{"claimed_changes", w.claimed_changes}, {"d", w.d.d}, {"map", map_json(w.map)}};
}

} // namespace

FqMatrix read_matrix(std::istream& is) {
    const std::vector<std::string> tokens = tokenize(is);
    if (tokens.size() < 3) throw ParseError("matrix header requires 'q k n'");
    const long long q = parse_int(tokens[0]);
    const long long k = parse_int(tokens[1]);
    const long long n = parse_int(tokens[2]);
    if (q < 2 || q > Field::max_supported_order) throw ParseError("unsupported field order in matrix header");
    if (k < 1 || n < 0) throw ParseError("invalid dimensions in matrix header");
    if (tokens.size() != 3 + static_cast<std::size_t>(k * n))
        throw ParseError("matrix body does not match the declared dimensions");

    Field f(static_cast<int>(q));
    FqMatrix m(f, static_cast<int>(k), static_cast<int>(n));
    std::size_t t = 3;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j, ++t) {
            const long long v = parse_int(tokens[t]);
            if (v < 0 || v >= q) throw ParseError("field element out of range: '" + tokens[t] + "'");
            m.at(i, j) = static_cast<FieldElement>(v);
        }
    return m;
}

FqMatrix read_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open matrix file: " + path);
    return read_matrix(is);
}

void write_matrix(std::ostream& os, const FqMatrix& m) {
    os << m.field.q() << ' ' << m.rows << ' ' << m.cols << '\n';
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            if (j > 0) os << ' ';
            os << static_cast<int>(m.at(i, j));
        }
        os << '\n';
    }
}

std::string to_json(const FqMatrix& m) { return matrix_json(m).dump(2); }

std::string to_json(const LinearMap& m) { return map_json(m).dump(2); }

std::string to_json(const Witness& w) { return witness_json(w).dump(2); }

std::string to_json(const ForcingVerdict& v) {
    json j{{"delta", v.delta},
           {"delta_threshold", v.delta_threshold},
           {"reason", to_string(v.reason)},
           {"stats", stats_json(v.stats)},
           {"status", to_string(v.status)}};
    if (v.witness) j["witness"] = witness_json(*v.witness);
    return j.dump(2);
}

std::string to_json(const RealizableResult& r) {
    json j{{"realizable", r.realizable}, {"stats", stats_json(r.stats)}};
    if (r.d) j["d"] = r.d->d;
    if (r.map) j["map"] = map_json(*r.map);
    return j.dump(2);
}

std::string to_json(const SurveyReport& r) {
    json j{{"complete", r.complete},
           {"counts", json{{"forcing_search", r.counts.forcing_search},
                           {"forcing_split_difference", r.counts.forcing_split_difference},
                           {"non_realizable", r.counts.non_realizable},
                           {"not_forcing", r.counts.not_forcing},
                           {"total", r.counts.total}}},
           {"forcing", r.forcing},
           {"forcing_beyond_split", r.forcing_beyond_split},
           {"forcing_count", r.forcing_count()},
           {"spec", json{{"k", r.spec.k},
                         {"max_entry", r.spec.max_entry},
                         {"min_entry", r.spec.min_entry},
                         {"q", r.spec.q},
                         {"realizable_only", r.spec.realizable_only}}},
           {"stats", stats_json(r.search_stats)}};
    json samples = json::array();
    for (const auto& [s, w] : r.witness_samples) samples.push_back(json{{"multiset", s}, {"witness", witness_json(w)}});
    j["witness_samples"] = std::move(samples);
    return j.dump(2);
}

std::string canonical_json(const std::string& text) {
    try {
        return json::parse(text).dump(2);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace projforce
