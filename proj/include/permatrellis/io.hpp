#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "matrix.hpp"
#include "order_stats.hpp"
#include "repeated.hpp"
#include "trellis.hpp"
#include "tsp.hpp"

namespace permatrellis {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io_detail {

inline Rational cell_to_rational(const nlohmann::json& v) {
    if (v.is_number_integer()) return Rational((long)v.get<long long>());
    if (v.is_number_float()) {
        Rational r;
        // Exact binary value of the double; inputs wanting exactness
        // should use rational strings.
        r = v.get<double>();
        return r;
    }
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw ParseError("expected number or rational string");
}

inline std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            // trim
            std::size_t b = cell.find_first_not_of(" \t\r");
            std::size_t e = cell.find_last_not_of(" \t\r");
            cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace io_detail

/// Matrix from CSV (n rows of n comma-separated rationals) or JSON
/// ({"n": ..., "entries": [[...]]}); format chosen by content sniffing.
inline RationalMatrix parse_matrix(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty matrix input");

    if (text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad matrix JSON: ") + e.what());
        }
        if (!j.contains("entries") || !j["entries"].is_array())
            throw ParseError("matrix JSON needs an \"entries\" array");
        auto& rows = j["entries"];
        int n = j.value("n", (int)rows.size());
        if ((int)rows.size() != n) throw ParseError("matrix JSON: row count != n");
        RationalMatrix a(n);
        for (int i = 0; i < n; ++i) {
            if ((int)rows[i].size() != n) throw ParseError("matrix JSON: ragged row");
            for (int k = 0; k < n; ++k)
                a.at(i + 1, k + 1) = io_detail::cell_to_rational(rows[i][k]);
        }
        return a;
    }

    std::stringstream ss(text);
    auto cells = io_detail::read_csv(ss);
    int n = (int)cells.size();
    if (n == 0) throw ParseError("empty matrix CSV");
    RationalMatrix a(n);
    for (int i = 0; i < n; ++i) {
        if ((int)cells[i].size() != n) throw ParseError("matrix CSV must be square");
        for (int k = 0; k < n; ++k) {
            try {
                a.at(i + 1, k + 1) = parse_rational(cells[i][k]);
            } catch (const std::exception&) {
                throw ParseError("bad matrix CSV cell: " + cells[i][k]);
            }
        }
    }
    return a;
}

inline RationalMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_matrix(in);
}

/// {"rows": [[...]], "mults": [...]}
inline RepeatedRowSpec parse_repeated_spec(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad spec JSON: ") + e.what());
    }
    if (!j.contains("rows") || !j.contains("mults")) throw ParseError("spec JSON needs rows, mults");
    RepeatedRowSpec spec;
    for (auto& row : j["rows"]) {
        std::vector<Rational> r;
        for (auto& v : row) r.push_back(io_detail::cell_to_rational(v));
        spec.rows.push_back(std::move(r));
    }
    for (auto& v : j["mults"]) spec.mults.push_back(v.get<int>());
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
    return spec;
}

/// {"ranks": [...], "cdf": [[...]]}
inline OrderStatQuery parse_order_query(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad query JSON: ") + e.what());
    }
    if (!j.contains("ranks") || !j.contains("cdf")) throw ParseError("query JSON needs ranks, cdf");
    OrderStatQuery q;
    for (auto& v : j["ranks"]) q.ranks.push_back(v.get<int>());
    for (auto& row : j["cdf"]) {
        std::vector<Rational> r;
        for (auto& v : row) r.push_back(io_detail::cell_to_rational(v));
        q.cdf.push_back(std::move(r));
    }
    q.n = (int)q.cdf.size();
    q.t = (int)q.ranks.size();
    try {
        q.validate();
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
    return q;
}

/// Distances from CSV (n x n) or JSON {"d": [[...]]}.
inline DistanceMatrix parse_distance_matrix(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty distance input");
    std::vector<std::vector<double>> rows;
    if (text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad distance JSON: ") + e.what());
        }
        if (!j.contains("d")) throw ParseError("distance JSON needs \"d\"");
        for (auto& row : j["d"]) rows.push_back(row.get<std::vector<double>>());
    } else {
        std::stringstream ss(text);
        for (auto& cells : io_detail::read_csv(ss)) {
            std::vector<double> row;
            for (auto& c : cells) {
                try {
                    row.push_back(std::stod(c));
                } catch (const std::exception&) {
                    throw ParseError("bad distance cell: " + c);
                }
            }
            rows.push_back(std::move(row));
        }
    }
    int n = (int)rows.size();
    DistanceMatrix dm(n);
    for (int i = 0; i < n; ++i) {
        if ((int)rows[i].size() != n) throw ParseError("distance matrix must be square");
        for (int k = 0; k < n; ++k) dm.at(i + 1, k + 1) = rows[i][k];
    }
    try {
        dm.validate();
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
    return dm;
}

/// Trellis as JSON: {"length": n, "levels": [[tags]], "edges":
/// [[{"from","to","label"}]]}. Labels serialized as rational strings.
inline nlohmann::json trellis_to_json(const Trellis<Rational>& t) {
    nlohmann::json j;
    j["length"] = t.length();
    j["levels"] = t.levels;
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : t.edges) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : layer)
            edges.push_back({{"from", e.from}, {"to", e.to}, {"label", to_string(e.label)}});
        layers.push_back(std::move(edges));
    }
    j["edges"] = std::move(layers);
    return j;
}

inline nlohmann::json trellis_to_json(const Trellis<int>& t) {
    nlohmann::json j;
    j["length"] = t.length();
    j["levels"] = t.levels;
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : t.edges) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : layer)
            edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
        layers.push_back(std::move(edges));
    }
    j["edges"] = std::move(layers);
    return j;
}

}  // namespace permatrellis
