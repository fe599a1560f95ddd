// Command-line surface: permanents via trellis flows and classical
// formulas, repeated-row and order-statistics trellises, sparse
// benchmarking, TSP, and opcount tables.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "permatrellis/io.hpp"
#include "permatrellis/oracles.hpp"
#include "permatrellis/order_stats.hpp"
#include "permatrellis/repeated.hpp"
#include "permatrellis/sparse.hpp"
#include "permatrellis/tsp.hpp"

namespace pt = permatrellis;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitBounds = 3;

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct PermOutput {
    std::string value;
    pt::OpCounter counter;
    std::size_t peak_width = 0;
};

template <typename V>
PermOutput run_perm(const pt::Matrix<V>& a, const std::string& method) {
    PermOutput out;
    auto render = [](const V& v) {
        if constexpr (std::is_same_v<V, pt::Rational>)
            return pt::to_string(v);
        else
            return std::to_string(v);
    };
    if (method == "trellis") {
        auto r = pt::permanent_trellis(a);
        out = {render(r.value), r.counter, r.peak_width};
    } else if (method == "trellis-norm") {
        auto r = pt::permanent_trellis_normalized(a);
        out = {render(r.value), r.counter, r.peak_width};
    } else if (method == "naive") {
        out.value = render(pt::permanent_naive(a));
    } else if (method == "ryser" || method == "ryser-gray") {
        auto r = pt::permanent_ryser(a, method == "ryser-gray");
        out = {render(r.value), r.counter, 0};
    } else if (method == "nw") {
        auto r = pt::permanent_nw(a);
        out = {render(r.value), r.counter, 0};
    } else if (method == "glynn") {
        auto r = pt::permanent_glynn(a);
        out = {render(r.value), r.counter, 0};
    } else {
        throw std::invalid_argument("unknown method " + method);
    }
    return out;
}

int cmd_perm(const std::string& file, const std::string& method, const std::string& domain) {
    auto t0 = std::chrono::steady_clock::now();
    pt::RationalMatrix a;
    try {
        a = pt::parse_matrix_file(file);
    } catch (const pt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    PermOutput out;
    try {
        if (domain == "float") {
            pt::Matrix<double> f(a.n);
            for (int i = 1; i <= a.n; ++i)
                for (int j = 1; j <= a.n; ++j) f.at(i, j) = a.at(i, j).get_d();
            out = run_perm(f, method);
        } else {
            out = run_perm(a, method);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "bounds error: " << e.what() << "\n";
        return kExitBounds;
    }
    json j = {{"value", out.value},
              {"mults", out.counter.mults},
              {"adds", out.counter.adds},
              {"peak_width", out.peak_width},
              {"wall_ms", ms_since(t0)}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_repeated(const std::string& file, bool check) {
    auto t0 = std::chrono::steady_clock::now();
    pt::RepeatedRowSpec spec;
    try {
        std::ifstream in(file);
        if (!in) throw pt::ParseError("cannot open " + file);
        spec = pt::parse_repeated_spec(in);
    } catch (const pt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    auto r = pt::permanent_repeated(spec);
    json j = {{"value", pt::to_string(r.permanent)},
              {"toor_flow", pt::to_string(r.toor_flow)},
              {"mults", r.counter.mults},
              {"adds", r.counter.adds},
              {"vertices", r.vertex_count},
              {"edges", r.edge_count},
              {"wall_ms", ms_since(t0)}};
    if (check) {
        if (spec.n() > 7) {
            std::cerr << "bounds error: --check requires n <= 7\n";
            return kExitBounds;
        }
        pt::Rational naive = pt::permanent_naive(spec.expand());
        j["check_naive"] = pt::to_string(naive);
        j["check_ok"] = (naive == r.permanent);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_orderstats(const std::string& file, bool flows) {
    auto t0 = std::chrono::steady_clock::now();
    pt::OrderStatQuery q;
    try {
        std::ifstream in(file);
        if (!in) throw pt::ParseError("cannot open " + file);
        q = pt::parse_order_query(in);
    } catch (const pt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    auto r = pt::joint_probability(q);
    json j = {{"probability", pt::to_string(r.probability)},
              {"op_counts", {{"mults", r.counter.mults}, {"adds", r.counter.adds}}},
              {"vertices", r.vertex_count},
              {"edges", r.edge_count},
              {"wall_ms", ms_since(t0)}};
    if (flows) {
        json fl = json::array();
        for (std::size_t i = 0; i < r.final_tuples.size(); ++i)
            fl.push_back({{"tuple", r.final_tuples[i]}, {"flow", pt::to_string(r.final_flows[i])}});
        j["flows_at_level_n"] = std::move(fl);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_sparse_bench(int n, const std::string& d_str, int trials, std::uint64_t seed,
                     const std::string& emit) {
    pt::Rational d;
    try {
        d = pt::parse_rational(d_str);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    if (n < 2 || d <= 0 || d >= n) {
        std::cerr << "bounds error: need n >= 2 and 0 < d < n\n";
        return kExitBounds;
    }
    int measured_max = std::min(n, pt::max_permanent_n());
    json rows = json::array();
    std::cout << (emit == "csv"
                      ? "n,trials,mean_vertices,mean_edges,mean_mults,curve_phi1,curve_phi2,"
                        "curve_phi3,curve_phiT,curve_dU,exact_U\n"
                      : "");
    // The model needs d < n, so start at the first dimension that admits it.
    int nn0 = 2;
    while (pt::Rational(nn0) <= d) ++nn0;
    for (int nn = nn0; nn <= n; ++nn) {
        pt::SparseModel model{nn, d, seed};
        int t = nn <= measured_max ? trials : 0;
        pt::SparseBenchRow row = pt::sparse_benchmark(model, t);
        if (emit == "csv") {
            std::cout << row.n << "," << row.trials << "," << row.mean_vertices << ","
                      << row.mean_edges << "," << row.mean_mults << "," << row.curve_phi1 << ","
                      << row.curve_phi2 << "," << row.curve_phi3 << "," << row.curve_phiT << ","
                      << row.curve_U << "," << pt::to_string(row.exact_U) << "\n";
        } else {
            rows.push_back({{"n", row.n},
                            {"trials", row.trials},
                            {"mean_vertices", row.mean_vertices},
                            {"mean_edges", row.mean_edges},
                            {"mean_mults", row.mean_mults},
                            {"curve_phi1", row.curve_phi1},
                            {"curve_phi2", row.curve_phi2},
                            {"curve_phi3", row.curve_phi3},
                            {"curve_phiT", row.curve_phiT},
                            {"curve_dU", row.curve_U},
                            {"exact_U", pt::to_string(row.exact_U)}});
        }
    }
    if (emit != "csv") std::cout << rows.dump(2) << "\n";
    return 0;
}

int cmd_tsp(const std::string& file, bool want_tour) {
    auto t0 = std::chrono::steady_clock::now();
    pt::DistanceMatrix dm;
    try {
        std::ifstream in(file);
        if (!in) throw pt::ParseError("cannot open " + file);
        dm = pt::parse_distance_matrix(in);
    } catch (const pt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    pt::TspResult r;
    try {
        r = pt::solve_tsp(dm, want_tour);
    } catch (const std::invalid_argument& e) {
        std::cerr << "bounds error: " << e.what() << "\n";
        return kExitBounds;
    }
    json j = {{"length", r.length},
              {"additions", r.counter.adds},
              {"comparisons", r.counter.comparisons},
              {"wall_ms", ms_since(t0)}};
    if (want_tour) j["tour"] = r.tour;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_tables(int lo, int hi, const std::string& emit) {
    std::vector<pt::OpcountRow> rows;
    try {
        rows = pt::opcount_table(lo, hi);
    } catch (const std::invalid_argument& e) {
        std::cerr << "bounds error: " << e.what() << "\n";
        return kExitBounds;
    }
    if (emit == "csv") {
        std::cout << "n,method,mults_formula,mults_measured,adds_formula,adds_measured\n";
        for (const auto& r : rows)
            std::cout << r.n << "," << r.method << "," << r.mults_formula << ","
                      << r.mults_measured << "," << r.adds_formula << "," << r.adds_measured
                      << "\n";
    } else {
        json j = json::array();
        for (const auto& r : rows)
            j.push_back({{"n", r.n},
                         {"method", r.method},
                         {"mults_formula", r.mults_formula},
                         {"mults_measured", r.mults_measured},
                         {"adds_formula", r.adds_formula},
                         {"adds_measured", r.adds_measured}});
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Permanent and shortest-tour computation on trellises"};
    app.require_subcommand(1);

    std::string matrix_file, method = "trellis", domain = "exact";
    auto* perm = app.add_subcommand("perm", "Permanent of a matrix");
    perm->add_option("matrix", matrix_file, "Matrix file (CSV or JSON)")->required();
    perm->add_option("--method", method,
                     "trellis|trellis-norm|naive|ryser|ryser-gray|nw|glynn");
    perm->add_option("--domain", domain, "exact|float");

    std::string spec_file;
    bool check = false;
    auto* rep = app.add_subcommand("repeated", "Permanent of a repeated-row matrix");
    rep->add_option("spec", spec_file, "Spec JSON {rows, mults}")->required();
    rep->add_flag("--check", check, "Cross-check against the naive oracle (n <= 7)");

    std::string query_file;
    bool flows = false;
    auto* ord = app.add_subcommand("orderstats", "Joint order-statistics probability");
    ord->add_option("query", query_file, "Query JSON {ranks, cdf}")->required();
    ord->add_flag("--flows", flows, "Include the level-n flows");

    int bench_n = 20, trials = 20;
    std::string d_str = "3";
    std::uint64_t seed = 1;
    std::string emit = "json";
    auto* bench = app.add_subcommand("sparse-bench", "Sparse-model benchmark curves");
    bench->add_option("--n", bench_n, "Max dimension");
    bench->add_option("--d", d_str, "Expected nonzeros per row (rational)");
    bench->add_option("--trials", trials, "Trials per dimension");
    bench->add_option("--seed", seed, "RNG seed");
    bench->add_option("--emit", emit, "json|csv");

    std::string dist_file;
    bool want_tour = false;
    auto* tsp = app.add_subcommand("tsp", "Shortest closed tour");
    tsp->add_option("distances", dist_file, "Distance matrix (CSV or JSON)")->required();
    tsp->add_flag("--tour", want_tour, "Recover one optimal tour");

    int lo = 2, hi = 12;
    std::string tables_emit = "csv";
    auto* tables = app.add_subcommand("tables", "Formula-vs-measured opcount table");
    tables->add_option("--lo", lo, "Smallest n");
    tables->add_option("--hi", hi, "Largest n");
    tables->add_option("--emit", tables_emit, "json|csv");

    int threads = 1;
    app.add_option("--threads", threads, "Module-level parallelism (reserved)");

    CLI11_PARSE(app, argc, argv);

    if (perm->parsed()) return cmd_perm(matrix_file, method, domain);
    if (rep->parsed()) return cmd_repeated(spec_file, check);
    if (ord->parsed()) return cmd_orderstats(query_file, flows);
    if (bench->parsed()) return cmd_sparse_bench(bench_n, d_str, trials, seed, emit);
    if (tsp->parsed()) return cmd_tsp(dist_file, want_tour);
    if (tables->parsed()) return cmd_tables(lo, hi, tables_emit);
    return 1;
}
