// dec: command-line front end for the discrete exterior calculus library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dec/checks.hpp"
#include "dec/cohomology.hpp"
#include "dec/hodge.hpp"
#include "dec/io.hpp"
#include "dec/operators.hpp"

#ifndef DEC_FIXTURE_DIR_DEFAULT
#define DEC_FIXTURE_DIR_DEFAULT "fixtures"
#endif

namespace {

using dec::io::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Flag or input problem; maps to exit code 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot open output file '" + path + "'");
    out << text;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open input file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw usage_error(std::string("malformed JSON in '") + path + "': " + e.what());
    }
}

void require_extent(int value, const char* name) {
    if (value < 1) throw usage_error(std::string(name) + " must be >= 1");
}

std::filesystem::path fixture_dir() {
    if (const char* env = std::getenv("DEC_FIXTURE_DIR"); env && *env) return env;
    return DEC_FIXTURE_DIR_DEFAULT;
}

dec::IntMatrix block_dirac(const dec::IntMatrix& a, const dec::IntMatrix& b) {
    const std::size_t nx = a.cols(), ne = a.rows(), nv = b.rows();
    dec::IntMatrix out(nx + ne + nv, nx + ne + nv);
    const auto at = a.transpose(), bt = b.transpose();
    for (std::size_t i = 0; i < ne; ++i)
        for (std::size_t j = 0; j < nx; ++j) {
            out(nx + i, j) = a(i, j);
            out(j, nx + i) = at(j, i);
        }
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < ne; ++j) {
            out(nx + ne + i, nx + j) = b(i, j);
            out(nx + j, nx + ne + i) = bt(j, i);
        }
    return out;
}

/// Compares the paper2x2-ordered matrix of `op` with the stored fixtures.
bool verify_against_fixture(const std::string& op, std::string& expected_name) {
    const auto path = fixture_dir() / "paper2x2.json";
    const json fx = read_json_file(path.string());
    const auto a = dec::io::int_matrix_from_json(fx.at("A"));
    const auto b = dec::io::int_matrix_from_json(fx.at("B"));
    dec::IntMatrix expected;
    if (op == "d0") expected = a, expected_name = "A";
    else if (op == "d1") expected = b, expected_name = "B";
    else if (op == "delta1") expected = a.transpose(), expected_name = "A^T";
    else if (op == "delta2") expected = b.transpose(), expected_name = "B^T";
    else if (op == "lap0" || op == "lap2") expected = dec::io::int_matrix_from_json(fx.at("D")), expected_name = "D";
    else if (op == "lap1") expected = dec::io::int_matrix_from_json(fx.at("D1")), expected_name = "D1";
    else expected = block_dirac(a, b), expected_name = "[[0,A^T,0],[A,0,B^T],[0,B,0]]";

    const auto g = dec::GridShape::torus(2, 2);
    const auto assembled = dec::assemble_named(g, op, dec::OrderingKind::Paper2x2);
    auto labels = [](const dec::BasisOrdering& o) {
        std::vector<std::string> out;
        for (const auto& c : o.labels) out.push_back(dec::label(c));
        return out;
    };
    const auto& ord = fx.at("orderings");
    auto fixture_labels = [&](int degree) { return ord.at(degree == 0 ? "x" : degree == 1 ? "e" : "V").get<std::vector<std::string>>(); };
    bool labels_ok = true;
    if (op != "dirac") {
        labels_ok = labels(assembled.rows) == fixture_labels(assembled.rows.degree) &&
                    labels(assembled.cols) == fixture_labels(assembled.cols.degree);
    }
    return labels_ok && assembled.entries == expected;
}

int cmd_matrices(int n, int m, const std::string& op, const std::string& ordering, const std::string& format,
                 bool verify, const std::string& output) {
    require_extent(n, "n");
    require_extent(m, "m");
    const auto kind = ordering == "paper2x2" ? dec::OrderingKind::Paper2x2 : dec::OrderingKind::Canonical;
    if (kind == dec::OrderingKind::Paper2x2 && (n != 2 || m != 2))
        throw usage_error("paper2x2 ordering requires --n 2 --m 2");
    if (verify && (n != 2 || m != 2)) throw usage_error("--verify-paper requires --n 2 --m 2");

    const auto g = dec::GridShape::torus(n, m);
    const auto doc = dec::io::to_document(dec::assemble_named(g, op, kind), g);
    write_output(output, format == "csv" ? dec::io::to_csv(doc) : dec::io::to_json(doc).dump(2) + "\n");

    if (verify) {
        std::string name;
        const bool ok = verify_against_fixture(op, name);
        std::cerr << "verify-paper " << op << " vs " << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok) return kExitFailure;
    }
    return kExitOk;
}

int cmd_cohomology(int n, int m, bool with_generators, const std::string& output) {
    require_extent(n, "n");
    require_extent(m, "m");
    const auto res = dec::cohomology(dec::GridShape::torus(n, m), with_generators);
    std::ostringstream out;
    out << "b0=" << res.betti[0] << " b1=" << res.betti[1] << " b2=" << res.betti[2] << "\n";
    if (with_generators)
        for (int r = 0; r < 3; ++r)
            for (std::size_t i = 0; i < res.generators[r].size(); ++i)
                out << "H" << r << "[" << i << "] " << dec::io::to_json(res.generators[r][i]).dump() << "\n";
    write_output(output, out.str());
    return kExitOk;
}

/// Largest residual accepted before decompose reports failure.
constexpr double kDecomposeResidualLimit = 1e-8;

int cmd_decompose(const std::string& input, const std::string& output) {
    dec::Form w = [&] {
        try {
            return dec::io::form_from_json(read_json_file(input));
        } catch (const dec::io::parse_error& e) {
            throw usage_error(e.what());
        }
    }();
    if (!w.shape().is_torus()) throw usage_error("decompose needs a torus form");
    const auto h = dec::decompose(w);
    json doc{{"exact", dec::io::to_json(h.exact)},
             {"coexact", dec::io::to_json(h.coexact)},
             {"harmonic", dec::io::to_json(h.harmonic)},
             {"residual_norm", h.residual_norm},
             {"inner_products",
              {{"exact_coexact", dec::inner_product(h.exact, h.coexact)},
               {"exact_harmonic", dec::inner_product(h.exact, h.harmonic)},
               {"coexact_harmonic", dec::inner_product(h.coexact, h.harmonic)}}}};
    write_output(output, doc.dump(2) + "\n");
    if (h.residual_norm > kDecomposeResidualLimit) {
        std::cerr << "decompose: residual " << h.residual_norm << " exceeds " << kDecomposeResidualLimit << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_solve_dirac(const std::string& input, const std::string& output) {
    dec::InhomogeneousForm f = [&] {
        try {
            return dec::io::inhomogeneous_from_json(read_json_file(input));
        } catch (const dec::io::parse_error& e) {
            throw usage_error(e.what());
        }
    }();
    if (!f.shape().is_torus()) throw usage_error("solve-dirac needs a torus form");
    try {
        const auto omega = dec::solve_dirac(f);
        const double residual = dec::norm(dec::dirac(omega) - f);
        write_output(output, json{{"omega", dec::io::to_json(omega)}, {"residual", residual}}.dump(2) + "\n");
    } catch (const dec::not_in_range&) {
        std::cerr << "solve-dirac: F has harmonic component\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_check(const std::string& suite, int n, int m, std::uint64_t seed, int trials, const std::string& output) {
    require_extent(n, "n");
    require_extent(m, "m");
    if (trials < 1) throw usage_error("trials must be >= 1");
    const auto report = dec::checks::run(suite, {n, m, seed, trials});
    write_output(output, dec::checks::format(report));
    return report.passed() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete exterior calculus on the combinatorial torus and plane window"};
    app.require_subcommand(1);

    int n = 2, m = 2;
    std::string output;
    std::string op = "d0", ordering = "canonical", format = "json";
    bool verify = false, with_generators = false;
    std::string input, suite = "all";
    std::uint64_t seed = 1;
    int trials = 100;

    auto* mat = app.add_subcommand("matrices", "Emit an operator matrix");
    mat->add_option("--n", n, "cells in the first direction")->required();
    mat->add_option("--m", m, "cells in the second direction")->required();
    mat->add_option("--op", op, "operator")->check(CLI::IsMember(dec::operator_names()));
    mat->add_option("--ordering", ordering, "basis ordering")->check(CLI::IsMember({"canonical", "paper2x2"}));
    mat->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    mat->add_flag("--verify-paper", verify, "compare against the stored 2x2 fixtures");
    mat->add_option("--output", output, "output path (default standard output)");

    auto* coh = app.add_subcommand("cohomology", "Betti numbers and generators of the torus");
    coh->add_option("--n", n)->required();
    coh->add_option("--m", m)->required();
    coh->add_flag("--with-generators,--generators", with_generators, "print integer generator forms");
    coh->add_option("--output", output);

    auto* dcp = app.add_subcommand("decompose", "Hodge decomposition of a form document");
    dcp->add_option("--input", input, "form document")->required();
    dcp->add_option("--output", output);

    auto* sdr = app.add_subcommand("solve-dirac", "Solve (d + delta) omega = F");
    sdr->add_option("--input", input, "inhomogeneous form document")->required();
    sdr->add_option("--output", output);

    auto* chk = app.add_subcommand("check", "Run identity suites on random forms");
    std::vector<std::string> suites = dec::checks::suite_names();
    suites.push_back("all");
    chk->add_option("--suite", suite)->check(CLI::IsMember(suites));
    chk->add_option("--n", n);
    chk->add_option("--m", m);
    chk->add_option("--seed", seed);
    chk->add_option("--trials", trials);
    chk->add_option("--output", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*mat) return cmd_matrices(n, m, op, ordering, format, verify, output);
        if (*coh) return cmd_cohomology(n, m, with_generators, output);
        if (*dcp) return cmd_decompose(input, output);
        if (*sdr) return cmd_solve_dirac(input, output);
        if (*chk) return cmd_check(suite, n, m, seed, trials, output);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
