#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcspectra/bounds.hpp"
#include "qcspectra/nested.hpp"
#include "qcspectra/qc.hpp"
#include "qcspectra/report.hpp"

namespace qs = qcspectra;
using nlohmann::json;

namespace {

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open input file '" + path + "'");
    ss << f.rdbuf();
    return ss.str();
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

struct CommonOpts {
    std::string format = "text";
    double tol = qs::kDefaultEigTol;
    double cluster_tol = -1.0;  // negative: pick automatically

    bool json_out() const { return format == "json"; }
    std::optional<double> cluster() const {
        return cluster_tol < 0.0 ? std::nullopt : std::optional<double>(cluster_tol);
    }
};

void add_format_opt(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "output format (text or json)")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("QCSPECTRA_FORMAT");
}

void add_tol_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tol", o.tol, "eigensolver convergence tolerance")
        ->check(CLI::PositiveNumber)
        ->envname("QCSPECTRA_TOL");
    cmd->add_option("--cluster-tol", o.cluster_tol,
                    "eigenvalue clustering tolerance (default: max(1e-8, 1e-10 * lambda_max))")
        ->envname("QCSPECTRA_CLUSTER_TOL");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string weight_histogram(const std::vector<std::size_t>& weights) {
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t w : weights) ++hist[w];
    std::string out;
    for (const auto& [w, count] : hist) {
        if (!out.empty()) out += ", ";
        out += std::to_string(w) + " x " + std::to_string(count);
    }
    return out;
}

// A JSON document with a "dims" field describes a nested circulant; anything
// else is a polynomial parity-check matrix.
bool looks_like_nested_json(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch != '{') return false;
        break;
    }
    const json j = json::parse(text, nullptr, false);
    return j.is_object() && j.contains("dims");
}

int report_nested_spectrum(const qs::NestedCirculant& nc, const std::string& subject,
                           const CommonOpts& o);

int cmd_spectrum(const std::string& input, const std::string& method, const CommonOpts& o) {
    const std::string text = read_input(input);
    if (looks_like_nested_json(text))
        return report_nested_spectrum(qs::parse_nested(text), "nested-evaluation", o);
    const qs::PolyMatrix p = qs::parse_poly_matrix(text);
    const std::string chosen = method == "auto" ? "reduced" : method;
    const auto t0 = std::chrono::steady_clock::now();
    const qs::Spectrum spectrum = chosen == "dense"
                                      ? qs::gram_spectrum_dense(p, o.tol, o.cluster())
                                      : qs::gram_spectrum_reduced(p, o.tol, o.cluster());
    const double ms = elapsed_ms(t0);
    const std::size_t n = p.r * p.block_cols;
    if (o.json_out())
        print(qs::spectrum_report_json(spectrum, chosen, n, ms));
    else
        qs::write_spectrum_report_text(std::cout, spectrum, chosen, n, ms);
    return 0;
}

int cmd_bound(const std::string& input, const CommonOpts& o) {
    const qs::PolyMatrix p = qs::parse_poly_matrix(read_input(input));
    const qs::CodeProfile prof = qs::profile(qs::expand_scalar(p, qs::Layout::BlockOfCirculants));
    if (!prof.regular)
        throw std::invalid_argument(
            "bound: code is not (c, d)-regular; column weights: " +
            weight_histogram(prof.col_weights) +
            "; row weights: " + weight_histogram(prof.row_weights));
    const qs::Spectrum spectrum = qs::gram_spectrum_reduced(p, o.tol, o.cluster());
    const qs::BoundReport rep = qs::make_bound_report(prof, spectrum);
    std::optional<qs::EqualityReport> equality;
    if (p.block_rows == 1 && p.block_cols == 1)
        equality = qs::check_equality_condition(p.entry(0, 0), p.r);
    if (o.json_out())
        print(qs::bound_report_json(rep, equality));
    else
        qs::write_bound_report_text(std::cout, rep, equality);
    return 0;
}

int cmd_check_equality(const std::string& input, const std::string& poly_text,
                       std::size_t n_override, const CommonOpts& o) {
    qs::IntPoly w;
    std::size_t n = 0;
    if (!poly_text.empty()) {
        w = qs::IntPoly::from_string(poly_text);
        n = n_override;
        if (n == 0) throw std::invalid_argument("check-equality: --poly requires --n");
    } else {
        if (input.empty())
            throw std::invalid_argument("check-equality: give an input file or --poly/--n");
        const qs::PolyMatrix p = qs::parse_poly_matrix(read_input(input));
        if (p.block_rows != 1 || p.block_cols != 1)
            throw std::invalid_argument(
                "check-equality: input must be a single circulant (1 x 1 polynomial matrix)");
        w = p.entry(0, 0);
        n = p.r;
    }
    const qs::EqualityReport rep = qs::check_equality_condition(w, n);
    if (o.json_out())
        print(qs::equality_report_json(rep));
    else
        qs::write_equality_report_text(std::cout, rep);
    return 0;
}

int report_nested_spectrum(const qs::NestedCirculant& nc, const std::string& subject,
                           const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    if (qs::nested_is_symmetric(nc)) {
        const qs::Spectrum spectrum = qs::nested_spectrum(nc, o.cluster());
        const double ms = elapsed_ms(t0);
        if (o.json_out()) {
            json j = qs::spectrum_report_json(spectrum, subject, nc.size(), ms);
            j["dims"] = nc.dims;
            j["symmetric"] = true;
            print(j);
        } else {
            std::cout << "symmetric: yes\n";
            qs::write_spectrum_report_text(std::cout, spectrum, subject, nc.size(), ms);
        }
        return 0;
    }
    std::vector<qs::Complex> evals = qs::nested_eigenvalues(nc);
    std::sort(evals.begin(), evals.end(), [](const qs::Complex& a, const qs::Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    const double ms = elapsed_ms(t0);
    if (o.json_out()) {
        json values = json::array();
        for (const qs::Complex& v : evals)
            values.push_back({{"re", v.real()}, {"im", v.imag()}});
        print(json{{"method", subject},
                   {"n", nc.size()},
                   {"dims", nc.dims},
                   {"symmetric", false},
                   {"complex_spectrum", std::move(values)},
                   {"time_ms", ms}});
    } else {
        std::cout << "symmetric: no\n";
        std::cout << "n: " << nc.size() << "\n";
        std::cout << "complex spectrum:\n";
        for (const qs::Complex& v : evals)
            std::cout << "  " << qs::format_fixed(v.real()) << (v.imag() < 0 ? " - " : " + ")
                      << qs::format_fixed(std::abs(v.imag())) << "i\n";
        std::cout << "time: " << qs::format_fixed(ms) << " ms\n";
    }
    return 0;
}

int cmd_nested(const std::string& input, bool do_gram, bool do_detect,
               const std::vector<std::size_t>& dims, const CommonOpts& o) {
    if (do_detect) {
        if (dims.empty()) throw std::invalid_argument("nested: --detect requires --dims");
        const qs::RealMatrix m = qs::parse_dense_matrix(read_input(input));
        const qs::NestedCirculant nc = qs::nested_detect(m, dims);
        print(json(nc));
        return 0;
    }
    qs::NestedCirculant nc = qs::parse_nested(read_input(input));
    std::string subject = "nested-evaluation";
    if (do_gram) {
        nc = qs::nested_gram(nc);
        subject = "gram of nested circulant";
    }
    return report_nested_spectrum(nc, subject, o);
}

int cmd_verify(const std::string& input, const std::string& expected_path, std::size_t cap,
               const CommonOpts& o) {
    const qs::PolyMatrix p = qs::parse_poly_matrix(read_input(input));
    const std::size_t n = p.r * p.block_cols;
    if (n > cap)
        throw std::invalid_argument("verify: n = " + std::to_string(n) +
                                    " exceeds the dense-oracle cap " + std::to_string(cap) +
                                    " (raise --cap to override)");
    const qs::Spectrum reduced = qs::gram_spectrum_reduced(p, o.tol, o.cluster());
    const double lambda1 = reduced.values().empty() ? 0.0 : reduced.values().back();
    const double allow = 1e-8 * std::max(1.0, lambda1);

    bool pass = true;
    json checks = json::array();

    {
        const qs::ScalarMatrix h = qs::expand_scalar(p, qs::Layout::CirculantOfBlocks);
        const qs::Spectrum dense = qs::sym_eig(qs::gram(h.matrix), o.tol, o.cluster());
        double max_dev = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            max_dev = std::max(max_dev, std::abs(reduced.values()[i] - dense.values()[i]));
        const bool ok = max_dev <= allow;
        pass = pass && ok;
        checks.push_back({{"check", "reduced_vs_dense"},
                          {"max_deviation", max_dev},
                          {"allowance", allow},
                          {"pass", ok}});

        double fro2 = 0.0;
        for (double v : h.matrix.data) fro2 += v * v;
        const double trace_dev = std::abs(reduced.sum() - fro2);
        const bool trace_ok = trace_dev <= 1e-6 * std::max(1.0, fro2);
        pass = pass && trace_ok;
        checks.push_back({{"check", "trace_identity"},
                          {"max_deviation", trace_dev},
                          {"allowance", 1e-6 * std::max(1.0, fro2)},
                          {"pass", trace_ok}});
    }

    if (!expected_path.empty()) {
        json ej;
        try {
            ej = json::parse(read_input(expected_path));
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("verify: bad expected-spectrum JSON: ") +
                                        e.what());
        }
        if (!ej.contains("values") || !ej.at("values").is_array())
            throw std::invalid_argument("verify: expected-spectrum JSON needs a \"values\" array");
        const auto expected = ej.at("values").get<std::vector<double>>();
        bool ok = expected.size() == reduced.values().size();
        double max_dev = 0.0;
        if (ok)
            for (std::size_t i = 0; i < expected.size(); ++i)
                max_dev = std::max(max_dev, std::abs(reduced.values()[i] - expected[i]));
        ok = ok && max_dev <= allow;
        pass = pass && ok;
        checks.push_back({{"check", "expected_spectrum"},
                          {"max_deviation", max_dev},
                          {"allowance", allow},
                          {"pass", ok}});
    }

    if (o.json_out()) {
        print(json{{"n", n}, {"pass", pass}, {"checks", checks}});
    } else {
        std::cout << "n: " << n << "\n";
        for (const json& c : checks)
            std::cout << "  " << c.at("check").get<std::string>() << ": "
                      << (c.at("pass").get<bool>() ? "pass" : "FAIL") << " (max deviation "
                      << c.at("max_deviation").get<double>() << ")\n";
        std::cout << (pass ? "verification passed" : "verification FAILED") << "\n";
    }
    return pass ? 0 : 2;
}

int cmd_pseudoweight(const std::string& input, const std::string& vector_path,
                     const std::string& layout_name, double cone_tol, const CommonOpts& o) {
    const qs::PolyMatrix p = qs::parse_poly_matrix(read_input(input));
    const qs::Layout layout = layout_name == "circulant-of-blocks"
                                  ? qs::Layout::CirculantOfBlocks
                                  : qs::Layout::BlockOfCirculants;
    const qs::ScalarMatrix h = qs::expand_scalar(p, layout);
    const std::vector<double> omega = qs::parse_real_vector(read_input(vector_path));
    const qs::ConeCheck cone = qs::cone_membership(h.matrix, omega, cone_tol);
    const double pw = qs::pseudo_weight(omega);
    if (o.json_out()) {
        json j = qs::cone_check_json(cone);
        print(json{{"n", h.matrix.cols}, {"pseudo_weight", pw}, {"cone", std::move(j)}});
    } else {
        std::cout << "n: " << h.matrix.cols << "\n";
        std::cout << "pseudo-weight: " << qs::format_fixed(pw) << "\n";
        std::cout << "fundamental cone member: " << (cone.member ? "yes" : "no") << "\n";
        if (cone.violation) {
            std::cout << "  first violation: "
                      << (cone.violation->kind == qs::ConeViolation::Kind::Nonnegativity
                              ? "negative entry"
                              : "check-row domination")
                      << " at variable " << cone.violation->col;
            if (cone.violation->row != SIZE_MAX)
                std::cout << " (check row " << cone.violation->row << ")";
            std::cout << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue spectra, pseudo-weight and distance bounds for quasi-cyclic "
                 "parity-check matrices"};
    app.set_version_flag("--version", "qcspectra 0.1.0");
    app.require_subcommand(1);
    std::function<int()> action;

    // spectrum
    std::string sp_input, sp_method = "auto";
    CommonOpts sp_opts;
    auto* sp = app.add_subcommand(
        "spectrum", "Gram spectrum of a polynomial parity-check matrix, or the spectrum of a "
                    "nested circulant given as JSON");
    sp->add_option("input", sp_input,
                   "polynomial matrix file (text or JSON) or nested-circulant JSON; '-' for "
                   "stdin")
        ->required();
    sp->add_option("--method", sp_method, "reduced (per root of unity) or dense oracle")
        ->check(CLI::IsMember({"auto", "reduced", "dense"}))
        ->envname("QCSPECTRA_METHOD");
    add_format_opt(sp, sp_opts);
    add_tol_opts(sp, sp_opts);
    sp->callback([&] { action = [&] { return cmd_spectrum(sp_input, sp_method, sp_opts); }; });

    // bound
    std::string bd_input;
    CommonOpts bd_opts;
    auto* bd = app.add_subcommand("bound", "pseudo-weight and min-distance eigenvalue bounds");
    bd->add_option("input", bd_input, "matrix file (text or JSON; '-' for stdin)")->required();
    add_format_opt(bd, bd_opts);
    add_tol_opts(bd, bd_opts);
    bd->callback([&] { action = [&] { return cmd_bound(bd_input, bd_opts); }; });

    // check-equality
    std::string eq_input, eq_poly;
    std::size_t eq_n = 0;
    CommonOpts eq_opts;
    auto* eq = app.add_subcommand("check-equality",
                                  "exact two-eigenvalue test for a circulant row polynomial");
    auto* eq_in = eq->add_option("input", eq_input, "single-circulant matrix file");
    auto* eq_po = eq->add_option("--poly", eq_poly, "row polynomial, e.g. '1 + x + x^3'");
    eq->add_option("--n", eq_n, "circulant size (with --poly)");
    eq_po->excludes(eq_in);
    add_format_opt(eq, eq_opts);
    eq->callback(
        [&] { action = [&] { return cmd_check_equality(eq_input, eq_poly, eq_n, eq_opts); }; });

    // nested
    std::string ns_input;
    bool ns_gram = false, ns_detect = false;
    std::vector<std::size_t> ns_dims;
    CommonOpts ns_opts;
    auto* ns = app.add_subcommand("nested", "spectra of nested circulants");
    ns->add_option("input", ns_input, "nested-circulant JSON (or dense matrix with --detect)")
        ->required();
    ns->add_flag("--gram", ns_gram, "analyze M^T * M instead of M");
    ns->add_flag("--detect", ns_detect, "read a dense matrix and recover the nested form");
    ns->add_option("--dims", ns_dims, "level sizes for --detect, e.g. 2,2,2")
        ->delimiter(',');
    add_format_opt(ns, ns_opts);
    add_tol_opts(ns, ns_opts);
    ns->callback([&] {
        action = [&] { return cmd_nested(ns_input, ns_gram, ns_detect, ns_dims, ns_opts); };
    });

    // verify
    std::string vf_input, vf_expected;
    std::size_t vf_cap = 512;
    CommonOpts vf_opts;
    auto* vf = app.add_subcommand(
        "verify", "cross-check the reduced spectrum against the dense oracle");
    vf->add_option("input", vf_input, "matrix file (text or JSON; '-' for stdin)")->required();
    vf->add_option("--expected", vf_expected, "JSON file with a stored \"values\" array");
    vf->add_option("--cap", vf_cap, "largest n for which the dense oracle runs")
        ->envname("QCSPECTRA_CAP");
    add_format_opt(vf, vf_opts);
    add_tol_opts(vf, vf_opts);
    vf->callback(
        [&] { action = [&] { return cmd_verify(vf_input, vf_expected, vf_cap, vf_opts); }; });

    // pseudoweight
    std::string pw_input, pw_vector, pw_layout = "block-of-circulants";
    double pw_cone_tol = 1e-9;
    CommonOpts pw_opts;
    auto* pw = app.add_subcommand("pseudoweight",
                                  "pseudo-weight and fundamental-cone membership of a vector");
    pw->add_option("input", pw_input, "matrix file (text or JSON)")->required();
    pw->add_option("vector", pw_vector, "whitespace-separated vector file")->required();
    pw->add_option("--layout", pw_layout, "scalar expansion the vector indexes")
        ->check(CLI::IsMember({"block-of-circulants", "circulant-of-blocks"}));
    pw->add_option("--cone-tol", pw_cone_tol, "slack for the cone inequalities");
    add_format_opt(pw, pw_opts);
    pw->callback([&] {
        action = [&] {
            return cmd_pseudoweight(pw_input, pw_vector, pw_layout, pw_cone_tol, pw_opts);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        return action ? action() : 0;
    } catch (const qs::InternalInconsistencyError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const qs::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
