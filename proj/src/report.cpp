#include "qcspectra/report.hpp"

#include <cstdio>
#include <limits>
#include <ostream>

namespace qcspectra {

namespace {

nlohmann::json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

nlohmann::json spectrum_to_json(const Spectrum& spectrum) {
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& c : spectrum.clusters())
        clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
    return nlohmann::json{{"values", spectrum.values()},
                          {"clusters", std::move(clusters)},
                          {"cluster_tol", spectrum.cluster_tol()}};
}

nlohmann::json spectrum_report_json(const Spectrum& spectrum, const std::string& method,
                                    std::size_t n, double elapsed_ms) {
    nlohmann::json j = spectrum_to_json(spectrum);
    j["method"] = method;
    j["n"] = n;
    j["time_ms"] = elapsed_ms;
    return j;
}

void write_spectrum_report_text(std::ostream& out, const Spectrum& spectrum,
                                const std::string& method, std::size_t n, double elapsed_ms) {
    out << "method: " << method << "\n";
    out << "n: " << n << "\n";
    out << "clusters (value x multiplicity, cluster tol " << spectrum.cluster_tol() << "):\n";
    const auto& clusters = spectrum.clusters();
    for (auto it = clusters.rbegin(); it != clusters.rend(); ++it)
        out << "  " << format_fixed(it->value) << " x " << it->multiplicity << "\n";
    out << "time: " << format_fixed(elapsed_ms) << " ms\n";
}

nlohmann::json equality_report_json(const EqualityReport& rep) {
    nlohmann::json j;
    j["holds"] = rep.holds;
    j["d"] = rep.d;
    j["lambda1"] = bigint_to_json(rep.lambda1);
    if (rep.mu_defined) {
        j["mu"] = bigint_to_json(rep.mu);
        j["lambda2"] = bigint_to_json(rep.lambda2);
    } else {
        j["mu"] = nullptr;
        j["lambda2"] = nullptr;
    }
    j["r_poly"] = rep.holds ? nlohmann::json(rep.r_poly.to_string()) : nlohmann::json(nullptr);
    j["reason"] = rep.holds ? nlohmann::json(nullptr) : nlohmann::json(rep.reason);
    j["residual"] =
        rep.residual.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(rep.residual.to_string());
    nlohmann::json acf = nlohmann::json::array();
    for (const BigInt& v : rep.autocorrelation) acf.push_back(bigint_to_json(v));
    j["autocorrelation"] = std::move(acf);
    return j;
}

void write_equality_report_text(std::ostream& out, const EqualityReport& rep) {
    out << "weight d: " << rep.d << "\n";
    out << "lambda1 (exact): " << rep.lambda1.str() << "\n";
    out << "autocorrelation:";
    for (const BigInt& v : rep.autocorrelation) out << " " << v.str();
    out << "\n";
    if (rep.holds) {
        out << "equality condition: holds\n";
        out << "mu: " << rep.mu.str() << "\n";
        out << "lambda2 (exact): " << rep.lambda2.str() << "\n";
        out << "r(x): " << rep.r_poly.to_string() << "\n";
    } else {
        out << "equality condition: fails\n";
        out << "reason: " << rep.reason << "\n";
        if (rep.mu_defined)
            out << "mu: " << rep.mu.str() << "\nlambda2 (exact): " << rep.lambda2.str() << "\n";
        if (!rep.residual.is_zero()) out << "residual: " << rep.residual.to_string() << "\n";
    }
}

nlohmann::json bound_report_json(const BoundReport& rep,
                                 const std::optional<EqualityReport>& equality) {
    nlohmann::json j{{"n", rep.n},
                     {"c", rep.c},
                     {"d", rep.d},
                     {"lambda1", rep.lambda1},
                     {"lambda1_mult", rep.lambda1_multiplicity},
                     {"lambda2", rep.lambda2},
                     {"pw_bound", rep.pw_bound},
                     {"dmin_bound", rep.dmin_bound},
                     {"informative", rep.informative},
                     {"necessary_condition", rep.necessary_condition}};
    if (equality) {
        const nlohmann::json eq = equality_report_json(*equality);
        j["equality"] = nlohmann::json{{"holds", eq.at("holds")},
                                       {"mu", eq.at("mu")},
                                       {"lambda2", eq.at("lambda2")},
                                       {"r_poly", eq.at("r_poly")}};
    } else {
        j["equality"] = nullptr;
    }
    return j;
}

void write_bound_report_text(std::ostream& out, const BoundReport& rep,
                             const std::optional<EqualityReport>& equality) {
    out << "n: " << rep.n << "  c: " << rep.c << "  d: " << rep.d << "\n";
    out << "lambda1: " << format_fixed(rep.lambda1) << " (multiplicity "
        << rep.lambda1_multiplicity << ")\n";
    out << "lambda2: " << format_fixed(rep.lambda2) << "\n";
    out << "pseudo-weight bound: " << format_fixed(rep.pw_bound)
        << " (informative: " << yes_no(rep.informative) << ")\n";
    out << "min-distance bound:  " << format_fixed(rep.dmin_bound) << "\n";
    out << "two-cluster condition (multiplicities 1 and n-1): "
        << yes_no(rep.necessary_condition) << "\n";
    if (equality) {
        out << "exact equality condition: " << (equality->holds ? "holds" : "fails");
        if (equality->holds)
            out << "  mu = " << equality->mu.str() << "  lambda2 = " << equality->lambda2.str()
                << "  r(x) = " << equality->r_poly.to_string();
        out << "\n";
        if (!equality->holds) out << "  reason: " << equality->reason << "\n";
    }
}

nlohmann::json cone_check_json(const ConeCheck& check) {
    nlohmann::json j;
    j["member"] = check.member;
    if (check.violation) {
        nlohmann::json v;
        v["kind"] = check.violation->kind == ConeViolation::Kind::Nonnegativity
                        ? "nonnegativity"
                        : "check_domination";
        if (check.violation->row == SIZE_MAX)
            v["row"] = nullptr;
        else
            v["row"] = check.violation->row;
        v["col"] = check.violation->col;
        j["violation"] = std::move(v);
    } else {
        j["violation"] = nullptr;
    }
    return j;
}

}  // namespace qcspectra
