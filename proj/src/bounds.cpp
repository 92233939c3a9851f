#include "qcspectra/bounds.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace qcspectra {

SpectrumSummary summarize(const Spectrum& spectrum) {
    const auto& clusters = spectrum.clusters();
    if (clusters.size() < 2)
        throw DegenerateSpectrumError(
            "spectrum has fewer than two distinct eigenvalue clusters; the second-largest "
            "eigenvalue is undefined");
    SpectrumSummary s;
    s.lambda1 = clusters.back().value;
    s.lambda1_multiplicity = clusters.back().multiplicity;
    s.lambda2 = clusters[clusters.size() - 2].value;
    s.gap = s.lambda1 - s.lambda2;
    s.distinct_count = clusters.size();
    return s;
}

double awgnc_pw_bound(std::size_t n, std::size_t c, const SpectrumSummary& summary) {
    if (n == 0) throw std::invalid_argument("awgnc_pw_bound: n must be positive");
    if (!(summary.lambda1 > summary.lambda2))
        throw std::invalid_argument("awgnc_pw_bound: lambda1 must exceed lambda2");
    return static_cast<double>(n) * (2.0 * static_cast<double>(c) - summary.lambda2) /
           (summary.lambda1 - summary.lambda2);
}

double tanner_dmin_bound(std::size_t n, std::size_t c, std::size_t d,
                         const SpectrumSummary& summary) {
    if (n == 0) throw std::invalid_argument("tanner_dmin_bound: n must be positive");
    if (d == 0) throw std::invalid_argument("tanner_dmin_bound: row weight d must be positive");
    if (!(summary.lambda1 > summary.lambda2))
        throw std::invalid_argument("tanner_dmin_bound: lambda1 must exceed lambda2");
    return static_cast<double>(n) * (2.0 / static_cast<double>(d)) *
           (2.0 * static_cast<double>(c) + static_cast<double>(d) - 2.0 - summary.lambda2) /
           (summary.lambda1 - summary.lambda2);
}

bool check_necessary_condition(const Spectrum& spectrum, std::size_t n) {
    const auto& clusters = spectrum.clusters();
    if (clusters.size() != 2) return false;
    return clusters.back().multiplicity == 1 && clusters.front().multiplicity == n - 1 &&
           spectrum.size() == n;
}

EqualityReport check_equality_condition(const IntPoly& w, std::size_t n) {
    if (n == 0) throw std::invalid_argument("equality check: n must be positive");
    if (w.is_zero()) throw std::invalid_argument("equality check: w must be nonzero");
    if (!w.is_binary())
        throw std::invalid_argument("equality check: w must have 0/1 coefficients");
    if (*w.degree() >= n)
        throw std::invalid_argument("equality check: degree of w must be below n");

    EqualityReport rep;
    rep.autocorrelation = cyclic_autocorrelation(w, n);
    rep.d = w.support_size();
    rep.lambda1 = BigInt(rep.d) * BigInt(rep.d);

    bool constant = true;
    for (std::size_t t = 2; t < n; ++t)
        if (rep.autocorrelation[t] != rep.autocorrelation[1]) {
            constant = false;
            break;
        }
    if (n >= 2 && !constant) {
        rep.holds = false;
        rep.reason = "off-peak autocorrelation is not constant";
        std::vector<BigInt> off(rep.autocorrelation.begin(), rep.autocorrelation.end());
        off[0] = 0;
        rep.residual = IntPoly(std::move(off));
        return rep;
    }
    rep.mu_defined = true;
    rep.mu = n >= 2 ? rep.autocorrelation[1] : 0;
    rep.lambda2 = BigInt(rep.d) - rep.mu;
    if (rep.lambda1 <= rep.lambda2) {
        rep.holds = false;
        rep.reason = "weight-" + std::to_string(rep.d) +
                     " row gives a degenerate spectrum (lambda1 does not exceed lambda2)";
        return rep;
    }

    // Divide out any trailing power of x; cyclic shifts leave the
    // autocorrelation (and the code) unchanged but the degree bookkeeping
    // below needs a nonzero constant term.
    const IntPoly wn = w.shifted_down(*w.trailing_degree());
    const std::size_t k = *wn.degree();
    const IntPoly product = wn * reciprocal(wn, k);
    if (2 * k + 1 < n) {
        rep.holds = false;
        rep.reason = "degree deficiency: 2*degree(w) is below n-1, so w(x)*reciprocal(w)(x) - "
                     "lambda2*x^k cannot be a multiple of 1 + x + ... + x^(n-1)";
        rep.residual = product - IntPoly::monomial(k, rep.lambda2);
        return rep;
    }

    const IntPoly target = product - IntPoly::monomial(k, rep.lambda2);
    DivisionResult div = divide(target, IntPoly::all_ones(n));
    if (!div.exact)
        throw InternalInconsistencyError(
            "equality check: constant off-peak autocorrelation should force divisibility by "
            "1 + x + ... + x^(n-1), but the division left remainder " +
            div.remainder.to_string());
    if (!div.quotient.degree() || *div.quotient.degree() != 2 * k - n + 1)
        throw InternalInconsistencyError(
            "equality check: quotient degree is not 2*degree(w) - n + 1");
    rep.holds = true;
    rep.r_poly = std::move(div.quotient);
    return rep;
}

BoundReport make_bound_report(const CodeProfile& profile, const Spectrum& spectrum) {
    if (!profile.regular)
        throw std::invalid_argument(
            "bound report: code must be (c, d)-regular (uniform column and row weights)");
    const SpectrumSummary s = summarize(spectrum);
    BoundReport rep;
    rep.n = profile.n;
    rep.c = profile.c;
    rep.d = profile.d;
    rep.lambda1 = s.lambda1;
    rep.lambda1_multiplicity = s.lambda1_multiplicity;
    rep.lambda2 = s.lambda2;
    rep.pw_bound = awgnc_pw_bound(profile.n, profile.c, s);
    rep.dmin_bound = tanner_dmin_bound(profile.n, profile.c, profile.d, s);
    rep.informative = rep.pw_bound > 0.0;
    rep.necessary_condition = check_necessary_condition(spectrum, profile.n);
    return rep;
}

ConeCheck cone_membership(const RealMatrix& h, const std::vector<double>& omega, double tol) {
    if (omega.size() != h.cols)
        throw std::invalid_argument("cone_membership: vector length " +
                                    std::to_string(omega.size()) + " does not match " +
                                    std::to_string(h.cols) + " columns");
    if (tol < 0.0) throw std::invalid_argument("cone_membership: tolerance must be nonnegative");
    for (std::size_t i = 0; i < h.rows * h.cols; ++i)
        if (h.data[i] != 0.0 && h.data[i] != 1.0)
            throw std::invalid_argument("cone_membership: matrix entries must be 0 or 1");

    for (std::size_t i = 0; i < omega.size(); ++i)
        if (omega[i] < -tol)
            return {false, ConeViolation{ConeViolation::Kind::Nonnegativity, SIZE_MAX, i}};
    for (std::size_t j = 0; j < h.rows; ++j) {
        double support_sum = 0.0;
        for (std::size_t i = 0; i < h.cols; ++i)
            if (h.at(j, i) != 0.0) support_sum += omega[i];
        for (std::size_t i = 0; i < h.cols; ++i) {
            if (h.at(j, i) == 0.0) continue;
            if (omega[i] > support_sum - omega[i] + tol)
                return {false, ConeViolation{ConeViolation::Kind::CheckDomination, j, i}};
        }
    }
    return {true, std::nullopt};
}

double pseudo_weight(const std::vector<double>& omega) {
    double l1 = 0.0, l2 = 0.0;
    for (double v : omega) {
        if (!std::isfinite(v))
            throw std::invalid_argument("pseudo_weight: vector has non-finite entries");
        l1 += std::abs(v);
        l2 += v * v;
    }
    if (l2 == 0.0)
        throw std::invalid_argument("pseudo_weight: the zero vector has no pseudo-weight");
    return l1 * l1 / l2;
}

std::vector<double> parse_real_vector(std::string_view text) {
    std::vector<double> out;
    std::size_t lineno = 0;
    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        double v = 0.0;
        while (ls >> v) out.push_back(v);
        if (!ls.eof()) {
            std::string bad;
            ls.clear();
            ls >> bad;
            throw ParseError("expected a number, found '" + bad + "'", lineno, 1);
        }
    }
    if (out.empty())
        throw ParseError("vector text holds no numbers", lineno ? lineno : 1, 1);
    return out;
}

}  // namespace qcspectra
