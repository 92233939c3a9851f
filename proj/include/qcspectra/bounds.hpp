#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcspectra/int_poly.hpp"
#include "qcspectra/linalg.hpp"
#include "qcspectra/qc.hpp"

namespace qcspectra {

// Largest and second-largest eigenvalue clusters of a Gram spectrum.
struct SpectrumSummary {
    double lambda1 = 0.0;
    std::size_t lambda1_multiplicity = 0;
    double lambda2 = 0.0;
    double gap = 0.0;                 // lambda1 - lambda2
    std::size_t distinct_count = 0;   // number of clusters
};

// Requires at least two clusters; otherwise DegenerateSpectrumError.
SpectrumSummary summarize(const Spectrum& spectrum);

// Eigenvalue-based lower bound on the AWGN-channel pseudo-weight of a code
// with block length n and uniform column weight c:
//   n * (2c - lambda2) / (lambda1 - lambda2).
// The bound is informative only when positive.
double awgnc_pw_bound(std::size_t n, std::size_t c, const SpectrumSummary& summary);

// Eigenvalue-based lower bound on minimum distance for a (c, d)-regular
// code: n * (2/d) * (2c + d - 2 - lambda2) / (lambda1 - lambda2).
double tanner_dmin_bound(std::size_t n, std::size_t c, std::size_t d,
                         const SpectrumSummary& summary);

// The bounds meet the true values only if the Gram spectrum has exactly two
// distinct eigenvalues with multiplicities 1 and n-1.
bool check_necessary_condition(const Spectrum& spectrum, std::size_t n);

// Exact test of whether a length-n cyclic code with 0/1 generator row w(x)
// of weight d attains the two-eigenvalue structure: equivalent to the
// off-peak cyclic autocorrelation of w being a constant mu, in which case
// lambda1 = d^2 with multiplicity 1 and lambda2 = d - mu with multiplicity
// n-1, as witnessed by the exact polynomial identity
//   w(x) * reciprocal(w)(x) - lambda2 * x^k = (1 + x + ... + x^(n-1)) * r(x)
// with degree(r) = 2k - n + 1 (k = degree of w after dividing out any
// trailing power of x).
struct EqualityReport {
    bool holds = false;
    std::size_t d = 0;               // weight of w
    BigInt lambda1 = 0;              // d^2
    bool mu_defined = false;         // off-peak autocorrelation is constant
    BigInt mu = 0;                   // off-peak autocorrelation value (when constant)
    BigInt lambda2 = 0;              // d - mu (when mu_defined)
    IntPoly r_poly;                  // quotient r(x) (when the identity holds)
    IntPoly residual;                // witness polynomial when the identity fails
    std::string reason;              // human-readable failure reason
    std::vector<BigInt> autocorrelation;
};

EqualityReport check_equality_condition(const IntPoly& w, std::size_t n);

// Everything the bound report needs for one code.
struct BoundReport {
    std::size_t n = 0;
    std::size_t c = 0;
    std::size_t d = 0;
    double lambda1 = 0.0;
    std::size_t lambda1_multiplicity = 0;
    double lambda2 = 0.0;
    double pw_bound = 0.0;
    double dmin_bound = 0.0;
    bool informative = false;  // pw_bound > 0
    bool necessary_condition = false;
};

BoundReport make_bound_report(const CodeProfile& profile, const Spectrum& spectrum);

// Where a fundamental-cone membership test failed, if it did.
struct ConeViolation {
    enum class Kind { Nonnegativity, CheckDomination };
    Kind kind = Kind::Nonnegativity;
    std::size_t row = SIZE_MAX;  // check row; unused for nonnegativity violations
    std::size_t col = 0;         // variable index
};

struct ConeCheck {
    bool member = false;
    std::optional<ConeViolation> violation;
};

// Membership of omega in the fundamental cone of the 0/1 matrix H: every
// entry nonnegative, and for every check row j and every variable i in its
// support, omega[i] must not exceed the sum of the other supported entries.
// Comparisons use the slack `tol`. Reports the first violated constraint.
ConeCheck cone_membership(const RealMatrix& h, const std::vector<double>& omega,
                          double tol = 1e-9);

// (sum |omega_i|)^2 / (sum omega_i^2); the zero vector is rejected.
double pseudo_weight(const std::vector<double>& omega);

// Whitespace-separated list of numbers; '#' starts a comment.
std::vector<double> parse_real_vector(std::string_view text);

}  // namespace qcspectra
