#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcspectra/errors.hpp"

namespace qcspectra {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

// Polynomial over the integers with exact coefficients; index = exponent.
// Trailing zero coefficients are always trimmed, so equal polynomials have
// identical coefficient sequences. The zero polynomial stores no coefficients
// and has no degree.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    IntPoly(std::initializer_list<int> coeffs);

    static IntPoly monomial(std::size_t exponent, const BigInt& coefficient = 1);
    // 1 + x + ... + x^(n-1)
    static IntPoly all_ones(std::size_t n);
    // Accepts sums of terms "c*x^e", "x^e", "x", and integer constants,
    // joined by '+' or '-'; 'X' is accepted for 'x'. Throws ParseError with
    // the offending position (line is always 1 for a flat string).
    static IntPoly from_string(std::string_view text);

    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    // Coefficient of x^exponent; zero for exponents past the stored degree.
    const BigInt& coeff(std::size_t exponent) const noexcept;
    std::optional<std::size_t> degree() const noexcept;
    // Lowest exponent with a nonzero coefficient.
    std::optional<std::size_t> trailing_degree() const noexcept;
    bool is_zero() const noexcept { return coeffs_.empty(); }
    // True when every coefficient is 0 or 1.
    bool is_binary() const noexcept;
    std::size_t support_size() const noexcept;
    // Value at x = 1.
    BigInt coeff_sum() const;

    bool operator==(const IntPoly&) const = default;

    IntPoly operator+(const IntPoly& rhs) const;
    IntPoly operator-(const IntPoly& rhs) const;
    IntPoly operator*(const IntPoly& rhs) const;
    // Quotient by x^s; every exponent below s must have a zero coefficient.
    IntPoly shifted_down(std::size_t s) const;

    std::string to_string() const;

  private:
    std::vector<BigInt> coeffs_;

    void trim();
};

// Division did not terminate with a zero remainder; carries the remainder at
// the point the division stopped.
class NonDivisibleError : public std::invalid_argument {
  public:
    NonDivisibleError(const std::string& what, IntPoly remainder);
    const IntPoly& remainder() const noexcept { return remainder_; }

  private:
    IntPoly remainder_;
};

struct DivisionResult {
    IntPoly quotient;
    IntPoly remainder;
    bool exact = false;
};

// a*b with exponents folded modulo x^n - 1.
IntPoly cyclic_mul(const IntPoly& a, const IntPoly& b, std::size_t n);

// x^k * w(1/x): the coefficient sequence of w reversed into degree k.
// Requires k >= degree(w).
IntPoly reciprocal(const IntPoly& w, std::size_t k);

// Entry t is sum_j w_j * w_((j+t) mod n). Requires degree(w) < n.
std::vector<BigInt> cyclic_autocorrelation(const IntPoly& w, std::size_t n);

// Long division over the integers. Stops early if a quotient coefficient
// would not be an integer; `exact` reports whether the remainder is zero.
DivisionResult divide(const IntPoly& num, const IntPoly& den);

// Quotient of an exact division; throws NonDivisibleError otherwise.
IntPoly exact_divide(const IntPoly& num, const IntPoly& den);

// p evaluated at exp(2*pi*i*j/s). Each power's angle is formed from the
// exponent reduced modulo s, never by repeated complex multiplication.
Complex eval_at_root(const IntPoly& p, std::size_t s, long long j);

}  // namespace qcspectra
