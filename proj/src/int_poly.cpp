#include "qcspectra/int_poly.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace qcspectra {

namespace {

const BigInt kZero = 0;

// Exponents beyond this would only exhaust memory; reject them while parsing.
constexpr std::size_t kMaxParsedExponent = std::size_t{1} << 24;

struct StrCursor {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() const { return i >= s.size(); }
    char peek() const { return s[i]; }
};

BigInt parse_uint(StrCursor& c, const char* what) {
    const std::size_t start = c.i;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.i;
    if (c.i == start) throw ParseError(std::string("expected ") + what, 1, start + 1);
    return BigInt(std::string(c.s.substr(start, c.i - start)));
}

}  // namespace

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<int> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (int c : coeffs) coeffs_.emplace_back(c);
    trim();
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::monomial(std::size_t exponent, const BigInt& coefficient) {
    if (coefficient == 0) return IntPoly{};
    std::vector<BigInt> c(exponent + 1);
    c.back() = coefficient;
    return IntPoly(std::move(c));
}

IntPoly IntPoly::all_ones(std::size_t n) {
    return IntPoly(std::vector<BigInt>(n, BigInt(1)));
}

const BigInt& IntPoly::coeff(std::size_t exponent) const noexcept {
    return exponent < coeffs_.size() ? coeffs_[exponent] : kZero;
}

std::optional<std::size_t> IntPoly::degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

std::optional<std::size_t> IntPoly::trailing_degree() const noexcept {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return i;
    return std::nullopt;
}

bool IntPoly::is_binary() const noexcept {
    for (const BigInt& c : coeffs_)
        if (c != 0 && c != 1) return false;
    return true;
}

std::size_t IntPoly::support_size() const noexcept {
    std::size_t count = 0;
    for (const BigInt& c : coeffs_)
        if (c != 0) ++count;
    return count;
}

BigInt IntPoly::coeff_sum() const {
    BigInt s = 0;
    for (const BigInt& c : coeffs_) s += c;
    return s;
}

IntPoly IntPoly::operator+(const IntPoly& rhs) const {
    std::vector<BigInt> out(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + rhs.coeff(i);
    return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-(const IntPoly& rhs) const {
    std::vector<BigInt> out(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - rhs.coeff(i);
    return IntPoly(std::move(out));
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return IntPoly{};
    std::vector<BigInt> out(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    return IntPoly(std::move(out));
}

IntPoly IntPoly::shifted_down(std::size_t s) const {
    for (std::size_t i = 0; i < s && i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            throw std::invalid_argument("shifted_down: polynomial is not divisible by x^" +
                                        std::to_string(s));
    if (coeffs_.size() <= s) return IntPoly{};
    return IntPoly(std::vector<BigInt>(coeffs_.begin() + static_cast<std::ptrdiff_t>(s),
                                       coeffs_.end()));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t e = 0; e < coeffs_.size(); ++e) {
        const BigInt& c = coeffs_[e];
        if (c == 0) continue;
        const bool negative = c < 0;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        BigInt mag = negative ? BigInt(-c) : c;
        if (e == 0) {
            out += mag.str();
        } else {
            if (mag != 1) out += mag.str() + "*";
            out += "x";
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

IntPoly IntPoly::from_string(std::string_view text) {
    StrCursor c{text};
    c.skip_ws();
    if (c.done()) throw ParseError("empty polynomial", 1, c.i + 1);

    std::map<std::size_t, BigInt> acc;
    bool first = true;
    while (true) {
        c.skip_ws();
        if (c.done()) {
            if (first) throw ParseError("empty polynomial", 1, c.i + 1);
            break;
        }
        int sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            sign = c.peek() == '-' ? -1 : 1;
            ++c.i;
            c.skip_ws();
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", 1, c.i + 1);
        }
        if (c.done()) throw ParseError("dangling sign", 1, c.i + 1);

        BigInt coefficient = 1;
        BigInt exponent = 0;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coefficient = parse_uint(c, "integer");
            c.skip_ws();
            if (!c.done() && c.peek() == '*') {
                ++c.i;
                c.skip_ws();
                if (c.done() || (c.peek() != 'x' && c.peek() != 'X'))
                    throw ParseError("expected 'x' after '*'", 1, c.i + 1);
            }
        }
        if (!c.done() && (c.peek() == 'x' || c.peek() == 'X')) {
            ++c.i;
            c.skip_ws();
            exponent = 1;
            if (!c.done() && c.peek() == '^') {
                ++c.i;
                c.skip_ws();
                exponent = parse_uint(c, "exponent");
            }
        }
        if (exponent > kMaxParsedExponent)
            throw ParseError("exponent too large", 1, c.i);
        acc[exponent.convert_to<std::size_t>()] += sign * coefficient;
        first = false;
        c.skip_ws();
        if (!c.done() && c.peek() != '+' && c.peek() != '-')
            throw ParseError("unexpected character in polynomial", 1, c.i + 1);
    }

    if (acc.empty()) return IntPoly{};
    std::vector<BigInt> coeffs(acc.rbegin()->first + 1);
    for (const auto& [e, v] : acc) coeffs[e] = v;
    return IntPoly(std::move(coeffs));
}

NonDivisibleError::NonDivisibleError(const std::string& what, IntPoly remainder)
    : std::invalid_argument(what), remainder_(std::move(remainder)) {}

IntPoly cyclic_mul(const IntPoly& a, const IntPoly& b, std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclic_mul: modulus length n must be positive");
    std::vector<BigInt> out(n);
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0) continue;
        for (std::size_t j = 0; j < bc.size(); ++j) {
            if (bc[j] == 0) continue;
            out[(i + j) % n] += ac[i] * bc[j];
        }
    }
    return IntPoly(std::move(out));
}

IntPoly reciprocal(const IntPoly& w, std::size_t k) {
    if (auto d = w.degree(); d && *d > k)
        throw std::invalid_argument("reciprocal: k must be at least the degree of w");
    std::vector<BigInt> out(k + 1);
    for (std::size_t i = 0; i <= k; ++i) out[i] = w.coeff(k - i);
    return IntPoly(std::move(out));
}

std::vector<BigInt> cyclic_autocorrelation(const IntPoly& w, std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclic_autocorrelation: n must be positive");
    if (auto d = w.degree(); d && *d >= n)
        throw std::invalid_argument("cyclic_autocorrelation: degree of w must be below n");
    std::vector<BigInt> acf(n);
    for (std::size_t t = 0; t < n; ++t) {
        BigInt s = 0;
        for (std::size_t j = 0; j < n; ++j) s += w.coeff(j) * w.coeff((j + t) % n);
        acf[t] = std::move(s);
    }
    return acf;
}

DivisionResult divide(const IntPoly& num, const IntPoly& den) {
    if (den.is_zero()) throw std::invalid_argument("divide: division by the zero polynomial");
    if (num.is_zero()) return {IntPoly{}, IntPoly{}, true};
    const std::size_t dden = *den.degree();
    if (*num.degree() < dden) return {IntPoly{}, num, false};

    const BigInt& lead = den.coeffs().back();
    std::vector<BigInt> q(*num.degree() - dden + 1);
    IntPoly rem = num;
    while (!rem.is_zero() && *rem.degree() >= dden) {
        const BigInt& top = rem.coeffs().back();
        if (top % lead != 0) break;  // quotient coefficient would not be an integer
        BigInt c = top / lead;
        const std::size_t shift = *rem.degree() - dden;
        q[shift] = c;
        rem = rem - den * IntPoly::monomial(shift, c);
    }
    const bool exact = rem.is_zero();
    return {IntPoly(std::move(q)), std::move(rem), exact};
}

IntPoly exact_divide(const IntPoly& num, const IntPoly& den) {
    DivisionResult d = divide(num, den);
    if (!d.exact)
        throw NonDivisibleError("exact_divide: remainder is nonzero (" +
                                    d.remainder.to_string() + ")",
                                std::move(d.remainder));
    return std::move(d.quotient);
}

Complex eval_at_root(const IntPoly& p, std::size_t s, long long j) {
    if (s == 0) throw std::invalid_argument("eval_at_root: root order s must be positive");
    const auto ss = static_cast<long long>(s);
    const unsigned long long jm = static_cast<unsigned long long>(((j % ss) + ss) % ss);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(s);
    Complex acc(0.0, 0.0);
    const auto& coeffs = p.coeffs();
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
        if (coeffs[e] == 0) continue;
        const unsigned long long k = (jm * (e % s)) % s;
        const double angle = step * static_cast<double>(k);
        acc += coeffs[e].convert_to<double>() * Complex(std::cos(angle), std::sin(angle));
    }
    return acc;
}

}  // namespace qcspectra
