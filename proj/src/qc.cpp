#include "qcspectra/qc.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

namespace qcspectra {

namespace {

constexpr std::size_t kMaxCirculantSize = std::size_t{1} << 24;

struct Token {
    enum class Kind { Ident, Int, Sym, End };
    Kind kind = Kind::End;
    std::string text;   // for Ident
    BigInt value;       // for Int
    char sym = '\0';    // for Sym
    std::size_t line = 1;
    std::size_t col = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : s_(text) {}

    const Token& peek() {
        if (!have_) {
            tok_ = lex();
            have_ = true;
        }
        return tok_;
    }

    Token next() {
        const Token& t = peek();
        have_ = false;
        return t;
    }

  private:
    std::string_view s_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token tok_;
    bool have_ = false;

    void advance() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    Token lex() {
        while (i_ < s_.size()) {
            const char ch = s_[i_];
            if (ch == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
                continue;
            }
            break;
        }
        Token t;
        t.line = line_;
        t.col = col_;
        if (i_ >= s_.size()) {
            t.kind = Token::Kind::End;
            return t;
        }
        const char ch = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string digits;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                digits += s_[i_];
                advance();
            }
            t.kind = Token::Kind::Int;
            t.value = BigInt(digits);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::string ident;
            while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) {
                ident += s_[i_];
                advance();
            }
            t.kind = Token::Kind::Ident;
            t.text = std::move(ident);
            return t;
        }
        static constexpr std::string_view kSymbols = "=[],;+-*^";
        if (kSymbols.find(ch) != std::string_view::npos) {
            t.kind = Token::Kind::Sym;
            t.sym = ch;
            advance();
            return t;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", t.line, t.col);
    }
};

bool is_sym(const Token& t, char c) { return t.kind == Token::Kind::Sym && t.sym == c; }

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.col);
}

void expect_sym(Lexer& lx, char c) {
    Token t = lx.next();
    if (!is_sym(t, c)) fail(t, std::string("expected '") + c + "'");
}

std::size_t reduce_exponent(const Token& tok, const BigInt& e, std::size_t r, bool reduce) {
    if (e < r) return e.convert_to<std::size_t>();
    if (!reduce)
        fail(tok, "exponent " + e.str() + " exceeds r-1 = " + std::to_string(r - 1) +
                      " (set reduce = true to fold by x^r - 1)");
    return BigInt(e % r).convert_to<std::size_t>();
}

// One polynomial entry, up to (but not consuming) ',', ';' or ']'.
IntPoly parse_entry(Lexer& lx, std::size_t r, bool reduce) {
    std::vector<BigInt> coeffs(r);
    const Token start = lx.peek();
    bool any = false;
    int sign = 1;
    bool expect_sign = false;
    for (;;) {
        const Token& ahead = lx.peek();
        if (is_sym(ahead, ',') || is_sym(ahead, ';') || is_sym(ahead, ']') ||
            ahead.kind == Token::Kind::End) {
            if (!any) fail(ahead, "empty polynomial entry");
            if (!expect_sign) fail(ahead, "dangling sign in polynomial entry");
            break;
        }
        if (expect_sign) {
            Token t = lx.next();
            if (is_sym(t, '+'))
                sign = 1;
            else if (is_sym(t, '-'))
                sign = -1;
            else
                fail(t, "expected '+', '-', ',', ';' or ']'");
            expect_sign = false;
            continue;
        }
        Token t = lx.next();
        if (is_sym(t, '+') || is_sym(t, '-')) {
            if (any) fail(t, "unexpected sign");
            sign = is_sym(t, '-') ? -1 : 1;
            t = lx.next();
        }

        BigInt coefficient = 1;
        bool have_var = false;
        std::size_t exponent = 0;
        if (t.kind == Token::Kind::Int) {
            coefficient = t.value;
            if (is_sym(lx.peek(), '*')) {
                lx.next();
                Token v = lx.next();
                if (v.kind != Token::Kind::Ident || (v.text != "x" && v.text != "X"))
                    fail(v, "expected 'x' after '*'");
                have_var = true;
            }
        } else if (t.kind == Token::Kind::Ident && (t.text == "x" || t.text == "X")) {
            have_var = true;
        } else {
            fail(t, "expected a polynomial term");
        }
        if (have_var) {
            exponent = 1;
            if (is_sym(lx.peek(), '^')) {
                lx.next();
                Token e = lx.next();
                if (e.kind != Token::Kind::Int) fail(e, "expected integer exponent after '^'");
                exponent = reduce_exponent(e, e.value, r, reduce);
            }
        }
        coeffs[exponent] += sign * coefficient;
        any = true;
        sign = 1;
        expect_sign = true;
    }
    for (std::size_t e = 0; e < r; ++e)
        if (coeffs[e] < 0)
            fail(start, "entry has a negative coefficient (" + coeffs[e].str() + " at x^" +
                            std::to_string(e) + ")");
    return IntPoly(std::move(coeffs));
}

PolyMatrix parse_qc_text(std::string_view text) {
    Lexer lx(text);
    std::optional<std::size_t> r;
    bool reduce = false;

    // Header assignments, then P = [ ... ].
    for (;;) {
        Token t = lx.next();
        if (t.kind == Token::Kind::End) fail(t, "expected 'P = [...]'");
        if (t.kind != Token::Kind::Ident) fail(t, "expected an identifier");
        if (t.text == "P") {
            expect_sym(lx, '=');
            break;
        }
        expect_sym(lx, '=');
        if (t.text == "r") {
            Token v = lx.next();
            if (v.kind != Token::Kind::Int) fail(v, "expected an integer value for r");
            if (v.value < 1) fail(v, "r must be positive");
            if (v.value > kMaxCirculantSize) fail(v, "r is too large");
            r = v.value.convert_to<std::size_t>();
        } else if (t.text == "reduce") {
            Token v = lx.next();
            if (v.kind == Token::Kind::Ident && v.text == "true")
                reduce = true;
            else if (v.kind == Token::Kind::Ident && v.text == "false")
                reduce = false;
            else
                fail(v, "expected 'true' or 'false' for reduce");
        } else {
            fail(t, "unknown header key '" + t.text + "'");
        }
    }
    {
        Token t = lx.next();
        if (!is_sym(t, '[')) fail(t, "expected '[' after 'P ='");
        if (!r) fail(t, "r must be set before P");
    }

    std::vector<std::vector<IntPoly>> rows(1);
    for (;;) {
        rows.back().push_back(parse_entry(lx, *r, reduce));
        Token t = lx.next();
        if (is_sym(t, ',')) continue;
        if (is_sym(t, ';')) {
            if (is_sym(lx.peek(), ']')) {  // allow a trailing ';' before ']'
                lx.next();
                break;
            }
            rows.emplace_back();
            continue;
        }
        if (is_sym(t, ']')) break;
        fail(t, "expected ',', ';' or ']'");
    }
    {
        Token t = lx.next();
        if (t.kind != Token::Kind::End) fail(t, "unexpected content after ']'");
    }

    const std::size_t cols = rows[0].size();
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != cols)
            throw ParseError("row " + std::to_string(i + 1) + " has " +
                                 std::to_string(rows[i].size()) + " entries, expected " +
                                 std::to_string(cols),
                             1, 1);

    std::vector<IntPoly> entries;
    entries.reserve(rows.size() * cols);
    for (auto& row : rows)
        for (auto& e : row) entries.push_back(std::move(e));
    return PolyMatrix(rows.size(), cols, *r, std::move(entries));
}

std::pair<std::size_t, std::size_t> line_col_of_offset(std::string_view text,
                                                       std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

PolyMatrix parse_qc_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(e.what(), line, col);
    }
    try {
        return j.get<PolyMatrix>();
    } catch (const ParseError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), 1, 1);
    } catch (const std::invalid_argument& e) {
        // Semantic validation problems carry no position; report the document.
        throw ParseError(e.what(), 1, 1);
    }
}

}  // namespace

PolyMatrix::PolyMatrix(std::size_t block_rows_, std::size_t block_cols_, std::size_t r_,
                       std::vector<IntPoly> entries_)
    : block_rows(block_rows_), block_cols(block_cols_), r(r_), entries(std::move(entries_)) {
    if (block_rows == 0 || block_cols == 0)
        throw std::invalid_argument("PolyMatrix: shape must be positive");
    if (r == 0) throw std::invalid_argument("PolyMatrix: circulant size r must be positive");
    if (entries.size() != block_rows * block_cols)
        throw std::invalid_argument("PolyMatrix: entry count does not match the shape");
    for (std::size_t i = 0; i < block_rows; ++i)
        for (std::size_t j = 0; j < block_cols; ++j)
            if (auto d = entry(i, j).degree(); d && *d >= r)
                throw std::invalid_argument(
                    "PolyMatrix: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                    ") has degree " + std::to_string(*d) + ", expected below r = " +
                    std::to_string(r));
}

PolyMatrix parse_poly_matrix(std::string_view text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{') return parse_qc_json(text);
        break;
    }
    return parse_qc_text(text);
}

void to_json(nlohmann::json& j, const PolyMatrix& p) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < p.block_rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t jj = 0; jj < p.block_cols; ++jj) {
            nlohmann::json coeffs = nlohmann::json::array();
            for (const BigInt& c : p.entry(i, jj).coeffs()) {
                if (c >= std::numeric_limits<std::int64_t>::min() &&
                    c <= std::numeric_limits<std::int64_t>::max())
                    coeffs.push_back(c.convert_to<std::int64_t>());
                else
                    coeffs.push_back(c.str());
            }
            row.push_back(std::move(coeffs));
        }
        rows.push_back(std::move(row));
    }
    j = nlohmann::json{{"r", p.r}, {"rows", std::move(rows)}};
}

void from_json(const nlohmann::json& j, PolyMatrix& p) {
    if (!j.is_object() || !j.contains("r") || !j.contains("rows"))
        throw std::invalid_argument("polynomial matrix JSON needs fields \"r\" and \"rows\"");
    const auto r_raw = j.at("r");
    if (!r_raw.is_number_integer() || r_raw.get<std::int64_t>() < 1)
        throw std::invalid_argument("\"r\" must be a positive integer");
    const auto r = r_raw.get<std::uint64_t>();
    if (r > kMaxCirculantSize) throw std::invalid_argument("\"r\" is too large");
    const bool reduce = j.value("reduce", false);

    const nlohmann::json& rows = j.at("rows");
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument("\"rows\" must be a nonempty array");
    std::vector<IntPoly> entries;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const nlohmann::json& row = rows[i];
        if (!row.is_array() || row.empty())
            throw std::invalid_argument("row " + std::to_string(i) +
                                        " must be a nonempty array");
        if (i == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                        std::to_string(row.size()) + " entries, expected " +
                                        std::to_string(cols));
        for (const nlohmann::json& entry : row) {
            if (!entry.is_array())
                throw std::invalid_argument("each entry must be an array of coefficients");
            std::vector<BigInt> coeffs(static_cast<std::size_t>(r));
            for (std::size_t e = 0; e < entry.size(); ++e) {
                BigInt c;
                if (entry[e].is_number_integer())
                    c = entry[e].get<std::int64_t>();
                else if (entry[e].is_string())
                    c = BigInt(entry[e].get<std::string>());
                else
                    throw std::invalid_argument("coefficients must be integers or strings");
                if (c < 0)
                    throw std::invalid_argument("entry has a negative coefficient (" + c.str() +
                                                ")");
                if (e >= r && !reduce && c != 0)
                    throw std::invalid_argument(
                        "coefficient at exponent " + std::to_string(e) +
                        " exceeds r-1 (set \"reduce\": true to fold by x^r - 1)");
                coeffs[e % r] += c;
            }
            entries.emplace_back(std::move(coeffs));
        }
    }
    p = PolyMatrix(rows.size(), cols, static_cast<std::size_t>(r), std::move(entries));
}

std::string to_qc_text(const PolyMatrix& p) {
    std::ostringstream out;
    out << "r = " << p.r << "\n";
    out << "P = [\n";
    for (std::size_t i = 0; i < p.block_rows; ++i) {
        out << "  ";
        for (std::size_t j = 0; j < p.block_cols; ++j) {
            out << p.entry(i, j).to_string();
            if (j + 1 < p.block_cols) out << ", ";
        }
        if (i + 1 < p.block_rows) out << ";";
        out << "\n";
    }
    out << "]\n";
    return out.str();
}

ScalarMatrix expand_scalar(const PolyMatrix& p, Layout layout) {
    const std::size_t J = p.block_rows, L = p.block_cols, r = p.r;
    ScalarMatrix out;
    out.layout = layout;
    out.block_rows = J;
    out.block_cols = L;
    out.r = r;
    out.matrix = RealMatrix(J * r, L * r);
    for (std::size_t i = 0; i < J; ++i) {
        for (std::size_t j = 0; j < L; ++j) {
            const IntPoly& poly = p.entry(i, j);
            for (std::size_t a = 0; a < r; ++a) {
                for (std::size_t b = 0; b < r; ++b) {
                    const BigInt& c = poly.coeff((a + r - b) % r);
                    if (c == 0) continue;
                    const double v = c.convert_to<double>();
                    if (layout == Layout::BlockOfCirculants)
                        out.matrix.at(i * r + a, j * r + b) = v;
                    else
                        out.matrix.at(a * J + i, b * L + j) = v;
                }
            }
        }
    }
    return out;
}

CodeProfile profile(const ScalarMatrix& hs) {
    const RealMatrix& m = hs.matrix;
    CodeProfile pr;
    pr.n = m.cols;
    pr.col_weights.assign(m.cols, 0);
    pr.row_weights.assign(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            const double v = m.at(i, j);
            if (v == 0.0) continue;
            if (v != 1.0)
                throw std::invalid_argument("profile: matrix entries must be 0 or 1 (found " +
                                            std::to_string(v) + ")");
            ++pr.col_weights[j];
            ++pr.row_weights[i];
        }
    }
    const bool cols_uniform =
        std::all_of(pr.col_weights.begin(), pr.col_weights.end(),
                    [&](std::size_t w) { return w == pr.col_weights[0]; });
    const bool rows_uniform =
        std::all_of(pr.row_weights.begin(), pr.row_weights.end(),
                    [&](std::size_t w) { return w == pr.row_weights[0]; });
    if (cols_uniform) pr.c = pr.col_weights[0];
    if (rows_uniform) pr.d = pr.row_weights[0];
    pr.regular = cols_uniform && rows_uniform && pr.c > 0 && pr.d > 0;
    pr.has_zero_col = std::find(pr.col_weights.begin(), pr.col_weights.end(), std::size_t{0}) !=
                      pr.col_weights.end();
    pr.has_zero_row = std::find(pr.row_weights.begin(), pr.row_weights.end(), std::size_t{0}) !=
                      pr.row_weights.end();
    return pr;
}

Spectrum gram_spectrum_reduced(const PolyMatrix& p, double tol,
                               std::optional<double> cluster_tol) {
    const std::size_t J = p.block_rows, L = p.block_cols, r = p.r;
    std::vector<double> all;
    all.reserve(r * L);
    for (std::size_t j = 0; j < r; ++j) {
        ComplexMatrix e(J, L);
        for (std::size_t i = 0; i < J; ++i)
            for (std::size_t l = 0; l < L; ++l)
                e.at(i, l) = eval_at_root(p.entry(i, l), r, static_cast<long long>(j));
        // M = P(x)^H P(x): Hermitian by construction up to rounding.
        ComplexMatrix m(L, L);
        for (std::size_t a = 0; a < L; ++a) {
            for (std::size_t b = a; b < L; ++b) {
                Complex s(0.0, 0.0);
                for (std::size_t i = 0; i < J; ++i) s += std::conj(e.at(i, a)) * e.at(i, b);
                m.at(a, b) = s;
                m.at(b, a) = std::conj(s);
            }
        }
        for (double v : herm_eigenvalues(m, tol)) all.push_back(v);
    }
    return Spectrum::from_values(std::move(all), cluster_tol);
}

Spectrum gram_spectrum_dense(const PolyMatrix& p, double tol,
                             std::optional<double> cluster_tol) {
    const ScalarMatrix h = expand_scalar(p, Layout::CirculantOfBlocks);
    return sym_eig(gram(h.matrix), tol, cluster_tol);
}

Spectrum circulant_spectrum(const IntPoly& w, std::size_t n,
                            std::optional<double> cluster_tol) {
    if (n == 0) throw std::invalid_argument("circulant_spectrum: n must be positive");
    if (auto d = w.degree(); d && *d >= n)
        throw std::invalid_argument("circulant_spectrum: degree of w must be below n");
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j)
        values[j] = std::norm(eval_at_root(w, n, static_cast<long long>(j)));
    return Spectrum::from_values(std::move(values), cluster_tol);
}

}  // namespace qcspectra
