#include "qcspectra/nested.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace qcspectra {

namespace {

constexpr std::size_t kMaxNestedSize = std::size_t{1} << 24;

std::size_t checked_product(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("nested circulant: dimensions must be positive");
        if (n > kMaxNestedSize / d)
            throw std::invalid_argument("nested circulant: total size is too large");
        n *= d;
    }
    return n;
}

// Strides of the mixed-radix representation, dims[0] most significant.
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> strides(dims.size());
    std::size_t s = 1;
    for (std::size_t t = dims.size(); t-- > 0;) {
        strides[t] = s;
        s *= dims[t];
    }
    return strides;
}

// Linear index of the componentwise difference (a_t - b_t) mod dims[t].
std::size_t mixed_radix_diff(std::size_t a, std::size_t b,
                             const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& strides) {
    std::size_t out = 0;
    for (std::size_t t = 0; t < dims.size(); ++t) {
        const std::size_t at = (a / strides[t]) % dims[t];
        const std::size_t bt = (b / strides[t]) % dims[t];
        out += ((at + dims[t] - bt) % dims[t]) * strides[t];
    }
    return out;
}

}  // namespace

NestedCirculant::NestedCirculant(std::vector<std::size_t> dims_, std::vector<double> coeffs_)
    : dims(std::move(dims_)), coeffs(std::move(coeffs_)) {
    if (dims.empty()) throw std::invalid_argument("nested circulant: need at least one level");
    const std::size_t n = checked_product(dims);
    if (coeffs.size() != n)
        throw std::invalid_argument("nested circulant: expected " + std::to_string(n) +
                                    " coefficients, got " + std::to_string(coeffs.size()));
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw std::invalid_argument("nested circulant: coefficients must be finite");
}

std::size_t NestedCirculant::size() const noexcept {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    return n;
}

void to_json(nlohmann::json& j, const NestedCirculant& nc) {
    const std::vector<std::size_t> strides = strides_of(nc.dims);
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::size_t a = 0; a < nc.coeffs.size(); ++a) {
        if (nc.coeffs[a] == 0.0) continue;
        nlohmann::json index = nlohmann::json::array();
        for (std::size_t t = 0; t < nc.dims.size(); ++t)
            index.push_back((a / strides[t]) % nc.dims[t]);
        coeffs.push_back(nlohmann::json{{"index", std::move(index)}, {"value", nc.coeffs[a]}});
    }
    j = nlohmann::json{{"dims", nc.dims}, {"coeffs", std::move(coeffs)}};
}

void from_json(const nlohmann::json& j, NestedCirculant& nc) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("coeffs"))
        throw std::invalid_argument("nested circulant JSON needs fields \"dims\" and \"coeffs\"");
    std::vector<std::size_t> dims;
    for (const nlohmann::json& d : j.at("dims")) {
        if (!d.is_number_integer() || d.get<std::int64_t>() < 1)
            throw std::invalid_argument("\"dims\" must hold positive integers");
        dims.push_back(d.get<std::size_t>());
    }
    if (dims.empty()) throw std::invalid_argument("\"dims\" must be nonempty");
    const std::size_t n = checked_product(dims);
    const std::vector<std::size_t> strides = strides_of(dims);

    std::vector<double> coeffs(n, 0.0);
    const nlohmann::json& list = j.at("coeffs");
    if (!list.is_array()) throw std::invalid_argument("\"coeffs\" must be an array");
    for (const nlohmann::json& item : list) {
        if (!item.is_object() || !item.contains("index") || !item.contains("value"))
            throw std::invalid_argument(
                "each coefficient needs fields \"index\" and \"value\"");
        const nlohmann::json& index = item.at("index");
        if (!index.is_array() || index.size() != dims.size())
            throw std::invalid_argument("\"index\" must list one digit per level");
        std::size_t a = 0;
        for (std::size_t t = 0; t < dims.size(); ++t) {
            if (!index[t].is_number_integer() || index[t].get<std::int64_t>() < 0)
                throw std::invalid_argument("\"index\" digits must be nonnegative integers");
            const auto digit = index[t].get<std::size_t>();
            if (digit >= dims[t])
                throw std::invalid_argument("index digit " + std::to_string(digit) +
                                            " is out of range for dimension " +
                                            std::to_string(dims[t]));
            a += digit * strides[t];
        }
        if (!item.at("value").is_number())
            throw std::invalid_argument("\"value\" must be a number");
        coeffs[a] += item.at("value").get<double>();
    }
    nc = NestedCirculant(std::move(dims), std::move(coeffs));
}

NestedCirculant parse_nested(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(e.what(), line, col);
    }
    try {
        return j.get<NestedCirculant>();
    } catch (const ParseError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), 1, 1);
    } catch (const std::invalid_argument& e) {
        // Semantic validation problems carry no position; report the document.
        throw ParseError(e.what(), 1, 1);
    }
}

RealMatrix parse_dense_matrix(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 0;
    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<double> row;
        double v = 0.0;
        while (ls >> v) row.push_back(v);
        if (!ls.eof()) {
            std::string bad;
            ls.clear();
            ls >> bad;
            throw ParseError("expected a number, found '" + bad + "'", lineno, 1);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix text holds no rows", lineno ? lineno : 1, 1);
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != rows[0].size())
            throw ParseError("row " + std::to_string(i + 1) + " has " +
                                 std::to_string(rows[i].size()) + " entries, expected " +
                                 std::to_string(rows[0].size()),
                             i + 1, 1);
    RealMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

RealMatrix nested_expand(const NestedCirculant& nc) {
    const std::size_t n = nc.size();
    const std::vector<std::size_t> strides = strides_of(nc.dims);
    RealMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            m.at(a, b) = nc.coeffs[mixed_radix_diff(a, b, nc.dims, strides)];
    return m;
}

bool nested_is_symmetric(const NestedCirculant& nc) {
    const std::vector<std::size_t> strides = strides_of(nc.dims);
    for (std::size_t a = 0; a < nc.coeffs.size(); ++a) {
        if (nc.coeffs[a] != nc.coeffs[mixed_radix_diff(0, a, nc.dims, strides)]) return false;
    }
    return true;
}

Complex nested_eval(const NestedCirculant& nc, const RootTuple& at) {
    const std::size_t m = nc.dims.size();
    if (at.indices.size() != m)
        throw std::invalid_argument("nested_eval: root tuple must have one index per level");
    std::vector<Complex> roots(m);
    for (std::size_t t = 0; t < m; ++t) {
        const std::size_t k = at.indices[t] % nc.dims[t];
        const double angle =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nc.dims[t]);
        roots[t] = Complex(std::cos(angle), std::sin(angle));
    }
    const std::vector<std::size_t> strides = strides_of(nc.dims);

    // Horner in each variable: the outermost level combines fully evaluated
    // inner slices, so the innermost variable is collapsed last-to-first.
    auto eval_level = [&](auto&& self, std::size_t level, std::size_t offset) -> Complex {
        if (level == m) return Complex(nc.coeffs[offset], 0.0);
        const std::size_t stride = strides[level];
        Complex acc = self(self, level + 1, offset + (nc.dims[level] - 1) * stride);
        for (std::size_t d = nc.dims[level] - 1; d-- > 0;)
            acc = acc * roots[level] + self(self, level + 1, offset + d * stride);
        return acc;
    };
    return eval_level(eval_level, 0, 0);
}

std::vector<Complex> nested_eigenvalues(const NestedCirculant& nc) {
    const std::size_t n = nc.size();
    const std::size_t m = nc.dims.size();
    std::vector<Complex> out;
    out.reserve(n);
    RootTuple at;
    at.indices.assign(m, 0);
    for (std::size_t counter = 0; counter < n; ++counter) {
        out.push_back(nested_eval(nc, at));
        for (std::size_t t = m; t-- > 0;) {  // mixed-radix increment
            if (++at.indices[t] < nc.dims[t]) break;
            at.indices[t] = 0;
        }
    }
    return out;
}

Spectrum nested_spectrum(const NestedCirculant& nc, std::optional<double> cluster_tol) {
    if (!nested_is_symmetric(nc))
        throw std::invalid_argument(
            "nested_spectrum: expansion is not symmetric; use nested_eigenvalues for the "
            "complex spectrum");
    std::vector<Complex> evals = nested_eigenvalues(nc);
    double scale = 0.0;
    for (double c : nc.coeffs) scale += std::abs(c);
    std::vector<double> values;
    values.reserve(evals.size());
    for (const Complex& v : evals) {
        if (std::abs(v.imag()) > 1e-9 * std::max(1.0, scale))
            throw InternalInconsistencyError(
                "nested_spectrum: evaluation of a symmetric nested circulant came out "
                "non-real");
        values.push_back(v.real());
    }
    return Spectrum::from_values(std::move(values), cluster_tol);
}

NestedCirculant nested_detect(const RealMatrix& m, const std::vector<std::size_t>& dims) {
    if (dims.empty()) throw std::invalid_argument("nested_detect: dims must be nonempty");
    const std::size_t n = checked_product(dims);
    if (m.rows != n || m.cols != n)
        throw std::invalid_argument("nested_detect: matrix is " + std::to_string(m.rows) + "x" +
                                    std::to_string(m.cols) + " but dims give " +
                                    std::to_string(n));
    const std::vector<std::size_t> strides = strides_of(dims);
    std::vector<double> coeffs(n);
    for (std::size_t a = 0; a < n; ++a) coeffs[a] = m.at(a, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (m.at(a, b) != coeffs[mixed_radix_diff(a, b, dims, strides)])
                throw StructureError(
                    "matrix is not a nested circulant over the given dimensions", a, b);
    return NestedCirculant(dims, std::move(coeffs));
}

NestedCirculant nested_gram(const NestedCirculant& nc) {
    const RealMatrix g = gram(nested_expand(nc));
    try {
        return nested_detect(g, nc.dims);
    } catch (const StructureError& e) {
        throw InternalInconsistencyError(
            std::string("nested_gram: Gram matrix lost the nested-circulant structure: ") +
            e.what());
    }
}

}  // namespace qcspectra
