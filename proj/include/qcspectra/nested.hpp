#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcspectra/linalg.hpp"

namespace qcspectra {

// An m-level nested circulant of total size n = dims[0] * ... * dims[m-1]:
// level 0 is a dims[0] x dims[0] circulant arrangement whose blocks are
// (m-1)-level nested circulants over the remaining dimensions. The matrix is
// determined by its first column, stored here as `coeffs` in mixed-radix
// order with dims[0] most significant: entry a of the first column has
// digits (a_0, ..., a_{m-1}) and M[a][b] = coeffs[digits (a_t - b_t) mod
// dims[t]].
struct NestedCirculant {
    std::vector<std::size_t> dims;
    std::vector<double> coeffs;  // length = product of dims

    NestedCirculant() = default;
    NestedCirculant(std::vector<std::size_t> dims, std::vector<double> coeffs);

    std::size_t levels() const noexcept { return dims.size(); }
    std::size_t size() const noexcept;  // product of dims
};

// A point on the torus of root-of-unity tuples: component t selects the
// indices[t]-th dims[t]-th root of unity.
struct RootTuple {
    std::vector<std::size_t> indices;
};

// JSON form {"dims": [...], "coeffs": [{"index": [...], "value": ...}, ...]}
// listing only nonzero coefficients by their digit tuples.
void to_json(nlohmann::json& j, const NestedCirculant& nc);
void from_json(const nlohmann::json& j, NestedCirculant& nc);

NestedCirculant parse_nested(std::string_view text);

// Whitespace-separated rows, one matrix row per line; '#' starts a comment.
RealMatrix parse_dense_matrix(std::string_view text);

// The full n x n matrix.
RealMatrix nested_expand(const NestedCirculant& nc);

// True when the expansion is symmetric, i.e. coeffs[delta] ==
// coeffs[-delta] for every digit tuple delta (componentwise negation modulo
// dims).
bool nested_is_symmetric(const NestedCirculant& nc);

// The multivariate coefficient polynomial evaluated at the given root tuple
// by Horner's rule in each variable.
Complex nested_eval(const NestedCirculant& nc, const RootTuple& at);

// All n evaluations, in mixed-radix order of the root tuples.
std::vector<Complex> nested_eigenvalues(const NestedCirculant& nc);

// Spectrum of a symmetric nested circulant: the evaluations over all root
// tuples, which must come out real. Throws invalid_argument when the
// expansion is not symmetric and InternalInconsistencyError if an
// evaluation has an unexpectedly large imaginary part.
Spectrum nested_spectrum(const NestedCirculant& nc,
                         std::optional<double> cluster_tol = std::nullopt);

// Reads the nested-circulant coefficients back off a matrix that must be an
// exact m-level nested circulant over `dims`; the first mismatching entry,
// scanning row-major, raises StructureError with its position.
NestedCirculant nested_detect(const RealMatrix& m, const std::vector<std::size_t>& dims);

// M^T * M of the expansion, returned in nested-circulant form. The Gram
// matrix of a nested circulant is again a nested circulant over the same
// dims; failure to detect that structure raises InternalInconsistencyError.
NestedCirculant nested_gram(const NestedCirculant& nc);

}  // namespace qcspectra
