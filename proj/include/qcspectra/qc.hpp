#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcspectra/int_poly.hpp"
#include "qcspectra/linalg.hpp"

namespace qcspectra {

// Two scalar realizations of the same polynomial matrix:
//  - BlockOfCirculants: a J x L grid of r x r circulant blocks, where entry
//    (i, j) becomes the circulant whose first column is the coefficient
//    vector of p_ij.
//  - CirculantOfBlocks: an r x r circulant arrangement of J x L blocks,
//    where block (a, b) holds coefficient (a - b) mod r of every entry.
// The two are related by a row and column permutation, so they share the
// Gram spectrum.
enum class Layout { BlockOfCirculants, CirculantOfBlocks };

// J x L matrix of integer polynomials modulo x^r - 1 (every entry has degree
// below r; coefficients are nonnegative when it describes a parity-check
// matrix).
struct PolyMatrix {
    std::size_t block_rows = 0;  // J
    std::size_t block_cols = 0;  // L
    std::size_t r = 0;           // circulant size
    std::vector<IntPoly> entries;  // row-major, block_rows * block_cols

    PolyMatrix() = default;
    // Validates the shape and that every entry has degree below r.
    PolyMatrix(std::size_t block_rows, std::size_t block_cols, std::size_t r,
               std::vector<IntPoly> entries);

    IntPoly& entry(std::size_t i, std::size_t j) { return entries[i * block_cols + j]; }
    const IntPoly& entry(std::size_t i, std::size_t j) const {
        return entries[i * block_cols + j];
    }

    bool operator==(const PolyMatrix&) const = default;
};

// Scalar expansion of a PolyMatrix in a particular layout.
struct ScalarMatrix {
    Layout layout = Layout::BlockOfCirculants;
    std::size_t block_rows = 0;
    std::size_t block_cols = 0;
    std::size_t r = 0;
    RealMatrix matrix;
};

// Row/column weight profile of a 0/1 scalar matrix. c (column weight) and d
// (row weight) are set only when uniform; `regular` requires both.
struct CodeProfile {
    std::size_t n = 0;  // number of columns
    std::size_t c = 0;  // uniform column weight, 0 if columns are not uniform
    std::size_t d = 0;  // uniform row weight, 0 if rows are not uniform
    bool regular = false;
    bool has_zero_col = false;
    bool has_zero_row = false;
    std::vector<std::size_t> col_weights;
    std::vector<std::size_t> row_weights;
};

// Parses either the bracketed text form
//
//   # comment
//   r = 31
//   P = [ x, x^2 ; 1 + x^3, 0 ]
//
// or, when the first non-space character is '{', the JSON form
// {"r": ..., "rows": [[[coeffs...], ...], ...]}. Setting `reduce = true`
// (header line or JSON field) folds exponents of r and beyond by x^r - 1;
// otherwise they are rejected. Entries must come out with nonnegative
// coefficients. Syntax errors raise ParseError with line and column.
PolyMatrix parse_poly_matrix(std::string_view text);

// {"r": ..., "rows": [[[c0, c1, ...], ...], ...]} with trimmed coefficient
// lists; from_json also accepts the optional "reduce" flag and coefficients
// given as decimal strings.
void to_json(nlohmann::json& j, const PolyMatrix& p);
void from_json(const nlohmann::json& j, PolyMatrix& p);

// Bracketed text form of a PolyMatrix, one block row per line.
std::string to_qc_text(const PolyMatrix& p);

ScalarMatrix expand_scalar(const PolyMatrix& p, Layout layout);

// Requires all entries of the expansion to be 0/1.
CodeProfile profile(const ScalarMatrix& hs);

// Spectrum of H^T * H without forming H: for each r-th root of unity x, the
// eigenvalues of the L x L Hermitian matrix P(x)^H * P(x) are collected.
Spectrum gram_spectrum_reduced(const PolyMatrix& p, double tol = kDefaultEigTol,
                               std::optional<double> cluster_tol = std::nullopt);

// Oracle path: expand to scalar form, build the Gram matrix, and run the
// dense symmetric eigensolver.
Spectrum gram_spectrum_dense(const PolyMatrix& p, double tol = kDefaultEigTol,
                             std::optional<double> cluster_tol = std::nullopt);

// Spectrum of C^T * C for the single n x n circulant C with first column w:
// the values |w(x)|^2 over the n-th roots of unity x.
Spectrum circulant_spectrum(const IntPoly& w, std::size_t n,
                            std::optional<double> cluster_tol = std::nullopt);

}  // namespace qcspectra
