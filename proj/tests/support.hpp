#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcspectra/nested.hpp"
#include "qcspectra/qc.hpp"

namespace testsupport {

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline std::string corpus_path(const std::string& name) {
    return std::string(QCSPECTRA_CORPUS_DIR) + "/" + name;
}

inline qcspectra::PolyMatrix load_corpus_matrix(const std::string& name) {
    return qcspectra::parse_poly_matrix(read_file(corpus_path(name)));
}

// Random J x L polynomial matrix over x^r - 1 where every entry has exactly
// `terms` distinct exponents (so the scalar expansion is (J*terms,
// L*terms)-regular with 0/1 entries).
inline qcspectra::PolyMatrix random_regular_poly_matrix(std::mt19937& rng, std::size_t block_rows,
                                                        std::size_t block_cols, std::size_t r,
                                                        std::size_t terms) {
    std::vector<qcspectra::IntPoly> entries;
    entries.reserve(block_rows * block_cols);
    std::vector<std::size_t> exponents(r);
    for (std::size_t e = 0; e < r; ++e) exponents[e] = e;
    for (std::size_t k = 0; k < block_rows * block_cols; ++k) {
        std::shuffle(exponents.begin(), exponents.end(), rng);
        std::vector<qcspectra::BigInt> coeffs(r);
        for (std::size_t t = 0; t < terms; ++t) coeffs[exponents[t]] = 1;
        entries.emplace_back(std::move(coeffs));
    }
    return qcspectra::PolyMatrix(block_rows, block_cols, r, std::move(entries));
}

// Random nested circulant with small-integer coefficients. Integer-valued
// data keeps every Gram entry exactly representable, so structure detection
// can compare entries exactly.
inline qcspectra::NestedCirculant random_nested(std::mt19937& rng,
                                                const std::vector<std::size_t>& dims,
                                                int max_coeff = 3) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    std::uniform_int_distribution<int> dist(0, max_coeff);
    std::vector<double> coeffs(n);
    for (double& c : coeffs) c = static_cast<double>(dist(rng));
    return qcspectra::NestedCirculant(dims, std::move(coeffs));
}

// Symmetrized variant: coefficients satisfy v[delta] == v[-delta].
inline qcspectra::NestedCirculant random_symmetric_nested(std::mt19937& rng,
                                                          const std::vector<std::size_t>& dims,
                                                          int max_coeff = 3) {
    using qcspectra::NestedCirculant;
    NestedCirculant nc = random_nested(rng, dims, max_coeff);
    // Mirror each coefficient onto its negated index tuple.
    std::vector<std::size_t> strides(dims.size());
    std::size_t s = 1;
    for (std::size_t t = dims.size(); t-- > 0;) {
        strides[t] = s;
        s *= dims[t];
    }
    for (std::size_t a = 0; a < nc.coeffs.size(); ++a) {
        std::size_t neg = 0;
        for (std::size_t t = 0; t < dims.size(); ++t) {
            const std::size_t at = (a / strides[t]) % dims[t];
            neg += ((dims[t] - at) % dims[t]) * strides[t];
        }
        if (neg > a) nc.coeffs[neg] = nc.coeffs[a];
    }
    return nc;
}

}  // namespace testsupport
