#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qcspectra/errors.hpp"
#include "qcspectra/int_poly.hpp"

namespace qcspectra {

// Dense row-major real matrix.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static RealMatrix identity(std::size_t n);

    bool operator==(const RealMatrix&) const = default;
};

// Dense row-major complex matrix.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Complex& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

double fro_norm(const RealMatrix& m);
double fro_norm(const ComplexMatrix& m);

// A real eigenvalue multiset together with its grouping into clusters of
// near-equal values. Values are sorted ascending; clusters are formed
// greedily: a value joins the current cluster while it lies within
// cluster_tol of the cluster's smallest member. Each cluster is reported as
// the mean of its members plus a multiplicity.
class Spectrum {
  public:
    struct Cluster {
        double value = 0.0;
        std::size_t multiplicity = 0;

        bool operator==(const Cluster&) const = default;
    };

    Spectrum() = default;

    // cluster_tol defaults to max(1e-8, 1e-10 * max|value|).
    static Spectrum from_values(std::vector<double> values,
                                std::optional<double> cluster_tol = std::nullopt);
    static double default_cluster_tol(const std::vector<double>& values);

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<Cluster>& clusters() const noexcept { return clusters_; }
    double cluster_tol() const noexcept { return cluster_tol_; }
    std::size_t size() const noexcept { return values_.size(); }
    double sum() const;

  private:
    std::vector<double> values_;
    std::vector<Cluster> clusters_;
    double cluster_tol_ = 0.0;
};

inline constexpr double kDefaultEigTol = 1e-12;

// Eigenvalues of a symmetric matrix by the cyclic Jacobi rotation method.
// Sweeps run until the off-diagonal Frobenius norm is at most
// tol * ||S||_F, capped at 100 sweeps (NonConvergenceError beyond that,
// carrying the residual). S must be square and symmetric to within
// 1e-12 * ||S||_F entrywise.
Spectrum sym_eig(const RealMatrix& s, double tol = kDefaultEigTol,
                 std::optional<double> cluster_tol = std::nullopt);

// Eigenvalues of a Hermitian matrix M = A + iB via the symmetric 2L x 2L
// real embedding [[A, -B], [B, A]], whose spectrum holds each eigenvalue of
// M twice. Pairs are merged by sorting and taking alternate entries; a pair
// gap above tol * max(1, ||M||_F) raises InternalInconsistencyError.
std::vector<double> herm_eigenvalues(const ComplexMatrix& m, double tol = kDefaultEigTol);
Spectrum herm_eig(const ComplexMatrix& m, double tol = kDefaultEigTol,
                  std::optional<double> cluster_tol = std::nullopt);

// H^T * H, with the lower triangle mirrored from the upper so the result is
// exactly symmetric.
RealMatrix gram(const RealMatrix& h);

// Eigenvalues of the block-circulant matrix whose first block-column is
// `blocks`: the union over the r-th roots of unity x of the eigenvalues of
// W(x) = sum_i blocks[i] * x^i. Every W(x) must be Hermitian, which holds
// exactly when the conjugate transpose of block i equals block (r - i) mod r;
// that structural condition is what gets validated.
Spectrum block_circulant_spectrum(const std::vector<ComplexMatrix>& blocks,
                                  double tol = kDefaultEigTol,
                                  std::optional<double> cluster_tol = std::nullopt);

}  // namespace qcspectra
