#include "qcspectra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace qcspectra {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kSymmetryRelTol = 1e-12;

double off_diag_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    return std::sqrt(2.0 * s);
}

// Cyclic Jacobi on a symmetric matrix stored row-major; returns the diagonal
// once the off-diagonal Frobenius norm drops to `target`.
std::vector<double> jacobi_diagonalize(std::vector<double> a, std::size_t n, double target) {
    double off = off_diag_norm(a, n);
    int sweeps = 0;
    while (off > target) {
        if (sweeps == kMaxSweeps)
            throw NonConvergenceError("eigensolver failed to converge within " +
                                          std::to_string(kMaxSweeps) + " sweeps",
                                      off);
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (!std::isfinite(t)) t = 0.0;  // |theta| overflowed; rotation is negligible
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = a[p * n + k] = akp - s * (akq + tau * akp);
                    a[k * n + q] = a[q * n + k] = akq + s * (akp - tau * akq);
                }
            }
        }
        ++sweeps;
        off = off_diag_norm(a, n);
    }
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a[i * n + i];
    return diag;
}

void require_finite(const RealMatrix& m, const char* who) {
    for (double v : m.data)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
}

void require_finite(const ComplexMatrix& m, const char* who) {
    for (const Complex& v : m.data)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
}

}  // namespace

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

double fro_norm(const RealMatrix& m) {
    double s = 0.0;
    for (double v : m.data) s += v * v;
    return std::sqrt(s);
}

double fro_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const Complex& v : m.data) s += std::norm(v);
    return std::sqrt(s);
}

double Spectrum::default_cluster_tol(const std::vector<double>& values) {
    double max_abs = 0.0;
    for (double v : values) max_abs = std::max(max_abs, std::abs(v));
    return std::max(1e-8, 1e-10 * max_abs);
}

Spectrum Spectrum::from_values(std::vector<double> values, std::optional<double> cluster_tol) {
    std::sort(values.begin(), values.end());
    Spectrum sp;
    sp.cluster_tol_ = cluster_tol.value_or(default_cluster_tol(values));
    if (sp.cluster_tol_ < 0.0)
        throw std::invalid_argument("Spectrum: cluster tolerance must be nonnegative");
    sp.values_ = std::move(values);

    std::size_t start = 0;
    while (start < sp.values_.size()) {
        const double anchor = sp.values_[start];
        std::size_t end = start + 1;
        while (end < sp.values_.size() && sp.values_[end] - anchor <= sp.cluster_tol_) ++end;
        double mean = 0.0;
        for (std::size_t i = start; i < end; ++i) mean += sp.values_[i];
        mean /= static_cast<double>(end - start);
        sp.clusters_.push_back({mean, end - start});
        start = end;
    }
    return sp;
}

double Spectrum::sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
}

Spectrum sym_eig(const RealMatrix& s, double tol, std::optional<double> cluster_tol) {
    if (s.rows != s.cols || s.rows == 0)
        throw std::invalid_argument("sym_eig: matrix must be square and nonempty");
    require_finite(s, "sym_eig");
    if (tol <= 0.0) throw std::invalid_argument("sym_eig: tolerance must be positive");
    const std::size_t n = s.rows;
    const double fro = fro_norm(s);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(s.at(i, j) - s.at(j, i)) > kSymmetryRelTol * fro)
                throw std::invalid_argument("sym_eig: matrix is not symmetric");

    // Average the two triangles so the rotations see an exactly symmetric matrix.
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = s.at(i, i);
        for (std::size_t j = i + 1; j < n; ++j)
            a[i * n + j] = a[j * n + i] = 0.5 * (s.at(i, j) + s.at(j, i));
    }
    return Spectrum::from_values(jacobi_diagonalize(std::move(a), n, tol * fro), cluster_tol);
}

std::vector<double> herm_eigenvalues(const ComplexMatrix& m, double tol) {
    if (m.rows != m.cols || m.rows == 0)
        throw std::invalid_argument("herm_eig: matrix must be square and nonempty");
    require_finite(m, "herm_eig");
    if (tol <= 0.0) throw std::invalid_argument("herm_eig: tolerance must be positive");
    const std::size_t L = m.rows;
    const double fro = fro_norm(m);
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i; j < L; ++j)
            if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > kSymmetryRelTol * fro)
                throw std::invalid_argument("herm_eig: matrix is not Hermitian");

    // Real embedding [[A, -B], [B, A]] of the Hermitized matrix; it is
    // exactly symmetric and carries each eigenvalue of M twice.
    const std::size_t n = 2 * L;
    std::vector<double> e(n * n);
    for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < L; ++j) {
            const Complex h = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
            e[i * n + j] = h.real();
            e[(L + i) * n + (L + j)] = h.real();
            e[i * n + (L + j)] = -h.imag();
            e[(L + i) * n + j] = h.imag();
        }
    }
    // Solve the embedding tighter than the pair-merge assertion below needs.
    const double fro_e = std::numbers::sqrt2 * fro;
    std::vector<double> diag = jacobi_diagonalize(std::move(e), n, 0.125 * tol * fro_e);
    std::sort(diag.begin(), diag.end());

    const double allow = tol * std::max(1.0, fro);
    std::vector<double> out;
    out.reserve(L);
    for (std::size_t i = 0; i < n; i += 2) {
        if (diag[i + 1] - diag[i] > allow)
            throw InternalInconsistencyError(
                "herm_eig: eigenvalues of the real embedding failed to pair up");
        out.push_back(diag[i]);
    }
    return out;
}

Spectrum herm_eig(const ComplexMatrix& m, double tol, std::optional<double> cluster_tol) {
    return Spectrum::from_values(herm_eigenvalues(m, tol), cluster_tol);
}

RealMatrix gram(const RealMatrix& h) {
    const std::size_t n = h.cols;
    RealMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < h.rows; ++k) s += h.at(k, i) * h.at(k, j);
            g.at(i, j) = s;
            g.at(j, i) = s;
        }
    }
    return g;
}

Spectrum block_circulant_spectrum(const std::vector<ComplexMatrix>& blocks, double tol,
                                  std::optional<double> cluster_tol) {
    if (blocks.empty())
        throw std::invalid_argument("block_circulant_spectrum: need at least one block");
    const std::size_t L = blocks[0].rows;
    for (const ComplexMatrix& b : blocks)
        if (b.rows != L || b.cols != L)
            throw std::invalid_argument(
                "block_circulant_spectrum: blocks must all be square with equal size");
    const std::size_t r = blocks.size();

    // W(x) is Hermitian at every root of unity exactly when the conjugate
    // transpose of block i equals block (r - i) mod r. Validating that here,
    // against the scale of the blocks themselves, keeps the test meaningful
    // even at roots where the blocks cancel and W is numerically zero.
    double scale = 0.0;
    for (const ComplexMatrix& b : blocks) scale = std::max(scale, fro_norm(b));
    for (std::size_t i = 0; i < r; ++i) {
        const ComplexMatrix& fwd = blocks[i];
        const ComplexMatrix& rev = blocks[(r - i) % r];
        for (std::size_t a = 0; a < L; ++a)
            for (std::size_t b = 0; b < L; ++b)
                if (std::abs(fwd.at(a, b) - std::conj(rev.at(b, a))) > kSymmetryRelTol * scale)
                    throw std::invalid_argument(
                        "block_circulant_spectrum: the conjugate transpose of block " +
                        std::to_string(i) + " must equal block " +
                        std::to_string((r - i) % r));
    }

    const double step = 2.0 * std::numbers::pi / static_cast<double>(r);
    std::vector<double> all;
    all.reserve(r * L);
    for (std::size_t j = 0; j < r; ++j) {
        ComplexMatrix w(L, L);
        for (std::size_t i = 0; i < r; ++i) {
            const double angle = step * static_cast<double>((i * j) % r);
            const Complex x(std::cos(angle), std::sin(angle));
            for (std::size_t k = 0; k < L * L; ++k) w.data[k] += blocks[i].data[k] * x;
        }
        // The structure is already validated; make W exactly Hermitian so the
        // solver's own check cannot trip over rounding residue.
        for (std::size_t a = 0; a < L; ++a) {
            w.at(a, a) = Complex(w.at(a, a).real(), 0.0);
            for (std::size_t b = a + 1; b < L; ++b) {
                const Complex avg = 0.5 * (w.at(a, b) + std::conj(w.at(b, a)));
                w.at(a, b) = avg;
                w.at(b, a) = std::conj(avg);
            }
        }
        for (double v : herm_eigenvalues(w, tol)) all.push_back(v);
    }
    return Spectrum::from_values(std::move(all), cluster_tol);
}

}  // namespace qcspectra
