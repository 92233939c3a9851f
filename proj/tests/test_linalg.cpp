#include <cmath>
#include <random>

#include "doctest.h"
#include "qcspectra/linalg.hpp"

using namespace qcspectra;

namespace {

RealMatrix sym2(double a, double b, double d) {
    RealMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = b;
    m.at(1, 1) = d;
    return m;
}

RealMatrix random_symmetric(std::mt19937& rng, std::size_t n, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = dist(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = dist(rng);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return m;
}

}  // namespace

TEST_CASE("clustering groups near-equal values and reports means") {
    const Spectrum sp = Spectrum::from_values({3.0, 1.0 + 1e-12, 1.0, 2.0}, 1e-9);
    CHECK(sp.values() == std::vector<double>{1.0, 1.0 + 1e-12, 2.0, 3.0});
    REQUIRE(sp.clusters().size() == 3u);
    CHECK(sp.clusters()[0].multiplicity == 2u);
    CHECK(sp.clusters()[0].value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sp.clusters()[1].value == 2.0);
    CHECK(sp.clusters()[2].value == 3.0);
    CHECK(sp.cluster_tol() == 1e-9);
    CHECK(sp.size() == 4u);
    CHECK(sp.sum() == doctest::Approx(7.0));

    // Greedy clustering anchors at each cluster's smallest member.
    const Spectrum chain = Spectrum::from_values({0.0, 0.6, 1.2}, 1.0);
    REQUIRE(chain.clusters().size() == 2u);
    CHECK(chain.clusters()[0].multiplicity == 2u);
    CHECK(chain.clusters()[1].multiplicity == 1u);

    const double auto_tol = Spectrum::default_cluster_tol({5.0, -2e3});
    CHECK(auto_tol == doctest::Approx(2e3 * 1e-10));
    CHECK(Spectrum::default_cluster_tol({0.5}) == 1e-8);
    CHECK(Spectrum::from_values({}).clusters().empty());
}

TEST_CASE("symmetric eigensolver matches closed forms") {
    const Spectrum sp = sym_eig(sym2(2.0, 1.0, 2.0));
    REQUIRE(sp.values().size() == 2u);
    CHECK(sp.values()[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sp.values()[1] == doctest::Approx(3.0).epsilon(1e-12));

    const Spectrum id = sym_eig(RealMatrix::identity(5));
    REQUIRE(id.clusters().size() == 1u);
    CHECK(id.clusters()[0].value == 1.0);
    CHECK(id.clusters()[0].multiplicity == 5u);

    RealMatrix one(1, 1);
    one.at(0, 0) = 3.0;
    CHECK(sym_eig(one).values()[0] == 3.0);

    RealMatrix zero(3, 3);
    const Spectrum flat = sym_eig(zero);
    for (double v : flat.values()) CHECK(v == 0.0);
}

TEST_CASE("symmetric eigensolver rejects bad input") {
    RealMatrix asym(2, 2);
    asym.at(0, 1) = 1.0;
    CHECK_THROWS_AS(sym_eig(asym), std::invalid_argument);

    CHECK_THROWS_AS(sym_eig(RealMatrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(sym_eig(RealMatrix(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(sym_eig(RealMatrix::identity(2), 0.0), std::invalid_argument);

    RealMatrix nan(2, 2);
    nan.at(0, 0) = std::nan("");
    CHECK_THROWS_AS(sym_eig(nan), std::invalid_argument);
}

TEST_CASE("eigenvalues reproduce trace and Frobenius norm on random symmetric matrices") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + rng() % 12;
        const RealMatrix m = random_symmetric(rng, n, 5.0);
        const Spectrum sp = sym_eig(m);
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += m.at(i, i);
        double sum2 = 0.0;
        for (double v : sp.values()) sum2 += v * v;
        const double fro = fro_norm(m);
        CHECK(sp.sum() == doctest::Approx(trace).epsilon(1e-9));
        CHECK(std::sqrt(sum2) == doctest::Approx(fro).epsilon(1e-9));
    }
}

TEST_CASE("hermitian eigensolver matches closed forms and the embedding identity") {
    ComplexMatrix m(2, 2);
    m.at(0, 0) = 2.0;
    m.at(1, 1) = 2.0;
    m.at(0, 1) = Complex(0.0, 1.0);
    m.at(1, 0) = Complex(0.0, -1.0);
    const std::vector<double> vals = herm_eigenvalues(m);
    REQUIRE(vals.size() == 2u);
    CHECK(vals[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vals[1] == doctest::Approx(3.0).epsilon(1e-12));

    // Real symmetric input must agree with sym_eig.
    std::mt19937 rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng() % 6;
        const RealMatrix s = random_symmetric(rng, n, 2.0);
        ComplexMatrix c(n, n);
        for (std::size_t i = 0; i < n * n; ++i) c.data[i] = s.data[i];
        const Spectrum a = sym_eig(s);
        const std::vector<double> b = herm_eigenvalues(c);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(a.values()[i] == doctest::Approx(b[i]).epsilon(1e-9));
    }
}

TEST_CASE("hermitian eigensolver halves the embedding's multiplicities") {
    std::mt19937 rng(303);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.at(i, i) = dist(rng);
            for (std::size_t j = i + 1; j < n; ++j) {
                m.at(i, j) = Complex(dist(rng), dist(rng));
                m.at(j, i) = std::conj(m.at(i, j));
            }
        }
        // Embedding [[A, -B], [B, A]] solved as a plain symmetric matrix.
        RealMatrix e(2 * n, 2 * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                e.at(i, j) = m.at(i, j).real();
                e.at(n + i, n + j) = m.at(i, j).real();
                e.at(i, n + j) = -m.at(i, j).imag();
                e.at(n + i, j) = m.at(i, j).imag();
            }
        const std::vector<double> half = herm_eigenvalues(m);
        const Spectrum full = sym_eig(e);
        REQUIRE(full.values().size() == 2 * half.size());
        for (std::size_t i = 0; i < half.size(); ++i) {
            CHECK(half[i] == doctest::Approx(full.values()[2 * i]).epsilon(1e-8));
            CHECK(half[i] == doctest::Approx(full.values()[2 * i + 1]).epsilon(1e-8));
        }
    }
}

TEST_CASE("hermitian eigensolver rejects non-hermitian input") {
    ComplexMatrix bad(2, 2);
    bad.at(0, 1) = Complex(1.0, 0.0);
    bad.at(1, 0) = Complex(2.0, 0.0);
    CHECK_THROWS_AS(herm_eigenvalues(bad), std::invalid_argument);

    ComplexMatrix diag(2, 2);
    diag.at(0, 0) = Complex(1.0, 0.5);  // complex diagonal is not Hermitian
    diag.at(1, 1) = 1.0;
    CHECK_THROWS_AS(herm_eigenvalues(diag), std::invalid_argument);
}

TEST_CASE("gram builds an exactly symmetric product") {
    RealMatrix h(2, 3);
    h.at(0, 0) = 1.0;
    h.at(0, 1) = 1.0;
    h.at(1, 1) = 1.0;
    h.at(1, 2) = 1.0;
    const RealMatrix g = gram(h);
    REQUIRE(g.rows == 3u);
    REQUIRE(g.cols == 3u);
    CHECK(g.at(0, 0) == 1.0);
    CHECK(g.at(1, 1) == 2.0);
    CHECK(g.at(2, 2) == 1.0);
    CHECK(g.at(0, 1) == 1.0);
    CHECK(g.at(1, 2) == 1.0);
    CHECK(g.at(0, 2) == 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(g.at(i, j) == g.at(j, i));
}

TEST_CASE("gram spectra are nonnegative and sum to the squared Frobenius norm") {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        RealMatrix h(rows, cols);
        for (double& v : h.data) v = dist(rng);
        const Spectrum sp = sym_eig(gram(h));
        const double fro = fro_norm(h);
        CHECK(sp.sum() == doctest::Approx(fro * fro).epsilon(1e-9));
        for (double v : sp.values()) CHECK(v >= -1e-9 * std::max(1.0, fro * fro));
    }
}

TEST_CASE("block-circulant spectra specialize correctly") {
    // Scalar circulant with first column (0, 1): eigenvalues of [[0,1],[1,0]].
    ComplexMatrix b0(1, 1), b1(1, 1);
    b1.at(0, 0) = 1.0;
    const Spectrum sp = block_circulant_spectrum({b0, b1});
    REQUIRE(sp.values().size() == 2u);
    CHECK(sp.values()[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sp.values()[1] == doctest::Approx(1.0).epsilon(1e-12));

    // A single block (r = 1) is just that block's spectrum.
    ComplexMatrix single(2, 2);
    single.at(0, 0) = 2.0;
    single.at(1, 1) = 2.0;
    single.at(0, 1) = 1.0;
    single.at(1, 0) = 1.0;
    const Spectrum one = block_circulant_spectrum({single});
    CHECK(one.values()[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.values()[1] == doctest::Approx(3.0).epsilon(1e-12));

    // Only block 0 nonzero: every root of unity sees the same W, so the
    // spectrum is r copies of eig(blocks[0]).
    ComplexMatrix zero(2, 2);
    const Spectrum copies = block_circulant_spectrum({single, zero, zero});
    REQUIRE(copies.values().size() == 6u);
    REQUIRE(copies.clusters().size() == 2u);
    CHECK(copies.clusters()[0].multiplicity == 3u);
    CHECK(copies.clusters()[1].multiplicity == 3u);

    // W(x) must be Hermitian for every root.
    ComplexMatrix skew(2, 2);
    skew.at(0, 1) = 1.0;
    CHECK_THROWS_AS(block_circulant_spectrum({skew}), std::invalid_argument);
    CHECK_THROWS_AS(block_circulant_spectrum({}), std::invalid_argument);
    CHECK_THROWS_AS(block_circulant_spectrum({single, ComplexMatrix(3, 3)}),
                    std::invalid_argument);
}
