#include <random>

#include "doctest.h"
#include "qcspectra/qc.hpp"
#include "support.hpp"

using namespace qcspectra;
using nlohmann::json;

TEST_CASE("text parser reads headers, comments, rows and polynomial entries") {
    const PolyMatrix p = parse_poly_matrix(
        "# a 2 x 3 example\n"
        "r = 5\n"
        "P = [ x, 1 + x^2, 0 ;  # first row\n"
        "      3*x^4, 1, x + x ]\n");
    CHECK(p.block_rows == 2u);
    CHECK(p.block_cols == 3u);
    CHECK(p.r == 5u);
    CHECK(p.entry(0, 0) == IntPoly{0, 1});
    CHECK(p.entry(0, 1) == IntPoly{1, 0, 1});
    CHECK(p.entry(0, 2) == IntPoly{});
    CHECK(p.entry(1, 0) == IntPoly{0, 0, 0, 0, 3});
    CHECK(p.entry(1, 1) == IntPoly{1});
    CHECK(p.entry(1, 2) == IntPoly{0, 2});

    // A trailing ';' before ']' is tolerated.
    const PolyMatrix q = parse_poly_matrix("r = 2\nP = [ 1, x ; ]");
    CHECK(q.block_rows == 1u);
    CHECK(q.block_cols == 2u);
}

TEST_CASE("text parser reports positions for malformed input") {
    auto line_of = [](const std::string& text) {
        try {
            parse_poly_matrix(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("r = 2\nP = [ x^5 ]") == 2u);         // exponent out of range
    CHECK(line_of("P = [ x ]") == 1u);                  // r never set
    CHECK(line_of("r = 0\nP = [ 1 ]") == 1u);           // r must be positive
    CHECK(line_of("r = 2\nP = [ x, ; 1 ]") == 2u);      // empty entry
    CHECK(line_of("r = 2\nP = [ x ") == 2u);            // unterminated matrix
    CHECK(line_of("r = 2\nbogus = 3\nP = [ x ]") == 2u);  // unknown header key
    CHECK_THROWS_AS(parse_poly_matrix("r = 3\nP = [ x, 1 ; x ]"), ParseError);
    CHECK_THROWS_AS(parse_poly_matrix("r = 3\nP = [ 1 - x - x ]"), ParseError);
    CHECK_THROWS_AS(parse_poly_matrix("r = 3\nP = [ 1 ] extra"), ParseError);
    CHECK_THROWS_AS(parse_poly_matrix("r = 3\nP = [ 1 ? ]"), ParseError);

    try {
        parse_poly_matrix("r = 3\nP = [ 1 + x^7 ]");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2u);
        CHECK(e.column() == 13u);  // points at the exponent digits
    }
}

TEST_CASE("reduce flag folds exponents instead of rejecting them") {
    const PolyMatrix p = parse_poly_matrix("r = 3\nreduce = true\nP = [ x^7 + x ]");
    CHECK(p.entry(0, 0) == IntPoly{0, 2});  // x^7 = x^(7 mod 3) = x
    CHECK_THROWS_AS(parse_poly_matrix("r = 3\nreduce = false\nP = [ x^7 ]"), ParseError);
}

TEST_CASE("JSON form parses, validates and round-trips") {
    const PolyMatrix p = parse_poly_matrix(
        R"({"r": 5, "rows": [[[0,1],[1,0,0,1],[1]], [[1],[0,1],[0,0,0,0,1]]]})");
    CHECK(p.block_rows == 2u);
    CHECK(p.block_cols == 3u);
    CHECK(p.r == 5u);
    CHECK(p.entry(0, 1) == IntPoly{1, 0, 0, 1});

    const json j = p;
    const PolyMatrix q = j.get<PolyMatrix>();
    CHECK(q == p);

    // Coefficients can come as decimal strings, and reduce folds long lists.
    const PolyMatrix s =
        parse_poly_matrix(R"({"r": 2, "reduce": true, "rows": [[["3",0,1]]]})");
    CHECK(s.entry(0, 0) == IntPoly{4});

    CHECK_THROWS_AS(parse_poly_matrix(R"({"r": 2, "rows": [[[0,0,1]]]})"), ParseError);
    CHECK_THROWS_AS(parse_poly_matrix(R"({"r": 2})"), ParseError);
    CHECK_THROWS_AS(parse_poly_matrix(R"({"r": 0, "rows": [[[1]]]})"), ParseError);
    CHECK_THROWS_AS(parse_poly_matrix(R"({"r": 2, "rows": [[[1]], [[1],[1]]]})"), ParseError);
    CHECK_THROWS_AS(parse_poly_matrix(R"({"r": 2, "rows": [[[-1]]]})"), ParseError);
    CHECK_THROWS_AS(parse_poly_matrix(R"({"r": 2, "rows")"), ParseError);
}

TEST_CASE("bracketed text emission parses back to the same matrix") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const PolyMatrix p =
            testsupport::random_regular_poly_matrix(rng, 1 + rng() % 3, 1 + rng() % 4,
                                                    2 + rng() % 7, 1 + rng() % 2);
        CHECK(parse_poly_matrix(to_qc_text(p)) == p);
    }
}

TEST_CASE("scalar expansion places circulant coefficients by (a - b) mod r") {
    // P = [x] with r = 2 expands to the swap matrix in both layouts.
    const PolyMatrix p = parse_poly_matrix("r = 2\nP = [ x ]");
    for (Layout layout : {Layout::BlockOfCirculants, Layout::CirculantOfBlocks}) {
        const ScalarMatrix h = expand_scalar(p, layout);
        CHECK(h.matrix.at(0, 0) == 0.0);
        CHECK(h.matrix.at(0, 1) == 1.0);
        CHECK(h.matrix.at(1, 0) == 1.0);
        CHECK(h.matrix.at(1, 1) == 0.0);
    }

    // P = [1] with r = 3 expands to the identity.
    const ScalarMatrix id =
        expand_scalar(parse_poly_matrix("r = 3\nP = [ 1 ]"), Layout::BlockOfCirculants);
    CHECK(id.matrix == RealMatrix::identity(3));

    // First block column of the circulant for 1 + 2x^2, r = 4.
    const ScalarMatrix c =
        expand_scalar(parse_poly_matrix("r = 4\nP = [ 1 + 2*x^2 ]"), Layout::BlockOfCirculants);
    CHECK(c.matrix.at(0, 0) == 1.0);
    CHECK(c.matrix.at(1, 0) == 0.0);
    CHECK(c.matrix.at(2, 0) == 2.0);
    CHECK(c.matrix.at(3, 0) == 0.0);
    // Circulant: each column is the previous one shifted down by one.
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            CHECK(c.matrix.at(a, b) == c.matrix.at((a + 1) % 4, (b + 1) % 4));
}

TEST_CASE("the two layouts are the same matrix under the block interleaving") {
    std::mt19937 rng(66);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t J = 1 + rng() % 3, L = 1 + rng() % 3, r = 2 + rng() % 6;
        const PolyMatrix p = testsupport::random_regular_poly_matrix(rng, J, L, r, 1);
        const ScalarMatrix blocks = expand_scalar(p, Layout::BlockOfCirculants);
        const ScalarMatrix circ = expand_scalar(p, Layout::CirculantOfBlocks);
        for (std::size_t i = 0; i < J; ++i)
            for (std::size_t j = 0; j < L; ++j)
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = 0; b < r; ++b)
                        CHECK(circ.matrix.at(a * J + i, b * L + j) ==
                              blocks.matrix.at(i * r + a, j * r + b));
    }
}

TEST_CASE("profile reports weights, regularity and zero rows or columns") {
    const CodeProfile id =
        profile(expand_scalar(parse_poly_matrix("r = 4\nP = [ 1 ]"), Layout::BlockOfCirculants));
    CHECK(id.n == 4u);
    CHECK(id.c == 1u);
    CHECK(id.d == 1u);
    CHECK(id.regular);
    CHECK_FALSE(id.has_zero_col);
    CHECK_FALSE(id.has_zero_row);

    // [[1,1,0],[0,1,1]] has column weights 1, 2, 1.
    ScalarMatrix irregular;
    irregular.matrix = RealMatrix(2, 3);
    irregular.matrix.at(0, 0) = 1.0;
    irregular.matrix.at(0, 1) = 1.0;
    irregular.matrix.at(1, 1) = 1.0;
    irregular.matrix.at(1, 2) = 1.0;
    const CodeProfile ir = profile(irregular);
    CHECK_FALSE(ir.regular);
    CHECK(ir.c == 0u);
    CHECK(ir.d == 2u);
    CHECK(ir.col_weights == std::vector<std::size_t>{1, 2, 1});

    // A zero polynomial row gives zero scalar rows (flagged, not rejected).
    const CodeProfile zr =
        profile(expand_scalar(parse_poly_matrix("r = 3\nP = [ x ; 0 ]"),
                              Layout::BlockOfCirculants));
    CHECK(zr.has_zero_row);
    CHECK_FALSE(zr.has_zero_col);
    CHECK_FALSE(zr.regular);

    ScalarMatrix bad;
    bad.matrix = RealMatrix(1, 1);
    bad.matrix.at(0, 0) = 2.0;
    CHECK_THROWS_AS(profile(bad), std::invalid_argument);
}

TEST_CASE("reduced gram spectrum matches the closed form for one circulant") {
    const PolyMatrix p = parse_poly_matrix("r = 3\nP = [ 1 + x ]");
    const Spectrum sp = gram_spectrum_reduced(p);
    REQUIRE(sp.values().size() == 3u);
    CHECK(sp.values()[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sp.values()[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sp.values()[2] == doctest::Approx(4.0).epsilon(1e-12));

    // Identity block: all eigenvalues are 1.
    const Spectrum ones = gram_spectrum_reduced(parse_poly_matrix("r = 5\nP = [ 1 ]"));
    REQUIRE(ones.clusters().size() == 1u);
    CHECK(ones.clusters()[0].value == doctest::Approx(1.0));
    CHECK(ones.clusters()[0].multiplicity == 5u);
}

TEST_CASE("reduced and dense spectra agree on random regular matrices") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t J = 1 + rng() % 3, L = 1 + rng() % 3, r = 2 + rng() % 8;
        const std::size_t terms = 1 + rng() % std::min<std::size_t>(2, r);
        const PolyMatrix p = testsupport::random_regular_poly_matrix(rng, J, L, r, terms);
        const Spectrum reduced = gram_spectrum_reduced(p);
        const Spectrum dense = gram_spectrum_dense(p);
        REQUIRE(reduced.values().size() == dense.values().size());
        const double allow = 1e-8 * std::max(1.0, reduced.values().back());
        for (std::size_t i = 0; i < reduced.values().size(); ++i)
            CHECK(std::abs(reduced.values()[i] - dense.values()[i]) <= allow);
    }
}

TEST_CASE("regular codes have trace n*c and top eigenvalue c*d") {
    std::mt19937 rng(88);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t J = 1 + rng() % 3, L = 1 + rng() % 3, r = 2 + rng() % 8;
        const std::size_t terms = 1 + rng() % std::min<std::size_t>(2, r);
        const PolyMatrix p = testsupport::random_regular_poly_matrix(rng, J, L, r, terms);
        const std::size_t n = r * L;
        const std::size_t c = J * terms, d = L * terms;
        const Spectrum sp = gram_spectrum_reduced(p);
        CHECK(sp.sum() == doctest::Approx(static_cast<double>(n * c)).epsilon(1e-9));
        CHECK(sp.values().back() ==
              doctest::Approx(static_cast<double>(c * d)).epsilon(1e-10));
    }
}

TEST_CASE("zero rows and columns are tolerated by both spectrum paths") {
    const PolyMatrix p = parse_poly_matrix("r = 3\nP = [ x, 0 ; 0, 0 ]");
    const Spectrum reduced = gram_spectrum_reduced(p);
    const Spectrum dense = gram_spectrum_dense(p);
    REQUIRE(reduced.values().size() == 6u);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(reduced.values()[i] == doctest::Approx(dense.values()[i]).epsilon(1e-10));
    CHECK(reduced.values().front() == doctest::Approx(0.0));
    CHECK(reduced.values().back() == doctest::Approx(1.0));
}

TEST_CASE("circulant spectrum consists of squared root evaluations") {
    const Spectrum sp = circulant_spectrum(IntPoly{1, 1}, 3);
    REQUIRE(sp.values().size() == 3u);
    CHECK(sp.values()[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sp.values()[2] == doctest::Approx(4.0).epsilon(1e-12));

    // Must agree with the 1 x 1 polynomial matrix path.
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng() % 10;
        std::vector<BigInt> coeffs(n);
        for (auto& c : coeffs) c = static_cast<int>(rng() % 2);
        const IntPoly w(coeffs);
        const Spectrum a = circulant_spectrum(w, n);
        const Spectrum b =
            gram_spectrum_reduced(PolyMatrix(1, 1, n, {w}));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(a.values()[i] == doctest::Approx(b.values()[i]).epsilon(1e-10));
    }
    CHECK_THROWS_AS(circulant_spectrum(IntPoly{1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(circulant_spectrum(IntPoly{0, 0, 0, 1}, 3), std::invalid_argument);
}

TEST_CASE("tanner 155 fixture: reduced path reproduces the known eigenvalue clusters") {
    const PolyMatrix p = testsupport::load_corpus_matrix("tanner155.qc");
    CHECK(p.block_rows == 3u);
    CHECK(p.block_cols == 5u);
    CHECK(p.r == 31u);
    const Spectrum sp = gram_spectrum_reduced(p);
    REQUIRE(sp.values().size() == 155u);
    const auto& clusters = sp.clusters();
    REQUIRE(clusters.size() == 5u);
    CHECK(clusters[0].value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(clusters[0].multiplicity == 64u);
    CHECK(clusters[1].value == doctest::Approx(1.4740).epsilon(5e-4));
    CHECK(clusters[1].multiplicity == 30u);
    CHECK(clusters[2].value == doctest::Approx(4.8459).epsilon(5e-4));
    CHECK(clusters[2].multiplicity == 30u);
    CHECK(clusters[3].value == doctest::Approx(8.6801).epsilon(5e-4));
    CHECK(clusters[3].multiplicity == 30u);
    CHECK(clusters[4].value == doctest::Approx(15.0).epsilon(1e-10));
    CHECK(clusters[4].multiplicity == 1u);
}
