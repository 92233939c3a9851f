"""Smoke tests for the Python bindings against the bundled example matrices."""

import os
from pathlib import Path

import pytest

import qcspectra as qs

CORPUS = Path(os.environ.get("QCSPECTRA_CORPUS", "corpus"))


def load(name):
    return qs.load_poly_matrix(CORPUS / name)


def test_reduced_spectrum_clusters_on_155_column_code():
    p = load("tanner155.qc")
    assert (p.block_rows, p.block_cols, p.r) == (3, 5, 31)
    spectrum = qs.gram_spectrum_reduced(p)
    assert len(spectrum) == 155
    clusters = [(round(c.value, 4), c.multiplicity) for c in spectrum.clusters]
    assert clusters[-1] == (15.0, 1)
    assert clusters[0][1] == 64 and abs(clusters[0][0]) < 1e-8
    mids = clusters[1:4]
    assert [m for _, m in mids] == [30, 30, 30]
    assert [v for v, _ in mids] == pytest.approx([1.4740, 4.8459, 8.6801], abs=5e-4)


def test_reduced_matches_dense_oracle():
    p = load("qc_2x3_r5.qc")
    reduced = qs.gram_spectrum_reduced(p)
    dense = qs.gram_spectrum_dense(p)
    assert reduced.values == pytest.approx(dense.values, abs=1e-8)


def test_bound_report_for_7_column_code():
    p = load("pg22.qc")
    prof = qs.profile(qs.expand_scalar(p, qs.Layout.BLOCK_OF_CIRCULANTS))
    assert prof.regular and prof.c == 3 and prof.d == 3
    report = qs.make_bound_report(prof, qs.gram_spectrum_reduced(p))
    assert report.pw_bound == pytest.approx(4.0, abs=1e-9)
    assert report.dmin_bound == pytest.approx(10.0 / 3.0, abs=1e-9)
    assert report.informative and report.necessary_condition


def test_exact_equality_condition_certificate():
    p = load("pg24.qc")
    report = qs.check_equality_condition(p.entry(0, 0), p.r)
    assert report.holds
    assert report.d == 5
    assert report.lambda1 == 25 and isinstance(report.lambda1, int)
    assert report.mu == 1
    assert report.lambda2 == 4
    assert str(report.r_poly) == "1 - x + x^2"


def test_equality_condition_failure_reports_autocorrelation():
    w = qs.IntPoly.from_string("1 + x + x^2")
    report = qs.check_equality_condition(w, 5)
    assert not report.holds
    assert not report.mu_defined
    assert report.autocorrelation == [3, 2, 1, 1, 2]
    assert "autocorrelation" in report.reason


def test_nested_circulant_spectrum_and_gram_closure():
    nc = qs.load_nested(CORPUS / "example2.nested.json")
    assert nc.dims == [2, 2, 2] and len(nc) == 8
    spectrum = qs.nested_spectrum(nc)
    clusters = [(round(c.value, 9), c.multiplicity) for c in spectrum.clusters]
    assert clusters == [(-2.0, 3), (0.0, 3), (2.0, 1), (4.0, 1)]
    g = qs.nested_gram(nc)
    assert qs.nested_expand(g) == qs.gram(qs.nested_expand(nc))


def test_real_matrix_numpy_round_trip():
    np = pytest.importorskip("numpy")
    a = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    m = qs.RealMatrix(a)
    assert (m.rows, m.cols) == (3, 2)
    assert np.array_equal(m.numpy(), a)
    g = qs.gram(m)
    assert np.allclose(g.numpy(), a.T @ a)


def test_cone_membership_and_pseudo_weight():
    p = load("pg22.qc")
    h = qs.expand_scalar(p, qs.Layout.BLOCK_OF_CIRCULANTS).matrix
    ones = [1.0] * 7
    assert qs.cone_membership(h, ones).member
    assert qs.pseudo_weight(ones) == pytest.approx(7.0)
    unit = [1.0] + [0.0] * 6
    check = qs.cone_membership(h, unit)
    assert not check.member
    assert check.violation.kind == qs.ConeViolation.Kind.CHECK_DOMINATION


def test_big_integer_round_trip():
    big = 10**40 + 7
    p = qs.IntPoly([big, 0, 1])
    assert p.coeff(0) == big
    assert p.coeff_sum() == big + 1
    prod = p * p
    assert prod.coeff(0) == big * big


def test_parse_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        qs.parse_poly_matrix("r = 5\nP = [ 1 + y ]\n")
    with pytest.raises(ValueError):
        qs.check_equality_condition(qs.IntPoly.from_string("2 + x"), 5)
