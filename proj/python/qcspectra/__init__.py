"""Gram spectra, pseudo-weight and minimum-distance bounds for quasi-cyclic
and nested-circulant parity-check matrices."""

try:
    from ._qcspectra import *  # noqa: F401,F403
    from ._qcspectra import __version__  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout without a package dir
    from _qcspectra import *  # noqa: F401,F403
    from _qcspectra import __version__  # noqa: F401

from pathlib import Path


def load_poly_matrix(path):
    """Parse a polynomial parity-check matrix (text or JSON form) from a file."""
    return parse_poly_matrix(Path(path).read_text())  # noqa: F405


def load_nested(path):
    """Parse a nested-circulant description (JSON form) from a file."""
    return parse_nested(Path(path).read_text())  # noqa: F405
