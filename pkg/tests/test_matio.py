"""Round-trip and error-path tests for the plain-text matrix format."""

import numpy as np
import pytest

from horolab.matio import (
    MatrixFormatError,
    format_matrix,
    load_matrix,
    parse_matrix,
    save_matrix,
)
from horolab.sampling import random_group_element


@pytest.mark.parametrize("n", (1, 2, 3))
def test_roundtrip_is_bitwise_exact(rng, n):
    mat = rng.normal(size=(n + 2, n + 2)) * 10.0 ** rng.integers(-8, 8)
    back, m = parse_matrix(format_matrix(mat, n))
    assert m == n
    assert np.array_equal(back, mat)


def test_roundtrip_extreme_values():
    specials = np.array([
        [0.0, -0.0, 1e-308],
        [1e308, -1.7976931348623157e308, 2.2250738585072014e-308],
        [np.pi, -1.0 / 3.0, 5e-324],
    ])
    back, _ = parse_matrix(format_matrix(specials, 1))
    assert np.array_equal(back, specials)


def test_save_load_through_file(tmp_path, rng):
    g = random_group_element(rng, 2)
    path = tmp_path / "element.txt"
    save_matrix(path, g.mat, 2)
    back, n = load_matrix(path)
    assert n == 2
    assert np.array_equal(back, g.mat)


def test_format_rejects_shape_mismatch():
    with pytest.raises(MatrixFormatError):
        format_matrix(np.eye(4), 1)


@pytest.mark.parametrize("text", [
    "",                                  # empty
    "3\n1 0 0\n0 1 0\n0 0 1\n",          # missing n= header
    "n=x\n",                             # non-integer dimension
    "n=0\n1 0\n0 1\n",                   # n below range
    "n=1\n1 0 0\n0 1 0\n",               # too few rows
    "n=1\n1 0 0\n0 1 0\n0 0 1\n0 0 1\n", # too many rows
    "n=1\n1 0\n0 1 0\n0 0 1\n",          # short row
    "n=1\n1 0 zero\n0 1 0\n0 0 1\n",     # non-numeric entry
])
def test_parse_rejects_malformed_input(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix(text)


def test_parse_ignores_blank_lines():
    text = "n=1\n\n1 0 0\n0 1 0\n\n0 0 1\n\n"
    mat, n = parse_matrix(text)
    assert n == 1
    assert np.array_equal(mat, np.eye(3))
