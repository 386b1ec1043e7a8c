"""The eight families: parameter validation, printed matrices, and the
spectral signature that tells members apart."""

import math

import numpy as np
import pytest

from md53c.catalog import (
    FAMILIES,
    FamilySpec,
    ad2_block,
    build_algebra,
    default_grid,
    family_spec,
    jordan_signature,
    list_catalog,
)
from md53c.errors import InvalidParams
from md53c.lie_core import ad_matrix, jacobi_defect


def test_families_tuple():
    assert FAMILIES == ("F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8")


def test_default_grid_shape():
    grid = default_grid()
    assert len(grid) == 36
    labels = [s.label() for s in grid]
    assert labels.count("F4") == 1
    assert labels.count("F7") == 1
    assert "F3(0)" in labels and "F5(0)" in labels  # lambda = 0 allowed here
    assert "F6(0)" not in labels
    assert any(s.family == "F8" and s.lam == 1.0 and s.phi == math.pi / 2 for s in grid)
    assert list_catalog() == grid


@pytest.mark.parametrize(
    "family,args",
    [
        ("F1", (1.0, 2.0)),
        ("F1", (0.0, 2.0)),
        ("F1", (2.0, 2.0)),  # needs distinct eigenvalues
        ("F2", (1.0,)),
        ("F2", (0.0,)),
        ("F3", (1.0,)),
        ("F5", (1.0,)),
        ("F6", (0.0,)),
        ("F6", (1.0,)),
        ("F8", (0.0, 1.0)),
        ("F8", (1.0, 0.0)),
        ("F8", (1.0, math.pi)),  # phi is strictly interior
    ],
)
def test_invalid_parameters(family, args):
    with pytest.raises(InvalidParams):
        family_spec(family, *args)


def test_wrong_arity_and_unknown_family():
    with pytest.raises(InvalidParams):
        family_spec("F1", 2.0)
    with pytest.raises(InvalidParams):
        family_spec("F4", 1.0)
    with pytest.raises(InvalidParams):
        family_spec("F9")


def test_printed_matrices():
    cases = {
        family_spec("F1", -2.0, 3.0): [[-2, 0, 0], [0, 3, 0], [0, 0, 1]],
        family_spec("F2", 0.5): [[1, 0, 0], [0, 1, 0], [0, 0, 0.5]],
        family_spec("F3", 0.0): [[0, 0, 0], [0, 1, 0], [0, 0, 1]],
        family_spec("F4"): [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        family_spec("F5", -2.0): [[-2, 0, 0], [0, 1, 1], [0, 0, 1]],
        family_spec("F6", 3.0): [[1, 1, 0], [0, 1, 0], [0, 0, 3]],
        family_spec("F7"): [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
    }
    for spec, want in cases.items():
        assert np.array_equal(ad2_block(spec), np.array(want, dtype=float)), spec.label()
    phi = math.pi / 6
    rot = ad2_block(family_spec("F8", 2.0, phi))
    want = [
        [math.cos(phi), -math.sin(phi), 0.0],
        [math.sin(phi), math.cos(phi), 0.0],
        [0.0, 0.0, 2.0],
    ]
    assert np.array_equal(rot, np.array(want))


def test_build_algebra_structure():
    for spec in default_grid():
        sc = build_algebra(spec)
        assert sc.dim == 5
        assert jacobi_defect(sc) <= 1e-12, spec.label()
        # [X1, X2] = X3 and ad_{X1} kills the derived ideal
        e3 = np.zeros(5)
        e3[2] = 1.0
        assert np.array_equal(ad_matrix(sc, 1)[:, 1], e3)
        assert np.array_equal(ad_matrix(sc, 1)[:, 2:], np.zeros((5, 3)))
        assert np.array_equal(ad_matrix(sc, 2)[2:, 2:], ad2_block(spec))


def test_labels():
    assert family_spec("F1", -2.0, 3.0).label() == "F1(-2, 3)"
    assert family_spec("F4").label() == "F4"
    assert family_spec("F8", 1.0, math.pi / 2).label() == "F8(1, 1.5708)"


def test_json_round_trip():
    for spec in default_grid():
        doc = spec.to_json()
        assert doc["family"] == spec.family
        assert FamilySpec.from_json(doc) == spec
    doc = family_spec("F2", 0.5).to_json()
    assert doc["lambda"] == 0.5


def test_jordan_signature_separates_members():
    # same eigenvalues, different block structure
    assert jordan_signature(family_spec("F2", 0.5)) != jordan_signature(family_spec("F3", 0.5))
    assert jordan_signature(family_spec("F5", 0.5)) != jordan_signature(family_spec("F6", 0.5))
    assert jordan_signature(family_spec("F4")) != jordan_signature(family_spec("F7"))
    blocks, _ = jordan_signature(family_spec("F8", 1.0, math.pi / 2))
    assert any(im != 0.0 for _, im, _ in blocks)


def test_jordan_signature_fixture():
    blocks, weights = jordan_signature(family_spec("F5", -2.0))
    assert set(blocks) == {(-2.0, 0.0, 1), (1.0, 0.0, 2)}
    # the first derived generator is an eigenvector, so its weight list
    # carries just its own eigenvalue
    assert weights == ((-2.0, 0.0),)
