import random

import pytest

from lrlab.decomp import Decomposition
from lrlab.errors import AnchorMismatch, FormulaViolated, NotLowering, NotLRPair
from lrlab.gen import GenConfig, gen_lr_pair
from lrlab.linalg import Matrix, mat_apply
from lrlab.lrpair import (
    LRPairData,
    find_lr_decomposition,
    pair_basis_action,
    rebase_to_anchor,
    standard_basis,
)

from support import F7, mat, random_pair

A1 = mat(F7, [[0, 1], [0, 0]])
B1 = mat(F7, [[0, 0], [3, 0]])


def test_detection_examples():
    z = mat(F7, [[0]])
    P = find_lr_decomposition(z, z)
    assert P.decomposition == Decomposition.standard(F7, 0) and P.phi == ()
    P = find_lr_decomposition(A1, B1)
    assert P.decomposition == Decomposition.standard(F7, 1) and P.phi_values() == [3]
    with pytest.raises(NotLRPair) as info:
        find_lr_decomposition(A1, Matrix.zeros(F7, 2))
    assert info.value.reason == "KernelDimension"


@pytest.mark.parametrize("A,B,reason", [
    ([[0, 0], [0, 0]], [[0, 0], [1, 0]], "ImageCollapse"),
    ([[0, 1], [1, 0]], [[0, 0], [1, 0]], "LoweringFails"),
    ([[1, 0], [0, 1]], [[0, 0], [1, 0]], "NotDirectSum"),
    ([[0, 1], [0, 0]], [[0, 0], [1, 1]], "RaisingFails"),
    ([[0, 0, 0], [0, 0, 1], [0, 0, 0]], [[0, 0, 0], [1, 0, 0], [0, 1, 0]], "ImageCollapse"),
    ([[0, 1, 0], [0, 0, 1], [0, 0, 0]], [[0, 0, 0], [1, 0, 0], [1, 1, 0]], "RaisingFails"),
])
def test_detection_failures(A, B, reason):
    with pytest.raises(NotLRPair) as info:
        find_lr_decomposition(mat(F7, A), mat(F7, B))
    assert info.value.reason == reason


def test_standard_basis_examples():
    assert standard_basis(A1, Decomposition.standard(F7, 1)) == [(1, 0), (0, 1)]
    assert standard_basis(mat(F7, [[0]]), Decomposition.standard(F7, 0)) == [(1,)]
    assert standard_basis(mat(F7, [[0, 2], [0, 0]]), Decomposition.standard(F7, 1)) == [(2, 0), (0, 1)]
    with pytest.raises(NotLowering):
        standard_basis(Matrix.identity(F7, 2), Decomposition.standard(F7, 1))


def test_rebase_examples():
    assert rebase_to_anchor(F7, [(2, 0), (0, 1)], (2, 0)) == [(2, 0), (0, 1)]
    assert rebase_to_anchor(F7, [(2, 0), (0, 1)], (1, 0)) == [(1, 0), (0, 4)]
    with pytest.raises(AnchorMismatch):
        rebase_to_anchor(F7, [(1, 0), (0, 1)], (0, 1))


def test_pair_basis_action_examples():
    z = mat(F7, [[0]])
    assert pair_basis_action(find_lr_decomposition(z, z), [(1,)]).indices_checked == 1
    P = find_lr_decomposition(A1, B1)
    assert pair_basis_action(P, [(1, 0), (0, 1)]).kind == "AB"
    with pytest.raises(FormulaViolated) as info:
        pair_basis_action(P, [(1, 0), (0, 2)])
    assert info.value.index == 0


def test_bases_random():
    rng = random.Random(31)
    for _ in range(300):
        P = random_pair(rng)
        v = standard_basis(P.A, P.decomposition)
        pair_basis_action(P, v, "AB")
        rev = find_lr_decomposition(P.B, P.A)
        w = standard_basis(P.B, rev.decomposition)
        pair_basis_action(P, w, "BA")
        assert all(P.decomposition.lines[i].contains(x) for i, x in enumerate(v))
        c = rng.randrange(1, P.field.p)
        scaled = rebase_to_anchor(P.field, v, tuple(c * x % P.field.p for x in v[0]))
        pair_basis_action(P, scaled, "AB")
        assert mat_apply(P.A, v[0]) == (0,) * (P.d + 1)


def test_pair_data_json():
    P = gen_lr_pair(GenConfig(2, F7, 5))
    js = P.to_json()
    assert set(js) == {"A", "B", "decomposition", "phi"}
    assert isinstance(P, LRPairData) and len(js["phi"]) == 2 == P.d
