import pytest

from conftest import h8_v1, h8_v2, kchar
from hopfkit.exact_math import Matrix, root_of_unity
from hopfkit.module_theory import (
    HModule,
    direct_sum,
    hom_space,
    is_isomorphic,
    restrict,
    tensor_modules,
    trivial_module,
    verify_module,
)


def test_trivial_module(h8):
    assert verify_module(trivial_module(h8)).ok


def test_v1_v2_verify(h8):
    i = root_of_unity(4)
    for b in (1, -1, i, -i):
        assert verify_module(h8_v1(h8, b)).ok
    assert verify_module(h8_v2(h8)).ok


def test_v2_sign_flip_fails(h8):
    V2 = h8_v2(h8)
    mats = list(V2.action)
    mats[1] = -mats[1]  # flip the x action
    bad = HModule(h8, mats, name="bad")
    rep = verify_module(bad)
    assert not rep.ok
    assert rep["action-multiplicative"].witness is not None


def test_tensor_unit_identification(h8):
    V2 = h8_v2(h8)
    one = trivial_module(h8)
    T = tensor_modules(one, V2)
    assert T.action == V2.action  # strict unit under index identification
    T2 = tensor_modules(V2, one)
    assert T2.action == V2.action


def test_tensor_v1_squares(h8):
    # z is not grouplike, so the z-eigenvalue is not multiplicative: the four
    # one-dimensional simples form a Klein-four fusion ring and every line
    # squares to the unit object (z acts by +1 on V1(i) x V1(i))
    i = root_of_unity(4)
    V = h8_v1(h8, i)
    T = tensor_modules(V, V)
    assert T.action[3] == Matrix.from_rows([[1]])
    assert is_isomorphic(T, trivial_module(h8)).status == "iso"


def test_tensor_associativity_strict(h8):
    V2 = h8_v2(h8)
    A = tensor_modules(tensor_modules(V2, V2), V2)
    B = tensor_modules(V2, tensor_modules(V2, V2))
    assert A.action == B.action


def test_restrict(h8, h8_incl):
    V2 = h8_v2(h8)
    R = restrict(h8_incl, V2)
    assert verify_module(R).ok
    target = direct_sum(kchar(h8_incl.K, 1, -1), kchar(h8_incl.K, -1, 1))
    iso = is_isomorphic(R, target)
    assert iso.status == "iso"
    assert iso.map.intertwines()
    # restriction of the trivial module is trivial
    assert restrict(h8_incl, trivial_module(h8)).action == trivial_module(h8_incl.K).action


def test_restrict_tensor_commutes(h8, h8_incl):
    V2 = h8_v2(h8)
    V1 = h8_v1(h8, root_of_unity(4))
    lhs = restrict(h8_incl, tensor_modules(V2, V1))
    rhs = tensor_modules(restrict(h8_incl, V2), restrict(h8_incl, V1))
    assert lhs.action == rhs.action


def test_hom_space(h8):
    V2 = h8_v2(h8)
    homs = hom_space(V2, V2)
    assert len(homs) == 1  # V2 is simple
    assert homs[0].matrix.is_scalar_multiple_of_identity() is not None
    a = h8_v1(h8, 1)
    b = h8_v1(h8, -1)
    assert hom_space(a, b) == []


def test_hom_dimension_iso_invariant(h8):
    i = root_of_unity(4)
    V = h8_v1(h8, i)
    W = h8_v1(h8, -i)
    S = direct_sum(V, W)
    S2 = direct_sum(W, V)
    assert len(hom_space(S, S2)) == len(hom_space(S, S))


def test_is_isomorphic_identity(h8):
    V2 = h8_v2(h8)
    iso = is_isomorphic(V2, V2)
    assert iso.status == "iso"


def test_is_isomorphic_none_cases(h8):
    i = root_of_unity(4)
    assert is_isomorphic(h8_v1(h8, i), h8_v1(h8, -i)).status == "none"
    assert is_isomorphic(h8_v1(h8, 1), h8_v2(h8)).status == "none"  # dim mismatch


def test_intertwiner_kron_is_intertwiner(h8):
    # bifunctoriality of the tensor product
    V2 = h8_v2(h8)
    homs = hom_space(V2, V2)
    f = homs[0].matrix
    T = tensor_modules(V2, V2)
    ff = f.kron(f)
    for idx in range(h8.dim):
        assert ff * T.action[idx] == T.action[idx] * ff


def test_is_isomorphic_undetermined(h8):
    # equal dimensions and a nonzero hom space, but no invertible intertwiner:
    # the deterministic grid exhausts and reports "undetermined", not "none"
    M = direct_sum(h8_v1(h8, 1), h8_v1(h8, 1))
    N = direct_sum(h8_v1(h8, 1), h8_v1(h8, -1))
    assert len(hom_space(M, N)) == 2
    assert is_isomorphic(M, N).status == "undetermined"
