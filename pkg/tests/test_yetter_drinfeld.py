import pytest

from conftest import kline
from hopfkit.builders import cyclic_table, drinfeld_double, group_algebra, small_quantum_sl2
from hopfkit.errors import PipelineError
from hopfkit.exact_math import Matrix
from hopfkit.extension import HopfInclusion
from hopfkit.frob_objects import push_frobenius, trivial_frobenius
from hopfkit.hopf_core import subhopf_from_basis
from hopfkit.induction import induce, induction_context
from hopfkit.module_theory import HModule, verify_module
from hopfkit.yetter_drinfeld import (
    trivial_yd,
    verify_braided_frobenius,
    verify_yd,
    yd_as_double_module,
    yd_braiding,
    yd_braiding_natural,
    yd_hexagons,
    yd_line,
    yd_morphism_check,
    yd_tensor,
    z_induce,
)


def test_trivial_yd(h8, h8_incl):
    assert verify_yd(trivial_yd(h8)).ok
    assert verify_yd(trivial_yd(h8_incl.K)).ok


def test_all_klein_lines_are_yd(h8_incl):
    for g in ("1", "x", "y", "xy"):
        for ex in (1, -1):
            for ey in (1, -1):
                assert verify_yd(kline(h8_incl.K, g, ex, ey)).ok


def test_zone_h_object_is_yd(h8, h8_ictx):
    A = push_frobenius(h8_ictx, trivial_frobenius(h8_ictx.incl.K))
    assert verify_yd(A.carrier).ok
    # trivial coaction means Psi is the plain swap; in particular a x a -> a x a
    psi = yd_braiding(A.carrier, A.carrier)
    sw = [[0] * 4 for _ in range(4)]
    for a in range(2):
        for b in range(2):
            sw[b * 2 + a][a * 2 + b] = 1
    assert psi == Matrix.from_rows(sw)


def test_yd_tensor(h8_incl):
    A = kline(h8_incl.K, "x", 1, -1)
    B = kline(h8_incl.K, "y", -1, 1)
    T = yd_tensor(A, B)
    assert verify_yd(T).ok
    # degrees multiply
    assert list(T.coaction_terms(0)) == [(h8_incl.K.label_index("xy"), 0)]


def test_yd_braiding_values(h8_incl):
    # two graded lines: the braiding is the swap times the action of the first degree
    A = kline(h8_incl.K, "x", 1, -1)
    B = kline(h8_incl.K, "y", -1, 1)
    psi = yd_braiding(A, B)
    # deg(A) = x acts on B by -1
    assert psi == Matrix.from_rows([[-1]])
    psi2 = yd_braiding(B, A)
    # deg(B) = y acts on A by -1
    assert psi2 == Matrix.from_rows([[-1]])
    # trivial coactions give the plain swap
    t1 = trivial_yd(h8_incl.K)
    assert yd_braiding(t1, t1) == Matrix.identity(1, t1.N)


def test_yd_braiding_invertible_and_morphism(h8_incl):
    A = kline(h8_incl.K, "x", -1, -1)
    B = kline(h8_incl.K, "xy", 1, -1)
    psi = yd_braiding(A, B)  # raises on failure
    assert yd_morphism_check(yd_tensor(A, B), yd_tensor(B, A), psi)


def test_yd_hexagons(h8_incl):
    A = kline(h8_incl.K, "x", 1, 1)
    B = kline(h8_incl.K, "y", -1, 1)
    C = kline(h8_incl.K, "xy", -1, -1)
    assert yd_hexagons(A, B, C)


def test_yd_braiding_naturality(h8_incl):
    A = kline(h8_incl.K, "x", 1, -1)
    ident = Matrix.identity(1, A.N)
    assert yd_braiding_natural(A, A, A, A, ident, ident.scale(3))


def test_z_induce_coaction_table(h8, h8_incl, h8_ictx):
    wcase = {(1, 1): "1", (1, -1): "y", (-1, 1): "x", (-1, -1): "xy"}
    swap = {"1": "1", "x": "y", "y": "x", "xy": "xy"}
    words = {"1": (0, 0), "x": (1, 0), "y": (0, 1), "xy": (1, 1)}
    inv = {v: k for k, v in words.items()}

    def wmul(a, b):
        wa, wb = words[a], words[b]
        return inv[(wa[0] ^ wb[0], wa[1] ^ wb[1])]

    for g in ("1", "x", "y", "xy"):
        for ex in (1, -1):
            for ey in (1, -1):
                L = kline(h8_incl.K, g, ex, ey)
                Z = z_induce(h8_ictx, L)
                assert verify_yd(Z).ok
                # delta(1 x v) = deg(v) x (1 x v)
                assert list(Z.coaction_terms(0)) == [(h8.label_index(g), 0)]
                # delta(z x v) follows the swapped-degree four-case table
                expected = wmul(swap[g], wcase[(ex, ey)])
                assert list(Z.coaction_terms(1)) == [(h8.label_index(expected), 1)]


def test_z_induce_trivial_inclusion(h8):
    from hopfkit.extension import trivial_inclusion

    ictx = induction_context(trivial_inclusion(h8))
    M = trivial_yd(h8)
    Z = z_induce(ictx, M)
    assert Z.module.action == M.module.action
    assert Z.coaction == M.coaction


def test_z_induce_refuses_non_central():
    uq = small_quantum_sl2(3)
    ictx = induction_context(uq.cartan())
    assert ictx.central is False
    M = trivial_yd(ictx.incl.K)
    with pytest.raises(PipelineError):
        z_induce(ictx, M)


def test_z_induce_module_part_is_induce(h8_ictx):
    L = kline(h8_ictx.incl.K, "x", -1, 1)
    Z = z_induce(h8_ictx, L)
    assert Z.module.action == induce(h8_ictx, L.module).module.action


def test_braided_frobenius_pairs(h8_ictx):
    chars = [kline(h8_ictx.incl.K, "1", ex, ey) for ex in (1, -1) for ey in (1, -1)]
    for a in chars:
        for b in chars:
            rep = verify_braided_frobenius(h8_ictx, a, b)
            assert rep.ok, (a.name, b.name, rep.failures())


def test_braided_frobenius_group_case():
    # C2 = <x> inside the Klein four group: group-algebra central Frobenius extension
    KG = group_algebra(
        [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
        name="kK",
        labels=["1", "x", "y", "xy"],
    )
    sub, embed = subhopf_from_basis(KG, [0, 1], name="kC2")
    incl = HopfInclusion(sub, KG, embed)
    ictx = induction_context(incl)
    assert ictx.central
    lines = [
        yd_line(sub, 0, [1, 1], name="triv"),
        yd_line(sub, 1, [1, -1], name="sgn@x"),
        yd_line(sub, 1, [1, 1], name="1@x"),
    ]
    for a in lines:
        for b in lines:
            rep = verify_braided_frobenius(ictx, a, b)
            assert rep.ok
    # the induced coaction is conjugation by group elements (group-theoretic induction)
    Z = z_induce(ictx, lines[1])
    for col in range(Z.dim):
        terms = Z.coaction_terms(col)
        assert len(terms) == 1  # grouplike coaction


def test_yd_to_double_module():
    C2 = group_algebra(cyclic_table(2), name="kC2")
    D, dincl = drinfeld_double(C2)
    # a graded line over kC2: degree g, sign action
    L = yd_line(C2, 1, [1, -1], name="sgn@g")
    assert verify_yd(L).ok
    M = yd_as_double_module(D, C2, L)
    assert verify_module(M).ok

    # the canonical element reproduces the YD braiding on pairs of lines
    from hopfkit.builders import double_r_matrix
    from hopfkit.exact_math import Cyclotomic

    R = double_r_matrix(C2, D)
    nn = D.dim
    for L1 in (L, yd_line(C2, 1, [1, 1], name="1@g"), yd_line(C2, 0, [1, -1], name="sgn")):
        for L2 in (L, yd_line(C2, 0, [1, 1], name="triv")):
            M1 = yd_as_double_module(D, C2, L1)
            M2 = yd_as_double_module(D, C2, L2)
            conductor = max(D.N, L1.N, L2.N)
            # Psi_R = swap o (R1 . kron R2 .); all carriers are one-dimensional
            acc = Matrix.zeros(1, 1, conductor)
            for key, c in R.items():
                d1, d2 = divmod(key, nn)
                a1 = M1.action[d1].lift(conductor)
                a2 = M2.action[d2].lift(conductor)
                acc = acc + a1.kron(a2).scale(Cyclotomic(D.N, c))
            psi = yd_braiding(L1, L2)
            assert acc.lift(psi.N) == psi.lift(acc.N), (L1.name, L2.name)
