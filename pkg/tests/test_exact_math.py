from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfkit.errors import InconsistentSystemError
from hopfkit.exact_math import (
    Cyclotomic,
    Matrix,
    SparseTensor,
    format_scalar,
    kron,
    parse_scalar,
    root_of_unity,
    scalar_invert,
    solve_linear,
)


def test_root_of_unity_identities():
    assert root_of_unity(1, 0) == 1
    assert root_of_unity(4, 2) == -1
    z3 = root_of_unity(3)
    assert z3 + z3 ** 2 == -1  # minimal polynomial x^2 + x + 1
    assert root_of_unity(8) ** 8 == 1
    assert root_of_unity(6) == -root_of_unity(3, 2)


def test_root_of_unity_order_divides_conductor():
    for N in (1, 2, 3, 4, 5, 6, 8, 9, 12):
        z = root_of_unity(N)
        assert z ** N == 1


def test_scalar_invert():
    assert scalar_invert(Cyclotomic.rational(2)) == Fraction(1, 2)
    z8 = root_of_unity(8)
    assert scalar_invert(z8) == z8 ** 7
    # (1 + z3)^(-1) = -z3; frozen from the multiply-back oracle
    z3 = root_of_unity(3)
    a = 1 + z3
    inv = scalar_invert(a)
    assert a * inv == 1
    assert inv == -z3


def test_invert_zero_raises():
    with pytest.raises(ZeroDivisionError):
        scalar_invert(Cyclotomic.rational(0))


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([1, 3, 4, 5, 8]),
    st.lists(st.integers(-9, 9), min_size=3, max_size=3),
    st.lists(st.integers(-9, 9), min_size=3, max_size=3),
    st.lists(st.integers(-9, 9), min_size=3, max_size=3),
)
def test_field_axioms(N, aa, bb, cc):
    def mk(coeffs):
        z = root_of_unity(N)
        return coeffs[0] + coeffs[1] * z + Fraction(coeffs[2], 7) * z * z

    a, b, c = mk(aa), mk(bb), mk(cc)
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    if not a.is_zero():
        assert a * a.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1, 3), (2, 4), (3, 6), (4, 8), (3, 12)]),
       st.lists(st.integers(-5, 5), min_size=2, max_size=2),
       st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_conductor_lift_coherence(pair, aa, bb):
    N, M = pair
    z = root_of_unity(N)
    a = aa[0] + aa[1] * z
    b = bb[0] + bb[1] * z
    # lifting commutes with arithmetic
    assert (a * b).lift(M) == a.lift(M) * b.lift(M)
    assert (a + b).lift(M) == a.lift(M) + b.lift(M)


def test_scalar_parse_format_roundtrip():
    x = Cyclotomic.from_coeffs(8, [Fraction(1, 2), 0, Fraction(-3, 7), 2])
    assert parse_scalar(format_scalar(x), 8) == x
    assert parse_scalar("0", 5).is_zero()
    assert parse_scalar("-2/3", 1) == Fraction(-2, 3)
    # powers beyond phi(N) fold back
    assert parse_scalar("1*z^4", 4) == 1


def test_solve_identity():
    A = Matrix.identity(3)
    sol = solve_linear(A, Matrix.column([1, 2, 3]))
    assert sol.particular == Matrix.column([1, 2, 3])
    assert sol.null_basis == []


def test_solve_zero_matrix():
    Z = Matrix.zeros(2, 2)
    sol = Z.solve(Matrix.column([0, 0]))
    assert sol.particular.is_zero()
    assert len(sol.null_basis) == 2
    with pytest.raises(InconsistentSystemError):
        Z.solve(Matrix.column([1, 0]))


def test_solve_cyclotomic_system():
    i = root_of_unity(4)
    A = Matrix.from_rows([[1, 1], [i, i]])
    b = Matrix.column([1, i])
    sol = A.solve(b)
    # deterministic representative: free variable set to zero
    assert sol.particular == Matrix.column([1, 0])
    assert len(sol.null_basis) == 1
    assert sol.null_basis[0] == Matrix.column([-1, 1])
    # re-substitution oracle
    assert A * sol.particular == b
    for nvec in sol.null_basis:
        assert (A * nvec).is_zero()


def test_kron_identity_and_swap():
    assert kron(Matrix.identity(2), Matrix.identity(3)) == Matrix.identity(6)
    sw = Matrix.from_rows([[0, 1], [1, 0]])
    K = kron(sw, Matrix.identity(2))
    # e0 x e1 (index 1) maps to e1 x e1 (index 3)
    v = Matrix.column([0, 1, 0, 0])
    assert K * v == Matrix.column([0, 0, 0, 1])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_kron_rank_multiplicative(av, bv):
    A = Matrix.from_rows([av[:2], av[2:]])
    B = Matrix.from_rows([bv[:2], bv[2:]])
    assert kron(A, B).rank() == A.rank() * B.rank()


def test_kron_associative():
    i = root_of_unity(4)
    A = Matrix.from_rows([[1, i], [0, 2]])
    B = Matrix.from_rows([[i, 1]])
    C = Matrix.from_rows([[2], [i]])
    assert kron(kron(A, B), C) == kron(A, kron(B, C))


def test_matrix_inverse():
    i = root_of_unity(4)
    B = Matrix.from_rows([[1, 1], [0, i]])
    assert (B.inverse() * B).is_identity()
    singular = Matrix.from_rows([[1, 1], [i, i]])
    assert singular.inverse() is None


def test_sparse_tensor():
    t = SparseTensor((2, 2, 2), {(0, 1, 1): 1, (1, 0, 0): root_of_unity(4)})
    assert t.nnz() == 2
    assert t.get((0, 0, 0)).is_zero()
    t2 = SparseTensor((2, 2, 2), {(1, 0, 0): root_of_unity(4), (0, 1, 1): Fraction(1)})
    assert t == t2


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.integers(-4, 4), min_size=6, max_size=6),
    st.lists(st.integers(-4, 4), min_size=2, max_size=2),
)
def test_solve_resubstitutes(av, bv):
    z = root_of_unity(3)
    A = Matrix.from_rows([[av[0] + av[1] * z, av[2]], [av[3], av[4] + av[5] * z]])
    b = Matrix.column([bv[0], bv[1] * z])
    try:
        sol = A.solve(b)
    except InconsistentSystemError:
        # certify inconsistency: the rank grows when b is adjoined
        aug = Matrix.from_rows(
            [[A.entry(i, 0), A.entry(i, 1), b.entry(i, 0)] for i in range(2)]
        )
        assert aug.rank() == A.rank() + 1
        return
    assert A * sol.particular == b
    for nvec in sol.null_basis:
        assert (A * nvec).is_zero()
    assert len(sol.null_basis) == 2 - A.rank()
