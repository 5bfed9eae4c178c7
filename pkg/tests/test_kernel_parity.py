"""The compiled kernel must agree bit-for-bit with the pure-Python one."""

import random
from fractions import Fraction

import pytest

from hopfkit._kernel import IMPLEMENTATIONS, make_ctx, s_from_fractions

pure = IMPLEMENTATIONS["pure"]
compiled = IMPLEMENTATIONS.get("compiled")

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernel not built")


def _random_scalar(rng, ctx, big=False):
    phi = ctx[1]
    scale = 10 ** 25 if big else 40
    return s_from_fractions(
        ctx,
        [Fraction(rng.randint(-scale, scale), rng.randint(1, 12)) for _ in range(phi)],
    )


@needs_compiled
@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 7, 8, 9, 12, 16])
def test_scalar_ops_agree(N):
    rng = random.Random(N)
    ctx = make_ctx(N)
    for trial in range(200):
        big = trial % 7 == 0
        a = _random_scalar(rng, ctx, big)
        b = _random_scalar(rng, ctx, big)
        assert pure.s_mul(ctx, a, b) == compiled.s_mul(ctx, a, b)
        assert pure.s_add(ctx, a, b) == compiled.s_add(ctx, a, b)
        assert pure.s_sub(ctx, a, b) == compiled.s_sub(ctx, a, b)
        assert pure.s_neg(a) == compiled.s_neg(a)
        assert pure.s_is_zero(a) == compiled.s_is_zero(a)


@needs_compiled
def test_scan_functions_agree(h8, taft3, uq3):
    for H in (h8, taft3[0], uq3.hopf):
        ctx = H.ctx
        n = H.dim
        assert pure.assoc_first_defect(n, H.mult, ctx) == compiled.assoc_first_defect(n, H.mult, ctx)
        assert pure.bialg_first_defect(n, H.mult, H.comult, ctx) == compiled.bialg_first_defect(
            n, H.mult, H.comult, ctx
        )
        assert pure.coassoc_first_defect(n, H.comult, ctx) == compiled.coassoc_first_defect(
            n, H.comult, ctx
        )


@needs_compiled
def test_scan_defect_witness_agrees(h8):
    # break associativity in a copy of the mult tensor and compare witnesses
    mult = list(h8.mult)
    one = (1, 1)
    mult[3 * 8 + 3] = tuple(list(mult[3 * 8 + 3])[:-1])  # drop a term of z*z
    mult = tuple(mult)
    ctx = h8.ctx
    w1 = pure.assoc_first_defect(8, mult, ctx)
    w2 = compiled.assoc_first_defect(8, mult, ctx)
    assert w1 == w2 and w1 is not None
