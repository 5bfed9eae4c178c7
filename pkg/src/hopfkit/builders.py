"""Constructors for the example Hopf algebras and inclusions.

All builders produce exact structure constants.  Where an algebra is
presented by generators and relations (Kac-Paljutkin, Taft, small quantum
sl2, Drinfeld doubles), the tensors are computed constructively from the
generator relations: products of basis monomials are normalized by repeated
application of the defining rewrite rules, and coproducts/antipodes of
monomials are obtained by multiplying out the generator images inside the
tensor-square algebra.  verify_hopf then certifies the result.
"""

from fractions import Fraction

from . import _kernel as K
from .errors import HopfkitError
from .exact_math import Cyclotomic, Matrix, root_of_unity
from .extension import HopfInclusion
from .hopf_core import FinHopf, subhopf_from_basis

# ---------------------------------------------------------------------------
# group algebras
# ---------------------------------------------------------------------------


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def product_table(t1, t2):
    n1, n2 = len(t1), len(t2)
    n = n1 * n2
    out = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for a2 in range(n2):
            for b1 in range(n1):
                for b2 in range(n2):
                    out[a1 * n2 + a2][b1 * n2 + b2] = t1[a1][b1] * n2 + t2[a2][b2]
    return out


def klein_table():
    return product_table(cyclic_table(2), cyclic_table(2))


def _check_group(table):
    n = len(table)
    for row in table:
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise HopfkitError("multiplication table is not square over 0..n-1")
    # identity
    e = None
    for i in range(n):
        if all(table[i][j] == j for j in range(n)) and all(table[j][i] == j for j in range(n)):
            e = i
            break
    if e is None:
        raise HopfkitError("table has no identity element")
    # associativity and inverses
    for a in range(n):
        if e not in table[a]:
            raise HopfkitError("element %d has no inverse" % a)
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise HopfkitError("table is not associative at (%d,%d,%d)" % (a, b, c))
    return e


def group_algebra(table, name="kG", labels=None, conductor=1):
    """The group algebra of a finite group given by its multiplication table."""
    e = _check_group(table)
    if e != 0:
        raise HopfkitError("identity must be element 0 of the table")
    n = len(table)
    labels = labels or ["g%d" % i for i in range(n)]
    mult = {(i, j, table[i][j]): 1 for i in range(n) for j in range(n)}
    comult = {(i, i, i): 1 for i in range(n)}
    unit = [1 if i == 0 else 0 for i in range(n)]
    counit = [1] * n
    inv = [table[i].index(0) for i in range(n)]
    S = Matrix.from_rows([[1 if i == inv[j] else 0 for j in range(n)] for i in range(n)])
    return FinHopf.from_tensors(name, labels, mult, unit, comult, counit, S, conductor=conductor)


def trivial_hopf(conductor=1):
    """The ground field as a one-dimensional Hopf algebra."""
    return group_algebra(cyclic_table(1), name="k", labels=["1"], conductor=conductor)


# ---------------------------------------------------------------------------
# Kac-Paljutkin algebra H8
# ---------------------------------------------------------------------------

_H8_WORDS = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
_H8_LABELS = ["1", "x", "y", "z", "xy", "xz", "yz", "xyz"]
_H8_INDEX = {w: i for i, w in enumerate(_H8_WORDS)}


def _h8_mult_word(w1, w2):
    """Product of two normal-form words x^a y^b z^c, as {basis index: Fraction}."""
    a, b, c = w1
    a2, b2, c2 = w2
    if c == 0:
        aa, bb, cc = (a ^ a2, b ^ b2, c2)
        return {_H8_INDEX[(aa, bb, cc)]: Fraction(1)}
    # z x^a2 y^b2 = x^b2 y^a2 z
    aa, bb = a ^ b2, b ^ a2
    if c2 == 0:
        return {_H8_INDEX[(aa, bb, 1)]: Fraction(1)}
    # z^2 = (1 + x + y - xy)/2
    half = Fraction(1, 2)
    out = {}
    for (da, db), sign in (((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), -1)):
        idx = _H8_INDEX[(aa ^ da, bb ^ db, 0)]
        out[idx] = out.get(idx, Fraction(0)) + sign * half
    return {i: v for i, v in out.items() if v}


def kac_paljutkin():
    """The 8-dimensional Kac-Paljutkin algebra and the Klein-four inclusion.

    Relations: x^2 = y^2 = 1, xy = yx, zx = yz, zy = xz,
    z^2 = (1 + x + y - xy)/2, with Delta(x) = x x x, Delta(y) = y x y and
    Delta(z) = (1x1 + 1xx + yx1 - yxx)(zxz)/2; eps(x) = eps(y) = eps(z) = 1;
    S fixes x, y and z (S swaps the x/y exponents on words containing z).
    """
    n = 8
    mult = {}
    for i, w1 in enumerate(_H8_WORDS):
        for j, w2 in enumerate(_H8_WORDS):
            for k2, v in _h8_mult_word(w1, w2).items():
                mult[(i, j, k2)] = v

    # Delta(z) = 1/2 (z x z + z x xz + yz x z - yz x xz)
    dz = {
        (_H8_INDEX[(0, 0, 1)], _H8_INDEX[(0, 0, 1)]): Fraction(1, 2),
        (_H8_INDEX[(0, 0, 1)], _H8_INDEX[(1, 0, 1)]): Fraction(1, 2),
        (_H8_INDEX[(0, 1, 1)], _H8_INDEX[(0, 0, 1)]): Fraction(1, 2),
        (_H8_INDEX[(0, 1, 1)], _H8_INDEX[(1, 0, 1)]): Fraction(-1, 2),
    }
    comult = {}
    for i, (a, b, c) in enumerate(_H8_WORDS):
        g = _H8_INDEX[(a, b, 0)]
        if c == 0:
            comult[(i, g, g)] = Fraction(1)
        else:
            # (g x g) * Delta(z), multiplied out in each tensor leg
            for (p, q), v in dz.items():
                for p2, vp in _h8_mult_word(_H8_WORDS[g], _H8_WORDS[p]).items():
                    for q2, vq in _h8_mult_word(_H8_WORDS[g], _H8_WORDS[q]).items():
                        key = (i, p2, q2)
                        comult[key] = comult.get(key, Fraction(0)) + v * vp * vq
    comult = {k2: v for k2, v in comult.items() if v}

    unit = [1, 0, 0, 0, 0, 0, 0, 0]
    counit = [1] * 8
    Srows = [[0] * 8 for _ in range(8)]
    for j, (a, b, c) in enumerate(_H8_WORDS):
        img = _H8_INDEX[(b, a, 1)] if c else j
        Srows[img][j] = 1
    S = Matrix.from_rows(Srows)
    H8 = FinHopf.from_tensors("H8", _H8_LABELS, mult, unit, comult, counit, S)

    Kk, embed = subhopf_from_basis(H8, [0, 1, 2, 4], name="kK")
    return H8, HopfInclusion(Kk, H8, embed)


# ---------------------------------------------------------------------------
# Taft algebras
# ---------------------------------------------------------------------------


def taft(l, q_power=1):
    """The Taft algebra T_l(q) with q = zeta_l^q_power, and kC_l -> T_l(q).

    Basis g^a x^b; relations g^l = 1, x^l = 0, g x = q x g;
    Delta(g) = g x g, Delta(x) = x x 1 + g x x.
    """
    if l < 2:
        raise HopfkitError("Taft algebra needs l >= 2")
    from math import gcd

    if gcd(q_power, l) != 1:
        raise HopfkitError("q = zeta_%d^%d is not a primitive root of unity" % (l, q_power))
    ctx = K.make_ctx(l)
    q = [K.zeta_power(ctx, (q_power * t) % l) for t in range(l)]
    n = l * l

    def idx(a, b):
        return a * l + b

    labels = []
    for a in range(l):
        for b in range(l):
            if a == 0 and b == 0:
                labels.append("1")
            else:
                la = ("g^%d" % a if a > 1 else "g") if a else ""
                lb = ("x^%d" % b if b > 1 else "x") if b else ""
                labels.append(la + lb)

    mult = [[] for _ in range(n * n)]
    for a in range(l):
        for b in range(l):
            for a2 in range(l):
                for b2 in range(l):
                    if b + b2 >= l:
                        continue
                    # x^b g^a2 = q^(-a2 b) g^a2 x^b
                    s = q[(-a2 * b) % l]
                    mult[idx(a, b) * n + idx(a2, b2)].append((idx((a + a2) % l, b + b2), s))

    one = K.s_one(ctx)

    def mult_vec(u, v):
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                cij = K.s_mul(ctx, ci, cj)
                for k2, s in mult[i * n + j]:
                    t = K.s_mul(ctx, cij, s)
                    prev = out.get(k2)
                    if prev is None:
                        out[k2] = t
                    else:
                        t = K.s_add(ctx, prev, t)
                        if K.s_is_zero(t):
                            del out[k2]
                        else:
                            out[k2] = t
        return out

    def t_mult(u, v):
        out = {}
        for x1, c1 in u.items():
            i1, j1 = divmod(x1, n)
            for x2, c2 in v.items():
                i2, j2 = divmod(x2, n)
                c = K.s_mul(ctx, c1, c2)
                for p, sp in mult[i1 * n + i2]:
                    csp = K.s_mul(ctx, c, sp)
                    for q2, sq in mult[j1 * n + j2]:
                        t = K.s_mul(ctx, csp, sq)
                        key = p * n + q2
                        prev = out.get(key)
                        if prev is None:
                            out[key] = t
                        else:
                            t = K.s_add(ctx, prev, t)
                            if K.s_is_zero(t):
                                del out[key]
                            else:
                                out[key] = t
        return out

    dg = {idx(1, 0) * n + idx(1, 0): one}
    dx = {idx(0, 1) * n + idx(0, 0): one, idx(1, 0) * n + idx(0, 1): one}
    delta = [None] * n
    delta[idx(0, 0)] = {idx(0, 0) * n + idx(0, 0): one}
    for a in range(l):
        for b in range(l):
            if a == 0 and b == 0:
                continue
            if a > 0:
                delta[idx(a, b)] = t_mult(dg, delta[idx(a - 1, b)])
            else:
                delta[idx(a, b)] = t_mult(delta[idx(a, b - 1)], dx) if b > 1 else dx

    comult = {}
    for i in range(n):
        for x, s in delta[i].items():
            comult[(i, x // n, x % n)] = Cyclotomic(l, s)

    # S(g) = g^(l-1), S(x) = -g^(l-1) x, extended anti-multiplicatively
    sg = {idx(l - 1, 0): one}
    sx = {idx(l - 1, 1): K.s_neg(one)}
    Scols = []
    for a in range(l):
        for b in range(l):
            w = {idx(0, 0): one}
            for _ in range(b):
                w = mult_vec(w, sx)
            for _ in range(a):
                w = mult_vec(w, sg)
            Scols.append({i: s for i, s in w.items()})

    mult_d = {}
    for a in range(l):
        for b in range(l):
            for a2 in range(l):
                for b2 in range(l):
                    for k2, s in mult[idx(a, b) * n + idx(a2, b2)]:
                        mult_d[(idx(a, b), idx(a2, b2), k2)] = Cyclotomic(l, s)
    unit = [1 if i == 0 else 0 for i in range(n)]
    counit = [1 if (i % l) == 0 else 0 for i in range(n)]
    z = K.s_zero(ctx)
    Srows = [[z] * n for _ in range(n)]
    for j, col in enumerate(Scols):
        for i, s in col.items():
            Srows[i][j] = s
    S = Matrix(l, Srows)
    T = FinHopf.from_tensors(
        "T%d(z^%d)" % (l, q_power), labels, mult_d, unit, comult, counit, S, conductor=l
    )
    Kk, embed = subhopf_from_basis(T, [idx(a, 0) for a in range(l)], name="kC%d" % l)
    return T, HopfInclusion(Kk, T, embed)


# ---------------------------------------------------------------------------
# small quantum sl2
# ---------------------------------------------------------------------------


class SmallQuantumSL2:
    """u_eps(sl2) at an odd root of unity, with Hopf-subalgebra selectors."""

    def __init__(self, l, hopf):
        self.l = l
        self.hopf = hopf

    def _indices(self, with_e, with_f, sigma_full=True):
        l = self.l
        out = []
        for j in range(l if with_f else 1):
            for m in range(l if sigma_full else 1):
                for i in range(l if with_e else 1):
                    out.append((j * l + m) * l + i)
        return out

    def subalgebra(self, i_plus, i_minus, name=None):
        """u_eps(Sigma, I+, I-) for Sigma = <k> and I+, I- subsets of {1}."""
        idxs = self._indices(bool(i_plus), bool(i_minus))
        label = name or "u%d(K,%s,%s)" % (
            self.l,
            "{1}" if i_plus else "{}",
            "{1}" if i_minus else "{}",
        )
        sub, embed = subhopf_from_basis(self.hopf, idxs, name=label)
        return HopfInclusion(sub, self.hopf, embed)

    def cartan(self):
        return self.subalgebra(False, False, name="kC%d" % self.l)

    def borel_plus(self):
        return self.subalgebra(True, False, name="borel+%d" % self.l)

    def borel_minus(self):
        return self.subalgebra(False, True, name="borel-%d" % self.l)


def small_quantum_sl2(l):
    """Build u_eps(sl2), dim l^3, from the generator relations.

    Conventions (recorded in the bundle header): q = zeta_l,
    k e k^-1 = q^2 e, k f k^-1 = q^-2 f, [e,f] = (k - k^-1)/(q - q^-1),
    e^l = f^l = 0, k^l = 1, Delta(e) = 1 x e + e x k,
    Delta(f) = k^-1 x f + f x 1, Delta(k) = k x k,
    S(e) = -e k^-1, S(f) = -k f, S(k) = k^-1.
    PBW basis f^j k^m e^i ordered by (j, m, i).
    """
    if l < 3 or l % 2 == 0:
        raise HopfkitError("small_quantum_sl2 needs odd l >= 3")
    ctx = K.make_ctx(l)
    n = l ** 3
    q = [K.zeta_power(ctx, t % l) for t in range(l)]

    def idx(j, m, i):
        return (j * l + m) * l + i

    one = K.s_one(ctx)
    z = K.s_zero(ctx)

    def vset(out, key, val):
        prev = out.get(key)
        if prev is None:
            if not K.s_is_zero(val):
                out[key] = val
        else:
            val = K.s_add(ctx, prev, val)
            if K.s_is_zero(val):
                del out[key]
            else:
                out[key] = val

    def vaccum(out, vec, coeff=None):
        for k2, s in vec.items():
            vset(out, k2, s if coeff is None else K.s_mul(ctx, coeff, s))

    # left multiplication by generators on PBW monomials
    def L_f(vec):
        out = {}
        for t, c in vec.items():
            j, rest = divmod(t, l * l)
            if j + 1 < l:
                vset(out, t + l * l, c)
        return out

    def L_k(vec):
        out = {}
        for t, c in vec.items():
            j, rest = divmod(t, l * l)
            m, i = divmod(rest, l)
            if m + 1 < l:
                t2 = idx(j, m + 1, i)
            else:
                t2 = idx(j, 0, i)
            vset(out, t2, K.s_mul(ctx, c, q[(-2 * j) % l]))
        return out

    def L_k_inv(vec):
        out = {}
        for t, c in vec.items():
            j, rest = divmod(t, l * l)
            m, i = divmod(rest, l)
            t2 = idx(j, (m - 1) % l, i)
            vset(out, t2, K.s_mul(ctx, c, q[(2 * j) % l]))
        return out

    # (q - q^-1)^-1
    qm = K.s_sub(ctx, q[1], q[l - 1])
    qm_inv = K.s_inv(ctx, qm)

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def e_times(t):
        """e * (basis monomial t), as a sparse dict."""
        j, rest = divmod(t, l * l)
        m, i = divmod(rest, l)
        if j == 0:
            if i + 1 == l:
                return {}
            # e k^m = q^(-2m) k^m e
            return {idx(0, m, i + 1): K.s_mul(ctx, one, q[(-2 * m) % l])}
        # e f = f e + (k - k^-1)/(q - q^-1)
        rest_mon = idx(j - 1, m, i)
        out = {}
        sub = e_times(rest_mon)
        vaccum(out, L_f(sub))
        corr = {}
        vaccum(corr, L_k({rest_mon: one}))
        neg = {}
        vaccum(neg, L_k_inv({rest_mon: one}))
        for k2, s in neg.items():
            vset(corr, k2, K.s_neg(s))
        for k2, s in corr.items():
            vset(out, k2, K.s_mul(ctx, qm_inv, s))
        return out

    def L_e(vec):
        out = {}
        for t, c in vec.items():
            vaccum(out, e_times(t), c)
        return out

    # multiplication tensor: e_a * e_b with e_a = f^j k^m e^i
    mult = [None] * (n * n)
    for b in range(n):
        cur_e = {b: one}
        for i in range(l):
            cur_k = cur_e
            for m in range(l):
                cur_f = cur_k
                for j in range(l):
                    a = idx(j, m, i)
                    mult[a * n + b] = tuple(sorted(cur_f.items()))
                    if j + 1 < l:
                        cur_f = L_f(cur_f)
                if m + 1 < l:
                    cur_k = L_k(cur_k)
            if i + 1 < l:
                cur_e = L_e(cur_e)
    mult = tuple(mult)

    def mult_vec(u, v):
        out = {}
        for i1, c1 in u.items():
            for j1, c2 in v.items():
                c = K.s_mul(ctx, c1, c2)
                for k2, s in mult[i1 * n + j1]:
                    vset(out, k2, K.s_mul(ctx, c, s))
        return out

    def t_mult(u, v):
        out = {}
        for x1, c1 in u.items():
            i1, j1 = divmod(x1, n)
            for x2, c2 in v.items():
                i2, j2 = divmod(x2, n)
                c = K.s_mul(ctx, c1, c2)
                for p, sp in mult[i1 * n + i2]:
                    csp = K.s_mul(ctx, c, sp)
                    for q2, sq in mult[j1 * n + j2]:
                        vset(out, p * n + q2, K.s_mul(ctx, csp, sq))
        return out

    e_1 = idx(0, 0, 0)
    e_e = idx(0, 0, 1)
    e_f = idx(1, 0, 0)
    e_k = idx(0, 1, 0)
    e_kinv = idx(0, l - 1, 0)

    d_e = {e_1 * n + e_e: one, e_e * n + e_k: one}
    d_f = {e_kinv * n + e_f: one, e_f * n + e_1: one}
    d_k = {e_k * n + e_k: one}

    delta = [None] * n
    delta[e_1] = {e_1 * n + e_1: one}
    for j in range(l):
        for m in range(l):
            for i in range(l):
                t = idx(j, m, i)
                if t == e_1:
                    continue
                if j > 0:
                    delta[t] = t_mult(d_f, delta[idx(j - 1, m, i)])
                elif m > 0:
                    delta[t] = t_mult(d_k, delta[idx(0, m - 1, i)])
                else:
                    delta[t] = t_mult(delta[idx(0, 0, i - 1)], d_e) if i > 1 else d_e
    comult_rows = tuple(tuple(sorted(d.items())) for d in delta)

    # antipode: S(f^j k^m e^i) = S(e)^i S(k)^m S(f)^j, with
    # S(e) = -e k^-1 and S(f) = -k f computed through the product
    Se = mult_vec({e_e: K.s_neg(one)}, {e_kinv: one})
    Sf = mult_vec({e_k: K.s_neg(one)}, {e_f: one})
    Sk = {e_kinv: one}
    Scols = []
    for j in range(l):
        for m in range(l):
            for i in range(l):
                w = {e_1: one}
                for _ in range(i):
                    w = mult_vec(w, Se)
                for _ in range(m):
                    w = mult_vec(w, Sk)
                for _ in range(j):
                    w = mult_vec(w, Sf)
                Scols.append(tuple(sorted(w.items())))

    unit = tuple(one if t == e_1 else z for t in range(n))
    counit = []
    for j in range(l):
        for m in range(l):
            for i in range(l):
                counit.append(one if i == 0 and j == 0 else z)
    labels = []
    for j in range(l):
        for m in range(l):
            for i in range(l):
                parts = []
                if j:
                    parts.append("f^%d" % j if j > 1 else "f")
                if m:
                    parts.append("k^%d" % m if m > 1 else "k")
                if i:
                    parts.append("e^%d" % i if i > 1 else "e")
                labels.append("".join(parts) or "1")

    hopf = FinHopf(
        "u%d(sl2)" % l,
        labels,
        l,
        mult,
        unit,
        comult_rows,
        tuple(counit),
        tuple(Scols),
        convention="kassel: Delta(e)=1xe+exk, Delta(f)=k^-1xf+fx1, ke=q^2ek",
    )
    return SmallQuantumSL2(l, hopf)


# ---------------------------------------------------------------------------
# Drinfeld double
# ---------------------------------------------------------------------------


def drinfeld_double(H):
    """The Drinfeld double Drin(H) on H* x H, and the inclusion H -> Drin(H).

    Multiplication (f x h)(f' x h') = f (h_(1) -> f' <- S^-1(h_(3))) x h_(2) h',
    coproduct Delta(f x h) = (f_(2) x h_(1)) x (f_(1) x h_(2)),
    where (h -> f)(a) = f(a h) and (f <- h)(a) = f(h a).
    """
    from .hopf_core import antipode_inverse, dual_hopf

    n = H.dim
    ctx = H.ctx
    N = H.N
    Hd = dual_hopf(H)
    Sinv = antipode_inverse(H)
    nn = n * n

    one = K.s_one(ctx)

    def vset(out, key, val):
        prev = out.get(key)
        if prev is None:
            if not K.s_is_zero(val):
                out[key] = val
        else:
            val = K.s_add(ctx, prev, val)
            if K.s_is_zero(val):
                del out[key]
            else:
                out[key] = val

    sinv_cols = []
    for r in range(n):
        col = {i: Sinv._data[i][r] for i in range(n) if not K.s_is_zero(Sinv._data[i][r])}
        sinv_cols.append(col)

    # sandwich[r][p]: matrix over (c', u): coeff_{c'}( S^-1(e_r) e_u e_p )
    sandwich = {}

    def sandwich_vec(r, p, u):
        key = (r, p)
        got = sandwich.get(key)
        if got is None:
            got = {}
            sandwich[key] = got
        if u in got:
            return got[u]
        w = H.mult_vec(H.mult_vec(sinv_cols[r], H.basis_vec(u)), H.basis_vec(p))
        got[u] = w
        return w

    mult = [None] * (nn * nn)
    for c in range(n):
        fc = {c: one}
        for d in range(n):
            d2 = H.comult2(d)
            for cp in range(n):
                # middle functional per Delta^2 term
                mid_total = {}
                for (p, qq, r), s in d2:
                    # phi_u = f_cp( S^-1(e_r) e_u e_p ); phi = sum_u phi_u f_u
                    phi = {}
                    for u in range(n):
                        w = sandwich_vec(r, p, u)
                        cu = w.get(cp)
                        if cu is not None and not K.s_is_zero(cu):
                            phi[u] = cu
                    if not phi:
                        continue
                    left = Hd.mult_vec(fc, phi)
                    for uu, cl in left.items():
                        cls = K.s_mul(ctx, cl, s)
                        vset(mid_total, uu * n + qq, cls)
                for dp in range(n):
                    row = {}
                    for key, cval in mid_total.items():
                        uu, qq = divmod(key, n)
                        for k2, s2 in H.mult[qq * n + dp]:
                            vset(row, uu * n + k2, K.s_mul(ctx, cval, s2))
                    mult[(c * n + d) * nn + (cp * n + dp)] = tuple(sorted(row.items()))
    mult = tuple(mult)

    comult = [None] * nn
    for c in range(n):
        for d in range(n):
            acc = {}
            for xf, sf in Hd.comult[c]:
                u, v = divmod(xf, n)
                for xh, sh in H.comult[d]:
                    h1, h2 = divmod(xh, n)
                    # (f_(2) x h_(1)) x (f_(1) x h_(2))
                    key = (v * n + h1) * nn + (u * n + h2)
                    vset(acc, key, K.s_mul(ctx, sf, sh))
            comult[c * n + d] = tuple(sorted(acc.items()))
    comult = tuple(comult)

    unit = []
    for c in range(n):
        for d in range(n):
            unit.append(K.s_mul(ctx, H.counit[c], H.unit[d]))
    counit = []
    for c in range(n):
        for d in range(n):
            counit.append(K.s_mul(ctx, H.unit[c], H.counit[d]))

    def mult_vec_D(u, v):
        out = {}
        for i1, c1 in u.items():
            for j1, c2 in v.items():
                c3 = K.s_mul(ctx, c1, c2)
                for k2, s in mult[i1 * nn + j1]:
                    vset(out, k2, K.s_mul(ctx, c3, s))
        return out

    # S_D(f_c x e_d) = (eps x S(e_d)) * (f_c o S^-1 x 1)
    eps_coords = {c: H.counit[c] for c in range(n) if not K.s_is_zero(H.counit[c])}
    unit_coords = {d: H.unit[d] for d in range(n) if not K.s_is_zero(H.unit[d])}
    Scols = []
    for c in range(n):
        # f_c o S^-1 has dual coords u -> Sinv[c][u]
        fcs = {u: Sinv._data[c][u] for u in range(n) if not K.s_is_zero(Sinv._data[c][u])}
        for d in range(n):
            sd = H.antipode_vec(H.basis_vec(d))
            left = {}
            for ce, vi in eps_coords.items():
                for dh, vh in sd.items():
                    vset(left, ce * n + dh, K.s_mul(ctx, vi, vh))
            right = {}
            for cu, vu in fcs.items():
                for du, vd in unit_coords.items():
                    vset(right, cu * n + du, K.s_mul(ctx, vu, vd))
            Scols.append(tuple(sorted(mult_vec_D(left, right).items())))

    labels = []
    for c in range(n):
        for d in range(n):
            labels.append("d:%s|%s" % (H.basis_labels[c], H.basis_labels[d]))

    D = FinHopf(
        "Drin(%s)" % H.name,
        labels,
        N,
        mult,
        tuple(unit),
        comult,
        tuple(counit),
        tuple(Scols),
        convention="double: (fxh)(f'xh') = f (h1->f'<-S^-1 h3) x h2 h'",
    )

    z = K.s_zero(ctx)
    embed_rows = [[z] * n for _ in range(nn)]
    for d in range(n):
        for c in range(n):
            if not K.s_is_zero(H.counit[c]):
                embed_rows[c * n + d][d] = H.counit[c]
    embed = Matrix(N, embed_rows)
    return D, HopfInclusion(H, D, embed)


def double_r_matrix(H, D):
    """The canonical element sum_c (f_c x 1) x (eps x e_c) of Drin(H)^{x2}."""
    n = H.dim
    ctx = H.ctx
    nn = n * n
    out = {}
    for c in range(n):
        left = {}
        for u in range(n):
            if not K.s_is_zero(H.unit[u]):
                left[c * n + u] = H.unit[u]
        right = {}
        for v in range(n):
            if not K.s_is_zero(H.counit[v]):
                right[v * n + c] = H.counit[v]
        for i, a in left.items():
            for j, b in right.items():
                key = i * nn + j
                prev = out.get(key)
                val = K.s_mul(ctx, a, b)
                out[key] = val if prev is None else K.s_add(ctx, prev, val)
    return out


# ---------------------------------------------------------------------------
# Cartan row-sum combinatorics
# ---------------------------------------------------------------------------

_FINITE_TYPES = ("A", "B", "C", "D", "E", "F", "G")


def cartan_matrix(type_label, rank):
    """Standard finite-type Cartan matrix (B_n: last simple root short)."""
    t = type_label.upper()
    r = rank
    if t not in _FINITE_TYPES:
        raise HopfkitError("unknown Cartan type %r" % type_label)
    if t == "A" and r >= 1:
        pass
    elif t == "B" and r >= 2:
        pass
    elif t == "C" and r >= 2:
        pass
    elif t == "D" and r >= 4:
        pass
    elif t == "E" and r in (6, 7, 8):
        pass
    elif t == "F" and r == 4:
        pass
    elif t == "G" and r == 2:
        pass
    else:
        raise HopfkitError("invalid rank %d for type %s" % (rank, t))

    C = [[2 if i == j else 0 for j in range(r)] for i in range(r)]

    def edge(i, j, a=1, b=1):
        C[i][j] = -a
        C[j][i] = -b

    if t in ("A", "B", "C"):
        for i in range(r - 1):
            edge(i, i + 1)
        if t == "B":
            edge(r - 2, r - 1, 2, 1)
        elif t == "C":
            edge(r - 2, r - 1, 1, 2)
    elif t == "D":
        for i in range(r - 2):
            edge(i, i + 1)
        edge(r - 3, r - 1)
    elif t == "G":
        edge(0, 1, 1, 3)
    elif t == "F":
        edge(0, 1)
        edge(1, 2, 2, 1)
        edge(2, 3)
    elif t == "E":
        # chain 0-1-2-3-...(r-2), with node r-1 attached to node 2
        for i in range(r - 2):
            edge(i, i + 1)
        edge(2, r - 1)
    return C


class CartanDatum:
    """A finite-type Cartan matrix plus the root-of-unity modulus and sign data."""

    __slots__ = ("type_label", "rank", "C", "l", "J")

    def __init__(self, type_label, rank, l, J=()):
        self.type_label = type_label.upper()
        self.rank = rank
        self.C = cartan_matrix(type_label, rank)
        self.l = l
        self.J = tuple(sorted(set(J)))
        if any(not 0 <= j < rank for j in self.J):
            raise HopfkitError("sign subset J out of range")

    def signed_matrix(self, J=None):
        J = set(self.J if J is None else J)
        return [
            [(-v if j in J else v) for j, v in enumerate(row)]
            for row in self.C
        ]


class CartanRowSumReport:
    __slots__ = ("datum", "part_i_all_zero", "part_ii_exists", "witness")

    def __init__(self, datum, part_i_all_zero, part_ii_exists, witness):
        self.datum = datum
        self.part_i_all_zero = part_i_all_zero
        self.part_ii_exists = part_ii_exists
        self.witness = witness

    @property
    def all_zero_rowsums_exist(self):
        return self.part_ii_exists

    def __repr__(self):
        return "CartanRowSumReport(%s%d, l=%d, part_i=%s, part_ii=%s, witness=%r)" % (
            self.datum.type_label,
            self.datum.rank,
            self.datum.l,
            self.part_i_all_zero,
            self.part_ii_exists,
            self.witness,
        )


def cartan_row_sum_check(datum):
    """Row sums of C (and of all sign-twisted C_J) modulo l.

    part_i_all_zero: True iff all row sums of C vanish mod l.
    part_ii_exists: True iff some sign subset J makes all row sums of C_J
    vanish mod l, with the first such J as witness.
    """
    l = datum.l
    C = datum.C
    r = datum.rank
    part_i = all(sum(row) % l == 0 for row in C)
    witness = None
    for mask in range(1 << r):
        J = [j for j in range(r) if mask >> j & 1]
        CJ = datum.signed_matrix(J)
        if all(sum(row) % l == 0 for row in CJ):
            witness = tuple(J)
            break
    return CartanRowSumReport(datum, part_i, witness is not None, witness)


def unimodularity_scan_sl2(l):
    """is_unimodular over the four (I+, I-) subsets of {1}^2 with Sigma = <k>.

    Returns a list of dicts; 'expected' is the prediction I+ == I- (meaningful
    for l > 3, where the converse direction of the classification applies).
    """
    from .hopf_core import is_unimodular

    uq = small_quantum_sl2(l)
    out = []
    for i_plus in (False, True):
        for i_minus in (False, True):
            if not i_plus and not i_minus:
                sub = uq.cartan().K
            elif i_plus and not i_minus:
                sub = uq.borel_plus().K
            elif not i_plus and i_minus:
                sub = uq.borel_minus().K
            else:
                sub = uq.hopf
            uni = is_unimodular(sub)
            out.append(
                {
                    "I+": {1} if i_plus else set(),
                    "I-": {1} if i_minus else set(),
                    "dim": sub.dim,
                    "unimodular": uni,
                    "expected": i_plus == i_minus,
                }
            )
    return out
