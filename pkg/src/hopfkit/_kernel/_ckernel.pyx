# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _pykernel.

Same canonical scalar representation (tuples of Python ints) and bit-identical
results.  Small-integer inputs take an int64 fast path; anything that might
overflow falls back to the pure-Python implementation entry-wise.
"""

from . import _pykernel as pyk

KERNEL_NAME = "compiled"

cdef long long FAST_BOUND = 1 << 24

cdef long long c_gcd(long long a, long long b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef bint to_c(tuple a, long long* buf, int n):
    cdef int i
    cdef object v
    cdef long long x
    for i in range(n):
        v = a[i]
        if not isinstance(v, int):
            return False
        try:
            x = v
        except OverflowError:
            return False
        if x >= FAST_BOUND or x <= -FAST_BOUND:
            return False
        buf[i] = x
    return True


cdef tuple from_c(long long* buf, int n):
    cdef int i
    out = []
    for i in range(n):
        out.append(buf[i])
    return tuple(out)


cdef tuple _norm_c(long long den, long long* coeffs, int phi):
    cdef long long g = 0
    cdef int i
    for i in range(phi):
        if coeffs[i] != 0:
            g = c_gcd(g, coeffs[i])
    if g == 0:
        return (1,) + (0,) * phi
    g = c_gcd(g, den)
    if den < 0:
        g = -g
    cdef long long buf[66]
    buf[0] = den // g
    for i in range(phi):
        buf[i + 1] = coeffs[i] // g
    return from_c(buf, phi + 1)


def s_add(ctx, a, b):
    cdef int phi = len(a) - 1
    cdef long long abuf[66]
    cdef long long bbuf[66]
    cdef long long out[65]
    cdef int i
    if phi > 64 or not to_c(a, abuf, phi + 1) or not to_c(b, bbuf, phi + 1):
        return pyk.s_add(ctx, a, b)
    cdef long long da = abuf[0], db = bbuf[0]
    if da == db:
        for i in range(phi):
            out[i] = abuf[i + 1] + bbuf[i + 1]
        return _norm_c(da, out, phi)
    for i in range(phi):
        out[i] = abuf[i + 1] * db + bbuf[i + 1] * da
    return _norm_c(da * db, out, phi)


def s_sub(ctx, a, b):
    cdef int phi = len(a) - 1
    cdef long long abuf[66]
    cdef long long bbuf[66]
    cdef long long out[65]
    cdef int i
    if phi > 64 or not to_c(a, abuf, phi + 1) or not to_c(b, bbuf, phi + 1):
        return pyk.s_sub(ctx, a, b)
    cdef long long da = abuf[0], db = bbuf[0]
    if da == db:
        for i in range(phi):
            out[i] = abuf[i + 1] - bbuf[i + 1]
        return _norm_c(da, out, phi)
    for i in range(phi):
        out[i] = abuf[i + 1] * db - bbuf[i + 1] * da
    return _norm_c(da * db, out, phi)


def s_neg(a):
    return pyk.s_neg(a)


def s_is_zero(a):
    for c in a[1:]:
        if c:
            return False
    return True


cdef tuple mul_c(ctx, tuple a, tuple b):
    """Fast multiply, or None when the fast path does not apply."""
    cdef int phi = len(a) - 1
    cdef long long abuf[66]
    cdef long long bbuf[66]
    cdef long long raw[130]
    cdef long long rbuf[66]
    cdef int i, j, deg
    cdef long long c
    # reduction can cascade, so the fast path is limited to small degrees and
    # small cyclotomic-polynomial coefficients (true for every conductor used
    # at desk scale); anything else falls back to exact Python ints
    if phi > 8 or not to_c(a, abuf, phi + 1) or not to_c(b, bbuf, phi + 1):
        return None
    if phi == 1:
        raw[0] = abuf[1] * bbuf[1]
        return _norm_c(abuf[0] * bbuf[0], raw, 1)
    red = ctx[2]
    for i in range(2 * phi - 1):
        raw[i] = 0
    for i in range(phi):
        c = abuf[i + 1]
        if c != 0:
            for j in range(phi):
                if bbuf[j + 1] != 0:
                    raw[i + j] += c * bbuf[j + 1]
    for deg in range(2 * phi - 2, phi - 1, -1):
        c = raw[deg]
        if c != 0:
            row = red[deg - phi]
            if not to_c(row, rbuf, phi):
                return None
            for j in range(phi):
                if rbuf[j] > 4 or rbuf[j] < -4:
                    return None
                if rbuf[j] != 0:
                    raw[j] += c * rbuf[j]
    return _norm_c(abuf[0] * bbuf[0], raw, phi)


def s_mul(ctx, a, b):
    out = mul_c(ctx, a, b)
    if out is None:
        return pyk.s_mul(ctx, a, b)
    return out


cdef inline object acc_add(ctx, dict acc, object key, tuple val):
    prev = acc.get(key)
    if prev is None:
        acc[key] = val
    else:
        acc[key] = s_add(ctx, prev, val)
    return None


cdef inline object acc_sub(ctx, dict acc, object key, tuple val):
    prev = acc.get(key)
    if prev is None:
        acc[key] = pyk.s_neg(val)
    else:
        acc[key] = s_sub(ctx, prev, val)
    return None


cdef bint dict_nonzero(dict acc):
    for v in acc.values():
        if not s_is_zero(v):
            return True
    return False


def assoc_first_defect(int n, mult, ctx):
    cdef int a, b, c
    cdef dict acc
    for a in range(n):
        for b in range(n):
            rab = mult[a * n + b]
            for c in range(n):
                acc = {}
                for k_s in rab:
                    k = <int> k_s[0]
                    s = k_s[1]
                    for m_t in mult[k * n + c]:
                        acc_add(ctx, acc, m_t[0], s_mul(ctx, s, m_t[1]))
                for m_t in mult[b * n + c]:
                    m = <int> m_t[0]
                    t = m_t[1]
                    for p_u in mult[a * n + m]:
                        acc_sub(ctx, acc, p_u[0], s_mul(ctx, t, p_u[1]))
                if dict_nonzero(acc):
                    return (a, b, c)
    return None


def bialg_first_defect(int n, mult, comult, ctx):
    cdef int a, b, j1, k1, j2, k2, p
    cdef dict acc
    for a in range(n):
        da = comult[a]
        for b in range(n):
            db = comult[b]
            acc = {}
            for x1_s1 in da:
                j1 = (<int> x1_s1[0]) // n
                k1 = (<int> x1_s1[0]) - j1 * n
                s1 = x1_s1[1]
                for x2_s2 in db:
                    j2 = (<int> x2_s2[0]) // n
                    k2 = (<int> x2_s2[0]) - j2 * n
                    s12 = s_mul(ctx, s1, x2_s2[1])
                    r2 = mult[k1 * n + k2]
                    for p_u in mult[j1 * n + j2]:
                        p = <int> p_u[0]
                        su = s_mul(ctx, s12, p_u[1])
                        for q_v in r2:
                            acc_add(ctx, acc, p * n + (<int> q_v[0]), s_mul(ctx, su, q_v[1]))
            for k3_s3 in mult[a * n + b]:
                s3 = k3_s3[1]
                for x_t in comult[<int> k3_s3[0]]:
                    acc_sub(ctx, acc, x_t[0], s_mul(ctx, s3, x_t[1]))
            if dict_nonzero(acc):
                return (a, b)
    return None


def coassoc_first_defect(int n, comult, ctx):
    cdef int i, j, k
    cdef long long nn = n * n
    cdef dict acc
    for i in range(n):
        acc = {}
        for x_s in comult[i]:
            j = (<int> x_s[0]) // n
            k = (<int> x_s[0]) - j * n
            s = x_s[1]
            for y_t in comult[j]:
                acc_add(ctx, acc, (<long long> (<int> y_t[0])) * n + k, s_mul(ctx, s, y_t[1]))
            for y_t in comult[k]:
                acc_sub(ctx, acc, j * nn + (<int> y_t[0]), s_mul(ctx, s, y_t[1]))
        if dict_nonzero(acc):
            return i
    return None
