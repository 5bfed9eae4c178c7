"""Exact arithmetic in cyclotomic fields Q(zeta_N) and exact linear algebra.

Scalars are elements of Q(zeta_N) in canonical reduced form, so equality is
coefficient-wise.  Mixed conductors are lifted to the lcm; there is no
automatic conductor minimization.  All values are immutable and all
operations are pure.

The row-reduction engine uses a fraction-free forward pass (cross
multiplication, per-row content stripping) with first-nonzero-pivot
tie-breaking, then back-substitutes to reduced echelon form, so all outputs
are deterministic.
"""

from fractions import Fraction
from math import gcd, lcm

from . import _kernel as K
from .errors import InconsistentSystemError, ShapeError


def _coerce_ratio(value):
    """(p, q) for ints, Fractions and rational strings."""
    if isinstance(value, int):
        return value, 1
    if isinstance(value, Fraction):
        return value.numerator, value.denominator
    raise TypeError("cannot coerce %r to a cyclotomic scalar" % (value,))


class Cyclotomic:
    """An element of Q(zeta_N), canonically reduced mod the N-th cyclotomic polynomial."""

    __slots__ = ("N", "data")
    __hash__ = None  # cross-conductor equality makes hashing unreliable

    def __init__(self, N, data):
        self.N = N
        self.data = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, value, N=1):
        p, q = _coerce_ratio(value if not isinstance(value, Cyclotomic) else 0)
        return cls(N, K.s_from_ratio(K.make_ctx(N), p, q))

    @classmethod
    def from_coeffs(cls, N, fracs):
        ctx = K.make_ctx(N)
        fracs = [Fraction(f) for f in fracs]
        if len(fracs) != ctx[1]:
            raise ShapeError("expected %d coefficients for conductor %d" % (ctx[1], N))
        return cls(N, K.s_from_fractions(ctx, fracs))

    @classmethod
    def promote(cls, value):
        if isinstance(value, Cyclotomic):
            return value
        return cls.rational(value)

    # -- structure ---------------------------------------------------------

    @property
    def conductor(self):
        return self.N

    def coeffs(self):
        """Coefficients over the power basis 1, z, ..., z^(phi(N)-1), as Fractions."""
        return K.s_to_fractions(self.data)

    def is_zero(self):
        return K.s_is_zero(self.data)

    def is_rational(self):
        return K.s_rational_part(self.data) is not None

    def as_fraction(self):
        f = K.s_rational_part(self.data)
        if f is None:
            raise ValueError("%s is not rational" % self)
        return f

    def lift(self, M):
        """The same value viewed in Q(zeta_M); N must divide M."""
        if M == self.N:
            return self
        if M % self.N != 0:
            raise ValueError("conductor %d does not divide %d" % (self.N, M))
        return Cyclotomic(M, K.s_lift(self.data, self.N, M))

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other):
        other = Cyclotomic.promote(other)
        if other.N == self.N:
            return self, other
        M = lcm(self.N, other.N)
        return self.lift(M), other.lift(M)

    def __add__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(a.N, K.s_add(K.make_ctx(a.N), a.data, b.data))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(a.N, K.s_sub(K.make_ctx(a.N), a.data, b.data))

    def __rsub__(self, other):
        return Cyclotomic.promote(other).__sub__(self)

    def __neg__(self):
        return Cyclotomic(self.N, K.s_neg(self.data))

    def __mul__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(a.N, K.s_mul(K.make_ctx(a.N), a.data, b.data))

    __rmul__ = __mul__

    def inverse(self):
        return Cyclotomic(self.N, K.s_inv(K.make_ctx(self.N), self.data))

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.promote(other).__truediv__(self)

    def __pow__(self, k):
        if k < 0:
            return self.inverse().__pow__(-k)
        ctx = K.make_ctx(self.N)
        out = K.s_one(ctx)
        base = self.data
        while k:
            if k & 1:
                out = K.s_mul(ctx, out, base)
            base = K.s_mul(ctx, base, base)
            k >>= 1
        return Cyclotomic(self.N, out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        elif not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._pair(other)
        return a.data == b.data

    # -- formatting --------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return "Cyclotomic(%d, %s)" % (self.N, format_scalar(self))


def root_of_unity(N, k=1):
    """zeta_N**k in canonical reduced form at conductor N."""
    if N < 1:
        raise ValueError("conductor must be positive")
    return Cyclotomic(N, K.zeta_power(K.make_ctx(N), k))


def scalar_invert(a):
    """Inverse of a nonzero scalar; raises ZeroDivisionError on zero."""
    return Cyclotomic.promote(a).inverse()


def format_scalar(a):
    """Render as "p/q" or a sum of "p/q*z^k" terms (z denotes zeta_N)."""
    a = Cyclotomic.promote(a)
    fracs = a.coeffs()
    terms = []
    for k, f in enumerate(fracs):
        if f == 0:
            continue
        num = str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)
        terms.append(num if k == 0 else "%s*z^%d" % (num, k))
    if not terms:
        return "0"
    return " + ".join(terms)


def parse_scalar(text, N):
    """Inverse of format_scalar for a declared conductor N."""
    text = text.strip()
    phi = K.euler_phi(N)
    fracs = [Fraction(0)] * phi
    if text in ("0", "+0", "-0"):
        return Cyclotomic.from_coeffs(N, fracs)
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError("empty term in scalar %r" % text)
        if "*" in term:
            coeff_s, _, pow_s = term.partition("*")
            pow_s = pow_s.strip()
            if pow_s == "z":
                k = 1
            elif pow_s.startswith("z^"):
                k = int(pow_s[2:])
            else:
                raise ValueError("bad power %r in scalar %r" % (pow_s, text))
            coeff = Fraction(coeff_s.strip())
        elif term in ("z",) or term.startswith("z^"):
            coeff = Fraction(1)
            k = 1 if term == "z" else int(term[2:])
        else:
            coeff = Fraction(term)
            k = 0
        if not 0 <= k < phi:
            # allow higher powers of z; fold via multiplication
            extra = root_of_unity(N, k) * Cyclotomic.rational(coeff, N)
            fracs = [f + g for f, g in zip(fracs, extra.coeffs())]
            continue
        fracs[k] += coeff
    return Cyclotomic.from_coeffs(N, fracs)


# ---------------------------------------------------------------------------
# raw helpers (module-internal but shared with the sibling modules)
# ---------------------------------------------------------------------------


def lift_raw(data, N, M):
    return K.s_lift(data, N, M) if N != M else data


def raw_zero(ctx):
    return K.s_zero(ctx)


def raw_one(ctx):
    return K.s_one(ctx)


def mat_mul_raw(A, B, ctx):
    """Product of dense raw matrices (lists of row lists)."""
    if not A or not B:
        return []
    n = len(B)
    m = len(B[0]) if B else 0
    z = K.s_zero(ctx)
    out = []
    for row in A:
        if len(row) != n:
            raise ShapeError("matrix product shape mismatch")
        orow = [z] * m
        for k, a in enumerate(row):
            if K.s_is_zero(a):
                continue
            brow = B[k]
            for j in range(m):
                b = brow[j]
                if not K.s_is_zero(b):
                    orow[j] = K.s_add(ctx, orow[j], K.s_mul(ctx, a, b))
        out.append(orow)
    return out


def mat_vec_raw(A, v, ctx):
    z = K.s_zero(ctx)
    out = [z] * len(A)
    for i, row in enumerate(A):
        acc = z
        for a, x in zip(row, v):
            if not K.s_is_zero(a) and not K.s_is_zero(x):
                acc = K.s_add(ctx, acc, K.s_mul(ctx, a, x))
        out[i] = acc
    return out


def mat_eq_raw(A, B):
    return A == B


def identity_raw(n, ctx):
    z = K.s_zero(ctx)
    o = K.s_one(ctx)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def zeros_raw(r, c, ctx):
    z = K.s_zero(ctx)
    return [[z] * c for _ in range(r)]


def kron_raw(A, B, ctx):
    """Kronecker product with row-major pair indexing (iA*rowsB + iB)."""
    ra = len(A)
    ca = len(A[0]) if ra else 0
    rb = len(B)
    cb = len(B[0]) if rb else 0
    z = K.s_zero(ctx)
    out = [[z] * (ca * cb) for _ in range(ra * rb)]
    for ia in range(ra):
        rowa = A[ia]
        for ja in range(ca):
            a = rowa[ja]
            if K.s_is_zero(a):
                continue
            for ib in range(rb):
                rowb = B[ib]
                orow = out[ia * rb + ib]
                base = ja * cb
                for jb in range(cb):
                    b = rowb[jb]
                    if not K.s_is_zero(b):
                        orow[base + jb] = K.s_mul(ctx, a, b)
    return out


def _row_content_strip(row):
    """Divide an integer-vector row through by the gcd of all numerators."""
    g = 0
    for s in row:
        for c in s[1:]:
            if c:
                g = gcd(g, c)
        if g == 1:
            return row
    if g in (0, 1):
        return row
    return [(s[0],) + tuple(c // g for c in s[1:]) if not K.s_is_zero(s) else s for s in row]


def rref_raw(rows, ctx):
    """In-place reduced row echelon form; returns pivot column list.

    Forward pass is fraction-free (cross multiplication with content
    stripping); pivots are then scaled to one and eliminated upwards.
    First-nonzero-pivot tie-breaking keeps the output deterministic.
    """
    if not rows:
        return []
    nrows = len(rows)
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not K.s_is_zero(rows[i][col]):
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        for i in range(r + 1, nrows):
            a = rows[i][col]
            if K.s_is_zero(a):
                continue
            ri = rows[i]
            rr = rows[r]
            new = [
                K.s_sub(ctx, K.s_mul(ctx, pv, ri[j]), K.s_mul(ctx, a, rr[j]))
                for j in range(ncols)
            ]
            rows[i] = _row_content_strip(new)
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    # back pass: normalize pivots to 1 and clear above
    for k in range(len(pivots) - 1, -1, -1):
        col = pivots[k]
        pv = rows[k][col]
        inv = K.s_inv(ctx, pv)
        rows[k] = [K.s_mul(ctx, inv, s) for s in rows[k]]
        for i in range(k):
            a = rows[i][col]
            if K.s_is_zero(a):
                continue
            rk = rows[k]
            rows[i] = [
                K.s_sub(ctx, rows[i][j], K.s_mul(ctx, a, rk[j])) for j in range(len(rows[i]))
            ]
    return pivots


def nullspace_raw(rows, ncols, ctx):
    """Null-space basis (list of dense raw vectors) of stacked constraint rows.

    Rows are dicts {col: raw} or dense lists; reduction is incremental so very
    tall sparse systems stay cheap.
    """
    space = RowSpace(ncols, ctx)
    for row in rows:
        space.add(row)
    return space.nullspace()


class RowSpace:
    """Incrementally maintained RREF of a set of rows (sparse dict rows)."""

    def __init__(self, ncols, ctx):
        self.ncols = ncols
        self.ctx = ctx
        self.rows = []  # list of dict col->raw, pivot coefficient 1
        self.pivots = []  # sorted pivot columns, parallel to rows

    def reduce(self, vec):
        """Remainder of a sparse vector modulo the row space."""
        ctx = self.ctx
        vec = {c: s for c, s in vec.items() if not K.s_is_zero(s)}
        for piv, row in zip(self.pivots, self.rows):
            a = vec.get(piv)
            if a is None or K.s_is_zero(a):
                continue
            for c, s in row.items():
                cur = vec.get(c)
                delta = K.s_mul(ctx, a, s)
                if cur is None:
                    vec[c] = K.s_neg(delta)
                else:
                    new = K.s_sub(ctx, cur, delta)
                    if K.s_is_zero(new):
                        del vec[c]
                    else:
                        vec[c] = new
        return vec

    def add(self, vec):
        """Insert a row; returns True if the rank grew."""
        if not isinstance(vec, dict):
            vec = {c: s for c, s in enumerate(vec)}
        rem = self.reduce(vec)
        if not rem:
            return False
        ctx = self.ctx
        piv = min(rem)
        inv = K.s_inv(ctx, rem[piv])
        row = {c: K.s_mul(ctx, inv, s) for c, s in rem.items()}
        # clear the new pivot column from existing rows
        for i, r in enumerate(self.rows):
            a = r.get(piv)
            if a is None:
                continue
            new = dict(r)
            for c, s in row.items():
                cur = new.get(c)
                delta = K.s_mul(ctx, a, s)
                if cur is None:
                    new[c] = K.s_neg(delta)
                else:
                    val = K.s_sub(ctx, cur, delta)
                    if K.s_is_zero(val):
                        del new[c]
                    else:
                        new[c] = val
            self.rows[i] = new
        at = 0
        while at < len(self.pivots) and self.pivots[at] < piv:
            at += 1
        self.pivots.insert(at, piv)
        self.rows.insert(at, row)
        return True

    @property
    def rank(self):
        return len(self.rows)

    def contains(self, vec):
        if not isinstance(vec, dict):
            vec = {c: s for c, s in enumerate(vec)}
        return not self.reduce(vec)

    def nullspace(self):
        """Dense raw basis vectors of the solution set of (rows) x = 0."""
        ctx = self.ctx
        z = K.s_zero(ctx)
        o = K.s_one(ctx)
        pivset = set(self.pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            vec = [z] * self.ncols
            vec[free] = o
            for piv, row in zip(self.pivots, self.rows):
                a = row.get(free)
                if a is not None:
                    vec[piv] = K.s_neg(a)
            basis.append(vec)
        return basis


# ---------------------------------------------------------------------------
# public Matrix / SparseTensor
# ---------------------------------------------------------------------------


class LinearSolution:
    """Exact solution set of A x = b: one particular solution + null basis."""

    def __init__(self, particular, null_basis):
        self.particular = particular
        self.null_basis = null_basis

    def __iter__(self):
        yield self.particular
        yield self.null_basis


class Matrix:
    """Immutable dense matrix over a cyclotomic field."""

    __slots__ = ("rows", "cols", "N", "_data")
    __hash__ = None

    def __init__(self, N, data):
        self.N = N
        self._data = tuple(tuple(r) for r in data)
        self.rows = len(self._data)
        self.cols = len(self._data[0]) if self._data else 0
        for r in self._data:
            if len(r) != self.cols:
                raise ShapeError("ragged matrix rows")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, entries):
        vals = [[Cyclotomic.promote(x) for x in row] for row in entries]
        N = 1
        for row in vals:
            for x in row:
                N = lcm(N, x.N)
        return cls(N, [[x.lift(N).data for x in row] for row in vals])

    @classmethod
    def identity(cls, n, N=1):
        return cls(N, identity_raw(n, K.make_ctx(N)))

    @classmethod
    def zeros(cls, r, c, N=1):
        return cls(N, zeros_raw(r, c, K.make_ctx(N)))

    @classmethod
    def column(cls, entries):
        return cls.from_rows([[x] for x in entries])

    # -- access ------------------------------------------------------------

    @property
    def ctx(self):
        return K.make_ctx(self.N)

    def entry(self, i, j):
        return Cyclotomic(self.N, self._data[i][j])

    def raw(self):
        return [list(r) for r in self._data]

    def col_raw(self, j):
        return [r[j] for r in self._data]

    def lift(self, M):
        if M == self.N:
            return self
        return Matrix(M, [[lift_raw(x, self.N, M) for x in row] for row in self._data])

    def _pair(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        M = lcm(self.N, other.N)
        return self.lift(M), other.lift(M)

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        a, b = self._pair(other)
        if a.cols != b.rows:
            raise ShapeError("cannot multiply %dx%d by %dx%d" % (a.rows, a.cols, b.rows, b.cols))
        return Matrix(a.N, mat_mul_raw(a.raw(), b.raw(), a.ctx))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        c = Cyclotomic.promote(c)
        M = lcm(self.N, c.N)
        a = self.lift(M)
        cd = c.lift(M).data
        ctx = a.ctx
        return Matrix(M, [[K.s_mul(ctx, cd, x) for x in row] for row in a._data])

    def __add__(self, other):
        a, b = self._pair(other)
        if (a.rows, a.cols) != (b.rows, b.cols):
            raise ShapeError("matrix addition shape mismatch")
        ctx = a.ctx
        return Matrix(
            a.N,
            [
                [K.s_add(ctx, x, y) for x, y in zip(ra, rb)]
                for ra, rb in zip(a._data, b._data)
            ],
        )

    def __sub__(self, other):
        a, b = self._pair(other)
        if (a.rows, a.cols) != (b.rows, b.cols):
            raise ShapeError("matrix subtraction shape mismatch")
        ctx = a.ctx
        return Matrix(
            a.N,
            [
                [K.s_sub(ctx, x, y) for x, y in zip(ra, rb)]
                for ra, rb in zip(a._data, b._data)
            ],
        )

    def __neg__(self):
        return Matrix(self.N, [[K.s_neg(x) for x in row] for row in self._data])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        a, b = self._pair(other)
        return a._data == b._data

    def transpose(self):
        return Matrix(self.N, [list(col) for col in zip(*self._data)] if self._data else [])

    def kron(self, other):
        a, b = self._pair(other)
        return Matrix(a.N, kron_raw(a.raw(), b.raw(), a.ctx))

    def is_zero(self):
        return all(K.s_is_zero(x) for row in self._data for x in row)

    def is_identity(self):
        if self.rows != self.cols:
            return False
        ctx = self.ctx
        one = K.s_one(ctx)
        for i, row in enumerate(self._data):
            for j, x in enumerate(row):
                if i == j:
                    if x != one:
                        return False
                elif not K.s_is_zero(x):
                    return False
        return True

    def is_scalar_multiple_of_identity(self):
        """The scalar c with self == c*I, or None."""
        if self.rows != self.cols or self.rows == 0:
            return None
        c = self._data[0][0]
        for i, row in enumerate(self._data):
            for j, x in enumerate(row):
                if i == j:
                    if x != c:
                        return None
                elif not K.s_is_zero(x):
                    return None
        return Cyclotomic(self.N, c)

    # -- elimination -------------------------------------------------------

    def rank(self):
        rows = self.raw()
        return len(rref_raw(rows, self.ctx))

    def rref(self):
        rows = self.raw()
        pivots = rref_raw(rows, self.ctx)
        return Matrix(self.N, rows), pivots

    def inverse(self):
        """Exact inverse, or None if singular."""
        if self.rows != self.cols:
            return None
        n = self.rows
        ctx = self.ctx
        aug = [list(row) + identity_raw(n, ctx)[i] for i, row in enumerate(self._data)]
        pivots = rref_raw(aug, ctx)
        if pivots != list(range(n)):
            return None
        return Matrix(self.N, [row[n:] for row in aug])

    def solve(self, rhs):
        """Solve self * x = rhs exactly.

        Returns a LinearSolution (particular solution with free variables set
        to zero, plus a null-space basis of columns); raises
        InconsistentSystemError when no solution exists.
        """
        a, b = self._pair(rhs)
        if b.rows != a.rows:
            raise ShapeError("solve: rhs has %d rows, expected %d" % (b.rows, a.rows))
        ctx = a.ctx
        ncols = a.cols
        aug = [list(ra) + list(rb) for ra, rb in zip(a._data, b._data)]
        pivots = rref_raw(aug, ctx)
        pivots = [p for p in pivots if p < ncols]
        # consistency: no pivot may fall in the rhs block
        for i, row in enumerate(aug):
            if all(K.s_is_zero(x) for x in row[:ncols]) and any(
                not K.s_is_zero(x) for x in row[ncols:]
            ):
                raise InconsistentSystemError("linear system has no solution")
        z = K.s_zero(ctx)
        nrhs = b.cols
        part = [[z] * nrhs for _ in range(ncols)]
        for r, p in enumerate(pivots):
            for j in range(nrhs):
                part[p][j] = aug[r][ncols + j]
        pivset = set(pivots)
        o = K.s_one(ctx)
        null = []
        for free in range(ncols):
            if free in pivset:
                continue
            vec = [z] * ncols
            vec[free] = o
            for r, p in enumerate(pivots):
                x = aug[r][free]
                if not K.s_is_zero(x):
                    vec[p] = K.s_neg(x)
            null.append(Matrix(a.N, [[x] for x in vec]))
        return LinearSolution(Matrix(a.N, part), null)

    def __repr__(self):
        body = "; ".join(
            ", ".join(format_scalar(self.entry(i, j)) for j in range(self.cols))
            for i in range(self.rows)
        )
        return "Matrix(%dx%d over Q(z_%d): %s)" % (self.rows, self.cols, self.N, body)


def solve_linear(A, b):
    """Module-level alias for Matrix.solve (particular + null basis)."""
    return A.solve(b)


def kron(A, B):
    """Kronecker product; (A kron B)(v kron w) = Av kron Bw in row-major pairing."""
    return A.kron(B)


class SparseTensor:
    """Sparse exact tensor: shape plus a map multi-index -> Cyclotomic (no zeros)."""

    __slots__ = ("shape", "N", "entries")
    __hash__ = None

    def __init__(self, shape, entries, N=None):
        self.shape = tuple(shape)
        vals = {}
        conductor = N or 1
        for idx, val in entries.items():
            val = Cyclotomic.promote(val)
            if val.is_zero():
                continue
            idx = tuple(idx)
            if len(idx) != len(self.shape) or any(
                not 0 <= i < d for i, d in zip(idx, self.shape)
            ):
                raise ShapeError("tensor index %r outside shape %r" % (idx, self.shape))
            conductor = lcm(conductor, val.N)
            vals[idx] = val
        self.N = conductor
        self.entries = {idx: v.lift(conductor) for idx, v in sorted(vals.items())}

    @property
    def arity(self):
        return len(self.shape)

    def get(self, idx):
        v = self.entries.get(tuple(idx))
        return v if v is not None else Cyclotomic.rational(0, self.N)

    def items(self):
        return self.entries.items()

    def nnz(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        if self.shape != other.shape:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(self.get(k) == other.get(k) for k in keys)

    def __repr__(self):
        return "SparseTensor(shape=%r, nnz=%d)" % (self.shape, self.nnz())
