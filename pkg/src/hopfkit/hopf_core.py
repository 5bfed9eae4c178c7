"""Finite-dimensional Hopf algebras as exact structure-constant tensors.

A FinHopf stores the multiplication and comultiplication as sparse tensors
over a cyclotomic field, the unit and counit as exact vectors, and the
antipode as a matrix.  Axiom verification is exhaustive over basis tuples;
the pairwise tensor contractions run in the selected arithmetic kernel.
All instances are immutable after construction and all operations are pure.
"""

from math import lcm

from . import _kernel as K
from .errors import HopfkitError, PipelineError, ShapeError, SingularAntipodeError
from .exact_math import (
    Cyclotomic,
    Matrix,
    RowSpace,
    SparseTensor,
    lift_raw,
    rref_raw,
)
from .reports import Report


def _to_raw(value, ctx):
    v = Cyclotomic.promote(value)
    if v.N == ctx[0]:
        return v.data
    if ctx[0] % v.N != 0:
        raise ShapeError("scalar conductor %d does not divide %d" % (v.N, ctx[0]))
    return K.s_lift(v.data, v.N, ctx[0])


class LinearFunctional:
    """Exact covector on the basis of a FinHopf (or of a quotient coalgebra)."""

    __slots__ = ("N", "values")
    __hash__ = None

    def __init__(self, N, values):
        self.N = N
        self.values = tuple(values)

    @classmethod
    def from_values(cls, values, N=None):
        vals = [Cyclotomic.promote(v) for v in values]
        conductor = N or 1
        for v in vals:
            conductor = lcm(conductor, v.N)
        return cls(conductor, [v.lift(conductor).data for v in vals])

    @property
    def dim(self):
        return len(self.values)

    def lift(self, M):
        if M == self.N:
            return self
        return LinearFunctional(M, [lift_raw(v, self.N, M) for v in self.values])

    def value(self, i):
        return Cyclotomic(self.N, self.values[i])

    def __call__(self, vec):
        """Apply to a sparse dict {index: raw} over the same conductor."""
        ctx = K.make_ctx(self.N)
        acc = K.s_zero(ctx)
        for i, a in vec.items():
            if not K.s_is_zero(a):
                acc = K.s_add(ctx, acc, K.s_mul(ctx, self.values[i], a))
        return acc

    def scale(self, c):
        c = Cyclotomic.promote(c)
        M = lcm(self.N, c.N)
        me = self.lift(M)
        ctx = K.make_ctx(M)
        cd = c.lift(M).data
        return LinearFunctional(M, [K.s_mul(ctx, cd, v) for v in me.values])

    def as_row(self):
        return Matrix(self.N, [list(self.values)])

    def __eq__(self, other):
        if not isinstance(other, LinearFunctional):
            return NotImplemented
        M = lcm(self.N, other.N)
        return self.lift(M).values == other.lift(M).values

    def is_proportional(self, other):
        """c with self == c*other (c may be zero), or None if not proportional."""
        M = lcm(self.N, other.N)
        a = self.lift(M).values
        b = other.lift(M).values
        ctx = K.make_ctx(M)
        c = None
        for x, y in zip(a, b):
            if K.s_is_zero(y):
                if not K.s_is_zero(x):
                    return None
                continue
            ratio = K.s_mul(ctx, x, K.s_inv(ctx, y))
            if c is None:
                c = ratio
            elif c != ratio:
                return None
        if c is None:
            c = K.s_zero(ctx)
        return Cyclotomic(M, c)

    def __repr__(self):
        return "LinearFunctional(%s)" % (", ".join(str(self.value(i)) for i in range(self.dim)))


class FinHopf:
    """A finite-dimensional Hopf algebra given by exact structure constants."""

    __slots__ = (
        "name",
        "dim",
        "basis_labels",
        "N",
        "mult",
        "unit",
        "comult",
        "counit",
        "antipode_cols",
        "convention",
        "_cache",
    )

    def __init__(self, name, basis_labels, N, mult, unit, comult, counit, antipode_cols, convention=""):
        self.name = name
        self.basis_labels = tuple(basis_labels)
        self.dim = len(self.basis_labels)
        self.N = N
        self.mult = mult
        self.unit = unit
        self.comult = comult
        self.counit = counit
        self.antipode_cols = antipode_cols
        self.convention = convention
        self._cache = {}

    # -- construction ------------------------------------------------------

    @classmethod
    def from_tensors(cls, name, basis_labels, mult, unit, comult, counit, antipode, conductor=1, convention=""):
        """Build from mappings {(i,j,k): scalar}, vectors and an antipode Matrix."""
        n = len(basis_labels)
        N = conductor
        if isinstance(mult, SparseTensor):
            mult = dict(mult.items())
        if isinstance(comult, SparseTensor):
            comult = dict(comult.items())
        vals = list(mult.values()) + list(comult.values()) + list(unit) + list(counit)
        for v in vals:
            N = lcm(N, Cyclotomic.promote(v).N)
        if isinstance(antipode, Matrix):
            N = lcm(N, antipode.N)
        ctx = K.make_ctx(N)
        mrows = [[] for _ in range(n * n)]
        for (i, j, k), v in mult.items():
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise ShapeError("mult index out of range: %r" % ((i, j, k),))
            raw = _to_raw(v, ctx)
            if not K.s_is_zero(raw):
                mrows[i * n + j].append((k, raw))
        crows = [[] for _ in range(n)]
        for (i, j, k), v in comult.items():
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise ShapeError("comult index out of range: %r" % ((i, j, k),))
            raw = _to_raw(v, ctx)
            if not K.s_is_zero(raw):
                crows[i].append((j * n + k, raw))
        if len(unit) != n or len(counit) != n:
            raise ShapeError("unit/counit length mismatch")
        uvec = tuple(_to_raw(v, ctx) for v in unit)
        cvec = tuple(_to_raw(v, ctx) for v in counit)
        if isinstance(antipode, Matrix):
            if antipode.rows != n or antipode.cols != n:
                raise ShapeError("antipode must be %dx%d" % (n, n))
            A = antipode.lift(N)
            cols = []
            for j in range(n):
                col = []
                for i in range(n):
                    raw = A._data[i][j]
                    if not K.s_is_zero(raw):
                        col.append((i, raw))
                cols.append(tuple(col))
        else:
            cols = [tuple((i, _to_raw(v, ctx)) for i, v in sorted(col.items())) for col in antipode]
        return cls(
            name,
            basis_labels,
            N,
            tuple(tuple(sorted(row)) for row in mrows),
            uvec,
            tuple(tuple(sorted(row)) for row in crows),
            cvec,
            tuple(cols),
            convention=convention,
        )

    # -- views -------------------------------------------------------------

    @property
    def conductor(self):
        return self.N

    @property
    def ctx(self):
        return K.make_ctx(self.N)

    def mult_tensor(self):
        n = self.dim
        entries = {}
        for i in range(n):
            for j in range(n):
                for k, s in self.mult[i * n + j]:
                    entries[(i, j, k)] = Cyclotomic(self.N, s)
        return SparseTensor((n, n, n), entries, N=self.N)

    def comult_tensor(self):
        n = self.dim
        entries = {}
        for i in range(n):
            for x, s in self.comult[i]:
                entries[(i, x // n, x % n)] = Cyclotomic(self.N, s)
        return SparseTensor((n, n, n), entries, N=self.N)

    def unit_vector(self):
        return Matrix(self.N, [[v] for v in self.unit])

    def counit_functional(self):
        return LinearFunctional(self.N, self.counit)

    def antipode_matrix(self):
        got = self._cache.get("S_matrix")
        if got is None:
            n = self.dim
            ctx = self.ctx
            z = K.s_zero(ctx)
            data = [[z] * n for _ in range(n)]
            for j, col in enumerate(self.antipode_cols):
                for i, s in col:
                    data[i][j] = s
            got = Matrix(self.N, data)
            self._cache["S_matrix"] = got
        return got

    def lifted(self, M):
        """The same Hopf algebra with scalars re-expressed at conductor M."""
        if M == self.N:
            return self
        if M % self.N != 0:
            raise ShapeError("conductor %d does not divide %d" % (self.N, M))
        key = ("lift", M)
        got = self._cache.get(key)
        if got is None:
            N = self.N
            got = FinHopf(
                self.name,
                self.basis_labels,
                M,
                tuple(tuple((k, lift_raw(s, N, M)) for k, s in row) for row in self.mult),
                tuple(lift_raw(s, N, M) for s in self.unit),
                tuple(tuple((x, lift_raw(s, N, M)) for x, s in row) for row in self.comult),
                tuple(lift_raw(s, N, M) for s in self.counit),
                tuple(tuple((i, lift_raw(s, N, M)) for i, s in col) for col in self.antipode_cols),
                convention=self.convention,
            )
            self._cache[key] = got
        return got

    def label_index(self, label):
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise KeyError("no basis label %r in %s" % (label, self.name)) from None

    # -- sparse-vector calculus --------------------------------------------

    def basis_vec(self, i):
        return {i: K.s_one(self.ctx)}

    def unit_vec(self):
        ctx = self.ctx
        return {i: v for i, v in enumerate(self.unit) if not K.s_is_zero(v)}

    def mult_vec(self, u, v):
        """Product of two sparse vectors {index: raw}."""
        ctx = self.ctx
        n = self.dim
        mult = self.mult
        out = {}
        for i, a in u.items():
            if K.s_is_zero(a):
                continue
            base = i * n
            for j, b in v.items():
                if K.s_is_zero(b):
                    continue
                ab = K.s_mul(ctx, a, b)
                for k, s in mult[base + j]:
                    t = K.s_mul(ctx, ab, s)
                    prev = out.get(k)
                    if prev is None:
                        out[k] = t
                    else:
                        t = K.s_add(ctx, prev, t)
                        if K.s_is_zero(t):
                            del out[k]
                        else:
                            out[k] = t
        return out

    def comult_vec(self, u):
        """Coproduct of a sparse vector, keys flattened as j*dim + k."""
        ctx = self.ctx
        out = {}
        for i, a in u.items():
            if K.s_is_zero(a):
                continue
            for x, s in self.comult[i]:
                t = K.s_mul(ctx, a, s)
                prev = out.get(x)
                if prev is None:
                    out[x] = t
                else:
                    t = K.s_add(ctx, prev, t)
                    if K.s_is_zero(t):
                        del out[x]
                    else:
                        out[x] = t
        return out

    def comult2(self, i):
        """Cached (Delta x id)Delta(e_i) as tuple of ((a,b,c), raw)."""
        key = ("comult2", i)
        got = self._cache.get(key)
        if got is None:
            ctx = self.ctx
            n = self.dim
            acc = {}
            for x, s in self.comult[i]:
                a, b = divmod(x, n)
                for y, t in self.comult[a]:
                    a1, a2 = divmod(y, n)
                    st = K.s_mul(ctx, s, t)
                    kk = (a1, a2, b)
                    prev = acc.get(kk)
                    acc[kk] = st if prev is None else K.s_add(ctx, prev, st)
            got = tuple(sorted((kk, v) for kk, v in acc.items() if not K.s_is_zero(v)))
            self._cache[key] = got
        return got

    def antipode_vec(self, u):
        ctx = self.ctx
        out = {}
        for j, a in u.items():
            if K.s_is_zero(a):
                continue
            for i, s in self.antipode_cols[j]:
                t = K.s_mul(ctx, a, s)
                prev = out.get(i)
                if prev is None:
                    out[i] = t
                else:
                    t = K.s_add(ctx, prev, t)
                    if K.s_is_zero(t):
                        del out[i]
                    else:
                        out[i] = t
        return out

    def counit_raw(self, u):
        ctx = self.ctx
        acc = K.s_zero(ctx)
        for i, a in u.items():
            acc = K.s_add(ctx, acc, K.s_mul(ctx, self.counit[i], a))
        return acc

    def __repr__(self):
        return "FinHopf(%s, dim=%d, conductor=%d)" % (self.name, self.dim, self.N)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def _check_shapes(H):
    n = H.dim
    if len(H.mult) != n * n or len(H.comult) != n:
        raise ShapeError("structure tensor arity mismatch for %s" % H.name)
    if len(H.unit) != n or len(H.counit) != n or len(H.antipode_cols) != n:
        raise ShapeError("unit/counit/antipode size mismatch for %s" % H.name)
    for row in H.mult:
        for k, _ in row:
            if not 0 <= k < n:
                raise ShapeError("mult output index %d out of range" % k)
    for row in H.comult:
        for x, _ in row:
            if not 0 <= x < n * n:
                raise ShapeError("comult output index %d out of range" % x)


def verify_hopf(H):
    """Exhaustive check of all Hopf axioms; failures carry the first witness."""
    _check_shapes(H)
    n = H.dim
    ctx = H.ctx
    rep = Report("verify-hopf %s" % H.name)

    w = K.assoc_first_defect(n, H.mult, ctx)
    rep.add("mult-associative", w is None, witness=w, anchor="hopf-axioms")

    unit = H.unit_vec()
    w = None
    for i in range(n):
        left = H.mult_vec(unit, H.basis_vec(i))
        right = H.mult_vec(H.basis_vec(i), unit)
        ei = H.basis_vec(i)
        if left != ei or right != ei:
            w = i
            break
    rep.add("mult-unital", w is None, witness=w, anchor="hopf-axioms")

    w = K.coassoc_first_defect(n, H.comult, ctx)
    rep.add("comult-coassociative", w is None, witness=w, anchor="hopf-axioms")

    w = None
    for i in range(n):
        lacc = {}
        racc = {}
        for x, s in H.comult[i]:
            j, k = divmod(x, n)
            lt = K.s_mul(ctx, H.counit[j], s)
            rt = K.s_mul(ctx, H.counit[k], s)
            if not K.s_is_zero(lt):
               lacc[k] = K.s_add(ctx, lacc.get(k, K.s_zero(ctx)), lt)
            if not K.s_is_zero(rt):
               racc[j] = K.s_add(ctx, racc.get(j, K.s_zero(ctx)), rt)
        ei = H.basis_vec(i)
        if _vec_clean(lacc) != ei or _vec_clean(racc) != ei:
            w = i
            break
    rep.add("comult-counital", w is None, witness=w, anchor="hopf-axioms")

    w = K.bialg_first_defect(n, H.mult, H.comult, ctx)
    rep.add("comult-multiplicative", w is None, witness=w, anchor="bialgebra")

    du = H.comult_vec(unit)
    uu = _tensor_sq(H, unit, unit)
    rep.add("comult-of-unit", du == uu, anchor="bialgebra")

    w = None
    for i in range(n):
        for j in range(n):
            acc = K.s_zero(ctx)
            for k, s in H.mult[i * n + j]:
                acc = K.s_add(ctx, acc, K.s_mul(ctx, H.counit[k], s))
            if acc != K.s_mul(ctx, H.counit[i], H.counit[j]):
                w = (i, j)
                break
        if w:
            break
    rep.add("counit-multiplicative", w is None, witness=w, anchor="bialgebra")
    rep.add("counit-of-unit", H.counit_raw(unit) == K.s_one(ctx), anchor="bialgebra")

    w_left = w_right = None
    for i in range(n):
        eps_u = _vec_scale(H, unit, H.counit[i])
        lacc = {}
        racc = {}
        for x, s in H.comult[i]:
            j, k = divmod(x, n)
            sj = H.antipode_vec({j: s})
            _vec_accum(H, lacc, H.mult_vec(sj, H.basis_vec(k)))
            sk = H.antipode_vec({k: s})
            _vec_accum(H, racc, H.mult_vec({j: K.s_one(ctx)}, sk))
        if w_left is None and _vec_clean(lacc) != eps_u:
            w_left = i
        if w_right is None and _vec_clean(racc) != eps_u:
            w_right = i
        if w_left is not None and w_right is not None:
            break
    rep.add("antipode-left", w_left is None, witness=w_left, anchor="antipode-axiom")
    rep.add("antipode-right", w_right is None, witness=w_right, anchor="antipode-axiom")

    S = H.antipode_matrix()
    rep.add("antipode-invertible", S.inverse() is not None, anchor="antipode-axiom")
    return rep


def _vec_clean(v):
    return {k: s for k, s in v.items() if not K.s_is_zero(s)}


def _vec_scale(H, v, c):
    ctx = H.ctx
    if K.s_is_zero(c):
        return {}
    return {k: K.s_mul(ctx, c, s) for k, s in v.items()}


def _vec_accum(H, acc, v):
    ctx = H.ctx
    for k, s in v.items():
        prev = acc.get(k)
        if prev is None:
            acc[k] = s
        else:
            t = K.s_add(ctx, prev, s)
            if K.s_is_zero(t):
                del acc[k]
            else:
                acc[k] = t


def _tensor_sq(H, u, v):
    ctx = H.ctx
    n = H.dim
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            t = K.s_mul(ctx, a, b)
            if not K.s_is_zero(t):
                out[i * n + j] = t
    return out


def antipode_inverse(H):
    """S^{-1} as an exact matrix; raises SingularAntipodeError if singular."""
    got = H._cache.get("S_inv")
    if got is None:
        inv = H.antipode_matrix().inverse()
        if inv is None:
            raise SingularAntipodeError("antipode of %s is singular" % H.name)
        H._cache["S_inv"] = inv
        got = inv
    return got


def antipode_inverse_vec(H, u):
    inv = antipode_inverse(H)
    ctx = H.ctx
    out = {}
    for j, a in u.items():
        col = inv.col_raw(j)
        for i in range(H.dim):
            s = col[i]
            if K.s_is_zero(s):
                continue
            t = K.s_mul(ctx, a, s)
            prev = out.get(i)
            out[i] = t if prev is None else K.s_add(ctx, prev, t)
    return _vec_clean(out)


def dual_hopf(H):
    """The dual Hopf algebra on the dual basis (tensors transposed)."""
    n = H.dim
    dual_mult = [[] for _ in range(n * n)]
    for k in range(n):
        for x, s in H.comult[k]:
            dual_mult[x].append((k, s))
    dual_comult = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, s in H.mult[i * n + j]:
                dual_comult[k].append((i * n + j, s))
    dual_cols = [[] for _ in range(n)]
    for i, col in enumerate(H.antipode_cols):
        for j, s in col:
            dual_cols[j].append((i, s))
    return FinHopf(
        H.name + "*",
        tuple("d:%s" % l for l in H.basis_labels),
        H.N,
        tuple(tuple(sorted(r)) for r in dual_mult),
        tuple(H.counit),
        tuple(tuple(sorted(r)) for r in dual_comult),
        tuple(H.unit),
        tuple(tuple(sorted(c)) for c in dual_cols),
        convention=H.convention,
    )


def _normalize_first_one(ctx, vec):
    for v in vec:
        if not K.s_is_zero(v):
            inv = K.s_inv(ctx, v)
            return [K.s_mul(ctx, inv, x) for x in vec]
    return list(vec)


def _integral_rows(H, side):
    """Constraint rows for the integral space, yielded sparsely."""
    n = H.dim
    ctx = H.ctx
    for j in range(n):
        eps_j = H.counit[j]
        rows = [dict() for _ in range(n)]
        for i in range(n):
            pair = i * n + j if side == "right" else j * n + i
            for k, s in H.mult[pair]:
                prev = rows[k].get(i)
                rows[k][i] = s if prev is None else K.s_add(ctx, prev, s)
        if not K.s_is_zero(eps_j):
            for i in range(n):
                prev = rows[i].get(i, K.s_zero(ctx))
                val = K.s_sub(ctx, prev, eps_j)
                if K.s_is_zero(val):
                    rows[i].pop(i, None)
                else:
                    rows[i][i] = val
        for r in rows:
            if r:
                yield r


def integral_space(H, side):
    """Exact basis of left or right integrals, first coordinate normalized to 1."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    key = ("integrals", side)
    got = H._cache.get(key)
    if got is None:
        space = RowSpace(H.dim, H.ctx)
        for row in _integral_rows(H, side):
            space.add(row)
        basis = [_normalize_first_one(H.ctx, v) for v in space.nullspace()]
        got = [Matrix(H.N, [[x] for x in vec]) for vec in basis]
        H._cache[key] = got
    return got


def right_integral_element(H):
    basis = integral_space(H, "right")
    if len(basis) != 1:
        raise PipelineError(
            "right integral space of %s has dimension %d, expected 1" % (H.name, len(basis))
        )
    return basis[0]


def distinguished_grouplike(H):
    """The algebra map alpha with a*Lambda = alpha(a)*Lambda for the right integral."""
    got = H._cache.get("alpha")
    if got is not None:
        return got
    Lam = right_integral_element(H)
    ctx = H.ctx
    lam_vec = {i: Lam._data[i][0] for i in range(H.dim) if not K.s_is_zero(Lam._data[i][0])}
    pivot = min(lam_vec)  # normalized so lam_vec[pivot] == 1
    values = []
    for a in range(H.dim):
        w = H.mult_vec(H.basis_vec(a), lam_vec)
        alpha_a = w.get(pivot, K.s_zero(ctx))
        if _vec_clean(w) != _vec_clean(_vec_scale(H, lam_vec, alpha_a)):
            raise PipelineError("left action on the right integral of %s is not scalar" % H.name)
        values.append(alpha_a)
    alpha = LinearFunctional(H.N, values)
    _assert_algebra_map(H, alpha, "distinguished grouplike")
    H._cache["alpha"] = alpha
    return alpha


def _assert_algebra_map(H, f, what):
    ctx = H.ctx
    n = H.dim
    if f(H.unit_vec()) != K.s_one(ctx):
        raise PipelineError("%s of %s does not send 1 to 1" % (what, H.name))
    for i in range(n):
        fi = f.values[i]
        for j in range(n):
            acc = K.s_zero(ctx)
            for k, s in H.mult[i * n + j]:
                acc = K.s_add(ctx, acc, K.s_mul(ctx, f.values[k], s))
            if acc != K.s_mul(ctx, fi, f.values[j]):
                raise PipelineError(
                    "%s of %s is not an algebra map at (%d,%d)" % (what, H.name, i, j)
                )


def is_unimodular(H):
    """True iff the spaces of left and right integrals coincide."""
    left = integral_space(H, "left")
    right = integral_space(H, "right")
    if len(left) != len(right):
        return False
    space = RowSpace(H.dim, H.ctx)
    for v in right:
        space.add({i: v._data[i][0] for i in range(H.dim)})
    return all(space.contains({i: v._data[i][0] for i in range(H.dim)}) for v in left)


def right_integral_of_dual(H):
    """Right integral lambda of H* as a functional on H (not materializing H*)."""
    got = H._cache.get("dual_right_integral")
    if got is not None:
        return got
    n = H.dim
    ctx = H.ctx
    space = RowSpace(n, ctx)
    # lambda(h_(1)) h_(2) = lambda(h) 1 for all basis h
    for i in range(n):
        rows = [dict() for _ in range(n)]
        for x, s in H.comult[i]:
            j, k = divmod(x, n)
            prev = rows[k].get(j)
            rows[k][j] = s if prev is None else K.s_add(ctx, prev, s)
        for k in range(n):
            u = H.unit[k]
            if not K.s_is_zero(u):
                prev = rows[k].get(i, K.s_zero(ctx))
                val = K.s_sub(ctx, prev, u)
                if K.s_is_zero(val):
                    rows[k].pop(i, None)
                else:
                    rows[k][i] = val
        for r in rows:
            if r:
                space.add(r)
    basis = space.nullspace()
    if len(basis) != 1:
        raise PipelineError(
            "right integral space of %s* has dimension %d, expected 1" % (H.name, len(basis))
        )
    lam = LinearFunctional(H.N, _normalize_first_one(ctx, basis[0]))
    H._cache["dual_right_integral"] = lam
    return lam


def is_dual_unimodular(H):
    """True iff lambda(h_(1)) h_(2) == h_(1) lambda(h_(2)) for the dual right integral."""
    lam = right_integral_of_dual(H)
    n = H.dim
    ctx = H.ctx
    for i in range(n):
        left = {}
        right = {}
        for x, s in H.comult[i]:
            j, k = divmod(x, n)
            lt = K.s_mul(ctx, lam.values[j], s)
            if not K.s_is_zero(lt):
                left[k] = K.s_add(ctx, left.get(k, K.s_zero(ctx)), lt)
            rt = K.s_mul(ctx, lam.values[k], s)
            if not K.s_is_zero(rt):
                right[j] = K.s_add(ctx, right.get(j, K.s_zero(ctx)), rt)
        if _vec_clean(left) != _vec_clean(right):
            return False
    return True


def subhopf_from_basis(H, indices, name=None):
    """The Hopf subalgebra spanned by the given basis indices.

    The span must be closed under multiplication, comultiplication, unit and
    antipode; raises HopfkitError otherwise.  Returns (sub, embed_matrix).
    """
    indices = list(indices)
    pos = {b: t for t, b in enumerate(indices)}
    n = H.dim
    m = len(indices)
    ctx = H.ctx

    def reindex_vec(vec):
        out = {}
        for i, s in vec.items():
            if i not in pos:
                raise HopfkitError("span of %r not closed in %s" % (indices, H.name))
            out[pos[i]] = s
        return out

    mult = [[] for _ in range(m * m)]
    for a, i in enumerate(indices):
        for b, j in enumerate(indices):
            for k, s in H.mult[i * n + j]:
                if k not in pos:
                    raise HopfkitError("multiplication leaves the span at (%d,%d)" % (i, j))
                mult[a * m + b].append((pos[k], s))
    comult = [[] for _ in range(m)]
    for a, i in enumerate(indices):
        for x, s in H.comult[i]:
            j, k = divmod(x, n)
            if j not in pos or k not in pos:
                raise HopfkitError("comultiplication leaves the span at %d" % i)
            comult[a].append((pos[j] * m + pos[k], s))
    unit = [K.s_zero(ctx)] * m
    for i, s in H.unit_vec().items():
        if i not in pos:
            raise HopfkitError("unit not in span")
        unit[pos[i]] = s
    counit = [H.counit[i] for i in indices]
    cols = []
    for a, i in enumerate(indices):
        col = reindex_vec(_vec_clean(H.antipode_vec(H.basis_vec(i))))
        cols.append(tuple(sorted(col.items())))
    sub = FinHopf(
        name or ("%s[%s]" % (H.name, ",".join(H.basis_labels[i] for i in indices[:4]) + ("..." if m > 4 else ""))),
        tuple(H.basis_labels[i] for i in indices),
        H.N,
        tuple(tuple(sorted(r)) for r in mult),
        tuple(unit),
        tuple(tuple(sorted(r)) for r in comult),
        tuple(counit),
        tuple(cols),
        convention=H.convention,
    )
    z = K.s_zero(ctx)
    o = K.s_one(ctx)
    embed = Matrix(H.N, [[o if i == indices[b] else z for b in range(m)] for i in range(n)])
    return sub, embed
