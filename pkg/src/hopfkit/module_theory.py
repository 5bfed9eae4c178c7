"""Finite-dimensional modules over a FinHopf: tensor products, restriction,
intertwiner spaces, and deterministic isomorphism search."""

import itertools
from math import lcm

from . import _kernel as K
from .errors import ShapeError
from .exact_math import Cyclotomic, Matrix, RowSpace, kron_raw, mat_mul_raw
from .hopf_core import FinHopf
from .reports import Report


class HModule:
    """A left module given by one exact action matrix per algebra basis element."""

    __slots__ = ("H", "dim", "N", "action", "name")
    __hash__ = None

    def __init__(self, H, action, name="V", N=None):
        conductor = N or H.N
        mats = []
        for a in action:
            if isinstance(a, Matrix):
                conductor = lcm(conductor, a.N)
            mats.append(a)
        if len(mats) != H.dim:
            raise ShapeError("need one action matrix per algebra basis element")
        dims = set()
        lifted = []
        for a in mats:
            if not isinstance(a, Matrix):
                a = Matrix.from_rows(a)
                conductor = lcm(conductor, a.N)
            dims.add((a.rows, a.cols))
            lifted.append(a)
        if len(dims) != 1:
            raise ShapeError("action matrices have mixed shapes: %r" % dims)
        d = dims.pop()
        if d[0] != d[1]:
            raise ShapeError("action matrices must be square")
        self.H = H.lifted(conductor) if conductor != H.N else H
        self.N = conductor
        self.dim = d[0]
        self.action = tuple(a.lift(conductor) for a in lifted)
        self.name = name

    @property
    def ctx(self):
        return K.make_ctx(self.N)

    def act(self, i):
        return self.action[i]

    def act_alg_vec(self, hvec):
        """Action matrix of a sparse algebra vector {index: raw}."""
        out = Matrix.zeros(self.dim, self.dim, self.N)
        for i, c in hvec.items():
            if not K.s_is_zero(c):
                out = out + self.action[i].scale(Cyclotomic(self.N, c))
        return out

    def __eq__(self, other):
        if not isinstance(other, HModule):
            return NotImplemented
        return (
            self.H.name == other.H.name
            and self.dim == other.dim
            and all(a == b for a, b in zip(self.action, other.action))
        )

    def __repr__(self):
        return "HModule(%s over %s, dim=%d)" % (self.name, self.H.name, self.dim)


class ModuleMap:
    """A linear map between modules over the same algebra."""

    __slots__ = ("source", "target", "matrix")
    __hash__ = None

    def __init__(self, source, target, matrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise ShapeError("module map must be %dx%d" % (target.dim, source.dim))
        self.source = source
        self.target = target
        self.matrix = matrix

    def intertwines(self):
        for i in range(self.source.H.dim):
            if self.matrix * self.source.act(i) != self.target.act(i) * self.matrix:
                return False
        return True

    def is_invertible(self):
        return self.matrix.inverse() is not None

    def __repr__(self):
        return "ModuleMap(%s -> %s)" % (self.source.name, self.target.name)


def trivial_module(H, N=None):
    """The tensor unit: the counit acting on a one-dimensional space."""
    conductor = N or H.N
    mats = [Matrix(H.N, [[H.counit[i]]]).lift(conductor) for i in range(H.dim)]
    return HModule(H, mats, name="1", N=conductor)


def verify_module(M):
    """Exhaustive unitality and multiplicativity check."""
    H = M.H
    rep = Report("verify-module %s" % M.name)
    ident = Matrix.identity(M.dim, M.N)
    u = M.act_alg_vec(H.unit_vec())
    rep.add("unit-acts-as-identity", u == ident, anchor="module-axioms")
    n = H.dim
    w = None
    for i in range(n):
        ai = M.action[i]
        for j in range(n):
            prod = ai * M.action[j]
            acc = Matrix.zeros(M.dim, M.dim, M.N)
            for k2, s in H.mult[i * n + j]:
                acc = acc + M.action[k2].scale(Cyclotomic(H.N, s))
            if prod != acc:
                w = (i, j)
                break
        if w:
            break
    rep.add("action-multiplicative", w is None, witness=w, anchor="module-axioms")
    return rep


def tensor_modules(M, N_mod):
    """Tensor product module with the diagonal action via the coproduct."""
    if M.H.name != N_mod.H.name:
        raise ShapeError("tensor of modules over different algebras")
    conductor = lcm(M.N, N_mod.N)
    H = M.H.lifted(conductor)
    a = [m.lift(conductor) for m in M.action]
    b = [m.lift(conductor) for m in N_mod.action]
    ctx = K.make_ctx(conductor)
    n = H.dim
    mats = []
    for i in range(n):
        acc = Matrix.zeros(M.dim * N_mod.dim, M.dim * N_mod.dim, conductor)
        for x, s in H.comult[i]:
            j, k2 = divmod(x, n)
            acc = acc + Matrix(conductor, kron_raw(a[j].raw(), b[k2].raw(), ctx)).scale(
                Cyclotomic(conductor, s)
            )
        mats.append(acc)
    return HModule(H, mats, name="%s(x)%s" % (M.name, N_mod.name), N=conductor)


def restrict(incl, W):
    """Restriction along the inclusion: K acts through its image."""
    conductor = lcm(W.N, incl.N)
    Wl = [m.lift(conductor) for m in W.action]
    mats = []
    for b in range(incl.K.dim):
        acc = Matrix.zeros(W.dim, W.dim, conductor)
        for i, c in incl.embed_col(b).items():
            acc = acc + Wl[i].scale(Cyclotomic(incl.N, c))
        mats.append(acc)
    return HModule(incl.K, mats, name="Res(%s)" % W.name, N=conductor)


def direct_sum(M, N_mod):
    if M.H.name != N_mod.H.name:
        raise ShapeError("direct sum over different algebras")
    conductor = lcm(M.N, N_mod.N)
    d1, d2 = M.dim, N_mod.dim
    mats = []
    for i in range(M.H.dim):
        A = M.action[i].lift(conductor)
        B = N_mod.action[i].lift(conductor)
        rows = []
        for r in range(d1):
            rows.append(list(A.raw()[r]) + [K.s_zero(K.make_ctx(conductor))] * d2)
        for r in range(d2):
            rows.append([K.s_zero(K.make_ctx(conductor))] * d1 + list(B.raw()[r]))
        mats.append(Matrix(conductor, rows))
    return HModule(M.H, mats, name="%s(+)%s" % (M.name, N_mod.name), N=conductor)


def hom_space(M, N_mod):
    """Exact basis of intertwiners M -> N, in deterministic order."""
    if M.H.name != N_mod.H.name:
        raise ShapeError("hom between modules over different algebras")
    conductor = lcm(M.N, N_mod.N)
    ctx = K.make_ctx(conductor)
    dm, dn = M.dim, N_mod.dim
    A = [m.lift(conductor) for m in M.action]
    B = [m.lift(conductor) for m in N_mod.action]
    space = RowSpace(dn * dm, ctx)
    for i in range(M.H.dim):
        Ai = A[i].raw()
        Bi = B[i].raw()
        for r in range(dn):
            for c in range(dm):
                row = {}
                for s in range(dm):
                    v = Ai[s][c]
                    if not K.s_is_zero(v):
                        key = r * dm + s
                        row[key] = K.s_add(ctx, row.get(key, K.s_zero(ctx)), v)
                for s in range(dn):
                    v = Bi[r][s]
                    if not K.s_is_zero(v):
                        key = s * dm + c
                        prev = row.get(key, K.s_zero(ctx))
                        val = K.s_sub(ctx, prev, v)
                        if K.s_is_zero(val):
                            row.pop(key, None)
                        else:
                            row[key] = val
                if row:
                    space.add(row)
    out = []
    for vec in space.nullspace():
        mat = Matrix(conductor, [[vec[r * dm + c] for c in range(dm)] for r in range(dn)])
        out.append(ModuleMap(M, N_mod, mat))
    return out


class IsoSearch:
    """Result of the deterministic isomorphism search."""

    __slots__ = ("status", "map")

    def __init__(self, status, map_):
        self.status = status  # "iso" | "none" | "undetermined"
        self.map = map_

    def __bool__(self):
        return self.status == "iso"

    def __repr__(self):
        return "IsoSearch(%s)" % self.status


GRID_BOUND = 3
GRID_LIMIT = 100000


def is_isomorphic(M, N_mod):
    """Deterministic search for an invertible intertwiner.

    Tries hom-basis elements, then prefix sums, then an integer coefficient
    grid with entries 0, +-1, ..., +-GRID_BOUND.  Returns "none" only when no
    isomorphism can exist (dimension mismatch or zero hom space), and
    "undetermined" when the grid is exhausted without finding one.
    """
    if M.dim != N_mod.dim:
        return IsoSearch("none", None)
    homs = hom_space(M, N_mod)
    if not homs:
        return IsoSearch("none", None)

    def check(mat):
        return mat.inverse() is not None

    for h in homs:
        if check(h.matrix):
            return IsoSearch("iso", h)
    acc = homs[0].matrix
    for h in homs[1:]:
        acc = acc + h.matrix
        if check(acc):
            return IsoSearch("iso", ModuleMap(M, N_mod, acc))
    coeffs = [0]
    for v in range(1, GRID_BOUND + 1):
        coeffs.extend((v, -v))
    count = 0
    for combo in itertools.product(coeffs, repeat=len(homs)):
        count += 1
        if count > GRID_LIMIT:
            break
        if all(c == 0 for c in combo):
            continue
        mat = None
        for c, h in zip(combo, homs):
            if c == 0:
                continue
            term = h.matrix.scale(c)
            mat = term if mat is None else mat + term
        if mat is not None and check(mat):
            return IsoSearch("iso", ModuleMap(M, N_mod, mat))
    return IsoSearch("undetermined", None)
