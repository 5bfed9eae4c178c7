"""Algebra, coalgebra and Frobenius-algebra objects inside module or
Yetter-Drinfeld categories, and their transport through the induction functor."""

from fractions import Fraction
from math import lcm

from . import _kernel as K
from .errors import HopfkitError, ShapeError
from .exact_math import Matrix, RowSpace
from .induction import ind_morphism, lax_pair, oplax_pair, induce
from .module_theory import HModule, tensor_modules, trivial_module
from .reports import Report
from .yetter_drinfeld import YDModule, trivial_yd, yd_braiding, yd_tensor, z_induce


def _is_yd(carrier):
    return isinstance(carrier, YDModule)


def _carrier_module(carrier):
    return carrier.module if _is_yd(carrier) else carrier


class AlgObject:
    """An algebra object: carrier plus mult (d x d^2) and unit (d x 1) morphisms."""

    __slots__ = ("carrier", "mult", "unit", "name")

    def __init__(self, carrier, mult, unit, name="A"):
        d = _carrier_module(carrier).dim
        if mult.rows != d or mult.cols != d * d:
            raise ShapeError("mult must be %dx%d" % (d, d * d))
        if unit.rows != d or unit.cols != 1:
            raise ShapeError("unit must be %dx1" % d)
        self.carrier = carrier
        self.mult = mult
        self.unit = unit
        self.name = name

    @property
    def dim(self):
        return _carrier_module(self.carrier).dim

    @property
    def module(self):
        return _carrier_module(self.carrier)

    @property
    def is_yd(self):
        return _is_yd(self.carrier)


class FrobObject(AlgObject):
    """An algebra-and-coalgebra object subject to the Frobenius compatibility."""

    __slots__ = ("comult", "counit")

    def __init__(self, carrier, mult, unit, comult, counit, name="F"):
        super().__init__(carrier, mult, unit, name=name)
        d = self.dim
        if comult.rows != d * d or comult.cols != d:
            raise ShapeError("comult must be %dx%d" % (d * d, d))
        if counit.rows != 1 or counit.cols != d:
            raise ShapeError("counit must be 1x%d" % d)
        self.comult = comult
        self.counit = counit


def _tensor_carrier(carrier):
    if _is_yd(carrier):
        return yd_tensor(carrier, carrier)
    return tensor_modules(carrier, carrier)


def _unit_carrier(carrier):
    mod = _carrier_module(carrier)
    if _is_yd(carrier):
        return trivial_yd(mod.H, N=mod.N)
    return trivial_module(mod.H, N=mod.N)


def _morphism_in_category(src_carrier, tgt_carrier, mat):
    """mat is H-equivariant (and comodule-equivariant for YD carriers)."""
    src = _carrier_module(src_carrier)
    tgt = _carrier_module(tgt_carrier)
    conductor = lcm(lcm(src.N, tgt.N), mat.N)
    m = mat.lift(conductor)
    for i in range(src.H.dim):
        if m * src.action[i].lift(conductor) != tgt.action[i].lift(conductor) * m:
            return False
    if _is_yd(src_carrier) and _is_yd(tgt_carrier):
        idH = Matrix.identity(src.H.dim, conductor)
        if tgt_carrier.coaction.lift(conductor) * m != idH.kron(m) * src_carrier.coaction.lift(conductor):
            return False
    return True


def verify_algebra_object(A):
    rep = Report("verify-algebra %s" % A.name)
    d = A.dim
    conductor = lcm(A.module.N, lcm(A.mult.N, A.unit.N))
    mult = A.mult.lift(conductor)
    unit = A.unit.lift(conductor)
    idA = Matrix.identity(d, conductor)
    lhs = mult * mult.kron(idA)
    rhs = mult * idA.kron(mult)
    rep.add("associative", lhs == rhs, anchor="algebra-object")
    lu = mult * unit.kron(idA)
    ru = mult * idA.kron(unit)
    rep.add("unital", lu == idA and ru == idA, anchor="algebra-object")
    CC = _tensor_carrier(A.carrier)
    one = _unit_carrier(A.carrier)
    rep.add("mult-is-morphism", _morphism_in_category(CC, A.carrier, A.mult), anchor="algebra-object")
    rep.add("unit-is-morphism", _morphism_in_category(one, A.carrier, A.unit), anchor="algebra-object")
    return rep


def verify_frobenius_object(F):
    """Algebra + coalgebra axioms, morphism conditions, and both Frobenius squares."""
    rep = verify_algebra_object(F)
    rep.title = "verify-frobenius %s" % F.name
    d = F.dim
    conductor = lcm(lcm(F.module.N, F.comult.N), lcm(F.counit.N, lcm(F.mult.N, F.unit.N)))
    mult = F.mult.lift(conductor)
    unit = F.unit.lift(conductor)
    com = F.comult.lift(conductor)
    cou = F.counit.lift(conductor)
    idA = Matrix.identity(d, conductor)
    lhs = com.kron(idA) * com
    rhs = idA.kron(com) * com
    rep.add("coassociative", lhs == rhs, anchor="coalgebra-object")
    lu = cou.kron(idA) * com
    ru = idA.kron(cou) * com
    rep.add("counital", lu == idA and ru == idA, anchor="coalgebra-object")
    CC = _tensor_carrier(F.carrier)
    one = _unit_carrier(F.carrier)
    rep.add("comult-is-morphism", _morphism_in_category(F.carrier, CC, F.comult), anchor="coalgebra-object")
    rep.add("counit-is-morphism", _morphism_in_category(F.carrier, one, F.counit), anchor="coalgebra-object")
    mid = com * mult
    left = mult.kron(idA) * idA.kron(com)
    right = idA.kron(mult) * com.kron(idA)
    rep.add("frobenius-squares", left == mid and right == mid, anchor="frobenius-object")
    return rep


# ---------------------------------------------------------------------------
# transport through the induction functor
# ---------------------------------------------------------------------------


def push_algebra(ictx, A, name=None):
    """Transport an algebra object along induction via the lax structure."""
    yd = A.is_yd
    if yd:
        carrier = z_induce(ictx, A.carrier)
    else:
        carrier = induce(ictx, A.carrier).module
    lax, lax0 = lax_pair(ictx, A.module, A.module)
    Fm = ind_morphism(ictx, A.mult)
    conductor = lcm(Fm.N, lax.N)
    mult = Fm.lift(conductor) * lax.lift(conductor)
    Fu = ind_morphism(ictx, A.unit)
    conductor = lcm(Fu.N, lax0.N)
    unit = Fu.lift(conductor) * lax0.lift(conductor)
    return AlgObject(carrier, mult, unit, name=name or "Ind(%s)" % A.name)


def push_coalgebra(ictx, C, name=None):
    yd = C.is_yd
    if yd:
        carrier = z_induce(ictx, C.carrier)
    else:
        carrier = induce(ictx, C.carrier).module
    oplax, oplax0 = oplax_pair(ictx, C.module, C.module)
    Fd = ind_morphism(ictx, C.comult)
    conductor = lcm(Fd.N, oplax.N)
    comult = oplax.lift(conductor) * Fd.lift(conductor)
    Fe = ind_morphism(ictx, C.counit)
    conductor = lcm(Fe.N, oplax0.N)
    counit = oplax0.lift(conductor) * Fe.lift(conductor)
    return carrier, comult, counit


def push_frobenius(ictx, F, name=None, verify=True):
    """Transport a Frobenius object; the context must be Frobenius monoidal."""
    alg = push_algebra(ictx, F, name=name)
    _, comult, counit = push_coalgebra(ictx, F, name=name)
    out = FrobObject(alg.carrier, alg.mult, alg.unit, comult, counit, name=alg.name)
    if verify:
        rep = verify_frobenius_object(out)
        if not rep.ok:
            raise HopfkitError(
                "pushed object failed Frobenius verification: %r" % [c.name for c in rep.failures()]
            )
    return out


def trivial_frobenius(K_hopf, yd=True):
    """The tensor unit as a Frobenius algebra (all structure maps scalars 1)."""
    carrier = trivial_yd(K_hopf) if yd else trivial_module(K_hopf)
    one = Matrix.identity(1, K_hopf.N)
    return FrobObject(carrier, one, one, one, one, name="1")


# ---------------------------------------------------------------------------
# the two-dimensional graded etale algebras over the Klein four group
# ---------------------------------------------------------------------------

_KLEIN_WORDS = {"1": (0, 0), "x": (1, 0), "y": (0, 1), "xy": (1, 1)}


def build_group_etale(K_hopf, n, ex, ey):
    """The graded Frobenius algebra A_{n,ex,ey} = 1 + k^n_{ex,ey} in YD(kK).

    Carrier k{e_1, e_n} with deg e_1 = 1, deg e_n = n; the group acts
    trivially on e_1 (forced by unit equivariance) and on e_n by the
    character x -> ex, y -> ey.  Multiplication e_m e_m' = e_{mm'};
    comultiplication Delta(e_m) = e_1 x e_m + e_n x e_{nm}.
    """
    if n not in ("x", "y", "xy"):
        raise HopfkitError("degree parameter must be one of x, y, xy")
    if ex not in (1, -1) or ey not in (1, -1):
        raise HopfkitError("character signs must be +-1")
    labels = list(K_hopf.basis_labels)
    for w in ("1", "x", "y", "xy"):
        if w not in labels:
            raise HopfkitError("expected a Klein-four group algebra with labels 1,x,y,xy")
    deg = labels.index(n)
    chi = {"1": 1, "x": ex, "y": ey, "xy": ex * ey}
    mats = []
    for lbl in labels:
        mats.append(Matrix.from_rows([[1, 0], [0, chi[lbl]]]))
    mod = HModule(K_hopf, mats, name="A_%s(%d,%d)" % (n, ex, ey))
    rows = [[0, 0] for _ in range(K_hopf.dim * 2)]
    rows[labels.index("1") * 2 + 0][0] = 1
    rows[deg * 2 + 1][1] = 1
    coact = Matrix.from_rows(rows)
    carrier = YDModule(mod, coact, name=mod.name)
    mult = Matrix.from_rows([[1, 0, 0, 1], [0, 1, 1, 0]])
    unit = Matrix.from_rows([[1], [0]])
    comult = Matrix.from_rows([[1, 0], [0, 1], [0, 1], [1, 0]])
    counit = Matrix.from_rows([[1, 0]])
    return FrobObject(carrier, mult, unit, comult, counit, name=mod.name)


def direct_b_algebra(ictx, n, ex, ey):
    """B_{n,ex,ey} from its structure tables, on the basis
    (1 x e_1, 1 x e_n, z x e_1, z x e_n) matching the pushed object."""
    incl = ictx.incl
    H = incl.H
    labels = list(H.basis_labels)
    if labels[:4] != ["1", "x", "y", "z"]:
        raise HopfkitError("direct_b_algebra expects the Kac-Paljutkin basis order")
    chi = {"1": 1, "x": ex, "y": ey, "xy": ex * ey}
    swapped = {"1": 1, "x": ey, "y": ex, "xy": ex * ey}

    def word_index(lbl):
        return labels.index(lbl)

    # action matrices of the generators on (b_{1,1}, b_{1,n}, b_{z,1}, b_{z,n})
    zc = Fraction(1 + ex + ey - ex * ey, 2)
    zmat = Matrix.from_rows([[0, 0, 1, 0], [0, 0, 0, zc], [1, 0, 0, 0], [0, 1, 0, 0]])
    xmat = Matrix.from_rows([[1, 0, 0, 0], [0, ex, 0, 0], [0, 0, 1, 0], [0, 0, 0, ey]])
    ymat = Matrix.from_rows([[1, 0, 0, 0], [0, ey, 0, 0], [0, 0, 1, 0], [0, 0, 0, ex]])
    gens = {"x": xmat, "y": ymat, "z": zmat}
    word_of = {"1": "", "x": "x", "y": "y", "z": "z", "xy": "xy", "xz": "xz", "yz": "yz", "xyz": "xyz"}
    mats = []
    for lbl in labels:
        m = Matrix.identity(4)
        for ch in word_of[lbl]:
            m = m * gens[ch]
        mats.append(m)
    mod = HModule(H, mats, name="B_%s(%d,%d)" % (n, ex, ey))

    wcase = {(1, 1): "1", (1, -1): "y", (-1, 1): "x", (-1, -1): "xy"}
    swap_word = {"1": "1", "x": "y", "y": "x", "xy": "xy"}

    def wmul(a, b):
        wa, wb = _KLEIN_WORDS[a], _KLEIN_WORDS[b]
        w = (wa[0] ^ wb[0], wa[1] ^ wb[1])
        return {v: k for k, v in _KLEIN_WORDS.items()}[w]

    degs = [
        "1",  # b_{1,1}
        n,  # b_{1,n}
        wmul(swap_word["1"], wcase[(1, 1)]),  # b_{z,1}
        wmul(swap_word[n], wcase[(ex, ey)]),  # b_{z,n}
    ]
    rows = [[0] * 4 for _ in range(H.dim * 4)]
    for a, dlbl in enumerate(degs):
        rows[word_index(dlbl) * 4 + a][a] = 1
    carrier = YDModule(mod, Matrix.from_rows(rows), name=mod.name)

    # multiplication: indices 0=(1,1) 1=(1,n) 2=(z,1) 3=(z,n)
    z4 = [[0] * 16 for _ in range(4)]

    def bidx(zpart, m):
        return (2 if zpart else 0) + (1 if m == "n" else 0)

    for m1 in ("1", "n"):
        for m2 in ("1", "n"):
            prod_m = "1" if m1 == m2 else "n"
            z4[bidx(0, prod_m)][bidx(0, m1) * 4 + bidx(0, m2)] = 1
            z4[bidx(1, prod_m)][bidx(1, m1) * 4 + bidx(1, m2)] = 1
    mult = Matrix.from_rows(z4)
    unit = Matrix.from_rows([[1], [0], [1], [0]])

    cn = Fraction(1 + ex + ey - ex * ey, 2)
    com = [[0] * 4 for _ in range(16)]

    def put(row_pair, col, val):
        com[row_pair[0] * 4 + row_pair[1]][col] = val

    # Delta(b_{1m}) = sum_{m'} b_{1m'} x b_{1, m'm}
    for m in ("1", "n"):
        for mp in ("1", "n"):
            mm = "1" if mp == m else "n"
            put((bidx(0, mp), bidx(0, mm)), bidx(0, m), 1)
    # Delta(b_{z1}) = b_{z1} x b_{z1} + cn b_{zn} x b_{zn}
    put((bidx(1, "1"), bidx(1, "1")), bidx(1, "1"), 1)
    put((bidx(1, "n"), bidx(1, "n")), bidx(1, "1"), cn)
    # Delta(b_{zn}) = b_{z1} x b_{zn} + b_{zn} x b_{z1}
    put((bidx(1, "1"), bidx(1, "n")), bidx(1, "n"), 1)
    put((bidx(1, "n"), bidx(1, "1")), bidx(1, "n"), 1)
    comult = Matrix.from_rows(com)
    counit = Matrix.from_rows([[1, 0, 1, 0]])
    return FrobObject(carrier, mult, unit, comult, counit, name=mod.name)


def frob_objects_equal(F1, F2):
    """Entry-wise equality of all structure maps (same carrier coordinates)."""
    return (
        F1.mult == F2.mult
        and F1.unit == F2.unit
        and F1.comult == F2.comult
        and F1.counit == F2.counit
        and _carrier_module(F1.carrier) == _carrier_module(F2.carrier)
        and (not (_is_yd(F1.carrier) and _is_yd(F2.carrier)) or F1.carrier.coaction == F2.carrier.coaction)
    )


# ---------------------------------------------------------------------------
# rigidity checks
# ---------------------------------------------------------------------------


def is_commutative_object(A):
    """m o Psi = m with respect to the YD braiding of the carrier."""
    if not A.is_yd:
        raise HopfkitError("commutativity check needs a YD carrier")
    psi = yd_braiding(A.carrier, A.carrier, verify=False)
    conductor = lcm(A.mult.N, psi.N)
    return A.mult.lift(conductor) * psi.lift(conductor) == A.mult.lift(conductor)


def is_special(F):
    """(beta_A, beta_1) with m o Delta = beta_A id and eps o u = beta_1, or None."""
    conductor = lcm(F.mult.N, F.comult.N)
    comp = F.mult.lift(conductor) * F.comult.lift(conductor)
    beta_A = comp.is_scalar_multiple_of_identity()
    if beta_A is None or beta_A.is_zero():
        return None
    conductor = lcm(F.counit.N, F.unit.N)
    beta_1 = (F.counit.lift(conductor) * F.unit.lift(conductor)).entry(0, 0)
    if beta_1.is_zero():
        return None
    return beta_A, beta_1


def invariant_space_dim(carrier):
    """dim of {v : h v = eps(h) v and delta(v) = 1 x v}."""
    mod = _carrier_module(carrier)
    H = mod.H
    d = mod.dim
    ctx = K.make_ctx(mod.N)
    space = RowSpace(d, ctx)
    for i in range(H.dim):
        act = mod.action[i]
        eps = K.s_lift(H.counit[i], H.N, mod.N) if H.N != mod.N else H.counit[i]
        for r in range(d):
            row = {}
            for c in range(d):
                v = act._data[r][c]
                if r == c:
                    v = K.s_sub(ctx, v, eps)
                if not K.s_is_zero(v):
                    row[c] = v
            if row:
                space.add(row)
    if _is_yd(carrier):
        coact = carrier.coaction
        unit = H.unit
        for hrow in range(H.dim):
            for r in range(d):
                row = {}
                u = K.s_lift(unit[hrow], H.N, mod.N) if H.N != mod.N else unit[hrow]
                for c in range(d):
                    v = coact._data[hrow * d + r][c]
                    if r == c and not K.s_is_zero(u):
                        v = K.s_sub(ctx, v, u)
                    if not K.s_is_zero(v):
                        row[c] = v
                if row:
                    space.add(row)
    return d - space.rank


def is_connected(A):
    """Hom(1, A) is one-dimensional."""
    return invariant_space_dim(A.carrier) == 1


def is_rigid_frobenius(F):
    """Frobenius + commutative + special + connected, with individual flags."""
    rep = Report("rigid-frobenius %s" % F.name)
    frob = verify_frobenius_object(F)
    rep.add("frobenius", frob.ok, anchor="frobenius-object")
    rep.add("commutative", is_commutative_object(F), anchor="commutative-algebra")
    sp = is_special(F)
    rep.add(
        "special",
        sp is not None,
        detail=None if sp is None else "beta=(%s, %s)" % (sp[0], sp[1]),
        anchor="special-frobenius",
    )
    rep.add("connected", is_connected(F), anchor="connected-algebra")
    return rep
