"""Hopf subalgebra inclusions and their Frobenius-extension analysis.

For an inclusion K -> H the pipeline computes the quotient coalgebra
Hbar = H/HK+, the right integral of Hbar*, the relative modular function,
the Frobenius decision (two independent criteria, cross-checked), the
Frobenius morphism tr, a free basis with its dual basis, centrality and
normality tests.  Everything is exact; every derived structure is verified
against its defining identities at construction time.
"""

from math import lcm

from . import _kernel as K
from .errors import HopfkitError, InconsistentSystemError, PipelineError, ShapeError
from .exact_math import Cyclotomic, Matrix, RowSpace, lift_raw
from .hopf_core import (
    FinHopf,
    LinearFunctional,
    _vec_clean,
    _vec_scale,
    _vec_accum,
    distinguished_grouplike,
    integral_space,
    right_integral_of_dual,
)
from .reports import Report


class HopfInclusion:
    """An embedding K -> H given by the matrix of images of K's basis."""

    __slots__ = ("K", "H", "embed", "_cache")

    def __init__(self, sub, big, embed):
        N = lcm(sub.N, big.N)
        N = lcm(N, embed.N)
        self.K = sub.lifted(N)
        self.H = big.lifted(N)
        self.embed = embed.lift(N)
        if self.embed.rows != self.H.dim or self.embed.cols != self.K.dim:
            raise ShapeError(
                "embed must be %dx%d, got %dx%d"
                % (self.H.dim, self.K.dim, self.embed.rows, self.embed.cols)
            )
        self._cache = {}

    @property
    def N(self):
        return self.H.N

    @property
    def ctx(self):
        return K.make_ctx(self.N)

    def embed_col(self, b):
        """Image of the b-th K-basis vector as a sparse H-vector."""
        key = ("col", b)
        got = self._cache.get(key)
        if got is None:
            got = {
                i: self.embed._data[i][b]
                for i in range(self.H.dim)
                if not K.s_is_zero(self.embed._data[i][b])
            }
            self._cache[key] = got
        return got

    def embed_vec(self, kvec):
        out = {}
        for b, c in kvec.items():
            _vec_accum(self.H, out, _vec_scale(self.H, self.embed_col(b), c))
        return out

    def image_space(self):
        got = self._cache.get("image_space")
        if got is None:
            got = RowSpace(self.H.dim, self.ctx)
            for b in range(self.K.dim):
                got.add(self.embed_col(b))
            self._cache["image_space"] = got
        return got

    def to_K_coords_many(self, vectors):
        """Solve embed * x = v for a list of dense raw vectors; None if any fails."""
        cols = Matrix(self.N, [list(col) for col in zip(*vectors)]) if vectors else None
        if cols is None:
            return []
        try:
            sol = self.embed.solve(cols)
        except InconsistentSystemError:
            return None
        return [sol.particular.col_raw(j) for j in range(len(vectors))]

    def to_K_coords(self, hvec):
        """K-coordinates of a sparse H-vector in the image, or None."""
        z = K.s_zero(self.ctx)
        dense = [z] * self.H.dim
        for i, s in hvec.items():
            dense[i] = s
        got = self.to_K_coords_many([dense])
        return got[0] if got is not None else None

    def __repr__(self):
        return "HopfInclusion(%s -> %s)" % (self.K.name, self.H.name)


def trivial_inclusion(H):
    """The identity inclusion H -> H."""
    return HopfInclusion(H, H, Matrix.identity(H.dim, H.N))


def unit_inclusion(H, base_field_hopf):
    """The inclusion of the ground field (as a one-dimensional Hopf algebra)."""
    embed = Matrix(H.N, [[v] for v in H.unit])
    return HopfInclusion(base_field_hopf, H, embed)


# ---------------------------------------------------------------------------
# inclusion verification
# ---------------------------------------------------------------------------


def verify_inclusion(incl):
    """Injectivity plus all five Hopf-map intertwining conditions, exhaustively."""
    Kk, H = incl.K, incl.H
    ctx = incl.ctx
    n, m = H.dim, Kk.dim
    rep = Report("verify-inclusion %s -> %s" % (Kk.name, H.name))

    rep.add("embed-injective", incl.embed.rank() == m, anchor="hopf-map")

    w = None
    for a in range(m):
        for b in range(m):
            prod_K = Kk.mult_vec(Kk.basis_vec(a), Kk.basis_vec(b))
            lhs = incl.embed_vec(prod_K)
            rhs = H.mult_vec(incl.embed_col(a), incl.embed_col(b))
            if _vec_clean(lhs) != _vec_clean(rhs):
                w = (a, b)
                break
        if w:
            break
    rep.add("mult-intertwines", w is None, witness=w, anchor="hopf-map")

    rep.add(
        "unit-intertwines",
        _vec_clean(incl.embed_vec(Kk.unit_vec())) == _vec_clean(H.unit_vec()),
        anchor="hopf-map",
    )

    w = None
    for a in range(m):
        lhs = {}
        for x, s in Kk.comult[a]:
            p, q = divmod(x, m)
            img = _tensor_pair(H, incl.embed_col(p), incl.embed_col(q), s)
            _vec_accum_flat(ctx, lhs, img)
        rhs = H.comult_vec(incl.embed_col(a))
        if _clean_flat(lhs) != _clean_flat(rhs):
            w = a
            break
    rep.add("comult-intertwines", w is None, witness=w, anchor="hopf-map")

    w = None
    for a in range(m):
        if H.counit_raw(incl.embed_col(a)) != Kk.counit[a]:
            w = a
            break
    rep.add("counit-intertwines", w is None, witness=w, anchor="hopf-map")

    w = None
    for a in range(m):
        lhs = incl.embed_vec(_vec_clean(Kk.antipode_vec(Kk.basis_vec(a))))
        rhs = H.antipode_vec(incl.embed_col(a))
        if _vec_clean(lhs) != _vec_clean(rhs):
            w = a
            break
    rep.add("antipode-intertwines", w is None, witness=w, anchor="hopf-map")
    return rep


def _tensor_pair(H, u, v, coeff):
    ctx = H.ctx
    n = H.dim
    out = {}
    for i, a in u.items():
        ca = K.s_mul(ctx, coeff, a)
        for j, b in v.items():
            t = K.s_mul(ctx, ca, b)
            if not K.s_is_zero(t):
                out[i * n + j] = t
    return out


def _vec_accum_flat(ctx, acc, v):
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


def _clean_flat(v):
    return {k: s for k, s in v.items() if not K.s_is_zero(s)}


# ---------------------------------------------------------------------------
# the quotient coalgebra Hbar = H / HK+
# ---------------------------------------------------------------------------


class BarQuotient:
    """H/HK+ with deterministic coset representatives (lex-first H-basis vectors)."""

    __slots__ = ("incl", "reps", "dimbar", "proj_cols", "comult_bar", "counit_bar", "coaug", "_subspace")

    def __init__(self, incl, reps, proj_cols, comult_bar, counit_bar, coaug, subspace):
        self.incl = incl
        self.reps = tuple(reps)
        self.dimbar = len(self.reps)
        self.proj_cols = proj_cols
        self.comult_bar = comult_bar
        self.counit_bar = counit_bar
        self.coaug = coaug
        self._subspace = subspace

    def proj_vec(self, hvec):
        """Image of a sparse H-vector in Hbar coordinates."""
        ctx = self.incl.ctx
        out = {}
        for i, s in hvec.items():
            if K.s_is_zero(s):
                continue
            for t, c in self.proj_cols[i].items():
                prev = out.get(t)
                val = K.s_mul(ctx, s, c)
                if prev is None:
                    out[t] = val
                else:
                    val = K.s_add(ctx, prev, val)
                    if K.s_is_zero(val):
                        del out[t]
                    else:
                        out[t] = val
        return out

    def section_vec(self, t):
        return {self.reps[t]: K.s_one(self.incl.ctx)}

    def proj_matrix(self):
        ctx = self.incl.ctx
        z = K.s_zero(ctx)
        rows = [[z] * self.incl.H.dim for _ in range(self.dimbar)]
        for i, col in enumerate(self.proj_cols):
            for t, c in col.items():
                rows[t][i] = c
        return Matrix(self.incl.N, rows)

    def __repr__(self):
        return "BarQuotient(dim=%d of %s)" % (self.dimbar, self.incl.H.name)


def bar_quotient(incl, verify=True):
    """Compute Hbar = H/HK+ with its coalgebra structure, verified."""
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    n, m = H.dim, Kk.dim

    # basis of K+ = ker eps_K
    eps_space = RowSpace(m, ctx)
    eps_space.add({b: Kk.counit[b] for b in range(m) if not K.s_is_zero(Kk.counit[b])})
    kplus = eps_space.nullspace()

    sub = RowSpace(n, ctx)
    for w in kplus:
        wimg = incl.embed_vec({b: c for b, c in enumerate(w) if not K.s_is_zero(c)})
        for i in range(n):
            sub.add(H.mult_vec(H.basis_vec(i), wimg))

    # lexicographically-first complete set of H-basis coset representatives
    filled = RowSpace(n, ctx)
    for row in sub.rows:
        filled.add(dict(row))
    reps = []
    one = K.s_one(ctx)
    for t in range(n):
        if filled.add({t: one}):
            reps.append(t)
    dimbar = len(reps)

    nonpiv = [c for c in range(n) if c not in set(sub.pivots)]
    np_pos = {c: i for i, c in enumerate(nonpiv)}
    assert len(nonpiv) == dimbar
    # express residues of basis vectors in terms of the residues of the reps
    cols = []
    for t in reps:
        rem = sub.reduce({t: one})
        col = [K.s_zero(ctx)] * dimbar
        for c, s in rem.items():
            col[np_pos[c]] = s
        cols.append(col)
    M = Matrix(incl.N, [list(r) for r in zip(*cols)])
    Minv = M.inverse()
    if Minv is None:
        raise PipelineError("coset representative residues are not independent")

    proj_cols = []
    for i in range(n):
        rem = sub.reduce({i: one})
        acc = {}
        for c, s in rem.items():
            col = Minv.col_raw(np_pos[c])
            for t in range(dimbar):
                v = col[t]
                if not K.s_is_zero(v):
                    prev = acc.get(t)
                    val = K.s_mul(ctx, s, v)
                    if prev is None:
                        acc[t] = val
                    else:
                        val = K.s_add(ctx, prev, val)
                        if K.s_is_zero(val):
                            del acc[t]
                        else:
                            acc[t] = val
        proj_cols.append(acc)
    comult_bar = []
    for t in range(dimbar):
        acc = {}
        for x, s in H.comult[reps[t]]:
            j, k2 = divmod(x, n)
            pj = proj_cols[j]
            pk = proj_cols[k2]
            for a, ca in pj.items():
                sa = K.s_mul(ctx, s, ca)
                for b, cb in pk.items():
                    val = K.s_mul(ctx, sa, cb)
                    key = a * dimbar + b
                    prev = acc.get(key)
                    if prev is None:
                        acc[key] = val
                    else:
                        val = K.s_add(ctx, prev, val)
                        if K.s_is_zero(val):
                            del acc[key]
                        else:
                            acc[key] = val
        comult_bar.append(tuple(sorted(acc.items())))
    counit_bar = tuple(H.counit[i] for i in reps)
    coaug_vec = {}
    for i, s in H.unit_vec().items():
        _vec_accum_flat(ctx, coaug_vec, _vec_scale_flat(ctx, proj_cols[i], s))
    z = K.s_zero(ctx)
    coaug = [z] * dimbar
    for t, s in coaug_vec.items():
        coaug[t] = s

    bq = BarQuotient(incl, reps, tuple(proj_cols), tuple(comult_bar), counit_bar, tuple(coaug), sub)
    if verify:
        rep = verify_bar_quotient(bq)
        if not rep.ok:
            raise PipelineError("bar quotient verification failed: %r" % rep.failures())
    return bq


def _vec_scale_flat(ctx, v, c):
    if K.s_is_zero(c):
        return {}
    return {k: K.s_mul(ctx, c, s) for k, s in v.items()}


def verify_bar_quotient(bq):
    incl = bq.incl
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    n, m, d = H.dim, Kk.dim, bq.dimbar
    rep = Report("verify-bar-quotient %s" % incl.H.name)

    # the chosen coset representatives project to the standard basis of Hbar
    one = K.s_one(ctx)
    surj = all(_clean_flat(bq.proj_vec(bq.section_vec(t))) == {t: one} for t in range(d))
    rep.add("proj-surjective", surj, anchor="bar-quotient")

    # coalgebra map: (proj x proj) Delta_H = Delta_bar proj on all basis vectors
    w = None
    for i in range(n):
        lhs = {}
        for x, s in H.comult[i]:
            j, k2 = divmod(x, n)
            for a, ca in bq.proj_cols[j].items():
                sa = K.s_mul(ctx, s, ca)
                for b, cb in bq.proj_cols[k2].items():
                    _vec_accum_flat(ctx, lhs, {a * d + b: K.s_mul(ctx, sa, cb)})
        rhs = {}
        for t, c in bq.proj_cols[i].items():
            for x, s in bq.comult_bar[t]:
                _vec_accum_flat(ctx, rhs, {x: K.s_mul(ctx, c, s)})
        if _clean_flat(lhs) != _clean_flat(rhs):
            w = i
            break
    rep.add("proj-coalgebra-map", w is None, witness=w, anchor="bar-quotient")

    # coassociativity / counitality of Delta_bar
    w = K.coassoc_first_defect(d, bq.comult_bar, ctx)
    rep.add("bar-coassociative", w is None, witness=w, anchor="bar-quotient")
    w = None
    for t in range(d):
        lacc = {}
        racc = {}
        for x, s in bq.comult_bar[t]:
            a, b = divmod(x, d)
            lt = K.s_mul(ctx, bq.counit_bar[a], s)
            if not K.s_is_zero(lt):
                _vec_accum_flat(ctx, lacc, {b: lt})
            rt = K.s_mul(ctx, bq.counit_bar[b], s)
            if not K.s_is_zero(rt):
                _vec_accum_flat(ctx, racc, {a: rt})
        et = {t: K.s_one(ctx)}
        if _clean_flat(lacc) != et or _clean_flat(racc) != et:
            w = t
            break
    rep.add("bar-counital", w is None, witness=w, anchor="bar-quotient")

    one_bar = _clean_flat({t: s for t, s in enumerate(bq.coaug)})
    rep.add("proj-sends-unit-to-unit", _clean_flat(bq.proj_vec(H.unit_vec())) == one_bar)

    # right K-triviality: proj(h * embed(k)) = eps_K(k) proj(h)
    w = None
    for i in range(n):
        pi = _clean_flat(bq.proj_vec({i: K.s_one(ctx)}))
        for b in range(m):
            lhs = _clean_flat(bq.proj_vec(H.mult_vec(H.basis_vec(i), incl.embed_col(b))))
            rhs = _clean_flat(_vec_scale_flat(ctx, pi, Kk.counit[b]))
            if lhs != rhs:
                w = (i, b)
                break
        if w:
            break
    rep.add("right-K-trivial", w is None, witness=w, anchor="bar-quotient")
    return rep


# ---------------------------------------------------------------------------
# integrals, modular function, Frobenius decision
# ---------------------------------------------------------------------------


def right_integral_bar_dual(bq):
    """The right integral of Hbar* (unique up to scale), first-nonzero normalized."""
    ctx = bq.incl.ctx
    d = bq.dimbar
    space = RowSpace(d, ctx)
    for t in range(d):
        rows = [dict() for _ in range(d)]
        for x, s in bq.comult_bar[t]:
            j, k2 = divmod(x, d)
            prev = rows[k2].get(j)
            rows[k2][j] = s if prev is None else K.s_add(ctx, prev, s)
        for k2 in range(d):
            c = bq.coaug[k2]
            if not K.s_is_zero(c):
                prev = rows[k2].get(t, K.s_zero(ctx))
                val = K.s_sub(ctx, prev, c)
                if K.s_is_zero(val):
                    rows[k2].pop(t, None)
                else:
                    rows[k2][t] = val
        for r in rows:
            if r:
                space.add(r)
    basis = space.nullspace()
    if len(basis) != 1:
        raise PipelineError(
            "right integral space of Hbar* has dimension %d, expected 1" % len(basis)
        )
    vec = basis[0]
    for v in vec:
        if not K.s_is_zero(v):
            inv = K.s_inv(ctx, v)
            vec = [K.s_mul(ctx, inv, x) for x in vec]
            break
    return LinearFunctional(bq.incl.N, vec)


def lift_bar_functional(bq, lam):
    """lambda o proj as a functional on H."""
    ctx = bq.incl.ctx
    vals = []
    for i in range(bq.incl.H.dim):
        acc = K.s_zero(ctx)
        for t, c in bq.proj_cols[i].items():
            acc = K.s_add(ctx, acc, K.s_mul(ctx, lam.values[t], c))
        vals.append(acc)
    return LinearFunctional(bq.incl.N, vals)


def relative_modular_function(incl, bq, lam):
    """chi on K with lambda(bar(k h)) = chi(k) lambda(bar(h)); verified globally."""
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    lamH = lift_bar_functional(bq, lam)
    h0 = None
    for t in range(bq.dimbar):
        if not K.s_is_zero(lam.values[t]):
            h0 = bq.reps[t]
            break
    if h0 is None:
        raise PipelineError("zero integral passed to relative_modular_function")
    d_inv = K.s_inv(ctx, lamH.values[h0])
    values = []
    for b in range(Kk.dim):
        v = H.mult_vec(incl.embed_col(b), H.basis_vec(h0))
        values.append(K.s_mul(ctx, lamH(v), d_inv))
    chi = LinearFunctional(incl.N, values)
    # global verification over all (k, h) basis pairs
    for b in range(Kk.dim):
        cb = chi.values[b]
        col = incl.embed_col(b)
        for i in range(H.dim):
            lhs = lamH(H.mult_vec(col, H.basis_vec(i)))
            if lhs != K.s_mul(ctx, cb, lamH.values[i]):
                raise PipelineError(
                    "no relative modular function: condition fails at (k=%d, h=%d)" % (b, i)
                )
    _assert_algebra_map_K(Kk, chi)
    return chi


def _assert_algebra_map_K(Kk, f):
    ctx = Kk.ctx
    m = Kk.dim
    if f(Kk.unit_vec()) != K.s_one(ctx):
        raise PipelineError("functional does not send 1_K to 1")
    for a in range(m):
        for b in range(m):
            acc = K.s_zero(ctx)
            for k2, s in Kk.mult[a * m + b]:
                acc = K.s_add(ctx, acc, K.s_mul(ctx, f.values[k2], s))
            if acc != K.s_mul(ctx, f.values[a], f.values[b]):
                raise PipelineError("relative modular function is not an algebra map")


def check_integral_type(incl, bq, lam):
    """An element Lambda in H with lambda(bar(Lambda h)) = eps(h) for all h, or None."""
    H = incl.H
    ctx = incl.ctx
    n = H.dim
    lamH = lift_bar_functional(bq, lam)
    rows = []
    for j in range(n):
        row = []
        for t in range(n):
            row.append(lamH(H.mult_vec(H.basis_vec(t), H.basis_vec(j))))
        rows.append(row)
    A = Matrix(incl.N, rows)
    b = Matrix(incl.N, [[H.counit[j]] for j in range(n)])
    try:
        sol = A.solve(b)
    except InconsistentSystemError:
        return None
    return sol.particular


class FrobeniusDecision:
    __slots__ = ("frobenius", "via_chi", "via_alpha", "chi", "alpha_H", "alpha_K", "chi_fd_identity")

    def __init__(self, frobenius, via_chi, via_alpha, chi, alpha_H, alpha_K, chi_fd_identity):
        self.frobenius = frobenius
        self.via_chi = via_chi
        self.via_alpha = via_alpha
        self.chi = chi
        self.alpha_H = alpha_H
        self.alpha_K = alpha_K
        self.chi_fd_identity = chi_fd_identity

    def __repr__(self):
        return "FrobeniusDecision(frobenius=%s, via_chi=%s, via_alpha=%s)" % (
            self.frobenius,
            self.via_chi,
            self.via_alpha,
        )


def is_frobenius_extension(incl, bq=None, lam=None):
    """Decide via chi = eps_K and independently via the distinguished grouplikes.

    The two criteria are asserted to agree; the convolution identity
    chi = (alpha_H|_K) * (alpha_K o S_K) is cross-checked as well.
    """
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    if bq is None:
        bq = bar_quotient(incl)
    if lam is None:
        lam = right_integral_bar_dual(bq)
    chi = relative_modular_function(incl, bq, lam)
    eps_K = LinearFunctional(incl.N, Kk.counit)
    via_chi = chi == eps_K

    alpha_H = distinguished_grouplike(H)
    alpha_K = distinguished_grouplike(Kk)
    alpha_H_on_K = LinearFunctional(
        incl.N, [alpha_H(incl.embed_col(b)) for b in range(Kk.dim)]
    )
    via_alpha = alpha_H_on_K == alpha_K

    if via_chi != via_alpha:
        raise PipelineError(
            "internal inconsistency: chi-criterion=%s but alpha-criterion=%s" % (via_chi, via_alpha)
        )

    # chi = (alpha_H|_K) * (alpha_K o S_K), convolution on K*
    m = Kk.dim
    ok_fd = True
    alphaKS = [alpha_K(_vec_clean(Kk.antipode_vec(Kk.basis_vec(b)))) for b in range(m)]
    for b in range(m):
        acc = K.s_zero(ctx)
        for x, s in Kk.comult[b]:
            p, q = divmod(x, m)
            acc = K.s_add(
                ctx, acc, K.s_mul(ctx, s, K.s_mul(ctx, alpha_H_on_K.values[p], alphaKS[q]))
            )
        if acc != chi.values[b]:
            ok_fd = False
            break
    if not ok_fd:
        raise PipelineError("convolution identity for chi fails (finite-dimensional case)")

    return FrobeniusDecision(via_chi, via_chi, via_alpha, chi, alpha_H, alpha_K, ok_fd)


# ---------------------------------------------------------------------------
# free basis, Frobenius morphism, dual bases
# ---------------------------------------------------------------------------


def free_basis(incl):
    """Greedy free-basis scan over H's basis in declared order.

    Returns the index sequence h_1..h_r with span K*h_1 + ... + K*h_r = H.
    """
    H, Kk = incl.H, incl.K
    n, m = H.dim, Kk.dim
    if n % m != 0:
        raise HopfkitError("dim H = %d not divisible by dim K = %d" % (n, m))
    space = RowSpace(n, incl.ctx)
    free = []
    for t in range(n):
        if not space.contains({t: K.s_one(incl.ctx)}):
            free.append(t)
            for b in range(m):
                space.add(H.mult_vec(incl.embed_col(b), H.basis_vec(t)))
    if space.rank != n or len(free) != n // m:
        raise HopfkitError("free basis not found along declared order")
    return free


class Decomposer:
    """Decompose H-vectors over a free basis: x = sum_i embed(k_i) * h_i (side='left')
    or x = sum_i h_i * embed(k_i) (side='right')."""

    __slots__ = ("incl", "free", "side", "inv", "m")

    def __init__(self, incl, free, side):
        H, Kk = incl.H, incl.K
        n, m = H.dim, Kk.dim
        cols = []
        for i in free:
            hi = H.basis_vec(i)
            for b in range(m):
                if side == "left":
                    v = H.mult_vec(incl.embed_col(b), hi)
                else:
                    v = H.mult_vec(hi, incl.embed_col(b))
                z = K.s_zero(incl.ctx)
                dense = [z] * n
                for idx, s in v.items():
                    dense[idx] = s
                cols.append(dense)
        M = Matrix(incl.N, [list(r) for r in zip(*cols)])
        inv = M.inverse()
        if inv is None:
            raise PipelineError("free basis is not %s-regular along declared order" % side)
        self.incl = incl
        self.free = free
        self.side = side
        self.inv = inv
        self.m = m

    def __call__(self, hvec):
        """List (per free index) of dense K-coordinate raw vectors."""
        ctx = self.incl.ctx
        n = self.incl.H.dim
        inv = self.inv
        z = K.s_zero(ctx)
        out = [z] * n
        for j, s in hvec.items():
            if K.s_is_zero(s):
                continue
            col = inv.col_raw(j)
            for i in range(n):
                c = col[i]
                if not K.s_is_zero(c):
                    out[i] = K.s_add(ctx, out[i], K.s_mul(ctx, c, s))
        m = self.m
        return [out[i * m : (i + 1) * m] for i in range(len(self.free))]


class FrobeniusData:
    """Everything attached to a chosen Frobenius morphism for an inclusion."""

    __slots__ = (
        "incl",
        "bq",
        "lam0",
        "lam",
        "scale",
        "lamH",
        "tr_K",
        "free",
        "deltas",
        "left_decomp",
        "right_decomp",
        "Lambda",
    )

    def __init__(self, incl, bq, lam0, lam, scale, lamH, tr_K, free, deltas, left_decomp, right_decomp, Lambda):
        self.incl = incl
        self.bq = bq
        self.lam0 = lam0
        self.lam = lam
        self.scale = scale
        self.lamH = lamH
        self.tr_K = tr_K
        self.free = free
        self.deltas = deltas
        self.left_decomp = left_decomp
        self.right_decomp = right_decomp
        self.Lambda = Lambda

    @property
    def rank(self):
        return len(self.free)

    def tr_vec(self, hvec):
        """tr of a sparse H-vector, as a sparse K-vector."""
        ctx = self.incl.ctx
        out = {}
        for i, s in hvec.items():
            if K.s_is_zero(s):
                continue
            col = self.tr_K.col_raw(i)
            for b, c in enumerate(col):
                if not K.s_is_zero(c):
                    prev = out.get(b)
                    val = K.s_mul(ctx, s, c)
                    out[b] = val if prev is None else K.s_add(ctx, prev, val)
        return _vec_clean(out)

    def delta_vec(self, i):
        ctx = self.incl.ctx
        return {
            t: s for t, s in enumerate(self.deltas[i]) if not K.s_is_zero(s)
        }


def frobenius_morphism(incl, bq, lam):
    """tr(h) = lambda(bar(h_(1))) h_(2), rewritten in K-coordinates and verified."""
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    n, m = H.dim, Kk.dim
    lamH = lift_bar_functional(bq, lam)
    images = []
    z = K.s_zero(ctx)
    for i in range(n):
        acc = {}
        for x, s in H.comult[i]:
            j, k2 = divmod(x, n)
            c = K.s_mul(ctx, lamH.values[j], s)
            if not K.s_is_zero(c):
                _vec_accum_flat(ctx, acc, {k2: c})
        dense = [z] * n
        for idx, s in acc.items():
            dense[idx] = s
        images.append(dense)
    coords = incl.to_K_coords_many(images)
    if coords is None:
        raise PipelineError("image of tr is not contained in K")
    tr_K = Matrix(incl.N, [list(r) for r in zip(*coords)])
    _verify_frobenius_morphism(incl, tr_K)
    return tr_K, lamH


def _verify_frobenius_morphism(incl, tr_K):
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    n, m = H.dim, Kk.dim

    def tr_of(hvec):
        out = {}
        for i, s in hvec.items():
            if K.s_is_zero(s):
                continue
            for b in range(m):
                c = tr_K._data[b][i]
                if not K.s_is_zero(c):
                    _vec_accum_flat(ctx, out, {b: K.s_mul(ctx, s, c)})
        return _clean_flat(out)

    # K-K-bimodule property: tr(k h k') = k tr(h) k'
    for b in range(m):
        col_b = incl.embed_col(b)
        for i in range(n):
            hb = H.mult_vec(col_b, H.basis_vec(i))
            lhs = tr_of(hb)
            rhs = _clean_flat(Kk.mult_vec(Kk.basis_vec(b), tr_of(H.basis_vec(i))))
            if lhs != rhs:
                raise PipelineError("tr is not a left K-module map at (%d,%d)" % (b, i))
            hb2 = H.mult_vec(H.basis_vec(i), col_b)
            lhs2 = tr_of(hb2)
            rhs2 = _clean_flat(Kk.mult_vec(tr_of(H.basis_vec(i)), Kk.basis_vec(b)))
            if lhs2 != rhs2:
                raise PipelineError("tr is not a right K-module map at (%d,%d)" % (i, b))

    # right H-comodule property: tr(h_(1)) x h_(2) = Delta_K(tr h) with second leg in H
    for i in range(n):
        lhs = {}
        for x, s in H.comult[i]:
            j, k2 = divmod(x, n)
            tj = tr_of({j: s})
            for b, c in tj.items():
                _vec_accum_flat(ctx, lhs, {b * n + k2: c})
        rhs = {}
        for b, c in tr_of(H.basis_vec(i)).items():
            for x, s in Kk.comult[b]:
                p, q = divmod(x, m)
                cs = K.s_mul(ctx, c, s)
                for hq, e in incl.embed_col(q).items():
                    _vec_accum_flat(ctx, rhs, {p * n + hq: K.s_mul(ctx, cs, e)})
        if _clean_flat(lhs) != _clean_flat(rhs):
            raise PipelineError("tr is not a morphism of right H-comodules at %d" % i)


def dual_bases(incl, tr_K, free, verify=True):
    """Solve tr(h_j delta_i) = delta_ij 1_K, then verify both dual-basis identities."""
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    n, m = H.dim, Kk.dim
    r = len(free)
    rows = []
    for j in free:
        hj = H.basis_vec(j)
        block = [[None] * n for _ in range(m)]
        for t in range(n):
            w = H.mult_vec(hj, H.basis_vec(t))
            col = [K.s_zero(ctx)] * m
            for idx, s in w.items():
                for b in range(m):
                    c = tr_K._data[b][idx]
                    if not K.s_is_zero(c):
                        col[b] = K.s_add(ctx, col[b], K.s_mul(ctx, s, c))
            for b in range(m):
                block[b][t] = col[b]
        rows.extend(block)
    A = Matrix(incl.N, rows)
    z = K.s_zero(ctx)
    rhs_cols = []
    unit_K = [Kk.unit[b] for b in range(m)]
    for i in range(r):
        col = [z] * (r * m)
        for b in range(m):
            col[i * m + b] = unit_K[b]
        rhs_cols.append(col)
    B = Matrix(incl.N, [list(rr) for rr in zip(*rhs_cols)])
    try:
        sol = A.solve(B)
    except InconsistentSystemError:
        raise PipelineError("dual-basis system inconsistent (extension not Frobenius?)") from None
    deltas = [sol.particular.col_raw(i) for i in range(r)]
    if verify:
        _verify_dual_bases(incl, tr_K, free, deltas)
    return deltas


def _verify_dual_bases(incl, tr_K, free, deltas):
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    n, m = H.dim, Kk.dim
    r = len(free)

    def tr_vec(hvec):
        out = {}
        for i, s in hvec.items():
            if K.s_is_zero(s):
                continue
            for b in range(m):
                c = tr_K._data[b][i]
                if not K.s_is_zero(c):
                    _vec_accum_flat(ctx, out, {b: K.s_mul(ctx, s, c)})
        return _clean_flat(out)

    delta_sparse = [
        {t: s for t, s in enumerate(dv) if not K.s_is_zero(s)} for dv in deltas
    ]
    right_dec = Decomposer(incl, free, "right")

    for x in range(n):
        ex = H.basis_vec(x)
        acc1 = {}
        acc2 = {}
        for i in range(r):
            # h = sum_i tr(h delta_i) h_i
            ki = tr_vec(H.mult_vec(ex, delta_sparse[i]))
            _vec_accum(H, acc1, H.mult_vec(incl.embed_vec(ki), H.basis_vec(free[i])))
            # h = sum_i delta_i tr(h_i h)
            ki2 = tr_vec(H.mult_vec(H.basis_vec(free[i]), ex))
            _vec_accum(H, acc2, H.mult_vec(delta_sparse[i], incl.embed_vec(ki2)))
        if _vec_clean(acc1) != ex or _vec_clean(acc2) != ex:
            raise PipelineError("dual-basis reconstruction identity fails at basis %d" % x)

    # sum_i delta_i x_K h_i h == sum_i h delta_i x_K h_i, inside H (x)_K H
    for x in range(n):
        ex = H.basis_vec(x)
        lhs = {}
        rhs = {}
        for i in range(r):
            hih = H.mult_vec(H.basis_vec(free[i]), ex)
            parts = right_dec(delta_sparse[i])
            for j in range(r):
                kv = {b: c for b, c in enumerate(parts[j]) if not K.s_is_zero(c)}
                if kv:
                    contrib = H.mult_vec(incl.embed_vec(kv), hih)
                    for idx, s in contrib.items():
                        _vec_accum_flat(ctx, lhs, {j * n + idx: s})
            hdelta = H.mult_vec(ex, delta_sparse[i])
            parts2 = right_dec(hdelta)
            hi = H.basis_vec(free[i])
            for j in range(r):
                kv = {b: c for b, c in enumerate(parts2[j]) if not K.s_is_zero(c)}
                if kv:
                    contrib = H.mult_vec(incl.embed_vec(kv), hi)
                    for idx, s in contrib.items():
                        _vec_accum_flat(ctx, rhs, {j * n + idx: s})
        if _clean_flat(lhs) != _clean_flat(rhs):
            raise PipelineError("dual-basis exchange identity fails at basis %d" % x)


# ---------------------------------------------------------------------------
# centrality / normality / bar-dual unimodularity
# ---------------------------------------------------------------------------


def lambda_left_right_symmetric(incl, bq, lam):
    """lambda(bar h_(1)) h_(2) == h_(1) lambda(bar h_(2)) for all basis h."""
    H = incl.H
    ctx = incl.ctx
    n = H.dim
    lamH = lift_bar_functional(bq, lam)
    for i in range(n):
        left = {}
        right = {}
        for x, s in H.comult[i]:
            j, k2 = divmod(x, n)
            lt = K.s_mul(ctx, lamH.values[j], s)
            if not K.s_is_zero(lt):
                _vec_accum_flat(ctx, left, {k2: lt})
            rt = K.s_mul(ctx, lamH.values[k2], s)
            if not K.s_is_zero(rt):
                _vec_accum_flat(ctx, right, {j: rt})
        if _clean_flat(left) != _clean_flat(right):
            return False
    return True


def tr_bicomodule_map(incl, tr_K):
    """h_(1) x tr(h_(2)) x h_(3) == Delta2 of tr(h) with outer legs embedded."""
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    n, m = H.dim, Kk.dim
    for i in range(n):
        lhs = {}
        for (a, b, c), s in H.comult2(i):
            for kb in range(m):
                coeff = tr_K._data[kb][b]
                if not K.s_is_zero(coeff):
                    key = (a * m + kb) * n + c
                    _vec_accum_flat(ctx, lhs, {key: K.s_mul(ctx, s, coeff)})
        rhs = {}
        tri = {}
        for b in range(m):
            coeff = tr_K._data[b][i]
            if not K.s_is_zero(coeff):
                tri[b] = coeff
        for b, coeff in tri.items():
            for (p, q, rr), s in Kk.comult2(b):
                cs = K.s_mul(ctx, coeff, s)
                for hp, e1 in incl.embed_col(p).items():
                    cse = K.s_mul(ctx, cs, e1)
                    for hr, e2 in incl.embed_col(rr).items():
                        key = (hp * m + q) * n + hr
                        _vec_accum_flat(ctx, rhs, {key: K.s_mul(ctx, cse, e2)})
        if _clean_flat(lhs) != _clean_flat(rhs):
            return False
    return True


def is_central_extension(incl, bq=None, lam=None, tr_K=None):
    """Central Frobenius test: the lambda symmetry and the bicomodule identity.

    Both characterizations are evaluated and asserted to agree.
    """
    if bq is None:
        bq = bar_quotient(incl)
    if lam is None:
        lam = right_integral_bar_dual(bq)
    sym = lambda_left_right_symmetric(incl, bq, lam)
    if tr_K is not None:
        bic = tr_bicomodule_map(incl, tr_K)
        if bic != sym:
            raise PipelineError(
                "centrality criteria disagree: lambda-symmetry=%s, bicomodule=%s" % (sym, bic)
            )
    return sym


def bar_dual_is_unimodular(bq, lam):
    """lambda(h_(1)) h_(2) == h_(1) lambda(h_(2)) inside Hbar."""
    ctx = bq.incl.ctx
    d = bq.dimbar
    for t in range(d):
        left = {}
        right = {}
        for x, s in bq.comult_bar[t]:
            a, b = divmod(x, d)
            lt = K.s_mul(ctx, lam.values[a], s)
            if not K.s_is_zero(lt):
                _vec_accum_flat(ctx, left, {b: lt})
            rt = K.s_mul(ctx, lam.values[b], s)
            if not K.s_is_zero(rt):
                _vec_accum_flat(ctx, right, {a: rt})
        if _clean_flat(left) != _clean_flat(right):
            return False
    return True


def is_normal_subalgebra(incl):
    """Closure of embed(K) under left and right adjoint actions of H."""
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    n, m = H.dim, Kk.dim
    image = incl.image_space()
    for i in range(n):
        for b in range(m):
            col = incl.embed_col(b)
            acc_l = {}
            acc_r = {}
            for x, s in H.comult[i]:
                a, c = divmod(x, n)
                sc = H.antipode_vec({c: s})
                _vec_accum(H, acc_l, H.mult_vec(H.mult_vec(H.basis_vec(a), col), sc))
                sa = H.antipode_vec({a: s})
                _vec_accum(H, acc_r, H.mult_vec(H.mult_vec(sa, col), H.basis_vec(c)))
            if not image.contains(_vec_clean(acc_l)) or not image.contains(_vec_clean(acc_r)):
                return False
    return True


# ---------------------------------------------------------------------------
# the full analysis pipeline
# ---------------------------------------------------------------------------


class ExtensionAnalysis:
    __slots__ = (
        "incl",
        "report",
        "bq",
        "lam0",
        "lam",
        "scale",
        "decision",
        "Lambda",
        "frob",
        "central",
        "normal",
        "bar_dual_unimodular",
    )

    def __init__(self, **kw):
        for k2 in self.__slots__:
            setattr(self, k2, kw.get(k2))


def make_frobenius_data(incl, bq, lam0, lam_scale=1):
    """Assemble FrobeniusData with the canonical normalization of lambda.

    The deterministic solver representative lambda0 is rescaled so that the
    unit constraint sum_i eps(delta_i) eps(h_i) = 1 holds (when the sum is
    nonzero); this makes the induced lax/oplax pair strictly separable
    whenever separability-up-to-scalar holds, and reproduces the reference
    values tr(1) = dim(H)/dim(K) on the worked examples.  A further explicit
    ``lam_scale`` multiplier is applied afterwards (used by the
    scale-robustness property checks).
    """
    H = incl.H
    ctx = incl.ctx
    free = free_basis(incl)
    tr0, lamH0 = frobenius_morphism(incl, bq, lam0)
    deltas0 = dual_bases(incl, tr0, free, verify=False)

    s = K.s_zero(ctx)
    for i, t in enumerate(free):
        eps_delta = K.s_zero(ctx)
        for idx, v in enumerate(deltas0[i]):
            if not K.s_is_zero(v):
                eps_delta = K.s_add(ctx, eps_delta, K.s_mul(ctx, H.counit[idx], v))
        s = K.s_add(ctx, s, K.s_mul(ctx, eps_delta, H.counit[t]))

    factor = Cyclotomic(incl.N, s) if not K.s_is_zero(s) else Cyclotomic.rational(1)
    factor = factor * Cyclotomic.promote(lam_scale)
    fd = factor.lift(incl.N).data
    finv = K.s_inv(ctx, fd)

    lam = lam0.scale(factor).lift(incl.N)
    lamH = lamH0.scale(factor).lift(incl.N)
    tr_K = tr0.scale(factor)
    deltas = [[K.s_mul(ctx, finv, v) for v in dv] for dv in deltas0]
    _verify_dual_bases(incl, tr_K, free, deltas)

    Lambda = check_integral_type(incl, bq, lam)
    left_dec = Decomposer(incl, free, "left")
    right_dec = Decomposer(incl, free, "right")
    return FrobeniusData(
        incl, bq, lam0, lam, factor, lamH, tr_K, free, deltas, left_dec, right_dec, Lambda
    )


def rescale_frobenius_data(frob, c):
    """A new FrobeniusData with lambda (hence tr) multiplied by the scalar c."""
    incl = frob.incl
    c = Cyclotomic.promote(c).lift(incl.N)
    ctx = incl.ctx
    cinv = K.s_inv(ctx, c.data)
    deltas = [[K.s_mul(ctx, cinv, v) for v in dv] for dv in frob.deltas]
    Lambda = frob.Lambda.scale(Cyclotomic(incl.N, cinv)) if frob.Lambda is not None else None
    return FrobeniusData(
        incl,
        frob.bq,
        frob.lam0,
        frob.lam.scale(c),
        frob.scale * c,
        frob.lamH.scale(c),
        frob.tr_K.scale(c),
        frob.free,
        deltas,
        frob.left_decomp,
        frob.right_decomp,
        Lambda,
    )


def analyze_extension(incl, lam_scale=1, with_frobenius_data=True):
    """Run the full pipeline; returns an ExtensionAnalysis with a Report."""
    rep = Report("analyze %s -> %s" % (incl.K.name, incl.H.name))
    vrep = verify_inclusion(incl)
    rep.extend(vrep, prefix="inclusion/")
    if not vrep.ok:
        return ExtensionAnalysis(incl=incl, report=rep)

    bq = bar_quotient(incl)
    rep.add("bar-quotient-dim", True, detail="dim Hbar = %d" % bq.dimbar, anchor="bar-quotient")
    lam0 = right_integral_bar_dual(bq)
    rep.add("bar-dual-integral-1dim", True, anchor="integral-type")

    decision = is_frobenius_extension(incl, bq, lam0)
    rep.add(
        "frobenius",
        True,
        detail="frobenius=%s (chi and alpha criteria agree)" % decision.frobenius,
        anchor="schneider-criterion",
    )
    Lambda = check_integral_type(incl, bq, lam0)
    rep.add(
        "integral-type-element",
        Lambda is not None,
        detail="Lambda exists" if Lambda is not None else "no Lambda",
        anchor="integral-type",
    )
    bdu = bar_dual_is_unimodular(bq, lam0)
    rep.add("bar-dual-unimodular", True, detail=str(bdu), anchor="bar-dual-unimodularity")
    normal = is_normal_subalgebra(incl)
    rep.add("normal-subalgebra", True, detail=str(normal), anchor="normality")

    frob = None
    central = None
    if decision.frobenius and with_frobenius_data:
        frob = make_frobenius_data(incl, bq, lam0, lam_scale=lam_scale)
        rep.add("frobenius-morphism", True, anchor="good-frob-morphism")
        rep.add("dual-bases", True, anchor="dual-generators")
        central = is_central_extension(incl, bq, lam0, tr_K=frob.tr_K)
        rep.add("central", True, detail=str(central), anchor="central-frobenius")
        if central and not bdu:
            rep.add("central-implies-bar-dual-unimodular", False, anchor="bar-dual-unimodularity")
        else:
            rep.add("central-implies-bar-dual-unimodular", True, anchor="bar-dual-unimodularity")
    elif decision.frobenius:
        central = is_central_extension(incl, bq, lam0)

    return ExtensionAnalysis(
        incl=incl,
        report=rep,
        bq=bq,
        lam0=lam0,
        lam=frob.lam if frob is not None else lam0,
        scale=frob.scale if frob is not None else Cyclotomic.rational(1),
        decision=decision,
        Lambda=Lambda,
        frob=frob,
        central=central,
        normal=normal,
        bar_dual_unimodular=bdu,
    )


def fms_lambda_construction(incl):
    """lambda'(bar h) := lambda_H(h Lambda_K) from a right integral of H* and a
    left integral of K; returns the functional on H (for proportionality checks)."""
    H, Kk = incl.H, incl.K
    ctx = incl.ctx
    lamH_dual = right_integral_of_dual(H)
    LamK = integral_space(Kk, "left")
    if len(LamK) != 1:
        raise PipelineError("left integral space of K not one-dimensional")
    lk = {b: LamK[0]._data[b][0] for b in range(Kk.dim) if not K.s_is_zero(LamK[0]._data[b][0])}
    lk_H = incl.embed_vec(lk)
    vals = []
    for i in range(H.dim):
        vals.append(lamH_dual(H.mult_vec(H.basis_vec(i), lk_H)))
    return LinearFunctional(incl.N, vals)
