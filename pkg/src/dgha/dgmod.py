"""DG modules over a truncated DG algebra.

Two module representations carry everything:

* SemiFreeDGModule: an ordered semi-basis with a triangular differential
  (each generator's differential is an A-linear combination of strictly
  earlier generators).  Coefficient data is the "ALin" form: a dict
  {generator j: sparse A-coefficient vector}.
* ExplicitDGModule: degreewise bases with differential matrices and a
  pluggable action of the algebra basis.  Expansions of semi-free modules,
  the trivial module k, the regular module and the diagonal bimodule over
  A^e are all built in this form.

Cohomology lives on the explicit side; everything is certified only up to
one degree below the stored truncation (boundaries into the top degree
cannot be formed).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingStageLabels, RangeExceeded
from .exactla import Matrix, QuotientSpace, svec_axpy, svec_scale
from .gralg import CohomologyAlgebra, TruncatedDGAlgebra

# ALin: dict {generator index -> sparse A-coefficient vector}


@dataclass
class Gen:
    name: str
    degree: int
    stage: int | None = 0


class SemiFreeDGModule:
    def __init__(self, algebra: TruncatedDGAlgebra, gens: list[Gen],
                 dgen: list[dict], D: int | None = None, name: str = "F"):
        self.algebra = algebra
        self.gens = gens
        self.dgen = dgen  # per generator: ALin over earlier generators
        if gens:
            cap = min(g.degree for g in gens) + algebra.D
            self.D = cap if D is None else min(D, cap)
        else:
            self.D = algebra.D if D is None else D
        self.name = name
        self._expansion = None

    def bottom(self) -> int | None:
        return min((g.degree for g in self.gens), default=None)

    def coeff_degree(self, i: int, j: int) -> int:
        return self.gens[i].degree + 1 - self.gens[j].degree

    def is_minimal(self) -> bool:
        """True iff every differential coefficient lies in the augmentation
        ideal, i.e. no degree-0 (unit) coefficients occur."""
        for i, al in enumerate(self.dgen):
            for j, coeff in al.items():
                if self.coeff_degree(i, j) == 0 and coeff:
                    return False
        return True

    def verify(self) -> None:
        A = self.algebra
        for i, al in enumerate(self.dgen):
            for j, coeff in al.items():
                if j >= i:
                    raise AssertionError("differential is not triangular")
                si, sj = self.gens[i].stage, self.gens[j].stage
                if si is not None and sj is not None and coeff and sj >= si:
                    raise AssertionError("stage labels are not decreasing")
                d = self.coeff_degree(i, j)
                if coeff and not (0 <= d <= A.D):
                    raise AssertionError("coefficient degree out of range")
        M = self.expand()
        for n in range(M.lo, M.top - 1):
            prod = M.diff_matrix(n + 1).mul(M.diff_matrix(n))
            if not prod.is_zero():
                raise AssertionError(f"d^2 != 0 at degree {n}")

    # --- conversions -------------------------------------------------------

    def expand(self) -> "ExplicitDGModule":
        if self._expansion is None:
            self._expansion = _expand(self)
        return self._expansion

    def alin_from_expanded(self, n: int, vec: dict) -> dict:
        M = self.expand()
        out: dict = {}
        for pos, c in vec.items():
            i, a_idx = M.basis[n][pos]
            out.setdefault(i, {})[a_idx] = c
        return out

    def expanded_from_alin(self, n: int, alin: dict) -> dict:
        M = self.expand()
        out = {}
        for i, coeff in alin.items():
            for a_idx, c in coeff.items():
                out[M.index[n][(i, a_idx)]] = c
        return out

    def suspend(self, shift: int) -> "SemiFreeDGModule":
        """The shift-fold suspension: degrees drop by `shift`, coefficient
        signs follow the suspension sign rules."""
        f = self.algebra.field
        gens = [Gen(g.name, g.degree - shift, g.stage) for g in self.gens]
        dgen = []
        for i, al in enumerate(self.dgen):
            new = {}
            for j, coeff in al.items():
                adeg = self.coeff_degree(i, j)
                sgn = f.one if (shift * (1 + adeg)) % 2 == 0 else f.neg(f.one)
                new[j] = svec_scale(f, sgn, coeff)
            dgen.append(new)
        return SemiFreeDGModule(self.algebra, gens, dgen,
                                name=f"S^{shift}{self.name}")


def _expand(F: SemiFreeDGModule) -> "ExplicitDGModule":
    A = F.algebra
    f = A.field
    if not F.gens:
        return ExplicitDGModule(A, 0, F.D, {}, {}, lambda *a: {}, name=F.name)
    lo = F.bottom()
    basis: dict = {}
    for n in range(lo, F.D + 1):
        layer = []
        for i, g in enumerate(F.gens):
            ad = n - g.degree
            if 0 <= ad <= A.D:
                layer.extend((i, k) for k in range(A.dim(ad)))
        basis[n] = layer
    index = {n: {p: k for k, p in enumerate(layer)} for n, layer in basis.items()}

    def column(n, i, a_idx):
        gdeg = F.gens[i].degree
        ad = n - gdeg
        col: dict = {}
        for r, c in A.diff_vec(ad, {a_idx: f.one}).items():
            col[index[n + 1][(i, r)]] = c
        sgn = f.one if ad % 2 == 0 else f.neg(f.one)
        for j, coeff in F.dgen[i].items():
            cd = F.coeff_degree(i, j)
            prod = A.mul_vec(ad, {a_idx: sgn}, cd, coeff)
            for r, c in prod.items():
                key = index[n + 1][(j, r)]
                val = f.add(col.get(key, f.zero), c)
                if f.is_zero(val):
                    col.pop(key, None)
                else:
                    col[key] = val
        return col

    diff = {}
    for n in range(lo, F.D):
        cols = [column(n, i, a) for (i, a) in basis[n]]
        diff[n] = Matrix(f, len(basis[n + 1]), len(basis[n]), cols)

    def act_basis(d, g_idx, n, pos):
        i, a_idx = basis[n][pos]
        gdeg = F.gens[i].degree
        prod = A.mul_basis(d, g_idx, n - gdeg, a_idx)
        return {index[n + d][(i, r)]: c for r, c in prod.items()}

    labels = {
        n: [f"{A.labels[n - F.gens[i].degree][a]}.{F.gens[i].name}"
            for (i, a) in layer]
        for n, layer in basis.items()
    }
    M = ExplicitDGModule(A, lo, F.D, {n: len(l) for n, l in basis.items()},
                         diff, act_basis, labels=labels, name=F.name)
    M.basis = basis
    M.index = index
    return M


class ExplicitDGModule:
    """Degreewise module data on degrees lo..top (top = truncation).

    `dims` maps degree -> dimension (missing means zero), `diff` maps degree
    n -> matrix M^n -> M^{n+1} (n < top), `act_basis(d, g, n, m)` gives the
    action of algebra basis element (d, g) on module basis element (n, m) as
    a sparse vector in degree n+d.  lo is an honest lower bound: everything
    below it is genuinely zero, while degrees above top are unknown.
    """

    def __init__(self, algebra, lo, top, dims, diff, act_basis,
                 labels=None, name="M"):
        self.algebra = algebra
        self.lo = lo
        self.top = top
        self.dims = dict(dims)
        self.diff = diff
        self._act_basis = act_basis
        self.labels = labels or {}
        self.name = name
        self._act_cache: dict = {}
        self._cohomology: dict = {}

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def diff_matrix(self, n: int) -> Matrix:
        m = self.diff.get(n)
        if m is None:
            return Matrix.zero(self.algebra.field, self.dim(n + 1), self.dim(n))
        return m

    def act_matrix(self, d: int, g_idx: int, n: int) -> Matrix:
        key = (d, g_idx, n)
        m = self._act_cache.get(key)
        if m is None:
            f = self.algebra.field
            cols = [self._act_basis(d, g_idx, n, k) for k in range(self.dim(n))]
            m = Matrix(f, self.dim(n + d), self.dim(n), cols)
            self._act_cache[key] = m
        return m

    def act_vec(self, d: int, avec: dict, n: int, mvec: dict) -> dict:
        f = self.algebra.field
        out: dict = {}
        for g_idx, ca in avec.items():
            contrib = self.act_matrix(d, g_idx, n).apply(mvec)
            out = svec_axpy(f, ca, contrib, out)
        return out

    @property
    def certified_upto(self) -> int:
        return self.top - 1

    def cohomology(self, n: int) -> QuotientSpace:
        """ker/im quotient at degree n with chosen representatives; certified
        for n <= top-1 (degrees below lo are genuinely zero)."""
        if n > self.top - 1:
            raise RangeExceeded(f"H^{n} outside certified range "
                                f"[.., {self.top - 1}]")
        if n < self.lo:
            return QuotientSpace(self.algebra.field, 0, [], [])
        q = self._cohomology.get(n)
        if q is None:
            f = self.algebra.field
            from .exactla import ColumnEchelon
            ech = ColumnEchelon(f, track=True)
            ker = []
            for j, col in enumerate(self.diff_matrix(n).columns):
                dep = ech.feed(j, col)
                if dep is not None:
                    ker.append(dep)
            im = [] if n == self.lo else list(self.diff_matrix(n - 1).columns)
            q = QuotientSpace(f, self.dim(n), im, ker)
            self._cohomology[n] = q
        return q

    def hdim(self, n: int) -> int:
        return self.cohomology(n).dim

    def verify(self) -> None:
        f = self.algebra.field
        A = self.algebra
        for n in range(self.lo, self.top - 1):
            if not self.diff_matrix(n + 1).mul(self.diff_matrix(n)).is_zero():
                raise AssertionError(f"d^2 != 0 at degree {n}")
        for n in range(self.lo, self.top + 1):
            for m_idx in range(self.dim(n)):
                v = self.act_vec(0, {0: f.one}, n, {m_idx: f.one})
                if v != {m_idx: f.one}:
                    raise AssertionError("unit does not act as identity")
        for d in range(1, A.D + 1):
            for n in range(self.lo, self.top - d):
                for g_idx in range(A.dim(d)):
                    da = A.diff_vec(d, {g_idx: f.one})
                    for m_idx in range(self.dim(n)):
                        am = self._act_basis(d, g_idx, n, m_idx)
                        lhs = self.diff_matrix(n + d).apply(am)
                        rhs = self.act_vec(d + 1, da, n, {m_idx: f.one})
                        sgn = f.one if d % 2 == 0 else f.neg(f.one)
                        dm = self.diff_matrix(n).apply({m_idx: f.one})
                        rhs = svec_axpy(f, sgn,
                                        self.act_vec(d, {g_idx: f.one}, n + 1, dm),
                                        rhs)
                        if lhs != rhs:
                            raise AssertionError(
                                f"action Leibniz fails at (d={d}, n={n})")


class GradedModule(ExplicitDGModule):
    """A graded module over a zero-differential algebra (e.g. H(A)); an
    ExplicitDGModule whose differential vanishes."""


def module_k(A: TruncatedDGAlgebra) -> ExplicitDGModule:
    """The trivial module: k in degree 0, positive degrees act as zero."""
    f = A.field

    def act(d, g_idx, n, m_idx):
        if d == 0 and g_idx == 0:
            return {m_idx: f.one}
        return {}

    return ExplicitDGModule(A, 0, A.D, {0: 1}, {}, act,
                            labels={0: ["1"]}, name="k")


def regular_module(A: TruncatedDGAlgebra) -> ExplicitDGModule:
    f = A.field
    dims = {n: A.dim(n) for n in range(A.D + 1)}
    diff = {n: A.diff[n] for n in range(A.D)} if not A.zero_differential else {}

    def act(d, g_idx, n, m_idx):
        return A.mul_basis(d, g_idx, n, m_idx)

    return ExplicitDGModule(A, 0, A.D, dims, diff, act,
                            labels={n: list(A.labels[n]) for n in dims},
                            name=A.name)


def diagonal_bimodule(env: TruncatedDGAlgebra) -> ExplicitDGModule:
    """A as a left module over A^e = A (x) A^op: (a(x)b).m = +-(a m b)."""
    A = env.envelope_of
    idx = env.envelope_index
    f = A.field
    dims = {n: A.dim(n) for n in range(A.D + 1)}
    diff = {n: A.diff[n] for n in range(A.D)} if not A.zero_differential else {}

    def act(d, pair_idx, n, m_idx):
        da, i, j = idx.pairs[d][pair_idx]
        db = d - da
        left = A.mul_basis(da, i, n, m_idx)
        out = A.mul_vec(da + n, left, db, {j: f.one})
        if (db * n) % 2:
            out = svec_scale(f, f.neg(f.one), out)
        return out

    return ExplicitDGModule(env, 0, A.D, dims, diff, act,
                            labels={n: list(A.labels[n]) for n in dims},
                            name=A.name)


def cohomology_module(M: ExplicitDGModule, HA: CohomologyAlgebra) -> GradedModule:
    """H(M) as a graded module over H(A), with cocycle representatives and a
    class map attached (fields .ambient, .hclassify)."""
    hi = M.certified_upto
    dims = {}
    for n in range(M.lo, hi + 1):
        d = M.cohomology(n).dim
        if d:
            dims[n] = d

    def act(d, h_idx, n, c_idx):
        rep_h = HA.rep_vec(d, {h_idx: HA.A.field.one})
        rep_m = M.cohomology(n).reps[c_idx]
        prod = M.act_vec(d, rep_h, n, rep_m)
        cls = M.cohomology(n + d).classify(prod)
        assert cls is not None
        return cls

    N = GradedModule(HA.H, M.lo, hi, dims, {}, act,
                     name=f"H({M.name})")
    N.ambient = M
    N.hA = HA
    N.hclassify = lambda n, vec: M.cohomology(n).classify(vec)
    N.hrep = lambda n, c_idx: dict(M.cohomology(n).reps[c_idx])
    return N


@dataclass
class ComplexOfVectorSpaces:
    """Terms and differentials of a complex of finite-dimensional spaces on
    the degree interval [lo, hi]; maps stored for lo <= n < hi."""

    field: object
    lo: int
    hi: int
    dims: dict
    maps: dict
    labels: dict | None = None

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> Matrix:
        m = self.maps.get(n)
        if m is None:
            return Matrix.zero(self.field, self.dim(n + 1), self.dim(n))
        return m

    def verify_dd(self) -> None:
        for n in range(self.lo, self.hi - 1):
            if not self.d(n + 1).mul(self.d(n)).is_zero():
                raise AssertionError(f"d^2 != 0 at degree {n}")

    def cohomology_dim(self, n: int) -> int:
        """dim H^n, certified for lo <= n <= hi-1."""
        if not (self.lo <= n <= self.hi - 1):
            raise RangeExceeded(f"H^{n} outside [{self.lo}, {self.hi - 1}]")
        from .exactla import rank
        ker = self.dim(n) - rank(self.d(n))
        im = 0 if n == self.lo else rank(self.d(n - 1))
        return ker - im

    def total_cohomology_dim(self) -> int:
        return sum(self.cohomology_dim(n) for n in range(self.lo, self.hi))


def hom_complex(F: SemiFreeDGModule, N: ExplicitDGModule) -> ComplexOfVectorSpaces:
    """Hom_A(F, N) for a finite semi-free source: a degree-d element is a free
    choice of images f(e_i) in N^{d+|e_i|}; the differential is
    (df)(e) = d_N(f(e)) - (-1)^d f(d_F e)."""
    A = F.algebra
    f = A.field
    if not F.gens:
        return ComplexOfVectorSpaces(f, 0, 0, {}, {})
    maxdeg = max(g.degree for g in F.gens)
    lo = N.lo - maxdeg
    hi = N.top - maxdeg
    basis = {}
    index = {}
    for d in range(lo, hi + 1):
        layer = [(i, m) for i, g in enumerate(F.gens)
                 for m in range(N.dim(d + g.degree))]
        basis[d] = layer
        index[d] = {p: k for k, p in enumerate(layer)}

    incoming = [[] for _ in F.gens]  # for i: list of (l, coeff) with i in dgen[l]
    for l, al in enumerate(F.dgen):
        for j, coeff in al.items():
            incoming[j].append((l, coeff))

    maps = {}
    for d in range(lo, hi):
        cols = []
        for (i, m) in basis[d]:
            gdeg = F.gens[i].degree
            col: dict = {}
            for r, c in N.diff_matrix(d + gdeg).apply({m: f.one}).items():
                col[index[d + 1][(i, r)]] = c
            for (l, coeff) in incoming[i]:
                adeg = F.coeff_degree(l, i)
                # -(-1)^{d(1+|a|)} a.m placed in the l-slot
                sgn_exp = d * (1 + adeg) + 1
                sv = N.act_vec(adeg, coeff, d + gdeg, {m: f.one})
                if sgn_exp % 2:
                    sv = svec_scale(f, f.neg(f.one), sv)
                for r, c in sv.items():
                    key = index[d + 1][(l, r)]
                    val = f.add(col.get(key, f.zero), c)
                    if f.is_zero(val):
                        col.pop(key, None)
                    else:
                        col[key] = val
            cols.append(col)
        maps[d] = Matrix(f, len(basis[d + 1]), len(basis[d]), cols)
    dims = {d: len(layer) for d, layer in basis.items() if layer}
    return ComplexOfVectorSpaces(f, lo, hi, dims, maps)


def tensor_k(F: SemiFreeDGModule) -> ComplexOfVectorSpaces:
    """k (x)_A F: spanned by the generators; the differential keeps only the
    unit coefficients, so it vanishes exactly when F is minimal."""
    A = F.algebra
    f = A.field
    if not F.gens:
        return ComplexOfVectorSpaces(f, 0, 0, {}, {})
    lo = min(g.degree for g in F.gens)
    hi = max(g.degree for g in F.gens)
    by_deg: dict = {}
    for i, g in enumerate(F.gens):
        by_deg.setdefault(g.degree, []).append(i)
    pos = {n: {i: k for k, i in enumerate(l)} for n, l in by_deg.items()}
    maps = {}
    for n in range(lo, hi):
        cols = []
        for i in by_deg.get(n, []):
            col = {}
            for j, coeff in F.dgen[i].items():
                if F.coeff_degree(i, j) == 0 and coeff:
                    col[pos[n + 1][j]] = coeff[0]
            cols.append(col)
        maps[n] = Matrix(f, len(by_deg.get(n + 1, [])), len(by_deg.get(n, [])), cols)
    dims = {n: len(l) for n, l in by_deg.items()}
    labels = {n: [F.gens[i].name for i in l] for n, l in by_deg.items()}
    return ComplexOfVectorSpaces(f, lo, hi, dims, maps, labels)


def suspension(M, shift: int):
    """Degree shift with the sign rules for differential and action."""
    if isinstance(M, SemiFreeDGModule):
        return M.suspend(shift)
    f = M.algebra.field
    sgn_d = f.one if shift % 2 == 0 else f.neg(f.one)
    dims = {n - shift: d for n, d in M.dims.items()}
    diff = {n - shift: Matrix(f, m.nrows, m.ncols,
                              [svec_scale(f, sgn_d, c) for c in m.columns])
            for n, m in M.diff.items()}

    def act(d, g_idx, n, m_idx):
        out = M._act_basis(d, g_idx, n + shift, m_idx)
        if (d * shift) % 2:
            out = svec_scale(f, f.neg(f.one), out)
        return out

    out = ExplicitDGModule(M.algebra, M.lo - shift, M.top - shift, dims, diff,
                           act, name=f"S^{shift}{M.name}")
    return out


@dataclass
class DGMorphism:
    """A degree-0 morphism given by per-degree matrices; when the source is
    semi-free the generator images (ALin over the target) are kept too."""

    source: object
    target: object
    mats: dict
    gen_images: list | None = None

    def mat(self, n: int) -> Matrix:
        m = self.mats.get(n)
        if m is not None:
            return m
        f = _expl(self.source).algebra.field
        return Matrix.zero(f, _expl(self.target).dim(n), _expl(self.source).dim(n))

    def verify_chain_map(self) -> None:
        S, T = _expl(self.source), _expl(self.target)
        for n in range(max(S.lo, T.lo), min(S.top, T.top)):
            lhs = T.diff_matrix(n).mul(self.mat(n))
            rhs = self.mat(n + 1).mul(S.diff_matrix(n))
            if lhs != rhs:
                raise AssertionError(f"not a chain map at degree {n}")


def _expl(M) -> ExplicitDGModule:
    return M.expand() if isinstance(M, SemiFreeDGModule) else M


def morphism_from_gen_images(F: SemiFreeDGModule, target, images: list) -> DGMorphism:
    """A-linear extension of generator images.  For a semi-free target the
    images are ALin dicts over the target generators; for an explicit target
    they are sparse vectors in the matching degree."""
    Fx = F.expand()
    T = _expl(target)
    semifree_target = isinstance(target, SemiFreeDGModule)
    f = F.algebra.field
    mats = {}
    for n in range(max(Fx.lo, T.lo), min(Fx.top, T.top) + 1):
        cols = []
        for (i, a_idx) in Fx.basis[n]:
            gdeg = F.gens[i].degree
            img = images[i]
            tvec = target.expanded_from_alin(gdeg, img) if semifree_target else img
            col = T.act_vec(n - gdeg, {a_idx: f.one}, gdeg, tvec)
            cols.append(col)
        mats[n] = Matrix(f, T.dim(n), Fx.dim(n), cols)
    return DGMorphism(F, target, mats, gen_images=images)


def mapping_cone(phi: DGMorphism) -> SemiFreeDGModule:
    """Cone of a morphism between semi-free modules: target generators kept,
    one suspended source generator each, with d(Se) = phi(e) - S(d e)."""
    G: SemiFreeDGModule = phi.source
    F: SemiFreeDGModule = phi.target
    if phi.gen_images is None:
        raise ValueError("cone needs generator images")
    f = G.algebra.field
    nF = len(F.gens)
    base_stage = max((g.stage or 0 for g in F.gens), default=-1)
    gens = [Gen(g.name, g.degree, g.stage) for g in F.gens]
    dgen = [dict(al) for al in F.dgen]
    for i, g in enumerate(G.gens):
        st = None
        if g.stage is not None:
            st = base_stage + 1 + g.stage
        gens.append(Gen(f"S{g.name}", g.degree - 1, st))
        al: dict = {}
        for j, coeff in phi.gen_images[i].items():
            if coeff:
                al[j] = dict(coeff)
        for j, coeff in G.dgen[i].items():
            adeg = G.coeff_degree(i, j)
            sgn = f.one if (1 + adeg) % 2 == 0 else f.neg(f.one)
            sv = svec_scale(f, sgn, coeff)
            if sv:
                al[nF + j] = sv
        dgen.append(al)
    return SemiFreeDGModule(G.algebra, gens, dgen,
                            D=min(F.D, G.D), name=f"cone({G.name}->{F.name})")


def cone(phi: DGMorphism) -> SemiFreeDGModule:
    """The spec's cone over a DG free source on cocycle generators."""
    G: SemiFreeDGModule = phi.source
    if any(al for al in G.dgen):
        raise ValueError("cone source must be DG free on cocycles")
    return mapping_cone(phi)


@dataclass
class QuasiIsoReport:
    ok: bool
    per_degree: list  # (degree, dim_src, dim_tgt, bijective)


def is_quasi_iso_upto(phi: DGMorphism, upto: int) -> QuasiIsoReport:
    S, T = _expl(phi.source), _expl(phi.target)
    if upto > min(S.certified_upto, T.certified_upto):
        raise RangeExceeded(
            f"quasi-isomorphism check to degree {upto} exceeds certified "
            f"range {min(S.certified_upto, T.certified_upto)}")
    f = S.algebra.field
    rows = []
    ok = True
    lo = min(S.lo, T.lo)
    for n in range(lo, upto + 1):
        qs, qt = S.cohomology(n), T.cohomology(n)
        cols = []
        good = qs.dim == qt.dim
        for rep in qs.reps:
            img = phi.mat(n).apply(rep)
            cls = qt.classify(img)
            assert cls is not None
            cols.append(cls)
        if good and qs.dim:
            from .exactla import rank
            good = rank(Matrix(f, qt.dim, qs.dim, cols)) == qs.dim
        rows.append((n, qs.dim, qt.dim, good))
        ok = ok and good
    return QuasiIsoReport(ok, rows)


@dataclass
class HomotopyVerdict:
    trivial: bool
    nontrivial_degree: int | None
    window: tuple


def is_homotopically_trivial(F: SemiFreeDGModule, window: tuple) -> HomotopyVerdict:
    """Window-relative homotopy triviality via H(Hom_A(F, F))."""
    C = hom_complex(F, F.expand())
    lo = max(window[0], C.lo)
    hi = min(window[1], C.hi - 1)
    for d in range(lo, hi + 1):
        if C.cohomology_dim(d) != 0:
            return HomotopyVerdict(False, d, (lo, hi))
    return HomotopyVerdict(True, None, (lo, hi))
