"""Resolution builders.

Three constructions:

* minimal_semifree_resolution: degreewise construction of a minimal semi-free
  resolution of an explicit DG module.  At each degree n it first adds
  generators hitting coker H^n(eps), then repeatedly adds generators killing
  ker H^{n+1}(eps) until that kernel is empty (new kernel classes can involve
  the generators just added, so a single pass is not enough).  Because every
  generator of degree n is chosen while F^{n+1} consists of positive-degree
  multiples of earlier generators, the differential lands in m*F and
  minimality holds by construction.

* graded_minimal_free_resolution: stage-by-stage minimal free resolution of a
  graded module over a zero-differential algebra, generators chosen by graded
  Nakayama (a basis of ker/m*ker), inside an internal-degree window.

* eilenberg_moore: realizes a free resolution of H(M) as the filtration
  spectral sequence's first page of a semi-free resolution of M.  Stage-i
  generators sit in degree (internal degree - i); the differential carries the
  sign (-1)^{|a|(i-1)} on the stage-lowering coefficients (the suspension
  bookkeeping), plus lower-stage corrections obtained by solving d-equations.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    MissingStageLabels,
    NotAResolutionOfHM,
    ResolutionDiverged,
    TruncationTooSmall,
    WindowTooSmall,
)
from .exactla import ColumnEchelon, Matrix, QuotientSpace, svec_axpy, svec_neg, svec_scale
from .dgmod import (
    DGMorphism,
    ExplicitDGModule,
    Gen,
    GradedModule,
    SemiFreeDGModule,
    module_k,
    morphism_from_gen_images,
    is_homotopically_trivial,
)
from .gralg import CohomologyAlgebra, TruncatedDGAlgebra


@dataclass
class ResolutionResult:
    F: SemiFreeDGModule
    eps: DGMorphism
    certified_upto: int
    generator_log: list  # per processed degree: dict with counts
    module: ExplicitDGModule

    @property
    def generator_degrees(self) -> list[int]:
        return [g.degree for g in self.F.gens]

    def new_generator_profile(self) -> dict:
        prof: dict = {}
        for entry in self.generator_log:
            n = entry["degree"]
            prof[n] = prof.get(n, 0) + entry["surjective"] + entry["kernel"]
        return prof


def greedy_layers(F: SemiFreeDGModule) -> list[int]:
    layers = []
    for i in range(len(F.gens)):
        deps = [layers[j] for j, coeff in F.dgen[i].items() if coeff]
        layers.append(0 if not deps else 1 + max(deps))
    return layers


class _SemifreeState:
    """Append-only expanded view of a growing semi-free module, with live
    boundary echelons per degree and eps columns into the target module."""

    def __init__(self, A: TruncatedDGAlgebra, M: ExplicitDGModule, D: int):
        self.A = A
        self.M = M
        self.D = D
        f = A.field
        self.f = f
        self.gens: list[Gen] = []
        self.dgen: list[dict] = []
        self.eps_img: list[dict] = []
        span = range(min(M.lo, 0) - 1, D + 2)
        self.basis: dict = {n: [] for n in span}
        self.index: dict = {n: {} for n in span}
        self.dcols: dict = {n: [] for n in span}
        self.ecols: dict = {n: [] for n in span}
        self.bech: dict = {n: ColumnEchelon(f, track=True) for n in span}
        self.ker: dict = {n: [] for n in span}

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, []))

    def add_generator(self, name: str, degree: int, dgen_alin: dict, eps_vec: dict):
        A, f = self.A, self.f
        i = len(self.gens)
        self.gens.append(Gen(name, degree, None))
        self.dgen.append(dgen_alin)
        self.eps_img.append(eps_vec)
        # extend bases first so diff columns can reference their targets
        for n in range(degree, self.D + 1):
            ad = n - degree
            if ad > A.D:
                break
            layer = self.basis[n]
            idx = self.index[n]
            for a_idx in range(A.dim(ad)):
                idx[(i, a_idx)] = len(layer)
                layer.append((i, a_idx))
        for n in range(degree, self.D + 1):
            ad = n - degree
            if ad > A.D:
                break
            for a_idx in range(A.dim(ad)):
                col = self._diff_column(n, i, a_idx)
                ecol = self.M.act_vec(ad, {a_idx: f.one}, degree, eps_vec)
                self.dcols[n].append(col)
                self.ecols[n].append(ecol)
                if n < self.D:
                    dep = self.bech[n].feed(len(self.dcols[n]) - 1, col)
                    if dep is not None:
                        self.ker[n].append(dep)

    def _diff_column(self, n: int, i: int, a_idx: int) -> dict:
        A, f = self.A, self.f
        if n >= self.D:
            return {}
        degree = self.gens[i].degree
        ad = n - degree
        col = {}
        for r, c in A.diff_vec(ad, {a_idx: f.one}).items():
            col[self.index[n + 1][(i, r)]] = c
        sgn = f.one if ad % 2 == 0 else f.neg(f.one)
        for j, coeff in self.dgen[i].items():
            cd = degree + 1 - self.gens[j].degree
            prod = A.mul_vec(ad, {a_idx: sgn}, cd, coeff)
            for r, c in prod.items():
                key = self.index[n + 1][(j, r)]
                val = f.add(col.get(key, f.zero), c)
                if f.is_zero(val):
                    col.pop(key, None)
                else:
                    col[key] = val
        return col

    def hdim(self, n: int) -> int:
        return len(self.ker[n]) - self.bech[n - 1].rank

    def quotient(self, n: int) -> QuotientSpace:
        return QuotientSpace(
            self.f, self.dim(n), self.bech[n - 1].pivot_vectors(), self.ker[n]
        )

    def eps_of(self, n: int, vec: dict) -> dict:
        out: dict = {}
        for pos, c in vec.items():
            out = svec_axpy(self.f, c, self.ecols[n][pos], out)
        return out

    def alin_of(self, n: int, vec: dict) -> dict:
        out: dict = {}
        for pos, c in vec.items():
            i, a_idx = self.basis[n][pos]
            out.setdefault(i, {})[a_idx] = c
        return out

    def finish(self, name: str) -> SemiFreeDGModule:
        F = SemiFreeDGModule(self.A, self.gens, self.dgen, D=self.D, name=name)
        for g, layer in zip(F.gens, greedy_layers(F)):
            g.stage = layer
        return F


def minimal_semifree_resolution(
    A: TruncatedDGAlgebra,
    M: ExplicitDGModule,
    D: int,
    max_rounds_per_degree: int = 64,
) -> ResolutionResult:
    """Build a minimal semi-free resolution of M, certified up to D-1."""
    if M.algebra is not A:
        raise ValueError("module is not over the given algebra")
    if M.top < D:
        raise TruncationTooSmall(
            f"module data reaches degree {M.top}, resolution needs {D}")
    f = A.field
    st = _SemifreeState(A, M, D)
    mech: dict = {}

    def m_boundaries(n: int) -> ColumnEchelon:
        e = mech.get(n)
        if e is None:
            e = ColumnEchelon(f, track=True)
            for j, col in enumerate(M.diff_matrix(n).columns):
                e.feed(j, col)
            mech[n] = e
        return e

    log = []
    for n in range(M.lo, D):
        surj = 0
        hM = M.cohomology(n)
        if hM.dim:
            img = ColumnEchelon(f, track=False)
            if st.hdim(n):
                q = st.quotient(n)
                for t, rep in enumerate(q.reps):
                    cls = hM.classify(st.eps_of(n, rep))
                    assert cls is not None
                    img.feed(t, cls)
            for c_idx in range(hM.dim):
                if img.feed(("new", c_idx), {c_idx: f.one}) is None:
                    st.add_generator(
                        f"e{len(st.gens)}", n, {}, dict(hM.reps[c_idx])
                    )
                    surj += 1
        kerg = 0
        rounds = 0
        if n <= D - 2:
            while True:
                if st.hdim(n + 1) == 0:
                    break
                q = st.quotient(n + 1)
                hM1 = M.cohomology(n + 1)
                if hM1.dim == 0:
                    kill = [dict(rep) for rep in q.reps]
                else:
                    cols = []
                    for rep in q.reps:
                        cls = hM1.classify(st.eps_of(n + 1, rep))
                        assert cls is not None
                        cols.append(cls)
                    hmap = Matrix(f, hM1.dim, q.dim, cols)
                    kill = []
                    ech = ColumnEchelon(f, track=True)
                    for j, col in enumerate(hmap.columns):
                        dep = ech.feed(j, col)
                        if dep is not None:
                            zeta: dict = {}
                            for t, c in dep.items():
                                zeta = svec_axpy(f, c, q.reps[t], zeta)
                            kill.append(zeta)
                if not kill:
                    break
                rounds += 1
                if rounds > max_rounds_per_degree:
                    raise ResolutionDiverged(n, rounds, log)
                for zeta in kill:
                    target = st.eps_of(n + 1, zeta)
                    mprime: dict = {}
                    if target:
                        x = m_boundaries(n).membership(target)
                        assert x is not None, "kernel class does not die in M"
                        mprime = x
                    st.add_generator(
                        f"e{len(st.gens)}", n, st.alin_of(n + 1, zeta), mprime
                    )
                    kerg += 1
        if surj or kerg:
            log.append({"degree": n, "surjective": surj, "kernel": kerg,
                        "rounds": rounds})

    F = st.finish(f"F({M.name})")
    eps = morphism_from_gen_images(F, M, st.eps_img) if F.gens else DGMorphism(
        F, M, {}, gen_images=[])
    return ResolutionResult(F, eps, D - 1, log, M)


# ---------------------------------------------------------------------------
# graded minimal free resolutions


@dataclass
class MinimalFreeResolution:
    """Stages of a minimal free resolution of a graded module N over a
    zero-differential algebra H, inside internal degrees <= Dint.

    betti[i] lists the internal degrees of the stage-i generators; d[i]
    (i >= 1) gives, per stage-i generator, its image as {stage-(i-1) gen:
    H-coefficient vector}; eps maps stage-0 generators to vectors of N."""

    module: GradedModule
    H: TruncatedDGAlgebra
    L: int
    Dint: int
    betti: list
    d: list
    eps: list
    terminated: bool

    def stage_count(self, i: int) -> int:
        return len(self.betti[i]) if i < len(self.betti) else 0

    def stage_basis(self, i: int, n: int) -> list:
        """Expanded degree-n basis [(gen position, H index)] of stage i."""
        out = []
        for w, q in enumerate(self.betti[i]):
            hd = n - q
            if 0 <= hd <= self.H.D:
                out.extend((w, h) for h in range(self.H.dim(hd)))
        return out

    def dmatrix(self, i: int, n: int) -> Matrix:
        """The degreewise matrix of d[i] at internal degree n."""
        f = self.H.field
        tgt = self.stage_basis(i - 1, n)
        tpos = {p: k for k, p in enumerate(tgt)}
        cols = []
        for (w, h) in self.stage_basis(i, n):
            q = self.betti[i][w]
            col: dict = {}
            for w2, coeff in self.d[i][w].items():
                q2 = self.betti[i - 1][w2]
                prod = self.H.mul_vec(n - q, {h: f.one}, q - q2, coeff)
                for r, c in prod.items():
                    key = tpos[(w2, r)]
                    val = f.add(col.get(key, f.zero), c)
                    if f.is_zero(val):
                        col.pop(key, None)
                    else:
                        col[key] = val
            cols.append(col)
        return Matrix(f, len(tgt), len(cols), cols)

    def eps_matrix(self, n: int) -> Matrix:
        f = self.H.field
        N = self.module
        cols = []
        for (w, h) in self.stage_basis(0, n):
            q = self.betti[0][w]
            cols.append(N.act_vec(n - q, {h: f.one}, q, self.eps[w]))
        return Matrix(f, N.dim(n), len(cols), cols)


def _module_bottom(N: ExplicitDGModule):
    degs = [n for n in sorted(N.dims) if N.dims[n]]
    return degs[0] if degs else None


def graded_minimal_free_resolution(
    N: GradedModule, L: int, Dint: int
) -> MinimalFreeResolution:
    """Minimal free resolution of N over its zero-differential algebra."""
    H = N.algebra
    if not H.zero_differential:
        raise ValueError("graded resolutions need a zero-differential algebra")
    f = H.field
    b = _module_bottom(N)
    if b is None:
        return MinimalFreeResolution(N, H, 0, Dint, [[]], [None], [], True)
    if Dint - b > H.D:
        raise WindowTooSmall(
            f"internal window {Dint} needs algebra degrees up to {Dint - b}, "
            f"certified only to {H.D}")

    # stage 0: generators of N = basis of N / mN, degreewise
    betti0: list[int] = []
    eps: list[dict] = []
    for n in range(b, Dint + 1):
        if not N.dim(n):
            continue
        sub = []
        for d in range(1, min(H.D, n - b) + 1):
            for h in range(H.dim(d)):
                for m_idx in range(N.dim(n - d)):
                    sub.append(N.act_matrix(d, h, n - d).column(m_idx))
        q = QuotientSpace(f, N.dim(n), sub, [{k: f.one} for k in range(N.dim(n))])
        for rep in q.reps:
            betti0.append(n)
            eps.append(dict(rep))
    betti = [betti0]
    dmaps: list = [None]
    res = MinimalFreeResolution(N, H, 0, Dint, betti, dmaps, eps, False)

    def degreewise_kernels(i: int) -> dict:
        """Kernels of d[i] (or of eps for i = 0) per internal degree."""
        kers: dict = {}
        for n in range(b, Dint + 1):
            basis = res.stage_basis(i, n)
            if not basis:
                continue
            mat = res.eps_matrix(n) if i == 0 else res.dmatrix(i, n)
            ech = ColumnEchelon(f, track=True)
            found = []
            for j, col in enumerate(mat.columns):
                dep = ech.feed(j, col)
                if dep is not None:
                    found.append(dep)
            if found:
                kers[n] = found
        return kers

    terminated = False
    for i in range(1, L + 1):
        kers = degreewise_kernels(i - 1)
        if not kers:
            terminated = True
            break
        new_betti: list[int] = []
        new_d: list[dict] = []
        for n in sorted(kers):
            # m * ker: action of positive-degree algebra elements on lower
            # kernel layers, spanning the non-minimal part
            sub = []
            for d in range(1, min(H.D, n - b) + 1):
                lower = kers.get(n - d, [])
                if not lower:
                    continue
                basis_lo = res.stage_basis(i - 1, n - d)
                basis_hi = res.stage_basis(i - 1, n)
                hpos = {p: k for k, p in enumerate(basis_hi)}
                for h in range(H.dim(d)):
                    for kv in lower:
                        out: dict = {}
                        for pos, c in kv.items():
                            w, h2 = basis_lo[pos]
                            q2 = n - d - res.betti[i - 1][w]
                            prod = H.mul_vec(d, {h: c}, q2, {h2: f.one})
                            for r, cc in prod.items():
                                key = hpos[(w, r)]
                                val = f.add(out.get(key, f.zero), cc)
                                if f.is_zero(val):
                                    out.pop(key, None)
                                else:
                                    out[key] = val
                        sub.append(out)
            q = QuotientSpace(f, len(res.stage_basis(i - 1, n)), sub, kers[n])
            basis_here = res.stage_basis(i - 1, n)
            for rep in q.reps:
                al: dict = {}
                for pos, c in rep.items():
                    w, h = basis_here[pos]
                    al.setdefault(w, {})[h] = c
                new_betti.append(n)
                new_d.append(al)
        if not new_betti:
            terminated = True
            break
        betti.append(new_betti)
        dmaps.append(new_d)
        res.L = i
    else:
        # ran all L stages; terminated iff the next kernel is empty
        terminated = not degreewise_kernels(res.L)
    res.terminated = terminated
    _check_minimality(res)
    return res


def _check_minimality(res: MinimalFreeResolution) -> None:
    for i in range(1, len(res.betti)):
        for w, al in enumerate(res.d[i]):
            for w2, coeff in al.items():
                if res.betti[i][w] == res.betti[i - 1][w2] and coeff:
                    raise AssertionError("non-minimal graded resolution")


# ---------------------------------------------------------------------------
# Eilenberg-Moore resolutions and the first-page complex


def eilenberg_moore(
    A: TruncatedDGAlgebra,
    M: ExplicitDGModule,
    R: MinimalFreeResolution,
    D: int,
):
    """Realize the free resolution R of H(M) as a semi-free resolution of M
    whose filtration first page is R.  Returns (F, comparison morphism)."""
    HA: CohomologyAlgebra = getattr(R.module, "hA", None)
    if HA is None or getattr(R.module, "ambient", None) is not M:
        raise NotAResolutionOfHM("R does not resolve the cohomology of M")
    if M.top < D:
        raise TruncationTooSmall("module data shorter than requested range")
    f = A.field
    gens: list[Gen] = []
    dgen: list[dict] = []
    eps_img: list[dict] = []
    stage_of: list[int] = []
    gen_pos: dict = {}  # (stage, w) -> generator index

    def mech(n):
        e = ColumnEchelon(f, track=True)
        for j, col in enumerate(M.diff_matrix(n).columns):
            e.feed(j, col)
        return e

    for i in range(len(R.betti)):
        for w, q in enumerate(R.betti[i]):
            g = q - i
            need = g + 2 if i >= 2 else g + 1
            if need > D or g + 1 > M.top:
                raise TruncationTooSmall(
                    f"stage-{i} generator of internal degree {q} needs degree "
                    f"{need} data beyond the truncation")
            name = f"em{i}.{w}"
            if i == 0:
                al: dict = {}
                ev: dict = {}
                for c_idx, c in R.eps[w].items():
                    ev = svec_axpy(f, c, M.cohomology(q).reps[c_idx], ev)
                gens.append(Gen(name, g, 0))
                dgen.append(al)
                eps_img.append(ev)
                stage_of.append(0)
                gen_pos[(0, w)] = len(gens) - 1
                continue
            # leading term with the suspension sign
            al = {}
            for w2, coeff in R.d[i][w].items():
                adeg = q - R.betti[i - 1][w2]
                rep = HA.rep_vec(adeg, coeff)
                if (adeg * (i - 1)) % 2:
                    rep = svec_scale(f, f.neg(f.one), rep)
                if rep:
                    al[gen_pos[(i - 1, w2)]] = rep
            if i >= 2:
                partial = SemiFreeDGModule(A, gens, dgen, D=min(D, g + 2))
                Fx = partial.expand()
                lead_vec = partial.expanded_from_alin(g + 1, al)
                rho = svec_neg(f, Fx.diff_matrix(g + 1).apply(lead_vec))
                if rho:
                    corr = _solve_in_stages(
                        partial, Fx, stage_of, i - 2, g + 1, rho
                    )
                    if corr is None:
                        corr = _solve_in_stages(
                            partial, Fx, stage_of, i - 1, g + 1, rho
                        )
                    if corr is None:
                        raise NotAResolutionOfHM(
                            f"no correction for stage-{i} generator; the input"
                            " complex is not exact here")
                    for gi, coeff in partial.alin_from_expanded(g + 1, corr).items():
                        al[gi] = svec_axpy(f, f.one, coeff,
                                           al.get(gi, {}))
                        if not al[gi]:
                            del al[gi]
            # comparison image: solve d_M m' = eps(d e)
            target: dict = {}
            for gi, coeff in al.items():
                adeg = g + 1 - gens[gi].degree
                target = svec_axpy(
                    f, f.one,
                    M.act_vec(adeg, coeff, gens[gi].degree, eps_img[gi]),
                    target,
                )
            ev = {}
            if target:
                x = mech(g).membership(target)
                if x is None:
                    raise NotAResolutionOfHM(
                        "comparison image is not a boundary in M")
                ev = x
            gens.append(Gen(name, g, i))
            dgen.append(al)
            eps_img.append(ev)
            stage_of.append(i)
            gen_pos[(i, w)] = len(gens) - 1

    F = SemiFreeDGModule(A, gens, dgen, D=D, name=f"EM({M.name})")
    phi = morphism_from_gen_images(F, M, eps_img)
    return F, phi


def _solve_in_stages(partial, Fx, stage_of, max_stage, n, rho):
    """Solve d c = rho with c supported on generators of stage <= max_stage."""
    f = partial.algebra.field
    ech = ColumnEchelon(f, track=True)
    positions = [
        pos for pos, (i, _a) in enumerate(Fx.basis[n])
        if stage_of[i] <= max_stage
    ]
    cols = Fx.diff_matrix(n).columns
    for pos in positions:
        ech.feed(pos, cols[pos])
    x = ech.membership(rho)
    return x


@dataclass
class E1Complex:
    """Stage terms and maps of the filtration first page: term i is the free
    H(A)-module on the stage-i generators (internal degree = degree + stage);
    maps[i] sends stage i to stage i-1, entries are H(A)-coefficient vectors
    keyed by (target generator, source generator) local positions."""

    stages: list  # per stage: list of (name, internal_degree)
    maps: list    # per stage i >= 1: dict (t_loc, s_loc) -> H-coefficient svec
    augmentation: list | None = None  # stage-0: H(M)-class svecs


def e1_complex(F: SemiFreeDGModule, HA: CohomologyAlgebra,
               M: ExplicitDGModule | None = None,
               eps: DGMorphism | None = None) -> E1Complex:
    f = F.algebra.field
    if any(g.stage is None for g in F.gens):
        raise MissingStageLabels("every generator needs a stage label")
    nstages = 1 + max((g.stage for g in F.gens), default=0)
    stages: list[list] = [[] for _ in range(nstages)]
    loc: dict = {}
    for gi, g in enumerate(F.gens):
        loc[gi] = (g.stage, len(stages[g.stage]))
        stages[g.stage].append((g.name, g.degree + g.stage))
    maps: list = [dict() for _ in range(nstages)]
    for gi, g in enumerate(F.gens):
        i = g.stage
        for gj, coeff in F.dgen[gi].items():
            if F.gens[gj].stage != i - 1 or not coeff:
                continue
            adeg = F.coeff_degree(gi, gj)
            if F.algebra.diff_vec(adeg, coeff):
                raise AssertionError(
                    "stage-adjacent coefficient is not a cocycle; stage "
                    "labels do not define a semi-free filtration")
            cls = HA.classof(adeg, coeff)
            assert cls is not None
            if (adeg * (i - 1)) % 2:
                cls = {k: f.neg(v) for k, v in cls.items()}
            if cls:
                maps[i][(loc[gj][1], loc[gi][1])] = cls
    aug = None
    if M is not None and eps is not None and eps.gen_images is not None:
        aug = []
        for gi, g in enumerate(F.gens):
            if g.stage != 0:
                continue
            cls = M.cohomology(g.degree).classify(eps.gen_images[gi])
            aug.append(cls if cls is not None else {})
    return E1Complex(stages, maps, aug)


def check_minimal_em_conditions(
    A: TruncatedDGAlgebra, M: ExplicitDGModule, R: MinimalFreeResolution
) -> str:
    """Sufficient conditions for a minimal Eilenberg-Moore resolution:
    'ZeroDifferentials', 'DegreeGap', or 'NotGuaranteed' (never 'impossible':
    these conditions are sufficient only)."""
    mod_zero = all(m.is_zero() for m in M.diff.values())
    if A.zero_differential and mod_zero:
        return "ZeroDifferentials"
    gap = True
    for i in range(1, len(R.betti)):
        if not R.betti[i] or not R.betti[i - 1]:
            break
        if min(R.betti[i]) <= max(R.betti[i - 1]):
            gap = False
            break
    if gap and len(R.betti) > 1:
        return "DegreeGap"
    return "NotGuaranteed"


def split_minimal(F: SemiFreeDGModule, D: int, window: tuple | None = None):
    """Minimal resolution G of F plus the homotopy-triviality verdict for the
    cone over the comparison G -> F (the minimal + trivial decomposition,
    checkable on the window)."""
    M = F.expand()
    res = minimal_semifree_resolution(F.algebra, M, D)
    images = [
        F.alin_from_expanded(g.degree, vec)
        for g, vec in zip(res.F.gens, res.eps.gen_images)
    ]
    phi = morphism_from_gen_images(res.F, F, images)
    C = mapping_cone_of(phi)
    if window is None:
        lo = min((g.degree for g in C.gens), default=0) - 1
        hi = C.D - max((g.degree for g in C.gens), default=0) - 1
        window = (lo, hi)
    verdict = is_homotopically_trivial(C, window)
    return res, verdict


def mapping_cone_of(phi: DGMorphism) -> SemiFreeDGModule:
    from .dgmod import mapping_cone
    return mapping_cone(phi)
