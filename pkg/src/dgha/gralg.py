"""Truncated connected DG algebras from finite presentations.

An algebra is materialized degree by degree up to a truncation D: the
degree-n basis is the set of lexicographically smallest monomials of the free
algebra completing the degreewise relation-ideal slice, multiplication and the
differential are induced through the quotient projection, and every structural
law (associativity, unit, Leibniz, d^2 = 0) is checkable by direct table
evaluation within the truncation.

Noncommutative polynomials are dicts {word: scalar} where a word is a tuple of
generator indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    DifferentialDegreeMismatch,
    InhomogeneousRelation,
    LeibnizSquareNonzero,
    NotConnected,
)
from .exactla import (
    ColumnEchelon,
    Field,
    Matrix,
    QuotientSpace,
    SubspaceBasis,
    svec_axpy,
    svec_from_dense,
    svec_scale,
    svec_to_dense,
)

Word = tuple  # of generator indices
NCPoly = dict  # Word -> scalar


def word_degree(word: Word, degrees: list[int]) -> int:
    return sum(degrees[g] for g in word)


def poly_degree(p: NCPoly, degrees: list[int]):
    """Common degree of a homogeneous polynomial (None for the zero poly)."""
    degs = {word_degree(w, degrees) for w in p}
    if not degs:
        return None
    if len(degs) > 1:
        raise InhomogeneousRelation(f"mixed degrees {sorted(degs)}")
    return degs.pop()


@dataclass
class AlgebraPresentation:
    """Finite presentation of a connected DG algebra.

    generators: list of (name, degree >= 1); relations: homogeneous NC
    polynomials; differential: generator index -> homogeneous NC polynomial of
    degree |g|+1 (absent means zero).  The Noetherian flag is a user assertion
    about H(A) and is never computed.
    """

    field: Field
    generators: list
    relations: list = dc_field(default_factory=list)
    differential: dict = dc_field(default_factory=dict)
    asserts_H_noetherian: bool = False

    def __post_init__(self):
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise InhomogeneousRelation("duplicate generator names")
        for n, d in self.generators:
            if not isinstance(d, int) or d < 1:
                raise NotConnected(f"generator {n} has degree {d}; degrees must be >= 1")
        degs = self.degrees
        for r in self.relations:
            if not r:
                raise InhomogeneousRelation("zero relation")
            poly_degree(r, degs)
        for g, p in self.differential.items():
            d = poly_degree(p, degs)
            if d is not None and d != degs[g] + 1:
                raise DifferentialDegreeMismatch(
                    f"d({self.generators[g][0]}) has degree {d}, expected {degs[g] + 1}"
                )

    @property
    def degrees(self) -> list[int]:
        return [d for _, d in self.generators]

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.generators]


class TruncatedDGAlgebra:
    """A connected DG algebra materialized up to degree D.

    dims[n] and labels[n] describe the degree-n basis; mult[(n, m)][i][j] is
    the sparse coordinate vector of (basis n,i) * (basis m,j) in degree n+m,
    stored for n+m <= D; diff[n] is the matrix A^n -> A^{n+1} for n < D.
    """

    def __init__(self, field, D, dims, labels, mult, diff, zero_differential,
                 asserts_H_noetherian=False, name="A"):
        self.field = field
        self.D = D
        self.dims = dims
        self.labels = labels
        self.mult = mult
        self.diff = diff
        self.zero_differential = zero_differential
        self.asserts_H_noetherian = asserts_H_noetherian
        self.name = name
        if dims[0] != 1:
            raise NotConnected(f"dim A^0 = {dims[0]}")

    def dim(self, n: int) -> int:
        if 0 <= n <= self.D:
            return self.dims[n]
        return 0

    def mul_basis(self, n: int, i: int, m: int, j: int) -> dict:
        return self.mult[(n, m)][i][j]

    def mul_vec(self, n: int, va: dict, m: int, vb: dict) -> dict:
        """Product of coordinate vectors in A^n x A^m -> A^{n+m}."""
        f = self.field
        table = self.mult[(n, m)]
        out: dict = {}
        for i, ca in va.items():
            row = table[i]
            for j, cb in vb.items():
                out = svec_axpy(f, f.mul(ca, cb), row[j], out)
        return out

    def diff_vec(self, n: int, v: dict) -> dict:
        if self.zero_differential:
            return {}
        if not (0 <= n < self.D):
            return {}
        return self.diff[n].apply(v)

    def label_of(self, n: int, v: dict) -> str:
        f = self.field
        parts = []
        for i in sorted(v):
            c = v[i]
            lab = self.labels[n][i]
            if c == f.one:
                parts.append(lab)
            else:
                parts.append(f"{f.to_str(c)}*{lab}")
        return " + ".join(parts) if parts else "0"

    # --- verification -----------------------------------------------------

    def verify(self, associativity: bool = True) -> None:
        """Check every structural invariant by direct table evaluation."""
        f = self.field
        one = {0: f.one}
        for n in range(self.D + 1):
            for i in range(self.dims[n]):
                e = {i: f.one}
                if self.mul_vec(0, one, n, e) != e or self.mul_vec(n, e, 0, one) != e:
                    raise AssertionError(f"unit law fails at degree {n}")
        for n in range(self.D - 1):
            for i in range(self.dims[n]):
                if self.diff_vec(n + 1, self.diff_vec(n, {i: f.one})):
                    raise LeibnizSquareNonzero(f"d^2 != 0 at degree {n}")
        for n in range(self.D):
            for m in range(self.D - n):
                if n + m >= self.D:
                    continue
                for i in range(self.dims[n]):
                    da = self.diff_vec(n, {i: f.one})
                    for j in range(self.dims[m]):
                        ab = self.mul_basis(n, i, m, j)
                        lhs = self.diff_vec(n + m, ab)
                        db = self.diff_vec(m, {j: f.one})
                        rhs = self.mul_vec(n + 1, da, m, {j: f.one})
                        sgn = f.one if n % 2 == 0 else f.neg(f.one)
                        rhs = svec_axpy(
                            f, f.one, self.mul_vec(n, {i: sgn}, m + 1, db), rhs
                        )
                        if lhs != rhs:
                            raise AssertionError(
                                f"Leibniz fails on ({n},{i})x({m},{j})"
                            )
        if associativity:
            for a in range(self.D + 1):
                for b in range(self.D + 1 - a):
                    for c in range(self.D + 1 - a - b):
                        self._check_assoc_degrees(a, b, c)

    def _check_assoc_degrees(self, a, b, c):
        f = self.field
        for i in range(self.dims[a]):
            for j in range(self.dims[b]):
                ij = self.mul_basis(a, i, b, j)
                for l in range(self.dims[c]):
                    lhs = self.mul_vec(a + b, ij, c, {l: f.one})
                    jl = self.mul_basis(b, j, c, l)
                    rhs = self.mul_vec(a, {i: f.one}, b + c, jl)
                    if lhs != rhs:
                        raise AssertionError(
                            f"associativity fails at degrees ({a},{b},{c})"
                        )


def _free_diff(poly_of_gen, degrees, word: Word, field) -> NCPoly:
    """Leibniz extension of the generator differential to a free word."""
    out: NCPoly = {}
    prefix_deg = 0
    for pos, g in enumerate(word):
        img = poly_of_gen.get(g)
        if img:
            sign = field.one if prefix_deg % 2 == 0 else field.neg(field.one)
            pre, suf = word[:pos], word[pos + 1:]
            for w, c in img.items():
                nw = pre + w + suf
                val = field.add(out.get(nw, field.zero), field.mul(sign, c))
                if field.is_zero(val):
                    out.pop(nw, None)
                else:
                    out[nw] = val
        prefix_deg += degrees[g]
    return out


def validate_and_truncate(pres: AlgebraPresentation, D: int) -> TruncatedDGAlgebra:
    """Materialize the presented algebra up to degree D and verify it."""
    if D < 1:
        raise ValueError("truncation degree must be >= 1")
    f = pres.field
    degrees = pres.degrees
    ngens = len(pres.generators)

    words: list[list[Word]] = [[()]]
    for n in range(1, D + 1):
        layer = []
        for g in range(ngens):
            d = degrees[g]
            if d <= n:
                layer.extend(w + (g,) for w in words[n - d])
        words.append(sorted(layer))
    word_index = [{w: k for k, w in enumerate(ws)} for ws in words]

    rel_degs = [poly_degree(r, degrees) for r in pres.relations]

    basis_words: list[list[Word]] = []
    proj: list[list[dict]] = []  # per degree, per word index -> svec over basis
    for n in range(D + 1):
        ech = ColumnEchelon(f, track=True)
        for r, dr in zip(pres.relations, rel_degs):
            if dr > n:
                continue
            for i in range(n - dr + 1):
                j = n - dr - i
                for u in words[i]:
                    for v in words[j]:
                        vec = {}
                        for w, c in r.items():
                            idx = word_index[n][u + w + v]
                            val = f.add(vec.get(idx, f.zero), c)
                            if f.is_zero(val):
                                vec.pop(idx, None)
                            else:
                                vec[idx] = val
                        ech.feed(("i", len(basis_words), i, u, v), vec)
        chosen = []
        for k, w in enumerate(words[n]):
            if ech.feed(("b", k), {k: f.one}) is None:
                chosen.append((k, w))
        basis_words.append([w for _, w in chosen])
        pos = {k: t for t, (k, _) in enumerate(chosen)}
        cols = []
        for k in range(len(words[n])):
            x = ech.membership({k: f.one})
            assert x is not None
            col = {}
            for tag, c in x.items():
                if tag[0] == "b":
                    col[pos[tag[1]]] = c
            cols.append(col)
        proj.append(cols)

    dims = [len(bw) for bw in basis_words]
    if dims[0] != 1:
        raise NotConnected("degree-0 component is not spanned by the unit")

    names = pres.names
    labels = [
        ["*".join(names[g] for g in w) if w else "1" for w in bw]
        for bw in basis_words
    ]

    mult = {}
    for n in range(D + 1):
        for m in range(D + 1 - n):
            table = []
            for u in basis_words[n]:
                row = []
                for v in basis_words[m]:
                    row.append(dict(proj[n + m][word_index[n + m][u + v]]))
                table.append(row)
            mult[(n, m)] = table

    zero_diff = not any(pres.differential.values())
    diff = []
    for n in range(D):
        cols = []
        for w in basis_words[n]:
            free = _free_diff(pres.differential, degrees, w, f)
            col: dict = {}
            for fw, c in free.items():
                col = svec_axpy(f, c, proj[n + 1][word_index[n + 1][fw]], col)
            cols.append(col)
        diff.append(Matrix(f, dims[n + 1], dims[n], cols))

    # the differential must preserve the relation ideal
    for r, dr in zip(pres.relations, rel_degs):
        if dr + 1 > D:
            continue
        free = {}
        for w, c in r.items():
            for fw, cc in _free_diff(pres.differential, degrees, w, f).items():
                val = f.add(free.get(fw, f.zero), f.mul(c, cc))
                if f.is_zero(val):
                    free.pop(fw, None)
                else:
                    free[fw] = val
        img: dict = {}
        for fw, c in free.items():
            img = svec_axpy(f, c, proj[dr + 1][word_index[dr + 1][fw]], img)
        if img:
            raise LeibnizSquareNonzero(
                "differential does not preserve the relation ideal"
            )

    alg = TruncatedDGAlgebra(
        f, D, dims, labels, mult, diff, zero_diff,
        asserts_H_noetherian=pres.asserts_H_noetherian,
    )
    alg.verify(associativity=True)
    return alg


def opposite(A: TruncatedDGAlgebra) -> TruncatedDGAlgebra:
    """Same graded basis with a * b = (-1)^{|a||b|} b a; same differential."""
    f = A.field
    mult = {}
    for (n, m), table in A.mult.items():
        sgn = f.one if (n * m) % 2 == 0 else f.neg(f.one)
        op_table = []
        for i in range(A.dims[n]):
            row = []
            for j in range(A.dims[m]):
                row.append(svec_scale(f, sgn, A.mult[(m, n)][j][i]))
            op_table.append(row)
        mult[(n, m)] = op_table
    return TruncatedDGAlgebra(
        f, A.D, list(A.dims), [list(l) for l in A.labels], mult,
        A.diff, A.zero_differential,
        asserts_H_noetherian=A.asserts_H_noetherian, name=A.name + "^op",
    )


class EnvelopingIndex:
    """Degreewise pairing (i in A^d) x (j in Aop^{n-d}) for A (x) A^op."""

    def __init__(self, A: TruncatedDGAlgebra):
        self.pairs = []   # per degree: list of (d, i, j)
        self.index = []   # per degree: dict (d, i, j) -> position
        for n in range(A.D + 1):
            layer = [
                (d, i, j)
                for d in range(n + 1)
                for i in range(A.dims[d])
                for j in range(A.dims[n - d])
            ]
            self.pairs.append(layer)
            self.index.append({p: k for k, p in enumerate(layer)})


def enveloping(A: TruncatedDGAlgebra) -> TruncatedDGAlgebra:
    """The algebra A (x) A^op at the same truncation, invariants re-verified."""
    f = A.field
    Aop = opposite(A)
    idx = EnvelopingIndex(A)
    D = A.D
    dims = [len(idx.pairs[n]) for n in range(D + 1)]
    labels = []
    for n in range(D + 1):
        labels.append(
            [
                f"{A.labels[d][i]}(x){A.labels[n - d][j]}"
                for (d, i, j) in idx.pairs[n]
            ]
        )

    def tensor(n, va_deg, va, vop_deg, vop):
        out = {}
        for i, ca in va.items():
            for j, cb in vop.items():
                c = f.mul(ca, cb)
                if not f.is_zero(c):
                    out[idx.index[n][(va_deg, i, j)]] = c
        return out

    mult = {}
    for n in range(D + 1):
        for m in range(D + 1 - n):
            table = []
            for (da, i, jb) in idx.pairs[n]:
                db = n - da
                row = []
                for (da2, i2, jb2) in idx.pairs[m]:
                    db2 = m - da2
                    prod_a = A.mul_basis(da, i, da2, i2)
                    prod_b = Aop.mul_basis(db, jb, db2, jb2)
                    sgn = f.one if (db * da2) % 2 == 0 else f.neg(f.one)
                    out = {}
                    for ia, ca in prod_a.items():
                        for ja, cb in prod_b.items():
                            c = f.mul(sgn, f.mul(ca, cb))
                            key = idx.index[n + m][(da + da2, ia, ja)]
                            val = f.add(out.get(key, f.zero), c)
                            if f.is_zero(val):
                                out.pop(key, None)
                            else:
                                out[key] = val
                    row.append(out)
                table.append(row)
            mult[(n, m)] = table

    diff = []
    for n in range(D):
        cols = []
        for (da, i, j) in idx.pairs[n]:
            db = n - da
            col = {}
            if da < A.D:
                col = tensor(n + 1, da + 1, A.diff_vec(da, {i: f.one}), db, {j: f.one})
            if db < A.D:
                sgn = f.one if da % 2 == 0 else f.neg(f.one)
                col = svec_axpy(
                    f, f.one,
                    tensor(n + 1, da, {i: sgn}, db + 1, Aop.diff_vec(db, {j: f.one})),
                    col,
                )
            cols.append(col)
        diff.append(Matrix(f, dims[n + 1], dims[n], cols))

    env = TruncatedDGAlgebra(
        f, D, dims, labels, mult, diff, A.zero_differential,
        name=A.name + "^e",
    )
    env.verify(associativity=True)
    env.envelope_index = idx
    env.envelope_of = A
    return env


@dataclass
class CohomologyAlgebra:
    """H(A) with chosen cocycle representatives and the class map.

    H is a zero-differential TruncatedDGAlgebra on degrees <= certified_upto
    (= D-1: boundaries into degree D cannot be formed, so degree D is out of
    the certified range).  reps[n] sends H^n coordinates to cocycles in A^n;
    classof inverts it on cocycles.
    """

    A: TruncatedDGAlgebra
    H: TruncatedDGAlgebra
    reps: list
    quotients: list
    certified_upto: int

    def rep_vec(self, n: int, hvec: dict) -> dict:
        return self.reps[n].apply(hvec) if 0 <= n <= self.certified_upto else {}

    def classof(self, n: int, vec: dict):
        """H^n coordinates of a cocycle; None if the vector is not in
        ker + im (i.e. not a cocycle within the certified range)."""
        if not (0 <= n <= self.certified_upto):
            return None
        if self.A.diff_vec(n, vec):
            return None
        return self.quotients[n].classify(vec)


def cohomology_algebra(A: TruncatedDGAlgebra) -> CohomologyAlgebra:
    f = A.field
    upto = A.D - 1
    quotients = []
    hdims = []
    reps = []
    for n in range(upto + 1):
        ker = (
            [{i: f.one} for i in range(A.dims[n])]
            if A.zero_differential
            else kernel_svecs(A, n)
        )
        if n == 0 or A.zero_differential:
            im = []
        else:
            im = list(A.diff[n - 1].columns)
        q = QuotientSpace(f, A.dims[n], im, ker)
        quotients.append(q)
        hdims.append(q.dim)
        reps.append(Matrix(f, A.dims[n], q.dim, [dict(r) for r in q.reps]))

    labels = [[f"h{n}.{k}" for k in range(hdims[n])] for n in range(upto + 1)]
    mult = {}
    for n in range(upto + 1):
        for m in range(upto + 1 - n):
            table = []
            for i in range(hdims[n]):
                a = quotients[n].reps[i]
                row = []
                for j in range(hdims[m]):
                    b = quotients[m].reps[j]
                    prod = A.mul_vec(n, a, m, b)
                    cls = quotients[n + m].classify(prod)
                    assert cls is not None, "product of cocycles must be a cocycle"
                    row.append(cls)
                table.append(row)
            mult[(n, m)] = table
    H = TruncatedDGAlgebra(
        f, upto, hdims, labels, mult,
        [Matrix.zero(f, hdims[n + 1], hdims[n]) for n in range(upto)],
        zero_differential=True,
        asserts_H_noetherian=A.asserts_H_noetherian, name=f"H({A.name})",
    )
    return CohomologyAlgebra(A, H, reps, quotients, upto)


def kernel_svecs(A: TruncatedDGAlgebra, n: int) -> list[dict]:
    ech = ColumnEchelon(A.field, track=True)
    out = []
    for j, col in enumerate(A.diff[n].columns):
        dep = ech.feed(j, col)
        if dep is not None:
            out.append(dep)
    return out


def augmentation_ideal_slice(A: TruncatedDGAlgebra, n: int) -> SubspaceBasis:
    """Degree-n slice of the maximal DG ideal: all of A^n for n >= 1."""
    if not (0 <= n <= A.D):
        raise ValueError("degree outside truncation")
    if n == 0:
        return SubspaceBasis(A.field, 1, [])
    eye = Matrix.identity(A.field, A.dims[n])
    return SubspaceBasis(A.field, A.dims[n], eye.to_rows())


def trivial_algebra(field: Field, D: int) -> TruncatedDGAlgebra:
    """The base field as a connected DG algebra (basis only in degree 0)."""
    dims = [1] + [0] * D
    labels = [["1"]] + [[] for _ in range(D)]
    mult = {}
    for n in range(D + 1):
        for m in range(D + 1 - n):
            mult[(n, m)] = [[{} for _ in range(dims[m])] for _ in range(dims[n])]
    mult[(0, 0)] = [[{0: field.one}]]
    diff = [Matrix.zero(field, dims[n + 1], dims[n]) for n in range(D)]
    return TruncatedDGAlgebra(field, D, dims, labels, mult, diff, True, name="k")
