"""Exact linear algebra over Q and GF(p).

Every other module reduces its degreewise questions (ranks, kernels,
cohomology quotients, preimages) to the operations here.  All arithmetic is
exact: rationals are `fractions.Fraction`, prime-field elements are ints in
[0, p).  No floating point anywhere.

Vectors are sparse dicts {index: scalar} with no stored zeros; matrices store
sparse columns.  Elimination is deterministic: columns are processed left to
right and each pivot sits at the topmost nonzero row of the reduced column,
so identical inputs give bit-for-bit identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import WNotContained


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (p is None) or the prime field GF(p), p < 2**31."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (2 <= self.p < 2**31):
                raise ValueError(f"modulus out of range: {self.p}")
            if not _is_prime(self.p):
                raise ValueError(f"modulus is not prime: {self.p}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def of(self, n) -> object:
        """Coerce an int (or Fraction, over Q) into the field."""
        if self.p is None:
            return Fraction(n)
        if isinstance(n, Fraction):
            if n.denominator == 1:
                return n.numerator % self.p
            return (n.numerator % self.p) * pow(n.denominator, -1, self.p) % self.p
        return n % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def to_str(self, a) -> str:
        return str(a)


# ---------------------------------------------------------------------------
# sparse vector helpers (dict index -> scalar, zero entries never stored)

def svec_axpy(field: Field, c, x: dict, y: dict) -> dict:
    """Return y + c*x as a fresh sparse dict."""
    if field.is_zero(c):
        return dict(y)
    out = dict(y)
    for i, v in x.items():
        w = field.add(out.get(i, field.zero), field.mul(c, v))
        if field.is_zero(w):
            out.pop(i, None)
        else:
            out[i] = w
    return out


def svec_scale(field: Field, c, x: dict) -> dict:
    if field.is_zero(c):
        return {}
    return {i: field.mul(c, v) for i, v in x.items()}


def svec_add(field: Field, x: dict, y: dict) -> dict:
    return svec_axpy(field, field.one, x, y)


def svec_neg(field: Field, x: dict) -> dict:
    return {i: field.neg(v) for i, v in x.items()}


def svec_from_dense(field: Field, xs) -> dict:
    return {i: v for i, v in enumerate(xs) if not field.is_zero(v)}


def svec_to_dense(field: Field, x: dict, n: int) -> list:
    out = [field.zero] * n
    for i, v in x.items():
        out[i] = v
    return out


class Matrix:
    """An exact matrix, stored as sparse columns."""

    __slots__ = ("field", "nrows", "ncols", "columns")

    def __init__(self, field: Field, nrows: int, ncols: int, columns: list[dict]):
        if nrows < 0 or ncols < 0 or len(columns) != ncols:
            raise ValueError("bad matrix shape")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.columns = columns

    @classmethod
    def from_rows(cls, field: Field, rows: list[list]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = field.of(v)
                if not field.is_zero(v):
                    cols[j][i] = v
        return cls(field, nrows, ncols, cols)

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: list[dict]) -> "Matrix":
        return cls(field, nrows, len(columns), [dict(c) for c in columns])

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols, [dict() for _ in range(ncols)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    def entry(self, i: int, j: int):
        return self.columns[j].get(i, self.field.zero)

    def to_rows(self) -> list[list]:
        rows = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def column(self, j: int) -> dict:
        return dict(self.columns[j])

    def apply(self, vec: dict) -> dict:
        """Matrix times sparse vector."""
        f = self.field
        out: dict = {}
        for j, c in vec.items():
            if j >= self.ncols:
                raise IndexError("vector too long")
            out = svec_axpy(f, c, self.columns[j], out)
        return out

    def apply_dense(self, xs: list) -> list:
        return svec_to_dense(
            self.field, self.apply(svec_from_dense(self.field, xs)), self.nrows
        )

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = [self.apply(c) for c in other.columns]
        return Matrix(self.field, self.nrows, other.ncols, cols)

    def transpose(self) -> "Matrix":
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                cols[i][j] = v
        return Matrix(self.field, self.ncols, self.nrows, cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.columns == other.columns
        )

    def __repr__(self) -> str:
        return f"Matrix({self.field.name}, {self.nrows}x{self.ncols})"


class ColumnEchelon:
    """Incremental row-echelon structure over a stream of sparse vectors.

    Feeding a vector either installs a new pivot (topmost nonzero row of the
    reduced vector, normalized to 1) or reports a linear dependence.  When
    `track` is set, every stored pivot and every reported dependence carries
    its expression over the original tagged vectors:

        reduced = original + sum(combo[t] * fed_vector_t)

    so a zero reduction means  original = -sum(combo[t] * fed_vector_t).
    """

    __slots__ = ("field", "track", "pivots", "ntotal")

    def __init__(self, field: Field, track: bool = True):
        self.field = field
        self.track = track
        self.pivots: dict = {}  # lead row -> (vec, combo)
        self.ntotal = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def pivot_rows(self) -> list:
        return sorted(self.pivots)

    def pivot_vectors(self) -> list[dict]:
        return [self.pivots[r][0] for r in sorted(self.pivots)]

    def _reduce(self, v: dict, combo: dict | None):
        f = self.field
        v = dict(v)
        while v:
            lead = min(v)
            hit = self.pivots.get(lead)
            if hit is None:
                break
            c = f.neg(v[lead])
            pvec, pcombo = hit
            v = svec_axpy(f, c, pvec, v)
            if combo is not None:
                combo = svec_axpy(f, c, pcombo, combo)
        return v, combo

    def reduce(self, v: dict) -> dict:
        red, _ = self._reduce(v, None)
        return red

    def feed(self, tag, v: dict):
        """Add a tagged vector.  Returns None if a new pivot was installed,
        else the dependence combo {tag': coeff} with sum(coeff * vec_tag') = 0
        (the fed vector's own tag appears with coefficient 1)."""
        f = self.field
        combo = {tag: f.one} if self.track else None
        red, combo = self._reduce(v, combo)
        self.ntotal += 1
        if not red:
            return combo if self.track else {}
        lead = min(red)
        scale = f.inv(red[lead])
        red = svec_scale(f, scale, red)
        if self.track:
            combo = svec_scale(f, scale, combo)
        self.pivots[lead] = (red, combo)
        return None

    def membership(self, v: dict):
        """If v is in the span of fed vectors, return x with v = sum(x[t]*vec_t);
        else None.  Requires track=True."""
        red, combo = self._reduce(v, {})
        if red:
            return None
        return svec_neg(self.field, combo)


@dataclass
class SubspaceBasis:
    """A list of linearly independent coordinate vectors in k^ambient_dim."""

    field: Field
    ambient_dim: int
    vectors: list[list] = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def sparse_vectors(self) -> list[dict]:
        return [svec_from_dense(self.field, v) for v in self.vectors]

    def check(self) -> None:
        ech = ColumnEchelon(self.field, track=False)
        for k, v in enumerate(self.vectors):
            if len(v) != self.ambient_dim:
                raise ValueError("vector length mismatch")
            if ech.feed(k, svec_from_dense(self.field, v)) is not None:
                raise ValueError("basis vectors are dependent")


def rank(m: Matrix) -> int:
    ech = ColumnEchelon(m.field, track=False)
    for j, col in enumerate(m.columns):
        ech.feed(j, col)
    return ech.rank


def kernel_basis(m: Matrix) -> SubspaceBasis:
    """Basis of {v : m v = 0}; dimension is ncols - rank."""
    ech = ColumnEchelon(m.field, track=True)
    out = []
    for j, col in enumerate(m.columns):
        dep = ech.feed(j, col)
        if dep is not None:
            out.append(svec_to_dense(m.field, dep, m.ncols))
    return SubspaceBasis(m.field, m.ncols, out)


def image_basis(m: Matrix) -> SubspaceBasis:
    """Column-space basis: the leftmost independent columns of m."""
    ech = ColumnEchelon(m.field, track=False)
    out = []
    for j, col in enumerate(m.columns):
        if ech.feed(j, col) is None:
            out.append(svec_to_dense(m.field, col, m.nrows))
    return SubspaceBasis(m.field, m.nrows, out)


def solve(m: Matrix, b: list | dict):
    """Some x with m x = b, as a dense list; None when inconsistent."""
    if isinstance(b, dict):
        bs = dict(b)
    else:
        if len(b) != m.nrows:
            raise ValueError("rhs length mismatch")
        bs = svec_from_dense(m.field, [m.field.of(v) for v in b])
    ech = ColumnEchelon(m.field, track=True)
    for j, col in enumerate(m.columns):
        ech.feed(j, col)
    x = ech.membership(bs)
    if x is None:
        return None
    return svec_to_dense(m.field, x, m.ncols)


def quotient_with_section(V: SubspaceBasis, W: SubspaceBasis):
    """Quotient of span(V) by span(W), with W contained in span(V).

    Returns (representatives, projection): representatives are vectors of V
    completing W to a basis of span(V); projection is a (dim V - dim W) x dim V
    matrix on V-coordinates with projection(W) = 0 and projection(rep_l) = e_l.
    """
    f = V.field
    if W.ambient_dim != V.ambient_dim:
        raise WNotContained("ambient dimensions differ")
    vsolver = ColumnEchelon(f, track=True)
    for k, v in enumerate(V.sparse_vectors()):
        vsolver.feed(k, v)
    w_coords = []
    for w in W.sparse_vectors():
        x = vsolver.membership(w)
        if x is None:
            raise WNotContained("subspace vector outside the ambient span")
        w_coords.append(x)

    # choose representative indices among V's own basis vectors
    ech = ColumnEchelon(f, track=False)
    for k, wc in enumerate(w_coords):
        if ech.feed(("w", k), wc) is not None:
            raise WNotContained("subspace vectors are dependent")
    rep_idx = []
    for i in range(V.dim):
        if ech.feed(("r", i), {i: f.one}) is None:
            rep_idx.append(i)

    # projection: coordinates on the representative part in the basis [W | reps]
    basis = ColumnEchelon(f, track=True)
    for k, wc in enumerate(w_coords):
        basis.feed(("w", k), wc)
    for i in rep_idx:
        basis.feed(("r", i), {i: f.one})
    qdim = len(rep_idx)
    rep_pos = {i: l for l, i in enumerate(rep_idx)}
    proj_cols = []
    for j in range(V.dim):
        x = basis.membership({j: f.one})
        assert x is not None
        col = {}
        for tag, c in x.items():
            if tag[0] == "r":
                col[rep_pos[tag[1]]] = c
        proj_cols.append(col)
    projection = Matrix(f, qdim, V.dim, proj_cols)
    representatives = [V.vectors[i] for i in rep_idx]
    return representatives, projection


class QuotientSpace:
    """ker/im style quotient with representatives and a class map.

    Built from spanning sparse vectors of a subspace `total` of k^ambient and
    of a subspace `sub` inside it.  Representatives are chosen among the fed
    total vectors, deterministically.
    """

    __slots__ = ("field", "ambient", "dim", "reps", "_solver", "_rep_tags")

    def __init__(self, field: Field, ambient: int, sub_vectors, total_vectors):
        self.field = field
        self.ambient = ambient
        self._solver = ColumnEchelon(field, track=True)
        for k, v in enumerate(sub_vectors):
            self._solver.feed(("s", k), v)
        self.reps: list[dict] = []
        self._rep_tags: list = []
        for k, v in enumerate(total_vectors):
            if self._solver.feed(("t", k), v) is None:
                self.reps.append(dict(v))
                self._rep_tags.append(("t", k))
        self.dim = len(self.reps)

    def classify(self, v: dict):
        """Coordinates of [v] on the representatives; None if v is outside
        span(sub + total)."""
        x = self._solver.membership(v)
        if x is None:
            return None
        pos = {t: l for l, t in enumerate(self._rep_tags)}
        out = {}
        for tag, c in x.items():
            l = pos.get(tag)
            if l is not None:
                out[l] = c
        return out

    def classify_dense(self, v: dict) -> list:
        out = self.classify(v)
        if out is None:
            raise WNotContained("vector outside the total span")
        return svec_to_dense(self.field, out, self.dim)
