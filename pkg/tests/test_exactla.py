import random
from fractions import Fraction

import pytest

from dgha.errors import WNotContained
from dgha.exactla import (
    ColumnEchelon,
    Field,
    Matrix,
    SubspaceBasis,
    image_basis,
    kernel_basis,
    quotient_with_section,
    rank,
    solve,
)

QQ = Field.rationals()
F7 = Field.prime(7)


# --- independent oracle: naive dense row reduction, used only in tests ---

def oracle_rank(field, rows):
    m = [[field.of(v) for v in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if not field.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, v) for v in m[r]]
        for i in range(nr):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[r])]
        r += 1
    return r


def random_rows(field, rng, nr, nc, density=0.7):
    rows = []
    for _ in range(nr):
        row = []
        for _ in range(nc):
            if rng.random() < density:
                row.append(field.of(rng.randrange(-4, 5)))
            else:
                row.append(field.zero)
        rows.append(row)
    return rows


def mat_vec(field, rows, x):
    out = []
    for row in rows:
        acc = field.zero
        for a, b in zip(row, x):
            acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def test_field_validation():
    with pytest.raises(ValueError):
        Field.prime(6)
    with pytest.raises(ValueError):
        Field.prime(2**31 + 11)
    assert Field.prime(2).name == "GF(2)"
    assert QQ.of(Fraction(3, 4)) == Fraction(3, 4)
    assert F7.of(Fraction(1, 2)) == 4  # 2 * 4 = 1 mod 7


def test_rank_identity_and_row():
    assert rank(Matrix.identity(QQ, 2)) == 2
    assert rank(Matrix.from_rows(QQ, [[1, 1]])) == 1
    assert rank(Matrix.zero(QQ, 3, 3)) == 0


def test_rank_random_gf7_against_oracle():
    rng = random.Random(7)
    for _ in range(50):
        rows = random_rows(F7, rng, 6, 6)
        assert rank(Matrix.from_rows(F7, rows)) == oracle_rank(F7, rows)


def test_kernel_trivial_cases():
    kb = kernel_basis(Matrix.from_rows(QQ, [[1, 1]]))
    assert kb.dim == 1
    v = kb.vectors[0]
    assert v[0] + v[1] == 0 and v != [0, 0]
    z = kernel_basis(Matrix.zero(QQ, 3, 3))
    assert z.dim == 3
    z.check()


def test_kernel_random_membership():
    rng = random.Random(11)
    for field in (QQ, F7):
        for _ in range(30):
            rows = random_rows(field, rng, rng.randrange(1, 6), rng.randrange(1, 6))
            m = Matrix.from_rows(field, rows)
            kb = kernel_basis(m)
            assert rank(m) + kb.dim == m.ncols
            for v in kb.vectors:
                assert all(field.is_zero(e) for e in mat_vec(field, rows, v))
            kb.check()


def test_image_basis():
    ib = image_basis(Matrix.identity(QQ, 3))
    assert ib.vectors == Matrix.identity(QQ, 3).to_rows()
    ib2 = image_basis(Matrix.from_rows(QQ, [[1, 1], [1, 1]]))
    assert ib2.dim == 1 and ib2.vectors[0] == [1, 1]


def test_image_random_columns_in_span():
    rng = random.Random(13)
    for field in (QQ, F7):
        for _ in range(20):
            rows = random_rows(field, rng, 5, 4)
            m = Matrix.from_rows(field, rows)
            ib = image_basis(m)
            assert ib.dim == rank(m)
            span = Matrix.from_rows(field, ib.vectors).transpose()
            for j in range(m.ncols):
                col = [m.entry(i, j) for i in range(m.nrows)]
                assert solve(span, col) is not None


def test_solve():
    eye = Matrix.identity(QQ, 3)
    assert solve(eye, [1, 2, 3]) == [1, 2, 3]
    m = Matrix.from_rows(QQ, [[1, 1]])
    x = solve(m, [1])
    assert x is not None and x[0] + x[1] == 1
    bad = Matrix.from_rows(QQ, [[1], [1]])
    assert solve(bad, [0, 1]) is None


def test_solve_kernel_consistency():
    rng = random.Random(17)
    for field in (QQ, F7):
        for _ in range(20):
            rows = random_rows(field, rng, 4, 5)
            m = Matrix.from_rows(field, rows)
            x0 = [field.of(rng.randrange(-3, 4)) for _ in range(5)]
            b = mat_vec(field, rows, x0)
            x = solve(m, b)
            assert x is not None
            assert mat_vec(field, rows, x) == b
            # x0 - x must lie in the kernel span
            kb = kernel_basis(m)
            diff = [field.sub(a, c) for a, c in zip(x0, x)]
            if kb.dim:
                span = Matrix.from_rows(field, kb.vectors).transpose()
                assert solve(span, diff) is not None
            else:
                assert all(field.is_zero(v) for v in diff)


def test_quotient_trivial():
    V = SubspaceBasis(QQ, 2, [[1, 0], [0, 1]])
    reps, proj = quotient_with_section(V, SubspaceBasis(QQ, 2, []))
    assert reps == [[1, 0], [0, 1]]
    assert proj == Matrix.identity(QQ, 2)


def test_quotient_kills_subspace():
    V = SubspaceBasis(QQ, 2, [[1, 0], [0, 1]])
    W = SubspaceBasis(QQ, 2, [[1, 0]])
    reps, proj = quotient_with_section(V, W)
    assert len(reps) == 1
    assert proj.apply_dense([1, 0]) == [0]  # V-coords of (1,0)


def test_quotient_not_contained():
    V = SubspaceBasis(QQ, 3, [[1, 0, 0]])
    W = SubspaceBasis(QQ, 3, [[0, 1, 0]])
    with pytest.raises(WNotContained):
        quotient_with_section(V, W)


def test_quotient_random_dims():
    rng = random.Random(19)
    for field in (QQ, F7):
        for _ in range(20):
            amb = rng.randrange(2, 6)
            vv = random_rows(field, rng, rng.randrange(1, amb + 1), amb)
            # independent subset of the rows, as vectors in k^amb
            vb = image_basis(Matrix.from_rows(field, vv).transpose())
            # W: random combinations of V's basis
            wraw = []
            for _ in range(rng.randrange(0, vb.dim + 1)):
                combo = [field.zero] * amb
                for bv in vb.vectors:
                    c = field.of(rng.randrange(-2, 3))
                    combo = [field.add(a, field.mul(c, b)) for a, b in zip(combo, bv)]
                wraw.append(combo)
            wb = image_basis(Matrix.from_rows(field, wraw).transpose()) if wraw else SubspaceBasis(field, amb, [])
            reps, proj = quotient_with_section(vb, wb)
            assert len(reps) == vb.dim - wb.dim
            assert proj.nrows == vb.dim - wb.dim and proj.ncols == vb.dim


def test_determinism():
    rng = random.Random(23)
    rows = random_rows(QQ, rng, 6, 8)
    m = Matrix.from_rows(QQ, rows)
    assert kernel_basis(m).vectors == kernel_basis(m).vectors
    assert image_basis(m).vectors == image_basis(m).vectors


def test_echelon_membership_tracks_combination():
    ech = ColumnEchelon(QQ, track=True)
    cols = [{0: Fraction(1), 1: Fraction(2)}, {1: Fraction(1)}]
    for j, c in enumerate(cols):
        ech.feed(j, c)
    x = ech.membership({0: Fraction(2), 1: Fraction(5)})
    assert x == {0: Fraction(2), 1: Fraction(1)}
