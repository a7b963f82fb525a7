import pytest

from dgha.errors import (
    DifferentialDegreeMismatch,
    InhomogeneousRelation,
    LeibnizSquareNonzero,
)
from dgha.exactla import Field
from dgha.gralg import (
    AlgebraPresentation,
    augmentation_ideal_slice,
    cohomology_algebra,
    enveloping,
    opposite,
    trivial_algebra,
    validate_and_truncate,
)

QQ = Field.rationals()


def example61_presentation(field=QQ):
    # two degree-1 generators, d(x) = y*y, d(y) = 0, no relations
    return AlgebraPresentation(
        field,
        generators=[("x", 1), ("y", 1)],
        relations=[],
        differential={0: {(1, 1): field.one}},
        asserts_H_noetherian=True,
    )


@pytest.fixture(scope="module")
def A61():
    return validate_and_truncate(example61_presentation(), 6)


def test_free_two_generator_dims(A61):
    assert [A61.dim(n) for n in range(7)] == [2**n for n in range(7)]


def test_one_generator_zero_differential():
    pres = AlgebraPresentation(QQ, [("x", 1)])
    A = validate_and_truncate(pres, 5)
    assert [A.dim(n) for n in range(6)] == [1] * 6
    assert A.zero_differential


def test_exterior_degreewise_ideal():
    pres = AlgebraPresentation(QQ, [("y", 1)], relations=[{(0, 0): QQ.one}])
    A = validate_and_truncate(pres, 5)
    assert [A.dim(n) for n in range(6)] == [1, 1, 0, 0, 0, 0]


def test_commutative_two_variable_quotient():
    # k[y,z]/(y^2) with |y|=1, |z|=2: dims follow partitions into {1 once, 2s}
    one = QQ.one
    pres = AlgebraPresentation(
        QQ,
        [("y", 1), ("z", 2)],
        relations=[
            {(0, 0): one},
            {(0, 1): one, (1, 0): QQ.neg(one)},  # yz - zy
        ],
    )
    A = validate_and_truncate(pres, 6)
    # degree n basis: z^k and y z^k
    assert [A.dim(n) for n in range(7)] == [1, 1, 1, 1, 1, 1, 1]


def test_presentation_validation_errors():
    with pytest.raises(InhomogeneousRelation):
        AlgebraPresentation(QQ, [("x", 1)], relations=[{(0,): QQ.one, (0, 0): QQ.one}])
    with pytest.raises(DifferentialDegreeMismatch):
        AlgebraPresentation(
            QQ, [("x", 1), ("y", 1)], differential={1: {(0,): QQ.one}}
        )
    # d not preserving the ideal: k[x]/(x^2) with d(x) = x*x is degree-consistent
    # but d^2/ideal compatibility fails at the relation level... here instead use
    # d(y) = x*y on k<x,y>/(y*y): d(y*y) = x*y*y - y*x*y which is not in (y*y).
    pres = AlgebraPresentation(
        QQ,
        [("x", 1), ("y", 1)],
        relations=[{(1, 1): QQ.one}],
        differential={1: {(0, 1): QQ.one}},
    )
    with pytest.raises(LeibnizSquareNonzero):
        validate_and_truncate(pres, 4)


def test_opposite_involution_and_sign(A61):
    op = opposite(A61)
    # x*y in A^op equals -(y*x computed in A) at degree 2
    xy_op = op.mul_basis(1, 0, 1, 1)
    yx_in_A = A61.mul_basis(1, 1, 1, 0)
    f = A61.field
    assert xy_op == {k: f.neg(v) for k, v in yx_in_A.items()}
    opop = opposite(op)
    assert opop.mult == A61.mult and opop.dims == A61.dims


def test_opposite_commutative_even_case():
    pres = AlgebraPresentation(
        QQ, [("z", 2), ("w", 2)],
        relations=[{(0, 1): QQ.one, (1, 0): QQ.neg(QQ.one)}],
    )
    A = validate_and_truncate(pres, 6)
    assert opposite(A).mult == A.mult


def test_enveloping_dims(A61):
    env = enveloping(A61)
    assert [env.dim(n) for n in range(7)] == [(n + 1) * 2**n for n in range(7)]


def test_enveloping_of_one_generator():
    A = validate_and_truncate(AlgebraPresentation(QQ, [("x", 1)]), 5)
    env = enveloping(A)
    assert [env.dim(n) for n in range(6)] == [1, 2, 3, 4, 5, 6]


def test_cohomology_example61(A61):
    HA = cohomology_algebra(A61)
    assert HA.certified_upto == 5
    assert [HA.H.dim(n) for n in range(6)] == [1] * 6
    # [y]^2 = 0
    f = QQ
    ysq = HA.H.mul_basis(1, 0, 1, 0)
    assert ysq == {}
    # [y]*[xy+yx] spans H^3
    yz = HA.H.mul_basis(1, 0, 2, 0)
    assert yz and list(yz.values())[0] != 0


def test_cohomology_enveloping_matches_tensor_dims(A61):
    HA = cohomology_algebra(A61)
    env = enveloping(A61)
    HE = cohomology_algebra(env)
    for n in range(HE.certified_upto + 1):
        expect = sum(
            HA.H.dim(i) * HA.H.dim(n - i) for i in range(n + 1)
        )
        assert HE.H.dim(n) == expect


def test_cohomology_zero_differential_is_identity():
    pres = AlgebraPresentation(QQ, [("x", 1), ("y", 2)])
    A = validate_and_truncate(pres, 5)
    HA = cohomology_algebra(A)
    assert [HA.H.dim(n) for n in range(5)] == [A.dim(n) for n in range(5)]
    assert HA.H.dim(0) == 1


def test_cohomology_multiplication_rep_independent(A61):
    # recompute one product with representatives shifted by a boundary
    HA = cohomology_algebra(A61)
    f = QQ
    n, m = 1, 2
    a = HA.rep_vec(n, {0: f.one})
    b = HA.rep_vec(m, {0: f.one})
    bdry = A61.diff_vec(m - 1, {0: f.one})  # a boundary in degree m
    b2 = dict(b)
    for k, v in bdry.items():
        b2[k] = f.add(b2.get(k, f.zero), v)
        if f.is_zero(b2[k]):
            del b2[k]
    p1 = HA.classof(n + m, A61.mul_vec(n, a, m, b))
    p2 = HA.classof(n + m, A61.mul_vec(n, a, m, b2))
    assert p1 == p2


def test_augmentation_ideal_slice(A61):
    assert augmentation_ideal_slice(A61, 0).dim == 0
    assert augmentation_ideal_slice(A61, 2).dim == 4
    env = enveloping(A61)
    assert augmentation_ideal_slice(env, 1).dim == 4


def test_trivial_algebra():
    k = trivial_algebra(QQ, 4)
    k.verify()
    assert [k.dim(n) for n in range(5)] == [1, 0, 0, 0, 0]
