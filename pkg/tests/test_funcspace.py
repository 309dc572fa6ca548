"""Function-space backends and the shift operator."""

from fractions import Fraction

import pytest

from liedyn.errors import (
    LiedynError,
    NonFiniteBackendError,
    NotInImageError,
    SpaceMismatchError,
)
from liedyn.funcspace import (
    CartanOpSpec,
    FnElem,
    Space,
    cartan_k,
    cartan_kn,
    difference_preimage,
    fn_mul,
    geometric_sum_u,
    mean,
    project_to_level,
    shift_u,
)
from liedyn.scalars import LaurentScalar


def test_space_parse_and_render():
    for text in ("cyclic:5", "padic:3:2", "torus:2"):
        assert Space.parse(text).render() == text
    assert Space.parse("cyclic:4") == Space.cyclic(4)
    assert Space.parse("padic:2:3").size == 8


@pytest.mark.parametrize(
    "bad",
    ["cyclic:1", "cyclic:0", "padic:4:1", "padic:2:0", "torus:0", "tor:1", "cyclic", "cyclic:x"],
)
def test_space_parse_rejects_bad_input(bad):
    with pytest.raises(LiedynError):
        Space.parse(bad)


def test_space_properties():
    s = Space.padic(3, 2)
    assert s.size == 9 and s.prime == 3 and s.level == 2
    assert Space.torus(2).dim == 2
    assert not Space.torus(1).is_finite
    assert Space.cyclic(6).ring_order == 6


def test_shift_moves_delta_down():
    # (Uf)(x) = f(x+1), so U delta_j = delta_{j-1}
    s = Space.cyclic(4)
    d0 = FnElem.delta(s, 0)
    assert shift_u(d0) == FnElem.delta(s, 3)
    assert shift_u(d0, -1) == FnElem.delta(s, 1)
    assert shift_u(d0, 4) == d0


def test_shift_scales_torus_monomials():
    t = Space.torus(1)
    z = FnElem.character(t, (1,))
    q = LaurentScalar.variable(1)
    assert shift_u(z) == z.scale(q)
    assert shift_u(z, -1) == z.scale(LaurentScalar.monomial(1, (-1,)))


def test_fn_mul_is_pointwise():
    s = Space.cyclic(3)
    assert fn_mul(FnElem.delta(s, 0), FnElem.delta(s, 0)) == FnElem.delta(s, 0)
    assert fn_mul(FnElem.delta(s, 0), FnElem.delta(s, 1)).is_zero()
    t = Space.torus(1)
    z = FnElem.character(t, (1,))
    assert fn_mul(z, z) == FnElem.character(t, (2,))


def test_mean():
    s = Space.cyclic(4)
    assert mean(FnElem.delta(s, 2)) == Fraction(1, 4)
    assert mean(FnElem.one(s)) == 1
    t = Space.torus(2)
    assert mean(FnElem.character(t, (1, 0))) == 0
    assert mean(FnElem.one(t)) == 1


def test_space_mismatch_raises():
    with pytest.raises(SpaceMismatchError):
        FnElem.delta(Space.cyclic(2), 0) + FnElem.delta(Space.cyclic(3), 0)


def test_cartan_operator_on_delta():
    s = Space.cyclic(4)
    d = [FnElem.delta(s, j) for j in range(4)]
    # K = 2I - U - U^{-1}
    assert cartan_k(d[0]) == d[0].scale(2) - d[3] - d[1]
    # K_2 = (I - U^{-1})(I - U^2)
    assert cartan_kn(d[0], 2) == d[0] - d[1] - d[2] + d[3]
    assert cartan_kn(d[0], 1) == cartan_k(d[0])
    assert cartan_kn(d[0], 0).is_zero()


def test_geometric_sum():
    s = Space.cyclic(4)
    d0 = FnElem.delta(s, 0)
    # G_m = I + U^{-1} + ... + U^{-(m-1)}
    got = geometric_sum_u(d0, 3)
    assert got == d0 + FnElem.delta(s, 1) + FnElem.delta(s, 2)
    assert geometric_sum_u(d0, 1) == d0


def test_project_to_level_duplicates_values():
    p = Space.padic(2, 1)
    lifted = project_to_level(FnElem.delta(p, 0))
    assert lifted.space == Space.padic(2, 2)
    assert lifted.values == (Fraction(1), Fraction(0), Fraction(1), Fraction(0))
    assert mean(lifted) == mean(FnElem.delta(p, 0))
    with pytest.raises(LiedynError):
        project_to_level(FnElem.delta(Space.cyclic(4), 0))


def test_project_to_level_intertwines_shift():
    p = Space.padic(3, 1)
    f = FnElem.delta(p, 1) - FnElem.delta(p, 0).scale(Fraction(1, 2))
    assert project_to_level(shift_u(f)) == shift_u(project_to_level(f))


def test_difference_preimage_cyclic():
    s = Space.cyclic(4)
    f = FnElem.delta(s, 0) - FnElem.delta(s, 1)
    g = difference_preimage(f)
    assert g - shift_u(g, -1) == f
    assert mean(g) == 0
    assert g.values == (Fraction(3, 4), Fraction(-1, 4), Fraction(-1, 4), Fraction(-1, 4))
    with pytest.raises(NotInImageError):
        difference_preimage(FnElem.one(s))


def test_difference_preimage_torus():
    t = Space.torus(1)
    coeff = LaurentScalar.constant(1, 1) - LaurentScalar.monomial(1, (-2,))
    f = FnElem(t, {(2,): coeff})
    g = difference_preimage(f)
    assert g == FnElem.character(t, (2,))
    with pytest.raises(NotInImageError):
        difference_preimage(FnElem.character(t, (2,)))
    with pytest.raises(NotInImageError):
        difference_preimage(FnElem.one(t))


def test_conjugate():
    s = Space.cyclic(4)
    assert FnElem.character(s, 1).conj() == FnElem.character(s, 3)
    t = Space.torus(1)
    assert FnElem.character(t, (2,)).conj() == FnElem.character(t, (-2,))


def test_custom_cartan_spec_applies_matrix():
    s = Space.cyclic(2)
    op = CartanOpSpec(s, matrix=((0, 1), (1, 0)))
    swapped = op.apply(FnElem.delta(s, 0))
    assert swapped == FnElem.delta(s, 1)
    default = CartanOpSpec(s)
    assert default.apply(FnElem.delta(s, 0)) == cartan_k(FnElem.delta(s, 0))
    with pytest.raises(NonFiniteBackendError):
        CartanOpSpec(Space.torus(1), matrix=((1,),))
