"""Cartan matrices, affine-cycle recognition, level inclusions, generator triples."""

from fractions import Fraction

import pytest

from liedyn.crossed import LieElem, bracket_extended, involution
from liedyn.errors import LiedynError, NonFiniteBackendError
from liedyn.funcspace import FnElem, Space
from liedyn.kacmoody import (
    CartanMatrix,
    InclusionMap,
    cartan_matrix,
    chevalley_generators,
    chevalley_relation_matrix,
    include_level,
    is_affine_cycle_type,
    node_count_label,
    standard_label,
)
from liedyn.rootform import RootElem, bracket_root


def test_cartan_matrix_small_sizes():
    assert cartan_matrix(Space.cyclic(2)).entries == ((2, -2), (-2, 2))
    assert cartan_matrix(Space.cyclic(3)).entries == (
        (2, -1, -1),
        (-1, 2, -1),
        (-1, -1, 2),
    )
    assert cartan_matrix(Space.cyclic(4)).entries == (
        (2, -1, 0, -1),
        (-1, 2, -1, 0),
        (0, -1, 2, -1),
        (-1, 0, -1, 2),
    )


@pytest.mark.parametrize("n", [2, 3, 4, 8, 9, 27])
def test_affine_cycle_recognized(n):
    m = cartan_matrix(Space.cyclic(n))
    assert is_affine_cycle_type(m)
    assert m.corank() == 1


def test_affine_cycle_rejects_non_cycles():
    assert not is_affine_cycle_type(CartanMatrix(2, ((2, 0), (0, 2))))
    # the finite type-A matrix is invertible, hence not the cycle
    fin = CartanMatrix(2, ((2, -1), (-1, 2)))
    assert not is_affine_cycle_type(fin)
    assert fin.corank() == 0
    assert not is_affine_cycle_type(CartanMatrix(1, ((2,),)))


def test_labels():
    assert standard_label(4) == "A^(1)_3"
    assert node_count_label(4) == "A^(1)_4"


def test_cartan_matrix_needs_finite_backend():
    with pytest.raises(NonFiniteBackendError):
        cartan_matrix(Space.torus(1))


def test_include_level_duplicates_and_respects_bracket():
    p = Space.padic(2, 1)
    inc = InclusionMap(2, 1)
    assert inc.target == Space.padic(2, 2)
    a = LieElem.monomial(p, FnElem.delta(p, 0), 1)
    b = LieElem.monomial(p, FnElem.delta(p, 1), -1)
    lifted = inc.apply(a)
    assert lifted.term(1).values == (Fraction(1), Fraction(0), Fraction(1), Fraction(0))
    assert inc.apply(bracket_extended(a, b)) == bracket_extended(
        inc.apply(a), inc.apply(b)
    )
    assert inc.apply(involution(a)) == involution(inc.apply(a))
    with pytest.raises(LiedynError):
        inc.apply(LieElem.monomial(Space.cyclic(2), FnElem.delta(Space.cyclic(2), 0), 1))


def test_include_level_preserves_central_coefficient():
    p = Space.padic(3, 1)
    a = LieElem.central_elem(p, Fraction(7, 2))
    assert include_level(a).central == Fraction(7, 2)


def test_chevalley_triples():
    s = Space.cyclic(3)
    gens = chevalley_generators(s)
    assert len(gens) == 3
    e0, f0, h0 = gens[0]
    assert e0 == RootElem.generator(s, 1, FnElem.delta(s, 0))
    assert f0 == RootElem.generator(s, -1, FnElem.delta(s, 0))
    third = Fraction(1, 3)
    want_h = RootElem.generator(
        s, 0, FnElem.delta(s, 0) - FnElem.one(s).scale(third)
    ) + RootElem.central_elem(s, third)
    assert h0 == want_h
    assert bracket_root(e0, f0) == h0


def test_chevalley_relation_matrix_matches_cartan():
    for n in (3, 4):
        s = Space.cyclic(n)
        rows, ok = chevalley_relation_matrix(s)
        assert ok
        matrix = cartan_matrix(s)
        assert rows == [list(matrix.row(i)) for i in range(matrix.size)]
