"""Cartan-matrix extraction and the affine-cycle identification.

On a finite backend the Cartan operator K = 2I - U - U^{-1} restricted to the
point-indicator basis gives an integer matrix: the generalized Cartan matrix
of a cycle with N nodes (diagonal 2, cyclic neighbors -1, the two neighbor
contributions merging to -2 when N = 2).  That is the affine type-A matrix of
rank N-1, corank exactly 1.

chevalley_generators realizes the matrix through brackets: with
e_i = X_1(delta_i), f_i = X_-1(delta_i) and h_i = [e_i, f_i], the relations
[h_i, e_j] = a_ij e_j and [h_i, f_j] = -a_ij f_j recover every entry.

include_level embeds the algebra at cyclic level p^n into level p^{n+1} by
pulling functions back along the quotient map; uniform fibers keep the mean,
so the embedding respects both the bracket and the cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .crossed import LieElem
from .errors import LiedynError, NonFiniteBackendError
from .funcspace import FnElem, Space, cartan_k, project_to_level
from .ranks import matrix_rank
from .rootform import RootElem, bracket_root


@dataclass(frozen=True)
class CartanMatrix:
    size: int
    entries: tuple  # N rows of N integers

    def row(self, i: int):
        return self.entries[i]

    def corank(self) -> int:
        rows = [[Fraction(v) for v in row] for row in self.entries]
        return self.size - matrix_rank(rows)


def cartan_matrix(space: Space) -> CartanMatrix:
    """The matrix of K in the point-indicator basis: entry (i, j) is the
    value of K delta_j at the point i."""
    if not space.is_finite:
        raise NonFiniteBackendError("the Cartan matrix needs a finite backend")
    n = space.size
    cols = [cartan_k(FnElem.delta(space, j)) for j in range(n)]
    entries = tuple(
        tuple(int(cols[j].values[i]) for j in range(n)) for i in range(n)
    )
    return CartanMatrix(n, entries)


def is_affine_cycle_type(m: CartanMatrix) -> bool:
    """True iff m is, up to relabeling, the generalized Cartan matrix of a
    single cycle through all nodes (the affine type-A matrix)."""
    n = m.size
    if n < 2:
        return False
    if n == 2:
        return m.entries == ((2, -2), (-2, 2))
    neighbors = []
    for i in range(n):
        row = m.entries[i]
        if row[i] != 2:
            return False
        off = [j for j in range(n) if j != i and row[j] != 0]
        if any(row[j] != -1 for j in off) or len(off) != 2:
            return False
        neighbors.append(off)
    for i in range(n):
        for j in neighbors[i]:
            if i not in neighbors[j]:
                return False
    seen = {0}
    prev, cur = None, 0
    for _ in range(n):
        a, b = neighbors[cur]
        nxt = b if a == prev else a
        prev, cur = cur, nxt
        if cur == 0:
            break
        if cur in seen:
            return False
        seen.add(cur)
    return cur == 0 and len(seen) == n


def standard_label(n: int) -> str:
    """The conventional name of the affine cycle on n nodes."""
    return f"A^(1)_{n - 1}"


def node_count_label(n: int) -> str:
    """Alias that indexes by the node count instead of the rank; reported
    alongside the standard name, flagged as an alias."""
    return f"A^(1)_{n}"


def include_level(a: LieElem) -> LieElem:
    """Embed an element one level up the refinement tower, grade by grade.

    The central coefficient is level-independent.
    """
    terms = {n: project_to_level(fn) for n, fn in a.terms.items()}
    target = Space.padic(a.space.prime, a.space.level + 1)
    return LieElem(target, terms, a.central)


@dataclass(frozen=True)
class InclusionMap:
    """The level-n into level-(n+1) embedding for a fixed prime."""

    p: int
    source_level: int

    @property
    def target_level(self) -> int:
        return self.source_level + 1

    @property
    def source(self) -> Space:
        return Space.padic(self.p, self.source_level)

    @property
    def target(self) -> Space:
        return Space.padic(self.p, self.target_level)

    def apply(self, a: LieElem) -> LieElem:
        if a.space != self.source:
            raise LiedynError("element does not live at the source level")
        return include_level(a)


def chevalley_generators(space: Space):
    """The generator triples (e_i, f_i, h_i) indexed by points."""
    if not space.is_finite:
        raise NonFiniteBackendError("generator triples need a finite backend")
    triples = []
    for i in range(space.size):
        d = FnElem.delta(space, i)
        e = RootElem.generator(space, 1, d)
        f = RootElem.generator(space, -1, d)
        triples.append((e, f, bracket_root(e, f)))
    return triples


def chevalley_relation_matrix(space: Space):
    """Recover the Cartan matrix entries from bracket relations.

    Returns (matrix, ok): matrix[i][j] is the scalar a with
    [h_i, e_j] = a e_j, and ok reports whether every relation had the
    required shape, including [h_i, f_j] = -a f_j and [e_i, f_j] = 0 for
    i != j.
    """
    triples = chevalley_generators(space)
    n = space.size
    ok = True
    matrix = []
    for i, (_, _, h) in enumerate(triples):
        row = []
        for j, (e, f, _) in enumerate(triples):
            he = bracket_root(h, e)
            coeff = he.term(1).values[j]
            if he != e.scale(coeff):
                ok = False
            if bracket_root(h, f) != f.scale(-coeff):
                ok = False
            if i != j and not bracket_root(
                triples[i][0], triples[j][1]
            ).is_zero():
                ok = False
            row.append(coeff)
        matrix.append(row)
    return matrix, ok
