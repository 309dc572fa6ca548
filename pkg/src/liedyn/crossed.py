"""The crossed-product presentation.

Elements are finite sums sum_n phi_n (x) U^n plus an optional multiple of a
central generator c.  The associative product twists by the shift,

    (phi (x) U^n) (psi (x) U^m) = (phi . U^n psi) (x) U^{n+m},

the plain Lie bracket is the commutator, and the extended bracket adds
alpha(a, b) c where alpha is the shift-invariant 2-cocycle

    alpha(phi (x) U^n, psi (x) U^m) = n mean(phi . U^n psi)  when n+m = 0.

c is a dedicated generator, deliberately not identified with 1 (x) U^0:
[1 (x) U, 1 (x) U^-1] = c and nothing else.  collapse_central maps c back
onto the constant function when the quotient view is wanted.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CentralPartError, LiedynError, NonFiniteBackendError, SpaceMismatchError
from .funcspace import FnElem, Space, fn_mul, mean, shift_u
from .ranks import matrix_rank
from .scalars import conjugate, is_zero, scalar_eq


class LieElem:
    """A finite sum of monomials phi (x) U^n together with a central part.

    terms maps grade -> FnElem with no zero values stored; central is the
    scalar coefficient of c.
    """

    __slots__ = ("space", "terms", "central")

    def __init__(self, space: Space, terms=None, central=Fraction(0)):
        self.space = space
        clean = {}
        for n, fn in (terms or {}).items():
            if fn.space != space:
                raise SpaceMismatchError("term lives on a different space")
            if not fn.is_zero():
                clean[int(n)] = fn
        self.terms = clean
        self.central = central

    @classmethod
    def zero(cls, space: Space) -> "LieElem":
        return cls(space)

    @classmethod
    def monomial(cls, space: Space, fn: FnElem, grade: int) -> "LieElem":
        return cls(space, {grade: fn})

    @classmethod
    def unit(cls, space: Space) -> "LieElem":
        return cls(space, {0: FnElem.one(space)})

    @classmethod
    def central_elem(cls, space: Space, coeff=Fraction(1)) -> "LieElem":
        return cls(space, {}, coeff)

    def grades(self):
        return sorted(self.terms)

    def term(self, n: int) -> FnElem:
        return self.terms.get(n, FnElem.zero(self.space))

    def _check(self, other: "LieElem"):
        if self.space != other.space:
            raise SpaceMismatchError("elements live on different spaces")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for n, fn in other.terms.items():
            terms[n] = terms[n] + fn if n in terms else fn
        return LieElem(self.space, terms, self.central + other.central)

    def __neg__(self):
        return LieElem(
            self.space, {n: -fn for n, fn in self.terms.items()}, -self.central
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "LieElem":
        return LieElem(
            self.space,
            {n: fn.scale(s) for n, fn in self.terms.items()},
            s * self.central,
        )

    def __eq__(self, other):
        if not isinstance(other, LieElem):
            return False
        return (
            self.space == other.space
            and set(self.terms) == set(other.terms)
            and all(self.terms[n] == other.terms[n] for n in self.terms)
            and scalar_eq(self.central, other.central)
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms and is_zero(self.central)

    def __repr__(self):
        return f"LieElem({self.space}, {self.terms}, central={self.central!r})"


def _require_no_central(a: LieElem, what: str):
    if not is_zero(a.central):
        raise CentralPartError(f"{what} is not defined on the central generator")


def assoc_mul(a: LieElem, b: LieElem) -> LieElem:
    """The associative product; c is not an element of this algebra."""
    a._check(b)
    _require_no_central(a, "the associative product")
    _require_no_central(b, "the associative product")
    terms: dict = {}
    for n, fn in a.terms.items():
        for m, gn in b.terms.items():
            prod = fn_mul(fn, shift_u(gn, n))
            k = n + m
            terms[k] = terms[k] + prod if k in terms else prod
    return LieElem(a.space, terms)


def involution(a: LieElem) -> LieElem:
    """(phi (x) U^n)* = (U^{-n} conj(phi)) (x) U^{-n}, extended antilinearly."""
    terms = {-n: shift_u(fn.conj(), -n) for n, fn in a.terms.items()}
    return LieElem(a.space, terms, conjugate(a.central))


def bracket_plain(a: LieElem, b: LieElem) -> LieElem:
    """Commutator bracket; central parts commute with everything."""
    a._check(b)
    a0 = LieElem(a.space, a.terms)
    b0 = LieElem(b.space, b.terms)
    return assoc_mul(a0, b0) - assoc_mul(b0, a0)


def cocycle_alpha(a: LieElem, b: LieElem):
    """alpha(a, b): only grade pairs summing to zero contribute."""
    a._check(b)
    total = Fraction(0)
    for n, fn in a.terms.items():
        if n == 0 or -n not in b.terms:
            continue
        total = total + n * mean(fn_mul(fn, shift_u(b.terms[-n], n)))
    return total


def bracket_extended(a: LieElem, b: LieElem) -> LieElem:
    """The centrally extended bracket: commutator plus alpha(a, b) c."""
    out = bracket_plain(a, b)
    return LieElem(a.space, out.terms, cocycle_alpha(a, b))


def decompose_center(a: LieElem):
    """Split off the constant part of grade 0: a = a0 + s (1 (x) U^0).

    The remainder a0 has mean-zero grade-0 term.  Rejects elements with a
    central part; c is handled by construction, not by decomposition.
    """
    _require_no_central(a, "center decomposition")
    s = mean(a.term(0))
    return a - LieElem.unit(a.space).scale(s), s


def collapse_central(a: LieElem) -> LieElem:
    """Quotient view sending c to 1 (x) U^0 (the non-extended algebra)."""
    out = LieElem(a.space, a.terms)
    return out + LieElem.unit(a.space).scale(a.central)


def verify_not_coboundary(space: Space, grade_window: int) -> bool:
    """Decide whether alpha restricted to grades |n| <= grade_window can be
    written as f([x, y]) for a linear functional f.

    Sets up one equation per ordered pair of basis monomials delta_i (x) U^n
    whose commutator stays inside the window, with unknowns f(delta_j (x) U^m),
    and certifies infeasibility by comparing exact ranks.  True means alpha is
    not a coboundary on this truncation (hence not one globally).
    """
    if not space.is_finite:
        raise NonFiniteBackendError("the coboundary test needs a finite backend")
    if grade_window < 0:
        raise LiedynError("grade window must be >= 0")
    size = space.size
    grades = range(-grade_window, grade_window + 1)
    index = {(n, j): k for k, (n, j) in enumerate((n, j) for n in grades for j in range(size))}
    basis = [
        LieElem.monomial(space, FnElem.delta(space, j), n) for (n, j) in index
    ]
    rows_hom = []
    rows_aug = []
    pairs = [(a, b) for a in basis for b in basis]
    for a, b in pairs:
        br = bracket_plain(a, b)
        if any(abs(n) > grade_window for n in br.terms):
            continue
        rhs = cocycle_alpha(a, b)
        row = [Fraction(0)] * len(index)
        for n, fn in br.terms.items():
            for j in range(size):
                row[index[(n, j)]] = row[index[(n, j)]] + fn.values[j]
        if all(v == 0 for v in row) and rhs == 0:
            continue
        rows_hom.append(row)
        rows_aug.append(row + [rhs])
    if not rows_aug:
        return False
    return matrix_rank(rows_aug) > matrix_rank(rows_hom)
