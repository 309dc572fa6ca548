"""Function spaces carrying a measure-preserving shift.

Three backends:

  * cyclic:N    -- functions on Z/N with the rotation x -> x + 1,
                   stored as a dense value vector
  * padic:p:n   -- functions on Z/p^n (the n-th finite level of the p-adic
                   odometer); same storage as cyclic:p^n plus an exact
                   pullback to the next level
  * torus:d     -- trigonometric polynomials on the d-torus under an
                   irrational rotation, stored as a sparse frequency map;
                   the rotation angles stay formal (variables q1..qd)

The shift operator is (U f)(x) = f(T x), so on cyclic spaces
(U f)(x) = f(x + 1) and on the torus U z^k = q^k z^k.  The invariant mean
is exact: an average over points, or the zero-frequency coefficient.

Elements are immutable; every operation returns a fresh FnElem, which makes
concurrent reads safe without locks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    LiedynError,
    NonFiniteBackendError,
    NotInImageError,
    SpaceMismatchError,
)
from .scalars import (
    Cyclotomic,
    LaurentScalar,
    conjugate,
    is_zero,
    scalar_eq,
)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Space:
    """Identifies a backend.  kind is 'cyclic', 'padic' or 'torus'."""

    kind: str
    a: int = 0
    b: int = 0

    @classmethod
    def cyclic(cls, n: int) -> "Space":
        if n < 2:
            raise LiedynError("cyclic backend needs at least two points")
        return cls("cyclic", n)

    @classmethod
    def padic(cls, p: int, level: int) -> "Space":
        if not _is_prime(p):
            raise LiedynError(f"{p} is not prime")
        if level < 1:
            raise LiedynError("level must be >= 1")
        return cls("padic", p, level)

    @classmethod
    def torus(cls, dim: int) -> "Space":
        if dim < 1:
            raise LiedynError("torus dimension must be >= 1")
        return cls("torus", dim)

    @property
    def size(self) -> int:
        if self.kind == "cyclic":
            return self.a
        if self.kind == "padic":
            return self.a ** self.b
        raise NonFiniteBackendError("torus backend has no point count")

    @property
    def is_finite(self) -> bool:
        return self.kind != "torus"

    @property
    def dim(self) -> int:
        if self.kind != "torus":
            raise LiedynError("dim only makes sense on the torus")
        return self.a

    @property
    def prime(self) -> int:
        if self.kind != "padic":
            raise LiedynError("prime only makes sense on padic spaces")
        return self.a

    @property
    def level(self) -> int:
        if self.kind != "padic":
            raise LiedynError("level only makes sense on padic spaces")
        return self.b

    @property
    def ring_order(self) -> int:
        """Natural cyclotomic order for character values (1 on the torus)."""
        return self.size if self.is_finite else 1

    @property
    def nq(self) -> int:
        """Number of formal rotation variables."""
        return self.a if self.kind == "torus" else 0

    def render(self) -> str:
        if self.kind == "cyclic":
            return f"cyclic:{self.a}"
        if self.kind == "padic":
            return f"padic:{self.a}:{self.b}"
        return f"torus:{self.a}"

    @classmethod
    def parse(cls, text: str) -> "Space":
        parts = text.split(":")
        try:
            if parts[0] == "cyclic" and len(parts) == 2:
                return cls.cyclic(int(parts[1]))
            if parts[0] == "padic" and len(parts) == 3:
                return cls.padic(int(parts[1]), int(parts[2]))
            if parts[0] == "torus" and len(parts) == 2:
                return cls.torus(int(parts[1]))
        except ValueError:
            pass
        raise LiedynError(f"unrecognized space {text!r}")

    def __str__(self):
        return self.render()


class FnElem:
    """A function on a Space.

    Finite backends store a tuple of scalar values indexed by points; the
    torus stores {frequency tuple: coefficient} with no zero coefficients.
    """

    __slots__ = ("space", "values", "terms")

    def __init__(self, space: Space, data):
        self.space = space
        if space.is_finite:
            values = tuple(data)
            if len(values) != space.size:
                raise LiedynError("value vector has the wrong length")
            self.values = values
            self.terms = None
        else:
            terms = {}
            for freq, coeff in dict(data).items():
                freq = tuple(int(f) for f in freq)
                if len(freq) != space.dim:
                    raise LiedynError("frequency arity does not match the torus")
                if not is_zero(coeff):
                    terms[freq] = coeff
            self.values = None
            self.terms = terms

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, space: Space) -> "FnElem":
        if space.is_finite:
            return cls(space, (Fraction(0),) * space.size)
        return cls(space, {})

    @classmethod
    def one(cls, space: Space) -> "FnElem":
        if space.is_finite:
            return cls(space, (Fraction(1),) * space.size)
        return cls(space, {(0,) * space.dim: Fraction(1)})

    @classmethod
    def delta(cls, space: Space, k: int) -> "FnElem":
        if not space.is_finite:
            raise NonFiniteBackendError("delta functions need a finite space")
        if not 0 <= k < space.size:
            raise LiedynError(f"delta index {k} out of range")
        vals = [Fraction(0)] * space.size
        vals[k] = Fraction(1)
        return cls(space, vals)

    @classmethod
    def character(cls, space: Space, k) -> "FnElem":
        """chi_k(x) = zeta_N^{k x} on finite spaces; z^k on the torus."""
        if space.is_finite:
            n = space.size
            k = int(k) % n
            return cls(space, tuple(Cyclotomic.zeta(n, k * x) for x in range(n)))
        freq = tuple(int(x) for x in k)
        return cls(space, {freq: Fraction(1)})

    # -- linear structure ----------------------------------------------------

    def _check(self, other: "FnElem"):
        if self.space != other.space:
            raise SpaceMismatchError(
                f"functions on {self.space} and {other.space} cannot combine"
            )

    def __add__(self, other):
        self._check(other)
        if self.space.is_finite:
            return FnElem(
                self.space, tuple(a + b for a, b in zip(self.values, other.values))
            )
        terms = dict(self.terms)
        for f, c in other.terms.items():
            terms[f] = terms.get(f, Fraction(0)) + c
        return FnElem(self.space, terms)

    def __neg__(self):
        if self.space.is_finite:
            return FnElem(self.space, tuple(-a for a in self.values))
        return FnElem(self.space, {f: -c for f, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "FnElem":
        if is_zero(s):
            return FnElem.zero(self.space)
        if self.space.is_finite:
            return FnElem(self.space, tuple(s * a for a in self.values))
        return FnElem(self.space, {f: s * c for f, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FnElem) or self.space != other.space:
            return NotImplemented if not isinstance(other, FnElem) else False
        if self.space.is_finite:
            return all(scalar_eq(a, b) for a, b in zip(self.values, other.values))
        if set(self.terms) != set(other.terms):
            return False
        return all(scalar_eq(self.terms[f], other.terms[f]) for f in self.terms)

    __hash__ = None

    def is_zero(self) -> bool:
        if self.space.is_finite:
            return all(is_zero(v) for v in self.values)
        return not self.terms

    def conj(self) -> "FnElem":
        """Pointwise complex conjugate (reverses torus frequencies)."""
        if self.space.is_finite:
            return FnElem(self.space, tuple(conjugate(v) for v in self.values))
        return FnElem(
            self.space,
            {tuple(-x for x in f): conjugate(c) for f, c in self.terms.items()},
        )

    def __repr__(self):
        if self.space.is_finite:
            return f"FnElem({self.space}, {self.values})"
        return f"FnElem({self.space}, {self.terms})"


# -- the operations of the space ---------------------------------------------


def fn_mul(f: FnElem, g: FnElem) -> FnElem:
    """Pointwise product (frequency convolution on the torus)."""
    f._check(g)
    if f.space.is_finite:
        return FnElem(f.space, tuple(a * b for a, b in zip(f.values, g.values)))
    terms: dict = {}
    for k1, c1 in f.terms.items():
        for k2, c2 in g.terms.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            prod = c1 * c2
            terms[k] = terms[k] + prod if k in terms else prod
    return FnElem(f.space, terms)


def shift_u(f: FnElem, power: int = 1) -> FnElem:
    """U^power, where (U f)(x) = f(T x).

    On cyclic:N this is (U^p f)(x) = f(x + p); on the torus U^p z^k = q^{pk} z^k.
    """
    if power == 0:
        return f
    if f.space.is_finite:
        n = f.space.size
        return FnElem(f.space, tuple(f.values[(x + power) % n] for x in range(n)))
    d = f.space.dim
    out = {}
    for k, c in f.terms.items():
        mono = LaurentScalar.monomial(d, tuple(power * x for x in k))
        out[k] = mono * c
    return FnElem(f.space, out)


def mean(f: FnElem):
    """The invariant mean: exact average of values, or the coefficient of
    the zero frequency."""
    if f.space.is_finite:
        total = Fraction(0)
        for v in f.values:
            total = total + v
        return total * Fraction(1, f.space.size)
    return f.terms.get((0,) * f.space.dim, Fraction(0))


def cartan_k(f: FnElem) -> FnElem:
    """K = 2I - U - U^{-1}, the discrete Laplacian of the shift."""
    return f.scale(Fraction(2)) - shift_u(f, 1) - shift_u(f, -1)


def cartan_kn(f: FnElem, n: int) -> FnElem:
    """K_n = I - U^{-1} + U^{n-1} - U^n, i.e. (I - U^{-1})(I - U^n).

    K_1 recovers K.
    """
    return f - shift_u(f, -1) + shift_u(f, n - 1) - shift_u(f, n)


def geometric_sum_u(f: FnElem, m: int) -> FnElem:
    """(I + U^{-1} + ... + U^{-(m-1)}) f for m >= 1: the polynomial meaning
    of (1 - U^{-m}) / (1 - U^{-1})."""
    if m < 1:
        raise LiedynError("geometric sum needs m >= 1")
    acc = f
    for j in range(1, m):
        acc = acc + shift_u(f, -j)
    return acc


def project_to_level(f: FnElem) -> FnElem:
    """Pull a function on Z/p^n back along Z/p^{n+1} -> Z/p^n.

    Fibers are uniform, so the mean is preserved, and the pullback
    intertwines the shifts of the two levels.
    """
    sp = f.space
    if sp.kind != "padic":
        raise LiedynError("level structure only exists on padic spaces")
    target = Space.padic(sp.prime, sp.level + 1)
    size = sp.size
    return FnElem(target, tuple(f.values[x % size] for x in range(target.size)))


def difference_preimage(f: FnElem) -> FnElem:
    """Solve g - U^{-1} g = f exactly.

    On cyclic spaces the solution exists iff mean(f) = 0 (telescoping, then
    normalized to mean zero).  On the torus each frequency-k coefficient is
    divided by (1 - q^{-k}); the k = 0 coefficient must vanish.
    Raises NotInImageError when no solution exists.
    """
    sp = f.space
    if sp.is_finite:
        if not is_zero(mean(f)):
            raise NotInImageError("shift-difference preimage needs mean zero")
        n = sp.size
        vals = [Fraction(0)]
        for x in range(1, n):
            vals.append(vals[-1] + f.values[x])
        g = FnElem(sp, vals)
        return g - FnElem.one(sp).scale(mean(g))
    zero_key = (0,) * sp.dim
    if not is_zero(f.terms.get(zero_key, Fraction(0))):
        raise NotInImageError("shift-difference preimage needs mean zero")
    out = {}
    for k, c in f.terms.items():
        lc = c if isinstance(c, LaurentScalar) else LaurentScalar.constant(sp.dim, c)
        out[k] = lc.divide_by_one_minus_monomial(k)
    return FnElem(sp, out)


class CartanOpSpec:
    """A linear operator usable in place of K.

    Default: the shift Laplacian K.  On finite backends an explicit matrix
    (rows of scalars, entry [i][j] = coefficient of delta_i in the image of
    delta_j) may be supplied; only its shape and linearity are enforced.
    """

    def __init__(self, space: Space, matrix=None):
        self.space = space
        if matrix is not None:
            if not space.is_finite:
                raise NonFiniteBackendError(
                    "custom operators need a finite-dimensional backend"
                )
            matrix = tuple(tuple(row) for row in matrix)
            n = space.size
            if len(matrix) != n or any(len(row) != n for row in matrix):
                raise LiedynError("operator matrix must be square of the space size")
        self.matrix = matrix

    def apply(self, f: FnElem) -> FnElem:
        if f.space != self.space:
            raise SpaceMismatchError("operator and argument live on different spaces")
        if self.matrix is None:
            return cartan_k(f)
        n = self.space.size
        vals = []
        for i in range(n):
            acc = Fraction(0)
            for j in range(n):
                acc = acc + self.matrix[i][j] * f.values[j]
            vals.append(acc)
        return FnElem(self.space, vals)
