"""Reproducible random elements for the property suites.

The generator is SplitMix64: the state advances by the 64-bit golden-ratio
increment 0x9E3779B97F4A7C15 and each output is avalanched by two
multiply-xorshift rounds (shifts 30/27/31, multipliers 0xBF58476D1CE4E5B9
and 0x94D049BB133111EB).  It is splittable: child generators are seeded from
the parent stream, so suites can shard work without coordinating.

Sampled functions have sparse support (at most four points or frequencies)
and coefficients from a small pool: nonzero integers in [-3, 3], roots of
unity on finite backends, rotation monomials on the torus.  Every draw feeds
from the generator in a fixed order, so equal seeds give equal elements.
"""

from __future__ import annotations

from fractions import Fraction

from .crossed import LieElem
from .funcspace import FnElem, Space, shift_u
from .rootform import RootElem
from .scalars import Cyclotomic, LaurentScalar
from .spectrum import CharBasisElem

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform-enough integer in [0, n) for tiny n; reproducible."""
        return self.next_u64() % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.randrange(hi - lo + 1)

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


def _nonzero_int(rng: SplitMix64) -> Fraction:
    v = rng.randint(-3, 3)
    return Fraction(v if v != 0 else 1)


def random_scalar(rng: SplitMix64, space: Space):
    kind = rng.randrange(4)
    if kind < 3 or space.kind == "padic":
        return _nonzero_int(rng)
    if space.is_finite:
        return Cyclotomic.zeta(space.ring_order, 1 + rng.randrange(space.ring_order))
    exp = [0] * space.dim
    exp[rng.randrange(space.dim)] = rng.choice((-2, -1, 1, 2))
    return LaurentScalar.monomial(space.dim, tuple(exp))


def random_fn(rng: SplitMix64, space: Space, max_terms: int = 4) -> FnElem:
    """A sparse nonzero function with small exact coefficients."""
    for _ in range(16):
        count = 1 + rng.randrange(max_terms)
        if space.is_finite:
            values = [Fraction(0)] * space.size
            for _ in range(count):
                j = rng.randrange(space.size)
                values[j] = values[j] + random_scalar(rng, space)
            fn = FnElem(space, values)
        else:
            terms = {}
            for _ in range(count):
                freq = tuple(rng.randint(-3, 3) for _ in range(space.dim))
                s = random_scalar(rng, space)
                terms[freq] = terms[freq] + s if freq in terms else s
            fn = FnElem(space, terms)
        if not fn.is_zero():
            return fn
    return FnElem.one(space)


def random_monomial(rng: SplitMix64, space: Space, grade_bound: int = 3) -> LieElem:
    grade = rng.randint(-grade_bound, grade_bound)
    return LieElem.monomial(space, random_fn(rng, space), grade)


def random_lie_elem(rng: SplitMix64, space: Space, grade_bound: int = 3) -> LieElem:
    out = random_monomial(rng, space, grade_bound)
    if rng.randrange(2):
        out = out + random_monomial(rng, space, grade_bound)
    if rng.randrange(4) == 0:
        out = out + LieElem.central_elem(space, _nonzero_int(rng))
    return out


def random_root_elem(rng: SplitMix64, space: Space, grade_bound: int = 3) -> RootElem:
    grade = rng.randint(-grade_bound, grade_bound)
    out = RootElem.generator(space, grade, random_fn(rng, space))
    if rng.randrange(2):
        grade = rng.randint(-grade_bound, grade_bound)
        out = out + RootElem.generator(space, grade, random_fn(rng, space))
    if rng.randrange(4) == 0:
        out = out + RootElem.central_elem(space, _nonzero_int(rng))
    return out


def random_char_elem(
    rng: SplitMix64, space: Space, grade_bound: int = 3
) -> CharBasisElem:
    def one_symbol():
        if space.is_finite:
            index = rng.randrange(space.size)
        else:
            index = tuple(rng.randint(-2, 2) for _ in range(space.dim))
        n = rng.randint(-grade_bound, grade_bound)
        return CharBasisElem.symbol(space, index, n, _nonzero_int(rng))

    out = one_symbol()
    if rng.randrange(2):
        out = out + one_symbol()
    if rng.randrange(4) == 0:
        out = out + CharBasisElem.central_elem(space, _nonzero_int(rng))
    return out


def random_tau_domain_elem(rng: SplitMix64, space: Space, grade_bound: int = 3) -> LieElem:
    """A crossed-product element whose grade-0 part is constant plus an
    exact shift-difference, so the coordinate change to root form is total."""
    g = random_fn(rng, space)
    grade0 = (g - shift_u(g, -1)) + FnElem.one(space).scale(_nonzero_int(rng))
    out = LieElem.monomial(space, grade0, 0)
    for _ in range(1 + rng.randrange(2)):
        grade = rng.randint(1, grade_bound) * rng.choice((-1, 1))
        out = out + LieElem.monomial(space, random_fn(rng, space), grade)
    if rng.randrange(4) == 0:
        out = out + LieElem.central_elem(space, _nonzero_int(rng))
    return out
