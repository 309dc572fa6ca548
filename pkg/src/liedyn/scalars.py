"""Exact scalar arithmetic.

Three layers, each closed under +, -, *:

  * rationals           -- stdlib fractions.Fraction
  * Cyclotomic          -- elements of Q(zeta_N), reduced mod the N-th
                           cyclotomic polynomial
  * LaurentScalar       -- finitely supported Laurent polynomials over
                           cyclotomic coefficients in formal unit-modulus
                           variables q (or q1..qd)

Mixed operations coerce upward automatically: ints and Fractions embed into
any cyclotomic field, Q(zeta_N) embeds into Q(zeta_M) whenever N divides M,
and everything embeds into a Laurent ring as the exponent-zero term.  Adding
cyclotomics whose orders are incomparable under divisibility raises
RingMismatchError; equality testing is always total (it joins at the lcm).

No zero coefficient is ever stored, so equality of canonical forms is
decidable by direct comparison.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .errors import LiedynError, NotInImageError, RingMismatchError

Scalar = "int | Fraction | Cyclotomic | LaurentScalar"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def euler_phi(n: int) -> int:
    """Euler totient, by trial-division factorization (n stays small here).

    >>> [euler_phi(k) for k in (1, 2, 3, 4, 8, 9, 27)]
    [1, 1, 2, 2, 4, 6, 18]
    """
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # long division of integer polynomials, den monic; exact for our inputs
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(1, len(num) - deg_d)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - deg_d] = c
        for j, dj in enumerate(den):
            num[i - deg_d + j] -= c * dj
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial.

    Computed from x^n - 1 = prod_{d | n} Phi_d(x) by exact division; cached.
    The cache is append-only and safe under concurrent readers.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise LiedynError("cyclotomic order must be >= 1")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n):
        if d == n:
            continue
        poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
        assert all(c == 0 for c in rem)
    return tuple(poly)


def _reduce_mod_phi(coeffs: list[Fraction], order: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        coeffs[i] = _ZERO
        for j in range(deg):
            coeffs[i - deg + j] -= c * phi[j]
    coeffs = coeffs[:deg]
    while len(coeffs) < deg:
        coeffs.append(_ZERO)
    return tuple(coeffs)


class Cyclotomic:
    """An element of Q(zeta_N), stored as a coefficient vector of length
    phi(N) against the power basis 1, zeta, ..., zeta^{phi(N)-1}.

    >>> z = Cyclotomic.zeta(4)
    >>> z * z == -1
    True
    >>> (z * z - z) == Cyclotomic(4, (Fraction(-1), Fraction(-1)))
    True
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs, reduce: bool = False):
        self.order = order
        vals = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        if reduce or len(vals) != euler_phi(order):
            self.coeffs = _reduce_mod_phi(vals, order)
        else:
            self.coeffs = tuple(vals)

    @classmethod
    def _fast(cls, order: int, coeffs: tuple) -> "Cyclotomic":
        """Wrap an already-reduced tuple of Fractions without validation."""
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyclotomic":
        power %= order
        vals = [_ZERO] * (power + 1)
        vals[power] = _ONE
        return cls(order, vals, reduce=True)

    @classmethod
    def from_rational(cls, order: int, value) -> "Cyclotomic":
        vals = [Fraction(value)] + [_ZERO] * (euler_phi(order) - 1)
        return cls(order, vals)

    # -- ring structure ---------------------------------------------------

    def _coerce(self, other, total: bool):
        """Bring self and other to a common order.

        Arithmetic uses divisibility only (total=False); equality may join
        at the lcm (total=True) since that never changes the answer.
        """
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            other = Cyclotomic.from_rational(self.order, other)
        if not isinstance(other, Cyclotomic):
            return None
        a, b = self, other
        if a.order == b.order:
            return a, b
        if b.order % a.order == 0:
            return a.embed(b.order), b
        if a.order % b.order == 0:
            return a, b.embed(a.order)
        if total:
            m = a.order * b.order // _gcd(a.order, b.order)
            return a.embed(m), b.embed(m)
        raise RingMismatchError(
            f"cyclotomic orders {a.order} and {b.order} are incomparable"
        )

    def __add__(self, other):
        if isinstance(other, LaurentScalar):
            return NotImplemented
        pair = self._coerce(other, total=False)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic._fast(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._fast(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, LaurentScalar):
            return NotImplemented
        pair = self._coerce(other, total=False)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic._fast(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentScalar):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._fast(self.order, tuple(c * other for c in self.coeffs))
        pair = self._coerce(other, total=False)
        if pair is None:
            return NotImplemented
        a, b = pair
        out = [_ZERO] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y != 0:
                    out[i + j] += x * y
        return Cyclotomic(a.order, out, reduce=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            r = self.as_root_of_unity()
            if r is None:
                raise LiedynError("negative power of a non-unit cyclotomic")
            return Cyclotomic.zeta(self.order, r * n)
        result = Cyclotomic.from_rational(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentScalar):
            return other.__eq__(self)
        try:
            pair = self._coerce(other, total=True)
        except RingMismatchError:  # unreachable: total join always works
            return False
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    __hash__ = None  # mutable-equality semantics; never used as a dict key

    def __repr__(self):
        return f"Cyclotomic({self.order}, {self.coeffs})"

    # -- structure maps ---------------------------------------------------

    def embed(self, order: int) -> "Cyclotomic":
        """Embed into Q(zeta_M) for a multiple M of the current order,
        sending zeta_N to zeta_M^{M/N}."""
        if order % self.order != 0:
            raise RingMismatchError(
                f"no embedding of Q(zeta_{self.order}) into Q(zeta_{order})"
            )
        if order == self.order:
            return self
        step = Cyclotomic.zeta(order, order // self.order)
        result = Cyclotomic.from_rational(order, 0)
        for c in reversed(self.coeffs):
            result = result * step + c
        return result

    def galois(self, t: int) -> "Cyclotomic":
        """Apply zeta -> zeta^t (t coprime to the order)."""
        step = Cyclotomic.zeta(self.order, t)
        result = Cyclotomic.from_rational(self.order, 0)
        for c in reversed(self.coeffs):
            result = result * step + c
        return result

    def conjugate(self) -> "Cyclotomic":
        return self.galois(self.order - 1)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_fraction(self):
        """The rational value if this element lies in Q, else None."""
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def as_root_of_unity(self):
        """Return r with self == zeta^r for the stored order, or None.
        Only used for unit powers at parse time."""
        for r in range(self.order):
            if self == Cyclotomic.zeta(self.order, r):
                return r
        return None


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class LaurentScalar:
    """Finitely supported map from exponent vectors to cyclotomic
    coefficients: an element of Q(zeta)[q1^{+-1}, ..., qd^{+-1}].

    The variables are formal symbols of modulus one; conjugation inverts
    every exponent and conjugates the coefficients.

    >>> q = LaurentScalar.variable(1)
    >>> (q * q.conjugate()) == 1
    True
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise RingMismatchError("exponent arity does not match variable count")
            coeff = _as_cyclotomic(coeff)
            if not coeff.is_zero():
                if exp in clean:
                    coeff = clean[exp] + coeff
                clean[exp] = coeff
        self.terms = {e: c for e, c in clean.items() if not c.is_zero()}

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentScalar":
        """Wrap a dict whose values are already Cyclotomic; drops zeros."""
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        return obj

    @classmethod
    def variable(cls, nvars: int, index: int = 0, power: int = 1) -> "LaurentScalar":
        exp = [0] * nvars
        exp[index] = power
        return cls(nvars, {tuple(exp): _ONE})

    @classmethod
    def monomial(cls, nvars: int, exponents, coeff=1) -> "LaurentScalar":
        return cls(nvars, {tuple(exponents): coeff})

    @classmethod
    def constant(cls, nvars: int, value) -> "LaurentScalar":
        return cls(nvars, {(0,) * nvars: value})

    def _coerce(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return LaurentScalar.constant(self.nvars, other)
        if isinstance(other, LaurentScalar):
            if other.nvars != self.nvars:
                raise RingMismatchError(
                    f"Laurent rings in {self.nvars} and {other.nvars} variables"
                )
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            terms[exp] = terms[exp] + coeff if exp in terms else coeff
        return LaurentScalar._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + prod
                else:
                    terms[e] = prod
        return LaurentScalar._raw(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise LiedynError("negative power of a non-monomial Laurent scalar")
            ((exp, coeff),) = self.terms.items()
            r = coeff.as_root_of_unity()
            if r is None and coeff.as_fraction() not in (1, -1):
                raise LiedynError("negative power of a non-unit coefficient")
            inv_coeff = coeff.conjugate() if r is not None else coeff
            return LaurentScalar.monomial(
                self.nvars, tuple(-e for e in exp), inv_coeff
            ) ** (-n)
        result = LaurentScalar.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = LaurentScalar.constant(self.nvars, other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def __repr__(self):
        return f"LaurentScalar({self.nvars}, {self.terms})"

    def conjugate(self) -> "LaurentScalar":
        return LaurentScalar._raw(
            self.nvars,
            {tuple(-x for x in e): c.conjugate() for e, c in self.terms.items()},
        )

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Cyclotomic.from_rational(1, 0))

    def as_cyclotomic(self):
        """The coefficient if this Laurent scalar is constant, else None."""
        if not self.terms:
            return Cyclotomic.from_rational(1, 0)
        if len(self.terms) == 1 and (0,) * self.nvars in self.terms:
            return self.terms[(0,) * self.nvars]
        return None

    def divide_by_one_minus_monomial(self, k) -> "LaurentScalar":
        """Exact division by (1 - q^{-k}) for a nonzero exponent vector k.

        The divisor only couples exponents along the lattice line Z*k, so
        each residue class is a univariate problem: writing y = q^k and the
        class coefficients as A(y), the quotient of A by (1 - y^{-1}) is
        -y * (ascending partial sums of A), exact iff each class sums to 0.
        Raises NotInImageError otherwise.
        """
        k = tuple(int(x) for x in k)
        if len(k) != self.nvars or all(x == 0 for x in k):
            raise LiedynError("divisor exponent must be nonzero of matching arity")
        pivot = next(i for i, x in enumerate(k) if x != 0)
        classes: dict = {}
        for exp, coeff in self.terms.items():
            t = exp[pivot] // k[pivot]
            rep = tuple(e - t * kk for e, kk in zip(exp, k))
            classes.setdefault(rep, {})[t] = coeff
        out: dict = {}
        for rep, col in classes.items():
            total = Cyclotomic.from_rational(1, 0)
            for c in col.values():
                total = total + c
            if not total.is_zero():
                raise NotInImageError("shift-difference equation has no exact solution")
            ts = sorted(col)
            running = Cyclotomic.from_rational(1, 0)
            # walk the whole occupied range: the partial sum stays nonzero
            # across support gaps, and each such t contributes a quotient term
            for t in range(ts[0], ts[-1] + 1):
                if t in col:
                    running = running + col[t]
                if not running.is_zero():
                    exp = tuple(r + (t + 1) * kk for r, kk in zip(rep, k))
                    out[exp] = -running
        return LaurentScalar._raw(self.nvars, out)


def _as_cyclotomic(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(1, x)
    raise RingMismatchError(f"cannot store {type(x).__name__} as a coefficient")


# -- uniform helpers used throughout the algebra layers ----------------------


def scalar_add(a, b):
    if isinstance(a, int):
        a = Fraction(a)
    return a + b


def scalar_mul(a, b):
    if isinstance(a, int):
        a = Fraction(a)
    return a * b


def scalar_neg(a):
    return -a


def scalar_sub(a, b):
    if isinstance(a, int):
        a = Fraction(a)
    return a - b


def is_zero(a) -> bool:
    if isinstance(a, (int, Fraction)):
        return a == 0
    return a.is_zero()


def scalar_eq(a, b) -> bool:
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    return a == b


def conjugate(a):
    if isinstance(a, int):
        return Fraction(a)
    if isinstance(a, Fraction):
        return a
    return a.conjugate()


def scalar_pow(a, n: int):
    if isinstance(a, int):
        a = Fraction(a)
    return a ** n


def embed_cyclotomic(a, order: int) -> Cyclotomic:
    """Embed a rational or cyclotomic scalar into Q(zeta_order)."""
    if isinstance(a, (int, Fraction)):
        return Cyclotomic.from_rational(order, a)
    if isinstance(a, Cyclotomic):
        return a.embed(order)
    raise RingMismatchError("cannot embed a Laurent scalar into a cyclotomic field")


def demote(a):
    """Collapse a scalar to its smallest natural representation
    (Laurent -> Cyclotomic -> Fraction when possible).  Used by rendering."""
    if isinstance(a, int):
        return Fraction(a)
    if isinstance(a, LaurentScalar):
        c = a.as_cyclotomic()
        if c is not None:
            a = c
        else:
            return a
    if isinstance(a, Cyclotomic):
        f = a.as_fraction()
        if f is not None:
            return f
    return a
