"""Small and big elliptic weights, elliptic numbers, and binomials.

Four weight families, one per degeneration level:

    EllipticFamily(a, b, q, p)   theta-ratio weights
    ABQFamily(a, b, q)           the p -> 0 rational forms
    AQFamily(a, q)               the b -> 0 limit of those
    QFamily(q)                   plain q-weights: w = q, W(k) = q^k

Each family evaluates by its own closed formula; the limits are never
taken numerically (setting b = 0 in the elliptic formula divides by
zero).  The chain is instead exercised by tests: Elliptic at p = 0
agrees with ABQ exactly, ABQ at tiny b approximates AQ, AQ at huge |a|
approximates QFamily.

Core identities provided here (and property-tested downstream):

    big(k)  = prod_{j=1..k} small(j)            for integer k >= 0
    small(k + n) = shift(k).small(n)            parameter shift
    big(k + n)   = big(k) * shift(k).big(n)
    number(z)    = number(z - 1) + big(z - 1)   elliptic-number recursion

where shift(t) maps (a, b) -> (a q^{2t}, b q^t) (only a for AQFamily,
nothing for QFamily).  The elliptic binomial uses its own row shift
(a, b) -> (a q^s, b q^{2s}), exposed as binom_shift; the two conventions
are distinct on purpose and cross-checked by the lattice-path oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .theta import (
    POLE_THRESHOLD,
    DomainError,
    PoleError,
    cpow,
    qp_factorial_multi,
    theta,
)

# Sampling contract shared with the CLI harness: moduli ranges that keep
# every denominator factor comfortably away from zero.
Q_MODULUS_RANGE = (0.3, 0.9)
P_MODULUS_RANGE = (0.05, 0.5)
A_MODULUS_RANGE = (0.2, 2.0)
B_MODULUS_RANGE = (0.2, 2.0)


def _checked_inverse_factor(value, what):
    if abs(value) < POLE_THRESHOLD:
        raise PoleError(f"denominator factor {what} vanishes", factor=value)
    return value


def _lin(x) -> complex:
    # theta(x; 0) degeneration
    return 1 - x


def _den_factorial_multi(args, q, p, n: int) -> complex:
    """qp_factorial_multi for a product about to be inverted.

    Each theta factor is pole-checked individually; the aggregate may be
    legitimately tiny without any factor being near a zero.  Only the
    nonnegative-index case is needed by the binomials.
    """
    if n < 0:
        raise ValueError("denominator factorial only supports n >= 0")
    val = complex(1.0)
    for a in args:
        arg = a
        for k in range(n):
            factor = theta(arg, p)
            if abs(factor) < POLE_THRESHOLD:
                raise PoleError(
                    f"denominator theta factor {k} of ({a!r}; q, p)_{n} vanishes",
                    index=k,
                    factor=factor,
                )
            val *= factor
            arg *= q
    return val


class WeightFamily:
    """Shared surface of the four weight families."""

    tag = "?"

    def small(self, k) -> complex:
        raise NotImplementedError

    def big(self, k) -> complex:
        raise NotImplementedError

    def number(self, z) -> complex:
        raise NotImplementedError

    def shift(self, t) -> "WeightFamily":
        raise NotImplementedError

    def binom_shift(self, s) -> "WeightFamily":
        raise NotImplementedError

    def binomial(self, n: int, k: int) -> complex:
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class EllipticFamily(WeightFamily):
    """Full elliptic weights with parameters a, b, base q, nome p."""

    a: complex
    b: complex
    q: complex
    p: complex

    tag = "elliptic"

    def __post_init__(self):
        for name in ("a", "b", "q", "p"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.q == 0:
            raise DomainError("base q must be nonzero")
        if abs(self.p) >= 1:
            raise DomainError("nome must satisfy |p| < 1")
        if self.a == 0 or self.b == 0:
            raise DomainError("elliptic weights need nonzero a and b")

    def _ratio(self, num_args, den_args, scale) -> complex:
        num = complex(1.0)
        for x in num_args:
            num *= theta(x, self.p)
        den = complex(1.0)
        for x in den_args:
            den *= _checked_inverse_factor(theta(x, self.p), f"theta({x!r}; p)")
        return num / den * scale

    def small(self, k) -> complex:
        a, b, q = self.a, self.b, self.q
        qk = cpow(q, k)
        q2k = qk * qk
        return self._ratio(
            (a * q2k * q, b * qk, a * qk / (q * q) / b),
            (a * q2k / q, b * qk * q * q, a * qk / b),
            q,
        )

    def big(self, k) -> complex:
        a, b, q = self.a, self.b, self.q
        qk = cpow(q, k)
        q2k = qk * qk
        return self._ratio(
            (a * q * q2k, b * q, b * q * q, a / q / b, a / b),
            (a * q, b * qk * q, b * qk * q * q, a * qk / q / b, a * qk / b),
            qk,
        )

    def number(self, z) -> complex:
        a, b, q = self.a, self.b, self.q
        qz = cpow(q, z)
        return self._ratio(
            (qz, a * qz, b * q * q, a / b),
            (q, a * q, b * qz * q, a * qz / q / b),
            1.0,
        )

    def shift(self, t) -> "EllipticFamily":
        qt = cpow(self.q, t)
        return EllipticFamily(self.a * qt * qt, self.b * qt, self.q, self.p)

    def binom_shift(self, s) -> "EllipticFamily":
        qs = cpow(self.q, s)
        return EllipticFamily(self.a * qs, self.b * qs * qs, self.q, self.p)

    def binomial(self, n: int, k: int) -> complex:
        if k < 0 or k > n:
            return complex(0.0)
        a, b, q, p = self.a, self.b, self.q, self.p
        qk = cpow(q, k)
        num = qp_factorial_multi(
            (q * qk, a * q * qk, b * q * qk, a * q / qk / b), q, p, n - k
        )
        den = _den_factorial_multi((q, a * q, b * q * qk * qk, a * q / b), q, p, n - k)
        return num / den

    def params(self) -> dict:
        return {"a": self.a, "b": self.b, "q": self.q, "p": self.p}


@dataclass(frozen=True)
class ABQFamily(WeightFamily):
    """The a,b;q-weights: rational forms obtained at p = 0."""

    a: complex
    b: complex
    q: complex

    tag = "abq"

    def __post_init__(self):
        for name in ("a", "b", "q"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.q == 0:
            raise DomainError("base q must be nonzero")
        if self.b == 0:
            raise DomainError("a,b;q-weights need nonzero b (use AQFamily for b = 0)")

    def _ratio(self, num_args, den_args, scale) -> complex:
        num = complex(1.0)
        for x in num_args:
            num *= _lin(x)
        den = complex(1.0)
        for x in den_args:
            den *= _checked_inverse_factor(_lin(x), f"(1 - {x!r})")
        return num / den * scale

    def small(self, k) -> complex:
        a, b, q = self.a, self.b, self.q
        qk = cpow(q, k)
        q2k = qk * qk
        return self._ratio(
            (a * q2k * q, b * qk, a * qk / (q * q) / b),
            (a * q2k / q, b * qk * q * q, a * qk / b),
            q,
        )

    def big(self, k) -> complex:
        a, b, q = self.a, self.b, self.q
        qk = cpow(q, k)
        q2k = qk * qk
        return self._ratio(
            (a * q * q2k, b * q, b * q * q, a / q / b, a / b),
            (a * q, b * qk * q, b * qk * q * q, a * qk / q / b, a * qk / b),
            qk,
        )

    def number(self, z) -> complex:
        a, b, q = self.a, self.b, self.q
        qz = cpow(q, z)
        return self._ratio(
            (qz, a * qz, b * q * q, a / b),
            (q, a * q, b * qz * q, a * qz / q / b),
            1.0,
        )

    def shift(self, t) -> "ABQFamily":
        qt = cpow(self.q, t)
        return ABQFamily(self.a * qt * qt, self.b * qt, self.q)

    def binom_shift(self, s) -> "ABQFamily":
        qs = cpow(self.q, s)
        return ABQFamily(self.a * qs, self.b * qs * qs, self.q)

    def binomial(self, n: int, k: int) -> complex:
        if k < 0 or k > n:
            return complex(0.0)
        a, b, q = self.a, self.b, self.q
        qk = cpow(q, k)
        num = qp_factorial_multi(
            (q * qk, a * q * qk, b * q * qk, a * q / qk / b), q, 0.0, n - k
        )
        den = _den_factorial_multi((q, a * q, b * q * qk * qk, a * q / b), q, 0.0, n - k)
        return num / den

    def params(self) -> dict:
        return {"a": self.a, "b": self.b, "q": self.q}


@dataclass(frozen=True)
class AQFamily(WeightFamily):
    """The a;q-weights, the b -> 0 limit of the a,b;q family."""

    a: complex
    q: complex

    tag = "aq"

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "q", complex(self.q))
        if self.q == 0:
            raise DomainError("base q must be nonzero")
        if self.a == 0:
            raise DomainError("a;q-weights need nonzero a (use QFamily for a = 0)")

    def small(self, k) -> complex:
        a, q = self.a, self.q
        q2k = cpow(q, k) ** 2
        den = _checked_inverse_factor(_lin(a * q2k / q), "1 - a*q^(2k-1)")
        return _lin(a * q2k * q) / den / q

    def big(self, k) -> complex:
        a, q = self.a, self.q
        qk = cpow(q, k)
        den = _checked_inverse_factor(_lin(a * q), "1 - a*q")
        return _lin(a * q * qk * qk) / den / qk

    def number(self, z) -> complex:
        # b -> 0 limit of the a,b;q elliptic number:
        # (1 - q^z)(1 - a q^z) q^(1-z) / ((1 - q)(1 - a q))
        a, q = self.a, self.q
        qz = cpow(q, z)
        den = _checked_inverse_factor(_lin(q), "1 - q")
        den *= _checked_inverse_factor(_lin(a * q), "1 - a*q")
        return _lin(qz) * _lin(a * qz) * (q / qz) / den

    def shift(self, t) -> "AQFamily":
        qt = cpow(self.q, t)
        return AQFamily(self.a * qt * qt, self.q)

    def binom_shift(self, s) -> "AQFamily":
        return AQFamily(self.a * cpow(self.q, s), self.q)

    def binomial(self, n: int, k: int) -> complex:
        # b -> 0 limit of the quadruple ratio: the two b-factorials drop
        # out and (a q^{1-k}/b; q)_{n-k} / (a q / b; q)_{n-k} -> q^{-k(n-k)}
        if k < 0 or k > n:
            return complex(0.0)
        a, q = self.a, self.q
        qk = cpow(q, k)
        num = qp_factorial_multi((q * qk, a * q * qk), q, 0.0, n - k)
        den = _den_factorial_multi((q, a * q), q, 0.0, n - k)
        return num / den * qk ** (-(n - k))

    def params(self) -> dict:
        return {"a": self.a, "q": self.q}


@dataclass(frozen=True)
class QFamily(WeightFamily):
    """Plain q-weights: w = q and W(k) = q^k."""

    q: complex

    tag = "q"

    def __post_init__(self):
        object.__setattr__(self, "q", complex(self.q))
        if self.q == 0:
            raise DomainError("base q must be nonzero")

    def small(self, k) -> complex:
        return self.q

    def big(self, k) -> complex:
        return cpow(self.q, k)

    def number(self, z) -> complex:
        den = _checked_inverse_factor(_lin(self.q), "1 - q")
        return _lin(cpow(self.q, z)) / den

    def shift(self, t) -> "QFamily":
        return self

    def binom_shift(self, s) -> "QFamily":
        return self

    def binomial(self, n: int, k: int) -> complex:
        if k < 0 or k > n:
            return complex(0.0)
        q = self.q
        qk = cpow(q, k)
        num = qp_factorial_multi((q * qk,), q, 0.0, n - k)
        den = _den_factorial_multi((q,), q, 0.0, n - k)
        return num / den

    def params(self) -> dict:
        return {"q": self.q}


FAMILY_TAGS = ("elliptic", "abq", "aq", "q")


def small_weight(f: WeightFamily, k) -> complex:
    """The family's small weight w(k); k may be complex."""
    return f.small(k)


def big_weight(f: WeightFamily, k) -> complex:
    """The family's big weight W(k), with W(0) = 1."""
    return f.big(k)


def shift_params(f: WeightFamily, t) -> WeightFamily:
    """Shift parameters so that small/big at k+t become small/big at k."""
    return f.shift(t)


def ell_number(f: WeightFamily, z) -> complex:
    """The elliptic number [z]; reduces to (1 - q^z)/(1 - q) for QFamily."""
    return f.number(z)


def ell_number_split(f: WeightFamily, z, y) -> complex:
    """[y] + W(y) * [z - y] at parameters shifted by y; equals [z]."""
    return f.number(y) + f.big(y) * f.shift(y).number(z - y)


def ell_binomial(f: WeightFamily, n: int, k: int) -> complex:
    """Elliptic binomial coefficient; 0 outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("ell_binomial requires n >= 0")
    return f.binomial(n, k)


def ell_binomial_paths_oracle(f: WeightFamily, n: int, k: int) -> complex:
    """Brute-force lattice-path value of the elliptic binomial.

    Sums over all north/east paths from (0,0) to (k, n-k) the product of
    small weights over covered cells; the cell with north-east corner
    (s, t) carries the weight of argument t at binom_shift(s-1).  Kept
    independent of the closed formula and of the W = prod w identity.
    """
    if not 0 <= k <= n:
        raise ValueError("paths oracle needs 0 <= k <= n")
    if n > 12:
        raise ValueError("paths oracle is capped at n <= 12")
    column_families = [f.binom_shift(s) for s in range(k)]
    total = complex(0.0)
    # A path is the nondecreasing list of heights at which each east step
    # is taken; covered cells sit below those steps.
    for heights in combinations_with_replacement(range(n - k + 1), k):
        wt = complex(1.0)
        for s, h in enumerate(heights):
            fam = column_families[s]
            for t in range(1, h + 1):
                wt *= fam.small(t)
        total += wt
    return total


def q_falling_double(q, z, k: int) -> complex:
    """[z]_q [z-2]_q ... [z-2k+2]_q; the empty product for k = 0."""
    if k < 0:
        raise ValueError("q_falling_double requires k >= 0")
    q = complex(q)
    den = _checked_inverse_factor(_lin(q), "1 - q")
    val = complex(1.0)
    for j in range(k):
        val *= _lin(cpow(q, z - 2 * j)) / den
    return val
