"""Modified Jacobi theta functions and theta-shifted factorials.

The two kernel objects, both over plain Python complex scalars:

    theta(x, p)              prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x)
    qp_factorial(a, q, p, n) the theta-shifted factorial (a; q, p)_n,
                             defined for every integer n

At p = 0 one has theta(x, 0) = 1 - x exactly, and qp_factorial reduces
to the usual q-shifted factorial (a; q)_n.

Truncation policy: the infinite product is cut at the smallest J with
|p|^J * (1 + |x| + 1/|x|) < 1e-16, capped at 200 factors.  The dropped
tail is geometrically small, so the cap only matters for |p| close to
the construction limit 0.95.

Branch policy: q^z for non-integer z is exp(z * Log q) with the
principal logarithm, here and everywhere downstream.  Integer exponents
take the exact repeated-multiplication path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

TRUNCATION_TARGET = 1e-16
MAX_FACTORS = 200
NOME_CAP = 0.95

# Dividing by anything smaller than this is treated as a hit on an
# actual zero of the denominator; callers resample instead of wading
# through a pole.
POLE_THRESHOLD = 1e-8


class DomainError(ValueError):
    """Argument outside the domain of a theta-level function."""


class PoleError(ArithmeticError):
    """A denominator factor vanished.

    ``index`` identifies the offending factor (position in the product
    that was being formed) and ``factor`` its near-zero value.
    """

    def __init__(self, message, index=None, factor=None):
        super().__init__(message)
        self.index = index
        self.factor = factor


@dataclass(frozen=True)
class Nome:
    """The nome p, restricted to |p| <= 0.95 for convergence margin."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if abs(self.value) > NOME_CAP:
            raise DomainError(
                f"nome must satisfy |p| <= {NOME_CAP}, got |p| = {abs(self.value):g}"
            )


@dataclass(frozen=True)
class Base:
    """The base q, any nonzero complex number."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if self.value == 0:
            raise DomainError("base q must be nonzero")


def _nome_value(p) -> complex:
    if isinstance(p, Nome):
        return p.value
    p = complex(p)
    if abs(p) >= 1:
        raise DomainError(f"|p| < 1 required, got |p| = {abs(p):g}")
    return p


def _base_value(q) -> complex:
    if isinstance(q, Base):
        return q.value
    q = complex(q)
    if q == 0:
        raise DomainError("base q must be nonzero")
    return q


def cpow(q, z) -> complex:
    """q**z on the principal branch, with an exact path for integer z."""
    q = complex(q)
    if isinstance(z, int):
        return q ** z
    z = complex(z)
    if z.imag == 0.0 and z.real.is_integer():
        return q ** int(z.real)
    return cmath.exp(z * cmath.log(q))


def _truncation_order(ax: float, ap: float) -> int:
    if ap == 0.0:
        return 1
    scale = 1.0 + ax + 1.0 / ax
    # smallest J with ap**J * scale < TRUNCATION_TARGET
    j = math.ceil(math.log(TRUNCATION_TARGET / scale) / math.log(ap))
    return max(1, min(MAX_FACTORS, j))


def theta(x, p) -> complex:
    """Modified Jacobi theta function theta(x; p).

    theta(1; p) = 0 exactly (the j = 0 factor vanishes), and
    theta(x; 0) = 1 - x.  x = 0 is an essential singularity.
    """
    x = complex(x)
    p = _nome_value(p)
    if x == 0:
        raise DomainError("theta: x = 0 is an essential singularity")
    val = complex(1.0)
    pj = complex(1.0)  # p^j
    for _ in range(_truncation_order(abs(x), abs(p))):
        val *= (1 - pj * x) * (1 - pj * p / x)
        pj *= p
    return val


def theta_multi(xs, p) -> complex:
    """Product of theta(x; p) over a sequence of arguments; empty -> 1."""
    val = complex(1.0)
    for x in xs:
        val *= theta(x, p)
    return val


def qp_factorial(a, q, p, n: int) -> complex:
    """Theta-shifted factorial (a; q, p)_n for any integer n.

    n > 0 gives prod_{k=0}^{n-1} theta(a q^k; p); n = 0 gives 1; n < 0
    gives 1 / prod_{k=0}^{-n-1} theta(a q^{n+k}; p).  The reciprocal
    case raises PoleError when one of its theta factors vanishes.
    """
    a = complex(a)
    q = _base_value(q)
    if n == 0:
        return complex(1.0)
    if n > 0:
        val = complex(1.0)
        arg = a
        for _ in range(n):
            val *= theta(arg, p)
            arg *= q
        return val
    den = complex(1.0)
    arg = a * q ** n
    for k in range(-n):
        factor = theta(arg, p)
        if abs(factor) < POLE_THRESHOLD:
            raise PoleError(
                f"(a; q, p)_{n}: theta factor {k} vanishes (argument a*q^{n + k})",
                index=k,
                factor=factor,
            )
        den *= factor
        arg *= q
    return 1 / den


def qp_factorial_multi(args, q, p, n: int) -> complex:
    """Product of qp_factorial over several first arguments."""
    val = complex(1.0)
    for a in args:
        val *= qp_factorial(a, q, p, n)
    return val
