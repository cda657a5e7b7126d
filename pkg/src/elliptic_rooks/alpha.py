"""The alpha-parameter rook model: file placements and their weights.

Cells on skyline/Ferrers boards are (column, row) pairs.  A file
placement puts at most one rook per column; rows may repeat.  The
classical model weights each row carrying u >= 2 rooks by
alpha(2 alpha - 1)...((u-1) alpha - (u-2)); the elliptic model instead
weights every cell of the board:

    1                                    rook strictly above in the column
    number((alpha-1) v(c) + 1) @ shift t the rook cell itself
    big((alpha-1) v(c) + 1)    @ shift t otherwise

with t = -row + (alpha-1)(1 - column + nw(c)), v(c) the number of rooks
strictly left in the same row, and nw(c) the number of rooks strictly
left and strictly above.  The rook-number r_k is the sum of placement
weights over all k-rook file placements.

Three evaluation routes are kept separate on purpose:

* ``r_alpha``            exact placement sum, grouped column by column
                         over row-occupancy states (fast, still the
                         plain sum over placements);
* ``r_alpha_brute``      the literal placement-by-placement sum through
                         ``cell_weight_alpha`` (the small-board oracle);
* ``r_alpha_recursive``  the two-term last-column recursion.

alpha is allowed to be any complex number; 0, 1, 2 are the classical,
file-number, and matching-flavoured test points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from .boards import FerrersBoard, SkylineBoard, abel_board, staircase, truncated_staircase
from .report import TrialResult, check_conditioning, relative_error
from .theta import PoleError, cpow, qp_factorial
from .weights import AQFamily, QFamily, WeightFamily, _den_factorial_multi, _lin

MAX_ENUM_COLUMNS = 8


@dataclass(frozen=True)
class FilePlacement:
    """Rooks of a file placement: (column, row) cells, one per column."""

    board: SkylineBoard
    cells: tuple

    def __post_init__(self):
        cells = tuple(sorted((int(i), int(j)) for i, j in self.cells))
        object.__setattr__(self, "cells", cells)
        columns = [i for i, _ in cells]
        if len(set(columns)) != len(columns):
            raise ValueError(f"file placement repeats a column: {cells}")
        for cell in cells:
            if cell not in self.board:
                raise ValueError(f"rook {cell} is off the board")

    def __len__(self):
        return len(self.cells)


def enumerate_file_placements(board: SkylineBoard, k: int):
    """All k-rook file placements, as FilePlacement objects."""
    n = board.n_columns
    if n > MAX_ENUM_COLUMNS:
        raise ValueError(f"enumeration capped at {MAX_ENUM_COLUMNS} columns")
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= number of columns")
    columns = [i for i in range(1, n + 1) if board.heights[i - 1] > 0]
    for chosen in combinations(columns, k):
        for rows in product(*(range(1, board.heights[i - 1] + 1) for i in chosen)):
            yield FilePlacement(board, tuple(zip(chosen, rows)))


def classical_row_weight(u: int, alpha):
    """Weight of a row holding u rooks: 1 for u <= 1, else the falling
    alpha-product alpha(2 alpha - 1)...((u-1) alpha - (u-2))."""
    if u < 0:
        raise ValueError("rook count must be nonnegative")
    if u <= 1:
        return 1
    wt = 1
    for t in range(2, u + 1):
        wt = wt * ((t - 1) * alpha - (t - 2))
    return wt


def classical_r_alpha(board: SkylineBoard, k: int, alpha):
    """Sum of classical row-weight products over all k-rook file placements.

    Exact (integer) for integer alpha.
    """
    total = 0
    for placement in enumerate_file_placements(board, k):
        counts = {}
        for _, j in placement.cells:
            counts[j] = counts.get(j, 0) + 1
        wt = 1
        for u in counts.values():
            wt = wt * classical_row_weight(u, alpha)
        total += wt
    return total


def cell_weight_alpha(f: WeightFamily, board, placement: FilePlacement, cell, alpha):
    """Weight of one board cell under a file placement."""
    i, j = cell
    if cell not in board:
        raise ValueError(f"cell {cell} is not on the board")
    rooks = placement.cells
    if any(ci == i and cj > j for ci, cj in rooks):
        return complex(1.0)
    v = sum(1 for ci, cj in rooks if cj == j and ci < i)
    nw = sum(1 for ci, cj in rooks if ci < i and cj > j)
    t = -j + (alpha - 1) * (1 - i + nw)
    shifted = f.shift(t)
    if cell in rooks:
        return shifted.number((alpha - 1) * v + 1)
    return shifted.big((alpha - 1) * v + 1)


def r_alpha_brute(f: WeightFamily, board: FerrersBoard, k: int, alpha):
    """Literal sum over placements of the product of cell weights."""
    cells = board.cells()
    total = complex(0.0)
    for placement in enumerate_file_placements(board, k):
        wt = complex(1.0)
        for cell in cells:
            wt *= cell_weight_alpha(f, board, placement, cell, alpha)
        total += wt
    return total


class _WeightMemo:
    """Caches shifted big/number evaluations keyed by (shift, argument)."""

    def __init__(self, f: WeightFamily, alpha):
        self.f = f
        self.alpha = alpha
        self._shifted = {}
        self._big = {}
        self._number = {}

    def _family(self, t):
        fam = self._shifted.get(t)
        if fam is None:
            fam = self.f.shift(t)
            self._shifted[t] = fam
        return fam

    def big(self, t, arg):
        key = (t, arg)
        val = self._big.get(key)
        if val is None:
            val = self._family(t).big(arg)
            self._big[key] = val
        return val

    def number(self, t, arg):
        key = (t, arg)
        val = self._number.get(key)
        if val is None:
            val = self._family(t).number(arg)
            self._number[key] = val
        return val


def _r_alpha_all(f: WeightFamily, board: FerrersBoard, alpha, memo=None):
    """All r_k at once: (values, masses), lists indexed by k.

    Same sum over file placements as ``r_alpha_brute``, organized column
    by column: placements are grouped by their row-occupancy vector,
    which is the only part of the past the remaining cell weights can
    see (v(c) counts rooks to the left in the row, nw(c) rooks to the
    left and above).  Grouping only uses distributivity.  ``masses[k]``
    accumulates the absolute placement weights, the natural scale
    against which a small r_k signals cancellation.
    """
    heights = board.heights
    n = len(heights)
    memo = memo if memo is not None else _WeightMemo(f, alpha)
    height_max = max(heights, default=0)
    start = (0,) * height_max
    states = {start: (complex(1.0), 1.0)}
    for col, h in enumerate(heights, start=1):
        new_states = {}

        def add(key, value, mass):
            old = new_states.get(key)
            if old is None:
                new_states[key] = (value, mass)
            else:
                new_states[key] = (old[0] + value, old[1] + mass)

        for counts, (acc, acc_mass) in states.items():
            # suffix[j] = rooks in earlier columns strictly above row j
            suffix = [0] * (h + 2)
            running = sum(counts[h:])
            for j in range(h, 0, -1):
                suffix[j] = running
                running += counts[j - 1]
            # option: no rook in this column; cells j = 1..h all weighted
            top_products = [complex(1.0)] * (h + 2)
            for j in range(h, 0, -1):
                t = -j + (alpha - 1) * (1 - col + suffix[j])
                top_products[j] = top_products[j + 1] * memo.big(
                    t, (alpha - 1) * counts[j - 1] + 1
                )
            add(counts, acc * top_products[1], acc_mass * abs(top_products[1]))
            # option: rook at row j0; cells above are weighted, below are 1
            for j0 in range(1, h + 1):
                t = -j0 + (alpha - 1) * (1 - col + suffix[j0])
                factor = top_products[j0 + 1] * memo.number(
                    t, (alpha - 1) * counts[j0 - 1] + 1
                )
                key = counts[: j0 - 1] + (counts[j0 - 1] + 1,) + counts[j0:]
                add(key, acc * factor, acc_mass * abs(factor))
        states = new_states
    values = [complex(0.0)] * (n + 1)
    masses = [0.0] * (n + 1)
    for counts, (acc, acc_mass) in states.items():
        rooks = sum(counts)
        if rooks <= n:
            values[rooks] += acc
            masses[rooks] += acc_mass
    return values, masses


def r_alpha_all(f: WeightFamily, board: FerrersBoard, alpha):
    """List of r_k for k = 0..n (placement-weight sums)."""
    return _r_alpha_all(f, board, alpha)[0]


def r_alpha(f: WeightFamily, board: FerrersBoard, k: int, alpha):
    """Elliptic alpha-parameter rook number: the placement-weight sum."""
    if k < 0 or k > board.n_columns:
        return complex(0.0)
    return _r_alpha_all(f, board, alpha)[0][k]


def r_alpha_recursive(f: WeightFamily, board: FerrersBoard, k: int, alpha):
    """Rook number by the two-term recursion on the last column."""
    heights = board.heights
    memo = {}

    def rec(n_cols: int, kk: int):
        if kk < 0 or kk > n_cols:
            return complex(0.0)
        if n_cols == 0:
            return complex(1.0) if kk == 0 else complex(0.0)
        key = (n_cols, kk)
        val = memo.get(key)
        if val is not None:
            return val
        m = heights[n_cols - 1]
        l = n_cols - 1
        fam = f.shift(-(m + (alpha - 1) * l))
        val = fam.number(m + (alpha - 1) * (kk - 1)) * rec(l, kk - 1) + fam.big(
            m + (alpha - 1) * kk
        ) * rec(l, kk)
        memo[key] = val
        return val

    return rec(len(heights), k)


def verify_alpha_factorization(
    f: WeightFamily, board: FerrersBoard, alpha, z, guard_tol=None
) -> TrialResult:
    """Two-side check of the alpha-factorization product formula.

    With ``guard_tol`` set, raises IllConditionedTrial when the sampled
    point cannot be certified at that tolerance (the caller resamples).
    """
    heights = board.heights
    n = len(heights)
    lhs = complex(1.0)
    for j, b_j in enumerate(heights, start=1):
        offset = b_j + (j - 1) * (alpha - 1)
        lhs *= f.shift(-offset).number(z + offset)
    values, masses = _r_alpha_all(f, board, alpha)
    rhs = complex(0.0)
    mass = 0.0
    for k in range(n + 1):
        term = values[n - k]
        term_mass = masses[n - k]
        for i in range(1, k + 1):
            offset = (i - 1) * (alpha - 1)
            factor = f.shift(-offset).number(z + offset)
            term *= factor
            term_mass *= abs(factor)
        rhs += term
        mass += term_mass
    check_conditioning(lhs, rhs, mass, guard_tol)
    return TrialResult(
        params={"alpha": alpha, "z": z, **f.params()},
        lhs=lhs,
        rhs=rhs,
        relerr=relative_error(lhs, rhs),
    )


def stirling1_elliptic(f: WeightFamily, n: int, k: int, r: int = None):
    """Elliptic (r-restricted) Stirling numbers of the first kind.

    Computed by the two-term column recursion; equals the rook number
    r_{n-k} at alpha = 1 on the staircase (or its r-truncation).  The
    r-restricted table starts from the all-zero board of r columns,
    where only the empty placement exists.
    """
    if not 0 <= k <= n:
        return complex(0.0)
    if r is not None and not 1 <= r <= n:
        raise ValueError("restricted Stirling numbers need 1 <= r <= n")
    base = r if r is not None else 0
    # St_m for m <= base has no cells at all: r_{m-k} is 1 iff k = m.
    row = {base: complex(1.0)}
    for m in range(base, n):
        fam = f.shift(-m)
        coeff_keep = fam.number(m)
        coeff_new = fam.big(m)
        new_row = {}
        for kk in range(max(0, base - 0), m + 2):
            val = coeff_keep * row.get(kk, 0.0) + coeff_new * row.get(kk - 1, 0.0)
            if val != 0:
                new_row[kk] = val
        row = new_row
    return complex(row.get(k, 0.0))


def abel_r_closed(f: WeightFamily, n: int, k: int, acolors: int):
    """Closed form for the rook numbers of the Abel board at alpha = 1.

    Value of r_{n-k}; defined for 1 <= k <= n (0 for k = 0, matching the
    vanishing binomial).
    """
    if n < 1 or acolors < 1:
        raise ValueError("need n >= 1 and acolors >= 1")
    if k == 0:
        return complex(0.0)
    if not 1 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    height = acolors * n
    fam = f.shift(-height)
    return (
        math.comb(n - 1, k - 1)
        * fam.big(height) ** (k - 1)
        * fam.number(height) ** (n - k)
    )


def q_binomial(n: int, k: int, q) -> complex:
    """Gaussian binomial coefficient at generic complex q."""
    if k < 0 or k > n:
        return complex(0.0)
    q = complex(q)
    num = qp_factorial(q * cpow(q, k), q, 0.0, n - k)
    den = _den_factorial_multi((q,), q, 0.0, n - k)
    return num / den


def r2_aq_closed(a, q, n: int, k: int):
    """Closed form for the alpha = 2 rook numbers of the staircase in the
    a;q family."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    a, q = complex(a), complex(q)
    val = cpow(q, -math.comb(n + k, 2) + k * (k + 2)) * q_binomial(n + k - 1, 2 * k, q)
    for j in range(1, k + 1):
        val *= _lin(cpow(q, 2 * j - 1)) / _lin(q)
    val *= qp_factorial(a * q, cpow(q, -2), 0.0, n - k)
    val *= qp_factorial(a * cpow(q, 1 - 2 * n), q * q, 0.0, k)
    val /= _den_factorial_multi((a * q,), cpow(q, -4), 0.0, n)
    return val


def r2_q_closed(q, n: int, k: int):
    """The plain q-analogue limit of r2_aq_closed (|a| -> infinity)."""
    val = cpow(q, math.comb(n - k, 2)) * q_binomial(n + k - 1, 2 * k, q)
    for j in range(1, k + 1):
        val *= _lin(cpow(q, 2 * j - 1)) / _lin(q)
    return val


def verify_whipple(a, q, z, n: int, guard_tol=None) -> TrialResult:
    """Terminating very-well-poised 4-term sum against its product side.

    The two square roots of a enter symmetrically, so the principal
    branch is taken; the result is invariant under the sign choice.
    """
    if n < 0 or n > 20:
        raise ValueError("need 0 <= n <= 20")
    a, q, z = complex(a), complex(q), complex(z)
    q2 = q * q
    qz = cpow(q, z)
    lhs_num = qp_factorial(qz * q2, q2, 0.0, n) * qp_factorial(
        a * qz * cpow(q, -2 * n), q2, 0.0, n
    )
    lhs_den = _den_factorial_multi((qz * q,), q, 0.0, n) * _den_factorial_multi(
        (a * qz * cpow(q, -n),), q, 0.0, n
    )
    lhs = lhs_num / lhs_den
    root = cpow(a, 0.5) * cpow(q, -n - 0.5)
    num_bases = (cpow(q, -n), cpow(q, n + 1), root, -root)
    den_bases = (q, -q, cpow(q, -z - n), a * qz * cpow(q, -n))
    rhs = complex(0.0)
    mass = 0.0
    for k in range(n + 1):
        term = qp_factorial_from_bases(num_bases, q, k)
        term /= _checked_den_from_bases(den_bases, q, k)
        term *= cpow(q, k)
        rhs += term
        mass += abs(term)
    check_conditioning(lhs, rhs, mass, guard_tol)
    return TrialResult(
        params={"a": a, "q": q, "z": z},
        lhs=lhs,
        rhs=rhs,
        relerr=relative_error(lhs, rhs),
    )


def qp_factorial_from_bases(bases, q, k: int) -> complex:
    """prod over the bases of (base; q)_k, plain q-shifted factorials."""
    val = complex(1.0)
    for base in bases:
        arg = base
        for _ in range(k):
            val *= _lin(arg)
            arg *= q
    return val


def _checked_den_from_bases(bases, q, k: int) -> complex:
    val = complex(1.0)
    for base in bases:
        arg = base
        for idx in range(k):
            factor = _lin(arg)
            if abs(factor) < 1e-8:
                raise PoleError(
                    f"denominator factor (1 - {arg!r}) vanishes", index=idx, factor=factor
                )
            val *= factor
            arg *= q
    return val


def count_nonattacking(board: SkylineBoard, k: int) -> int:
    """Brute count of k nonattacking rook placements (distinct rows too)."""
    count = 0
    for placement in enumerate_file_placements(board, k):
        rows = [j for _, j in placement.cells]
        if len(set(rows)) == len(rows):
            count += 1
    return count


__all__ = [
    "FilePlacement",
    "enumerate_file_placements",
    "classical_row_weight",
    "classical_r_alpha",
    "cell_weight_alpha",
    "r_alpha",
    "r_alpha_all",
    "r_alpha_brute",
    "r_alpha_recursive",
    "verify_alpha_factorization",
    "stirling1_elliptic",
    "abel_r_closed",
    "q_binomial",
    "r2_aq_closed",
    "r2_q_closed",
    "verify_whipple",
    "count_nonattacking",
    "staircase",
    "truncated_staircase",
    "abel_board",
]
