"""Matchings on l-lazy graphs as rook placements on l-shifted boards.

A rook at original cell (i, j), i < j, is the edge {i, j}; a placement
is nonattacking exactly when all endpoint labels are pairwise distinct,
i.e. a partial matching.  The rook cancels the cells (i, s) for
i < s < j and every cell above it in columns i and j; u(P) counts board
cells neither occupied nor cancelled, and the q-statistic is
m_k(q; B) = sum over k-rook placements of q^u.

The elliptic statistic weights every free cell in the right-to-left /
bottom-up relabeling (i, j)^w by

    small( i + j - 1 - l_i - 2 r(c) - s(c) )

where l_i is the row increment of w-row i counted from the bottom, r(c)
counts rooks south-east of the cell whose two cancelled columns both
lie strictly right of the cell's column, and s(c) those with only the
rook's own column to the right.  The prose behind r and s admits a few
readings; ``Interpretation`` pins them, and the boundary-pinning suite
shows exactly one reading survives the product-formula test.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .boards import LShiftedBoard, LVector, full_lshifted, full_unit_board
from .report import TrialResult, check_conditioning, relative_error
from .weights import QFamily, WeightFamily, q_falling_double

MAX_VERTICES = 12


@dataclass(frozen=True)
class Interpretation:
    """Resolves the directional ambiguities of the r/s statistics.

    rook_east    south-east region takes rooks in strictly smaller
                 w-columns (physically east); False flips to larger
                 (the reading of "east" in raw w-indices).
    right_small  "right of column j" means smaller w-index (physically
                 right); False flips the orientation.
    l_bottom_up  l_i in the weight argument indexes w-rows from the
                 bottom; False indexes from the top.
    se_row_weak / se_col_weak
                 allow ties in the south-east comparisons.  Provably
                 immaterial (tied configurations are always cancelled),
                 kept so the suite can demonstrate exactly that.
    """

    rook_east: bool = True
    right_small: bool = True
    l_bottom_up: bool = True
    se_row_weak: bool = False
    se_col_weak: bool = False


DEFAULT_INTERPRETATION = Interpretation()

# The four genuinely distinct prose readings swept by the pinning suite.
PINNING_GRID = tuple(
    Interpretation(rook_east=east, right_small=small)
    for east in (True, False)
    for small in (True, False)
)


@dataclass(frozen=True)
class MatchingPlacement:
    """Nonattacking rooks on an l-shifted board, original (row, column)
    labels with row < column."""

    board: LShiftedBoard
    rooks: tuple

    def __post_init__(self):
        rooks = tuple(sorted((int(i), int(j)) for i, j in self.rooks))
        object.__setattr__(self, "rooks", rooks)
        labels = [v for rook in rooks for v in rook]
        if len(set(labels)) != len(labels):
            raise ValueError(f"rooks share an endpoint label: {rooks}")
        for rook in rooks:
            if rook not in self.board:
                raise ValueError(f"rook {rook} is off the board")

    def __len__(self):
        return len(self.rooks)


@dataclass(frozen=True)
class CancellationMask:
    """Partition of the board cells under a placement."""

    occupied: frozenset
    cancelled: frozenset
    free: frozenset

    @property
    def u(self) -> int:
        return len(self.free)


def _cancelled_cells(board: LShiftedBoard, rooks) -> set:
    cells = set(board.cells())
    out = set()
    for i, j in rooks:
        for s in range(i + 1, j):
            if (i, s) in cells:
                out.add((i, s))
        for t, _ in zip(board.row_labels, board.rowlens):
            if t < i:
                if (t, j) in cells:
                    out.add((t, j))
                if (t, i) in cells:
                    out.add((t, i))
    out -= set(rooks)
    return out


def cancellation_mask(board: LShiftedBoard, placement: MatchingPlacement) -> CancellationMask:
    """Occupied / cancelled / free partition induced by the placement."""
    rooks = set(placement.rooks)
    cancelled = _cancelled_cells(board, rooks)
    free = set(board.cells()) - rooks - cancelled
    return CancellationMask(frozenset(rooks), frozenset(cancelled), frozenset(free))


def _rook_tuples(board: LShiftedBoard, k: int):
    """All k-subsets of board cells with pairwise distinct labels."""
    if board.width + 1 > MAX_VERTICES:
        raise ValueError(f"enumeration capped at {MAX_VERTICES} vertices")
    if k < 0:
        return
    rows = [
        (label, length)
        for label, length in zip(board.row_labels, board.rowlens)
        if length > 0
    ]

    def walk(row_idx, chosen, used):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        if row_idx == len(rows) or len(rows) - row_idx < k - len(chosen):
            return
        label, length = rows[row_idx]
        if label not in used:
            for j in range(label + 1, label + length + 1):
                if j in used:
                    continue
                chosen.append((label, j))
                used.add(label)
                used.add(j)
                yield from walk(row_idx + 1, chosen, used)
                used.discard(label)
                used.discard(j)
                chosen.pop()
        yield from walk(row_idx + 1, chosen, used)

    yield from walk(0, [], set())


def enumerate_matchings(board: LShiftedBoard, k: int):
    """All k-rook matching placements on the board."""
    for rooks in _rook_tuples(board, k):
        yield MatchingPlacement(board, rooks)


def attacks(rook_a, rook_b) -> bool:
    """Attack rule: same row, same column, or a column equal to the
    other rook's row label."""
    i1, j1 = rook_a
    i2, j2 = rook_b
    return i1 == i2 or j1 == j2 or j1 == i2 or j2 == i1


def m_k_q(q, board: LShiftedBoard, k: int) -> complex:
    """q-matching number: sum of q^u over k-rook placements."""
    q = complex(q)
    total = complex(0.0)
    cells = set(board.cells())
    for rooks in _rook_tuples(board, k):
        u = len(cells) - len(rooks) - len(_cancelled_cells(board, rooks))
        total += q ** u
    return total


def verify_hr_l(q, board: LShiftedBoard, z, guard_tol=None) -> TrialResult:
    """Product formula for the q-statistic on an l-shifted Ferrers board."""
    q = complex(q)
    n = board.n_rows
    rowlens = board.rowlens
    lhs = complex(1.0)
    for i in range(1, n + 1):
        lhs *= q_falling_double(q, z + rowlens[n - i] - 2 * i + 2, 1)
    rhs = complex(0.0)
    mass = 0.0
    for k in range(n + 1):
        term = m_k_q(q, board, k) * q_falling_double(q, z, n - k)
        rhs += term
        mass += abs(term)
    check_conditioning(lhs, rhs, mass, guard_tol)
    return TrialResult(
        params={"q": q, "z": z},
        lhs=lhs,
        rhs=rhs,
        relerr=relative_error(lhs, rhs),
    )


def _weight_geometry(board: LShiftedBoard, interp: Interpretation):
    """Precomputed w-coordinates for cells and row increments."""
    n = board.n_rows
    width = board.width
    ells = board.lvec.entries
    # l for w-row i (1 = bottom); the top-down variant is the flipped read
    if interp.l_bottom_up:
        row_ell = {i: ells[i - 1] for i in range(1, n + 1)}
    else:
        row_ell = {i: ells[n - i] for i in range(1, n + 1)}
    label_to_wrow = {
        label: n - idx for idx, label in enumerate(board.row_labels)
    }
    return width, row_ell, label_to_wrow


def wt_m(
    f: WeightFamily,
    board: LShiftedBoard,
    placement: MatchingPlacement,
    interp: Interpretation = DEFAULT_INTERPRETATION,
    _small_memo=None,
) -> complex:
    """Elliptic weight of one matching placement."""
    width, row_ell, label_to_wrow = _weight_geometry(board, interp)
    rooks = placement.rooks
    free = sorted(
        set(board.cells()) - set(rooks) - _cancelled_cells(board, set(rooks))
    )
    # rook geometry: w-row, own-column w-index, other cancelled column's
    # w-index (the column carrying the rook's row label)
    rook_geo = [
        (label_to_wrow[i], width + 2 - j, width + 2 - i) for i, j in rooks
    ]
    memo = _small_memo if _small_memo is not None else {}
    wt = complex(1.0)
    for cell_i, cell_j in free:
        iw = label_to_wrow[cell_i]
        jw = width + 2 - cell_j
        r_count = 0
        s_count = 0
        for rw, rown, rother in rook_geo:
            south = rw <= iw if interp.se_row_weak else rw < iw
            if not south:
                continue
            if interp.rook_east:
                east = rown <= jw if interp.se_col_weak else rown < jw
            else:
                east = rown >= jw if interp.se_col_weak else rown > jw
            if not east:
                continue
            if interp.right_small:
                own_right, other_right = rown < jw, rother < jw
            else:
                own_right, other_right = rown > jw, rother > jw
            if own_right and other_right:
                r_count += 1
            elif own_right:
                s_count += 1
        arg = iw + jw - 1 - row_ell[iw] - 2 * r_count - s_count
        val = memo.get(arg)
        if val is None:
            val = f.small(arg)
            memo[arg] = val
        wt *= val
    return wt


def matching_weight_sums(
    f: WeightFamily,
    board: LShiftedBoard,
    interp: Interpretation = DEFAULT_INTERPRETATION,
):
    """(values, masses) of the elliptic matching statistic, indexed by k.

    One enumeration pass; masses accumulate |wt| per k as the
    cancellation scale for conditioning checks.
    """
    n = board.n_rows
    values = [complex(0.0)] * (n + 1)
    masses = [0.0] * (n + 1)
    memo = {}
    for k in range(n + 1):
        for rooks in _rook_tuples(board, k):
            wt = wt_m(f, board, MatchingPlacement(board, rooks), interp, memo)
            values[k] += wt
            masses[k] += abs(wt)
    return values, masses


def m_k_elliptic(
    f: WeightFamily,
    board: LShiftedBoard,
    k: int,
    interp: Interpretation = DEFAULT_INTERPRETATION,
) -> complex:
    """Elliptic matching number: sum of wt_m over k-rook placements."""
    if k < 0 or k > board.n_rows:
        return complex(0.0)
    memo = {}
    total = complex(0.0)
    for rooks in _rook_tuples(board, k):
        total += wt_m(f, board, MatchingPlacement(board, rooks), interp, memo)
    return total


def verify_matching_theorem(
    f: WeightFamily,
    board: LShiftedBoard,
    z,
    interp: Interpretation = DEFAULT_INTERPRETATION,
    guard_tol=None,
) -> TrialResult:
    """Elliptic product formula for l-shifted Ferrers boards."""
    n = board.n_rows
    rowlens = board.rowlens
    prefix = [board.lvec.prefix(j) for j in range(n + 1)]
    lhs = complex(1.0)
    for i in range(1, n + 1):
        a_rev = rowlens[n - i]
        shift = prefix[i - 1] + i - 1 - a_rev
        lhs *= f.shift(shift).number(z + a_rev - 2 * i + 2)
    values, masses = matching_weight_sums(f, board, interp)
    rhs = complex(0.0)
    mass = 0.0
    for k in range(n + 1):
        term = values[k]
        term_mass = masses[k]
        for j in range(1, n - k + 1):
            factor = f.shift(prefix[j - 1] + j - 1).number(z - 2 * j + 2)
            term *= factor
            term_mass *= abs(factor)
        rhs += term
        mass += term_mass
    check_conditioning(lhs, rhs, mass, guard_tol)
    return TrialResult(
        params={"z": z, **f.params()},
        lhs=lhs,
        rhs=rhs,
        relerr=relative_error(lhs, rhs),
    )


def max_matching_closed(
    f: WeightFamily, board: LShiftedBoard
) -> complex:
    """z = 0 corollary: the k = N term in closed form."""
    n = board.n_rows
    rowlens = board.rowlens
    val = complex(1.0)
    for i in range(1, n + 1):
        a_rev = rowlens[n - i]
        shift = board.lvec.prefix(i - 1) + i - 1 - a_rev
        val *= f.shift(shift).number(a_rev - 2 * i + 2)
    return val


def perfect_matching_closed(f: WeightFamily, n: int, odd: bool = False) -> complex:
    """Closed product for the n-matching weight of the full board.

    Even case: the board on 2n vertices (perfect matchings), product of
    [2n-1], [2n-3], ..., [1].  Odd case: 2n+1 vertices (maximal
    matchings), product of [2n+1], [2n-1], ..., [3].  Both walk the
    shifts 2i-3 for i = 1..n.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    val = complex(1.0)
    for i in range(1, n + 1):
        arg = (2 * n - 2 * i + 3) if odd else (2 * n - 2 * i + 1)
        val *= f.shift(2 * i - 3).number(arg)
    return val


def m_k_recursive(f: WeightFamily, lvec, k: int) -> complex:
    """Matching weight on the full board by the top-row recursion."""
    if not isinstance(lvec, LVector):
        lvec = LVector(tuple(lvec))
    memo = {}

    def rec(n: int, kk: int):
        if kk < 0 or kk > n:
            return complex(0.0)
        if n == 0:
            return complex(1.0) if kk == 0 else complex(0.0)
        key = (n, kk)
        val = memo.get(key)
        if val is not None:
            return val
        ells = lvec.entries[:n]
        total = sum(ells)
        fam = f.shift(n - 1 - ells[-1])
        val = fam.number(total - 2 * kk + 2) * rec(n - 1, kk - 1) + fam.big(
            total - 2 * kk
        ) * rec(n - 1, kk)
        memo[key] = val
        return val

    return rec(lvec.n_rows, k)


def mk_aq_closed(a, q, n: int, k: int) -> complex:
    """Closed form of the a;q matching numbers of the full board on 2n
    vertices."""
    from .alpha import q_binomial
    from .theta import cpow, qp_factorial
    from .weights import _den_factorial_multi, _lin
    import math

    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    a, q = complex(a), complex(q)
    val = cpow(q, k * k - math.comb(2 * n, 2)) * q_binomial(2 * n, 2 * k, q)
    for j in range(1, k + 1):
        val *= _lin(cpow(q, 2 * j - 1)) / _lin(q)
    val *= qp_factorial(a * cpow(q, 4 * n - 2 * k - 3), q * q, 0.0, 2 * n - k - 1)
    val /= _den_factorial_multi((a / q,), cpow(q, 4), 0.0, 2 * n - k - 1)
    return val


def mk_q_closed(q, n: int, k: int) -> complex:
    """Plain q-analogue of the k-matching numbers of the complete graph
    on 2n vertices (the |a| -> infinity limit of mk_aq_closed)."""
    from .alpha import q_binomial
    from .theta import cpow
    from .weights import _lin
    import math

    q = complex(q)
    val = cpow(q, math.comb(2 * n - 2 * k, 2)) * q_binomial(2 * n, 2 * k, q)
    for j in range(1, k + 1):
        val *= _lin(cpow(q, 2 * j - 1)) / _lin(q)
    return val


def count_matchings(board: LShiftedBoard, k: int) -> int:
    """Number of k-rook matching placements (exact integer)."""
    return sum(1 for _ in _rook_tuples(board, k))


__all__ = [
    "Interpretation",
    "DEFAULT_INTERPRETATION",
    "PINNING_GRID",
    "MatchingPlacement",
    "CancellationMask",
    "enumerate_matchings",
    "cancellation_mask",
    "attacks",
    "m_k_q",
    "verify_hr_l",
    "wt_m",
    "matching_weight_sums",
    "m_k_elliptic",
    "verify_matching_theorem",
    "max_matching_closed",
    "perfect_matching_closed",
    "m_k_recursive",
    "mk_aq_closed",
    "mk_q_closed",
    "count_matchings",
    "full_lshifted",
    "full_unit_board",
]
