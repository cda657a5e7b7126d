"""Trial records and verification reports.

A TrialResult is one two-side evaluation of an identity; a
VerificationReport collects the trials of a campaign together with the
sampling seed and tolerance.  Reports serialize to a fixed-layout JSON
document so that identical (seed, configuration) pairs reproduce
byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def relative_error(lhs: complex, rhs: complex) -> float:
    """|lhs - rhs| normalized by the larger magnitude (floored)."""
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


# Per-term roundoff assumed when predicting the error floor of a big
# summation; doubles give ~1e-16, one order of margin is kept.
ROUNDOFF_UNIT = 1e-15


class IllConditionedTrial(Exception):
    """The sampled parameters make the two-side check numerically vacuous.

    Raised when the identity value is so small against the mass of the
    summed terms that roundoff alone would exceed the tolerance being
    certified.  Callers resample, exactly as for poles.
    """

    def __init__(self, message, floor=None, scale=None):
        super().__init__(message)
        self.floor = floor
        self.scale = scale


def check_conditioning(lhs, rhs, mass: float, tol) -> None:
    """Raise IllConditionedTrial when roundoff could eat the tolerance.

    ``mass`` is the total absolute mass of the summed terms on the two
    sides; the predicted floor must stay two decades under ``tol``
    relative to the identity value.  ``tol`` None disables the guard.
    """
    if tol is None:
        return
    scale = max(abs(lhs), abs(rhs), 1e-300)
    floor = ROUNDOFF_UNIT * (mass + scale)
    if floor > 0.05 * tol * scale:
        raise IllConditionedTrial(
            f"roundoff floor {floor:.3e} too close to tol*value {tol * scale:.3e}",
            floor=floor,
            scale=scale,
        )


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class TrialResult:
    """One two-side evaluation: sampled parameters, both sides, error."""

    params: dict
    lhs: complex = 0.0
    rhs: complex = 0.0
    relerr: float = 0.0
    pole_budget_exhausted: bool = False

    def to_json(self) -> dict:
        doc = {"params": {name: _pair(value) for name, value in self.params.items()}}
        if self.pole_budget_exhausted:
            doc["pole_budget_exhausted"] = True
            return doc
        doc["lhs"] = _pair(self.lhs)
        doc["rhs"] = _pair(self.rhs)
        doc["relerr"] = self.relerr
        return doc


@dataclass
class VerificationReport:
    """Campaign outcome: pass iff every trial resolved and met tolerance."""

    theorem: str
    board: str
    family: str
    seed: int
    tol: float
    trials: list = field(default_factory=list)

    @property
    def n_trials(self) -> int:
        return len(self.trials)

    @property
    def max_relerr(self) -> float:
        errs = [t.relerr for t in self.trials if not t.pole_budget_exhausted]
        return max(errs, default=0.0)

    @property
    def passed(self) -> bool:
        if any(t.pole_budget_exhausted for t in self.trials):
            return False
        return self.max_relerr < self.tol

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "board": self.board,
            "family": self.family,
            "seed": self.seed,
            "tol": self.tol,
            "trials": [t.to_json() for t in self.trials],
            "max_relerr": self.max_relerr,
            "pass": self.passed,
        }
