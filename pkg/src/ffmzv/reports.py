"""Small report records returned by the verification operations.

Exponents are reported on the |theta|-scale (|f| = |theta|^e, so e = -v_z/(q-1));
z-precision floors are reported directly in z-digits.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return list(v)
    return v


@dataclass
class ResidualReport:
    passed: bool
    worst_exponent: Fraction | None  # Gauss-norm exponent of the residual, None if clean
    floor_z: int  # z-digit precision at which zero was verified
    location: tuple | None = None  # (row, col, t-degree) / (t-degree,) of the worst entry
    note: str = ""

    def to_json(self) -> dict[str, Any]:
        return {k: _jsonable(v) for k, v in asdict(self).items()}


@dataclass
class IdentityReport:
    status: str  # "equal" | "unequal" | "incomparable"
    precision: int | None  # joint z-precision of the comparison
    exponent: int | None = None  # first differing z-exponent when unequal
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "equal"

    def to_json(self) -> dict[str, Any]:
        return {k: _jsonable(v) for k, v in asdict(self).items()}


@dataclass
class CheckReport:
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures],
            "note": self.note,
        }
