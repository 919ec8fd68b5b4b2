"""Judgment scales: the admissible preference intensities for one comparison.

A scale is a finite set of positive rationals closed under reciprocals and
containing 1 (indifference). Values are kept as exact ``Fraction``s so that
reciprocity checks never suffer decimal round-trip drift; conversion to
float happens only inside the numeric routines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, ParseError
from .tolerances import TOL


@dataclass(frozen=True)
class JudgmentScale:
    name: str
    values: tuple[Fraction, ...]          # ascending, reciprocal-closed, contains 1
    labels: tuple[str, ...] = field(default=())  # one label per value, may be empty

    def __post_init__(self):
        vals = tuple(sorted(Fraction(v) for v in self.values))
        if len(set(vals)) != len(vals):
            raise DomainError("scale values must be distinct")
        if any(v <= 0 for v in vals):
            raise DomainError("scale values must be positive")
        if Fraction(1) not in vals:
            raise DomainError("scale must contain 1 (indifference)")
        for v in vals:
            if 1 / v not in set(vals):
                raise DomainError(f"scale is not reciprocal-closed: 1/{v} missing")
        if self.labels and len(self.labels) != len(vals):
            raise DomainError("need exactly one label per scale value")
        object.__setattr__(self, "values", vals)

    def __contains__(self, value) -> bool:
        try:
            return Fraction(value) in set(self.values)
        except (TypeError, ValueError):
            return False

    def label_for(self, value) -> str:
        if not self.labels:
            return str(Fraction(value))
        return self.labels[self.values.index(Fraction(value))]

    def float_values(self) -> np.ndarray:
        """Scale values as float64, in ascending order."""
        return np.array([float(v) for v in self.values], dtype=np.float64)

    def parse(self, text, *, row=None, column=None) -> Fraction:
        """Parse a judgment cell ("1/3", "0.333", "2", ...) to an exact value.

        Decimal renderings are snapped to the nearest admissible value when
        within ``TOL.scale_snap_rel`` relative distance; anything else is
        rejected rather than coerced.
        """
        raw = str(text).strip()
        if not raw:
            raise ParseError("empty judgment value", row=row, column=column)
        try:
            exact = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"unreadable judgment value {raw!r}", row=row, column=column)
        if exact in set(self.values):
            return exact
        nearest = min(self.values, key=lambda v: abs(v - exact))
        if abs(exact - nearest) <= TOL.scale_snap_rel * nearest:
            return nearest
        admissible = ", ".join(str(v) for v in self.values)
        raise ParseError(
            f"value {raw!r} is not on the scale ({admissible})", row=row, column=column
        )


def study_scale() -> JudgmentScale:
    """The five-point scale used by the survey study."""
    return JudgmentScale(
        name="study",
        values=(Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)),
        labels=(
            "Strongly less important",
            "Moderately less important",
            "Similarly as important as",
            "Moderately more important than",
            "Strongly more important than",
        ),
    )


def saaty_scale() -> JudgmentScale:
    """The classic 17-value 1-9 scale with reciprocals."""
    values = [Fraction(1, k) for k in range(9, 1, -1)] + [Fraction(k) for k in range(1, 10)]
    labels = tuple(
        f"1/{v.denominator}" if v < 1 else str(v.numerator) for v in sorted(values)
    )
    return JudgmentScale(name="saaty", values=tuple(values), labels=labels)


STUDY_SCALE = study_scale()
SAATY_SCALE = saaty_scale()

_BY_NAME = {"study": STUDY_SCALE, "saaty": SAATY_SCALE}


def scale_by_name(name: str) -> JudgmentScale:
    try:
        return _BY_NAME[name.lower()]
    except KeyError:
        raise DomainError(f"unknown scale {name!r} (choose from {sorted(_BY_NAME)})")
