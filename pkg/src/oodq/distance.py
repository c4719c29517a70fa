"""Set-based distance measures and the discrete EQ quality scales.

The measurement view: a property of an object is captured by an
*abstraction function* mapping the object to a finite set, together with a
*reference abstraction* describing what that set would look like if the
object exhibited the theoretical minimum of the property. The measure of
the property is then the shortest sequence of one-element additions and
removals turning the abstraction into the reference — which for finite
sets is exactly the size of their symmetric difference.

EQ scales map a raw metric value onto a discrete ladder in [0, 1]
(six rungs 0, .2, .4, .6, .8, 1 or three rungs 0, .5, 1): 0 at the low
anchor and below, 1 at the high anchor and above, linear in between and
rounded to the nearest rung with ties rounding up.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .errors import FormatError

Rational = int | float | Fraction


def as_fraction(value: Rational | str) -> Fraction:
    """Exact conversion; floats go through their shortest decimal repr,
    so the 0.05 read from a JSON config really means 1/20."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def delta(a: frozenset | set, b: frozenset | set) -> int:
    """Length of the shortest add/remove sequence from a to b: |a ^ b|."""
    return len(frozenset(a) ^ frozenset(b))


@dataclass(frozen=True)
class DistanceSpace:
    """All finite subsets of a universe, linked by single-element edits."""

    universe: frozenset

    def subsets(self):
        """Every abstraction in the space (2**|universe| of them)."""
        elements = sorted(self.universe, key=repr)
        for r in range(len(elements) + 1):
            for combo in combinations(elements, r):
                yield frozenset(combo)

    def elementary_moves(self, abstraction: frozenset):
        """Abstractions one add or one remove away."""
        for element in self.universe - abstraction:
            yield abstraction | {element}
        for element in abstraction:
            yield abstraction - {element}


@dataclass(frozen=True)
class MeasureDefinition:
    """A property measure: distance from abstraction to reference."""

    property_name: str
    abstraction: Callable[[object], frozenset]
    reference: Callable[[object], frozenset]


def measure(definition: MeasureDefinition, obj) -> int:
    return delta(definition.abstraction(obj), definition.reference(obj))


def count_measure(property_name: str, abstraction: Callable[[object], frozenset]) -> MeasureDefinition:
    """Measure with the empty reference: plain cardinality of the abstraction."""
    return MeasureDefinition(property_name, abstraction, lambda obj: frozenset())


# -- EQ scales -----------------------------------------------------------

@dataclass(frozen=True)
class EqScale:
    """Quantization anchors for one metric.

    low: raw value scoring exactly 0; high: raw value scoring exactly 1;
    levels: 6 or 3 rungs on the ladder.
    """

    metric: str
    low: Fraction
    high: Fraction
    levels: int = 6

    def __post_init__(self):
        object.__setattr__(self, "low", as_fraction(self.low))
        object.__setattr__(self, "high", as_fraction(self.high))
        if self.levels not in (3, 6):
            raise ValueError(f"{self.metric}: levels must be 3 or 6, got {self.levels}")
        if not self.low < self.high:
            raise ValueError(f"{self.metric}: low anchor must be below high anchor")

    @property
    def step(self) -> Fraction:
        return Fraction(1, self.levels - 1)


def quantize_eq(scale: EqScale, value: Rational) -> Fraction:
    """Quantize a raw metric value onto the scale's discrete ladder."""
    v = as_fraction(value)
    ratio = (v - scale.low) / (scale.high - scale.low)
    ratio = min(max(ratio, Fraction(0)), Fraction(1))
    rungs = scale.levels - 1
    nearest = (ratio * rungs + Fraction(1, 2)).__floor__()  # ties round up
    return Fraction(nearest, rungs)


#: Default anchor registry. Each entry reads "scores 0 at low and below,
#: 1 at high and above". The CAM anchors are NOT the published ones: the
#: published criterion for CAM is phrased as a class count, which cannot
#: apply to a ratio in [0, 1], so the ratio anchors used for DAR are used
#: here as well (see README, "Scale anchors").
DEFAULT_SCALES: dict[str, EqScale] = {
    scale.metric: scale
    for scale in (
        EqScale("NOC", Fraction(0), Fraction(8), 6),
        EqScale("NOH", Fraction(0), Fraction(5), 6),
        EqScale("NOA", Fraction(0), Fraction(6), 6),
        EqScale("MDIT", Fraction(1), Fraction(6), 6),
        EqScale("NAR", Fraction(0), Fraction(7), 6),
        EqScale("NAH", Fraction(0), Fraction(5), 6),
        EqScale("CAM", Fraction(1, 20), Fraction(4, 5), 6),
        EqScale("NOP", Fraction(0), Fraction(5), 6),
        EqScale("DAR", Fraction(1, 20), Fraction(4, 5), 6),
        EqScale("FA", Fraction(1, 20), Fraction(4, 5), 3),
        EqScale("DCC", Fraction(1), Fraction(5), 3),
        EqScale("NOM", Fraction(0), Fraction(6), 6),
        EqScale("CIS", Fraction(0), Fraction(6), 3),
        EqScale("EOD", Fraction(1, 20), Fraction(1), 6),
    )
}


def quantize_vector(values: dict[str, Rational], scales: dict[str, EqScale] | None = None) -> dict[str, Fraction]:
    """EQ value for every metric in `values`, in the same key order."""
    scales = scales or DEFAULT_SCALES
    return {metric: quantize_eq(scales[metric], value) for metric in values}


def load_scales(text: str) -> dict[str, EqScale]:
    """Read a thresholds file: {"METRIC": {"low": .., "high": .., "levels": ..}}.

    Metrics absent from the file keep their default scale; "levels" may be
    omitted to keep the default rung count.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("", f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("", "top level must be an object")

    scales = dict(DEFAULT_SCALES)
    for metric, raw in doc.items():
        if metric not in DEFAULT_SCALES:
            raise FormatError(f"/{metric}", "unknown metric id")
        if not isinstance(raw, dict):
            raise FormatError(f"/{metric}", "must be an object")
        for key in raw:
            if key not in ("low", "high", "levels"):
                raise FormatError(f"/{metric}/{key}", "unknown key")
        for key in ("low", "high"):
            if key not in raw:
                raise FormatError(f"/{metric}", f"missing key {key!r}")
            if not isinstance(raw[key], (int, float)):
                raise FormatError(f"/{metric}/{key}", "must be a number")
        levels = raw.get("levels", DEFAULT_SCALES[metric].levels)
        if levels not in (3, 6):
            raise FormatError(f"/{metric}/levels", "must be 3 or 6")
        try:
            scales[metric] = EqScale(metric, as_fraction(raw["low"]), as_fraction(raw["high"]), levels)
        except ValueError as exc:
            raise FormatError(f"/{metric}", str(exc)) from None
    return scales
