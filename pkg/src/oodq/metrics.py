"""The fourteen design-level metrics, computed as pure functions of a model.

Values are exact: counts are ints, ratios and means are Fractions. The
design-level aggregation convention is uniform — class-scoped ratios and
counts (CAM, DAR, FA, DCC, NOM, CIS) average arithmetically over all
classes, depth-like metrics (NOA, MDIT) take the maximum over classes, and
the empty model scores 0 everywhere.

Two conventions worth calling out because they shape edge cases:

* a class with no attributes has DAR 1 (nothing to hide, so everything is
  hidden), while a class with no methods has CAM and FA 0 (cohesion and
  functional abstraction are simply not exhibited);
* a method counts as polymorphic once, at the topmost class declaring its
  signature, when any descendant redeclares that signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import ClassModel, ancestors_of, depth_levels, descendants_of
from .model import aggregation_components, inheritance_hierarchies

METRIC_IDS = (
    "NOC", "NOH", "NOA", "MDIT", "NAR", "NAH", "CAM",
    "NOP", "DAR", "FA", "DCC", "NOM", "CIS", "EOD",
)

#: metrics with a per-class breakdown
CLASS_SCOPED = ("NOA", "MDIT", "CAM", "DAR", "FA", "DCC", "NOM", "CIS")

#: ids whose design-level value is a count (int); the rest are rationals
COUNT_METRICS = frozenset({"NOC", "NOH", "NOA", "MDIT", "NAR", "NAH", "NOP"})


@dataclass(frozen=True)
class MetricVector:
    """All fourteen design-level values plus per-class breakdowns."""

    values: dict[str, int | Fraction]
    per_class: dict[str, dict[str, int | Fraction]]

    def __getitem__(self, metric: str):
        return self.values[metric]


def _mean(per_class: dict[str, int | Fraction]) -> Fraction:
    if not per_class:
        return Fraction(0)
    return Fraction(sum(per_class.values()), len(per_class))


# -- size and hierarchy counts ------------------------------------------

def noc(model: ClassModel) -> int:
    """Total number of classes and interfaces in the design."""
    return len(model.classes)


def noh(model: ClassModel) -> int:
    """Number of inheritance hierarchies (roots with at least one descendant)."""
    return len(inheritance_hierarchies(model))


def noa_class(model: ClassModel, name: str) -> int:
    return len(ancestors_of(model, name))


def noa(model: ClassModel) -> int:
    """Largest ancestor count over all classes."""
    return max((noa_class(model, c.name) for c in model.classes), default=0)


def mdit_class(model: ClassModel, name: str) -> int:
    return depth_levels(model, name)


def mdit(model: ClassModel) -> int:
    """Deepest inheritance level in the design (isolated class = 1 level)."""
    return max((mdit_class(model, c.name) for c in model.classes), default=0)


def nar(model: ClassModel) -> int:
    """Attribute declarations, with multiplicity, typed by a declared class."""
    declared = model.by_name
    return sum(
        1
        for cls in model.classes
        for attr in cls.attributes
        if attr.type_name in declared
    )


def nah(model: ClassModel) -> int:
    """Number of aggregation hierarchies (connected aggregation components)."""
    return len(aggregation_components(model))


# -- cohesion -----------------------------------------------------------

def cam_class(model: ClassModel, name: str) -> Fraction:
    """Parameter-type cohesion of one class.

    With k locally declared methods and T the union of their distinct
    parameter types: sum(|distinct types of method i|) / (k * |T|).
    Zero when the class has no methods or no parameters anywhere.
    """
    cls = model.by_name[name]
    k = len(cls.methods)
    if k == 0:
        return Fraction(0)
    union: set[str] = set()
    total = 0
    for meth in cls.methods:
        distinct = set(meth.parameter_types)
        union |= distinct
        total += len(distinct)
    if not union:
        return Fraction(0)
    return Fraction(total, k * len(union))


def cam(model: ClassModel) -> Fraction:
    return _mean({c.name: cam_class(model, c.name) for c in model.classes})


# -- polymorphism -------------------------------------------------------

def polymorphic_declarations(model: ClassModel) -> frozenset[tuple[str, str, tuple[str, ...]]]:
    """(class, method, parameter types) triples counted by the NOP metric.

    A triple is included when the class is the topmost declarer of the
    signature on its branch and some descendant redeclares it.
    """
    sigs_of = {c.name: {m.signature for m in c.methods} for c in model.classes}
    out = []
    for cls in model.classes:
        if not cls.methods:
            continue
        ancestor_sigs: set = set()
        for anc in ancestors_of(model, cls.name):
            ancestor_sigs |= sigs_of[anc]
        descendant_list = descendants_of(model, cls.name)
        for meth in cls.methods:
            if meth.signature in ancestor_sigs:
                continue  # not the topmost declarer
            if any(meth.signature in sigs_of[d] for d in descendant_list):
                out.append((cls.name, meth.name, meth.parameter_types))
    return frozenset(out)


def nop(model: ClassModel) -> int:
    """Method declarations overridden somewhere below, counted at the top."""
    return len(polymorphic_declarations(model))


# -- encapsulation ------------------------------------------------------

def dar_class(model: ClassModel, name: str) -> Fraction:
    cls = model.by_name[name]
    if not cls.attributes:
        return Fraction(1)
    hidden = sum(1 for a in cls.attributes if a.visibility in ("private", "protected"))
    return Fraction(hidden, len(cls.attributes))


def dar(model: ClassModel) -> Fraction:
    """Mean ratio of non-public attributes; attribute-free classes count as 1."""
    return _mean({c.name: dar_class(model, c.name) for c in model.classes})


# -- inheritance --------------------------------------------------------

def fa_class(model: ClassModel, name: str) -> Fraction:
    """Share of the class's accessible methods that are inherited.

    Inherited = distinct non-private ancestor signatures not redeclared
    locally; accessible = inherited + locally declared.
    """
    cls = model.by_name[name]
    local = {m.signature for m in cls.methods}
    inherited: set = set()
    for anc in ancestors_of(model, name):
        for meth in model.by_name[anc].methods:
            if meth.visibility != "private" and meth.signature not in local:
                inherited.add(meth.signature)
    accessible = len(inherited) + len(cls.methods)
    if accessible == 0:
        return Fraction(0)
    return Fraction(len(inherited), accessible)


def fa(model: ClassModel) -> Fraction:
    return _mean({c.name: fa_class(model, c.name) for c in model.classes})


# -- coupling and interface size ----------------------------------------

def dcc_class(model: ClassModel, name: str) -> int:
    """Distinct other declared classes named by attributes or parameters."""
    declared = model.by_name
    cls = declared[name]
    coupled: set[str] = set()
    for attr in cls.attributes:
        coupled.add(attr.type_name)
    for meth in cls.methods:
        coupled.update(meth.parameter_types)
    return len({t for t in coupled if t in declared and t != name})


def dcc(model: ClassModel) -> Fraction:
    return _mean({c.name: dcc_class(model, c.name) for c in model.classes})


def nom_class(model: ClassModel, name: str) -> int:
    return len(model.by_name[name].methods)


def nom(model: ClassModel) -> Fraction:
    """Mean number of locally declared methods per class."""
    return _mean({c.name: nom_class(model, c.name) for c in model.classes})


def cis_class(model: ClassModel, name: str) -> int:
    return sum(1 for m in model.by_name[name].methods if m.visibility == "public")


def cis(model: ClassModel) -> Fraction:
    """Mean number of public methods per class."""
    return _mean({c.name: cis_class(model, c.name) for c in model.classes})


# -- documentation ------------------------------------------------------

def eod(model: ClassModel) -> Fraction:
    """Documented entities over all entities (classes + methods + attributes)."""
    total = 0
    documented = 0
    for cls in model.classes:
        entities = [cls.documented]
        entities += [a.documented for a in cls.attributes]
        entities += [m.documented for m in cls.methods]
        total += len(entities)
        documented += sum(entities)
    if total == 0:
        return Fraction(0)
    return Fraction(documented, total)


# -- the full vector ----------------------------------------------------

_PER_CLASS_FN = {
    "NOA": noa_class,
    "MDIT": mdit_class,
    "CAM": cam_class,
    "DAR": dar_class,
    "FA": fa_class,
    "DCC": dcc_class,
    "NOM": nom_class,
    "CIS": cis_class,
}

_DESIGN_FN = {
    "NOC": noc, "NOH": noh, "NOA": noa, "MDIT": mdit, "NAR": nar,
    "NAH": nah, "CAM": cam, "NOP": nop, "DAR": dar, "FA": fa,
    "DCC": dcc, "NOM": nom, "CIS": cis, "EOD": eod,
}


def compute_all(model: ClassModel) -> MetricVector:
    """Every design-level value plus the per-class breakdowns, in one pass."""
    values = {mid: _DESIGN_FN[mid](model) for mid in METRIC_IDS}
    per_class = {
        mid: {c.name: fn(model, c.name) for c in model.classes}
        for mid, fn in _PER_CLASS_FN.items()
    }
    return MetricVector(values=values, per_class=per_class)
