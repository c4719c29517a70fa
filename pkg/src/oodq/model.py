"""Immutable class-design model and the graph queries metrics are built on.

A :class:`ClassModel` is a flat collection of class declarations. The two
relations every metric consumes are derived, never stored:

* inheritance edges: (child, parent) for each listed parent that is itself
  declared in the model — parents naming external/undeclared types simply
  contribute no edge (they resolve once the declaring part is merged in);
* aggregation edges: (owner, part) for each attribute whose declared type
  is a class of the model.

All queries are pure; instances are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

VISIBILITIES = ("public", "protected", "private")
CLASS_KINDS = ("class", "interface")


@dataclass(frozen=True)
class AttributeDef:
    name: str
    type_name: str
    visibility: str = "private"
    documented: bool = False

    def __post_init__(self):
        if self.visibility not in VISIBILITIES:
            raise ValueError(f"bad visibility {self.visibility!r} for attribute {self.name!r}")


@dataclass(frozen=True)
class MethodDef:
    name: str
    parameter_types: tuple[str, ...] = ()
    return_type: str = "void"
    visibility: str = "public"
    documented: bool = False

    def __post_init__(self):
        object.__setattr__(self, "parameter_types", tuple(self.parameter_types))
        if self.visibility not in VISIBILITIES:
            raise ValueError(f"bad visibility {self.visibility!r} for method {self.name!r}")

    @property
    def signature(self) -> tuple[str, tuple[str, ...]]:
        return (self.name, self.parameter_types)


@dataclass(frozen=True)
class ClassDef:
    name: str
    kind: str = "class"
    parents: tuple[str, ...] = ()
    attributes: tuple[AttributeDef, ...] = ()
    methods: tuple[MethodDef, ...] = ()
    documented: bool = False

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.kind not in CLASS_KINDS:
            raise ValueError(f"bad kind {self.kind!r} for class {self.name!r}")


@dataclass(frozen=True)
class Violation:
    """One broken model invariant, attributed to a class and a rule id."""

    class_name: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.class_name}: [{self.rule}] {self.message}"


@dataclass(frozen=True)
class ClassModel:
    """An immutable design: class declarations in declaration order."""

    classes: tuple[ClassDef, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))

    @cached_property
    def by_name(self) -> dict[str, ClassDef]:
        # first declaration wins; duplicates surface through validate()
        table: dict[str, ClassDef] = {}
        for cls in self.classes:
            table.setdefault(cls.name, cls)
        return table

    @cached_property
    def inheritance_edges(self) -> frozenset[tuple[str, str]]:
        declared = self.by_name
        return frozenset(
            (cls.name, parent)
            for cls in self.classes
            for parent in cls.parents
            if parent in declared
        )

    @cached_property
    def aggregation_edges(self) -> frozenset[tuple[str, str]]:
        declared = self.by_name
        return frozenset(
            (cls.name, attr.type_name)
            for cls in self.classes
            for attr in cls.attributes
            if attr.type_name in declared
        )

    @cached_property
    def _parents(self) -> dict[str, tuple[str, ...]]:
        """Declared parents per class, in declaration order."""
        declared = self.by_name
        return {
            cls.name: tuple(p for p in cls.parents if p in declared)
            for cls in self.classes
        }

    @cached_property
    def _children(self) -> dict[str, tuple[str, ...]]:
        kids: dict[str, list[str]] = {cls.name: [] for cls in self.classes}
        for child, parent in sorted(self.inheritance_edges):
            kids[parent].append(child)
        return {name: tuple(v) for name, v in kids.items()}

    def __contains__(self, name: str) -> bool:
        return name in self.by_name

    def __len__(self) -> int:
        return len(self.classes)

    def canonical(self) -> "ClassModel":
        """Same model with classes ordered by name (interchange order)."""
        return ClassModel(tuple(sorted(self.classes, key=lambda c: c.name)))


# -- validation ---------------------------------------------------------

def validate(model: ClassModel) -> list[Violation]:
    """Check every structural invariant; returns violations, raises nothing."""
    out: list[Violation] = []

    seen: set[str] = set()
    for cls in model.classes:
        if cls.name in seen:
            out.append(Violation(cls.name, "duplicate-class", "class name declared more than once"))
        seen.add(cls.name)

    for cls in model.classes:
        if cls.name in cls.parents:
            out.append(Violation(cls.name, "self-inheritance", "class lists itself as a parent"))
        attr_names: set[str] = set()
        for attr in cls.attributes:
            if attr.name in attr_names:
                out.append(Violation(cls.name, "duplicate-attribute", f"attribute {attr.name!r} declared twice"))
            attr_names.add(attr.name)
        sigs: set[tuple[str, tuple[str, ...]]] = set()
        for meth in cls.methods:
            if meth.signature in sigs:
                out.append(Violation(cls.name, "duplicate-method", f"method {meth.name}({', '.join(meth.parameter_types)}) declared twice"))
            sigs.add(meth.signature)

    for name in _cycle_members(model):
        out.append(Violation(name, "inheritance-cycle", "class participates in an inheritance cycle"))

    return out


def _cycle_members(model: ClassModel) -> list[str]:
    """Names on inheritance cycles of length >= 2, in declaration order."""
    parents = model._parents
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {name: WHITE for name in parents}
    on_cycle: set[str] = set()

    for root in parents:
        if color[root] != WHITE:
            continue
        color[root] = GRAY
        stack = [(root, iter(parents[root]))]
        path = [root]
        while stack:
            node, remaining = stack[-1]
            parent = next(remaining, None)
            if parent is None:
                stack.pop()
                path.pop()
                color[node] = BLACK
            elif parent == node:
                continue  # self edge reported separately
            elif color[parent] == GRAY:
                on_cycle.update(path[path.index(parent):])
            elif color[parent] == WHITE:
                color[parent] = GRAY
                stack.append((parent, iter(parents[parent])))
                path.append(parent)
    return [cls.name for cls in model.classes if cls.name in on_cycle]


def require_valid(model: ClassModel) -> ClassModel:
    """Return the model unchanged, or raise InvalidModelError."""
    from .errors import InvalidModelError

    violations = validate(model)
    if violations:
        raise InvalidModelError(violations)
    return model


# -- graph queries ------------------------------------------------------

def _require_declared(model: ClassModel, name: str) -> None:
    if name not in model.by_name:
        from .errors import UnknownClassError

        raise UnknownClassError(name)


def ancestors_of(model: ClassModel, name: str) -> frozenset[str]:
    """All classes reachable through parent edges, the class itself excluded."""
    _require_declared(model, name)
    parents = model._parents
    seen: set[str] = set()
    frontier = [name]
    while frontier:
        current = frontier.pop()
        for parent in parents.get(current, ()):
            if parent not in seen and parent != name:
                seen.add(parent)
                frontier.append(parent)
    return frozenset(seen)


def depth_levels(model: ClassModel, name: str) -> int:
    """Levels on the longest parent path, counting the class itself.

    An isolated class sits on one level. Multiple inheritance takes the
    maximum over paths. Raises ValueError on cyclic models: validate first.
    """
    _require_declared(model, name)
    parents = model._parents
    memo: dict[str, int] = {}
    in_progress: set[str] = set()
    stack: list[tuple[str, bool]] = [(name, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            in_progress.discard(node)
            ps = parents[node]
            memo[node] = 1 if not ps else 1 + max(memo[p] for p in ps)
            continue
        if node in memo:
            continue
        in_progress.add(node)
        stack.append((node, True))
        for parent in parents[node]:
            if parent in memo:
                continue
            if parent in in_progress:
                raise ValueError(f"inheritance cycle through {parent!r}")
            stack.append((parent, False))
    return memo[name]


def inheritance_hierarchies(model: ClassModel) -> frozenset[str]:
    """Roots of non-trivial hierarchies: parentless classes with a descendant."""
    parents = model._parents
    children = model._children
    return frozenset(
        cls.name
        for cls in model.classes
        if not parents[cls.name] and children[cls.name]
    )


def aggregation_components(model: ClassModel) -> frozenset[frozenset[str]]:
    """Weakly connected components of the aggregation graph.

    Only classes touching at least one aggregation edge appear, so every
    returned component contains an edge.
    """
    neighbours: dict[str, set[str]] = {}
    for owner, part in model.aggregation_edges:
        neighbours.setdefault(owner, set()).add(part)
        neighbours.setdefault(part, set()).add(owner)

    components: list[frozenset[str]] = []
    unvisited = set(neighbours)
    while unvisited:
        start = unvisited.pop()
        group = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for other in neighbours[node]:
                if other not in group:
                    group.add(other)
                    frontier.append(other)
        unvisited -= group
        components.append(frozenset(group))
    return frozenset(components)


def descendants_of(model: ClassModel, name: str) -> frozenset[str]:
    """All classes having `name` among their ancestors."""
    _require_declared(model, name)
    children = model._children
    seen: set[str] = set()
    frontier = [name]
    while frontier:
        current = frontier.pop()
        for child in children.get(current, ()):
            if child not in seen and child != name:
                seen.add(child)
                frontier.append(child)
    return frozenset(seen)
