"""Exception hierarchy shared across the package.

Everything raised on bad *input* derives from :class:`OodqError`; the CLI
maps that to exit code 2. Programming errors stay ordinary Python
exceptions.
"""

from __future__ import annotations


class OodqError(Exception):
    """Base class for input and data errors raised by this package."""


class UnknownClassError(OodqError):
    """A query named a class that is not declared in the model."""

    def __init__(self, name: str):
        super().__init__(f"unknown class: {name!r}")
        self.name = name


class InvalidModelError(OodqError):
    """A model failed its structural invariants.

    Carries the full violation list so callers can report every problem
    at once.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid model: {lines}")


class ParseError(OodqError):
    """Syntax or lexical error in ODL source.

    position: (file, line, column), 1-based.
    expected: description of what the parser was looking for.
    found: the offending lexeme (or "end of input").
    """

    def __init__(self, position, expected: str, found: str):
        self.position = position
        self.expected = expected
        self.found = found
        file, line, column = position
        super().__init__(
            f"{file}:{line}:{column}: expected {expected}, found {found!r}"
        )


class FormatError(OodqError):
    """Malformed interchange / thresholds / weights / survey file.

    `where` is a JSON-pointer-style path for structured files, or a
    1-based row number rendered as "row N" for delimited files.
    """

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


class MergeConflictError(OodqError):
    """Two model parts declare the same class name."""

    def __init__(self, name: str):
        super().__init__(f"merge conflict: class {name!r} declared more than once")
        self.name = name


class MissingMetricError(OodqError):
    """A factor references a metric with no quantized value supplied."""

    def __init__(self, metric: str):
        super().__init__(f"no quantized value for metric {metric!r}")
        self.metric = metric


class MissingPairError(OodqError):
    """A weight source lacks an entry for a (factor, metric) pair."""

    def __init__(self, factor: str, metric: str):
        super().__init__(f"no weight entry for ({factor}, {metric})")
        self.factor = factor
        self.metric = metric


class NoDataError(OodqError):
    """A survey statistic was requested for a pair nobody answered."""

    def __init__(self, metric: str, factor: str):
        super().__init__(f"no responses for ({metric}, {factor})")
        self.metric = metric
        self.factor = factor
