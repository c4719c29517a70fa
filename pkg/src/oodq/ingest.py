"""Front-ends producing a ClassModel.

Two routes in, one route out:

* ODL source (``.odl``) — a minimal class-declaration language: classes and
  interfaces, an extends-list, typed attributes and method signatures with
  one of three visibility levels, ``//`` and ``/* */`` comments, ``/** */``
  doc comments attaching to the next declaration. Method bodies are skipped
  by balanced-brace matching and contribute nothing.
* interchange documents (``.oodm.json``) — a canonical JSON schema with
  classes sorted by name and members in declaration order; strict about
  unknown keys so golden files stay golden.

Every model returned here satisfies validate(); structurally broken input
raises instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import FormatError, MergeConflictError, ParseError
from .model import (
    CLASS_KINDS,
    VISIBILITIES,
    AttributeDef,
    ClassDef,
    ClassModel,
    MethodDef,
    require_valid,
)

KEYWORDS = frozenset({"class", "interface", "extends", "public", "protected", "private"})

ODL_EXTENSION = ".odl"
INTERCHANGE_EXTENSION = ".oodm.json"


@dataclass(frozen=True)
class SourcePosition:
    file: str
    line: int
    column: int

    def __iter__(self):
        return iter((self.file, self.line, self.column))


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, PUNCT, DOC, STRING, OTHER, EOF
    text: str
    position: SourcePosition


def _is_ident_start(ch: str) -> bool:
    return ch.isascii() and (ch.isalpha() or ch == "_")


def _is_ident_char(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


def tokenize(text: str, file: str = "<string>") -> list[Token]:
    """Lex ODL source. Comments vanish, doc comments become DOC tokens.

    Characters with no role in the grammar become single OTHER tokens;
    they can only survive inside skipped method bodies.
    """
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)

    def pos() -> SourcePosition:
        return SourcePosition(file, line, col)

    def advance(k: int = 1):
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            advance()
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                advance()
            continue
        if text.startswith("/*", i):
            start = pos()
            is_doc = text.startswith("/**", i) and not text.startswith("/**/", i)
            advance(2)
            body_start = i
            while i < n and not text.startswith("*/", i):
                advance()
            if i >= n:
                raise ParseError(start, "end of comment '*/'", "end of input")
            body = text[body_start:i]
            advance(2)
            if is_doc:
                tokens.append(Token("DOC", body, start))
            continue
        if ch in "\"'":
            start = pos()
            quote = ch
            advance()
            chunk_start = i
            while i < n and text[i] != quote:
                if text[i] == "\\":
                    advance()
                if i < n:
                    advance()
            if i >= n:
                raise ParseError(start, f"closing {quote}", "end of input")
            body = text[chunk_start:i]
            advance()
            tokens.append(Token("STRING", body, start))
            continue
        if _is_ident_start(ch):
            start = pos()
            begin = i
            while i < n and _is_ident_char(text[i]):
                advance()
            tokens.append(Token("IDENT", text[begin:i], start))
            continue
        if ch in "{}(),;":
            tokens.append(Token("PUNCT", ch, pos()))
            advance()
            continue
        tokens.append(Token("OTHER", ch, pos()))
        advance()

    tokens.append(Token("EOF", "end of input", pos()))
    return tokens


class _Parser:
    """Recursive descent over the token stream; one token of lookahead."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        tok = self.current
        if tok.kind != "EOF":
            self.index += 1
        return tok

    def _fail(self, expected: str) -> ParseError:
        tok = self.current
        found = tok.text if tok.kind != "EOF" else "end of input"
        return ParseError(tok.position, expected, found)

    def _expect_punct(self, ch: str) -> Token:
        if self.current.kind == "PUNCT" and self.current.text == ch:
            return self._advance()
        raise self._fail(f"'{ch}'")

    def _expect_ident(self, what: str = "identifier") -> str:
        tok = self.current
        if tok.kind == "IDENT" and tok.text not in KEYWORDS:
            self._advance()
            return tok.text
        raise self._fail(what)

    def _at_keyword(self, word: str) -> bool:
        return self.current.kind == "IDENT" and self.current.text == word

    def _take_doc(self) -> bool:
        documented = False
        while self.current.kind == "DOC":
            documented = True
            self._advance()
        return documented

    def parse_model(self) -> ClassModel:
        classes: list[ClassDef] = []
        while self.current.kind != "EOF":
            classes.append(self.parse_classdecl())
        return ClassModel(tuple(classes))

    def parse_classdecl(self) -> ClassDef:
        documented = self._take_doc()
        if self._at_keyword("class"):
            kind = "class"
        elif self._at_keyword("interface"):
            kind = "interface"
        else:
            raise self._fail("'class' or 'interface'")
        self._advance()
        name = self._expect_ident("class name")

        parents: list[str] = []
        if self._at_keyword("extends"):
            self._advance()
            parents.append(self._expect_ident("parent name"))
            while self.current.kind == "PUNCT" and self.current.text == ",":
                self._advance()
                parents.append(self._expect_ident("parent name"))

        self._expect_punct("{")
        attributes: list[AttributeDef] = []
        methods: list[MethodDef] = []
        while not (self.current.kind == "PUNCT" and self.current.text == "}"):
            member = self.parse_member()
            if isinstance(member, AttributeDef):
                attributes.append(member)
            else:
                methods.append(member)
        self._expect_punct("}")
        return ClassDef(name, kind, tuple(parents), tuple(attributes), tuple(methods), documented)

    def parse_member(self) -> AttributeDef | MethodDef:
        documented = self._take_doc()
        for vis in VISIBILITIES:
            if self._at_keyword(vis):
                visibility = vis
                self._advance()
                break
        else:
            raise self._fail("'public', 'protected' or 'private'")
        type_name = self._expect_ident("type name")
        name = self._expect_ident("member name")

        tok = self.current
        if tok.kind == "PUNCT" and tok.text == ";":
            self._advance()
            return AttributeDef(name, type_name, visibility, documented)
        if tok.kind == "PUNCT" and tok.text == "(":
            self._advance()
            params = self.parse_parameter_types()
            self._expect_punct(")")
            tok = self.current
            if tok.kind == "PUNCT" and tok.text == ";":
                self._advance()
            elif tok.kind == "PUNCT" and tok.text == "{":
                self._skip_block()
            else:
                raise self._fail("';' or method body")
            return MethodDef(name, tuple(params), type_name, visibility, documented)
        raise self._fail("';' or '('")

    def parse_parameter_types(self) -> list[str]:
        params: list[str] = []
        if self.current.kind == "PUNCT" and self.current.text == ")":
            return params
        while True:
            ptype = self._expect_ident("parameter type")
            self._expect_ident("parameter name")
            params.append(ptype)
            if self.current.kind == "PUNCT" and self.current.text == ",":
                self._advance()
                continue
            return params

    def _skip_block(self) -> None:
        self._expect_punct("{")
        depth = 1
        while depth:
            tok = self.current
            if tok.kind == "EOF":
                raise self._fail("'}'")
            if tok.kind == "PUNCT" and tok.text == "{":
                depth += 1
            elif tok.kind == "PUNCT" and tok.text == "}":
                depth -= 1
            self._advance()


def parse_source(text: str, file: str = "<string>") -> ClassModel:
    """Parse ODL source into a validated ClassModel."""
    model = _Parser(tokenize(text, file)).parse_model()
    return require_valid(model)


def write_source(model: ClassModel) -> str:
    """Render a model back to ODL. Parameter names are synthesized (p1..pn);
    they are not part of the model, so parse_source(write_source(m)) == m."""
    lines: list[str] = []
    for cls in model.classes:
        if lines:
            lines.append("")
        if cls.documented:
            lines.append("/** documented */")
        extends = f" extends {', '.join(cls.parents)}" if cls.parents else ""
        lines.append(f"{cls.kind} {cls.name}{extends} {{")
        for attr in cls.attributes:
            if attr.documented:
                lines.append("    /** documented */")
            lines.append(f"    {attr.visibility} {attr.type_name} {attr.name};")
        for meth in cls.methods:
            if meth.documented:
                lines.append("    /** documented */")
            args = ", ".join(f"{t} p{i + 1}" for i, t in enumerate(meth.parameter_types))
            lines.append(f"    {meth.visibility} {meth.return_type} {meth.name}({args});")
        lines.append("}")
    return "\n".join(lines) + ("\n" if lines else "")


# -- interchange format -------------------------------------------------

_CLASS_KEYS = {"name", "kind", "parents", "documented", "attributes", "methods"}
_ATTR_KEYS = {"name", "type", "visibility", "documented"}
_METHOD_KEYS = {"name", "params", "returns", "visibility", "documented"}


def _check_keys(obj: dict, allowed: set[str], required: set[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise FormatError(f"{path}/{key}", "unknown key")
    for key in required:
        if key not in obj:
            raise FormatError(path, f"missing key {key!r}")


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise FormatError(path, message)


def load_model_file(text: str) -> ClassModel:
    """Parse an interchange document into a validated ClassModel."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("", f"not valid JSON: {exc}") from None

    _expect(isinstance(doc, dict), "", "top level must be an object")
    _check_keys(doc, {"classes"}, {"classes"}, "")
    _expect(isinstance(doc["classes"], list), "/classes", "must be an array")

    classes: list[ClassDef] = []
    names: set[str] = set()
    for ci, raw_cls in enumerate(doc["classes"]):
        path = f"/classes/{ci}"
        _expect(isinstance(raw_cls, dict), path, "must be an object")
        _check_keys(raw_cls, _CLASS_KEYS, {"name"}, path)
        name = raw_cls["name"]
        _expect(isinstance(name, str) and bool(name), f"{path}/name", "must be a non-empty string")
        if name in names:
            raise FormatError(f"{path}/name", f"duplicate class {name!r}")
        names.add(name)
        kind = raw_cls.get("kind", "class")
        _expect(kind in CLASS_KINDS, f"{path}/kind", f"must be one of {list(CLASS_KINDS)}")
        parents = raw_cls.get("parents", [])
        _expect(
            isinstance(parents, list) and all(isinstance(p, str) for p in parents),
            f"{path}/parents",
            "must be an array of strings",
        )
        documented = raw_cls.get("documented", False)
        _expect(isinstance(documented, bool), f"{path}/documented", "must be a boolean")

        attributes = []
        for ai, raw_attr in enumerate(raw_cls.get("attributes", [])):
            apath = f"{path}/attributes/{ai}"
            _expect(isinstance(raw_attr, dict), apath, "must be an object")
            _check_keys(raw_attr, _ATTR_KEYS, {"name", "type", "visibility"}, apath)
            _expect(raw_attr["visibility"] in VISIBILITIES, f"{apath}/visibility", f"must be one of {list(VISIBILITIES)}")
            a_doc = raw_attr.get("documented", False)
            _expect(isinstance(a_doc, bool), f"{apath}/documented", "must be a boolean")
            attributes.append(AttributeDef(raw_attr["name"], raw_attr["type"], raw_attr["visibility"], a_doc))

        methods = []
        for mi, raw_meth in enumerate(raw_cls.get("methods", [])):
            mpath = f"{path}/methods/{mi}"
            _expect(isinstance(raw_meth, dict), mpath, "must be an object")
            _check_keys(raw_meth, _METHOD_KEYS, {"name", "params", "returns", "visibility"}, mpath)
            params = raw_meth["params"]
            _expect(
                isinstance(params, list) and all(isinstance(p, str) for p in params),
                f"{mpath}/params",
                "must be an array of type names",
            )
            _expect(raw_meth["visibility"] in VISIBILITIES, f"{mpath}/visibility", f"must be one of {list(VISIBILITIES)}")
            m_doc = raw_meth.get("documented", False)
            _expect(isinstance(m_doc, bool), f"{mpath}/documented", "must be a boolean")
            methods.append(MethodDef(raw_meth["name"], tuple(params), raw_meth["returns"], raw_meth["visibility"], m_doc))

        classes.append(ClassDef(name, kind, tuple(parents), tuple(attributes), tuple(methods), documented))

    return require_valid(ClassModel(tuple(classes)))


def model_to_dict(model: ClassModel) -> dict:
    """Interchange document as a plain dict, classes sorted by name."""
    return {
        "classes": [
            {
                "name": cls.name,
                "kind": cls.kind,
                "parents": list(cls.parents),
                "documented": cls.documented,
                "attributes": [
                    {
                        "name": a.name,
                        "type": a.type_name,
                        "visibility": a.visibility,
                        "documented": a.documented,
                    }
                    for a in cls.attributes
                ],
                "methods": [
                    {
                        "name": m.name,
                        "params": list(m.parameter_types),
                        "returns": m.return_type,
                        "visibility": m.visibility,
                        "documented": m.documented,
                    }
                    for m in cls.methods
                ],
            }
            for cls in model.canonical().classes
        ]
    }


def write_model_file(model: ClassModel) -> str:
    """Serialize a valid model to canonical interchange text."""
    require_valid(model)
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def merge_models(parts: list[ClassModel]) -> ClassModel:
    """Union of class declarations; result is name-ordered and validated.

    Inheritance and aggregation edges are derived relations, so references
    between parts resolve by themselves once the union exists.
    """
    merged: dict[str, ClassDef] = {}
    for part in parts:
        for cls in part.classes:
            if cls.name in merged:
                raise MergeConflictError(cls.name)
            merged[cls.name] = cls
    model = ClassModel(tuple(merged[name] for name in sorted(merged)))
    return require_valid(model)
