"""Manifold fixture documents: strict JSON parsing, canonical serialization, built-in examples.

File indices are 1-based (``e_1..e_n``); everything past this module is 0-based.

Document layout::

    {
      "name": "lp-kenmotsu-5",
      "dimension": 5,
      "metric": [["1", "0", ...], ...],           # g(e_i, e_j)
      "brackets": [{"i": 1, "j": 5, "k": 1, "value": "-1"}, ...],   # i < j
      "phi": [["0", "-1", ...], ...],             # row a, column b: (phi e_b)^a
      "zeta": ["0", "0", "0", "0", "1"],
      "nu": [...],                                # optional, cross-checked
      "soliton": {"sigma": "1", "rho": "0", "lambda": "-4", "field": "zeta"}   # optional
    }

``soliton.field`` is ``"zeta"``, ``"gradient-constant"`` or a list of rational
strings for an explicit constant-component field. All rationals are strings.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional, Union

from .errors import BadDimension, ParseError, SchemaError, ValidationError
from .exact import Matrix, Vector, as_vector, format_rational, parse_rational
from .frame import FrameManifold
from .soliton import SolitonField, SolitonParams
from .structure import ParacontactStructure

TOP_KEYS = {"name", "dimension", "metric", "brackets", "phi", "zeta", "nu", "soliton"}
REQUIRED_KEYS = {"name", "dimension", "metric", "brackets", "phi", "zeta"}
BRACKET_KEYS = {"i", "j", "k", "value"}
SOLITON_KEYS = {"sigma", "rho", "lambda", "field"}
SOLITON_REQUIRED = {"sigma", "rho", "field"}


@dataclass(frozen=True)
class SolitonSpec:
    sigma: Fraction
    rho: Fraction
    lam: Optional[Fraction]
    field: Union[str, Vector]  # "zeta", "gradient-constant" or an explicit vector

    def params(self) -> SolitonParams:
        return SolitonParams(self.sigma, self.rho, self.lam)

    def soliton_field(self) -> SolitonField:
        if self.field == SolitonField.ZETA:
            return SolitonField.zeta()
        if self.field == SolitonField.GRADIENT_CONSTANT:
            return SolitonField.gradient_constant()
        return SolitonField.explicit(self.field)


@dataclass(frozen=True)
class ManifoldSpecDocument:
    name: str
    dimension: int
    metric: Matrix
    brackets: tuple  # 1-based (i, j, k, value), i < j, sorted
    phi: Matrix
    zeta: Vector
    nu: Optional[Vector] = None
    soliton: Optional[SolitonSpec] = None

    def manifold(self) -> FrameManifold:
        return FrameManifold.from_brackets(self.metric, [(i - 1, j - 1, k - 1, v) for i, j, k, v in self.brackets])

    def structure(self, manifold: Optional[FrameManifold] = None) -> ParacontactStructure:
        return ParacontactStructure.build(manifold or self.manifold(), self.phi, self.zeta, self.nu)

    def geometry_key(self) -> tuple:
        """Everything except the name and soliton block."""
        return (self.dimension, self.metric, tuple(b for b in self.brackets if b[3] != 0), self.phi, self.zeta)


def _rational(value, where: str) -> Fraction:
    if not isinstance(value, str):
        raise SchemaError(f"rationals must be strings like \"p\" or \"p/q\", got {json.dumps(value)}", where)
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise SchemaError(str(exc), where) from None


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {json.dumps(value)}", where)
    return value


def _keys(obj, allowed: set, required: set, where: str):
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", where)
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise SchemaError(f"unknown key {unknown[0]!r}", where)
    missing = sorted(required - set(obj))
    if missing:
        raise SchemaError(f"missing key {missing[0]!r}", where)


def _vector(value, n: int, where: str) -> Vector:
    if not isinstance(value, list):
        raise SchemaError("expected a list", where)
    if len(value) != n:
        raise ValidationError(f"expected {n} components, got {len(value)}", where)
    return tuple(_rational(x, f"{where}[{i}]") for i, x in enumerate(value))


def _grid(value, n: int, where: str) -> Matrix:
    if not isinstance(value, list):
        raise SchemaError("expected a list of rows", where)
    if len(value) != n:
        raise ValidationError(f"expected {n} rows, got {len(value)}", where)
    return Matrix([_vector(row, n, f"{where}[{i}]") for i, row in enumerate(value)])


def parse_spec(text: str) -> ManifoldSpecDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return document_from_obj(raw)


def document_from_obj(raw) -> ManifoldSpecDocument:
    _keys(raw, TOP_KEYS, REQUIRED_KEYS, "document")
    name = raw["name"]
    if not isinstance(name, str):
        raise SchemaError("expected a string", "name")
    n = _int(raw["dimension"], "dimension")
    if n < 3:
        raise ValidationError(f"dimension {n} < 3", "dimension")
    metric = _grid(raw["metric"], n, "metric")
    phi = _grid(raw["phi"], n, "phi")
    zeta = _vector(raw["zeta"], n, "zeta")
    nu = _vector(raw["nu"], n, "nu") if raw.get("nu") is not None else None

    if not isinstance(raw["brackets"], list):
        raise SchemaError("expected a list", "brackets")
    brackets = []
    seen = set()
    for pos, entry in enumerate(raw["brackets"]):
        where = f"brackets[{pos}]"
        _keys(entry, BRACKET_KEYS, BRACKET_KEYS, where)
        i, j, k = (_int(entry[key], f"{where}.{key}") for key in ("i", "j", "k"))
        if i >= j:
            raise SchemaError(f"i < j required, got i = {i}, j = {j}", where)
        for key, idx in (("i", i), ("j", j), ("k", k)):
            if not 1 <= idx <= n:
                raise ValidationError(f"index {idx} outside 1..{n}", f"{where}.{key}")
        if (i, j, k) in seen:
            raise SchemaError(f"duplicate bracket entry ({i}, {j}, {k})", where)
        seen.add((i, j, k))
        brackets.append((i, j, k, _rational(entry["value"], f"{where}.value")))
    brackets.sort(key=lambda b: b[:3])

    soliton = None
    if raw.get("soliton") is not None:
        s = raw["soliton"]
        _keys(s, SOLITON_KEYS, SOLITON_REQUIRED, "soliton")
        fld = s["field"]
        if isinstance(fld, list):
            fld = _vector(fld, n, "soliton.field")
        elif fld not in (SolitonField.ZETA, SolitonField.GRADIENT_CONSTANT):
            raise SchemaError(f"field must be 'zeta', 'gradient-constant' or a vector, got {json.dumps(fld)}",
                              "soliton.field")
        lam = _rational(s["lambda"], "soliton.lambda") if s.get("lambda") is not None else None
        soliton = SolitonSpec(_rational(s["sigma"], "soliton.sigma"), _rational(s["rho"], "soliton.rho"), lam, fld)

    doc = ManifoldSpecDocument(name=name, dimension=n, metric=metric, brackets=tuple(brackets), phi=phi,
                               zeta=zeta, nu=nu, soliton=soliton)
    try:
        doc.manifold()
    except ValidationError as exc:
        if exc.location:
            raise
        raise ValidationError(str(exc), "brackets") from None
    return doc


def document_to_obj(doc: ManifoldSpecDocument) -> dict:
    obj = {
        "name": doc.name,
        "dimension": doc.dimension,
        "metric": doc.metric.to_strings(),
        "brackets": [{"i": i, "j": j, "k": k, "value": format_rational(v)} for i, j, k, v in doc.brackets],
        "phi": doc.phi.to_strings(),
        "zeta": [format_rational(x) for x in doc.zeta],
    }
    if doc.nu is not None:
        obj["nu"] = [format_rational(x) for x in doc.nu]
    if doc.soliton is not None:
        s = doc.soliton
        sol = {"sigma": format_rational(s.sigma), "rho": format_rational(s.rho),
               "field": s.field if isinstance(s.field, str) else [format_rational(x) for x in s.field]}
        if s.lam is not None:
            sol["lambda"] = format_rational(s.lam)
        obj["soliton"] = sol
    return obj


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def serialize(doc: ManifoldSpecDocument) -> str:
    return canonical_json(document_to_obj(doc))


def digest(doc: ManifoldSpecDocument) -> str:
    return hashlib.sha256(serialize(doc).encode("utf-8")).hexdigest()


def builtin_example(n: int) -> ManifoldSpecDocument:
    """Frame ``e_1..e_n`` with ``e_n = zeta``, ``[e_i, e_n] = -e_i``, ``g = diag(1,..,1,-1)``.

    ``phi`` pairs consecutive vectors: ``phi e_{2k-1} = -e_{2k}``, ``phi e_{2k} = -e_{2k-1}``,
    ``phi zeta = 0``. For n = 5 this is the five-dimensional LP-Kenmotsu example.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise BadDimension(f"built-in example needs odd n >= 3, got {n}")
    metric = Matrix.diag([1] * (n - 1) + [-1])
    brackets = tuple((i, n, i, Fraction(-1)) for i in range(1, n))
    cols = []
    for j in range(n - 1):
        partner = j + 1 if j % 2 == 0 else j - 1
        cols.append([-1 if a == partner else 0 for a in range(n)])
    cols.append([0] * n)
    phi = Matrix.from_columns(cols)
    zeta = as_vector([0] * (n - 1) + [1])
    return ManifoldSpecDocument(name=f"lp-kenmotsu-{n}", dimension=n, metric=metric, brackets=brackets,
                                phi=phi, zeta=zeta)


def golden_fixture_text() -> str:
    """The shipped five-dimensional fixture file."""
    return resources.files("lpkenmotsu").joinpath("data", "lp_kenmotsu_5.json").read_text(encoding="utf-8")
