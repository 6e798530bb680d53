"""JSON interchange documents for algebras, forms, subspaces and connections.

    {"name": "D^5", "field": "Q",
     "even_basis": ["e1", "e2"], "odd_basis": ["e3", "e4"],
     "brackets": [{"x": "e1", "y": "e3", "value": {"e3": "1"}}],
     "forms": [{"name": "omega", "parity": "odd",
                "wedge_expression": "lam*e1^e4 + mu*(e1^e3 + e2^e4)",
                "parameters": ["lam", "mu"], "constraints": ["mu"]}],
     "subspaces": {"a": ["e2", "e3"]}}

Bracket values and vector entries may be expressions in the document's
"parameters" map (used by the catalog for families such as D^7_{pq}).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .algebra import LieSuperalgebra, SuperDim, validate_algebra
from .expr import parse_number, parse_vector
from .field import Field, field_from_name
from .forms import FormFamily

FORMAT = "superfrob-algebra/1"


class DocumentError(ValueError):
    def __init__(self, message, where=None, violations=None):
        super().__init__(message if where is None else "%s: %s" % (where, message))
        self.where = where
        self.violations = violations or []


@dataclass
class AlgebraDocument:
    name: str
    field: Field
    even_basis: list
    odd_basis: list
    brackets: list
    forms: list = dc_field(default_factory=list)
    subspaces: dict = dc_field(default_factory=dict)
    parameters: dict = dc_field(default_factory=dict)
    extra: dict = dc_field(default_factory=dict)

    @property
    def basis(self):
        return list(self.even_basis) + list(self.odd_basis)

    @property
    def sdim(self):
        return SuperDim(len(self.even_basis), len(self.odd_basis))


def _need(obj, key, where, kind=None):
    if key not in obj:
        raise DocumentError("missing field %r" % key, where)
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise DocumentError("field %r must be %s" % (key, kind.__name__), where)
    return val


def parse_document(data) -> AlgebraDocument:
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise DocumentError("invalid JSON (line %d, column %d): %s" % (e.lineno, e.colno, e.msg))
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    try:
        fld = field_from_name(str(data.get("field", "Q")))
    except ValueError as e:
        raise DocumentError(str(e), "field")
    even = _need(data, "even_basis", "document", list)
    odd = _need(data, "odd_basis", "document", list)
    names = list(even) + list(odd)
    if len(set(names)) != len(names):
        raise DocumentError("basis names must be distinct", "even_basis/odd_basis")
    brackets = data.get("brackets", [])
    if not isinstance(brackets, list):
        raise DocumentError("field 'brackets' must be a list", "document")
    for k, b in enumerate(brackets):
        where = "brackets[%d]" % k
        if not isinstance(b, dict):
            raise DocumentError("bracket must be an object", where)
        for key in ("x", "y"):
            if _need(b, key, where) not in names:
                raise DocumentError("unknown basis vector %r" % b[key], where)
        if not isinstance(_need(b, "value", where), dict):
            raise DocumentError("value must map basis names to numbers", where)
    forms = data.get("forms", [])
    for k, f in enumerate(forms):
        where = "forms[%d]" % k
        if "wedge_expression" not in f and "value" not in f:
            raise DocumentError("form needs 'wedge_expression' or 'value'", where)
    known = {"name", "field", "even_basis", "odd_basis", "brackets", "forms", "subspaces",
             "parameters", "format"}
    extra = {k: v for k, v in data.items() if k not in known}
    return AlgebraDocument(str(data.get("name", "")), fld, list(even), list(odd), list(brackets),
                           list(forms), dict(data.get("subspaces", {})),
                           {str(k): v for k, v in data.get("parameters", {}).items()}, extra)


def _env(doc: AlgebraDocument, overrides=None):
    env = {}
    for k, v in doc.parameters.items():
        env[k] = parse_number(str(v), doc.field)
    for k, v in (overrides or {}).items():
        env[k] = doc.field(v)
    return env


def build_algebra(doc: AlgebraDocument, params=None, validate: bool = True) -> LieSuperalgebra:
    """The algebra of a document; raises DocumentError on any axiom violation."""
    f = doc.field
    names = doc.basis
    idx = {nm: i for i, nm in enumerate(names)}
    env = _env(doc, params)
    n = len(names)
    given = {}
    for k, b in enumerate(doc.brackets):
        where = "brackets[%d]" % k
        i, j = idx[b["x"]], idx[b["y"]]
        if i > j:
            raise DocumentError("brackets must be listed with x before y in the basis order", where)
        if (i, j) in given:
            raise DocumentError("duplicate bracket", where)
        vec = [f.zero] * n
        for key, val in b["value"].items():
            if key not in idx:
                raise DocumentError("unknown basis vector %r" % key, where)
            try:
                vec[idx[key]] = vec[idx[key]] + parse_number(str(val), f, env)
            except (ValueError, ZeroDivisionError) as e:
                raise DocumentError(str(e), where)
        given[(i, j)] = vec
    g = LieSuperalgebra.from_brackets(len(doc.even_basis), len(doc.odd_basis), given, f, names, doc.name)
    if validate:
        bad = validate_algebra(g)
        if bad:
            first = bad[0]
            trip = ", ".join(names[t] for t in first.indices)
            raise DocumentError("%s violated at (%s)" % (first.kind, trip), "brackets", bad)
    return g


def build_forms(doc: AlgebraDocument, params=None) -> list:
    """FormFamily objects for each form of the document."""
    f = doc.field
    env = _env(doc, params)
    out = []
    for k, spec in enumerate(doc.forms):
        where = "forms[%d]" % k
        fparams = list(spec.get("parameters", []))
        try:
            if "wedge_expression" in spec:
                fam = FormFamily.from_wedges(spec["wedge_expression"], doc.sdim, f, doc.basis, fparams,
                                             spec.get("constraints", []), env, spec.get("name", ""))
            else:
                V = [[parse_number(str(x), f, env) for x in row] for row in spec["value"]]
                if len(V) != doc.sdim.n or any(len(r) != doc.sdim.n for r in V):
                    raise ValueError("value matrix has the wrong size")
                from .poly import Poly
                M = [[Poly.const(f, 0, x) for x in row] for row in V]
                fam = FormFamily(doc.sdim, f, [], M, [], spec.get("name", ""), "")
        except (ValueError, ZeroDivisionError, KeyError) as e:
            raise DocumentError(str(e), where)
        fam.claimed_parity = spec.get("parity")
        out.append(fam)
    return out


def build_subspaces(doc: AlgebraDocument, params=None) -> dict:
    env = _env(doc, params)
    out = {}
    for key, vecs in doc.subspaces.items():
        try:
            out[key] = [parse_vector(str(v), doc.field, doc.basis, env) for v in vecs]
        except (ValueError, ZeroDivisionError) as e:
            raise DocumentError(str(e), "subspaces.%s" % key)
    return out


def load_document(path) -> AlgebraDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


# emitting

def format_vector(v, names, field) -> dict:
    return {names[i]: field.format(x) for i, x in enumerate(v) if x}


def emit_document(g: LieSuperalgebra, forms=(), subspaces=None, name=None) -> dict:
    """Canonical document: brackets with x <= y in basis order, rationals as 'p/q'."""
    f = g.field
    names = g.names
    ne = g.sdim.n_even
    doc = {
        "format": FORMAT,
        "name": g.name if name is None else name,
        "field": f.name,
        "even_basis": names[:ne],
        "odd_basis": names[ne:],
        "brackets": [{"x": names[i], "y": names[j], "value": format_vector(v, names, f)}
                     for i, j, v in g.nonzero_brackets()],
        "forms": [],
        "subspaces": {},
    }
    for k, w in enumerate(forms):
        if isinstance(w, FormFamily):
            entry = {"name": w.name or "form%d" % (k + 1), "parity": _parity_label(w.parity()),
                     "wedge_expression": w.expression, "parameters": list(w.params),
                     "constraints": [c.format(w.params) for c in w.constraints]}
        else:
            entry = {"name": w.name or "form%d" % (k + 1), "parity": _parity_label(w.parity()),
                     "value": [[f.format(x) for x in row] for row in w.V]}
        doc["forms"].append(entry)
    for key, vecs in (subspaces or {}).items():
        doc["subspaces"][key] = [vector_expression(v, names, f) for v in vecs]
    return doc


def vector_expression(v, names, field) -> str:
    parts = []
    for i, x in enumerate(v):
        if x:
            parts.append("%s*%s" % (field.format(x), names[i]) if x != field.one else names[i])
    return " + ".join(parts) if parts else "0"


def _parity_label(p):
    return {0: "even", 1: "odd", "mixed": "NH", "zero": "zero"}[p]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# connections and cochains for the T* commands

def parse_connection(data, h: LieSuperalgebra):
    """{"connection": [{"x": "e1", "y": "e2", "value": {"e2": "1"}}]}: nabla_x y = value."""
    from .lagrangian import Connection
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    idx = {nm: i for i, nm in enumerate(h.names)}
    vals = {}
    for k, item in enumerate(data.get("connection", [])):
        where = "connection[%d]" % k
        try:
            i, j = idx[item["x"]], idx[item["y"]]
            vals[(i, j)] = {idx[key]: parse_number(str(v), h.field) for key, v in item["value"].items()}
        except KeyError as e:
            raise DocumentError("unknown or missing name %s" % e, where)
    return Connection.from_dict(h, vals)


def parse_cocycle(data, h: LieSuperalgebra):
    """{"cocycle": [{"x": "u", "y": "v", "value": {"u": "1"}}]}, value in module coordinates.

    Module coordinates are named after the basis of h (the dual vector, or
    its parity shift). Only x <= y is listed; the rest follows by
    super anti-symmetry.
    """
    from .field import sign
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    idx = {nm: i for i, nm in enumerate(h.names)}
    n = h.n
    f = h.field
    A = [[[f.zero] * n for _ in range(n)] for _ in range(n)]
    for k, item in enumerate(data.get("cocycle", [])):
        where = "cocycle[%d]" % k
        try:
            i, j = idx[item["x"]], idx[item["y"]]
            if i > j:
                raise DocumentError("list x before y in the basis order", where)
            for key, v in item["value"].items():
                x = parse_number(str(v), f)
                A[i][j][idx[key]] = A[i][j][idx[key]] + x
                if i != j:
                    A[j][i][idx[key]] = A[j][i][idx[key]] - sign(h.parity(i) * h.parity(j)) * x
        except KeyError as e:
            raise DocumentError("unknown or missing name %s" % e, where)
    return A
