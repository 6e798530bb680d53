"""Catalog rows: loading, parameter samples and instantiation."""
from __future__ import annotations

import json
import random
import re
import zlib
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources

from ..document import AlgebraDocument, build_algebra, build_forms
from ..expr import parse_scalar
from ..field import QQ

_COND = re.compile(r"^(.*?)\s*(!=|>=|<=|==|>|<)\s*(.*)$")


@dataclass
class CatalogEntry:
    id: str
    table: int
    name: str
    document: AlgebraDocument
    claim: str                      # "form" or "none"
    odd_brackets: str               # "zero" or "nonzero"
    param_names: list = dc_field(default_factory=list)
    samples: list = dc_field(default_factory=list)
    conditions: list = dc_field(default_factory=list)
    note: str = ""
    printed: dict = dc_field(default_factory=dict)
    printed_row: object = True      # True, False (row added here) or the id of the row it splits from

    @property
    def has_parameters(self):
        return bool(self.param_names)

    @property
    def form_specs(self):
        return self.document.forms

    def condition_holds(self, point) -> bool:
        env = dict(zip(self.param_names, (QQ(x) for x in point)))
        return all(check_condition(c, env) for c in self.conditions)

    def sample_points(self, samples: int = 3, seed: int = 0) -> list:
        """The listed samples first, then seeded random rationals meeting the conditions."""
        if not self.param_names:
            return [()]
        pts = [tuple(QQ(x) for x in s) for s in self.samples][:max(samples, 1)]
        rng = random.Random(seed * 1000003 + zlib.crc32(self.id.encode()))
        tries = 0
        while len(pts) < samples and tries < 10000:
            tries += 1
            pt = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in self.param_names)
            if pt not in pts and self.condition_holds(pt):
                pts.append(pt)
        return pts

    def algebra(self, point=()):
        return build_algebra(self.document, dict(zip(self.param_names, point)))

    def forms(self, point=()):
        return build_forms(self.document, dict(zip(self.param_names, point)))

    def printed_document(self):
        """The row exactly as printed, when it differs from the stored one."""
        if not self.printed:
            return None
        d = self.document
        return AlgebraDocument(d.name, d.field, d.even_basis, d.odd_basis,
                               self.printed.get("brackets", d.brackets), self.printed.get("forms", d.forms))


def check_condition(text: str, env) -> bool:
    m = _COND.match(text.strip())
    if not m:
        raise ValueError("cannot read condition %r" % text)
    lhs = parse_scalar(m.group(1), QQ, env).constant_value()
    rhs = parse_scalar(m.group(3), QQ, env).constant_value()
    op = m.group(2)
    return {"!=": lhs != rhs, "==": lhs == rhs, ">": lhs > rhs, "<": lhs < rhs,
            ">=": lhs >= rhs, "<=": lhs <= rhs}[op]


def _entry(row) -> CatalogEntry:
    doc = AlgebraDocument(row["name"], QQ, row["even_basis"], row["odd_basis"], row["brackets"],
                          row.get("forms", []))
    ap = row.get("algebra_parameters", {})
    return CatalogEntry(row["id"], row["table"], row["name"], doc, row["claim"], row["odd_brackets"],
                        list(ap.get("names", [])), [list(s) for s in ap.get("samples", [])],
                        list(ap.get("conditions", [])), row.get("note", ""), row.get("printed", {}),
                        row.get("printed_row", True))


_CACHE = None


def load_catalog(tables=None) -> list:
    """All catalog rows (optionally only some tables), in file order."""
    global _CACHE
    if _CACHE is None:
        text = resources.files(__package__).joinpath("data/tables.json").read_text(encoding="utf-8")
        _CACHE = [_entry(r) for r in json.loads(text)["entries"]]
    if tables is None:
        return list(_CACHE)
    tables = {int(t) for t in ([tables] if isinstance(tables, int) else tables)}
    return [e for e in _CACHE if e.table in tables]


def get_entry(key: str) -> CatalogEntry:
    for e in load_catalog():
        if e.id == key or e.name == key:
            return e
    raise KeyError(key)


def instantiate(entry: CatalogEntry, point=()):
    """(algebra, [FormFamily]) at one algebra-parameter point."""
    return entry.algebra(point), entry.forms(point)
