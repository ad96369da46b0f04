"""JSON bundles: parsing with eager validation, and serialization of constructed values.

A bundle is a JSON object with the sections listed in ``SECTIONS`` plus a
``tasks`` list.  Entities refer to each other by name; references are
resolved lazily but every entity is forced at parse time, so a parsed
bundle is fully validated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import exact
from .errors import DimensionCap, ENLError, ParseError, UnknownTask, ValidationError
from .lie import BilinearForm, Cobracket, LieAlgebra, dualize
from .prelie import PreLieAlgebra, left_multiplication, subadjacent
from .representations import Representation, adjoint_representation, dual_representation
from .yang_baxter import RelativeRB, RMatrix

MAX_DIM = 64

SECTIONS = ("lie_algebras", "prelie_algebras", "operators", "bilinear_forms", "cobrackets",
            "rmatrices", "representations", "relative_rb", "matched_pairs")


@dataclass
class Bundle:
    lie_algebras: dict = field(default_factory=dict)
    prelie_algebras: dict = field(default_factory=dict)
    operators: dict = field(default_factory=dict)
    bilinear_forms: dict = field(default_factory=dict)
    cobrackets: dict = field(default_factory=dict)
    rmatrices: dict = field(default_factory=dict)
    representations: dict = field(default_factory=dict)
    relative_rb: dict = field(default_factory=dict)
    matched_pairs: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)
    # operator name -> name of the space it acts on
    operator_on: dict = field(default_factory=dict)
    # cobracket name -> name of its optional operator
    cobracket_operator: dict = field(default_factory=dict)

    def get(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            raise ValidationError(f"unknown {section[:-1] if section.endswith('s') else section} "
                                  f"{name!r}")
        return table[name]

    def task(self, name: str) -> dict:
        for t in self.tasks:
            if t["name"] == name:
                return t
        raise UnknownTask(f"no task named {name!r}")


# -- parsing ------------------------------------------------------------------

class _Resolver:
    def __init__(self, raw: dict):
        self.raw = raw
        self.bundle = Bundle()
        self.active: set = set()

    def fail(self, section, name, msg):
        raise ValidationError(f"{section}.{name}: {msg}")

    def entry(self, section, name):
        table = self.raw.get(section, {})
        if not isinstance(table, dict) or name not in table:
            raise ValidationError(f"reference to unknown {section} entry {name!r}")
        ent = table[name]
        if not isinstance(ent, dict):
            self.fail(section, name, "entry must be an object")
        return ent

    def field(self, section, name, ent, key, kind=None, optional=False):
        if key not in ent:
            if optional:
                return None
            self.fail(section, name, f"missing field {key!r}")
        val = ent[key]
        if kind is not None and not isinstance(val, kind):
            self.fail(section, name, f"field {key!r} has the wrong type")
        return val

    def resolve(self, section, name):
        table = getattr(self.bundle, section)
        if name in table:
            return table[name]
        key = (section, name)
        if key in self.active:
            self.fail(section, name, "circular reference")
        self.active.add(key)
        try:
            ent = self.entry(section, name)
            try:
                value = getattr(self, "_" + section)(name, ent)
            except ValidationError:
                raise
            except ValueError as exc:
                self.fail(section, name, str(exc))
            except ENLError as exc:
                self.fail(section, name, str(exc))
        finally:
            self.active.discard(key)
        table[name] = value
        return value

    def cap(self, section, name, n):
        if n > MAX_DIM:
            raise DimensionCap(f"{section}.{name}: dimension {n} exceeds the cap of {MAX_DIM}")

    def basis(self, section, name, ent, n, default_stem):
        names = ent.get("basis")
        if names is None:
            return tuple(f"{default_stem}{i + 1}" for i in range(n))
        if (not isinstance(names, list) or len(names) != n
                or not all(isinstance(s, str) for s in names)):
            self.fail(section, name, f"basis must be a list of {n} strings")
        if len(set(names)) != n:
            self.fail(section, name, "basis names must be distinct")
        return tuple(names)

    def matrix(self, section, name, rows, shape):
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            self.fail(section, name, "matrix must be a list of rows")
        if any(not isinstance(x, str) for r in rows for x in r):
            self.fail(section, name, "matrix entries must be rational strings")
        if shape[0] == 0:
            if rows:
                self.fail(section, name, f"matrix must be {shape[0]}x{shape[1]}")
            return exact.zeros(*shape)
        M = exact.matrix(rows) if rows else exact.zeros(0, 0)
        if M.shape != shape:
            self.fail(section, name, f"matrix must be {shape[0]}x{shape[1]}, got {M.shape}")
        return M

    def entries(self, section, name, ent, key):
        rows = self.field(section, name, ent, key, list)
        for e in rows:
            if (not isinstance(e, list) or len(e) != 4 or not isinstance(e[3], str)
                    or not all(isinstance(i, int) and not isinstance(i, bool) for i in e[:3])):
                self.fail(section, name, f"entry {e!r} must be [int, int, int, \"rational\"]")
        return rows

    def space_dim(self, name):
        """Dimension of an algebra, pre-Lie algebra or representation module by name."""
        for section in ("lie_algebras", "prelie_algebras", "representations"):
            if name in self.raw.get(section, {}):
                if section == "representations":
                    return self.module_dim(name)
                return self.resolve(section, name).dim
        raise ValidationError(f"operator refers to unknown space {name!r}")

    def module_dim(self, name):
        """Module dimension read without resolving ``T`` (which may act on this module)."""
        ent = self.entry("representations", name)
        kind = ent.get("kind", "explicit")
        if kind == "explicit":
            m = self.field("representations", name, ent, "dim", int)
            self.cap("representations", name, m)
            return m
        if kind == "left_multiplication":
            return self.resolve("prelie_algebras",
                                self.field("representations", name, ent, "prelie", str)).dim
        return self.resolve("lie_algebras",
                            self.field("representations", name, ent, "algebra", str)).dim

    # section builders

    def _lie_algebras(self, name, ent):
        if "dual_of" in ent:
            cob = self.resolve("cobrackets", self.field("lie_algebras", name, ent, "dual_of", str))
            return dualize(cob)
        if "subadjacent_of" in ent:
            p = self.resolve("prelie_algebras",
                             self.field("lie_algebras", name, ent, "subadjacent_of", str))
            return subadjacent(p)
        n = ent.get("dim")
        if n is None:
            basis = self.field("lie_algebras", name, ent, "basis", list)
            n = len(basis)
        if not isinstance(n, int) or n < 0:
            self.fail("lie_algebras", name, "dim must be a non-negative integer")
        self.cap("lie_algebras", name, n)
        names = self.basis("lie_algebras", name, ent, n, "e")
        return LieAlgebra.from_brackets(names, self.entries("lie_algebras", name, ent, "brackets"))

    def _prelie_algebras(self, name, ent):
        n = ent.get("dim")
        if n is None:
            n = len(self.field("prelie_algebras", name, ent, "basis", list))
        if not isinstance(n, int) or n < 0:
            self.fail("prelie_algebras", name, "dim must be a non-negative integer")
        self.cap("prelie_algebras", name, n)
        names = self.basis("prelie_algebras", name, ent, n, "e")
        return PreLieAlgebra.from_products(names,
                                           self.entries("prelie_algebras", name, ent, "products"))

    def _operators(self, name, ent):
        on = self.field("operators", name, ent, "on", str)
        n = self.space_dim(on)
        self.bundle.operator_on[name] = on
        if "transpose_of" in ent:
            src = self.field("operators", name, ent, "transpose_of", str)
            M = exact.transpose(self.resolve("operators", src))
            if M.shape != (n, n):
                self.fail("operators", name, f"transposed operator does not act on {on!r}")
            return M
        return self.matrix("operators", name, self.field("operators", name, ent, "matrix", list),
                           (n, n))

    def _bilinear_forms(self, name, ent):
        g = self.resolve("lie_algebras", self.field("bilinear_forms", name, ent, "on", str))
        S = self.matrix("bilinear_forms", name,
                        self.field("bilinear_forms", name, ent, "matrix", list), (g.dim, g.dim))
        return BilinearForm(g, S)

    def _cobrackets(self, name, ent):
        g = self.resolve("lie_algebras", self.field("cobrackets", name, ent, "on", str))
        op = self.field("cobrackets", name, ent, "operator", str, optional=True)
        if op is not None:
            M = self.resolve("operators", op)
            if M.shape != (g.dim, g.dim):
                self.fail("cobrackets", name, f"operator {op!r} does not act on the algebra")
            self.bundle.cobracket_operator[name] = op
        return Cobracket.from_entries(g, self.entries("cobrackets", name, ent, "entries"))

    def _rmatrices(self, name, ent):
        g = self.resolve("lie_algebras", self.field("rmatrices", name, ent, "on", str))
        return RMatrix(g, self.matrix("rmatrices", name,
                                      self.field("rmatrices", name, ent, "matrix", list),
                                      (g.dim, g.dim)))

    def _representations(self, name, ent):
        sec = "representations"
        kind = ent.get("kind", "explicit")
        T_name = self.field(sec, name, ent, "T", str, optional=True)
        if kind == "left_multiplication":
            p = self.resolve("prelie_algebras", self.field(sec, name, ent, "prelie", str))
            R = left_multiplication(p)
        else:
            g = self.resolve("lie_algebras", self.field(sec, name, ent, "algebra", str))
            if kind == "adjoint":
                R = adjoint_representation(g)
            elif kind == "coadjoint":
                R = dual_representation(adjoint_representation(g))
            elif kind == "explicit":
                m = self.field(sec, name, ent, "dim", int)
                if m < 0:
                    self.fail(sec, name, "dim must be non-negative")
                self.cap(sec, name, m)
                rho = self.field(sec, name, ent, "rho", list)
                if len(rho) != g.dim:
                    self.fail(sec, name, f"rho needs {g.dim} matrices, got {len(rho)}")
                mats = tuple(self.matrix(sec, name, r, (m, m)) for r in rho)
                names = self.basis(sec, name, ent, m, "w")
                R = Representation(g, mats, None, names)
            else:
                self.fail(sec, name, f"unknown representation kind {kind!r}")
        if T_name is not None:
            # T may be declared on this representation; resolve after the module exists
            self.bundle.representations[name] = R
            T = self.resolve("operators", T_name)
            if T.shape != (R.dimW, R.dimW):
                self.fail(sec, name, f"T {T_name!r} does not act on the module")
            R = R.with_T(T)
        return R

    def _relative_rb(self, name, ent):
        R = self.resolve("representations", self.field("relative_rb", name, ent,
                                                       "representation", str))
        K = self.matrix("relative_rb", name, self.field("relative_rb", name, ent, "K", list),
                        (R.algebra.dim, R.dimW))
        return RelativeRB(R, K)

    def _matched_pairs(self, name, ent):
        from .doubles import Bialgebra, MatchedPair, matched_pair_from_bialgebra

        sec = "matched_pairs"
        if "from_bialgebra" in ent:
            cname = self.field(sec, name, ent, "from_bialgebra", str)
            cob = self.resolve("cobrackets", cname)
            op = self.bundle.cobracket_operator.get(cname)
            E = None if op is None else self.resolve("operators", op)
            return matched_pair_from_bialgebra(Bialgebra(cob.on, cob, E))
        g = self.resolve("lie_algebras", self.field(sec, name, ent, "g", str))
        h = self.resolve("lie_algebras", self.field(sec, name, ent, "h", str))
        rho = self.resolve("representations", self.field(sec, name, ent, "rho", str))
        mu = self.resolve("representations", self.field(sec, name, ent, "mu", str))
        if rho.algebra != g or mu.algebra != h:
            self.fail(sec, name, "rho must be a representation of g and mu one of h")
        ops = [self.resolve("operators", ent[k]) if ent.get(k) is not None else None
               for k in ("Eg", "Eh")]
        return MatchedPair(g, h, rho, mu, *ops)


def _normalize_tasks(raw_tasks):
    if raw_tasks is None:
        return []
    if isinstance(raw_tasks, dict):
        items = []
        for name, t in raw_tasks.items():
            if not isinstance(t, dict):
                raise ValidationError(f"tasks.{name}: task must be an object")
            items.append(dict(t, name=name))
        raw_tasks = items
    if not isinstance(raw_tasks, list):
        raise ValidationError("tasks must be a list or an object")
    seen = set()
    out = []
    for i, t in enumerate(raw_tasks):
        if not isinstance(t, dict) or not isinstance(t.get("kind"), str):
            raise ValidationError(f"tasks[{i}]: task needs a string 'kind'")
        name = t.get("name", f"task{i + 1}")
        if not isinstance(name, str) or name in seen:
            raise ValidationError(f"tasks[{i}]: task names must be distinct strings")
        seen.add(name)
        out.append(dict(t, name=name))
    return out


def parse_bundle(text) -> Bundle:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"bundle is not UTF-8: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("bundle must be a JSON object")
    unknown = set(raw) - set(SECTIONS) - {"tasks"}
    if unknown:
        raise ValidationError(f"unknown bundle sections: {sorted(unknown)}")
    for section in SECTIONS:
        if not isinstance(raw.get(section, {}), dict):
            raise ValidationError(f"section {section!r} must be an object")
    res = _Resolver(raw)
    for section in SECTIONS:
        for name in raw.get(section, {}):
            res.resolve(section, name)
    res.bundle.tasks = _normalize_tasks(raw.get("tasks"))
    return res.bundle


# -- serialization --------------------------------------------------------------

def q(x) -> str:
    return exact.format_rational(x)


def matrix_json(M) -> list:
    return [[q(x) for x in row] for row in np.asarray(M)]


def lie_json(g: LieAlgebra) -> dict:
    return {"basis": list(g.names), "brackets": [[i, j, k, q(c)] for i, j, k, c in g.entries()]}


def prelie_json(p: PreLieAlgebra) -> dict:
    return {"basis": list(p.names), "products": [[i, j, k, q(c)] for i, j, k, c in p.entries()]}


def operator_json(M, on: str) -> dict:
    return {"on": on, "matrix": matrix_json(M)}


def cobracket_json(delta: Cobracket, on: str, operator: str | None = None) -> dict:
    out = {"on": on, "entries": [[k, i, j, q(c)] for k, i, j, c in delta.entries()]}
    if operator is not None:
        out["operator"] = operator
    return out


def representation_json(R: Representation, algebra: str, T: str | None = None) -> dict:
    out = {"algebra": algebra, "dim": R.dimW, "basis": list(R.names),
           "rho": [matrix_json(m) for m in R.rho]}
    if T is not None:
        out["T"] = T
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


class Fragment:
    """Accumulates constructed values as a parseable bundle document."""

    def __init__(self):
        self.doc: dict = {}

    def add(self, section: str, name: str, value: dict):
        self.doc.setdefault(section, {})[name] = value
        return name

    def lie(self, name, g):
        return self.add("lie_algebras", name, lie_json(g))

    def prelie(self, name, p):
        return self.add("prelie_algebras", name, prelie_json(p))

    def operator(self, name, M, on):
        return self.add("operators", name, operator_json(M, on))

    def form(self, name, S, on):
        return self.add("bilinear_forms", name, {"on": on, "matrix": matrix_json(S)})

    def rmatrix(self, name, r, on):
        return self.add("rmatrices", name, {"on": on, "matrix": matrix_json(r)})

    def cobracket(self, name, delta, on, operator=None):
        return self.add("cobrackets", name, cobracket_json(delta, on, operator))

    def representation(self, name, R, algebra, T=None):
        return self.add("representations", name, representation_json(R, algebra, T))

    def text(self) -> str:
        return dumps(self.doc)
