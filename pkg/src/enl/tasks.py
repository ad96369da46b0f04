"""Named-task dispatch over a parsed bundle, and report rendering."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import exact
from .bundle import Bundle, Fragment, matrix_json, q
from .doubles import (Bialgebra, ManinTripleInput, bialgebra_hierarchy, bicrossed_product,
                      check_bialgebra, check_manin_triple, check_matched_pair, concomitant_report,
                      deform_matched_pair, double_quasitriangular, drinfeld_double)
from .errors import ENLError, UnknownTask, ValidationError
from .lie import check_cobracket, check_invariant_form, check_leibniz, check_lie, dualize
from .operators import (QuadraticENLRB, averaging_product, centroid_basis, check_averaging,
                        check_enl_rb, check_equivariant, check_quadratic_enl, check_rota_baxter,
                        deformed_bracket, hierarchy, nijenhuis_torsion)
from .prelie import (canonical_r_prelie, check_pre_enl, check_prelie, prelie_from_relrb,
                     prelie_strong_basis)
from .representations import check_en_representation, check_representation, semidirect_sum
from .verdict import Verdict, failed, passed, render
from .yang_baxter import (check_en_rmatrix, check_relative_rb, cobracket_from_r,
                          descendent_enl, dual_bracket_from_r, lift_r_from_relrb, rb_to_rmatrix,
                          schouten)


@dataclass
class Report:
    task: str
    kind: str
    label: str
    status: str  # PASS | FAIL | ERROR
    verdict: Verdict | None = None
    outputs: dict = field(default_factory=dict)
    message: str | None = None
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.status == "PASS"

    def text(self) -> str:
        line = f"{self.status} {self.label}"
        v = self.verdict
        if self.status == "FAIL" and v is not None:
            if v.labels:
                line += " witness=[" + ",".join(v.labels) + "]"
                if v.got is not None:
                    line += f" got={render(v.got, v.names)} expected={render(v.expected, v.names)}"
            else:
                line += f" clause={v.clause}"
        if self.status == "ERROR" and self.message:
            line += f" {self.message}"
        return line

    def as_json(self, timing=False) -> dict:
        out = {"task": self.task, "kind": self.kind, "label": self.label, "status": self.status}
        v = self.verdict
        if v is not None and not v.ok:
            out["clause"] = v.clause
            out["witness"] = {"indices": list(v.witness), "labels": list(v.labels),
                              "got": _jsonable(v.got), "expected": _jsonable(v.expected)}
        if self.outputs:
            out["outputs"] = self.outputs
        if self.extra:
            out["details"] = self.extra
        if self.message:
            out["message"] = self.message
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out


def _jsonable(x):
    if x is None:
        return None
    if isinstance(x, np.ndarray):
        if x.ndim == 0:
            return q(x.item())
        return [_jsonable(v) for v in x]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return q(x)


# -- parameter helpers -----------------------------------------------------------

class _Ctx:
    def __init__(self, bundle: Bundle, task: dict):
        self.b = bundle
        self.t = task
        self.refs: list = []

    def param(self, key, kind=str, default=None, required=True):
        if key not in self.t:
            if required and default is None:
                raise ValidationError(f"task {self.t['name']!r} needs parameter {key!r}")
            return default
        val = self.t[key]
        if key in ("level", "mode") and isinstance(val, str):
            self.refs.append(val)
        if kind is not None and not isinstance(val, kind):
            raise ValidationError(f"task {self.t['name']!r}: parameter {key!r} has the wrong type")
        return val

    def ref(self, section, key, required=True):
        name = self.param(key, str, required=required)
        if name is None:
            return None
        self.refs.append(name)
        return self.b.get(section, name)

    def operator(self, key="operator", required=True):
        return self.ref("operators", key, required)

    def bialgebra(self, key="bialgebra"):
        name = self.param(key, str)
        cob = self.b.get("cobrackets", name)
        self.refs.append(name)
        op = self.t.get("operator", self.b.cobracket_operator.get(name))
        if "operator" in self.t:
            self.refs.append(op)
        E = None if op is None else self.b.get("operators", op)
        return Bialgebra(cob.on, cob, E), name

    def rational(self, key, default=None):
        val = self.param(key, (str, int), default=default)
        return exact.parse_rational(val)

    def vectors(self, key):
        rows = self.param(key, list)
        return [exact.vector(r) for r in rows]


def _verdict_outcome(v: Verdict):
    return ("PASS" if v else "FAIL"), v


# -- check tasks ---------------------------------------------------------------

def _t_check_lie(c):
    return check_lie(c.ref("lie_algebras", "algebra"))


def _t_check_equivariant(c):
    return check_equivariant(c.ref("lie_algebras", "algebra"), c.operator())


def _t_torsion(c):
    g, N = c.ref("lie_algebras", "algebra"), c.operator()
    T = nijenhuis_torsion(g, N)
    idx = exact.first_nonzero(T)
    if idx is None:
        return passed("torsion")
    return failed("torsion", "torsion vanishes", idx[:2], g.label(idx[:2]), T[idx[:2]],
                  exact.zeros(g.dim), g.names)


def _t_check_averaging(c):
    return check_averaging(c.ref("lie_algebras", "algebra"), c.operator())


def _t_check_rota_baxter(c):
    return check_rota_baxter(c.ref("lie_algebras", "algebra"), c.operator(),
                             c.rational("weight", "0"))


def _t_check_invariant_form(c):
    return check_invariant_form(c.ref("bilinear_forms", "form"))


def _t_check_quadratic_enl(c):
    S = c.ref("bilinear_forms", "form")
    return check_quadratic_enl(S.on, c.operator(), S)


def _t_check_leibniz(c):
    g = c.ref("lie_algebras", "algebra")
    return check_leibniz(averaging_product(g, c.operator()), g.names)


def _t_check_cobracket(c):
    return check_cobracket(c.ref("cobrackets", "cobracket"))


def _t_check_representation(c):
    return check_representation(c.ref("representations", "representation"))


def _t_check_en_representation(c):
    R = c.ref("representations", "representation")
    return check_en_representation(R, c.operator(), c.param("mode", default="equivariant"))


def _t_check_bialgebra(c):
    b, _ = c.bialgebra()
    level = c.param("level", default="lie")
    v = check_bialgebra(b, level)
    if level == "nl" and b.E is not None:
        _, weak_only, _, _ = concomitant_report(b, b.E)
        return v, {"concomitant_weak_reading_only": weak_only}
    return v


def _t_check_matched_pair(c):
    return check_matched_pair(c.ref("matched_pairs", "matched_pair"),
                              c.param("level", default="lie"))


def _t_check_manin_triple(c):
    if "bialgebra" in c.t:
        b, _ = c.bialgebra()
        d, op, S = drinfeld_double(b)
        if op is None:
            raise ValidationError("the double carries no ENL operator")
        n = b.g.dim
        I = exact.identity(2 * n)
        mt = ManinTripleInput(d, op, S, [I[:, i] for i in range(n)],
                              [I[:, i] for i in range(n, 2 * n)])
    else:
        S = c.ref("bilinear_forms", "form")
        mt = ManinTripleInput(S.on, c.operator(), S, c.vectors("g_basis"), c.vectors("h_basis"))
    return check_manin_triple(mt)


def _t_check_en_rmatrix(c):
    return check_en_rmatrix(c.ref("rmatrices", "rmatrix"), c.operator(),
                            bool(c.param("en_weak", bool, default=False, required=False)))


def _t_check_relative_rb(c):
    rb = c.ref("relative_rb", "relative_rb")
    level = c.param("level", default="en")
    E = c.operator(required=level == "en")
    return check_relative_rb(rb, E, level)


def _t_check_prelie(c):
    return check_prelie(c.ref("prelie_algebras", "prelie"))


def _t_check_pre_enl(c):
    return check_pre_enl(c.ref("prelie_algebras", "prelie"), c.operator(),
                         c.param("mode", default="strong"))


def _quadratic_rb(c):
    S = c.ref("bilinear_forms", "form")
    B = c.ref("operators", "B")
    E = c.ref("operators", "E")
    return QuadraticENLRB(S.on, B, S, E, c.rational("weight", "1"))


def _t_check_enl_rb(c):
    return check_enl_rb(_quadratic_rb(c))


def _t_schouten(c):
    rm = c.ref("rmatrices", "rmatrix")
    sch = schouten(rm)
    idx = exact.first_nonzero(sch)
    if idx is None:
        return passed("schouten")
    return failed("schouten", "cybe", idx, rm.on.label(idx), sch[idx], exact.ZERO)


# -- construct tasks -------------------------------------------------------------

def _t_dualize(c, out: Fragment):
    name = c.param("cobracket")
    cob = c.ref("cobrackets", "cobracket")
    out.lie(f"{name}_dual", dualize(cob))
    return passed("dualize")


def _t_centroid(c, out: Fragment):
    alg = c.param("algebra")
    g = c.ref("lie_algebras", "algebra")
    basis = centroid_basis(g)
    for k, E in enumerate(basis):
        out.operator(f"{alg}_centroid_{k + 1}", E, alg)
    return passed("centroid", count=len(basis))


def _t_prelie_strong(c, out: Fragment):
    name = c.param("prelie")
    p = c.ref("prelie_algebras", "prelie")
    basis = prelie_strong_basis(p)
    for k, E in enumerate(basis):
        out.operator(f"{name}_strong_{k + 1}", E, name)
    return passed("prelie_strong", count=len(basis))


def _t_deform(c, out: Fragment):
    if "matched_pair" in c.t:
        mp = c.ref("matched_pairs", "matched_pair")
        deformed, v = deform_matched_pair(mp)
        name = c.param("matched_pair")
        out.lie(f"{name}_g_deformed", deformed.g)
        out.lie(f"{name}_h_deformed", deformed.h)
        return v
    alg = c.param("algebra")
    g = c.ref("lie_algebras", "algebra")
    out.lie(f"{alg}_deformed", deformed_bracket(g, c.operator(), c.param("mode", default="general")))
    return passed("deform")


def _t_hierarchy(c, out: Fragment):
    depth = c.param("depth", int, default=2)
    if "bialgebra" in c.t:
        b, name = c.bialgebra()
        verdicts = bialgebra_hierarchy(b, depth, c.param("level", default="enl"))
        for k, v in enumerate(verdicts, 1):
            if not v:
                return failed("hierarchy", f"level {k} Lie bialgebra: {v.clause}", v.witness,
                              v.labels, v.got, v.expected, v.names)
        return passed("hierarchy", levels=depth)
    alg = c.param("algebra")
    g = c.ref("lie_algebras", "algebra")
    for k, (gk, Ek) in enumerate(hierarchy(g, c.operator(), depth), 1):
        out.lie(f"{alg}_level{k}", gk)
        out.operator(f"{alg}_level{k}_E", Ek, f"{alg}_level{k}")
        for v in (check_lie(gk), check_equivariant(gk, Ek)):
            if not v:
                return failed("hierarchy", f"level {k}: {v.clause}", v.witness, v.labels,
                              v.got, v.expected, v.names)
    return passed("hierarchy", levels=depth)


def _t_double(c, out: Fragment):
    b, name = c.bialgebra()
    d, op, S = drinfeld_double(b)
    dn = out.lie(f"{name}_double", d)
    out.form(f"{name}_double_pairing", S.S, dn)
    v = check_lie(d)
    if not v:
        return v
    v = check_invariant_form(S)
    if not v:
        return v
    if op is not None:
        out.operator(f"{name}_double_E", op, dn)
        v = check_quadratic_enl(d, op, S)
        if not v:
            return v
        r, dstar, qv = double_quasitriangular(b)
        out.rmatrix(f"{name}_double_r", r, dn)
        out.lie(f"{name}_double_dual", dstar)
        return qv
    return passed("double")


def _t_bicross(c, out: Fragment):
    name = c.param("matched_pair")
    d, op = bicrossed_product(c.ref("matched_pairs", "matched_pair"))
    dn = out.lie(f"{name}_bicrossed", d)
    v = check_lie(d)
    if op is not None:
        out.operator(f"{name}_bicrossed_E", op, dn)
        v = v and check_equivariant(d, op)
    return v


def _t_semidirect(c, out: Fragment):
    alg = c.param("algebra")
    g = c.ref("lie_algebras", "algebra")
    R = c.ref("representations", "representation")
    d, op = semidirect_sum(g, c.operator(), R)
    dn = out.lie(f"{alg}_semidirect", d)
    out.operator(f"{alg}_semidirect_E", op, dn)
    v = check_lie(d)
    return v if not v else check_equivariant(d, op)


def _t_descendent(c, out: Fragment):
    name = c.param("relative_rb")
    rb = c.ref("relative_rb", "relative_rb")
    E = c.operator()
    w, T, hom = descendent_enl(rb, E)
    wn = out.lie(f"{name}_descendent", w)
    out.operator(f"{name}_descendent_T", T, wn)
    p, _ = prelie_from_relrb(rb, E)
    out.prelie(f"{name}_prelie", p)
    for v in (check_lie(w), check_equivariant(w, T), hom):
        if not v:
            return v
    return passed("descendent")


def _t_rbs_rmatrix(c, out: Fragment):
    t = _quadratic_rb(c)
    alg = c.refs[0]
    rm = rb_to_rmatrix(t)
    out.rmatrix(f"{alg}_rbs", rm.r, c.b.operator_on.get(c.param("B"), alg))
    if not exact.is_zero(schouten(rm)):
        return failed("rbs_rmatrix", "cybe")
    v = check_bialgebra(Bialgebra(t.g, cobracket_from_r(rm), t.E), "enl")
    if not v:
        return v
    _, fact = dual_bracket_from_r(rm)
    return fact


def _t_rk_lift(c, out: Fragment):
    name = c.param("relative_rb")
    double, Ehat, rK, v = lift_r_from_relrb(c.ref("relative_rb", "relative_rb"), c.operator())
    dn = out.lie(f"{name}_lift", double)
    out.operator(f"{name}_lift_E", Ehat, dn)
    out.rmatrix(f"{name}_lift_r", rK.r, dn)
    return v


def _t_canonical_r(c, out: Fragment):
    name = c.param("prelie")
    double, Ehat, r, v = canonical_r_prelie(c.ref("prelie_algebras", "prelie"), c.operator())
    dn = out.lie(f"{name}_double", double)
    out.operator(f"{name}_double_E", Ehat, dn)
    out.rmatrix(f"{name}_double_r", r.r, dn)
    return v


CHECKS = {
    "check_lie": _t_check_lie, "check_equivariant": _t_check_equivariant, "torsion": _t_torsion,
    "check_averaging": _t_check_averaging, "check_rota_baxter": _t_check_rota_baxter,
    "check_invariant_form": _t_check_invariant_form,
    "check_quadratic_enl": _t_check_quadratic_enl, "check_leibniz": _t_check_leibniz,
    "check_cobracket": _t_check_cobracket, "check_representation": _t_check_representation,
    "check_en_representation": _t_check_en_representation,
    "check_bialgebra": _t_check_bialgebra, "check_matched_pair": _t_check_matched_pair,
    "check_manin_triple": _t_check_manin_triple, "check_en_rmatrix": _t_check_en_rmatrix,
    "check_relative_rb": _t_check_relative_rb, "check_prelie": _t_check_prelie,
    "check_pre_enl": _t_check_pre_enl, "check_enl_rb": _t_check_enl_rb, "schouten": _t_schouten,
}

CONSTRUCTS = {
    "double": _t_double, "bicross": _t_bicross, "semidirect": _t_semidirect,
    "descendent": _t_descendent, "hierarchy": _t_hierarchy, "rbs_rmatrix": _t_rbs_rmatrix,
    "rk_lift": _t_rk_lift, "canonical_r": _t_canonical_r, "centroid": _t_centroid,
    "dualize": _t_dualize, "deform": _t_deform, "prelie_strong": _t_prelie_strong,
}

KINDS = tuple(CHECKS) + tuple(CONSTRUCTS)


def _label(task: dict, refs: list) -> str:
    return f"{task['kind']}({','.join(refs)})"


def run_task(bundle: Bundle, task) -> Report:
    """Run one task (by name or as a task dict) and capture its outcome."""
    if isinstance(task, str):
        task = bundle.task(task)
    kind = task.get("kind")
    c = _Ctx(bundle, task)
    start = time.perf_counter()
    outputs, extra = {}, {}
    try:
        if kind in CHECKS:
            result = CHECKS[kind](c)
        elif kind in CONSTRUCTS:
            frag = Fragment()
            result = CONSTRUCTS[kind](c, frag)
            outputs = frag.doc
        else:
            raise UnknownTask(f"unknown task kind {kind!r}")
        if isinstance(result, tuple):
            result, extra = result
        status, verdict = _verdict_outcome(result)
        message = None
    except ENLError as exc:
        status, verdict, message = "ERROR", None, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    label = _label(task, c.refs) if c.refs else f"{kind}({task['name']})"
    return Report(task["name"], str(kind), label, status, verdict, outputs, message, elapsed,
                  extra)


def run_all(bundle: Bundle) -> list:
    return [run_task(bundle, t) for t in bundle.tasks]


def exit_code(reports) -> int:
    if any(r.status == "ERROR" for r in reports):
        return 2
    if any(r.status == "FAIL" for r in reports):
        return 1
    return 0


def emit_report(reports, fmt: str = "text", timing: bool = False) -> bytes:
    if fmt == "text":
        return "".join(r.text() + "\n" for r in reports).encode("utf-8")
    if fmt == "json":
        doc = {"reports": [r.as_json(timing) for r in reports]}
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


__all__ = ["Report", "run_task", "run_all", "emit_report", "exit_code", "KINDS", "matrix_json"]
