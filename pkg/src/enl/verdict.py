from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exact import equal, format_rational


@dataclass(frozen=True, eq=False)
class Verdict:
    """Outcome of a check.

    Truthy iff the check passed.  A failing verdict names the violated
    clause and carries the lexicographically first offending index tuple,
    rendered with basis labels in ``labels``, plus both sides of the
    identity at that index.
    """

    ok: bool
    check: str
    clause: str | None = None
    witness: tuple = ()
    labels: tuple = ()
    got: object = None
    expected: object = None
    names: tuple | None = None
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "pass"
        parts = [self.clause or "failed"]
        if self.labels:
            parts.append("witness=[" + ",".join(self.labels) + "]")
        if self.got is not None:
            parts.append("got=" + render(self.got, self.names))
            parts.append("expected=" + render(self.expected, self.names))
        return " ".join(parts)


def passed(check: str, **data) -> Verdict:
    return Verdict(True, check, data=data)


def failed(check: str, clause: str, witness=(), labels=(), got=None, expected=None,
           names=None, **data) -> Verdict:
    return Verdict(False, check, clause, tuple(witness), tuple(labels), got, expected,
                   names, data)


def scan(check, clause, indices, residual, label=None, names=None):
    """Return a failing verdict at the first index where the sides differ.

    ``residual(idx)`` yields ``(got, expected)``; ``label(idx)`` renders the
    index with basis names.  Returns ``None`` when every index agrees.
    """
    for idx in indices:
        got, expected = residual(idx)
        if not equal(got, expected):
            labels = label(idx) if label else tuple(str(i) for i in idx)
            return failed(check, clause, idx, labels, got, expected, names)
    return None


def render(value, names=None) -> str:
    """Readable text for a scalar, vector (as a combination of ``names``) or array."""
    if isinstance(value, np.ndarray):
        if value.ndim == 0:
            return render(value.item(), names)
        if value.ndim == 1 and names is not None and len(names) == value.shape[0]:
            return render_vector(value, names)
        return "[" + ",".join(render(v, names) for v in value) + "]"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(render(v, names) for v in value) + "]"
    try:
        return format_rational(value)
    except (TypeError, ValueError):
        return str(value)


def render_vector(v, names) -> str:
    terms = []
    for c, name in zip(v, names):
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else format_rational(mag) + "*"
        sign = "-" if c < 0 else "+"
        terms.append((sign, coef + name))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
