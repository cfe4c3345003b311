"""Line-oriented problem files.

Each non-blank line is ``key: value``; ``#`` starts a comment.  Keys::

    name:       free-text label (optional)
    ring:       x, y, z                      variables, comma separated
    variety:    x^3 + x^2*y^2 + y^7 + z^2    generators separated by ';' (empty = smooth)
    map:        y + z^2 ; x^2 + x*y + y^2    one or two components separated by ';'
    linear:     x+y, x-y+3*z | x+y-z, x-y+5*z
                functions of one collection; ',' within a subcollection, '|' between
    suspension: w : w^2                      new variables, then h

``ring`` must come first; ``variety`` may repeat and accumulates.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from .difftools import MapGerm
from .logarithmic import VarietyGerm
from .parser import PolynomialSyntaxError, parse_polynomial
from .poly import Polynomial, RingContext

KEYS = ("name", "ring", "variety", "map", "linear", "suspension")


class ProblemError(ValueError):
    """Invalid problem file; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1, path: str = "<problem>"):
        self.line = line
        self.column = column
        self.path = path
        super().__init__(f"{path}:{line}:{column}: {message}")


@dataclass
class ProblemFile:
    ring: RingContext
    variety: VarietyGerm
    map: MapGerm | None = None
    linear: list[list[Polynomial]] | None = None
    suspension: tuple[RingContext, Polynomial] | None = None
    name: str = ""
    digest: str = ""
    source: dict = field(default_factory=dict)

    @property
    def f1(self) -> Polynomial:
        if self.map is None:
            raise ValueError("problem has no map")
        return self.map[0]

    @property
    def f2(self) -> Polynomial | None:
        return self.map[1] if self.map is not None and len(self.map) > 1 else None

    def working_variety(self) -> VarietyGerm:
        """The variety cut by the second map component, when there is one."""
        return self.variety.cut(self.f2) if self.f2 is not None else self.variety


def _split(value: str, sep: str, offset: int) -> list[tuple[str, int]]:
    out = []
    pos = 0
    for part in value.split(sep):
        lead = len(part) - len(part.lstrip())
        out.append((part.strip(), offset + pos + lead))
        pos += len(part) + len(sep)
    return out


def parse_problem(text: str, path: str = "<problem>") -> ProblemFile:
    ring = None
    variety: list[Polynomial] = []
    mapping = linear = suspension = None
    name = ""
    source: dict = {}
    seen = set()

    def poly(src: str, col: int, lineno: int, R: RingContext) -> Polynomial:
        try:
            return parse_polynomial(src, R)
        except PolynomialSyntaxError as exc:
            raise ProblemError(str(exc).split(" at position")[0], lineno, col + exc.pos + 1, path) from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise ProblemError("expected 'key: value'", lineno, 1, path)
        key, value = line.split(":", 1)
        key = key.strip().lower()
        vcol = line.index(":") + 1  # 0-based start of the value
        if key not in KEYS:
            raise ProblemError(f"unknown key {key!r} (expected one of {', '.join(KEYS)})", lineno, 1, path)
        if key != "variety" and key in seen:
            raise ProblemError(f"duplicate key {key!r}", lineno, 1, path)
        seen.add(key)
        source.setdefault(key, []).append(value.strip())
        if key == "name":
            name = value.strip()
            continue
        if key == "ring":
            names = [v for v, _ in _split(value, ",", vcol) if v]
            for v, col in _split(value, ",", vcol):
                if not v.isidentifier():
                    raise ProblemError(f"bad variable name {v!r}", lineno, col + 1, path)
            if not names or len(set(names)) != len(names):
                raise ProblemError("ring needs distinct variable names", lineno, vcol + 1, path)
            ring = RingContext(tuple(names))
            continue
        if ring is None:
            raise ProblemError("'ring' must be declared before polynomials", lineno, 1, path)
        if key == "variety":
            for src, col in _split(value, ";", vcol):
                if src:
                    p = poly(src, col, lineno, ring)
                    if p.constant_term():
                        raise ProblemError("variety generator does not vanish at the origin", lineno, col + 1, path)
                    variety.append(p)
        elif key == "map":
            comps = []
            for src, col in _split(value, ";", vcol):
                p = poly(src, col, lineno, ring)
                if p.constant_term():
                    raise ProblemError("map component does not vanish at the origin", lineno, col + 1, path)
                comps.append(p)
            if len(comps) not in (1, 2):
                raise ProblemError("map needs one or two components", lineno, vcol + 1, path)
            mapping = MapGerm(ring, comps)
        elif key == "linear":
            linear = []
            for sub, scol in _split(value, "|", vcol):
                funcs = [poly(src, col, lineno, ring) for src, col in _split(sub, ",", scol)]
                linear.append(funcs)
        elif key == "suspension":
            if ":" not in value:
                raise ProblemError("suspension needs 'variables : h'", lineno, vcol + 1, path)
            names_part, h_part = value.split(":", 1)
            names = [v.strip() for v in names_part.split(",") if v.strip()]
            if not names or not all(v.isidentifier() for v in names):
                raise ProblemError("bad suspension variables", lineno, vcol + 1, path)
            clash = set(names) & set(ring.variables)
            if clash:
                raise ProblemError(f"suspension variables clash with the ring: {sorted(clash)}", lineno, vcol + 1, path)
            H = RingContext(tuple(names))
            hcol = vcol + len(names_part) + 1
            h = poly(h_part.strip(), hcol + len(h_part) - len(h_part.lstrip()), lineno, H)
            if h.constant_term():
                raise ProblemError("h does not vanish at the origin", lineno, hcol + 1, path)
            suspension = (H, h)
    if ring is None:
        raise ProblemError("no 'ring' declared", 1, 1, path)
    digest = hashlib.sha256(text.encode()).hexdigest()
    return ProblemFile(ring, VarietyGerm(ring, variety), mapping, linear, suspension, name, digest, source)


def load_problem_file(path: str | Path) -> ProblemFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ProblemError(f"not UTF-8 text ({exc.reason})", 1, 1, str(p)) from None
    return parse_problem(text, str(p))
