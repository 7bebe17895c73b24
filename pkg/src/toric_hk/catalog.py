"""Built-in polytopes and the JSON ``PairSpec`` format.

A spec is a dict in one of two shapes::

    {"builtin": {"name": "hirzebruch", "a": 1, "c": 2, "d": 1}}
    {"ambient_dim": 2, "inequalities": [{"normal": [1, 0], "offset": 2}, ...]}

Inequalities mean ``<x, normal> >= -offset``.  An explicit spec may list
``vertices`` instead of (or as well as) inequalities; offsets and vertex
coordinates may be integers or ``"p/q"`` strings.  Builtin specs may also be
written as shorthand such as ``hirzebruch(1,2,1)`` or
``product(segment,simplex)``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .polytope import (
    HalfSpace,
    Polytope,
    UnboundedError,
    box,
    convex_hull,
    product,
    vertex_enumeration,
)
from .region import NotLatticePolytopeError, ToricPair, build_pair


class SpecError(ValueError):
    """The document does not describe a valid polytope or pair."""


def simplex(n: int = 2, degree: int = 1) -> Polytope:
    """``degree`` times the standard simplex in R^n."""
    pts = [tuple([0] * n)] + [tuple(degree * int(i == j) for j in range(n)) for i in range(n)]
    return convex_hull(pts)


def hirzebruch(a: int, c: int, d: int) -> Polytope:
    """``{x >= -c, 0 <= y <= d, x <= a y}``."""
    if min(a, c, d) < 1:
        raise SpecError("hirzebruch needs a, c, d >= 1")
    hs = [HalfSpace.make((1, 0), c), HalfSpace.make((0, 1), 0),
          HalfSpace.make((0, -1), d), HalfSpace.make((-1, a), 0)]
    return vertex_enumeration(hs, 2)


def anticanonical_p2() -> Polytope:
    return convex_hull([(-1, -1), (2, -1), (-1, 2)])


def cone_block(P: Polytope, height: int) -> Polytope:
    """The cone over ``P x {1}`` cut at ``z <= height``."""
    pts = [tuple([0] * (P.ambient_dim + 1))] + [tuple(height * x for x in v) + (height,) for v in P.vertices]
    return convex_hull(pts)


_SIMPLE = {
    "simplex": lambda p: simplex(p.get("n", 2), 1),
    "segment": lambda p: simplex(1, 1),
    "projective_space": lambda p: simplex(p.get("n", 2), p.get("degree", 1)),
    "hirzebruch": lambda p: hirzebruch(p["a"], p["c"], p["d"]),
    "anticanonical_p2": lambda p: anticanonical_p2(),
    "cube": lambda p: box([0] * p.get("n", 3), [1] * p.get("n", 3)),
}
_POSITIONAL = {
    "simplex": ["n"],
    "projective_space": ["n", "degree"],
    "hirzebruch": ["a", "c", "d"],
    "cube": ["n"],
    "cone_block": ["polytope", "height"],
    "product": ["a", "b"],
}


def _frac(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecError(f"expected an integer or 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"bad rational {x!r}") from exc


def polytope_from_spec(spec: dict) -> Polytope:
    """Build the polytope described by a spec (lattice or not)."""
    if not isinstance(spec, dict):
        raise SpecError("spec must be a JSON object")
    if "builtin" in spec:
        b = spec["builtin"]
        if isinstance(b, str):
            b = {"name": b}
        if not isinstance(b, dict) or "name" not in b:
            raise SpecError("builtin must be a name or an object with 'name'")
        name = b["name"]
        try:
            if name in _SIMPLE:
                return _SIMPLE[name](b)
            if name == "product":
                return product(polytope_from_spec(b["a"]), polytope_from_spec(b["b"]))
            if name == "cone_block":
                return cone_block(polytope_from_spec(b["polytope"]), int(b.get("height", 1)))
        except KeyError as exc:
            raise SpecError(f"builtin {name!r} is missing parameter {exc}") from exc
        except TypeError as exc:
            raise SpecError(f"builtin {name!r}: {exc}") from exc
        raise SpecError(f"unknown builtin {name!r}")
    if "inequalities" not in spec and "vertices" not in spec:
        raise SpecError("explicit spec needs 'inequalities' or 'vertices'")
    try:
        if "inequalities" in spec:
            k = int(spec["ambient_dim"])
            hs = []
            for row in spec["inequalities"]:
                normal = [int(x) for x in row["normal"]]
                if len(normal) != k:
                    raise SpecError("normal length differs from ambient_dim")
                hs.append(HalfSpace.make(normal, _frac(row["offset"])))
            P = vertex_enumeration(hs, k)
            if "vertices" in spec:
                listed = sorted(tuple(_frac(x) for x in v) for v in spec["vertices"])
                if listed != sorted(P.vertices):
                    raise SpecError("listed vertices disagree with the inequalities")
            return P
        pts = [tuple(_frac(x) for x in v) for v in spec["vertices"]]
        if not pts:
            raise SpecError("empty vertex list")
        return convex_hull(pts)
    except UnboundedError as exc:
        raise SpecError(str(exc)) from exc
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"malformed explicit spec: {exc}") from exc


def pair_from_spec(spec: dict) -> ToricPair:
    P = polytope_from_spec(spec)
    if P.is_empty:
        raise SpecError("empty polytope")
    try:
        return build_pair(P, name=spec_label(spec))
    except (NotLatticePolytopeError, ValueError) as exc:
        raise SpecError(str(exc)) from exc


def spec_label(spec: dict) -> str:
    if "builtin" in spec:
        b = spec["builtin"]
        if isinstance(b, str):
            return b
        name = b.get("name", "?")
        if name == "product":
            return f"{spec_label(b['a'])}#{spec_label(b['b'])}"
        args = [str(v) for k, v in b.items() if k != "name" and not isinstance(v, dict)]
        return f"{name}({','.join(args)})" if args else name
    return "explicit"


# ------------------------------------------------------------------ parsing
_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|-?\d+|[(),])")


def _tokens(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecError(f"cannot parse builtin shorthand {text!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_shorthand(text: str) -> dict:
    """``hirzebruch(1,2,1)`` -> ``{"builtin": {"name": "hirzebruch", ...}}``."""
    toks = _tokens(text)

    def expr(i):
        name = toks[i]
        if not re.match(r"[A-Za-z_]", name):
            raise SpecError(f"expected a builtin name, got {name!r}")
        i += 1
        args = []
        if i < len(toks) and toks[i] == "(":
            i += 1
            while toks[i] != ")":
                if re.match(r"-?\d+$", toks[i]):
                    args.append(int(toks[i]))
                    i += 1
                else:
                    sub, i = expr(i)
                    args.append(sub)
                if toks[i] == ",":
                    i += 1
            i += 1
        keys = _POSITIONAL.get(name, [])
        if len(args) > len(keys):
            raise SpecError(f"too many arguments for {name!r}")
        b = {"name": name}
        b.update(zip(keys, args))
        return {"builtin": b}, i

    try:
        spec, end = expr(0)
    except IndexError as exc:
        raise SpecError(f"truncated builtin shorthand {text!r}") from exc
    if end != len(toks):
        raise SpecError(f"trailing input in {text!r}")
    return spec


def load_spec(text: str) -> dict:
    """Accept a JSON file path, a JSON literal, or builtin shorthand."""
    path = Path(text)
    try:
        if text.lstrip().startswith("{"):
            return json.loads(text)
        if path.suffix == ".json" or path.is_file():
            return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read spec: {exc}") from exc
    return parse_shorthand(text)


def canonical_spec(spec: dict) -> dict:
    """Normalized echo of a spec that re-parses to the same polytope."""
    if "builtin" in spec:
        b = spec["builtin"]
        if isinstance(b, str):
            b = {"name": b}
        out: dict[str, Any] = {"name": b["name"]}
        for k in sorted(k for k in b if k != "name"):
            v = b[k]
            out[k] = canonical_spec(v) if isinstance(v, dict) else v
        return {"builtin": out}
    P = polytope_from_spec(spec)
    return {
        "ambient_dim": P.ambient_dim,
        "inequalities": [{"normal": list(h.normal), "offset": str(h.offset)} for h in P.halfspaces],
        "vertices": [[str(x) for x in v] for v in P.vertices],
    }
