"""JSON spec files and built-in presets describing a level chain.

Schema::

    {
      "levels":  [{"points": ["0", "1"], "cantors": [{"a": "0", "b": "1/3"}]}, ...],
      "stream":  {"kind": "none" | "rationals"},
      "densify": false,
      "caps":    {"stream_level_cap": 64, "scan_depth_cap": 48}
    }

Every rational is an exact string ``"p/q"`` or ``"p"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import DomainError, SpecError
from .foundation import parse_rational, render_rational
from .nullsets import AffineCantor, LevelChain, Point


def _cantor_chain() -> Dict[str, Any]:
    levels = [{"points": ["0", "1"], "cantors": [{"a": "0", "b": "1/3"}]}]
    for n in range(2, 9):
        a = 1 - Fraction(1, 2 ** (n - 1))
        b = a + Fraction(1, 3 ** n)
        levels.append({"points": [], "cantors": [
            {"a": render_rational(a), "b": render_rational(b)}]})
    return {"levels": levels}


PRESETS: Dict[str, Dict[str, Any]] = {
    "endpoints": {"levels": [{"points": ["0", "1"]}]},
    "midpoint": {"levels": [{"points": ["0", "1"]}, {"points": ["1/2"]}]},
    "cantor-chain": _cantor_chain(),
    "rationals-dense": {"levels": [], "stream": {"kind": "rationals"}},
}

PRESET_NOTES = {
    "endpoints": "F_1 = {0, 1} only",
    "midpoint": "F_1 = {0, 1}, F_2 adds 1/2",
    "cantor-chain": "F_1 = {0, 1} + Cantor(0, 1/3); level n <= 8 adds Cantor(1-2^(1-n), +3^-n)",
    "rationals-dense": "stream: level n >= 2 adds all k/(2n-2) and k/(2n-1)",
}


def _rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, str):
        raise SpecError(where, f"expected a rational string, got {value!r}")
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise SpecError(where, str(exc)) from None


def _int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise SpecError(where, f"expected a positive integer, got {value!r}")
    return value


def chain_from_dict(doc: Dict[str, Any], densify: Optional[bool] = None) -> LevelChain:
    if not isinstance(doc, dict):
        raise SpecError("<root>", "spec must be a JSON object")
    unknown = set(doc) - {"levels", "stream", "densify", "caps"}
    if unknown:
        raise SpecError("<root>", f"unknown keys {sorted(unknown)}")
    raw_levels = doc.get("levels", [])
    if not isinstance(raw_levels, list):
        raise SpecError("levels", "expected a list")
    levels = []
    for i, lvl in enumerate(raw_levels):
        if not isinstance(lvl, dict):
            raise SpecError(f"levels[{i}]", "expected an object")
        gens = []
        for j, p in enumerate(lvl.get("points", [])):
            where = f"levels[{i}].points[{j}]"
            q = _rational(p, where)
            if not 0 <= q <= 1:
                raise SpecError(where, "point outside [0, 1]")
            gens.append(Point(q))
        for j, c in enumerate(lvl.get("cantors", [])):
            where = f"levels[{i}].cantors[{j}]"
            if not isinstance(c, dict) or set(c) != {"a", "b"}:
                raise SpecError(where, "expected {\"a\": ..., \"b\": ...}")
            try:
                gens.append(AffineCantor(_rational(c["a"], where + ".a"),
                                         _rational(c["b"], where + ".b")))
            except DomainError as exc:
                raise SpecError(where, str(exc)) from None
        levels.append(tuple(gens))
    stream = doc.get("stream") or {"kind": "none"}
    if not isinstance(stream, dict) or "kind" not in stream:
        raise SpecError("stream", "expected {\"kind\": ...}")
    flag = doc.get("densify", False)
    if not isinstance(flag, bool):
        raise SpecError("densify", "expected a boolean")
    if densify is not None:
        flag = densify
    caps = doc.get("caps", {})
    if not isinstance(caps, dict):
        raise SpecError("caps", "expected an object")
    return LevelChain(
        levels=tuple(levels),
        stream=stream["kind"],
        densify=flag,
        stream_level_cap=_int(caps.get("stream_level_cap", 64), "caps.stream_level_cap"),
        scan_depth_cap=_int(caps.get("scan_depth_cap", 48), "caps.scan_depth_cap"),
    )


def load_spec(source: str, densify: Optional[bool] = None) -> LevelChain:
    """Load a preset by name or a JSON spec file by path."""
    if source in PRESETS:
        return chain_from_dict(PRESETS[source], densify)
    path = Path(source)
    if not path.is_file():
        raise SpecError("--spec", f"{source!r} is neither a preset nor a file")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno}", exc.msg) from None
    return chain_from_dict(doc, densify)


def chain_to_dict(chain: LevelChain) -> Dict[str, Any]:
    levels = []
    for gens in chain.levels:
        levels.append({
            "points": [g.to_json() for g in gens if isinstance(g, Point)],
            "cantors": [g.to_json() for g in gens if isinstance(g, AffineCantor)],
        })
    return {
        "levels": levels,
        "stream": {"kind": chain.stream},
        "densify": chain.densify,
        "caps": {"stream_level_cap": chain.stream_level_cap,
                 "scan_depth_cap": chain.scan_depth_cap},
    }
