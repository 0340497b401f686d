"""Named test spaces for the command line and the acceptance runs."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .simplicial import (
    SimplicialSet, from_json, minimal_sphere, one_vertex_torus, product, projective_plane,
    simplex_mod_1skeleton, suspension, wedge,
)


class SpaceError(ValueError):
    pass


REGISTRY: dict[str, Callable[[], SimplicialSet]] = {
    "sphere2": lambda: minimal_sphere(2),
    "sphere3": lambda: minimal_sphere(3),
    "sphere4": lambda: minimal_sphere(4),
    "wedge22": lambda: wedge(minimal_sphere(2), minimal_sphere(2)),
    "wedge23": lambda: wedge(minimal_sphere(2), minimal_sphere(3)),
    "simplex3": lambda: simplex_mod_1skeleton(3),
    "simplex4": lambda: simplex_mod_1skeleton(4),
    "sphere2xsphere2": lambda: product(minimal_sphere(2), minimal_sphere(2)),
    "suspended_torus": lambda: suspension(one_vertex_torus()),
    "suspended_rp2": lambda: suspension(projective_plane()),
}


@dataclass(frozen=True)
class Space:
    """A resolved ``--space`` argument: a simplicial set, or a cohomology table for suspension models."""
    name: str
    simplicial: SimplicialSet | None = None
    table: dict | None = None


def read_json_file(path: str) -> dict:
    """Load JSON, reporting syntax errors with line and column."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpaceError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpaceError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def resolve(name: str) -> Space:
    """``sphere2``, ``wedge22``, ..., ``simplicial:<file>`` or ``suspension:<file>``."""
    if name.startswith("suspension:"):
        path = name.split(":", 1)[1]
        data = read_json_file(path)
        if not isinstance(data, dict) or "HY" not in data or "HZ" not in data:
            raise SpaceError(f"{path}: a suspension table needs 'HY' and 'HZ'")
        return Space(name, table=data)
    if name.startswith("simplicial:"):
        path = name.split(":", 1)[1]
        try:
            X = from_json(read_json_file(path), name=Path(path).stem)
        except ValueError as exc:
            raise SpaceError(f"{path}: {exc}") from None
        return Space(name, simplicial=X)
    if name not in REGISTRY:
        raise SpaceError(f"unknown space {name!r}; known: {', '.join(sorted(REGISTRY))}, "
                         "simplicial:<file>, suspension:<file>")
    return Space(name, simplicial=REGISTRY[name]())
