"""Loaders for the JSON file formats used by the command-line front end.

Formats:
- algebra: handled in `algebra` (name/dimension/basis/unit/structure).
- bracket table: {"algebra": name-ref, "entries": [[i, j, ["p/q", ...]], ...]}
  with omitted entries equal to zero.
- submodule: {"ambient": "E" | "epsilon", "vectors": [["p/q", ...], ...]}.
- two-form: {"algebra": name-ref, "coords": ["p/q", ...]} against the
  canonical degree-2 homology class basis.

Bundled example algebras and tables ship in the package data directory and
can be referred to by bare name (e.g. "v1_3") anywhere a file is accepted.
"""

from __future__ import annotations

import json
import os
from typing import Optional, Union

from .algebra import AlgebraError, FiniteAlgebra, algebra_from_json
from .courant import EpsilonSpace, ESpace
from .dirac import BracketTable, Submodule, TwoFormClass, two_form
from .exactlin import QMatrix, ZERO, rat, vec

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

#: bundled algebra names -> data files
BUNDLED_ALGEBRAS = ("q", "qx2", "qx3", "v1_1", "v1_2", "v1_3", "m2q", "ut2")
#: bundled bracket tables (all over v1_3)
BUNDLED_TABLES = ("bracket_zero_v1_3", "bracket_so3_v1_3",
                  "bracket_nonjacobi_v1_3")


class FileFormatError(ValueError):
    pass


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(
                f"{path}: invalid JSON at line {exc.lineno}, "
                f"column {exc.colno}") from exc


def resolve_path(ref: str, bundled: tuple = BUNDLED_ALGEBRAS) -> str:
    """A bare bundled name or an actual path; bundled names win only when
    no such file exists."""
    if not os.path.exists(ref) and ref in bundled:
        return os.path.join(DATA_DIR, f"{ref}.json")
    return ref


def load_algebra_ref(ref: str) -> FiniteAlgebra:
    path = resolve_path(ref)
    if not os.path.exists(path):
        raise FileFormatError(
            f"no such algebra file or bundled name: {ref!r} "
            f"(bundled: {', '.join(BUNDLED_ALGEBRAS)})")
    return algebra_from_json(_load_json(path))


def load_bracket_table(ref: str, A: FiniteAlgebra) -> BracketTable:
    path = resolve_path(ref, BUNDLED_TABLES)
    if not os.path.exists(path):
        raise FileFormatError(
            f"no such bracket-table file or bundled name: {ref!r}")
    doc = _load_json(path)
    try:
        entries = doc["entries"]
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"{path}: missing 'entries'") from exc
    d = A.dim
    table = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    for entry in entries:
        try:
            i, j, coords = entry
            i, j = int(i), int(j)
            coords = vec(rat(x) for x in coords)
        except (TypeError, ValueError) as exc:
            raise FileFormatError(
                f"{path}: malformed entry {entry!r}") from exc
        if not (0 <= i < d and 0 <= j < d) or len(coords) != d:
            raise FileFormatError(f"{path}: entry out of range: {entry!r}")
        table[i][j] = list(coords)
    return BracketTable(A, tuple(tuple(vec(r) for r in row)
                                 for row in table))


def load_submodule(path: str,
                   E: ESpace, eps: Optional[EpsilonSpace]) -> Submodule:
    doc = _load_json(path)
    try:
        ambient_name = doc["ambient"]
        vectors = doc["vectors"]
    except (KeyError, TypeError) as exc:
        raise FileFormatError(
            f"{path}: submodule files need 'ambient' and 'vectors'") from exc
    if ambient_name == "E":
        ambient: Union[ESpace, EpsilonSpace] = E
    elif ambient_name == "epsilon":
        if eps is None:
            raise FileFormatError(f"{path}: epsilon ambient unavailable")
        ambient = eps
    else:
        raise FileFormatError(
            f"{path}: ambient must be \"E\" or \"epsilon\", "
            f"got {ambient_name!r}")
    try:
        rows = [vec(rat(x) for x in row) for row in vectors]
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: malformed vector") from exc
    for row in rows:
        if len(row) != ambient.dim:
            raise FileFormatError(
                f"{path}: vector length {len(row)} does not match the "
                f"ambient dimension {ambient.dim}")
    return Submodule(ambient, QMatrix(rows or [], cols=ambient.dim))


def load_two_form(path: str, E: ESpace) -> TwoFormClass:
    doc = _load_json(path)
    try:
        coords = [rat(x) for x in doc["coords"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(
            f"{path}: two-form files need rational 'coords'") from exc
    return two_form(E, coords)
