"""JSON forms of algebras, motives and collection reports.

Rationals travel as ``"p/q"`` strings in lowest terms.  Rendering is
deterministic: fixed key order, no floats, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import json
from typing import Any

from .algebra import QAlgebra, RealSimpleFactor
from .brauer import Motive
from .collection import Cell, CellResult, CollectionReport
from .errors import InvalidDescriptor
from .linalg import format_q, to_q
from .symrep import IrrepDescriptor, stabilizer


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _require(data: dict, key: str, kind: type | tuple[type, ...]):
    if not isinstance(data, dict) or key not in data:
        raise InvalidDescriptor(f"missing field {key!r}")
    val = data[key]
    if not isinstance(val, kind) or isinstance(val, bool) and kind is int:
        raise InvalidDescriptor(f"field {key!r} has the wrong type")
    return val


# -- algebras ---------------------------------------------------------------


def algebra_to_dict(alg: QAlgebra) -> dict:
    flat = [format_q(c) for plane in alg.structure_constants for row in plane for c in row]
    return {"dim": alg.dim, "unit": [format_q(u) for u in alg.unit], "constants": flat}


def algebra_from_dict(data: dict) -> QAlgebra:
    dim = _require(data, "dim", int)
    unit = _require(data, "unit", list)
    flat = _require(data, "constants", list)
    if dim < 1 or len(unit) != dim or len(flat) != dim**3:
        raise InvalidDescriptor(f"need {dim} unit entries and {dim ** 3} constants")
    try:
        vals = [to_q(v) for v in flat]
        unit_q = [to_q(u) for u in unit]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidDescriptor(f"bad rational: {exc}") from None
    constants = [[vals[(i * dim + j) * dim : (i * dim + j + 1) * dim] for j in range(dim)] for i in range(dim)]
    return QAlgebra(constants, unit_q)


# -- motives ------------------------------------------------------------------


def motive_to_dict(m: Motive) -> dict:
    return {"modulus": m.modulus, "classes": list(m.classes)}


def motive_from_dict(data: dict) -> Motive:
    modulus = _require(data, "modulus", int)
    classes = _require(data, "classes", list)
    if modulus < 1:
        raise InvalidDescriptor("modulus must be positive")
    if not all(isinstance(c, int) and not isinstance(c, bool) for c in classes):
        raise InvalidDescriptor("classes must be integers")
    return Motive(classes, modulus)


# -- reports --------------------------------------------------------------


def _cell_to_dict(res: CellResult) -> dict:
    return {
        "alpha": list(res.cell.alpha),
        "stabilizer": str(res.cell.stab),
        "irrep": [list(p) for p in res.cell.irrep.partitions],
        "algebra_dim": res.algebra_dim,
        "factors": [{"kind": f.kind, "size": f.size} for f in res.factors],
    }


def _cell_from_dict(data: dict) -> CellResult:
    alpha = tuple(_require(data, "alpha", list))
    stab = stabilizer(alpha)
    if str(stab) != _require(data, "stabilizer", str):
        raise InvalidDescriptor(f"stabilizer label does not match alpha {alpha}")
    irrep = IrrepDescriptor(tuple(tuple(p) for p in _require(data, "irrep", list)))
    factors = tuple(
        RealSimpleFactor(_require(f, "kind", str), _require(f, "size", int)) for f in _require(data, "factors", list)
    )
    return CellResult(Cell(alpha, stab, irrep), _require(data, "algebra_dim", int), factors)


def report_to_dict(rep: CollectionReport) -> dict:
    return {
        "input": {"degree": rep.degree, "class": rep.cls, "n": rep.n},
        "cells": [_cell_to_dict(c) for c in rep.cells],
        "r": rep.r,
        "d": rep.d,
        "rank_real_naive": rep.rank_real_naive,
        "rank_complex": rep.rank_complex,
        "rank_consistent": rep.rank_consistent,
        "d_consistent": rep.d_consistent,
        "dedup_ambiguous": rep.dedup_ambiguous,
        "consistent_end_multiset": rep.consistent_end_multiset,
        "rdim": rep.rdim,
        "motive": {**motive_to_dict(rep.motive), "complex": rep.d},
        "notes": list(rep.notes),
    }


def report_from_dict(data: dict) -> CollectionReport:
    inp = _require(data, "input", dict)
    motive = _require(data, "motive", dict)
    ends = data.get("consistent_end_multiset")
    return CollectionReport(
        degree=_require(inp, "degree", int),
        cls=_require(inp, "class", int),
        n=_require(inp, "n", int),
        cells=tuple(_cell_from_dict(c) for c in _require(data, "cells", list)),
        r=_require(data, "r", int),
        d=_require(data, "d", int),
        rank_real_naive=_require(data, "rank_real_naive", int),
        rank_complex=_require(data, "rank_complex", int),
        rank_consistent=data.get("rank_consistent"),
        d_consistent=data.get("d_consistent"),
        dedup_ambiguous=_require(data, "dedup_ambiguous", bool),
        consistent_end_multiset=dict(ends) if ends is not None else None,
        rdim=_require(data, "rdim", int),
        motive=motive_from_dict(motive),
        notes=tuple(data.get("notes", ())),
    )


def render_table(rep: CollectionReport) -> str:
    """One row per block, in collection order, followed by the rank summary."""
    header = ("#", "alpha", "stabilizer", "irrep", "j", "End", "mult")
    rows = [header]
    for i, b in enumerate(rep.blocks, start=1):
        c = b.source
        rows.append(
            (str(i), ",".join(map(str, c.alpha)), str(c.stab), c.irrep.label(), str(b.factor_index), b.end_type, str(b.multiplicity))
        )
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    consistent = "undetermined" if rep.rank_consistent is None else str(rep.rank_consistent)
    lines.append("")
    lines.append(
        f"r={rep.r} d={rep.d} naive={rep.rank_real_naive} rank_C={rep.rank_complex} "
        f"consistent={consistent} ambiguous={str(rep.dedup_ambiguous).lower()} rdim={rep.rdim}"
    )
    lines.extend(f"note: {n}" for n in rep.notes)
    return "\n".join(lines) + "\n"
