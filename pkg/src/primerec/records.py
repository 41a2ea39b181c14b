"""Text serialization of step states.

Pieces are written as JSON Lines, one record per piece::

    {"step": 1, "class": "O-", "lo": 7, "hi": 21, "modulus": 1729,
     "sets": [{"modulus": 35, "excluded": [...], "exceptions_add": [...],
               "exceptions_remove": []}, ...]}

Each residue set is written with whichever of ``allowed`` / ``excluded`` is
shorter. The gamma table has the columns in :data:`TABLE_COLUMNS`.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Iterator

from .pseudoprime_families import ResidueSet
from .recursion import Piece, StepState
from .residue_classes import ResidueClass, value_of

SCHEMA = 1
TABLE_COLUMNS = ("step", "class", "gamma", "value", "is_prime", "piece_index")
CLASSES = (ResidueClass.OMINUS, ResidueClass.OPLUS)


def residue_set_record(rs: ResidueSet) -> dict:
    rec = {"modulus": rs.modulus}
    if len(rs.excluded) <= rs.allowed_count:
        rec["excluded"] = list(rs.excluded)
    else:
        rec["allowed"] = list(rs.allowed)
    rec["exceptions_add"] = sorted(rs.exceptions_add)
    rec["exceptions_remove"] = sorted(rs.exceptions_remove)
    return rec


def residue_set_from_record(rec: dict) -> ResidueSet:
    add, remove = rec.get("exceptions_add", ()), rec.get("exceptions_remove", ())
    if "allowed" in rec:
        return ResidueSet.from_allowed(rec["modulus"], rec["allowed"], add, remove)
    return ResidueSet(rec["modulus"], tuple(rec["excluded"]), frozenset(add), frozenset(remove))


def piece_record(piece: Piece) -> dict:
    return {
        "step": piece.step,
        "class": piece.cls.value,
        "lo": piece.lo,
        "hi": piece.hi,
        "modulus": piece.modulus,
        "sets": [residue_set_record(rs) for rs in piece.sets],
    }


def piece_from_record(rec: dict) -> Piece:
    return Piece(rec["step"], ResidueClass(rec["class"]), rec["lo"], rec["hi"],
                 tuple(residue_set_from_record(r) for r in rec["sets"]))


def piece_records(state: StepState) -> Iterator[dict]:
    for cls in CLASSES:
        for piece in state.pieces(cls):
            yield piece_record(piece)


def dumps_pieces(state: StepState) -> str:
    return "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in piece_records(state))


def loads_pieces(text: str) -> list[Piece]:
    return [piece_from_record(json.loads(line)) for line in text.splitlines() if line.strip()]


def table_rows(state: StepState, include_composites: bool = False) -> Iterator[dict]:
    for cls in CLASSES:
        primes = set(state.primes(cls))
        for idx, piece in enumerate(state.pieces(cls)):
            gammas: Iterable[int] = range(piece.lo, piece.hi + 1) if include_composites else \
                [g for g in state.primes(cls) if piece.lo <= g <= piece.hi]
            for g in gammas:
                yield {
                    "step": state.step,
                    "class": cls.value,
                    "gamma": g,
                    "value": value_of(cls, g, bignum=True),
                    "is_prime": int(g in primes),
                    "piece_index": idx,
                }


def table_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def dump_json(state: StepState, include_composites: bool = False) -> str:
    doc = {
        "schema": SCHEMA,
        "step": state.step,
        "bounds": {"r_minus": state.bounds.r_minus, "r_plus": state.bounds.r_plus},
        "pieces": list(piece_records(state)),
        "rows": list(table_rows(state, include_composites)),
    }
    return json.dumps(doc, sort_keys=True) + "\n"
