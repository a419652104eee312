"""JSON (de)serialization of draw certificates.

The on-disk format holds the board file text, one object per matching set
(markers, groups, coverings with their remainders, symmetry permutations),
and the residual pairing.  All cells are written in algebraic form ("c2").
"""

from __future__ import annotations

import json
from typing import Any

from .board import Group, cell_key, cell_name, parse_cell, parse_position, render_position
from .configs import CertEntry, DrawCertificate
from .pairing import Pairing
from .setmatch import Covering, MatchingSet


class CertificateFormatError(ValueError):
    pass


def _cells(names: Any) -> tuple:
    return tuple(parse_cell(s) for s in names)


def _matching_to_obj(ms: MatchingSet) -> dict:
    return {
        "markers": sorted((cell_name(c) for c in ms.markers)),
        "groups": [[cell_name(c) for c in g] for g in ms.groups],
        "coverings": [_covering_to_obj(c) for c in ms.coverings],
        "symmetry": [
            {cell_name(a): cell_name(b) for a, b in sorted(p.items(), key=lambda kv: cell_key(kv[0]))}
            for p in ms.symmetry
        ],
    }


def _covering_to_obj(c: Covering) -> dict:
    remainder: dict[str, Any] = {
        "pairs": [[cell_name(a), cell_name(b)] for a, b in c.pairs]
    }
    if c.nested is not None:
        remainder["nested"] = _matching_to_obj(c.nested)
    return {
        "black": cell_name(c.black_move),
        "white": cell_name(c.white_response),
        "remainder": remainder,
    }


def _matching_from_obj(obj: dict) -> MatchingSet:
    try:
        markers = frozenset(_cells(obj["markers"]))
        groups = tuple(Group(_cells(g)) for g in obj["groups"])
        coverings = tuple(_covering_from_obj(c) for c in obj["coverings"])
        symmetry = tuple(
            {parse_cell(a): parse_cell(b) for a, b in p.items()}
            for p in obj.get("symmetry", [])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateFormatError(f"bad matching set object: {exc}") from exc
    return MatchingSet(markers, groups, coverings, symmetry)


def _covering_from_obj(obj: dict) -> Covering:
    remainder = obj.get("remainder", {})
    nested = remainder.get("nested")
    return Covering(
        parse_cell(obj["black"]),
        parse_cell(obj["white"]),
        tuple((a, b) for a, b in (tuple(_cells(p)) for p in remainder.get("pairs", []))),
        _matching_from_obj(nested) if nested is not None else None,
    )


def certificate_to_json(cert: DrawCertificate, indent: int | None = 2) -> str:
    obj = {
        "board": render_position(cert.position),
        "matching_sets": [
            {"template_name": e.template_name, **_matching_to_obj(e.matching)}
            for e in cert.entries
        ],
        "residual_pairing": [
            {
                "group": [cell_name(c) for c in g],
                "pair": [cell_name(a), cell_name(b)],
            }
            for g, (a, b) in cert.residual.assignments
        ],
    }
    return json.dumps(obj, indent=indent) + "\n"


def certificate_from_json(text: str) -> DrawCertificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "board" not in obj:
        raise CertificateFormatError("certificate object must contain a board")
    pos = parse_position(obj["board"])
    entries = []
    for mo in obj.get("matching_sets", []):
        entries.append(
            CertEntry(mo.get("template_name", "?"), _matching_from_obj(mo), None)
        )
    try:
        residual = Pairing(
            tuple(
                (Group(_cells(r["group"])), tuple(_cells(r["pair"])))
                for r in obj.get("residual_pairing", [])
            )
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateFormatError(f"bad residual pairing: {exc}") from exc
    return DrawCertificate(pos, tuple(entries), residual)
