"""Canonical JSON documents for semigroups, curves and sheaves."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from noether_forge.curve import CurveSpec, SheafModel
from noether_forge.errors import InputError
from noether_forge.semigroup import GoodSemigroup, from_numerical_generators


def dumps(obj) -> str:
    """Canonical form: sorted keys, compact separators, no trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} at position {exc.pos}") from None


def semigroup_to_doc(S: GoodSemigroup) -> dict:
    return {
        "branches": S.s,
        "conductor": list(S.conductor),
        "small_elements": [list(p) for p in S.small_elements],
    }


def is_semigroup_doc(doc) -> bool:
    return isinstance(doc, dict) and ("numerical_generators" in doc or "small_elements" in doc)


def semigroup_from_doc(doc: dict) -> GoodSemigroup:
    if "numerical_generators" in doc:
        return from_numerical_generators(doc["numerical_generators"])
    try:
        conductor = tuple(int(x) for x in doc["conductor"])
        s = int(doc.get("branches", len(conductor)))
        small = [tuple(int(x) for x in p) for p in doc["small_elements"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed semigroup literal: {exc}") from None
    if s != len(conductor) or any(len(p) != s for p in small):
        raise InputError("branch count does not match the conductor or element lengths")
    try:
        return GoodSemigroup.from_elements(conductor, small)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def curve_from_doc(doc: dict) -> CurveSpec:
    try:
        return CurveSpec.from_dict(doc)
    except KeyError as exc:
        raise InputError(f"curve document lacks {exc}") from None


def sheaves_from_doc(curve: CurveSpec, doc) -> list:
    """``{"generators": [...]}``, a list of those, or a curve document with ``candidate_sheaves``."""
    if isinstance(doc, dict) and "candidate_sheaves" in doc:
        items = doc["candidate_sheaves"]
    elif isinstance(doc, list):
        items = doc
    else:
        items = [doc]
    out = []
    for it in items:
        gens = it["generators"] if isinstance(it, dict) else it
        out.append(SheafModel.make(curve, [str(g) for g in gens]))
    return out


def fixture_names() -> list:
    root = resources.files("noether_forge") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict:
    root = resources.files("noether_forge") / "fixtures"
    path = root / (name if name.endswith(".json") else name + ".json")
    if not path.is_file():
        raise InputError(f"no fixture named {name!r}")
    return loads(path.read_text(encoding="utf-8"))


def load_document(ref: str) -> dict:
    """Read a JSON file, falling back to a bundled fixture of that name."""
    p = Path(ref)
    if p.is_file():
        return loads(p.read_text(encoding="utf-8"))
    return load_fixture(p.name)
