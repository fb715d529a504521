"""JSON file formats for groups, p-adic images and curve records.

Parsers take a ``where`` label so that errors name the file and the field.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import BadModulus, CoincidenceError, MalformedRecord, NotInvertible
from .matgroup import MatGroup
from .modmat import Mat2, check_modulus
from .padic import PAdicImage
from .rules import CMData, CurveRecord, CyclotomicData, IdealData, LocalData, Reduction

__all__ = [
    "group_from_json",
    "group_to_json",
    "image_from_json",
    "image_to_json",
    "ingest_group",
    "ingest_image",
    "ingest_record",
    "load_json",
    "record_from_json",
    "record_to_json",
]


def _fail(where: str, msg: str):
    raise MalformedRecord(f"{where}: {msg}")


def _int(obj: Any, where: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        _fail(where, f"expected an integer, got {obj!r}")
    return obj


def _bool(obj: Any, where: str) -> bool:
    if not isinstance(obj, bool):
        _fail(where, f"expected true or false, got {obj!r}")
    return obj


def _int_list(obj: Any, where: str) -> list[int]:
    if not isinstance(obj, list):
        _fail(where, f"expected a list, got {obj!r}")
    return [_int(x, f"{where}[{i}]") for i, x in enumerate(obj)]


def _dict(obj: Any, where: str) -> dict:
    if not isinstance(obj, dict):
        _fail(where, f"expected an object, got {type(obj).__name__}")
    return obj


def _reject_unknown(obj: dict, allowed: set[str], where: str):
    extra = set(obj) - allowed
    if extra:
        _fail(where, f"unknown field(s) {sorted(extra)}")


# -- groups -------------------------------------------------------------------------


def group_to_json(G: MatGroup) -> dict:
    return {"modulus": G.modulus, "generators": [list(g) for g in G.gens]}


def group_from_json(obj: Any, where: str = "group") -> MatGroup:
    obj = _dict(obj, where)
    _reject_unknown(obj, {"modulus", "generators"}, where)
    if "modulus" not in obj or "generators" not in obj:
        _fail(where, "needs 'modulus' and 'generators'")
    n = _int(obj["modulus"], f"{where}.modulus")
    try:
        check_modulus(n)
    except BadModulus as exc:
        _fail(f"{where}.modulus", str(exc))
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        _fail(f"{where}.generators", "expected a nonempty list of [a, b, c, d]")
    mats = []
    for i, g in enumerate(gens):
        lit = _int_list(g, f"{where}.generators[{i}]")
        if len(lit) != 4:
            _fail(f"{where}.generators[{i}]", "a matrix literal has four entries")
        M = Mat2.from_literal(n, lit)
        if not M.is_invertible():
            _fail(f"{where}.generators[{i}]", f"{lit} is not invertible mod {n}")
        mats.append(M)
    try:
        return MatGroup(n, mats)
    except (BadModulus, NotInvertible) as exc:
        _fail(where, str(exc))


# -- p-adic images ----------------------------------------------------------------------


def image_to_json(X: PAdicImage) -> dict:
    return {"p": X.p, "depth": X.depth, "group": group_to_json(X.base_group)}


def image_from_json(obj: Any, where: str = "image") -> PAdicImage:
    obj = _dict(obj, where)
    _reject_unknown(obj, {"p", "depth", "group"}, where)
    for key in ("p", "depth", "group"):
        if key not in obj:
            _fail(where, f"missing '{key}'")
    p = _int(obj["p"], f"{where}.p")
    depth = _int(obj["depth"], f"{where}.depth")
    G = group_from_json(obj["group"], f"{where}.group")
    try:
        return PAdicImage(p, depth, G)
    except BadModulus as exc:
        _fail(where, str(exc))


# -- curve records ----------------------------------------------------------------------

_RECORD_FIELDS = {
    "name",
    "field_disc_primes",
    "conductor_norm_primes",
    "local",
    "cm",
    "cyclotomic_trivial",
    "zeta_in_F",
    "cyclotomic_disjoint",
    "images",
    "entanglement_set",
    "j_cube_root_in_F",
}


def _prime_set(obj: Any, where: str) -> frozenset[int] | None:
    if obj is None:
        return None
    return frozenset(_int_list(obj, where))


def _local(obj: Any, where: str) -> dict[int, LocalData]:
    if not isinstance(obj, list):
        _fail(where, "expected a list of {p, ideals}")
    out = {}
    for i, entry in enumerate(obj):
        w = f"{where}[{i}]"
        entry = _dict(entry, w)
        _reject_unknown(entry, {"p", "ideals"}, w)
        p = _int(entry.get("p"), f"{w}.p")
        ideals = entry.get("ideals")
        if not isinstance(ideals, list):
            _fail(f"{w}.ideals", "expected a list")
        parsed = []
        for j, ideal in enumerate(ideals):
            wj = f"{w}.ideals[{j}]"
            ideal = _dict(ideal, wj)
            _reject_unknown(ideal, {"e", "reduction", "v_j"}, wj)
            e = _int(ideal.get("e", 1), f"{wj}.e")
            try:
                red = Reduction(ideal.get("reduction"))
            except ValueError:
                _fail(f"{wj}.reduction", f"unknown reduction type {ideal.get('reduction')!r}")
            v_j = ideal.get("v_j")
            v_j = None if v_j is None else _int(v_j, f"{wj}.v_j")
            parsed.append(IdealData(e, red, v_j))
        if p in out:
            _fail(w, f"prime {p} listed twice")
        try:
            out[p] = LocalData(p, tuple(parsed))
        except MalformedRecord as exc:
            _fail(w, str(exc))
    return out


def _cyclotomic(obj: Any, where: str) -> dict[int, CyclotomicData]:
    obj = _dict(obj, where)
    out = {}
    for key, val in obj.items():
        w = f"{where}.{key}"
        try:
            p = int(key)
        except ValueError:
            _fail(w, "keys are primes written as strings")
        val = _dict(val, w)
        _reject_unknown(val, {"trivial_through", "r"}, w)
        through = val.get("trivial_through", 0)
        if through != "all":
            through = _int(through, f"{w}.trivial_through")
        r = _int(val.get("r", 0), f"{w}.r")
        out[p] = CyclotomicData(None if through == "all" else through, r)
    return out


def record_from_json(obj: Any, where: str = "record") -> CurveRecord:
    obj = _dict(obj, where)
    _reject_unknown(obj, _RECORD_FIELDS, where)
    kwargs: dict[str, Any] = {"name": str(obj.get("name", ""))}
    for key in ("field_disc_primes", "conductor_norm_primes", "zeta_in_F", "entanglement_set"):
        kwargs[key] = _prime_set(obj.get(key), f"{where}.{key}")
    if obj.get("local") is not None:
        kwargs["local"] = _local(obj["local"], f"{where}.local")
    if obj.get("cm") is not None:
        cm = _dict(obj["cm"], f"{where}.cm")
        _reject_unknown(cm, {"field_is_K_of_j"}, f"{where}.cm")
        kwargs["cm"] = CMData(_bool(cm.get("field_is_K_of_j"), f"{where}.cm.field_is_K_of_j"))
    if obj.get("cyclotomic_trivial") is not None:
        kwargs["cyclotomic_trivial"] = _cyclotomic(obj["cyclotomic_trivial"], f"{where}.cyclotomic_trivial")
    for key in ("cyclotomic_disjoint", "j_cube_root_in_F"):
        if obj.get(key) is not None:
            kwargs[key] = _bool(obj[key], f"{where}.{key}")
    if obj.get("images") is not None:
        images = {}
        for key, val in _dict(obj["images"], f"{where}.images").items():
            w = f"{where}.images.{key}"
            try:
                level = int(key)
            except ValueError:
                _fail(w, "keys are levels written as strings")
            images[level] = group_from_json(val, w)
        kwargs["images"] = images
    try:
        return CurveRecord(**kwargs)
    except MalformedRecord as exc:
        _fail(where, str(exc))


def record_to_json(rec: CurveRecord) -> dict:
    out: dict[str, Any] = {}
    if rec.name:
        out["name"] = rec.name
    for key in ("field_disc_primes", "conductor_norm_primes", "zeta_in_F", "entanglement_set"):
        val = getattr(rec, key)
        if val is not None:
            out[key] = sorted(val)
    if rec.local is not None:
        out["local"] = [
            {
                "p": p,
                "ideals": [
                    {"e": I.e, "reduction": I.reduction.value, **({"v_j": I.v_j} if I.v_j is not None else {})}
                    for I in loc.ideals
                ],
            }
            for p, loc in sorted(rec.local.items())
        ]
    if rec.cm is not None:
        out["cm"] = {"field_is_K_of_j": rec.cm.field_is_K_of_j}
    if rec.cyclotomic_trivial is not None:
        out["cyclotomic_trivial"] = {
            str(p): {"trivial_through": "all" if c.trivial_through is None else c.trivial_through, "r": c.r}
            for p, c in sorted(rec.cyclotomic_trivial.items())
        }
    for key in ("cyclotomic_disjoint", "j_cube_root_in_F"):
        if getattr(rec, key) is not None:
            out[key] = getattr(rec, key)
    if rec.images is not None:
        out["images"] = {str(m): group_to_json(G) for m, G in sorted(rec.images.items())}
    return out


# -- files ----------------------------------------------------------------------------------


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MalformedRecord(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"{path}: line {exc.lineno}: {exc.msg}") from exc


def _ingest(path, parser):
    obj = load_json(path)
    try:
        return parser(obj, str(path))
    except MalformedRecord:
        raise
    except CoincidenceError as exc:
        raise MalformedRecord(f"{path}: {exc}") from exc


def ingest_group(path: str | Path) -> MatGroup:
    return _ingest(path, group_from_json)


def ingest_image(path: str | Path) -> PAdicImage:
    return _ingest(path, image_from_json)


def ingest_record(path: str | Path) -> CurveRecord:
    return _ingest(path, record_from_json)
