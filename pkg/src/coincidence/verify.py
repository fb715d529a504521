"""Fixture corpus and the runner behind ``coincidence verify-paper``.

Each fixture names a computation, its inputs and the exact expected output.
Fixtures in ``fixtures/external`` need image data from an outside database;
when their input file is absent they are reported as SKIPPED.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from .arith import gl2_order
from .errors import CoincidenceError, Pole
from .io import group_from_json, image_from_json, record_from_json
from .lifting import (
    element_split_liftable,
    full_preimage,
    group_split_liftable,
    reduction_kernel,
    sequence_splits,
)
from .matgroup import (
    MatGroup,
    abelian_invariants,
    closure,
    commutator,
    derived_subgroup,
    gl2,
    reduce_group,
    sl2,
)
from .modmat import Mat2, element_order
from .padic import adelic_index_lower_bound, check_ratio_sequence, detect_vertical_coincidences, index_profile
from .rules import Verdict, audit
from .xmodular import j_of_t, parse_rational, search_preimages

__all__ = ["FixtureResult", "load_corpus", "run_corpus", "run_fixture"]


@dataclass(frozen=True)
class FixtureResult:
    id: str
    status: str  # PASSED, FAILED or SKIPPED
    detail: str = ""


def _group(spec: Any) -> MatGroup:
    if isinstance(spec, dict) and "named" in spec:
        name, n = spec["named"], spec["n"]
        return {"GL2": gl2, "SL2": sl2}[name](n)
    if isinstance(spec, dict) and "preimage_of" in spec:
        return full_preimage(_group(spec["preimage_of"]), spec["to"])
    return group_from_json(spec, "inputs.group")


def _mat(spec: dict) -> Mat2:
    return Mat2.from_literal(spec["modulus"], spec["matrix"])


def _frac(x: Fraction) -> str:
    return str(x)


# -- handlers: inputs -> actual output in the same shape as "expected" --------------------


def _gl2_order(inp):
    return gl2_order(inp["n"])


def _element_order(inp):
    return element_order(_mat(inp))


def _group_order(inp):
    G = _group(inp["group"])
    out = {"order": G.order}
    if "reduce_to" in inp:
        out["image_order"] = reduce_group(G, inp["reduce_to"]).order
    return out


def _derived(inp):
    G = _group(inp["group"])
    D = derived_subgroup(G)
    sl = sl2(G.modulus)
    return {"order": D.order, "index_in_sl2": sl.order // D.order, "invariants": abelian_invariants(G, D)}


def _commutator(inp):
    n = inp["modulus"]
    c = commutator(tuple(inp["x"]), tuple(inp["y"]), n)
    out = {"value": Mat2(n, c).to_literal()}
    if "in_derived_of" in inp:
        out["in_derived"] = c in derived_subgroup(_group(inp["in_derived_of"])).element_set
    return out


def _generated_normal(inp):
    G = closure(inp["modulus"], inp["generators"])
    ambient = _group(inp["ambient"])
    return {"order": G.order, "normal": G.is_normal_in(ambient)}


def _kernel(inp):
    K = reduction_kernel(inp["M"], inp["m"])
    return {"order": K.order, "exponent": K.exponent()}


def _lift_element(inp):
    return element_split_liftable(_mat(inp), inp["to"]).status.value


def _lift_group(inp):
    res = group_split_liftable(_group(inp["group"]), inp["to"])
    out = {"status": res.status.value}
    if res.witness is not None:
        out["order"] = res.witness.order
    return out


def _sequence_splits(inp):
    C = sequence_splits(_group(inp["group"]), inp["m"])
    return None if C is None else C.order


def _profile(inp):
    X = image_from_json(inp["image"], "inputs.image")
    prof = index_profile(X, inp["kmax"])
    out = {"u": list(prof.u), "i": list(prof.i), "j": list(prof.j), "ell": list(prof.ell)}
    out["coincidences"] = detect_vertical_coincidences(X, inp["kmax"])
    return {k: out[k] for k in inp.get("fields", out)}


def _ratio_sequence(inp):
    return check_ratio_sequence(inp["p"], inp["u"]).passed


def _adelic_bound(inp):
    return adelic_index_lower_bound(inp["p"], inp["k"])


def _audit(inp):
    rec = record_from_json(inp["record"], "inputs.record")
    rec2 = record_from_json(inp["record2"], "inputs.record2") if "record2" in inp else None
    report = audit(inp["m"], inp["n"], rec, rec2)
    fired = sorted({f.rule for f in report.findings if f.verdict is Verdict.OBSTRUCTED})
    return {"overall": report.overall.value, "obstructed_by": fired}


def _xcurve_eval(inp):
    try:
        return _frac(j_of_t(parse_rational(inp["t"])))
    except Pole:
        return "pole"


def _xcurve_search(inp):
    found = search_preimages([parse_rational(str(t)) for t in inp["targets"]], inp["height"])
    return {_frac(k): [_frac(t) for t in v] for k, v in found.items()}


HANDLERS: dict[str, Callable[[dict], Any]] = {
    "gl2_order": _gl2_order,
    "element_order": _element_order,
    "group_order": _group_order,
    "derived": _derived,
    "commutator": _commutator,
    "generated_normal": _generated_normal,
    "kernel": _kernel,
    "lift_element": _lift_element,
    "lift_group": _lift_group,
    "sequence_splits": _sequence_splits,
    "index_profile": _profile,
    "ratio_sequence": _ratio_sequence,
    "adelic_bound": _adelic_bound,
    "audit": _audit,
    "xcurve_eval": _xcurve_eval,
    "xcurve_search": _xcurve_search,
}


def load_corpus(extra_dir: Path | None = None) -> list[dict]:
    root = resources.files("coincidence").joinpath("fixtures")
    fixtures = json.loads(root.joinpath("corpus.json").read_text())["fixtures"]
    manifest = json.loads(root.joinpath("external/manifest.json").read_text())["fixtures"]
    ext_dir = Path(extra_dir) if extra_dir else Path(str(root.joinpath("external")))
    for entry in manifest:
        entry = dict(entry)
        path = ext_dir / entry.pop("image_file")
        if path.exists():
            entry["inputs"] = {"image": json.loads(path.read_text()), **entry.get("inputs", {})}
        else:
            entry["skip"] = f"image data {path.name} not supplied"
        fixtures.append(entry)
    return sorted(fixtures, key=lambda f: f["id"])


def run_fixture(fx: dict) -> FixtureResult:
    if "skip" in fx:
        return FixtureResult(fx["id"], "SKIPPED", fx["skip"])
    try:
        actual = HANDLERS[fx["kind"]](fx["inputs"])
    except CoincidenceError as exc:
        actual = {"error": type(exc).__name__}
    if actual == fx["expected"]:
        return FixtureResult(fx["id"], "PASSED")
    return FixtureResult(fx["id"], "FAILED", f"expected {fx['expected']!r}, got {actual!r}")


def run_corpus(extra_dir: Path | None = None, *, workers: int = 4) -> list[FixtureResult]:
    """Run every fixture; results come back ordered by fixture id."""
    corpus = load_corpus(extra_dir)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_fixture, corpus))
