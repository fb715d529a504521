"""Regenerate src/coincidence/fixtures/corpus.json.

Expected values are typed in here by hand; nothing is computed by the package.
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "coincidence" / "fixtures" / "corpus.json"
GL = lambda n: {"named": "GL2", "n": n}
SL = lambda n: {"named": "SL2", "n": n}
GL5 = {"modulus": 5, "generators": [[2, 0, 0, 1], [1, 1, 0, 1], [0, 4, 1, 0]]}
SL3 = {"modulus": 3, "generators": [[1, 1, 0, 1], [0, 2, 1, 0]]}
GL2_2 = {"modulus": 2, "generators": [[1, 1, 0, 1], [0, 1, 1, 0]]}
CARTAN5 = {"modulus": 5, "generators": [[2, 0, 0, 1], [1, 0, 0, 2]]}
BOREL5 = {"modulus": 5, "generators": [[2, 0, 0, 1], [1, 0, 0, 2], [1, 1, 0, 1]]}
fx = []
def add(id, kind, inputs, expected, basis, citation, description=""):
    fx.append({"id": id, "kind": kind, "description": description, "inputs": inputs,
               "expected": expected, "basis": basis, "citation": citation})

PAPER, TRIV = "printed value", "immediate"
# orders
for n, o in [(2, 6), (3, 48), (4, 96), (5, 480), (6, 288), (7, 2016), (8, 1536), (9, 3888), (12, 4608)]:
    add(f"arith.gl2_order.{n:02d}", "gl2_order", {"n": n}, o,
        "derived: brute-force count of invertible 2x2 matrices", "Prop. order of GL2(m)")
add("arith.element_order.T5", "element_order", {"modulus": 5, "matrix": [1, 1, 0, 1]}, 5, TRIV, "notation T")
add("arith.element_order.S4", "element_order", {"modulus": 4, "matrix": [0, -1, 1, 0]}, 4, TRIV, "notation S")
# kernels
for (M, m, o, e) in [(4, 2, 16, 2), (8, 4, 16, 2), (9, 3, 81, 3), (25, 5, 625, 5)]:
    add(f"kernel.{M}_{m}", "kernel", {"M": M, "m": m}, {"order": o, "exponent": e},
        PAPER, "eq. noyau de la projection")
# derived subgroups
for m, dorder, idx, inv in [(2, 3, 2, [2]), (3, 8, 3, [3]), (4, 12, 4, [4]), (5, 120, 1, []), (6, 24, 6, [6])]:
    add(f"appendix.derived_sl2.{m:02d}", "derived", {"group": SL(m)},
        {"order": dorder, "index_in_sl2": idx, "invariants": inv}, "derived: SL2(m)/D cyclic of order gcd(m,12)",
        "Prop. groupe derive SL")
add("appendix.derived_gl2.03", "derived", {"group": GL(3)}, {"order": 24, "index_in_sl2": 1, "invariants": [2]},
    "derived: D(GL2(m)) = SL2(m) for odd m, quotient is the unit group", "Appendix")
add("appendix.derived_gl2.04", "derived", {"group": GL(4)}, {"order": 24, "index_in_sl2": 2, "invariants": [2, 2]},
    "derived: det and the sign character of GL2(2) are independent", "Appendix")
# commutator witnesses
A = [[-1, -1, 0, -1], [1, -2, 1, -1]]
B = [[-1, -1, 0, -1], [0, -1, 1, 0]]
for m in (2, 3, 4, 12):
    add(f"appendix.commutator_A.{m:02d}", "commutator", {"modulus": m, "x": A[0], "y": A[1]},
        {"value": [v % m for v in (3, -1, 1, 0)]}, PAPER, "Appendix, matrix A")
    add(f"appendix.commutator_B.{m:02d}", "commutator", {"modulus": m, "x": B[0], "y": B[1]},
        {"value": [v % m for v in (2, 1, 1, 1)]}, PAPER, "Appendix, matrix B")
add("appendix.commutator_outside_D_SL3", "commutator",
    {"modulus": 3, "x": [1, -1, 1, 1], "y": [1, 1, 0, -1], "in_derived_of": SL(3)},
    {"value": [1, 1, 2, 0], "in_derived": False}, PAPER, "Appendix, commutator outside D(SL2(3))")
add("appendix.commutator_in_D_GL4", "commutator",
    {"modulus": 4, "x": [0, 1, 1, 0], "y": [2, 1, -1, 1], "in_derived_of": GL(4)},
    {"value": [0, 3, 1, 1], "in_derived": True}, PAPER, "Appendix, D(GL2(4))")
add("appendix.commutator_outside_D_SL4", "commutator",
    {"modulus": 4, "x": [0, 1, 1, 0], "y": [2, 1, -1, 1], "in_derived_of": SL(4)},
    {"value": [0, 3, 1, 1], "in_derived": False}, PAPER, "Appendix, D(SL2(4))")
for m, o in [(2, 3), (3, 8), (4, 12)]:
    add(f"appendix.AB_group.{m}", "generated_normal",
        {"modulus": m, "generators": [[3, -1, 1, 0], [2, 1, 1, 1]], "ambient": SL(m)},
        {"order": o, "normal": True}, PAPER, "Appendix, orders 3, 8 and 12")
# lifting
for p, ok in [(2, "liftable"), (3, "liftable"), (5, "not_liftable"), (7, "not_liftable")]:
    add(f"lifting.borel.T{p}", "lift_element", {"modulus": p, "matrix": [1, 1, 0, 1], "to": p * p}, ok,
        PAPER, "Lemma borel subgroup")
add("lifting.borel.T4", "lift_element", {"modulus": 4, "matrix": [1, 1, 0, 1], "to": 8}, "not_liftable",
    PAPER, "Lemma borel subgroup")
add("lifting.gl2_3_to_9", "lift_group", {"group": GL(3), "to": 9}, {"status": "liftable", "order": 48},
    PAPER, "Remark, lifting of GL2(3) of order 48")
for M in (4, 6, 8):
    add(f"lifting.gl2_2_to_{M}", "lift_group", {"group": GL2_2, "to": M}, {"status": "liftable", "order": 6},
        PAPER, "Example split liftable mod 2")
W = {"modulus": 9, "generators": [[1, 0, 0, -1], [-2, 2, -2, -2], [4, -2, -3, 4]]}
add("lifting.paper_gl2_9_witness", "group_order", {"group": W, "reduce_to": 3}, {"order": 48, "image_order": 48},
    PAPER, "Remark, lifting of GL2(3) of order 48")
ZL = {"modulus": 8, "generators": [[-1, 1, -1, 0], [0, 1, 1, 0]]}
add("lifting.z_lift_gl2_2_mod8", "group_order", {"group": ZL, "reduce_to": 2}, {"order": 6, "image_order": 6},
    PAPER, "Example split liftable mod 2")
for m in (3, 7, 16):
    add(f"lifting.every_multiple_12.{m:02d}", "group_order",
        {"group": {"modulus": m, "generators": [[0, -1, 1, 1], [0, 1, 1, 0]]}}, {"order": 12},
        PAPER, "Prop. split liftable modulo every multiple")
    add(f"lifting.every_multiple_8.{m:02d}", "group_order",
        {"group": {"modulus": m, "generators": [[1, 0, 0, -1], [0, 1, -1, 0]]}}, {"order": 8},
        PAPER, "Prop. split liftable modulo every multiple")
add("lifting.sequence_splits.T5_preimage", "sequence_splits",
    {"group": {"preimage_of": {"modulus": 5, "generators": [[1, 1, 0, 1]]}, "to": 25}, "m": 5}, None,
    PAPER, "Lemma borel subgroup")
add("lifting.sequence_splits.gl2_9", "sequence_splits", {"group": GL(9), "m": 3}, 48,
    PAPER, "Remark, lifting of GL2(3) of order 48")
add("lifting.sequence_splits.40a4_preimage", "sequence_splits",
    {"group": {"preimage_of": {"modulus": 2, "generators": [[0, 1, 1, 0]]}, "to": 4}, "m": 2}, 2,
    PAPER, "Remark suite ell_k, 40.a4 image")
# p-adic
IMG40 = {"p": 2, "depth": 2, "group": {"modulus": 4, "generators": [[0, 1, 1, 0]]}}
add("padic.40a4.u", "index_profile", {"image": IMG40, "kmax": 4, "fields": ["u", "coincidences"]},
    {"u": [16, 1, 1], "coincidences": [1]}, PAPER, "example table row 40.a4")
add("padic.40a4.i", "index_profile", {"image": IMG40, "kmax": 4, "fields": ["i", "j"]},
    {"i": [3, 48, 48, 48], "j": [1, 1, 1, 1]}, "derived: |GL2(2^k)| / |G_k| by hand, G_1 = G_2 of order 2",
    "Remark suite ell_k")
IMGSL3 = {"p": 3, "depth": 1, "group": SL3}
add("padic.sl2_3.profile", "index_profile", {"image": IMGSL3, "kmax": 3},
    {"u": [1, 1], "i": [2, 2, 2], "j": [2, 2, 2], "ell": [1, 1, 1], "coincidences": []},
    "derived: the full preimage of SL2(3) is the determinant-1-mod-3 subgroup, index 2 at every level",
    "Prop. suite i_k")
for label, p, u in [("14.a6", 2, [1, 2, 1]), ("15.a1", 2, [4, 4, 2, 1]), ("15.a2", 2, [4, 4, 1]),
                    ("15.a4", 2, [4, 2, 2, 2, 1]), ("15.a5", 2, [8, 2, 1]), ("15.a8", 2, [8, 4, 1]),
                    ("20.a3", 2, [2, 2, 1]), ("40.a4", 2, [16, 1]), ("19.a1", 3, [3, 3, 1]),
                    ("54.a2", 3, [9, 1]), ("11.a1", 5, [5, 1]), ("11.a2", 5, [1, 1])]:
    add(f"padic.table_shape.{label}", "ratio_sequence", {"p": p, "u": u}, True, PAPER, f"example table row {label}")
add("padic.ratio_violation", "ratio_sequence", {"p": 3, "u": [1, 3]}, False, TRIV, "Prop. suite i_k")
for p, k, b in [(2, 1, 16), (2, 2, 128), (3, 1, 81), (5, 2, 390625)]:
    add(f"padic.adelic_bound.{p}_{k}", "adelic_bound", {"p": p, "k": k}, b, PAPER, "Prop. adelic index")
# X_20b
for t, j in [("0", "-1188"), ("1", "-36"), ("-1", "pole"), ("1/2", "-78529/324")]:
    add(f"xcurve.eval.{t.replace('/', '_')}", "xcurve_eval", {"t": t}, j,
        "derived: independent sympy evaluation of the printed map", "X_20b j-map")
add("xcurve.search.0_1728", "xcurve_search", {"targets": [0, 1728], "height": 30}, {"0": [], "1728": []}, PAPER, "X_20b remark")

# rule deck
def rec(**kw):
    return kw
def audit(id, m, n, r, overall, fired, citation, r2=None):
    inp = {"m": m, "n": n, "record": r}
    if r2 is not None:
        inp["record2"] = r2
    add(f"rules.{id}", "audit", inp, {"overall": overall, "obstructed_by": fired},
        "derived: hand application of the rule hypotheses", citation)
OB, OK = "obstructed", "constraint_satisfied"
loc = lambda p, red, e=1, v_j=None: {"p": p, "ideals": [dict({"e": e, "reduction": red}, **({"v_j": v_j} if v_j is not None else {}))]}
audit("R1_R2.fires.5_35", 5, 35, rec(name="Q, conductor 11", field_disc_primes=[], conductor_norm_primes=[11],
      local=[loc(7, "good_ordinary")]), OB, ["R1", "R2"], "Cor. cas F=Q pour coincidence")
audit("R1_R2.holds.5_35", 5, 35, rec(name="Q, conductor 7", field_disc_primes=[], conductor_norm_primes=[7],
      local=[loc(7, "multiplicative_split")]), OK, [], "Cor. cas F=Q pour coincidence")
audit("R2.bullet_4.fires.3_12", 3, 12, rec(field_disc_primes=[], local=[loc(2, "good")]), OB, ["R2"],
      "Cor. coincidence and reduction")
audit("R2.bullet_4.holds.3_12", 3, 12, rec(field_disc_primes=[], local=[loc(2, "additive_not_potentially_good")]),
      OK, [], "Cor. coincidence and reduction")
audit("R2.bullet_3.fires.2_18", 2, 18, rec(field_disc_primes=[], conductor_norm_primes=[3],
      local=[loc(3, "multiplicative_split")]), OB, ["R2"], "Cor. coincidence and reduction")
audit("R2.bullet_3.holds.2_18", 2, 18, rec(field_disc_primes=[], conductor_norm_primes=[3],
      local=[loc(3, "additive_potentially_good")]), OK, [], "Cor. coincidence and reduction")
audit("R2.bullet_3.fires.5_40", 5, 40, rec(field_disc_primes=[], local=[loc(2, "multiplicative_nonsplit")]),
      OB, ["R2"], "Cor. coincidence and reduction")
audit("R2.bullet_3.holds.5_40", 5, 40, rec(field_disc_primes=[], local=[loc(2, "additive_potentially_good")]),
      OK, [], "Cor. coincidence and reduction")
audit("R2.bullet_5.fires.3_96", 3, 96, rec(field_disc_primes=[], local=[loc(2, "additive_potentially_good")]),
      OB, ["R2"], "Cor. coincidence and reduction")
CYC3_ALL = {"3": {"trivial_through": "all", "r": 0}}
audit("R3.fires.2_27", 2, 27, rec(field_disc_primes=[3], cyclotomic_trivial=CYC3_ALL), OB, ["R3"],
      "Cor. greatest prime divisor coincidence")
audit("R3.holds.2_9", 2, 9, rec(field_disc_primes=[3], cyclotomic_trivial=CYC3_ALL), OK, [],
      "Cor. greatest prime divisor coincidence")
audit("R4.fires.5_25", 5, 25, rec(field_disc_primes=[], cyclotomic_trivial={"5": {"trivial_through": "all", "r": 0}}),
      OB, ["R4"], "Cor. vertical coincidence and trivial intersection")
CYC5_MU5 = {"5": {"trivial_through": 0, "r": 1}}
audit("R4.holds.5_25", 5, 25, rec(field_disc_primes=[5], cyclotomic_trivial=CYC5_MU5), OK, [],
      "Cor. vertical coincidence and trivial intersection")
audit("R5.fires.3_9", 3, 9, rec(local=[loc(3, "good_supersingular", e=1)]), OB, ["R5"],
      "Thm. ramification and vertical coincidence")
audit("R5.holds.3_9", 3, 9, rec(local=[loc(3, "good_supersingular", e=3)]), OK, [],
      "Thm. ramification and vertical coincidence")
audit("R6.fires.9_27", 9, 27, rec(cm={"field_is_K_of_j": True}), OB, ["R6"], "Prop. coincidence CM")
audit("R6.holds.2_4", 2, 4, rec(cm={"field_is_K_of_j": True}), OK, [], "Prop. coincidence CM")
audit("R7.fires.5_15", 5, 15, rec(zeta_in_F=[2], images={"5": GL5}), OB, ["R7"], "Thm. large image m odd")
audit("R7.holds.3_9", 3, 9, rec(zeta_in_F=[2], cyclotomic_disjoint=False, images={"3": SL3}), OK, [],
      "Thm. large image m odd")
audit("R8.fires.5_25", 5, 25, rec(field_disc_primes=[5], cyclotomic_trivial=CYC5_MU5, images={"5": GL5}),
      OB, ["R8"], "Thm. T and vertical coincidence")
audit("R8.holds.5_25", 5, 25, rec(field_disc_primes=[5], cyclotomic_trivial=CYC5_MU5, images={"5": CARTAN5}),
      OK, [], "Thm. T and vertical coincidence")
audit("R8.tate.fires.7_49", 7, 49, rec(field_disc_primes=[7], cyclotomic_trivial={"7": {"trivial_through": 0, "r": 1}},
      local=[loc(11, "multiplicative_split", v_j=-1)]), OB, ["R8"], "Thm. T and vertical coincidence")
audit("R9.fires.2_18", 2, 18, rec(field_disc_primes=[3], cyclotomic_trivial=CYC3_ALL, images={"2": GL2_2}),
      OB, ["R9"], "Lemma cyclic subfield order")
audit("R9.holds.2_6", 2, 6, rec(field_disc_primes=[3], cyclotomic_trivial=CYC3_ALL, images={"2": GL2_2}),
      OK, [], "Lemma cyclic subfield order")
add("rules.J3.contradiction", "audit", {"m": 3, "n": 9, "record": rec(j_cube_root_in_F=True, images={"3": SL3})},
    {"error": "MalformedRecord"}, "derived: SL2(3) in the image forces a cubic extension", "Lemma cube root of j")
# two curves
audit("two.R1p_R3p.fires.5_35", 5, 35, rec(field_disc_primes=[], conductor_norm_primes=[11], local=[loc(7, "good_ordinary")]),
      OB, ["R1'", "R3'"], "Thm. coincidence and reduction two curves",
      r2=rec(field_disc_primes=[], conductor_norm_primes=[11]))
audit("two.R1p_R3p.holds.5_35", 5, 35, rec(field_disc_primes=[], conductor_norm_primes=[7], local=[loc(7, "multiplicative_split")]),
      OK, [], "Thm. coincidence and reduction two curves",
      r2=rec(field_disc_primes=[], conductor_norm_primes=[7]))
audit("two.R2p.fires.5_25", 5, 25, rec(field_disc_primes=[], cyclotomic_trivial={"5": {"trivial_through": "all", "r": 0}}),
      OB, ["R2'"], "Thm. vertical coincidence two curves", r2=rec(field_disc_primes=[]))
audit("two.R2p.holds.5_25", 5, 25, rec(field_disc_primes=[5], cyclotomic_trivial=CYC5_MU5),
      OK, [], "Thm. vertical coincidence two curves", r2=rec(field_disc_primes=[5]))
audit("two.R4p.fires.5_15", 5, 15, rec(zeta_in_F=[2], images={"5": GL5}), OB, ["R4'"],
      "Thm. large image two curves", r2=rec())
audit("two.R4p.holds.5_15", 5, 15, rec(zeta_in_F=[2], images={"5": BOREL5}), OK, [],
      "Thm. large image two curves", r2=rec())
OUT.write_text(json.dumps({"fixtures": fx}, indent=1) + "\n")
print(f"wrote {len(fx)} fixtures to {OUT}")
