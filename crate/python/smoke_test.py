#!/usr/bin/env python3
"""Smoke test for the qlrc Python bindings.

Exercises every exported entry point against known-good values and
cross-checks the dict outputs against object-level computations.
Run after `pip install -e . --no-build-isolation` from the repo root:

    python3 python/smoke_test.py
"""

import qlrc


def check_field():
    f = qlrc.Field(3)
    assert (f.p, f.m, f.q) == (3, 1, 3)
    assert f.lambda_() == 1
    assert f.add(1, 2) == 0
    assert f.mul(2, 2) == 1
    assert f.neg(1) == 2
    assert f.inv(2) == 2
    assert f.pow(2, -1) == 2
    assert f.conjugation_base() is None

    f9 = qlrc.Field(3, 2)
    assert f9.q == 9 and len(f9) == 9
    assert f9.conjugation_base() == 3
    for a in f9.elements():
        assert f9.conjugate(f9.conjugate(a)) == a
    assert f9.unit_roots(2) == [1, 2]
    assert f9.power_sum(8, 8) == 2
    assert f9.power_sum(8, 3) == 0
    assert sorted(f9.subfield_elements()) == [0, 1, 2]
    assert f9.descriptor()["p"] == 3 and f9.descriptor()["m"] == 2

    try:
        qlrc.Field(4)
    except ValueError:
        pass
    else:
        raise AssertionError("Field(4) must be rejected (4 is not prime)")


def check_matrix():
    m = qlrc.matrix("adot", 3)
    assert m["vandermonde"] == [[1, 1, 1], [0, 1, 2], [0, 1, 1]]
    assert m["matrix"] == [[1, 1, 1], [0, 1, 2], [1, 2, 2]]
    assert m["gram_kind"] == "euclidean"
    assert m["gram"] == [[0, 0, 2], [0, 2, 0], [2, 0, 0]]

    h = qlrc.matrix("addot", 3, 2)
    assert h["gram_kind"] == "hermitian"
    assert h["pairing"] == [8, 5, 2, 7, 4, 1, 6, 3, 0]
    for i, row in enumerate(h["gram"]):
        nonzero = [j for j, v in enumerate(row) if v != 0]
        assert nonzero == [h["pairing"][i]]


def check_codes():
    f9 = qlrc.Field(3, 2)
    c = qlrc.Code.rs(f9, 9, 6)
    assert (c.n, c.k) == (9, 6) and c.is_mds()
    cert = c.min_distance()
    assert cert["kind"] == "exact" and cert["value"] == 4

    dual = c.dual("euclidean")
    assert dual.k == 3
    again = qlrc.Code.from_descriptor(c.descriptor())
    assert again.generator() == c.generator()

    herm = qlrc.Code.hermitian_dc_grs(3, 0, 8)
    assert (herm.n, herm.k) == (9, 8)
    assert herm.contains(herm.dual("hermitian"))

    explicit = qlrc.Code(qlrc.Field(3), [[1, 1, 1]])
    assert (explicit.n, explicit.k) == (3, 1)
    assert explicit.contains_word([2, 2, 2])
    assert not explicit.contains_word([1, 2, 0])


def check_construct():
    out = qlrc.construct({"family": "el36_3", "q": 5, "i": 1, "j": 1})
    claims = out["claims"]
    assert (claims["n"], claims["k_q"], claims["d"]) == (25, 15, 2)
    assert (claims["r"], claims["delta"]) == (4, 2)
    assert out["level"] == "full"
    assert out["report"]["optimal"] is True
    assert out["report"]["quantum_defect"] == 0
    assert out["structure"]["verified"] is True

    spec = qlrc.ProductSpec.from_descriptor(out["spec"])
    assert spec.m * spec.h == claims["n"]
    assert sum(c.k for c in spec.constituents()) == claims["k_c"]
    assert spec.nested

    gram = spec.check_dual_containing("euclidean")
    assert gram["verdict"] is True and gram["failures"] == []

    code = spec.code()
    assert (code.n, code.k) == (claims["n"], claims["k_c"])
    assert code.contains(spec.dual("euclidean"))

    cert = spec.distance()
    assert cert["kind"] == "exact" and cert["value"] == claims["d"]

    assert (
        qlrc.quantum_defect(
            claims["n"], claims["k_q"], claims["d"], claims["r"], claims["delta"], claims["k_c"]
        )
        == 0
    )
    assert (
        qlrc.singleton_defect(claims["n"], claims["k_c"], claims["d"], claims["r"], claims["delta"])
        == 0
    )

    try:
        qlrc.construct({"family": "eel41", "q": 5, "m": 2, "h": 4, "t": 1, "d": 2})
    except ValueError:
        pass
    else:
        raise AssertionError("eel41 over GF(5) with h = 4 must fail (1 - h is not a square)")


def check_product_from_parts():
    f3 = qlrc.Field(3)
    adot = qlrc.matrix("adot", 3)["matrix"]
    codes = [qlrc.Code.rs(f3, 3, 2), qlrc.Code.rs(f3, 3, 1), qlrc.Code.rs(f3, 3, 1)]
    spec = qlrc.ProductSpec(codes, adot)
    assert (spec.m, spec.h, spec.s) == (3, 3, 3)
    report = spec.check_dual_containing("euclidean")
    assert report["verdict"] == spec.code().contains(spec.dual("euclidean"))


def check_table():
    rows = qlrc.table(3)
    assert rows, "table(3) must not be empty"
    keys = [(r["n"], r["k_q"], r["d"], r["r"], r["delta"]) for r in rows]
    assert keys == sorted(keys)
    assert (3, 1, 2, 2, 2) in keys
    assert (9, 3, 2, 2, 2) in keys
    for row in rows:
        assert row["verification"] in ("full", "parameter")
        assert row["sources"]


def main():
    checks = [
        check_field,
        check_matrix,
        check_codes,
        check_construct,
        check_product_from_parts,
        check_table,
    ]
    for check in checks:
        check()
        print(f"{check.__name__}: ok")
    print(f"all {len(checks)} smoke checks passed")


if __name__ == "__main__":
    main()
