"""End-to-end smoke tests for the python bindings."""

import math
from fractions import Fraction

import pytest

import ffdist


def test_field_arithmetic():
    F = ffdist.Field(3, 2)
    assert (F.p, F.k, F.q) == (3, 2, 9)
    for a in range(1, 9):
        assert F.mul(a, F.inv(a)) == F.from_integer(1)
        assert F.add(a, F.neg(a)) == 0
    # eta is multiplicative and -1 is a square in GF(9)
    assert F.eta(F.neg(F.from_integer(1))) == 1
    squares = sum(1 for a in range(1, 9) if F.eta(a) == 1)
    assert squares == 4
    with pytest.raises(RuntimeError):
        F.inv(0)
    with pytest.raises(RuntimeError):
        ffdist.Field(12, 1)


def test_space_roundtrip():
    F = ffdist.Field(5)
    V = ffdist.Space(F, 3)
    assert V.points == 125
    for x in (0, 1, 17, 124):
        assert V.encode(V.decode(x)) == x
    x, y = V.encode([1, 2, 3]), V.encode([4, 0, 1])
    assert V.dot(x, y) == F.add(F.mul(1, 4), F.mul(3, 1))


def test_sphere_sizes_match_cli_example():
    F = ffdist.Field(3)
    V = ffdist.Space(F, 2)
    fn = ffdist.form(V, "quadratic:diag=1,1")
    sizes = fn.sphere_sizes()
    assert sizes[1] == 4  # |S_1| = q + 1 here
    assert sum(sizes) == 9
    assert all(s in (F.q - 1, F.q + 1) for s in sizes[1:])
    assert sorted(fn.sphere(1)) == fn.sphere(1)
    assert len(fn.sphere(1)) == 4


def test_form_parsing_rejects_singular():
    F = ffdist.Field(3)
    V = ffdist.Space(F, 2)
    with pytest.raises(RuntimeError):
        ffdist.form(V, "quadratic:matrix=[[1,0],[0,0]]")


def test_cycle_count_matches_cli_example():
    F = ffdist.Field(3)
    V = ffdist.Space(F, 2)
    fn = ffdist.form(V, "quadratic:diag=1,1")
    A = ffdist.point_set(V, "full")
    rep = ffdist.count_cycles(fn, 4, 1, A)
    assert rep["raw"] == 324
    assert rep["normalized"] == Fraction(4)
    # the generic counter agrees with the closed-form engine
    g = ffdist.graph("cycle:4", 1)
    assert ffdist.count_graph(fn, g, A)["raw"] == 324


def test_normalization_identity():
    F = ffdist.Field(5)
    V = ffdist.Space(F, 2)
    fn = ffdist.form(V, "bilinear:dot")
    A = ffdist.point_set(V, "random:12:7")
    g = ffdist.graph("star:3", 2)
    rep = ffdist.count_graph(fn, g, A)
    n, m = g.vertices, len(g.edges)
    assert rep["normalized"] == Fraction(rep["raw"] * F.q**m, len(A) ** n)


def test_character_sums():
    F = ffdist.Field(7)
    assert ffdist.gauss_sum(F)["magnitude"] == pytest.approx(math.sqrt(7))
    bound = 2 * math.sqrt(7) + 1e-9
    for a in range(1, 7):
        for b in range(1, 7):
            assert ffdist.kloosterman_sum(F, a, b)["magnitude"] <= bound
            assert ffdist.salie_sum(F, a, b)["magnitude"] <= bound


def test_sphere_fourier_bound():
    F = ffdist.Field(5)
    V = ffdist.Space(F, 2)
    fn = ffdist.form(V, "quadratic:diag=1,1")
    bound = 2 * F.q ** (-1.5) + 1e-9
    assert all(
        ffdist.sphere_fourier(fn, t, m)["magnitude"] <= bound
        for t in range(1, 5)
        for m in range(1, 25)
    )
    assert ffdist.quadratic_weil(fn, 1, 0)


def test_run_check():
    (rec,) = ffdist.run_check("check=gauss; p=5; k=1")
    assert rec["status"] == "ok"
    assert rec["result"]["theorem"] == "gauss-modulus"
    assert rec["result"]["holds"] and rec["result"]["exact"]
    with pytest.raises(ValueError):
        ffdist.run_check("check=nonsense; p=5; k=1")


def test_verify_quick_suite():
    out = ffdist.verify(suite="quick")
    s = out["summary"]
    assert s["hard_failures"] == 0
    assert s["error_rows"] == 0 and s["budget_rows"] == 0
    assert s["rows"] == len(out["records"]) > 0
    assert out["jsonl"].splitlines()[0].startswith('{"schema":"ffdist-report/1"')
    # determinism: an identical run reproduces the report byte for byte
    assert ffdist.verify(suite="quick")["jsonl"] == out["jsonl"]


def test_verify_grid_mode():
    out = ffdist.verify(theorem="functional-distance", q=3, d=2, form="bilinear:dot", set="full")
    assert out["summary"]["rows"] == 2
    assert all(r["result"]["holds"] for r in out["records"])
    with pytest.raises(ValueError):
        ffdist.verify(q=12, theorem="all")
