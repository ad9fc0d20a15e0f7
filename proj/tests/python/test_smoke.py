from fractions import Fraction
from pathlib import Path

import pytest

import fdqubo

DATA = Path(__file__).resolve().parents[2] / "data"


def read(name):
    return (DATA / name).read_text()


def test_compile_and_solve_slack_example():
    c = fdqubo.compile(read("slack_example.fzn"))
    assert [s["stage"] for s in c.stats] == [
        "raw",
        "no-inequalities",
        "propagated",
        "canonical",
        "binary",
    ]
    energy, bits, count = fdqubo.solve_exhaustive(c.qubo)
    assert count >= 1
    assert energy * c.qubo.scale == -2
    assert c.sidecar.decode(bits) == {"x": 0, "y": 2}


def test_qubo_text_roundtrip():
    q = fdqubo.compile(read("square.fzn"), encoding="binary").qubo
    text = q.to_text()
    assert fdqubo.check_qubo(text) == []
    back = fdqubo.Qubo.from_text(text)
    assert back.to_text() == text
    assert back.entries == q.entries
    assert all(i <= j for i, j in back.entries)


def test_energy_is_exact():
    q = fdqubo.Qubo.from_text("QUBO 2 3\nOFFSET 1\nSCALE 1\n0 0 -1\n0 1 2\n1 1 -1\n")
    assert q.energy([1, 0]) == 0
    assert q.energy([1, 1]) == 1
    assert isinstance(q.offset, Fraction)
    assert fdqubo.solve_exhaustive(q) == (0, [1, 0], 2)


def test_sidecar_json_roundtrip():
    c = fdqubo.compile(read("square.fzn"))
    text = c.sidecar.to_json()
    again = fdqubo.Sidecar.from_json(text)
    assert again.to_json() == text
    assert again.outputs == ["x", "y"]


def test_anneal_is_deterministic():
    q = fdqubo.compile(read("square.fzn")).qubo
    a = fdqubo.anneal(q, seed=3, sweeps=200)
    b = fdqubo.anneal(q, seed=3, sweeps=200)
    assert a == b
    assert a[0] >= fdqubo.solve_exhaustive(q)[0]


def test_roundtrip_reports():
    r = fdqubo.roundtrip(read("square.fzn"), encoding="onehot")
    assert r["pass"]
    assert r["oracle_objective"] == -1
    bad = fdqubo.roundtrip(read("inconsistent.fzn"))
    assert bad["pass"] and bad["inconsistent"]


def test_errors():
    with pytest.raises(fdqubo.InconsistentError):
        fdqubo.compile(read("inconsistent.fzn"))
    with pytest.raises(ValueError):
        fdqubo.compile("var 0..3: x; solve frobnicate;")
    with pytest.raises(ValueError):
        fdqubo.compile(read("square.fzn"), encoding="ternary")
    with pytest.raises(ValueError):
        fdqubo.Qubo.from_text("QUBO 2 1\nOFFSET 0\nSCALE 1\n1 0 1\n")
    wide = fdqubo.Qubo.from_text("QUBO 40 0\nOFFSET 0\nSCALE 1\n")
    with pytest.raises(fdqubo.GuardExceeded):
        fdqubo.solve_exhaustive(wide)


def test_penalty_override():
    c = fdqubo.compile(read("slack_example.fzn"), penalty=Fraction(7, 2))
    assert c.sidecar.penalty == Fraction(7, 2)
    with pytest.raises(ValueError):
        fdqubo.compile(read("slack_example.fzn"), penalty=0)
