import json
import os
import subprocess
from fractions import Fraction

import pytest

import pinv

Y_1221 = {(1, 2): 2, (2, 4): 3, (3, 4): 5, (5, 6): 7, (2, 5): 11, (4, 6): 13}


def test_root_sets():
    assert pinv.base([2, 1, 3, 2]) == [(1, 5), (2, 3), (3, 4), (5, 8), (6, 7)]
    assert pinv.phi([2, 1, 3, 2]) == [(4, 7), (4, 8), (5, 7)]
    p = pinv.psi([2, 2, 3, 3, 2])
    assert p["first"] == [(5, 9), (8, 12)]
    assert p["second"] == [(5, 8), (8, 11), (9, 11)]


def test_diagram_and_dimension():
    assert "#" in pinv.diagram([2, 1, 3, 2])
    assert json.loads(pinv.diagram([2, 3, 2], "json"))["n"] == 7
    assert pinv.orbit_dimension([2, 2, 3, 3, 2]) == 52
    assert pinv.orbit_dimension([5]) == 0
    assert pinv.orbit_dimension("2,1,3,1,4,2") == 62


def test_invariants():
    docs = pinv.invariants([1, 2, 2, 1])
    kinds = [d["kind"] for d in docs]
    assert kinds.count("M") == 4 and kinds.count("L") == 2 and kinds.count("B") == 1


def test_canonicalize_worked_example():
    out = pinv.canonicalize("1,2,2,1", Y_1221)
    assert out["method"] == "torus"
    assert out["coefficients"] == {(4, 6): Fraction(39, 77)}
    assert out["invariants"][(4, 6)] == Fraction(-39, 77)


def test_errors():
    with pytest.raises(pinv.PinvError, match="NonPositive"):
        pinv.base([2, 0])
    with pytest.raises(pinv.PinvError, match="UnknownVariable"):
        pinv.canonicalize([1, 2, 2, 1], {(2, 3): 1})
    with pytest.raises(ValueError):
        pinv.diagram([2, 1], "svg")


def test_cli_in_process():
    code, out, _ = pinv.run("orbit-dim", "--blocks", "2,1,3,1,4,2")
    assert code == 0 and out == "62\n"
    code, _, _ = pinv.run("diagram")
    assert code == 2


@pytest.mark.skipif("PINV_BIN" not in os.environ, reason="pinv binary path not given")
def test_cli_binary():
    res = subprocess.run(
        [os.environ["PINV_BIN"], "check", "--blocks", "1,2,2,1", "--trials", "5"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert "all invariance checks passed: 4 M, 2 L, 0 A, 1 B" in res.stdout
