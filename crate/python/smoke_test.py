"""Smoke test for the freefield_py extension.

Build and stage the module first:

    cargo build -p freefield-py --release --features extension-module
    cp target/release/libfreefield_py.so python/freefield_py.so
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import freefield_py as ff


def test_parse_round_trip():
    c = ff.Cochain("3*delta[0]*delta[1] - 2*hbar*bdelta[2]")
    assert str(c) == "-2*hbar*bdelta[2] + 3*delta[0]*delta[1]"
    assert ff.Cochain(str(c)) == c
    assert ff.Cochain("bdelta[1]*bdelta[1]").is_zero()


def test_parse_error():
    try:
        ff.parse("delta[0] +")
    except ValueError as e:
        assert "position 10" in str(e)
    else:
        raise AssertionError("expected a syntax error")


def test_dquantum_squares_to_zero():
    c = ff.Cochain("bdelta[0]*bdelta[2]*delta[1]^2 + alpha*bdelta[1]*delta[3]")
    assert c.dquantum().dquantum().is_zero()
    assert c.dquantum(alpha="2", hbar="1").dquantum(alpha="2", hbar="1").is_zero()


def test_relocation():
    r = ff.reduce("delta[0]", interval="-4,4", window=2)
    assert r["normal_form"] == "(alpha^2 + 1 + alpha^-2)*delta[2] + (-alpha - alpha^-1)*delta[3]"
    assert r["homotopy"] == "bdelta[1] + (alpha + alpha^-1)*bdelta[2]"
    assert r["verified"]


def test_commutators():
    alg = ff.StarAlgebra(alpha="1", geometry="massless35")
    x, y = ff.Cochain("delta[2] - delta[1]"), ff.Cochain("delta[0]")
    assert str(alg.star(x, y) - alg.star(y, x)) == "hbar"

    alg = ff.StarAlgebra()
    p = ff.Cochain("1/2*delta[1] - 1/2*delta[-1]")
    assert str(alg.star(p, y) - alg.star(y, p)) == "hbar"
    assert alg.to_weyl(alg.star(y, p)) == "q*p"


def test_cohomology():
    assert ff.cohomology("0,5", 2) == {-2: 0, -1: 0, 0: 6}


def test_checks():
    ids = ff.check_ids()
    assert len(ids) == 23
    r = ff.run_check("massive-commutator")
    assert r["status"] == "pass"
    assert r["witness"]["unnormalized"]["value"] == "[2*hbar]"
    try:
        ff.run_check("nonexistent")
    except KeyError:
        pass
    else:
        raise AssertionError("expected KeyError")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok  {t.__name__}")
    print(f"{len(tests)} passed")
