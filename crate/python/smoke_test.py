"""Smoke test for the equidist_py extension module.

Build the module first, either with maturin (`maturin develop -m
crates/equidist-py/Cargo.toml`) or with cargo and a copy:

    cargo build --release -p equidist-py --features extension-module
    cp target/release/libequidist_py.so python/equidist_py.so

then run `python3 python/smoke_test.py`.
"""

import json
import math
import os
import sys
import tempfile
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import equidist_py as eq  # noqa: E402


def main():
    print("equidist_py", eq.__version__)

    g = json.loads(eq.gauss_suite([3, 5], 2))
    assert g["pass"], g
    print("gauss suite:", len(g["checks"]), "checks")

    t = json.loads(eq.trichotomy_suite([3], 2))
    assert t["pass"]

    w = [Fraction(int(a), int(b)) for a, b in eq.iwasawa_weights(3, 2)]
    assert w == [Fraction(3, 4), Fraction(1, 6), Fraction(1, 12)]
    assert sum(w) == 1

    table = json.loads(eq.whittaker("ps", 3, 1, 2))
    assert [e["n"] for e in table["entries"]] == [0]
    assert table["entries"][0]["terms"][0]["coeff"] == [[0, "1", "1"]]

    sc = json.loads(eq.whittaker("sc", 5, 4, 1, seed=7))
    levels = {t["char_level"] for e in sc["entries"] for t in e["terms"]}
    assert levels == {3}, levels

    assert sorted(w for _, _, w in eq.cusps(4)) == [1, 1, 4]

    # λ(6) at t = 1 is (2 cos(t log 2))(2 cos(t log 3)).
    re, im = eq.eisenstein_lambda(6, 1.0)
    want = 4 * math.cos(math.log(2)) * math.cos(math.log(3))
    assert abs(re - want) < 1e-12 and abs(im) < 1e-12

    a = eq.eisenstein(0.1, 1.1, 0.5, 3.0)
    z = complex(0.1, 1.1)
    w2 = -1 / z
    b = eq.eisenstein(w2.real, w2.imag, 0.5, 3.0)
    assert abs(complex(a[0], a[1]) - complex(b[0], b[1])) < 1e-6

    try:
        eq.gauss_suite([2], 1)
    except ValueError as e:
        assert "unsupported prime" in str(e)
    else:
        raise AssertionError("p = 2 accepted")

    with tempfile.TemporaryDirectory() as d:
        os.environ["NEWFORM_CACHE_DIR"] = d
        nf = json.loads(eq.newform_checks("11.2.a.a"))
        assert nf["deligne"]["pass"] and nf["hecke"]["pass"] and nf["growth"]["pass"]

    print("smoke test passed")


if __name__ == "__main__":
    main()
