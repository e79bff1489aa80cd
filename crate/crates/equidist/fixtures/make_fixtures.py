"""Build newform fixtures in the LMFDB mf_newforms API layout.

The coefficients come from exact eta-product q-expansions, so the files can
be regenerated offline.  Run from this directory: python3 make_fixtures.py
"""
import json

NMAX = 1100

# label -> (level, weight, [(m, r)] for prod eta(m z)^r, cm discriminants)
FORMS = {
    "1.12.a.a": (1, 12, [(1, 24)], []),
    "11.2.a.a": (11, 2, [(1, 2), (11, 2)], []),
    "14.2.a.a": (14, 2, [(1, 1), (2, 1), (7, 1), (14, 1)], []),
    "15.2.a.a": (15, 2, [(1, 1), (3, 1), (5, 1), (15, 1)], []),
    "20.2.a.a": (20, 2, [(2, 2), (10, 2)], []),
    "24.2.a.a": (24, 2, [(2, 1), (4, 1), (6, 1), (12, 1)], []),
    "27.2.a.a": (27, 2, [(3, 2), (9, 2)], [-3]),
    "32.2.a.a": (32, 2, [(4, 2), (8, 2)], [-4]),
    "36.2.a.a": (36, 2, [(6, 4)], [-3]),
}


def eta_product(factors):
    # q^{sum m r / 24} prod_{n>=1} (1 - q^{mn})^r
    shift = sum(m * r for m, r in factors)
    assert shift % 24 == 0
    shift //= 24
    series = [1] + [0] * NMAX
    for m, r in factors:
        for n in range(1, NMAX // m + 1):
            k = m * n
            for _ in range(r):
                # multiply by (1 - q^k) in place
                for i in range(NMAX, k - 1, -1):
                    series[i] -= series[i - k]
    return [0] * shift + series[: NMAX + 1 - shift]


for label, (level, weight, factors, cm) in FORMS.items():
    a = eta_product(factors)
    assert a[0] == 0 and a[1] == 1, label
    record = {
        "label": label,
        "level": level,
        "weight": weight,
        "dim": 1,
        "char_orbit_label": "a",
        "is_cm": bool(cm),
        "cm_discs": cm,
        "traces": a[1:],
    }
    doc = {"data": [record], "next": None, "offset": 0}
    with open(f"newforms/{label}.json", "w") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")
    print(label, a[1:8])
