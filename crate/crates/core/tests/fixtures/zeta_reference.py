"""Regenerates zeta_reference.json with mpmath at 60 digits."""
import json

import mpmath

mpmath.mp.dps = 60


def tail(s):
    return mpmath.zeta(s) - 1 - mpmath.mpf(2) ** -s


# Chain-basis coefficients -> sum_u d_u * (-1)^(k-u) * tail(u+1), k = top index.
CASES = {
    "c2": {2: 1},
    "c3": {3: 1},
    "D(c)": {3: 1, 4: 2},
    "c*D(c)": {4: 1, 5: 2},
}


def value(coeffs):
    k = max(coeffs)
    return sum(d * (-1) ** (k - u) * tail(u + 1) for u, d in coeffs.items())


out = {
    "tails": {str(s): mpmath.nstr(tail(s), 50) for s in range(2, 8)},
    "terms": {name: mpmath.nstr(value(c), 50) for name, c in CASES.items()},
}
with open("zeta_reference.json", "w") as fh:
    json.dump(out, fh, indent=2)
    fh.write("\n")
