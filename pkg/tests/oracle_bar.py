"""Independent oracle: Hochschild homology from the dense, unnormalized
Hochschild complex C_n = A^{⊗(n+1)} with b = Σ (-1)^i d_i.

Self-contained on purpose (plain Fractions, own elimination); shares no code
with the package.  Run as a script to regenerate tests/fixtures/hh_oracle.json.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction
from itertools import product
from pathlib import Path

FIXTURE = Path(__file__).parent / "fixtures" / "hh_oracle.json"


def dual_numbers():
    # basis 1, x; x*x = 0
    return [0, 1], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}}


def polynomial_upto(w):
    basis = list(range(w + 1))
    mul = {(a, b): ({a + b: 1} if a + b <= w else {}) for a in basis for b in basis}
    return basis, mul


def _rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows if any(r)]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] / p
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _mult(mul, a, b):
    return mul[(a, b)]


def hochschild_betti(weights, mul, top, max_weight):
    """{weight: [dim HH_0, ..., dim HH_top]} for weights 0..max_weight."""
    n_basis = len(weights)

    def cells(n, w):
        return [t for t in product(range(n_basis), repeat=n + 1) if sum(weights[i] for i in t) == w]

    def boundary(n, w):
        src, tgt = cells(n, w), cells(n - 1, w)
        index = {t: k for k, t in enumerate(tgt)}
        M = [[0] * len(src) for _ in tgt]
        for j, t in enumerate(src):
            for i in range(n + 1):
                if i < n:
                    prod = _mult(mul, t[i], t[i + 1])
                    for c, v in prod.items():
                        new = t[:i] + (c,) + t[i + 2:]
                        M[index[new]][j] += (-1) ** i * v
                else:
                    prod = _mult(mul, t[n], t[0])
                    for c, v in prod.items():
                        new = (c,) + t[1:n]
                        M[index[new]][j] += (-1) ** n * v
        return M, len(src)

    out = {}
    for w in range(max_weight + 1):
        ranks = {}
        dims = {}
        for n in range(top + 2):
            if n == 0:
                dims[0] = len(cells(0, w))
                ranks[0] = 0
                continue
            M, d = boundary(n, w)
            dims[n] = d
            ranks[n] = _rank(M)
        out[w] = [dims[n] - ranks[n] - ranks[n + 1] for n in range(top + 1)]
    return out


def generate():
    w_dual, m_dual = dual_numbers()
    b_poly, m_poly = polynomial_upto(4)
    return {
        "dual_numbers": {str(w): v for w, v in hochschild_betti(w_dual, m_dual, 3, 4).items()},
        "polynomial_x_w4": {str(w): v for w, v in hochschild_betti(b_poly, m_poly, 3, 4).items()},
    }


if __name__ == "__main__":
    data = generate()
    FIXTURE.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    json.dump(data, sys.stdout, sort_keys=True)
