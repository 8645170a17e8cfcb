"""Regenerate the matrix files shipped in src/lnqec/data.

    python tools/make_bundled_matrices.py
"""

import itertools
from pathlib import Path

import numpy as np

from lnqec import gf
from lnqec.io import format_alist, format_plain

DATA = Path(__file__).resolve().parents[1] / "src" / "lnqec" / "data"
W, W2 = gf.OMEGA, gf.OMEGA2


def ag43_incidence():
    """Point-line incidence of the affine geometry AG(4, 3): 81 points x 1080 lines."""
    points = list(itertools.product(range(3), repeat=4))
    index = {p: i for i, p in enumerate(points)}
    lines = set()
    for p in points:
        for d in points:
            if any(d):
                lines.add(frozenset(index[tuple((p[i] + s * d[i]) % 3 for i in range(4))] for s in range(3)))
    lines = sorted(sorted(line) for line in lines)
    H = np.zeros((len(points), len(lines)), dtype=np.uint8)
    for j, line in enumerate(lines):
        H[line, j] = 1
    return H


def repetition(n):
    H = np.zeros((n - 1, n), dtype=np.uint8)
    H[:, 0] = 1
    H[np.arange(n - 1), np.arange(1, n)] = 1
    return H


def main():
    hamming = np.array([[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]], dtype=np.uint8)
    files = {
        "rep3_gf4.txt": format_plain([[1, 0, 1], [0, 1, 1]], 4),
        # Same [3,1,3]_4 code: no identity block, a redundant third row, columns not in pivot order.
        "rep3_gf4_scrambled.txt": format_plain([[W, W, 0], [0, W2, W2], [W, 0, W]], 4),
        "hamming_gf4.txt": format_plain([[1, 1, 1, 1, 0], [0, 1, W, W2, 1]], 4),
        "hexacode_gf4.txt": format_plain([[1, W, W, 1, 0, 0], [W, 1, W, 0, 1, 0], [W, W, 1, 0, 0, 1]], 4),
        "rep3.txt": format_plain([[1, 1, 0], [1, 0, 1]], 2),
        "rep4.txt": format_plain(repetition(4), 2),
        "rep5.txt": format_plain(repetition(5), 2),
        "hamming74.alist": format_alist(hamming),
        "hamming74_redundant.alist": format_alist(np.vstack([hamming, hamming[0] ^ hamming[1]])),
        "ag43_1080.alist": format_alist(ag43_incidence()),
    }
    DATA.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (DATA / name).write_text(text)
        print("wrote", DATA / name)


if __name__ == "__main__":
    main()
