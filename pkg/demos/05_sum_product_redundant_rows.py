# # Sum-product decoding with a redundant check
#
# The [7,4,3] Hamming code read from an alist file. With only its three
# independent checks, the sum-product decoder locks onto a heavier word for
# the syndrome of the last column. A fourth, redundant check fixes that.
# Its syndrome bit need not be measured: it is the sum of measured bits.

# %%
import numpy as np

from lnqec import codes, decoders, gf, io

plain = codes.import_binary(io.read_matrix(io.bundled(io.BUNDLED["hamming74"]))[0], d=3)
extra = codes.import_binary(io.read_matrix(io.bundled(io.BUNDLED["hamming74_redundant"]))[0], d=3)
print(plain, extra)

# %%
for name, code in (("three checks", plain), ("four checks", extra)):
    H = code.unpermuted()
    print(name)
    for j in range(7):
        e = np.eye(7, dtype=np.uint8)[j]
        est, ok = decoders.sp_decode(H, gf.gf2_matmul(H, e))
        print("  bit", j, "->", est, "correct" if np.array_equal(est, e) else "WRONG")

# %% [markdown]
# Extending a measured three-bit syndrome to four bits.

# %%
e = np.array([0, 1, 0, 0, 0, 0, 1], dtype=np.uint8)
s = gf.gf2_matmul(extra.H, e)
print(s, "->", decoders.extend_syndrome(extra, s), "=", gf.gf2_matmul(extra.full_H, e))
