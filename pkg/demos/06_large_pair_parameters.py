# # Parameters of a large binary pair
#
# Two copies of a [1080, 999] parity-check matrix. Each code contributes
# n - k = 81 auxiliary qubits that only need protection from phase errors.
# The k = 999 logical qubits sit on data qubits next to them.

# %%
import time

from lnqec import codes, io

t0 = time.perf_counter()
H, _ = io.read_matrix(io.bundled(io.BUNDLED["ag43"]))
code = codes.import_binary(H)
pair = codes.build_binary_pair(code, code)
print(f"imported {H.shape[0]}x{H.shape[1]} matrix in {time.perf_counter() - t0:.2f} s")
print("physical", pair.physical, "aux", pair.aux, "logical", pair.k)
