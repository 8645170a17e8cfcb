# # From a GF(4) parity-check matrix to a circuit with less noisy qubits
#
# We take the [3,1,3] repetition code over GF(4), build its trace
# parity-check matrix and look at the blocks that drive the encoder.

# %%
import numpy as np

from lnqec import codes, gf, io
from lnqec.frame import PauliError, assemble_error_word, closed_form_outcome, recover_syndromes, trace_syndrome

H, field = io.read_matrix(io.bundled(io.BUNDLED["rep3_gf4"]))
print("field", field)
print(H)

# %% [markdown]
# Importing keeps the independent rows and records a column order whose
# first n - k columns are independent. No standard form is needed.

# %%
code = codes.import_quaternary(H, d=3)
pcm = codes.build_trace_pcm(code)
print(code, pcm)
print("aux qubits:", pcm.aux, " data qubits:", pcm.k, " physical:", pcm.physical)

# %% [markdown]
# The binary matrices H_Z and H_X satisfy H_Q = H_Z + w H_X. The square
# block A = [A_Z | A_X] is invertible, and N_Z, N_X are the remaining columns.

# %%
print("H_Z =\n", pcm.H_Z)
print("H_X =\n", pcm.H_X)
print("A =\n", pcm.A)
print("A^-1 =\n", pcm.A_inv)
print("N_Z =", pcm.N_Z.ravel(), " N_X =", pcm.N_X.ravel())

# %% [markdown]
# A phase flip on the second auxiliary qubit and a Y on the data qubit.
# The auxiliary readout, multiplied back by A, is the trace syndrome of
# the error word seen by the code.

# %%
err = PauliError.for_construction(pcm, [0, 0, 0, 0, 1], [0, 1, 0, 0, 1])
word = assemble_error_word(err, pcm)
out = closed_form_outcome(pcm, err)
print("error word:", " ".join(gf.gf4_symbol(a) for a in word))
print("aux readout:", out.aux_outcome, " residual X/Z:", out.residual_X, out.residual_Z)
print("recovered syndrome:", recover_syndromes(out, pcm))
print("trace syndrome:    ", trace_syndrome(pcm, word))
assert np.array_equal(recover_syndromes(out, pcm), trace_syndrome(pcm, word))
