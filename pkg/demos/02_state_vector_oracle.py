# # Checking the Pauli-frame formula against a state-vector simulation
#
# For every Pauli error on the five qubits of the [3,1,3] GF(4) construction
# we prepare |+>^aux (x) |psi>, run the encoder, apply the error, run the
# inverse encoder and measure the auxiliary qubits in the X basis. The
# frame formula must predict the readout and the residual data Pauli.

# %%
import numpy as np

from lnqec import codes, statevec
from lnqec.frame import PauliError, general_outcome

pcm = codes.build_trace_pcm(codes.import_quaternary([[1, 0, 1], [0, 1, 1]], d=3))
rng = np.random.default_rng(1)

# %% [markdown]
# One error by hand: an X on the third auxiliary qubit. That is a bit error
# on a qubit that should only see phase errors, so it spreads to the data.

# %%
err = PauliError.for_construction(pcm, [0, 0, 1, 0, 0], [0] * 5)
psi = statevec.random_state(pcm.k, rng)
data = statevec.simulate_decoding(pcm, err, psi)
pred = general_outcome(pcm, err)
print("predicted aux readout", pred.aux_outcome, "residual X", pred.residual_X, "Z", pred.residual_Z)
print("fidelity", statevec.fidelity(data, statevec.predicted_state(pred, psi)))

# %% [markdown]
# All 4^5 errors, five random data states each.

# %%
report = statevec.verify_exhaustive(pcm, trials=5, seed=7)
print(report.checks, "checks, passed:", report.passed, "min fidelity:", report.min_fidelity)
