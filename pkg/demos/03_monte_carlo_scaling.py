# # Logical error rate of the [3,1,3] GF(4) construction
#
# Depolarizing noise on the data qubit and phase flips on the auxiliary
# qubits, both at rate p. A bounded-distance decoder with t = 1 fails once
# two positions of the error word are hit, so the rate grows like p^2.

# %%
import numpy as np

from lnqec import channel, codes, decoders, io
from lnqec.channel import NoiseModel

H, _ = io.read_matrix(io.bundled(io.BUNDLED["rep3_gf4"]))
pcm = codes.build_trace_pcm(codes.import_quaternary(H, d=3))
dec = decoders.make_decoder(pcm)

# %%
ps = [0.003, 0.01, 0.03]
rates = []
for p in ps:
    model = NoiseModel.depolarizing(p)
    r = channel.monte_carlo(pcm, dec, model, 1_000_000, seed=3)
    exact = channel.exact_failure_probability(pcm, dec, model)
    rates.append(r.rate)
    print(f"p={p:<6} rate={r.rate:.3e}  95% CI [{r.ci_low:.3e}, {r.ci_high:.3e}]  exact={exact:.3e}")

# %%
slope = np.polyfit(np.log(ps), np.log(rates), 1)[0]
print(f"log-log slope {slope:.2f}")

# %% [markdown]
# With the auxiliary qubits kept noiseless the single data qubit can only
# produce weight-one words, and the decoder never fails.

# %%
print(channel.exact_failure_probability(pcm, dec, NoiseModel.depolarizing(0.03, aux_pz=0.0)))
