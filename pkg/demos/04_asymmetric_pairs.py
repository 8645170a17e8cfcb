# # Two binary codes for biased noise
#
# In a binary pair the first code sees phase flips on its own auxiliary
# qubits together with bit flips on the data; the second sees phase flips
# on its auxiliary qubits together with phase flips on the data. When bit
# flips are rare the first code carries most of the auxiliary qubits, so we
# give it more redundancy: [5,1] and [3,1] repetition codes use the same
# seven physical qubits as two [4,1] codes.

# %%
from lnqec import channel, codes, io
from lnqec.channel import NoiseModel


def load(name, d):
    H, _ = io.read_matrix(io.bundled(io.BUNDLED[name]))
    return codes.import_binary(H, d)


biased = codes.build_binary_pair(load("rep5", 5), load("rep3", 3))
symmetric = codes.build_binary_pair(load("rep4", 4), load("rep4", 4))
print(biased, symmetric)

# %%
model = NoiseModel(aux_pz=0.05, data_px=0.005, data_pz=0.05)
cmp = channel.asymmetric_compare(biased, symmetric, model, 200_000, seed=4)
for row in cmp.rows():
    print(f"{row['construction']:<10} physical={row['physical']} rate={row['rate']:.4f} "
          f"CI [{row['ci_low']:.4f}, {row['ci_high']:.4f}]")  # fmt: skip
