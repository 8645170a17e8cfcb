"""Quantum error correction assisted by less noisy qubits, from arbitrary parity-check matrices."""
