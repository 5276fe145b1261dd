"""Protected superconducting qubits viewed as bosonic codes."""

__version__ = "0.1.0"
