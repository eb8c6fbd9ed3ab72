"""qdesk: a desk-scale gate-model quantum computing toolkit."""
__version__ = "0.1.0"

from . import algorithms, circuit, gates, qasm, qec, qstate, stateprep, tomography, transforms

__all__ = [
    "__version__", "algorithms", "circuit", "gates", "qasm", "qec",
    "qstate", "stateprep", "tomography", "transforms",
]
