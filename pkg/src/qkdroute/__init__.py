"""Route planning and online routing for QKD key-material networks."""

from qkdroute.network import Edge, Network, Path, validate_network

__all__ = ["Edge", "Network", "Path", "validate_network"]
__version__ = "0.1.0"
