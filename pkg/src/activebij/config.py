from dataclasses import dataclass


@dataclass
class Limits:
    """Enumeration caps. All algorithms here are exhaustive, so these keep
    accidental large inputs from running forever."""

    max_edges: int = 20  # cycle and cocycle listing
    max_orientation_edges: int = 16  # 2^16 reorientations
    max_filtration_edges: int = 10


limits = Limits()
