"""Global parameters of the algebra: number of canonical pairs and hbar."""
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Params:
    """m canonical pairs (u_1..u_m, v_1..v_m) and a positive real hbar."""

    m: int
    hbar: float = 1.0

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if not (self.hbar > 0):
            raise ValueError(f"hbar must be a positive real, got {self.hbar!r}")

    @property
    def n(self) -> int:
        """Number of generators, 2m."""
        return 2 * self.m


def default_tolerance() -> float:
    """Comparison tolerance, overridable through WEYLSTAR_TOL."""
    return float(os.environ.get("WEYLSTAR_TOL", "1e-9"))
