"""Deterministic square-root sheet tracking along parameter paths.

Every two-valued amplitude in the package comes from a determinant raised
to the power -1/2.  The branch is always fixed the same way: walk a path,
keep each step's argument increment below pi/2 (halving steps adaptively),
and chain `sqrt_branch` so consecutive square roots stay on the same sheet.
A closed loop that winds once around zero flips the sign.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import AmbiguousBranch, StepUnderflow
from .linalg import sqrt_branch

_MAX_STEP_ARG = 1.40  # strictly below pi/2, with margin for roundoff


@dataclass(frozen=True)
class BranchedScalar:
    """A nonzero complex value together with the reference that selected
    its square-root branch."""

    value: complex
    reference: complex

    def __post_init__(self):
        if self.value == 0:
            raise ValueError("BranchedScalar value must be nonzero")
        if self.reference == 0:
            raise ValueError("BranchedScalar reference must be nonzero")


@dataclass(frozen=True)
class SheetPath:
    """Record of one analytic continuation: parameter samples, the branch
    value at each sample, and the accumulated sign relative to the start."""

    samples: tuple
    branch_values: tuple
    net_sign: int

    def __post_init__(self):
        if self.net_sign not in (-1, 1):
            raise ValueError("net_sign must be +1 or -1")


@dataclass(frozen=True)
class Continuation:
    """Chained square root of d(sigma) along sigma in [0, 1]."""

    samples: tuple
    d_values: tuple
    sqrt_values: tuple

    @property
    def sqrt_end(self) -> complex:
        return self.sqrt_values[-1]

    @property
    def inv_sqrt_end(self) -> complex:
        return 1.0 / self.sqrt_values[-1]


def continue_sqrt(d_fn, *, sqrt_start: complex | None = None,
                  singular_error=None, zero_tol: float = 0.0,
                  max_depth: int = 52) -> Continuation:
    """Continue a square root of d(sigma) from sigma=0 to sigma=1.

    d_fn must be nonzero along the path.  sqrt_start, when given, selects
    the starting sheet (defaults to the principal square root of d(0)).
    singular_error is the exception type raised when |d| falls at or below
    zero_tol along the path.
    """
    d0 = complex(d_fn(0.0))
    _check_nonzero(d0, 0.0, zero_tol, singular_error)
    s0 = cmath.sqrt(d0) if sqrt_start is None else complex(sqrt_start)

    samples = [0.0]
    d_values = [d0]
    sqrt_values = [s0]
    min_dt = 1.0 / (2.0 ** max_depth)

    t_prev, d_prev, s_prev = 0.0, d0, s0
    pending = [1.0]
    while pending:
        t_next = pending[-1]
        d_next = complex(d_fn(t_next))
        _check_nonzero(d_next, t_next, zero_tol, singular_error)
        need_refine = abs(cmath.phase(d_next / d_prev)) > _MAX_STEP_ARG
        s_next = None
        if not need_refine:
            try:
                s_next = sqrt_branch(d_next, s_prev)
            except AmbiguousBranch:
                need_refine = True
        if need_refine:
            if t_next - t_prev < min_dt:
                raise StepUnderflow(
                    f"sheet continuation stalled near sigma = {t_prev!r}")
            pending.append(0.5 * (t_prev + t_next))
            continue
        pending.pop()
        samples.append(t_next)
        d_values.append(d_next)
        sqrt_values.append(s_next)
        t_prev, d_prev, s_prev = t_next, d_next, s_next

    return Continuation(tuple(samples), tuple(d_values), tuple(sqrt_values))


def canonical_amplitude(g: complex) -> complex:
    """The canonical member of the pair {g, -g}: argument in (-pi/2, pi/2],
    with the +pi/2 side chosen on roundoff ties."""
    g = complex(g)
    if g == 0:
        raise ValueError("amplitude must be nonzero")
    phi = cmath.phase(g)
    if abs(abs(phi) - math.pi / 2) <= 1e-9:
        return g if g.imag > 0 else -g
    return g if -math.pi / 2 < phi <= math.pi / 2 else -g


def sheet_sign(g: complex) -> int:
    """+1 when g is the canonical member of {g, -g}, else -1."""
    c = canonical_amplitude(g)
    return 1 if abs(g - c) <= abs(g + c) else -1


def _check_nonzero(d: complex, sigma: float, zero_tol: float, singular_error):
    if abs(d) <= zero_tol or d == 0:
        exc = singular_error or StepUnderflow
        raise exc(f"determinant vanishes along the path (sigma = {sigma!r}, "
                  f"|det| = {abs(d):.3e})")
