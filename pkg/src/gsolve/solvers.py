"""One-step operators for the banded stationary iterations.

The three methods share the splitting A = band - lower - upper (see
:class:`~gsolve.matrices.BandedSplitting` for the sign convention) and
differ only in how the parts are assigned to the M/N pair:

* GJ:   M = band,                N = lower + upper
* GGS:  M = band - lower,        N = upper
* GSOR: M = band - omega*lower,  N = (1-omega)*band + omega*upper,
        a splitting of omega*A; the right-hand side is scaled by omega.

Each operator factorizes its M part once (sparse LU, natural ordering with
partial pivoting) and then applies the update x -> M^{-1}(N x + c b) any
number of times.  At m = 0 the methods reduce to classical Jacobi,
Gauss-Seidel, and SOR.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import SuperLU, splu

from .matrices import DEFAULT_DENSE_LIMIT, BandedSplitting


class Method(str, Enum):
    GJ = "gj"
    GGS = "ggs"
    GSOR = "gsor"

    @classmethod
    def parse(cls, name: "Method | str") -> "Method":
        if isinstance(name, Method):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown method {name!r}; expected one of {valid}") from None


class FactorizationError(RuntimeError):
    """The M part of a splitting could not be factorized (singular)."""


class RelaxationWarning(UserWarning):
    """Relaxation factor outside the range covered by a convergence theorem."""


@dataclass(frozen=True, eq=False)
class StepOperator:
    """Prepared single-step update for one (method, splitting, omega) triple.

    Immutable after construction; the LU factors are read-only, so
    concurrent :meth:`apply` calls on one operator are safe.
    """

    method: Method
    splitting: BandedSplitting
    omega: float | None
    m_part: sp.csr_array
    n_part: sp.csr_array
    rhs_scale: float
    lu: SuperLU

    @property
    def n(self) -> int:
        return self.splitting.n

    def solve_m(self, v: np.ndarray) -> np.ndarray:
        """Apply the prepared M^{-1} to a vector or to matrix columns."""
        return self.lu.solve(v)

    def apply(self, x: np.ndarray, b: np.ndarray) -> np.ndarray:
        """One update x -> M^{-1}(N x + c b); the input x is not modified."""
        x = np.asarray(x, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"x has shape {x.shape}, expected ({self.n},)")
        if b.shape != (self.n,):
            raise ValueError(f"b has shape {b.shape}, expected ({self.n},)")
        return self.lu.solve(self.n_part @ x + self.rhs_scale * b)


def build_step(
    splitting: BandedSplitting,
    method: Method | str,
    omega: float | None = None,
) -> StepOperator:
    """Assemble M and N for the method and factorize M once.

    GSOR requires omega != 0.  Any omega in (0, 1] is covered by at least
    one convergence theorem for suitable matrix classes; other values are
    accepted (the classical necessary condition |omega - 1| < 1 is not
    enforced) but flagged with a :class:`RelaxationWarning`.
    """
    method = Method.parse(method)
    band, lower, upper = splitting.band.csr, splitting.lower.csr, splitting.upper.csr

    if method is Method.GSOR:
        if omega is None:
            raise ValueError("gsor requires a relaxation factor omega")
        omega = float(omega)
        if omega == 0.0:
            raise ValueError("omega must be nonzero for gsor")
        if not 0.0 < omega <= 1.0:
            warnings.warn(
                f"omega={omega} is outside (0, 1]; no convergence theorem applies",
                RelaxationWarning,
                stacklevel=2,
            )
        m_part = sp.csr_array(band - omega * lower)
        n_part = sp.csr_array((1.0 - omega) * band + omega * upper)
        rhs_scale = omega
    else:
        omega = None
        if method is Method.GJ:
            m_part, n_part = band, sp.csr_array(lower + upper)
        else:  # GGS
            m_part, n_part = sp.csr_array(band - lower), upper
        rhs_scale = 1.0

    try:
        lu = splu(sp.csc_matrix(m_part), permc_spec="NATURAL")
    except (RuntimeError, ValueError) as err:
        raise FactorizationError(
            f"M part is singular for method={method.value}, m={splitting.m}: {err}"
        ) from err

    return StepOperator(
        method=method,
        splitting=splitting,
        omega=omega,
        m_part=m_part,
        n_part=n_part,
        rhs_scale=rhs_scale,
        lu=lu,
    )


def apply_step(op: StepOperator, x: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Functional form of :meth:`StepOperator.apply`."""
    return op.apply(x, b)


def iteration_matrix(
    op: StepOperator, dense_limit: int = DEFAULT_DENSE_LIMIT
) -> np.ndarray:
    """Explicit dense H = M^{-1} N, column by column through the prepared solve.

    Refuses orders above ``dense_limit``; use power-mode spectral estimation
    on the operator instead for large systems.
    """
    if op.n > dense_limit:
        raise ValueError(
            f"order {op.n} exceeds dense limit {dense_limit}; "
            "use spectral_radius(op, mode='power') instead"
        )
    return op.lu.solve(op.n_part.toarray())
