"""Full iterative solves, spectral-radius estimation, convergence prediction."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .matrices import DEFAULT_DENSE_LIMIT, SquareMatrix, classify, extract_splitting
from .solvers import (
    Method,
    RelaxationWarning,
    StepOperator,
    build_step,
    iteration_matrix,
)

#: A solve is declared divergent once the successive-difference norm exceeds
#: this multiple of the first difference.
DIVERGENCE_GUARD = 1e12


@dataclass(frozen=True)
class IterationConfig:
    """Method selection and stopping parameters for :func:`solve`.

    The stopping rule is the 2-norm of successive differences dropping to
    ``tol``; the iterate count reported is the number of steps performed
    when the test first passes.
    """

    method: Method | str
    m: int
    omega: float | None = None
    tol: float = 1e-7
    max_iter: int = 10000
    x0: np.ndarray | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", Method.parse(self.method))
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.m < 0:
            raise ValueError(f"half-bandwidth m must be >= 0, got {self.m}")
        if self.method is Method.GSOR and self.omega is None:
            raise ValueError("gsor requires a relaxation factor omega")


@dataclass(frozen=True)
class SolveReport:
    converged: bool
    iterations: int
    final_diff_norm: float
    final_error_norm: float | None
    elapsed_seconds: float
    solution: np.ndarray
    note: str = ""


def solve(
    A: SquareMatrix,
    b: np.ndarray,
    config: IterationConfig,
    x_exact: np.ndarray | None = None,
) -> SolveReport:
    """Iterate from x0 until the successive-difference test passes.

    Stops early with ``note="diverged"`` once the difference norm blows past
    ``DIVERGENCE_GUARD`` times the first difference (or goes non-finite).
    Wall time covers the iteration loop only, not splitting extraction or
    factorization.  When ``x_exact`` is supplied the 2-norm error of the
    final iterate is reported as ``final_error_norm``.
    """
    op = build_step(extract_splitting(A, config.m), config.method, config.omega)
    b = np.asarray(b, dtype=np.float64)
    x = np.zeros(A.n) if config.x0 is None else np.asarray(config.x0, np.float64).copy()

    converged = False
    note = ""
    diff = np.inf
    first_diff: float | None = None
    iterations = 0

    start = time.perf_counter()
    for k in range(1, config.max_iter + 1):
        x_next = op.apply(x, b)
        diff = float(np.linalg.norm(x_next - x))
        x = x_next
        iterations = k
        if first_diff is None:
            first_diff = diff
        if diff <= config.tol:
            converged = True
            break
        if not np.isfinite(diff) or diff > DIVERGENCE_GUARD * first_diff:
            note = "diverged"
            break
    elapsed = time.perf_counter() - start

    err = None if x_exact is None else float(np.linalg.norm(x - np.asarray(x_exact)))
    return SolveReport(
        converged=converged,
        iterations=iterations,
        final_diff_norm=diff,
        final_error_norm=err,
        elapsed_seconds=elapsed,
        solution=x,
        note=note,
    )


# -- spectral radius ----------------------------------------------------


@dataclass(frozen=True)
class PowerEstimate:
    """Power-mode spectral radius estimate.

    ``error_bound`` is the final residual (or window spread when the
    dominant modulus was read off norm growth); it is a heuristic bound,
    tight for a simple well-separated dominant eigenvalue.  ``reliable`` is
    False when the iteration stagnated without settling.
    """

    value: float
    error_bound: float
    reliable: bool
    steps: int


def _power_estimate(
    apply_h, n: int, max_steps: int, rtol: float, seed: int | None
) -> PowerEstimate:
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)

    window = 16
    growths: list[float] = []
    prev_mean: float | None = None
    last_estimate = 0.0

    for k in range(1, max_steps + 1):
        y = apply_h(x)
        growth = float(np.linalg.norm(y))
        if growth == 0.0:
            # The operator annihilated a random vector: treat as nilpotent.
            return PowerEstimate(0.0, 0.0, True, k)

        rayleigh = float(x @ y)
        residual = float(np.linalg.norm(y - rayleigh * x))
        if residual <= rtol * max(abs(rayleigh), 1e-300):
            return PowerEstimate(abs(rayleigh), residual, True, k)

        x = y / growth
        growths.append(growth)
        last_estimate = growth
        if len(growths) == window:
            mean = float(np.exp(np.mean(np.log(growths))))
            spread = abs(mean - prev_mean) if prev_mean is not None else np.inf
            if prev_mean is not None and spread <= rtol * max(mean, 1e-300):
                # Norm growth settled although no real eigenpair emerged:
                # dominant modulus from a complex pair.
                return PowerEstimate(mean, spread, True, k)
            prev_mean = mean
            growths.clear()
            last_estimate = mean

    return PowerEstimate(last_estimate, np.inf, False, max_steps)


def spectral_radius(
    target,
    mode: str = "dense",
    *,
    max_steps: int = 10000,
    rtol: float = 1e-9,
    seed: int | None = None,
    n: int | None = None,
):
    """Largest eigenvalue modulus of an iteration matrix.

    ``mode="dense"``: ``target`` is an explicit matrix (:class:`SquareMatrix`
    or ndarray); returns a float from a dense eigenvalue computation.

    ``mode="power"``: ``target`` is a :class:`StepOperator` (iterated as
    x -> M^{-1} N x) or a callable applying the operator (then ``n`` is
    required); returns a :class:`PowerEstimate`.
    """
    if mode == "dense":
        if isinstance(target, SquareMatrix):
            dense = target.to_dense()
        else:
            dense = np.asarray(target, dtype=np.float64)
        if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
            raise ValueError(f"dense mode needs a square matrix, got shape {dense.shape}")
        return float(np.max(np.abs(np.linalg.eigvals(dense))))
    if mode == "power":
        if isinstance(target, StepOperator):
            op = target
            return _power_estimate(
                lambda v: op.solve_m(op.n_part @ v), op.n, max_steps, rtol, seed
            )
        if callable(target):
            if n is None:
                raise ValueError("power mode with a callable needs the dimension n")
            return _power_estimate(target, n, max_steps, rtol, seed)
        raise TypeError("power mode needs a StepOperator or a callable")
    raise ValueError(f"unknown mode {mode!r}; expected 'dense' or 'power'")


# -- theorem-based convergence prediction --------------------------------

TAG_OVERRELAXED_M = "M+GSOR(overrelaxed)"


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Outcome of matching (matrix class, method, omega) against the theorems.

    ``guaranteed`` means at least one convergence theorem applies.
    ``predicted_converges`` is the spectral-radius verdict when the order
    permits an explicit iteration matrix, the theorem verdict otherwise,
    and ``None`` when neither is available.
    """

    rho_estimate: float | None
    guaranteed: bool
    guarantee_source: tuple[str, ...] = field(default_factory=tuple)
    predicted_converges: bool | None = None


def predict(
    A: SquareMatrix,
    config: IterationConfig,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> ConvergenceVerdict:
    """Classify A and look up the applicable convergence guarantees.

    Guarantees: SDD, M, and H matrices converge under GJ and GGS for any
    bandwidth; the same classes converge under GSOR for omega in (0, 1];
    an M-matrix also converges under overrelaxed GSOR whenever
    omega < 2 / (1 + rho(H_GJ)) and rho(band^{-1} lower) < 1 / omega.
    """
    report = classify(A, dense_limit=dense_limit)
    method: Method = config.method
    omega = config.omega
    tags: list[str] = []

    memberships = (("SDD", report.is_sdd), ("M", report.is_m), ("H", report.is_h))
    if method in (Method.GJ, Method.GGS):
        tags.extend(f"{cls}+{method.value.upper()}" for cls, ok in memberships if ok)
    elif omega is not None and 0.0 < omega <= 1.0:
        tags.extend(f"{cls}+GSOR(0<omega<=1)" for cls, ok in memberships if ok)
    elif (
        omega is not None
        and omega > 1.0
        and report.is_m
        and A.n <= dense_limit
    ):
        splitting = extract_splitting(A, config.m)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RelaxationWarning)
            rho_gj = spectral_radius(
                iteration_matrix(build_step(splitting, Method.GJ), dense_limit)
            )
        band_inv_lower = np.linalg.solve(
            splitting.band.to_dense(), splitting.lower.to_dense()
        )
        if omega < 2.0 / (1.0 + rho_gj) and spectral_radius(band_inv_lower) < 1.0 / omega:
            tags.append(TAG_OVERRELAXED_M)

    guaranteed = bool(tags)
    rho: float | None = None
    predicted: bool | None = True if guaranteed else None
    if A.n <= dense_limit:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RelaxationWarning)
            op = build_step(extract_splitting(A, config.m), method, omega)
            rho = spectral_radius(iteration_matrix(op, dense_limit))
        predicted = bool(rho < 1.0)

    return ConvergenceVerdict(
        rho_estimate=rho,
        guaranteed=guaranteed,
        guarantee_source=tuple(tags),
        predicted_converges=predicted,
    )
