"""Sparse square matrices, banded splittings, and matrix-class certification.

Index convention: the public API speaks 1-based (row, col) coordinates, the
same convention used by Matrix Market files.  Internal storage is 0-based
CSR.  All types here are immutable after construction and safe to share
across threads; every operation is a pure function of its inputs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import MatrixRankWarning, spsolve

#: Largest order for which dense fallbacks (Cholesky, explicit iteration
#: matrices, dense eigenvalues) are attempted by default.
DEFAULT_DENSE_LIMIT = 2000

#: Smallest admissible component of an M-matrix witness after scaling the
#: witness to unit max-norm.  Direct solves carry roundoff, so demanding
#: plain positivity would be too brittle.
WITNESS_TOL = 1e-12


def _canonical(mat) -> sp.csr_array:
    """Return a CSR copy with duplicates summed, zeros dropped, indices sorted."""
    csr = sp.csr_array(mat, dtype=np.float64)
    csr.sum_duplicates()
    csr.eliminate_zeros()
    csr.sort_indices()
    return csr


@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """Real n-by-n matrix in sparse CSR form.

    Stored entries are nonzero and unique per coordinate; duplicate
    coordinates passed to a constructor are summed (Matrix Market
    convention).  ``symmetry_hint`` records how the matrix was declared in
    its source file, if any; it is advisory and never trusted by the
    symmetry checks.
    """

    n: int
    csr: sp.csr_array
    symmetry_hint: bool | None = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_csr(cls, mat, symmetry_hint: bool | None = None) -> "SquareMatrix":
        csr = _canonical(mat)
        rows, cols = csr.shape
        if rows != cols:
            raise ValueError(f"matrix must be square, got shape {csr.shape}")
        return cls(rows, csr, symmetry_hint)

    @classmethod
    def from_dense(cls, arr, symmetry_hint: bool | None = None) -> "SquareMatrix":
        dense = np.asarray(arr, dtype=np.float64)
        if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
            raise ValueError(f"matrix must be square, got shape {dense.shape}")
        return cls.from_csr(sp.csr_array(dense), symmetry_hint)

    @classmethod
    def from_entries(
        cls,
        n: int,
        entries: Iterable[tuple[int, int, float]],
        symmetry_hint: bool | None = None,
    ) -> "SquareMatrix":
        """Build from 1-based (row, col, value) triples; duplicates are summed."""
        if n < 1:
            raise ValueError(f"order must be positive, got {n}")
        rows, cols, vals = [], [], []
        for i, j, v in entries:
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexError(f"entry ({i}, {j}) outside [1, {n}]")
            rows.append(i - 1)
            cols.append(j - 1)
            vals.append(v)
        coo = sp.coo_array((vals, (rows, cols)), shape=(n, n), dtype=np.float64)
        return cls(n, _canonical(coo), symmetry_hint)

    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        return cls.from_csr(sp.eye_array(n, format="csr"), symmetry_hint=True)

    # -- queries ------------------------------------------------------

    @property
    def nnz(self) -> int:
        return int(self.csr.nnz)

    def entry(self, i: int, j: int) -> float:
        """Value at 1-based coordinates (i, j); zero if not stored."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"({i}, {j}) outside [1, {self.n}]")
        return float(self.csr[i - 1, j - 1])

    def entries(self) -> Iterator[tuple[int, int, float]]:
        """Stored entries as 1-based triples in row-major order."""
        coo = self.csr.tocoo()
        order = np.lexsort((coo.col, coo.row))
        for k in order:
            yield int(coo.row[k]) + 1, int(coo.col[k]) + 1, float(coo.data[k])

    def to_dense(self) -> np.ndarray:
        return self.csr.toarray()

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(self.n, _canonical(self.csr.T), self.symmetry_hint)

    def same_entries(self, other: "SquareMatrix") -> bool:
        """Exact equality of stored values (bitwise, no tolerance)."""
        if self.n != other.n:
            return False
        a, b = self.csr, other.csr
        return (
            np.array_equal(a.indptr, b.indptr)
            and np.array_equal(a.indices, b.indices)
            and np.array_equal(a.data, b.data)
        )

    def is_symmetric(self) -> bool:
        """Exact symmetry of stored entries, ignoring ``symmetry_hint``."""
        return _canonical(self.csr - self.csr.T).nnz == 0

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"SquareMatrix(n={self.n}, nnz={self.nnz})"


@dataclass(frozen=True, eq=False)
class BandedSplitting:
    """Band/outside-band decomposition of a square matrix.

    ``band`` keeps the entries with |i - j| <= m.  ``lower`` and ``upper``
    hold the strictly-outside-band lower and upper entries *negated*, so

        band - lower - upper == source matrix   (exactly, entry by entry)

    and the step formulas combine the three parts with plain ``+``/``-``
    without further sign bookkeeping.  m = 0 reduces to the classical
    diagonal / strict-triangle decomposition.
    """

    m: int
    band: SquareMatrix
    lower: SquareMatrix
    upper: SquareMatrix

    @property
    def n(self) -> int:
        return self.band.n

    def reassemble(self) -> SquareMatrix:
        """The original matrix, reconstructed as band - lower - upper."""
        return SquareMatrix.from_csr(
            self.band.csr - self.lower.csr - self.upper.csr
        )


def extract_splitting(A: SquareMatrix, m: int) -> BandedSplitting:
    """Split A into band part and negated outside-band triangles.

    m is the half-bandwidth: the band part has width 2m + 1.  Requires
    0 <= m <= n - 1.
    """
    if not 0 <= m <= A.n - 1:
        raise ValueError(f"half-bandwidth m={m} outside [0, {A.n - 1}]")
    coo = A.csr.tocoo()
    diff = coo.row.astype(np.int64) - coo.col.astype(np.int64)

    def part(mask: np.ndarray, negate: bool) -> SquareMatrix:
        data = -coo.data[mask] if negate else coo.data[mask]
        mat = sp.coo_array(
            (data, (coo.row[mask], coo.col[mask])), shape=(A.n, A.n)
        )
        return SquareMatrix(A.n, _canonical(mat))

    return BandedSplitting(
        m=m,
        band=part(np.abs(diff) <= m, negate=False),
        lower=part(diff > m, negate=True),
        upper=part(-diff > m, negate=True),
    )


def comparison_matrix(A: SquareMatrix) -> SquareMatrix:
    """|diagonal|, negated absolute off-diagonal: the associated Z-matrix.

    Idempotent, and exactly the identity map on Z-matrices with nonnegative
    diagonal.
    """
    coo = A.csr.tocoo()
    on_diag = coo.row == coo.col
    data = np.where(on_diag, np.abs(coo.data), -np.abs(coo.data))
    mat = sp.coo_array((data, (coo.row, coo.col)), shape=(A.n, A.n))
    return SquareMatrix(A.n, _canonical(mat))


# -- class predicates --------------------------------------------------


def _offdiag_abs_rowsums(A: SquareMatrix) -> np.ndarray:
    coo = A.csr.tocoo()
    off = coo.row != coo.col
    sums = np.zeros(A.n)
    np.add.at(sums, coo.row[off], np.abs(coo.data[off]))
    return sums


def is_sdd(A: SquareMatrix) -> bool:
    """Strict row diagonal dominance: |a_ii| > sum of |a_ij|, j != i."""
    diag = np.abs(A.csr.diagonal())
    return bool(np.all(diag > _offdiag_abs_rowsums(A)))


def is_z_matrix(A: SquareMatrix) -> bool:
    """All off-diagonal entries nonpositive."""
    coo = A.csr.tocoo()
    off = coo.row != coo.col
    return bool(np.all(coo.data[off] <= 0.0))


def is_l_matrix(A: SquareMatrix) -> bool:
    """Strictly positive diagonal and nonpositive off-diagonal."""
    return is_z_matrix(A) and bool(np.all(A.csr.diagonal() > 0.0))


def _certify_m(A: SquareMatrix) -> tuple[bool, np.ndarray | None, str | None]:
    """Nonsingular M-matrix certificate via the semipositivity witness.

    Solves A x = e (all-ones).  For a Z-matrix, x strictly positive is
    equivalent to A being a nonsingular M-matrix, and (x, Ax = e) is then a
    storable witness pair.  The witness is returned scaled to unit max-norm.
    """
    if not is_z_matrix(A):
        return False, None, "not a Z-matrix"
    rhs = np.ones(A.n)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", MatrixRankWarning)
            x = spsolve(sp.csc_array(A.csr), rhs)
    except (MatrixRankWarning, RuntimeError):
        return False, None, "singular"
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if not np.all(np.isfinite(x)):
        return False, None, "singular"
    scale = np.abs(x).max()
    if scale == 0.0:
        return False, None, "singular"
    witness = x / scale
    if np.min(witness) <= WITNESS_TOL:
        return False, None, "witness has nonpositive components"
    if not np.all(A.csr @ witness > 0.0):
        return False, None, "witness image not strictly positive"
    return True, witness, None


def is_m_matrix(A: SquareMatrix) -> tuple[bool, np.ndarray | None]:
    """Nonsingular M-matrix test; returns (verdict, positive witness or None)."""
    ok, witness, _ = _certify_m(A)
    return ok, witness


def is_h_matrix(A: SquareMatrix) -> bool:
    """True iff the comparison matrix is a nonsingular M-matrix."""
    ok, _, _ = _certify_m(comparison_matrix(A))
    return ok


def _spd_factor(A: SquareMatrix) -> np.ndarray | None:
    """Lower Cholesky factor if A is exactly symmetric and positive definite."""
    if not A.is_symmetric():
        return None
    try:
        return np.linalg.cholesky(A.to_dense())
    except np.linalg.LinAlgError:
        return None


def is_spd(A: SquareMatrix) -> bool:
    """Exact symmetry plus a completed Cholesky factorization.

    Symmetry is exact equality of stored entries, not tolerance-based;
    nearly-symmetric inputs are rejected on purpose.  Runs a dense
    factorization, so intended for orders up to a few thousand.
    """
    return _spd_factor(A) is not None


@dataclass(frozen=True)
class ClassificationReport:
    """Class memberships with certification witnesses.

    ``is_spd`` is ``None`` (undetermined) when the order exceeds the dense
    limit; the scan- and solve-based predicates are always decided.
    """

    is_sdd: bool
    is_z: bool
    is_l: bool
    is_m: bool
    is_h: bool
    is_spd: bool | None
    m_witness: np.ndarray | None
    spd_witness: np.ndarray | None
    notes: tuple[str, ...]


def classify(
    A: SquareMatrix, dense_limit: int = DEFAULT_DENSE_LIMIT
) -> ClassificationReport:
    """Run every class predicate and collect witnesses and notes."""
    notes: list[str] = []
    sdd = is_sdd(A)
    z = is_z_matrix(A)
    l_ok = is_l_matrix(A)
    m_ok, m_witness, m_note = _certify_m(A)
    if m_note:
        notes.append(f"m: {m_note}")
    h_ok, _, h_note = _certify_m(comparison_matrix(A))
    if h_note:
        notes.append(f"h (comparison matrix): {h_note}")

    spd: bool | None
    spd_witness: np.ndarray | None
    if A.n <= dense_limit:
        spd_witness = _spd_factor(A)
        spd = spd_witness is not None
    else:
        spd, spd_witness = None, None
        notes.append(f"spd: undetermined, order {A.n} exceeds dense limit {dense_limit}")

    if sdd and not h_ok:
        notes.append("cross-check violated: SDD matrix failed H certification")

    return ClassificationReport(
        is_sdd=sdd,
        is_z=z,
        is_l=l_ok,
        is_m=m_ok,
        is_h=h_ok,
        is_spd=spd,
        m_witness=m_witness,
        spd_witness=spd_witness,
        notes=tuple(notes),
    )
