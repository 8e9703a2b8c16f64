"""Block structure of powers of the doubled operator and the partial-sum
diagnostics for the alternating product AC.

The doubled operator frakA = [[0, A], [CAC, 0]] is linear, so its powers can
be taken directly; the content is that they collapse to words in the single
anti-linear composition AC.  Even powers are block-diagonal with blocks
(AC)^2m and C(AC)^2m C, odd powers block-antidiagonal with (AC)^(2m+1) C in
the upper right and C(AC)^(2m+1) in the lower left.  Words are evaluated as
alternating products of matrices and conjugations; realified 2N-dimensional
real arithmetic is kept as an independent second path, since the two
strategies fail differently when a conjugation is misplaced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .antilinear import Conjugation, SemilinearOperator
from .errors import InputError
from .linalg import DEFAULT_TOL, Tolerance, _as_complex_matrix
from .reporting import CheckList


@dataclass(frozen=True, eq=False)
class PowerReport:
    """Residual bookkeeping for one exponent."""

    n: int
    block_residual: float
    structural_zero: float
    crosscheck_residual: float
    norm_residuals: tuple[float, float] | None
    partial_sums: list[float] | None
    growth_bound: float | None
    checks: CheckList


def _derealify(r: np.ndarray, antilinear: bool) -> tuple[np.ndarray, float]:
    """Complex matrix from a realified block matrix, with the residual of
    the shape constraint that makes the real matrix (anti)linear."""
    n = r.shape[0] // 2
    x = r[:n, :n]
    if antilinear:
        y = r[:n, n:]
        res = max(
            float(np.abs(r[n:, :n] - y).max()),
            float(np.abs(r[n:, n:] + x).max()),
        )
    else:
        y = r[n:, :n]
        res = max(
            float(np.abs(r[:n, n:] + y).max()),
            float(np.abs(r[n:, n:] - x).max()),
        )
    return x + 1j * y, res


def doubled_power_blocks(
    a, c: Conjugation, n: int, tol: Tolerance = DEFAULT_TOL
) -> PowerReport:
    """Compare frakA^n against its predicted block form.

    The direct path is a plain matrix power of the doubled matrix; the
    predicted blocks are words in AC and C evaluated by alternating-product
    bookkeeping, cross-checked against realified real-linear arithmetic.
    """
    if n < 1:
        raise InputError(f"exponent must be at least 1, got {n}")
    a = _as_complex_matrix(a, "matrix")
    dim = a.shape[0]
    if a.shape != (dim, dim) or c.matrix.shape != (dim, dim):
        raise InputError("matrix and conjugation dimensions do not match")
    k = c.matrix
    b = k @ np.conj(a) @ np.conj(k)
    z = np.zeros_like(a)
    frak = np.block([[z, a], [b, z]])
    direct = np.linalg.matrix_power(frak, n)

    ac = SemilinearOperator.from_antilinear(a @ k)
    c_op = SemilinearOperator.from_antilinear(k)
    word = ac.power(n)
    if n % 2 == 0:
        blocks = {
            (0, 0): word,
            (1, 1): c_op @ word @ c_op,
        }
    else:
        blocks = {
            (0, 1): word @ c_op,
            (1, 0): c_op @ word,
        }
    predicted = np.zeros_like(frak)
    for (i, j), op in blocks.items():
        if op.antilinear:
            raise InputError("block word parity bookkeeping failed")
        predicted[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] = op.matrix
    block_residual = float(np.abs(direct - predicted).max())
    zero_mask = np.ones_like(frak, dtype=bool)
    for (i, j), _ in blocks.items():
        zero_mask[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] = False
    structural_zero = float(np.abs(direct[zero_mask]).max()) if zero_mask.any() else 0.0

    # second path: realified word arithmetic for every block
    r_ac = ac.realify()
    r_c = c_op.realify()
    r_word = np.linalg.matrix_power(r_ac, n)
    cross = 0.0
    for (i, j), op in blocks.items():
        if (i, j) == (0, 0):
            r_block = r_word
        elif (i, j) == (1, 1):
            r_block = r_c @ r_word @ r_c
        elif (i, j) == (0, 1):
            r_block = r_word @ r_c
        else:
            r_block = r_c @ r_word
        m, shape_res = _derealify(r_block, antilinear=False)
        cross = max(cross, shape_res, float(np.abs(m - op.matrix).max()))

    scale = max(1.0, float(np.linalg.norm(a, 2)))
    bound = 1e3 * tol.eps * (1.0 + scale) ** n
    checks = CheckList()
    checks.add_residual("power_block_identity", block_residual, bound)
    checks.add_residual("power_structural_zeros", structural_zero, bound)
    checks.add_residual("power_evaluation_crosscheck", cross, bound)
    return PowerReport(n, block_residual, structural_zero, cross, None, None, None, checks)


def power_norm_identities(a, c: Conjugation, x, y, n: int, tol: Tolerance = DEFAULT_TOL):
    """Deviations in the norm identities for exponents 2n and 2n+1.

    Both parities reduce to || frakA^m (x, y) ||^2 =
    ||(AC)^m x||^2 + ||(AC)^m Cy||^2, using that C is isometric.
    """
    if n < 0:
        raise InputError(f"exponent index must be nonnegative, got {n}")
    a = _as_complex_matrix(a, "matrix")
    x = np.asarray(x, dtype=complex).reshape(-1)
    y = np.asarray(y, dtype=complex).reshape(-1)
    k = c.matrix
    b = k @ np.conj(a) @ np.conj(k)
    z = np.zeros_like(a)
    frak = np.block([[z, a], [b, z]])
    ac = SemilinearOperator.from_antilinear(a @ k)
    cy = c.apply(y)
    devs = []
    for m in (2 * n, 2 * n + 1):
        lhs = float(np.linalg.norm(np.linalg.matrix_power(frak, m) @ np.concatenate([x, y])) ** 2)
        w = ac.power(m)
        rhs = float(np.linalg.norm(w.apply(x)) ** 2 + np.linalg.norm(w.apply(cy)) ** 2)
        devs.append(abs(lhs - rhs))
    return devs[0], devs[1]


@dataclass(frozen=True, eq=False)
class QaDiagnostics:
    """Partial sums of || (AC)^k x ||^(-1/k) and the growth-bound probe.

    diverged means some power annihilated x, after which every term is the
    +inf marker; growth_bound is the smallest M with ||(AC)^k x|| <= M^k k!
    over the computed range.
    """

    terms: list[float]
    partial_sums: list[float]
    diverged: bool
    growth_bound: float


def qa_partial_sums(
    a, c: Conjugation, x, n_terms: int, tol: Tolerance = DEFAULT_TOL
) -> QaDiagnostics:
    if n_terms < 1:
        raise InputError(f"need at least one term, got {n_terms}")
    a = _as_complex_matrix(a, "matrix")
    x = np.asarray(x, dtype=complex).reshape(-1)
    if np.linalg.norm(x) <= tol.eps:
        raise InputError("partial sums are undefined for the zero vector")
    ac = SemilinearOperator.from_antilinear(a @ c.matrix)
    terms: list[float] = []
    sums: list[float] = []
    diverged = False
    growth = 0.0
    v = x
    total = 0.0
    for k in range(1, n_terms + 1):
        v = ac.apply(v)
        norm = float(np.linalg.norm(v))
        if norm <= tol.eps:
            diverged = True
        if diverged:
            terms.append(np.inf)
            total = np.inf
        else:
            terms.append(norm ** (-1.0 / k))
            total += terms[-1]
            growth = max(growth, (norm / math.factorial(k)) ** (1.0 / k))
        sums.append(total)
    return QaDiagnostics(terms, sums, diverged, growth)


def power_report(
    a,
    c: Conjugation,
    x,
    y,
    n: int,
    n_terms: int = 8,
    tol: Tolerance = DEFAULT_TOL,
) -> PowerReport:
    """Full report for one exponent: block residuals for frakA^n, norm
    identities at exponents 2n and 2n+1, and partial-sum diagnostics."""
    base = doubled_power_blocks(a, c, n, tol)
    devs = power_norm_identities(a, c, x, y, n, tol)
    qa = qa_partial_sums(a, c, x, n_terms, tol)
    scale = max(1.0, float(np.linalg.norm(np.asarray(a), 2)))
    # deviations compare squared norms, which grow like ||A||^(2m) at m = 2n+1
    nbound = 1e3 * tol.eps * (1.0 + scale) ** (4 * n + 2)
    nx = max(1.0, float(np.linalg.norm(x)) ** 2 + float(np.linalg.norm(y)) ** 2)
    checks = CheckList()
    checks.extend(base.checks)
    checks.add_residual("norm_identity_even", devs[0], nbound * nx)
    checks.add_residual("norm_identity_odd", devs[1], nbound * nx)
    return PowerReport(
        n,
        base.block_residual,
        base.structural_zero,
        base.crosscheck_residual,
        devs,
        qa.partial_sums,
        qa.growth_bound,
        checks,
    )
