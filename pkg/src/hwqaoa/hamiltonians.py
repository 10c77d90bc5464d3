"""Diagonal cost/constraint operators, per-term expansion, and energies.

Everything here is diagonal in the computational basis: entry d[z] of a
diagonal operator is its eigenvalue on basis state |z>, with bit i of z
holding x_i (qubit 0 = least significant bit).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problems import ProblemInstance
from .simulator import StateVector


@dataclass(frozen=True, eq=False)
class DiagonalOperator:
    """Dense diagonal over the 2^n computational basis states."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} diagonal entries, got {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class CostTermList:
    """Objective split into products of bit variables, one angle slot each.

    quad_terms: (i, j, c) with i < j contributing c * x_i x_j.
    lin_terms:  (k, c) contributing c * x_k.
    constant:   additive offset (never produces a gate).
    """

    quad_terms: tuple[tuple[int, int, float], ...]
    lin_terms: tuple[tuple[int, float], ...]
    constant: float

    @property
    def count(self) -> int:
        return len(self.quad_terms) + len(self.lin_terms)


def _bit_columns(n: int) -> list[np.ndarray]:
    z = np.arange(1 << n, dtype=np.int64)
    return [((z >> i) & 1).astype(np.uint8) for i in range(n)]


def build_cost_diagonal(inst: ProblemInstance) -> DiagonalOperator:
    """Diagonal of the objective: d[z] = f(x(z)) for every basis index z.

    Terms accumulate in the same canonical order as
    :func:`hwqaoa.problems.objective_value`, so the two agree bit-exactly.
    """
    bits = _bit_columns(inst.n)
    d = np.zeros(1 << inst.n, dtype=np.float64)
    mu = inst.mu
    for i in range(inst.n):
        bi = bits[i]
        row = mu[i]
        for j in range(inst.n):
            d += row[j] * (bi & bits[j])
    for k in range(inst.n):
        d += inst.eta[k] * bits[k]
    return DiagonalOperator(n=inst.n, values=d)


def build_constraint_diagonal(inst: ProblemInstance) -> DiagonalOperator:
    """Diagonal of the constraint sum: d[z] = sum_i omega[i] x_i(z)."""
    bits = _bit_columns(inst.n)
    d = np.zeros(1 << inst.n, dtype=np.float64)
    for i in range(inst.n):
        d += float(inst.omega[i]) * bits[i]
    return DiagonalOperator(n=inst.n, values=d)


def build_cost_terms(inst: ProblemInstance) -> CostTermList:
    """Expand the objective into per-term diagonals for multi-angle phases.

    Symmetric mu entries merge into a single x_i x_j term with coefficient
    mu[i][j] + mu[j][i]; diagonal mu entries fold into the linear part
    (x_i^2 = x_i).  Exact-zero coefficients are dropped.
    """
    quad = []
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            c = float(inst.mu[i, j] + inst.mu[j, i])
            if c != 0.0:
                quad.append((i, j, c))
    lin = []
    for k in range(inst.n):
        c = float(inst.mu[k, k] + inst.eta[k])
        if c != 0.0:
            lin.append((k, c))
    return CostTermList(quad_terms=tuple(quad), lin_terms=tuple(lin), constant=0.0)


def term_diagonals(terms: CostTermList, n: int) -> np.ndarray:
    """Stack of per-term diagonals, shape (term count, 2^n), quad rows first."""
    bits = _bit_columns(n)
    rows = np.empty((terms.count, 1 << n), dtype=np.float64)
    r = 0
    for i, j, c in terms.quad_terms:
        rows[r] = c * (bits[i] & bits[j])
        r += 1
    for k, c in terms.lin_terms:
        rows[r] = c * bits[k]
        r += 1
    return rows


def expectation(state: StateVector, diag: DiagonalOperator) -> float:
    """<psi| D |psi> for a diagonal D."""
    if state.n != diag.n:
        raise ValueError(f"state is on {state.n} qubits, diagonal on {diag.n}")
    probs = state.amps.real**2 + state.amps.imag**2
    return float(probs @ diag.values)


def penalty_loss(
    state: StateVector,
    cost_diag: DiagonalOperator,
    cons_diag: DiagonalOperator,
    b: int,
    lam: float,
) -> float:
    """Augmented objective <H_c> + lam * |<H_s> - b|^2."""
    if lam < 0:
        raise ValueError(f"penalty factor must be nonnegative, got {lam}")
    violation = expectation(state, cons_diag) - b
    return expectation(state, cost_diag) + lam * violation * violation
