"""Constrained binary quadratic instances and their benchmark generators.

An instance is the minimization of

    f(x) = sum_ij mu[i][j] x_i x_j + sum_k eta[k] x_k,    x in {0,1}^n

subject to the single integer equality  sum_i omega[i] x_i = b.

Bit convention used across the package: variable x_i lives on qubit i, and
qubit 0 is the least significant bit of a basis index, so bit i of index z
is x_i(z).  Displayed bitstrings read x_0 x_1 ... x_{n-1} left to right.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

import numpy as np

from . import subsetsum

KINDS = ("portfolio", "twojet", "custom")

_SCHEMA_KEYS = ("n", "kind", "seed", "mu", "eta", "omega", "b")


class InstanceError(ValueError):
    """Instance data violates the model contract.

    ``field`` names the offending field so callers can tell failures apart.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """One constrained instance; immutable and validated on construction."""

    n: int
    mu: np.ndarray
    eta: np.ndarray
    omega: np.ndarray
    b: int
    kind: str = "custom"
    seed: int | None = None

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InstanceError("n", f"variable count must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        mu = np.array(self.mu, dtype=np.float64)
        eta = np.array(self.eta, dtype=np.float64)
        if mu.shape != (self.n, self.n):
            raise InstanceError("mu", f"expected shape {(self.n, self.n)}, got {mu.shape}")
        if not np.all(np.isfinite(mu)):
            raise InstanceError("mu", "entries must be finite")
        if not np.array_equal(mu, mu.T):
            raise InstanceError("mu", "matrix must be exactly symmetric")
        if eta.shape != (self.n,):
            raise InstanceError("eta", f"expected shape {(self.n,)}, got {eta.shape}")
        if not np.all(np.isfinite(eta)):
            raise InstanceError("eta", "entries must be finite")
        omega_raw = np.array(self.omega)
        if omega_raw.shape != (self.n,):
            raise InstanceError("omega", f"expected shape {(self.n,)}, got {omega_raw.shape}")
        omega = np.array(omega_raw, dtype=np.float64)
        if not np.all(np.isfinite(omega)) or np.any(omega != np.round(omega)):
            raise InstanceError("omega", "weights must be integers")
        if np.any(omega < 0):
            raise InstanceError("omega", "weights must be nonnegative")
        if isinstance(self.b, bool) or not float(self.b) == round(float(self.b)):
            raise InstanceError("b", f"budget must be an integer, got {self.b!r}")
        if self.b < 0:
            raise InstanceError("b", "budget must be nonnegative")
        if self.kind not in KINDS:
            raise InstanceError("kind", f"must be one of {KINDS}, got {self.kind!r}")
        if self.seed is not None and not isinstance(self.seed, (int, np.integer)):
            raise InstanceError("seed", f"must be an integer or null, got {self.seed!r}")
        mu.setflags(write=False)
        eta.setflags(write=False)
        omega_int = omega.astype(np.int64)
        omega_int.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "omega", omega_int)
        object.__setattr__(self, "b", int(self.b))
        if self.seed is not None:
            object.__setattr__(self, "seed", int(self.seed))
        if not subsetsum.is_feasible(self.omega, self.b):
            raise InstanceError("b", f"no bitstring satisfies the constraint (budget {self.b})")

    def __eq__(self, other):
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.mu, other.mu)
            and np.array_equal(self.eta, other.eta)
            and np.array_equal(self.omega, other.omega)
            and self.b == other.b
            and self.kind == other.kind
            and self.seed == other.seed
        )

    @property
    def constrained_qubits(self) -> tuple[int, ...]:
        """Indices with a nonzero constraint weight."""
        return tuple(int(i) for i in np.nonzero(self.omega)[0])


def objective_value(inst: ProblemInstance, x) -> float:
    """Classical objective at the binary assignment ``x``.

    Accumulates terms in canonical index order (i-major then j, then the
    linear part); the diagonal builder follows the same order so both routes
    produce bit-identical doubles.
    """
    mu = inst.mu
    eta = inst.eta
    acc = 0.0
    for i in range(inst.n):
        if x[i]:
            row = mu[i]
            for j in range(inst.n):
                if x[j]:
                    acc += float(row[j])
    for k in range(inst.n):
        if x[k]:
            acc += float(eta[k])
    return acc


def bits_of_index(z: int, n: int) -> list[int]:
    """Binary assignment [x_0, ..., x_{n-1}] encoded by basis index ``z``."""
    return [(z >> i) & 1 for i in range(n)]


def bitstring_of_index(z: int, n: int) -> str:
    """Display form of a basis index, reading x_0 x_1 ... x_{n-1}."""
    return "".join(str((z >> i) & 1) for i in range(n))


def index_of_bitstring(s: str) -> int:
    """Inverse of :func:`bitstring_of_index`."""
    z = 0
    for i, c in enumerate(s):
        if c == "1":
            z |= 1 << i
        elif c != "0":
            raise ValueError(f"not a bitstring: {s!r}")
    return z


def with_constraint(inst: ProblemInstance, omega, b: int) -> ProblemInstance:
    """Copy of ``inst`` with the constraint replaced (kind becomes custom)."""
    return dataclasses.replace(inst, omega=np.asarray(omega), b=b, kind="custom", seed=None)


def generate_portfolio_instance(n: int, seed: int, weight_max: int = 5) -> ProblemInstance:
    """Random budget-constrained quadratic selection instance.

    Pairwise coefficients are i.i.d. uniform on [-1, 1] then symmetrized,
    linear coefficients i.i.d. uniform on [-1, 1], weights i.i.d. uniform
    integers in [1, weight_max].  The budget is the weight of a uniformly
    random nonempty, non-full subset, so the constraint is feasible by
    construction.  Deterministic in (n, seed, weight_max).
    """
    if n < 2:
        raise ValueError(f"need at least 2 variables, got n={n}")
    if weight_max < 1:
        raise ValueError(f"weight_max must be >= 1, got {weight_max}")
    rng = np.random.default_rng(seed)
    raw = rng.uniform(-1.0, 1.0, size=(n, n))
    mu = (raw + raw.T) / 2.0
    eta = rng.uniform(-1.0, 1.0, size=n)
    omega = rng.integers(1, weight_max + 1, size=n)
    subset_code = int(rng.integers(1, (1 << n) - 1))
    b = int(sum(int(omega[i]) for i in range(n) if (subset_code >> i) & 1))
    return ProblemInstance(n=n, mu=mu, eta=eta, omega=omega, b=b, kind="portfolio", seed=int(seed))


def generate_twojet_instance(n: int, seed: int, energy_levels: int = 4) -> ProblemInstance:
    """Random two-cluster partitioning instance with an energy-balance constraint.

    Draws n unit vectors uniformly on the sphere and sets the pairwise
    separation a_ij = (1 - cos theta_ij) / 2.  The cut score
    sum_ij a_ij x_i (1 - x_j) is encoded for minimization: mu = a (zero
    diagonal) and eta_k = -sum_j a_kj, so minimizing f maximizes the cut.
    Integer energies are drawn uniformly in [1, energy_levels] and redrawn
    until their total is even and splittable into two equal halves; then
    omega is the energy vector and b half the total.
    """
    if n < 2:
        raise ValueError(f"need at least 2 particles, got n={n}")
    if energy_levels < 1:
        raise ValueError(f"energy_levels must be >= 1, got {energy_levels}")
    rng = np.random.default_rng(seed)
    vecs = rng.normal(size=(n, 3))
    norms = np.linalg.norm(vecs, axis=1)
    while np.any(norms < 1e-12):
        bad = norms < 1e-12
        vecs[bad] = rng.normal(size=(int(bad.sum()), 3))
        norms = np.linalg.norm(vecs, axis=1)
    vecs /= norms[:, None]
    cosang = np.clip(vecs @ vecs.T, -1.0, 1.0)
    a = (1.0 - cosang) / 2.0
    np.fill_diagonal(a, 0.0)
    mu = (a + a.T) / 2.0
    eta = -mu.sum(axis=1)
    for _ in range(10_000):
        eps = rng.integers(1, energy_levels + 1, size=n)
        total = int(eps.sum())
        if total % 2 == 0 and subsetsum.is_feasible(eps, total // 2):
            break
    else:
        raise ValueError(
            f"no balanced integer energy assignment exists for n={n}, "
            f"energy_levels={energy_levels}"
        )
    return ProblemInstance(
        n=n, mu=mu, eta=eta, omega=eps, b=total // 2, kind="twojet", seed=int(seed)
    )


def emit_instance(inst: ProblemInstance) -> str:
    """Serialize to the instance JSON schema; round-trips bit-exactly."""
    doc = {
        "n": inst.n,
        "kind": inst.kind,
        "seed": inst.seed,
        "mu": [[float(v) for v in row] for row in inst.mu],
        "eta": [float(v) for v in inst.eta],
        "omega": [int(v) for v in inst.omega],
        "b": inst.b,
    }
    return json.dumps(doc, indent=2)


def parse_instance(text: str) -> ProblemInstance:
    """Parse the instance JSON schema, naming the offending field on error."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError("document", f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError("document", "top level must be an object")
    for key in _SCHEMA_KEYS:
        if key not in doc:
            raise InstanceError(key, "missing required field")
    for key in doc:
        if key not in _SCHEMA_KEYS:
            raise InstanceError(key, "unknown field")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise InstanceError("n", f"must be an integer, got {n!r}")
    kind = doc["kind"]
    seed = doc["seed"]
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise InstanceError("seed", f"must be an integer or null, got {seed!r}")
    mu = doc["mu"]
    if (
        not isinstance(mu, list)
        or len(mu) != n
        or any(not isinstance(row, list) or len(row) != n for row in mu)
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for row in mu for v in row)
    ):
        raise InstanceError("mu", f"must be an {n}x{n} matrix of numbers")
    eta = doc["eta"]
    if (
        not isinstance(eta, list)
        or len(eta) != n
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in eta)
    ):
        raise InstanceError("eta", f"must be a length-{n} vector of numbers")
    omega = doc["omega"]
    if (
        not isinstance(omega, list)
        or len(omega) != n
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in omega)
    ):
        raise InstanceError("omega", f"must be a length-{n} vector of integers")
    if any(float(v) != round(float(v)) for v in omega):
        raise InstanceError("omega", "weights must be integers")
    b = doc["b"]
    if isinstance(b, bool) or not isinstance(b, (int, float)) or float(b) != round(float(b)):
        raise InstanceError("b", f"must be an integer, got {b!r}")
    return ProblemInstance(
        n=n,
        mu=np.array(mu, dtype=np.float64),
        eta=np.array(eta, dtype=np.float64),
        omega=np.array([int(round(float(v))) for v in omega], dtype=np.int64),
        b=int(round(float(b))),
        kind=kind,
        seed=seed,
    )
