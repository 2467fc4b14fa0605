"""Construction of named n-qubit pure states and random-state ensembles.

Amplitude indexing is little-endian throughout the package: basis index k
carries the value of qubit j in bit j, so qubit 0 is the least-significant
bit and k = sum_j b_j 2^j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 26  # 2**26 complex amplitudes ~ 1 GiB
NORM_TOL = 1e-12

ENSEMBLE_KINDS = ("haar", "phase-sphere")


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector over the 2**n computational basis."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        if self.n > MAX_QUBITS:
            raise ValueError(
                f"qubit count {self.n} exceeds the memory guard of {MAX_QUBITS}"
            )
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n,):
            raise ValueError(
                f"amplitude vector has length {amps.size}, expected {1 << self.n}"
            )
        norm2 = float(np.real(np.vdot(amps, amps)))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum |z|^2 = {norm2!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class EnsembleSpec:
    """Random-state ensemble: kind, qubit count, and a 64-bit seed.

    The seed fully determines every sampled state; the stream for sample i
    is derived from (seed, i), so samples do not depend on how many states
    are requested in one call.
    """

    kind: str
    n: int
    seed: int

    def __post_init__(self):
        if self.kind not in ENSEMBLE_KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if not (1 <= self.n <= MAX_QUBITS):
            raise ValueError(f"qubit count {self.n} outside [1, {MAX_QUBITS}]")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit non-negative integer")


def make_basis(n: int, k: int) -> PureState:
    """Computational basis state |k> on n qubits."""
    if n < 1 or n > MAX_QUBITS:
        raise ValueError(f"qubit count {n} outside [1, {MAX_QUBITS}]")
    if not (0 <= k < (1 << n)):
        raise ValueError(f"basis index {k} out of range for {n} qubits")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[k] = 1.0
    return PureState(n, amps)


def make_ghz(n: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2); every bipartition has participation 2."""
    if n < 2:
        raise ValueError(f"GHZ state needs at least 2 qubits, got {n}")
    if n > MAX_QUBITS:
        raise ValueError(f"qubit count {n} exceeds the memory guard of {MAX_QUBITS}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return PureState(n, amps)


def make_w(n: int) -> PureState:
    """Equal superposition of the n single-excitation basis states, all phases +1."""
    if n < 2:
        raise ValueError(f"W state needs at least 2 qubits, got {n}")
    if n > MAX_QUBITS:
        raise ValueError(f"qubit count {n} exceeds the memory guard of {MAX_QUBITS}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[[1 << j for j in range(n)]] = 1.0 / np.sqrt(n)
    return PureState(n, amps)


def _bit_parity(v: np.ndarray) -> np.ndarray:
    """Parity of the popcount of each entry (works for values below 2**32)."""
    v = v.copy()
    for shift in (16, 8, 4, 2, 1):
        v ^= v >> shift
    return v & 1


def make_cluster1d(n: int) -> PureState:
    """One-dimensional cluster state on an open chain of n qubits.

    The amplitude of basis string b is 2**(-n/2) * (-1)**c(b) where c(b)
    counts positions k in [0, n-2] with b_k = 0 and b_{k+1} = 1.  This is
    the expansion of the chain product of (|0>_k Z_{k+1} + |1>_k) factors
    with the Z on the last factor dropped; it is local-Z equivalent to the
    CZ-circuit graph state on the same chain.
    """
    if n < 2:
        raise ValueError(f"cluster state needs at least 2 qubits, got {n}")
    if n > MAX_QUBITS:
        raise ValueError(f"qubit count {n} exceeds the memory guard of {MAX_QUBITS}")
    k = np.arange(1 << n, dtype=np.int64)
    pattern = (~k) & (k >> 1) & ((1 << (n - 1)) - 1)
    signs = 1.0 - 2.0 * _bit_parity(pattern)
    return PureState(n, signs.astype(np.complex128) / np.sqrt(1 << n))


def make_product(a: PureState, b: PureState) -> PureState:
    """Tensor product; qubits of `a` keep positions 0..n_a-1, `b` fills the rest."""
    n = a.n + b.n
    if n > MAX_QUBITS:
        raise ValueError(
            f"product of {a.n}+{b.n} qubits exceeds the memory guard of {MAX_QUBITS}"
        )
    # index k = k_b * 2**n_a + k_a, so b supplies the high bits
    return PureState(n, np.kron(b.amplitudes, a.amplitudes))


def permute_qubits(state: PureState, perm: list[int] | tuple[int, ...]) -> PureState:
    """Relabel qubits: qubit j of the input becomes qubit perm[j] of the output."""
    if sorted(perm) != list(range(state.n)):
        raise ValueError(f"perm must be a permutation of 0..{state.n - 1}")
    src = np.arange(state.dim, dtype=np.int64)
    dest = np.zeros_like(src)
    for j, p in enumerate(perm):
        dest |= ((src >> j) & 1) << p
    amps = np.empty_like(state.amplitudes)
    amps[dest] = state.amplitudes
    return PureState(state.n, amps)


def apply_single_qubit(state: PureState, qubit: int, u: np.ndarray) -> PureState:
    """Apply a 2x2 unitary to one qubit (norm is re-checked on construction)."""
    if not (0 <= qubit < state.n):
        raise ValueError(f"qubit {qubit} out of range for {state.n} qubits")
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValueError("single-qubit operator must be 2x2")
    arr = state.amplitudes.reshape(-1, 2, 1 << qubit)
    return PureState(state.n, np.einsum("ab,ibj->iaj", u, arr).reshape(-1))


def _sample_rng(seed: int, index: int) -> np.random.Generator:
    # one PCG64 stream per sample, split from (seed, index) via SeedSequence
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def sample_haar(spec: EnsembleSpec, count: int) -> list[PureState]:
    """Draw `count` states uniformly on the complex unit sphere.

    Each state is a vector of 2**n complex entries whose real and imaginary
    parts are independent standard normals, normalized to unit length;
    rotation invariance of the Gaussian makes the result Haar-uniform.
    """
    if spec.kind != "haar":
        raise ValueError(f"ensemble kind is {spec.kind!r}, expected 'haar'")
    if count < 0:
        raise ValueError("count must be non-negative")
    dim = 1 << spec.n
    states = []
    for i in range(count):
        g = _sample_rng(spec.seed, i).standard_normal(2 * dim)
        z = g[:dim] + 1j * g[dim:]
        states.append(PureState(spec.n, z / np.linalg.norm(z)))
    return states


def sample_phase_sphere(spec: EnsembleSpec, count: int) -> list[PureState]:
    """Draw states with moduli uniform on the real unit sphere and independent
    uniform phases.

    Per sample, the stream yields 2**n standard normals (folded and normalized
    to give the moduli) followed by 2**n uniform phases on [0, 2*pi).
    """
    if spec.kind != "phase-sphere":
        raise ValueError(f"ensemble kind is {spec.kind!r}, expected 'phase-sphere'")
    if count < 0:
        raise ValueError("count must be non-negative")
    dim = 1 << spec.n
    states = []
    for i in range(count):
        rng = _sample_rng(spec.seed, i)
        g = rng.standard_normal(dim)
        r = np.abs(g) / np.linalg.norm(g)
        phases = rng.uniform(0.0, 2.0 * np.pi, dim)
        states.append(PureState(spec.n, r * np.exp(1j * phases)))
    return states


def state_to_dict(state: PureState) -> dict:
    """JSON-ready form: {"n": ..., "amplitudes": [[re, im], ...]}."""
    return {
        "n": state.n,
        "amplitudes": [[float(z.real), float(z.imag)] for z in state.amplitudes],
    }


def state_from_dict(data: dict) -> PureState:
    """Inverse of state_to_dict; validates shape and normalization."""
    try:
        n = int(data["n"])
        pairs = data["amplitudes"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed state record: {exc}") from exc
    arr = np.asarray(pairs, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("amplitudes must be a list of [re, im] pairs")
    return PureState(n, arr[:, 0] + 1j * arr[:, 1])
