"""Shared test utilities: independent oracles and random inputs."""

from __future__ import annotations

import numpy as np

from entspec import EnsembleSpec, PureState, sample_haar


def haar_states(n: int, count: int, seed: int) -> list[PureState]:
    return sample_haar(EnsembleSpec("haar", n, seed), count)


def random_unitary2(rng: np.random.Generator) -> np.ndarray:
    """Haar 2x2 unitary via QR of a complex Ginibre matrix."""
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def partial_trace_reshape(state: PureState, keep: list[int]) -> np.ndarray:
    """Independent partial trace by tensor reshape/transpose.

    Row index of the result carries the kept qubits in ascending order, the
    lowest kept qubit in the least-significant bit, matching the package's
    compaction convention.
    """
    n = state.n
    psi = state.amplitudes.reshape([2] * n)  # axis i holds qubit n-1-i
    keep_axes = [n - 1 - q for q in sorted(keep, reverse=True)]
    rest = [ax for ax in range(n) if ax not in keep_axes]
    psi = np.transpose(psi, keep_axes + rest).reshape(2 ** len(keep), -1)
    return psi @ psi.conj().T


def graph_state_line(n: int) -> PureState:
    """Open-chain graph state built the circuit way: H on all, CZ on neighbors.

    Local-Z equivalent to make_cluster1d(n), so every bipartition purity
    must coincide; amplitudes themselves differ.
    """
    k = np.arange(1 << n, dtype=np.int64)
    # sign is -1 raised to the number of neighboring 1-pairs
    pairs = k & (k >> 1) & ((1 << (n - 1)) - 1)
    v = pairs.copy()
    for shift in (16, 8, 4, 2, 1):
        v ^= v >> shift
    signs = 1.0 - 2.0 * (v & 1)
    return PureState(n, signs.astype(np.complex128) / np.sqrt(1 << n))


def quartic_roots(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a 4x4 via its characteristic polynomial.

    Coefficients come from Newton's identities on the power-sum traces and
    the roots from numpy's companion-matrix solver; fully independent of the
    package's Hessenberg/QR path.
    """
    a = np.asarray(matrix, dtype=np.complex128)
    powers = [a]
    for _ in range(3):
        powers.append(powers[-1] @ a)
    s = [np.trace(p) for p in powers]
    e1 = s[0]
    e2 = (e1 * s[0] - s[1]) / 2.0
    e3 = (e2 * s[0] - e1 * s[1] + s[2]) / 3.0
    e4 = (e3 * s[0] - e2 * s[1] + e1 * s[2] - s[3]) / 4.0
    return np.roots([1.0, -e1, e2, -e3, e4])


def match_multisets(a, b) -> float:
    """Greedy nearest matching; returns the largest pairwise distance."""
    remaining = list(b)
    worst = 0.0
    for x in a:
        dists = [abs(x - y) for y in remaining]
        j = int(np.argmin(dists))
        worst = max(worst, dists[j])
        remaining.pop(j)
    return worst
