"""Shared fixtures and random-set generation for the test suite."""

from pathlib import Path

import numpy as np
import pytest

from bridgelen import LatticeBasis, Motif, PeriodicSet, cell_metrics

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def make_set(basis, motif) -> PeriodicSet:
    return PeriodicSet(LatticeBasis(basis), Motif(motif))


@pytest.fixture(scope="session")
def z1():
    return make_set([[1.0]], [[0.0]])


@pytest.fixture(scope="session")
def z2():
    return make_set(np.eye(2), [[0.0, 0.0]])


@pytest.fixture(scope="session")
def z3():
    return make_set(np.eye(3), [[0.0, 0.0, 0.0]])


@pytest.fixture(scope="session")
def bcc():
    return make_set(np.eye(3), [[0.0, 0.0, 0.0], [0.5, 0.5, 0.5]])


@pytest.fixture(scope="session")
def fig3_set():
    # shortest edge class 0->1 translation (0,1), then (0,0), then (1,1);
    # every other class is longer, so the acceptance trace is exactly
    # forest, cycle (0,1), cycle (-1,0).
    return make_set(np.eye(2), [[0.6, 0.9], [0.5, 0.1]])


@pytest.fixture(scope="session")
def fig2_set():
    # 5x5 cell: bottom chain spacing 1 crossing the boundary at 1, a
    # vertical arm, and a lone point whose nearest neighbours are exactly 2
    # away across cell boundaries but 3 away within its own cell.
    frac = [
        [0.0, 0.0], [0.2, 0.0], [0.4, 0.0], [0.6, 0.0], [0.8, 0.0],
        [0.0, 0.2], [0.0, 0.4], [0.0, 0.6],
        [0.6, 0.6],
    ]
    return make_set([[5.0, 0.0], [0.0, 5.0]], frac)


def random_basis(rng: np.random.Generator, n: int, max_aspect: float = 2.5):
    """Well-conditioned random basis: random rotation of a mildly sheared,
    mildly anisotropic cell, at a random overall scale."""
    while True:
        q, _ = np.linalg.qr(rng.normal(size=(n, n)))
        scales = rng.uniform(0.7, 1.4, size=n)
        vectors = q * scales[:, None]
        vectors = vectors + rng.normal(scale=0.08, size=(n, n))
        vectors *= rng.uniform(0.5, 2.0)
        try:
            basis = LatticeBasis(vectors)
        except ValueError:
            continue
        if cell_metrics(basis).aspect <= max_aspect:
            return basis


def random_motif(rng: np.random.Generator, n: int, m: int, min_sep: float = 5e-2):
    """m random fractional points, pairwise wrap-separated by min_sep."""
    while True:
        pts = rng.random((m, n))
        try:
            return Motif(pts, dedup_tol=min_sep)
        except ValueError:
            continue


def random_set(
    rng: np.random.Generator,
    n: int | None = None,
    m: int | None = None,
    max_aspect: float = 2.5,
) -> PeriodicSet:
    if n is None:
        n = int(rng.integers(1, 4))
    if m is None:
        m = int(rng.integers(1, 5))
    return PeriodicSet(random_basis(rng, n, max_aspect), random_motif(rng, n, m))
