"""Shared builders and independent oracles for the test suite.

Oracles are deliberately written as explicit loops over group elements and
matrix entries (cmath phases, scalar accumulation) so they share no code
path with the package's vectorised implementations.
"""

from __future__ import annotations

import cmath

import numpy as np

from gaborop import (
    FiniteAbelianGroup,
    GaborSystem,
    MatrixSignal,
    MeasurePair,
    SignalSpace,
    SpaceOperator,
    Subgroup,
    inverse_fourier,
)

# ---------------------------------------------------------------------------
# oracles


def oracle_character(factors, gcoords, xcoords) -> complex:
    phase = 0.0
    for g, x, n in zip(gcoords, xcoords, factors):
        phase += g * x / n
    return cmath.exp(2j * cmath.pi * phase)


def oracle_fourier(signal: MatrixSignal) -> np.ndarray:
    """Direct double-sum transform, entrywise; returns raw dual-side values."""
    group = signal.space.group
    n = signal.space.n
    w = signal.space.measure.w_group
    out = np.zeros((group.order, n, n), dtype=np.complex128)
    duals = list(group.dual_elements())
    elems = list(group.elements())
    for gi, gamma in enumerate(duals):
        for i in range(n):
            for j in range(n):
                acc = 0.0 + 0.0j
                for xi, x in enumerate(elems):
                    ch = oracle_character(group.factors, gamma.coords, x.coords)
                    acc += signal.values[xi, i, j] * ch.conjugate()
                out[gi, i, j] = w * acc
    return out


def oracle_mv_inner(f: MatrixSignal, g: MatrixSignal) -> np.ndarray:
    n = f.space.n
    w = f.space.weight(f.dual)
    out = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            acc = 0.0 + 0.0j
            for xi in range(f.space.group.order):
                for r in range(n):
                    acc += f.values[xi, i, r] * g.values[xi, j, r].conjugate()
            out[i, j] = w * acc
    return out


def oracle_norm_sq(f: MatrixSignal) -> float:
    w = f.space.weight(f.dual)
    acc = 0.0
    for xi in range(f.space.group.order):
        for i in range(f.space.n):
            for j in range(f.space.n):
                acc += abs(f.values[xi, i, j]) ** 2
    return w * acc


def oracle_frame_sum(members, f: MatrixSignal) -> float:
    """Sum of squared Frobenius norms of the matrix pairings, by loops."""
    total = 0.0
    for psi in members:
        m = oracle_mv_inner(f, psi)
        for i in range(f.space.n):
            for j in range(f.space.n):
                total += abs(m[i, j]) ** 2
    return total


def oracle_frame_operator(members, space: SignalSpace) -> np.ndarray:
    """Frame operator assembled column by column from the definition."""
    dim = space.dim
    out = np.zeros((dim, dim), dtype=np.complex128)
    for col, basis in enumerate(space.basis_signals()):
        acc = np.zeros((space.group.order, space.n, space.n), dtype=np.complex128)
        for psi in members:
            m = oracle_mv_inner(basis, psi)
            for xi in range(space.group.order):
                acc[xi] += m @ psi.values[xi]
        out[:, col] = MatrixSignal(space, acc).flatten()
    return out


# ---------------------------------------------------------------------------
# builders


def torus_space(order: int = 16, n: int = 1, convention: str = "torus_like") -> SignalSpace:
    group = FiniteAbelianGroup((order,))
    measure = (
        MeasurePair.torus_like(group) if convention == "torus_like"
        else MeasurePair.counting(group)
    )
    return SignalSpace(group, n, measure)


def indicator_window(space: SignalSpace, scale: float = 1.0, width: int = 8) -> MatrixSignal:
    """Scalar window whose transform is ``scale`` on {0..width-1}, else 0."""
    group = space.group
    hat = np.zeros((group.order, 1, 1), dtype=np.complex128)
    hat[:width, 0, 0] = scale
    scalar = SignalSpace(group, 1, space.measure)
    return inverse_fourier(MatrixSignal(scalar, hat, dual=True))


def torus_lattices(group: FiniteAbelianGroup, resolution: int):
    lattice = Subgroup(group, [group.element([resolution])])
    dual_lattice = Subgroup(group, [group.dual_element([8])])
    return lattice, dual_lattice


def phi_system(resolution: int = 2, which: int = 1, convention: str = "torus_like") -> GaborSystem:
    """Scalar reference system: tight with constant 8 (which=1) or 2 (which=2)."""
    space = torus_space(8 * resolution, 1, convention)
    window = indicator_window(space, 1.0 if which == 1 else 0.5)
    lat, dlat = torus_lattices(space.group, resolution)
    return GaborSystem(space, (window,), lat, dlat)


def matrix_window(space: SignalSpace, grid) -> MatrixSignal:
    """Grid entries: scalar MatrixSignal, ndarray of length |G|, or 0."""
    return space.from_scalars(grid)


def swap_window_system(resolution: int = 2, convention: str = "torus_like") -> GaborSystem:
    """The 10-tight two-window matrix system (off-diagonal atoms)."""
    space = torus_space(8 * resolution, 2, convention)
    p1 = indicator_window(space, 1.0)
    p2 = indicator_window(space, 0.5)
    w1 = matrix_window(space, [[0, p1], [p2, 0]])
    w2 = matrix_window(space, [[0, p2], [p1, 0]])
    lat, dlat = torus_lattices(space.group, resolution)
    return GaborSystem(space, (w1, w2), lat, dlat)


def column_window_system(resolution: int = 2) -> GaborSystem:
    """The rank-deficient system carrying both atoms in the second column."""
    space = torus_space(8 * resolution, 2)
    p1 = indicator_window(space, 1.0)
    p2 = indicator_window(space, 0.5)
    w1 = matrix_window(space, [[0, p1], [0, p1]])
    w2 = matrix_window(space, [[0, p2], [0, p2]])
    lat, dlat = torus_lattices(space.group, resolution)
    return GaborSystem(space, (w1, w2), lat, dlat)


def perturbed_window_system(resolution: int = 2) -> GaborSystem:
    space = torus_space(8 * resolution, 2)
    p1 = indicator_window(space, 1.0)
    p2 = indicator_window(space, 0.5)
    w1 = matrix_window(space, [[0.2 * p1, p1], [p2, 0.2 * p2]])
    w2 = matrix_window(space, [[0.2 * p2, p2], [p1, 0.2 * p1]])
    lat, dlat = torus_lattices(space.group, resolution)
    return GaborSystem(space, (w1, w2), lat, dlat)


def diag_window_system(resolution: int = 2) -> GaborSystem:
    space = torus_space(8 * resolution, 2)
    p1 = indicator_window(space, 1.0)
    p2 = indicator_window(space, 0.5)
    w1 = matrix_window(space, [[0.2 * p1, 0], [0, 0.2 * p2]])
    w2 = matrix_window(space, [[0.2 * p2, 0], [0, 0.2 * p1]])
    lat, dlat = torus_lattices(space.group, resolution)
    return GaborSystem(space, (w1, w2), lat, dlat)


# entry maps, row-major over row-major vec of the matrix value
COLUMN2_KEEPER = np.diag([0.0, 1.0, 0.0, 1.0])
F11_PROJECTOR = np.diag([1.0, 0.0, 0.0, 0.0])
FLIP = np.array(
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=float
)
PERT_THETA = np.array(
    [[0, 0, 0, 2], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=float
)
ZERO_MID_COLUMN_3 = np.diag([1.0, 0, 1, 1, 0, 1, 1, 0, 1])


def selector_op(space: SignalSpace) -> SpaceOperator:
    return SpaceOperator.from_entry_map(space, COLUMN2_KEEPER)


def projector_op(space: SignalSpace) -> SpaceOperator:
    return SpaceOperator.from_entry_map(space, F11_PROJECTOR)


def flip_op(space: SignalSpace) -> SpaceOperator:
    return SpaceOperator.from_entry_map(space, FLIP)


def pert_theta_op(space: SignalSpace) -> SpaceOperator:
    return SpaceOperator.from_entry_map(space, PERT_THETA)


# ---------------------------------------------------------------------------
# randomisation


def random_signal(space: SignalSpace, rng: np.random.Generator, dual: bool = False) -> MatrixSignal:
    shape = (space.group.order, space.n, space.n)
    return MatrixSignal(space, rng.standard_normal(shape) + 1j * rng.standard_normal(shape),
                        dual=dual)


def random_entry_op(space: SignalSpace, rng: np.random.Generator,
                    kind: str = "general") -> SpaceOperator:
    n2 = space.n * space.n
    L = rng.standard_normal((n2, n2)) + 1j * rng.standard_normal((n2, n2))
    if kind == "singular":
        cols = rng.choice(n2, size=max(1, n2 // 2), replace=False)
        L[:, cols] = 0.0
    elif kind == "right_unitary":
        q, _ = np.linalg.qr(rng.standard_normal((space.n, space.n))
                            + 1j * rng.standard_normal((space.n, space.n)))
        return SpaceOperator.right_multiplication(space, q)
    elif kind == "invertible":
        L = L + 2.0 * np.sqrt(n2) * np.eye(n2)
    return SpaceOperator.from_entry_map(space, L)


def random_subgroup(group: FiniteAbelianGroup, rng: np.random.Generator,
                    dual: bool = False) -> Subgroup:
    make = group.dual_element if dual else group.element
    count = int(rng.integers(0, 2))
    gens = [
        make([int(rng.integers(0, n)) for n in group.factors]) for _ in range(count)
    ]
    return Subgroup(group, gens, dual=dual)


def random_system(rng: np.random.Generator, orders=(6, 8), max_n: int = 2) -> GaborSystem:
    order = int(rng.choice(orders))
    n = int(rng.integers(1, max_n + 1))
    space = torus_space(order, n)
    num_windows = int(rng.integers(1, 3))
    windows = tuple(random_signal(space, rng) for _ in range(num_windows))
    lattice = random_subgroup(space.group, rng)
    dual_lattice = random_subgroup(space.group, rng, dual=True)
    return GaborSystem(space, windows, lattice, dual_lattice)


def random_operator_for(space: SignalSpace, rng: np.random.Generator) -> SpaceOperator:
    kind = rng.choice(["general", "singular", "right_unitary", "invertible", "dense"])
    if kind == "dense":
        d = space.dim
        m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        return SpaceOperator.from_dense(space, m / np.sqrt(d))
    return random_entry_op(space, rng, str(kind))
