"""Finite abelian group arithmetic: elements, characters, subgroups, duality.

Groups are finite products of cyclic groups Z_{N1} x ... x Z_{Nd}, written
additively.  The dual group is identified with the group itself through the
pairing (gamma, x) -> exp(2*pi*i * sum_i gamma_i x_i / N_i); primal and dual
elements are kept as distinct types so that they cannot be mixed by accident.

Every value is immutable after construction and every operation is pure, so
concurrent reads are safe.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "GroupMismatchError",
    "FiniteAbelianGroup",
    "GroupElement",
    "DualElement",
    "Subgroup",
    "Automorphism",
    "MeasurePair",
    "character_value",
    "annihilator",
    "transversal",
    "apply_automorphism",
    "fourier",
    "inverse_fourier",
]


class GroupMismatchError(ValueError):
    """Raised when elements of different groups (or sides) are combined."""


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups with factor orders ``factors``.

    The dual group has the same factor list (finite abelian self-duality);
    dual elements are represented by :class:`DualElement` over the same
    group object.
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        if not factors or any(n < 1 for n in factors):
            raise ValueError(f"factors must be positive integers, got {self.factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def dual_element(self, coords: Sequence[int]) -> "DualElement":
        return DualElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.rank)

    def dual_zero(self) -> "DualElement":
        return self.dual_element((0,) * self.rank)

    def elements(self) -> Iterator["GroupElement"]:
        """All elements in canonical (lexicographic coordinate) order."""
        for coords in product(*(range(n) for n in self.factors)):
            yield GroupElement(self, coords)

    def dual_elements(self) -> Iterator["DualElement"]:
        for coords in product(*(range(n) for n in self.factors)):
            yield DualElement(self, coords)

    def index_of(self, elem: "_Element") -> int:
        """Position of ``elem`` in canonical order (mixed-radix value)."""
        idx = 0
        for c, n in zip(elem.coords, self.factors):
            idx = idx * n + c
        return idx

    def element_at(self, index: int) -> "GroupElement":
        return GroupElement(self, self._coords_at(index))

    def dual_element_at(self, index: int) -> "DualElement":
        return DualElement(self, self._coords_at(index))

    def _coords_at(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise IndexError(f"element index {index} out of range for order {self.order}")
        coords = []
        for n in reversed(self.factors):
            index, c = divmod(index, n)
            coords.append(c)
        return tuple(reversed(coords))

    def __repr__(self):
        return "Z" + "xZ".join(str(n) for n in self.factors)


class _Element:
    """Shared coordinate arithmetic for primal and dual elements."""

    __slots__ = ("group", "coords")

    def __init__(self, group: FiniteAbelianGroup, coords: tuple[int, ...]):
        if len(coords) != group.rank:
            raise GroupMismatchError(
                f"expected {group.rank} coordinates, got {len(coords)}"
            )
        self.group = group
        self.coords = tuple(c % n for c, n in zip(coords, group.factors))

    def _check(self, other: "_Element"):
        if type(self) is not type(other) or self.group != other.group:
            raise GroupMismatchError(f"cannot combine {self!r} and {other!r}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.group, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return type(self)(self.group, tuple(-a for a in self.coords))

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.group == other.group
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((type(self).__name__, self.group.factors, self.coords))

    def __lt__(self, other):
        self._check(other)
        return self.coords < other.coords

    @property
    def index(self) -> int:
        return self.group.index_of(self)

    def __repr__(self):
        tag = "dual " if isinstance(self, DualElement) else ""
        return f"<{tag}{self.coords} in {self.group!r}>"


class GroupElement(_Element):
    """Element of G, coordinates stored in canonical range [0, N_i)."""


class DualElement(_Element):
    """Character label in the dual group, same coordinate conventions."""


def character_value(gamma: DualElement, x: GroupElement) -> complex:
    """Value of the character labelled ``gamma`` at ``x`` (unit modulus).

    Equals exp(2*pi*i * sum_i gamma_i x_i / N_i).
    """
    if not isinstance(gamma, DualElement) or not isinstance(x, GroupElement):
        raise GroupMismatchError("character_value expects (DualElement, GroupElement)")
    if gamma.group != x.group:
        raise GroupMismatchError("character and point belong to different groups")
    return _character_phase(gamma.group, gamma.coords, x.coords)


def _character_phase(group: FiniteAbelianGroup, gcoords, xcoords) -> complex:
    # exact rational phase: sum_i g_i x_i * (L/N_i) mod L, L = lcm of factors
    L = math.lcm(*group.factors)
    k = sum(g * x * (L // n) for g, x, n in zip(gcoords, xcoords, group.factors)) % L
    if k == 0:
        return 1.0 + 0.0j
    return cmath.exp(2j * cmath.pi * k / L)


def _pairing_is_trivial(gamma: _Element, x: _Element) -> bool:
    # exact integer test: sum_i g_i x_i / N_i is an integer
    group = gamma.group
    L = math.lcm(*group.factors)
    k = sum(g * c * (L // n) for g, c, n in zip(gamma.coords, x.coords, group.factors))
    return k % L == 0


class Subgroup:
    """Subgroup stored as an explicit sorted member list.

    Members are all :class:`GroupElement` or all :class:`DualElement`; the
    ``dual`` flag records which side the subgroup lives on.
    """

    def __init__(
        self,
        group: FiniteAbelianGroup,
        generators: Sequence[_Element],
        dual: bool | None = None,
    ):
        kinds = {type(g) for g in generators}
        if len(kinds) > 1:
            raise GroupMismatchError("generators mix primal and dual elements")
        for g in generators:
            if g.group != group:
                raise GroupMismatchError("generator belongs to a different group")
        inferred = bool(generators) and kinds.pop() is DualElement
        if generators and dual is not None and dual != inferred:
            raise GroupMismatchError("dual flag contradicts the generators' side")
        self.group = group
        self.dual = inferred if generators else bool(dual)
        self.generators = tuple(generators)
        self.members = self._close(group, self.generators, self.dual)
        self._member_set = frozenset(self.members)
        if group.order % len(self.members) != 0:
            raise AssertionError("subgroup order does not divide group order")

    @staticmethod
    def _close(group, generators, dual) -> tuple[_Element, ...]:
        zero = group.dual_zero() if dual else group.zero()
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for a in frontier:
                for g in generators:
                    for b in (a + g, a - g):
                        if b not in seen:
                            seen.add(b)
                            nxt.append(b)
            frontier = nxt
        return tuple(sorted(seen))

    @classmethod
    def full(cls, group: FiniteAbelianGroup, dual: bool = False) -> "Subgroup":
        gens = [group.dual_element(c) if dual else group.element(c) for c in _unit_coords(group)]
        return cls(group, gens, dual=dual)

    @classmethod
    def trivial(cls, group: FiniteAbelianGroup, dual: bool = False) -> "Subgroup":
        return cls(group, (), dual=dual)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, elem):
        return elem in self._member_set

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group == other.group
            and self.dual == other.dual
            and self._member_set == other._member_set
        )

    def __hash__(self):
        return hash((self.group.factors, self.dual, self._member_set))

    def __repr__(self):
        side = "dual " if self.dual else ""
        return f"<{side}subgroup of {self.group!r}, order {len(self)}>"


def _unit_coords(group: FiniteAbelianGroup):
    for i, n in enumerate(group.factors):
        if n > 1:
            coords = [0] * group.rank
            coords[i] = 1
            yield tuple(coords)


def annihilator(lattice: Subgroup) -> Subgroup:
    """Characters (resp. points) pairing trivially with every member.

    For a primal subgroup the result is the dual-side annihilator and vice
    versa; |lattice| * |annihilator| = |G| always.
    """
    group = lattice.group
    if lattice.dual:
        candidates = group.elements()
    else:
        candidates = group.dual_elements()
    members = [c for c in candidates if all(_pairing_is_trivial(c, x) for x in lattice)]
    result = Subgroup.__new__(Subgroup)
    result.group = group
    result.dual = not lattice.dual
    result.generators = tuple(members)
    result.members = tuple(sorted(members))
    result._member_set = frozenset(members)
    assert len(lattice) * len(result) == group.order
    return result


def transversal(subgroup: Subgroup) -> tuple[_Element, ...]:
    """Coset representatives, lexicographically smallest per coset.

    The returned list V satisfies: the translates {w + V : w in subgroup}
    partition the ambient (primal or dual) group.
    """
    group = subgroup.group
    ambient = group.dual_elements() if subgroup.dual else group.elements()
    reps = []
    seen: set[_Element] = set()
    for e in ambient:  # canonical order makes first-seen the lex-smallest rep
        if e in seen:
            continue
        reps.append(e)
        for w in subgroup:
            seen.add(e + w)
    assert len(reps) * len(subgroup) == group.order
    return tuple(reps)


class Automorphism:
    """Group automorphism given by an integer matrix acting on coordinates.

    For a single cyclic factor this is multiplication by a unit u with
    gcd(u, N) = 1.  Construction validates well-definedness and bijectivity
    by enumeration; invalid maps are rejected.
    """

    def __init__(self, group: FiniteAbelianGroup, matrix, dual: bool = False):
        arr = np.atleast_2d(np.asarray(matrix, dtype=np.int64))
        if arr.shape != (group.rank, group.rank):
            # allow a flat list of per-factor multipliers
            flat = np.asarray(matrix, dtype=np.int64).ravel()
            if flat.shape == (group.rank,):
                arr = np.diag(flat)
            else:
                raise ValueError(
                    f"automorphism matrix must be {group.rank}x{group.rank} "
                    f"or a list of {group.rank} multipliers"
                )
        self.group = group
        self.dual = bool(dual)
        self.matrix = arr
        self._validate()

    def _validate(self):
        facs = self.group.factors
        # well-defined on each Z_{N_j}: A_ij * N_j must vanish mod N_i
        for i, ni in enumerate(facs):
            for j, nj in enumerate(facs):
                if (self.matrix[i, j] * nj) % ni != 0:
                    raise ValueError("matrix does not define a homomorphism on these factors")
        if self.group.rank == 1:
            u, n = int(self.matrix[0, 0]), facs[0]
            if math.gcd(u % n if n > 1 else 1, n) != 1:
                raise ValueError(f"multiplier {u} is not a unit mod {n}")
            return
        images = {self._raw_apply(coords) for coords in product(*(range(n) for n in facs))}
        if len(images) != self.group.order:
            raise ValueError("matrix does not act bijectively on the group")

    def _raw_apply(self, coords) -> tuple[int, ...]:
        vec = self.matrix @ np.asarray(coords, dtype=np.int64)
        return tuple(int(v) % n for v, n in zip(vec, self.group.factors))

    def __call__(self, elem: _Element) -> _Element:
        expected = DualElement if self.dual else GroupElement
        if not isinstance(elem, expected) or elem.group != self.group:
            raise GroupMismatchError("element does not match this automorphism's domain")
        return type(elem)(self.group, self._raw_apply(elem.coords))

    @classmethod
    def identity(cls, group: FiniteAbelianGroup, dual: bool = False) -> "Automorphism":
        return cls(group, np.eye(group.rank, dtype=np.int64), dual=dual)

    def __repr__(self):
        side = "dual" if self.dual else "primal"
        return f"<{side} automorphism {self.matrix.tolist()} of {self.group!r}>"


def apply_automorphism(auto: Automorphism, elem: _Element) -> _Element:
    """Image of ``elem`` under ``auto`` (a homomorphic bijection)."""
    return auto(elem)


@dataclass(frozen=True)
class MeasurePair:
    """Point masses (w_group on G, w_dual on the dual) with w_G*w_dual*|G| = 1."""

    w_group: float
    w_dual: float
    order: int

    def __post_init__(self):
        if self.w_group <= 0 or self.w_dual <= 0:
            raise ValueError("point masses must be positive")
        if abs(self.w_group * self.w_dual * self.order - 1.0) > 1e-12:
            raise ValueError(
                "inconsistent normalisation: w_group * w_dual * |G| must equal 1"
            )

    @classmethod
    def torus_like(cls, group: FiniteAbelianGroup) -> "MeasurePair":
        """Total mass 1 on G, counting measure on the dual (the default)."""
        return cls(1.0 / group.order, 1.0, group.order)

    @classmethod
    def counting(cls, group: FiniteAbelianGroup) -> "MeasurePair":
        """Counting measure on G, total mass 1 on the dual."""
        return cls(1.0, 1.0 / group.order, group.order)


class _CharacterTable:
    """Cached |G| x |G| table  T[gamma_index, x_index] = character value."""

    _cache: dict[tuple[int, ...], np.ndarray] = {}

    @classmethod
    def get(cls, group: FiniteAbelianGroup) -> np.ndarray:
        tab = cls._cache.get(group.factors)
        if tab is None:
            n = group.order
            tab = np.empty((n, n), dtype=np.complex128)
            elems = list(group.elements())
            duals = list(group.dual_elements())
            for gi, g in enumerate(duals):
                for xi, x in enumerate(elems):
                    tab[gi, xi] = _character_phase(group, g.coords, x.coords)
            tab.flags.writeable = False
            cls._cache[group.factors] = tab
        return tab


def character_table(group: FiniteAbelianGroup) -> np.ndarray:
    """Read-only table of all character values, indexed (dual, primal)."""
    return _CharacterTable.get(group)


def fourier(signal):
    """Fourier transform of a matrix signal, entrywise.

    ``fhat(gamma) = w_G * sum_x f(x) * conj(character_value(gamma, x))``.
    Returns a signal on the dual side.  Direct O(|G|^2) evaluation.
    """
    from .signals import MatrixSignal  # cycle kept local to the transform pair

    if signal.dual:
        raise GroupMismatchError("fourier expects a signal on the primal side")
    tab = character_table(signal.space.group)
    w = signal.space.measure.w_group
    values = w * np.einsum("gx,xij->gij", np.conj(tab), signal.values)
    return MatrixSignal(signal.space, values, dual=True)


def inverse_fourier(signal):
    """Inverse transform: ``f(x) = w_dual * sum_gamma fhat(gamma) * character_value(gamma, x)``."""
    from .signals import MatrixSignal

    if not signal.dual:
        raise GroupMismatchError("inverse_fourier expects a signal on the dual side")
    tab = character_table(signal.space.group)
    w = signal.space.measure.w_dual
    values = w * np.einsum("gx,gij->xij", tab, signal.values)
    return MatrixSignal(signal.space, values, dual=False)
