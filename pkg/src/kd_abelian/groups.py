"""Finite abelian groups Z_d1 x ... x Z_dk, their characters and subgroups.

Elements are tuples of ints.  The dual group is represented by the same
:class:`GroupSpec`; a dual element ``a`` acts as the character
``g -> exp(2*pi*i * sum(a_j * g_j / d_j))``.

All tables in the package (operators, KD distributions) are indexed by the
canonical element order, which is lexicographic on coordinates with the
identity first.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

DEFAULT_MAX_ORDER = 64
MAX_ORDER_ENV = "KD_ABELIAN_MAX_ORDER"

Element = tuple[int, ...]


def max_order() -> int:
    """Group-size cap, overridable through ``KD_ABELIAN_MAX_ORDER``."""
    raw = os.environ.get(MAX_ORDER_ENV)
    if raw is None:
        return DEFAULT_MAX_ORDER
    value = int(raw)
    if value < 1:
        raise ValueError(f"{MAX_ORDER_ENV} must be positive, got {raw!r}")
    return value


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple[int, ...]

    def __post_init__(self):
        if len(self.orders) == 0:
            raise ValueError("a group needs at least one cyclic factor")
        if any(int(d) != d or d < 1 for d in self.orders):
            raise ValueError(f"cyclic orders must be positive integers, got {self.orders}")

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def elements(self) -> list[Element]:
        return [tuple(e) for e in itertools.product(*(range(d) for d in self.orders))]

    @cached_property
    def coords(self) -> np.ndarray:
        """(|G|, k) integer array of element coordinates in canonical order."""
        return np.array(self.elements, dtype=np.int64).reshape(self.order, self.rank)

    @cached_property
    def _strides(self) -> np.ndarray:
        strides = np.ones(self.rank, dtype=np.int64)
        for j in range(self.rank - 2, -1, -1):
            strides[j] = strides[j + 1] * self.orders[j + 1]
        return strides

    def index(self, g) -> int:
        g = self.reduce(g)
        return int(np.dot(g, self._strides))

    def reduce(self, g) -> Element:
        g = tuple(int(x) for x in np.atleast_1d(g))
        if len(g) != self.rank:
            raise ValueError(f"element {g} has {len(g)} coordinates, group has {self.rank}")
        return tuple(x % d for x, d in zip(g, self.orders))

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the index of ``elements[i] + elements[j]``."""
        c = self.coords
        s = (c[:, None, :] + c[None, :, :]) % np.array(self.orders)
        return s @ self._strides

    @cached_property
    def neg(self) -> np.ndarray:
        """``neg[i]`` is the index of ``-elements[i]``."""
        return ((-self.coords) % np.array(self.orders)) @ self._strides

    @cached_property
    def sub_table(self) -> np.ndarray:
        """``sub_table[i, j]`` is the index of ``elements[i] - elements[j]``."""
        return self.add_table[:, self.neg]

    @cached_property
    def char_table(self) -> np.ndarray:
        """``char_table[g, a] = chi_a(g)`` as a complex (|G|, |G|) array."""
        c = self.coords
        phase = np.zeros((self.order, self.order))
        for j, d in enumerate(self.orders):
            phase += np.outer(c[:, j], c[:, j]) / d
        table = np.exp(2j * np.pi * phase)
        # snap the rational roots of unity that are exactly real or imaginary
        table.real[np.abs(table.real) < 1e-15] = 0.0
        table.imag[np.abs(table.imag) < 1e-15] = 0.0
        return table

    def to_json(self) -> dict:
        return {"orders": list(self.orders)}

    def __str__(self):
        return " x ".join(f"Z{d}" for d in self.orders)


def make_group(orders, max_order_override: int | None = None) -> GroupSpec:
    orders = tuple(int(d) for d in orders)
    if any(d < 1 for d in orders):
        raise ValueError(f"cyclic orders must be >= 1, got {orders}")
    cap = max_order() if max_order_override is None else max_order_override
    G = GroupSpec(orders)
    if G.order > cap:
        raise ValueError(f"|G| = {G.order} exceeds the configured maximum {cap}")
    return G


def add(G: GroupSpec, a, b) -> Element:
    a, b = G.reduce(a), G.reduce(b)
    return tuple((x + y) % d for x, y, d in zip(a, b, G.orders))


def neg(G: GroupSpec, a) -> Element:
    return tuple((-x) % d for x, d in zip(G.reduce(a), G.orders))


def char_eval(G: GroupSpec, chi, g) -> complex:
    chi, g = G.reduce(chi), G.reduce(g)
    return complex(G.char_table[G.index(g), G.index(chi)])


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted element indices."""

    parent: GroupSpec
    indices: tuple[int, ...]
    generators: tuple[Element, ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return len(self.indices)

    @property
    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    @property
    def elements(self) -> list[Element]:
        return [self.parent.elements[i] for i in self.indices]

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.indices)] = True
        return m

    def __contains__(self, g) -> bool:
        return bool(self.mask[self.parent.index(g)])

    def __le__(self, other: Subgroup) -> bool:
        return set(self.indices) <= set(other.indices)

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators]}

    def __repr__(self):
        return f"Subgroup({self.parent}, elements={self.elements})"


def closure(G: GroupSpec, generators) -> Subgroup:
    """Subgroup generated by ``generators``."""
    gens = [G.reduce(g) for g in generators]
    members = {0}
    frontier = [0]
    gen_idx = [G.index(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gen_idx:
                y = int(G.add_table[x, s])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(members)), tuple(gens))


def _sort_key(H: Subgroup):
    return (H.order, H.indices)


def all_subgroups(G: GroupSpec) -> list[Subgroup]:
    """Every subgroup of G, sorted by (order, element list).

    Breadth-first: each known subgroup is extended by one element outside it
    and closed; new subgroups are deduplicated on their element sets.
    """
    if G.order > max_order():
        raise ValueError(f"|G| = {G.order} exceeds the configured maximum {max_order()}")
    trivial = Subgroup(G, (0,), ())
    found = {trivial.indices: trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            inside = set(H.indices)
            for x in range(G.order):
                if x in inside:
                    continue
                # <H, x> = union of cosets H + k*x
                members = set(inside)
                step = x
                while step not in inside:
                    members.update(int(G.add_table[h, step]) for h in inside)
                    step = int(G.add_table[step, x])
                key = tuple(sorted(members))
                if key not in found:
                    K = Subgroup(G, key, H.generators + (G.elements[x],))
                    found[key] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(found.values(), key=_sort_key)


def annihilator(G: GroupSpec, H: Subgroup) -> Subgroup:
    """Characters (as dual elements) that equal 1 on every element of H."""
    vals = G.char_table[list(H.indices), :]
    members = np.flatnonzero(np.all(np.abs(vals - 1.0) < 1e-9, axis=0))
    perp = tuple(int(i) for i in members)
    if len(perp) * H.order != G.order:
        raise ArithmeticError(f"|H| * |H^perp| = {H.order} * {len(perp)} != {G.order}")
    return Subgroup(G, perp, _generating_set(G, perp))


def _generating_set(G: GroupSpec, indices) -> tuple[Element, ...]:
    """A small generating set for the subgroup with these element indices, greedily chosen."""
    target = set(indices)
    gens: list[Element] = []
    current = {0}
    for i in sorted(target):
        if i not in current:
            gens.append(G.elements[i])
            current = set(closure(G, gens).indices)
        if current == target:
            break
    return tuple(gens)


def subgroup_from_generators(G: GroupSpec, generators) -> Subgroup:
    return closure(G, generators)


def coset_representatives(G: GroupSpec, H: Subgroup) -> list[Element]:
    """Lexicographically smallest element of each coset of H, in canonical order."""
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    hidx = list(H.indices)
    for x in range(G.order):
        if seen[x]:
            continue
        reps.append(G.elements[x])
        seen[G.add_table[x, hidx]] = True
    return reps


def is_chain(subgroups) -> bool:
    """True when the subgroups are totally ordered by inclusion."""
    subs = sorted(subgroups, key=_sort_key)
    return all(a <= b for a, b in zip(subs, subs[1:]))


def groups_up_to(n: int) -> list[GroupSpec]:
    """One representative per isomorphism class of abelian group of order <= n.

    Built from invariant-factor decompositions d1 | d2 | ... | dk.
    """
    out = []

    def factorizations(m, smallest):
        # chains d1 | d2 | ... with product m, each d >= 2 and d1 >= smallest
        if m == 1:
            yield ()
            return
        for d in range(smallest, m + 1):
            if m % d:
                continue
            for rest in factorizations(m // d, d):
                if all(r % d == 0 for r in rest):
                    yield (d,) + rest

    for m in range(1, n + 1):
        if m == 1:
            out.append(GroupSpec((1,)))
            continue
        for fac in factorizations(m, 2):
            out.append(GroupSpec(fac))
    return out
