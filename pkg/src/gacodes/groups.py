"""Cyclic, dihedral and generalised quaternion groups and their direct products.

Elements are exponent tuples in canonical form:

* ``Cyclic(n)``: ``(i,)`` for ``z^i``;
* ``Dihedral(n)`` (order ``2n``): ``(i, j)`` for ``x^i y^j`` with ``x^n = y^2 = 1``,
  ``y^-1 x y = x^-1``;
* ``Quaternion(n)`` (order ``4n``): ``(i, j)`` for ``x^i y^j`` with ``x^2n = 1``,
  ``y^2 = x^n``, ``y^-1 x y = x^-1``;
* ``Product``: a tuple holding one such tuple per factor.

The canonical element order is lexicographic on these tuples.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GroupSpec",
    "Cyclic",
    "Dihedral",
    "Quaternion",
    "Product",
    "GroupElement",
    "GroupTable",
    "group_table",
    "group_mul",
]


class GroupSpec:
    """Base class of the supported group descriptions."""

    @property
    def order(self) -> int:
        raise NotImplementedError

    def elements(self) -> list[tuple]:
        raise NotImplementedError

    def mul(self, a: tuple, b: tuple) -> tuple:
        raise NotImplementedError

    @property
    def identity(self) -> tuple:
        raise NotImplementedError

    def factors(self) -> tuple["GroupSpec", ...]:
        return (self,)

    def __mul__(self, other: "GroupSpec") -> "Product":
        return Product((*self.factors(), *other.factors()))

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, self.normalize(coords))

    def normalize(self, coords) -> tuple:
        return tuple(coords)

    def generators(self) -> dict[str, tuple]:
        raise NotImplementedError

    def power(self, a: tuple, e: int) -> tuple:
        out = self.identity
        if e < 0:
            a = self.inverse(a)
            e = -e
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def inverse(self, a: tuple) -> tuple:
        t = group_table(self)
        return t.elements[t.inv[t.index[a]]]


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cyclic order must be positive")

    @property
    def order(self):
        return self.n

    @property
    def identity(self):
        return (0,)

    def elements(self):
        return [(i,) for i in range(self.n)]

    def mul(self, a, b):
        return ((a[0] + b[0]) % self.n,)

    def normalize(self, coords):
        return (int(coords[0]) % self.n,)

    def generators(self):
        return {"z": (1 % self.n,)}

    def __str__(self):
        return f"C{self.n}"


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dihedral parameter must be positive")

    @property
    def order(self):
        return 2 * self.n

    @property
    def identity(self):
        return (0, 0)

    def elements(self):
        return [(i, j) for i in range(self.n) for j in range(2)]

    def mul(self, a, b):
        i, j = a
        k, l = b
        return ((i + (-k if j else k)) % self.n, (j + l) % 2)

    def normalize(self, coords):
        return (int(coords[0]) % self.n, int(coords[1]) % 2)

    def generators(self):
        return {"x": (1 % self.n, 0), "y": (0, 1)}

    def __str__(self):
        return f"D{self.n}"


@dataclass(frozen=True)
class Quaternion(GroupSpec):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("quaternion parameter must be positive")

    @property
    def order(self):
        return 4 * self.n

    @property
    def identity(self):
        return (0, 0)

    def elements(self):
        return [(i, j) for i in range(2 * self.n) for j in range(2)]

    def mul(self, a, b):
        i, j = a
        k, l = b
        e = i + (-k if j else k)
        if j and l:
            e += self.n
        return (e % (2 * self.n), (j + l) % 2)

    def normalize(self, coords):
        return (int(coords[0]) % (2 * self.n), int(coords[1]) % 2)

    def generators(self):
        return {"x": (1, 0), "y": (0, 1)}

    def __str__(self):
        return f"Q{self.n}"


@dataclass(frozen=True)
class Product(GroupSpec):
    parts: tuple

    def __post_init__(self):
        flat = []
        for f in self.parts:
            flat.extend(f.factors())
        if len(flat) < 2:
            raise ValueError("a product needs at least two factors")
        object.__setattr__(self, "parts", tuple(flat))

    def factors(self):
        return self.parts

    @property
    def order(self):
        out = 1
        for f in self.parts:
            out *= f.order
        return out

    @property
    def identity(self):
        return tuple(f.identity for f in self.parts)

    def elements(self):
        return [tuple(t) for t in itertools.product(*[f.elements() for f in self.parts])]

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.parts, a, b))

    def normalize(self, coords):
        return tuple(f.normalize(c) for f, c in zip(self.parts, coords))

    def generators(self):
        raise NotImplementedError("product generators are named by the parser")

    def __str__(self):
        return "x".join(str(f) for f in self.parts)


class GroupTable:
    """Element list, index map, multiplication table and inverses of a group."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.elements = spec.elements()
        self.index = {g: i for i, g in enumerate(self.elements)}
        N = len(self.elements)
        factors = spec.factors()
        if len(factors) == 1:
            mt = np.empty((N, N), dtype=np.int64)
            for a, g in enumerate(self.elements):
                mt[a] = [self.index[spec.mul(g, h)] for h in self.elements]
        else:
            # mixed-radix combination of the factor tables
            subs = [group_table(f) for f in factors]
            mt = subs[0].mul
            for t in subs[1:]:
                s = len(t.elements)
                mt = (mt[:, None, :, None] * s + t.mul[None, :, None, :]).reshape(mt.shape[0] * s, mt.shape[1] * s)
        self.mul = mt
        ident = self.index[spec.identity]
        self.inv = np.argmax(mt == ident, axis=1)
        self.identity = ident

    @functools.cached_property
    def ldiv(self) -> np.ndarray:
        """``ldiv[h, g]`` is the index of ``h^-1 g``."""
        return self.mul[self.inv]

    def __len__(self):
        return len(self.elements)


@functools.lru_cache(maxsize=256)
def group_table(spec: GroupSpec) -> GroupTable:
    return GroupTable(spec)


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    coords: tuple

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_mul(self, other)

    def __pow__(self, e: int) -> "GroupElement":
        return GroupElement(self.spec, self.spec.power(self.coords, e))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.spec, self.spec.inverse(self.coords))

    @property
    def index(self) -> int:
        return group_table(self.spec).index[self.coords]


def group_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.spec != b.spec:
        raise ValueError("elements of different groups")
    return GroupElement(a.spec, a.spec.mul(a.coords, b.coords))
