"""Permutations and finitely generated permutation groups.

Points are the integers ``0..degree-1``.  A permutation is stored as its
image array.  Composition applies the *left* argument first::

    compose(p, q)(x) == q(p(x))

Orbits are computed breadth-first from the root, so orbit order (and
everything labelled from it) is reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

_DTYPE = np.int32


class Perm:
    """A bijection on ``{0, ..., degree-1}`` given by its image array."""

    __slots__ = ("_images", "_key")

    def __init__(self, images: Iterable[int] | np.ndarray, *, check: bool = True):
        arr = np.array(images, dtype=_DTYPE)
        if arr.ndim != 1:
            raise ValueError("permutation images must be one-dimensional")
        if check:
            n = arr.shape[0]
            seen = np.zeros(n, dtype=bool)
            if n and (arr.min() < 0 or arr.max() >= n):
                raise ValueError("image out of range")
            seen[arr] = True
            if not seen.all():
                raise ValueError("images do not form a bijection")
        arr.setflags(write=False)
        self._images = arr
        self._key = None

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(np.arange(degree, dtype=_DTYPE), check=False)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Perm":
        """Build a permutation from disjoint cycles, e.g. ``from_cycles(3, (0, 1, 2))``."""
        arr = np.arange(degree, dtype=_DTYPE)
        for cyc in cycles:
            for i, x in enumerate(cyc):
                arr[x] = cyc[(i + 1) % len(cyc)]
        return cls(arr)

    @property
    def images(self) -> np.ndarray:
        return self._images

    @property
    def degree(self) -> int:
        return int(self._images.shape[0])

    def __call__(self, x: int) -> int:
        return int(self._images[x])

    def is_identity(self) -> bool:
        return bool((self._images == np.arange(self.degree)).all())

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        o = 1
        for cyc in self.cycles():
            o = o * len(cyc) // np.gcd(o, len(cyc))
        return int(o)

    def _hash_key(self) -> bytes:
        if self._key is None:
            self._key = self._images.tobytes()
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self.degree == other.degree and self._hash_key() == other._hash_key()

    def __hash__(self) -> int:
        return hash(self._hash_key())

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Perm<{self.degree}>{cyc or '()'}"


def compose(p: Perm, q: Perm) -> Perm:
    """Return the permutation ``x -> q(p(x))`` (apply ``p`` first)."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Perm(q.images[p.images], check=False)


def inverse(p: Perm) -> Perm:
    inv = np.empty_like(p.images)
    inv[p.images] = np.arange(p.degree, dtype=_DTYPE)
    return Perm(inv, check=False)


def _inv_array(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.shape[0], dtype=a.dtype)
    return inv


@dataclass(frozen=True, eq=False)
class PermGroup:
    """A permutation group given by generators."""

    degree: int
    generators: tuple[Perm, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("generator list must be nonempty (use the identity)")
        for g in gens:
            if g.degree != self.degree:
                raise ValueError(f"generator of degree {g.degree} in group of degree {self.degree}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_images(cls, degree: int, images: Iterable[Sequence[int]]) -> "PermGroup":
        gens = [Perm(im) for im in images]
        return cls(degree, tuple(gens) or (Perm.identity(degree),))

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, (Perm.identity(degree),))

    def gen_arrays(self) -> list[np.ndarray]:
        return [g.images for g in self.generators]

    def chain(self, base_prefix: Sequence[int] = ()) -> "StabilizerChain":
        key = ("chain", tuple(base_prefix))
        if key not in self._cache:
            self._cache[key] = StabilizerChain(self.degree, self.gen_arrays(), base_prefix)
        return self._cache[key]

    def order(self) -> int:
        return group_order(self)

    def contains(self, p: Perm) -> bool:
        return self.chain().contains(p.images)

    def orbits(self, points: Iterable[int] | None = None) -> list[list[int]]:
        return orbits(self, points)


@dataclass(frozen=True, eq=False)
class SchreierTree:
    """Breadth-first orbit of ``root`` with a parent edge for every orbit point.

    ``parent[y] = (x, i)`` means ``generators[i]`` maps ``x`` to ``y``.
    """

    root: int
    orbit: tuple[int, ...]
    parent: dict[int, tuple[int, int]]
    generators: tuple[Perm, ...]

    def __contains__(self, y: int) -> bool:
        return y in self.parent or y == self.root

    def path(self, y: int) -> list[int]:
        """Generator indices along the tree path from the root to ``y``."""
        if y not in self:
            raise ValueError(f"point {y} is not in the orbit of {self.root}")
        word = []
        while y != self.root:
            x, i = self.parent[y]
            word.append(i)
            y = x
        word.reverse()
        return word


def orbit_with_tree(g: PermGroup, x: int) -> SchreierTree:
    if not 0 <= x < g.degree:
        raise ValueError(f"point {x} out of range for degree {g.degree}")
    gens = g.gen_arrays()
    parent: dict[int, tuple[int, int]] = {}
    seen = {x}
    order = [x]
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for i, s in enumerate(gens):
            z = int(s[y])
            if z not in seen:
                seen.add(z)
                parent[z] = (y, i)
                order.append(z)
                queue.append(z)
    return SchreierTree(x, tuple(order), parent, g.generators)


def transporter(tree: SchreierTree, y: int) -> Perm:
    """A product of generators mapping ``tree.root`` to ``y``."""
    word = tree.path(y)
    n = tree.generators[0].degree
    arr = np.arange(n, dtype=_DTYPE)
    for i in word:
        arr = tree.generators[i].images[arr]
    return Perm(arr, check=False)


def transporter_table(tree: SchreierTree) -> dict[int, np.ndarray]:
    """For every orbit point ``y``, an image array mapping ``y`` back to the root.

    Built along the tree, one array gather per orbit point.
    """
    n = tree.generators[0].degree
    invs = [_inv_array(s.images) for s in tree.generators]
    table = {tree.root: np.arange(n, dtype=_DTYPE)}
    for y in tree.orbit[1:]:
        x, i = tree.parent[y]
        # back(y) = back(x) after s_i^{-1}
        table[y] = table[x][invs[i]]
    return table


def orbits(g: PermGroup, points: Iterable[int] | None = None) -> list[list[int]]:
    """Orbits on ``points`` (default: all), discovered from the smallest unvisited point."""
    pts = range(g.degree) if points is None else sorted(points)
    gens = g.gen_arrays()
    seen: set[int] = set()
    out = []
    for start in pts:
        if start in seen:
            continue
        seen.add(start)
        orb = [start]
        queue = deque([start])
        while queue:
            y = queue.popleft()
            for s in gens:
                z = int(s[y])
                if z not in seen:
                    seen.add(z)
                    orb.append(z)
                    queue.append(z)
        out.append(orb)
    return out


def schreier_generators(g: PermGroup, x: int) -> list[Perm]:
    """All Schreier generators of the stabilizer of ``x``, deduplicated, identity removed."""
    tree = orbit_with_tree(g, x)
    back = transporter_table(tree)
    fwd = {y: _inv_array(b) for y, b in back.items()}
    ident = np.arange(g.degree, dtype=_DTYPE)
    seen: set[bytes] = set()
    out = []
    for y in tree.orbit:
        for s in g.gen_arrays():
            # u_y, then s, then u_{s(y)}^{-1}
            h = back[int(s[y])][s[fwd[y]]]
            if np.array_equal(h, ident):
                continue
            key = h.tobytes()
            if key not in seen:
                seen.add(key)
                out.append(Perm(h, check=False))
    return out


class StabilizerChain:
    """Deterministic Schreier-Sims stabilizer chain.

    ``base`` starts with the requested prefix.  ``level_gens[i]`` are strong
    generators fixing ``base[:i]``; ``trans[i]`` maps each point of the
    ``i``-th basic orbit to a pair (forward, backward) of image arrays.
    """

    def __init__(self, degree: int, gens: Sequence[np.ndarray], base_prefix: Sequence[int] = ()):
        self.degree = degree
        self._ident = np.arange(degree, dtype=_DTYPE)
        gens = [np.asarray(s, dtype=_DTYPE) for s in gens if not np.array_equal(s, self._ident)]
        self.base: list[int] = []
        self.level_gens: list[list[np.ndarray]] = []
        self.orbit: list[list[int]] = []
        self.trans: list[dict[int, tuple[np.ndarray, np.ndarray]]] = []
        self._checked: list[set[tuple[int, int]]] = []
        for b in base_prefix:
            self._add_level(int(b))
        for s in gens:
            if all(s[b] == b for b in self.base):
                self._add_level(self._moved_point(s))
        for s in gens:
            self._add_gen(s, upto=self._fixed_depth(s))
        self._build()

    # structure helpers
    def _moved_point(self, s: np.ndarray) -> int:
        return int(np.flatnonzero(s != self._ident)[0])

    def _fixed_depth(self, s: np.ndarray) -> int:
        d = 0
        while d < len(self.base) and s[self.base[d]] == self.base[d]:
            d += 1
        return d

    def _add_level(self, b: int) -> None:
        self.base.append(b)
        self.level_gens.append([])
        self.orbit.append([b])
        self.trans.append({b: (self._ident, self._ident)})
        self._checked.append(set())

    def _add_gen(self, s: np.ndarray, upto: int) -> None:
        for lvl in range(0, min(upto, len(self.base) - 1) + 1):
            self.level_gens[lvl].append(s)
            self._extend_orbit(lvl)

    def _extend_orbit(self, lvl: int) -> None:
        orb = self.orbit[lvl]
        tr = self.trans[lvl]
        gens = self.level_gens[lvl]
        i = 0
        while i < len(orb):
            y = orb[i]
            fy, _ = tr[y]
            for s in gens:
                z = int(s[y])
                if z not in tr:
                    f = s[fy]
                    tr[z] = (f, _inv_array(f))
                    orb.append(z)
            i += 1

    def strip(self, h: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for lvl in range(start, len(self.base)):
            beta = int(h[self.base[lvl]])
            if beta not in self.trans[lvl]:
                return h, lvl
            h = self.trans[lvl][beta][1][h]
        return h, len(self.base)

    def _build(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            found = self._scan_level(i)
            if found is None:
                i -= 1
                continue
            residue, j = found
            if j == len(self.base):
                self._add_level(self._moved_point(residue))
            for lvl in range(i + 1, j + 1):
                self.level_gens[lvl].append(residue)
                self._extend_orbit(lvl)
            i = j

    def _scan_level(self, i: int):
        tr = self.trans[i]
        checked = self._checked[i]
        gens = self.level_gens[i]
        for beta in list(self.orbit[i]):
            fwd = tr[beta][0]
            for gi, s in enumerate(gens):
                if (beta, gi) in checked:
                    continue
                checked.add((beta, gi))
                h = tr[int(s[beta])][1][s[fwd]]
                residue, j = self.strip(h, i + 1)
                if not np.array_equal(residue, self._ident):
                    return residue, j
        return None

    def order(self) -> int:
        out = 1
        for orb in self.orbit:
            out *= len(orb)
        return out

    def contains(self, h: np.ndarray) -> bool:
        residue, lvl = self.strip(np.asarray(h, dtype=_DTYPE))
        return lvl == len(self.base) and np.array_equal(residue, self._ident)

    def stabilizer_gens(self, depth: int) -> list[np.ndarray]:
        """Strong generators fixing ``base[:depth]`` pointwise."""
        if depth >= len(self.base):
            return []
        seen: set[bytes] = set()
        out = []
        for s in self.level_gens[depth]:
            key = s.tobytes()
            if key not in seen:
                seen.add(key)
                out.append(s)
        return out


def _group_from_arrays(degree: int, arrays: Sequence[np.ndarray]) -> PermGroup:
    gens = tuple(Perm(a, check=False) for a in arrays)
    return PermGroup(degree, gens or (Perm.identity(degree),))


def stabilizer(g: PermGroup, x: int) -> PermGroup:
    """Point stabilizer ``G_x``.

    Schreier generators are sifted through a stabilizer chain with base
    starting at ``x``; the surviving residues are kept, deduplicated.
    """
    if not 0 <= x < g.degree:
        raise ValueError(f"point {x} out of range for degree {g.degree}")
    return _group_from_arrays(g.degree, g.chain((x,)).stabilizer_gens(1))


def two_point_stabilizer(g: PermGroup, a: int, b: int) -> PermGroup:
    if a == b:
        raise ValueError("two_point_stabilizer needs distinct points")
    return _group_from_arrays(g.degree, g.chain((a, b)).stabilizer_gens(2))


def group_order(g: PermGroup) -> int:
    return g.chain().order()


def is_transitive(g: PermGroup) -> bool:
    return len(orbit_with_tree(g, 0).orbit) == g.degree


def is_two_transitive(g: PermGroup) -> bool:
    if g.degree < 3:
        raise ValueError("two-transitivity is only tested for degree >= 3")
    if not is_transitive(g):
        return False
    ch = g.chain((0,))
    g0 = _group_from_arrays(g.degree, ch.stabilizer_gens(1))
    return len(orbit_with_tree(g0, 1).orbit) == g.degree - 1


def random_element(g: PermGroup, rng: np.random.Generator, length: int = 30) -> Perm:
    """A random word in the generators (not uniform; fine for property tests)."""
    arr = np.arange(g.degree, dtype=_DTYPE)
    gens = g.gen_arrays()
    for i in rng.integers(0, len(gens), size=length):
        arr = gens[i][arr]
    return Perm(arr, check=False)


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    cyc = Perm(list(range(1, n)) + [0])
    if n == 2:
        return PermGroup(2, (cyc,))
    return PermGroup(n, (Perm.from_cycles(n, (0, 1)), cyc))


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup.trivial(n)
    return PermGroup(n, tuple(Perm.from_cycles(n, (0, 1, i)) for i in range(2, n)))
