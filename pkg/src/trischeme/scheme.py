"""Association schemes on triples from two-transitive groups.

Nontrivial relations are the orbits of the two-point stabilizer of the base
pair ``(a, b) = (0, 1)`` on the remaining points.  A triple ``(x, y, z)`` of
distinct points is classified by moving ``x`` to ``a`` and then ``y`` to
``b`` with transporter elements, and reading the orbit label of the image of
``z``.

Relation labels 0..3 are the trivial relations, in this fixed order::

    0: (x, x, x)    1: (x, y, y)    2: (y, x, y)    3: (y, y, x)

Labels 4.. are assigned to stabilizer orbits in discovery order from the
smallest unvisited point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .actions import StabilizerMapSet
from .permgrp import (
    PermGroup,
    is_two_transitive,
    orbit_with_tree,
    orbits,
    stabilizer,
    transporter_table,
    two_point_stabilizer,
)

TRIVIAL = 4
S3 = tuple(itertools.permutations(range(3)))
# sigma taking coordinate 3 to the front, and swapping the last two
TO_FIRST = (1, 2, 0)
TO_SECOND = (0, 2, 1)


class CapExceeded(ValueError):
    """A brute-force path was requested above its configured size cap."""


class NotTwoTransitive(ValueError):
    pass


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceeded(f"{what}: {n} points exceeds cap {cap}")


@dataclass(frozen=True, eq=False)
class TripleScheme:
    """An AST with its triple classifier.

    ``to_a[x]`` is an image array of a group element sending ``x`` to ``a``;
    ``to_b[y]`` is an image array of an element fixing ``a`` and sending ``y``
    to ``b``.  Both are ``None`` on the stabilizer route, where only triples
    starting with ``(a, b)`` can be classified.
    """

    degree: int
    max_label: int
    base: tuple[int, int]
    orbit_label: np.ndarray
    representatives: tuple[tuple[int, int, int], ...]
    third_valency: tuple[int, ...]
    to_a: np.ndarray | None = field(default=None, repr=False)
    to_b: np.ndarray | None = field(default=None, repr=False)
    group: PermGroup | None = field(default=None, repr=False)
    s3_table: np.ndarray | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.max_label + 1

    @property
    def labels(self) -> range:
        return range(self.size)

    @property
    def nontrivial(self) -> range:
        return range(TRIVIAL, self.size)

    @property
    def full(self) -> bool:
        return self.to_a is not None

    def orbit(self, label: int) -> list[int]:
        return np.flatnonzero(self.orbit_label == label).tolist()


def _trivial_representatives(a: int, b: int) -> list[tuple[int, int, int]]:
    return [(a, a, a), (a, b, b), (b, a, b), (a, a, b)]


def _label_points(degree: int, base: tuple[int, int], orbs: list[list[int]]):
    orbit_label = np.full(degree, -1, dtype=np.int64)
    for i, orb in enumerate(orbs):
        orbit_label[orb] = TRIVIAL + i
    a, b = base
    reps = _trivial_representatives(a, b) + [(a, b, orb[0]) for orb in orbs]
    third = (0, 1, 1, 0) + tuple(len(orb) for orb in orbs)
    return orbit_label, tuple(reps), third


def build_scheme(g: PermGroup) -> TripleScheme:
    if not is_two_transitive(g):
        raise NotTwoTransitive("the group is not two-transitive")
    n = g.degree
    a, b = 0, 1
    h = two_point_stabilizer(g, a, b)
    orbs = orbits(h, [x for x in range(n) if x not in (a, b)])
    orbit_label, reps, third = _label_points(n, (a, b), orbs)

    back_a = transporter_table(orbit_with_tree(g, a))
    to_a = np.stack([back_a[x] for x in range(n)]).astype(np.int64)
    ga = stabilizer(g, a)
    back_b = transporter_table(orbit_with_tree(ga, b))
    ident = np.arange(n, dtype=np.int64)
    to_b = np.stack([back_b[y] if y != a else ident for y in range(n)]).astype(np.int64)

    s = TripleScheme(n, len(orbs) + TRIVIAL - 1, (a, b), orbit_label, reps, third, to_a, to_b, g)
    table = np.array([[_classify_permuted(s, i, sig) for sig in S3] for i in s.labels], dtype=np.int64)
    return replace(s, s3_table=table)


def build_scheme_from_stabilizer(st: StabilizerMapSet) -> TripleScheme:
    """Relation count and third valencies from an explicit two-point stabilizer."""
    if not st.is_closed():
        raise ValueError("stabilizer map set is not closed under composition")
    n = len(st.domain)
    a, b = st.base
    orbs = orbits(st.as_group(), [x for x in range(n) if x not in (a, b)])
    orbit_label, reps, third = _label_points(n, (a, b), orbs)
    return TripleScheme(n, len(orbs) + TRIVIAL - 1, (a, b), orbit_label, reps, third)


def classify_many(s: TripleScheme, x, y, z) -> np.ndarray:
    """Vectorised :func:`classify_triple` over broadcastable index arrays."""
    x, y, z = np.broadcast_arrays(np.asarray(x), np.asarray(y), np.asarray(z))
    xy, yz, xz = x == y, y == z, x == z
    distinct = ~(xy | yz | xz)
    out = np.empty(x.shape, dtype=np.int64)
    if s.full:
        y1 = s.to_a[x, y]
        z1 = s.to_a[x, z]
        out[...] = s.orbit_label[s.to_b[y1, z1]]
    else:
        a, b = s.base
        if np.any(distinct & ~((x == a) & (y == b))):
            raise ValueError("stabilizer-route schemes classify only triples (a, b, z)")
        out[...] = s.orbit_label[z]
    out[xy & yz] = 0
    out[~xy & yz] = 1
    out[~xy & xz] = 2
    out[xy & ~yz] = 3
    return out


def classify_triple(s: TripleScheme, x: int, y: int, z: int) -> int:
    for t in (x, y, z):
        if not 0 <= t < s.degree:
            raise ValueError(f"point {t} out of range")
    return int(classify_many(s, x, y, z))


def _classify_permuted(s: TripleScheme, i: int, sigma: Sequence[int]) -> int:
    t = s.representatives[i]
    return classify_triple(s, t[sigma[0]], t[sigma[1]], t[sigma[2]])


def s3_image(s: TripleScheme, i: int, sigma: Sequence[int]) -> int:
    """Label of ``(t[sigma[0]], t[sigma[1]], t[sigma[2]])`` for ``t`` in relation ``i``."""
    sigma = tuple(sigma)
    if sorted(sigma) != [0, 1, 2]:
        raise ValueError(f"{sigma} is not a permutation of (0, 1, 2)")
    if s.s3_table is None:
        raise ValueError("coordinate permutations need the full group")
    return int(s.s3_table[i, S3.index(sigma)])


def valencies(s: TripleScheme) -> list[tuple[int | None, int | None, int]]:
    """Per label ``(first, second, third)`` valency; the first two need the full group."""
    out = []
    for i in s.labels:
        if s.s3_table is None:
            out.append((None, None, s.third_valency[i]))
        else:
            out.append((
                s.third_valency[s3_image(s, i, TO_FIRST)],
                s.third_valency[s3_image(s, i, TO_SECOND)],
                s.third_valency[i],
            ))
    return out


def valency_multiset(s: TripleScheme) -> list[int]:
    return sorted(s.third_valency[i] for i in s.nontrivial)


# ---------------------------------------------------------------------------
# intersection numbers


@dataclass(frozen=True, eq=False)
class IntersectionTensor:
    """``values[i, j, k, l]`` is the intersection number p_ijk^l."""

    degree: int
    max_label: int
    values: np.ndarray

    def __getitem__(self, key) -> int:
        return int(self.values[key])

    def nonzero(self) -> list[tuple[tuple[int, int, int, int], int]]:
        idx = np.argwhere(self.values)
        return [(tuple(int(c) for c in t), int(self.values[tuple(t)])) for t in idx]


def _counts_at(s: TripleScheme, rep: tuple[int, int, int]) -> np.ndarray:
    x, y, z = rep
    w = np.arange(s.degree)
    i = classify_many(s, w, y, z)
    j = classify_many(s, x, w, z)
    k = classify_many(s, x, y, w)
    out = np.zeros((s.size,) * 3, dtype=np.int64)
    np.add.at(out, (i, j, k), 1)
    return out


def _require_full(s: TripleScheme, what: str) -> None:
    if not s.full:
        raise ValueError(f"{what} needs the full group (stabilizer route gives parameters only)")


def intersection_number(s: TripleScheme, i: int, j: int, k: int, l: int) -> int:
    _require_full(s, "intersection numbers")
    x, y, z = s.representatives[l]
    w = np.arange(s.degree)
    hit = (
        (classify_many(s, w, y, z) == i)
        & (classify_many(s, x, w, z) == j)
        & (classify_many(s, x, y, w) == k)
    )
    return int(hit.sum())


def intersection_tensor(s: TripleScheme, max_points: int = 300) -> IntersectionTensor:
    _require_full(s, "the intersection tensor")
    _check_cap(s.degree, max_points, "intersection tensor")
    vals = np.zeros((s.size,) * 4, dtype=np.int64)
    for l in s.labels:
        vals[..., l] = _counts_at(s, s.representatives[l])
    return IntersectionTensor(s.degree, s.max_label, vals)


def is_commutative(t: IntersectionTensor) -> bool:
    """p_ijk^l invariant under permuting (i, j, k), for nontrivial i, j, k."""
    sub = t.values[TRIVIAL:, TRIVIAL:, TRIVIAL:, :]
    return all(np.array_equal(sub, sub.transpose(*sig, 3)) for sig in S3)


# ---------------------------------------------------------------------------
# brute force


def label_cube(s: TripleScheme, cap: int = 64) -> np.ndarray:
    """``cube[x, y, z]`` = label of the triple, for every triple."""
    _require_full(s, "the label cube")
    _check_cap(s.degree, cap, "label cube")
    r = np.arange(s.degree)
    return classify_many(s, r[:, None, None], r[None, :, None], r[None, None, :])


def triple_orbit_oracle(g: PermGroup, cap: int = 30) -> np.ndarray:
    """Orbits of ``g`` on all ordered triples, by connected components.

    Returns component ids on the ``(n, n, n)`` grid, numbered in order of
    first appearance in lexicographic triple order.
    """
    n = g.degree
    _check_cap(n, cap, "triple orbit oracle")
    r = np.arange(n)
    x, y, z = (a.ravel() for a in np.meshgrid(r, r, r, indexing="ij"))
    src = x * n * n + y * n + z
    rows, cols = [], []
    for s in g.gen_arrays():
        rows.append(src)
        cols.append(s[x] * n * n + s[y] * n + s[z])
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    adj = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n**3, n**3))
    _, comp = connected_components(adj, directed=True, connection="weak")
    _, first = np.unique(comp, return_index=True)
    renumber = np.empty(len(first), dtype=np.int64)
    renumber[np.argsort(np.argsort(first))] = np.arange(len(first))
    return renumber[comp].reshape(n, n, n)


def same_partition(p: np.ndarray, q: np.ndarray) -> bool:
    """True iff two labelings of the same cells induce the same partition."""
    p, q = np.asarray(p).ravel(), np.asarray(q).ravel()
    pairs = np.unique(np.stack([p, q]), axis=1).shape[1]
    return pairs == len(np.unique(p)) == len(np.unique(q))


# ---------------------------------------------------------------------------
# axiom verification


@dataclass
class AxiomReport:
    exhaustive: bool
    seed: int | None
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = bool(ok)
        if detail:
            self.details[name] = detail


def _check_regularity(s, t, xs, ys, zs, cube) -> tuple[bool, str]:
    """Every sampled triple reproduces the tensor column of its relation."""
    for x, y, z in zip(xs, ys, zs):
        l = int(cube[x, y, z]) if cube is not None else classify_triple(s, x, y, z)
        got = _counts_at(s, (int(x), int(y), int(z)))
        if not np.array_equal(got, t.values[..., l]):
            bad = np.argwhere(got != t.values[..., l])[0]
            return False, f"triple {(int(x), int(y), int(z))} in R_{l}: index {tuple(int(c) for c in bad)}"
    return True, ""


def _check_regularity_exhaustive(s, t, cube) -> tuple[bool, str]:
    n, size = s.degree, s.size
    # arrays below are indexed [y, z, w] for a fixed x
    first = cube.transpose(1, 2, 0)
    pair_key = np.arange(n * n).reshape(n, n, 1) * size**3
    for x in range(n):
        second = cube[x].T[None, :, :]
        third = cube[x][:, None, :]
        key = pair_key + (first * size + second) * size + third
        uniq, counts = np.unique(key.ravel(), return_counts=True)
        yz, c = np.divmod(uniq, size**3)
        ls = cube[x].ravel()[yz]
        expect = t.values.reshape(size**3, size)[c, ls]
        bad = np.flatnonzero(expect != counts)
        if bad.size:
            y, z = divmod(int(yz[bad[0]]), n)
            return False, f"triple {(x, y, z)} in R_{int(ls[bad[0]])} disagrees with the tensor"
    return True, ""


def verify_axioms(
    s: TripleScheme,
    g: PermGroup | None = None,
    exhaustive: bool = True,
    cap: int = 40,
    samples: int = 200,
    seed: int = 0,
) -> AxiomReport:
    """Check the four AST conditions (plus group invariance when ``g`` is given)."""
    _require_full(s, "axiom verification")
    n = s.degree
    if exhaustive:
        _check_cap(n, cap, "exhaustive axiom check")
    rep = AxiomReport(exhaustive, None if exhaustive else seed)
    t = intersection_tensor(s, max_points=max(n, 1))
    rng = np.random.default_rng(seed)

    if exhaustive:
        cube = label_cube(s, cap=n)
        r = np.arange(n)
        xs, ys, zs = (a.ravel() for a in np.meshgrid(r, r, r, indexing="ij"))
        pair_x, pair_y = np.nonzero(~np.eye(n, dtype=bool))
    else:
        cube = None
        xs, ys, zs = rng.integers(0, n, size=(3, samples))
        pair_x = rng.integers(0, n, size=samples)
        pair_y = (pair_x + rng.integers(1, n, size=samples)) % n

    # condition 4: trivial relations have the fixed patterns and only they
    labs = cube.ravel() if cube is not None else classify_many(s, xs, ys, zs)
    expected = np.full(labs.shape, -1)
    xy, yz, xz = xs == ys, ys == zs, xs == zs
    expected[xy & yz] = 0
    expected[~xy & yz] = 1
    expected[~xy & xz] = 2
    expected[xy & ~yz] = 3
    triv_ok = np.array_equal(np.where(expected >= 0, labs, -1), expected)
    nontriv_ok = bool((labs[expected < 0] >= TRIVIAL).all())
    rep.record("condition4_trivial", triv_ok and nontriv_ok)

    # condition 1: third valencies constant over ordered pairs
    ok1, detail1 = True, ""
    z = np.arange(n)
    for x, y in zip(pair_x, pair_y):
        hist = np.bincount(classify_many(s, x, y, z), minlength=s.size)
        if not np.array_equal(hist, s.third_valency):
            ok1, detail1 = False, f"pair {(int(x), int(y))}: {hist.tolist()}"
            break
    rep.record("condition1_valency", ok1, detail1)

    # condition 2: principal regularity over all (or sampled) representatives
    if exhaustive:
        ok2, detail2 = _check_regularity_exhaustive(s, t, cube)
    else:
        ok2, detail2 = _check_regularity(s, t, xs, ys, zs, None)
    rep.record("condition2_regularity", ok2, detail2)

    # condition 3: coordinate permutations map relations onto relations
    ok3, detail3 = True, ""
    for sig in S3:
        if exhaustive:
            perm_labs = _permuted_cube(cube, sig).ravel()
        else:
            trip = np.stack([xs, ys, zs])
            perm_labs = classify_many(s, trip[sig[0]], trip[sig[1]], trip[sig[2]])
        pairs = np.unique(np.stack([labs, perm_labs]), axis=1)
        if len(np.unique(pairs[0])) != pairs.shape[1]:
            ok3, detail3 = False, f"permutation {sig} splits a relation"
            break
        if s.s3_table is not None:
            idx = S3.index(sig)
            if not np.array_equal(s.s3_table[pairs[0], idx], pairs[1]):
                ok3, detail3 = False, f"s3 table disagrees for permutation {sig}"
                break
    rep.record("condition3_s3", ok3, detail3)

    if g is not None:
        ok = True
        for gen in g.gen_arrays():
            moved = classify_many(s, gen[xs], gen[ys], gen[zs])
            if not np.array_equal(moved, labs):
                ok = False
                break
        rep.record("group_invariance", ok)
    return rep


def _permuted_cube(cube: np.ndarray, sig: Sequence[int]) -> np.ndarray:
    """``out[x0, x1, x2]`` = label of ``(x_sig0, x_sig1, x_sig2)``."""
    n = cube.shape[0]
    r = np.arange(n)
    grid = np.meshgrid(r, r, r, indexing="ij")
    return cube[grid[sig[0]], grid[sig[1]], grid[sig[2]]]


# ---------------------------------------------------------------------------
# serialization


def scheme_to_dict(s: TripleScheme) -> dict:
    vals = valencies(s)
    return {
        "points": s.degree,
        "max_label": s.max_label,
        "size": s.size,
        "base": list(s.base),
        "relations": [
            {
                "label": i,
                "representative": list(s.representatives[i]),
                "valencies": list(vals[i]),
            }
            for i in s.labels
        ],
    }


def tensor_to_nested(t: IntersectionTensor) -> list:
    return t.values.tolist()
