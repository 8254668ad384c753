#!/usr/bin/env python3
"""Regenerate the bundled sporadic generator files in src/trischeme/data/.

Every group is built from a combinatorial construction, reduced to two
generators by a seeded random search, and checked against its known order
and two-transitivity before it is written.  Needs ``pynauty`` (HS, Co3 only);
the package itself never imports it.

    python tools/make_sporadic_data.py [--out DIR]
"""

from __future__ import annotations

import argparse
import itertools
from pathlib import Path

import numpy as np

from trischeme.actions import write_group_file
from trischeme.permgrp import (
    Perm,
    PermGroup,
    group_order,
    is_transitive,
    is_two_transitive,
    stabilizer,
    two_point_stabilizer,
)

ORDERS = {
    "m11_11": 7920,
    "m11_12": 7920,
    "m12": 95040,
    "m22": 443520,
    "m23": 10200960,
    "m24": 244823040,
    "psl2_11_11": 660,
    "a7_15": 2520,
    "hs_176": 44352000,
    "co3_276": 495766656000,
}


class RandomElements:
    """Product-replacement random elements of a group."""

    def __init__(self, g: PermGroup, seed: int, slots: int = 10, warmup: int = 60):
        self.rng = np.random.default_rng(seed)
        gens = g.gen_arrays()
        self.state = [gens[i % len(gens)].copy() for i in range(max(slots, len(gens)))]
        self.acc = np.arange(g.degree, dtype=np.int32)
        for _ in range(warmup):
            self()

    def __call__(self) -> np.ndarray:
        i, j = self.rng.choice(len(self.state), size=2, replace=False)
        if self.rng.random() < 0.5:
            self.state[i] = self.state[j][self.state[i]]
        else:
            self.state[i] = self.state[i][self.state[j]]
        self.acc = self.state[i][self.acc]
        return self.acc.copy()


def two_generators(g: PermGroup, order: int, seed: int, check=None) -> PermGroup:
    rnd = RandomElements(g, seed)
    for _ in range(5000):
        h = PermGroup(g.degree, (Perm(rnd(), check=False), Perm(rnd(), check=False)))
        if group_order(h) == order and (check is None or check(h)):
            return h
    raise RuntimeError("no generating pair found")


def subgroup_search(g: PermGroup, order: int, seed: int, check) -> PermGroup:
    """Random pairs until one generates a subgroup of the given order."""
    rnd = RandomElements(g, seed)
    for _ in range(20000):
        h = PermGroup(g.degree, (Perm(rnd(), check=False), Perm(rnd(), check=False)))
        if group_order(h) == order and check(h):
            return h
    raise RuntimeError("subgroup not found")


def restrict(g: PermGroup, points: list[int]) -> PermGroup:
    """Restriction to an invariant point set, relabelled 0..len(points)-1."""
    index = {x: i for i, x in enumerate(points)}
    gens = []
    for s in g.generators:
        im = [index[s(x)] for x in points]
        p = Perm(im)
        if not p.is_identity():
            gens.append(p)
    return PermGroup(len(points), tuple(gens) or (Perm.identity(len(points)),))


def projective_line(p: int, extra) -> PermGroup:
    inf = p

    def mk(f):
        return Perm([f(t) for t in range(p + 1)])

    gens = [
        mk(lambda t: inf if t == inf else (t + 1) % p),
        mk(lambda t: 0 if t == inf else inf if t == 0 else (-pow(t, -1, p)) % p),
    ]
    gens += [mk(f) for f in extra]
    return PermGroup(p + 1, tuple(gens))


def mathieu_24() -> PermGroup:
    p = 23
    qr = {(x * x) % p for x in range(1, p)}

    def delta(t):
        if t in (p, 0):
            return t
        return (pow(t, 3, p) * pow(9, -1, p)) % p if t in qr else (9 * pow(t, 3, p)) % p

    return projective_line(p, [lambda t: p if t == p else (2 * t) % p, delta])


def mathieu_12() -> PermGroup:
    # M11 on 0..10 is <t -> t+1, (2 6 10 7)(3 9 4 5)>; adjoining t -> -1/t gives M12.
    d = Perm.from_cycles(12, (2, 6, 10, 7), (3, 9, 4, 5))
    return projective_line(11, [lambda t, d=d: d(t)])


def golay_octads() -> list[int]:
    p, inf = 23, 23
    qr = {(x * x) % p for x in range(1, p)}
    rows = []
    for s in range(p):
        v = 0
        for r in qr:
            v |= 1 << ((r + s) % p)
        if bin(v).count("1") % 2:
            v |= 1 << inf
        rows.append(v)
    rows.append((1 << 24) - 1)
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    assert len(basis) == 12
    words = {0}
    for b in basis:
        words |= {w ^ b for w in words}
    octads = sorted(w for w in words if bin(w).count("1") == 8)
    assert len(octads) == 759
    return octads


def higman_sims() -> PermGroup:
    import pynauty

    octads = golay_octads()
    a, b = 23, 0
    pts = [o for o in octads if o >> a & 1 and not o >> b & 1]
    blocks = [o for o in octads if o >> b & 1 and not o >> a & 1]
    # symmetric 2-(176,50,14) design: octads meeting in 0 or 4 points
    adj = {i: [176 + j for j, bl in enumerate(blocks) if bin(o & bl).count("1") in (0, 4)]
           for i, o in enumerate(pts)}
    graph = pynauty.Graph(352, adjacency_dict=adj,
                          vertex_coloring=[set(range(176)), set(range(176, 352))])
    gens = pynauty.autgrp(graph)[0]
    return PermGroup(176, tuple(Perm(gg[:176]) for gg in gens))


def conway_3() -> PermGroup:
    import pynauty

    octads = golay_octads()
    inf = 23
    hept = [o & ~(1 << inf) for o in octads if o >> inf & 1]
    n = 23 + len(hept)
    adjm = np.zeros((n, n), dtype=bool)
    for hi, h in enumerate(hept):
        for i in range(23):
            if not h >> i & 1:
                adjm[i, 23 + hi] = adjm[23 + hi, i] = True
    for (i, h), (j, k) in itertools.combinations(enumerate(hept), 2):
        if bin(h & k).count("1") == 1:
            adjm[23 + i, 23 + j] = adjm[23 + j, 23 + i] = True
    # double cover of the two-graph; fibres {2v, 2v+1} are antipodal
    adj = {}
    for u in range(n):
        for s in (0, 1):
            adj[2 * u + s] = [2 * v + (s if adjm[u, v] else 1 - s) for v in range(n) if v != u]
    gens = pynauty.autgrp(pynauty.Graph(2 * n, adjacency_dict=adj))[0]
    perms = [Perm([gg[2 * u] // 2 for u in range(n)]) for gg in gens]
    return PermGroup(n, tuple(p for p in perms if not p.is_identity()))


def projective_space_4_2() -> PermGroup:
    vecs = list(range(1, 16))

    def mat_action(cols):
        def apply(v):
            out = 0
            for i in range(4):
                if v >> i & 1:
                    out ^= cols[i]
            return out
        return Perm([vecs.index(apply(v)) for v in vecs])

    transvection = mat_action([1, 2 | 1, 4, 8])
    cycle = mat_action([2, 4, 8, 1])
    return PermGroup(15, (transvection, cycle))


def build_all() -> dict[str, PermGroup]:
    out: dict[str, PermGroup] = {}

    m24 = mathieu_24()
    out["m24"] = two_generators(m24, ORDERS["m24"], 1)
    m23 = restrict(stabilizer(m24, 23), list(range(23)))
    out["m23"] = two_generators(m23, ORDERS["m23"], 2)
    m22 = restrict(two_point_stabilizer(m24, 23, 0), list(range(1, 23)))
    out["m22"] = two_generators(m22, ORDERS["m22"], 3)

    m12 = mathieu_12()
    out["m12"] = two_generators(m12, ORDERS["m12"], 4)
    m11 = restrict(stabilizer(m12, 11), list(range(11)))
    out["m11_11"] = two_generators(m11, ORDERS["m11_11"], 5)

    l211 = subgroup_search(m11, 660, 6, is_two_transitive)
    out["psl2_11_11"] = l211
    l_in_m12 = PermGroup(12, tuple(Perm(list(s.images) + [11]) for s in l211.generators))
    rnd = RandomElements(m12, 7)
    while True:
        h = PermGroup(12, l_in_m12.generators + (Perm(rnd(), check=False),))
        if group_order(h) == 7920 and is_transitive(h):
            break
    out["m11_12"] = two_generators(h, 7920, 8)

    pg32 = projective_space_4_2()
    assert group_order(pg32) == 20160
    out["a7_15"] = subgroup_search(pg32, 2520, 9, is_two_transitive)
    out["hs_176"] = two_generators(higman_sims(), ORDERS["hs_176"], 10)
    out["co3_276"] = two_generators(conway_3(), ORDERS["co3_276"], 11)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parent.parent / "src" / "trischeme" / "data")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, g in build_all().items():
        assert group_order(g) == ORDERS[name], name
        assert is_two_transitive(g), name
        write_group_file(args.out / f"{name}.txt", g)
        print(f"{name}: degree {g.degree}, order {group_order(g)}")


if __name__ == "__main__":
    main()
