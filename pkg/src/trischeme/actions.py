"""Concrete two-transitive actions as permutation groups on indexed domains.

Each builder returns an :class:`Action`: a :class:`LabeledDomain` (the
points, in a deterministic order) together with either a full
:class:`~trischeme.permgrp.PermGroup` or, for the families only described
through a two-point stabilizer, a :class:`StabilizerMapSet`.

Domain order is the field element order extended lexicographically to
tuples; a point at infinity, when present, is always last.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Hashable

import numpy as np

from .galois import FieldSpec, is_prime, make_field, prime_power
from .permgrp import (
    Perm,
    PermGroup,
    alternating_group,
    group_order,
    is_two_transitive,
    symmetric_group,
)

INF = "inf"


class ConstraintError(ValueError):
    """Family parameters violate the family's constraints."""


class ValidationError(RuntimeError):
    """A constructed generator set failed its self-check."""


@dataclass(frozen=True, eq=False)
class LabeledDomain:
    """Ordered point set; ``index`` inverts ``elements``."""

    elements: tuple[Hashable, ...]
    describe_fn: Callable[[Hashable], str] | None = field(default=None, repr=False)
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        idx = {e: i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise ValueError("domain elements are not distinct")
        object.__setattr__(self, "index", idx)

    @classmethod
    def abstract(cls, n: int) -> "LabeledDomain":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> Hashable:
        return self.elements[i]

    def index_of(self, obj: Hashable) -> int:
        return self.index[obj]

    def describe(self, i: int) -> str:
        e = self.elements[i]
        return self.describe_fn(e) if self.describe_fn else str(e)


@dataclass(frozen=True, eq=False)
class StabilizerMapSet:
    """An explicitly given two-point stabilizer as image arrays on a domain."""

    domain: LabeledDomain
    base: tuple[int, int]
    maps: tuple[np.ndarray, ...]

    def __post_init__(self):
        n = len(self.domain)
        a, b = self.base
        for m in self.maps:
            if m.shape != (n,) or not np.array_equal(np.sort(m), np.arange(n)):
                raise ValidationError("stabilizer map is not a bijection of the domain")
            if m[a] != a or m[b] != b:
                raise ValidationError("stabilizer map moves a base point")

    def is_closed(self) -> bool:
        """Exhaustive check that the maps form a group (closure suffices for a finite set)."""
        keys = {m.tobytes() for m in self.maps}
        ident = np.arange(len(self.domain), dtype=self.maps[0].dtype)
        if ident.tobytes() not in keys:
            return False
        for s in self.maps:
            for t in self.maps:
                if t[s].tobytes() not in keys:
                    return False
        return True

    def as_group(self) -> PermGroup:
        n = len(self.domain)
        return PermGroup(n, tuple(Perm(m, check=False) for m in self.maps) or (Perm.identity(n),))


@dataclass(frozen=True, eq=False)
class Action:
    """A built family member."""

    name: str
    domain: LabeledDomain
    group: PermGroup | None = None
    stabilizer: StabilizerMapSet | None = None
    # named points used to anchor semantic relation labels
    points: dict[str, int] = field(default_factory=dict)
    field: FieldSpec | None = None

    @property
    def degree(self) -> int:
        return len(self.domain)


# ---------------------------------------------------------------------------
# vector helpers over a field, vectorised with the field's lookup tables


class _VectorSpace:
    """Vectors of length ``k`` over ``f`` stored as integer code arrays."""

    def __init__(self, f: FieldSpec, k: int):
        self.f, self.k = f, k
        self.weights = f.n ** np.arange(k, dtype=np.int64)

    def key(self, vecs: np.ndarray) -> np.ndarray:
        return (vecs * self.weights).sum(axis=-1)

    def apply(self, mat: np.ndarray, vecs: np.ndarray) -> np.ndarray:
        """Rows of ``vecs`` mapped by ``v -> mat @ v``."""
        f = self.f
        out = np.zeros_like(vecs)
        for i in range(self.k):
            acc = np.zeros(vecs.shape[0], dtype=np.int64)
            for j in range(self.k):
                acc = f.add_table[acc, f.mul_table[mat[i, j], vecs[:, j]]]
            out[:, i] = acc
        return out

    def normalize(self, vecs: np.ndarray, lead: str = "first") -> np.ndarray:
        """Scale each nonzero row so its first (or last) nonzero entry is 1."""
        f = self.f
        nz = vecs != 0
        if lead == "first":
            pos = nz.argmax(axis=1)
        else:
            pos = self.k - 1 - nz[:, ::-1].argmax(axis=1)
        piv = vecs[np.arange(len(vecs)), pos]
        return f.mul_table[f.inv_table[piv][:, None], vecs]

    def frobenius(self, vecs: np.ndarray, power: int) -> np.ndarray:
        return self.f.pow_table(power)[vecs]


class _IndexedVectors:
    """A set of vectors with a key lookup, for turning vector maps into permutations."""

    def __init__(self, space: _VectorSpace, vecs: np.ndarray):
        self.space = space
        self.vecs = vecs
        self.lookup = np.full(space.f.n ** space.k, -1, dtype=np.int64)
        self.lookup[space.key(vecs)] = np.arange(len(vecs))

    def perm(self, images: np.ndarray) -> Perm:
        idx = self.lookup[self.space.key(images)]
        if (idx < 0).any():
            raise ValidationError("map sends a domain point outside the domain")
        return Perm(idx)


def _ordered_vectors(f: FieldSpec, k: int) -> np.ndarray:
    return np.array(list(itertools.product(f.ordered, repeat=k)), dtype=np.int64).reshape(-1, k)


def _vector_describer(f: FieldSpec):
    def describe(e):
        if e == INF:
            return "inf"
        return "(" + ",".join(repr(f.element(c)) for c in e) + ")"
    return describe


def _gl_order(k: int, n: int) -> int:
    return math.prod(n**k - n**i for i in range(k))


def _identity(k: int) -> np.ndarray:
    return np.eye(k, dtype=np.int64)


def _elementary(k: int, i: int, j: int, t: int) -> np.ndarray:
    m = _identity(k)
    m[i, j] = t
    return m


def _cycle_matrix(f: FieldSpec, k: int, det_one: bool) -> np.ndarray:
    """Permutation matrix sending e_i to e_{i+1}; optionally sign-fixed to determinant 1."""
    m = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        m[(i + 1) % k, i] = 1
    if det_one and k % 2 == 0:
        m[0, k - 1] = f.neg(1)
    return m


def _gl_generators(f: FieldSpec, k: int) -> list[np.ndarray]:
    """diag(w,1,...,1), x_12(1) and the cyclic permutation matrix."""
    d = _identity(k)
    d[0, 0] = f.primitive
    if k == 1:
        return [d]
    return [d, _elementary(k, 0, 1, 1), _cycle_matrix(f, k, det_one=False)]


def _sl_generators(f: FieldSpec, k: int) -> list[np.ndarray]:
    """x_12(t) for t in a GF(p)-basis, plus a determinant-one cyclic matrix."""
    gens = [_elementary(k, 0, 1, f.p**j) for j in range(f.alpha)]
    return gens + [_cycle_matrix(f, k, det_one=True)]


def _check_order(g: PermGroup, expected: int, what: str) -> None:
    got = group_order(g)
    if got != expected:
        raise ValidationError(f"{what}: generated group has order {got}, expected {expected}")


# ---------------------------------------------------------------------------
# builders


def build_sym_alt(n: int, alternating: bool = False) -> Action:
    if n < 3 or (alternating and n < 4):
        raise ConstraintError(f"{'A' if alternating else 'S'}_{n} is not two-transitive of degree >= 3")
    g = alternating_group(n) if alternating else symmetric_group(n)
    name = f"{'A' if alternating else 'S'}_{n}"
    return Action(name, LabeledDomain.abstract(n), group=g)


def build_agl_h(k: int, p: int, alpha: int = 1, frak_a: int | None = None) -> Action:
    """AGL_H(k, p^alpha) with H generated by x -> x^(p^frak_a).

    ``frak_a = alpha`` (the default) gives AGL, ``frak_a = 1`` gives AGammaL.
    """
    if frak_a is None:
        frak_a = alpha
    if k < 1 or alpha < 1 or frak_a < 1:
        raise ConstraintError("k, alpha and frak_a must be positive")
    if not is_prime(p):
        raise ConstraintError(f"{p} is not prime")
    if alpha % frak_a:
        raise ConstraintError(f"frak_a={frak_a} does not divide alpha={alpha}")
    f = make_field(p, alpha)
    n = f.n
    space = _VectorSpace(f, k)
    vecs = _ordered_vectors(f, k)
    iv = _IndexedVectors(space, vecs)

    gens: list[Perm] = []
    for i in range(k):
        for j in range(alpha):
            shift = np.zeros(k, dtype=np.int64)
            shift[i] = p**j
            gens.append(iv.perm(f.add_table[vecs, shift[None, :]]))
    for mat in _gl_generators(f, k):
        gens.append(iv.perm(space.apply(mat, vecs)))
    if frak_a < alpha:
        gens.append(iv.perm(space.frobenius(vecs, p**frak_a)))
    g = PermGroup(n**k, tuple(gens))
    _check_order(g, n**k * _gl_order(k, n) * (alpha // frak_a), "AGL_H")

    elements = tuple(tuple(int(c) for c in v) for v in vecs)
    dom = LabeledDomain(elements, _vector_describer(f))
    zero = (0,) * k
    one = (1,) + (0,) * (k - 1)
    pts = {"0": dom.index_of(zero), "1": dom.index_of(one)}
    if k > 1:
        pts["t"] = dom.index_of((0, 1) + (0,) * (k - 2))
    if frak_a == alpha:
        name = f"AGL({k},{n})"
    elif frak_a == 1:
        name = f"AGammaL({k},{n})"
    else:
        name = f"AGL_H({k},{n};q={p**frak_a})"
    return Action(name, dom, group=g, points=pts, field=f)


class Flavor(str, enum.Enum):
    PSL = "PSL"
    PGL = "PGL"
    PGAMMAL = "PGammaL"
    PSIGMAL = "PSigmaL"


def build_projective(k: int, n: int, flavor: Flavor | str = Flavor.PGL) -> Action:
    flavor = Flavor(flavor)
    if k < 2:
        raise ConstraintError("projective actions need k >= 2")
    try:
        p, alpha = prime_power(n)
    except ValueError:
        raise ConstraintError(f"{n} is not a prime power") from None
    f = make_field(p, alpha)
    space = _VectorSpace(f, k)
    allv = _ordered_vectors(f, k)
    nonzero = allv[(allv != 0).any(axis=1)]
    points = np.unique(space.normalize(nonzero), axis=0)
    keyed = sorted(map(tuple, points.tolist()), key=lambda v: tuple(f.rank[c] for c in v))
    points = np.array(keyed, dtype=np.int64)
    iv = _IndexedVectors(space, points)

    def proj(images: np.ndarray) -> Perm:
        return iv.perm(space.normalize(images))

    special = flavor in (Flavor.PSL, Flavor.PSIGMAL)
    mats = _sl_generators(f, k) if special else _gl_generators(f, k)
    gens = [proj(space.apply(m, points)) for m in mats]
    if flavor in (Flavor.PGAMMAL, Flavor.PSIGMAL) and alpha > 1:
        gens.append(proj(space.frobenius(points, p)))
    g = PermGroup(len(points), tuple(gens))
    order = _gl_order(k, n) // (n - 1)
    if special:
        order //= math.gcd(k, n - 1)
    if flavor in (Flavor.PGAMMAL, Flavor.PSIGMAL):
        order *= alpha
    _check_order(g, order, f"{flavor.value}({k},{n})")

    dom = LabeledDomain(tuple(keyed), _vector_describer(f))

    def e(*cs):
        v = np.array([list(cs) + [0] * (k - len(cs))], dtype=np.int64)
        return dom.index_of(tuple(int(c) for c in space.normalize(v)[0]))

    pts = {"u": e(1), "v": e(0, 1), "w": e(1, 1)}
    if k > 2:
        pts["x"] = e(0, 0, 1)
    if k == 2 and p != 2:
        eta = next(c for c in f.ordered if c and f.pow(c, (n - 1) // 2) != 1)
        pts["s"] = e(eta, 1)
    return Action(f"{flavor.value}({k},{n})", dom, group=g, points=pts, field=f)


# --- unitary groups ---------------------------------------------------------


def _hermitian_points(f: FieldSpec, q: int) -> list[tuple[int, int, int]]:
    """Isotropic points as (a, b, 1) in element order, then (1, 0, 0)."""
    out = []
    for a in f.ordered:
        for b in f.ordered:
            if f.add(f.add(a, f.pow(a, q)), f.pow(b, q + 1)) == 0:
                out.append((a, b, 1))
    out.append((1, 0, 0))
    return out


def _hermitian_form(f: FieldSpec, q: int, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """u1 v3^q + u2 v2^q + u3 v1^q, row-wise."""
    fr = f.pow_table(q)
    mt, at = f.mul_table, f.add_table
    t = at[mt[u[:, 0], fr[v[:, 2]]], mt[u[:, 1], fr[v[:, 1]]]]
    return at[t, mt[u[:, 2], fr[v[:, 0]]]]


def _unitary_setup(q: int):
    try:
        p, a = prime_power(q)
    except ValueError:
        raise ConstraintError(f"{q} is not a prime power") from None
    f = make_field(p, 2 * a)
    space = _VectorSpace(f, 3)
    pts = np.array(_hermitian_points(f, q), dtype=np.int64)
    if len(pts) != q**3 + 1:
        raise ValidationError(f"found {len(pts)} isotropic points, expected {q**3 + 1}")
    return f, space, pts, _IndexedVectors(space, pts)


def _unipotent(f: FieldSpec, q: int, a: int, b: int) -> np.ndarray:
    return np.array([[1, f.neg(f.pow(b, q)), a], [0, 1, b], [0, 0, 1]], dtype=np.int64)


def _preserves_form(f: FieldSpec, q: int, space: _VectorSpace, mat: np.ndarray) -> bool:
    # sesquilinear, so checking on all pairs of basis vectors is exact
    basis = _identity(3)
    img = space.apply(mat, basis)
    u = np.repeat(basis, 3, axis=0)
    v = np.tile(basis, (3, 1))
    iu = np.repeat(img, 3, axis=0)
    ivv = np.tile(img, (3, 1))
    return np.array_equal(_hermitian_form(f, q, u, v), _hermitian_form(f, q, iu, ivv))


def _unitary_action(q: int, special: bool) -> Action:
    f, space, pts, iv = _unitary_setup(q)
    w = f.primitive
    w_q = f.pow(w, q)
    if special:
        torus = np.diag([w, f.pow(w, q - 1), f.inv(w_q)])
        weyl = np.array([[0, 0, f.neg(1)], [0, f.neg(1), 0], [f.neg(1), 0, 0]], dtype=np.int64)
        order = q**3 * (q**3 + 1) * (q**2 - 1) // math.gcd(3, q + 1)
    else:
        torus = np.diag([w, 1, f.inv(w_q)])
        weyl = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=np.int64)
        order = q**3 * (q**3 + 1) * (q**2 - 1)
    mats = [torus, weyl]
    for m in mats:
        if not _preserves_form(f, q, space, m):
            raise ValidationError("unitary generator does not preserve the Hermitian form")

    def perm_of(m):
        return iv.perm(space.normalize(space.apply(m, pts), lead="last"))

    gens = [perm_of(m) for m in mats]
    # add unipotent elements in domain order until the full order is reached
    for a, b, _ in pts[:-1].tolist():
        if (a, b) == (0, 0):
            continue
        if group_order(PermGroup(len(pts), tuple(gens))) == order:
            break
        u = _unipotent(f, q, a, b)
        if not _preserves_form(f, q, space, u):
            raise ValidationError("unipotent generator does not preserve the Hermitian form")
        gens.append(perm_of(u))
    g = PermGroup(len(pts), tuple(gens))
    name = f"{'PSU' if special else 'PGU'}(3,{q})"
    _check_order(g, order, name)
    if not is_two_transitive(g):
        raise ValidationError(f"{name} is not two-transitive")
    return Action(name, _unitary_domain(f, pts), group=g, points=_unitary_points(f, pts), field=f)


def _unitary_domain(f: FieldSpec, pts: np.ndarray) -> LabeledDomain:
    return LabeledDomain(tuple(tuple(int(c) for c in v) for v in pts), _vector_describer(f))


def _unitary_points(f: FieldSpec, pts: np.ndarray) -> dict[str, int]:
    dom = {tuple(int(c) for c in v): i for i, v in enumerate(pts)}
    return {"E1": dom[(1, 0, 0)], "E3": dom[(0, 0, 1)]}


def build_pgu3(q: int) -> Action:
    return _unitary_action(q, special=False)


def build_psu3(q: int) -> Action:
    return _unitary_action(q, special=True)


def unitary_stabilizer(q: int, special: bool = False) -> StabilizerMapSet:
    """The torus Diag(c, 1, c^-q) fixing E1 and E3.

    For the special group only ``c`` in the index-gcd(3, q+1) subgroup of
    GF(q^2)* occur: those are the elements with a scalar multiple of
    determinant 1.
    """
    f, space, pts, iv = _unitary_setup(q)
    dom = _unitary_domain(f, pts)
    named = _unitary_points(f, pts)
    d = math.gcd(3, q + 1) if special else 1
    maps = []
    for c in range(1, f.n):
        if special and f.pow(c, (f.n - 1) // d) != 1:
            continue
        m = np.diag([c, 1, f.inv(f.pow(c, q))])
        maps.append(iv.perm(space.normalize(space.apply(m, pts), lead="last")).images.astype(np.int64))
    return StabilizerMapSet(dom, (named["E3"], named["E1"]), tuple(maps))


# --- symplectic groups on quadratic forms -------------------------------------


def _symplectic_b(k: int, x: int, y: int) -> int:
    """b(x, y) = sum x_i y_{k+i} + x_{k+i} y_i over GF(2), vectors as bitmasks."""
    lo = (1 << k) - 1
    return (bin((x & lo) & (y >> k)).count("1") + bin((x >> k) & (y & lo)).count("1")) & 1


def _q0(k: int, x: int) -> int:
    lo = (1 << k) - 1
    return bin((x & lo) & (x >> k)).count("1") & 1


def build_sp2k2(k: int, epsilon: str) -> Action:
    if k < 2:
        raise ConstraintError("Sp(2k,2) needs k >= 2")
    if epsilon not in ("+", "-"):
        raise ConstraintError("epsilon must be '+' or '-'")
    dim = 2 * k
    nv = 1 << dim
    bmat = np.array([[_symplectic_b(k, x, y) for y in range(nv)] for x in range(nv)], dtype=np.int64)
    q0 = np.array([_q0(k, x) for x in range(nv)], dtype=np.int64)
    # every form polarizing to b is q0 + b(., w)
    forms = [tuple(int(t) for t in (q0 + bmat[:, w]) % 2) for w in range(nv)]
    for qf in forms:
        qa = np.array(qf)
        polar = (qa[:, None] + qa[None, :] + qa[np.bitwise_xor.outer(np.arange(nv), np.arange(nv))]) % 2
        if not np.array_equal(polar, bmat):
            raise ValidationError("form does not polarize to b")
    plus_zeros = 2 ** (dim - 1) + 2 ** (k - 1)
    want = plus_zeros if epsilon == "+" else 2 ** (dim - 1) - 2 ** (k - 1)
    omega = sorted(qf for qf in forms if qf.count(0) == want)
    expected = 2 ** (dim - 1) + (1 if epsilon == "+" else -1) * 2 ** (k - 1)
    if len(omega) != expected:
        raise ValidationError(f"|Omega^{epsilon}| = {len(omega)}, expected {expected}")
    dom = LabeledDomain(tuple(omega), lambda qf: "".join(map(str, qf)))

    vec = np.arange(nv)
    gens = []
    for v in range(1, nv):
        # transvection t_v: x -> x + b(x, v) v; involution, so (t q)(x) = q(t x)
        t = np.where(bmat[:, v] == 1, vec ^ v, vec)
        if not np.array_equal(bmat[t][:, t], bmat):
            raise ValidationError("transvection does not preserve b")
        gens.append(Perm([dom.index_of(tuple(np.array(qf)[t].tolist())) for qf in omega]))
    g = PermGroup(len(omega), tuple(gens))
    sp_order = 2 ** (k * k) * math.prod(2 ** (2 * i) - 1 for i in range(1, k + 1))
    _check_order(g, sp_order, f"Sp({dim},2)")
    if not is_two_transitive(g):
        raise ValidationError(f"Sp({dim},2) on Omega^{epsilon} is not two-transitive")
    return Action(f"Sp({dim},2){epsilon}", dom, group=g)


# --- Suzuki and Ree two-point stabilizers --------------------------------------


def _odd_power(q: int, p: int, what: str) -> int:
    """Return m with q = p^(2m+1)."""
    try:
        pp, e = prime_power(q)
    except ValueError:
        raise ConstraintError(f"{what} needs q a power of {p}") from None
    if pp != p or e % 2 == 0:
        raise ConstraintError(f"{what} needs q an odd power of {p}, got {q}")
    return (e - 1) // 2


def _tuple_domain(f: FieldSpec, coords: np.ndarray) -> tuple[LabeledDomain, dict]:
    elements = tuple(tuple(int(c) for c in row) for row in coords) + (INF,)
    dom = LabeledDomain(elements, _vector_describer(f))
    return dom, dom.index


def _map_set(dom: LabeledDomain, index: dict, images: list[np.ndarray]) -> StabilizerMapSet:
    zero = index[tuple([0] * len(dom[0]))]
    inf = index[INF]
    maps = []
    for img in images:
        arr = np.empty(len(dom), dtype=np.int64)
        for i, row in enumerate(img):
            t = tuple(int(c) for c in row)
            if t not in index:
                raise ValidationError("stabilizer map leaves the domain")
            arr[i] = index[t]
        arr[inf] = inf
        maps.append(arr)
    return StabilizerMapSet(dom, (zero, inf), tuple(maps))


def suzuki_stabilizer(q: int) -> StabilizerMapSet:
    """Sz(q)_{0,inf} = {n_a} on {(x, y, f(x, y))} plus infinity."""
    m = _odd_power(q, 2, "Sz(q)")
    f = make_field(2, 2 * m + 1)
    mt, at = f.mul_table, f.add_table
    sig = f.pow_table(2 ** (m + 1))
    xs = np.array(f.ordered, dtype=np.int64)
    x, y = (a.ravel() for a in np.meshgrid(xs, xs, indexing="ij"))
    sq = mt[x, x]
    z = at[at[mt[x, y], mt[sig[x], sq]], sig[y]]
    coords = np.stack([x, y, z], axis=1)
    dom, index = _tuple_domain(f, coords)
    if len(dom) != q * q + 1:
        raise ValidationError(f"|Omega| = {len(dom)}, expected {q * q + 1}")
    images = []
    for a in f.ordered:
        if a == 0:
            continue
        sa = int(sig[a])
        c1, c2, c3 = a, mt[sa, a], mt[mt[sa, a], a]
        images.append(np.stack([mt[c1, x], mt[c2, y], mt[c3, z]], axis=1))
    return _map_set(dom, index, images)


def ree_stabilizer(q: int) -> StabilizerMapSet:
    """Ree(q)_{0,inf} = {n_a} on {(x, y, z, f, g, h)} plus infinity."""
    m = _odd_power(q, 3, "Ree(q)")
    fld = make_field(3, 2 * m + 1)
    mt, at, neg = fld.mul_table, fld.add_table, fld.neg_table
    sig = fld.pow_table(3 ** (m + 1))

    def mul(*xs):
        out = xs[0]
        for t in xs[1:]:
            out = mt[out, t]
        return out

    def add(*xs):
        out = xs[0]
        for t in xs[1:]:
            out = at[out, t]
        return out

    def sub(a, b):
        return at[a, neg[b]]

    els = np.array(fld.ordered, dtype=np.int64)
    x, y, z = (a.ravel() for a in np.meshgrid(els, els, els, indexing="ij"))
    sx, sy, sz = sig[x], sig[y], sig[z]
    x2 = mul(x, x)
    x3 = mul(x2, x)
    f_ = sub(add(mul(x2, y), sy), add(mul(x, z), mul(sx, x3)))
    g_ = add(sub(mul(sx, sy), sz), mul(x, y, y), mul(y, z))
    g_ = sub(g_, mul(sx, sx, x3))
    h_ = add(mul(x, sz), mul(sx, x3, y), mul(x2, y, y), mul(sx, sx, x3, x))
    # the x^(sigma+1) y term is taken as x^(sigma+1) sigma(y); only that form is
    # homogeneous under every n_a, and the two agree when q = 3
    h_ = sub(sub(sub(h_, mul(sx, x, sy)), mul(sy, y)), mul(z, z))
    coords = np.stack([x, y, z, f_, g_, h_], axis=1)
    dom, index = _tuple_domain(fld, coords)
    if len(dom) != q**3 + 1:
        raise ValidationError(f"|Omega| = {len(dom)}, expected {q**3 + 1}")
    images = []
    for a in fld.ordered:
        if a == 0:
            continue
        sa = int(sig[a])
        a2 = fld.mul(a, a)
        a3 = fld.mul(a2, a)
        a4 = fld.mul(a3, a)
        s2 = fld.mul(sa, sa)
        cs = [a, fld.mul(sa, a), fld.mul(sa, a2), fld.mul(sa, a3), fld.mul(s2, a3), fld.mul(s2, a4)]
        images.append(np.stack([mt[c, coords[:, i]] for i, c in enumerate(cs)], axis=1))
    return _map_set(dom, index, images)


# --- generator files -------------------------------------------------------------


def write_group_file(path: str | Path, g: PermGroup) -> None:
    lines = [f"degree {g.degree}"]
    lines += [" ".join(map(str, s.images.tolist())) for s in g.generators]
    Path(path).write_text("\n".join(lines) + "\n")


class GroupFileError(ValueError):
    pass


def load_group_file(path: str | Path) -> Action:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise GroupFileError(f"cannot read {path}: {e.strerror}") from None
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise GroupFileError(f"{path}: empty file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "degree" or not head[1].isdigit():
        raise GroupFileError(f"{path}: first line must be 'degree N'")
    n = int(head[1])
    gens = []
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            im = [int(t) for t in ln.split()]
        except ValueError:
            raise GroupFileError(f"{path}:{lineno}: non-integer image") from None
        if len(im) != n:
            raise GroupFileError(f"{path}:{lineno}: {len(im)} images for degree {n}")
        try:
            gens.append(Perm(im))
        except ValueError:
            raise GroupFileError(f"{path}:{lineno}: images are not a bijection") from None
    g = PermGroup(n, tuple(gens) or (Perm.identity(n),))
    return Action(path.stem, LabeledDomain.abstract(n), group=g)


# bundled sporadic actions, keyed by the names used in the sporadic tables
SPORADIC_FILES = {
    "M(11)": "m11_11.txt",
    "M(11) deg 12": "m11_12.txt",
    "M(12)": "m12.txt",
    "M(22)": "m22.txt",
    "M(23)": "m23.txt",
    "M(24)": "m24.txt",
    "PSL(2,11) deg 11": "psl2_11_11.txt",
    "A7 deg 15": "a7_15.txt",
    "HS": "hs_176.txt",
    "Co3": "co3_276.txt",
}


def data_dir(override: str | Path | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get("TRISCHEME_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("trischeme") / "data"))


def load_sporadic(name: str, directory: str | Path | None = None) -> Action:
    if name not in SPORADIC_FILES:
        raise KeyError(f"unknown sporadic group {name!r}; known: {', '.join(SPORADIC_FILES)}")
    act = load_group_file(data_dir(directory) / SPORADIC_FILES[name])
    return Action(name, act.domain, group=act.group)


# --- parameter bundle --------------------------------------------------------------


class Family(str, enum.Enum):
    SYM = "sym"
    ALT = "alt"
    AGL = "agl"
    PGL = "pgl"
    PSL = "psl"
    PGAMMAL = "pgammal"
    PSIGMAL = "psigmal"
    PGU = "pgu"
    PSU = "psu"
    SP = "sp"
    SUZUKI = "suzuki"
    REE = "ree"
    FILE = "file"
    SPORADIC = "sporadic"


_PROJECTIVE = {
    Family.PGL: Flavor.PGL,
    Family.PSL: Flavor.PSL,
    Family.PGAMMAL: Flavor.PGAMMAL,
    Family.PSIGMAL: Flavor.PSIGMAL,
}


@dataclass(frozen=True)
class ActionSpec:
    family: Family
    k: int | None = None
    n: int | None = None
    p: int | None = None
    alpha: int = 1
    frak_a: int | None = None
    q: int | None = None
    epsilon: str | None = None
    path: str | None = None
    name: str | None = None
    route: str = "group"  # "group" or "stabilizer" (PGU/PSU only)
    data_dir: str | None = None

    def _need(self, **kw: Any) -> None:
        missing = [k for k, v in kw.items() if v is None]
        if missing:
            raise ConstraintError(f"family {self.family.value} needs --{', --'.join(missing)}")

    def validate(self) -> None:
        fam = self.family
        if fam in (Family.SYM, Family.ALT):
            self._need(n=self.n)
            if self.n < 3 or (fam is Family.ALT and self.n < 4):
                raise ConstraintError("degree too small for a two-transitive action")
        elif fam is Family.AGL:
            self._need(k=self.k, p=self.p)
            a = self.alpha if self.frak_a is None else self.frak_a
            if self.k < 1 or self.alpha < 1 or a < 1 or not is_prime(self.p) or self.alpha % a:
                raise ConstraintError("AGL_H needs k >= 1, p prime and frak_a | alpha")
        elif fam in _PROJECTIVE:
            self._need(k=self.k, n=self.n)
            if self.k < 2:
                raise ConstraintError("projective actions need k >= 2")
            try:
                prime_power(self.n)
            except ValueError:
                raise ConstraintError(f"{self.n} is not a prime power") from None
        elif fam in (Family.PGU, Family.PSU):
            self._need(q=self.q)
            try:
                prime_power(self.q)
            except ValueError:
                raise ConstraintError(f"{self.q} is not a prime power") from None
            if self.route not in ("group", "stabilizer"):
                raise ConstraintError("route must be 'group' or 'stabilizer'")
        elif fam is Family.SP:
            self._need(k=self.k, epsilon=self.epsilon)
            if self.k < 2 or self.epsilon not in ("+", "-"):
                raise ConstraintError("Sp(2k,2) needs k >= 2 and epsilon in {+,-}")
        elif fam is Family.SUZUKI:
            self._need(q=self.q)
            _odd_power(self.q, 2, "Sz(q)")
            if self.q < 8:
                raise ConstraintError("Sz(q) needs q = 2^(2m+1) with m >= 1")
        elif fam is Family.REE:
            self._need(q=self.q)
            _odd_power(self.q, 3, "Ree(q)")
        elif fam is Family.FILE:
            self._need(path=self.path)
        elif fam is Family.SPORADIC:
            self._need(name=self.name)
            if self.name not in SPORADIC_FILES:
                raise ConstraintError(f"unknown sporadic group {self.name!r}")

    def build(self) -> Action:
        self.validate()
        fam = self.family
        if fam in (Family.SYM, Family.ALT):
            return build_sym_alt(self.n, fam is Family.ALT)
        if fam is Family.AGL:
            return build_agl_h(self.k, self.p, self.alpha, self.frak_a)
        if fam in _PROJECTIVE:
            return build_projective(self.k, self.n, _PROJECTIVE[fam])
        if fam in (Family.PGU, Family.PSU):
            special = fam is Family.PSU
            if self.route == "stabilizer":
                s = unitary_stabilizer(self.q, special)
                name = f"{'PSU' if special else 'PGU'}(3,{self.q})"
                return Action(name, s.domain, stabilizer=s)
            return build_psu3(self.q) if special else build_pgu3(self.q)
        if fam is Family.SP:
            return build_sp2k2(self.k, self.epsilon)
        if fam is Family.SUZUKI:
            s = suzuki_stabilizer(self.q)
            return Action(f"Sz({self.q})", s.domain, stabilizer=s)
        if fam is Family.REE:
            s = ree_stabilizer(self.q)
            return Action(f"Ree({self.q})", s.domain, stabilizer=s)
        if fam is Family.FILE:
            return load_group_file(self.path)
        return load_sporadic(self.name, self.data_dir)
