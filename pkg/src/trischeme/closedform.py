"""Closed-form parameters of the schemes built from known two-transitive families.

Predictions are expressed with semantic relation names rather than numeric
labels, so they can be compared with a computed scheme through an explicit
label bijection (:func:`match_predicted`).

Name conventions:

* trivial relations: ``I0`` .. ``I3``
* projective: ``w`` (collinear with the base pair), ``x`` (off the base line),
  ``s`` (PSL(2, n) with n odd, the non-residue orbit)
* AGL_H: the field element of a Galois-orbit transversal (as printed by
  :class:`~trischeme.galois.FieldElem`) and ``*`` for the off-line relation
* tabulated sporadic data: ``R4``, ``R5``, ...
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .actions import Action, ConstraintError
from .galois import FieldSpec, galois_orbit_codes, is_prime, make_field, prime_power
from .scheme import TRIVIAL, IntersectionTensor, TripleScheme, classify_triple

TRIVIAL_NAMES = ("I0", "I1", "I2", "I3")
STAR = "*"

Entry = tuple[str, str, str, str]


@dataclass(frozen=True)
class PredictedScheme:
    degree: int
    size: int
    valencies: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(sorted(self.valencies))
        object.__setattr__(self, "valencies", vals)
        if len(vals) != self.size - TRIVIAL:
            raise ValueError(f"size {self.size} disagrees with {len(vals)} nontrivial valencies")
        if sum(vals) != self.degree - 2:
            raise ValueError(f"valencies sum to {sum(vals)}, expected {self.degree - 2}")

    def valency_pairs(self) -> list[tuple[int, int]]:
        return sorted(Counter(self.valencies).items())


@dataclass(frozen=True)
class PredictedTensor:
    """Nonzero entries over semantic names; everything else in scope is zero.

    The scope is every ``(i, j, k, l)`` with at most one of ``i, j, k``
    trivial.
    """

    names: tuple[str, ...]
    entries: Mapping[Entry, int]
    valencies: Mapping[str, int] | None = None
    # AGL_H names -> field codes, for anchoring
    field_codes: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        known = set(TRIVIAL_NAMES) | set(self.names)
        for key, v in self.entries.items():
            if not set(key) <= known:
                raise ValueError(f"entry {key} uses an unknown name")
            if v < 0:
                raise ValueError(f"negative entry {key} = {v}")
            if not in_scope(key):
                raise ValueError(f"entry {key} lies outside the predicted scope")

    @property
    def all_names(self) -> tuple[str, ...]:
        return TRIVIAL_NAMES + self.names

    def value(self, i: str, j: str, k: str, l: str) -> int:
        return self.entries.get((i, j, k, l), 0)

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        """Values and scope mask indexed by position in :attr:`all_names`."""
        idx = {nm: i for i, nm in enumerate(self.all_names)}
        size = len(idx)
        vals = np.zeros((size,) * 4, dtype=np.int64)
        for key, v in self.entries.items():
            vals[tuple(idx[nm] for nm in key)] = v
        triv = np.arange(size) < TRIVIAL
        count = triv[:, None, None].astype(int) + triv[None, :, None] + triv[None, None, :]
        mask = np.broadcast_to((count <= 1)[..., None], vals.shape)
        return vals, mask

    def perturbed(self, key: Entry, delta: int = 1) -> "PredictedTensor":
        entries = dict(self.entries)
        entries[key] = entries.get(key, 0) + delta
        return PredictedTensor(self.names, entries, self.valencies, self.field_codes)


def in_scope(key: Iterable[str]) -> bool:
    i, j, k, _ = key
    return sum(nm in TRIVIAL_NAMES for nm in (i, j, k)) <= 1


def _tensor(names, entries: dict, valencies=None, field_codes=None) -> PredictedTensor:
    clean = {k: int(v) for k, v in entries.items() if v}
    return PredictedTensor(tuple(names), clean, valencies, field_codes or {})


def _all_orders(*names: str) -> set[tuple[str, str, str]]:
    return set(itertools.permutations(names))


def _exact(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"closed form gave non-integer {x}")
    return int(x)


# ---------------------------------------------------------------------------
# symmetric, alternating and single-relation schemes


def predict_sym_alt(n: int, alternating: bool = False) -> PredictedScheme:
    if n < 3 or (alternating and n < 4):
        raise ConstraintError(f"{'A' if alternating else 'S'}_{n} is not two-transitive")
    if alternating and n == 4:
        return PredictedScheme(4, 6, (1, 1))
    return PredictedScheme(n, 5, (n - 2,))


def predict_single_relation_tensor(degree: int, name: str = "R4") -> PredictedTensor:
    """Tensor of any scheme with one nontrivial relation (three-transitive groups)."""
    e = {
        (name, name, name, name): degree - 3,
        ("I1", name, name, "I1"): degree - 2,
        (name, "I2", name, "I2"): degree - 2,
        (name, name, "I3", "I3"): degree - 2,
    }
    return _tensor([name], e, {name: degree - 2})


# ---------------------------------------------------------------------------
# projective groups


def _projective_degree(k: int, n: int) -> int:
    return (n**k - 1) // (n - 1)


def _off_line_valency(k: int, n: int) -> int:
    return n * n * (n ** (k - 2) - 1) // (n - 1)


def _check_prime_power(n: int) -> tuple[int, int]:
    try:
        return prime_power(n)
    except ValueError:
        raise ConstraintError(f"{n} is not a prime power") from None


def predict_projective(k: int, n: int, flavor: str = "PGL") -> PredictedScheme:
    """Groups between PSL (or PGL) and PGammaL acting on projective points."""
    flavor = str(getattr(flavor, "value", flavor))
    if flavor not in ("PSL", "PGL", "PGammaL", "PSigmaL"):
        raise ConstraintError(f"unsupported projective flavor {flavor}")
    if k < 2:
        raise ConstraintError("projective actions need k >= 2")
    _check_prime_power(n)
    nu = _projective_degree(k, n)
    if k == 2:
        if flavor in ("PSL", "PSigmaL") and n % 2:
            if flavor == "PSigmaL":
                # the field automorphism may fuse the two PSL orbits
                raise ConstraintError("PSigmaL(2, n) with n odd is not covered by a closed form")
            return PredictedScheme(nu, 6, ((n - 1) // 2,) * 2)
        return PredictedScheme(nu, 5, (n - 1,))
    return PredictedScheme(nu, 6, (n - 1, _off_line_valency(k, n)))


def predict_pgl_tensor(k: int, n: int) -> PredictedTensor:
    if k < 2:
        raise ConstraintError("projective actions need k >= 2")
    _check_prime_power(n)
    e: dict[Entry, int] = {
        ("w", "w", "w", "w"): n - 2,
        ("I1", "w", "w", "I1"): n - 1,
        ("w", "I2", "w", "I2"): n - 1,
        ("w", "w", "I3", "I3"): n - 1,
    }
    if k == 2:
        return _tensor(["w"], e, {"w": n - 1})
    off = _off_line_valency(k, n)
    for t in _all_orders("w", "x", "x"):
        e[t + ("x",)] = n - 1
    e[("x", "x", "x", "w")] = off
    e[("x", "x", "x", "x")] = _projective_degree(k, n) - 3 * n
    e[("I1", "x", "x", "I1")] = off
    e[("x", "I2", "x", "I2")] = off
    e[("x", "x", "I3", "I3")] = off
    return _tensor(["w", "x"], e, {"w": n - 1, "x": off})


def predict_psl2_tensor(n: int) -> PredictedTensor:
    p, _ = _check_prime_power(n)
    if p == 2:
        raise ConstraintError("the two-orbit PSL(2, n) tensor needs n odd")
    e: dict[Entry, int] = {}
    half = (n - 1) // 2
    if n % 4 == 1:
        e[("w", "w", "w", "w")] = (n - 5) // 4
        e[("s", "s", "s", "s")] = (n - 5) // 4
        for t in _all_orders("w", "w", "s"):
            e[t + ("s",)] = (n - 1) // 4
        for t in _all_orders("w", "s", "s"):
            e[t + ("w",)] = (n - 1) // 4
        same, mixed = half, 0
    else:
        e[("w", "w", "w", "s")] = (n + 1) // 4
        e[("s", "s", "s", "w")] = (n + 1) // 4
        for t in _all_orders("w", "w", "s"):
            e[t + ("w",)] = (n - 3) // 4
        for t in _all_orders("w", "s", "s"):
            e[t + ("s",)] = (n - 3) // 4
        same, mixed = 0, half
    for a, b in itertools.product("ws", repeat=2):
        v = same if a == b else mixed
        e[("I1", a, b, "I1")] = v
        e[(a, "I2", b, "I2")] = v
        e[(a, b, "I3", "I3")] = v
    return _tensor(["w", "s"], e, {"w": half, "s": half})


# ---------------------------------------------------------------------------
# AGL_H(k, n): affine groups extended by a group of field automorphisms


@dataclass(frozen=True)
class _GaloisData:
    field: FieldSpec
    q: int
    transversal: tuple[int, ...]
    # transversal code -> list of conjugates (with repetition, length r)
    conjugates: Mapping[int, tuple[int, ...]]

    def name(self, code: int) -> str:
        return repr(self.field.element(code))


def _agl_h_check(k: int, p: int, alpha: int, frak_a: int | None) -> int:
    if frak_a is None:
        frak_a = alpha
    if k < 1 or alpha < 1 or frak_a < 1:
        raise ConstraintError("k, alpha and frak_a must be positive")
    if not is_prime(p):
        raise ConstraintError(f"{p} is not prime")
    if alpha % frak_a:
        raise ConstraintError(f"frak_a={frak_a} does not divide alpha={alpha}")
    if p**alpha == 2 and k == 1:
        raise ConstraintError("AGL(1, 2) has degree 2")
    return frak_a


def _galois_data(p: int, alpha: int, frak_a: int) -> _GaloisData:
    f = make_field(p, alpha)
    q = p**frak_a
    seen: set[int] = set()
    reps, conj = [], {}
    for c in f.ordered:
        if c in (0, 1) or c in seen:
            continue
        orbit = tuple(galois_orbit_codes(f, c, q))
        seen.update(orbit)
        reps.append(c)
        conj[c] = orbit
    return _GaloisData(f, q, tuple(reps), conj)


def agl_h_orbit_count(p: int, alpha: int, frak_a: int) -> int:
    """Number of orbits of x -> x^q on GF(p^alpha), by the necklace count."""
    r = alpha // frak_a
    q = p**frak_a
    return _exact(Fraction(sum(q ** math.gcd(r, b) for b in range(1, r + 1)), r))


def predict_agl_h(k: int, p: int, alpha: int = 1, frak_a: int | None = None) -> PredictedScheme:
    frak_a = _agl_h_check(k, p, alpha, frak_a)
    n = p**alpha
    size = 2 + agl_h_orbit_count(p, alpha, frak_a) + (1 if k >= 2 else 0)
    g = _galois_data(p, alpha, frak_a)
    vals = [len(set(g.conjugates[c])) for c in g.transversal]
    if k >= 2:
        vals.append(n**k - n)
    return PredictedScheme(n**k, size, tuple(vals))


def predict_agl_h_tensor(k: int, p: int, alpha: int = 1, frak_a: int | None = None) -> PredictedTensor:
    """Evaluate the counting formulas for every entry over the transversal."""
    frak_a = _agl_h_check(k, p, alpha, frak_a)
    g = _galois_data(p, alpha, frak_a)
    f = g.field
    n = f.n
    conj = {c: set(v) for c, v in g.conjugates.items()}
    name = g.name
    e: dict[Entry, int] = {}

    for a, b, c in itertools.product(g.transversal, repeat=3):
        for ell in g.transversal:
            hits = {
                c2
                for c2 in conj[c]
                if any(f.add(f.mul(f.sub(1, c2), a2), c2) == ell for a2 in conj[a])
                and any(f.mul(b2, c2) == ell for b2 in conj[b])
            }
            e[(name(a), name(b), name(c), name(ell))] = len(hits)

    for a, b in itertools.product(g.transversal, repeat=2):
        e[("I1", name(a), name(b), "I1")] = len(
            {b2 for b2 in conj[b] if any(f.mul(a2, b2) == 1 for a2 in conj[a])}
        )
        e[(name(a), "I2", name(b), "I2")] = len(
            {b2 for b2 in conj[b] if any(f.mul(a2, b2) == f.add(a2, b2) for a2 in conj[a])}
        )
        e[(name(a), name(b), "I3", "I3")] = len(
            {b2 for b2 in conj[b] if any(f.add(a2, b2) == 1 for a2 in conj[a])}
        )

    names = [name(c) for c in g.transversal]
    valencies = {name(c): len(conj[c]) for c in g.transversal}
    if k >= 2:
        big = n**k - n
        for a in g.transversal:
            for t in _all_orders(name(a), STAR, STAR):
                e[t + (STAR,)] = len(conj[a])
        e[(STAR, STAR, STAR, STAR)] = n**k - 3 * n + 3
        for a in g.transversal:
            e[(STAR, STAR, STAR, name(a))] = big
        e[("I1", STAR, STAR, "I1")] = big
        e[(STAR, "I2", STAR, "I2")] = big
        e[(STAR, STAR, "I3", "I3")] = big
        names.append(STAR)
        valencies[STAR] = big
    return _tensor(names, e, valencies, {name(c): c for c in g.transversal})


# ---------------------------------------------------------------------------
# unitary, symplectic, Suzuki and Ree groups (sizes and valencies only)


def predict_pgu3(q: int) -> PredictedScheme:
    _check_prime_power(q)
    return PredictedScheme(q**3 + 1, q + 5, (q * q - 1,) * q + (q - 1,))


def predict_psu3(q: int) -> PredictedScheme:
    _check_prime_power(q)
    if (q + 1) % 3:
        raise ConstraintError(f"3 does not divide q + 1 = {q + 1}; PSU(3,{q}) acts as PGU(3,{q})")
    return PredictedScheme(q**3 + 1, 3 * q + 5, ((q * q - 1) // 3,) * (3 * q) + (q - 1,))


def predict_sp(k: int, epsilon: str) -> PredictedScheme:
    if k < 2:
        raise ConstraintError("Sp(2k, 2) needs k >= 2")
    if epsilon not in ("+", "-"):
        raise ConstraintError("epsilon must be '+' or '-'")
    sign = 1 if epsilon == "+" else -1
    nu = 2 ** (k - 1) * (2**k + sign)
    if (k, epsilon) == (2, "-"):
        return PredictedScheme(nu, 5, (4,))
    perp = 2 ** (2 * k - 2) + sign * 2 ** (k - 1) - 2
    return PredictedScheme(nu, 6, (perp, 2 ** (2 * k - 2)))


def _odd_power_of(q: int, p: int) -> None:
    e = 0
    m = q
    while m % p == 0 and m > 1:
        m //= p
        e += 1
    if m != 1 or e % 2 == 0:
        raise ConstraintError(f"{q} is not an odd power of {p}")


def predict_suzuki(q: int) -> PredictedScheme:
    _odd_power_of(q, 2)
    if q < 8:
        raise ConstraintError("Sz(q) needs q >= 8")
    return PredictedScheme(q * q + 1, q + 5, (q - 1,) * (q + 1))


def predict_ree(q: int) -> PredictedScheme:
    _odd_power_of(q, 3)
    return PredictedScheme(q**3 + 1, q * q + q + 6, (q - 1,) * (q * q + q) + ((q - 1) // 2,) * 2)


# ---------------------------------------------------------------------------
# sporadic groups: tabulated sizes, valencies and intersection numbers


@dataclass(frozen=True)
class SporadicRow:
    name: str
    scheme: PredictedScheme
    tensor: PredictedTensor
    table: int | None  # number of the intersection-number table, if any


SPORADIC_SIZES: dict[str, tuple[int, int, tuple[int, ...]]] = {
    # name: (degree, size, third valencies)
    "M(11)": (11, 5, (9,)),
    "M(11) deg 12": (12, 5, (10,)),
    "M(12)": (12, 5, (10,)),
    "M(22)": (22, 5, (20,)),
    "M(23)": (23, 5, (21,)),
    "M(24)": (24, 5, (22,)),
    "PSL(2,11) deg 11": (11, 6, (3, 6)),
    "A7 deg 15": (15, 6, (1, 12)),
    "HS": (176, 7, (12, 72, 90)),
    "Co3": (276, 6, (112, 162)),
}

# nonzero p_ijk^l as "ijk^l": value, for at most one trivial index among i, j, k
SPORADIC_ENTRIES: dict[str, tuple[int, dict[str, int]]] = {
    "PSL(2,11) deg 11": (2, {
        "144^1": 3, "155^1": 6, "424^2": 3, "443^3": 3, "445^5": 1, "454^5": 1,
        "455^4": 2, "455^5": 1, "525^2": 6, "544^5": 1, "545^4": 2, "545^5": 1,
        "553^3": 6, "554^4": 2, "554^5": 1, "555^4": 2, "555^5": 2,
    }),
    "A7 deg 15": (3, {
        "144^1": 1, "155^1": 12, "424^2": 1, "443^3": 1, "455^5": 1, "525^2": 12,
        "545^5": 1, "553^3": 12, "554^5": 1, "555^4": 12, "555^5": 9,
    }),
    "HS": (4, {
        "144^1": 72, "155^1": 90, "166^1": 12, "424^2": 72, "443^3": 72, "444^4": 20,
        "445^5": 32, "445^6": 30, "446^5": 4, "446^6": 6, "454^5": 32, "454^6": 30,
        "455^4": 40, "456^4": 5, "464^5": 4, "464^6": 6, "465^4": 5, "466^4": 1,
        "525^2": 90, "544^5": 32, "544^6": 30, "545^4": 40, "546^4": 5, "553^3": 90,
        "554^4": 40, "555^5": 41, "555^6": 60, "556^5": 8, "564^4": 5, "565^5": 8,
        "626^2": 12, "644^5": 4, "644^6": 6, "645^4": 5, "646^4": 1, "654^4": 5,
        "655^5": 8, "663^3": 12, "664^4": 1, "666^6": 5,
    }),
    "Co3": (5, {
        "144^1": 162, "155^1": 112, "424^2": 162, "443^3": 162, "444^4": 105, "445^5": 81,
        "454^5": 81, "455^4": 56, "525^2": 112, "544^5": 81, "545^4": 56, "553^3": 112,
        "554^4": 56, "555^5": 30,
    }),
}


def _label_name(c: str) -> str:
    d = int(c)
    return TRIVIAL_NAMES[d] if d < TRIVIAL else f"R{d}"


def parse_entry_key(key: str) -> tuple[int, int, int, int]:
    ijk, l = key.split("^")
    if len(ijk) != 3:
        raise ValueError(f"bad entry key {key!r}")
    return int(ijk[0]), int(ijk[1]), int(ijk[2]), int(l)


def _table_tensor(size: int, entries: Mapping[str, int]) -> PredictedTensor:
    names = [f"R{i}" for i in range(TRIVIAL, size)]
    e = {tuple(_label_name(str(c)) for c in parse_entry_key(k)): v for k, v in entries.items()}
    return _tensor(names, e)


def sporadic_table() -> dict[str, SporadicRow]:
    out = {}
    for name, (nu, size, vals) in SPORADIC_SIZES.items():
        scheme = PredictedScheme(nu, size, vals)
        if name in SPORADIC_ENTRIES:
            table, entries = SPORADIC_ENTRIES[name]
            tensor = _table_tensor(size, entries)
        else:
            table, tensor = None, predict_single_relation_tensor(nu)
        out[name] = SporadicRow(name, scheme, tensor, table)
    return out


def sporadic_row(name: str) -> SporadicRow:
    rows = sporadic_table()
    if name not in rows:
        raise KeyError(f"unknown sporadic group {name!r}; known: {', '.join(rows)}")
    return rows[name]


def table_rows(number: int) -> list[SporadicRow]:
    """Rows behind printed table ``number`` (1 = sizes, 2..5 = intersection numbers)."""
    rows = list(sporadic_table().values())
    if number == 1:
        return rows
    picked = [r for r in rows if r.table == number]
    if not picked:
        raise KeyError(f"no table {number}")
    return picked


# ---------------------------------------------------------------------------
# comparison with computed schemes


@dataclass
class MatchReport:
    size_ok: bool
    valencies_ok: bool
    tensor_checked: bool = False
    tensor_ok: bool = True
    mapping: dict[str, int] = field(default_factory=dict)
    discrepancy: str | None = None
    entries_compared: int = 0

    @property
    def passed(self) -> bool:
        return self.size_ok and self.valencies_ok and self.tensor_ok


def anchor_labels(s: TripleScheme, action: Action, pred: PredictedTensor) -> dict[str, int]:
    """Scheme labels of semantic names that correspond to named points of ``action``."""
    pts = action.points
    if {"u", "v"} <= pts.keys():
        a, b = pts["u"], pts["v"]
    elif {"0", "1"} <= pts.keys():
        a, b = pts["0"], pts["1"]
    else:
        return {}
    out = {}
    for nm in pred.names:
        idx = None
        if nm == STAR and "t" in pts:
            idx = pts["t"]
        elif nm in pred.field_codes and "0" in pts:
            k = len(action.domain[a])
            idx = action.domain.index_of((pred.field_codes[nm],) + (0,) * (k - 1))
        elif nm in pts:
            idx = pts[nm]
        if idx is not None:
            out[nm] = classify_triple(s, a, b, idx)
    return out


def _first_mismatch(pred_vals, mask, comp, perm, names) -> str | None:
    sub = comp[np.ix_(perm, perm, perm, perm)]
    bad = np.argwhere((sub != pred_vals) & mask)
    if not bad.size:
        return None
    t = tuple(int(c) for c in bad[0])
    key = tuple(names[c] for c in t)
    return f"p{key}: predicted {int(pred_vals[t])}, computed {int(sub[t])}"


def match_predicted(
    s: TripleScheme,
    t: IntersectionTensor | None,
    scheme: PredictedScheme,
    tensor: PredictedTensor | None = None,
    anchors: Mapping[str, int] | None = None,
) -> MatchReport:
    """Compare a computed scheme (and tensor) with a prediction.

    For tensors, searches for a bijection from semantic names to scheme
    labels 4.. under which every in-scope entry agrees.  ``anchors`` pins
    names to labels; predicted valencies prune the candidates.
    """
    computed_vals = sorted(s.third_valency[i] for i in s.nontrivial)
    rep = MatchReport(
        size_ok=s.size == scheme.size and s.degree == scheme.degree,
        valencies_ok=computed_vals == list(scheme.valencies),
    )
    if not rep.size_ok:
        rep.discrepancy = f"size: predicted {scheme.size} on {scheme.degree} points, computed {s.size} on {s.degree}"
    elif not rep.valencies_ok:
        rep.discrepancy = f"valencies: predicted {list(scheme.valencies)}, computed {computed_vals}"
    if tensor is None or t is None:
        return rep
    rep.tensor_checked = True
    names = tensor.all_names
    if len(names) != s.size:
        rep.tensor_ok = False
        rep.discrepancy = rep.discrepancy or f"tensor has {len(names)} names for {s.size} relations"
        return rep

    pred_vals, mask = tensor.dense()
    comp = t.values
    anchors = dict(anchors or {})
    order = sorted(range(TRIVIAL, len(names)), key=lambda i: (names[i] not in anchors, i))

    def candidates(sem: int, used: set[int]) -> list[int]:
        nm = names[sem]
        if nm in anchors:
            return [anchors[nm]] if anchors[nm] not in used else []
        out = [l for l in s.nontrivial if l not in used]
        if tensor.valencies and nm in tensor.valencies:
            out = [l for l in out if s.third_valency[l] == tensor.valencies[nm]]
        return out

    assigned: list[int] = list(range(TRIVIAL))
    target: list[int] = list(range(TRIVIAL))

    def consistent() -> bool:
        a = np.array(assigned)
        sub_p = pred_vals[np.ix_(a, a, a, a)]
        sub_m = mask[np.ix_(a, a, a, a)]
        sub_c = comp[np.ix_(target, target, target, target)]
        return bool(np.all((sub_p == sub_c) | ~sub_m))

    def search(depth: int) -> bool:
        if depth == len(order):
            return True
        sem = order[depth]
        for lab in candidates(sem, set(target)):
            assigned.append(sem)
            target.append(lab)
            if consistent() and search(depth + 1):
                return True
            assigned.pop()
            target.pop()
        return False

    found = search(0)
    if found:
        perm = [0] * len(names)
        for sem, lab in zip(assigned, target):
            perm[sem] = lab
        rep.mapping = {names[i]: perm[i] for i in range(TRIVIAL, len(names))}
        rep.entries_compared = int(mask.sum())
        return rep

    rep.tensor_ok = False
    # report against the first valency- and anchor-consistent assignment
    perm = list(range(TRIVIAL))
    used: set[int] = set(perm)
    for sem in range(TRIVIAL, len(names)):
        cand = candidates(sem, used) or [l for l in s.nontrivial if l not in used]
        perm.append(cand[0])
        used.add(cand[0])
    mism = _first_mismatch(pred_vals, mask, comp, perm, names)
    rep.mapping = {names[i]: perm[i] for i in range(TRIVIAL, len(names))}
    rep.discrepancy = rep.discrepancy or (
        "no label bijection reproduces the predicted tensor"
        + (f"; e.g. {mism}" if mism else "")
    )
    return rep
