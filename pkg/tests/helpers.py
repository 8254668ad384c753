"""Cached builders shared by the test modules."""

from __future__ import annotations

from functools import lru_cache

from trischeme.actions import (
    build_agl_h,
    build_pgu3,
    build_projective,
    build_psu3,
    build_sp2k2,
    build_sym_alt,
    load_sporadic,
)
from trischeme.scheme import build_scheme, intersection_tensor

BUILDERS = {
    "S5": lambda: build_sym_alt(5),
    "A5": lambda: build_sym_alt(5, True),
    "A4": lambda: build_sym_alt(4, True),
    "S4": lambda: build_sym_alt(4),
    "AGL(1,4)": lambda: build_agl_h(1, 2, 2),
    "AGL(1,5)": lambda: build_agl_h(1, 5),
    "AGL(1,7)": lambda: build_agl_h(1, 7),
    "AGL(1,8)": lambda: build_agl_h(1, 2, 3),
    "AGL(1,9)": lambda: build_agl_h(1, 3, 2),
    "AGL(1,11)": lambda: build_agl_h(1, 11),
    "AGammaL(1,8)": lambda: build_agl_h(1, 2, 3, 1),
    "AGammaL(1,9)": lambda: build_agl_h(1, 3, 2, 1),
    "AGL_H(1,16;1)": lambda: build_agl_h(1, 2, 4, 1),
    "AGL_H(1,16;2)": lambda: build_agl_h(1, 2, 4, 2),
    "AGL_H(1,16;4)": lambda: build_agl_h(1, 2, 4, 4),
    "AGL(2,3)": lambda: build_agl_h(2, 3),
    "AGammaL(2,4)": lambda: build_agl_h(2, 2, 2, 1),
    "Sp(4,2)+": lambda: build_sp2k2(2, "+"),
    "Sp(4,2)-": lambda: build_sp2k2(2, "-"),
    "Sp(6,2)+": lambda: build_sp2k2(3, "+"),
    "Sp(6,2)-": lambda: build_sp2k2(3, "-"),
    "PGU(3,2)": lambda: build_pgu3(2),
    "PSU(3,2)": lambda: build_psu3(2),
    "PGU(3,3)": lambda: build_pgu3(3),
}
for _q in (3, 4, 5, 7, 8, 9, 11, 13):
    BUILDERS[f"PGL(2,{_q})"] = lambda q=_q: build_projective(2, q, "PGL")
for _q in (4, 5, 7, 9, 11, 13):
    BUILDERS[f"PSL(2,{_q})"] = lambda q=_q: build_projective(2, q, "PSL")
for _k, _n in ((3, 2), (3, 3), (4, 2)):
    BUILDERS[f"PGL({_k},{_n})"] = lambda k=_k, n=_n: build_projective(k, n, "PGL")
    BUILDERS[f"PSL({_k},{_n})"] = lambda k=_k, n=_n: build_projective(k, n, "PSL")

SPORADIC = [
    "M(11)", "M(11) deg 12", "M(12)", "M(22)", "M(23)", "M(24)",
    "PSL(2,11) deg 11", "A7 deg 15", "HS", "Co3",
]

# small enough for every brute-force path
SMALL = ["S5", "A5", "A4", "AGL(1,5)", "AGL(1,7)", "AGL(1,8)", "AGammaL(1,8)", "AGL(2,3)",
         "PGL(2,5)", "PGL(2,7)", "PSL(2,9)", "PSL(2,7)", "PGL(3,2)", "Sp(4,2)-", "PSU(3,2)"]


@lru_cache(maxsize=None)
def action(name: str):
    if name in SPORADIC:
        return load_sporadic(name)
    return BUILDERS[name]()


@lru_cache(maxsize=None)
def scheme(name: str):
    return build_scheme(action(name).group)


@lru_cache(maxsize=None)
def tensor(name: str):
    return intersection_tensor(scheme(name))
