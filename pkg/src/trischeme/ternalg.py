"""Ternary algebra of adjacency hypermatrices.

The ternary product of three cubic hypermatrices is

    D[x, y, z] = sum_w A[w, y, z] * B[x, w, z] * C[x, y, w]

and the adjacency hypermatrices of a scheme span an algebra under it whose
structure constants are the intersection numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .scheme import IntersectionTensor, TripleScheme, label_cube


def ternary_product(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    a, b, c = (np.asarray(m) for m in (a, b, c))
    shapes = {a.shape, b.shape, c.shape}
    if len(shapes) != 1 or a.ndim != 3 or len(set(a.shape)) != 1:
        raise ValueError(f"need three cubic hypermatrices of equal size, got {[m.shape for m in (a, b, c)]}")
    return np.einsum("wyz,xwz,xyw->xyz", a, b, c, optimize=True)


def adjacency(s: TripleScheme, cap: int = 64) -> np.ndarray:
    """Stack of 0/1 adjacency hypermatrices, indexed ``[label, x, y, z]``."""
    cube = label_cube(s, cap=cap)
    return (cube[None, ...] == np.arange(s.size)[:, None, None, None]).astype(np.int64)


@dataclass
class StructureReport:
    checked: int = 0
    failures: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures


def verify_structure_constants(
    s: TripleScheme, t: IntersectionTensor, cap: int = 64
) -> StructureReport:
    """Check ``A_i A_j A_k == sum_l p_ijk^l A_l`` for every label triple."""
    adj = adjacency(s, cap=cap)
    if t.values.shape[0] != s.size:
        raise ValueError("tensor and scheme have different relation counts")
    rep = StructureReport()
    for i in s.labels:
        for j in s.labels:
            for k in s.labels:
                lhs = ternary_product(adj[i], adj[j], adj[k])
                rhs = np.tensordot(t.values[i, j, k], adj, axes=1)
                rep.checked += 1
                if not np.array_equal(lhs, rhs):
                    rep.failures.append((i, j, k))
    return rep
