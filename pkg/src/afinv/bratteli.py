"""Bratteli diagrams given by a finite prefix of incidence matrices.

Vertex levels are numbered from the root: level 0 is the single root vertex,
level 1 is fed by the root edges (multiplicities ``root``), and incidence
matrix ``levels[k]`` joins vertex level ``k+1`` to ``k+2``.  Entry ``(r, s)``
counts the edges from vertex ``r`` to vertex ``s`` on the next level, so
dimension vectors obey ``dim_{k+1} = M^T dim_k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, DomainError, NotPrimitiveError, RangeError
from .exactnum import IntMatrix, as_matrix, is_primitive
from .jacobiperron import JPExpansion, jp_block


@dataclass(frozen=True)
class BratteliDiagram:
    levels: tuple  # IntMatrix per level
    root: tuple  # edge multiplicities from the root into vertex level 1
    tail: tuple | None = None  # declared periodic continuation of the levels
    terminal: bool = False  # the last level ends the diagram
    labels: tuple | None = None

    def __post_init__(self):
        levels = tuple(as_matrix(m) for m in self.levels)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "root", tuple(int(x) for x in self.root))
        if self.tail is not None:
            object.__setattr__(self, "tail", tuple(as_matrix(m) for m in self.tail))
        chain = list(levels) + list(self.tail or ())
        sizes = [len(self.root)]
        for m in chain:
            if m.nrows != sizes[-1]:
                raise DimensionError(f"level of shape {m.shape} does not fit {sizes[-1]} vertices")
            sizes.append(m.ncols)
        if self.tail and self.tail[-1].ncols != self.tail[0].nrows:
            raise DimensionError("periodic tail does not close up")
        if any(x <= 0 for x in self.root):
            raise DomainError("every level-1 vertex needs a root edge")
        for m in chain:
            if not m.is_nonnegative():
                raise DomainError("incidence matrices must be nonnegative")
            if any(not any(r) for r in m.rows) or any(not any(c) for c in m.columns()):
                raise DomainError("every vertex must have incoming and outgoing edges")

    @property
    def depth(self) -> int:
        return len(self.levels)

    def sizes(self) -> list[int]:
        return [1, len(self.root)] + [m.ncols for m in self.levels]

    def extended(self, count: int) -> tuple:
        """The first ``count`` levels, continuing through the declared tail."""
        out = list(self.levels[:count])
        if self.tail:
            while len(out) < count:
                out.extend(self.tail)
        return tuple(out[:count])


def stationary_diagram(A, depth: int) -> BratteliDiagram:
    A = as_matrix(A)
    A._need_square()
    if not A.is_nonnegative() or not is_primitive(A):
        raise NotPrimitiveError("stationary diagrams need a primitive nonnegative matrix")
    if depth < 1:
        raise RangeError("depth must be at least 1")
    return BratteliDiagram((A,) * depth, (1,) * A.nrows, (A,))


def diagram_from_jp(e: JPExpansion) -> BratteliDiagram:
    if not e.digits:
        raise DomainError("expansion has no digits")
    levels = tuple(jp_block(b) for b in e.digits)
    tail = tuple(jp_block(b) for b in e.period) if e.periodic else None
    return BratteliDiagram(levels, (1,) * e.dimension, tail, e.terminating)


def _product(mats) -> IntMatrix:
    mats = list(mats)
    out = mats[0]
    for m in mats[1:]:
        out = out @ m
    return out


def telescope(d: BratteliDiagram, cut_points: Sequence[int]) -> BratteliDiagram:
    """Keep only the vertex levels in ``cut_points`` (each between 1 and depth + 1).

    Incidence matrices between kept levels are multiplied out; the root
    edges into the first kept level become the dimension vector there.
    The declared tail is dropped because the cut pattern need not be periodic.
    """
    cuts = list(cut_points)
    last = d.depth + 1
    if not cuts or any(c < 1 or c > last for c in cuts) or any(a >= b for a, b in zip(cuts, cuts[1:])):
        raise RangeError(f"cut points must increase strictly within 1..{last}")
    root = tuple(dimension_vector(d, cuts[0]))
    levels = tuple(_product(d.levels[a - 1:b - 1]) for a, b in zip(cuts, cuts[1:]))
    terminal = d.terminal and cuts[-1] == last
    if not levels:
        raise RangeError("telescoping needs at least two cut points")
    return BratteliDiagram(levels, root, None, terminal)


def dimension_vector(d: BratteliDiagram, level: int) -> list[int]:
    """Path counts from the root to each vertex of a vertex level."""
    if level < 0:
        raise RangeError("level must be nonnegative")
    if level == 0:
        return [1]
    mats = d.extended(level - 1)
    if len(mats) < level - 1:
        raise RangeError(f"level {level} lies beyond the generated prefix")
    v = list(d.root)
    for m in mats:
        v = m.T @ v
    return v


@dataclass(frozen=True)
class TailWitness:
    drop1: int
    drop2: int
    overlap: int
    permutations: tuple | None = None  # vertex relabelings per compared level, if used


def _perm_matrix_apply(m: IntMatrix, p_in: tuple, p_out: tuple) -> IntMatrix:
    # relabel vertex r of the upper level as p_in[r] and s of the lower one as p_out[s]
    rows = [[0] * m.ncols for _ in range(m.nrows)]
    for r in range(m.nrows):
        for s in range(m.ncols):
            rows[p_in[r]][p_out[s]] = m[r, s]
    return IntMatrix(tuple(map(tuple, rows)))


def _chain_permutations(seq1, seq2) -> tuple | None:
    """Vertex relabelings making two level sequences literally equal, if any."""
    if any(a.shape != b.shape for a, b in zip(seq1, seq2)):
        return None

    def extend(k, chain):
        if k == len(seq1):
            return chain
        p_in = chain[-1]
        for p_out in itertools.permutations(range(seq1[k].ncols)):
            if _perm_matrix_apply(seq1[k], p_in, p_out) == seq2[k]:
                found = extend(k + 1, chain + (p_out,))
                if found is not None:
                    return found
        return None

    for p0 in itertools.permutations(range(seq1[0].nrows)):
        found = extend(0, (p0,))
        if found is not None:
            return found
    return None


def tail_equivalent_bounded(
    d1: BratteliDiagram, d2: BratteliDiagram, depth: int, permutation_tolerant: bool = False
) -> TailWitness | None:
    """Search prefix drops ``p1, p2 <= depth`` after which the level sequences agree.

    Both diagrams are compared over ``2 * depth`` levels (extended through
    declared tails).  A returned witness is always a genuine agreement of the
    compared levels; ``None`` means no witness within the bound.
    """
    s1, s2 = d1.extended(2 * depth), d2.extended(2 * depth)
    candidates = sorted(
        ((p1, p2) for p1 in range(depth + 1) for p2 in range(depth + 1)), key=lambda p: (p[0] + p[1], p[0])
    )
    for p1, p2 in candidates:
        overlap = min(len(s1) - p1, len(s2) - p2)
        if overlap < 1:
            continue
        a, b = s1[p1:p1 + overlap], s2[p2:p2 + overlap]
        if a == b:
            return TailWitness(p1, p2, overlap)
        if permutation_tolerant:
            perms = _chain_permutations(a, b)
            if perms is not None:
                return TailWitness(p1, p2, overlap, perms)
    return None


def dot_export(d: BratteliDiagram) -> str:
    """Graphviz DOT text with nodes ``v{level}_{index}`` and multiplicity labels."""
    sizes = d.sizes()
    out = ["digraph bratteli {", "  rankdir=TB;", '  node [shape=point, width=0.08];']
    for level, size in enumerate(sizes):
        names = " ".join(f"v{level}_{i};" for i in range(size))
        out.append(f"  {{ rank=same; {names} }}")
    for i, mult in enumerate(d.root):
        out.append(f'  v0_0 -> v1_{i} [label="{mult}"];')
    for k, m in enumerate(d.levels):
        for r in range(m.nrows):
            for s in range(m.ncols):
                if m[r, s]:
                    out.append(f'  v{k + 1}_{r} -> v{k + 2}_{s} [label="{m[r, s]}"];')
    out.append("}")
    return "\n".join(out) + "\n"
