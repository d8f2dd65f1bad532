"""Representations of (partially) perfect half spaces.

A representation is a tuple of mutually orthogonal nonzero integer vectors
``(h1, ..., hk)``; it denotes ``{a : (a.h1, ..., a.hk) <lex 0}``.  With
``k = d`` the set is a perfect half space, with ``k = 0`` it is empty.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .graph import ResourceCapError, gcd_all

DEFAULT_ENUMERATION_CAP = 10**6
# raw candidate vectors materialised before enumerating tuples
_CANDIDATE_CAP = 2 * 10**7
# primitive normals the depth-first search accepts; its work is quadratic in this
NORMAL_CAP = 20_000


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1 as ``a`` is lexicographically below, equal to or above ``b``."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    return 0


def _dot(a: Sequence[int], h: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, h))


@dataclass(frozen=True)
class HalfSpaceRep:
    vectors: tuple[tuple[int, ...], ...]
    dim: int

    def __post_init__(self):
        for h in self.vectors:
            if len(h) != self.dim:
                raise ValueError(f"vector {h} is not {self.dim}-dimensional")
            if not any(h):
                raise ValueError("half-space normals must be nonzero")
        for h, g in itertools.combinations(self.vectors, 2):
            if _dot(h, g) != 0:
                raise ValueError(f"normals {h} and {g} are not orthogonal")

    @classmethod
    def of(cls, *vectors: Sequence[int], dim: int | None = None) -> "HalfSpaceRep":
        vs = tuple(tuple(int(x) for x in v) for v in vectors)
        if dim is None:
            if not vs:
                raise ValueError("dim is required for the empty representation")
            dim = len(vs[0])
        return cls(vs, dim)

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def is_perfect(self) -> bool:
        return len(self.vectors) == self.dim

    @property
    def norm(self) -> int:
        return max((max(abs(x) for x in h) for h in self.vectors), default=0)

    def canonical(self) -> "HalfSpaceRep":
        return HalfSpaceRep(tuple(tuple(x // gcd_all(abs(y) for y in h) for x in h) for h in self.vectors), self.dim)

    def prefix(self, k: int) -> "HalfSpaceRep":
        return HalfSpaceRep(self.vectors[:k], self.dim)

    def is_prefix_of(self, other: "HalfSpaceRep") -> bool:
        return self.dim == other.dim and other.vectors[: len(self.vectors)] == self.vectors

    def __str__(self) -> str:
        return "(" + ";".join("(" + ",".join(map(str, h)) + ")" for h in self.vectors) + ")"


def parse_halfspace(text: str, dim: int | None = None) -> HalfSpaceRep:
    """Inverse of ``str``: ``((1,1);(-1,1))``; ``()`` is the empty one."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"bad half-space text {text!r}")
    body = s[1:-1].strip()
    if not body:
        return HalfSpaceRep.of(dim=dim)
    vecs = []
    for part in body.split(";"):
        part = part.strip()
        if not (part.startswith("(") and part.endswith(")")):
            raise ValueError(f"bad normal vector {part!r}")
        vecs.append(tuple(int(x) for x in part[1:-1].split(",")))
    return HalfSpaceRep.of(*vecs, dim=dim)


def dot_sequence(a: Sequence[int], H: HalfSpaceRep) -> tuple[int, ...]:
    if len(a) != H.dim:
        raise ValueError(f"vector of length {len(a)} against {H.dim}-dimensional half space")
    return tuple(_dot(a, h) for h in H.vectors)


def contains(H: HalfSpaceRep, a: Sequence[int]) -> bool:
    seq = dot_sequence(a, H)
    return lex_compare(seq, (0,) * len(seq)) < 0


def longest_common_prefix(Hs: Iterable[HalfSpaceRep]) -> HalfSpaceRep:
    Hs = list(Hs)
    if not Hs:
        raise ValueError("need at least one half space")
    dim = Hs[0].dim
    if any(H.dim != dim for H in Hs):
        raise ValueError("mixed dimensions")
    k = 0
    shortest = min(len(H) for H in Hs)
    while k < shortest and all(H.vectors[k] == Hs[0].vectors[k] for H in Hs):
        k += 1
    return Hs[0].prefix(k)


def flag_vector(H: HalfSpaceRep, H2: HalfSpaceRep) -> tuple[int, ...]:
    """0 where the two perfect representations share a normal, 1 elsewhere."""
    if not (H.is_perfect and H2.is_perfect) or H.dim != H2.dim:
        raise ValueError("flag vectors need two perfect half spaces of equal dimension")
    return tuple(int(h != g) for h, g in zip(H.vectors, H2.vectors))


def interleave(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if len(a) != len(b):
        raise ValueError("interleaving needs equal dimensions")
    return tuple(x for pair in zip(a, b) for x in pair)


def primitive_vectors(d: int, B: int) -> np.ndarray:
    """All primitive nonzero integer vectors of infinity norm <= B, in
    lexicographic order, as a ``(m, d)`` array."""
    if (2 * B + 1) ** d > _CANDIDATE_CAP:
        raise ResourceCapError(
            f"{(2 * B + 1) ** d} candidate normals for d={d}, B={B}; lower the norm bound"
        )
    grid = np.array(list(itertools.product(range(-B, B + 1), repeat=d)), dtype=np.int64)
    g = np.gcd.reduce(np.abs(grid), axis=1)
    return grid[g == 1]


def negative_orthant_filter(H: HalfSpaceRep) -> bool:
    """True iff ``H`` contains every negative unit vector -e_i."""
    for i in range(H.dim):
        for h in H.vectors:
            if h[i]:
                if h[i] < 0:
                    return False
                break
    return True


def enumerate_perfect_half_spaces(
    d: int,
    B: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    keep: Callable[[HalfSpaceRep], bool] | None = None,
) -> list[HalfSpaceRep]:
    """Every perfect half space with primitive normals of norm <= B.

    Depth-first over tuple positions, candidates in lexicographic order.
    ``keep`` optionally restricts the result; the cap counts kept entries.
    """
    if d < 1 or B < 1:
        raise ValueError("need d >= 1 and B >= 1")
    cand = primitive_vectors(d, B)
    if d > 1 and len(cand) > NORMAL_CAP:
        raise ResourceCapError(
            f"{len(cand)} primitive normals for d={d}, B={B} (limit {NORMAL_CAP}); lower the norm bound"
        )
    out: list[HalfSpaceRep] = []

    def rec(prefix: list[np.ndarray], pool: np.ndarray):
        if len(prefix) == d:
            H = HalfSpaceRep(tuple(tuple(int(x) for x in h) for h in prefix), d)
            if keep is None or keep(H):
                out.append(H)
                if len(out) > cap:
                    raise ResourceCapError(
                        f"more than {cap} perfect half spaces for d={d}, B={B}; lower the norm bound"
                    )
            return
        for h in pool:
            rest = pool[pool @ h == 0]
            rec(prefix + [h], rest)

    rec([], cand)
    return out
