"""Vertex permutations and exact permutation-group order.

Permutations are immutable image arrays over [0, v). Group order is computed
with a deterministic Schreier-Sims stabilizer chain; orders are plain Python
integers, so they never overflow.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import gf3


class NotAPermutationError(ValueError):
    """The images do not form a bijection, or the matrix is singular."""


class Permutation:
    """Bijection on [0, degree), stored as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]) -> None:
        t = tuple(int(i) for i in images)
        n = len(t)
        seen = bytearray(n)
        for i in t:
            if not 0 <= i < n or seen[i]:
                raise NotAPermutationError("images are not a bijection on [0, v)")
            seen[i] = 1
        object.__setattr__(self, "images", t)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation(degree={self.degree})"

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [i for i, img in enumerate(self.images) if img == i]

    def to_json(self) -> list[int]:
        return list(self.images)


def identity_perm(degree: int) -> Permutation:
    return Permutation(range(degree))


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """Apply sigma first, then tau: result(i) = tau(sigma(i))."""
    if sigma.degree != tau.degree:
        raise NotAPermutationError("degree mismatch in compose")
    t = tau.images
    return Permutation([t[i] for i in sigma.images])


def inverse(sigma: Permutation) -> Permutation:
    out = [0] * sigma.degree
    for i, img in enumerate(sigma.images):
        out[img] = i
    return Permutation(out)


def is_involution(sigma: Permutation) -> bool:
    """True iff sigma is not the identity and sigma squared is."""
    imgs = sigma.images
    return any(img != i for i, img in enumerate(imgs)) and all(
        imgs[img] == i for i, img in enumerate(imgs)
    )


def perm_from_matrix(m: gf3.GF3Matrix) -> Permutation:
    """Permutation of the 3^n vertex indices realizing v -> v*M."""
    if m.rows != m.cols:
        raise NotAPermutationError("only square matrices act on the vertex set")
    if gf3.rank(m) != m.rows:
        raise NotAPermutationError("singular matrix does not permute the vectors")
    vv = gf3.all_vectors(m.rows)
    images = gf3.indices_of(vv @ m.array % 3)
    return Permutation(images.tolist())


def translation_perm(t: Sequence[int]) -> Permutation:
    """Permutation v -> v + t on the 3^n vertex indices."""
    vec = np.array(gf3._check_vector(t), dtype=np.int64)
    vv = gf3.all_vectors(len(vec))
    images = gf3.indices_of((vv + vec) % 3)
    return Permutation(images.tolist())


# ---------------------------------------------------------------------------
# Schreier-Sims stabilizer chain
# ---------------------------------------------------------------------------
#
# Raw tuples are used internally instead of Permutation objects; the
# construction is the hot path of the subgroup-order certificates.

_Tuple = tuple


def _t_compose(p: tuple, q: tuple) -> tuple:
    return tuple(q[i] for i in p)


def _t_inverse(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, img in enumerate(p):
        out[img] = i
    return tuple(out)


class StabilizerChain:
    """Deterministic stabilizer chain for a finite permutation group.

    Base points are chosen greedily as the smallest point moved by each new
    strong generator, so the chain is reproducible for a fixed generator
    order. A fixed base prefix may be supplied up front; gens_at_level(d)
    then generates exactly the pointwise stabilizer of those prefix points,
    which the automorphism search relies on for orbit pruning. Transversals
    only ever grow (existing representatives are never replaced), which
    keeps already-processed Schreier generators valid.
    """

    def __init__(self, degree: int, base: Sequence[int] = ()) -> None:
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        # strong generator i is stored once, at the deepest level it fixes
        self.strong_gens: list[tuple] = []
        self.gen_level: list[int] = []
        # transversal[i]: point -> representative u with u[base[i]] = point
        self.transversals: list[dict[int, tuple]] = []
        self._processed: list[set[tuple[int, int]]] = []
        for pt in base:
            if not 0 <= pt < degree or pt in self.base:
                raise ValueError("base points must be distinct and in range")
            self.base.append(pt)
            self.transversals.append({pt: self.identity})
            self._processed.append(set())

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        o = 1
        for tr in self.transversals:
            o *= len(tr)
        return o

    def gens_at_level(self, level: int) -> list[tuple]:
        """Strong generators of the pointwise stabilizer of base[:level]."""
        return [
            g for g, lv in zip(self.strong_gens, self.gen_level) if lv >= level
        ]

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        """Divide g through the transversals; return (residue, drop level)."""
        for lvl in range(start, len(self.base)):
            img = g[self.base[lvl]]
            rep = self.transversals[lvl].get(img)
            if rep is None:
                return g, lvl
            g = _t_compose(g, _t_inverse(rep))
        return g, len(self.base)

    def contains(self, g: tuple) -> bool:
        residue, _ = self.sift(g)
        return residue == self.identity

    # -- construction -------------------------------------------------------

    def add_generator(self, g: tuple) -> bool:
        """Sift g and, if new, extend the chain. Returns True if the group grew."""
        residue, level = self.sift(g)
        if residue == self.identity:
            return False
        if level == len(self.base):
            moved = next(i for i, img in enumerate(residue) if img != i)
            self.base.append(moved)
            self.transversals.append({moved: self.identity})
            self._processed.append(set())
        gid = len(self.strong_gens)
        self.strong_gens.append(residue)
        self.gen_level.append(level)
        self._complete_from(level)
        return True

    def _extend_orbit(self, level: int) -> None:
        """Close the orbit of base[level] under the level's generators.

        Existing transversal entries are kept as-is: replacing them would
        invalidate Schreier generators already processed against them.
        """
        tr = self.transversals[level]
        gens = self.gens_at_level(level)
        queue = list(tr.keys())
        head = 0
        while head < len(queue):
            pt = queue[head]
            head += 1
            rep = tr[pt]
            for g in gens:
                img = g[pt]
                if img not in tr:
                    tr[img] = _t_compose(rep, g)
                    queue.append(img)

    def _complete_from(self, start_level: int) -> None:
        """Process Schreier generators until every level is stable.

        Walks from the deepest level upward; a residue surfacing at a deeper
        level restarts the walk there. Processed (point, generator) pairs are
        memoized, so revisiting a level only pays for new pairs.
        """
        level = len(self.base) - 1
        while level >= 0:
            self._extend_orbit(level)
            tr = self.transversals[level]
            processed = self._processed[level]
            gens = list(enumerate(self.strong_gens))
            restart = None
            for pt in list(tr.keys()):
                rep = tr[pt]
                for gid, g in gens:
                    if self.gen_level[gid] < level:
                        continue
                    key = (pt, gid)
                    if key in processed:
                        continue
                    processed.add(key)
                    target = tr.get(g[pt])
                    if target is None:
                        # orbit grew mid-scan; redo this level
                        restart = level
                        break
                    schreier = _t_compose(_t_compose(rep, g), _t_inverse(target))
                    residue, lvl = self.sift(schreier, level + 1)
                    if residue != self.identity:
                        if lvl == len(self.base):
                            moved = next(
                                i for i, img in enumerate(residue) if img != i
                            )
                            self.base.append(moved)
                            self.transversals.append({moved: self.identity})
                            self._processed.append(set())
                        gid2 = len(self.strong_gens)
                        self.strong_gens.append(residue)
                        self.gen_level.append(lvl)
                        restart = lvl
                        break
                if restart is not None:
                    break
            if restart is not None:
                level = restart
            else:
                level -= 1


def build_chain(generators: Iterable[Permutation]) -> StabilizerChain:
    gens = list(generators)
    if not gens:
        return StabilizerChain(0)
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise NotAPermutationError("generators must share one degree")
    chain = StabilizerChain(degree)
    for g in gens:
        chain.add_generator(g.images)
    return chain


def group_order(generators: Iterable[Permutation]) -> int:
    """Exact order of the group generated by the permutations.

    The empty generating set yields the trivial group of order 1.
    """
    return build_chain(generators).order()
