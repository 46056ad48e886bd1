"""The graph type and every graph construction in the pipeline.

Graphs are dense, symmetric, loop-free bit matrices over an indexed vertex
set. Adjacency is held as a read-only numpy boolean matrix with bitset rows
(Python integers) cached for popcount-style kernels.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import gf3
from .permgroup import Permutation, is_involution


class SwitchingInapplicableError(ValueError):
    """A dual Seidel switching precondition failed; the message names it."""


class Graph6ParseError(ValueError):
    """Malformed graph6 input; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class Graph:
    """Immutable simple graph on vertices 0..v-1."""

    __slots__ = ("_adj", "_bitrows", "label")

    def __init__(self, adjacency: np.ndarray, label: str = "") -> None:
        a = np.asarray(adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if a.diagonal().any():
            raise ValueError("adjacency has a loop")
        if not (a == a.T).all():
            raise ValueError("adjacency is not symmetric")
        a = a.copy()
        a.setflags(write=False)
        self._adj = a
        self._bitrows: tuple[int, ...] | None = None
        self.label = label

    # -- basic queries -------------------------------------------------------

    @property
    def v(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        return self._adj

    def int_adjacency(self) -> np.ndarray:
        """Adjacency as a fresh int64 0/1 matrix for exact products."""
        return self._adj.astype(np.int64)

    def bitrows(self) -> tuple[int, ...]:
        """Row bitsets: bit w of row u is set iff u ~ w."""
        if self._bitrows is None:
            rows = []
            # pack little-endian so bit w corresponds to vertex w
            for u in range(self.v):
                bits = np.flatnonzero(self._adj[u])
                acc = 0
                for w in bits:
                    acc |= 1 << int(w)
                rows.append(acc)
            self._bitrows = tuple(rows)
        return self._bitrows

    def has_edge(self, u: int, w: int) -> bool:
        return bool(self._adj[u, w])

    def neighbors(self, u: int) -> list[int]:
        return np.flatnonzero(self._adj[u]).tolist()

    def degree_sequence(self) -> list[int]:
        return self._adj.sum(axis=1).astype(int).tolist()

    def is_regular(self) -> bool:
        degs = self._adj.sum(axis=1)
        return bool((degs == degs[0]).all()) if self.v else True

    def degree(self) -> int:
        """Common degree of a regular graph."""
        if not self.is_regular():
            raise ValueError("graph is not regular")
        return int(self._adj[0].sum()) if self.v else 0

    def edge_count(self) -> int:
        return int(self._adj.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        us, ws = np.nonzero(np.triu(self._adj, 1))
        return list(zip(us.tolist(), ws.tolist()))

    def relabel(self, label: str) -> "Graph":
        """Same graph with a different provenance label; adjacency is shared."""
        g = Graph.__new__(Graph)
        g._adj = self._adj
        g._bitrows = self._bitrows
        g.label = label
        return g

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.v == other.v
            and bool((self._adj == other._adj).all())
        )

    def __hash__(self) -> int:
        return hash((self.v, self._adj.tobytes()))

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"Graph(v={self.v}, edges={self.edge_count()}{name})"


def from_edges(v: int, edges: Iterable[tuple[int, int]], label: str = "") -> Graph:
    a = np.zeros((v, v), dtype=bool)
    for u, w in edges:
        if u == w:
            raise ValueError("loops are not allowed")
        if not (0 <= u < v and 0 <= w < v):
            raise ValueError(f"edge ({u}, {w}) is out of range for {v} vertices")
        a[u, w] = a[w, u] = True
    return Graph(a, label)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def cayley(n: int, s: gf3.ConnectionSet, label: str = "") -> Graph:
    """Cayley graph of (V(n,3), +) with connection set s.

    Vertices are the canonical ternary indices; i ~ j iff vector(i) -
    vector(j) lies in s. The result is |s|-regular.
    """
    if s.dimension != n:
        raise gf3.InvalidConnectionSetError(
            f"connection set dimension {s.dimension} != {n}"
        )
    v = 3**n
    vv = gf3.all_vectors(n)
    a = np.zeros((v, v), dtype=bool)
    rows = np.arange(v)
    for vec in s:
        cols = gf3.indices_of((vv + np.array(vec, dtype=np.int64)) % 3)
        a[rows, cols] = True
    return Graph(a, label)


def complement(g: Graph) -> Graph:
    a = ~g.adjacency
    np.fill_diagonal(a, False)
    return Graph(a, f"complement({g.label})" if g.label else "")


def strong_product_K2(g: Graph, label: str = "") -> Graph:
    """Strong product with a single edge: each vertex is doubled.

    Vertex (u, copy) has index 2u + copy; (u,i) ~ (w,j) iff u = w and i != j,
    or u ~ w. A k-regular input yields a (2k+1)-regular product.
    """
    v = g.v
    a = np.zeros((2 * v, 2 * v), dtype=bool)
    src = g.adjacency
    for i in (0, 1):
        for j in (0, 1):
            a[i::2, j::2] = src
    idx = np.arange(v)
    a[2 * idx, 2 * idx + 1] = True
    a[2 * idx + 1, 2 * idx] = True
    return Graph(a, label)


def is_automorphism(g: Graph, sigma: Permutation) -> bool:
    """True iff sigma preserves adjacency, checked by a full matrix compare."""
    if sigma.degree != g.v:
        raise ValueError(f"permutation degree {sigma.degree} != v = {g.v}")
    p = np.fromiter(sigma.images, dtype=np.int64, count=g.v)
    return bool((g.adjacency[np.ix_(p, p)] == g.adjacency).all())


def classify_involution_pairs(g: Graph, sigma: Permutation) -> dict[str, int]:
    """Counts of fixed points and 2-cycles of an involutive automorphism.

    Each 2-cycle {u, sigma(u)} is classified by whether its endpoints are
    adjacent. fixed + 2*(adjacent_swaps + nonadjacent_swaps) = v.
    """
    if not is_involution(sigma):
        raise ValueError("sigma is not an involution")
    if not is_automorphism(g, sigma):
        raise ValueError("sigma is not an automorphism of the graph")
    fixed = adjacent = nonadjacent = 0
    for u, img in enumerate(sigma.images):
        if img == u:
            fixed += 1
        elif img > u:
            if g.has_edge(u, img):
                adjacent += 1
            else:
                nonadjacent += 1
    return {
        "fixed": fixed,
        "adjacent_swaps": adjacent,
        "nonadjacent_swaps": nonadjacent,
    }


def _srg_parameters(g: Graph) -> tuple[int, int, int, int] | None:
    """(v,k,lambda,mu) if g is strongly regular with 0 < k < v-1, else None."""
    if g.v < 3 or not g.is_regular():
        return None
    k = g.degree()
    if not 0 < k < g.v - 1:
        return None
    a = g.int_adjacency()
    n2 = a @ a
    off = ~np.eye(g.v, dtype=bool)
    lam_vals = np.unique(n2[g.adjacency])
    mu_vals = np.unique(n2[off & ~g.adjacency])
    if len(lam_vals) != 1 or len(mu_vals) != 1:
        return None
    return g.v, k, int(lam_vals[0]), int(mu_vals[0])


def dual_seidel_switch(g: Graph, sigma: Permutation, label: str = "") -> Graph:
    """Replace the adjacency matrix M by PM for the involution sigma.

    Preconditions checked here, in order:
      * sigma is a non-identity involution,
      * sigma is an automorphism of g,
      * sigma interchanges only non-adjacent vertices (no adjacent swaps;
        this is exactly what keeps PM loop-free),
      * if g is strongly regular with parameters (v,k,lambda,mu), then
        k != mu and lambda != mu (otherwise the switch cannot produce a
        two-valued common-neighbour structure distinct from the input).

    The strong-regularity test is conditional because the switch is also
    applied to graphs that are already Deza but not strongly regular; for
    those inputs the structural preconditions above are the meaningful ones.

    The result is computed as PM and cross-checked row by row against the
    neighbourhood formula: the switched neighbourhood of u is the original
    neighbourhood of sigma(u) (of u itself when fixed).
    """
    if sigma.degree != g.v:
        raise SwitchingInapplicableError("permutation degree does not match graph")
    if not is_involution(sigma):
        raise SwitchingInapplicableError("sigma is not a non-identity involution")
    if not is_automorphism(g, sigma):
        raise SwitchingInapplicableError("sigma is not an automorphism")
    counts = classify_involution_pairs(g, sigma)
    if counts["adjacent_swaps"]:
        raise SwitchingInapplicableError(
            f"sigma swaps {counts['adjacent_swaps']} adjacent pairs; "
            "only non-adjacent interchanges are allowed"
        )
    params = _srg_parameters(g)
    if params is not None:
        _, k, lam, mu = params
        if k == mu:
            raise SwitchingInapplicableError(
                f"strongly regular input has k = mu = {k}"
            )
        if lam == mu:
            raise SwitchingInapplicableError(
                f"strongly regular input has lambda = mu = {mu}"
            )
    p = np.fromiter(sigma.images, dtype=np.int64, count=g.v)
    switched = g.adjacency[p]
    result = Graph(switched, label)
    # independent formulation: neighbourhoods are pulled back through sigma
    for u in range(g.v):
        expected = g.adjacency[sigma(u)]
        if not (result.adjacency[u] == expected).all():
            raise AssertionError("switched rows disagree with the neighbourhood formula")
    return result


def lift_involution_to_product(sigma: Permutation) -> Permutation:
    """Lift an involution on v points to the doubled vertex set of g[K2].

    The copy-preserving lift (u, i) -> (sigma(u), i) is used. The
    copy-swapping alternative (u, i) -> (sigma(u), 1-i) is not an admissible
    switching involution: on every fixed vertex of sigma it would swap the
    two adjacent clones.
    """
    images = [0] * (2 * sigma.degree)
    for u, img in enumerate(sigma.images):
        images[2 * u] = 2 * img
        images[2 * u + 1] = 2 * img + 1
    return Permutation(images)


# ---------------------------------------------------------------------------
# graph6 and edge-list serialization
# ---------------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    """Encode in graph6 format; the 4-byte extended header covers v > 62."""
    v = g.v
    if v > 258047:
        raise ValueError("graph6 long form beyond 258047 vertices is not supported")
    if v <= 62:
        head = chr(v + 63)
    else:
        head = "~" + "".join(
            chr(((v >> shift) & 0x3F) + 63) for shift in (12, 6, 0)
        )
    bits = []
    adj = g.adjacency
    for col in range(1, v):
        bits.extend(adj[row, col] for row in range(col))
    out = []
    for i in range(0, len(bits), 6):
        chunk = bits[i : i + 6]
        val = 0
        for b in chunk:
            val = (val << 1) | int(b)
        val <<= 6 - len(chunk)
        out.append(chr(val + 63))
    return head + "".join(out)


def from_graph6(text: str, label: str = "") -> Graph:
    """Decode a graph6 line; raises Graph6ParseError with a byte offset."""
    s = text.strip()
    if not s:
        raise Graph6ParseError("empty graph6 input", 0)
    pos = 0
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise Graph6ParseError("graph6 long form is not supported", 1)
        if len(s) < 4:
            raise Graph6ParseError("truncated extended vertex count", len(s))
        v = 0
        for pos in range(1, 4):
            c = ord(s[pos]) - 63
            if not 0 <= c < 64:
                raise Graph6ParseError(f"invalid sixbit byte {s[pos]!r}", pos)
            v = (v << 6) | c
        pos = 4
    else:
        v = ord(s[0]) - 63
        if not 0 <= v <= 62:
            raise Graph6ParseError(f"invalid vertex-count byte {s[0]!r}", 0)
        pos = 1
    nbits = v * (v - 1) // 2
    need = (nbits + 5) // 6
    if len(s) - pos != need:
        raise Graph6ParseError(
            f"expected {need} payload bytes for {v} vertices, got {len(s) - pos}",
            pos,
        )
    bits: list[int] = []
    for i in range(need):
        c = ord(s[pos + i]) - 63
        if not 0 <= c < 64:
            raise Graph6ParseError(f"invalid sixbit byte {s[pos + i]!r}", pos + i)
        bits.extend((c >> shift) & 1 for shift in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise Graph6ParseError("nonzero padding bits", pos + need - 1)
    a = np.zeros((v, v), dtype=bool)
    at = 0
    for col in range(1, v):
        for row in range(col):
            if bits[at]:
                a[row, col] = a[col, row] = True
            at += 1
    return Graph(a, label)


def to_edge_list(g: Graph) -> str:
    """Zero-based 'u w' lines, one edge per line, lexicographic order."""
    return "\n".join(f"{u} {w}" for u, w in g.edges()) + ("\n" if g.edge_count() else "")


def from_edge_list(text: str, v: int | None = None, label: str = "") -> Graph:
    """Parse 'u w' lines; vertex count defaults to max index + 1."""
    edges = []
    top = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u w', got {line!r}")
        u, w = int(parts[0]), int(parts[1])
        edges.append((u, w))
        top = max(top, u, w)
    n = v if v is not None else top + 1
    return from_edges(n, edges, label)
