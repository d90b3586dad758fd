"""Graphs, permutations and colorings for the graph-based schemes.

A graph is an undirected simple graph held as a read-only symmetric 0/1
adjacency matrix.  A permutation ``p`` acts on a graph by relabeling vertex
``i`` as ``p[i]``, so ``apply_permutation(g, p).adj[p[i]][p[j]] == g.adj[i][j]``.
This is a left action: ``apply(g, compose(a, b)) == apply(apply(g, b), a)``.

Binary encodings (big-endian throughout):

* graph: 4-byte vertex count, then the strict upper triangle in row-major
  order, bit-packed MSB first and zero-padded to a whole byte;
* permutation / vertex list: one 4-byte entry per position;
* coloring: one (4-byte vertex, 2-byte color) pair per vertex.
"""

from __future__ import annotations

import functools
import random
import struct
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParameters,
    CoverageMismatch,
    DecodeError,
    DuplicateIndex,
    IndexOutOfRange,
    SizeMismatch,
    TooSmall,
)


class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    __slots__ = ("adj", "_key")

    def __init__(self, adj) -> None:
        a = np.array(adj, dtype=np.uint8)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise BadParameters("adjacency matrix must be square")
        if a.shape[0] < 1:
            raise BadParameters("a graph needs at least one vertex")
        if a.max(initial=0) > 1:
            raise BadParameters("adjacency entries must be 0 or 1")
        if not np.array_equal(a, a.T):
            raise BadParameters("adjacency matrix must be symmetric")
        if a.diagonal().any():
            raise BadParameters("self-loops are not allowed")
        a.flags.writeable = False
        self.adj = a
        self._key = None

    @classmethod
    def _trusted(cls, adj: np.ndarray) -> "Graph":
        # skips validation; callers guarantee symmetry and zero diagonal
        g = cls.__new__(cls)
        adj = np.ascontiguousarray(adj, dtype=np.uint8)
        adj.flags.writeable = False
        g.adj = adj
        g._key = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        a = np.zeros((n, n), dtype=np.uint8)
        for i, j in edges:
            if i == j:
                raise BadParameters("self-loops are not allowed")
            a[i, j] = a[j, i] = 1
        return cls(a)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(np.zeros((n, n), dtype=np.uint8))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(np.ones((n, n), dtype=np.uint8) - np.eye(n, dtype=np.uint8))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self.adj, 1))
        return list(zip(rows.tolist(), cols.tolist()))

    def edge_count(self) -> int:
        return int(self.adj.sum()) // 2

    def degrees(self) -> list[int]:
        return self.adj.sum(axis=1).tolist()

    def to_bytes(self) -> bytes:
        if self._key is None:
            bits = self.adj[_upper(self.n)]
            self._key = struct.pack(">I", self.n) + np.packbits(bits).tobytes()
        return self._key

    @classmethod
    def from_bytes(cls, data: bytes) -> "Graph":
        if len(data) < 4:
            raise DecodeError("graph encoding shorter than its header")
        (n,) = struct.unpack_from(">I", data)
        if n < 1:
            raise DecodeError("graph must have at least one vertex")
        nbits = n * (n - 1) // 2
        if len(data) != 4 + (nbits + 7) // 8:
            raise DecodeError("graph encoding has the wrong length")
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8, offset=4))
        if bits[nbits:].any():
            raise DecodeError("nonzero padding bits in graph encoding")
        a = np.zeros((n, n), dtype=np.uint8)
        iu = _upper(n)
        a[iu] = bits[:nbits]
        a = a | a.T
        return cls._trusted(a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj.shape == other.adj.shape and np.array_equal(self.adj, other.adj)

    def __hash__(self) -> int:
        return hash(self.to_bytes())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``0..n-1``; ``map[i]`` is the image of ``i``."""

    map: tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(int(v) for v in self.map)
        object.__setattr__(self, "map", m)
        if not m:
            raise BadParameters("a permutation needs at least one point")
        if sorted(m) != list(range(len(m))):
            raise BadParameters(f"not a permutation of 0..{len(m) - 1}: {m}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "Permutation":
        m = list(range(n))
        m[i], m[j] = m[j], m[i]
        return cls(tuple(m))

    def __len__(self) -> int:
        return len(self.map)

    def __getitem__(self, i: int) -> int:
        return self.map[i]

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.map))

    def to_bytes(self) -> bytes:
        return encode_indices(self.map)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Permutation":
        try:
            return cls(decode_indices(data))
        except BadParameters as exc:
            raise DecodeError(str(exc)) from None


@dataclass(frozen=True)
class Coloring:
    """A vertex coloring with colors ``1..k``; ``colors[v]`` colors vertex ``v``."""

    k: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))

    @classmethod
    def from_pairs(cls, k: int, pairs: Iterable[tuple[int, int]], n: int) -> "Coloring":
        """Build from ``(vertex, color)`` pairs that must cover ``0..n-1`` exactly once."""
        colors = [0] * n
        seen = [False] * n
        for v, c in pairs:
            if not 0 <= v < n:
                raise CoverageMismatch(f"vertex {v} outside 0..{n - 1}")
            if seen[v]:
                raise CoverageMismatch(f"vertex {v} colored twice")
            seen[v] = True
            colors[v] = c
        if not all(seen):
            raise CoverageMismatch("some vertices are uncolored")
        return cls(k, tuple(colors))

    @property
    def n(self) -> int:
        return len(self.colors)

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.colors))

    def to_bytes(self) -> bytes:
        return b"".join(struct.pack(">IH", v, c) for v, c in self.pairs())

    @classmethod
    def from_bytes(cls, data: bytes, k: int) -> "Coloring":
        if len(data) % 6:
            raise DecodeError("coloring encoding must be a whole number of 6-byte pairs")
        pairs = [struct.unpack_from(">IH", data, off) for off in range(0, len(data), 6)]
        try:
            return cls.from_pairs(k, pairs, len(pairs))
        except CoverageMismatch as exc:
            raise DecodeError(str(exc)) from None

    def pushforward(self, p: Permutation) -> "Coloring":
        """Coloring of ``apply_permutation(g, p)`` matching this coloring of ``g``."""
        if len(p) != self.n:
            raise SizeMismatch("permutation and coloring sizes differ")
        out = [0] * self.n
        for v, c in enumerate(self.colors):
            out[p[v]] = c
        return Coloring(self.k, tuple(out))

    def pullback(self, p: Permutation) -> "Coloring":
        """Inverse of :meth:`pushforward`: ``result[v] = self[p[v]]``."""
        if len(p) != self.n:
            raise SizeMismatch("permutation and coloring sizes differ")
        return Coloring(self.k, tuple(self.colors[p[v]] for v in range(self.n)))

    def canonical(self) -> "Coloring":
        """Rename colors to 1, 2, ... in order of first appearance."""
        rename: dict[int, int] = {}
        for c in self.colors:
            rename.setdefault(c, len(rename) + 1)
        return Coloring(self.k, tuple(rename[c] for c in self.colors))


@functools.lru_cache(maxsize=None)
def _upper(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, 1)


def _submatrix(a: np.ndarray, idx: Sequence[int]) -> np.ndarray:
    idx = np.asarray(idx)
    return a[idx[:, None], idx]


def encode_indices(values: Sequence[int]) -> bytes:
    return struct.pack(f">{len(values)}I", *values)


def decode_indices(data: bytes) -> tuple[int, ...]:
    if len(data) % 4:
        raise DecodeError("index list length must be a multiple of 4")
    return struct.unpack(f">{len(data) // 4}I", data)


def default_rng(seed: int | str | None = None) -> random.Random:
    """A seeded ``random.Random``, or the OS generator when ``seed`` is None."""
    return random.SystemRandom() if seed is None else random.Random(seed)


def _check_size(g: Graph, p: Permutation) -> None:
    if len(p) != g.n:
        raise SizeMismatch(f"permutation on {len(p)} points applied to graph on {g.n} vertices")


def apply_permutation(g: Graph, p: Permutation) -> Graph:
    _check_size(g, p)
    inv = invert(p).map
    return Graph._trusted(_submatrix(g.adj, inv))


def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """``result[i] = outer[inner[i]]``."""
    if len(outer) != len(inner):
        raise SizeMismatch("cannot compose permutations of different sizes")
    o = outer.map
    return Permutation(tuple(o[i] for i in inner.map))


def invert(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p.map):
        inv[v] = i
    return Permutation(tuple(inv))


def random_permutation(n: int, rng: random.Random) -> Permutation:
    if n < 1:
        raise BadParameters("n must be positive")
    m = list(range(n))
    rng.shuffle(m)
    return Permutation(tuple(m))


def random_graph(n: int, rng: random.Random, edge_probability: float = 0.5) -> Graph:
    if n < 1:
        raise BadParameters("n must be positive")
    if not 0.0 <= edge_probability <= 1.0:
        raise BadParameters("edge probability must lie in [0, 1]")
    iu = _upper(n)
    if edge_probability == 0.5:
        bits = _random_bits(rng, len(iu[0]))
    else:
        bits = np.array([rng.random() < edge_probability for _ in iu[0]], dtype=np.uint8)
    return Graph._trusted(_symmetric(n, iu, bits))


def _random_bits(rng: random.Random, count: int) -> np.ndarray:
    """``count`` fair coin flips as a uint8 array, from one ``getrandbits`` call."""
    if count == 0:
        return np.zeros(0, dtype=np.uint8)
    nbytes = (count + 7) // 8
    raw = rng.getrandbits(nbytes * 8).to_bytes(nbytes, "big")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8))[:count]


def _symmetric(n: int, iu, bits: np.ndarray) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.uint8)
    a[iu] = bits
    return a | a.T


def is_valid_coloring(g: Graph, col: Coloring) -> bool:
    if col.n != g.n:
        raise CoverageMismatch(f"coloring covers {col.n} vertices, graph has {g.n}")
    c = np.asarray(col.colors)
    if c.size and (c.min() < 1 or c.max() > col.k):
        return False
    same = c[:, None] == c[None, :]
    return not bool((g.adj.astype(bool) & same).any())


def even_partition(n: int, k: int) -> list[int]:
    """Split ``n`` into ``k`` positive parts whose sizes differ by at most one."""
    if not 1 <= k <= n:
        raise BadParameters(f"need 1 <= k <= n, got n={n}, k={k}")
    q, r = divmod(n, k)
    return [q + 1] * r + [q] * (k - r)


def generate_k_colorable_graph(
    n: int,
    k: int,
    rng: random.Random,
    partition: Sequence[int] | None = None,
) -> tuple[Graph, Coloring]:
    """Random graph with a planted ``k``-coloring.

    Vertices are split into ``k`` nonempty classes; class ``i`` gets color
    ``i``, no edges inside a class, each cross-class pair is an edge with
    probability 1/2.  A uniformly random relabeling is then applied to the
    graph and coloring together so the classes are not contiguous.
    """
    if partition is None:
        partition = even_partition(n, k)
    elif len(partition) != k or sum(partition) != n or min(partition) < 1:
        raise BadParameters("partition must be k positive parts summing to n")
    colors = [i + 1 for i, size in enumerate(partition) for _ in range(size)]
    iu = _upper(n)
    c = np.asarray(colors)
    cross = c[iu[0]] != c[iu[1]]
    bits = _random_bits(rng, len(iu[0])) & cross
    g = Graph._trusted(_symmetric(n, iu, bits.astype(np.uint8)))
    col = Coloring(k, tuple(colors))
    relabel = random_permutation(n, rng)
    return apply_permutation(g, relabel), col.pushforward(relabel)


def _check_embedding(host: Graph, emb: Sequence[int]) -> None:
    if not emb:
        raise BadParameters("embedding must list at least one vertex")
    for v in emb:
        if not 0 <= v < host.n:
            raise IndexOutOfRange(f"vertex {v} outside 0..{host.n - 1}")
    if len(set(emb)) != len(emb):
        raise DuplicateIndex("embedding lists a vertex more than once")


def induced_subgraph(g: Graph, emb: Sequence[int]) -> Graph:
    """``result.adj[a][b] == g.adj[emb[a]][emb[b]]``."""
    emb = tuple(emb)
    _check_embedding(g, emb)
    return Graph._trusted(_submatrix(g.adj, emb))


def embed_into_larger(g: Graph, m: int, rng: random.Random) -> tuple[Graph, tuple[int, ...]]:
    """Place ``g`` at a uniformly random injection inside a random host on ``m`` vertices.

    Pairs touching the ``m - g.n`` fresh vertices are edges with probability 1/2.
    Returns the host and the embedding ``emb`` with ``induced_subgraph(host, emb) == g``.
    """
    if m < g.n:
        raise TooSmall(f"host of {m} vertices cannot hold {g.n}")
    emb = tuple(rng.sample(range(m), g.n))
    iu = _upper(m)
    a = _symmetric(m, iu, _random_bits(rng, len(iu[0])))
    idx = np.asarray(emb)
    a[idx[:, None], idx] = g.adj
    return Graph._trusted(a), emb
