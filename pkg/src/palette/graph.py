"""Incremental simple-graph state shared by the online games and the oracles.

Vertices and edges are dense 0-based integer ids.  Vertices come into
existence the first time an edge mentions them; edge ids are assigned in
reveal order, which is what the isolation test and the charging machinery
rely on.  Colors are the integers ``1..k`` and sets of colors are stored as
bitmasks (bit ``c-1`` set means color ``c`` is present).
"""

from __future__ import annotations


class GraphError(ValueError):
    """Structural problem: self-loop, duplicate edge, bad id, wrong shape."""


# ---------------------------------------------------------------------------
# color bitmask helpers

def full_mask(k: int) -> int:
    """Bitmask of all colors 1..k."""
    return (1 << k) - 1


def color_bit(c: int) -> int:
    return 1 << (c - 1)


def mask_to_colors(mask: int) -> frozenset[int]:
    out = []
    c = 1
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return frozenset(out)


def lowest_free_color(used: int, k: int) -> int | None:
    """Smallest color in 1..k absent from the ``used`` mask, or None."""
    free = ~used & full_mask(k)
    if not free:
        return None
    return (free & -free).bit_length()


class Graph:
    """Simple undirected graph built one edge at a time."""

    __slots__ = ("edges", "incident", "_seen")

    def __init__(self):
        self.edges: list[tuple[int, int]] = []
        self.incident: list[list[int]] = []  # vertex -> incident edge ids
        self._seen: set[tuple[int, int]] = set()

    @property
    def num_vertices(self) -> int:
        return len(self.incident)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def add_edge(self, u: int, v: int) -> int:
        """Add edge (u, v), creating vertices as needed; returns its id."""
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if u < 0 or v < 0:
            raise GraphError(f"negative vertex id in ({u}, {v})")
        key = (u, v) if u < v else (v, u)
        if key in self._seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        self._seen.add(key)
        hi = max(u, v)
        while len(self.incident) <= hi:
            self.incident.append([])
        eid = len(self.edges)
        self.edges.append((u, v))
        self.incident[u].append(eid)
        self.incident[v].append(eid)
        return eid

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._seen

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self.edges[eid]

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def other_end(self, eid: int, v: int) -> int:
        u, w = self.edges[eid]
        return w if v == u else u

    def is_isolated_at_reveal(self, eid: int) -> bool:
        """True iff no edge incident to eid's endpoints was revealed earlier.

        Edge ids grow in reveal order, so "earlier" means a smaller id.
        Rejected edges count: they are part of the structure.
        """
        u, v = self.edges[eid]
        return all(f >= eid for f in self.incident[u]) and all(
            f >= eid for f in self.incident[v]
        )

    def adjacent_edges(self, eid: int):
        """Edge ids sharing an endpoint with eid."""
        u, v = self.edges[eid]
        for f in self.incident[u]:
            if f != eid:
                yield f
        for f in self.incident[v]:
            if f != eid:
                yield f

    def components(self) -> list[list[int]]:
        """Connected components as lists of vertex ids (isolated ones too)."""
        seen = [False] * self.num_vertices
        comps = []
        for start in range(self.num_vertices):
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            stack = [start]
            while stack:
                x = stack.pop()
                for f in self.incident[x]:
                    y = self.other_end(f, x)
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def is_forest(self) -> bool:
        return self.num_edges + len(self.components()) == self.num_vertices

    def is_tree(self) -> bool:
        return self.num_edges + 1 == self.num_vertices and len(self.components()) == 1

    def classify(self) -> str:
        """Shape of the final graph: 'path', 'star', 'tree' or 'other'.

        A path wins over a star for the ambiguous sizes (one or two edges);
        'tree' is any other connected acyclic graph.  A star's size is its
        edge count.
        """
        if self.num_edges == 0:
            return "other"
        if not self.is_tree():
            return "other"
        degs = [self.degree(v) for v in range(self.num_vertices)]
        if max(degs) <= 2:
            return "path"
        if max(degs) == self.num_edges:
            return "star"
        return "tree"


REJECTED = -1  # stored in place of a color for rejected edges


class PartialColoring:
    """Per-edge decisions plus the per-vertex used-color masks.

    Every edge is pending until `color` or `reject` records its fate.
    Coloring enforces properness: the color must be absent at both
    endpoints at the time of the call.
    """

    __slots__ = ("k", "state", "_used")

    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        self.k = k
        self.state: dict[int, int] = {}  # eid -> color or REJECTED
        self._used: dict[int, int] = {}  # vertex -> color bitmask

    def used_mask(self, v: int) -> int:
        return self._used.get(v, 0)

    def colors_at(self, v: int) -> frozenset[int]:
        """Colors on colored edges incident to v (rejected edges excluded)."""
        return mask_to_colors(self.used_mask(v))

    def available_mask(self, g: Graph, eid: int) -> int:
        u, v = g.endpoints(eid)
        return ~(self.used_mask(u) | self.used_mask(v)) & full_mask(self.k)

    def decision(self, eid: int) -> int | None:
        """Color for colored edges, None for rejected; KeyError if pending."""
        c = self.state[eid]
        return None if c == REJECTED else c

    def is_pending(self, eid: int) -> bool:
        return eid not in self.state

    def color(self, g: Graph, eid: int, c: int) -> None:
        if not 1 <= c <= self.k:
            raise GraphError(f"color {c} outside 1..{self.k}")
        if eid in self.state:
            raise GraphError(f"edge {eid} already decided")
        u, v = g.endpoints(eid)
        bit = color_bit(c)
        if (self.used_mask(u) | self.used_mask(v)) & bit:
            raise GraphError(
                f"color {c} already used at an endpoint of edge {eid}"
            )
        self.state[eid] = c
        self._used[u] = self.used_mask(u) | bit
        self._used[v] = self.used_mask(v) | bit

    def reject(self, eid: int) -> None:
        if eid in self.state:
            raise GraphError(f"edge {eid} already decided")
        self.state[eid] = REJECTED

    @property
    def colored_count(self) -> int:
        return sum(1 for c in self.state.values() if c != REJECTED)

    @property
    def rejected_count(self) -> int:
        return sum(1 for c in self.state.values() if c == REJECTED)

    def colored_edges(self) -> list[int]:
        return [e for e, c in self.state.items() if c != REJECTED]

    def is_proper(self, g: Graph) -> bool:
        """Recheck properness edge by edge, ignoring the cached masks."""
        for eid, c in self.state.items():
            if c == REJECTED:
                continue
            for f in g.adjacent_edges(eid):
                if self.state.get(f, REJECTED) == c:
                    return False
        return True

    def recompute_used_mask(self, g: Graph, v: int) -> int:
        """From-scratch recomputation of used_mask(v), for coherence checks."""
        mask = 0
        for eid in g.incident[v]:
            c = self.state.get(eid, REJECTED)
            if c != REJECTED:
                mask |= color_bit(c)
        return mask


def colors_at(coloring: PartialColoring, g: Graph, v: int) -> frozenset[int]:
    """Colors used on colored edges incident to v."""
    if v < 0 or v >= g.num_vertices:
        raise GraphError(f"unknown vertex {v}")
    return coloring.colors_at(v)


def build_graph(edges) -> Graph:
    g = Graph()
    for u, v in edges:
        g.add_edge(u, v)
    return g


def path_positions(edges: list[tuple[int, int]]) -> list[int]:
    """Map each edge of a path to its position 1..m along the path.

    ``edges`` may list the path's edges in any order; the result is indexed
    like ``edges``.  One endpoint of the path is anchored at position 1 (the
    end with the smaller vertex id, for determinism).  Raises GraphError when
    the edges do not form a single path.
    """
    g = build_graph(edges)
    if g.classify() != "path":
        raise GraphError("edges do not form a path")
    ends = [v for v in range(g.num_vertices) if g.degree(v) == 1]
    start = min(ends)
    pos_of_eid = [0] * g.num_edges
    v, prev_eid = start, None
    for pos in range(1, g.num_edges + 1):
        eid = next(f for f in g.incident[v] if f != prev_eid)
        pos_of_eid[eid] = pos
        v, prev_eid = g.other_end(eid, v), eid
    return pos_of_eid


# ---------------------------------------------------------------------------
# edge-list text format: one reveal per line "u v", '#' starts a comment

def parse_edge_list(text: str) -> list[tuple[int, int]]:
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer endpoint in {raw!r}")
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex id in {raw!r}")
        edges.append((u, v))
    return edges


def format_edge_list(edges) -> str:
    return "".join(f"{u} {v}\n" for u, v in edges)
