"""Finite directed multigraphs, weighted Cayley graphs, and graph predicates.

Graphs are stored as adjacency-count matrices: entry (v, w) is the number
of parallel edges v -> w.  Cayley graphs follow the right-multiplication
convention, one edge g -> g*s of multiplicity w(s) per generator s.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import GroupTableError, InvalidSpecError, NotGeneratingError
from .zmatrix import IntMatrix


@dataclass(frozen=True)
class DirectedMultigraph:
    """Finite directed multigraph with non-negative adjacency counts."""

    adjacency: tuple[tuple[int, ...], ...]
    vertex_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.adjacency)
        if n == 0:
            raise InvalidSpecError("graph needs at least one vertex")
        for row in self.adjacency:
            if len(row) != n:
                raise InvalidSpecError("adjacency matrix must be square")
            if any(x < 0 for x in row):
                raise InvalidSpecError("edge multiplicities must be non-negative")
        if self.vertex_labels is not None and len(self.vertex_labels) != n:
            raise InvalidSpecError("one label per vertex required")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        return cls(
            tuple(tuple(int(x) for x in row) for row in rows),
            tuple(labels) if labels is not None else None,
        )

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(sum(row) for row in self.adjacency)

    def out_degree(self, v: int) -> int:
        return sum(self.adjacency[v])

    def in_degree(self, v: int) -> int:
        return sum(row[v] for row in self.adjacency)

    def adjacency_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(self.adjacency)

    def i_minus_at(self) -> IntMatrix:
        """I - A^t, the square matrix whose cokernel carries the K-theory."""
        n = self.vertex_count
        return IntMatrix(
            n, n, tuple((1 if i == j else 0) - self.adjacency[j][i] for i in range(n) for j in range(n))
        )

    def i_minus_a(self) -> IntMatrix:
        """I - A (untransposed; the flow-equivalence invariant side)."""
        n = self.vertex_count
        return IntMatrix(
            n, n, tuple((1 if i == j else 0) - self.adjacency[i][j] for i in range(n) for j in range(n))
        )

    def edges(self) -> list[tuple[int, int, int]]:
        """Canonical edge list: (source, target, copy index) triples."""
        out = []
        for u, row in enumerate(self.adjacency):
            for v, k in enumerate(row):
                for i in range(k):
                    out.append((u, v, i))
        return out

    def label(self, v: int) -> str:
        if self.vertex_labels is not None:
            return self.vertex_labels[v]
        return f"v{v}"

    def to_dot(self, name: str = "graph") -> str:
        """Graphviz dot text; parallel edges collapse to one arrow labeled "(k)"."""
        lines = [f"digraph {name} {{"]
        for v in range(self.vertex_count):
            lines.append(f'  n{v} [label="{self.label(v)}"];')
        for u, row in enumerate(self.adjacency):
            for v, k in enumerate(row):
                if k == 1:
                    lines.append(f"  n{u} -> n{v};")
                elif k > 1:
                    lines.append(f'  n{u} -> n{v} [label="({k})"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FiniteGroupTable:
    """Finite group as a multiplication table of element indices."""

    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int = 0
    kind: str = "table"
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.order < 1:
            raise InvalidSpecError("group order must be positive")
        if len(self.mul) != self.order or any(len(r) != self.order for r in self.mul):
            raise InvalidSpecError("multiplication table must be order x order")

    def product(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def validate(self) -> None:
        """Check latin-square, identity, and associativity axioms exhaustively."""
        n = self.order
        full = set(range(n))
        for i, row in enumerate(self.mul):
            if set(row) != full:
                raise InvalidSpecError(f"row {i} is not a permutation")
            if set(self.mul[j][i] for j in range(n)) != full:
                raise InvalidSpecError(f"column {i} is not a permutation")
        e = self.identity
        for a in range(n):
            if self.mul[e][a] != a or self.mul[a][e] != a:
                raise InvalidSpecError("identity element is not two-sided")
        for a in range(n):
            for b in range(n):
                ab = self.mul[a][b]
                row_a = self.mul[a]
                for c in range(n):
                    if self.mul[ab][c] != row_a[self.mul[b][c]]:
                        raise InvalidSpecError(f"associativity fails at ({a},{b},{c})")

    def label(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return str(g)


def build_cyclic_group(n: int) -> FiniteGroupTable:
    """Z_n under addition; element i is the residue i."""
    if n < 1:
        raise InvalidSpecError("cyclic group order must be positive")
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroupTable(n, mul, identity=0, kind="cyclic", labels=tuple(str(i) for i in range(n)))


def build_dihedral_group(n: int) -> tuple[FiniteGroupTable, int, int]:
    """Dihedral group <r, s | r^n = s^2 = e, rsr = s> of order 2n.

    Element k < n is r^k; element n + k is r^k s.  Returns the table with
    the indices of r and s so callers can form the generating set {r, s}.
    """
    if n < 1:
        raise InvalidSpecError("dihedral parameter must be positive")
    size = 2 * n
    mul = [[0] * size for _ in range(size)]
    for a in range(n):
        for b in range(n):
            mul[a][b] = (a + b) % n  # r^a r^b
            mul[a][n + b] = n + (a + b) % n  # r^a (r^b s) = r^(a+b) s
            mul[n + a][b] = n + (a - b) % n  # (r^a s) r^b = r^(a-b) s
            mul[n + a][n + b] = (a - b) % n  # (r^a s)(r^b s) = r^(a-b)
    labels = tuple(
        ("e" if k == 0 else "r" if k == 1 else f"r^{k}") for k in range(n)
    ) + tuple(("s" if k == 0 else f"r^{k}s") for k in range(n))
    table = FiniteGroupTable(
        size,
        tuple(tuple(row) for row in mul),
        identity=0,
        kind="dihedral",
        labels=labels,
    )
    r_index = 1 % n  # n = 1 collapses r to the identity
    s_index = n
    return table, r_index, s_index


def read_group_table(text: str) -> FiniteGroupTable:
    """Parse the group-table text format: order, then one table row per line."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise GroupTableError("missing order line", 1)
    try:
        order = int(lines[0].strip())
    except ValueError:
        raise GroupTableError("order must be an integer", 1) from None
    if order < 1:
        raise GroupTableError("order must be positive", 1)
    rows: list[tuple[int, ...]] = []
    lineno = 1
    for raw in lines[1:]:
        lineno += 1
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != order:
            raise GroupTableError(f"expected {order} entries, found {len(parts)}", lineno)
        try:
            row = tuple(int(p) for p in parts)
        except ValueError:
            raise GroupTableError("entries must be integers", lineno) from None
        if any(x < 0 or x >= order for x in row):
            raise GroupTableError("entries must be element indices", lineno)
        rows.append(row)
        if len(rows) == order:
            break
    if len(rows) != order:
        raise GroupTableError(f"expected {order} table rows, found {len(rows)}", lineno + 1)
    table = FiniteGroupTable(order, tuple(rows), identity=0)
    table.validate()
    return table


def write_group_table(table: FiniteGroupTable) -> str:
    lines = [str(table.order)]
    for row in table.mul:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CayleySpec:
    """A finite group with an ordered generating set and positive weights."""

    group: FiniteGroupTable
    gens: tuple[int, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if not self.gens:
            raise InvalidSpecError("generating set must be nonempty")
        if len(self.gens) != len(self.weights):
            raise InvalidSpecError("one weight per generator required")
        if len(set(self.gens)) != len(self.gens):
            raise InvalidSpecError("generators must be distinct")
        for g in self.gens:
            if not 0 <= g < self.group.order:
                raise InvalidSpecError(f"generator {g} outside the group")
        for w in self.weights:
            if w < 1:
                raise InvalidSpecError("weights must be positive integers")

    @classmethod
    def cyclic(cls, n: int, gens: Sequence[int], weights: Sequence[int] | None = None) -> "CayleySpec":
        """Spec over Z_n; generators are reduced mod n and must stay distinct."""
        if n < 1:
            raise InvalidSpecError("cyclic group order must be positive")
        if weights is None:
            weights = [1] * len(gens)
        if len(weights) != len(gens):
            raise InvalidSpecError("one weight per generator required")
        reduced = [int(g) % n for g in gens]
        if len(set(reduced)) != len(reduced):
            raise InvalidSpecError("generators coincide after reduction mod n")
        pairs = sorted(zip(reduced, (int(w) for w in weights)))
        return cls(
            build_cyclic_group(n),
            tuple(p[0] for p in pairs),
            tuple(p[1] for p in pairs),
        )

    @classmethod
    def dihedral(cls, n: int) -> "CayleySpec":
        """The dihedral group with its usual generating set {r, s}, unweighted."""
        table, r, s = build_dihedral_group(n)
        if r == s:
            raise InvalidSpecError("dihedral generators collapse")
        return cls(table, (r, s), (1, 1))

    @property
    def n(self) -> int:
        return self.group.order

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def is_cyclic(self) -> bool:
        return self.group.kind == "cyclic"

    def weight_of(self, s: int) -> int:
        return self.weights[self.gens.index(s)]


def build_cayley(spec: CayleySpec) -> DirectedMultigraph:
    """Weighted Cayley graph: w(s) parallel edges g -> g*s per generator s."""
    n = spec.group.order
    adj = [[0] * n for _ in range(n)]
    for g in range(n):
        for s, w in zip(spec.gens, spec.weights):
            adj[g][spec.group.product(g, s)] += w
    labels = tuple(spec.group.label(g) for g in range(n))
    return DirectedMultigraph.from_rows(adj, labels)


def build_complete_graph(n: int, loops: int) -> DirectedMultigraph:
    """One edge between every ordered pair of distinct vertices, plus loops."""
    if n < 1:
        raise InvalidSpecError("need at least one vertex")
    if loops < 0:
        raise InvalidSpecError("loop count must be non-negative")
    adj = [[loops if i == j else 1 for j in range(n)] for i in range(n)]
    return DirectedMultigraph.from_rows(adj)


def k_cycle(n: int, k: int) -> DirectedMultigraph:
    """Cycle of length n with k parallel edges on every step."""
    spec = CayleySpec.cyclic(n, [1], [k])
    return build_cayley(spec)


def _successor_sets(g: DirectedMultigraph) -> list[int]:
    """Children of each vertex as bitmasks (multiplicity ignored)."""
    out = []
    for row in g.adjacency:
        mask = 0
        for v, k in enumerate(row):
            if k:
                mask |= 1 << v
        out.append(mask)
    return out


def _reachable(succ: list[int], start: int) -> int:
    seen = 1 << start
    frontier = [start]
    while frontier:
        v = frontier.pop()
        new = succ[v] & ~seen
        while new:
            low = new & -new
            seen |= low
            frontier.append(low.bit_length() - 1)
            new ^= low
    return seen


def is_strongly_connected(g: DirectedMultigraph) -> bool:
    """Every ordered vertex pair is joined by a directed path."""
    n = g.vertex_count
    if n == 1:
        return True
    full = (1 << n) - 1
    succ = _successor_sets(g)
    if _reachable(succ, 0) != full:
        return False
    pred = [0] * n
    for u, row in enumerate(g.adjacency):
        for v, k in enumerate(row):
            if k:
                pred[v] |= 1 << u
    return _reachable(pred, 0) == full


def has_cycle(g: DirectedMultigraph) -> bool:
    """True when the graph contains a directed cycle (loops count)."""
    n = g.vertex_count
    succ = _successor_sets(g)
    color = [0] * n  # 0 unvisited, 1 on stack, 2 done
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, succ[root])]
        color[root] = 1
        while stack:
            v, remaining = stack[-1]
            if remaining == 0:
                color[v] = 2
                stack.pop()
                continue
            low = remaining & -remaining
            stack[-1] = (v, remaining ^ low)
            w = low.bit_length() - 1
            if color[w] == 1:
                return True
            if color[w] == 0:
                color[w] = 1
                stack.append((w, succ[w]))
    return False


def every_cycle_has_exit(g: DirectedMultigraph) -> bool:
    """Condition that no cycle is escape-free.

    A cycle with no exit consists entirely of vertices of total out-degree
    one, so it suffices to walk the unique-successor chains among those
    vertices and look for a loop.
    """
    n = g.vertex_count
    succ_unique = [-1] * n
    for v, row in enumerate(g.adjacency):
        if sum(row) == 1:
            succ_unique[v] = next(w for w, k in enumerate(row) if k == 1)
    state = [0] * n  # 0 new, 1 in progress, 2 cleared
    for v in range(n):
        if succ_unique[v] < 0 or state[v]:
            continue
        path = []
        w = v
        while w >= 0 and state[w] == 0:
            state[w] = 1
            path.append(w)
            w = succ_unique[w]
        if w >= 0 and state[w] == 1:
            return False  # walked back into the current chain: an exitless cycle
        for p in path:
            state[p] = 2
    return True


def hereditary_saturated_closure(g: DirectedMultigraph, seed: Sequence[int]) -> frozenset[int]:
    """Smallest vertex set containing the seed that is hereditary and saturated.

    Computed by fixpoint iteration: close under edge ranges, then add any
    non-sink whose children all lie inside, until stable.
    """
    n = g.vertex_count
    succ = _successor_sets(g)
    members = 0
    for v in seed:
        members |= 1 << v
    changed = True
    while changed:
        changed = False
        m = members
        probe = m
        while probe:
            low = probe & -probe
            members |= succ[low.bit_length() - 1]
            probe ^= low
        for v in range(n):
            bit = 1 << v
            if members & bit:
                continue
            s = succ[v]
            if s and s & members == s:
                members |= bit
        changed = members != m
    return frozenset(v for v in range(n) if members >> v & 1)


def is_purely_infinite_simple(g: DirectedMultigraph) -> bool:
    """Graph criterion for pure infinite simplicity of the associated algebra.

    Equivalent formulation used here: the graph has at least one cycle,
    every cycle has an exit, and the hereditary-saturated closure of every
    vertex is the whole vertex set.
    """
    if not has_cycle(g):
        return False
    if not every_cycle_has_exit(g):
        return False
    n = g.vertex_count
    everything = frozenset(range(n))
    return all(hereditary_saturated_closure(g, [v]) == everything for v in range(n))


def cayley_is_pis(spec: CayleySpec) -> bool:
    """Weight criterion: the Cayley algebra is purely infinite simple iff W >= 2."""
    graph = build_cayley(spec)
    if not is_strongly_connected(graph):
        raise NotGeneratingError("generators do not generate: graph is not strongly connected")
    return spec.total_weight >= 2


Edge = tuple[int, int, int]
Partition = Mapping[int, Sequence[Sequence[Edge]]]


def singleton_partition(g: DirectedMultigraph) -> dict[int, list[list[Edge]]]:
    """Each incoming edge in its own class."""
    incoming: dict[int, list[list[Edge]]] = {}
    for e in g.edges():
        incoming.setdefault(e[1], []).append([e])
    return incoming


def one_class_partition(g: DirectedMultigraph) -> dict[int, list[list[Edge]]]:
    """All incoming edges of a vertex in a single class."""
    incoming: dict[int, list[Edge]] = {}
    for e in g.edges():
        incoming.setdefault(e[1], []).append(e)
    return {v: [cls] for v, cls in incoming.items()}


def in_split(g: DirectedMultigraph, partition: Partition) -> DirectedMultigraph:
    """In-split graph for a partition of each vertex's incoming edges.

    Vertex v with m(v) partition classes becomes copies v_1..v_m(v)
    (sources stay single); edge e: u -> v in class i becomes one edge
    u_j -> v_i out of every copy u_j of its source.
    """
    edges = g.edges()
    incoming: dict[int, set[Edge]] = {}
    for e in edges:
        incoming.setdefault(e[1], set()).add(e)

    class_count: dict[int, int] = {}
    class_of: dict[Edge, int] = {}
    for v in range(g.vertex_count):
        need = incoming.get(v, set())
        classes = partition.get(v)
        if not need:
            if classes:
                raise InvalidSpecError(f"vertex {v} is a source but has partition classes")
            class_count[v] = 0
            continue
        if not classes:
            raise InvalidSpecError(f"vertex {v} has incoming edges but no partition classes")
        seen: set[Edge] = set()
        for idx, cls in enumerate(classes):
            if not cls:
                raise InvalidSpecError(f"vertex {v}: empty partition class")
            for e in cls:
                e = (int(e[0]), int(e[1]), int(e[2]))
                if e not in need:
                    raise InvalidSpecError(f"vertex {v}: {e} is not an incoming edge")
                if e in seen:
                    raise InvalidSpecError(f"vertex {v}: edge {e} appears in two classes")
                seen.add(e)
                class_of[e] = idx
        if seen != need:
            raise InvalidSpecError(f"vertex {v}: partition does not cover its incoming edges")
        class_count[v] = len(classes)

    new_ids: dict[tuple[int, int], int] = {}
    labels = []
    for v in range(g.vertex_count):
        m = class_count[v]
        if m == 0:
            new_ids[(v, 0)] = len(labels)
            labels.append(g.label(v))
        else:
            for i in range(m):
                new_ids[(v, i)] = len(labels)
                labels.append(f"{g.label(v)}:{i + 1}" if m > 1 else g.label(v))

    size = len(labels)
    adj = [[0] * size for _ in range(size)]
    for e in edges:
        u, v, _ = e
        target = new_ids[(v, class_of[e])]
        copies = class_count[u] if class_count[u] > 0 else 1
        for j in range(copies):
            adj[new_ids[(u, j if class_count[u] > 0 else 0)]][target] += 1
    return DirectedMultigraph.from_rows(adj, labels)
