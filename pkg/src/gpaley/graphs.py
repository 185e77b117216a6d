"""Connection sets S_{q,m}(ell), Cayley graph materialization, the family
G_{q,m}, spec-level subgraph/equality tests, normalization, the lattice of
family members, and affine-Frobenius automorphisms.

A spec (q, m, ell) with q = p^s describes the Cayley graph on the additive
group of F_{q^m} whose connection set is the multiplicative subgroup of
nonzero (q^ell + 1)-th powers. Vertex i is the field element of index i.
"""

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .arith import divisors, gcd_power, is_prime, v2
from .budgets import graph_budget
from .errors import (
    BudgetExceeded,
    DirectedUnsupported,
    InternalCheckError,
    MixedBase,
    NotDivisible,
    NotInFamily,
    ZeroScale,
)
from .field import FieldParams, FieldTable, get_field


@dataclass(frozen=True)
class GraphSpec:
    """The triple (q, m, ell) with q = p^s, plus a complement flag."""

    p: int
    s: int
    m: int
    ell: int
    complemented: bool = False

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.s < 1 or self.m < 1:
            raise ValueError("s and m must be positive")
        if not 0 <= self.ell < self.m:
            raise ValueError("need 0 <= ell < m (exponents repeat mod m)")

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def order(self) -> int:
        return self.q**self.m

    @property
    def m_ell(self) -> int:
        return self.m // math.gcd(self.m, self.ell) if self.ell else 1

    @property
    def tag(self) -> str:
        """'complete', 'paley', or 'proper' (after reduction for non-divisor ell)."""
        if self.m_ell % 2 == 1:
            return "complete" if self.q % 2 == 0 else "paley"
        return "proper"

    @property
    def is_proper(self) -> bool:
        """In the family as written: 1 <= ell, ell | m, m/ell even."""
        return self.ell >= 1 and self.m % self.ell == 0 and (self.m // self.ell) % 2 == 0

    @property
    def is_half(self) -> bool:
        return self.is_proper and 2 * self.ell == self.m

    @property
    def eps(self) -> int:
        """Sign (-1)^(m_ell / 2); demands m_ell even."""
        if self.m_ell % 2:
            raise NotInFamily(f"eps undefined for odd m_ell = {self.m_ell}")
        return -1 if (self.m_ell // 2) % 2 else 1

    def reduce(self) -> "GraphSpec":
        """Same graph with ell replaced by gcd(m, ell) (valid when m_ell even)."""
        if self.m_ell % 2:
            return self
        return replace(self, ell=math.gcd(self.m, self.ell))

    def complement(self) -> "GraphSpec":
        return replace(self, complemented=not self.complemented)

    def canonical(self) -> "GraphSpec":
        """Rewrite with power index 1: (p, s, m, ell) -> (p, s*ell, m/ell, 1)."""
        return normalize(self.p, self.s, self.m, self.ell, complemented=self.complemented)

    def field_params(self) -> FieldParams:
        return FieldParams(self.p, self.s, self.m)

    def label(self) -> str:
        core = f"Gamma_{{{self.q},{self.m}}}({self.ell})"
        return f"co-{core}" if self.complemented else core


@dataclass(frozen=True)
class ConnectionSet:
    """Bit set of connection elements plus its exact cardinality."""

    spec: GraphSpec
    field: FieldTable
    members: np.ndarray  # bool, length q^m
    cardinality: int

    def __contains__(self, index: int) -> bool:
        return bool(self.members[int(index)])


@dataclass(frozen=True)
class CayleyGraph:
    spec: GraphSpec
    field: FieldTable
    connection: ConnectionSet
    adjacency: np.ndarray  # bool, (n, n)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def k(self) -> int:
        return self.connection.cardinality


def connection_set(spec: GraphSpec, field: FieldTable) -> ConnectionSet:
    """The set of nonzero (q^ell + 1)-th powers: the cyclic subgroup generated
    by alpha^g with g = gcd(q^m - 1, q^ell + 1). For a complemented spec,
    the complement's connection set F* minus those powers."""
    if field.params != spec.field_params():
        raise ValueError("field does not match spec")
    N = spec.order
    g = gcd_power(spec.q, spec.m, spec.ell)
    k = (N - 1) // g
    members = np.zeros(N, dtype=bool)
    members[field.exp[::g][:k]] = True
    if int(members.sum()) != k:
        raise InternalCheckError("connection set size mismatch")
    if spec.complemented:
        members = ~members
        members[0] = False
        k = N - 1 - k
    return ConnectionSet(spec, field, members, k)


def is_symmetric(conn: ConnectionSet) -> bool:
    """True iff -1 lies among the (q^ell + 1)-th powers; the complement set
    inherits the same symmetry. Cross-checked against the parity rule:
    always true for q even; for q odd, true iff m_ell is even or
    q^m = 1 mod 4. Disagreement would be a bug, not an input condition."""
    spec, field = conn.spec, conn.field
    primal = conn
    if spec.complemented:
        primal = connection_set(replace(spec, complemented=False), field)
    direct = bool(primal.members[field.neg(1)])
    if direct != _symmetry_rule(spec):
        raise InternalCheckError(f"symmetry rule mismatch for {spec}")
    return direct


def _symmetry_rule(spec: GraphSpec) -> bool:
    if spec.q % 2 == 0:
        return True
    if spec.m_ell % 2 == 0:
        return True
    return spec.order % 4 == 1


def build_graph(
    spec: GraphSpec,
    field: FieldTable | None = None,
    max_order: int | None = None,
) -> CayleyGraph:
    """Materialize the adjacency matrix: i ~ j iff element_j - element_i is a
    connection member (complemented specs take the complement of the rows
    and clear the diagonal). Rejects directed cases instead of symmetrizing.
    """
    N = spec.order
    budget = graph_budget(max_order)
    if N > budget:
        raise BudgetExceeded(f"q^m = {N} exceeds the graph budget {budget}")
    if field is None:
        field = get_field(spec.p, spec.s, spec.m)
    if not _symmetry_rule(spec):
        raise DirectedUnsupported(
            f"S is not symmetric for {spec.label()} (q^m = 3 mod 4 Paley case)"
        )
    primal = connection_set(replace(spec, complemented=False), field)
    adj = np.zeros((N, N), dtype=bool)
    idx = np.arange(N, dtype=np.int64)
    for s_elem in np.flatnonzero(primal.members):
        adj[idx, field.add_arrays(idx, int(s_elem))] = True
    if spec.complemented:
        adj = ~adj
        np.fill_diagonal(adj, False)
    conn = connection_set(spec, field)
    deg = adj.sum(axis=1)
    if not (deg == conn.cardinality).all():
        raise InternalCheckError("graph is not regular of the expected degree")
    if not np.array_equal(adj, adj.T) or adj.diagonal().any():
        raise InternalCheckError("adjacency not symmetric/loop-free")
    return CayleyGraph(spec, field, conn, adj)


def enumerate_family(p: int, s: int, m: int) -> list[GraphSpec]:
    """All proper members: 1 <= ell <= m/2, ell | m, m/(m,ell) even, ascending."""
    out = []
    for ell in range(1, m // 2 + 1):
        if m % ell == 0 and (m // ell) % 2 == 0:
            out.append(GraphSpec(p, s, m, ell))
    return out


def is_subgraph(a: GraphSpec, b: GraphSpec) -> bool:
    """Spec-level test that graph a embeds in graph b (same base field q):
    m_a | m_b and ell_b | ell_a with an odd quotient."""
    if (a.p, a.s) != (b.p, b.s):
        raise MixedBase("subgraph test needs equal base fields; normalize first")
    if not (a.is_proper and b.is_proper):
        raise NotInFamily("subgraph test is for proper specs")
    if b.m % a.m:
        return False
    if a.ell % b.ell:
        return False
    return (a.ell // b.ell) % 2 == 1


def normalize(p: int, r: int, m: int, ell: int, complemented: bool = False) -> GraphSpec:
    """Canonical power-1 presentation: the (p^r, m, ell) graph equals the
    (p^(r*ell), m/ell, 1) graph."""
    if ell < 1 or m % ell or m // ell < 2:
        raise NotDivisible(f"ell = {ell} must divide m = {m} with quotient >= 2")
    return GraphSpec(p, r * ell, m // ell, 1, complemented)


def family_lattice(m: int) -> list[list[int]]:
    """Connected components of the family's divisibility lattice for fixed m.

    Writing m = 2^t * r with r odd: empty when t = 0, otherwise t components,
    the k-th being {2^(k-1) * d : d | r} (members listed ascending)."""
    t = v2(m)
    if m == 0 or t == 0:
        return []
    r = m >> t
    return [[(1 << k) * d for d in divisors(r)] for k in range(t)]


def apply_affine_frobenius(
    g: CayleyGraph, a: int, b: int, i: int
) -> np.ndarray:
    """Vertex permutation x -> a * x^(p^i) + b. Such a map preserves edges
    exactly when a is a connection member."""
    fld = g.field
    a, b = int(a), int(b)
    if a == 0:
        raise ZeroScale("scale a must be nonzero")
    if not 0 <= i < fld.n:
        raise ValueError(f"Frobenius power i must satisfy 0 <= i < {fld.n}")
    idx = np.arange(g.n, dtype=np.int64)
    image = fld.add_arrays(fld.mul_array(fld.pow_array(idx, fld.p**i), a), b)
    if len(np.unique(image)) != g.n:
        raise InternalCheckError("affine-Frobenius map is not a bijection")
    return image


def permutation_preserves_edges(g: CayleyGraph, perm: np.ndarray) -> bool:
    """Exhaustive check that a vertex permutation is a graph automorphism."""
    return np.array_equal(g.adjacency[np.ix_(perm, perm)], g.adjacency)


# ---------------------------------------------------------------------------
# export / import
# ---------------------------------------------------------------------------

def edge_list_lines(g: CayleyGraph) -> list[str]:
    """One 'i j' line per undirected edge, i < j."""
    ii, jj = np.nonzero(np.triu(g.adjacency, 1))
    return [f"{i} {j}" for i, j in zip(ii.tolist(), jj.tolist())]


def dimacs_lines(g: CayleyGraph) -> list[str]:
    """DIMACS graph format (1-based vertices)."""
    edges = edge_list_lines(g)
    out = [f"p edge {g.n} {len(edges)}"]
    out.extend(f"e {int(e.split()[0]) + 1} {int(e.split()[1]) + 1}" for e in edges)
    return out


def bit_dump_header(g: CayleyGraph) -> dict:
    spec = g.spec
    return {
        "p": spec.p,
        "s": spec.s,
        "m": spec.m,
        "ell": spec.ell,
        "complemented": spec.complemented,
        "n": g.n,
        "k": g.k,
    }


def write_bit_dump(g: CayleyGraph, path: str) -> None:
    """JSON header line, then the adjacency rows packed row-major into
    little-endian bytes (bit j of byte b is column 8b + j)."""
    packed = np.packbits(g.adjacency, axis=1, bitorder="little")
    with open(path, "wb") as fh:
        fh.write((json.dumps(bit_dump_header(g), sort_keys=True) + "\n").encode())
        fh.write(packed.tobytes())


def read_bit_dump(path: str) -> tuple[dict, np.ndarray]:
    """Inverse of write_bit_dump; returns (header, bool adjacency)."""
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode())
        raw = fh.read()
    n = int(header["n"])
    row_bytes = (n + 7) // 8
    packed = np.frombuffer(raw, dtype=np.uint8).reshape(n, row_bytes)
    adj = np.unpackbits(packed, axis=1, bitorder="little")[:, :n].astype(bool)
    return header, adj
