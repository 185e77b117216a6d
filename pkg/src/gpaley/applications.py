"""Waring-number certification, Ramanujan classification with its three
infinite families, and Ihara zeta factorization."""

import logging
from dataclasses import dataclass

from .arith import gcd_power
from .budgets import graph_budget
from .errors import (
    DegenerateGraph,
    Disconnected,
    InternalCheckError,
    NotApplicable,
    NotInFamily,
)
from .field import FieldTable, get_field
from .graphs import GraphSpec, connection_set
from .spectra import Spectrum, SrgRecord, ramanujan_by_inequality, spectrum, srg_params

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class WaringCertificate:
    """g is the least s with every field element a sum of s many
    (q^ell+1)-th powers; witnesses (when materialized) map each element
    index to a pair (x, y) of indices with x^(q^ell+1) + y^(q^ell+1) = it."""

    k_exp: int
    field_size: int
    g: int
    witnesses: dict[int, tuple[int, int]] | None


@dataclass(frozen=True)
class ZetaFactorization:
    """Reciprocal Ihara zeta of a connected k-regular non-bipartite graph:

        (1 - u^2)^(E - n) * prod_i (1 - lambda_i u - (k-1) u^2)^(mult_i)

    with E the edge count; the square-factor exponent E - n is the circuit
    rank minus one per independent cycle basis element."""

    square_factor_exponent: int
    k: int
    factors: tuple[tuple[int, int], ...]  # (eigenvalue, exponent)

    @property
    def quad_coeff(self) -> int:
        return self.k - 1

    def total_degree(self) -> int:
        return 2 * self.square_factor_exponent + 2 * sum(e for _, e in self.factors)


def waring_number(
    spec: GraphSpec, with_witnesses: bool = True, max_order: int | None = None
) -> WaringCertificate:
    """Waring number of the exponent q^ell + 1 over F_{q^m}.

    Complete-graph cases (q even, m_ell odd) give g = 1: the power map is
    onto. Proper members with ell < m/2 give g = 2: the graph is connected
    with diameter 2, so breadth-first layers from 0 stop after two steps.
    ell = m/2 is refused (the powers generate a proper subfield). Witnesses
    are materialized within budget via those BFS layers."""
    if spec.complemented:
        raise NotApplicable("Waring certification concerns the primal power graph")
    q, m, ell = spec.q, spec.m, spec.ell
    k_exp = q**ell + 1
    N = spec.order
    if spec.is_half:
        raise NotApplicable("ell = m/2: the powers span a proper subfield only")
    if spec.m_ell % 2 == 1:
        if q % 2 == 0:
            witnesses = _complete_witnesses(spec, max_order) if with_witnesses else None
            return WaringCertificate(k_exp, N, 1, witnesses)
        raise NotApplicable("odd q with m_ell odd is the classic Paley regime")
    if not spec.is_proper:
        raise NotInFamily(f"{spec.label()} is not a proper family member")
    if gcd_power(q, m, ell) == q ** (m // 2) + 1:
        log.warning("vacuous-looking gcd guard fired for %s", spec.label())
        raise NotApplicable("power gcd degenerates to the half case")
    witnesses = _bfs_witnesses(spec, max_order) if with_witnesses else None
    return WaringCertificate(k_exp, N, 2, witnesses)


def _root_map(spec: GraphSpec, field: FieldTable) -> dict[int, int]:
    """One preimage under x -> x^(q^ell+1) for every attained power."""
    roots: dict[int, int] = {0: 0}
    e = spec.q**spec.ell + 1
    for x in range(1, spec.order):
        powered = field.pow(x, e)
        roots.setdefault(powered, x)
    return roots


def _complete_witnesses(spec: GraphSpec, max_order) -> dict[int, tuple[int, int]] | None:
    if spec.order > graph_budget(max_order):
        return None
    field = get_field(spec.p, spec.s, spec.m)
    roots = _root_map(spec, field)
    if len(roots) != spec.order:
        raise InternalCheckError("power map not onto in the complete case")
    return {a: (roots[a], 0) for a in range(spec.order)}


def _bfs_witnesses(spec: GraphSpec, max_order) -> dict[int, tuple[int, int]] | None:
    """Layered search from 0: layer 1 is the power set S itself, layer 2 is
    S + S; diameter 2 means nothing is left over."""
    N = spec.order
    budget = graph_budget(max_order)
    if N > budget:
        return None
    field = get_field(spec.p, spec.s, spec.m)
    conn = connection_set(spec, field)
    roots = _root_map(spec, field)
    members = [int(x) for x in conn.members.nonzero()[0]]
    witnesses: dict[int, tuple[int, int]] = {0: (0, 0)}
    for a in members:
        witnesses[a] = (roots[a], 0)
    for a in range(1, N):
        if a in witnesses:
            continue
        for b in members:
            diff = field.sub(a, b)
            if conn.members[diff]:
                witnesses[a] = (roots[diff], roots[b])
                break
        else:
            raise InternalCheckError(f"element {a} unreachable in two power steps")
    return witnesses


def verify_waring(cert: WaringCertificate, field: FieldTable) -> bool:
    """Soundness: re-evaluate every witness pair."""
    if cert.witnesses is None:
        return True
    e = cert.k_exp
    for a, (x, y) in cert.witnesses.items():
        if field.add(field.pow(x, e), field.pow(y, e)) != a:
            return False
        if y == 0 and x == 0 and a != 0:
            return False
    return len(cert.witnesses) == cert.field_size


def is_ramanujan(spec: GraphSpec) -> bool:
    """Ramanujan certification, computed twice and compared.

    Path one is the exact squared comparison max|lambda|^2 <= 4(k-1). Path
    two is the closed classification: after rewriting in the canonical
    power-1 presentation (q, m, ell) -> (q^ell, m/ell, 1), primal members
    are Ramanujan exactly for base in {2, 3, 4} (the degree is then
    automatically >= 4); complements are always Ramanujan. The two paths
    disagreeing is a fatal error."""
    if not spec.is_proper:
        raise NotInFamily(f"{spec.label()} is not a proper family member")
    if spec.is_half and not spec.complemented:
        raise Disconnected("disconnected graphs are not Ramanujan candidates")
    by_gap = ramanujan_by_inequality(spec)
    if spec.complemented:
        if not by_gap:
            raise InternalCheckError(f"complement {spec.label()} failed the gap bound")
        return True
    canon = spec.canonical()
    by_class = canon.q in (2, 3, 4) and canon.m >= 4
    if by_gap != by_class:
        raise InternalCheckError(
            f"classification ({by_class}) and gap bound ({by_gap}) split on {spec.label()}"
        )
    return by_gap


def family_table(q: int, t_max: int) -> list[tuple[GraphSpec, SrgRecord, Spectrum]]:
    """Rows (spec, srg record, spectrum) for the three Ramanujan families
    over F_2, F_3, F_4: primal and complement of (q, 2t, 1) for t = 2..t_max.
    Each srg tuple is re-derived from the t-parameterized family formulas
    and compared; a mismatch is fatal."""
    if q not in (2, 3, 4):
        raise NotInFamily("the infinite Ramanujan families live over F_2, F_3, F_4")
    p, s = (2, 1) if q == 2 else ((3, 1) if q == 3 else (2, 2))
    rows = []
    for t in range(2, t_max + 1):
        for complemented in (False, True):
            spec = GraphSpec(p, s, 2 * t, 1, complemented)
            rec = srg_params(spec)
            expect = _family_formula(q, t, complemented)
            if rec.params() != expect:
                raise InternalCheckError(
                    f"family formula mismatch at q={q}, t={t}: {rec.params()} != {expect}"
                )
            rows.append((spec, rec, spectrum(spec)))
    return rows


def _family_formula(q: int, t: int, complemented: bool) -> tuple[int, int, int, int]:
    """The t-parameterized srg tuples of the three families."""
    if q == 2:
        if not complemented:
            return (4**t, (4**t - 1) // 3, (4**t + (-2) ** (t + 1) - 8) // 9,
                    (4**t + (-2) ** t - 2) // 9)
        return (4**t, 2 * (4**t - 1) // 3, (4 ** (t + 1) + (-2) ** t - 14) // 9,
                (4 ** (t + 1) + (-2) ** (t + 1) - 2) // 9)
    if q == 3:
        if not complemented:
            return (9**t, (9**t - 1) // 4, (9**t + 2 * (-3) ** (t + 1) - 11) // 16,
                    (9**t + 2 * (-3) ** t - 3) // 16)
        return (9**t, 3 * (9**t - 1) // 4, (9 ** (t + 1) + 2 * (-3) ** t - 27) // 16,
                (9 ** (t + 1) + 2 * (-3) ** (t + 1) - 3) // 16)
    if not complemented:
        return (16**t, (16**t - 1) // 5, (16**t + 3 * (-4) ** (t + 1) - 14) // 25,
                (16**t + 3 * (-4) ** t - 4) // 25)
    return (16**t, 4 * (16**t - 1) // 5, (16 ** (t + 1) + 3 * (-4) ** t - 44) // 25,
            (16 ** (t + 1) + 3 * (-4) ** (t + 1) - 4) // 25)


def ihara_zeta(spec: GraphSpec) -> ZetaFactorization:
    """Factor the reciprocal Ihara zeta from the spectrum.

    Needs a connected, non-bipartite, k >= 2 regular graph: every proper
    member with ell != m/2, every complement except the (2,2,1) square."""
    if not spec.is_proper:
        raise NotInFamily(f"{spec.label()} is not a proper family member")
    if (spec.q, spec.m, spec.ell) == (2, 2, 1):
        raise DegenerateGraph("(2,2,1) and its 4-cycle complement are excluded")
    if spec.is_half and not spec.complemented:
        raise Disconnected("Ihara zeta here targets connected graphs")
    sp = spectrum(spec)
    n = sp.v
    k = sp.k
    edges = n * k // 2
    exponent = edges - n
    factors = tuple((lam, mult) for lam, mult in sp.pairs)
    z = ZetaFactorization(exponent, k, factors)
    if z.total_degree() != 2 * edges:
        raise InternalCheckError("reciprocal zeta degree != 2 * edge count")
    if sum(mult for _, mult in factors) != n:
        raise InternalCheckError("zeta factor exponents do not sum to n")
    return z


def zeta_json(z: ZetaFactorization) -> dict:
    return {
        "square_exp": str(z.square_factor_exponent),
        "factors": [
            {"linear_coeff": str(-lam), "quad_coeff": str(-(z.k - 1)), "exp": str(mult)}
            for lam, mult in z.factors
        ],
    }
