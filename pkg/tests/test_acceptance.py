"""Acceptance suite: one test per numbered criterion, zero tolerance.

Every expected value is an exact integer. Where an acceptance target was
transcribed from the published reference tables, the transcription is
asserted verbatim in a ``*_published_*`` test. Five of those targets are
arithmetically impossible (they contradict the defining identities and the
independent brute-force oracles, see the matching ``*_consistent`` test
that pins the cross-checked value); those assertions FAIL BY DESIGN rather
than being silently corrected, so the discrepancy stays visible.

Run with ``pytest tests/test_acceptance.py -v``.
"""

import time

import pytest

from gpaley.applications import (
    family_table,
    ihara_zeta,
    is_ramanujan,
    verify_waring,
    waring_number,
)
from gpaley.errors import NotStronglyRegular
from gpaley.field import get_field
from gpaley.graphs import GraphSpec, build_graph, enumerate_family, is_subgraph
from gpaley.oracles import (
    count_srg_params,
    count_trees_bruteforce,
    count_walks_bruteforce,
    run_suite,
    verify_a2_identity,
)
from gpaley.spectra import (
    closed_walks,
    eigenvalue_relations_check,
    intersection_array,
    spanning_trees,
    spectrum,
    srg_params,
)

PRIME_POWERS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


def _announce(criterion: str, ok: bool, detail: str = ""):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


# ---------------------------------------------------------------------------
# 1. table reproduction for the three families
# ---------------------------------------------------------------------------

# (t, complemented) -> (srg tuple, spectrum pairs); verbatim from the
# published tables except where marked
TABLES = {
    2: {
        (2, False): ((16, 5, 0, 2), ((5, 1), (1, 10), (-3, 5))),
        (2, True): ((16, 10, 6, 6), ((10, 1), (2, 5), (-2, 10))),
        (3, False): ((64, 21, 8, 6), ((21, 1), (5, 21), (-3, 42))),
        (3, True): ((64, 42, 26, 30), ((42, 1), (2, 42), (-6, 21))),
        (4, False): ((256, 85, 24, 30), ((85, 1), (5, 170), (-11, 85))),
        (4, True): ((256, 170, 114, 110), ((170, 1), (10, 85), (-6, 170))),
    },
    3: {
        (2, False): ((81, 20, 1, 6), ((20, 1), (2, 60), (-7, 20))),
        (2, True): ((81, 60, 45, 42), ((60, 1), (6, 20), (-3, 60))),
        (3, False): ((729, 182, 55, 42), ((182, 1), (20, 182), (-7, 546))),
        (3, True): ((729, 546, 405, 420), ((546, 1), (6, 546), (-21, 182))),
        (4, False): ((6561, 1640, 379, 420), ((1640, 1), (20, 4920), (-61, 1640))),
        # corrected: published row prints 4921, but v-k-1 = 6561-1640-1 = 4920
        # (also 3(9^4-1)/4; 4921 breaks the zero-trace and srg identities)
        (4, True): ((6561, 4920, 3699, 3660), ((4920, 1), (60, 1640), (-21, 4920))),
    },
    4: {
        (2, False): ((256, 51, 2, 12), ((51, 1), (3, 204), (-13, 51))),
        (2, True): ((256, 204, 164, 156), ((204, 1), (12, 51), (-4, 204))),
        (3, False): ((4096, 819, 194, 156), ((819, 1), (51, 819), (-13, 3276))),
        (3, True): ((4096, 3276, 2612, 2652), ((3276, 1), (12, 3276), (-52, 819))),
        (4, False): ((65536, 13107, 2498, 2652), ((13107, 1), (51, 52428), (-205, 13107))),
        (4, True): ((65536, 52428, 41972, 41820), ((52428, 1), (204, 13107), (-52, 52428))),
    },
}


def test_criterion_1_tables_consistent():
    """18 srg tuples and 18 spectra for q in {2,3,4}, t in {2,3,4}, exact."""
    t0 = time.perf_counter()
    mismatches = []
    for q, table in TABLES.items():
        rows = family_table(q, 4)
        assert len(rows) == 6
        for spec, rec, sp in rows:
            want_params, want_spec = table[(spec.m // 2, spec.complemented)]
            if rec.params() != want_params or sp.pairs != want_spec:
                mismatches.append((spec.label(), rec.params(), want_params))
    elapsed = time.perf_counter() - t0
    _announce("1 (tables, cross-checked)", not mismatches, f"[{elapsed:.3f}s]")
    assert not mismatches
    assert elapsed < 1.0


def test_criterion_1_tables_published_row():
    """Verbatim published degree of the t=4 complement over F_3.

    FAILS BY DESIGN: 4921 contradicts v-k-1 = 4920 and the zero-trace
    identity; the computed table uses 4920."""
    rows = family_table(3, 4)
    rec = next(r for s, r, _ in rows if s.m == 8 and s.complemented)
    _announce("1 (published 4921 entry)", rec.params() == (6561, 4921, 3699, 3660))
    assert rec.params() == (6561, 4921, 3699, 3660), (
        "published k=4921 is inconsistent; computed v-k-1 = 4920"
    )


# ---------------------------------------------------------------------------
# 2. the four-row worked example at q^m = 4096
# ---------------------------------------------------------------------------

# label -> (srg tuple, intersection array, eigenvalue set), cross-checked
WORKED_CONSISTENT = {
    (1, False): ((4096, 1365, 440, 462), (1365, 924, 1, 462), {1365, 21, -43}),
    (3, False): ((4096, 455, 6, 56), (455, 448, 1, 56), {455, 7, -57}),
    (1, True): ((4096, 2730, 1826, 1806), (2730, 903, 1, 1806), {2730, 42, -22}),
    (3, True): ((4096, 3640, 3240, 3192), (3640, 399, 1, 3192), {3640, -8, 56}),
}

# verbatim transcription of the published table (rows 2-4 are internally
# inconsistent: the printed (e, d) pairs contradict the printed eigenvalues)
WORKED_PUBLISHED = {
    (1, False): ((4096, 1365, 440, 462), (1365, 924, 1, 462), {1365, 21, -43}),
    (3, False): ((4096, 455, 54, 50), (455, 400, 1, 50), {455, 7, -57}),
    (1, True): ((4096, 2730, 1826, 1086), (2730, 903, 1, 1804), {2730, 42, -22}),
    (3, True): ((4096, 3640, 3234, 3240), (3640, 405, 1, 832), {3640, -8, 56}),
}


def _worked_rows():
    for (ell, comp) in [(1, False), (3, False), (1, True), (3, True)]:
        spec = GraphSpec(2, 1, 12, ell, comp)
        rec = srg_params(spec)
        arr = intersection_array(spec)
        eigs = {lam for lam, _ in spectrum(spec).pairs}
        yield (ell, comp), rec.params(), arr.as_tuple(), eigs


def test_criterion_2_worked_example_consistent():
    """srg tuples, intersection arrays and eigenvalues of the 4096-vertex
    quadruple, against values that satisfy every defining identity (the
    brute-force confirmation of these same rows happens in criterion 3)."""
    t0 = time.perf_counter()
    bad = []
    for key, params, arr, eigs in _worked_rows():
        want = WORKED_CONSISTENT[key]
        if (params, arr, eigs) != want:
            bad.append((key, params, arr, eigs, want))
    elapsed = time.perf_counter() - t0
    _announce("2 (worked example, cross-checked)", not bad, f"[{elapsed:.3f}s]")
    assert not bad
    assert elapsed < 1.0


def test_criterion_2_worked_example_published_table():
    """Verbatim transcription of the published four-row table.

    FAILS BY DESIGN on ten numbers spread over rows 2-4: e.g. the printed
    (4096, 455, 54, 50) forces irrational eigenvalues, contradicting the
    printed integral spectrum (455, 7, -57) of the same row; exhaustive
    common-neighbor counting gives (6, 56)."""
    bad = []
    for key, params, arr, eigs in _worked_rows():
        want_params, want_arr, want_eigs = WORKED_PUBLISHED[key]
        if params != want_params:
            bad.append((key, "srg", params, want_params))
        if arr != want_arr:
            bad.append((key, "array", arr, want_arr))
        if eigs != want_eigs:
            bad.append((key, "eigenvalues", eigs, want_eigs))
    _announce("2 (published table, verbatim)", not bad, f"{len(bad)} entries differ")
    assert not bad, f"published entries inconsistent with exact arithmetic: {bad}"


# ---------------------------------------------------------------------------
# 3. oracle equivalence sweep over every materializable family member
# ---------------------------------------------------------------------------

def _sweep_specs(limit=4096):
    for p, s in PRIME_POWERS:
        q = p**s
        m = 2
        while q**m <= limit:
            yield from enumerate_family(p, s, m)
            m += 1


def test_criterion_3_oracle_sweep():
    """run_suite passes every check on every proper spec with q^m <= 4096:
    counted (v,k,e,d) = closed forms, A^2 identity, walks r <= 6, component
    structure, girth, rank/type classification against kernel counting for
    every gamma, Waring witnesses, Ramanujan gap, coset decomposition,
    arc-transitivity."""
    failures = []
    total = 0
    for spec in _sweep_specs():
        t0 = time.perf_counter()
        report = run_suite(spec)
        total += 1
        status = "ok" if report.ok else "FAIL"
        print(f"  sweep {spec.label():20s} {time.perf_counter() - t0:7.2f}s {status}")
        if not report.ok:
            failures.append((spec.label(), [c.name for c in report.failures()]))
    _announce("3 (oracle sweep)", not failures, f"{total} specs")
    assert total == 34  # 14 over q=2, 5 each over q in {3,4}, 3 each over {5,7,8}, 1 over 9
    assert not failures, failures


# ---------------------------------------------------------------------------
# 4. spanning trees of the 16-vertex pair
# ---------------------------------------------------------------------------

def test_criterion_4_trees_consistent():
    """Primal count is exactly 2^31 by both the closed form and the exact
    determinant; complement closed form and determinant agree exactly."""
    t0 = time.perf_counter()
    spec = GraphSpec(2, 1, 4, 1)
    g = build_graph(spec)
    gbar = build_graph(spec.complement())
    closed_primal = spanning_trees(spec)
    closed_comp = spanning_trees(spec.complement())
    det_primal = count_trees_bruteforce(g)
    det_comp = count_trees_bruteforce(gbar)
    elapsed = time.perf_counter() - t0
    ok = (
        closed_primal == det_primal == 2**31
        and closed_comp == det_comp == 2**31 * 3**10
    )
    _announce("4 (trees, both paths)", ok, f"[{elapsed:.3f}s]")
    assert closed_primal == 2147483648 == det_primal
    assert closed_comp == det_comp == 126806761930752  # = 2^31 * 3^10
    assert elapsed < 1.0


def test_criterion_4_trees_published_complement_value():
    """Published target t(complement) = 472392 = 8 * 3^10.

    FAILS BY DESIGN: the Kirchhoff product over the complement's Laplacian
    spectrum (1/16) * 12^10 * 8^5 and the Bareiss determinant both give
    2^31 * 3^10 = 126806761930752; no graph computation can return 472392."""
    spec = GraphSpec(2, 1, 4, 1, True)
    closed = spanning_trees(spec)
    det = count_trees_bruteforce(build_graph(spec))
    _announce("4 (published 472392)", closed == det == 472392)
    assert closed == det == 472392, (
        f"both exact paths give {closed}; the published 472392 misreads an exponent"
    )


# ---------------------------------------------------------------------------
# 5. triangles and girth of the 16-vertex pair
# ---------------------------------------------------------------------------

def test_criterion_5_triangles_girth_consistent():
    spec = GraphSpec(2, 1, 4, 1)
    g = build_graph(spec)
    gbar = build_graph(spec.complement())
    w3 = closed_walks(spec, 3)
    w3_brute = count_walks_bruteforce(g, 3)
    w3c = closed_walks(spec.complement(), 3)
    w3c_brute = count_walks_bruteforce(gbar, 3)
    ok = w3 == w3_brute == 0 and w3c == w3c_brute == 960
    _announce("5 (triangles/girth, both paths)", ok)
    assert w3 == w3_brute == 0
    assert w3c == w3c_brute == 960  # 160 triangles
    from gpaley.spectra import invariant_bounds

    assert invariant_bounds(spec).girth == 4
    assert invariant_bounds(spec.complement()).girth == 3


def test_criterion_5_published_complement_walks():
    """Published target w3(complement) = 600 (100 triangles).

    FAILS BY DESIGN: the spectral moment 10*(10^2 + (-2)^3 + 4*1) and
    trace(A^3) on the materialized srg(16,10,6,6) both give 960, i.e. 160
    triangles (80 edges * 6 common neighbors / 3)."""
    spec = GraphSpec(2, 1, 4, 1, True)
    closed = closed_walks(spec, 3)
    brute = count_walks_bruteforce(build_graph(spec), 3)
    _announce("5 (published 600)", closed == brute == 600)
    assert closed == brute == 600, f"both exact paths give {closed}, not 600"


# ---------------------------------------------------------------------------
# 6. Waring certification
# ---------------------------------------------------------------------------

def test_criterion_6_waring():
    cases = [
        (GraphSpec(2, 1, 4, 1), 3, 16),
        (GraphSpec(2, 1, 6, 1), 3, 64),
        (GraphSpec(3, 1, 4, 1), 4, 81),
        (GraphSpec(2, 2, 4, 1), 5, 256),
        (GraphSpec(2, 1, 12, 3), 9, 4096),
    ]
    for spec, k_exp, size in cases:
        cert = waring_number(spec)
        assert (cert.k_exp, cert.field_size, cert.g) == (k_exp, size, 2)
        assert len(cert.witnesses) == size
        assert verify_waring(cert, get_field(spec.p, spec.s, spec.m))
    complete = waring_number(GraphSpec(2, 1, 3, 1))
    assert complete.g == 1
    assert verify_waring(complete, get_field(2, 1, 3))
    _announce("6 (Waring)", True, "g=2 with witnesses x5, g=1 x1")


# ---------------------------------------------------------------------------
# 7. Ramanujan classification
# ---------------------------------------------------------------------------

def test_criterion_7_ramanujan():
    """Gap inequality == closed classification on every proper spec with
    q <= 9, m <= 12, ell != m/2 (is_ramanujan raises on any split), and
    every complement in range is Ramanujan."""
    positives = 0
    total = 0
    for p, s in PRIME_POWERS:
        for m in range(2, 13):
            for spec in enumerate_family(p, s, m):
                if not spec.is_half:
                    total += 1
                    if is_ramanujan(spec):
                        positives += 1
                        canon = spec.canonical()
                        assert canon.q in (2, 3, 4) and canon.m >= 4
                    else:
                        canon = spec.canonical()
                        assert canon.q not in (2, 3, 4)
                if not (spec.q, spec.m, spec.ell) == (2, 2, 1):
                    assert is_ramanujan(spec.complement()) is True
    _announce("7 (Ramanujan)", True, f"{positives} positive of {total}")
    assert (positives, total) == (17, 56)


# ---------------------------------------------------------------------------
# 8. Ihara zeta factorizations
# ---------------------------------------------------------------------------

def _zeta_shape(spec):
    z = ihara_zeta(spec)
    # factor (1 - lam u - (k-1) u^2)^mult as (-lam, -(k-1), mult)
    return z.square_factor_exponent, tuple(
        (-lam, -(z.k - 1), mult) for lam, mult in z.factors
    )


ZETA_CONSISTENT = {
    (2, 1, 4, 1, False): (24, ((-5, -4, 1), (-1, -4, 10), (3, -4, 5))),
    (2, 1, 4, 1, True): (64, ((-10, -9, 1), (-2, -9, 5), (2, -9, 10))),
    (3, 1, 4, 1, False): (729, ((-20, -19, 1), (-2, -19, 60), (7, -19, 20))),
    # quadratic coefficient is -(kbar-1) = -59 for the 60-regular complement
    (3, 1, 4, 1, True): (2349, ((-60, -59, 1), (-6, -59, 20), (3, -59, 60))),
}

ZETA_PUBLISHED_BH_COMPLEMENT = (2349, ((-60, -19, 1), (-6, -19, 20), (3, -19, 60)))


def test_criterion_8_zeta_consistent():
    for key, want in ZETA_CONSISTENT.items():
        spec = GraphSpec(*key)
        assert _zeta_shape(spec) == want, spec.label()
    # the four square-factor exponents: 24, 64, 729, 2349
    exps = [_zeta_shape(GraphSpec(*k))[0] for k in ZETA_CONSISTENT]
    assert exps == [24, 64, 729, 2349]
    _announce("8 (zeta, cross-checked)", True)


def test_criterion_8_zeta_published_coefficients():
    """Verbatim published factorization of the 60-regular complement.

    FAILS BY DESIGN: the published factors carry 19u^2, but the reciprocal
    zeta of a k-regular graph has quadratic coefficient k-1 = 59 here; the
    19 belongs to the 20-regular primal graph on the line above it."""
    shape = _zeta_shape(GraphSpec(3, 1, 4, 1, True))
    _announce("8 (published 19u^2)", shape == ZETA_PUBLISHED_BH_COMPLEMENT)
    assert shape == ZETA_PUBLISHED_BH_COMPLEMENT, (
        f"computed quadratic coefficient {shape[1][0][1]}, published -19"
    )


# ---------------------------------------------------------------------------
# 9. property suites and falsification controls
# ---------------------------------------------------------------------------

def test_criterion_9_property_suites():
    checked = 0
    for p, s in PRIME_POWERS:
        for m in range(2, 17):
            fam = enumerate_family(p, s, m)
            for spec in fam:
                for sp_ in (spec, spec.complement()):
                    sp = spectrum(sp_)
                    assert sp.v == sp_.order
                    assert sp.moment(1) == 0
                    assert sp.moment(2) == sp_.order * sp.k
                    if (sp_.q, sp_.m, sp_.ell, sp_.complemented) != (2, 2, 1, False):
                        rec = srg_params(sp_)
                        assert (rec.v - rec.k - 1) * rec.d == rec.k * (rec.k - rec.e - 1)
                if not spec.is_half:
                    assert eigenvalue_relations_check(spec) == []
                checked += 1
            for a in fam:
                for b in fam:
                    if a != b and is_subgraph(a, b):
                        ka, kb = spectrum(a).k, spectrum(b).k
                        assert kb % ka == 0
                        assert closed_walks(b, 2) % closed_walks(a, 2) == 0
    assert checked > 50
    _announce("9 (properties)", True, f"{checked} family members")


def test_criterion_9_falsification_controls():
    import dataclasses
    import numpy as np

    g = build_graph(GraphSpec(2, 1, 4, 1))
    adj = g.adjacency.copy()
    i, j = map(int, np.argwhere(adj)[0])
    adj[i, j] = adj[j, i] = False
    corrupted = dataclasses.replace(g, adjacency=adj)
    with pytest.raises(NotStronglyRegular):
        count_srg_params(corrupted)
    assert not verify_a2_identity(corrupted, (16, 5, 0, 2))
    assert not verify_a2_identity(g, (16, 5, 0, 3))
    cert = waring_number(GraphSpec(2, 1, 4, 1))
    bad = dict(cert.witnesses)
    target = next(a for a in bad if a != 0)
    x, y = bad[target]
    bad[target] = (x, (y + 3) % 16 or 2)
    assert not verify_waring(dataclasses.replace(cert, witnesses=bad), g.field)
    assert count_trees_bruteforce(corrupted) != 2**31
    _announce("9 (falsification controls)", True)
