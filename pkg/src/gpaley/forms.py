"""Trace forms Q(x) = Tr_{q^m/q}(gamma * x^(q^ell + 1)), their value
distributions, the attached integral character sums, and the closed-form
rank/type classification.

A form of even rank r and type eps has value counts

    N(xi) = q^(m-1) + eps * nu(xi) * q^(m - r/2 - 1),

with nu(0) = q - 1 and nu(xi) = -1 otherwise, and its character sum equals
eps * q^(m - r/2). Ranks here always land in {m, m - 2*(m,ell)} when
m/(m,ell) is even; odd m/(m,ell) is outside the classification and is
reported as such rather than guessed at.
"""

import math
from dataclasses import dataclass

import numpy as np

from .arith import gcd_power
from .errors import InternalCheckError, OutOfTheory, UnbalancedCounts, ZeroElement
from .field import FieldElement, FieldTable


@dataclass(frozen=True)
class TraceForm:
    """Q(x) = Tr_{q^m/q}(gamma * x^(q^ell+1)) on the field's full extension."""

    field: FieldTable
    gamma: int  # element index, nonzero
    ell: int

    def __post_init__(self):
        if self.gamma == 0:
            raise ZeroElement("gamma must be nonzero")
        if self.ell < 0:
            raise ValueError("ell must be nonnegative")

    @property
    def q(self) -> int:
        return self.field.params.q

    @property
    def m(self) -> int:
        return self.field.params.m

    @property
    def exponent(self) -> int:
        return self.q**self.ell + 1

    @property
    def m_ell(self) -> int:
        return self.m // math.gcd(self.m, self.ell) if self.ell else 1

    @property
    def eps_ell(self) -> int:
        if self.m_ell % 2:
            raise OutOfTheory(f"m_ell = {self.m_ell} is odd")
        return -1 if (self.m_ell // 2) % 2 else 1


@dataclass(frozen=True)
class FormClass:
    """Even rank plus the sign distinguishing the two even-rank classes."""

    rank: int
    type_sign: int

    def __post_init__(self):
        if self.rank % 2 or self.type_sign not in (-1, 1):
            raise ValueError("rank must be even and type +-1")


def evaluate_form(f: TraceForm, x) -> FieldElement:
    """Q(x), landing in the q-element subfield."""
    fld = f.field
    xi = x.index if isinstance(x, FieldElement) else int(x)
    y = fld.mul(f.gamma, fld.pow(xi, f.exponent))
    tr = int(fld.trace_map(fld.params.s)[y])
    return fld.element(tr)


def form_values(f: TraceForm) -> np.ndarray:
    """Q over the whole field as an index array (exhaustive)."""
    fld = f.field
    idx = np.arange(fld.order, dtype=np.int64)
    powers = fld.pow_array(idx, f.exponent)
    return fld.trace_map(fld.params.s)[fld.mul_array(powers, f.gamma)]


def kernel_counts(f: TraceForm) -> dict[int, int]:
    """Histogram {value index: count} of Q over the field."""
    vals = form_values(f)
    counts = np.bincount(vals, minlength=f.field.order)
    sub = f.field.subfield_indices(f.field.params.s)
    out = {int(x): int(counts[x]) for x in sub}
    if sum(out.values()) != f.field.order:
        raise InternalCheckError("form took a value outside the subfield")
    return out


def count_kernel(f: TraceForm, xi) -> int:
    """Exact # {x : Q(x) = xi} by exhaustive evaluation."""
    target = xi.index if isinstance(xi, FieldElement) else int(xi)
    if not f.field.in_subfield(target, f.field.params.s):
        raise ValueError("xi must lie in the q-element subfield")
    return int(np.count_nonzero(form_values(f) == target))


def exp_sum(f: TraceForm, a=1) -> int:
    """The character sum sum_x zeta_p^(Tr_{q/p}(a Q(x))), evaluated exactly
    as an integer: tally the residue-class counts N_c over the prime field
    and return N_0 - N_1, after insisting the counts are constant over
    c != 0 (they are whenever the sum is a rational integer of the
    even-rank shape; anything else is out of theory, not coerced)."""
    fld = f.field
    a_idx = a.index if isinstance(a, FieldElement) else int(a)
    if a_idx == 0:
        raise ZeroElement("a must be a unit of the small field")
    if not fld.in_subfield(a_idx, fld.params.s):
        raise ValueError("a must lie in the q-element subfield")
    vals = form_values(f)
    scaled = fld.mul_array(vals, a_idx)
    # Tr_{q/p} on the small field; prime-subfield elements are indices 0..p-1
    residues = fld.trace_map(1, from_degree=fld.params.s)[scaled]
    counts = np.bincount(residues, minlength=fld.p)
    nonzero = counts[1:]
    if fld.p > 2 and not (nonzero == nonzero[0]).all():
        raise UnbalancedCounts(
            f"residue counts {counts.tolist()} not constant off zero"
        )
    return int(counts[0]) - int(counts[1])


def classify_form(f: TraceForm) -> FormClass:
    """Closed-form rank/type classification.

    Even q: gamma a (q^ell+1)-th power gives rank m - 2(m,ell) and type
    -eps_ell; otherwise rank m and type eps_ell, with
    eps_ell = (-1)^(m_ell/2).

    Odd q, writing gamma = alpha^t and L = q^(m,ell) + 1:
    eps_ell = +1 and t = 0 mod L      -> (m - 2(m,ell), -1)
    eps_ell = +1 otherwise            -> (m, +1)
    eps_ell = -1 and t = L/2 mod L    -> (m - 2(m,ell), +1)
    eps_ell = -1 otherwise            -> (m, -1)
    """
    if f.m_ell % 2:
        raise OutOfTheory(f"no closed classification for odd m_ell = {f.m_ell}")
    fld = f.field
    q, m = f.q, f.m
    d = math.gcd(m, f.ell)
    eps = f.eps_ell
    low_rank = m - 2 * d
    if q % 2 == 0:
        g = gcd_power(q, m, f.ell)
        in_powers = int(fld.log[f.gamma]) % g == 0
        if in_powers:
            return FormClass(low_rank, -eps)
        return FormClass(m, eps)
    t = int(fld.log[f.gamma])
    L = q**d + 1
    if eps == 1:
        if t % L == 0:
            return FormClass(low_rank, -1)
        return FormClass(m, 1)
    if t % L == L // 2:
        return FormClass(low_rank, 1)
    return FormClass(m, -1)


def class_from_counts(q: int, m: int, counts: dict[int, int]) -> FormClass:
    """Reverse-engineer (rank, type) from an exhaustive value histogram via
    the balanced count formula; the independent check for classify_form."""
    total = q**m
    n0 = counts[0]
    base = total // q  # q^(m-1)
    delta = n0 - base
    if delta == 0:
        raise OutOfTheory("zero-count offset vanishes: not an even-rank form")
    eps = 1 if delta > 0 else -1
    step = abs(delta) // (q - 1)
    if step * (q - 1) != abs(delta):
        raise OutOfTheory("offset not divisible by q-1")
    # step = q^(m - r/2 - 1): recover r from the exact power
    power = 0
    val = step
    while val % q == 0:
        val //= q
        power += 1
    if val != 1:
        raise OutOfTheory(f"offset {step} is not a power of q")
    rank = 2 * (m - 1 - power)
    expected_off = {xi: base - eps * step for xi in counts if xi != 0}
    for xi, cnt in counts.items():
        if xi != 0 and cnt != expected_off[xi]:
            raise OutOfTheory("nonzero value counts do not match the balanced form")
    return FormClass(rank, eps)
