"""Exact arithmetic in F_{p^n} with discrete-log, exponential and Zech tables.

A field F_{q^m} with q = p^s is realized as a single degree-n extension of
F_p, n = s*m; the intermediate field F_q is recovered as the fixed field of
the s-fold Frobenius. Elements are identified with integers in [0, p^n):
the base-p digits of the index are the coefficients of the residue
polynomial (little-endian). Index 0 is zero, index 1 is one, and the prime
subfield occupies indices 0..p-1.

The defining modulus is the lexicographically least monic irreducible of
degree n (non-leading coefficients compared as a base-p integer), and the
distinguished generator alpha is the primitive element of least index, so
every table is reproducible from (p, s, m) alone.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import factorize, is_prime
from .budgets import table_budget
from .errors import BudgetExceeded, CompositeP, NotASubfield, ZeroElement

_BLOCK = 4096


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (little-endian coefficient lists)
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    n = len(mod) - 1
    # reduce by the monic modulus
    for i in range(len(out) - 1, n - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(n):
                out[i - n + j] = (out[i - n + j] - c * mod[j]) % p
    del out[n:]
    out.extend([0] * (n - len(out)))
    return out


def _poly_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    n = len(mod) - 1
    result = [1] + [0] * (n - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p) if p > 2 else 1
        b_m = [(c * inv) % p for c in b]
        # a mod b_m
        r = list(a)
        while len(r) >= len(b_m) and _poly_trim(r):
            d = len(r) - len(b_m)
            c = r[-1]
            for j, bj in enumerate(b_m):
                r[d + j] = (r[d + j] - c * bj) % p
            _poly_trim(r)
        a, b = b, r
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    """Monic f of degree n is irreducible iff x^(p^n) = x mod f and
    x^(p^(n/r)) - x is coprime to f for every prime r | n."""
    n = len(f) - 1
    x = [0, 1] if n > 1 else [0]
    if n == 1:
        return True
    xq = _poly_powmod([0, 1], p**n, f, p)
    if _poly_trim([(xq[i] - x[i]) % p if i < len(x) else xq[i] for i in range(n)]):
        return False
    for r in factorize(n):
        xr = _poly_powmod([0, 1], p ** (n // r), f, p)
        diff = [(xr[i] - (1 if i == 1 else 0)) % p for i in range(n)]
        g = _poly_gcd(f, diff, p)
        if len(g) - 1 != 0:
            return False
    return True


def _index_digits(idx: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        idx, d = divmod(idx, p)
        out.append(d)
    return out


# ---------------------------------------------------------------------------
# field parameters and tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldParams:
    """F_{q^m} with q = p^s, realized over the prime field of degree n = s*m."""

    p: int
    s: int
    m: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise CompositeP(f"p = {self.p} is not prime")
        if self.s < 1 or self.m < 1:
            raise ValueError("s and m must be positive")

    @property
    def n(self) -> int:
        return self.s * self.m

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def order(self) -> int:
        return self.p**self.n


@dataclass(frozen=True)
class FieldElement:
    """A field element carried as its canonical integer index."""

    field: "FieldTable"
    index: int

    @property
    def coeffs(self) -> list[int]:
        return _index_digits(self.index, self.field.p, self.field.n)

    def __add__(self, other):
        return self.field.element(self.field.add(self.index, _idx(other)))

    def __sub__(self, other):
        return self.field.element(self.field.sub(self.index, _idx(other)))

    def __mul__(self, other):
        return self.field.element(self.field.mul(self.index, _idx(other)))

    def __truediv__(self, other):
        return self.field.element(self.field.mul(self.index, self.field.inv(_idx(other))))

    def __pow__(self, e: int):
        return self.field.element(self.field.pow(self.index, e))

    def __neg__(self):
        return self.field.element(self.field.neg(self.index))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.index == other.index and self.field is other.field
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.index))

    def __repr__(self):
        return f"<F_{self.field.p}^{self.field.n} #{self.index}>"


def _idx(x) -> int:
    return x.index if isinstance(x, FieldElement) else int(x)


class FieldTable:
    """Immutable table-backed realization of F_{p^n}.

    exp[i] is the index of alpha^i, log is its inverse on nonzero indices
    (log[0] = -1), and zech[i] solves alpha^zech[i] = 1 + alpha^i
    (-1 where 1 + alpha^i = 0). Multiplication is exponent addition;
    addition in log form is one Zech lookup.
    """

    def __init__(self, params: FieldParams, modulus: tuple[int, ...], alpha: int):
        self.params = params
        self.p = params.p
        self.n = params.n
        self.order = params.order
        self.modulus = tuple(int(c) for c in modulus)
        self.alpha = int(alpha)
        self._unit_order_factors = factorize(self.order - 1) if self.order > 2 else {}
        self._build_tables()
        self._trace_cache: dict[int, np.ndarray] = {}

    # -- construction -------------------------------------------------------

    def _mult_by_alpha_matrix(self) -> np.ndarray:
        p, n = self.p, self.n
        alpha_poly = _index_digits(self.alpha, p, n)
        mod = list(self.modulus)
        cols = []
        for j in range(n):
            basis = [0] * j + [1]
            cols.append(_poly_mulmod(alpha_poly, basis, mod, p))
        return np.array(cols, dtype=np.int64).T % p

    def _build_tables(self):
        p, n, N = self.p, self.n, self.order
        units = N - 1
        pw = p ** np.arange(n, dtype=np.int64)
        M = self._mult_by_alpha_matrix()
        block = min(_BLOCK, units)
        S = np.zeros((n, block), dtype=np.int64)
        cur = np.zeros(n, dtype=np.int64)
        cur[0] = 1
        for i in range(block):
            S[:, i] = cur
            cur = (M @ cur) % p
        MB = np.eye(n, dtype=np.int64)
        e = block
        Msq = M
        while e:
            if e & 1:
                MB = (MB @ Msq) % p
            Msq = (Msq @ Msq) % p
            e >>= 1
        exp = np.empty(units, dtype=np.int64)
        pos = 0
        while pos < units:
            w = min(block, units - pos)
            exp[pos : pos + w] = pw @ S[:, :w]
            pos += w
            if pos < units:
                S = (MB @ S) % p
        log = np.full(N, -1, dtype=np.int64)
        log[exp] = np.arange(units, dtype=np.int64)
        if np.any(log[1:] < 0):
            raise CompositeP("alpha does not generate the unit group")  # unreachable
        low = exp % p
        plus_one = np.where(low == p - 1, exp - (p - 1), exp + 1)
        self.exp = exp
        self.log = log
        self.zech = log[plus_one]

    # -- scalar arithmetic on indices ---------------------------------------

    def element(self, index) -> FieldElement:
        return FieldElement(self, int(_idx(index)))

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p, out, pw = self.p, 0, 1
        for _ in range(self.n):
            out += ((a + b) % p) * pw
            a //= p
            b //= p
            pw *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p, out, pw = self.p, 0, 1
        for _ in range(self.n):
            out += ((-a) % p) * pw
            a //= p
            pw *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("zero has no inverse")
        return int(self.exp[(-int(self.log[a])) % (self.order - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroElement("zero to a negative power")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.order - 1)])

    def frobenius(self, a: int, i: int = 1) -> int:
        return self.pow(a, self.p**i)

    # -- vectorized arithmetic on index arrays ------------------------------

    def add_arrays(self, a: np.ndarray, b) -> np.ndarray:
        """Digit-wise sum of index arrays (b may be a scalar index)."""
        if self.p == 2:
            return np.bitwise_xor(a, b)
        p = self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.n):
            out += ((a + b) % p) * pw
            a = a // p
            b = b // p
            pw *= p
        return out

    def neg_array(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.asarray(a, dtype=np.int64).copy()
        p = self.p
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        pw = 1
        for _ in range(self.n):
            out += ((-a) % p) * pw
            a = a // p
            pw *= p
        return out

    def mul_array(self, a: np.ndarray, b_index: int) -> np.ndarray:
        """Elementwise product of an index array with one fixed element."""
        if b_index == 0:
            return np.zeros(np.asarray(a).shape, dtype=np.int64)
        shift = int(self.log[b_index])
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = a != 0
        out[nz] = self.exp[(self.log[a[nz]] + shift) % (self.order - 1)]
        return out

    def pow_array(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = a != 0
        out[nz] = self.exp[(self.log[a[nz]] * e) % (self.order - 1)]
        if e == 0:
            out[~nz] = 1
        return out

    # -- traces and subfields ------------------------------------------------

    def trace_map(self, to_degree: int, from_degree: int | None = None) -> np.ndarray:
        """Index array of the relative trace Tr_{p^from / p^to}(x) for every
        index x, cached per (from, to). Entries are only meaningful for x in
        the degree-``from`` subfield (the trace sums from/to Frobenius
        iterates regardless)."""
        t = to_degree
        f = self.n if from_degree is None else from_degree
        if f % t or self.n % f:
            raise NotASubfield(f"need to | from | n, got {t} | {f} | {self.n}")
        if (f, t) not in self._trace_cache:
            idx = np.arange(self.order, dtype=np.int64)
            acc = idx.copy()
            y = idx
            for _ in range(f // t - 1):
                y = self.pow_array(y, self.p**t)
                acc = self.add_arrays(acc, y)
            if f == self.n and not np.array_equal(self.pow_array(acc, self.p**t), acc):
                raise NotASubfield("trace image escaped the target subfield")  # unreachable
            self._trace_cache[(f, t)] = acc
        return self._trace_cache[(f, t)]

    def subfield_indices(self, t: int) -> np.ndarray:
        """Sorted indices of the subfield with p^t elements."""
        if self.n % t:
            raise NotASubfield(f"degree {t} does not divide {self.n}")
        size = self.p**t
        if size == self.order:
            return np.arange(self.order, dtype=np.int64)
        step = (self.order - 1) // (size - 1)
        members = self.exp[:: step][: size - 1]
        return np.sort(np.concatenate(([0], members)))

    def in_subfield(self, a: int, t: int) -> bool:
        return self.pow(a, self.p**t) == a


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def build_field(params: FieldParams, max_order: int | None = None) -> FieldTable:
    """Construct the canonical table-backed realization of F_{p^(s*m)}.

    The modulus is the least monic irreducible of degree n in the base-p
    ordering of its non-leading coefficients; alpha is the least-index
    primitive element. Both searches are deterministic, so serialized
    artifacts are stable across runs.
    """
    budget = table_budget(max_order)
    if params.order > budget:
        raise BudgetExceeded(
            f"p^n = {params.order} exceeds the table budget {budget}"
        )
    p, n = params.p, params.n
    modulus = None
    for c in range(params.order):
        cand = _index_digits(c, p, n) + [1]
        if n >= 2 and cand[0] == 0:
            continue  # divisible by x
        if _is_irreducible(cand, p):
            modulus = cand
            break
    if modulus is None:  # cannot happen: irreducibles exist in every degree
        raise CompositeP(f"no irreducible of degree {n} over F_{p}")
    alpha = _find_primitive(modulus, params)
    table = FieldTable(params, tuple(modulus), alpha)
    return table


def _find_primitive(modulus: list[int], params: FieldParams) -> int:
    p, n, N = params.p, params.n, params.order
    if N == 2:
        return 1
    units = N - 1
    primes = list(factorize(units))
    for idx in range(2, N):
        cand = _index_digits(idx, p, n)
        for r in primes:
            e = _poly_powmod(cand, units // r, modulus, p)
            if _poly_trim(list(e)) == [1]:
                break
        else:
            return idx
    raise CompositeP("no primitive element found")  # unreachable


def trace(x: FieldElement, from_degree: int, to_degree: int) -> FieldElement:
    """Relative trace sum_{i<r} x^(p^(t*i)) with r = from/to (degrees over
    the prime field). x must lie in the subfield of size p^from."""
    fld = x.field
    if from_degree % to_degree or fld.n % from_degree:
        raise NotASubfield(
            f"need to | from | n, got to={to_degree}, from={from_degree}, n={fld.n}"
        )
    if fld.pow(x.index, fld.p**from_degree) != x.index:
        raise NotASubfield(f"element {x.index} not in the degree-{from_degree} subfield")
    acc = x.index
    y = x.index
    for _ in range(from_degree // to_degree - 1):
        y = fld.pow(y, fld.p**to_degree)
        acc = fld.add(acc, y)
    return fld.element(acc)


def element_order(x: FieldElement) -> int:
    """Multiplicative order, by stripping prime factors from p^n - 1."""
    if x.index == 0:
        raise ZeroElement("zero has no multiplicative order")
    fld = x.field
    order = fld.order - 1
    if order == 1:
        return 1
    for r in fld._unit_order_factors:
        while order % r == 0 and fld.pow(x.index, order // r) == 1:
            order //= r
    return order


@lru_cache(maxsize=32)
def get_field(p: int, s: int, m: int, max_order: int | None = None) -> FieldTable:
    """Memoized build_field; tables are immutable so sharing is safe."""
    return build_field(FieldParams(p, s, m), max_order=max_order)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def field_to_dict(fld: FieldTable) -> dict:
    return {
        "p": fld.p,
        "s": fld.params.s,
        "m": fld.params.m,
        "modulus": list(fld.modulus),
        "alpha": fld.alpha,
    }


def field_from_dict(d: dict) -> FieldTable:
    params = FieldParams(int(d["p"]), int(d["s"]), int(d["m"]))
    if params.order > table_budget(None):
        raise BudgetExceeded("serialized field exceeds the table budget")
    return FieldTable(params, tuple(int(c) for c in d["modulus"]), int(d["alpha"]))


def element_to_string(x: FieldElement) -> str:
    """Little-endian base-p digit string; comma-separated when p > 10."""
    digits = x.coeffs
    if x.field.p <= 10:
        return "".join(str(d) for d in digits)
    return ",".join(str(d) for d in digits)


def element_from_string(fld: FieldTable, s: str) -> FieldElement:
    digits = [int(c) for c in (s.split(",") if "," in s else s)]
    if len(digits) != fld.n or any(not 0 <= d < fld.p for d in digits):
        raise ValueError(f"bad digit string {s!r} for F_{fld.p}^{fld.n}")
    idx = 0
    for d in reversed(digits):
        idx = idx * fld.p + d
    return fld.element(idx)
