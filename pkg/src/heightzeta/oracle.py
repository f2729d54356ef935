"""Brute-force ground truth over F_q(t): enumerate and tabulate heights.

Every x in F_q(t) with max(deg num, deg den) <= n appears exactly once in
canonical form (monic denominator, coprime parts), ordered by denominator
degree, then denominator, then numerator, both lexicographic in ascending
coefficient codes.  The logical enumeration size is q^(2n+1), and a budget
guard refuses runs past 10^8 of these unless overridden.

Two counting strategies produce the same tables and cross-check each other
in the tests:

* ``enumerate``: stream every element and measure it directly from the
  valuation definitions; the slow, assumption-free path.
* ``fast`` (default): walk denominators only.  For a fixed monic Q the
  coprime numerators of degree < deg Q are exactly the unit residues mod Q,
  and each residue class contributes (q-1)q^(a-deg Q) numerators of exact
  degree a >= deg Q, so per-denominator tallies need only the unit count of
  F_q[t]/Q and the divisibility of Q by the bad places.  No zeta identity
  enters: this is still counting from first principles, place by place.

Whichever strategy runs, work is split over denominator chunks and merged
by commutative addition, so results are independent of the chunk count; the
HEIGHTZETA_THREADS environment variable caps the worker pool.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .gf import FqField, PolyFq, RatFuncFq, all_polys, monic_polys
from .places import PhiSpec, canonical_height_exp, standard_height_exp

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CountTable:
    """Counts per height exponent: m -> #x (canonical q^(m/d) or standard q^m)."""

    q: int
    d: int
    counts: dict[int, int]
    max_m: int

    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, m: int) -> int:
        return self.counts.get(m, 0)


def enumeration_size(q: int, n: int) -> int:
    return q ** (2 * n + 1)


def _check_budget(field: FqField, n: int, budget: int, override: bool):
    size = enumeration_size(field.q, n)
    if size > budget and not override:
        raise BudgetExceeded(
            f"enumeration of ~{size} elements (q={field.q}, height exponent {n}) "
            f"exceeds the budget {budget}; pass override to force"
        )


def max_height_exponent_within_budget(q: int, budget: int = DEFAULT_BUDGET) -> int:
    n = 0
    while enumeration_size(q, n + 1) <= budget:
        n += 1
    return n


def _coprime_numerators(field: FqField, den: PolyFq, n: int):
    if den.is_one():
        yield from all_polys(field, n)
        return
    one = field.poly_one()
    for num in all_polys(field, n):
        if num.gcd(den) == one:
            yield num


def enumerate_elements(
    field: FqField, n: int, budget: int = DEFAULT_BUDGET, override: bool = False
):
    """Stream all x with standard height exponent <= n, each exactly once."""
    if n < 0:
        raise ValueError("height exponent bound must be >= 0")
    _check_budget(field, n, budget, override)
    for b in range(n + 1):
        for den in monic_polys(field, b):
            for num in _coprime_numerators(field, den, n):
                yield RatFuncFq(num, den)


def _worker_count() -> int:
    raw = os.environ.get("HEIGHTZETA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _merge(dicts):
    out: dict[int, int] = {}
    for d in dicts:
        for k, v in d.items():
            out[k] = out.get(k, 0) + v
    return out


def _chunked_denominators(field: FqField, n: int, chunks: int):
    dens = [den for b in range(n + 1) for den in monic_polys(field, b)]
    if chunks <= 1:
        return [dens]
    size = (len(dens) + chunks - 1) // chunks
    return [dens[i : i + size] for i in range(0, len(dens), size)]


def _run_chunks(field: FqField, n: int, per_denominator):
    """Apply per_denominator over all monic denominators, merging count dicts."""
    workers = _worker_count()
    chunks = _chunked_denominators(field, n, workers)

    def run(chunk):
        local: dict[int, int] = {}
        for den in chunk:
            per_denominator(den, local)
        return local

    if len(chunks) == 1:
        return run(chunks[0])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return _merge(pool.map(run, chunks))


def _unit_count(den: PolyFq) -> int:
    """#(F_q[t]/den)^* via the factorization of den."""
    q = den.field.q
    if den.is_one():
        return 1
    _, factors = den.factor()
    total = 1
    for pi, mult in factors:
        qpi = q**pi.degree
        total *= qpi**mult - qpi ** (mult - 1)
    return total


def _degree_class_counts(field: FqField, den: PolyFq, n: int):
    """Yield (h, count) for coprime numerators by standard height exponent.

    h = max(deg num, deg den); counts cover all coprime numerators with
    deg <= n, including x = 0 when den = 1.
    """
    q = field.q
    b = den.degree
    if b == 0:
        yield 0, 1  # x = 0
        for a in range(0, n + 1):
            yield a, (q - 1) * q**a
        return
    units = _unit_count(den)
    yield b, units  # all residues: deg num < b
    for a in range(b, n + 1):
        yield a, units * (q - 1) * q ** (a - b)


def count_canonical_heights(
    phi: PhiSpec,
    m_max: int,
    budget: int = DEFAULT_BUDGET,
    override: bool = False,
    method: str = "fast",
) -> CountTable:
    """Exact counts a_m = #{x : canonical height = q^(m/d)} for m <= m_max.

    Enumeration covers standard height exponents up to floor(m_max/d), which
    suffices because m >= d*h always.
    """
    field = phi.field
    d = phi.d
    n = m_max // d
    _check_budget(field, n, budget, override)
    bad = phi.bad_places

    if method == "enumerate":
        def per_den(den: PolyFq, local: dict[int, int]):
            for num in _coprime_numerators(field, den, n):
                m = canonical_height_exp(RatFuncFq(num, den), phi)
                if m <= m_max:
                    local[m] = local.get(m, 0) + 1

    elif method == "fast":
        def per_den(den: PolyFq, local: dict[int, int]):
            corr = 0
            for bp in bad:
                if not (den % bp.pi).is_zero():
                    corr += bp.f_v * bp.vf
            for h, count in _degree_class_counts(field, den, n):
                m = d * h + corr
                if m <= m_max:
                    local[m] = local.get(m, 0) + count

    else:
        raise ValueError(f"unknown counting method {method!r}")

    counts = _run_chunks(field, n, per_den)
    return CountTable(q=field.q, d=d, counts=counts, max_m=m_max)


def count_region(
    phi: PhiSpec,
    t_set,
    h_max: int,
    budget: int = DEFAULT_BUDGET,
    override: bool = False,
    method: str = "fast",
) -> CountTable:
    """Standard-height histogram of the region D_T for T a set of bad indices.

    D_T requires v(x) >= 0 at the bad places indexed by T and v(x) < 0 at
    the others; membership depends only on which bad places divide the
    denominator.
    """
    field = phi.field
    t_set = frozenset(t_set)
    _check_budget(field, h_max, budget, override)
    bad = phi.bad_places

    def profile(den: PolyFq) -> frozenset:
        return frozenset(
            i for i, bp in enumerate(bad) if (den % bp.pi).is_zero()
        )

    want = frozenset(range(len(bad))) - t_set

    if method == "enumerate":
        def per_den(den: PolyFq, local: dict[int, int]):
            if profile(den) != want:
                return
            for num in _coprime_numerators(field, den, h_max):
                h = standard_height_exp(RatFuncFq(num, den))
                local[h] = local.get(h, 0) + 1

    elif method == "fast":
        def per_den(den: PolyFq, local: dict[int, int]):
            if profile(den) != want:
                return
            for h, count in _degree_class_counts(field, den, h_max):
                local[h] = local.get(h, 0) + count

    else:
        raise ValueError(f"unknown counting method {method!r}")

    counts = _run_chunks(field, h_max, per_den)
    return CountTable(q=field.q, d=phi.d, counts=counts, max_m=h_max)


def cumulative_count(
    phi: PhiSpec,
    k: int,
    budget: int = DEFAULT_BUDGET,
    override: bool = False,
    method: str = "fast",
) -> int:
    """N(B) for B = q^(k/d): number of x with canonical height at most B."""
    if k < 0:
        raise ValueError("bound exponent must be >= 0")
    table = count_canonical_heights(phi, k, budget=budget, override=override, method=method)
    return sum(v for m, v in table.counts.items() if m <= k)
