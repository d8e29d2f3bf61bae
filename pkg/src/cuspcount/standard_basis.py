"""Standard bases of ideals in the local ring at the origin.

Everything here runs over one fixed local monomial order: lower total degree
means larger monomial, ties broken reverse-lexicographically, so 1 is the
largest monomial and the order is compatible with multiplication.  Leading
monomials with respect to this order determine membership and codimension in
the localization of the polynomial ring at the origin; the ring of analytic
germs is faithfully flat over that localization, so for polynomial data a
vanishing normal form is exactly membership in the corresponding ideal of
germs.

The basis itself is computed by Lazard's method: each generator is
homogenized with an auxiliary variable, a Groebner basis is computed for the
global order "total degree first, ties by the local order on the x-part",
and the result is dehomogenized.  Since s-polynomials of homogeneous inputs
stay homogeneous, every reduction happens inside a single degree, which
avoids the degree-climbing reductions Mora's direct algorithm is prone to.
The homogenizing variable is never materialized: a homogeneous polynomial is
stored as its x-part plus its total degree, the exponent of the auxiliary
variable being determined by the difference.

Membership queries use Mora's ecart-controlled weak normal form against the
completed basis.  The weak normal form of p is a polynomial h with
u*p = (combination of basis elements) + h for some unit u = 1 + (higher
order) of the local ring; h = 0 if and only if p lies in the localized
ideal.  Because of the unit, h represents the class of p only up to that
unit; it is exact, deterministic, and scales linearly with p.

Two facts are exploited for speed, both exact:

* Once the partial basis has a pure power of every variable among its lead
  monomials, every monomial of degree >= D := 1 + (max staircase degree)
  reduces to zero against it, hence lies in the localized ideal.  From then
  on all polynomials are truncated below degree D; this caps degree and
  coefficient growth and never changes the localized ideal.
* All basis elements are content-stripped integer polynomials, and working
  polynomials keep exact rational coefficients, so ``normal_form(c*p) ==
  c*normal_form(p)`` holds on the nose.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iterproduct
from math import gcd, inf
from typing import Sequence

from .errors import DimensionInfinite
from .polyring import (
    Monomial,
    Poly,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_sort_key,
)

#: returned by quotient_dim when the quotient is not finite-dimensional
INFINITE = inf

#: weak-normal-form budgets before contains() falls back to the exact
#: ideal-comparison route; the bit cap catches coefficient explosion long
#: before the step cap would
_NF_STEP_CAP = 20_000
_NF_BIT_CAP = 8_000


@dataclass(frozen=True)
class Cobasis:
    """The staircase: monomials outside the lead ideal, canonically sorted."""

    monomials: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)


# ---------------------------------------------------------------------------
# integer polynomial helpers
# ---------------------------------------------------------------------------


def _primitive(terms: dict[Monomial, int]) -> dict[Monomial, int]:
    """Strip integer content and normalize the lead coefficient positive."""
    if not terms:
        return terms
    g = 0
    for c in terms.values():
        g = gcd(g, c)
    lm = min(terms, key=monomial_sort_key)
    if terms[lm] < 0:
        g = -g
    if g == 1:
        return terms
    return {m: c // g for m, c in terms.items()}


def _to_int_terms(p: Poly) -> dict[Monomial, int]:
    """Clear denominators; result is primitive with positive lead coefficient."""
    if p.is_zero():
        return {}
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return _primitive({m: int(c * den) for m, c in p.terms.items()})


def _int_snapshot(h: dict[Monomial, Fraction]) -> dict[Monomial, int]:
    den = 1
    for c in h.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {m: int(c * den) for m, c in h.items()}


def _truncate(terms: dict[Monomial, int], trunc: int | None) -> dict[Monomial, int]:
    if trunc is None:
        return terms
    return {m: c for m, c in terms.items() if sum(m) < trunc}


# ---------------------------------------------------------------------------
# homogeneous elements (the homogenizing exponent is implicit)
# ---------------------------------------------------------------------------


class _HElem:
    """A homogeneous basis element: x-part terms plus its total degree.

    A term x^m carries an implicit factor of the homogenizing variable with
    exponent d - |m|.  The >-lead of a homogeneous element is the term whose
    x-part is largest in the local order.
    """

    __slots__ = ("d", "lm", "lc", "a", "tail", "size", "idx")

    def __init__(self, terms: dict[Monomial, int], d: int, idx: int):
        lm = min(terms, key=monomial_sort_key)
        self.d = d
        self.lm = lm
        self.lc = terms[lm]
        self.a = d - sum(lm)  # homogenizer exponent of the lead
        self.tail = tuple(sorted(
            ((m, c) for m, c in terms.items() if m != lm),
            key=lambda t: monomial_sort_key(t[0]),
        ))
        self.size = 1 + len(self.tail)
        self.idx = idx

    def terms(self) -> dict[Monomial, int]:
        out = {self.lm: self.lc}
        out.update(self.tail)
        return out


def _hspoly(f: _HElem, g: _HElem, trunc: int | None) -> tuple[int, dict[Monomial, int]]:
    """S-polynomial in the homogenized ring; returns (degree, x-part terms)."""
    lcm_x = monomial_lcm(f.lm, g.lm)
    a = max(f.a, g.a)
    d_sp = a + sum(lcm_x)
    cl = f.lc * g.lc // gcd(f.lc, g.lc)
    af, ag = cl // f.lc, cl // g.lc
    wf, wg = monomial_div(lcm_x, f.lm), monomial_div(lcm_x, g.lm)
    out: dict[Monomial, int] = {}
    for m, c in f.tail:
        mm = monomial_mul(m, wf)
        if trunc is not None and sum(mm) >= trunc:
            continue
        out[mm] = out.get(mm, 0) + af * c
    for m, c in g.tail:
        mm = monomial_mul(m, wg)
        if trunc is not None and sum(mm) >= trunc:
            continue
        s = out.get(mm, 0) - ag * c
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return d_sp, out


def _hreduce(
    d_p: int, p_terms: dict[Monomial, int], basis: list[_HElem], trunc: int | None
) -> dict[Monomial, int]:
    """Full reduction of a homogeneous polynomial of degree d_p.

    A term x^m (implicit homogenizer exponent d_p - |m|) is reducible by r
    when r's lead x-part divides m and r's lead homogenizer exponent fits,
    i.e. r.a <= d_p - |m|.  The order is global, so plain top-down reduction
    terminates; the result is primitive integer.
    """
    h: dict[Monomial, Fraction] = {}
    heap: list[tuple] = []
    for m, c in p_terms.items():
        if trunc is not None and sum(m) >= trunc:
            continue
        h[m] = Fraction(c)
        heapq.heappush(heap, (monomial_sort_key(m), m))
    out: dict[Monomial, Fraction] = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = h.pop(m, None)
        if c is None:
            continue
        hexp = d_p - sum(m)
        red = None
        for r in basis:
            if r.a <= hexp and monomial_divides(r.lm, m):
                if red is None or (r.size, r.idx) < (red.size, red.idx):
                    red = r
        if red is None:
            out[m] = c
            continue
        q = c / red.lc
        w = monomial_div(m, red.lm)
        for mono, cc in red.tail:
            mm = monomial_mul(mono, w)
            if trunc is not None and sum(mm) >= trunc:
                continue
            old = h.get(mm)
            new = (old if old is not None else Fraction(0)) - q * cc
            if new == 0:
                if old is not None:
                    del h[mm]
            else:
                h[mm] = new
                if old is None:
                    heapq.heappush(heap, (monomial_sort_key(mm), mm))
    return _primitive(_int_snapshot(out))


# ---------------------------------------------------------------------------
# staircase of a lead-monomial set
# ---------------------------------------------------------------------------


def _staircase(
    leads: Sequence[Monomial], nvars: int, trunc: int | None
) -> list[Monomial] | None:
    """Monomials under the staircase, or None when there are infinitely many."""
    bounds: list[int] = []
    for v in range(nvars):
        cands = [m[v] for m in leads if m[v] > 0 and sum(m) == m[v]]
        if trunc is not None:
            cands.append(trunc)
        if not cands:
            return None
        bounds.append(min(cands))
    out: list[Monomial] = []
    for mono in _iterproduct(*(range(b) for b in bounds)):
        if trunc is not None and sum(mono) >= trunc:
            continue
        if any(monomial_divides(lm, mono) for lm in leads):
            continue
        out.append(mono)
    return out


# ---------------------------------------------------------------------------
# completion (Buchberger on the homogenized ideal)
# ---------------------------------------------------------------------------


class _Core:
    """Result of a completed standard-basis computation (dehomogenized)."""

    __slots__ = ("reducers", "trunc", "is_unit", "nvars")

    def __init__(self, reducers: list["_Elem"], trunc: int | None, is_unit: bool, nvars: int):
        self.reducers = reducers
        self.trunc = trunc
        self.is_unit = is_unit
        self.nvars = nvars

    def leads(self) -> list[Monomial]:
        return [r.lm for r in self.reducers]


class _Elem:
    """A dehomogenized basis element with cached lead data for Mora reduction."""

    __slots__ = ("lm", "lc", "tail", "ecart", "size", "idx")

    def __init__(self, terms: dict[Monomial, int], idx: int):
        lm = min(terms, key=monomial_sort_key)
        self.lm = lm
        self.lc = terms[lm]
        self.tail = tuple(sorted(
            ((m, c) for m, c in terms.items() if m != lm),
            key=lambda t: monomial_sort_key(t[0]),
        ))
        self.ecart = max(sum(m) for m in terms) - sum(lm)
        self.size = 1 + len(self.tail)
        self.idx = idx

    def terms(self) -> dict[Monomial, int]:
        d = {self.lm: self.lc}
        d.update(self.tail)
        return d


def _complete(gens: list[dict[Monomial, int]], nvars: int) -> _Core:
    elems: list[_HElem] = []
    alive: list[bool] = []
    pairs: list[tuple] = []
    done: set[tuple[int, int]] = set()
    trunc: int | None = None
    zero_mono = tuple([0] * nvars)

    def refresh_truncation() -> None:
        nonlocal trunc
        leads = [e.lm for e, a in zip(elems, alive) if a]
        st = _staircase(leads, nvars, trunc)
        if st is None:
            return
        new_trunc = 1 + max((sum(m) for m in st), default=0)
        if trunc is not None and new_trunc >= trunc:
            return
        trunc = new_trunc
        for i, e in enumerate(elems):
            if not alive[i]:
                continue
            cut = _truncate(e.terms(), trunc)
            if not cut:
                alive[i] = False
            elif len(cut) != e.size:
                elems[i] = _HElem(_primitive(cut), e.d, e.idx)

    def add(terms: dict[Monomial, int], d: int) -> bool:
        """Returns True when the dehomogenized ideal is the whole local ring."""
        terms = _primitive(_truncate(terms, trunc))
        if not terms:
            return False
        e = _HElem(terms, d, len(elems))
        if e.lm == zero_mono:
            return True
        for j, other in enumerate(elems):
            if not alive[j]:
                continue
            lcm_x = monomial_lcm(e.lm, other.lm)
            key = (max(e.a, other.a) + sum(lcm_x), monomial_sort_key(lcm_x))
            heapq.heappush(pairs, (key, j, e.idx))
        elems.append(e)
        alive.append(True)
        refresh_truncation()
        return False

    for g in gens:
        d = max(sum(m) for m in g)
        if add(g, d):
            return _Core([_Elem({zero_mono: 1}, 0)], 0, True, nvars)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        done.add((i, j))
        if not (alive[i] and alive[j]):
            continue
        ei, ej = elems[i], elems[j]
        lcm_x = monomial_lcm(ei.lm, ej.lm)
        if trunc is not None and sum(lcm_x) >= trunc:
            continue
        # product criterion: coprime x-leads and one lead free of the
        # homogenizer make the s-polynomial reduce to zero
        if (min(ei.a, ej.a) == 0
                and all(min(a, b) == 0 for a, b in zip(ei.lm, ej.lm))):
            continue
        # chain criterion
        skip = False
        lcm_a = max(ei.a, ej.a)
        for k, ek in enumerate(elems):
            if k == i or k == j or not alive[k]:
                continue
            if (ek.a <= lcm_a and monomial_divides(ek.lm, lcm_x)
                    and (min(i, k), max(i, k)) in done
                    and (min(j, k), max(j, k)) in done):
                skip = True
                break
        if skip:
            continue
        d_sp, sp = _hspoly(ei, ej, trunc)
        if not sp:
            continue
        reducers = [e for e, a in zip(elems, alive) if a]
        nf = _hreduce(d_sp, sp, reducers, trunc)
        if not nf:
            continue
        if add(nf, d_sp):
            return _Core([_Elem({zero_mono: 1}, 0)], 0, True, nvars)

    # dehomogenize; keep only elements with minimal lead monomials
    final = [e for e, a in zip(elems, alive) if a]
    kept: list[_HElem] = []
    for e in final:
        if not any(
            other is not e and monomial_divides(other.lm, e.lm)
            and (monomial_div(e.lm, other.lm) != zero_mono or other.idx < e.idx)
            for other in final
        ):
            kept.append(e)
    terms_list = [e.terms() for e in kept]
    if trunc is not None:
        # the truncation-degree monomials are members of the localized ideal;
        # materialize the ones no kept lead covers so the basis generates the
        # full lead ideal on its own
        leads = [e.lm for e in kept]
        for mono in _iterproduct(*(range(trunc + 1) for _ in range(nvars))):
            if sum(mono) == trunc and not any(
                monomial_divides(lm, mono) for lm in leads
            ):
                terms_list.append({mono: 1})
    reducers = [_Elem(t, n) for n, t in enumerate(terms_list)]
    return _Core(reducers, trunc, False, nvars)


# ---------------------------------------------------------------------------
# Mora weak normal form (membership against a completed basis)
# ---------------------------------------------------------------------------


class _NFBudgetExceeded(Exception):
    pass


def _pick_reducer(reducers: list[_Elem], m: Monomial) -> _Elem | None:
    best = None
    for r in reducers:
        if monomial_divides(r.lm, m):
            if best is None or (r.ecart, r.size, r.idx) < (best.ecart, best.size, best.idx):
                best = r
    return best


def _weak_nf(
    p_terms: dict, reducers: list[_Elem], trunc: int | None,
    step_cap: int | None = None, bit_cap: int | None = None,
) -> dict[Monomial, Fraction]:
    """Mora weak normal form of p against the given reducers.

    Coefficients of the input may be int or Fraction; the result is exact and
    scales linearly with the input (no internal rescaling of the remainder).
    Raises _NFBudgetExceeded when a step or coefficient-size cap is hit.
    """
    h: dict[Monomial, Fraction] = {}
    lead_heap: list[tuple] = []
    deg_heap: list[tuple[int, Monomial]] = []
    for m, c in p_terms.items():
        if trunc is not None and sum(m) >= trunc:
            continue
        h[m] = Fraction(c)
        heapq.heappush(lead_heap, (monomial_sort_key(m), m))
        heapq.heappush(deg_heap, (-sum(m), m))
    local = list(reducers)
    steps = 0

    while lead_heap:
        _, m = heapq.heappop(lead_heap)
        c = h.get(m)
        if c is None:
            continue
        red = _pick_reducer(local, m)
        if red is None:
            return h
        steps += 1
        if step_cap is not None and steps > step_cap:
            raise _NFBudgetExceeded
        if bit_cap is not None and (
            c.numerator.bit_length() + c.denominator.bit_length() > bit_cap
        ):
            raise _NFBudgetExceeded
        # current max degree of h, for the ecart comparison
        while deg_heap and deg_heap[0][1] not in h:
            heapq.heappop(deg_heap)
        ecart_h = (-deg_heap[0][0] if deg_heap else sum(m)) - sum(m)
        if red.ecart > ecart_h:
            frozen = _primitive(_int_snapshot(h))
            local.append(_Elem(frozen, len(local)))
        q = c / red.lc
        del h[m]
        w = monomial_div(m, red.lm)
        for mono, cc in red.tail:
            mm = monomial_mul(mono, w)
            if trunc is not None and sum(mm) >= trunc:
                continue
            old = h.get(mm)
            new = (old if old is not None else Fraction(0)) - q * cc
            if new == 0:
                if old is not None:
                    del h[mm]
            else:
                h[mm] = new
                if old is None:
                    heapq.heappush(lead_heap, (monomial_sort_key(mm), mm))
                    heapq.heappush(deg_heap, (-sum(mm), mm))
    return {}


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------


class LocalIdeal:
    """An ideal of the local ring, with a lazily computed standard basis.

    The basis is computed at most once (thread-safe single flight); all
    queries afterwards are read-only.
    """

    def __init__(self, generators: Sequence[Poly]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("LocalIdeal needs at least one generator")
        vars0 = gens[0].vars
        for g in gens:
            if g.vars != vars0:
                raise ValueError("generators must share one ambient")
        self.generators = gens
        self.vars = vars0
        self._lock = threading.Lock()
        self._core: _Core | None = None
        self._staircase_cache: list[Monomial] | None = None
        self._staircase_done = False

    def _ensure_core(self) -> _Core:
        if self._core is None:
            with self._lock:
                if self._core is None:
                    gens = [_to_int_terms(g) for g in self.generators]
                    gens = [g for g in gens if g]
                    if not gens:
                        self._core = _Core([], None, False, len(self.vars))
                    else:
                        self._core = _complete(gens, len(self.vars))
        return self._core

    @property
    def std_basis(self) -> tuple[Poly, ...]:
        core = self._ensure_core()
        return tuple(
            Poly(self.vars, {m: Fraction(c) for m, c in e.terms().items()})
            for e in core.reducers
        )

    @property
    def lead_monomials(self) -> tuple[Monomial, ...]:
        return tuple(e.lm for e in self._ensure_core().reducers)

    @property
    def truncation_degree(self) -> int | None:
        """Degree D with m^D inside the localized ideal, when one was found."""
        return self._ensure_core().trunc

    def normal_form(self, p: Poly) -> Poly:
        """Mora weak normal form; zero exactly when p is in the localized ideal.

        The result represents u*p modulo the ideal for some unit
        u = 1 + (higher order); it is not in general the class of p itself.
        """
        if p.vars != self.vars:
            raise ValueError("ambient mismatch")
        core = self._ensure_core()
        if core.is_unit:
            return Poly.zero(self.vars)
        nf = _weak_nf(p.terms, core.reducers, core.trunc)
        return Poly(self.vars, nf)

    def contains(self, p: Poly) -> bool:
        """Exact membership of p in the localized ideal.

        Tries the weak normal form under a step budget; degenerate reduction
        chains fall back to comparing the ideal with the ideal augmented by
        p, which is decided by lead-ideal data alone.
        """
        if p.vars != self.vars:
            raise ValueError("ambient mismatch")
        if p.is_zero():
            return True
        core = self._ensure_core()
        if core.is_unit:
            return True
        try:
            nf = _weak_nf(
                p.terms, core.reducers, core.trunc,
                step_cap=_NF_STEP_CAP, bit_cap=_NF_BIT_CAP,
            )
            return not nf
        except _NFBudgetExceeded:
            pass
        bigger = LocalIdeal(list(self.generators) + [p])
        dim = self.quotient_dim()
        if dim != INFINITE:
            return bigger.quotient_dim() == dim
        bcore = bigger._ensure_core()
        if bcore.is_unit:
            return False
        mine = self.lead_monomials
        for lead in bcore.leads():
            if core.trunc is not None and sum(lead) >= core.trunc:
                continue
            if not any(monomial_divides(lm, lead) for lm in mine):
                return False
        return True

    def _staircase_monomials(self) -> list[Monomial] | None:
        if not self._staircase_done:
            core = self._ensure_core()
            if core.is_unit:
                self._staircase_cache = []
            else:
                self._staircase_cache = _staircase(
                    core.leads(), len(self.vars), core.trunc
                )
            self._staircase_done = True
        return self._staircase_cache

    def quotient_dim(self):
        """Vector-space dimension of the local quotient, or INFINITE."""
        st = self._staircase_monomials()
        return INFINITE if st is None else len(st)

    def cobasis(self) -> Cobasis:
        st = self._staircase_monomials()
        if st is None:
            raise DimensionInfinite(
                f"ideal in {self.vars} has infinite codimension"
            )
        return Cobasis(tuple(sorted(st, key=monomial_sort_key)))


# Function-style aliases; the methods above do the work.

def std_basis(ideal: LocalIdeal) -> tuple[Poly, ...]:
    return ideal.std_basis


def normal_form(p: Poly, ideal: LocalIdeal) -> Poly:
    return ideal.normal_form(p)


def quotient_dim(ideal: LocalIdeal):
    return ideal.quotient_dim()


def cobasis(ideal: LocalIdeal) -> Cobasis:
    return ideal.cobasis()
