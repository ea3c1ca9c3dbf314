"""Upsilon and its relatives, computed by graded reduction.

For rational t the t-modified complex is graded by gr_t = M - t*A and the
coefficient of ``U^k y`` in ``dx`` becomes ``v^(gr_t(y) - gr_t(x) + 1)``.
Reducing over the valuation ring leaves one free summand; its grading is
Upsilon(t).  Between two consecutive crossings of the lines M - t*A the
maximizing line cannot change, so the whole function is recovered exactly
from finitely many evaluations.
"""

from __future__ import annotations

import bisect
import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cfk import (CfkComplex, associated_graded_support, require_valid,
                  simplify, staircase_maslovs)
from .errors import DomainError, IntegrityError, NotAKnotError
from .exact import (PLFunction, as_rational, format_rational, line_crossings,
                    rational_to_json, reduce_chain_complex, upper_envelope)

ZERO, ONE, TWO = Fraction(0), Fraction(1), Fraction(2)


def _check_t(t, lo=ZERO, hi=TWO) -> Fraction:
    t = as_rational(t)
    if not lo <= t <= hi:
        raise DomainError(f"t={t} outside [{lo}, {hi}]")
    return t


class _Prepared:
    """A validated, unit-cancelled copy of a complex ready for repeated reductions."""

    def __init__(self, c: CfkComplex):
        require_valid(c)
        self.original = c
        small = simplify(c)
        self.names = [g.name for g in small.generators]
        self.m = small.maslovs()
        self.a = small.alexanders()
        self.support = small.support()
        self.lines = sorted(set(zip(self.m, self.a)))
        # smallest original name on each line, for deterministic witnesses
        self.line_names: dict[tuple[int, int], str] = {}
        for g in c.generators:
            key = (g.maslov, g.alexander)
            if key not in self.line_names or g.name < self.line_names[key]:
                self.line_names[key] = g.name

    def free_at(self, t: Fraction) -> int:
        n, m = t.denominator, t.numerator
        grades = [n * mi - m * ai for mi, ai in zip(self.m, self.a)]
        red = reduce_chain_complex(grades, self.support, degree=n)
        if len(red.free) != 1:
            raise NotAKnotError(f"t-modified homology has free rank {len(red.free)}, expected 1")
        return red.free[0]

    def value(self, t: Fraction) -> Fraction:
        i = self.free_at(t)
        return self.m[i] - t * self.a[i]

    def candidates(self, lo: Fraction, hi: Fraction) -> list[Fraction]:
        lines = [(mm, -aa) for mm, aa in self.lines]
        return sorted(line_crossings(lines, lo, hi) | {lo, hi})


def _prepare(c) -> _Prepared:
    return c if isinstance(c, _Prepared) else _Prepared(c)


def upsilon_at(c: CfkComplex, t) -> Fraction:
    """Upsilon of a rank-one complex at a rational t in [0, 2]."""
    t = _check_t(t)
    return _prepare(c).value(t)


@dataclass(frozen=True)
class UpsilonResult:
    upsilon: PLFunction
    witness: tuple  # ((start, end, generator name), ...)
    tau: int
    jumps: tuple  # ((t, delta slope), ...)

    def to_json(self) -> dict:
        out = self.upsilon.to_json()
        out["tau"] = self.tau
        out["jumps"] = [[rational_to_json(t), d] for t, d in self.jumps]
        out["witness"] = [[rational_to_json(a), rational_to_json(b), w] for a, b, w in self.witness]
        return out

    def to_csv(self, samples: int | None = None) -> str:
        return upsilon_csv(self.upsilon, samples)


def upsilon(c: CfkComplex, lo=0, hi=2) -> UpsilonResult:
    """Exact Upsilon on [lo, hi] (default the whole interval [0, 2])."""
    lo, hi = _check_t(lo), _check_t(hi)
    if not lo < hi:
        raise DomainError("empty window")
    prep = _prepare(c)
    ts = prep.candidates(lo, hi)
    values = [prep.value(t) for t in ts]
    witness = []
    for t0, t1, y0, y1 in zip(ts, ts[1:], values, values[1:]):
        mid = (t0 + t1) / 2
        i = prep.free_at(mid)
        line = (prep.m[i], prep.a[i])
        ymid = line[0] - mid * line[1]
        if 2 * ymid != y0 + y1 or y0 != line[0] - t0 * line[1]:
            raise IntegrityError(f"Upsilon is not linear on [{t0}, {t1}]")
        name = prep.line_names[line]
        if witness and witness[-1][2] == name:
            witness[-1] = (witness[-1][0], t1, name)
        else:
            witness.append((t0, t1, name))
    f = PLFunction(tuple(ts), tuple(values))
    jumps = tuple((t, f.delta_slope(t)) for t in f.interior_breakpoints())
    return UpsilonResult(f, tuple(witness), tau(prep.original), jumps)


def delta_slope_at(c: CfkComplex, t) -> int:
    """Jump in the slope of Upsilon at t, using only the neighbouring candidates."""
    t = as_rational(t)
    if not ZERO < t < TWO:
        raise DomainError(f"t={t} must lie in (0, 2)")
    prep = _prepare(c)
    ts = prep.candidates(ZERO, TWO)
    i = bisect.bisect_left(ts, t)
    left = ts[i - 1]
    right = ts[i + 1] if ts[i] == t else ts[i]
    y_left, y, y_right = prep.value(left), prep.value(t), prep.value(right)
    return int((y_right - y) / (right - t) - (y - y_left) / (t - left))


def upsilon_lspace(alphas: Sequence[int]) -> PLFunction:
    """Closed form for staircases: max over even i of m_i - t*alpha_i."""
    alphas = [int(a) for a in alphas]
    n = len(alphas)
    if n % 2 == 0:
        raise DomainError("an L-space sequence has odd length")
    if any(a <= b for a, b in zip(alphas, alphas[1:])):
        raise DomainError("alphas must be strictly decreasing")
    if any(alphas[k] != -alphas[n - 1 - k] for k in range(n)):
        raise DomainError("alphas must be symmetric")
    ms = staircase_maslovs(alphas)
    return upper_envelope([(ms[i], -alphas[i]) for i in range(0, n, 2)])


def tau(c: CfkComplex) -> int:
    """-(Alexander grading of the tower in the associated graded homology)."""
    if isinstance(c, _Prepared):
        c = c.original
    red = reduce_chain_complex(c.alexanders(), associated_graded_support(c), degree=0)
    if len(red.free) != 1:
        raise NotAKnotError(f"associated graded homology has free rank {len(red.free)}, expected 1")
    return -c.generators[red.free[0]].alexander


# ---------------------------------------------------------------------------
# graded complexes over F2[U]: delta, nu-minus, triviality


@dataclass(frozen=True)
class GradedComplex:
    """Free F2[U] complex with one grading; U has degree -2, d has degree -1."""

    names: tuple
    grades: tuple
    support: dict = field(hash=False)

    def __len__(self):
        return len(self.names)


def full_complex(c: CfkComplex) -> GradedComplex:
    return GradedComplex(tuple(g.name for g in c.generators), tuple(c.maslovs()), c.support())


def sub_A(c: CfkComplex, s: int) -> GradedComplex:
    """Subcomplex spanned by U^i x with i >= max(A(x) - s, 0)."""
    shifts = [max(g.alexander - s, 0) for g in c.generators]
    return _shifted(c, shifts)


def a_prime(c: CfkComplex) -> GradedComplex:
    """Complex spanned by C and all U^i x of Alexander grading <= 0."""
    return _shifted(c, [min(0, g.alexander) for g in c.generators])


def _shifted(c: CfkComplex, shifts) -> GradedComplex:
    names = tuple(g.name if k == 0 else f"U^{k}·{g.name}" for g, k in zip(c.generators, shifts))
    grades = tuple(g.maslov - 2 * k for g, k in zip(c.generators, shifts))
    return GradedComplex(names, grades, c.support())


def delta(g: GradedComplex) -> int | None:
    """Largest grading of a free homology class, or None when all homology is torsion."""
    red = reduce_chain_complex(list(g.grades), g.support, degree=1)
    if not red.free:
        return None
    return max(g.grades[i] for i in red.free)


def nu_minus(c: CfkComplex) -> int:
    require_valid(c)
    alex = c.alexanders()
    for s in range(min(alex), max(alex) + 1):
        if delta(sub_A(c, s)) == 0:
            return s
    raise IntegrityError("delta never reached 0; is the complex calibrated?")


def _require_rank_one(c: CfkComplex):
    require_valid(c)
    red = reduce_chain_complex(c.maslovs(), c.support(), degree=1)
    if len(red.free) != 1:
        raise NotAKnotError(f"homology has free rank {len(red.free)}; only rank one is supported")


def is_strongly_trivial(c: CfkComplex) -> bool:
    _require_rank_one(c)
    d = delta(full_complex(c))
    return delta(sub_A(c, 0)) == d == delta(a_prime(c))


def _gf2_kernel(images: Sequence[int]) -> list[int]:
    """Kernel of the F2 map sending basis vector i to ``images[i]`` (bitmasks)."""
    basis: dict[int, tuple[int, int]] = {}
    kernel = []
    for i, v in enumerate(images):
        comb = 1 << i
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = (v, comb)
                break
            bv, bc = basis[top]
            v ^= bv
            comb ^= bc
        else:
            kernel.append(comb)
    return kernel


def _gf2_rank(vectors: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def is_epsilon_trivial(c: CfkComplex) -> bool:
    """Whether H(A(C)/U) -> H(A'(C)/U) is nonzero."""
    _require_rank_one(c)
    gens = c.generators
    s_sub = [max(g.alexander, 0) for g in gens]
    s_big = [min(g.alexander, 0) for g in gens]
    d_sub = [0] * len(gens)
    d_big = [0] * len(gens)
    for x, y, k in c.index_edges():
        if k + s_sub[x] - s_sub[y] == 0:
            d_sub[x] ^= 1 << y
        if k + s_big[x] - s_big[y] == 0:
            d_big[x] ^= 1 << y
    keep = 0
    for i, g in enumerate(gens):
        if g.alexander == 0:
            keep |= 1 << i
    cycles = _gf2_kernel(d_sub)
    boundaries = [v for v in d_big if v]
    r = _gf2_rank(boundaries)
    return _gf2_rank(boundaries + [z & keep for z in cycles]) > r


# ---------------------------------------------------------------------------
# bounds, checks, homomorphisms


def slice_genus_lower_bound(r: UpsilonResult) -> int:
    f = r.upsilon
    best = Fraction(abs(r.tau))
    for t in set(f.breakpoints) | {ONE}:
        if ZERO < t <= ONE:
            best = max(best, abs(f(t)) / t)
    return math.ceil(best)


def concordance_genus_lower_bound(r: UpsilonResult) -> int:
    return max((abs(s) for s in r.upsilon.slopes()), default=0)


@dataclass(frozen=True)
class SandwichReport:
    ok: bool
    violations: tuple  # ((t, message), ...)


def crossing_change_check(c_plus: CfkComplex, c_minus: CfkComplex) -> SandwichReport:
    """Check Upsilon(K+) <= Upsilon(K-) <= Upsilon(K+) + t on [0, 1]."""
    up = upsilon(c_plus, 0, 1).upsilon
    um = upsilon(c_minus, 0, 1).upsilon
    bad = []
    for t in sorted(set(up.breakpoints) | set(um.breakpoints)):
        a, b = up(t), um(t)
        if not a <= b:
            bad.append((t, f"Upsilon+({t}) = {a} exceeds Upsilon-({t}) = {b}"))
        if not b <= a + t:
            bad.append((t, f"Upsilon-({t}) = {b} exceeds Upsilon+({t}) + t = {a + t}"))
    return SandwichReport(not bad, tuple(bad))


def phi(c: CfkComplex, t) -> int:
    """Normalized slope jump at t = m/n: jump/(2n) for odd m, jump/n for even m."""
    t = as_rational(t)
    if not ZERO < t < TWO:
        raise DomainError(f"t={t} must lie in (0, 2)")
    jump = delta_slope_at(c, t)
    m, n = t.numerator, t.denominator
    val = Fraction(jump, 2 * n) if m % 2 else Fraction(jump, n)
    if val.denominator != 1:
        raise IntegrityError(f"normalized jump {val} at t={t} is not an integer")
    return int(val)


@dataclass(frozen=True)
class IndependenceReport:
    params: tuple
    jumps: tuple  # raw slope jumps, rows indexed by params
    matrix: tuple  # normalized jumps
    unitriangular: bool

    @property
    def certificate(self) -> str | None:
        if not self.unitriangular:
            return None
        return (f"normalized jump matrix over {len(self.params)} knots is upper unitriangular; "
                "the knots are linearly independent and span a direct summand")


def independence_certificate(knots: Sequence[CfkComplex], params: Sequence) -> IndependenceReport:
    if len(knots) != len(params):
        raise DomainError("need one parameter per knot")
    params = tuple(as_rational(p) for p in params)
    preps = [_prepare(k) for k in knots]
    jumps, matrix = [], []
    for p in params:
        jumps.append(tuple(delta_slope_at(k, p) for k in preps))
        matrix.append(tuple(phi(k, p) for k in preps))
    n = len(params)
    ok = n > 0 and all(matrix[i][i] == 1 for i in range(n)) and all(
        matrix[i][j] == 0 for i in range(n) for j in range(i))
    return IndependenceReport(params, tuple(jumps), tuple(matrix), ok)


def upsilon_csv(f: PLFunction, samples: int | None = None) -> str:
    """Rows ``t,upsilon`` at the breakpoints, or at ``samples`` evenly spaced points."""
    lo, hi = f.domain
    if samples is None:
        ts = list(f.breakpoints)
    else:
        if samples < 2:
            raise DomainError("need at least two samples")
        ts = [lo + (hi - lo) * Fraction(i, samples - 1) for i in range(samples)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "upsilon"])
    for t in ts:
        w.writerow([format_rational(t), format_rational(f(t))])
    return buf.getvalue()
