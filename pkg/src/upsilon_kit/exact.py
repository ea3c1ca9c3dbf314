"""Exact arithmetic kernel.

Rationals are ``fractions.Fraction``.  On top of that this module provides
F2[U] supports, piecewise-linear functions with rational breakpoints, and
the graded reduction over the valuation ring that every invariant in the
package is built on.
"""

from __future__ import annotations

import bisect
import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError, IntegrityError

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions, ``"p/q"`` strings and ``(p, q)`` pairs.

    Floats are refused on purpose: nothing in the math path may be inexact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational {x!r}") from exc
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, float):
        raise TypeError("floats are not accepted, pass a string like '2/3'")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rational_to_json(q) -> list[str]:
    q = Fraction(q)
    return [str(q.numerator), str(q.denominator)]


def rational_from_json(pair) -> Fraction:
    if isinstance(pair, (list, tuple)):
        return Fraction(int(pair[0]), int(pair[1]))
    return as_rational(pair)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class UPoly:
    """Polynomial in U over F2, stored as its set of exponents."""

    __slots__ = ("support",)

    def __init__(self, exponents: Iterable[int] = ()):
        acc: set[int] = set()
        for e in exponents:
            if e < 0:
                raise DomainError("U-exponents must be nonnegative")
            acc ^= {e}
        self.support = frozenset(acc)

    @classmethod
    def monomial(cls, k: int) -> "UPoly":
        return cls((k,))

    def __add__(self, other: "UPoly") -> "UPoly":
        out = UPoly()
        out.support = self.support ^ other.support
        return out

    __sub__ = __add__

    def __mul__(self, other: "UPoly") -> "UPoly":
        return UPoly(a + b for a in self.support for b in other.support)

    def __bool__(self):
        return bool(self.support)

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.support == other.support

    def __hash__(self):
        return hash(self.support)

    def __iter__(self):
        return iter(sorted(self.support))

    def __repr__(self):
        if not self.support:
            return "UPoly(0)"
        return "UPoly(" + " + ".join(f"U^{e}" for e in sorted(self.support)) + ")"


@dataclass(frozen=True, order=True)
class ValMonomial:
    """A single monomial v^exponent of the valuation ring, exponent >= 0."""

    exponent: Fraction

    def __post_init__(self):
        e = as_rational(self.exponent)
        if e < 0:
            raise DomainError("valuation-ring monomials need a nonnegative exponent")
        object.__setattr__(self, "exponent", e)

    def __mul__(self, other: "ValMonomial") -> "ValMonomial":
        return ValMonomial(self.exponent + other.exponent)


# ---------------------------------------------------------------------------
# piecewise-linear functions


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function with rational breakpoints.

    The domain is ``[breakpoints[0], breakpoints[-1]]``; for the invariants
    of knots it is ``[0, 2]``.  Slopes must be integers.  The stored form is
    canonical: no breakpoint sits between two pieces of equal slope.
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        xs = tuple(as_rational(x) for x in self.breakpoints)
        ys = tuple(as_rational(y) for y in self.values)
        if len(xs) != len(ys):
            raise DomainError("breakpoints and values differ in length")
        if len(xs) < 2:
            raise DomainError("a PLFunction needs both domain endpoints")
        for a, b in zip(xs, xs[1:]):
            if not a < b:
                raise DomainError("breakpoints must be strictly increasing")
        slopes = [(y1 - y0) / (x1 - x0) for x0, x1, y0, y1 in zip(xs, xs[1:], ys, ys[1:])]
        for s in slopes:
            if s.denominator != 1:
                raise DomainError(f"non-integer slope {s}")
        keep_x, keep_y = [xs[0]], [ys[0]]
        for i in range(1, len(xs) - 1):
            if slopes[i - 1] != slopes[i]:
                keep_x.append(xs[i])
                keep_y.append(ys[i])
        keep_x.append(xs[-1])
        keep_y.append(ys[-1])
        object.__setattr__(self, "breakpoints", tuple(keep_x))
        object.__setattr__(self, "values", tuple(keep_y))

    @classmethod
    def zero(cls, lo=0, hi=2) -> "PLFunction":
        return cls((lo, hi), (0, 0))

    @classmethod
    def from_points(cls, points: Iterable) -> "PLFunction":
        pts = sorted((as_rational(x), as_rational(y)) for x, y in points)
        return cls(tuple(p[0] for p in pts), tuple(p[1] for p in pts))

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def _check(self, t, open_=False) -> Fraction:
        t = as_rational(t)
        lo, hi = self.domain
        if open_ and not lo < t < hi:
            raise DomainError(f"t={t} must lie strictly inside ({lo}, {hi})")
        if not lo <= t <= hi:
            raise DomainError(f"t={t} lies outside [{lo}, {hi}]")
        return t

    def __call__(self, t) -> Fraction:
        t = self._check(t)
        xs, ys = self.breakpoints, self.values
        i = bisect.bisect_right(xs, t) - 1
        if i >= len(xs) - 1:
            return ys[-1]
        if xs[i] == t:
            return ys[i]
        return ys[i] + (ys[i + 1] - ys[i]) * (t - xs[i]) / (xs[i + 1] - xs[i])

    def slopes(self) -> list[int]:
        xs, ys = self.breakpoints, self.values
        return [int((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])) for i in range(len(xs) - 1)]

    def pieces(self) -> list[tuple[Fraction, Fraction, int, Fraction]]:
        """(start, end, slope, intercept) for each linear piece."""
        out = []
        for i, s in enumerate(self.slopes()):
            x0, y0 = self.breakpoints[i], self.values[i]
            out.append((x0, self.breakpoints[i + 1], s, y0 - s * x0))
        return out

    def slope_right(self, t) -> int:
        t = self._check(t)
        xs = self.breakpoints
        if t == xs[-1]:
            raise DomainError("no right slope at the right endpoint")
        return self.slopes()[bisect.bisect_right(xs, t) - 1]

    def slope_left(self, t) -> int:
        t = self._check(t)
        xs = self.breakpoints
        if t == xs[0]:
            raise DomainError("no left slope at the left endpoint")
        return self.slopes()[bisect.bisect_left(xs, t) - 1]

    def delta_slope(self, t) -> int:
        t = self._check(t, open_=True)
        return self.slope_right(t) - self.slope_left(t)

    def interior_breakpoints(self) -> tuple:
        return self.breakpoints[1:-1]

    def _merged(self, other: "PLFunction", op) -> "PLFunction":
        if self.domain != other.domain:
            raise DomainError("PLFunctions live on different domains")
        xs = sorted(set(self.breakpoints) | set(other.breakpoints))
        return PLFunction(tuple(xs), tuple(op(self(x), other(x)) for x in xs))

    def __add__(self, other: "PLFunction") -> "PLFunction":
        return self._merged(other, lambda a, b: a + b)

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        return self._merged(other, lambda a, b: a - b)

    def __neg__(self) -> "PLFunction":
        return PLFunction(self.breakpoints, tuple(-y for y in self.values))

    def scale(self, k: int) -> "PLFunction":
        if isinstance(k, bool) or not isinstance(k, int):
            raise TypeError("only integer scaling keeps slopes integral")
        return PLFunction(self.breakpoints, tuple(k * y for y in self.values))

    def reflect(self) -> "PLFunction":
        """t -> lo + hi - t, so for the [0,2] domain this is t -> 2 - t."""
        lo, hi = self.domain
        return PLFunction.from_points((lo + hi - x, y) for x, y in zip(self.breakpoints, self.values))

    def restrict(self, lo, hi) -> "PLFunction":
        lo, hi = as_rational(lo), as_rational(hi)
        self._check(lo)
        self._check(hi)
        xs = [lo] + [x for x in self.breakpoints if lo < x < hi] + [hi]
        return PLFunction(tuple(xs), tuple(self(x) for x in xs))

    def is_zero(self) -> bool:
        return all(y == 0 for y in self.values)

    def to_json(self) -> dict:
        return {
            "breakpoints": [rational_to_json(x) for x in self.breakpoints],
            "values": [rational_to_json(y) for y in self.values],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PLFunction":
        return cls(
            tuple(rational_from_json(p) for p in data["breakpoints"]),
            tuple(rational_from_json(p) for p in data["values"]),
        )

    def __repr__(self):
        pts = ", ".join(f"({format_rational(x)}, {format_rational(y)})"
                        for x, y in zip(self.breakpoints, self.values))
        return f"PLFunction[{pts}]"


def pl_eval(f: PLFunction, t) -> Fraction:
    return f(t)


def pl_delta_slope(f: PLFunction, t) -> int:
    return f.delta_slope(t)


def pl_add(f: PLFunction, g: PLFunction) -> PLFunction:
    return f + g


def pl_negate(f: PLFunction) -> PLFunction:
    return -f


def pl_scale_int(f: PLFunction, k: int) -> PLFunction:
    return f.scale(k)


def line_crossings(lines: Iterable[tuple], lo, hi) -> set[Fraction]:
    """Parameters in the open interval where two lines ``b + s*t`` meet."""
    lo, hi = as_rational(lo), as_rational(hi)
    distinct = sorted(set((as_rational(b), as_rational(s)) for b, s in lines))
    out = set()
    for i, (b1, s1) in enumerate(distinct):
        for b2, s2 in distinct[i + 1:]:
            if s1 != s2:
                t = (b2 - b1) / (s1 - s2)
                if lo < t < hi:
                    out.add(t)
    return out


def upper_envelope(lines: Iterable[tuple], lo=0, hi=2) -> PLFunction:
    """max of the lines ``b + s*t`` over [lo, hi] as an exact PLFunction."""
    lines = [(as_rational(b), as_rational(s)) for b, s in lines]
    if not lines:
        raise DomainError("upper envelope of no lines")
    lo, hi = as_rational(lo), as_rational(hi)
    ts = sorted(line_crossings(lines, lo, hi) | {lo, hi})
    return PLFunction(tuple(ts), tuple(max(b + s * t for b, s in lines) for t in ts))


# ---------------------------------------------------------------------------
# graded reduction over the valuation ring


@dataclass(frozen=True)
class ReducedPairing:
    """Pivots of a graded Smith normal form.

    ``pairs`` holds ``(col, row, exponent)`` triples in pivot order.
    """

    pairs: tuple
    unpaired_rows: tuple
    unpaired_cols: tuple

    @property
    def rank(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class ChainReduction:
    """Result of reducing a graded chain complex over the valuation ring.

    Each pair ``(x, y, e)`` is a torsion summand ``x -> v^e y``; ``free``
    lists the generators spanning the free part of homology.
    """

    pairs: tuple
    free: tuple


def _eliminate(cols, rows, row_grades, col_grades, degree, chain):
    def val(r, c):
        return row_grades[r] - col_grades[c] + degree

    heap = []
    for c, rs in cols.items():
        for r in rs:
            e = val(r, c)
            if e < 0:
                raise IntegrityError(f"entry ({r}, {c}) has negative valuation {e}")
            heap.append((e, col_grades[c], c, r))
    heapq.heapify(heap)
    pairs = []
    while heap:
        e, _, c, r = heapq.heappop(heap)
        colset = cols.get(c)
        if colset is None or r not in colset:
            continue
        pivot_row = list(rows[r])
        # clear the pivot column with row operations; the matching column
        # operations only touch the pivot row, which is deleted below
        for s in list(colset):
            if s == r:
                continue
            srow = rows[s]
            for z in pivot_row:
                zc = cols[z]
                if s in zc:
                    zc.discard(s)
                    srow.discard(z)
                else:
                    zc.add(s)
                    srow.add(z)
                    heapq.heappush(heap, (val(s, z), col_grades[z], z, s))
        pairs.append((c, r, e))
        dead_cols = (c, r) if chain else (c,)
        dead_rows = (r, c) if chain else (r,)
        for dc in dead_cols:
            for rr in cols.pop(dc, ()):
                rows[rr].discard(dc)
        for dr in dead_rows:
            for cc in rows.pop(dr, ()):
                if cc in cols:
                    cols[cc].discard(dr)
    return pairs


def f2_reduce(matrix, row_grades, col_grades, degree=1) -> ReducedPairing:
    """Graded Smith normal form of an F2 matrix with monomial entries.

    ``matrix`` maps ``(row, col)`` to a ValMonomial (or exponent), or is an
    iterable of ``(row, col)`` positions whose exponents are then implied.
    Homogeneity contract: the entry at (row, col) is
    ``v^(row_grades[row] - col_grades[col] + degree)``.

    Pivots are taken at minimal valuation with ties broken by column grade,
    column index and row index.
    """
    row_grades = [as_rational(g) for g in row_grades]
    col_grades = [as_rational(g) for g in col_grades]
    cols = {j: set() for j in range(len(col_grades))}
    rows = {i: set() for i in range(len(row_grades))}
    items = matrix.items() if isinstance(matrix, Mapping) else ((k, None) for k in matrix)
    for (i, j), entry in items:
        expected = row_grades[i] - col_grades[j] + degree
        if entry is not None:
            e = entry.exponent if isinstance(entry, ValMonomial) else as_rational(entry)
            if e != expected:
                raise IntegrityError(f"entry ({i}, {j}) = v^{e} is not homogeneous (expected v^{expected})")
        if i in cols[j]:
            # F2: a repeated position cancels
            cols[j].discard(i)
            rows[i].discard(j)
        else:
            cols[j].add(i)
            rows[i].add(j)
    pairs = _eliminate(cols, rows, row_grades, col_grades, degree, chain=False)
    prow = {r for _, r, _ in pairs}
    pcol = {c for c, _, _ in pairs}
    return ReducedPairing(
        tuple(pairs),
        tuple(i for i in range(len(row_grades)) if i not in prow),
        tuple(j for j in range(len(col_grades)) if j not in pcol),
    )


def reduce_chain_complex(grades, edges: Mapping[int, Iterable[int]], degree=1) -> ChainReduction:
    """Reduce a graded chain complex given by supports of its differential.

    ``grades[i]`` is the grading of generator ``i`` and ``edges[x]`` the set
    of ``y`` with a nonzero coefficient of ``y`` in ``dx``; that coefficient
    is ``v^(grades[y] - grades[x] + degree)``.  Grades may be any exact
    ordered numbers (ints are fastest).
    """
    n = len(grades)
    cols = {x: set() for x in range(n)}
    rows = {y: set() for y in range(n)}
    for x, ys in edges.items():
        for y in ys:
            if y in cols[x]:
                cols[x].discard(y)
                rows[y].discard(x)
            else:
                cols[x].add(y)
                rows[y].add(x)
    pairs = _eliminate(cols, rows, grades, grades, degree, chain=True)
    used = set()
    for c, r, _ in pairs:
        used.add(c)
        used.add(r)
    return ChainReduction(tuple(pairs), tuple(i for i in range(n) if i not in used))
