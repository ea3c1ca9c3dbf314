"""Acceptance criteria as plain functions, shared by the test suite and ``verify``.

Each ``criterion_k`` returns a :class:`CriterionResult`; ``ok`` is False when
any sub-check fails and ``details`` lists every failing sub-check (plus a
few informative lines).  Nothing here is weakened to make a check pass.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from . import bordered, cfk, links, upsilon as ups
from .cfk import AlexanderPoly, CfkComplex, Generator
from .exact import PLFunction, f2_reduce, format_rational

F = Fraction


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool = True
    details: list = field(default_factory=list)
    seconds: float = 0.0

    def check(self, cond: bool, what: str) -> bool:
        if not cond:
            self.ok = False
            self.details.append("FAIL " + what)
        return cond

    def note(self, what: str):
        self.details.append(what)

    def line(self) -> str:
        return f"criterion {self.number:2d} {'PASS' if self.ok else 'FAIL'}  {self.title}  ({self.seconds:.2f}s)"


def _fmt(f: PLFunction) -> str:
    return repr(f)


# ---------------------------------------------------------------------------
# independent oracles


def clmul(a: int, b: int) -> int:
    """Carry-less product of F2[w] polynomials stored as bitmasks."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def polynomial_rank(rows: list[list[int]]) -> int:
    """Rank over F2(w) by fraction-free elimination on F2[w] entries."""
    m = [r[:] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            e = m[r][col]
            if e:
                m[r] = [clmul(p, x) ^ clmul(e, y) for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def random_graded_matrix(rng: random.Random, max_dim: int = 12):
    """Homogeneous monomial matrix: entry (r, c) is w^(row_grade - col_grade + 1) or 0."""
    nr, nc = rng.randint(1, max_dim), rng.randint(1, max_dim)
    rg = [rng.randint(-4, 4) for _ in range(nr)]
    cg = [rng.randint(-4, 4) for _ in range(nc)]
    density = rng.choice((0.2, 0.4, 0.7))
    positions = {(r, c) for r in range(nr) for c in range(nc)
                 if rg[r] - cg[c] + 1 >= 0 and rng.random() < density}
    return rg, cg, positions


def lspace_step_sequences(max_terms: int = 9):
    """All symmetric step-length patterns with at most ``max_terms`` staircase generators."""
    yield ()
    for r in range(1, (max_terms - 1) // 2 + 1):
        for half in product((1, 2, 3), repeat=r):
            yield half + half[::-1]


def alphas_from_steps(steps) -> list[int]:
    top = sum(steps) // 2
    out = [top]
    for s in steps:
        out.append(out[-1] - s)
    return out


# ---------------------------------------------------------------------------
# random rank-one complexes


def _pool():
    s = cfk.staircase_from_alexander
    ta = cfk.torus_alexander
    return [
        cfk.builtin("unknot"),
        s(ta(2, 3)), cfk.dual(s(ta(2, 3))),
        s(ta(2, 5)), cfk.dual(s(ta(2, 5))),
        s(ta(3, 4)), s(ta(2, 7)), s(ta(3, 5)),
        cfk.builtin("figure8"),
        cfk.builtin("hom_counterexample"), cfk.dual(cfk.builtin("hom_counterexample")),
    ]


_POOL = None


def random_rank_one(rng: random.Random, max_gens: int = 8) -> CfkComplex:
    """A valid rank-one complex: free model, symmetric acyclic pieces, filtered basis change."""
    global _POOL
    if _POOL is None:
        _POOL = _pool()
    base = rng.choice([c for c in _POOL if len(c) <= max_gens])
    gens = list(base.generators)
    edges = list(base.edges())
    tag = 0
    while len(gens) + 2 <= max_gens and rng.random() < 0.6:
        room = max_gens - len(gens)
        kind = rng.choice(("box", "pair") if room >= 4 else ("pair",))
        m = rng.randint(-4, 4)
        t = f"q{tag}_"
        tag += 1
        if kind == "box":
            # a -> U^p b + c, b -> d, c -> U^p d, centred at A = 0 so it is self-symmetric
            p = rng.randint(1, 2)
            gens += [Generator(t + "a", 2 * m, 0), Generator(t + "b", 2 * m - 1 + 2 * p, p),
                     Generator(t + "c", 2 * m - 1, -p), Generator(t + "d", 2 * m - 2 + 2 * p, 0)]
            edges += [(t + "a", t + "b", p), (t + "a", t + "c", 0), (t + "b", t + "d", 0), (t + "c", t + "d", p)]
        else:
            a = rng.randint(-2, 2)
            gens += [Generator(t + "x", m, a), Generator(t + "y", m - 1, a)]
            edges.append((t + "x", t + "y", 0))
    # filtered basis changes g_i <- g_i + U^k g_j
    n = len(gens)
    d = [Counter() for _ in range(n)]  # d[x][(y, k)] parity counts
    idx = {g.name: i for i, g in enumerate(gens)}
    for x, y, k in edges:
        d[idx[x]][(idx[y], k)] ^= 1
    for _ in range(rng.randint(0, 6)):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        diff = gens[j].maslov - gens[i].maslov
        if diff < 0 or diff % 2:
            continue
        k = diff // 2
        if gens[j].alexander - k > gens[i].alexander:
            continue
        # row i += U^k row j
        for (y, e), v in list(d[j].items()):
            if v:
                d[i][(y, e + k)] ^= 1
        # column j += U^k column i
        for x in range(n):
            for (y, e), v in list(d[x].items()):
                if v and y == i:
                    d[x][(j, e + k)] ^= 1
    names = [g.name for g in gens]
    order = list(range(n))
    rng.shuffle(order)
    triples = [(names[x], names[y], e) for x in range(n) for (y, e), v in d[x].items() if v]
    return cfk.require_valid(CfkComplex([gens[o] for o in order], triples))


def property_failures(c: CfkComplex, partner: CfkComplex) -> list[str]:
    """Every invariant of a rank-one complex that should hold; returns failures."""
    bad = []
    r = ups.upsilon(c)
    f = r.upsilon
    if f(0) != 0:
        bad.append("Upsilon(0) != 0")
    if f != f.reflect():
        bad.append("Upsilon(t) != Upsilon(2-t)")
    if f.slope_right(F(0)) != -r.tau:
        bad.append("initial slope != -tau")
    for t, jump in r.jumps:
        if (t * jump) % 2:
            bad.append(f"t*jump at {t} not even")
    for den in range(1, 8):
        for num in range(0, 2 * den + 1):
            if (f(F(num, den)) * den).denominator != 1:
                bad.append(f"Upsilon({num}/{den}) not in (1/{den})Z")
    g = ups.upsilon(partner).upsilon
    if ups.upsilon(cfk.tensor(c, partner)).upsilon != f + g:
        bad.append("Upsilon(tensor) != sum")
    if ups.upsilon(cfk.dual(c)).upsilon != -f:
        bad.append("Upsilon(dual) != -Upsilon")
    nu = ups.nu_minus(c)
    for t in [x for x in f.breakpoints if x <= 1] + [F(1)]:
        if -t * nu > f(t):
            bad.append(f"-t*nu > Upsilon at t={t}")
    if ups.is_strongly_trivial(c) and not (ups.is_epsilon_trivial(c) and f.is_zero()):
        bad.append("strongly trivial but not (epsilon-trivial and Upsilon = 0)")
    return bad


# ---------------------------------------------------------------------------
# criteria


def criterion_1() -> CriterionResult:
    res = CriterionResult(1, "Upsilon of T(3,4): staircase reduction and closed form")
    expected = PLFunction.from_points([(0, 0), (F(2, 3), -2), (F(4, 3), -2), (2, 0)])
    via_reduction = ups.upsilon(cfk.builtin("torus:3,4")).upsilon
    alphas = cfk.lspace_sequence(cfk.torus_alexander(3, 4))
    via_closed = ups.upsilon_lspace(alphas)
    res.check(via_reduction == expected, f"reduction gives {_fmt(via_reduction)}")
    res.check(via_closed == expected, f"closed form gives {_fmt(via_closed)}")
    pieces = [(F(0), F(2, 3), 0, -3), (F(2, 3), F(4, 3), -2, 0), (F(4, 3), F(2), -6, 3)]
    for lo, hi, b, s in pieces:
        for t in (lo, (lo + hi) / 2, hi):
            res.check(via_reduction(t) == b + s * t, f"piece {b}+{s}t at t={t}")
    return res


def torus_n_n1_formula(n: int) -> PLFunction:
    """Piece i on [2(i-1)/n, 2i/n] is -i(i-1) - n(n-2i+1)t/2."""
    pts = []
    for i in range(1, n + 1):
        t = F(2 * (i - 1), n)
        pts.append((t, -i * (i - 1) - F(n * (n - 2 * i + 1), 2) * t))
    pts.append((F(2), -n * (n - 1) - F(n * (n - 2 * n + 1), 2) * 2))
    return PLFunction.from_points(pts)


def criterion_2() -> CriterionResult:
    res = CriterionResult(2, "Upsilon of T(n,n+1), n=2..6, piecewise formula and phi=1 at 2i/n")
    for n in range(2, 7):
        c = cfk.builtin(f"torus:{n},{n + 1}")
        f = ups.upsilon(c).upsilon
        res.check(f == torus_n_n1_formula(n), f"T({n},{n + 1}): {_fmt(f)} != formula")
        for i in range(1, n):
            t = F(2 * i, n)
            try:
                v = ups.phi(c, t)
            except Exception as exc:  # non-integer normalized jump is a failure, not a crash
                res.check(False, f"phi(T({n},{n + 1}), {t}) raised {exc}")
                continue
            res.check(v == 1, f"phi(T({n},{n + 1}), {format_rational(t)}) = {v}, expected 1")
    return res


def criterion_3() -> CriterionResult:
    res = CriterionResult(3, "alternating models: Upsilon = (1-|t-1|) sigma/2")
    cases = [("trefoil", -2, cfk.torus_alexander(2, 3)),
             ("figure8", 0, AlexanderPoly({1: -1, 0: 3, -1: -1})),
             ("T(2,7)", -6, cfk.torus_alexander(2, 7))]
    for name, sigma, poly in cases:
        f = ups.upsilon(cfk.alternating_model(sigma, poly)).upsilon
        expected = PLFunction.from_points([(0, 0), (1, F(sigma, 2)), (2, 0)])
        res.check(f == expected, f"{name}: {_fmt(f)}")
    return res


def criterion_4() -> CriterionResult:
    res = CriterionResult(4, "cabling(n) x unknot_framed2, Upsilon = -n(n+1)/2 t on [0, 2/n]")
    d = bordered.builtin_type_d("unknot_framed2")
    for n in (2, 3, 4):
        c = bordered.knot_pairing(bordered.cabling_module(n), d)
        res.check(cfk.is_calibrated(c), f"n={n}: pairing not calibrated")
        f = ups.upsilon(c).upsilon
        hi = F(2, n)
        expected = PLFunction.from_points([(0, 0), (hi, -F(n * (n + 1), 2) * hi)])
        got = f.restrict(F(0), hi)
        res.check(got == expected, f"n={n}: Upsilon on [0,{hi}] is {_fmt(got)}, "
                                   f"expected slope {-F(n * (n + 1), 2)}")
        staircase = ups.upsilon(cfk.builtin(f"torus:{n},{2 * n - 1}")).upsilon
        res.note(f"n={n}: pairing Upsilon equals the T({n},{2 * n - 1}) staircase: {f == staircase}")
    return res


def _cable_trefoil_expected_edges(n: int) -> set:
    e = set()
    for i in range(1, n + 1):
        e.add((f"A{i}⊗Q", f"B{i}⊗Q", i))
        e.add((f"A{i}⊗P", f"B{i}⊗P", i))
    if n >= 3:
        e.add((f"A{n - 2}⊗P", f"B{n}⊗Q", 0))
    e.add((f"A{n - 1}⊗P", "X⊗K", 0))
    e.add((f"A{n}⊗P", "X⊗I", 0))
    e.add(("X⊗J", f"B{n}⊗P", 0))
    return e


def _cable_trefoil_relative_pairs(n: int) -> list:
    """(x, y, M(x)-M(y), A(x)-A(y)) for every displayed relation."""
    P = lambda s, i: f"{s}{i}⊗P"
    Q = lambda s, i: f"{s}{i}⊗Q"
    out = [(Q("B", 1), Q("A", 1), 1, 1), (Q("A", 1), Q("B", 2), 1, 2 * n - 2)]
    for i in range(2, n):
        out += [(Q("B", i), Q("A", i), 2 * i - 1, i),
                (Q("A", i), P("B", i - 1), 1, n - i + 1),
                (P("B", i - 1), P("A", i - 1), 2 * i - 3, i - 1),
                (P("A", i - 1), Q("B", i + 1), 1, n - i - 1)]
    out += [(Q("B", n), Q("A", n), 2 * n - 1, n),
            (Q("A", n), P("B", n - 1), 1, 1),
            (P("B", n - 1), P("A", n - 1), 2 * n - 3, n - 1),
            (P("A", n - 1), "X⊗K", 1, 0),
            ("X⊗J", P("B", n), 1, 0),
            (P("A", n), "X⊗I", 1, 0),
            ("X⊗J", "X⊗K", 2 * n - 1, n),
            (P("B", n), P("A", n), 2 * n - 1, n)]
    return out


def criterion_5() -> CriterionResult:
    res = CriterionResult(5, "cabling(n) x trefoil_framed2: complex, gradings, calibration, Upsilon")
    d = bordered.builtin_type_d("trefoil_framed2")
    for n in (2, 3):
        a = bordered.cabling_module(n)
        h = bordered.pair(a, d)
        g = {x.name: x for x in h.generators}
        res.check((g["B1⊗Q"].maslov, g["B1⊗Q"].alexander) == (0, n * n - n + 1),
                  f"n={n}: (M, A)(B1⊗Q) = {(g['B1⊗Q'].maslov, g['B1⊗Q'].alexander)}")
        edges = set(h.edges())
        want = _cable_trefoil_expected_edges(n)
        res.check(edges == want, f"n={n}: differential differs: extra {edges - want}, missing {want - edges}")
        for x, y, dm, da in _cable_trefoil_relative_pairs(n):
            got = (g[x].maslov - g[y].maslov, g[x].alexander - g[y].alexander)
            res.check(got == (dm, da), f"n={n}: (dM, dA)({x}, {y}) = {got}, displayed {(dm, da)}")
        c = bordered.complete_by_symmetry(h, bordered.pairing_summands(h, d))
        t0 = F(2, 2 * n - 1)
        hi = t0 + F(1, 100)
        f = ups.upsilon(c, 0, hi).upsilon
        first = PLFunction.from_points([(0, 0), (t0, -(n * n - n + 1) * t0)])
        second = PLFunction.from_points([(t0, -2 - (n * n - 3 * n + 2) * t0), (hi, -2 - (n * n - 3 * n + 2) * hi)])
        res.check(f.restrict(F(0), t0) == first, f"n={n}: Upsilon on [0,{t0}] is {_fmt(f.restrict(F(0), t0))}")
        res.check(f.restrict(t0, hi) == second, f"n={n}: Upsilon after {t0} is {_fmt(f.restrict(t0, hi))}")
    return res


def criterion_6() -> CriterionResult:
    res = CriterionResult(6, "K_n = cable of Whitehead double # mirror torus: jumps and independence")
    knots = {}
    for n in (2, 3):
        k = bordered.knot_from_pairing(f"K_n({n})")
        knots[n] = k
        t0 = F(2, 2 * n - 1)
        for s in (F(1, 4), F(1, 2), F(3, 4), F(9, 10)):
            res.check(ups.delta_slope_at(k, s * t0) == 0, f"K_{n}: jump at {s * t0} is nonzero")
        j = ups.delta_slope_at(k, t0)
        res.check(j == 2 * n - 1, f"K_{n}: jump at {t0} is {j}, expected {2 * n - 1}")
    rep = ups.independence_certificate([knots[2], knots[3]], [F(2, 3), F(2, 5)])
    res.check(rep.unitriangular, f"independence matrix {rep.matrix} is not unitriangular")
    res.note(f"independence matrix {rep.matrix}")
    return res


def criterion_7() -> CriterionResult:
    res = CriterionResult(7, "epsilon-trivial but not strongly trivial complex")
    c = cfk.builtin("hom_counterexample")
    res.check(ups.is_epsilon_trivial(c) is True, "not epsilon-trivial")
    res.check(ups.is_strongly_trivial(c) is False, "strongly trivial")
    f = ups.upsilon(c).upsilon
    expected = PLFunction.from_points([(0, 0), (F(2, 3), 0), (1, -1), (F(4, 3), 0), (2, 0)])
    res.check(f == expected, f"Upsilon is {_fmt(f)}")
    for lo, hi, b, s in [(0, F(2, 3), 0, 0), (F(2, 3), 1, 2, -3), (1, F(4, 3), -4, 3), (F(4, 3), 2, 0, 0)]:
        for t in (F(lo), (F(lo) + hi) / 2, F(hi)):
            res.check(f(t) == b + s * t, f"piece {b}+{s}t at {t}")
    return res


def criterion_8(cases: int = 500, seed: int = 20160301) -> CriterionResult:
    res = CriterionResult(8, f"property suite on {cases} random rank-one complexes")
    rng = random.Random(seed)
    made = [random_rank_one(rng) for _ in range(cases)]
    small = [c for c in _POOL if len(c) <= 5]
    for i, c in enumerate(made):
        partner = made[i + 1] if i + 1 < len(made) and len(c) * len(made[i + 1]) <= 40 else rng.choice(small)
        for what in property_failures(c, partner):
            res.check(False, f"case {i}: {what}")
    res.check(all(len(c) <= 8 for c in made), "a generated complex exceeds 8 generators")
    res.note(f"sizes {sorted(Counter(len(c) for c in made).items())}, "
             f"strongly trivial {sum(map(ups.is_strongly_trivial, made))}, "
             f"epsilon-trivial {sum(map(ups.is_epsilon_trivial, made))}")
    return res


def criterion_9(matrices: int = 200, seed: int = 9) -> CriterionResult:
    res = CriterionResult(9, "closed form vs reduction on staircases; f2_reduce rank vs polynomial elimination")
    count = 0
    for steps in lspace_step_sequences(9):
        alphas = alphas_from_steps(steps)
        poly = AlexanderPoly({a: (-1) ** k for k, a in enumerate(alphas)})
        direct = ups.upsilon(cfk.staircase_from_alexander(poly)).upsilon
        closed = ups.upsilon_lspace(alphas)
        res.check(direct == closed, f"alphas {alphas}: {_fmt(direct)} vs {_fmt(closed)}")
        count += 1
    res.note(f"{count} staircases")
    rng = random.Random(seed)
    for k in range(matrices):
        rg, cg, pos = random_graded_matrix(rng)
        red = f2_reduce(pos, rg, cg, degree=1)
        rows = [[(1 << (rg[r] - cg[c] + 1)) if (r, c) in pos else 0 for c in range(len(cg))]
                for r in range(len(rg))]
        res.check(red.rank == polynomial_rank(rows), f"matrix {k}: rank {red.rank} vs {polynomial_rank(rows)}")
    return res


def criterion_10() -> CriterionResult:
    res = CriterionResult(10, "unlinks: Upsilon-set cardinality and t=0 gradings")
    for ell, expected in ((2, [F(-1, 2), F(1, 2)]), (3, [F(-1), F(0), F(0), F(1)])):
        u = links.unlink(ell)
        for t in (F(0), F(1, 3), F(1), F(2)):
            s = links.upsilon_set(u, t)
            res.check(len(s) == 2 ** (ell - 1), f"{ell}-unlink at t={t}: {len(s)} elements")
        s0 = links.upsilon_set(u, 0)
        res.check(s0 == expected, f"{ell}-unlink at t=0: {[str(x) for x in s0]}")
    return res


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def run(number: int) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        res = CRITERIA[number]()
    except Exception as exc:
        res = CriterionResult(number, CRITERIA[number].__name__, ok=False,
                              details=[f"FAIL raised {type(exc).__name__}: {exc}"])
    res.seconds = time.perf_counter() - t0
    return res


def run_all() -> list[CriterionResult]:
    return [run(k) for k in sorted(CRITERIA)]
