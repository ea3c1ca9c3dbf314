"""Maslov-graded, Alexander-filtered chain complexes over F2[U].

A complex is a list of generators with integer (M, A) bigradings plus a
sparse differential whose terms are ``x -> U^k y``.  The helpers here build
the model complexes used throughout the package (staircases, thin models,
the catalog) and compute the filtration-level data (HFK-hat, Euler
characteristic, calibration).
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (CatalogError, DomainError, IntegrityError, ModelError,
                     NotAKnotError, NotLSpacePolynomialError, ValidationError)
from .exact import UPoly, reduce_chain_complex


@dataclass(frozen=True)
class Generator:
    name: str
    maslov: int
    alexander: int


@dataclass(frozen=True)
class Violation:
    kind: str  # "d-squared", "grading", "filtration", "u-exponent", "unknown-generator"
    source: str
    target: str
    detail: str

    def __str__(self):
        return f"{self.kind} {self.source}->{self.target}: {self.detail}"


class CfkComplex:
    """Finitely generated free F2[U] complex with bigraded generators.

    ``differential`` is either a mapping ``name -> [(target, k), ...]`` or an
    iterable of ``(source, target, k)`` triples.  Repeated terms cancel.
    ``zedges`` is optional metadata (pairs of names), carried along but not
    part of the differential.
    """

    __slots__ = ("generators", "index", "_d", "zedges")

    def __init__(self, generators: Iterable, differential=(), zedges=()):
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(str(g[0]), int(g[1]), int(g[2]))
            gens.append(g)
        self.generators = tuple(gens)
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            dup = [n for n, c in Counter(g.name for g in gens).items() if c > 1]
            raise DomainError(f"duplicate generator names: {dup}")
        if isinstance(differential, Mapping):
            triples = ((x, y, k) for x, terms in differential.items() for y, k in terms)
        else:
            triples = differential
        d: dict[int, dict[int, UPoly]] = {}
        for x, y, k in triples:
            if x not in self.index or y not in self.index:
                raise DomainError(f"edge {x}->{y} names an unknown generator")
            if int(k) < 0:
                raise DomainError(f"edge {x}->{y} has negative U-power {k}")
            row = d.setdefault(self.index[x], {})
            p = row.get(self.index[y], UPoly()) + UPoly.monomial(int(k))
            if p:
                row[self.index[y]] = p
            else:
                del row[self.index[y]]
        self._d = {x: row for x, row in d.items() if row}
        self.zedges = tuple((str(a), str(b)) for a, b in zedges)

    # -- access ------------------------------------------------------------

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"CfkComplex({len(self)} generators, {self.edge_count()} edges)"

    def edge_count(self) -> int:
        return sum(len(p.support) for row in self._d.values() for p in row.values())

    def edges(self):
        """Yield ``(source, target, k)`` name triples in generator order."""
        for x in sorted(self._d):
            for y in sorted(self._d[x]):
                for k in self._d[x][y]:
                    yield self.generators[x].name, self.generators[y].name, k

    def index_edges(self):
        for x in sorted(self._d):
            for y in sorted(self._d[x]):
                for k in self._d[x][y]:
                    yield x, y, k

    def support(self) -> dict[int, set[int]]:
        """Index-level support of the differential, ``x -> {y}``."""
        return {x: set(row) for x, row in self._d.items()}

    @property
    def differential(self) -> dict[str, list[tuple[str, int]]]:
        out: dict[str, list] = {g.name: [] for g in self.generators}
        for x, y, k in self.edges():
            out[x].append((y, k))
        return out

    def maslovs(self) -> list[int]:
        return [g.maslov for g in self.generators]

    def alexanders(self) -> list[int]:
        return [g.alexander for g in self.generators]

    def __getitem__(self, name) -> Generator:
        return self.generators[self.index[name]]

    def structurally_equal(self, other: "CfkComplex") -> bool:
        return (set(self.generators) == set(other.generators)
                and set(self.edges()) == set(other.edges()))

    def __eq__(self, other):
        return isinstance(other, CfkComplex) and self.structurally_equal(other)

    __hash__ = None

    # -- derived complexes ------------------------------------------------

    def shifted(self, dm: int = 0, da: int = 0) -> "CfkComplex":
        gens = [Generator(g.name, g.maslov + dm, g.alexander + da) for g in self.generators]
        return CfkComplex(gens, list(self.edges()), self.zedges)

    def renamed(self, fn) -> "CfkComplex":
        gens = [Generator(fn(g.name), g.maslov, g.alexander) for g in self.generators]
        return CfkComplex(gens, [(fn(x), fn(y), k) for x, y, k in self.edges()],
                          [(fn(a), fn(b)) for a, b in self.zedges])

    def subcomplex_on(self, names: Iterable[str]) -> "CfkComplex":
        keep = set(names)
        gens = [g for g in self.generators if g.name in keep]
        return CfkComplex(gens, [(x, y, k) for x, y, k in self.edges() if x in keep and y in keep],
                          [(a, b) for a, b in self.zedges if a in keep and b in keep])

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "generators": [{"name": g.name, "m": g.maslov, "a": g.alexander} for g in self.generators],
            "differential": [{"from": x, "to": y, "u": k} for x, y, k in self.edges()],
        }
        if self.zedges:
            out["zedges"] = [{"from": a, "to": b} for a, b in self.zedges]
        return out

    @classmethod
    def from_json(cls, data) -> "CfkComplex":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            gens = [Generator(str(g["name"]), int(g["m"]), int(g["a"])) for g in data["generators"]]
            edges = [(e["from"], e["to"], int(e.get("u", 0))) for e in data.get("differential", [])]
            zedges = [(e["from"], e["to"]) for e in data.get("zedges", [])]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed complex JSON: {exc}") from exc
        return cls(gens, edges, zedges)


# ---------------------------------------------------------------------------
# validation


def validate(c: CfkComplex) -> list[Violation]:
    """All violations of d^2 = 0, the grading rule and the filtration rule."""
    out = []
    gens = c.generators
    for x, y, k in c.index_edges():
        gx, gy = gens[x], gens[y]
        if gy.maslov - 2 * k != gx.maslov - 1:
            out.append(Violation("grading", gx.name, gy.name,
                                 f"M(y) - 2k = {gy.maslov - 2 * k}, expected M(x) - 1 = {gx.maslov - 1}"))
        if gy.alexander - k > gx.alexander:
            out.append(Violation("filtration", gx.name, gy.name,
                                 f"A(y) - k = {gy.alexander - k} exceeds A(x) = {gx.alexander}"))
    for x, row in c._d.items():
        acc: dict[int, UPoly] = defaultdict(UPoly)
        for y, p in row.items():
            for z, q in c._d.get(y, {}).items():
                acc[z] = acc[z] + p * q
        for z, p in sorted(acc.items()):
            if p:
                out.append(Violation("d-squared", gens[x].name, gens[z].name, f"d^2 coefficient {p}"))
    return out


def is_valid(c: CfkComplex) -> bool:
    return not validate(c)


def require_valid(c: CfkComplex) -> CfkComplex:
    bad = validate(c)
    if bad:
        raise ValidationError(bad)
    return c


# ---------------------------------------------------------------------------
# constructions


def tensor(a: CfkComplex, b: CfkComplex, sep: str = "⊗") -> CfkComplex:
    """Tensor product over F2[U]; gradings add, the Leibniz rule has no signs in F2."""
    require_valid(a)
    require_valid(b)
    gens = [Generator(f"{x.name}{sep}{y.name}", x.maslov + y.maslov, x.alexander + y.alexander)
            for x in a.generators for y in b.generators]
    edges = []
    for x, x2, k in a.edges():
        for y in b.generators:
            edges.append((f"{x}{sep}{y.name}", f"{x2}{sep}{y.name}", k))
    for y, y2, k in b.edges():
        for x in a.generators:
            edges.append((f"{x.name}{sep}{y}", f"{x.name}{sep}{y2}", k))
    return CfkComplex(gens, edges)


def dual(c: CfkComplex) -> CfkComplex:
    """Dual complex; represents the mirror knot."""
    gens = [Generator(_star(g.name), -g.maslov, -g.alexander) for g in c.generators]
    return CfkComplex(gens, [(_star(y), _star(x), k) for x, y, k in c.edges()],
                      [(_star(b), _star(a)) for a, b in c.zedges])


def _star(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def direct_sum(*parts: CfkComplex) -> CfkComplex:
    gens, edges, zedges = [], [], []
    for p in parts:
        gens.extend(p.generators)
        edges.extend(p.edges())
        zedges.extend(p.zedges)
    return CfkComplex(gens, edges, zedges)


def connected_components(c: CfkComplex) -> list[list[str]]:
    """Generator names grouped by connected component of the differential graph."""
    parent = list(range(len(c)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x, y, _ in c.index_edges():
        parent[find(x)] = find(y)
    groups: dict[int, list[str]] = {}
    for i, g in enumerate(c.generators):
        groups.setdefault(find(i), []).append(g.name)
    return list(groups.values())


def simplify(c: CfkComplex) -> CfkComplex:
    """Cancel every unit arrow (k = 0, same Alexander grading).

    Each cancellation is a filtered chain homotopy equivalence, so HFK-hat,
    tau and Upsilon are unchanged while the complex shrinks.
    """
    require_valid(c)
    gens = {g.name: g for g in c.generators}
    out: dict[str, dict[str, int]] = {n: {} for n in gens}
    inn: dict[str, set[str]] = {n: set() for n in gens}
    for x, y, k in c.edges():
        out[x][y] = k
        inn[y].add(x)

    def toggle(z, w, k):
        cur = out[z].get(w)
        if cur is None:
            out[z][w] = k
            inn[w].add(z)
        elif cur == k:
            del out[z][w]
            inn[w].discard(z)
        else:
            raise IntegrityError(f"inhomogeneous arrow {z}->{w}")

    order = [g.name for g in c.generators]
    changed = True
    while changed:
        changed = False
        for x in order:
            if x not in gens:
                continue
            target = None
            for y, k in sorted(out[x].items()):
                if k == 0 and gens[y].alexander == gens[x].alexander:
                    target = y
                    break
            if target is None:
                continue
            y = target
            sources = [z for z in inn[y] if z != x]
            outs = [(w, kw) for w, kw in out[x].items() if w != y]
            for z in sources:
                kz = out[z][y]
                for w, kw in outs:
                    toggle(z, w, kz + kw)
            for v in (x, y):
                for w in list(out[v]):
                    inn[w].discard(v)
                for z in list(inn[v]):
                    out[z].pop(v, None)
                del out[v], inn[v], gens[v]
            changed = True
    keep = [g for g in c.generators if g.name in gens]
    return CfkComplex(keep, [(x, y, k) for x in out for y, k in out[x].items()],
                      [(a, b) for a, b in c.zedges if a in gens and b in gens])


# ---------------------------------------------------------------------------
# homology data


HfkTable = dict  # (maslov, alexander) -> dimension


def hfk_hat(c: CfkComplex) -> dict[tuple[int, int], int]:
    """Bigraded homology of the associated graded complex at U = 0."""
    gens = c.generators
    edges: dict[int, set[int]] = defaultdict(set)
    for x, y, k in c.index_edges():
        if k == 0 and gens[x].alexander == gens[y].alexander:
            edges[x].add(y)
    red = reduce_chain_complex(c.maslovs(), edges, degree=1)
    table = Counter((gens[i].maslov, gens[i].alexander) for i in red.free)
    return dict(sorted(table.items()))


@dataclass(frozen=True)
class AlexanderPoly:
    """Laurent polynomial with integer coefficients, stored sparsely."""

    terms: tuple  # ((exponent, coefficient), ...) with decreasing exponent

    def __init__(self, coeffs: Mapping[int, int] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: Counter = Counter()
        for e, c in items:
            acc[int(e)] += int(c)
        object.__setattr__(self, "terms", tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True)))

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self.terms)

    def is_symmetric(self) -> bool:
        d = self.coeffs
        return all(d.get(-e) == c for e, c in d.items())

    def __call__(self, t):
        return sum(c * t ** e for e, c in self.terms)

    def __add__(self, other):
        return AlexanderPoly(list(self.terms) + list(other.terms))

    def __neg__(self):
        return AlexanderPoly([(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        acc: Counter = Counter()
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] += c1 * c2
        return AlexanderPoly(acc)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    @classmethod
    def parse(cls, text: str) -> "AlexanderPoly":
        """Parse strings such as ``t^3 - t^2 + 1 - t^-2 + t^-3``."""
        s = text.replace(" ", "").replace("−", "-").replace("⁻¹", "^-1")
        if not s:
            raise DomainError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        acc: Counter = Counter()
        for sign, coef, var, exp in re.findall(r"([+-])(\d*)(t?)(?:\^\(?(-?\d+)\)?)?", s):
            if not coef and not var:
                raise DomainError(f"cannot parse polynomial {text!r}")
            c = int(coef) if coef else 1
            e = (int(exp) if exp else 1) if var else 0
            acc[e] += -c if sign == "-" else c
        rebuilt = len(re.sub(r"([+-])(\d*)(t?)(?:\^\(?(-?\d+)\)?)?", "", s))
        if rebuilt:
            raise DomainError(f"cannot parse polynomial {text!r}")
        return cls(acc)


def euler_characteristic(table: Mapping[tuple[int, int], int]) -> AlexanderPoly:
    p = AlexanderPoly([(a, (-1) ** (m % 2) * dim) for (m, a), dim in table.items()])
    if not p.is_symmetric():
        raise IntegrityError(f"graded Euler characteristic {p} is not symmetric; check calibration")
    return p


def total_homology_rank(c: CfkComplex) -> int:
    return len(reduce_chain_complex(c.maslovs(), c.support(), degree=1).free)


def _free_generator(c: CfkComplex, graded_by: str) -> Generator:
    if graded_by == "maslov":
        red = reduce_chain_complex(c.maslovs(), c.support(), degree=1)
    else:
        red = reduce_chain_complex(c.alexanders(), associated_graded_support(c), degree=0)
    if len(red.free) != 1:
        raise NotAKnotError(f"free part of homology has rank {len(red.free)}, expected 1")
    return c.generators[red.free[0]]


def associated_graded_support(c: CfkComplex) -> dict[int, set[int]]:
    """Arrows that preserve the Alexander filtration level, A(y) - k = A(x)."""
    gens = c.generators
    out: dict[int, set[int]] = defaultdict(set)
    for x, y, k in c.index_edges():
        if gens[y].alexander - k == gens[x].alexander:
            out[x].add(y)
    return out


def _alexander_shift(c: CfkComplex) -> int:
    table = hfk_hat(c)
    if not table:
        raise NotAKnotError("HFK-hat vanishes")
    alex = [a for _, a in table]
    span = max(alex) + min(alex)
    if span % 2:
        raise IntegrityError("Alexander support has odd span; refusing a half-integer shift")
    return -span // 2


def calibrate(c: CfkComplex) -> CfkComplex:
    """Shift gradings so the free class sits in Maslov 0 and HFK-hat is centred."""
    require_valid(c)
    g = _free_generator(c, "maslov")
    return c.shifted(-g.maslov, _alexander_shift(c))


def calibrate_associated_graded(c: CfkComplex) -> CfkComplex:
    """Calibration for complexes that only carry the Alexander-preserving arrows.

    The tower of the associated graded complex is generated in bidegree
    (-2 tau, -tau), i.e. its generator satisfies M = 2A.
    """
    require_valid(c)
    da = _alexander_shift(c)
    g = _free_generator(c, "alexander")
    return c.shifted(2 * (g.alexander + da) - g.maslov, da)


def is_calibrated(c: CfkComplex) -> bool:
    return calibrate(c).structurally_equal(c)


# ---------------------------------------------------------------------------
# model complexes


def lspace_sequence(p: AlexanderPoly) -> list[int]:
    """Exponents of an L-space polynomial, checking the alternating form."""
    terms = p.terms
    if not terms:
        raise NotLSpacePolynomialError("zero polynomial")
    for i, (e, c) in enumerate(terms):
        if c != (-1) ** i:
            raise NotLSpacePolynomialError(f"{p} does not have alternating +-1 coefficients")
    if not p.is_symmetric():
        raise NotLSpacePolynomialError(f"{p} is not symmetric")
    return [e for e, _ in terms]


def staircase_maslovs(alphas: list[int]) -> list[int]:
    m = [0]
    for k in range(1, len(alphas)):
        if k % 2:
            m.append(m[-1] - 2 * (alphas[k - 1] - alphas[k]) + 1)
        else:
            m.append(m[-1] - 1)
    return m


def staircase_from_alexander(p: AlexanderPoly, prefix: str = "x") -> CfkComplex:
    """Staircase complex of an L-space knot with Alexander polynomial ``p``."""
    alphas = lspace_sequence(p)
    ms = staircase_maslovs(alphas)
    gens = [Generator(f"{prefix}{k}", ms[k], alphas[k]) for k in range(len(alphas))]
    edges = []
    for k in range(1, len(alphas), 2):
        edges.append((f"{prefix}{k}", f"{prefix}{k - 1}", alphas[k - 1] - alphas[k]))
        edges.append((f"{prefix}{k}", f"{prefix}{k + 1}", 0))
    return CfkComplex(gens, edges)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficient lists, low degree first)."""
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c, r = divmod(num[i + len(den) - 1], den[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


def _t_power_minus_one(n: int) -> list[int]:
    return [-1] + [0] * (n - 1) + [1]


def torus_alexander(p: int, q: int) -> AlexanderPoly:
    """Symmetrized Alexander polynomial of the (p, q) torus knot."""
    if p < 2 or q < 2 or math.gcd(p, q) != 1:
        raise DomainError(f"torus knot needs coprime p, q >= 2, got ({p}, {q})")
    num = _poly_mul(_t_power_minus_one(p * q), _t_power_minus_one(1))
    den = _poly_mul(_t_power_minus_one(p), _t_power_minus_one(q))
    quo = _poly_divexact(num, den)
    shift = (p - 1) * (q - 1) // 2
    return AlexanderPoly((i - shift, c) for i, c in enumerate(quo))


def box_complex(maslov: int, alexander: int, tag: str) -> CfkComplex:
    """Four-generator acyclic square: a -> U b + c, b -> d, c -> U d."""
    m, a = maslov, alexander
    gens = [Generator(f"{tag}a", m, a), Generator(f"{tag}b", m + 1, a + 1),
            Generator(f"{tag}c", m - 1, a - 1), Generator(f"{tag}d", m, a)]
    edges = [(f"{tag}a", f"{tag}b", 1), (f"{tag}a", f"{tag}c", 0),
             (f"{tag}b", f"{tag}d", 0), (f"{tag}c", f"{tag}d", 1)]
    return CfkComplex(gens, edges)


def alternating_model(signature: int, p: AlexanderPoly) -> CfkComplex:
    """Thin model complex for an alternating knot with signature and Alexander polynomial.

    A unit staircase carries tau = -signature/2; the rest of the Alexander
    polynomial is absorbed by acyclic boxes on the same diagonal.
    """
    if signature % 2:
        raise ModelError("signature must be even")
    if not p.is_symmetric():
        raise ModelError(f"{p} is not symmetric")
    tau = -signature // 2
    n = abs(tau)
    stair_poly = AlexanderPoly((n - k, (-1) ** k) for k in range(2 * n + 1))
    stair = staircase_from_alexander(stair_poly)
    if tau < 0:
        stair = dual(stair)
    rest = p - stair_poly
    # rest = (2 - t - 1/t) * Q  =>  Q = -t * rest / (t - 1)^2
    boxes = []
    if rest.terms:
        lo = min(e for e, _ in rest.terms)
        hi = max(e for e, _ in rest.terms)
        num = [0] * (hi - lo + 2)
        for e, c in rest.terms:
            num[e - lo + 1] = -c
        try:
            quo = _poly_divexact(num, [1, -2, 1])
        except ArithmeticError as exc:
            raise ModelError(f"no thin model: {p} - {stair_poly} is not divisible by (t-1)^2") from exc
        for i, q in enumerate(quo):
            if not q:
                continue
            s = lo + i
            mas = s + signature // 2
            count = q * (-1) ** (mas % 2)
            if count < 0:
                raise ModelError(f"no thin model for signature {signature} and {p}")
            for j in range(count):
                boxes.append(box_complex(mas, s, f"box[{s}.{j}]."))
    return direct_sum(stair, *boxes)


# ---------------------------------------------------------------------------
# catalog


def _wd_trefoil() -> CfkComplex:
    gens = [("i0", -1, 0), ("j0", 0, 1), ("k0", -2, -1)]
    for s in (1, 2, 3):
        base = 0 if s == 1 else -1
        gens += [(f"i{s}", base - 1, 0), (f"j{s}", base, 1), (f"k{s}", base - 2, -1), (f"l{s}", base - 1, 0)]
    edges = [(f"i{r}", f"j{r}", 1) for r in range(4)] + [(f"k{s}", f"l{s}", 1) for s in (1, 2, 3)]
    zedges = [(f"i{r}", f"k{r}") for r in range(4)] + [(f"j{s}", f"l{s}") for s in (1, 2, 3)]
    edges += [(a, b, 0) for a, b in zedges]
    return CfkComplex(gens, edges, zedges)


def _hom_counterexample() -> CfkComplex:
    gens = [("a", 1, 0), ("b", 2, 3), ("c", -4, -3), ("d", -3, 0), ("e", 0, 0)]
    edges = [("b", "a", 0), ("c", "a", 3), ("d", "b", 3), ("d", "c", 0), ("e", "a", 1)]
    return CfkComplex(gens, edges)


CATALOG = ("unknot", "trefoil", "figure8", "torus(p,q)", "wd_trefoil", "hom_counterexample")

_TORUS = re.compile(r"^\s*(?:torus|T)\s*[(:]\s*(\d+)\s*,\s*(\d+)\s*\)?\s*$")


def builtin(name: str) -> CfkComplex:
    """Named complexes: unknot, trefoil, figure8, torus(p,q), wd_trefoil, hom_counterexample."""
    key = name.strip()
    m = _TORUS.match(key)
    if m:
        return staircase_from_alexander(torus_alexander(int(m.group(1)), int(m.group(2))))
    if key == "unknot":
        return CfkComplex([Generator("x0", 0, 0)])
    if key == "trefoil":
        return staircase_from_alexander(torus_alexander(2, 3))
    if key in ("figure8", "figure-8"):
        return alternating_model(0, AlexanderPoly({1: -1, 0: 3, -1: -1}))
    if key == "wd_trefoil":
        return _wd_trefoil()
    if key == "hom_counterexample":
        return _hom_counterexample()
    raise CatalogError(f"unknown complex {name!r}; catalog: {', '.join(CATALOG)}")
