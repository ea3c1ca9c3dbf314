"""Collapsed link complexes and their Upsilon-sets.

A link complex carries one Alexander grading per component and one
(w, z) weight pair per component on every differential term.  Setting all
U_i equal collapses it to a complex over F2[U] graded by M and filtered by
the summed Alexander grading.  After t-modification the free part has rank
2^(l-1); the multiset of gradings of a homogeneous free basis is the
Upsilon-set.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cfk import CfkComplex, Violation
from .errors import (CalibrationError, CatalogError, DomainError, IntegrityError,
                     NotALinkError, ValidationError)
from .exact import as_rational, rational_from_json, rational_to_json, reduce_chain_complex


@dataclass(frozen=True)
class LinkGenerator:
    name: str
    maslov: Fraction
    alexander: tuple  # one Fraction per component

    @property
    def collapsed_alexander(self) -> Fraction:
        return sum(self.alexander, Fraction(0))


@dataclass(frozen=True)
class LinkTerm:
    source: str
    target: str
    w: tuple  # U_i powers
    z: tuple  # V_i powers (bookkeeping for the filtration)

    @property
    def u(self) -> int:
        return sum(self.w)


class LinkComplex:
    def __init__(self, components: int, generators: Iterable[LinkGenerator], terms: Iterable[LinkTerm]):
        if components < 1:
            raise DomainError("a link has at least one component")
        self.components = components
        self.generators = tuple(generators)
        self.terms = tuple(terms)
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self._index) != len(self.generators):
            raise DomainError("duplicate generator names")
        for g in self.generators:
            if len(g.alexander) != components:
                raise DomainError(f"{g.name}: expected {components} Alexander gradings")
        for t in self.terms:
            if t.source not in self._index or t.target not in self._index:
                raise DomainError(f"term {t.source} -> {t.target} names an unknown generator")
            if len(t.w) != components or len(t.z) != components:
                raise DomainError(f"term {t.source} -> {t.target}: weight vectors need {components} entries")
            if min(t.w + t.z, default=0) < 0:
                raise DomainError(f"term {t.source} -> {t.target}: negative weight")

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"LinkComplex(components={self.components}, generators={len(self)}, terms={len(self.terms)})"

    def collapsed_support(self) -> dict[int, set[int]]:
        """x -> {y : the collapsed coefficient of y in dx is nonzero}."""
        count = Counter((self._index[t.source], self._index[t.target]) for t in self.terms)
        out: dict[int, set[int]] = {}
        for (x, y), k in count.items():
            if k % 2:
                out.setdefault(x, set()).add(y)
        return out

    def gradings_at(self, t: Fraction) -> list[Fraction]:
        return [g.maslov - t * g.collapsed_alexander for g in self.generators]

    def shifted(self, dm=0, da: Sequence = ()) -> LinkComplex:
        dm = as_rational(dm)
        da = tuple(as_rational(x) for x in da) or (Fraction(0),) * self.components
        gens = [LinkGenerator(g.name, g.maslov + dm, tuple(a + d for a, d in zip(g.alexander, da)))
                for g in self.generators]
        return LinkComplex(self.components, gens, self.terms)

    def structurally_equal(self, other: LinkComplex) -> bool:
        return (self.components == other.components
                and self.generators == other.generators
                and sorted(map(_term_key, self.terms)) == sorted(map(_term_key, other.terms)))

    __eq__ = structurally_equal
    __hash__ = None

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "generators": [{"name": g.name, "m": rational_to_json(g.maslov),
                            "a": [rational_to_json(a) for a in g.alexander]}
                           for g in self.generators],
            "differential": [{"from": t.source, "to": t.target, "w": list(t.w), "z": list(t.z)}
                             for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> LinkComplex:
        try:
            ell = int(data["components"])
            gens = []
            for g in data["generators"]:
                a = g["a"]
                if not isinstance(a, list):
                    raise DomainError(f"{g['name']}: 'a' must be a list")
                gens.append(LinkGenerator(str(g["name"]), rational_from_json(g["m"]),
                                          tuple(rational_from_json(x) for x in a)))
            terms = [LinkTerm(str(t["from"]), str(t["to"]),
                              tuple(int(x) for x in t["w"]), tuple(int(x) for x in t["z"]))
                     for t in data.get("differential", [])]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed link complex JSON: {exc!r}") from exc
        return cls(ell, gens, terms)

    @classmethod
    def from_knot(cls, c: CfkComplex) -> LinkComplex:
        gens = [LinkGenerator(g.name, Fraction(g.maslov), (Fraction(g.alexander),)) for g in c.generators]
        by_name = {g.name: g for g in c.generators}
        terms = []
        for x, y, k in c.edges():
            nz = by_name[x].alexander - by_name[y].alexander + k
            terms.append(LinkTerm(x, y, (k,), (nz,)))
        return cls(1, gens, terms)


def _term_key(t: LinkTerm):
    return (t.source, t.target, t.w, t.z)


def validate_link(c: LinkComplex) -> list[Violation]:
    """Grading, filtration and d^2 = 0 checks on the collapsed complex."""
    out = []
    gen = {g.name: g for g in c.generators}
    for t in c.terms:
        x, y = gen[t.source], gen[t.target]
        if y.maslov - 2 * t.u != x.maslov - 1:
            out.append(Violation("grading", t.source, t.target,
                                 f"M({t.target}) - 2*{t.u} != M({t.source}) - 1"))
        for i in range(c.components):
            if x.alexander[i] - y.alexander[i] != t.z[i] - t.w[i]:
                out.append(Violation("filtration", t.source, t.target,
                                     f"component {i}: A drop != z - w"))
    # d^2 on the collapsed complex, coefficients U^k over F2
    d: dict[str, Counter] = {}
    for t in c.terms:
        d.setdefault(t.source, Counter())[(t.target, t.u)] += 1
    for x, row in d.items():
        square = Counter()
        for (y, k), n in row.items():
            if n % 2 == 0:
                continue
            for (w, j), m in d.get(y, Counter()).items():
                if m % 2:
                    square[(w, k + j)] += 1
        for (w, k), n in square.items():
            if n % 2:
                out.append(Violation("d-squared", x, w, f"coefficient U^{k} of {w} in d^2({x}) is nonzero"))
    return out


def require_valid_link(c: LinkComplex) -> LinkComplex:
    bad = validate_link(c)
    if bad:
        raise ValidationError(bad)
    return c


def _free_gradings(c: LinkComplex, t: Fraction) -> list[Fraction]:
    grades = c.gradings_at(t)
    red = reduce_chain_complex(grades, c.collapsed_support(), degree=1)
    return sorted(grades[i] for i in red.free)


def binomial_gradings(ell: int) -> list[Fraction]:
    """Gradings of a free basis of (R_{-1/2} + R_{1/2})^(l-1), sorted."""
    half = Fraction(1, 2)
    out = []
    for k in range(ell):
        out += [k - (ell - 1) * half] * math.comb(ell - 1, k)
    return out


def _common_shift(actual: list[Fraction], target: list[Fraction]) -> Fraction:
    diffs = {b - a for a, b in zip(actual, target)}
    if len(diffs) != 1:
        raise CalibrationError(f"free gradings {list(map(str, actual))} are not a translate "
                               f"of {list(map(str, target))}")
    return diffs.pop()


def link_calibrate(c: LinkComplex) -> LinkComplex:
    """Shift M and A so the free gradings at t = 0 and t = 2 are the binomial multiset.

    The Alexander shift is applied to the first component; only the sum
    matters to the collapsed invariant.
    """
    require_valid_link(c)
    target = binomial_gradings(c.components)
    at0 = _free_gradings(c, Fraction(0))
    if len(at0) != len(target):
        raise NotALinkError(f"free rank {len(at0)}, expected {len(target)} for {c.components} components")
    dm = _common_shift(at0, target)
    c = c.shifted(dm=dm)
    at2 = _free_gradings(c, Fraction(2))
    d2 = _common_shift(at2, target)  # -2 * (Alexander shift)
    da = (-d2 / 2,) + (Fraction(0),) * (c.components - 1)
    return c.shifted(da=da)


def is_link_calibrated(c: LinkComplex) -> bool:
    target = binomial_gradings(c.components)
    return (_free_gradings(c, Fraction(0)) == target
            and _free_gradings(c, Fraction(2)) == target)


def upsilon_set(c: LinkComplex, t) -> list[Fraction]:
    """Sorted multiset of gradings of a homogeneous free basis at t."""
    t = as_rational(t)
    if not 0 <= t <= 2:
        raise DomainError(f"t={t} outside [0, 2]")
    require_valid_link(c)
    out = _free_gradings(c, t)
    if len(out) != 2 ** (c.components - 1):
        raise IntegrityError(f"free rank {len(out)} != 2^{c.components - 1}")
    return out


def unlink(ell: int) -> LinkComplex:
    """Calibrated collapsed model of the l-component unlink.

    One generator per subset S of the last l-1 components, M = -|S|, no
    differential; this is HF of the connected sum of l-1 copies of S1xS2.
    """
    if ell < 1:
        raise DomainError("need at least one component")
    gens = []
    for mask in range(2 ** (ell - 1)):
        gens.append(LinkGenerator(f"e{mask:0{max(ell - 1, 1)}b}", Fraction(-bin(mask).count("1")),
                                  (Fraction(0),) * ell))
    return link_calibrate(LinkComplex(ell, gens, ()))


def builtin_link(name: str) -> LinkComplex:
    key = name.strip().lower()
    if key.startswith("unlink"):
        rest = key[len("unlink"):].lstrip(":(").rstrip(")")
        try:
            return unlink(int(rest))
        except ValueError:
            pass
    raise CatalogError(f"unknown link {name!r}; try unlink:2")
