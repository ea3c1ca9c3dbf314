"""Bordered Floer pairings over the torus algebra.

Type D structures and type A modules are stored as finite labelled graphs.
``box_tensor`` pairs them into a complex over F2[U] whose arrows all
preserve the Alexander grading; ``complete_by_symmetry`` restores the
Alexander-lowering arrows from the flip symmetry of knot complexes, and
``knot_from_pairing`` runs the whole pipeline for the satellite knots used
in the linear-independence computations.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cfk import (CfkComplex, Generator, associated_graded_support,
                  calibrate, calibrate_associated_graded,
                  direct_sum, dual, euler_characteristic, hfk_hat,
                  require_valid, simplify, tensor, torus_alexander)
from .errors import (CatalogError, CompletionError, DiagramError,
                     DivergenceError, DomainError, GradingError,
                     ValidationError)
from .exact import as_rational, reduce_chain_complex

# ---------------------------------------------------------------------------
# the torus algebra

REEB = ("1", "2", "3", "12", "23", "123")
IDEMPOTENTS = ("i0", "i1")
# rho = iota_left * rho * iota_right
SANDWICH = {"1": (0, 1), "2": (1, 0), "3": (0, 1), "12": (0, 0), "23": (1, 1), "123": (0, 1)}
PRODUCTS = {("1", "2"): "12", ("2", "3"): "23", ("1", "23"): "123", ("12", "3"): "123"}
FACTORIZATIONS: dict[str, list[tuple[str, str]]] = {}
for (_a, _b), _c in PRODUCTS.items():
    FACTORIZATIONS.setdefault(_c, []).append((_a, _b))


def _canon(a: str) -> str:
    a = str(a).strip()
    a = a.replace("ρ", "").replace("rho", "").replace("_", "").replace("ι", "i").replace("iota", "i")
    if a not in REEB and a not in IDEMPOTENTS:
        raise DomainError(f"unknown algebra element {a!r}")
    return a


def left_idempotent(a: str) -> int:
    a = _canon(a)
    return int(a[1]) if a in IDEMPOTENTS else SANDWICH[a][0]


def right_idempotent(a: str) -> int:
    a = _canon(a)
    return int(a[1]) if a in IDEMPOTENTS else SANDWICH[a][1]


def algebra_mul(a: str, b: str) -> str | None:
    """Product in the torus algebra; None stands for zero."""
    a, b = _canon(a), _canon(b)
    if right_idempotent(a) != left_idempotent(b):
        return None
    if a in IDEMPOTENTS:
        return b
    if b in IDEMPOTENTS:
        return a
    return PRODUCTS.get((a, b))


# ---------------------------------------------------------------------------
# grading group


def _half(x) -> Fraction:
    x = as_rational(x)
    if (2 * x).denominator != 1:
        raise DomainError(f"{x} is not a half-integer")
    return x


@dataclass(frozen=True)
class GradingElement:
    """(j; p, q) with an extra integer Alexander factor."""

    j: Fraction
    p: Fraction
    q: Fraction
    alex: int = 0

    def __post_init__(self):
        object.__setattr__(self, "j", _half(self.j))
        object.__setattr__(self, "p", _half(self.p))
        object.__setattr__(self, "q", _half(self.q))
        if (self.p + self.q).denominator != 1:
            raise DomainError("p + q must be an integer")
        object.__setattr__(self, "alex", int(self.alex))

    def __mul__(self, o: "GradingElement") -> "GradingElement":
        return GradingElement(self.j + o.j + self.p * o.q - self.q * o.p,
                              self.p + o.p, self.q + o.q, self.alex + o.alex)

    def inverse(self) -> "GradingElement":
        return GradingElement(-self.j, -self.p, -self.q, -self.alex)

    def __pow__(self, k: int) -> "GradingElement":
        base = self if k >= 0 else self.inverse()
        out, k = IDENTITY, abs(k)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def spin(self) -> tuple[Fraction, Fraction]:
        return self.p, self.q

    def to_json(self) -> list[str]:
        return [str(self.j), str(self.p), str(self.q), str(self.alex)]

    @classmethod
    def from_json(cls, data) -> "GradingElement":
        j, p, q, *rest = data
        return cls(as_rational(j), as_rational(p), as_rational(q), int(rest[0]) if rest else 0)

    def __repr__(self):
        fmt = lambda x: str(x)
        s = f"({fmt(self.j)}; {fmt(self.p)}, {fmt(self.q)})"
        return s + (f"u^{self.alex}" if self.alex else "")


IDENTITY = GradingElement(0, 0, 0)
LAMBDA = GradingElement(1, 0, 0)
GR_U = GradingElement(-2, 0, 0, -1)
_BASIC = {
    "1": GradingElement(Fraction(-1, 2), Fraction(1, 2), Fraction(-1, 2)),
    "2": GradingElement(Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2)),
    "3": GradingElement(Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 2)),
}


def gr(a: str) -> GradingElement:
    """Grading of an algebra element (idempotents are graded by the identity)."""
    a = _canon(a)
    if a in IDEMPOTENTS:
        return IDENTITY
    out = IDENTITY
    for ch in a:
        out = out * _BASIC[ch]
    return out


def grading_mul(g: GradingElement, h: GradingElement) -> GradingElement:
    return g * h


def _power_of(h: GradingElement, gen: GradingElement) -> int | None:
    """k with gen**k == h, or None."""
    if gen.p:
        k = h.p / gen.p
    elif gen.q:
        k = h.q / gen.q
    elif gen.j:
        k = h.j / gen.j
    else:
        return 0 if h == IDENTITY else None
    if k.denominator != 1:
        return None
    k = int(k)
    return k if gen ** k == h else None


def reduce_double_coset(g: GradingElement, left_period: GradingElement,
                        right_period: GradingElement) -> tuple[int, int]:
    """(Maslov, Alexander) of the class of g in <left> \\ G x Z / <right>.

    Integer powers of the periods are chosen to kill the (p, q) part; the
    remaining lambda exponent and Alexander factor are the bigrading.
    """
    a11, a12 = left_period.p, right_period.p
    a21, a22 = left_period.q, right_period.q
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise GradingError("periods have dependent spin components")
    a = (-g.p * a22 + a12 * g.q) / det
    b = (-a11 * g.q + a21 * g.p) / det
    if a.denominator != 1 or b.denominator != 1:
        raise GradingError(f"cannot cancel the spin of {g} with integer period powers")
    h = left_period ** int(a) * g * right_period ** int(b)
    assert h.p == 0 and h.q == 0
    if h.j.denominator != 1:
        raise GradingError(f"half-integral Maslov grading {h.j}")
    return int(h.j), h.alex


# ---------------------------------------------------------------------------
# type D structures


@dataclass(frozen=True)
class TypeDStructure:
    """Type D structure: generators with idempotents and gradings, arrows x -> a (x) y."""

    name: str
    idempotents: Mapping[str, int]
    gradings: Mapping[str, GradingElement]
    arrows: tuple  # ((source, algebra element, target), ...)
    period: GradingElement

    @property
    def generators(self) -> tuple:
        return tuple(self.idempotents)

    def out_arrows(self) -> dict[str, list[tuple[str, str]]]:
        out: dict[str, list] = {g: [] for g in self.idempotents}
        for x, a, y in self.arrows:
            out[x].append((a, y))
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "nodes": [{"name": g, "idempotent": i, "grading": self.gradings[g].to_json()}
                      for g, i in self.idempotents.items()],
            "arrows": [{"from": x, "label": [a], "u": 0, "to": y} for x, a, y in self.arrows],
            "period": self.period.to_json(),
        }


def check_type_d(d: TypeDStructure) -> list[str]:
    """Idempotent, structure-equation and grading violations (empty if fine)."""
    bad = []
    for x, a, y in d.arrows:
        if SANDWICH[a] != (d.idempotents[x], d.idempotents[y]):
            bad.append(f"idempotents: {x} -> rho{a} {y}")
    out = d.out_arrows()
    for x in d.idempotents:
        acc: Counter = Counter()
        for a, y in out[x]:
            for b, z in out[y]:
                prod = algebra_mul(a, b)
                if prod is not None:
                    acc[(prod, z)] += 1
        for (prod, z), c in sorted(acc.items()):
            if c % 2:
                bad.append(f"structure equation: {x} -> rho{prod} {z}")
    for x, a, y in d.arrows:
        h = (gr(a) * d.gradings[y]).inverse() * LAMBDA.inverse() * d.gradings[x]
        if _power_of(h, d.period) is None:
            bad.append(f"grading: {x} -> rho{a} {y}")
    return bad


def infer_type_d_gradings(name: str, idempotents: Mapping[str, int], arrows: Sequence,
                          root: str | None = None, root_grading: GradingElement = IDENTITY,
                          period: GradingElement | None = None) -> TypeDStructure:
    """Assign gradings by walking a spanning tree from ``root``.

    Cycles of the graph must close up modulo the period; when no period is
    given it is read off from the first cycle that does not close exactly.
    """
    gens = list(idempotents)
    root = root or gens[0]
    nbrs: dict[str, list] = {g: [] for g in gens}
    for x, a, y in arrows:
        nbrs[x].append(("out", a, y))
        nbrs[y].append(("in", a, x))
    grading = {root: root_grading}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for direction, a, y in nbrs[x]:
            if y in grading:
                continue
            # lambda^{-1} gr(src) = gr(a) gr(tgt)
            if direction == "out":
                grading[y] = gr(a).inverse() * LAMBDA.inverse() * grading[x]
            else:
                grading[y] = LAMBDA * gr(a) * grading[x]
            queue.append(y)
    if len(grading) != len(gens):
        raise GradingError("type D graph is disconnected; supply gradings per component")
    for x, a, y in arrows:
        expected = gr(a).inverse() * LAMBDA.inverse() * grading[x]
        h = grading[y].inverse() * expected
        if h == IDENTITY:
            continue
        if period is None:
            period = h if (h.p, h.q) > (0, 0) else h.inverse()
        elif _power_of(h, period) is None:
            raise GradingError("cycles of the type D graph give incompatible periods")
    if period is None:
        raise GradingError("type D graph has no cycle; the grading period is undetermined")
    return TypeDStructure(name, dict(idempotents), grading, tuple(arrows), period)


def _lam(k):
    return LAMBDA ** k


def _trefoil_parts(suffix: str = "", lam_shift: int = 0):
    g = {
        "I": _lam(-2) * gr("23").inverse(),
        "J": _lam(-1),
        "K": gr("23"),
        "P": _lam(-2) * gr("3").inverse(),
        "Q": _lam(-2) * gr("1").inverse(),
    }
    idem = {"I": 0, "J": 0, "K": 0, "P": 1, "Q": 1}
    arrows = [("J", "3", "P"), ("P", "2", "I"), ("J", "1", "Q"), ("K", "123", "Q"), ("I", "12", "K")]
    ren = lambda v: v + suffix
    return ({ren(k): v for k, v in idem.items()},
            {ren(k): _lam(lam_shift) * v for k, v in g.items()},
            [(ren(x), a, ren(y)) for x, a, y in arrows])


TREFOIL_PERIOD = LAMBDA * gr("12") * gr("23") ** 2


def _square_parts(suffix: str = "", lam_shift: int = 0, s_reading: str = "inverse"):
    if s_reading not in ("inverse", "direct"):
        raise DomainError("s_reading is 'inverse' or 'direct'")
    s_factor = gr("3").inverse() if s_reading == "inverse" else gr("3")
    g = {
        "K": gr("23"),
        "L": _lam(-1),
        "P": _lam(-2) * gr("3").inverse(),
        "Q": _lam(-2) * gr("1").inverse(),
        "S": _lam(-1) * s_factor * gr("23"),
    }
    # the tabulated I, J, R repeat the trefoil values and contradict the
    # square's own arrows; derive them from I -> rho3 P, P -> rho2 J, J -> rho1 R
    g["I"] = LAMBDA * gr("3") * g["P"]
    g["J"] = gr("2").inverse() * LAMBDA.inverse() * g["P"]
    g["R"] = gr("1").inverse() * LAMBDA.inverse() * g["J"]
    idem = {"I": 0, "J": 0, "K": 0, "L": 0, "P": 1, "Q": 1, "R": 1, "S": 1}
    arrows = [("I", "3", "P"), ("P", "2", "J"), ("I", "1", "Q"), ("K", "123", "Q"),
              ("J", "1", "R"), ("L", "123", "R"), ("S", "2", "L"), ("K", "3", "S")]
    ren = lambda v: v + suffix
    return ({ren(k): v for k, v in idem.items()},
            {ren(k): _lam(lam_shift) * v for k, v in g.items()},
            [(ren(x), a, ren(y)) for x, a, y in arrows])


# Variants of the 2-framed unknot complement; the displayed arrows are not
# idempotent-consistent, so the pairing pipeline selects among these.
UNKNOT_VARIANTS = {
    "a": [("I", "123", "P"), ("P", "23", "Q"), ("Q", "2", "I")],
    "b": [("I", "1", "Q"), ("P", "23", "Q"), ("I", "3", "P")],
    "c": [("I", "1", "Q"), ("Q", "23", "P"), ("I", "3", "P")],
    "d": [("I", "1", "P"), ("P", "23", "Q"), ("I", "3", "Q")],
}
UNKNOT_DEFAULT = "a"


def builtin_type_d(name: str, *, s_reading: str = "inverse", variant: str | None = None) -> TypeDStructure:
    key = name.strip()
    if key == "trefoil_framed2":
        idem, grad, arrows = _trefoil_parts()
        return TypeDStructure(key, idem, grad, tuple(arrows), TREFOIL_PERIOD)
    if key == "square":
        idem, grad, arrows = _square_parts(s_reading=s_reading)
        return TypeDStructure(key, idem, grad, tuple(arrows), TREFOIL_PERIOD)
    if key == "wd_trefoil_framed2":
        idem, grad, arrows = _trefoil_parts("0")
        for t in (1, 2, 3):
            i2, g2, a2 = _square_parts(str(t), lam_shift=0 if t == 1 else -1, s_reading=s_reading)
            idem.update(i2)
            grad.update(g2)
            arrows += a2
        return TypeDStructure(key, idem, grad, tuple(arrows), TREFOIL_PERIOD)
    if key == "unknot_framed2":
        v = variant or UNKNOT_DEFAULT
        if v not in UNKNOT_VARIANTS:
            raise CatalogError(f"unknown unknot variant {v!r}")
        idem = {"P": 1, "Q": 1, "I": 0}
        return infer_type_d_gradings(key, idem, UNKNOT_VARIANTS[v], root="I")
    raise CatalogError(f"unknown type D structure {name!r}")


# ---------------------------------------------------------------------------
# type A modules


@dataclass(frozen=True)
class Operation:
    source: str
    inputs: tuple
    upower: int
    target: str


@dataclass(frozen=True)
class TypeAModule:
    name: str
    idempotents: Mapping[str, int]
    gradings: Mapping[str, GradingElement]
    operations: tuple
    period: GradingElement
    diagram: tuple = field(default=(), compare=False)

    @property
    def generators(self) -> tuple:
        return tuple(self.idempotents)

    def max_inputs(self) -> int:
        return max((len(op.inputs) for op in self.operations), default=0)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "nodes": [{"name": g, "idempotent": i, "grading": self.gradings[g].to_json()}
                      for g, i in self.idempotents.items()],
            "arrows": [{"from": s, "label": list(lab), "u": u, "to": t} for s, lab, u, t in self.diagram],
            "operations": [{"from": op.source, "inputs": list(op.inputs), "u": op.upower, "to": op.target}
                           for op in self.operations],
            "period": self.period.to_json(),
        }


def _check_labels(src_idem: int, labels: Sequence[str], dst_idem: int, where: str):
    if not labels:
        if src_idem != dst_idem:
            raise DiagramError(f"U-arrow {where} joins different idempotents")
        return
    if left_idempotent(labels[0]) != src_idem:
        raise DiagramError(f"{where}: rho{labels[0]} does not start at the source idempotent")
    for a, b in zip(labels, labels[1:]):
        if right_idempotent(a) != left_idempotent(b):
            raise DiagramError(f"{where}: rho{a} and rho{b} are not composable")
    if right_idempotent(labels[-1]) != dst_idem:
        raise DiagramError(f"{where}: rho{labels[-1]} does not end at the target idempotent")


def expand_arrow_diagram(name: str, idempotents: Mapping[str, int], gradings: Mapping[str, GradingElement],
                         arrows: Sequence, period: GradingElement) -> TypeAModule:
    """Materialize the operations encoded by an arrow diagram.

    ``arrows`` holds ``(source, labels, upower, target)``.  An arrow with no
    labels is a differential ``m_1``; labelled arrows concatenate along
    paths, the last element of one label string multiplying the first of
    the next (a zero product ends the path).
    """
    arrows = [(s, tuple(_canon(a) for a in lab), int(u), t) for s, lab, u, t in arrows]
    for s, lab, u, t in arrows:
        if s not in idempotents or t not in idempotents:
            raise DiagramError(f"arrow {s}->{t} names an unknown generator")
        _check_labels(idempotents[s], lab, idempotents[t], f"{s}->{t}")
    labelled: dict[str, list] = {g: [] for g in idempotents}
    ops: Counter = Counter()
    for s, lab, u, t in arrows:
        if lab:
            labelled[s].append((lab, u, t))
        else:
            ops[Operation(s, (), u, t)] += 1

    def walk(start, seq, u, node, seen):
        for lab, du, nxt in labelled[node]:
            if nxt in seen:
                raise DiagramError(f"labelled arrows form a cycle through {nxt}")
            if seq:
                prod = algebra_mul(seq[-1], lab[0])
                if prod is None:
                    continue
                new = seq[:-1] + (prod,) + lab[1:]
            else:
                new = lab
            ops[Operation(start, new, u + du, nxt)] += 1
            walk(start, new, u + du, nxt, seen | {nxt})

    for g in idempotents:
        walk(g, (), 0, g, {g})
    kept = tuple(sorted((op for op, c in ops.items() if c % 2),
                        key=lambda o: (o.source, len(o.inputs), o.inputs, o.target)))
    return TypeAModule(name, dict(idempotents), dict(gradings), kept, period, tuple(arrows))


def check_type_a(a: TypeAModule) -> list[str]:
    """Grading and A-infinity violations of a type A module (empty if fine)."""
    bad = []
    for op in a.operations:
        lhs = _lam(len(op.inputs) - 1) * a.gradings[op.source]
        for x in op.inputs:
            lhs = lhs * gr(x)
        rhs = GR_U ** op.upower * a.gradings[op.target]
        if _power_of(lhs * rhs.inverse(), a.period) is None:
            bad.append(f"grading: {op}")
    index: dict[tuple, list] = {}
    for op in a.operations:
        index.setdefault((op.source, op.inputs), []).append(op)
    # every nonzero term of an A-infinity relation comes from a chain of two
    # operations or from an operation whose input splits as a product
    candidates = set()
    for op in a.operations:
        for op2 in a.operations:
            if op2.source == op.target:
                candidates.add((op.source, op.inputs + op2.inputs))
        for i, x in enumerate(op.inputs):
            for f1, f2 in FACTORIZATIONS.get(x, []):
                candidates.add((op.source, op.inputs[:i] + (f1, f2) + op.inputs[i + 1:]))
    for x, seq in sorted(candidates):
        acc: Counter = Counter()
        for i in range(len(seq) + 1):
            for op in index.get((x, seq[:i]), []):
                for op2 in index.get((op.target, seq[i:]), []):
                    acc[(op2.target, op.upower + op2.upower)] += 1
        for j in range(len(seq) - 1):
            prod = algebra_mul(seq[j], seq[j + 1])
            if prod is not None:
                for op in index.get((x, seq[:j] + (prod,) + seq[j + 2:]), []):
                    acc[(op.target, op.upower)] += 1
        for (y, u), c in sorted(acc.items()):
            if c % 2:
                bad.append(f"A-infinity relation fails for m({x}, {', '.join(seq)}) at U^{u} {y}")
    return bad


def cabling_module(n: int) -> TypeAModule:
    """The (n, -1) cabling piece as a type A module."""
    if n < 1:
        raise DomainError("cabling needs n >= 1")
    r21 = gr("2") * gr("1")
    idem = {"X": 0}
    grading = {"X": IDENTITY}
    for i in range(1, n + 1):
        idem[f"A{i}"] = 1
        idem[f"B{i}"] = 1
        grading[f"A{i}"] = _lam(i - n) * gr("2").inverse() * r21 ** (i - n)
        grading[f"B{i}"] = _lam(i - n) * GR_U ** (n - i) * gr("3") * r21 ** (i - n)
    arrows = [(f"A{i}", (), i, f"B{i}") for i in range(1, n + 1)]
    arrows += [(f"A{n}", ("2",), 0, "X"), ("X", ("3",), 0, f"B{n}")]
    for i in range(1, n):
        arrows.append((f"A{i}", ("2", "1"), 0, f"A{i + 1}"))
        arrows.append((f"B{i}", ("2", "1"), 1, f"B{i + 1}"))
    period = LAMBDA * GR_U ** n * gr("3") * gr("2")
    return expand_arrow_diagram(f"cabling({n},-1)", idem, grading, arrows, period)


_CABLING = re.compile(r"^\s*cabling\s*[(:]\s*(\d+)\s*(?:,\s*-1\s*)?\)?\s*$")


def builtin_type_a(name: str, n: int | None = None) -> TypeAModule:
    m = _CABLING.match(name)
    if m:
        return cabling_module(int(m.group(1)))
    if name.strip() == "cabling" and n is not None:
        return cabling_module(int(n))
    raise CatalogError(f"unknown type A module {name!r}")


# ---------------------------------------------------------------------------
# pairing


MAX_PATHS = 1_000_000


def box_tensor(a: TypeAModule, d: TypeDStructure) -> CfkComplex:
    """Box tensor product; gradings are relative (not yet calibrated)."""
    index: dict[tuple, list] = {}
    prefixes: dict[str, set] = {x: {()} for x in a.idempotents}
    for op in a.operations:
        index.setdefault((op.source, op.inputs), []).append(op)
        for k in range(1, len(op.inputs) + 1):
            prefixes[op.source].add(op.inputs[:k])
    out = d.out_arrows()
    name = lambda x, y: f"{x}⊗{y}"
    pairs = [(x, y) for x in a.idempotents for y in d.idempotents
             if a.idempotents[x] == d.idempotents[y]]
    edges: Counter = Counter()
    explored = 0
    for x, y in pairs:
        stack = [((), y)]
        while stack:
            seq, node = stack.pop()
            explored += 1
            if explored > MAX_PATHS:
                raise DivergenceError("box tensor differential does not terminate")
            for op in index.get((x, seq), []):
                edges[(name(x, y), name(op.target, node), op.upower)] += 1
            for lab, nxt in out[node]:
                new = seq + (lab,)
                if new in prefixes[x]:
                    stack.append((new, nxt))
    gens = []
    for x, y in pairs:
        g = a.gradings[x] * d.gradings[y]
        m, al = reduce_double_coset(g, a.period, d.period)
        gens.append(Generator(name(x, y), m, al))
    c = CfkComplex(gens, [e for e, k in edges.items() if k % 2])
    require_valid(c)
    for x, y, k in c.edges():
        if c[y].alexander - k != c[x].alexander:
            raise GradingError(f"pairing arrow {x}->{y} does not preserve the Alexander grading")
    return c


def pair(a: TypeAModule, d: TypeDStructure) -> CfkComplex:
    """Box tensor product with absolute gradings (tower at M = 2A, HFK centred)."""
    return calibrate_associated_graded(box_tensor(a, d))


def _flip(m: int, a: int) -> tuple[int, int]:
    return m - 2 * a, -a


def type_d_summands(d: TypeDStructure) -> list[list[str]]:
    """Generators of d grouped into its connected (direct) summands."""
    parent = {g: g for g in d.idempotents}

    def find(g):
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    for x, _, y in d.arrows:
        parent[find(x)] = find(y)
    groups: dict[str, list[str]] = {}
    for g in d.idempotents:
        groups.setdefault(find(g), []).append(g)
    return list(groups.values())


def pairing_summands(c: CfkComplex, d: TypeDStructure) -> list[list[str]]:
    """Generators of a pairing grouped by the type D summand they come from."""
    where = {g: i for i, grp in enumerate(type_d_summands(d)) for g in grp}
    groups: dict[int, list[str]] = {}
    for g in c.generators:
        groups.setdefault(where[g.name.split("⊗", 1)[1]], []).append(g.name)
    return [groups[k] for k in sorted(groups)]


def complete_by_symmetry(h: CfkComplex, summands: Sequence[Sequence[str]] | None = None) -> CfkComplex:
    """Add the Alexander-lowering arrows to a complex of Alexander-preserving ones.

    ``summands`` partitions the generators into direct summands (default:
    one summand).  In each summand unit arrows are cancelled and the rest is
    put in horizontal normal form, pairs x -> U^k y.  If the summand carries
    the free tower, the symmetry (M, A) -> (M - 2A, -A) dictates a vertical
    arrow between the flipped partners of every pair.  Summands with
    torsion homology only are acyclic after inverting U and are kept as
    they are.
    """
    if summands is None:
        summands = [[g.name for g in h.generators]]
    parts = []
    for names in summands:
        sub = simplify(h.subcomplex_on(names))
        red = reduce_chain_complex(sub.alexanders(), associated_graded_support(sub), degree=0)
        if not red.free:
            parts.append(sub)
            continue
        by_grading: dict[tuple[int, int], list[str]] = {}
        for g in sub.generators:
            by_grading.setdefault((g.maslov, g.alexander), []).append(g.name)
        for key, names_at in by_grading.items():
            if len(names_at) != 1:
                raise CompletionError(f"bigrading {key} is not unique: {names_at}")
            if _flip(*key) not in by_grading:
                raise CompletionError(f"bigrading {key} has no symmetric partner")
        edges = []
        for x, y, k in red.pairs:
            gx, gy = sub.generators[x], sub.generators[y]
            edges.append((gx.name, gy.name, k))
            fx = by_grading[_flip(gx.maslov, gx.alexander)][0]
            fy = by_grading[_flip(gy.maslov, gy.alexander)][0]
            edges.append((fx, fy, 0))
        part = CfkComplex(sub.generators, edges)
        try:
            require_valid(part)
        except ValidationError as exc:
            raise CompletionError(f"symmetric completion is not a complex: {exc}") from exc
        parts.append(part)
    out = direct_sum(*parts)
    if not calibrate(out).structurally_equal(out):
        raise CompletionError("completed complex is not calibrated")
    return out


def knot_pairing(a: TypeAModule, d: TypeDStructure) -> CfkComplex:
    """Pair, calibrate and complete: the full knot complex of the satellite."""
    h = pair(a, d)
    return complete_by_symmetry(h, pairing_summands(h, d))


PAIRINGS = ("cable_trefoil(n)", "torus_n_2n-1(n)", "cable_wd_trefoil(n)", "K_n(n)")
_PAIRING = re.compile(r"^\s*([A-Za-z_0-9\-]+?)\s*[(:]\s*(\d+)\s*\)?\s*$")


def torus_from_pairing(n: int) -> CfkComplex:
    """T(n, 2n-1) from the cabling piece and the 2-framed unknot complement."""
    c = knot_pairing(cabling_module(n), builtin_type_d("unknot_framed2"))
    if n >= 2 and euler_characteristic(hfk_hat(c)) != torus_alexander(n, 2 * n - 1):
        raise CompletionError(f"pairing for n={n} does not have the Alexander polynomial of T({n},{2 * n - 1})")
    return c


def knot_from_pairing(spec: str, *, s_reading: str = "inverse") -> CfkComplex:
    m = _PAIRING.match(spec)
    if not m:
        raise CatalogError(f"unknown pairing {spec!r}; choose from {', '.join(PAIRINGS)}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise DomainError("n must be positive")
    if kind == "cable_trefoil":
        return knot_pairing(cabling_module(n), builtin_type_d("trefoil_framed2"))
    if kind in ("torus_n_2n-1", "torus_n_2n_1", "torus"):
        return torus_from_pairing(n)
    if kind == "cable_wd_trefoil":
        d = builtin_type_d("wd_trefoil_framed2", s_reading=s_reading)
        return knot_pairing(cabling_module(n), d)
    if kind == "K_n":
        cable = knot_from_pairing(f"cable_wd_trefoil({n})", s_reading=s_reading)
        return tensor(cable, dual(torus_from_pairing(n)))
    raise CatalogError(f"unknown pairing {spec!r}; choose from {', '.join(PAIRINGS)}")
