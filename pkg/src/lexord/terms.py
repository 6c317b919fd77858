"""Symbolic countable linear orders and their finite condensation rank.

A term is a finite ordered sum of items.  An item is an atom (a finite
order, omega, omega*, zeta, eta or omega^k) or an omega-indexed sum
``OmegaSum(n0, schema)`` whose summand ``n`` is the finite sum ``schema``
instantiated at ``n``; the parametric atoms ``FinP(c)`` and
``OmegaPowP(c)`` stand for a finite order of size ``n + c`` and for
``omega^(n + c)``.

Points are addressed as ``(item_index, coord)``.  Coordinates are: an index
``< k`` for ``Fin(k)``; a natural for omega; a natural ``m`` standing for
``-(m + 1)`` for omega*; an integer for zeta; a dyadic rational in (0, 1)
for eta; a ``k``-tuple of naturals (most significant first) for omega^k;
and ``(n, j, sub)`` for an omega-indexed sum, with ``sub`` a coordinate of
schema atom ``j`` instantiated at ``n``.

Normal form keeps every parametric atom at size or exponent ``>= 1`` for all
``n >= n0`` by peeling leading summands.  This makes the attributes used by
condensation (has a least / greatest point, has two adjacent points) the
same in every summand.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

from .errors import InvalidAddress, TermSyntaxError
from .ordinal import OMEGA, Ordinal, ord_add


@dataclass(frozen=True)
class Fin:
    k: int


@dataclass(frozen=True)
class Omega:
    pass


@dataclass(frozen=True)
class OmegaStar:
    pass


@dataclass(frozen=True)
class Zeta:
    pass


@dataclass(frozen=True)
class Eta:
    pass


@dataclass(frozen=True)
class OmegaPow:
    k: int


@dataclass(frozen=True)
class FinP:
    c: int


@dataclass(frozen=True)
class OmegaPowP:
    c: int


Atom = Union[Fin, Omega, OmegaStar, Zeta, Eta, OmegaPow]
ParamAtom = Union[Atom, FinP, OmegaPowP]
_PARAM = (FinP, OmegaPowP)


@dataclass(frozen=True)
class OmegaSum:
    n0: int
    schema: tuple


@dataclass(frozen=True)
class OrderTerm:
    items: tuple = ()

    def __str__(self):
        return render_term(self)


Point = tuple  # (item_index, coord)
Projection = Callable[[Point], Point]


class Outcome(enum.Enum):
    SINGLETON = "singleton"
    DENSE = "dense"
    EMPTY = "empty"


class OrderClass(enum.Enum):
    SCATTERED = "scattered"
    DENSE = "dense"
    QUASI_DENSE_NOT_DENSE = "quasi-dense"
    EMPTY = "empty"
    SINGLETON = "singleton"


@dataclass(frozen=True)
class CondensationTrace:
    steps: tuple
    limit_applied: bool
    rank: Ordinal
    outcome: Outcome
    limit_index: int | None = field(default=None)


# -- per-atom attributes ---------------------------------------------------


def instantiate(atom: ParamAtom, n: int) -> Atom:
    if isinstance(atom, FinP):
        return Fin(n + atom.c)
    if isinstance(atom, OmegaPowP):
        return OmegaPow(n + atom.c)
    return atom


def _valid_coord(atom: Atom, c) -> bool:
    if isinstance(atom, Eta):
        return (
            isinstance(c, Fraction)
            and 0 < c < 1
            and c.denominator & (c.denominator - 1) == 0
        )
    if isinstance(atom, OmegaPow):
        return (
            isinstance(c, tuple)
            and len(c) == atom.k
            and all(type(x) is int and x >= 0 for x in c)
        )
    if type(c) is not int:
        return False
    if isinstance(atom, Fin):
        return 0 <= c < atom.k
    if isinstance(atom, (Omega, OmegaStar)):
        return c >= 0
    return isinstance(atom, Zeta)


def _sign(a, b) -> int:
    return (a > b) - (a < b)


def _cmp_coord(atom: Atom, a, b) -> int:
    if isinstance(atom, OmegaStar):
        return _sign(b, a)
    return _sign(a, b)


def _is_finite(atom: Atom) -> bool:
    return isinstance(atom, Fin) or atom == OmegaPow(0)


def _finite_between(atom: Atom, a, b) -> bool:
    if isinstance(atom, Eta):
        return a == b
    if isinstance(atom, OmegaPow) and atom.k > 0:
        return a[:-1] == b[:-1]
    return True


def _finite_above(atom: Atom, a) -> bool:
    return isinstance(atom, (Fin, OmegaStar)) or atom == OmegaPow(0)


def _finite_below(atom: Atom, a) -> bool:
    if isinstance(atom, OmegaPow):
        return not any(a[:-1])
    return isinstance(atom, (Fin, Omega))


def _has_min(atom: Atom) -> bool:
    return isinstance(atom, (Fin, Omega, OmegaPow))


def _has_max(atom: Atom) -> bool:
    return isinstance(atom, (Fin, OmegaStar)) or atom == OmegaPow(0)


def _has_adjacent_pair(atom: ParamAtom) -> bool:
    if isinstance(atom, Fin):
        return atom.k >= 2
    if isinstance(atom, OmegaPow):
        return atom.k >= 1
    # parametric atoms grow without bound along the sum
    return not isinstance(atom, Eta)


def _condense_atom(atom: ParamAtom) -> ParamAtom:
    if isinstance(atom, Eta):
        return atom
    if isinstance(atom, OmegaPow) and atom.k > 0:
        return OmegaPow(atom.k - 1)
    if isinstance(atom, OmegaPowP):
        return OmegaPowP(atom.c - 1)
    return Fin(1)


def _project_coord(atom: Atom, c):
    if isinstance(atom, Eta):
        return c
    if isinstance(atom, OmegaPow) and atom.k > 0:
        return c[:-1]
    return 0


def _first_coord(atom: Atom):
    if isinstance(atom, OmegaPow):
        return (0,) * atom.k
    if isinstance(atom, (Fin, Omega)):
        return 0
    return None


# -- item-level attributes -------------------------------------------------


def _item_head(item) -> bool:
    if isinstance(item, OmegaSum):
        return _has_min(instantiate(item.schema[0], item.n0))
    return _has_min(item)


def _item_tail(item) -> bool:
    if isinstance(item, OmegaSum):
        return False
    return _has_max(item)


def _sum_positions(s: OmegaSum, n: int, j: int, n_end: int, j_end: int):
    """Schema positions strictly between (n, j) and (n_end, j_end)."""
    r = len(s.schema)
    j += 1
    while (n, j) < (n_end, j_end):
        if j == r:
            n, j = n + 1, 0
            continue
        yield n, j
        j += 1


def _summand_finite(s: OmegaSum, n: int) -> bool:
    return all(_is_finite(instantiate(a, n)) for a in s.schema)


# -- normalization ---------------------------------------------------------


def _needs_peel(atom: ParamAtom, n: int) -> bool:
    return isinstance(atom, _PARAM) and n + atom.c < 1


def _place_atom(atom: Atom, out: list):
    """Append a normalized copy of ``atom``; return its coordinate map."""
    if isinstance(atom, _PARAM):
        raise TermSyntaxError("parametric atom outside an omega-indexed sum")
    if isinstance(atom, Fin) and atom.k == 0:
        return None
    idx = len(out)
    if atom == OmegaPow(0):
        out.append(Fin(1))
        return lambda c: (idx, 0)
    out.append(atom)
    return lambda c: (idx, c)


def _place_sum(s: OmegaSum, out: list):
    for a in s.schema:
        if isinstance(a, OmegaSum):
            raise TermSyntaxError("nested omsum is not supported")
        if isinstance(a, _PARAM) and s.n0 + a.c < 0:
            raise TermSyntaxError(f"schema atom {a} is negative at n = {s.n0}")
    kept = []
    fix = {}
    for j, a in enumerate(s.schema):
        if a == Fin(0):
            continue
        if a == OmegaPow(0):
            a = Fin(1)
            fix[j] = lambda c: 0
        kept.append((j, a))
    if not kept:
        return None
    schema = tuple(a for _, a in kept)
    newj = {j: i for i, (j, _) in enumerate(kept)}
    n0 = s.n0
    peeled = {}
    while any(_needs_peel(a, n0) for a in schema):
        for jn, a in enumerate(schema):
            peeled[n0, jn] = _place_atom(instantiate(a, n0), out)
        n0 += 1
    idx = len(out)
    out.append(OmegaSum(n0, schema))

    def remap(c):
        n, j, sub = c
        jn = newj[j]
        sub = fix.get(j, lambda x: x)(sub)
        if n < n0:
            return peeled[n, jn](sub)
        return idx, (n, jn, sub)

    return remap


def normalize(items) -> tuple[OrderTerm, Projection]:
    """Normal form of a raw item list plus the map carrying old addresses
    to new ones."""
    out: list = []
    maps = []
    for item in items:
        if isinstance(item, OmegaSum):
            maps.append(_place_sum(item, out))
        else:
            maps.append(_place_atom(item, out))

    def remap(p: Point) -> Point:
        i, c = p
        f = maps[i]
        if f is None:
            raise InvalidAddress(f"item {i} has no points")
        return f(c)

    return OrderTerm(tuple(out)), remap


# -- points ----------------------------------------------------------------


def _locate(t: OrderTerm, p: Point):
    """Item index, concrete atom and coordinate of ``p`` (validated)."""
    try:
        i, c = p
    except (TypeError, ValueError):
        raise InvalidAddress(f"malformed address {p!r}") from None
    if type(i) is not int or not 0 <= i < len(t.items):
        raise InvalidAddress(f"no item {i!r}")
    item = t.items[i]
    if isinstance(item, OmegaSum):
        try:
            n, j, sub = c
        except (TypeError, ValueError):
            raise InvalidAddress(f"malformed sum address {c!r}") from None
        if type(n) is not int or n < item.n0 or type(j) is not int or not 0 <= j < len(item.schema):
            raise InvalidAddress(f"bad summand/position in {c!r}")
        atom = instantiate(item.schema[j], n)
        if not _valid_coord(atom, sub):
            raise InvalidAddress(f"bad coordinate {sub!r} for {atom}")
        return i, atom, c
    if not _valid_coord(item, c):
        raise InvalidAddress(f"bad coordinate {c!r} for {item}")
    return i, item, c


def validate_point(t: OrderTerm, p: Point) -> None:
    _locate(t, p)


def point_cmp(t: OrderTerm, x: Point, y: Point) -> int:
    i, atom_x, cx = _locate(t, x)
    k, _, cy = _locate(t, y)
    if i != k:
        return _sign(i, k)
    if isinstance(t.items[i], OmegaSum):
        if cx[:2] != cy[:2]:
            return _sign(cx[:2], cy[:2])
        return _cmp_coord(atom_x, cx[2], cy[2])
    return _cmp_coord(atom_x, cx, cy)


def _above_finite(item, c) -> bool:
    if isinstance(item, OmegaSum):
        return False
    return _finite_above(item, c)


def _below_finite(item, c) -> bool:
    if not isinstance(item, OmegaSum):
        return _finite_below(item, c)
    n, j, sub = c
    if not _finite_below(instantiate(item.schema[j], n), sub):
        return False
    if not all(_is_finite(instantiate(a, n)) for a in item.schema[:j]):
        return False
    return all(_summand_finite(item, m) for m in range(item.n0, n))


def interval_finite(t: OrderTerm, x: Point, y: Point) -> bool:
    """Is the closed interval between ``x`` and ``y`` finite?"""
    if point_cmp(t, x, y) > 0:
        x, y = y, x
    (i, a), (k, b) = x, y
    if i != k:
        return (
            _above_finite(t.items[i], a)
            and all(
                not isinstance(t.items[m], OmegaSum) and _is_finite(t.items[m])
                for m in range(i + 1, k)
            )
            and _below_finite(t.items[k], b)
        )
    item = t.items[i]
    if not isinstance(item, OmegaSum):
        return _finite_between(item, a, b)
    (n, j, sa), (n2, j2, sb) = a, b
    if (n, j) == (n2, j2):
        return _finite_between(instantiate(item.schema[j], n), sa, sb)
    return (
        _finite_above(instantiate(item.schema[j], n), sa)
        and all(
            _is_finite(instantiate(item.schema[q], m))
            for m, q in _sum_positions(item, n, j, n2, j2)
        )
        and _finite_below(instantiate(item.schema[j2], n2), sb)
    )


def _geometric(rng: random.Random) -> int:
    n = 0
    while rng.random() < 0.5:
        n += 1
    return n


def _sample_coord(atom: Atom, rng: random.Random, eta_depth: int):
    if isinstance(atom, Fin):
        return rng.randrange(atom.k)
    if isinstance(atom, (Omega, OmegaStar)):
        return _geometric(rng)
    if isinstance(atom, Zeta):
        return _geometric(rng) * rng.choice((-1, 1))
    if isinstance(atom, Eta):
        d = rng.randint(1, eta_depth)
        return Fraction(rng.randrange(1, 2 ** d, 2), 2 ** d)
    return tuple(_geometric(rng) for _ in range(atom.k))


def sample_points(t: OrderTerm, count: int, seed: int, eta_depth: int = 24) -> list:
    """Deterministic pseudo-random valid addresses of ``t``."""
    if not t.items:
        raise InvalidAddress("the empty order has no points")
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        i = rng.randrange(len(t.items))
        item = t.items[i]
        if isinstance(item, OmegaSum):
            n = item.n0 + _geometric(rng)
            j = rng.randrange(len(item.schema))
            atom = instantiate(item.schema[j], n)
            points.append((i, (n, j, _sample_coord(atom, rng, eta_depth))))
        else:
            points.append((i, _sample_coord(item, rng, eta_depth)))
    return points


# -- condensation ----------------------------------------------------------


class _CondensedSum:
    """One condensation step applied to an omega-indexed sum in isolation.

    Position ``j`` of every summand is dropped, i.e. merged into the first
    point of the next kept position, when it ends in a greatest point and
    the next position starts with a least one.  If every position is dropped
    the whole sum is a single class.
    """

    def __init__(self, s: OmegaSum):
        self.sum = s
        schema, r, n0 = s.schema, len(s.schema), s.n0
        self.dropped = [
            _has_max(instantiate(schema[j], n0))
            and _has_min(instantiate(schema[(j + 1) % r], n0))
            for j in range(r)
        ]
        self.collapsed = all(self.dropped)
        if self.collapsed:
            self.item = Fin(1)
            return
        kept = [j for j in range(r) if not self.dropped[j]]
        self.newj = {j: i for i, j in enumerate(kept)}
        self.item = OmegaSum(n0, tuple(_condense_atom(schema[j]) for j in kept))

    def _first_kept(self, n: int, j: int):
        r = len(self.sum.schema)
        while self.dropped[j]:
            j += 1
            if j == r:
                n, j = n + 1, 0
        atom = instantiate(_condense_atom(self.sum.schema[j]), n)
        return n, self.newj[j], _first_coord(atom)

    def first(self):
        if self.collapsed:
            return 0
        return self._first_kept(self.sum.n0, 0)

    def project(self, c):
        if self.collapsed:
            return 0
        n, j, sub = c
        if self.dropped[j]:
            j += 1
            if j == len(self.sum.schema):
                n, j = n + 1, 0
            return self._first_kept(n, j)
        return n, self.newj[j], _project_coord(instantiate(self.sum.schema[j], n), sub)


def condense_step(t: OrderTerm) -> tuple[OrderTerm, Projection]:
    """The finite condensation of ``t`` and the map sending each point to
    the address of its class."""
    items = t.items
    m = len(items)
    dropped = [
        i + 1 < m and _item_tail(items[i]) and _item_head(items[i + 1])
        for i in range(m)
    ]
    raw: list = []
    place: dict = {}
    sums: dict = {}
    for i, item in enumerate(items):
        if dropped[i]:
            continue
        place[i] = len(raw)
        if isinstance(item, OmegaSum):
            sums[i] = _CondensedSum(item)
            raw.append(sums[i].item)
        else:
            raw.append(_condense_atom(item))

    def first_point(i: int) -> Point:
        if i in sums:
            return place[i], sums[i].first()
        return place[i], _first_coord(raw[place[i]])

    target: dict = {}
    kept_after = None
    for i in reversed(range(m)):
        if dropped[i]:
            target[i] = kept_after
        else:
            kept_after = i

    def project_raw(p: Point) -> Point:
        i, c = p
        if dropped[i]:
            return first_point(target[i])
        if i in sums:
            return place[i], sums[i].project(c)
        return place[i], _project_coord(items[i], c)

    new_t, remap = normalize(raw)
    return new_t, lambda p: remap(project_raw(p))


def has_parametric_power(t: OrderTerm) -> bool:
    return any(
        isinstance(item, OmegaSum) and any(isinstance(a, OmegaPowP) for a in item.schema)
        for item in t.items
    )


def limit_quotient(t: OrderTerm) -> tuple[OrderTerm, Projection]:
    """Quotient of ``t`` by the union of all finite-stage condensations.

    Every scattered block whose condensations reach a single point at some
    finite stage becomes that point: all atoms except eta, and whole
    omega-indexed sums containing neither eta nor a parametric power.  The
    blocks left standing are eta atoms and sums that never collapse; one
    merge pass then joins neighbouring points.
    """
    raw: list = []
    fixes: list = []
    for item in t.items:
        if isinstance(item, OmegaSum):
            schema = item.schema
            if any(isinstance(a, (Eta, OmegaPowP)) for a in schema):
                raw.append(OmegaSum(item.n0, tuple(a if isinstance(a, Eta) else Fin(1) for a in schema)))
                fixes.append(
                    lambda c, schema=schema: (c[0], c[1], c[2] if isinstance(schema[c[1]], Eta) else 0)
                )
            else:
                raw.append(Fin(1))
                fixes.append(lambda c: 0)
        elif isinstance(item, Eta):
            raw.append(item)
            fixes.append(lambda c: c)
        else:
            raw.append(Fin(1))
            fixes.append(lambda c: 0)
    merged, project = condense_step(OrderTerm(tuple(raw)))
    return merged, lambda p: project((p[0], fixes[p[0]](p[1])))


def point_count_at_most_one(t: OrderTerm) -> bool:
    return not t.items or t.items == (Fin(1),)


def is_dense(t: OrderTerm) -> bool:
    """At least two points and no two of them adjacent."""
    if point_count_at_most_one(t):
        return False
    items = t.items
    for item in items:
        atoms = item.schema if isinstance(item, OmegaSum) else (item,)
        if any(_has_adjacent_pair(a) for a in atoms):
            return False
        if isinstance(item, OmegaSum):
            schema, r = item.schema, len(item.schema)
            for j in range(r):
                left = instantiate(schema[j], item.n0)
                right = instantiate(schema[(j + 1) % r], item.n0)
                if _has_max(left) and _has_min(right):
                    return False
    return not any(_item_tail(a) and _item_head(b) for a, b in zip(items, items[1:]))


_MAX_STEPS = 10_000


def fc_rank(t: OrderTerm) -> CondensationTrace:
    """Iterate finite condensation until the quotient is dense or has at
    most one point.

    A parametric omega-power never disappears at a finite stage and keeps
    a pair of adjacent points at every stage, so when one is present the
    rank is at least omega; the quotient at omega is taken directly and
    finite iteration resumes from there.
    """
    steps = [t]
    current = t
    count = 0
    limit_index = None
    while True:
        if not current.items:
            outcome = Outcome.EMPTY
            break
        if point_count_at_most_one(current):
            outcome = Outcome.SINGLETON
            break
        if is_dense(current):
            outcome = Outcome.DENSE
            break
        if limit_index is None and has_parametric_power(current):
            current, _ = limit_quotient(current)
            limit_index = len(steps)
            count = 0
        else:
            current, _ = condense_step(current)
            count += 1
        steps.append(current)
        if len(steps) > _MAX_STEPS:
            raise RuntimeError("condensation did not stabilise")
    rank = Ordinal.of(count)
    if limit_index is not None:
        rank = ord_add(OMEGA, rank)
    return CondensationTrace(tuple(steps), limit_index is not None, rank, outcome, limit_index)


def step_label(trace: CondensationTrace, i: int) -> str:
    """Ordinal stage of ``trace.steps[i]``."""
    if trace.limit_index is None or i < trace.limit_index:
        return str(i)
    return str(ord_add(OMEGA, Ordinal.of(i - trace.limit_index)))


def classify(t: OrderTerm) -> OrderClass:
    if not t.items:
        return OrderClass.EMPTY
    if point_count_at_most_one(t):
        return OrderClass.SINGLETON
    has_eta = any(
        isinstance(a, Eta)
        for item in t.items
        for a in (item.schema if isinstance(item, OmegaSum) else (item,))
    )
    if not has_eta:
        return OrderClass.SCATTERED
    if is_dense(t):
        return OrderClass.DENSE
    return OrderClass.QUASI_DENSE_NOT_DENSE


# -- text syntax -----------------------------------------------------------


def _tokenize(text: str) -> list:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens: list, pos: int):
    if pos >= len(tokens):
        raise TermSyntaxError("unexpected end of term")
    tok = tokens[pos]
    if tok == ")":
        raise TermSyntaxError("unexpected ')'")
    if tok != "(":
        return tok, pos + 1
    out = []
    pos += 1
    while True:
        if pos >= len(tokens):
            raise TermSyntaxError("missing ')'")
        if tokens[pos] == ")":
            return out, pos + 1
        node, pos = _read(tokens, pos)
        out.append(node)


_BARE = {"omega": Omega(), "omegastar": OmegaStar(), "zeta": Zeta(), "eta": Eta()}


def _int_arg(node, what: str) -> int:
    if len(node) != 2 or not isinstance(node[1], str):
        raise TermSyntaxError(f"({what} ...) takes one integer")
    try:
        return int(node[1])
    except ValueError:
        raise TermSyntaxError(f"({what} ...) needs an integer, got {node[1]!r}") from None


def _build(node, in_schema: bool) -> list:
    if isinstance(node, str):
        if node in _BARE:
            return [_BARE[node]]
        raise TermSyntaxError(f"unknown atom {node!r}")
    if not node or not isinstance(node[0], str):
        raise TermSyntaxError("empty or headless list")
    head = node[0]
    if head == "+":
        return [x for sub in node[1:] for x in _build(sub, in_schema)]
    if head == "fin":
        k = _int_arg(node, head)
        if k < 0:
            raise TermSyntaxError("finite order size must be >= 0")
        return [Fin(k)]
    if head == "w^":
        k = _int_arg(node, head)
        if k < 0:
            raise TermSyntaxError("omega exponent must be >= 0")
        return [OmegaPow(k)]
    if head in ("finp", "w^p"):
        if not in_schema:
            raise TermSyntaxError(f"({head} ...) only allowed inside omsum")
        c = _int_arg(node, head)
        return [FinP(c) if head == "finp" else OmegaPowP(c)]
    if head == "omsum":
        if in_schema:
            raise TermSyntaxError("nested omsum is not supported")
        if len(node) != 3:
            raise TermSyntaxError("(omsum n0 schema)")
        n0 = _int_arg(node[:2], head)
        if n0 < 0:
            raise TermSyntaxError("omsum start index must be >= 0")
        return [OmegaSum(n0, tuple(_build(node[2], True)))]
    raise TermSyntaxError(f"unknown form ({head} ...)")


def parse_term(text: str) -> OrderTerm:
    tokens = _tokenize(text)
    if not tokens:
        raise TermSyntaxError("empty term")
    node, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise TermSyntaxError("trailing input after term")
    return normalize(_build(node, False))[0]


def _render_atom(a) -> str:
    match a:
        case Fin(k):
            return f"(fin {k})"
        case OmegaPow(k):
            return f"(w^ {k})"
        case FinP(c):
            return f"(finp {c})"
        case OmegaPowP(c):
            return f"(w^p {c})"
        case OmegaSum(n0, schema):
            body = _render_atom(schema[0]) if len(schema) == 1 else _render_sum(schema)
            return f"(omsum {n0} {body})"
    return {Omega: "omega", OmegaStar: "omegastar", Zeta: "zeta", Eta: "eta"}[type(a)]


def _render_sum(parts) -> str:
    return "(+ " + " ".join(_render_atom(p) for p in parts) + ")"


def render_term(t: OrderTerm) -> str:
    if not t.items:
        return "(fin 0)"
    if len(t.items) == 1:
        return _render_atom(t.items[0])
    return _render_sum(t.items)
