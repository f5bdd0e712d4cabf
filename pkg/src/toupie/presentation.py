"""Quivers, paths and rational linear combinations.

A *toupie* quiver has one source vertex, one sink vertex, and every other
vertex has exactly one incoming and one outgoing arrow, so the arrows split
into parallel *branches* (maximal source-to-sink paths).  Algebras are
presented as a quotient of the path algebra over Q by relations that are
either a subpath of a branch (monomial) or a linear combination of whole
branches (non-monomial).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Arrow",
    "Path",
    "FormalSum",
    "Quiver",
    "Presentation",
    "compose",
    "lincomb_mul",
    "validate_toupie",
    "branches_of",
    "classify_branches",
]


@dataclass(frozen=True, slots=True)
class Arrow:
    name: str
    src: str
    dst: str


@dataclass(frozen=True, slots=True)
class Path:
    """A path: a source vertex plus a (possibly empty) run of composable arrows."""

    source: str
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        at = self.source
        for a in self.arrows:
            if a.src != at:
                raise ValueError(f"arrows do not compose at {at!r}: {a}")
            at = a.dst

    @property
    def target(self) -> str:
        return self.arrows[-1].dst if self.arrows else self.source

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __mul__(self, other: "Path") -> "Path":
        return compose(self, other)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.source, self.names)

    def __repr__(self) -> str:
        if not self.arrows:
            return f"e({self.source})"
        return "*".join(a.name for a in self.arrows)

    def slice(self, i: int, j: int) -> "Path":
        """Subpath spanning arrow positions [i, j)."""
        if not 0 <= i <= j <= len(self.arrows):
            raise IndexError((i, j))
        src = self.source if i == 0 else self.arrows[i - 1].dst
        return Path(src, self.arrows[i:j])

    def contains(self, sub: "Path") -> bool:
        """Does `sub` occur as a (consecutive) subpath?"""
        if sub.is_trivial:
            return sub.source == self.source or any(a.dst == sub.source for a in self.arrows)
        n, m = len(self.arrows), len(sub.arrows)
        return any(self.arrows[i : i + m] == sub.arrows for i in range(n - m + 1))


def compose(p: Path, q: Path) -> Path:
    if p.target != q.source:
        raise ValueError(f"paths not composable: {p!r} ends at {p.target!r}, {q!r} starts at {q.source!r}")
    return Path(p.source, p.arrows + q.arrows)


def _term_key(x):
    # Universal deterministic sort key for FormalSum keys (paths, tuples of
    # paths, pairs with None slots, strings).
    if isinstance(x, Path):
        return (1, x.sort_key())
    if isinstance(x, tuple):
        return (2, tuple(_term_key(y) for y in x))
    if x is None:
        return (0,)
    return (3, x)


class FormalSum:
    """A finite Q-linear combination of hashable terms.  Zero terms are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            for k, c in terms.items() if isinstance(terms, dict) else terms:
                self.add_term(k, c)

    @classmethod
    def lift(cls, key, coeff=1) -> "FormalSum":
        s = cls()
        s.add_term(key, coeff)
        return s

    def add_term(self, key, coeff) -> None:
        c = self.terms.get(key, 0) + Fraction(coeff)
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def __iadd__(self, other: "FormalSum") -> "FormalSum":
        for k, c in other.terms.items():
            self.add_term(k, c)
        return self

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum(dict(self.terms))
        out += other
        return out

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + other.scale(-1)

    def __neg__(self) -> "FormalSum":
        return self.scale(-1)

    def scale(self, c) -> "FormalSum":
        c = Fraction(c)
        out = FormalSum()
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def map_terms(self, fn) -> "FormalSum":
        """Linear extension of fn(key) -> FormalSum."""
        out = FormalSum()
        for k, c in self.terms.items():
            out += fn(k).scale(c)
        return out

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kc: _term_key(kc[0]))

    def coeff(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for k, c in self.items():
            sign = "-" if c < 0 else ("+" if bits else "")
            mag = abs(c)
            coeff = "" if mag == 1 else f"{mag}*"
            bits.append(f"{sign}{coeff}{k!r}" if sign else f"{coeff}{k!r}")
        return " ".join(bits)


# A LinComb is a FormalSum whose keys are Paths; it lives in the path algebra.
LinComb = FormalSum


def lincomb_mul(a: FormalSum, b: FormalSum) -> FormalSum:
    """Product in the path algebra: bilinear, non-composable pairs multiply to 0."""
    out = FormalSum()
    for p, cp in a.terms.items():
        for q, cq in b.terms.items():
            if p.target == q.source:
                out.add_term(compose(p, q), cp * cq)
    return out


class Quiver:
    """Finite quiver with named vertices and arrows; lookups precomputed."""

    def __init__(self, vertices, arrows):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.arrows: tuple[Arrow, ...] = tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in arrows
        )
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.src not in vs or a.dst not in vs:
                raise ValueError(f"arrow {a} touches unknown vertex")
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self.out = {v: tuple(a for a in self.arrows if a.src == v) for v in self.vertices}
        self.inn = {v: tuple(a for a in self.arrows if a.dst == v) for v in self.vertices}

    def trivial(self, v: str) -> Path:
        if v not in self.out:
            raise KeyError(v)
        return Path(v, ())

    def path(self, *arrow_names: str) -> Path:
        arrows = tuple(self.arrow_by_name[n] for n in arrow_names)
        return Path(arrows[0].src, arrows)

    def all_paths(self):
        """Every path of the quiver, trivial ones included (finite: quiver acyclic)."""
        out = [Path(v, ()) for v in self.vertices]
        frontier = [Path(v, ()) for v in self.vertices]
        while frontier:
            nxt = []
            for p in frontier:
                for a in self.out[p.target]:
                    q = Path(p.source, p.arrows + (a,))
                    out.append(q)
                    nxt.append(q)
            frontier = nxt
            if len(out) > 200000:
                raise ValueError("quiver has too many paths (is it acyclic?)")
        return out

    def is_acyclic(self) -> bool:
        seen, stack = set(), set()

        def visit(v):
            if v in stack:
                return False
            if v in seen:
                return True
            seen.add(v)
            stack.add(v)
            ok = all(visit(a.dst) for a in self.out[v])
            stack.discard(v)
            return ok

        return all(visit(v) for v in self.vertices)


def validate_toupie(q: Quiver):
    """Return (source, sink) if q is a toupie quiver, else raise ValueError.

    Required shape: exactly one vertex with no incoming arrows, exactly one
    with no outgoing arrows, all remaining vertices with in-degree and
    out-degree exactly 1, no directed cycles, at least one arrow.
    """
    if not q.arrows:
        raise ValueError("toupie quiver needs at least one arrow")
    sources = [v for v in q.vertices if not q.inn[v]]
    sinks = [v for v in q.vertices if not q.out[v]]
    if len(sources) != 1:
        raise ValueError(f"expected a unique source vertex, found {sources}")
    if len(sinks) != 1:
        raise ValueError(f"expected a unique sink vertex, found {sinks}")
    src, snk = sources[0], sinks[0]
    if src == snk:
        raise ValueError("source and sink coincide")
    for v in q.vertices:
        if v in (src, snk):
            continue
        if len(q.inn[v]) != 1 or len(q.out[v]) != 1:
            raise ValueError(
                f"inner vertex {v!r} has degree ({len(q.inn[v])}, {len(q.out[v])}), expected (1, 1)"
            )
    if not q.is_acyclic():
        raise ValueError("quiver has a directed cycle")
    return src, snk


def branches_of(q: Quiver) -> tuple[Path, ...]:
    """The branches (maximal source-to-sink paths), one per arrow out of the source."""
    src, snk = validate_toupie(q)
    out = []
    for first in q.out[src]:
        arrows = [first]
        while arrows[-1].dst != snk:
            (nxt,) = q.out[arrows[-1].dst]
            arrows.append(nxt)
        out.append(Path(src, tuple(arrows)))
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    """A toupie algebra kQ/I: quiver, relations, and a tie-breaking branch order.

    `order` lists first-arrow names of branches; it breaks ties between
    equal-length branches when relations are put in row-reduced form.  Branches
    not listed keep quiver order after the listed ones.
    """

    quiver: Quiver
    relations: tuple[FormalSum, ...]
    order: tuple[str, ...] = ()

    def branch_order_key(self):
        # longer branches first, then user order, then quiver order
        branches = branches_of(self.quiver)
        listed = {n: i for i, n in enumerate(self.order)}
        pos = {b: i for i, b in enumerate(branches)}
        return lambda b: (-len(b), listed.get(b.arrows[0].name, len(listed) + pos[b]))


def classify_branches(pres: Presentation) -> dict:
    """Split branches into the four classes.

    Returns {"arrow": [...], "plain": [...], "monomial": [...], "nonmonomial": [...]}
    where `arrow` holds length-1 branches, `plain` the longer relation-free
    ones, `monomial` the branches containing a monomial relation, and
    `nonmonomial` the branches occurring in non-monomial relations (ordered by
    descending length, ties by the presentation's branch order).
    """
    branches = branches_of(pres.quiver)
    mono_rels, nonmono_rels = [], []
    for rel in pres.relations:
        if rel.is_zero:
            raise ValueError("zero relation")
        terms = list(rel.terms)
        if len(terms) == 1:
            mono_rels.append(terms[0])
        else:
            nonmono_rels.append(rel)

    in_mono: set[Path] = set()
    for p in mono_rels:
        if len(p) < 2:
            raise ValueError(f"monomial relation {p!r} shorter than 2")
        carriers = [b for b in branches if b.contains(p)]
        if not carriers:
            raise ValueError(f"relation not of branch form: {p!r} is not a subpath of a branch")
        in_mono.update(carriers)

    in_nonmono: set[Path] = set()
    branch_set = set(branches)
    for rel in nonmono_rels:
        terms = list(rel.terms)
        if len(terms) < 2:
            raise ValueError("non-monomial relation with a single term")
        for p in terms:
            if p not in branch_set:
                raise ValueError(f"relation not of branch form: {p!r} is not a whole branch")
            if len(p) < 2:
                raise ValueError(f"branch {p!r} of length < 2 in a non-monomial relation")
        in_nonmono.update(terms)

    both = in_mono & in_nonmono
    if both:
        raise ValueError(
            f"a branch in both a monomial and a non-monomial relation: {sorted(b.names for b in both)}"
        )

    key = pres.branch_order_key()
    return {
        "arrow": [b for b in branches if len(b) == 1],
        "plain": [b for b in branches if len(b) > 1 and b not in in_mono and b not in in_nonmono],
        "monomial": [b for b in branches if b in in_mono],
        "nonmonomial": sorted(in_nonmono, key=key),
    }
