"""Rewriting machinery: row reduction, tips, normal forms.

Relations are put in reduced row echelon form over the branches (longest
branch first, ties broken by the presentation's order).  The leading branch of
each reduced relation is its *tip*; together with the monomial relations the
tips generate the ideal of leading terms, and the tip-free paths ("nontips")
form a linear basis of the quotient algebra.
"""
from __future__ import annotations

from fractions import Fraction

from .presentation import FormalSum, Path, Presentation, branches_of

__all__ = ["rref", "special_basis", "GroebnerData", "build_groebner"]


def rref(rows):
    """Reduced row echelon form over Q.  Returns (rows_without_zero_rows, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def special_basis(rows):
    """Sweep a reduced matrix into its special form.

    Scan columns right to left; in each column pick the bottom-most row whose
    nonzero entry there is its last (everything strictly to the right is zero),
    and clear the column above that row.  The first column with no such row
    stops the whole sweep.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return m
    ncols = len(m[0])
    for c in range(ncols - 1, -1, -1):
        candidates = [
            i for i in range(len(m)) if m[i][c] and all(x == 0 for x in m[i][c + 1 :])
        ]
        if not candidates:
            break
        i = candidates[-1]
        for j in range(i):
            if m[j][c]:
                f = m[j][c] / m[i][c]
                m[j] = [a - f * b for a, b in zip(m[j], m[i])]
    return m


def _split_relations(pres: Presentation):
    """Relations as (monomial paths, non-monomial combinations), with shape checks."""
    branches = branches_of(pres.quiver)
    branch_set = set(branches)
    mono, nonmono = [], []
    for rel in pres.relations:
        if rel.is_zero:
            raise ValueError("zero relation")
        terms = list(rel.terms)
        if len(terms) == 1:
            p = terms[0]
            if len(p) < 2:
                raise ValueError(f"monomial relation {p!r} shorter than 2")
            if not any(b.contains(p) for b in branches):
                raise ValueError(f"relation not of branch form: {p!r} is not a subpath of a branch")
            mono.append(p)
        else:
            for p in terms:
                if p not in branch_set or len(p) < 2:
                    raise ValueError(
                        f"relation not of branch form: {p!r} must be a whole branch of length >= 2"
                    )
            nonmono.append(rel)
    return mono, nonmono


class GroebnerData:
    """Tips, tails and the nontip basis of a presentation."""

    def __init__(self, pres, mono_tips, nonmono_rows, branch_order):
        self.pres = pres
        self.quiver = pres.quiver
        self.mono_tips: tuple[Path, ...] = tuple(sorted(mono_tips, key=Path.sort_key))
        # each row: (tip branch, full relation with tip coefficient 1)
        self.nonmono_rows: tuple[tuple[Path, FormalSum], ...] = tuple(nonmono_rows)
        self.branch_order: tuple[Path, ...] = tuple(branch_order)
        self.nonmono_by_tip = {t: rel for t, rel in self.nonmono_rows}
        self.tips = frozenset(self.mono_tips) | frozenset(self.nonmono_by_tip)
        self._nf_cache: dict = {}

    # -- tip ideal ---------------------------------------------------------

    def contains_tip(self, p: Path) -> bool:
        """Does p lie in the ideal of leading terms (i.e. contain a tip)?"""
        if p in self.nonmono_by_tip:
            return True
        return any(p.contains(t) for t in self.mono_tips)

    def is_nontip(self, p: Path) -> bool:
        return not self.contains_tip(p)

    def tip_inverse(self, t: Path) -> FormalSum:
        """The reduced relation with tip t (a monomial tip is its own relation)."""
        rel = self.nonmono_by_tip.get(t)
        if rel is not None:
            return rel
        if t in set(self.mono_tips):
            return FormalSum.lift(t)
        raise KeyError(f"{t!r} is not a tip")

    def tail_of(self, t: Path) -> FormalSum:
        """What the tip rewrites to: tip - relation."""
        return FormalSum.lift(t) - self.tip_inverse(t)

    # -- normal forms --------------------------------------------------------

    def normal_form(self, x) -> FormalSum:
        if isinstance(x, Path):
            x = FormalSum.lift(x)
        return x.map_terms(self._nf_path)

    def _nf_path(self, p: Path) -> FormalSum:
        got = self._nf_cache.get(p)
        if got is None:
            if p in self.nonmono_by_tip:
                got = self.tail_of(p).map_terms(self._nf_path)
            elif any(p.contains(t) for t in self.mono_tips):
                got = FormalSum()
            else:
                got = FormalSum.lift(p)
            self._nf_cache[p] = got
        return got

    # -- nontip basis --------------------------------------------------------

    @property
    def nontips_by_degree(self) -> dict[int, tuple[Path, ...]]:
        got = getattr(self, "_nontips", None)
        if got is None:
            by_deg: dict[int, list[Path]] = {0: [Path(v, ()) for v in self.quiver.vertices]}
            frontier = by_deg[0]
            d = 0
            while frontier:
                d += 1
                nxt = []
                for p in frontier:
                    for a in self.quiver.out[p.target]:
                        q = Path(p.source, p.arrows + (a,))
                        if self.is_nontip(q):
                            nxt.append(q)
                if nxt:
                    by_deg[d] = nxt
                frontier = nxt
            got = self._nontips = {d: tuple(sorted(ps, key=Path.sort_key)) for d, ps in by_deg.items()}
        return got

    @property
    def nontips(self) -> tuple[Path, ...]:
        return tuple(p for d in sorted(self.nontips_by_degree) for p in self.nontips_by_degree[d])

    @property
    def dim(self) -> int:
        return len(self.nontips)


def build_groebner(pres: Presentation) -> GroebnerData:
    """Reduce the relations to tip/tail form.

    Non-monomial relations are first reduced modulo the monomial ones: branch
    terms containing a monomial tip are dropped, and a relation left with a
    single term turns that branch into a new monomial relation (repeat until
    stable).  The survivors are row-reduced over the ordered branches; every
    relation must contribute a pivot, otherwise the input was dependent.
    """
    mono, nonmono = _split_relations(pres)

    # reduced monomial set: drop any monomial containing a shorter one
    def reduce_mono(paths):
        out = []
        for p in sorted(set(paths), key=Path.sort_key):
            if not any(p.contains(q) and p != q for q in set(paths) if q != p):
                out.append(p)
        return out

    mono = reduce_mono(mono)
    pending = list(nonmono)
    while True:
        changed = False
        nxt = []
        for rel in pending:
            kept = FormalSum(
                {p: c for p, c in rel.terms.items() if not any(p.contains(t) for t in mono)}
            )
            if len(kept.terms) != len(rel.terms):
                changed = True
            if kept.is_zero:
                continue
            if len(kept.terms) == 1:
                (b,) = kept.terms
                mono = reduce_mono(mono + [b])
                changed = True
                continue
            nxt.append(kept)
        pending = nxt
        if not changed:
            break

    key = pres.branch_order_key()
    involved = sorted({p for rel in pending for p in rel.terms}, key=key)
    col = {b: j for j, b in enumerate(involved)}
    rows = []
    for rel in pending:
        row = [Fraction(0)] * len(involved)
        for p, c in rel.terms.items():
            row[col[p]] = c
        rows.append(row)
    reduced, pivots = rref(rows)
    if len(reduced) != len(rows):
        raise ValueError("duplicate relations: non-monomial relations are linearly dependent")

    nonmono_rows = []
    for row, pc in zip(reduced, pivots):
        rel = FormalSum({involved[j]: c for j, c in enumerate(row) if c})
        nonmono_rows.append((involved[pc], rel))
    return GroebnerData(pres, mono, nonmono_rows, involved)
