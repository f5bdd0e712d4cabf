"""Weighted-graph transfer for based complexes with an acyclic partial matching.

Cells and differential come in with a chosen basis; a matching pairs some
cells across adjacent degrees.  Reversing each matched arrow with weight
-1/(matched coefficient) ("dotted") and keeping the other differential
components ("thick") turns alternating dotted/thick walks into the three
standard transfer maps: projection p onto critical cells, inclusion i of
critical cells, and the homotopy h between them, plus the induced differential
on the critical complex.
"""
from __future__ import annotations

from fractions import Fraction

from .presentation import FormalSum

__all__ = ["BasedComplex", "verify_sdr"]


class BasedComplex:
    """A finite nonnegatively graded complex with basis, plus a matching.

    `cells_by_degree`: {degree: iterable of hashable cells}
    `diff`: cell -> FormalSum over cells one degree lower
    `matching`: {lower_cell: upper_cell} pairs, upper one degree above lower;
        the coefficient of lower in diff(upper) must be nonzero.
    """

    def __init__(self, cells_by_degree, diff, matching):
        self.cells_by_degree = {d: tuple(cs) for d, cs in cells_by_degree.items() if cs}
        self.degree_of = {}
        for d, cs in self.cells_by_degree.items():
            for c in cs:
                if c in self.degree_of:
                    raise ValueError(f"cell {c!r} listed twice")
                self.degree_of[c] = d
        self._diff_fn = diff
        self._diff_cache: dict = {}
        self.up = dict(matching)
        self.down = {}
        for lo, hi in self.up.items():
            if self.degree_of[hi] != self.degree_of[lo] + 1:
                raise ValueError(f"matched pair {lo!r}/{hi!r} not in adjacent degrees")
            if hi in self.down:
                raise ValueError(f"cell {hi!r} matched twice")
            self.down[hi] = lo
        if set(self.up) & set(self.down):
            raise ValueError("a cell is matched both up and down")
        for lo, hi in self.up.items():
            if not self.diff(hi).coeff(lo):
                raise ValueError(f"matched coefficient of {lo!r} in d({hi!r}) is zero")
        self._p_cache: dict = {}
        self._I_cache: dict = {}
        self._busy: set = set()

    # -- structure -----------------------------------------------------------

    def diff(self, cell) -> FormalSum:
        got = self._diff_cache.get(cell)
        if got is None:
            got = self._diff_cache[cell] = self._diff_fn(cell)
        return got

    def status(self, cell) -> str:
        if cell in self.up:
            return "lower"
        if cell in self.down:
            return "upper"
        return "critical"

    def critical(self, degree: int):
        return tuple(c for c in self.cells_by_degree.get(degree, ()) if self.status(c) == "critical")

    def dotted_weight(self, lower) -> Fraction:
        return -1 / self.diff(self.up[lower]).coeff(lower)

    def thick(self, cell) -> FormalSum:
        d = self.diff(cell)
        if cell in self.down:
            d = FormalSum(dict(d.terms))
            d.add_term(self.down[cell], -d.coeff(self.down[cell]))
        return d

    # -- transfer maps ---------------------------------------------------------

    def apply(self, fn, fs: FormalSum) -> FormalSum:
        return fs.map_terms(fn)

    def p(self, cell) -> FormalSum:
        """Projection onto critical cells (same degree)."""
        got = self._p_cache.get(cell)
        if got is not None:
            return got
        st = self.status(cell)
        if st == "critical":
            got = FormalSum.lift(cell)
        elif st == "upper":
            got = FormalSum()
        else:
            key = ("p", cell)
            if key in self._busy:
                raise ValueError("zigzag cycle detected")
            self._busy.add(key)
            got = self.apply(self.p, self.thick(self.up[cell])).scale(self.dotted_weight(cell))
            self._busy.discard(key)
        self._p_cache[cell] = got
        return got

    def _walk_up(self, cell) -> FormalSum:
        # cell plus every continuation thick-then-dotted; lands on cell + uppers
        got = self._I_cache.get(cell)
        if got is not None:
            return got
        key = ("i", cell)
        if key in self._busy:
            raise ValueError("zigzag cycle detected")
        self._busy.add(key)
        out = FormalSum.lift(cell)
        for y, w in self.thick(cell).terms.items():
            if y in self.up:
                out += self._walk_up(self.up[y]).scale(w * self.dotted_weight(y))
        self._busy.discard(key)
        self._I_cache[cell] = out
        return out

    def i(self, cell) -> FormalSum:
        """Inclusion of a critical cell into the complex."""
        if self.status(cell) != "critical":
            raise ValueError(f"i expects a critical cell, got {cell!r}")
        return self._walk_up(cell)

    def h(self, cell) -> FormalSum:
        """The homotopy (degree +1); zero off the up-matched cells."""
        if self.status(cell) != "lower":
            return FormalSum()
        return self._walk_up(self.up[cell]).scale(-self.dotted_weight(cell))

    def morse_diff(self, cell) -> FormalSum:
        """Differential induced on critical cells."""
        if self.status(cell) != "critical":
            raise ValueError(f"morse_diff expects a critical cell, got {cell!r}")
        return self.apply(self.p, self.diff(cell))


def verify_sdr(cx: BasedComplex) -> list[str]:
    """Check the transfer identities on every cell; return human-readable violations."""
    bad = []
    cells = [c for d in sorted(cx.cells_by_degree) for c in cx.cells_by_degree[d]]

    def ap(fn, fs):
        return fs.map_terms(fn)

    for c in cells:
        if ap(cx.diff, cx.diff(c)):
            bad.append(f"d∘d != 0 at {c!r}")
        lhs = FormalSum.lift(c) - ap(cx.i, cx.p(c))
        rhs = ap(cx.diff, cx.h(c)) + ap(cx.h, cx.diff(c))
        if lhs != rhs:
            bad.append(f"id - i∘p != d∘h + h∘d at {c!r}")
        if ap(cx.h, cx.h(c)):
            bad.append(f"h∘h != 0 at {c!r}")
        if ap(cx.p, cx.h(c)):
            bad.append(f"p∘h != 0 at {c!r}")
    for d in sorted(cx.cells_by_degree):
        for c in cx.critical(d):
            if ap(cx.p, cx.i(c)) != FormalSum.lift(c):
                bad.append(f"p∘i != id at {c!r}")
            if ap(cx.h, cx.i(c)):
                bad.append(f"h∘i != 0 at {c!r}")
    return bad
