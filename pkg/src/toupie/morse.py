"""The reduced bar complex, its chain matching, and closed-form transfer maps.

Cells in degree n are words [a1|...|an] of nontrivial nontips with composable
underlying paths (degree 0: a vertex).  The matching pairs each non-chain word
across one degree: words whose longest chain prefix cannot be extended inside
the next letter merge down; the rest split up.  Critical cells are exactly the
chain words, and the transfer maps of the matching admit closed forms on
*attached* words (all adjacent letter products in the tip ideal), implemented
here next to the generic zigzag oracle for cross-checking.
"""
from __future__ import annotations

from .chains import ChainGraph, underlying_path
from .presentation import FormalSum, Path, compose
from .rewriting import GroebnerData
from .zigzag import BasedComplex, verify_sdr

__all__ = ["bar_words", "bar_differential", "classify_word", "BarSDR"]


def bar_words(gd: GroebnerData) -> dict[int, list]:
    """All stacked-word cells by degree; degree 0 holds the vertices as trivial paths."""
    letters = [p for ps in gd.nontips_by_degree.values() for p in ps if not p.is_trivial]
    by_deg: dict[int, list] = {0: [Path(v, ()) for v in gd.quiver.vertices]}
    layer = [(p,) for p in letters]
    d = 1
    while layer:
        by_deg[d] = sorted(
            layer, key=lambda w: (underlying_path(w).sort_key(), tuple(len(x) for x in w))
        )
        layer = [w + (p,) for w in layer for p in letters if w[-1].target == p.source]
        d += 1
    return by_deg


def bar_differential(gd: GroebnerData, word) -> FormalSum:
    """Merge adjacent letters, alternating signs, first merge positive.

    Merged letters are taken in normal form; a merge that dies in the quotient
    drops out.  Degree 0 and 1 cells have zero differential.
    """
    out = FormalSum()
    if isinstance(word, Path) or len(word) < 2:
        return out
    for j in range(len(word) - 1):
        merged = gd.normal_form(compose(word[j], word[j + 1]))
        for q, c in merged.terms.items():
            out.add_term(word[:j] + (q,) + word[j + 2 :], (-1) ** j * c)
    return out


def classify_word(cg: ChainGraph, word):
    """('critical', None) | ('lower', split partner) | ('upper', merge partner)."""
    gd = cg.gd
    k = cg.prefix_chain_length(word)
    if k == len(word):
        return "critical", None
    w = word[k]
    if k == 0:
        # first letter is not an arrow: split off its first arrow
        pr_len = 1
    else:
        prev = word[k - 1]
        pr_len = next(
            (j for j in range(1, len(w) + 1) if gd.contains_tip(compose(prev, w.slice(0, j)))),
            None,
        )
        if pr_len is None:
            # nothing to split: this word absorbs its successor instead
            merged = compose(word[k - 1], w)
            return "upper", word[: k - 1] + (merged,) + word[k + 1 :]
        if pr_len == len(w):
            raise AssertionError(f"full-letter split would extend the chain prefix: {word}")
    split = word[:k] + (w.slice(0, pr_len), w.slice(pr_len, len(w))) + word[k + 1 :]
    return "lower", split


def build_matching(cg: ChainGraph, cells_by_degree) -> dict:
    matching = {}
    for d, cells in cells_by_degree.items():
        if d == 0:
            continue
        for w in cells:
            st, partner = classify_word(cg, w)
            if st == "lower":
                matching[w] = partner
    return matching


class BarSDR:
    """Closed transfer maps on the reduced bar complex, with the zigzag oracle on tap."""

    def __init__(self, gd: GroebnerData):
        self.gd = gd
        self.cg = ChainGraph(gd)
        self._cx: BasedComplex | None = None

    @property
    def complex(self) -> BasedComplex:
        if self._cx is None:
            cells = bar_words(self.gd)
            self._cx = BasedComplex(
                cells,
                lambda w: bar_differential(self.gd, w),
                build_matching(self.cg, cells),
            )
        return self._cx

    # -- closed forms ----------------------------------------------------------

    def is_attached(self, word) -> bool:
        """Every adjacent letter product falls in the tip ideal."""
        if isinstance(word, Path):
            return False
        return all(
            self.gd.contains_tip(compose(a, b)) for a, b in zip(word, word[1:])
        )

    def _split_merge(self, word):
        """Iterated split-and-merge on an attached non-chain: (homotopy terms, projection)."""
        h = FormalSum()
        cur = word
        while True:
            k = self.cg.prefix_chain_length(cur)
            if k == len(cur):
                return h, FormalSum.lift(cur)
            w = cur[k]
            if k == 0:
                pr_len = 1
            else:
                prev = cur[k - 1]
                pr_len = next(
                    (
                        j
                        for j in range(1, len(w))
                        if self.gd.contains_tip(compose(prev, w.slice(0, j)))
                    ),
                    None,
                )
                if pr_len is None:
                    raise ValueError(f"input not attached: {cur!r}")
            head, tail = w.slice(0, pr_len), w.slice(pr_len, len(w))
            split = cur[:k] + (head, tail) + cur[k + 1 :]
            h.add_term(split, (-1) ** k)
            if self.cg.is_chain(split):
                # can only happen on formal words whose own letters hide a tip
                return h, FormalSum.lift(split)
            if k + 1 == len(cur):
                return h, FormalSum()
            merged = self.gd.normal_form(compose(tail, cur[k + 1]))
            if merged.is_zero:
                return h, FormalSum()
            ((q, c),) = merged.terms.items()
            if c != 1 or len(merged.terms) != 1:
                raise AssertionError(f"merged letter not a single path: {merged!r}")
            cur = cur[:k] + (head, q) + cur[k + 2 :]

    def sdr_h(self, word) -> FormalSum:
        """Closed homotopy; defined on chains (zero) and attached words."""
        if self.cg.is_chain(word):
            return FormalSum()
        if not self.is_attached(word):
            raise ValueError(f"input not attached: {word!r}")
        h, _ = self._split_merge(word)
        return h

    def sdr_p(self, word) -> FormalSum:
        """Closed projection; falls back to the zigzag oracle off the attached words."""
        if self.cg.is_chain(word):
            return FormalSum.lift(word)
        if self.is_attached(word):
            _, p = self._split_merge(word)
            return p
        return self.complex.p(word)

    def sdr_i(self, word) -> FormalSum:
        """Closed inclusion of a chain: nontrivial only on 1-chains over long relations."""
        if not self.cg.is_chain(word):
            raise ValueError(f"not a chain: {word!r}")
        if len(word) != 2:
            return FormalSum.lift(word)
        tip = underlying_path(word)
        out = FormalSum()
        for q, c in self.gd.tip_inverse(tip).terms.items():
            out.add_term((q.slice(0, 1), q.slice(1, len(q))), c)
        return out

    def total_h(self, word) -> FormalSum:
        """Homotopy on any cell: closed form where it applies, oracle elsewhere."""
        if self.cg.is_chain(word):
            return FormalSum()
        if self.is_attached(word):
            h, _ = self._split_merge(word)
            return h
        return self.complex.h(word)

    # -- verification ------------------------------------------------------------

    def verify(self, max_degree: int | None = None) -> list[str]:
        """Oracle identities plus closed-vs-oracle agreement; returns violations."""
        cx = self.complex
        bad = verify_sdr(cx)
        for d in sorted(cx.cells_by_degree):
            if d == 0 or (max_degree is not None and d > max_degree):
                continue
            for w in cx.cells_by_degree[d]:
                if self.sdr_p(w) != cx.p(w):
                    bad.append(f"closed p != oracle p at {w!r}")
                if self.is_attached(w) or self.cg.is_chain(w):
                    if self.sdr_h(w) != cx.h(w):
                        bad.append(f"closed h != oracle h at {w!r}")
                if self.cg.is_chain(w) and self.sdr_i(w) != cx.i(w):
                    bad.append(f"closed i != oracle i at {w!r}")
        return bad
