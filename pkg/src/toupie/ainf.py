"""Higher coproducts on chains and the dual higher products.

The chains carry a minimal coalgebra model of the bar complex: a family of
higher coproducts transferred through the matching homotopy.  Two
implementations live side by side: `transfer_delta` evaluates the recursive
transfer formula with the zigzag maps (the oracle), while `closed_delta` cuts
the supporting paths into chains directly.  Dualizing the coproducts with
Koszul signs yields higher products on dual chains (`ExtAlgebra.m`), and
`stasheff_*_defects` verify the coherence identities on materialized tables.

Conventions (fixed once, used everywhere):
  * a word of k letters has degree k; the homotopy has degree +1;
  * deconcatenation carries no signs; the transfer recursion weights the
    (s, t)-split by (-1)^(s(t+1)) and moving the t-side operator past the
    left factor u costs (-1)^((t-1)|u|);
  * cut formula sign: N = r1 + sum_i (n-i) r_i over block degrees r_i;
  * pairing sign: N' = sum_{i>=2} (|c1|+...+|c_{i-1}|)|f_i|;
  * product prefactor: (-1)^(n(|f1|+...+|fn|)).
"""
from __future__ import annotations

from itertools import product

from .chains import ChainGraph, underlying_path
from .morse import BarSDR
from .presentation import FormalSum, Path, compose
from .rewriting import GroebnerData

__all__ = [
    "delta_prime",
    "TorCoalgebra",
    "ExtAlgebra",
    "coalgebra_table",
    "algebra_table",
    "stasheff_coalgebra_defects",
    "stasheff_algebra_defects",
]


def delta_prime(word) -> FormalSum:
    """Deconcatenation: the sum of all (prefix, suffix) splits of a stacked word."""
    out = FormalSum()
    for i in range(1, len(word)):
        out.add_term((word[:i], word[i:]), 1)
    return out


class TorCoalgebra:
    """Higher coproducts Delta_n on the chains of a presentation.

    Output keys are n-tuples of chain words.  `transfer_delta` is the zigzag
    evaluation; `closed_delta` the direct cut formula.  The two agree on every
    chain (see the test suite), which is the point of having both.
    """

    def __init__(self, gd: GroebnerData):
        self.gd = gd
        self.sdr = BarSDR(gd)
        self.cg: ChainGraph = self.sdr.cg
        self._bar_memo: dict = {}
        self._transfer_memo: dict = {}

    def all_chains(self) -> list:
        out = []
        d = 0
        while True:
            layer = self.cg.chains(d)
            if not layer:
                return out
            out.extend(layer)
            d += 1

    # -- transfer (oracle) -------------------------------------------------

    def _delta_h(self, s: int, word) -> FormalSum:
        # Delta_s after the homotopy, with the s = 1 factor acting as the identity
        if s == 1:
            return FormalSum.lift((word,))
        return self.sdr.complex.h(word).map_terms(lambda w: self._delta_bar(s, w))

    def _delta_bar(self, n: int, word) -> FormalSum:
        """n-fold coproduct on the bar complex, pushed through the homotopy."""
        key = (n, word)
        got = self._bar_memo.get(key)
        if got is not None:
            return got
        out = FormalSum()
        if n == 1:
            out.add_term((word,), 1)
        else:
            for i in range(1, len(word)):
                u, v = word[:i], word[i:]
                for s in range(1, n):
                    t = n - s
                    left = self._delta_h(s, u)
                    if left.is_zero:
                        continue
                    right = self._delta_h(t, v)
                    sign = (-1) ** (s * (t + 1) + (t - 1) * i)
                    for lk, lc in left.terms.items():
                        for rk, rc in right.terms.items():
                            out.add_term(lk + rk, sign * lc * rc)
        self._bar_memo[key] = out
        return out

    def transfer_delta(self, n: int, chain) -> FormalSum:
        """Delta_n(chain) through the zigzag: include, coproduct, project each slot."""
        chain = tuple(chain)
        key = (n, chain)
        got = self._transfer_memo.get(key)
        if got is not None:
            return got
        out = FormalSum()
        if n >= 2:
            cx = self.sdr.complex
            for w, c in cx.i(chain).terms.items():
                for tw, tc in self._delta_bar(n, w).terms.items():
                    # the projection has degree 0: expand slotwise, no signs
                    for combo in product(*(cx.p(x).items() for x in tw)):
                        coeff = c * tc
                        for _, pc in combo:
                            coeff *= pc
                        out.add_term(tuple(k for k, _ in combo), coeff)
        self._transfer_memo[key] = out
        return out

    # -- closed form ---------------------------------------------------------

    def closed_delta(self, n: int, chain) -> FormalSum:
        """Cut the supporting paths of a chain into n chains of matching total degree.

        A 1-chain is supported on its whole defining relation, so the cuts run
        over every path in that relation's support (tail paths land in other
        branches and decompose into arrows).  A higher chain is supported on
        its underlying path alone; each block of a cut must parse as a chain,
        block degrees must sum to one less than the chain's degree, and the
        term is signed by N = r1 + sum_{i<n} (n-i) r_i.
        """
        chain = tuple(chain)
        out = FormalSum()
        r = len(chain) - 1
        if n < 2 or r < 1:
            return out
        path = underlying_path(chain)
        support = self.gd.tip_inverse(path) if r == 1 else FormalSum.lift(path)
        for q, cq in support.terms.items():
            for blocks in self.cg.decompositions((q,), n):
                degs = [len(b) - 1 for b in blocks]
                if sum(degs) != r - 1:
                    continue
                n_exp = degs[0] + sum((n - 1 - j) * degs[j] for j in range(n - 1))
                out.add_term(blocks, cq * (-1) ** n_exp)
        return out


class ExtAlgebra:
    """Higher products on dual chains, by pairing tuples against the coproducts.

    A dual basis element is keyed by its chain word; degree = letter count.
    `m` runs the pairing pipeline over `closed_delta` (or the oracle when
    `use_oracle` is set); `closed_m` is the independent one-term closed
    form used to cross-check signs.
    """

    def __init__(self, tor: TorCoalgebra, use_oracle: bool = False):
        self.tor = tor
        self.cg = tor.cg
        self.gd = tor.gd
        self._delta = tor.transfer_delta if use_oracle else tor.closed_delta

    @staticmethod
    def pairing_sign(duals, word) -> int:
        """(-1)^N' when the slots match the dual tuple elementwise, else 0."""
        if len(duals) != len(word) or any(f != c for f, c in zip(duals, word)):
            return 0
        n_exp = 0
        acc = 0
        for i, f in enumerate(duals):
            if i:
                n_exp += acc * len(f)
            acc += len(f)
        return (-1) ** n_exp

    def m(self, duals) -> FormalSum:
        """m_n(f1 ... fn): a combination of dual chains, keyed by their chains."""
        duals = tuple(tuple(f) for f in duals)
        n = len(duals)
        total = sum(len(f) for f in duals)
        letters = total + 2 - n
        out = FormalSum()
        if n < 2 or letters < 1:
            return out
        prefactor = (-1) ** (n * total)
        for gamma in self.cg.chains(letters - 1):
            c = sum(
                (co * self.pairing_sign(duals, tw) for tw, co in self._delta(n, gamma).terms.items()),
                start=0,
            )
            if c:
                out.add_term(gamma, prefactor * c)
        return out

    def closed_m(self, duals) -> FormalSum:
        """One-term product formula on composable tuples, for cross-checking.

        All-arrow tuples sweep the relations containing the concatenated path
        (sign (-1)^(n(n+1)/2), coefficient from the relation); otherwise the
        concatenation must parse as a chain of the matching degree and the
        value is that chain's dual with sign (-1)^M.
        """
        duals = tuple(tuple(f) for f in duals)
        n = len(duals)
        out = FormalSum()
        if n < 2:
            return out
        for f, g in zip(duals, duals[1:]):
            if underlying_path(f).target != underlying_path(g).source:
                return out
        concat = underlying_path(duals[0])
        for f in duals[1:]:
            concat = compose(concat, underlying_path(f))
        degs = [len(f) - 1 for f in duals]
        if not any(degs):
            # every factor an arrow: the products live on the relations
            sign = (-1) ** (n * (n + 1) // 2)
            for t in self.gd.tips:
                c = self.gd.tip_inverse(t).coeff(concat)
                if c:
                    out.add_term(self.cg.parse(t), sign * c)
            return out
        gamma = self.cg.parse(concat)
        if gamma is None or len(gamma) != sum(degs) + 2:
            return out
        m_exp = (
            degs[0]
            + sum((n + i + 2) * degs[i] for i in range(n))
            + sum(degs[i] * degs[j] for i in range(n) for j in range(i + 1, n))
            + n * (n + 1) // 2
        )
        out.add_term(gamma, (-1) ** m_exp)
        return out

    # -- tuple enumeration -----------------------------------------------------

    def composable_tuples(self, arity: int) -> list[tuple]:
        """All arity-tuples of chains whose underlying paths concatenate."""
        chains = self.tor.all_chains()
        by_source: dict = {}
        for c in chains:
            by_source.setdefault(underlying_path(c).source, []).append(c)
        tuples = [(c,) for c in chains]
        for _ in range(arity - 1):
            tuples = [
                t + (c,)
                for t in tuples
                for c in by_source.get(underlying_path(t[-1]).target, ())
            ]
        return tuples


def coalgebra_table(tor: TorCoalgebra, n_max: int, use_oracle: bool = False) -> dict:
    """arity -> {chain: Delta_n(chain)} with zero values dropped (arity 1 is empty)."""
    delta = tor.transfer_delta if use_oracle else tor.closed_delta
    table: dict = {1: {}}
    for n in range(2, n_max + 1):
        table[n] = {}
        for c in tor.all_chains():
            v = delta(n, c)
            if v:
                table[n][c] = v
    return table


def algebra_table(ext: ExtAlgebra, n_max: int) -> dict:
    """arity -> {dual tuple: m_n value} with zero values dropped (arity 1 is empty)."""
    table: dict = {1: {}}
    for n in range(2, n_max + 1):
        table[n] = {}
        for duals in ext.composable_tuples(n):
            v = ext.m(duals)
            if v:
                table[n][duals] = v
    return table


def _table_get(table: dict, arity: int, key) -> FormalSum:
    return table.get(arity, {}).get(key) or FormalSum()


def stasheff_coalgebra_defects(table: dict, chains, n_max: int) -> list:
    """Coherence of the coproduct table: for each chain and n <= n_max, the signed
    sum of (id^r x Delta_s x id^t) Delta_{r+1+t} must vanish.  Returns (n, chain,
    defect) triples; reads only the table, so corrupted tables report honestly.
    """
    bad = []
    for n in range(2, n_max + 1):
        for gamma in chains:
            total = FormalSum()
            for s in range(2, n):
                for r in range(0, n - s + 1):
                    t = n - s - r
                    outer = _table_get(table, r + 1 + t, gamma)
                    sign = (-1) ** (r + s * t)
                    for word, c in outer.terms.items():
                        koszul = (-1) ** (s * sum(len(word[j]) for j in range(r)))
                        for inner, c2 in _table_get(table, s, word[r]).terms.items():
                            total.add_term(
                                word[:r] + inner + word[r + 1 :], sign * koszul * c * c2
                            )
            if total:
                bad.append((n, gamma, total))
    return bad


def stasheff_algebra_defects(table: dict, tuples_by_arity: dict, n_max: int) -> list:
    """Coherence of the product table: for each composable tuple and n <= n_max,
    the signed sum of m_{r+1+t}(id^r x m_s x id^t) must vanish.
    """
    bad = []
    for n in range(2, n_max + 1):
        for tup in tuples_by_arity.get(n, ()):
            total = FormalSum()
            for s in range(2, n + 1):
                for r in range(0, n - s + 1):
                    t = n - s - r
                    if r + 1 + t < 2:
                        continue
                    inner = _table_get(table, s, tup[r : r + s])
                    if inner.is_zero:
                        continue
                    koszul = (-1) ** (s * sum(len(f) for f in tup[:r]))
                    sign = (-1) ** (r + s * t)
                    for gamma, c in inner.terms.items():
                        outer = _table_get(table, r + 1 + t, tup[:r] + (gamma,) + tup[r + s :])
                        total += outer.scale(sign * koszul * c)
            if total:
                bad.append((n, tup, total))
    return bad
