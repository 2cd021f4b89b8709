"""Model terms: grammar, global statistics, and change statistics.

A model is a sequence of terms, each mapping a directed graph (plus node
attributes) to one sufficient statistic. Supported terms:

``edges``
    Number of directed ties.
``mutual``
    Number of reciprocated pairs (each counted once).
``gwesp(decay)``
    Geometrically weighted edgewise shared partners. A shared partner of a
    tie i -> j is a node m with i -> m -> j; a tie with k of them weighs
    ``exp(decay) * (1 - (1 - exp(-decay))**k)``.
``gwdsp(decay)``
    Same weighting summed over all ordered dyads, tied or not.
``isolates``
    Number of nodes with no ties in either direction.
``odegpop``
    Out-degree popularity: sum over ties i -> j of the out-degree of the
    receiver j. Equals sum_j outdeg(j) * indeg(j).
``nodematch(attr)``
    Ties whose endpoints share a level of ``attr`` (uniform homophily).
``nodematch(attr, level)``
    Ties whose endpoints both hold the given level (differential homophily).

Change statistics are the difference in each statistic between the graph
with a dyad present and with it absent. ``change_stats`` computes them for
one dyad by literal toggle-recompute; ``change_stat_matrices`` computes all
dyads at once in closed form. The two routes must agree and are tested
against each other.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigError,
    DimensionError,
    InvalidDyadError,
    UnknownAttributeError,
)
from .graph import DirectedGraph

__all__ = [
    "TermSpec",
    "ModelSpec",
    "parse_term",
    "parse_terms",
    "split_term_list",
    "global_stats",
    "change_stats",
    "change_stat_matrices",
]

_BARE_KINDS = ("edges", "mutual", "isolates", "odegpop")
_DECAY_KINDS = ("gwesp", "gwdsp")


@dataclass(frozen=True)
class TermSpec:
    """One model term. ``decay`` only for gwesp/gwdsp, ``attribute`` and
    optional ``level`` only for nodematch."""

    kind: str
    decay: float | None = None
    attribute: str | None = None
    level: str | None = None

    def __post_init__(self):
        k = self.kind
        if k in _BARE_KINDS:
            if self.decay is not None or self.attribute or self.level:
                raise ConfigError(f"term {k!r} takes no arguments")
        elif k in _DECAY_KINDS:
            if self.decay is None:
                raise ConfigError(f"term {k!r} requires a decay argument")
            if not (self.decay >= 0 and math.isfinite(self.decay)):
                raise ConfigError(f"term {k!r} decay must be finite and >= 0")
            if self.attribute or self.level:
                raise ConfigError(f"term {k!r} takes only a decay")
        elif k == "nodematch":
            if not self.attribute:
                raise ConfigError("nodematch requires an attribute name")
            if self.decay is not None:
                raise ConfigError("nodematch takes no decay")
        else:
            raise ConfigError(f"unknown term kind {k!r}")

    @property
    def name(self) -> str:
        """Canonical display name, also used for duplicate detection."""
        if self.kind in _BARE_KINDS:
            return self.kind
        if self.kind in _DECAY_KINDS:
            return f"{self.kind}({self.decay:g})"
        if self.level is not None:
            return f"nodematch({self.attribute}, {self.level})"
        return f"nodematch({self.attribute})"


@dataclass(frozen=True)
class ModelSpec:
    """An ordered, duplicate-free collection of terms."""

    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ConfigError("a model needs at least one term")
        names = [t.name for t in self.terms]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise ConfigError(f"duplicate terms: {dupes}")

    @property
    def names(self) -> tuple:
        return tuple(t.name for t in self.terms)

    def __len__(self) -> int:
        return len(self.terms)


def parse_term(text: str) -> TermSpec:
    """Parse one term string like ``gwesp(0.5)`` or ``nodematch(role)``.

    Keywords are case-insensitive; attribute names keep their case. Raises
    :class:`ConfigError` with a character position on malformed input.
    """
    s = text.strip()
    if not s:
        raise ConfigError("empty term")
    open_at = s.find("(")
    if open_at < 0:
        head, args = s, []
    else:
        if not s.endswith(")"):
            raise ConfigError(
                f"term {text!r}: unbalanced parenthesis at position {len(s) - 1}"
            )
        head = s[:open_at]
        inner = s[open_at + 1 : -1]
        if inner.strip() == "":
            args = []
        else:
            args = [a.strip() for a in inner.split(",")]
            if any(a == "" for a in args):
                pos = open_at + 1 + inner.find(",")
                raise ConfigError(f"term {text!r}: empty argument at position {pos}")
    kind = head.strip().lower()
    if not kind:
        raise ConfigError(f"term {text!r}: missing keyword at position 0")
    if kind in _BARE_KINDS:
        if args:
            raise ConfigError(f"term {text!r}: {kind} takes no arguments")
        return TermSpec(kind)
    if kind in _DECAY_KINDS:
        if len(args) != 1:
            raise ConfigError(f"term {text!r}: {kind} takes exactly one decay")
        try:
            decay = float(args[0])
        except ValueError:
            raise ConfigError(
                f"term {text!r}: decay {args[0]!r} is not a number"
            ) from None
        return TermSpec(kind, decay=decay)
    if kind == "nodematch":
        if len(args) == 1:
            return TermSpec(kind, attribute=args[0])
        if len(args) == 2:
            return TermSpec(kind, attribute=args[0], level=args[1])
        raise ConfigError(f"term {text!r}: nodematch takes 1 or 2 arguments")
    raise ConfigError(f"term {text!r}: unknown keyword {kind!r} at position 0")


def split_term_list(text: str) -> list:
    """Split a comma-separated term list on commas outside parentheses."""
    parts = []
    depth = 0
    start = 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(depth - 1, 0)
        elif ch == "," and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return [p.strip() for p in parts if p.strip()]


def parse_terms(terms) -> ModelSpec:
    """Parse a comma-separated string or a sequence of term strings."""
    if isinstance(terms, str):
        items = split_term_list(terms)
        if not items:
            raise ConfigError("no terms given")
    else:
        items = list(terms)
    return ModelSpec(tuple(parse_term(t) for t in items))


def _decay_tables(decay: float, n: int):
    """Lookup tables r**k and w(k) for shared-partner counts 0..n."""
    r = 1.0 - math.exp(-decay)
    rtab = np.power(r, np.arange(n + 1, dtype=np.float64))
    wtab = math.exp(decay) * (1.0 - rtab)
    return rtab, wtab


def _match_matrix(attrs, term, n: int) -> np.ndarray:
    if attrs is None:
        raise UnknownAttributeError(
            f"term {term.name!r} needs node attributes, none supplied"
        )
    if attrs.size != n:
        raise DimensionError(
            f"node table has {attrs.size} rows, graph has {n} nodes"
        )
    codes = attrs.codes(term.attribute)
    if term.level is None:
        return codes[:, None] == codes[None, :]
    lc = attrs.level_code(term.attribute, term.level)
    both = codes == lc
    return both[:, None] & both[None, :]


def global_stats(g: DirectedGraph, attrs, spec: ModelSpec) -> np.ndarray:
    """Vector of sufficient statistics for ``spec`` on graph ``g``."""
    n = g.node_count
    A = g.adjacency
    P = None
    out = np.empty(len(spec.terms), dtype=np.float64)
    for k, term in enumerate(spec.terms):
        if term.kind == "edges":
            out[k] = g.edge_count
        elif term.kind == "mutual":
            out[k] = (A & A.T).sum() // 2
        elif term.kind == "isolates":
            out[k] = (g.total_degrees == 0).sum() if n else 0
        elif term.kind == "odegpop":
            out[k] = (g.in_degrees * g.out_degrees).sum() if n else 0
        elif term.kind in _DECAY_KINDS:
            if P is None:
                ai = A.astype(np.int64)
                P = ai @ ai
            _, wtab = _decay_tables(term.decay, n)
            if term.kind == "gwesp":
                out[k] = wtab[P[A]].sum() if n else 0.0
            else:
                out[k] = wtab[P].sum() - wtab[P.diagonal()].sum() if n else 0.0
        else:
            m = _match_matrix(attrs, term, n)
            out[k] = (A & m).sum()
    return out


def change_stats(g: DirectedGraph, attrs, dyad, spec: ModelSpec) -> np.ndarray:
    """Change statistics for one dyad, by toggle and full recomputation.

    This is the reference route: statistic on the graph with the dyad
    present minus the statistic with it absent. The current state of the
    dyad in ``g`` does not matter.
    """
    i, j = dyad
    if i == j:
        raise InvalidDyadError(f"dyad ({i}, {j}) is a loop")
    plus = g.with_dyad(i, j, True)
    minus = g.with_dyad(i, j, False)
    return global_stats(plus, attrs, spec) - global_stats(minus, attrs, spec)


def change_stat_matrices(g: DirectedGraph, attrs, spec: ModelSpec) -> np.ndarray:
    """All change statistics at once, shape ``(n_terms, n, n)``.

    Entry ``[t, i, j]`` equals ``change_stats(g, attrs, (i, j), spec)[t]``;
    the diagonal is zero. Closed forms throughout, so building a full dyadic
    design costs a handful of matrix products instead of n*(n-1) toggles.
    """
    n = g.node_count
    A = g.adjacency
    Af = A.astype(np.float64)
    P = None
    rp = rpm = None  # r**P and r**max(P-1, 0) for the active decay
    cached_decay = None
    out = np.zeros((len(spec.terms), n, n), dtype=np.float64)
    if n < 2:
        return out

    def gw_tables(decay):
        nonlocal P, rp, rpm, cached_decay
        if P is None:
            ai = A.astype(np.int64)
            P = ai @ ai
        rtab, wtab = _decay_tables(decay, n)
        if cached_decay != decay:
            rp = rtab[P]
            rpm = rtab[np.maximum(P - 1, 0)]
            cached_decay = decay
        return rtab, wtab

    for k, term in enumerate(spec.terms):
        if term.kind == "edges":
            m = np.ones((n, n), dtype=np.float64)
        elif term.kind == "mutual":
            m = Af.T.copy()
        elif term.kind == "isolates":
            deg = g.total_degrees
            gone_i = (deg[:, None] - A) == 0
            gone_j = (deg[None, :] - A) == 0
            m = -(gone_i.astype(np.float64) + gone_j.astype(np.float64))
        elif term.kind == "odegpop":
            m = g.in_degrees[:, None] + g.out_degrees[None, :]
            m = m.astype(np.float64)
        elif term.kind == "gwesp":
            _, wtab = gw_tables(term.decay)
            # closing the focal tie: weight of its own partner count, plus
            # the focal tie promoting each two-path it completes
            m1 = (Af * rp) @ Af.T
            m1m = (Af * rpm) @ Af.T
            m2 = Af.T @ (Af * rp)
            m2m = Af.T @ (Af * rpm)
            m = wtab[P] + np.where(A, m1m + m2m, m1 + m2)
        elif term.kind == "gwdsp":
            rtab, _ = gw_tables(term.decay)
            t1 = rp @ Af.T
            t1m = rpm @ Af.T
            t2 = Af.T @ rp
            t2m = Af.T @ rpm
            base = np.where(A, t1m + t2m, t1 + t2)
            # remove the y == i and x == j contributions, whose two-path
            # counts are the diagonal cycle counts corrected for mutuality
            mut = A & A.T
            cyc = P.diagonal()
            e1 = np.maximum(cyc[:, None] - mut, 0)
            e2 = np.maximum(cyc[None, :] - mut, 0)
            m = base - Af.T * (rtab[e1] + rtab[e2])
        else:
            m = _match_matrix(attrs, term, n).astype(np.float64)
        np.fill_diagonal(m, 0.0)
        out[k] = m
    return out
