"""Constructive Ramsey-type tools and the exact bound formulas.

All bounds are exact Python integers.  The search procedures accept inputs
far below their guarantee thresholds; they then either succeed (every
answer is checkable) or report failure with ``None``/``SearchFailure``.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import InputError, SearchFailure
from .graph_core import Graph, is_connected, label_key

# monotone subsequences


def _chain(values, i, prev) -> list[int]:
    out = [i]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def _tagged_subsequence(seq, ell):
    """First length-``ell`` identical/increasing/decreasing chain, via the triplet labels."""
    n = len(seq)
    if ell <= 1:
        return ([0], "identical") if n else None
    labels = [[1, 1, 1] for _ in range(n)]
    prev = [[None, None, None] for _ in range(n)]
    tests = (lambda a, b: a == b, lambda a, b: a < b, lambda a, b: a > b)
    for i in range(n):
        for j in range(i):
            for c, test in enumerate(tests):
                if test(seq[j], seq[i]) and labels[j][c] + 1 > labels[i][c]:
                    labels[i][c] = labels[j][c] + 1
                    prev[i][c] = j
        for c, tag in enumerate(("identical", "increasing", "decreasing")):
            if labels[i][c] >= ell:
                chain = _chain(seq, i, [p[c] for p in prev])
                return chain[-ell:], tag
    return None


def mono_or_identical_subsequence(seq, ell: int) -> tuple[list[int], str]:
    """Indices of a length-``ell`` subsequence that is identical, strictly
    increasing or strictly decreasing, with its tag.

    Each term gets the triple of longest identical, increasing and decreasing
    chains ending there; the first term reaching ``ell`` in some coordinate
    yields the answer.
    """
    if ell < 1:
        raise InputError("ell must be positive")
    if len(seq) < (ell - 1) ** 3 + 1:
        raise InputError(f"need at least {(ell - 1) ** 3 + 1} terms for ell={ell}")
    out = _tagged_subsequence(list(seq), ell)
    assert out is not None, "guaranteed by the pigeonhole count"
    return out


def check_tagged(seq, idxs, tag) -> bool:
    vals = [seq[i] for i in idxs]
    if any(a >= b for a, b in zip(idxs, idxs[1:])):
        return False
    pairs = list(zip(vals, vals[1:]))
    return {
        "identical": all(a == b for a, b in pairs),
        "increasing": all(a < b for a, b in pairs),
        "decreasing": all(a > b for a, b in pairs),
    }[tag]


def longest_monotone(values, decreasing: bool = False) -> list[int]:
    """Indices of a longest non-strictly monotone subsequence."""
    vals = [-v for v in values] if decreasing else list(values)
    tails: list = []
    tail_idx: list[int] = []
    prev = [None] * len(vals)
    for i, v in enumerate(vals):
        pos = bisect.bisect_right(tails, v)
        if pos > 0:
            prev[i] = tail_idx[pos - 1]
        if pos == len(tails):
            tails.append(v)
            tail_idx.append(i)
        else:
            tails[pos] = v
            tail_idx[pos] = i
    if not tail_idx:
        return []
    return _chain(vals, tail_idx[-1], prev)


# regular partitions


@dataclass
class RegularPartition:
    """Cut points x_1 < ... < x_{p-1} splitting the line into
    (-inf, x_1], (x_1, x_2], ..., (x_{p-1}, inf), plus the chosen indices."""

    cuts: list
    chosen: list
    case_tags: list

    @property
    def order(self) -> int:
        return len(self.cuts) + 1

    def parts(self) -> list[tuple]:
        bounds = [None] + list(self.cuts) + [None]
        return list(zip(bounds, bounds[1:]))


def _in_part(x, lo, hi) -> bool:
    return (lo is None or x > lo) and (hi is None or x <= hi)


def part_tags(selected, cuts) -> list[str] | None:
    """The clause each part satisfies, or None if some part satisfies none."""
    bounds = [None] + list(cuts) + [None]
    tags = []
    for lo, hi in zip(bounds, bounds[1:]):
        pieces = [sorted(x for x in s if _in_part(x, lo, hi)) for s in selected]
        if not pieces or not pieces[0]:
            return None
        if all(p == pieces[0] for p in pieces):
            tags.append("identical")
            continue
        if any(len(p) != len(pieces[0]) for p in pieces):
            return None
        if all(a[-1] < b[0] for a, b in zip(pieces, pieces[1:])):
            tags.append("increasing")
        elif all(b[-1] < a[0] for a, b in zip(pieces, pieces[1:])):
            tags.append("decreasing")
        else:
            return None
    return tags


def validate_regular_partition(sets, rp: RegularPartition, k: int, ell: int) -> list[str]:
    bad = []
    if len(rp.chosen) != ell or any(a >= b for a, b in zip(rp.chosen, rp.chosen[1:])):
        bad.append("exactly ell strictly increasing indices are chosen")
    if any(a >= b for a, b in zip(rp.cuts, rp.cuts[1:])):
        bad.append("cut points strictly increase")
    if rp.order > k:
        bad.append("order is at most k")
    if not bad:
        tags = part_tags([sets[i] for i in rp.chosen], rp.cuts)
        if tags is None:
            bad.append("every part is identical, increasing or decreasing")
        elif tags != list(rp.case_tags):
            bad.append("case tags match the parts")
    return bad


def _demands(cap: int, ell: int) -> list[int]:
    out, d = [], cap
    while d > ell:
        out.append(d)
        d //= 2
    return out + [ell]


def _rp(items, k, ell, budget):
    """items: list of (index, sorted tuple of k reals).  Returns (chosen, cuts)."""
    budget[0] -= 1
    if budget[0] < 0 or len(items) < ell:
        return None
    if ell == 1:
        return [items[0][0]], []
    if k == 1:
        found = _tagged_subsequence([a[0] for _, a in items], ell)
        if found is None:
            return None
        return [items[i][0] for i in found[0]], []
    for seq in _sweeps(list(items), 0, k, ell):
        if seq[0][1][0] > seq[-1][1][0]:
            seq = seq[::-1]
        out = _rp_monotone(seq, k, ell, budget)
        if out is not None:
            return sorted(out[0]), out[1]
        if budget[0] < 0:
            return None
    return None


def _sweeps(seq, j, k, ell):
    """Subsequences monotone in every coordinate, longer choices first."""
    if j == k:
        yield seq
        return
    col = [a[j] for _, a in seq]
    up, down = longest_monotone(col), longest_monotone(col, decreasing=True)
    for pick in sorted((up, down), key=len, reverse=True):
        if len(pick) >= ell:
            yield from _sweeps([seq[i] for i in pick], j + 1, k, ell)


def _split(seq, j, x, k, ell, budget):
    """Recurse left of x with j elements and right with k - j."""
    left = [(i, tuple(v for v in a if v <= x)) for i, a in seq]
    for demand in _demands(len(seq), ell):
        got = _rp(left, j, demand, budget)
        if got is None:
            continue
        keep = set(got[0])
        right = [(i, tuple(v for v in a if v > x)) for i, a in seq if i in keep]
        right.sort()
        got2 = _rp(right, k - j, ell, budget)
        if got2 is not None:
            lcuts = [c for c in got[1] if c < x]
            rcuts = [c for c in got2[1] if c > x]
            return got2[0], lcuts + [x] + rcuts
    return None


def _rp_monotone(seq, k, ell, budget):
    """``seq`` has every coordinate monotone and coordinate 1 non-decreasing."""
    cols = [[a[j] for _, a in seq] for j in range(k)]
    rising = [all(p <= q for p, q in zip(c, c[1:])) for c in cols]
    for j in range(k - 1):
        if rising[j] and not rising[j + 1]:
            x = (cols[j][-1] + cols[j + 1][-1]) / 2
            return _split(seq, j + 1, x, k, ell, budget)
    # every coordinate non-decreasing: try a chain first, then windows
    chain = [0]
    for i in range(1, len(seq)):
        if min(seq[i][1]) > max(seq[chain[-1]][1]):
            chain.append(i)
    if len(chain) >= ell:
        return [seq[i][0] for i in chain[:ell]], []
    windows = []
    for j in range(k - 1):
        for s in range(len(seq)):
            w = 0
            while s + w < len(seq) and seq[s + w][1][j] < seq[s][1][j + 1]:
                w += 1
            if w >= ell:
                windows.append((-w, s, j))
    for negw, s, j in sorted(windows)[:8]:
        window = seq[s:s - negw]
        x = (max(a[j] for _, a in window) + window[0][1][j + 1]) / 2
        out = _split(window, j + 1, x, k, ell, budget)
        if out is not None:
            return out
    return None


def regular_partition(sets, k: int, ell: int, budget: int = 20_000) -> RegularPartition:
    """A subsequence of ``ell`` sets with a regular partition of order at most ``k``.

    Follows the inductive construction: coordinate-wise monotone sweeps, a
    split point wherever one coordinate rises while the next falls (or a
    window of sets straddles a gap), recursion on both sides, else a
    spaced-out increasing chain.  Raises SearchFailure when the input is too
    short for the construction to finish.
    """
    items = []
    for i, s in enumerate(sets):
        a = tuple(sorted(s))
        if len(a) != k or len(set(a)) != k:
            raise InputError(f"set {i} does not have exactly {k} distinct elements")
        items.append((i, a))
    if ell < 1 or k < 1:
        raise InputError("k and ell must be positive")
    out = _rp(items, k, ell, [budget])
    if out is None:
        raise SearchFailure("regular_partition", f"no regular subsequence of length {ell} found in {len(sets)} sets")
    chosen, cuts = out
    tags = part_tags([items[i][1] for i in chosen], cuts)
    rp = RegularPartition(list(cuts), list(chosen), tags or [])
    bad = validate_regular_partition([a for _, a in items], rp, k, ell)
    if bad:
        raise SearchFailure("regular_partition", "; ".join(bad))
    return rp


def regular_partition_at_most(sets, k: int, ell: int, budget: int = 20_000) -> RegularPartition:
    """Regular partition for sets of at most ``k`` elements.

    Sets are grouped by size and the largest group that admits an answer is
    used, so the order is at most that size.  Empty sets are never selected
    since no part could meet them.
    """
    by_size: dict[int, list[int]] = {}
    for i, s in enumerate(sets):
        if len(set(s)) > k:
            raise InputError(f"set {i} has more than {k} elements")
        if s:
            by_size.setdefault(len(set(s)), []).append(i)
    for size, members in sorted(by_size.items(), key=lambda kv: -len(kv[1])):
        if len(members) < ell:
            continue
        try:
            rp = regular_partition([sets[i] for i in members], size, ell, budget)
        except SearchFailure:
            continue
        return RegularPartition(rp.cuts, [members[i] for i in rp.chosen], rp.case_tags)
    raise SearchFailure("regular_partition", f"no size class yields {ell} regular sets")


# bounds


@lru_cache(maxsize=None)
def bound_t(n: int, ell: int) -> int:
    if n == 1:
        return ell
    return max(bound_n(i, bound_n(n - i, ell)) for i in range(1, n))


@lru_cache(maxsize=None)
def bound_m(n: int, ell: int) -> int:
    return (bound_t(n, ell) - 1) * (ell - 1) * n + 1


@lru_cache(maxsize=None)
def bound_n(n: int, ell: int) -> int:
    if n < 1 or ell < 1:
        raise InputError("n and ell must be positive")
    if n == 1:
        return (ell - 1) ** 3 + 1
    return (bound_m(n, ell) - 1) ** (2**n) + 1


def regular_partition_bounds(n: int, ell: int) -> dict:
    return {"t": bound_t(n, ell), "M": bound_m(n, ell), "N": bound_n(n, ell)}


def n_prime(k: int, ell: int) -> int:
    """Length guaranteeing a regular subsequence for sets of at most k reals."""
    return bound_n(k, (k + 1) * ell)


RAMSEY_EXACT = {1: 1, 2: 2, 3: 6, 4: 18}


def ramsey_diagonal(n: int) -> tuple[int, bool]:
    """An upper bound on R(n, n) and whether it is the exact value."""
    if n in RAMSEY_EXACT:
        return RAMSEY_EXACT[n], True
    return comb(2 * n - 2, n - 1), False


def mu(n: int) -> int:
    if n < 2:
        raise InputError("mu needs n >= 2")
    r, _ = ramsey_diagonal(n)
    return (n - 1) * (r ** (2 * n - 3) + 1)


def ladder_constants(n: int) -> dict:
    if n < 3:
        raise InputError("ladder constants need n >= 3")
    m1, m2, m3 = mu(n), 8 * n, mu(2 * n + 2)
    m4 = m1 + 2 * (m2 - 1) * (n - 2) + 4
    half, odd = divmod(m4 + m1, 2)
    return {"m1": m1, "m2": m2, "m3": m3, "m4": m4, "L": (m3 - 1) * m4 + half + odd, "rounded": bool(odd)}


def ell_bound(n: int) -> int:
    return ladder_constants(n)["L"]


def m_bound(n: int) -> int:
    """M(n) of the final patched-cycle configuration."""
    return cascade(n)["M"]


def cascade(n: int) -> dict:
    """Every bound used on the way to the final configuration, exactly."""
    lad = ladder_constants(n)
    m1 = (n - 1) * (4 * lad["L"] + 6)
    m2 = (n - 1) * n_prime(n - 1, m1)
    m = n_prime(n - 1, m2)
    approx = [k for k in (n, 2 * n + 2) if not ramsey_diagonal(k)[1]]
    return {
        "n": n,
        "mu": lad["m1"],
        "m2": lad["m2"],
        "m3": lad["m3"],
        "m4": lad["m4"],
        "L": lad["L"],
        "L_rounded": lad["rounded"],
        "M1": m1,
        "M2": m2,
        "M": m,
        "ramsey_upper_bound_used_for": approx,
    }


# searches over graphs


def rectangle_or_clique(g: Graph, a: int, b: int, k: int):
    """("clique", vertices) or ("rectangle", rows, cols), or None.

    Vertices are labeled (i, j).  Cliques are tried first; rectangles are
    found by enumerating row subsets and keeping columns whose cells are
    pairwise non-adjacent.
    """
    cells = list(g)
    if any(not (isinstance(c, tuple) and len(c) == 2) for c in cells):
        raise InputError("grid vertices must be (row, col) pairs")
    rows = sorted({c[0] for c in cells})
    cols = sorted({c[1] for c in cells})
    if len(cells) != len(rows) * len(cols):
        raise InputError("grid labeling must be a full rows x cols product")
    clique = find_clique(g, cells, k)
    if clique is not None:
        return ("clique", clique)
    for xs in itertools.combinations(rows, a):
        pick = _independent_columns(g, xs, cols, b)
        if pick is not None:
            return ("rectangle", list(xs), pick)
    return None


def _independent_columns(g: Graph, xs, cols, b):
    """b columns whose cells over rows ``xs`` are pairwise non-adjacent."""
    good = [y for y in cols if not any(g.has_edge((p, y), (q, y)) for p, q in itertools.combinations(xs, 2))]

    def clash(y1, y2):
        return any(g.has_edge((p, y1), (q, y2)) for p in xs for q in xs)

    def grow(chosen, start):
        if len(chosen) == b:
            return list(chosen)
        for i in range(start, len(good)):
            y = good[i]
            if all(not clash(y, z) for z in chosen):
                got = grow(chosen + [y], i + 1)
                if got is not None:
                    return got
        return None

    return grow([], 0)


def find_clique(g: Graph, within, k: int):
    """A clique of size ``k`` inside ``within``, lowest labels first."""
    pool = sorted(within, key=label_key)

    def grow(chosen, cands):
        if len(chosen) == k:
            return chosen
        for i, v in enumerate(cands):
            if len(chosen) + len(cands) - i < k:
                return None
            nb = g.neighbors(v)
            got = grow(chosen + [v], [u for u in cands[i + 1:] if u in nb])
            if got is not None:
                return got
        return None

    return grow([], pool)


def find_independent(g: Graph, within, k: int):
    pool = sorted(within, key=label_key)

    def grow(chosen, cands):
        if len(chosen) == k:
            return chosen
        for i, v in enumerate(cands):
            if len(chosen) + len(cands) - i < k:
                return None
            nb = g.neighbors(v)
            got = grow(chosen + [v], [u for u in cands[i + 1:] if u not in nb])
            if got is not None:
                return got
        return None

    return grow([], pool)


def clique_or_independent(g: Graph, within, n: int):
    """("clique", set) or ("independent", set) of size ``n``, or None."""
    c = find_clique(g, within, n)
    if c is not None:
        return ("clique", c)
    s = find_independent(g, within, n)
    if s is not None:
        return ("independent", s)
    return None


def degree_or_induced_path(g: Graph, k: int, ell: int):
    """("vertex", v) of degree at least k, or ("path", [...]) induced on ell vertices."""
    if not is_connected(g):
        raise InputError("graph must be connected")
    for v in sorted(g, key=label_key):
        if g.degree(v) >= k:
            return ("vertex", v)
    path = find_induced_path(g, ell)
    if path is not None:
        return ("path", path)
    return None


def find_induced_path(g: Graph, ell: int, within=None, limit: int = 200_000):
    """An induced path on ``ell`` vertices by depth-first extension."""
    pool = set(g) if within is None else set(within)
    order = sorted(pool, key=label_key)
    steps = [0]

    def extend(path, blocked):
        if len(path) == ell:
            return path
        steps[0] += 1
        if steps[0] > limit:
            return None
        last = path[-1]
        for y in sorted(g.neighbors(last) & pool, key=label_key):
            if y in blocked:
                continue
            got = extend(path + [y], blocked | g.neighbors(last) | {last})
            if got is not None:
                return got
        return None

    for v in order:
        got = extend([v], {v})
        if got is not None:
            return got
    return None


def induced_matching(g: Graph, side_a, side_b, n: int) -> list[tuple]:
    """An induced matching between ``side_a`` and ``side_b`` of size at least |A|/n.

    Greedy peeling: match the lowest remaining a to its lowest neighbor b,
    then discard every a adjacent to b and every b adjacent to a.
    """
    side_a = sorted(side_a, key=label_key)
    side_b = set(side_b)
    for a in side_a:
        if not g.neighbors(a) & side_b:
            raise InputError(f"{a!r} has no neighbor on the other side")
    for b in side_b:
        if len(g.neighbors(b) & set(side_a)) > n:
            raise InputError(f"{b!r} has more than {n} neighbors")
    out = []
    alive_a = list(side_a)
    alive_b = set(side_b)
    while alive_a:
        a = alive_a[0]
        choices = sorted(g.neighbors(a) & alive_b, key=label_key)
        if not choices:
            alive_a.pop(0)
            continue
        b = choices[0]
        out.append((a, b))
        alive_a = [x for x in alive_a if x != a and not g.has_edge(x, b)]
        alive_b = {y for y in alive_b if y != b and not g.has_edge(a, y)}
    return out


def is_induced_matching(g: Graph, pairs) -> bool:
    for i, (a, b) in enumerate(pairs):
        if not g.has_edge(a, b):
            return False
        for c, d in pairs[i + 1:]:
            if g.has_edge(a, d) or g.has_edge(c, b):
                return False
    return True


__all__ = [
    "RAMSEY_EXACT",
    "RegularPartition",
    "bound_m",
    "bound_n",
    "bound_t",
    "cascade",
    "check_tagged",
    "clique_or_independent",
    "degree_or_induced_path",
    "ell_bound",
    "find_clique",
    "find_independent",
    "find_induced_path",
    "induced_matching",
    "is_induced_matching",
    "ladder_constants",
    "longest_monotone",
    "m_bound",
    "mono_or_identical_subsequence",
    "mu",
    "n_prime",
    "part_tags",
    "ramsey_diagonal",
    "rectangle_or_clique",
    "regular_partition",
    "regular_partition_at_most",
    "regular_partition_bounds",
    "validate_regular_partition",
]
