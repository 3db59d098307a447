"""Brute-force tree, forest, and code-sequence oracles.

Everything here counts by exhaustive enumeration so it can sit on the
opposite side of a test from the algebraic coefficient formulas.  Ordered
forests are generated through their reduced codes, labeled forests by a
pruned parent-function search, and unrooted trees by edge subsets, so no
route shares machinery with the series engine.

Closed-form companions (``*_formula``) are provided next to each census
so callers can compare the two routes; the census functions never consult
the formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .errors import BadSequence, InvalidCode, NotATree, SizeLimit
from .scalars import multinomial

ORDERED_FOREST_LIMIT = 12
LABELED_TREE_LIMIT = 8
LABELED_FOREST_LIMIT = 7


# -- ordered forests and their codes -------------------------------------------


def _vertex_count(tree) -> int:
    return 1 + sum(_vertex_count(child) for child in tree)


@dataclass(frozen=True)
class OrderedForest:
    """A k-tuple of rooted ordered trees; each tree is a nested tuple of
    its child subtrees, so a leaf is ()."""

    k: int
    trees: tuple

    def __post_init__(self):
        if self.k != len(self.trees):
            raise ValueError("k must equal the number of trees")

    @property
    def n(self) -> int:
        return sum(_vertex_count(t) for t in self.trees)

    def profile(self) -> dict:
        """Map child-count -> number of vertices with that many children."""
        out: dict = {}
        stack = list(self.trees)
        while stack:
            node = stack.pop()
            out[len(node)] = out.get(len(node), 0) + 1
            stack.extend(node)
        return out


@dataclass(frozen=True)
class CodeSequence:
    """Suffix or reduced code of an ordered forest; reduced entries are
    the suffix entries minus one."""

    entries: tuple
    kind: str

    def __post_init__(self):
        if self.kind not in ("suffix", "reduced"):
            raise ValueError("kind must be 'suffix' or 'reduced'")
        low = 0 if self.kind == "suffix" else -1
        if any(not isinstance(e, int) or e < low for e in self.entries):
            raise InvalidCode("entries must be integers >= %d" % low)

    def to_reduced(self) -> "CodeSequence":
        if self.kind == "reduced":
            return self
        return CodeSequence(tuple(e - 1 for e in self.entries), "reduced")

    def to_suffix(self) -> "CodeSequence":
        if self.kind == "suffix":
            return self
        return CodeSequence(tuple(e + 1 for e in self.entries), "suffix")


def suffix_code(forest: OrderedForest) -> CodeSequence:
    """Postorder code: a vertex with j children contributes j after the
    codes of its subtrees; trees are concatenated left to right."""
    out = []

    def walk(tree):
        for child in tree:
            walk(child)
        out.append(len(tree))

    for tree in forest.trees:
        walk(tree)
    return CodeSequence(tuple(out), "suffix")


def reduced_code(forest: OrderedForest) -> CodeSequence:
    return suffix_code(forest).to_reduced()


def decode_reduced(code, k: int) -> OrderedForest:
    """Rebuild the forest whose reduced code is the given sequence.

    Valid codes have entries >= -1, total sum -k, and every partial sum
    negative; anything else raises InvalidCode."""
    if isinstance(code, CodeSequence):
        entries = code.to_reduced().entries
    else:
        entries = tuple(code)
    if k < 1:
        raise ValueError("k must be positive")
    if any(not isinstance(e, int) or e < -1 for e in entries):
        raise InvalidCode("reduced entries must be integers >= -1")
    partial = 0
    for i, e in enumerate(entries):
        partial += e
        if partial >= 0:
            raise InvalidCode("partial sum %d at position %d is not negative" % (partial, i))
    if partial != -k:
        raise InvalidCode("entries sum to %d, expected %d" % (partial, -k))
    stack = []
    for e in entries:
        j = e + 1
        if j > len(stack):
            raise InvalidCode("entry needs %d subtrees but only %d are available" % (j, len(stack)))
        children = tuple(stack[len(stack) - j :]) if j else ()
        del stack[len(stack) - j :]
        stack.append(children)
    return OrderedForest(k, tuple(stack))


def enumerate_ordered_forests(n: int, k: int) -> list:
    """Every forest of k ordered trees with n vertices, generated through
    the valid reduced codes of length n."""
    if n > ORDERED_FOREST_LIMIT:
        raise SizeLimit("n = %d exceeds the enumeration limit %d" % (n, ORDERED_FOREST_LIMIT))
    if k < 1:
        raise ValueError("k must be positive")
    if n < k:
        return []
    out = []
    entries = [0] * n

    def search(i: int, partial: int) -> None:
        remaining_after = n - i - 1
        if remaining_after == 0:
            e = -k - partial
            if e >= -1:
                entries[i] = e
                out.append(decode_reduced(entries, k))
            return
        top = min(-1, remaining_after - k) - partial
        for e in range(-1, top + 1):
            entries[i] = e
            search(i + 1, partial + e)

    search(0, 0)
    return out


def _normalize_profile(profile) -> dict:
    if isinstance(profile, dict):
        items = profile.items()
    else:
        items = enumerate(profile)
    out = {}
    for i, count in items:
        i = int(i)
        count = int(count)
        if i < 0 or count < 0:
            raise ValueError("profile entries must be nonnegative")
        if count:
            out[i] = count
    return out


@lru_cache(maxsize=64)
def _ordered_profile_census(n: int, k: int) -> dict:
    census: dict = {}
    for forest in enumerate_ordered_forests(n, k):
        key = tuple(sorted(forest.profile().items()))
        census[key] = census.get(key, 0) + 1
    return census


def count_by_profile(n: int, k: int, profile) -> int:
    """Number of ordered k-forests on n vertices in which exactly n_i
    vertices have i children, by exhaustive enumeration."""
    prof = _normalize_profile(profile)
    key = tuple(sorted(prof.items()))
    return _ordered_profile_census(n, k).get(key, 0)


def _profile_parts(n: int, profile: dict) -> tuple:
    top = max(profile) if profile else 0
    return tuple(profile.get(i, 0) for i in range(top + 1))


def ordered_forest_profile_formula(n: int, k: int, profile) -> int:
    """(k/n) multinomial(n; n_0, n_1, ...) when sum n_i = n and
    sum i n_i = n - k; zero otherwise."""
    prof = _normalize_profile(profile)
    if n < 1 or k < 1:
        return 0
    if sum(prof.values()) != n or sum(i * c for i, c in prof.items()) != n - k:
        return 0
    value = Fraction(k, n) * multinomial(n, _profile_parts(n, prof))
    if value.denominator != 1:
        raise AssertionError("profile count came out non-integer")
    return int(value)


def cycle_lemma_count(seq) -> int:
    """Number of cyclic rotations of the sequence with every partial sum
    negative.  Entries must be >= -1 with a negative total."""
    entries = list(seq)
    if any(not isinstance(e, int) or e < -1 for e in entries):
        raise BadSequence("entries must be integers >= -1")
    total = sum(entries)
    if total >= 0:
        raise BadSequence("sum must be negative, got %d" % total)
    n = len(entries)
    count = 0
    for start in range(n):
        partial = 0
        good = True
        for off in range(n):
            partial += entries[(start + off) % n]
            if partial >= 0:
                good = False
                break
        if good:
            count += 1
    return count


# -- labeled trees via Prufer codes and edge subsets -----------------------------


@dataclass(frozen=True)
class PruferCode:
    """Length m-2 sequence over [m]; a vertex of degree d appears d-1
    times."""

    entries: tuple
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if len(self.entries) != self.m - 2:
            raise InvalidCode("expected %d entries, got %d" % (self.m - 2, len(self.entries)))
        if any(not isinstance(e, int) or not 1 <= e <= self.m for e in self.entries):
            raise InvalidCode("entries must lie in 1..%d" % self.m)


def _canonical_edges(edges) -> tuple:
    return tuple(sorted(tuple(sorted(e)) for e in edges))


def _tree_adjacency(edges, m: int | None):
    edges = [tuple(e) for e in edges]
    labels = {v for e in edges for v in e}
    if m is None:
        m = max(labels) if labels else 0
    if m < 2:
        raise NotATree("need at least two vertices")
    if any(
        len(e) != 2 or not all(isinstance(v, int) and 1 <= v <= m for v in e)
        for e in edges
    ):
        raise NotATree("edges must join vertices in 1..%d" % m)
    if any(u == v for u, v in edges):
        raise NotATree("self loops are not allowed")
    if len(edges) != m - 1 or len({frozenset(e) for e in edges}) != m - 1:
        raise NotATree("a tree on %d vertices has exactly %d distinct edges" % (m, m - 1))
    adj = {v: set() for v in range(1, m + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {1}
    queue = [1]
    while queue:
        for w in adj[queue.pop()]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != m:
        raise NotATree("edge set is not connected")
    return adj, m


def prufer_encode(edges, m: int | None = None) -> PruferCode:
    """Repeatedly delete the least-labeled leaf, recording its neighbor."""
    adj, m = _tree_adjacency(edges, m)
    code = []
    for _ in range(m - 2):
        leaf = min(v for v, nb in adj.items() if len(nb) == 1)
        neighbor = next(iter(adj[leaf]))
        code.append(neighbor)
        adj[neighbor].discard(leaf)
        del adj[leaf]
    return PruferCode(tuple(code), m)


def prufer_decode(code, m: int | None = None) -> tuple:
    """Inverse of prufer_encode; returns the canonical sorted edge tuple."""
    if isinstance(code, PruferCode):
        entries = code.entries
        if m is None:
            m = code.m
    else:
        entries = tuple(code)
    if m is None:
        m = len(entries) + 2
    if m < 2 or len(entries) != m - 2:
        raise InvalidCode("code length must be m - 2")
    if any(not isinstance(e, int) or not 1 <= e <= m for e in entries):
        raise InvalidCode("entries must lie in 1..%d" % m)
    degree = {v: 1 for v in range(1, m + 1)}
    for e in entries:
        degree[e] += 1
    edges = []
    active = set(range(1, m + 1))
    for e in entries:
        leaf = min(v for v in active if degree[v] == 1)
        edges.append((leaf, e))
        active.discard(leaf)
        degree[e] -= 1
    last = sorted(active)
    edges.append((last[0], last[1]))
    return _canonical_edges(edges)


@lru_cache(maxsize=16)
def enumerate_labeled_trees(m: int) -> tuple:
    """All unrooted trees on [m] as canonical edge tuples, found by
    testing every (m-1)-subset of possible edges for connectivity."""
    if m > LABELED_TREE_LIMIT:
        raise SizeLimit("m = %d exceeds the enumeration limit %d" % (m, LABELED_TREE_LIMIT))
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return ((),)
    all_edges = list(combinations(range(1, m + 1), 2))
    out = []
    for subset in combinations(all_edges, m - 1):
        parent = list(range(m + 1))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        acyclic = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
        if acyclic:
            out.append(_canonical_edges(subset))
    return tuple(out)


def count_degree_trees(m: int, degrees) -> int:
    """Number of trees on [m] where vertex i has degree degrees[i-1], by
    exhaustive enumeration."""
    degrees = tuple(degrees)
    if len(degrees) != m:
        raise ValueError("need one degree per vertex")
    if m == 1:
        return 1 if degrees == (0,) else 0
    count = 0
    for edges in enumerate_labeled_trees(m):
        deg = [0] * (m + 1)
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        if tuple(deg[1:]) == degrees:
            count += 1
    return count


def degree_trees_formula(m: int, degrees) -> int:
    """multinomial(m-2; d_1 - 1, ..., d_m - 1) when every d_i >= 1 and
    sum d_i = 2(m-1); zero otherwise."""
    degrees = tuple(degrees)
    if len(degrees) != m:
        raise ValueError("need one degree per vertex")
    if m < 2:
        raise ValueError("m must be at least 2")
    if any(d < 1 for d in degrees) or sum(degrees) != 2 * (m - 1):
        return 0
    return multinomial(m - 2, tuple(d - 1 for d in degrees))


# -- labeled rooted forests -------------------------------------------------------


@lru_cache(maxsize=8)
def _all_forest_parents(n: int) -> tuple:
    """Every acyclic parent assignment on [n]; parents[i-1] is the parent
    of vertex i, with 0 marking a root."""
    if n > LABELED_FOREST_LIMIT:
        raise SizeLimit("n = %d exceeds the enumeration limit %d" % (n, LABELED_FOREST_LIMIT))
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    parent = [0] * (n + 1)

    def search(i: int) -> None:
        if i > n:
            out.append(tuple(parent[1:]))
            return
        for p in range(n + 1):
            if p == i:
                continue
            if p and _chases_back(i, p):
                continue
            parent[i] = p
            search(i + 1)
        parent[i] = 0

    def _chases_back(start: int, p: int) -> bool:
        v = p
        while v:
            if v == start:
                return True
            if v > start:
                return False
            v = parent[v]
        return False

    search(1)
    return tuple(out)


def enumerate_labeled_forests(n: int, k: int) -> list:
    """All forests of k rooted trees on [n], as parent tuples with 0 at
    the roots."""
    if k < 1:
        raise ValueError("k must be positive")
    return [p for p in _all_forest_parents(n) if p.count(0) == k]


def _child_counts(parents: tuple) -> tuple:
    n = len(parents)
    kids = [0] * (n + 1)
    for p in parents:
        kids[p] += 1
    return tuple(kids[1:])


def count_labeled_forests(n: int, k: int, child_counts) -> int:
    """Number of k-root forests on [n] where vertex i has exactly
    child_counts[i-1] children, by exhaustive enumeration."""
    child_counts = tuple(child_counts)
    if len(child_counts) != n:
        raise ValueError("need one child count per vertex")
    return sum(
        1
        for p in enumerate_labeled_forests(n, k)
        if _child_counts(p) == child_counts
    )


def labeled_forest_child_formula(n: int, k: int, child_counts) -> int:
    """multinomial(n-1; k-1, e_1, ..., e_n) when sum e_i = n - k; zero
    otherwise."""
    child_counts = tuple(child_counts)
    if len(child_counts) != n:
        raise ValueError("need one child count per vertex")
    if k < 1 or any(e < 0 for e in child_counts) or sum(child_counts) != n - k:
        return 0
    return multinomial(n - 1, (k - 1,) + child_counts)


def labeled_forest_profile_count(n: int, k: int, profile) -> int:
    """Number of k-root forests on [n] with n_i vertices having i
    children, by exhaustive enumeration."""
    prof = _normalize_profile(profile)
    count = 0
    for p in enumerate_labeled_forests(n, k):
        kids = _child_counts(p)
        census: dict = {}
        for c in kids:
            census[c] = census.get(c, 0) + 1
        if census == prof:
            count += 1
    return count


def labeled_forest_shape_formula(n: int, k: int, profile) -> int:
    """(n-1)! / ((k-1)! prod_i (i!)^(n_i)): forests where the n_i
    vertices with i children carry the fixed labels 1..n_i."""
    prof = _normalize_profile(profile)
    if n < 1 or k < 1:
        return 0
    if sum(prof.values()) != n or sum(i * c for i, c in prof.items()) != n - k:
        return 0
    den = factorial(k - 1)
    for i, c in prof.items():
        den *= factorial(i) ** c
    value = Fraction(factorial(n - 1), den)
    if value.denominator != 1:
        raise AssertionError("shape count came out non-integer")
    return int(value)


def labeled_forest_profile_formula(n: int, k: int, profile) -> int:
    """Shape count times the multinomial placing the child-count classes
    on [n]."""
    prof = _normalize_profile(profile)
    shape = labeled_forest_shape_formula(n, k, prof)
    if shape == 0:
        return 0
    return shape * multinomial(n, _profile_parts(n, prof))


def ordered_profiles(n: int, k: int) -> list:
    """All child-count profiles satisfying sum n_i = n and
    sum i n_i = n - k, as sorted (i, n_i) tuples."""
    if n < 1 or k < 1 or n < k:
        return []
    target = n - k
    out = []

    def search(i: int, left_vertices: int, left_weight: int, acc: list) -> None:
        if left_weight == 0:
            if left_vertices >= 0:
                prof = dict(acc)
                if left_vertices:
                    prof[0] = prof.get(0, 0) + left_vertices
                out.append(tuple(sorted(prof.items())))
            return
        if i > left_weight or left_vertices <= 0:
            return
        search(i + 1, left_vertices, left_weight, acc)
        for c in range(1, left_weight // i + 1):
            if c > left_vertices:
                break
            search(i + 1, left_vertices - c, left_weight - c * i, acc + [(i, c)])

    search(1, n, target, [])
    return sorted(out)
