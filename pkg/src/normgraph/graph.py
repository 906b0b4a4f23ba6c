"""The projective norm graph P(p,t) as an implicit graph.

Vertices are pairs (alpha, a) with alpha in GF(p^(t-1)) and a a nonzero
residue mod p; (alpha, a) is adjacent to (beta, b) exactly when
norm(alpha + beta) = a*b.  Nothing materializes edges; neighborhoods are
computed from a norm lookup table and packed into integer bitsets when the
graph is small enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

from .ff import ExtElement, ExtField, fp_inv
from .parallel import chunk_list, chunk_ranges, run_tasks
from .polys import is_irreducible

# bitset-indexed neighborhoods (and edge export) refuse graphs above this
ENUM_LIMIT = 2**22

CENSUS_BUDGET = 10**7

MAX_COMMON_QUERY = 8


class Vertex(NamedTuple):
    alpha: ExtElement
    a: int


@dataclass
class BicliqueReport:
    left_distinct: bool
    right_distinct: bool
    disjoint: bool
    pairs_checked: int
    failed_pairs: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.left_distinct
            and self.right_distinct
            and self.disjoint
            and not self.failed_pairs
        )


@dataclass
class BicliqueWitness:
    left: list
    right: list
    report: BicliqueReport


def _smallest_irreducible(p: int, k: int) -> list[int]:
    # scan monic degree-k polynomials in integer-encoding order of their
    # lower coefficients; first irreducible wins, so the choice is stable
    for enc in range(p**k):
        coeffs = []
        n = enc
        for _ in range(k):
            coeffs.append(n % p)
            n //= p
        coeffs.append(1)
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError(f"no irreducible of degree {k} over F_{p}")


def make_graph(p: int, t: int, modulus=None) -> "NormGraph":
    """P(p,t) over GF(p^(t-1)); the modulus defaults to the smallest
    irreducible of degree t-1 under the integer coefficient encoding."""
    if t < 3:
        raise ValueError(f"t must be >= 3, got {t}")
    k = t - 1
    if modulus is None:
        modulus = _smallest_irreducible(p, k)
    field = ExtField(p, k, modulus)  # validates p prime + irreducibility
    return NormGraph(p, t, field)


class NormGraph:
    def __init__(self, p: int, t: int, field: ExtField):
        if field.p != p or field.k != t - 1:
            raise ValueError("field does not match the graph parameters")
        self.p = p
        self.t = t
        self.field = field
        self.qprime = p ** (t - 1)
        self.n = self.qprime * (p - 1)
        self._elements: list[ExtElement] | None = None
        self._norms: list[int] | None = None
        self._bitset_cache: dict[int, int] = {}

    # -- vertex indexing -------------------------------------------------

    def check_vertex(self, v: Vertex) -> Vertex:
        alpha, a = v
        if (
            not isinstance(a, int)
            or not 1 <= a < self.p
            or len(alpha) != self.field.k
            or any(not 0 <= c < self.p for c in alpha)
        ):
            raise ValueError(f"malformed vertex {v!r} for P({self.p},{self.t})")
        return v

    def vertex_id(self, v: Vertex) -> int:
        return self.field.index(v.alpha) * (self.p - 1) + (v.a - 1)

    def vertex_from_id(self, vid: int) -> Vertex:
        if not 0 <= vid < self.n:
            raise ValueError(f"vertex id {vid} out of range [0, {self.n})")
        idx, rem = divmod(vid, self.p - 1)
        return Vertex(self.field.element_from_index(idx), rem + 1)

    def vertices(self):
        for vid in range(self.n):
            yield self.vertex_from_id(vid)

    # -- adjacency --------------------------------------------------------

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        """Norm adjacency between two distinct vertices; the norm runs
        through both computation routes (verification path)."""
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            raise ValueError("adjacency is defined on distinct vertices only")
        s = self.field.add(u.alpha, v.alpha)
        return self.field.norm(s) == u.a * v.a % self.p

    def _require_enumerable(self) -> None:
        if self.n > ENUM_LIMIT:
            raise ValueError(
                f"graph has {self.n} vertices, above the enumeration guard {ENUM_LIMIT}"
            )

    def _element_list(self) -> list[ExtElement]:
        if self._elements is None:
            self._require_enumerable()
            self._elements = list(self.field.elements())
        return self._elements

    def _norm_table(self) -> list[int]:
        # bulk path: one conjugate-product norm per field element
        if self._norms is None:
            self._norms = [self.field.norm_conj(e) for e in self._element_list()]
        return self._norms

    def _bitset_for(self, vid: int, cache: bool = True) -> int:
        if vid in self._bitset_cache:
            return self._bitset_cache[vid]
        p = self.p
        u = self.vertex_from_id(vid)
        els = self._element_list()
        norms = self._norm_table()
        inv_a = fp_inv(u.a, p)
        add = self.field.add
        index = self.field.index
        bits = 0
        for j, beta in enumerate(els):
            nv = norms[index(add(u.alpha, beta))]
            if nv == 0:
                continue  # beta = -alpha: the one non-neighbor direction
            b = nv * inv_a % p
            bits |= 1 << (j * (p - 1) + (b - 1))
        bits &= ~(1 << vid)  # simple graph: drop the loop if present
        if cache:
            self._bitset_cache[vid] = bits
        return bits

    def _all_bitsets(self) -> list[int]:
        return [self._bitset_for(vid) for vid in range(self.n)]

    def neighbors(self, u: Vertex) -> list[Vertex]:
        """All neighbors, ascending by vertex id."""
        self.check_vertex(u)
        bits = self._bitset_for(self.vertex_id(u), cache=False)
        return [self.vertex_from_id(i) for i in _iter_bits(bits)]

    def degree(self, u: Vertex) -> int:
        self.check_vertex(u)
        return self._bitset_for(self.vertex_id(u), cache=False).bit_count()

    def common_neighbors(self, S: list[Vertex]) -> list[Vertex]:
        """Vertices outside S adjacent to every member of S, ascending."""
        if not 1 <= len(S) <= MAX_COMMON_QUERY:
            raise ValueError(f"query size must be in 1..{MAX_COMMON_QUERY}")
        ids = [self.vertex_id(self.check_vertex(s)) for s in S]
        if len(set(ids)) != len(ids):
            raise ValueError("query vertices must be distinct")
        if self.n <= ENUM_LIMIT:
            inter = self._bitset_for(ids[0], cache=False)
            for vid in ids[1:]:
                inter &= self._bitset_for(vid, cache=False)
            for vid in ids:
                inter &= ~(1 << vid)
            return [self.vertex_from_id(i) for i in _iter_bits(inter)]
        return self._common_by_scan(S, set(ids))

    def _common_by_scan(self, S: list[Vertex], id_set: set[int]) -> list[Vertex]:
        # no bitsets: walk candidate betas and solve the |S| norm equations
        p = self.p
        norm = self.field.norm_conj
        add = self.field.add
        first = S[0]
        inv_a = fp_inv(first.a, p)
        out = []
        for j in range(self.qprime):
            beta = self.field.element_from_index(j)
            nv = norm(add(first.alpha, beta))
            if nv == 0:
                continue
            b = nv * inv_a % p
            if j * (p - 1) + (b - 1) in id_set:
                continue
            if all(norm(add(s.alpha, beta)) == s.a * b % p for s in S[1:]):
                out.append(Vertex(beta, b))
        return out

    # -- biclique verification ---------------------------------------------

    def verify_biclique(self, L: list[Vertex], R: list[Vertex]) -> BicliqueWitness:
        l_ids = [self.vertex_id(self.check_vertex(v)) for v in L]
        r_ids = [self.vertex_id(self.check_vertex(v)) for v in R]
        report = BicliqueReport(
            left_distinct=len(set(l_ids)) == len(l_ids),
            right_distinct=len(set(r_ids)) == len(r_ids),
            disjoint=not set(l_ids) & set(r_ids),
            pairs_checked=len(L) * len(R),
        )
        for u, uid in zip(L, l_ids):
            for v, vid in zip(R, r_ids):
                if uid == vid or not self.adjacent(u, v):
                    report.failed_pairs.append((uid, vid))
        return BicliqueWitness(left=list(L), right=list(R), report=report)

    # -- censuses ------------------------------------------------------------

    def census_max_common(
        self, k: int, budget: int = CENSUS_BUDGET, jobs: int = 1
    ) -> tuple[int, tuple[int, ...]]:
        """Exhaustive max of |common neighborhood| over all k-subsets.

        Returns (max size, the colex-first maximizing subset as vertex ids).
        Refuses when C(n, k) exceeds the budget."""
        if k < 1 or k > self.n:
            raise ValueError(f"subset size {k} out of range")
        total = math.comb(self.n, k)
        if total > budget:
            raise ValueError(
                f"census over C({self.n},{k}) = {total} subsets exceeds budget {budget}"
            )
        bitsets = self._all_bitsets()
        parts = 1 if jobs <= 1 else jobs * 4
        tasks = [
            (bitsets, k, start, count)
            for start, count in chunk_ranges(total, parts)
        ]
        results = run_tasks(_census_worker, tasks, jobs)
        best, best_subset = -1, ()
        for size, subset in results:  # chunk order = colex order, first max wins
            if size > best:
                best, best_subset = size, subset
        return best, best_subset

    def sample_max_common(
        self,
        k: int,
        trials: int,
        seed: int,
        jobs: int = 1,
        planted: tuple = (),
    ) -> tuple[int, tuple[int, ...]]:
        """Max |common neighborhood| over seeded random k-subsets (plus any
        planted id-subsets).  Trials are pre-generated from one stream, so
        the result is identical for every worker count."""
        if trials < 1:
            raise ValueError("trials must be >= 1")
        if k < 1 or k > self.n:
            raise ValueError(f"subset size {k} out of range")
        import random

        rng = random.Random(seed)
        subsets = [tuple(sorted(rng.sample(range(self.n), k))) for _ in range(trials)]
        for extra in planted:
            ids = tuple(sorted(extra))
            if len(ids) != k or len(set(ids)) != k:
                raise ValueError(f"planted subset {extra!r} is not a {k}-subset")
            subsets.append(ids)
        bitsets = self._all_bitsets()
        parts = 1 if jobs <= 1 else jobs * 4
        tasks = [(bitsets, chunk) for chunk in chunk_list(subsets, parts)]
        results = run_tasks(_sample_worker, tasks, jobs)
        best, best_subset = -1, ()
        for size, subset in results:
            if size > best:
                best, best_subset = size, subset
        return best, best_subset

    # -- export -----------------------------------------------------------

    def edge_lines(self):
        """Edges as 'id_u id_v' text lines, ascending, loops omitted."""
        self._require_enumerable()
        for uid in range(self.n):
            bits = self._bitset_for(uid, cache=False) >> (uid + 1)
            for off in _iter_bits(bits):
                yield f"{uid} {uid + 1 + off}"

    def edge_count(self) -> int:
        self._require_enumerable()
        total = 0
        for uid in range(self.n):
            total += self._bitset_for(uid, cache=False).bit_count()
        assert total % 2 == 0
        return total // 2


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _subset_census(bitsets: list[int], subset: list[int]) -> int:
    inter = bitsets[subset[0]]
    mask = 1 << subset[0]
    for s in subset[1:]:
        inter &= bitsets[s]
        mask |= 1 << s
    return (inter & ~mask).bit_count()


def _colex_unrank(rank: int, k: int) -> list[int]:
    out = []
    for i in range(k, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        out.append(c)
        rank -= math.comb(c, i)
    out.reverse()
    return out


def _census_worker(task) -> tuple[int, tuple[int, ...]]:
    bitsets, k, start, count = task
    subset = _colex_unrank(start, k)
    best, best_subset = -1, ()
    for _ in range(count):
        size = _subset_census(bitsets, subset)
        if size > best:
            best, best_subset = size, tuple(subset)
        # colex successor
        i = 0
        while i < k - 1 and subset[i] + 1 == subset[i + 1]:
            i += 1
        subset[i] += 1
        for j in range(i):
            subset[j] = j
    return best, best_subset


def _sample_worker(task) -> tuple[int, tuple[int, ...]]:
    bitsets, subsets = task
    best, best_subset = -1, ()
    for subset in subsets:
        size = _subset_census(bitsets, list(subset))
        if size > best:
            best, best_subset = size, subset
    return best, best_subset


# -- witness serialization ---------------------------------------------------


def vertex_to_obj(v: Vertex) -> dict:
    return {"alpha": list(v.alpha), "a": v.a}


def vertex_from_obj(G: NormGraph, obj) -> Vertex:
    if not isinstance(obj, dict) or "alpha" not in obj or "a" not in obj:
        raise ValueError("vertex object needs 'alpha' and 'a'")
    alpha = obj["alpha"]
    if not isinstance(alpha, list) or len(alpha) != G.field.k:
        raise ValueError(f"alpha must be a list of {G.field.k} ints")
    return G.check_vertex(Vertex(tuple(int(c) for c in alpha), int(obj["a"])))


def witness_to_json(G: NormGraph, L, R, verified: bool) -> dict:
    return {
        "p": G.p,
        "t": G.t,
        "modulus": list(G.field.modulus),
        "L": [vertex_to_obj(v) for v in L],
        "R": [vertex_to_obj(v) for v in R],
        "verified": bool(verified),
    }


def witness_from_json(data: dict) -> tuple[NormGraph, list[Vertex], list[Vertex], bool]:
    for key in ("p", "t", "modulus", "L", "R", "verified"):
        if key not in data:
            raise ValueError(f"witness JSON is missing {key!r}")
    G = make_graph(int(data["p"]), int(data["t"]), [int(c) for c in data["modulus"]])
    L = [vertex_from_obj(G, v) for v in data["L"]]
    R = [vertex_from_obj(G, v) for v in data["R"]]
    return G, L, R, bool(data["verified"])
