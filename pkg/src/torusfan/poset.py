"""Simplicial posets: validation, face counts, and surgery.

A simplicial poset is a finite ranked poset with a least element 0-hat in
which every lower segment [0-hat, x] is a boolean lattice.  Equivalently
it is the face poset of a simplicial cell complex: closed cells are
simplices, but two distinct cells may share their entire vertex set, so
cells are identified by ids rather than vertex sets.

An element of rank k corresponds to a (k-1)-dimensional cell; the rank-1
elements are the vertices.  ``atoms(x)`` is the vertex set of the cell x.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import comb

DEFAULT_MAX_RANK = 8
MAX_SUBDIVISION_RANK = 6


class TorusfanError(Exception):
    pass


class PosetError(TorusfanError):
    """Raised when a cell table fails simplicial-poset validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class RankBoundError(TorusfanError):
    pass


def max_rank_bound():
    """Largest accepted poset rank; TORUSFAN_MAX_RANK overrides the default."""
    raw = os.environ.get("TORUSFAN_MAX_RANK")
    if raw is None:
        return DEFAULT_MAX_RANK
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_RANK


@dataclass(frozen=True)
class Cell:
    id: int
    rank: int
    covers: tuple
    label: str = None

    def named(self):
        return self.label if self.label is not None else f"#{self.id}"


def poset_violations(rank, cells):
    """All invariant violations of a raw cell table, as readable strings."""
    problems = []
    if rank < 0:
        return [f"negative rank {rank}"]
    if rank > max_rank_bound():
        return [f"rank {rank} exceeds the configured bound {max_rank_bound()}"]
    table = {}
    for c in cells:
        if c.id in table:
            problems.append(f"duplicate id {c.id}")
        table[c.id] = c
    if problems:
        return problems
    roots = [c for c in table.values() if c.rank == 0]
    if len(roots) != 1:
        problems.append(f"exactly one rank-0 element required, found {len(roots)}")
        return problems
    root = roots[0]
    if root.covers:
        problems.append(f"root {root.named()} must cover nothing")
    ranks = [c.rank for c in table.values()]
    if max(ranks) != rank:
        problems.append(f"declared rank {rank} but maximal element rank is {max(ranks)}")
    for c in table.values():
        if c.rank < 0 or c.rank > rank:
            problems.append(f"{c.named()}: rank {c.rank} out of range 0..{rank}")
        if c.rank >= 1:
            if len(set(c.covers)) != len(c.covers) or len(c.covers) != c.rank:
                problems.append(
                    f"{c.named()}: cover count is {len(c.covers)}, expected {c.rank}")
                continue
            for d in c.covers:
                if d not in table:
                    problems.append(f"{c.named()}: covers unknown id {d}")
                elif table[d].rank != c.rank - 1:
                    problems.append(
                        f"{c.named()}: covers {table[d].named()} of rank "
                        f"{table[d].rank}, expected {c.rank - 1}")
    if problems:
        return problems

    # cover lists are rank-strict, so the order is automatically acyclic;
    # build lower sets bottom-up
    downsets = {root.id: frozenset({root.id})}
    for c in sorted(table.values(), key=lambda c: c.rank):
        if c.rank == 0:
            continue
        down = {c.id}
        for d in c.covers:
            down.update(downsets[d])
        downsets[c.id] = frozenset(down)
    atom_ids = {c.id for c in table.values() if c.rank == 1}
    atoms = {i: frozenset(downsets[i] & atom_ids) for i in table}

    for c in table.values():
        k = c.rank
        if len(atoms[c.id]) != k:
            problems.append(
                f"{c.named()}: non-boolean lower segment ({len(atoms[c.id])} "
                f"vertices for rank {k})")
            continue
        segment = downsets[c.id]
        by_rank_count = {}
        seen_atom_sets = set()
        injective = True
        for y in segment:
            ry = table[y].rank
            by_rank_count[ry] = by_rank_count.get(ry, 0) + 1
            key = atoms[y]
            if key in seen_atom_sets:
                injective = False
            seen_atom_sets.add(key)
        if not injective:
            problems.append(
                f"{c.named()}: non-boolean lower segment (two faces share a "
                "vertex set)")
            continue
        for j in range(k + 1):
            if by_rank_count.get(j, 0) != comb(k, j):
                problems.append(
                    f"{c.named()}: non-boolean lower segment "
                    f"({by_rank_count.get(j, 0)} elements of rank {j}, "
                    f"expected {comb(k, j)})")
                break
    return problems


class SimplicialPoset:
    """A validated simplicial poset.  Immutable; all surgery returns new values."""

    __slots__ = ("rank", "cells", "root", "_downsets", "_upsets", "_atoms",
                 "_by_rank", "_join_cache", "_meet_cache")

    def __init__(self, rank, cells):
        cells = tuple(cells)
        problems = poset_violations(rank, cells)
        if problems:
            raise PosetError(problems)
        self.rank = rank
        self.cells = {c.id: c for c in cells}
        self.root = next(c.id for c in cells if c.rank == 0)
        downsets = {self.root: frozenset({self.root})}
        for c in sorted(cells, key=lambda c: c.rank):
            if c.rank == 0:
                continue
            down = {c.id}
            for d in c.covers:
                down.update(downsets[d])
            downsets[c.id] = frozenset(down)
        self._downsets = downsets
        ups = {i: {i} for i in self.cells}
        for i, down in downsets.items():
            for j in down:
                ups[j].add(i)
        self._upsets = {i: frozenset(s) for i, s in ups.items()}
        atom_ids = {c.id for c in cells if c.rank == 1}
        self._atoms = {i: frozenset(downsets[i] & atom_ids) for i in self.cells}
        by_rank = [[] for _ in range(rank + 1)]
        for c in cells:
            by_rank[c.rank].append(c.id)
        self._by_rank = tuple(tuple(sorted(ids)) for ids in by_rank)
        self._join_cache = {}
        self._meet_cache = {}

    # ----- basic queries -------------------------------------------------

    def elements(self):
        """All ids, sorted by (rank, id)."""
        return [i for ids in self._by_rank for i in ids]

    def __len__(self):
        return len(self.cells)

    def cell(self, x):
        return self.cells[x]

    def rank_of(self, x):
        return self.cells[x].rank

    def label_of(self, x):
        return self.cells[x].label

    def covers(self, x):
        return self.cells[x].covers

    def by_rank(self, k):
        return self._by_rank[k] if 0 <= k <= self.rank else ()

    def vertices(self):
        return self.by_rank(1)

    def tops(self):
        return self.by_rank(self.rank)

    def maximal_elements(self):
        return tuple(sorted(x for x in self.cells if self._upsets[x] == {x}))

    def is_pure(self):
        return all(self.rank_of(x) == self.rank for x in self.maximal_elements())

    def leq(self, x, y):
        return x in self._downsets[y]

    def downset(self, x):
        return self._downsets[x]

    def upset(self, x):
        return self._upsets[x]

    def atoms(self, x):
        """Ids of the rank-1 elements below x (the vertex set of the cell)."""
        return self._atoms[x]

    def is_simplicial_complex(self):
        """True when every cell is determined by its vertex set."""
        seen = set()
        for x in self.cells:
            key = self._atoms[x]
            if key in seen:
                return False
            seen.add(key)
        return True

    # ----- meets and joins -----------------------------------------------

    def join_set(self, x, y):
        """All minimal common upper bounds of x and y, sorted."""
        key = (x, y) if x <= y else (y, x)
        hit = self._join_cache.get(key)
        if hit is not None:
            return hit
        common = self._upsets[x] & self._upsets[y]
        minimal = tuple(sorted(
            z for z in common
            if not any(w != z and w in common for w in self._downsets[z])))
        self._join_cache[key] = minimal
        return minimal

    def meet(self, x, y):
        """The unique greatest common lower bound, or None if not unique.

        Uniqueness is guaranteed whenever ``join_set(x, y)`` is non-empty.
        """
        key = (x, y) if x <= y else (y, x)
        if key in self._meet_cache:
            return self._meet_cache[key]
        common = self._downsets[x] & self._downsets[y]
        maximal = [z for z in common
                   if not any(w != z and z in self._downsets[w] for w in common)]
        out = maximal[0] if len(maximal) == 1 else None
        self._meet_cache[key] = out
        return out

    # ----- numerical invariants -------------------------------------------

    def f_vector(self):
        """f_i = number of (i)-dimensional cells, i.e. rank-(i+1) elements."""
        return tuple(len(self._by_rank[k]) for k in range(1, self.rank + 1))

    def h_vector(self):
        """Binomial transform of the f-vector.

        Defined by h_0 t^n + ... + h_n = (t-1)^n + f_0 (t-1)^{n-1} + ... + f_{n-1}.
        """
        n = self.rank
        f = self.f_vector()
        coeff = [0] * (n + 1)  # coeff[d] multiplies t^d
        for i in range(n + 1):
            c = 1 if i == 0 else f[i - 1]
            for d in range(n - i + 1):
                coeff[d] += c * comb(n - i, d) * (-1) ** (n - i - d)
        return tuple(coeff[n - j] for j in range(n + 1))

    def euler_characteristic(self):
        return sum((-1) ** i * fi for i, fi in enumerate(self.f_vector()))

    # ----- links -----------------------------------------------------------

    def link(self, x):
        """The upper set of x, re-ranked so x becomes the least element."""
        shift = self.rank_of(x)
        members = sorted(self._upsets[x])
        cells = []
        for y in members:
            c = self.cells[y]
            covers = (c.covers if c.rank - shift > 0 else ())
            covers = tuple(d for d in covers if self.leq(x, d))
            cells.append(Cell(y, c.rank - shift, covers, c.label))
        return SimplicialPoset(self.rank - shift, cells)

def validate(rank, cells):
    """Build a SimplicialPoset, raising PosetError with all violations."""
    return SimplicialPoset(rank, cells)


# ---------------------------------------------------------------------------
# builders


def point_poset():
    return SimplicialPoset(0, [Cell(0, 0, ())])


def _cells_from_subsets(subsets):
    """Cell table for a complex whose cells are the given vertex subsets."""
    subsets = sorted(subsets, key=lambda s: (len(s), s))
    ids = {(): 0}
    cells = [Cell(0, 0, ())]
    for s in subsets:
        ids[s] = len(cells)
        covers = tuple(sorted(ids[t] for t in itertools.combinations(s, len(s) - 1)))
        label = "".join(str(v) for v in s)
        cells.append(Cell(ids[s], len(s), covers, label))
    return cells, ids


def simplex_boundary(n):
    """Face poset of the boundary of the n-simplex (the CP^n orbit poset)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    verts = range(1, n + 2)
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(verts, k)]
    return SimplicialPoset(n, _cells_from_subsets(subsets)[0])


def simplex_poset(n):
    """Face poset of the full (n-1)-simplex on n vertices (a disc)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    verts = range(1, n + 1)
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(verts, k)]
    return SimplicialPoset(n, _cells_from_subsets(subsets)[0])


def sphere_poset(n):
    """Two (n-1)-simplices glued along their entire boundaries (the S^{2n}
    orbit poset): rank n, with two top cells sharing all n vertices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    verts = tuple(range(1, n + 1))
    subsets = [s for k in range(1, n) for s in itertools.combinations(verts, k)]
    cells, ids = _cells_from_subsets(subsets)
    boundary = tuple(sorted(ids[t] for t in itertools.combinations(verts, n - 1)))
    nxt = len(cells)
    for label in ("p", "q"):
        cells.append(Cell(nxt, n, boundary, label))
        nxt += 1
    return SimplicialPoset(n, cells)


def sphere_product_poset(k, l):
    """Orbit poset of S^{2k} x S^{2l}, built as a join of sphere posets."""
    if k < 1 or l < 1:
        raise ValueError("both factors must have rank >= 1")
    return join(sphere_poset(k), sphere_poset(l))


# ---------------------------------------------------------------------------
# surgery


def join(p1, p2):
    """Join of simplicial posets: elements are pairs, ranks add.

    The h-polynomial of the join is the product of the h-polynomials.
    """
    pairs = [(x, y) for x in p1.cells for y in p2.cells]
    pairs.sort(key=lambda xy: (p1.rank_of(xy[0]) + p2.rank_of(xy[1]), xy))
    ids = {xy: i for i, xy in enumerate(pairs)}
    cells = []
    for (x, y), i in ids.items():
        r = p1.rank_of(x) + p2.rank_of(y)
        covers = [ids[(x2, y)] for x2 in p1.covers(x)]
        covers += [ids[(x, y2)] for y2 in p2.covers(y)]
        parts = []
        if p1.rank_of(x) > 0:
            parts.append("L" + p1.cell(x).named())
        if p2.rank_of(y) > 0:
            parts.append("R" + p2.cell(y).named())
        cells.append(Cell(i, r, tuple(sorted(covers)), "|".join(parts) or None))
    return SimplicialPoset(p1.rank + p2.rank, cells)


def connected_sum(p1, top1, p2, top2, matching=None):
    """Glue p1 and p2 by removing one top cell from each and identifying
    their boundaries along a vertex bijection.

    ``matching`` maps atoms of top1 to atoms of top2; by default the sorted
    vertex lists are matched in order.  The interior entries of the
    h-vector add; this is checked.
    """
    n = p1.rank
    if p1 is p2:
        raise PosetError(["connected sum needs two distinct poset values; "
                          "build or load the second operand separately"])
    if p2.rank != n:
        raise PosetError([f"rank mismatch: {p1.rank} vs {p2.rank}"])
    if p1.rank_of(top1) != n or p2.rank_of(top2) != n:
        raise PosetError(["chosen cells are not top-dimensional"])
    a1 = sorted(p1.atoms(top1))
    a2 = sorted(p2.atoms(top2))
    if matching is None:
        matching = dict(zip(a1, a2))
    if sorted(matching) != a1 or sorted(matching.values()) != a2:
        raise PosetError(["matching is not a bijection of the top cells' vertices"])
    inverse = {v: k for k, v in matching.items()}

    by_atoms_1 = {p1.atoms(y): y for y in p1.downset(top1) if y != top1}
    identified = {}
    for y in p2.downset(top2):
        if y == top2:
            continue
        target = frozenset(inverse[v] for v in p2.atoms(y))
        identified[y] = by_atoms_1[target]

    cells = [c for c in p1.cells.values() if c.id != top1]
    fresh = max(p1.cells) + 1
    rename = {}
    for y in sorted(p2.cells, key=lambda y: (p2.rank_of(y), y)):
        if y == top2 or y in identified:
            continue
        rename[y] = fresh
        fresh += 1

    def image(y):
        return identified.get(y, rename.get(y))

    for y, new_id in rename.items():
        c = p2.cell(y)
        covers = tuple(sorted(image(d) for d in c.covers))
        cells.append(Cell(new_id, c.rank, covers, c.label))
    try:
        out = SimplicialPoset(n, cells)
    except PosetError as err:
        raise PosetError(["identification produced a non-simplicial poset"]
                         + err.violations)

    h, h1, h2 = out.h_vector(), p1.h_vector(), p2.h_vector()
    expect = [h1[i] + h2[i] for i in range(n + 1)]
    expect[0] -= 1
    expect[n] -= 1
    if list(h) != expect:
        raise PosetError([f"h-vector additivity failed: {h} vs {tuple(expect)}"])
    return out


def barycentric_subdivision(p, force=False):
    """The order complex of the poset minus its least element.

    Vertices are the elements of the poset, k-cells are the chains of
    length k+1; the result is always a simplicial complex.  Refused above
    rank 6 unless forced (factorial growth).
    """
    if p.rank > MAX_SUBDIVISION_RANK and not force:
        raise RankBoundError(
            f"barycentric subdivision refused at rank {p.rank} (> "
            f"{MAX_SUBDIVISION_RANK}); pass force=True to override")
    chains_by_top = {}
    all_chains = []
    for x in p.elements():
        if x == p.root:
            continue
        cs = [(x,)]
        for y in p.downset(x):
            if y != x and y != p.root:
                cs.extend(c + (x,) for c in chains_by_top[y])
        chains_by_top[x] = cs
        all_chains.extend(cs)
    all_chains.sort(key=lambda c: (len(c), c))
    ids = {c: i + 1 for i, c in enumerate(all_chains)}
    cells = [Cell(0, 0, ())]
    for c, i in ids.items():
        if len(c) == 1:
            covers = (0,)
            label = p.cell(c[0]).named()
        else:
            covers = tuple(sorted(ids[c[:j] + c[j + 1:]] for j in range(len(c))))
            label = None
        cells.append(Cell(i, len(c), covers, label))
    return SimplicialPoset(p.rank, cells)


def stellar_subdivision(p, x):
    """Stellar subdivision at the cell x: the star of x is removed and
    replaced by the cone, over a new vertex, on the boundary of the star.

    In a cell complex two cells w and x may span several minimal common
    upper bounds, and each such cell z contributes its own copy of the
    coned cell; new cells are therefore indexed by pairs (w, z) with
    w not above x and z in join_set(w, x).  Preserves the Euler
    characteristic (checked) and the rank.
    """
    if x == p.root:
        raise PosetError(["cannot subdivide at the least element"])
    removed = p.upset(x)
    surviving = [c for c in p.cells.values() if c.id not in removed]

    new_cells = []  # (w, z) pairs
    for w in p.elements():
        if w in removed:
            continue
        for z in p.join_set(w, x):
            new_cells.append((w, z))
    new_cells.sort(key=lambda wz: (p.rank_of(wz[0]), wz))
    fresh = max(p.cells) + 1
    ids = {}
    for wz in new_cells:
        ids[wz] = fresh
        fresh += 1

    # unique element of [0-hat, z] with a prescribed vertex set
    atom_index = {}

    def join_inside(w2, z):
        if z not in atom_index:
            atom_index[z] = {p.atoms(u): u for u in p.downset(z)}
        return atom_index[z][p.atoms(w2) | p.atoms(x)]

    cells = list(surviving)
    for (w, z), i in ids.items():
        rk = p.rank_of(w) + 1
        if w == p.root:
            covers = (p.root,)
        else:
            covers = [w]
            covers += [ids[(w2, join_inside(w2, z))] for w2 in p.covers(w)]
            covers = tuple(sorted(covers))
        label = "b" if w == p.root else None
        cells.append(Cell(i, rk, covers, label))
    out = SimplicialPoset(p.rank, cells)
    if out.euler_characteristic() != p.euler_characteristic():
        raise PosetError(["stellar subdivision changed the Euler characteristic"])
    return out


# ---------------------------------------------------------------------------
# isomorphism


def are_isomorphic(p1, p2):
    """Backtracking poset isomorphism test (intended for small posets)."""
    if p1.rank != p2.rank or len(p1) != len(p2):
        return False
    for k in range(p1.rank + 1):
        if len(p1.by_rank(k)) != len(p2.by_rank(k)):
            return False
    cocovers1 = {x: [] for x in p1.cells}
    cocovers2 = {x: [] for x in p2.cells}
    for c in p1.cells.values():
        for d in c.covers:
            cocovers1[d].append(c.id)
    for c in p2.cells.values():
        for d in c.covers:
            cocovers2[d].append(c.id)
    # map top-down so every element is constrained by its mapped cocovers
    order = sorted(p1.cells, key=lambda x: (-p1.rank_of(x), x))
    mapping = {}
    used = set()

    def extend(idx):
        if idx == len(order):
            return True
        x = order[idx]
        need = {mapping[z] for z in cocovers1[x]}
        for y in p2.by_rank(p1.rank_of(x)):
            if y in used or len(cocovers2[y]) != len(cocovers1[x]):
                continue
            if set(cocovers2[y]) & used != need:
                continue
            mapping[x] = y
            used.add(y)
            if extend(idx + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# JSON wire format


def to_json_dict(p):
    """Canonical JSON form: cells sorted by (rank, id)."""
    cells = []
    for x in p.elements():
        c = p.cell(x)
        entry = {"id": c.id, "rank": c.rank, "covers": sorted(c.covers)}
        if c.label is not None:
            entry["label"] = c.label
        cells.append(entry)
    return {"rank": p.rank, "cells": cells}


def from_json_dict(data):
    if not isinstance(data, dict) or "rank" not in data or "cells" not in data:
        raise ValueError("poset JSON needs 'rank' and 'cells'")
    if not isinstance(data["rank"], int) or not isinstance(data["cells"], list):
        raise ValueError("poset JSON field types are wrong")
    cells = []
    for raw in data["cells"]:
        try:
            cells.append(Cell(int(raw["id"]), int(raw["rank"]),
                              tuple(int(d) for d in raw["covers"]),
                              raw.get("label")))
        except (KeyError, TypeError, ValueError) as err:
            raise ValueError(f"bad cell entry {raw!r}: {err}")
    return SimplicialPoset(data["rank"], cells)
