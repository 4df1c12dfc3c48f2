"""Bound quiver algebras kQ/I over a prime field.

A quiver is a finite directed graph; paths compose left to right in
traversal order, and the product p*q of two paths means "q first, then p"
(function composition order), so a relation written as the arrow sequence
[a, b] is the length-two path that traverses a and then b.

The quotient by the relation ideal is computed by linear elimination on the
space of all paths of length <= max_path_len: relation multiples are row
reduced with longer (then lexicographically larger) paths eliminated in
favour of shorter ones.  The build certifies that rad^L is contained in the
ideal for some L <= max_path_len; otherwise the ideal cannot be confirmed
admissible at this bound and NotAdmissible is raised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tiltbench.linalg import PrimeField

_PATH_CAP = 20000
_ROW_CAP = 200000


class NotAdmissible(Exception):
    """The relation ideal could not be certified admissible at the bound."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices: list[str], arrows: list[tuple[str, str, str]]):
        if not vertices:
            raise ValueError("quiver needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex names")
        self.vertices = list(vertices)
        self.vertex_index = {v: i for i, v in enumerate(vertices)}
        self.arrows: list[Arrow] = []
        seen = set()
        for a in arrows:
            name, src, dst = (a.name, a.source, a.target) if isinstance(a, Arrow) else a
            if name in seen:
                raise ValueError(f"duplicate arrow name {name!r}")
            if src not in self.vertex_index or dst not in self.vertex_index:
                raise ValueError(f"arrow {name!r} references unknown vertex")
            seen.add(name)
            self.arrows.append(Arrow(name, src, dst))
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def reversed(self) -> "Quiver":
        return Quiver(self.vertices, [(a.name, a.target, a.source) for a in self.arrows])


# A path is (source_vertex_index, tuple_of_arrow_indices) with arrows listed
# in traversal order; the empty tuple is the trivial path at its vertex.
Path = tuple[int, tuple[int, ...]]


def path_target(quiver: Quiver, path: Path) -> int:
    src, arrows = path
    if not arrows:
        return src
    return quiver.vertex_index[quiver.arrows[arrows[-1]].target]


def path_label(quiver: Quiver, path: Path) -> str:
    src, arrows = path
    if not arrows:
        return f"e_{quiver.vertices[src]}"
    return "".join(quiver.arrows[i].name for i in reversed(arrows))


def _path_sort_key(quiver: Quiver, path: Path):
    src, arrows = path
    return (len(arrows), tuple(quiver.arrows[i].name for i in arrows), src)


class BoundQuiverAlgebra:
    """Finite-dimensional quotient of a path algebra, with multiplication table.

    Attributes:
        basis_paths: residue paths spanning the algebra, sorted by
            length-then-lexicographic order on arrow names.
        table: structure constants, table[i, j, k] = coefficient of basis k
            in the product (basis i) * (basis j).
        radical_length: certified L with rad^L contained in the ideal.
    """

    def __init__(self, quiver: Quiver, field: PrimeField, basis_paths: list[Path],
                 table: np.ndarray, radical_length: int, relations, max_path_len: int):
        self.quiver = quiver
        self.field = field
        self.basis_paths = basis_paths
        self.table = table
        self.radical_length = radical_length
        self.relations = relations
        self.max_path_len = max_path_len
        self.dim = len(basis_paths)
        self.path_position = {p: i for i, p in enumerate(basis_paths)}
        self.trivial_positions = [self.path_position[(v, ())] for v in range(quiver.num_vertices)]
        self._opposite: BoundQuiverAlgebra | None = None
        self._reverse_map: np.ndarray | None = None
        self._left_mult_cache: dict[int, np.ndarray] = {}
        self._hom_cache: dict = {}

    # -- structure ----------------------------------------------------------

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two coordinate vectors."""
        return np.einsum("i,j,ijk->k", x, y, self.table) % self.field.p

    def unit(self) -> np.ndarray:
        u = np.zeros(self.dim, dtype=np.int64)
        for t in self.trivial_positions:
            u[t] = 1
        return u

    def arrow_left_mult(self, arrow_idx: int) -> np.ndarray:
        """Matrix of left multiplication by an arrow on the path basis."""
        cached = self._left_mult_cache.get(arrow_idx)
        if cached is None:
            pos = self.path_position[(self.quiver.vertex_index[self.quiver.arrows[arrow_idx].source], (arrow_idx,))]
            cached = self.table[pos].T.copy()
            self._left_mult_cache[arrow_idx] = cached
        return cached

    def basis_source(self, i: int) -> int:
        return self.basis_paths[i][0]

    def basis_target(self, i: int) -> int:
        return path_target(self.quiver, self.basis_paths[i])

    def basis_label(self, i: int) -> str:
        return path_label(self.quiver, self.basis_paths[i])

    def __repr__(self) -> str:
        return (f"BoundQuiverAlgebra(dim={self.dim}, vertices={len(self.quiver.vertices)}, "
                f"arrows={len(self.quiver.arrows)}, p={self.field.p})")

    # -- opposite side -------------------------------------------------------

    @property
    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            rev_relations = [[(c, list(reversed(names))) for c, names in rel]
                             for rel in self._relation_names()]
            op = build_algebra(self.quiver.reversed(), rev_relations, self.field,
                               self.max_path_len)
            if op.dim != self.dim:
                raise NotAdmissible("opposite algebra dimension mismatch; raise max_path_len")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def _relation_names(self):
        out = []
        for rel in self.relations:
            out.append([(c, [self.quiver.arrows[i].name for i in arrows]) for c, arrows in rel])
        return out

    def reverse_path_map(self) -> np.ndarray:
        """Matrix sending basis-path coordinates to coordinates of the
        reversed paths in the opposite algebra's basis."""
        if self._reverse_map is None:
            op = self.opposite
            m = np.zeros((op.dim, self.dim), dtype=np.int64)
            for i, (src, arrows) in enumerate(self.basis_paths):
                tgt = path_target(self.quiver, (src, arrows))
                rev = (tgt, tuple(reversed(arrows)))
                m[:, i] = op.normal_form_path(rev)
            self._reverse_map = m
        return self._reverse_map

    def normal_form_path(self, path: Path) -> np.ndarray:
        """Coordinates of an arbitrary path (arrows composable) in the basis."""
        src, arrows = path
        vec = np.zeros(self.dim, dtype=np.int64)
        if not arrows:
            vec[self.path_position[(src, ())]] = 1
            return vec
        cur = np.zeros(self.dim, dtype=np.int64)
        cur[self.path_position[(src, ())]] = 1
        for a in arrows:
            cur = (self.arrow_left_mult(a) @ cur) % self.field.p
        return cur


def build_algebra(quiver: Quiver, relations, field: PrimeField,
                  max_path_len: int = 12) -> BoundQuiverAlgebra:
    """Construct kQ/I with certification that rad^L <= I for some L <= bound.

    relations: list of relations, each a list of (coeff, [arrow names]) terms;
    all terms of one relation must be parallel paths of length >= 2.
    """
    if max_path_len < 2:
        raise ValueError("max_path_len must be at least 2")
    rels: list[list[tuple[int, tuple[int, ...]]]] = []
    for rel in relations:
        if not rel:
            raise ValueError("empty relation")
        terms = []
        endpoints = None
        for coeff, names in rel:
            if len(names) < 2:
                raise ValueError("relation terms must have length >= 2 (admissible ideal)")
            try:
                arrows = tuple(quiver.arrow_index[n] for n in names)
            except KeyError as e:
                raise ValueError(f"unknown arrow in relation: {e.args[0]!r}") from None
            for k in range(len(arrows) - 1):
                if quiver.arrows[arrows[k]].target != quiver.arrows[arrows[k + 1]].source:
                    raise ValueError(f"non-composable relation path {names}")
            src = quiver.vertex_index[quiver.arrows[arrows[0]].source]
            tgt = quiver.vertex_index[quiver.arrows[arrows[-1]].target]
            if endpoints is None:
                endpoints = (src, tgt)
            elif endpoints != (src, tgt):
                raise ValueError("relation terms are not parallel")
            terms.append((int(coeff) % field.p, arrows))
        rels.append(terms)

    # Enumerate paths by length.
    by_len: list[list[Path]] = [[(v, ()) for v in range(quiver.num_vertices)]]
    arrows_from: dict[int, list[int]] = {v: [] for v in range(quiver.num_vertices)}
    for i, a in enumerate(quiver.arrows):
        arrows_from[quiver.vertex_index[a.source]].append(i)
    total = quiver.num_vertices
    for ln in range(1, max_path_len + 1):
        nxt = []
        for p in by_len[ln - 1]:
            t = path_target(quiver, p)
            for a in arrows_from[t]:
                nxt.append((p[0], p[1] + (a,)))
        nxt.sort(key=lambda q: _path_sort_key(quiver, q))
        by_len.append(nxt)
        total += len(nxt)
        if total > _PATH_CAP:
            raise NotAdmissible(f"more than {_PATH_CAP} paths below length {max_path_len}; "
                                "the ideal does not look admissible at this bound")
    all_paths = [p for chunk in by_len for p in chunk]
    all_paths.sort(key=lambda q: _path_sort_key(quiver, q))
    # Reversed order so that row reduction eliminates long/lex-large paths.
    order = list(reversed(all_paths))
    col = {p: i for i, p in enumerate(order)}
    n = len(order)

    by_source: dict[int, list[Path]] = {}
    by_target: dict[int, list[Path]] = {}
    for p in all_paths:
        by_source.setdefault(p[0], []).append(p)
        by_target.setdefault(path_target(quiver, p), []).append(p)

    rows = []
    for terms in rels:
        src = quiver.vertex_index[quiver.arrows[terms[0][1][0]].source]
        tgt = quiver.vertex_index[quiver.arrows[terms[0][1][-1]].target]
        max_term = max(len(arrows) for _, arrows in terms)
        for v in by_target.get(src, []):
            for u in by_source.get(tgt, []):
                if len(v[1]) + len(u[1]) + max_term > max_path_len:
                    continue
                row = np.zeros(n, dtype=np.int64)
                for coeff, arrows in terms:
                    full = (v[0], v[1] + arrows + u[1])
                    row[col[full]] = (row[col[full]] + coeff) % field.p
                rows.append(row)
                if len(rows) > _ROW_CAP:
                    raise NotAdmissible("relation closure exploded; bound too large or ideal wild")
    if rows:
        gen = np.stack(rows)
        red, pivots = field.rref(gen)
        red = red[: len(pivots)]
        pivot_set = set(pivots)
    else:
        red = np.zeros((0, n), dtype=np.int64)
        pivots = []
        pivot_set = set()
    pivot_cols = np.array(pivots, dtype=np.int64)

    def raw_reduce(vec: np.ndarray) -> np.ndarray:
        if len(pivots) == 0:
            return vec % field.p
        coeffs = vec[pivot_cols]
        return (vec - coeffs @ red) % field.p

    def path_in_ideal(p: Path) -> bool:
        v = np.zeros(n, dtype=np.int64)
        v[col[p]] = 1
        return not raw_reduce(v).any()

    rad_len = None
    for ln in range(1, max_path_len + 1):
        if all(path_in_ideal(p) for p in by_len[ln]):
            rad_len = ln
            break
    if rad_len is None:
        raise NotAdmissible(f"paths survive at length {max_path_len}; the ideal may not be "
                            "admissible, or max_path_len is too small")

    basis = [p for p in all_paths
             if len(p[1]) < rad_len and col[p] not in pivot_set]
    basis.sort(key=lambda q: _path_sort_key(quiver, q))
    pos = {p: i for i, p in enumerate(basis)}
    dim = len(basis)

    def nf(vec: np.ndarray) -> np.ndarray:
        out = np.zeros(dim, dtype=np.int64)
        r = raw_reduce(vec)
        for c in np.nonzero(r)[0]:
            p = order[c]
            if len(p[1]) >= rad_len:
                continue
            out[pos[p]] = r[c]
        return out

    table = np.zeros((dim, dim, dim), dtype=np.int64)
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            # product "bj first, then bi": needs target(bi-source path)...
            if bi[0] != path_target(quiver, bj):
                continue
            if len(bi[1]) + len(bj[1]) >= rad_len:
                continue
            full = (bj[0], bj[1] + bi[1])
            v = np.zeros(n, dtype=np.int64)
            v[col[full]] = 1
            table[i, j] = nf(v)

    assoc_l = np.einsum("ijm,mkl->ijkl", table, table) % field.p
    assoc_r = np.einsum("jkm,iml->ijkl", table, table) % field.p
    if not np.array_equal(assoc_l, assoc_r):
        raise NotAdmissible("multiplication table failed associativity; "
                            "non-homogeneous relations need a larger max_path_len")

    return BoundQuiverAlgebra(quiver, field, basis, table, rad_len,
                              [[(c, a) for c, a in terms] for terms in rels], max_path_len)
