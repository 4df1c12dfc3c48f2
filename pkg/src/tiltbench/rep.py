"""Finite-dimensional left modules over a bound quiver algebra.

A module is stored as a representation of the quiver: one coordinate space
per vertex and one matrix per arrow, with the matrix of an arrow a: v -> w
mapping the space at v into the space at w.  Morphisms are per-vertex
matrices commuting with the arrow action.

Everything here is exact arithmetic over the algebra's prime field; kernels,
cokernels and images come back together with the structure maps that witness
them.
"""

from __future__ import annotations

import numpy as np

from tiltbench import fitting
from tiltbench.linalg import PrimeField
from tiltbench.quiver import BoundQuiverAlgebra, Path, path_target


class Representation:
    def __init__(self, algebra: BoundQuiverAlgebra, dims, maps, check: bool = False):
        self.algebra = algebra
        self.dims = np.asarray(dims, dtype=np.int64)
        if self.dims.shape != (algebra.quiver.num_vertices,):
            raise ValueError("dims must list one dimension per vertex")
        self.maps = [np.asarray(m, dtype=np.int64) % algebra.field.p for m in maps]
        if len(self.maps) != len(algebra.quiver.arrows):
            raise ValueError("maps must list one matrix per arrow")
        for i, a in enumerate(algebra.quiver.arrows):
            s = algebra.quiver.vertex_index[a.source]
            t = algebra.quiver.vertex_index[a.target]
            if self.maps[i].shape != (int(self.dims[t]), int(self.dims[s])):
                raise ValueError(f"map for arrow {a.name!r} has shape "
                                 f"{self.maps[i].shape}, wanted {(int(self.dims[t]), int(self.dims[s]))}")
        self.offsets = np.concatenate([[0], np.cumsum(self.dims)])
        self.total_dim = int(self.offsets[-1])
        if check:
            self.check_relations()

    @property
    def field(self) -> PrimeField:
        return self.algebra.field

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def check_relations(self) -> None:
        p = self.field.p
        for terms in self.algebra.relations:
            src = self.algebra.quiver.vertex_index[self.algebra.quiver.arrows[terms[0][1][0]].source]
            tgt = self.algebra.quiver.vertex_index[self.algebra.quiver.arrows[terms[0][1][-1]].target]
            acc = np.zeros((int(self.dims[tgt]), int(self.dims[src])), dtype=np.int64)
            for coeff, arrows in terms:
                m = np.eye(int(self.dims[src]), dtype=np.int64)
                for a in arrows:
                    m = (self.maps[a] @ m) % p
                acc = (acc + coeff * m) % p
            if acc.any():
                raise ValueError("arrow matrices do not satisfy the algebra relations")

    def path_action(self, path: Path) -> np.ndarray:
        """Matrix of the path acting from the space at its source vertex."""
        src, arrows = path
        m = np.eye(int(self.dims[src]), dtype=np.int64)
        for a in arrows:
            m = (self.maps[a] @ m) % self.field.p
        return m

    def vertex_slice(self, v: int) -> slice:
        return slice(int(self.offsets[v]), int(self.offsets[v + 1]))

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims.tolist()})"


class ModuleMorphism:
    def __init__(self, source: Representation, target: Representation, maps,
                 check: bool = False):
        if source.algebra is not target.algebra:
            raise ValueError("morphism endpoints live over different algebras")
        self.source = source
        self.target = target
        p = source.field.p
        self.maps = [np.asarray(m, dtype=np.int64) % p for m in maps]
        for v in range(source.algebra.quiver.num_vertices):
            want = (int(target.dims[v]), int(source.dims[v]))
            if self.maps[v].shape != want:
                raise ValueError(f"component at vertex {v} has shape {self.maps[v].shape}, wanted {want}")
        if check:
            self.check_commutes()

    def check_commutes(self) -> None:
        p = self.source.field.p
        qv = self.source.algebra.quiver
        for i, a in enumerate(qv.arrows):
            s, t = qv.vertex_index[a.source], qv.vertex_index[a.target]
            lhs = (self.maps[t] @ self.source.maps[i]) % p
            rhs = (self.target.maps[i] @ self.maps[s]) % p
            if not np.array_equal(lhs, rhs):
                raise ValueError(f"component does not commute with arrow {a.name!r}")

    @property
    def is_zero(self) -> bool:
        return not any(m.any() for m in self.maps)

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self after other."""
        if other.target is not self.source and other.target.dims.tolist() != self.source.dims.tolist():
            raise ValueError("non-composable morphisms")
        p = self.source.field.p
        return ModuleMorphism(other.source, self.target,
                              [(a @ b) % p for a, b in zip(self.maps, other.maps)])

    def scale(self, c: int) -> "ModuleMorphism":
        p = self.source.field.p
        return ModuleMorphism(self.source, self.target, [(c * m) % p for m in self.maps])

    def add(self, other: "ModuleMorphism") -> "ModuleMorphism":
        p = self.source.field.p
        return ModuleMorphism(self.source, self.target,
                              [(a + b) % p for a, b in zip(self.maps, other.maps)])

    def sub(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return self.add(other.scale(-1))

    def total_matrix(self) -> np.ndarray:
        """Block matrix on the stacked coordinates, one block per vertex."""
        m = np.zeros((self.target.total_dim, self.source.total_dim), dtype=np.int64)
        for v in range(len(self.maps)):
            m[self.target.vertex_slice(v), self.source.vertex_slice(v)] = self.maps[v]
        return m

    def flatten(self) -> np.ndarray:
        """All components in one coordinate vector (for hom-space arithmetic)."""
        return np.concatenate([m.reshape(-1) for m in self.maps]) if self.maps else np.zeros(0, dtype=np.int64)

    def rank(self) -> int:
        F = self.source.field
        return sum(F.rank(m) for m in self.maps)

    def is_injective(self) -> bool:
        return self.rank() == self.source.total_dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.total_dim

    def is_isomorphism(self) -> bool:
        return (self.source.total_dim == self.target.total_dim) and self.is_injective()

    def __repr__(self) -> str:
        return f"ModuleMorphism({self.source.dims.tolist()} -> {self.target.dims.tolist()})"


def zero_morphism(source: Representation, target: Representation) -> ModuleMorphism:
    return ModuleMorphism(source, target,
                          [np.zeros((int(target.dims[v]), int(source.dims[v])), dtype=np.int64)
                           for v in range(len(source.dims))])


def identity_morphism(m: Representation) -> ModuleMorphism:
    return ModuleMorphism(m, m, [np.eye(int(d), dtype=np.int64) for d in m.dims])


def invert_morphism(f: ModuleMorphism) -> ModuleMorphism:
    """Inverse of an isomorphism."""
    F = f.source.field
    maps = []
    for v in range(len(f.maps)):
        m = f.maps[v]
        if m.shape[0] != m.shape[1]:
            raise ValueError("morphism is not invertible")
        sol = F.solve_many(m, np.eye(m.shape[0], dtype=np.int64))
        if sol is None:
            raise ValueError("morphism is not invertible")
        maps.append(sol)
    return ModuleMorphism(f.target, f.source, maps)


def morphism_from_flat(source: Representation, target: Representation,
                       flat: np.ndarray) -> ModuleMorphism:
    maps = []
    at = 0
    for v in range(len(source.dims)):
        r, c = int(target.dims[v]), int(source.dims[v])
        maps.append(flat[at:at + r * c].reshape(r, c))
        at += r * c
    return ModuleMorphism(source, target, maps)


def hom_space(a: Representation, b: Representation) -> list[ModuleMorphism]:
    """Basis of the space of module morphisms a -> b."""
    F = a.field
    qv = a.algebra.quiver
    sizes = [int(b.dims[v]) * int(a.dims[v]) for v in range(qv.num_vertices)]
    starts = np.concatenate([[0], np.cumsum(sizes)])
    unknowns = int(starts[-1])
    if unknowns == 0:
        return []
    rows = []
    for i, ar in enumerate(qv.arrows):
        s, t = qv.vertex_index[ar.source], qv.vertex_index[ar.target]
        n_eq = int(b.dims[t]) * int(a.dims[s])
        if n_eq == 0:
            continue
        block = np.zeros((n_eq, unknowns), dtype=np.int64)
        # F_t @ a_maps[i] contributes (I (x) a_maps[i]^T) acting on vec(F_t)
        block[:, starts[t]:starts[t + 1]] = np.kron(np.eye(int(b.dims[t]), dtype=np.int64),
                                                    a.maps[i].T)
        # b_maps[i] @ F_s contributes (b_maps[i] (x) I) acting on vec(F_s)
        block[:, starts[s]:starts[s + 1]] = (block[:, starts[s]:starts[s + 1]]
                                             - np.kron(b.maps[i], np.eye(int(a.dims[s]), dtype=np.int64))) % F.p
        rows.append(block)
    if rows:
        system = np.concatenate(rows) % F.p
        basis = F.nullspace(system)
    else:
        basis = np.eye(unknowns, dtype=np.int64)
    out = []
    for k in range(basis.shape[1]):
        out.append(morphism_from_flat(a, b, basis[:, k]))
    return out


def kernel(f: ModuleMorphism) -> tuple[Representation, ModuleMorphism]:
    """Kernel subrepresentation with its inclusion."""
    F = f.source.field
    bases = [F.nullspace(f.maps[v]) for v in range(len(f.maps))]
    dims = [b.shape[1] for b in bases]
    maps = []
    qv = f.source.algebra.quiver
    for i, a in enumerate(qv.arrows):
        s, t = qv.vertex_index[a.source], qv.vertex_index[a.target]
        rhs = (f.source.maps[i] @ bases[s]) % F.p
        sol = F.solve_many(bases[t], rhs)
        if sol is None:
            raise AssertionError("kernel subspace is not arrow-stable")
        maps.append(sol)
    k = Representation(f.source.algebra, dims, maps)
    incl = ModuleMorphism(k, f.source, bases)
    return k, incl


def image(f: ModuleMorphism) -> tuple[Representation, ModuleMorphism, ModuleMorphism]:
    """Image subrepresentation, its inclusion into the target, and the
    epimorphism from the source onto it (inclusion o epi == f)."""
    F = f.source.field
    bases = [F.column_reduce(f.maps[v]) for v in range(len(f.maps))]
    dims = [b.shape[1] for b in bases]
    maps = []
    qv = f.source.algebra.quiver
    for i, a in enumerate(qv.arrows):
        s, t = qv.vertex_index[a.source], qv.vertex_index[a.target]
        rhs = (f.target.maps[i] @ bases[s]) % F.p
        sol = F.solve_many(bases[t], rhs)
        if sol is None:
            raise AssertionError("image subspace is not arrow-stable")
        maps.append(sol)
    img = Representation(f.target.algebra, dims, maps)
    incl = ModuleMorphism(img, f.target, bases)
    epi_maps = []
    for v in range(len(f.maps)):
        sol = F.solve_many(bases[v], f.maps[v])
        if sol is None:
            raise AssertionError("factoring through the image failed")
        epi_maps.append(sol)
    epi = ModuleMorphism(f.source, img, epi_maps)
    return img, incl, epi


def cokernel(f: ModuleMorphism) -> tuple[Representation, ModuleMorphism]:
    """Cokernel with the projection from the target."""
    F = f.source.field
    projs, reps = [], []
    qv = f.source.algebra.quiver
    for v in range(len(f.maps)):
        sub = F.column_reduce(f.maps[v])
        proj, rep = F.quotient_projection(sub, int(f.target.dims[v]))
        projs.append(proj)
        reps.append(rep)
    dims = [p.shape[0] for p in projs]
    maps = []
    for i, a in enumerate(qv.arrows):
        s, t = qv.vertex_index[a.source], qv.vertex_index[a.target]
        maps.append((projs[t] @ f.target.maps[i] @ reps[s]) % F.p)
    c = Representation(f.target.algebra, dims, maps)
    proj = ModuleMorphism(f.target, c, projs)
    return c, proj


def direct_sum(algebra: BoundQuiverAlgebra, parts: list[Representation]
               ) -> tuple[Representation, list[ModuleMorphism], list[ModuleMorphism]]:
    """Direct sum with inclusions and projections."""
    nv = algebra.quiver.num_vertices
    dims = np.zeros(nv, dtype=np.int64)
    for m in parts:
        dims += m.dims
    maps = []
    for i in range(len(algebra.quiver.arrows)):
        a = algebra.quiver.arrows[i]
        s, t = algebra.quiver.vertex_index[a.source], algebra.quiver.vertex_index[a.target]
        blocks = [m.maps[i] for m in parts]
        big = np.zeros((int(dims[t]), int(dims[s])), dtype=np.int64)
        ro = co = 0
        for m in parts:
            big[ro:ro + int(m.dims[t]), co:co + int(m.dims[s])] = m.maps[i]
            ro += int(m.dims[t])
            co += int(m.dims[s])
        maps.append(big)
    total = Representation(algebra, dims, maps)
    incls, projs = [], []
    row_off = np.zeros(nv, dtype=np.int64)
    for m in parts:
        inc = [np.zeros((int(dims[v]), int(m.dims[v])), dtype=np.int64) for v in range(nv)]
        prj = [np.zeros((int(m.dims[v]), int(dims[v])), dtype=np.int64) for v in range(nv)]
        for v in range(nv):
            d = int(m.dims[v])
            o = int(row_off[v])
            inc[v][o:o + d, :] = np.eye(d, dtype=np.int64)
            prj[v][:, o:o + d] = np.eye(d, dtype=np.int64)
        incls.append(ModuleMorphism(m, total, inc))
        projs.append(ModuleMorphism(total, m, prj))
        row_off += m.dims
    return total, incls, projs


def zero_rep(algebra: BoundQuiverAlgebra) -> Representation:
    nv = algebra.quiver.num_vertices
    dims = [0] * nv
    maps = []
    for a in algebra.quiver.arrows:
        maps.append(np.zeros((0, 0), dtype=np.int64))
    return Representation(algebra, dims, maps)


def simple(algebra: BoundQuiverAlgebra, v: int) -> Representation:
    nv = algebra.quiver.num_vertices
    dims = [1 if w == v else 0 for w in range(nv)]
    maps = []
    for a in algebra.quiver.arrows:
        s = algebra.quiver.vertex_index[a.source]
        t = algebra.quiver.vertex_index[a.target]
        maps.append(np.zeros((dims[t], dims[s]), dtype=np.int64))
    return Representation(algebra, dims, maps)


def projective(algebra: BoundQuiverAlgebra, v: int) -> Representation:
    """Indecomposable projective at a vertex: paths out of v, arrows acting
    by path extension."""
    qv = algebra.quiver
    nv = qv.num_vertices
    idx = [i for i in range(algebra.dim) if algebra.basis_source(i) == v]
    by_vertex: list[list[int]] = [[] for _ in range(nv)]
    for i in idx:
        by_vertex[algebra.basis_target(i)].append(i)
    dims = [len(b) for b in by_vertex]
    maps = []
    for ai, a in enumerate(qv.arrows):
        s, t = qv.vertex_index[a.source], qv.vertex_index[a.target]
        L = algebra.arrow_left_mult(ai)
        m = np.zeros((dims[t], dims[s]), dtype=np.int64)
        for cj, j in enumerate(by_vertex[s]):
            colv = L[:, j]
            for ri, i in enumerate(by_vertex[t]):
                m[ri, cj] = colv[i]
        maps.append(m)
    rep = Representation(algebra, dims, maps)
    rep._projective_vertex = v  # type: ignore[attr-defined]
    rep._basis_index = by_vertex  # type: ignore[attr-defined]
    return rep


def dualize(m: Representation) -> Representation:
    """The vector-space dual as a module over the opposite algebra."""
    op = m.algebra.opposite
    maps = [m.maps[i].T.copy() for i in range(len(m.maps))]
    return Representation(op, m.dims.copy(), maps)


def dualize_morphism(f: ModuleMorphism) -> ModuleMorphism:
    """Dual morphism D(target) -> D(source) over the opposite algebra."""
    return ModuleMorphism(dualize(f.target), dualize(f.source),
                          [mm.T.copy() for mm in f.maps])


def injective(algebra: BoundQuiverAlgebra, v: int) -> Representation:
    """Indecomposable injective at a vertex, as the dual of the opposite
    projective."""
    return dualize(projective(algebra.opposite, v))


def regular_parts(algebra: BoundQuiverAlgebra) -> list[Representation]:
    """The indecomposable projective summands of the regular module, one per
    vertex (with multiplicity one; multiplicities in the regular module over a
    quiver algebra are all one because the trivial paths are primitive)."""
    return [projective(algebra, v) for v in range(algebra.quiver.num_vertices)]


def radical_subspaces(m: Representation) -> list[np.ndarray]:
    """Per-vertex bases of rad(m) = sum of arrow images."""
    F = m.field
    qv = m.algebra.quiver
    nv = qv.num_vertices
    cols: list[list[np.ndarray]] = [[] for _ in range(nv)]
    for i, a in enumerate(qv.arrows):
        t = qv.vertex_index[a.target]
        cols[t].append(m.maps[i])
    out = []
    for v in range(nv):
        if cols[v]:
            out.append(F.column_reduce(np.concatenate(cols[v], axis=1) % F.p))
        else:
            out.append(np.zeros((int(m.dims[v]), 0), dtype=np.int64))
    return out


def top(m: Representation) -> tuple[Representation, ModuleMorphism]:
    """Largest semisimple quotient, with the projection onto it."""
    F = m.field
    rads = radical_subspaces(m)
    projs, dims = [], []
    for v in range(len(rads)):
        proj, _ = F.quotient_projection(rads[v], int(m.dims[v]))
        projs.append(proj)
        dims.append(proj.shape[0])
    maps = [np.zeros((dims[m.algebra.quiver.vertex_index[a.target]],
                      dims[m.algebra.quiver.vertex_index[a.source]]), dtype=np.int64)
            for a in m.algebra.quiver.arrows]
    t = Representation(m.algebra, dims, maps)
    return t, ModuleMorphism(m, t, projs)


def socle(m: Representation) -> tuple[Representation, ModuleMorphism]:
    """Largest semisimple subrepresentation, with its inclusion."""
    F = m.field
    qv = m.algebra.quiver
    nv = qv.num_vertices
    stacked: list[list[np.ndarray]] = [[] for _ in range(nv)]
    for i, a in enumerate(qv.arrows):
        s = qv.vertex_index[a.source]
        stacked[s].append(m.maps[i])
    bases = []
    for v in range(nv):
        if stacked[v]:
            bases.append(F.nullspace(np.concatenate(stacked[v], axis=0) % F.p))
        else:
            bases.append(np.eye(int(m.dims[v]), dtype=np.int64))
    dims = [b.shape[1] for b in bases]
    maps = [np.zeros((dims[qv.vertex_index[a.target]], dims[qv.vertex_index[a.source]]),
                     dtype=np.int64) for a in qv.arrows]
    s = Representation(m.algebra, dims, maps)
    return s, ModuleMorphism(s, m, bases)


def projective_cover(m: Representation) -> tuple[ModuleMorphism, list[int]]:
    """Projective cover P -> m; returns the cover morphism and the vertex
    list of its indecomposable projective summands.

    The kernel of the returned morphism is certified to lie in rad(P), which
    makes every syzygy taken through this function minimal.
    """
    F = m.field
    if m.is_zero:
        z = zero_rep(m.algebra)
        return ModuleMorphism(z, m, [np.zeros((int(m.dims[v]), 0), dtype=np.int64)
                                     for v in range(len(m.dims))]), []
    rads = radical_subspaces(m)
    verts: list[int] = []
    targets: list[np.ndarray] = []  # chosen generator in m at each cover summand
    for v in range(len(m.dims)):
        _, reps = F.quotient_projection(rads[v], int(m.dims[v]))
        for j in range(reps.shape[1]):
            verts.append(v)
            targets.append(reps[:, j])
    parts = [projective(m.algebra, v) for v in verts]
    total, incls, _ = direct_sum(m.algebra, parts)
    comp_maps = [np.zeros((int(m.dims[v]), int(total.dims[v])), dtype=np.int64)
                 for v in range(len(m.dims))]
    col_off = np.zeros(len(m.dims), dtype=np.int64)
    for part_i, (v, gen) in enumerate(zip(verts, targets)):
        p_rep = parts[part_i]
        by_vertex = p_rep._basis_index  # type: ignore[attr-defined]
        for w in range(len(m.dims)):
            for local, bpos in enumerate(by_vertex[w]):
                act = m.path_action(m.algebra.basis_paths[bpos])
                comp_maps[w][:, int(col_off[w]) + local] = (act @ gen) % F.p
        col_off += p_rep.dims
    cover = ModuleMorphism(total, m, comp_maps)
    if not cover.is_surjective():
        raise AssertionError("projective cover construction failed to surject")
    # Minimality: the kernel must sit inside rad(P).
    rad_p = radical_subspaces(total)
    for v in range(len(m.dims)):
        ker_v = F.nullspace(cover.maps[v])
        if ker_v.shape[1] and not F.column_space_contains(rad_p[v], ker_v):
            raise AssertionError("projective cover kernel escapes the radical")
    return cover, verts


def injective_envelope(m: Representation) -> tuple[ModuleMorphism, list[int]]:
    """Injective envelope m -> I; returns the envelope morphism and the
    vertex list of its indecomposable injective summands."""
    cov, verts = projective_cover(dualize(m))
    env = dualize_morphism(cov)
    # env: D(D m) -> D(P); D(D m) equals m on the nose (transposing twice).
    env = ModuleMorphism(m, env.target, env.maps)
    return env, verts


def syzygy(m: Representation) -> Representation:
    """Kernel of the projective cover (minimal first syzygy)."""
    cover, _ = projective_cover(m)
    k, _ = kernel(cover)
    return k


def cosyzygy(m: Representation) -> Representation:
    """Cokernel of the injective envelope (minimal first cosyzygy)."""
    env, _ = injective_envelope(m)
    c, _ = cokernel(env)
    return c


def syzygy_power(m: Representation, k: int) -> Representation:
    for _ in range(k):
        m = syzygy(m)
    return m


def cosyzygy_power(m: Representation, k: int) -> Representation:
    for _ in range(k):
        m = cosyzygy(m)
    return m


# -- splitting into indecomposables ------------------------------------------


class Leaf:
    """One indecomposable summand with the maps realizing the splitting."""

    def __init__(self, rep: Representation, incl: ModuleMorphism, proj: ModuleMorphism):
        self.rep = rep
        self.incl = incl
        self.proj = proj


def _split_by_idempotent(m: Representation, e: ModuleMorphism
                         ) -> tuple[Leaf, Leaf]:
    F = m.field
    img, incl_i, _ = image(e)
    ker, incl_k = kernel(e)
    proj_i_maps, proj_k_maps = [], []
    for v in range(len(m.dims)):
        glue = np.concatenate([incl_i.maps[v], incl_k.maps[v]], axis=1) % F.p
        if glue.shape[0] != glue.shape[1]:
            raise AssertionError("idempotent image/kernel do not decompose the space")
        inv = F.solve_many(glue, np.eye(glue.shape[0], dtype=np.int64))
        if inv is None:
            raise AssertionError("idempotent image/kernel do not decompose the space")
        di = img.dims[v]
        proj_i_maps.append(inv[:di])
        proj_k_maps.append(inv[di:])
    return (Leaf(img, incl_i, ModuleMorphism(m, img, proj_i_maps)),
            Leaf(ker, incl_k, ModuleMorphism(m, ker, proj_k_maps)))


def decompose(m: Representation, seed: int = 0) -> list[Leaf]:
    """Split into indecomposable summands, each certified by a local
    endomorphism ring (or an endomorphism ring of dimension one).

    Raises fitting.RadicalPreconditionViolated when the field is too small
    for the semisimple-quotient computation on some endomorphism ring.
    """
    if m.is_zero:
        return []
    ends = hom_space(m, m)
    if len(ends) == 1:
        ident = identity_morphism(m)
        return [Leaf(m, ident, ident)]
    mats = [f.total_matrix() for f in ends]
    rng = np.random.default_rng(seed)
    e_flat = fitting.find_splitting_idempotent(m.field, mats, rng)
    if e_flat is None:
        ident = identity_morphism(m)
        return [Leaf(m, ident, ident)]
    e = ModuleMorphism(m, m, [e_flat[m.vertex_slice(v), m.vertex_slice(v)]
                              for v in range(len(m.dims))])
    half_a, half_b = _split_by_idempotent(m, e)
    out = []
    for half, sub_seed in ((half_a, seed * 2 + 1), (half_b, seed * 2 + 2)):
        for leaf in decompose(half.rep, sub_seed):
            out.append(Leaf(leaf.rep,
                            half.incl.compose(leaf.incl),
                            leaf.proj.compose(half.proj)))
    return out


def _unit_witness(a: Representation, b: Representation,
                  seed: int = 0) -> ModuleMorphism | None:
    """For a, b indecomposable of equal dimension vector: a morphism a -> b
    admitting a left inverse modulo the radical of End(a), i.e. an
    isomorphism; None when no pair of hom-basis elements composes to a unit.

    Sound in both directions for indecomposables: if some g o f avoids
    rad End(a) it is a unit there (local ring), so f is a split mono between
    modules of equal dimension, hence an isomorphism.  Conversely if a ~ b
    then writing an isomorphism u in the hom basis and its inverse in the
    other, bilinearity forces some basis pair g o f outside the radical.
    """
    if a.dims.tolist() != b.dims.tolist():
        return None
    if a.total_dim == 0:
        return zero_morphism(a, b)
    F = a.field
    fwd = hom_space(a, b)
    if not fwd:
        return None
    bwd = hom_space(b, a)
    ends = hom_space(a, a)
    mats = [f.total_matrix() for f in ends]
    rad = fitting.radical_coordinates(F, mats)
    basis_mat = np.stack([f.flatten() for f in ends], axis=1) % F.p
    for f in fwd:
        for g in bwd:
            comp = g.compose(f)
            coords = F.solve_many(basis_mat, comp.flatten().reshape(-1, 1))
            if coords is None:
                raise AssertionError("endomorphism left its own hom space")
            if rad.shape[1] == 0:
                in_rad = not coords.any()
            else:
                in_rad = F.column_space_contains(rad, coords)
            if not in_rad:
                if not f.is_isomorphism():
                    raise AssertionError("unit composite did not yield an isomorphism")
                return f
    return None


def is_isomorphic(a: Representation, b: Representation, seed: int = 0,
                  with_map: bool = False):
    """Module isomorphism test (and witness) via indecomposable matching."""
    if a.dims.tolist() != b.dims.tolist():
        return (False, None) if with_map else False
    if a.total_dim == 0:
        z = zero_morphism(a, b)
        return (True, z) if with_map else True
    la = decompose(a, seed)
    lb = decompose(b, seed + 1)
    used = [False] * len(lb)
    pieces: list[tuple[Leaf, Leaf, ModuleMorphism]] = []
    for leaf in la:
        found = False
        for j, cand in enumerate(lb):
            if used[j]:
                continue
            w = _unit_witness(leaf.rep, cand.rep, seed)
            if w is not None:
                used[j] = True
                pieces.append((leaf, cand, w))
                found = True
                break
        if not found:
            return (False, None) if with_map else False
    if not with_map:
        return True
    total = zero_morphism(a, b)
    for leaf, cand, w in pieces:
        total = total.add(cand.incl.compose(w).compose(leaf.proj))
    if not total.is_isomorphism():
        raise AssertionError("assembled matching failed to be an isomorphism")
    return True, total
