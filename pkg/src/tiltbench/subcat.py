"""The additive subcategory add(M) and its approximation calculus.

A SubcategoryX fixes the indecomposable summands of a module M and provides:

* formal objects of add(M) (multisets of summand indices) with their
  realizations as representations;
* cached hom spaces between summands, with block assembly and coordinate
  extraction so composition matrices never solve large systems twice;
* right/left approximations, weak kernels and weak cokernels, and the
  higher kernel/cokernel sequences whose exactness the axiom checkers test;
* membership ("is this module in add(M)?") with an explicit isomorphism.

Module-level functions cover the algebra-side homology that does not depend
on X: minimal projective resolutions, Ext groups, the transpose, and the
higher Auslander-Reiten translates built from it.
"""

from __future__ import annotations

import numpy as np

from tiltbench import rep
from tiltbench.linalg import PrimeField
from tiltbench.quiver import BoundQuiverAlgebra
from tiltbench.rep import ModuleMorphism, Representation


class DKernelNotLeftExact(Exception):
    """A constructed higher kernel sequence failed exactness under Hom(X, -)."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


class DCokernelNotRightExact(Exception):
    """A constructed higher cokernel sequence failed exactness under Hom(-, X)."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


class ResolutionCapExceeded(Exception):
    """An iterated resolution passed its configured cap while still alive."""


class XObject:
    """A formal direct sum of subcategory summands."""

    def __init__(self, subcat: "SubcategoryX", parts: tuple[int, ...]):
        self.subcat = subcat
        self.parts = tuple(parts)
        self._rep: Representation | None = None
        self._incls: list[ModuleMorphism] | None = None
        self._projs: list[ModuleMorphism] | None = None

    @property
    def rep(self) -> Representation:
        if self._rep is None:
            self._realize()
        assert self._rep is not None
        return self._rep

    def _realize(self) -> None:
        mods = [self.subcat.summands[i] for i in self.parts]
        total, incls, projs = rep.direct_sum(self.subcat.algebra, mods)
        self._rep = total
        self._incls = incls
        self._projs = projs

    @property
    def incls(self) -> list[ModuleMorphism]:
        if self._incls is None:
            self._realize()
        assert self._incls is not None
        return self._incls

    @property
    def projs(self) -> list[ModuleMorphism]:
        if self._projs is None:
            self._realize()
        assert self._projs is not None
        return self._projs

    @property
    def is_zero(self) -> bool:
        return len(self.parts) == 0

    def __repr__(self) -> str:
        return f"XObject{self.parts}"


class XMap:
    """A morphism between realizations of two X-objects."""

    def __init__(self, src: XObject, dst: XObject, mor: ModuleMorphism):
        self.src = src
        self.dst = dst
        self.mor = mor

    @property
    def is_zero(self) -> bool:
        return self.mor.is_zero

    def compose(self, other: "XMap") -> "XMap":
        return XMap(other.src, self.dst, self.mor.compose(other.mor))

    def block(self, dst_pos: int, src_pos: int) -> ModuleMorphism:
        """Component between single summands."""
        return self.dst.projs[dst_pos].compose(self.mor).compose(self.src.incls[src_pos])

    def column(self, src_pos: int) -> ModuleMorphism:
        return self.mor.compose(self.src.incls[src_pos])

    def __repr__(self) -> str:
        return f"XMap({self.src.parts} -> {self.dst.parts})"


def concat_xmaps_cols(x: "SubcategoryX", blocks: list[XMap], dst: XObject) -> XMap:
    """[b_1 b_2 ...]: sum of sources -> common target."""
    parts: tuple[int, ...] = ()
    for b in blocks:
        parts = parts + b.src.parts
    src = x.obj(parts)
    maps = []
    nv = len(dst.rep.dims)
    for v in range(nv):
        cols = [b.mor.maps[v] for b in blocks]
        maps.append(np.concatenate(cols, axis=1) % x.field.p if cols
                    else np.zeros((int(dst.rep.dims[v]), 0), dtype=np.int64))
    return XMap(src, dst, ModuleMorphism(src.rep, dst.rep, maps))


def concat_xmaps_rows(x: "SubcategoryX", blocks: list[XMap], src: XObject) -> XMap:
    """[b_1; b_2; ...]: common source -> sum of targets."""
    parts: tuple[int, ...] = ()
    for b in blocks:
        parts = parts + b.dst.parts
    dst = x.obj(parts)
    maps = []
    nv = len(src.rep.dims)
    for v in range(nv):
        rows = [b.mor.maps[v] for b in blocks]
        maps.append(np.concatenate(rows, axis=0) % x.field.p if rows
                    else np.zeros((0, int(src.rep.dims[v])), dtype=np.int64))
    return XMap(src, dst, ModuleMorphism(src.rep, dst.rep, maps))


def block_component(x: "SubcategoryX", m: XMap, first: XObject) -> XMap:
    """Restrict m: W -> (first (+) rest) to its first-block component W -> first."""
    maps = [m.mor.maps[v][: int(first.rep.dims[v]), :] for v in range(len(first.rep.dims))]
    return XMap(m.src, first, ModuleMorphism(m.src.rep, first.rep, maps))


def negate_xmap(m: XMap) -> XMap:
    return XMap(m.src, m.dst, m.mor.scale(-1))


class SubcategoryX:
    """add(M) for a fixed module M, with cached hom data.

    summands may be supplied directly (trusted to be indecomposable and
    pairwise non-isomorphic); otherwise M is split and deduplicated.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, module: Representation,
                 summands: list[Representation] | None = None, seed: int = 42):
        self.algebra = algebra
        self.field: PrimeField = algebra.field
        self.module = module
        self.seed = seed
        if summands is None:
            leaves = rep.decompose(module, seed)
            summands = []
            for leaf in leaves:
                if any(rep._unit_witness(s, leaf.rep) is not None for s in summands):
                    continue
                summands.append(leaf.rep)
        if any(s.is_zero for s in summands):
            raise ValueError("zero summand in a subcategory")
        self.summands = summands
        self._op: SubcategoryX | None = None
        self._hom: dict[tuple[int, int], list[ModuleMorphism]] = {}
        self._hom_solvers: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}
        self._hom_to: dict[tuple[int, int], list[ModuleMorphism]] = {}
        self._hom_to_refs: list[Representation] = []
        self._embed_cache: dict[int, tuple[XObject, ModuleMorphism] | None] = {}
        self._embed_refs: list[Representation] = []
        self._obj_hom: dict[tuple, list[ModuleMorphism]] = {}
        self._obj_solvers: dict[tuple, tuple[np.ndarray, np.ndarray]] = {}

    # -- basic structure -------------------------------------------------------

    @property
    def op(self) -> "SubcategoryX":
        if self._op is None:
            o = SubcategoryX(self.algebra.opposite, rep.dualize(self.module),
                             summands=[rep.dualize(s) for s in self.summands],
                             seed=self.seed)
            o._op = self
            self._op = o
        return self._op

    def obj(self, parts) -> XObject:
        return XObject(self, tuple(parts))

    def zero_obj(self) -> XObject:
        return XObject(self, ())

    def identity(self, x: XObject) -> XMap:
        return XMap(x, x, rep.identity_morphism(x.rep))

    def hom(self, i: int, j: int) -> list[ModuleMorphism]:
        """Cached hom basis between summands i -> j."""
        key = (i, j)
        if key not in self._hom:
            self._hom[key] = rep.hom_space(self.summands[i], self.summands[j])
        return self._hom[key]

    def hom_solver(self, i: int, j: int) -> tuple[np.ndarray, np.ndarray]:
        """(stacked flats, left inverse) of the (i, j) hom basis; coordinates
        of any morphism in the span are leftinv @ flatten."""
        key = (i, j)
        if key not in self._hom_solvers:
            basis = self.hom(i, j)
            if basis:
                stacked = np.stack([b.flatten() for b in basis], axis=1) % self.field.p
                left = self.field.solve_many(
                    stacked.T, np.eye(stacked.shape[1], dtype=np.int64))
                if left is None:
                    raise AssertionError("hom basis is not independent")
                self._hom_solvers[key] = (stacked, left.T % self.field.p)
            else:
                a, b = self.summands[i], self.summands[j]
                n = int(np.sum(a.dims * b.dims))
                self._hom_solvers[key] = (np.zeros((n, 0), dtype=np.int64),
                                          np.zeros((0, n), dtype=np.int64))
        return self._hom_solvers[key]

    def hom_to_rep(self, i: int, target: Representation) -> list[ModuleMorphism]:
        """Cached hom basis summand i -> arbitrary representation."""
        key = (i, id(target))
        if key not in self._hom_to:
            self._hom_to[key] = rep.hom_space(self.summands[i], target)
            self._hom_to_refs.append(target)
        return self._hom_to[key]

    def hom_from_rep(self, source: Representation, j: int) -> list[ModuleMorphism]:
        key = (-1 - j, id(source))
        if key not in self._hom_to:
            self._hom_to[key] = rep.hom_space(source, self.summands[j])
            self._hom_to_refs.append(source)
        return self._hom_to[key]

    def dual_xmap(self, m: XMap) -> XMap:
        """The same map over the opposite side, endpoints swapped."""
        o = self.op
        src = o.obj(m.dst.parts)
        dst = o.obj(m.src.parts)
        mor = ModuleMorphism(src.rep, dst.rep, [t.T.copy() for t in m.mor.maps])
        return XMap(src, dst, mor)

    # -- membership ------------------------------------------------------------

    def embed(self, a: Representation) -> tuple[XObject, ModuleMorphism] | None:
        """An X-object with an isomorphism onto a, or None when a is not in
        add(M)."""
        key = id(a)
        if key in self._embed_cache:
            return self._embed_cache[key]
        result = self._embed_uncached(a)
        self._embed_cache[key] = result
        self._embed_refs.append(a)
        return result

    def _embed_uncached(self, a: Representation):
        if a.total_dim == 0:
            z = self.zero_obj()
            return z, rep.zero_morphism(z.rep, a)
        leaves = rep.decompose(a, self.seed)
        parts: list[int] = []
        comps: list[ModuleMorphism] = []
        for leaf in leaves:
            hit = None
            for idx, s in enumerate(self.summands):
                w = rep._unit_witness(s, leaf.rep)
                if w is not None:
                    hit = (idx, w)
                    break
            if hit is None:
                return None
            parts.append(hit[0])
            comps.append(leaf.incl.compose(hit[1]))
        xobj = self.obj(parts)
        maps = []
        for v in range(len(a.dims)):
            cols = [c.maps[v] for c in comps]
            maps.append(np.concatenate(cols, axis=1) % self.field.p
                        if cols else np.zeros((int(a.dims[v]), 0), dtype=np.int64))
        iso = ModuleMorphism(xobj.rep, a, maps)
        if not iso.is_isomorphism():
            raise AssertionError("assembled embedding is not an isomorphism")
        return xobj, iso

    def contains(self, a: Representation) -> bool:
        return self.embed(a) is not None

    # -- hom coordinates for X-objects ------------------------------------------

    def hom_dim(self, z: int, x: XObject) -> int:
        return sum(len(self.hom(z, i)) for i in x.parts)

    def coords_into(self, z: int, x: XObject, u: ModuleMorphism) -> np.ndarray:
        """Coordinates of u: summand z -> x.rep over the block hom basis."""
        out = []
        for pos, i in enumerate(x.parts):
            comp = x.projs[pos].compose(u)
            _, left = self.hom_solver(z, i)
            out.append((left @ comp.flatten()) % self.field.p)
        return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)

    def coords_from(self, x: XObject, z: int, u: ModuleMorphism) -> np.ndarray:
        """Coordinates of u: x.rep -> summand z over the block hom basis."""
        out = []
        for pos, i in enumerate(x.parts):
            comp = u.compose(x.incls[pos])
            _, left = self.hom_solver(i, z)
            out.append((left @ comp.flatten()) % self.field.p)
        return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)

    def post_matrix(self, m: XMap, z: int) -> np.ndarray:
        """Matrix of Hom(X_z, m): Hom(X_z, src) -> Hom(X_z, dst)."""
        rows = sum(len(self.hom(z, i)) for i in m.dst.parts)
        cols_list = []
        for pos, i in enumerate(m.src.parts):
            col_mor = m.column(pos)
            for h in self.hom(z, i):
                cols_list.append(self.coords_into(z, m.dst, col_mor.compose(h)))
        cols = (np.stack(cols_list, axis=1) % self.field.p if cols_list
                else np.zeros((rows, 0), dtype=np.int64))
        return cols

    def pre_matrix(self, m: XMap, z: int) -> np.ndarray:
        """Matrix of Hom(m, X_z): Hom(dst, X_z) -> Hom(src, X_z)."""
        rows = sum(len(self.hom(i, z)) for i in m.src.parts)
        cols_list = []
        for pos, j in enumerate(m.dst.parts):
            for h in self.hom(j, z):
                phi = h.compose(m.dst.projs[pos])
                cols_list.append(self.coords_from(m.src, z, phi.compose(m.mor)))
        cols = (np.stack(cols_list, axis=1) % self.field.p if cols_list
                else np.zeros((rows, 0), dtype=np.int64))
        return cols

    def morphism_from_coords(self, z: int, x: XObject, coords: np.ndarray) -> ModuleMorphism:
        """Inverse of coords_into."""
        total = rep.zero_morphism(self.summands[z], x.rep)
        at = 0
        for pos, i in enumerate(x.parts):
            basis = self.hom(z, i)
            for b in basis:
                c = int(coords[at]) % self.field.p
                at += 1
                if c:
                    total = total.add(x.incls[pos].compose(b).scale(c))
        return total

    # -- hom coordinates between two X-objects ----------------------------------

    def obj_hom(self, xa: XObject, xb: XObject) -> list[ModuleMorphism]:
        """Hom basis between realizations, assembled blockwise."""
        key = (xa.parts, xb.parts)
        if key not in self._obj_hom:
            basis = []
            for sp, i in enumerate(xa.parts):
                for dp, j in enumerate(xb.parts):
                    for h in self.hom(i, j):
                        basis.append(xb.incls[dp].compose(h).compose(xa.projs[sp]))
            self._obj_hom[key] = basis
        return self._obj_hom[key]

    def obj_hom_solver(self, xa: XObject, xb: XObject) -> tuple[np.ndarray, np.ndarray]:
        key = (xa.parts, xb.parts)
        if key not in self._obj_solvers:
            basis = self.obj_hom(xa, xb)
            if basis:
                stacked = np.stack([b.flatten() for b in basis], axis=1) % self.field.p
                left = self.field.solve_many(
                    stacked.T, np.eye(stacked.shape[1], dtype=np.int64))
                if left is None:
                    raise AssertionError("hom basis is not independent")
                self._obj_solvers[key] = (stacked, left.T % self.field.p)
            else:
                n = int(np.sum(xa.rep.dims * xb.rep.dims))
                self._obj_solvers[key] = (np.zeros((n, 0), dtype=np.int64),
                                          np.zeros((0, n), dtype=np.int64))
        return self._obj_solvers[key]

    def obj_coords(self, xa: XObject, xb: XObject, mor: ModuleMorphism) -> np.ndarray:
        _, left = self.obj_hom_solver(xa, xb)
        return (left @ mor.flatten()) % self.field.p

    def obj_from_coords(self, xa: XObject, xb: XObject, coords: np.ndarray) -> ModuleMorphism:
        stacked, _ = self.obj_hom_solver(xa, xb)
        flat = (stacked @ (np.asarray(coords, dtype=np.int64) % self.field.p)) % self.field.p
        return rep.morphism_from_flat(xa.rep, xb.rep, flat)

    def obj_pre_matrix(self, m: XMap, xb: XObject) -> np.ndarray:
        """Matrix of Hom(m, xb): Hom(m.dst, xb) -> Hom(m.src, xb)."""
        basis = self.obj_hom(m.dst, xb)
        _, left = self.obj_hom_solver(m.src, xb)
        if not basis:
            return np.zeros((left.shape[0], 0), dtype=np.int64)
        cols = np.stack([e.compose(m.mor).flatten() for e in basis], axis=1)
        return (left @ cols) % self.field.p

    def obj_post_matrix(self, m: XMap, xa: XObject) -> np.ndarray:
        """Matrix of Hom(xa, m): Hom(xa, m.src) -> Hom(xa, m.dst)."""
        basis = self.obj_hom(xa, m.src)
        _, left = self.obj_hom_solver(xa, m.dst)
        if not basis:
            return np.zeros((left.shape[0], 0), dtype=np.int64)
        cols = np.stack([m.mor.compose(e).flatten() for e in basis], axis=1)
        return (left @ cols) % self.field.p

    def xmap_from_block_coords(self, src: XObject, dst: XObject,
                               coords: dict[tuple[int, int], np.ndarray]) -> XMap:
        """Assemble an XMap from per-(dst_pos, src_pos) hom coordinates."""
        mor = rep.zero_morphism(src.rep, dst.rep)
        for (dp, sp), cvec in coords.items():
            basis = self.hom(src.parts[sp], dst.parts[dp])
            for c, b in zip(cvec.tolist(), basis):
                if c % self.field.p:
                    mor = mor.add(dst.incls[dp].compose(b).compose(src.projs[sp]).scale(int(c)))
        return XMap(src, dst, mor)

    # -- epis, monos, approximations --------------------------------------------

    def is_epi(self, m: XMap) -> tuple[bool, int | None]:
        """Epimorphism test relative to X: Hom(m, X_z) injective for all z.
        Returns (ok, witnessing summand index)."""
        for z in range(len(self.summands)):
            mat = self.pre_matrix(m, z)
            if self.field.nullspace(mat).shape[1]:
                return False, z
        return True, None

    def is_mono(self, m: XMap) -> tuple[bool, int | None]:
        for z in range(len(self.summands)):
            mat = self.post_matrix(m, z)
            if self.field.nullspace(mat).shape[1]:
                return False, z
        return True, None

    def right_approximation(self, a: Representation, minimize: bool = False
                            ) -> tuple[XObject, ModuleMorphism]:
        """Evaluation map from a sum of summands hitting every morphism
        X_i -> a; with minimize, blocks factoring through the rest are
        dropped greedily."""
        parts: list[int] = []
        blocks: list[ModuleMorphism] = []
        for i in range(len(self.summands)):
            for h in self.hom_to_rep(i, a):
                parts.append(i)
                blocks.append(h)
        if minimize:
            parts, blocks = self._minimize_blocks(parts, blocks, a)
        xobj = self.obj(parts)
        maps = []
        for v in range(len(a.dims)):
            cols = [b.maps[v] for b in blocks]
            maps.append(np.concatenate(cols, axis=1) % self.field.p
                        if cols else np.zeros((int(a.dims[v]), 0), dtype=np.int64))
        return xobj, ModuleMorphism(xobj.rep, a, maps)

    def _minimize_blocks(self, parts: list[int], blocks: list[ModuleMorphism],
                         a: Representation):
        changed = True
        while changed:
            changed = False
            for drop in range(len(parts)):
                if len(parts) == 1 and blocks[drop].is_zero:
                    return [], []
                rest_parts = parts[:drop] + parts[drop + 1:]
                rest_blocks = blocks[:drop] + blocks[drop + 1:]
                if self._factors_through(parts[drop], blocks[drop],
                                         rest_parts, rest_blocks):
                    parts, blocks = rest_parts, rest_blocks
                    changed = True
                    break
        return parts, blocks

    def _factors_through(self, part: int, block: ModuleMorphism,
                         parts: list[int], blocks: list[ModuleMorphism]) -> bool:
        cols = []
        for j, bj in zip(parts, blocks):
            for u in self.hom(part, j):
                cols.append(bj.compose(u).flatten())
        if not cols:
            return block.is_zero
        mat = np.stack(cols, axis=1) % self.field.p
        return self.field.solve_many(mat, block.flatten().reshape(-1, 1)) is not None

    def left_approximation(self, a: Representation, minimize: bool = False
                           ) -> tuple[XObject, ModuleMorphism]:
        """Coevaluation a -> sum of summands hitting every morphism a -> X_i."""
        o = self.op
        da = rep.dualize(a)
        xop, ev = o.right_approximation(da, minimize)
        xobj = self.obj(xop.parts)
        mor = ModuleMorphism(a, xobj.rep, [m.T.copy() for m in ev.maps])
        return xobj, mor

    # -- weak kernels / cokernels ------------------------------------------------

    def weak_kernel(self, m: XMap, minimize: bool = True) -> XMap:
        k, incl = rep.kernel(m.mor)
        xobj, ev = self.right_approximation(k, minimize)
        return XMap(xobj, m.src, incl.compose(ev))

    def weak_cokernel(self, m: XMap, minimize: bool = True) -> XMap:
        c, proj = rep.cokernel(m.mor)
        xobj, coev = self.left_approximation(c, minimize)
        return XMap(m.dst, xobj, coev.compose(proj))

    def is_weak_kernel(self, w: XMap, m: XMap) -> tuple[bool, dict | None]:
        """Is w: W -> src(m) a weak kernel of m? (image of Hom(X, w) equals
        kernel of Hom(X, m) at every summand)."""
        if not m.mor.compose(w.mor).is_zero:
            return False, {"reason": "composite-nonzero"}
        for z in range(len(self.summands)):
            mw = self.post_matrix(w, z)
            mm = self.post_matrix(m, z)
            rank_w = self.field.rank(mw)
            null_m = mm.shape[1] - self.field.rank(mm)
            if rank_w != null_m:
                return False, {"summand": z, "image_rank": rank_w,
                               "kernel_dim": null_m}
        return True, None

    def is_weak_cokernel(self, c: XMap, m: XMap) -> tuple[bool, dict | None]:
        if not c.mor.compose(m.mor).is_zero:
            return False, {"reason": "composite-nonzero"}
        for z in range(len(self.summands)):
            mc = self.pre_matrix(c, z)
            mm = self.pre_matrix(m, z)
            rank_c = self.field.rank(mc)
            null_m = mm.shape[1] - self.field.rank(mm)
            if rank_c != null_m:
                return False, {"summand": z, "image_rank": rank_c,
                               "kernel_dim": null_m}
        return True, None

    def weak_kernel_chain(self, m: XMap, length: int, minimize: bool = True
                          ) -> list[XMap]:
        chain = [m]
        for _ in range(length):
            chain.append(self.weak_kernel(chain[-1], minimize))
        return chain[1:]

    def weak_cokernel_chain(self, m: XMap, length: int, minimize: bool = True
                            ) -> list[XMap]:
        chain = [m]
        for _ in range(length):
            chain.append(self.weak_cokernel(chain[-1], minimize))
        return chain[1:]

    # -- higher kernels -----------------------------------------------------------

    def d_kernel(self, m: XMap, d: int, minimize: bool = True) -> list[XMap]:
        """Maps (k_1, ..., k_d) with k_1 a weak kernel of m, each next a weak
        kernel of the previous, and k_d the genuine kernel inclusion; the
        full sequence is verified left exact under every Hom(X_z, -).

        Raises DKernelNotLeftExact (carrying the failing summand) when the
        genuine kernel leaves add(M) or exactness fails.
        """
        if d < 1:
            raise ValueError("d must be positive")
        chain: list[XMap] = [m]
        for _ in range(d - 1):
            chain.append(self.weak_kernel(chain[-1], minimize))
        last = chain[-1]
        k, incl = rep.kernel(last.mor)
        emb = self.embed(k)
        if emb is None:
            raise DKernelNotLeftExact(
                "the final kernel is not in add(M)",
                {"kind": "kernel-escapes", "dims": k.dims.tolist(),
                 "after_steps": d - 1})
        xk, iso = emb
        chain.append(XMap(xk, last.src, incl.compose(iso)))
        seq = chain[1:]
        self._verify_left_exact(m, seq)
        return seq

    def _verify_left_exact(self, m: XMap, seq: list[XMap]) -> None:
        maps = [m] + list(seq)  # maps[t]: X_{t+1} -> X_t directionwise
        for z in range(len(self.summands)):
            mats = [self.post_matrix(t, z) for t in maps]
            last = mats[-1]
            if self.field.nullspace(last).shape[1]:
                raise DKernelNotLeftExact(
                    "deepest map is not mono under Hom(X, -)",
                    {"kind": "not-mono", "summand": z, "depth": len(seq)})
            for t in range(len(mats) - 1):
                outer, inner = mats[t], mats[t + 1]
                if ((outer @ inner) % self.field.p).any():
                    raise DKernelNotLeftExact(
                        "consecutive maps do not compose to zero",
                        {"kind": "nonzero-composite", "summand": z, "position": t})
                null_dim = outer.shape[1] - self.field.rank(outer)
                if self.field.rank(inner) != null_dim:
                    raise DKernelNotLeftExact(
                        "homology at an inner term",
                        {"kind": "not-exact", "summand": z, "position": t,
                         "image_rank": int(self.field.rank(inner)),
                         "kernel_dim": int(null_dim)})

    def d_cokernel(self, m: XMap, d: int, minimize: bool = True) -> list[XMap]:
        """Dual of d_kernel: (c_1, ..., c_d) ending in the genuine cokernel,
        verified right exact under every Hom(-, X_z)."""
        try:
            op_seq = self.op.d_kernel(self.dual_xmap(m), d, minimize)
        except DKernelNotLeftExact as e:
            raise DCokernelNotRightExact(str(e), e.witness) from None
        return [self.op.dual_xmap(t) for t in op_seq]


# -- algebra-side resolutions, Ext, transpose, translates ----------------------


def _resolution_data(a: Representation) -> dict:
    data = getattr(a, "_resolution_cache", None)
    if data is None:
        data = {"terms": [a], "covers": [], "parts": [], "diffs": []}
        a._resolution_cache = data  # type: ignore[attr-defined]
    return data


def extend_resolution(a: Representation, length: int) -> dict:
    """Minimal projective resolution data out to P_length."""
    data = _resolution_data(a)
    while len(data["covers"]) <= length:
        k = len(data["covers"])
        cover, verts = rep.projective_cover(data["terms"][k])
        data["covers"].append(cover)
        data["parts"].append(verts)
        ker, incl = rep.kernel(cover)
        data["terms"].append(ker)
        if k > 0:
            data["diffs"].append(data["_incl_prev"].compose(cover))  # type: ignore[index]
        data["_incl_prev"] = incl
    return data


def _gen_positions(algebra: BoundQuiverAlgebra, verts: list[int]) -> list[tuple[int, int]]:
    """(vertex, coordinate offset inside that vertex) of each part generator
    in the direct sum of projectives over verts."""
    nv = algebra.quiver.num_vertices
    offs = [0] * nv
    out = []
    proto = {}
    for v in set(verts):
        proto[v] = rep.projective(algebra, v)
    for v in verts:
        p = proto[v]
        by_vertex = p._basis_index  # type: ignore[attr-defined]
        triv = algebra.path_position[(v, ())]
        local = by_vertex[v].index(triv)
        out.append((v, offs[v] + local))
        for w in range(nv):
            offs[w] += int(p.dims[w])
    return out


def _path_actions(b: Representation) -> list[np.ndarray]:
    acts = getattr(b, "_path_actions", None)
    if acts is None:
        acts = [b.path_action(p) for p in b.algebra.basis_paths]
        b._path_actions = acts  # type: ignore[attr-defined]
    return acts


def _hom_complex_diff(diff: ModuleMorphism, parts_hi: list[int],
                      parts_lo: list[int], b: Representation) -> np.ndarray:
    """Matrix of Hom(diff, b): coordinates are values at part generators."""
    algebra = b.algebra
    F = b.field
    gens_hi = _gen_positions(algebra, parts_hi)
    acts = _path_actions(b)
    nv = algebra.quiver.num_vertices
    per_vertex: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    proto = {v: rep.projective(algebra, v) for v in set(parts_lo)}
    for pi, v in enumerate(parts_lo):
        by_vertex = proto[v]._basis_index  # type: ignore[attr-defined]
        for w in range(nv):
            for g in by_vertex[w]:
                per_vertex[w].append((pi, g))
    row_off = np.concatenate([[0], np.cumsum([int(b.dims[v]) for v in parts_hi])])
    col_off = np.concatenate([[0], np.cumsum([int(b.dims[v]) for v in parts_lo])])
    out = np.zeros((int(row_off[-1]), int(col_off[-1])), dtype=np.int64)
    for j, (vj, coord) in enumerate(gens_hi):
        x = diff.maps[vj][:, coord]
        for local, (pi, g) in enumerate(per_vertex[vj]):
            val = int(x[local])
            if not val:
                continue
            act = acts[g]  # b.dims[target g = vj] x b.dims[source g]
            r0, r1 = int(row_off[j]), int(row_off[j + 1])
            c0, c1 = int(col_off[pi]), int(col_off[pi + 1])
            out[r0:r1, c0:c1] = (out[r0:r1, c0:c1] + val * act) % F.p
    return out


def ext_dim(a: Representation, b: Representation, i: int) -> int:
    """dim Ext^i(a, b) from a minimal projective resolution of a."""
    if i < 0:
        raise ValueError("negative Ext degree")
    if a.total_dim == 0 or b.total_dim == 0:
        return 0
    if i == 0:
        return len(rep.hom_space(a, b))
    data = extend_resolution(a, i + 1)
    F = a.field

    def delta(k: int) -> np.ndarray:
        # Hom(P_k, b) -> Hom(P_{k+1}, b), from the differential P_{k+1} -> P_k
        diff = data["diffs"][k]
        return _hom_complex_diff(diff, data["parts"][k + 1], data["parts"][k], b)

    upper = delta(i)      # C^i -> C^{i+1}
    lower = delta(i - 1)  # C^{i-1} -> C^i
    null_upper = upper.shape[1] - F.rank(upper)
    return int(null_upper - F.rank(lower))


def _min_presentation(a: Representation):
    data = extend_resolution(a, 1)
    return data["diffs"][0], data["parts"][1], data["parts"][0]


def _yoneda_right_mult(algebra: BoundQuiverAlgebra, elem: np.ndarray,
                       src_vertex: int, tgt_vertex: int) -> ModuleMorphism:
    """Right multiplication by an element of e_t * A * e_s as a morphism
    P(tgt_vertex) -> P(src_vertex)."""
    F = algebra.field
    rm = np.einsum("j,ljk->kl", elem % F.p, algebra.table) % F.p
    p_src = rep.projective(algebra, src_vertex)
    p_tgt = rep.projective(algebra, tgt_vertex)
    bs = p_src._basis_index  # type: ignore[attr-defined]
    bt = p_tgt._basis_index  # type: ignore[attr-defined]
    maps = []
    for w in range(algebra.quiver.num_vertices):
        maps.append(rm[np.ix_(bs[w], bt[w])] if bs[w] and bt[w]
                    else np.zeros((len(bs[w]), len(bt[w])), dtype=np.int64))
    return ModuleMorphism(p_tgt, p_src, maps)


def transpose(a: Representation) -> Representation:
    """Cokernel of the dual of a minimal presentation, over the opposite
    algebra; projective summands of the input die here, so the result feeds
    straight into the translate."""
    algebra = a.algebra
    op = algebra.opposite
    F = algebra.field
    diff, parts1, parts0 = _min_presentation(a)
    if not parts0:
        return rep.zero_rep(op)
    rmap = algebra.reverse_path_map()
    p0 = [rep.projective(algebra, v) for v in parts0]
    # extract the algebra element of each block of the presentation
    gens1 = _gen_positions(algebra, parts1)

    def offsets(parts):
        offs = []
        run = np.zeros(algebra.quiver.num_vertices, dtype=np.int64)
        for v in parts:
            offs.append(run.copy())
            run += rep.projective(algebra, v).dims
        return offs

    offs0 = offsets(parts0)
    blocks: dict[tuple[int, int], np.ndarray] = {}
    for j, (vj, coord) in enumerate(gens1):
        x = diff.maps[vj][:, coord]
        for i, vi in enumerate(parts0):
            pi = p0[i]
            bi = pi._basis_index  # type: ignore[attr-defined]
            lo = int(offs0[i][vj])
            elem = np.zeros(algebra.dim, dtype=np.int64)
            for local, g in enumerate(bi[vj]):
                elem[g] = x[lo + local]
            blocks[(j, i)] = elem  # element of e_{vj} A e_{vi}
    # assemble the dual map between opposite projectives
    src_parts = [rep.projective(op, v) for v in parts0]
    dst_parts = [rep.projective(op, v) for v in parts1]
    src_total, src_incls, src_projs = rep.direct_sum(op, src_parts)
    dst_total, dst_incls, dst_projs = rep.direct_sum(op, dst_parts)
    g = rep.zero_morphism(src_total, dst_total)
    for (j, i), elem in blocks.items():
        if not elem.any():
            continue
        op_elem = (rmap @ elem) % F.p
        block = _yoneda_right_mult(op, op_elem, parts1[j], parts0[i])
        g = g.add(dst_incls[j].compose(block).compose(src_projs[i]))
    c, _ = rep.cokernel(g)
    return c


def tau(a: Representation) -> Representation:
    """Auslander-Reiten translate (dual of the transpose)."""
    return rep.dualize(transpose(a))


def tau_inverse(a: Representation) -> Representation:
    return transpose(rep.dualize(a))


def tau_d(a: Representation, d: int) -> Representation:
    """Higher translate: tau after d-1 minimal syzygies."""
    cur = a
    for _ in range(d - 1):
        cur = rep.syzygy(cur)
    return tau(cur)


def tau_d_inverse(a: Representation, d: int) -> Representation:
    cur = a
    for _ in range(d - 1):
        cur = rep.cosyzygy(cur)
    return tau_inverse(cur)
