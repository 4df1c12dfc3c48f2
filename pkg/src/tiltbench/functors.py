"""Finitely presented functors on an additive subcategory.

A coherent functor F is stored as a presentation map f: X1 -> X0 in add(M);
F(Z) = Hom(Z, X0) / im(f o -).  Everything downstream is linear algebra on
hom coordinates: morphisms of functors are lifts between presentation
targets, kernels and cokernels come from weak-kernel completions of the
presentation square, and the star/double-star calculus is driven by weak
kernel chains over the two sides.

The localization to modules is psi_tilde (cokernel of the presentation);
effaceable functors are exactly its kernel, which is tested definitionally
(presentation map epi relative to the subcategory).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tiltbench import rep
from tiltbench.rep import ModuleMorphism, Representation
from tiltbench.subcat import (ResolutionCapExceeded, SubcategoryX, XMap, XObject,
                              block_component, concat_xmaps_cols, negate_xmap)


class SequenceCheckFailed(Exception):
    """A unit/counit four-term sequence failed its evaluation-point check."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass
class EvalData:
    ambient: int           # dim Hom(X_z, X0)
    proj: np.ndarray       # quotient projection onto F(z) coordinates
    reps: np.ndarray       # section of proj
    dim: int


class CoherentFunctor:
    def __init__(self, subcat: SubcategoryX, pres: XMap):
        self.subcat = subcat
        self.pres = pres
        self._evals: dict[int, EvalData] = {}
        self._star_chain: tuple[XMap, XMap] | None = None

    @classmethod
    def yoneda(cls, subcat: SubcategoryX, xobj: XObject) -> "CoherentFunctor":
        z = subcat.zero_obj()
        return cls(subcat, XMap(z, xobj, rep.zero_morphism(z.rep, xobj.rep)))

    @classmethod
    def zero(cls, subcat: SubcategoryX) -> "CoherentFunctor":
        z = subcat.zero_obj()
        return cls(subcat, XMap(z, z, rep.zero_morphism(z.rep, z.rep)))

    def evaluate(self, z: int) -> EvalData:
        if z not in self._evals:
            x = self.subcat
            F = x.field
            ambient = x.hom_dim(z, self.pres.dst)
            denom = x.post_matrix(self.pres, z)
            basis = F.column_reduce(denom)
            proj, reps = F.quotient_projection(basis, ambient)
            self._evals[z] = EvalData(ambient, proj, reps, proj.shape[0])
        return self._evals[z]

    def eval_dim(self, z: int) -> int:
        return self.evaluate(z).dim

    @property
    def is_zero(self) -> bool:
        return all(self.eval_dim(z) == 0 for z in range(len(self.subcat.summands)))

    def total_dim(self) -> int:
        return sum(self.eval_dim(z) for z in range(len(self.subcat.summands)))

    def __repr__(self) -> str:
        return f"CoherentFunctor({self.pres.src.parts} -> {self.pres.dst.parts})"


class FunctorMorphism:
    """Natural transformation between coherent functors, given by a lift
    between presentation targets; the compatibility square is solved for on
    construction."""

    def __init__(self, source: CoherentFunctor, target: CoherentFunctor,
                 lift: XMap, verify: bool = True):
        self.source = source
        self.target = target
        self.lift = lift
        if verify:
            x = source.subcat
            g = target.pres
            need = lift.mor.compose(source.pres.mor)  # X1 -> Y0
            mat = x.obj_post_matrix(g, source.pres.src)
            want = x.obj_coords(source.pres.src, g.dst, need)
            if x.field.solve_many(mat, want.reshape(-1, 1)) is None:
                raise ValueError("lift does not descend to a map of functors")

    def eval_matrix(self, z: int) -> np.ndarray:
        F = self.source.subcat.field
        ef = self.source.evaluate(z)
        eg = self.target.evaluate(z)
        post = self.source.subcat.post_matrix(self.lift, z)
        return (eg.proj @ ((post @ ef.reps) % F.p)) % F.p

    @property
    def is_zero(self) -> bool:
        x = self.source.subcat
        g = self.target.pres
        mat = x.obj_post_matrix(g, self.source.pres.dst)
        want = x.obj_coords(self.source.pres.dst, g.dst, self.lift.mor)
        return x.field.solve_many(mat, want.reshape(-1, 1)) is not None

    def compose(self, other: "FunctorMorphism") -> "FunctorMorphism":
        return FunctorMorphism(other.source, self.target,
                               XMap(other.lift.src, self.lift.dst,
                                    self.lift.mor.compose(other.lift.mor)),
                               verify=False)

    def add(self, other: "FunctorMorphism") -> "FunctorMorphism":
        return FunctorMorphism(self.source, self.target,
                               XMap(self.lift.src, self.lift.dst,
                                    self.lift.mor.add(other.lift.mor)),
                               verify=False)

    def scale(self, c: int) -> "FunctorMorphism":
        return FunctorMorphism(self.source, self.target,
                               XMap(self.lift.src, self.lift.dst,
                                    self.lift.mor.scale(c)),
                               verify=False)


def identity_functor_morphism(f: CoherentFunctor) -> FunctorMorphism:
    x0 = f.pres.dst
    return FunctorMorphism(f, f, XMap(x0, x0, rep.identity_morphism(x0.rep)),
                           verify=False)


def yoneda_morphism(x: SubcategoryX, m: XMap) -> FunctorMorphism:
    return FunctorMorphism(CoherentFunctor.yoneda(x, m.src),
                           CoherentFunctor.yoneda(x, m.dst), m, verify=False)


def hom_functors(f: CoherentFunctor, g: CoherentFunctor) -> list[FunctorMorphism]:
    """Basis of natural transformations f -> g, as coset representatives of
    {a: a o pres_f factors through pres_g} modulo {pres_g o s}."""
    x = f.subcat
    F = x.field
    pf, pg = f.pres, g.pres
    pre_f = x.obj_pre_matrix(pf, pg.dst)        # Hom(X0,Y0) -> Hom(X1,Y0)
    post_g = x.obj_post_matrix(pg, pf.src)      # Hom(X1,Y1) -> Hom(X1,Y0)
    n_a = pre_f.shape[1]
    system = np.concatenate([pre_f, (-post_g) % F.p], axis=1) % F.p
    pairs = F.nullspace(system)
    a_space = F.column_reduce(pairs[:n_a, :]) if pairs.size else np.zeros((n_a, 0), dtype=np.int64)
    denom = F.column_reduce(x.obj_post_matrix(pg, pf.dst))
    picked = []
    seen = denom
    for j in range(a_space.shape[1]):
        cand = np.concatenate([seen, a_space[:, j:j + 1]], axis=1)
        if F.rank(cand) > seen.shape[1]:
            seen = F.column_reduce(cand)
            picked.append(a_space[:, j])
    out = []
    for coords in picked:
        mor = x.obj_from_coords(pf.dst, pg.dst, coords)
        out.append(FunctorMorphism(f, g, XMap(pf.dst, pg.dst, mor), verify=False))
    return out


def cokernel_functor(phi: FunctorMorphism) -> tuple[CoherentFunctor, FunctorMorphism]:
    """Presented by [lift  pres_g]: X0 + Y1 -> Y0."""
    x = phi.source.subcat
    g = phi.target.pres
    pres = concat_xmaps_cols(x, [phi.lift, g], g.dst)
    c = CoherentFunctor(x, pres)
    proj = FunctorMorphism(phi.target, c,
                           XMap(g.dst, g.dst, rep.identity_morphism(g.dst.rep)),
                           verify=False)
    _check_cokernel(phi, c)
    return c, proj


def _check_cokernel(phi: FunctorMorphism, c: CoherentFunctor) -> None:
    for z in range(len(phi.source.subcat.summands)):
        m = phi.eval_matrix(z)
        want = phi.target.eval_dim(z) - phi.source.subcat.field.rank(m)
        if c.eval_dim(z) != want:
            raise AssertionError("cokernel functor failed evaluation check")


def kernel_functor(phi: FunctorMorphism, minimize: bool = True
                   ) -> tuple[CoherentFunctor, FunctorMorphism]:
    """Weak-kernel completion of the presentation square."""
    x = phi.source.subcat
    f, g = phi.source.pres, phi.target.pres
    combo1 = concat_xmaps_cols(x, [phi.lift, negate_xmap(g)], g.dst)
    t = x.weak_kernel(combo1, minimize)
    t0 = block_component(x, t, phi.lift.src)      # T -> X0
    combo2 = concat_xmaps_cols(x, [t0, negate_xmap(f)], f.dst)
    u = x.weak_kernel(combo2, minimize)
    u0 = block_component(x, u, t0.src)            # U -> T
    k = CoherentFunctor(x, u0)
    incl = FunctorMorphism(k, phi.source, t0, verify=False)
    _check_kernel(phi, k, incl)
    return k, incl


def _check_kernel(phi: FunctorMorphism, k: CoherentFunctor,
                  incl: FunctorMorphism) -> None:
    F = phi.source.subcat.field
    for z in range(len(phi.source.subcat.summands)):
        m = phi.eval_matrix(z)
        null_dim = m.shape[1] - F.rank(m)
        if k.eval_dim(z) != null_dim:
            raise AssertionError("kernel functor failed evaluation dimension check")
        im = incl.eval_matrix(z)
        if ((m @ im) % F.p).any():
            raise AssertionError("kernel inclusion does not compose to zero")
        if F.rank(im) != null_dim:
            raise AssertionError("kernel inclusion has wrong image")


def is_effaceable(f: CoherentFunctor) -> tuple[bool, int | None]:
    """Vanishing in the localization: presentation map epi relative to X."""
    return f.subcat.is_epi(f.pres)


def psi_tilde(f: CoherentFunctor) -> Representation:
    """The localization functor to modules: cokernel of the presentation."""
    c, _ = rep.cokernel(f.pres.mor)
    return c


def psi_tilde_morphism(phi: FunctorMorphism) -> ModuleMorphism:
    """Induced map on localizations."""
    F = phi.source.subcat.field
    cf, projf = rep.cokernel(phi.source.pres.mor)
    cg, projg = rep.cokernel(phi.target.pres.mor)
    maps = []
    for v in range(len(cf.dims)):
        rhs = (projg.maps[v] @ phi.lift.mor.maps[v]) % F.p
        sol = F.solve_many(projf.maps[v].T, rhs.T)
        if sol is None:
            raise AssertionError("induced map on cokernels does not exist")
        maps.append(sol.T % F.p)
    return ModuleMorphism(cf, cg, maps)


def star(f: CoherentFunctor) -> CoherentFunctor:
    """F* = Ker(- o pres) in functors on the opposite side, presented by the
    second weak kernel of the dualized presentation."""
    x = f.subcat
    o = x.op
    fop = x.dual_xmap(f.pres)
    t1 = o.weak_kernel(fop, minimize=True)
    t2 = o.weak_kernel(t1, minimize=True)
    out = CoherentFunctor(o, t2)
    f._star_chain = (t1, t2)
    return out


def transpose_functor(f: CoherentFunctor) -> CoherentFunctor:
    """Tr F = Coker(- o pres): presented over the opposite side by the
    dualized presentation itself."""
    return CoherentFunctor(f.subcat.op, f.subcat.dual_xmap(f.pres))


def _double_star_data(f: CoherentFunctor):
    """(unit, F**, c1x, c2x, s1): the two dualized transpose-chain maps on
    the original side and the first weak kernel presenting F**."""
    x = f.subcat
    o = x.op
    fs = star(f)
    fss = star(fs)
    t1, t2 = f._star_chain         # over op: T1 -> DX0, T2 -> T1
    s1, s2 = fs._star_chain        # over x:  S1 -> T1x, S2 -> S1
    c1x = o.dual_xmap(t1)          # X0-parts -> T1x
    c2x = o.dual_xmap(t2)          # T1x -> T2x
    x0 = f.pres.dst
    c1 = XMap(x0, c1x.dst, c1x.mor)
    mat = x.obj_post_matrix(s1, x0)
    want = x.obj_coords(x0, s1.dst, c1.mor)
    sol = x.field.solve_many(mat, want.reshape(-1, 1))
    if sol is None:
        raise AssertionError("unit lift does not factor through the weak kernel")
    u_mor = x.obj_from_coords(x0, s1.src, sol[:, 0])
    unit = FunctorMorphism(f, fss, XMap(x0, s2.dst, u_mor))
    return unit, fss, c1, c2x, s1


def unit_to_double_star(f: CoherentFunctor) -> tuple[FunctorMorphism, CoherentFunctor]:
    """The unit F -> F**, solved from the weak-kernel chains of both stars."""
    unit, fss, _, _, _ = _double_star_data(f)
    return unit, fss


def verify_star_adjunction_sequences(f: CoherentFunctor) -> dict:
    """Check the four-term exact sequence around the unit F -> F** at every
    evaluation point: the kernel of the unit matches Ext^1 of the transpose
    against the other side (and consists exactly of the classes killed by
    the chain map), the cokernel matches Ext^2 through an onto comparison
    map, and exactness holds at F**.  Returns per-summand dimensions."""
    x = f.subcat
    F = x.field
    unit, fss, c1, c2x, s1 = _double_star_data(f)
    report = {}
    for z in range(len(x.summands)):
        d0 = x.post_matrix(f.pres, z)     # Hom(Z,X1) -> Hom(Z,X0)
        d1 = x.post_matrix(c1, z)         # Hom(Z,X0) -> Hom(Z,T1)
        d2 = x.post_matrix(c2x, z)        # Hom(Z,T1) -> Hom(Z,T2)
        if ((d1 @ d0) % F.p).any() or ((d2 @ d1) % F.p).any():
            raise SequenceCheckFailed("transpose resolution is not a complex",
                                      {"summand": z})
        e1 = int(d1.shape[1] - F.rank(d1) - F.rank(d0))
        e2 = int(d2.shape[1] - F.rank(d2) - F.rank(d1))
        ef = f.evaluate(z)
        ess = fss.evaluate(z)
        eta = unit.eval_matrix(z)
        k_dim = int(eta.shape[1] - F.rank(eta))
        c_dim = int(ess.dim - F.rank(eta))
        if k_dim != e1 or c_dim != e2:
            raise SequenceCheckFailed(
                "unit kernel/cokernel do not match the transpose Ext terms",
                {"summand": z, "ker_unit": k_dim, "ext1": e1,
                 "coker_unit": c_dim, "ext2": e2})
        # mapwise: ker(eta) = classes of {v : c1 o v = 0}
        amb_null = F.nullspace(d1)
        killed = (ef.proj @ amb_null) % F.p if amb_null.size else \
            np.zeros((ef.dim, 0), dtype=np.int64)
        killed = F.column_reduce(killed)
        eta_null = F.nullspace(eta)
        if killed.shape[1] != k_dim or eta_null.shape[1] != k_dim or (
                k_dim and not F.column_space_contains(eta_null, killed)):
            raise SequenceCheckFailed(
                "kernel of the unit is not the classes killed by the chain map",
                {"summand": z})
        # pi: F**(Z) -> ker(d2)/im(d1), [w] -> [s1 o w]; must be onto with
        # kernel exactly the image of eta
        w_basis = F.nullspace(d2)
        w_proj, _ = F.quotient_projection(F.column_reduce(d1), d2.shape[1])
        # coordinates of ker(d2)/im(d1): project nullspace basis and reduce
        w_amb = (w_proj @ w_basis) % F.p if w_basis.size else \
            np.zeros((w_proj.shape[0], 0), dtype=np.int64)
        w_space = F.column_reduce(w_amb)
        post_s1 = x.post_matrix(s1, z)    # Hom(Z,S1) -> Hom(Z,T1)
        pi = (w_proj @ ((post_s1 @ ess.reps) % F.p)) % F.p
        if F.rank(pi) != w_space.shape[1]:
            raise SequenceCheckFailed(
                "comparison map onto the Ext^2 term is not surjective",
                {"summand": z, "rank": int(F.rank(pi)),
                 "target_dim": int(w_space.shape[1])})
        pi_null = F.nullspace(pi)
        im_eta = F.column_reduce(eta)
        if pi_null.shape[1] != im_eta.shape[1] or (
                im_eta.shape[1] and not F.column_space_contains(pi_null, im_eta)):
            raise SequenceCheckFailed(
                "image of the unit does not match the kernel of the comparison map",
                {"summand": z})
        report[z] = {"F": ef.dim, "Fss": ess.dim, "ext1": e1, "ext2": e2}
    return report


def functor_ext_yoneda(f: CoherentFunctor, z: int, i: int, cap: int = 10) -> int:
    """dim Ext^i in the functor category from F to the functor represented
    by summand z, via a weak-kernel resolution of the presentation."""
    x = f.subcat
    F = x.field
    if i < 0:
        raise ValueError("negative Ext degree")
    if i + 1 > cap:
        raise ResolutionCapExceeded(f"needed resolution length {i + 1} > cap {cap}")
    diffs = [f.pres]
    while len(diffs) < i + 1:
        diffs.append(x.weak_kernel(diffs[-1], minimize=True))
    if i == 0:
        m = x.pre_matrix(diffs[0], z)
        return int(m.shape[1] - F.rank(m))
    upper = x.pre_matrix(diffs[i], z)       # C^i -> C^{i+1}
    lower = x.pre_matrix(diffs[i - 1], z)   # C^{i-1} -> C^i
    return int(upper.shape[1] - F.rank(upper) - F.rank(lower))
