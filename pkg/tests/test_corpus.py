"""Frozen verdicts for the bundled job corpus.

Every entry's report at the default seed/trials is pinned below:
(check name, status, witness kind).  A change here means either a corpus
edit or a behavioral change in a checker — both deserve a close look.

The two Nakayama entries carry declared indecomposable lists; the oracle
class at the bottom certifies those lists really enumerate the
indecomposables (local endomorphism rings, pairwise non-isomorphic, and
closed under kernels and cokernels of sampled maps between projectives).
"""
import numpy as np
import pytest

from tiltbench import jobspec, rep

EXPECTED = {
    "hereditary_a3_proj_inj": ("fail", [
        ("A0", "certified-pass", None),
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "certified-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "certified-pass", None),
        ("1-Rigid", "certified-pass", None),
        ("A4.1+op", "fail", "a4-chain-end"),
        ("1-precluster-tilting", "fail", "tau-escapes"),
        ("1-cluster-tilting", "fail", "coresolution-overruns"),
        ("1-abelian", "fail", "d-cokernel-missing"),
    ]),
    "hereditary_a3_regular_only": ("fail", [
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "fail", "epi-not-weak-cokernel"),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "fail", "missing-injective"),
        ("1-cluster-tilting", "fail", "missing-injective"),
        ("1-abelian", "fail", "axiom-fails"),
    ]),
    "linear_a2_generator": ("pass", [
        ("A0", "certified-pass", None),
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "certified-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "certified-pass", None),
        ("1-Rigid", "certified-pass", None),
        ("A4.1+op", "sampled-pass", None),
        ("1-precluster-tilting", "certified-pass", None),
        ("1-cluster-tilting", "certified-pass", None),
        ("1-abelian", "sampled-pass", None),
    ]),
    "nakayama_a3_rad2_bimodule": ("fail", [
        ("A0", "certified-pass", None),
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "certified-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "certified-pass", None),
        ("1-Rigid", "certified-pass", None),
        ("2-Rigid", "certified-pass", None),
        ("3-Rigid", "fail", "ext-nonvanishing"),
        ("A4.2+op", "sampled-pass", None),
        ("2-precluster-tilting", "certified-pass", None),
        ("1-cluster-tilting", "fail", "coresolution-overruns"),
        ("2-cluster-tilting", "certified-pass", None),
        ("1-abelian", "fail", "d-kernel-missing"),
        ("2-abelian", "sampled-pass", None),
    ]),
    "nakayama_a3_rad2_regular_only": ("fail", [
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "sampled-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "fail", "missing-injective"),
        ("1-Rigid", "sampled-pass", None),
        ("1-cluster-tilting", "fail", "missing-injective"),
        ("1-abelian", "fail", "d-cokernel-missing"),
    ]),
    "nakayama_a4_rad2_bimodule": ("fail", [
        ("A0", "certified-pass", None),
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "certified-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "certified-pass", None),
        ("2-Rigid", "certified-pass", None),
        ("3-Rigid", "certified-pass", None),
        ("A4.3+op", "sampled-pass", None),
        ("3-precluster-tilting", "certified-pass", None),
        ("2-cluster-tilting", "fail", "resolution-overruns"),
        ("3-cluster-tilting", "certified-pass", None),
        ("2-abelian", "fail", "d-kernel-missing"),
        ("3-abelian", "sampled-pass", None),
    ]),
    "regular_only_a2": ("fail", [
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "fail", "epi-not-weak-cokernel"),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "fail", "missing-injective"),
        ("1-Rigid", "fail", "chain-breaks"),
        ("1-cluster-tilting", "fail", "missing-injective"),
        ("1-abelian", "fail", "axiom-fails"),
    ]),
    "semisimple_pair": ("pass", [
        ("A0", "certified-pass", None),
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "certified-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "certified-pass", None),
        ("1-Rigid", "certified-pass", None),
        ("2-Rigid", "certified-pass", None),
        ("3-Rigid", "certified-pass", None),
        ("A4.1+op", "sampled-pass", None),
        ("A4.2+op", "sampled-pass", None),
        ("1-precluster-tilting", "certified-pass", None),
        ("2-precluster-tilting", "certified-pass", None),
        ("1-cluster-tilting", "certified-pass", None),
        ("2-cluster-tilting", "certified-pass", None),
        ("1-abelian", "sampled-pass", None),
        ("2-abelian", "sampled-pass", None),
    ]),
    "serial_x2_generator": ("fail", [
        ("A0", "certified-pass", None),
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "certified-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "certified-pass", None),
        ("1-Rigid", "certified-pass", None),
        ("2-Rigid", "fail", "ext-nonvanishing"),
        ("3-Rigid", "fail", "ext-nonvanishing"),
        ("A4.1+op", "sampled-pass", None),
        ("1-precluster-tilting", "certified-pass", None),
        ("1-cluster-tilting", "certified-pass", None),
        ("1-abelian", "sampled-pass", None),
    ]),
    "serial_x2_regular": ("fail", [
        ("A0", "certified-pass", None),
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "certified-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "certified-pass", None),
        ("1-Rigid", "certified-pass", None),
        ("A4.1+op", "sampled-pass", None),
        ("1-precluster-tilting", "certified-pass", None),
        ("1-cluster-tilting", "fail", "coresolution-overruns"),
        ("1-abelian", "fail", "d-kernel-missing"),
    ]),
    "serial_x3_generator": ("fail", [
        ("A0", "certified-pass", None),
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "certified-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "certified-pass", None),
        ("1-Rigid", "certified-pass", None),
        ("2-Rigid", "fail", "ext-nonvanishing"),
        ("3-Rigid", "fail", "ext-nonvanishing"),
        ("A4.1+op", "sampled-pass", None),
        ("1-precluster-tilting", "certified-pass", None),
        ("1-cluster-tilting", "certified-pass", None),
        ("1-abelian", "sampled-pass", None),
    ]),
    "serial_x4_generator": ("fail", [
        ("A0", "certified-pass", None),
        ("A1+A1op", "certified-pass", None),
        ("A2+A2op", "certified-pass", None),
        ("A3+A3op", "sampled-pass", None),
        ("gen-cogen-ff", "certified-pass", None),
        ("1-Rigid", "certified-pass", None),
        ("2-Rigid", "fail", "ext-nonvanishing"),
        ("A4.1+op", "sampled-pass", None),
        ("1-precluster-tilting", "certified-pass", None),
        ("1-cluster-tilting", "certified-pass", None),
        ("1-abelian", "sampled-pass", None),
    ]),
}


def test_inventory(corpus):
    assert sorted(corpus.names()) == sorted(EXPECTED)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_frozen_verdicts(corpus, name):
    status, rows = EXPECTED[name]
    rpt = corpus.report(name)
    assert rpt.status == status
    got = [(v.name,
            v.status,
            v.witness.get("kind") if isinstance(v.witness, dict) else None)
           for v in rpt.verdicts]
    assert got == rows


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_reports_are_wired_to_their_jobs(corpus, name):
    rpt = corpus.report(name)
    assert rpt.name == name
    assert rpt.seed == 42 and rpt.trials == 100
    assert rpt.disagreement is None


class TestDeclaredListsAreComplete:
    """For a serial radical-square-zero path algebra on n vertices the
    indecomposables are exactly the n projectives and the n-1 simples at
    non-sink vertices; the corpus declares precisely those."""

    @pytest.fixture(params=["nakayama_a3_rad2_bimodule",
                            "nakayama_a4_rad2_bimodule"])
    def realized(self, request, corpus):
        job = corpus.spec(request.param).realize()
        n = len(job.algebra.quiver.vertices)
        return job, n

    def test_count_and_distinctness(self, realized):
        job, n = realized
        decl = job.declared
        assert len(decl) == 2 * n - 1
        for m in decl:
            leaves = rep.decompose(m)
            assert len(leaves) == 1  # indecomposable
        for i in range(len(decl)):
            for j in range(i + 1, len(decl)):
                assert not rep.is_isomorphic(decl[i], decl[j])

    def test_closed_under_kernels_and_cokernels(self, realized):
        job, n = realized
        decl = job.declared
        projs = rep.regular_parts(job.algebra)
        rng = np.random.default_rng(7)
        field = job.algebra.field
        seen_nonsplit = 0
        for _ in range(120):
            i, j = rng.integers(0, len(projs), size=2)
            src, tgt = projs[i], projs[j]
            basis = rep.hom_space(src, tgt)
            if not basis:
                continue
            coeffs = field.random_matrix(rng, 1, len(basis))[0]
            mats = [sum(int(c) * b.maps[v] for c, b in zip(coeffs, basis)) % field.p
                    for v in range(n)]
            f = rep.ModuleMorphism(src, tgt, mats)
            for part, _ in (rep.kernel(f), rep.cokernel(f)):
                if int(sum(part.dims)) == 0:
                    continue
                seen_nonsplit += 1
                for leaf in rep.decompose(part):
                    assert any(rep.is_isomorphic(leaf.rep, m) for m in decl)
        assert seen_nonsplit > 20  # the sweep actually exercised the closure
