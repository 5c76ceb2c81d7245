"""End-to-end checks of the classification machinery on seeded corpora"""

import json

import pytest

from cyclic_lattices.cohomology.tate import cohomology_via_resolution, h_one, tate_minus_one, tate_zero
from cyclic_lattices.core.config import settings
from cyclic_lattices.dedekind.criterion import dedekind_criterion, verify_theorem_3_3
from cyclic_lattices.exactla.abelian import AbelianInvariants
from cyclic_lattices.flabby.classify import classify
from cyclic_lattices.flabby.counterexample import Verdict, counterexample_4_3
from cyclic_lattices.flabby.decomposition import SteinitzClass, phi_decompose
from cyclic_lattices.flabby.recognition import PermutationDecomposition, permutation_recognize_cp
from cyclic_lattices.flabby.resolution import CoverStrategy, flabby_resolution
from cyclic_lattices.groupring.base_ring import BaseRing
from cyclic_lattices.groupring.cyclic import CyclicGroup, subgroups
from cyclic_lattices.lattice.constructors import (
    augmentation_ideal,
    cyclotomic_sequence,
    permutation_lattice,
    zeta_twist,
)
from cyclic_lattices.lattice.filtrations import fixed_sublattice
from cyclic_lattices.lattice.lattice import GroupLattice
from cyclic_lattices.lattice.sampling import random_lattice
from cyclic_lattices.main import main


class TestCohomologyOracle:
    def test_two_hundred_lattices(self, random_corpus):
        """Test the cocycle formula for H^1 against the periodic resolution"""
        assert len(random_corpus) == 200
        for m in random_corpus:
            for h in subgroups(m.group):
                assert h_one(m, h).invariants == cohomology_via_resolution(m, h, 1)


class TestFlabbyCoflabby:
    def test_flags_agree(self, random_corpus):
        for m in random_corpus:
            result = classify(m)
            assert result.is_flabby == result.is_coflabby


class TestAugmentationIdeal:
    @pytest.mark.parametrize("n", range(1, 13))
    def test_h_one(self, integers, n):
        """Test H^1(C_n, I) = Z/n"""
        g = CyclicGroup(n)
        expected = AbelianInvariants(0, (n,)) if n > 1 else AbelianInvariants.trivial()
        assert h_one(augmentation_ideal(integers, g), g.full).invariants == expected


class TestResolutionContract:
    @staticmethod
    def _check(m, strategy):
        resolution = flabby_resolution(m, strategy)
        assert resolution.verify().is_exact
        assert resolution.inner == m
        assert resolution.middle == permutation_lattice(m.base, m.group, resolution.orbit_sizes)
        assert classify(resolution.outer).is_flabby

    @pytest.mark.parametrize("strategy", list(CoverStrategy))
    def test_small_corpus(self, small_corpus, strategy):
        for m in small_corpus:
            self._check(m, strategy)

    @pytest.mark.slow
    @pytest.mark.parametrize("strategy", list(CoverStrategy))
    def test_two_hundred_lattices(self, random_corpus, strategy):
        """Test both covers on every corpus lattice, C_6 included"""
        for m in random_corpus:
            self._check(m, strategy)

    @pytest.mark.parametrize("n", [4, 6, 8, 9, 12])
    def test_cyclotomic_sequence(self, integers, n):
        """Test the Phi_n sequence is exact, with a permutation cokernel for prime powers"""
        result = cyclotomic_sequence(integers, CyclicGroup(n))
        assert result.sequence.verify().is_exact
        assert result.cokernel_is_permutation == (n in (4, 8, 9))


class TestPermutationRecognition:
    def test_hundred_flabby_lattices(self):
        """Test recognized profiles match rank, fixed rank and |H^0| over Z_(p)"""
        count = 0
        for p in (2, 3, 5):
            for seed in range(34 if p != 5 else 32):
                g = CyclicGroup(p)
                m = random_lattice(g, seed % 8 + 1, seed, base=BaseRing.localized(p), block_kinds=("permutation",))
                result = permutation_recognize_cp(m, p)
                assert isinstance(result, PermutationDecomposition)
                assert result.a + p * result.c == m.z_rank
                assert fixed_sublattice(m, g.full).cols == result.a + result.c
                assert tate_minus_one(m, g.full).is_zero
                assert tate_zero(m, g.full).invariants.order == p ** result.a
                count += 1
        assert count == 100

    @staticmethod
    def _assert_profile(m, p):
        result = permutation_recognize_cp(m, p)
        assert isinstance(result, PermutationDecomposition)
        assert result.a + p * result.c == m.z_rank
        assert fixed_sublattice(m, m.group.full).cols == result.a + result.c

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_flabby_members_of_mixed_corpus(self, p):
        """Test lattices drawn from every block kind and reported flabby have a permutation profile"""
        g = CyclicGroup(p)
        flabby = []
        for seed in range(40):
            m = random_lattice(g, seed % 4 + 1, 500 + seed, base=BaseRing.localized(p))
            if classify(m).is_flabby:
                flabby.append(m)
        assert flabby
        for m in flabby:
            self._assert_profile(m, p)

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("strategy", list(CoverStrategy))
    def test_flabby_resolution_terms(self, integers, p, strategy):
        """Test the flabby term E of a resolution of I or of the zeta twist is permutation at p"""
        g = CyclicGroup(p)
        for m in (augmentation_ideal(integers, g), zeta_twist(p)):
            outer = flabby_resolution(m, strategy).outer
            assert classify(outer).is_flabby
            self._assert_profile(outer, p)


class TestNonInvertibleExample:
    @pytest.mark.parametrize("p", [3, 5])
    def test_odd_primes(self, p):
        report = counterexample_4_3(p)
        assert report.minus_one_m.zeta_blocks == (1,)
        assert all(size == p - 1 for size in report.zero_p.zeta_blocks)
        assert report.length_zero_e % (p - 1) == 1
        assert report.verdict == Verdict.NOT_INVERTIBLE

    def test_gaussian(self):
        """Test the Gaussian variant: H^-1(M) = R/2R is a single block of size 2"""
        report = counterexample_4_3(None, gaussian=True)
        assert report.minus_one_m.zeta_blocks == (2,)
        assert report.length_zero_e % 2 == 0
        assert report.verdict == Verdict.INCONCLUSIVE


class TestCyclotomicMaximality:
    def test_n_up_to_40(self):
        assert all(verify_theorem_3_3(n).holds for n in range(1, 41))

    def test_negative_control(self):
        assert not dedekind_criterion([3, 0, 1], 2).maximal


class TestPhiDecomposition:
    def test_rank_identity(self):
        for n in range(1, 13):
            for seed in range(4):
                m = random_lattice(CyclicGroup(n), seed + 1, seed)
                decomposition = phi_decompose(m)
                assert decomposition.rank_identity
                for component in decomposition.components:
                    if component.index in settings.STEINITZ_ALLOWLIST:
                        assert component.steinitz.steinitz == SteinitzClass.TRIVIAL

    def test_localized_base(self):
        m = random_lattice(CyclicGroup(5), 6, 1)
        local = GroupLattice(BaseRing.localized(5), m.group, m.z_rank, m.sigma_action)
        assert all(c.steinitz.steinitz == SteinitzClass.TRIVIAL for c in phi_decompose(local).components)


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["classify", "--builtin", "random:3:4", "--seed", "11"],
        ["example-4-3", "--p", "3"],
        ["dedekind", "--n", "30"],
    ])
    def test_byte_identical(self, capsys, argv):
        outputs = []
        for _ in range(2):
            assert main(["--format", "structured", *argv]) == 0
            outputs.append(json.dumps(json.loads(capsys.readouterr().out)["results"], sort_keys=True))
        assert outputs[0] == outputs[1]
