import pytest

from cyclic_lattices.cohomology import tate
from cyclic_lattices.cohomology.tate import (
    cohomology_via_resolution,
    crossed_homomorphisms,
    group_ring_action,
    h_one,
    norm_matrix,
    tate_minus_one,
    tate_profile,
    tate_zero,
)
from cyclic_lattices.core.config import settings
from cyclic_lattices.core.exceptions import InvariantViolation
from cyclic_lattices.exactla.abelian import AbelianInvariants
from cyclic_lattices.exactla.matrix import IntMatrix
from cyclic_lattices.exactla.normal_forms import kernel_basis
from cyclic_lattices.groupring.base_ring import BaseRing
from cyclic_lattices.groupring.cyclic import CyclicGroup, divisors_of, subgroups
from cyclic_lattices.lattice.constructors import (
    augmentation_ideal,
    permutation_lattice,
    sign_lattice,
    tensor_with_base,
    trivial_lattice,
    zeta_twist,
)
from cyclic_lattices.lattice.filtrations import fixed_sublattice
from cyclic_lattices.lattice.lattice import GroupLattice, direct_sum


def _cyclic(n):
    return AbelianInvariants(0, (n,)) if n > 1 else AbelianInvariants.trivial()


class TestNorm:
    def test_norm_of_trivial(self, trivial_c4, c4):
        assert norm_matrix(trivial_c4, c4.full) == IntMatrix.from_rows([[4]])
        assert norm_matrix(trivial_c4, c4.subgroup(2)) == IntMatrix.from_rows([[2]])

    def test_norm_of_regular(self, regular_c3, c3):
        assert norm_matrix(regular_c3, c3.full) == IntMatrix.from_rows([[1] * 3] * 3)

    def test_norm_kills_twist(self, twist_c3, c3):
        assert norm_matrix(twist_c3, c3.full).is_zero()

    def test_group_ring_action(self, augmentation_c4, c4):
        """Test the norm and tau - 1 as group ring elements of the order-2 subgroup"""
        h = c4.subgroup(2)
        tau = augmentation_c4.sigma_action.power(2)
        assert group_ring_action(augmentation_c4, h, [1, 1]) == norm_matrix(augmentation_c4, h)
        assert group_ring_action(augmentation_c4, h, [-1, 1]) == tau - IntMatrix.identity(3)


class TestTateGroups:
    def test_trivial_lattice(self, integers):
        """Test H^0(C_n, Z) = Z/n and H^-1(C_n, Z) = 0"""
        for n in range(1, 9):
            g = CyclicGroup(n)
            m = trivial_lattice(integers, g)
            assert tate_zero(m, g.full).invariants == _cyclic(n)
            assert tate_minus_one(m, g.full).is_zero

    def test_zeta_twist(self, twist_c3, c3):
        assert tate_minus_one(twist_c3, c3.full).invariants == AbelianInvariants(0, (3,))
        assert tate_zero(twist_c3, c3.full).is_zero

    def test_augmentation_h_one(self, integers):
        """Test H^1(C_n, I) = Z/n"""
        for n in range(2, 8):
            g = CyclicGroup(n)
            assert h_one(augmentation_ideal(integers, g), g.full).invariants == AbelianInvariants(0, (n,))

    def test_augmentation_profile(self, augmentation_c4, c4):
        """Test H^1 of I_{C_4} at the subgroups of order 1, 2 and 4"""
        profile = tate_profile(augmentation_c4)
        assert [h.order for h in profile] == [1, 2, 4]
        assert [entry.one.invariants for entry in profile.values()] == [
            AbelianInvariants.trivial(),
            AbelianInvariants(0, (2,)),
            AbelianInvariants(0, (4,)),
        ]

    def test_sign_lattice(self):
        g = CyclicGroup(2)
        assert h_one(sign_lattice(), g.full).invariants == AbelianInvariants(0, (2,))
        assert tate_zero(sign_lattice(), g.full).is_zero

    def test_shapiro(self, integers):
        """Test H^q(C_n, Z[pi/pi_d]) equals H^q(pi_d, Z) for q = -1, 0"""
        for n in range(2, 13):
            g = CyclicGroup(n)
            for d in divisors_of(n):
                m = permutation_lattice(integers, g, [n // d])
                assert tate_zero(m, g.full).invariants == _cyclic(d)
                assert tate_minus_one(m, g.full).is_zero

    def test_shapiro_degree_one(self, integers):
        """Test H^1(C_n, Z[pi/pi_d]) = Hom(pi_d, Z) = 0 and H^1(C_2k, Ind sign) = H^1(C_2, sign)"""
        for n in range(2, 13):
            g = CyclicGroup(n)
            for d in divisors_of(n):
                assert h_one(permutation_lattice(integers, g, [n // d]), g.full).is_zero
        for k in range(1, 7):
            # sigma^k acts by -1 on the induced lattice
            rows = [[0] * k for _ in range(k)]
            for i in range(k - 1):
                rows[i + 1][i] = 1
            rows[0][k - 1] = -1
            induced = GroupLattice(integers, CyclicGroup(2 * k), k, IntMatrix.from_rows(rows, cols=k))
            assert h_one(induced, induced.group.full).invariants == AbelianInvariants(0, (2,))

    def test_additive_under_direct_sum(self, random_corpus):
        """Test each Tate group of a sum is the sum of the Tate groups"""
        for a, b in zip(random_corpus[::9], random_corpus[1::9]):
            if a.group != b.group:
                continue
            total = tate_profile(direct_sum(a, b))
            first, second = tate_profile(a), tate_profile(b)
            for h, entry in total.items():
                assert entry.minus_one.invariants == first[h].minus_one.invariants + second[h].minus_one.invariants
                assert entry.zero.invariants == first[h].zero.invariants + second[h].zero.invariants
                assert entry.one.invariants == first[h].one.invariants + second[h].one.invariants

    def test_rank_zero(self, integers):
        m = augmentation_ideal(integers, CyclicGroup(1))
        assert tate_zero(m, m.group.full).is_zero
        assert h_one(m, m.group.full).is_zero

    def test_localized(self):
        """Test localizing at 3 keeps only the 3-part of H^0(C_6, Z)"""
        g = CyclicGroup(6)
        m = trivial_lattice(BaseRing.localized(3), g)
        assert tate_zero(m, g.full).invariants == AbelianInvariants(0, (3,))


class TestZetaBlocks:
    def test_trivial_action_over_zeta_3(self, c3):
        """Test H^0(C_3, Z[zeta_3]) = R/3R is one string of length 2"""
        m = trivial_lattice(BaseRing.cyclotomic(3), c3)
        group = tate_zero(m, c3.full, zeta_blocks=True)
        assert group.invariants == AbelianInvariants(0, (3, 3))
        assert group.zeta_blocks == (2,)

    def test_twist_over_zeta_3(self, c3):
        m = zeta_twist(3, over_cyclotomic=True)
        group = tate_minus_one(m, c3.full, zeta_blocks=True)
        assert group.zeta_blocks == (1,)
        assert group.length(3) == 1

    def test_blocks_fill_the_length(self, random_corpus):
        """Test string lengths add up to log_3 of the group order over Z[zeta_3]"""
        base = BaseRing.cyclotomic(3)
        for m in random_corpus:
            if m.group.order != 3:
                continue
            lifted = tensor_with_base(base, m.group, m.sigma_action)
            for group in (tate_zero(lifted, lifted.group.full, zeta_blocks=True),
                          tate_minus_one(lifted, lifted.group.full, zeta_blocks=True)):
                assert sum(group.zeta_blocks) == group.length(3)

    def test_blocks_need_cyclotomic_base(self, twist_c3, c3):
        with pytest.raises(InvariantViolation):
            tate_minus_one(twist_c3, c3.full, zeta_blocks=True)


class TestResolutionCrossCheck:
    def test_h_one_matches_periodic_resolution(self, random_corpus):
        for m in random_corpus:
            for h in subgroups(m.group):
                assert h_one(m, h).invariants == cohomology_via_resolution(m, h, 1)

    def test_cocycles_satisfy_every_pair(self, random_corpus):
        """Test each Z^1 basis cochain obeys f(T^(i+j)) = f(T^i) + T^i f(T^j) for all i, j"""
        for m in random_corpus[::4]:
            r = m.z_rank
            for h in subgroups(m.group):
                cocycles, coboundaries = crossed_homomorphisms(m, h)
                generator = m.subgroup_generator(h)
                d = h.order
                for f in list(cocycles.columns()) + list(coboundaries.columns()):
                    values = [f[k * r:(k + 1) * r] for k in range(d)]
                    for i in range(d):
                        twist = generator.power(i)
                        for j in range(d):
                            expected = [x + y for x, y in zip(values[i], twist.apply(values[j]))]
                            assert list(values[(i + j) % d]) == expected

    def test_cocycles_live_in_all_of_h(self, regular_c3, c3):
        """Test cochains have one coordinate block per element of h"""
        cocycles, coboundaries = crossed_homomorphisms(regular_c3, c3.full)
        assert cocycles.rows == 3 * regular_c3.z_rank
        assert coboundaries.shape == (9, 3)
        assert cocycles.cols == kernel_basis(norm_matrix(regular_c3, c3.full)).cols == 2

    def test_disagreement_is_reported(self, monkeypatch, augmentation_c4, c4):
        """Test a resolution result that differs from the cocycle result raises"""
        monkeypatch.setattr(settings, "CROSS_CHECK_COHOMOLOGY", True)
        monkeypatch.setattr(tate, "cohomology_via_resolution", lambda m, h, degree: AbelianInvariants(0, (7,)))
        with pytest.raises(InvariantViolation):
            h_one(augmentation_c4, c4.full)

    def test_degree_two_is_h_zero(self, random_corpus):
        """Test H^2 from the resolution equals the Tate group in degree 0"""
        for m in random_corpus[::3]:
            full = m.group.full
            assert cohomology_via_resolution(m, full, 2) == tate_zero(m, full).invariants

    def test_degree_zero_is_fixed_points(self, random_corpus):
        for m in random_corpus[::3]:
            full = m.group.full
            fixed = cohomology_via_resolution(m, full, 0)
            assert fixed == AbelianInvariants(fixed_sublattice(m, full).cols, ())

    def test_negative_degree(self, regular_c3, c3):
        with pytest.raises(InvariantViolation):
            cohomology_via_resolution(regular_c3, c3.full, -1)

    def test_basis_invariance(self, random_corpus):
        """Test Tate groups do not depend on the chosen basis"""
        change = IntMatrix.from_rows([[1, 2], [1, 3]])
        for m in random_corpus:
            if m.z_rank != 2:
                continue
            conjugated = m.conjugate(change)
            for h, entry in tate_profile(m).items():
                assert tate_minus_one(conjugated, h).invariants == entry.minus_one.invariants
                assert tate_zero(conjugated, h).invariants == entry.zero.invariants
