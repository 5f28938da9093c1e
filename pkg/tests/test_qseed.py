"""Quantum seeds: mutation, compatibility, freezing, membership."""

import pytest

from qskein import disc, qseed
from qskein.disc import DiscElement
from qskein.qcoeff import QCoeff
from qskein.qseed import CompatibilityError, QuantumSeed
from qskein.qtorus import SkewForm, TorusElement

FAN5 = tuple(sorted(disc.boundary_chords(5) + [(1, 3), (1, 4)]))


@pytest.fixture
def pentagon():
    return disc.triangulation_seed(5, FAN5)


class TestConstruction:
    def test_initial_seed(self, pentagon):
        assert pentagon.is_initial()
        assert pentagon.ex == (1, 2)
        assert pentagon.n == 7
        assert pentagon.b == ((1, 0), (0, 1), (-1, 0), (0, -1), (-1, 0), (1, -1), (0, 1))

    def test_rejects_non_skew_pi_b(self):
        lam = SkewForm([[0, 1], [-1, 0]])
        with pytest.raises(ValueError):
            QuantumSeed.initial(lam, [[1, 0], [0, 1]], (0, 1))

    def test_rejects_zero_frame_entry(self):
        lam = SkewForm([[0, 2], [-2, 0]])
        seed = QuantumSeed.initial(lam, [[0, 1], [-1, 0]], (0, 1))
        frame = list(seed.frame)
        frame[0] = TorusElement.zero(seed.ambient)
        with pytest.raises(ValueError):
            QuantumSeed(seed.ambient, seed.lam, seed.b, seed.ex, frame)


class TestCompatibility:
    def test_pentagon_diagonal(self, pentagon):
        assert pentagon.check_compatibility() == {1: 4, 2: 4}

    def test_degenerate_pairing_raises(self):
        lam = SkewForm([[0, 0], [0, 0]])
        seed = QuantumSeed.initial(lam, [[0, 1], [-1, 0]], (0, 1))
        with pytest.raises(CompatibilityError):
            seed.check_compatibility()


class TestMutation:
    def test_pentagon_mutation_is_the_flipped_chord(self, pentagon):
        mut = pentagon.mutate(1)
        assert mut.frame[1].support() == [
            (0, -1, 1, 0, 1, 0, 0),
            (1, -1, 0, 0, 0, 1, 0),
        ]
        new_delta, new_chord = disc.flip_diagonal(5, FAN5, FAN5[1])
        assert new_chord == (2, 4)
        expansion = disc.expand_laurent(DiscElement.basis(5, [new_chord]), FAN5)
        assert mut.frame[1] == expansion

    def test_involution(self, pentagon):
        assert pentagon.mutate(1).mutate(1) == pentagon
        assert pentagon.mutate(2).mutate(2) == pentagon

    def test_unmutated_frame_entries_survive(self, pentagon):
        mut = pentagon.mutate(1)
        for i in range(pentagon.n):
            if i != 1:
                assert mut.frame[i] == pentagon.frame[i]

    def test_b_matrix_exchange(self, pentagon):
        mut = pentagon.mutate(1)
        flipped_delta, _ = disc.flip_diagonal(5, FAN5, FAN5[1])
        assert mut.b == disc.triangulation_seed(5, flipped_delta).b

    def test_mutation_preserves_compatibility(self, pentagon):
        assert pentagon.mutate(1).check_compatibility() == {1: 4, 2: 4}

    def test_frozen_index_rejected(self, pentagon):
        with pytest.raises(ValueError):
            pentagon.mutate(0)
        with pytest.raises(ValueError):
            pentagon.mutate(99)

    def test_mutated_seed_is_not_initial(self, pentagon):
        assert not pentagon.mutate(1).is_initial()


class TestFrameMonomial:
    def test_single_index(self, pentagon):
        gamma = tuple(1 if i == 1 else 0 for i in range(7))
        assert pentagon.frame_monomial(gamma) == pentagon.frame[1]

    def test_twist_makes_it_bar_invariant(self, pentagon):
        gamma = (1, 1, 0, 0, 1, 0, 0)
        m = pentagon.frame_monomial(gamma)
        assert m.bar() == m

    def test_negative_exponent_rejected(self, pentagon):
        with pytest.raises(ValueError):
            pentagon.frame_monomial((-1, 0, 0, 0, 0, 0, 0))


class TestFreeze:
    def test_freeze_drops_columns(self, pentagon):
        frozen = pentagon.freeze({1})
        assert frozen.ex == (2,)
        assert frozen.b == tuple((row[1],) for row in pentagon.b)

    def test_freeze_non_exchangeable_rejected(self, pentagon):
        with pytest.raises(ValueError):
            pentagon.freeze({0})


class TestQuasiCommutation:
    def test_monomials(self):
        form = SkewForm([[0, 1], [-1, 0]])
        x = TorusElement.monomial(form, (1, 0))
        y = TorusElement.monomial(form, (0, 1))
        assert qseed.quasi_commutation_exponent(x, y) == 1
        assert qseed.quasi_commutation_exponent(y, x) == -1

    def test_non_quasi_commuting_pair_raises(self):
        form = SkewForm([[0, 1], [-1, 0]])
        x = TorusElement.monomial(form, (1, 0)) + TorusElement.monomial(form, (0, 0))
        y = TorusElement.monomial(form, (0, 1))
        with pytest.raises(CompatibilityError):
            qseed.quasi_commutation_exponent(x, y)


class TestMembership:
    def test_initial_frame_and_mutated_variable_pass(self, pentagon):
        for i in range(pentagon.n):
            assert qseed.upper_membership(pentagon.frame[i], pentagon)
        assert qseed.upper_membership(pentagon.mutate(1).frame[1], pentagon)

    def test_inverse_exchangeable_monomial_fails(self, pentagon):
        for i in pentagon.ex:
            alpha = tuple(-1 if k == i else 0 for k in range(pentagon.n))
            bad = TorusElement.monomial(pentagon.ambient, alpha)
            assert not qseed.upper_membership(bad, pentagon)

    def test_inverse_frozen_monomial_passes(self, pentagon):
        alpha = tuple(-1 if k == 0 else 0 for k in range(pentagon.n))
        assert qseed.upper_membership(TorusElement.monomial(pentagon.ambient, alpha), pentagon)


class TestEnumeration:
    def test_pentagon_has_five_seeds(self, pentagon):
        seeds, truncated = qseed.enumerate_seeds(pentagon)
        assert len(seeds) == 5
        assert not truncated

    def test_truncation(self, pentagon):
        seeds, truncated = qseed.enumerate_seeds(pentagon, max_seeds=2)
        assert len(seeds) == 2
        assert truncated

    def test_seeds_equal(self, pentagon):
        assert qseed.seeds_equal(pentagon, pentagon)
        assert not qseed.seeds_equal(pentagon, pentagon.mutate(1))


class TestJson:
    def test_round_trip_initial(self, pentagon):
        data = pentagon.to_json()
        assert set(data) == {"ex", "B", "lambda", "frame"}
        assert QuantumSeed.from_json(data) == pentagon

    def test_round_trip_mutated(self, pentagon):
        mut = pentagon.mutate(1)
        back = QuantumSeed.from_json(mut.to_json())
        assert back == mut
        assert back.mutate(1) == pentagon


class TestMatrixUtilities:
    PENTAGON = [[0, 1], [-1, 0]]
    CYCLE = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]

    def test_matrix_mutate(self):
        assert qseed.matrix_mutate(self.PENTAGON, 0) == [[0, -1], [1, 0]]
        hexagon = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
        assert qseed.matrix_mutate(hexagon, 1) == [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]

    def test_matrix_mutate_involution(self):
        for m in (self.PENTAGON, self.CYCLE):
            for i in range(len(m)):
                assert qseed.matrix_mutate(qseed.matrix_mutate(m, i), i) == m

    def test_matrix_mutate_rejects_non_skew(self):
        with pytest.raises(ValueError):
            qseed.matrix_mutate([[0, 1], [1, 0]], 0)

    def test_sinks_and_sources(self):
        assert qseed.sinks(self.PENTAGON) == [1]
        assert qseed.sources(self.PENTAGON) == [0]
        assert qseed.sinks(self.CYCLE) == []
        assert qseed.sources(self.CYCLE) == []

    def test_acyclicity(self):
        assert qseed.is_acyclic(self.PENTAGON)
        assert not qseed.is_acyclic(self.CYCLE)
        assert qseed.is_acyclic([[0]])

    def test_banff_step(self):
        assert qseed.banff_step(self.PENTAGON) == (0, 1)
        assert qseed.banff_step(self.CYCLE) is None
        assert qseed.banff_step([[0]]) is None
