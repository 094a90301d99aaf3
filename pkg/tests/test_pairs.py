from fractions import Fraction

import pytest

from pathgeom import (
    DEFAULT_VOLUME,
    OMEGA0,
    PHI0,
    EllipticPair,
    LinearMap,
    MultiVector,
    NormalForm,
    VolumeForm,
    conformal_pairing,
    is_elliptic,
    is_symplectic,
    kappa_invariant,
    kappa_invariant_squared,
    normal_form,
    orthogonalize,
    pullback,
    pullback_pair_independent,
)
from pathgeom.pairs import reconstruction_residual

from conftest import rand_form, rand_injective_3to4, rand_orthogonal_elliptic_pair
from oracles import gram_definiteness_oracle, sampled_symplectic_probe

E = MultiVector.basis


class TestSymplectic:
    def test_model(self):
        assert is_symplectic(OMEGA0)

    def test_decomposable(self):
        assert not is_symplectic(E(4, (1, 2)))

    def test_sum_of_model_pair(self):
        tau = OMEGA0 + PHI0
        assert conformal_pairing(tau, tau) == 4
        assert is_symplectic(tau)


class TestElliptic:
    def test_model_pair(self):
        assert is_elliptic(OMEGA0, PHI0)

    def test_equal_forms_fail(self):
        assert not is_elliptic(OMEGA0, OMEGA0)

    def test_null_pair_fails(self):
        assert not is_elliptic(E(4, (1, 2)), E(4, (3, 4)))

    def test_matches_gram_definiteness_oracle(self, rng):
        hits = 0
        for _ in range(120):
            a = rand_form(rng, 4, 2, nterms=4)
            b = rand_form(rng, 4, 2, nterms=4)
            if a.is_zero or b.is_zero:
                continue
            verdict = is_elliptic(a, b)
            assert verdict == gram_definiteness_oracle(a, b, DEFAULT_VOLUME)
            if verdict:
                hits += 1
                # sampled probe: every nonzero combination symplectic
                assert sampled_symplectic_probe(a, b, DEFAULT_VOLUME)
        assert hits > 0  # the sample actually explored both branches

    def test_nonelliptic_controls_covered(self, rng):
        assert not is_elliptic(E(4, (1, 2)), E(4, (1, 3)))


class TestOrthogonalize:
    def test_already_orthogonal(self):
        assert orthogonalize(OMEGA0, PHI0) == PHI0

    def test_self_projection(self):
        assert orthogonalize(OMEGA0, OMEGA0).is_zero

    def test_oblique_combination(self):
        assert orthogonalize(OMEGA0, OMEGA0 * Fraction(3) + PHI0) == PHI0

    def test_idempotent_exact(self, rng):
        for _ in range(20):
            a = rand_form(rng, 4, 2, nterms=4)
            if conformal_pairing(a, a) == 0:
                continue
            b = rand_form(rng, 4, 2, nterms=4)
            once = orthogonalize(a, b)
            assert orthogonalize(a, once) == once
            assert conformal_pairing(a, once) == 0

    def test_nonsymplectic_rejected(self):
        with pytest.raises(ValueError):
            orthogonalize(E(4, (1, 2)), PHI0)


class TestKappa:
    def test_model(self):
        pair = EllipticPair(OMEGA0, PHI0)
        assert kappa_invariant_squared(pair) == 1
        assert kappa_invariant(pair) == 1.0

    def test_scaled_phi(self):
        pair = EllipticPair(OMEGA0, PHI0 * Fraction(2))
        assert kappa_invariant_squared(pair) == 4
        assert kappa_invariant(pair) == 2.0

    def test_joint_scaling_cancels(self):
        pair = EllipticPair(OMEGA0 * Fraction(5), PHI0 * Fraction(5))
        assert kappa_invariant_squared(pair) == 1

    def test_invariance_under_pullback(self, rng):
        for _ in range(40):
            pair, kappa, a = rand_orthogonal_elliptic_pair(rng)
            assert kappa_invariant_squared(pair) == kappa * kappa
            assert abs(kappa_invariant(pair) - float(kappa)) <= 1e-9

    def test_nonorthogonal_rejected(self):
        pair = EllipticPair(OMEGA0, OMEGA0 * Fraction(1, 3) + PHI0)
        with pytest.raises(ValueError):
            kappa_invariant(pair)

    def test_nonelliptic_rejected_at_construction(self):
        with pytest.raises(ValueError):
            EllipticPair(OMEGA0, OMEGA0)


class TestNormalForm:
    def test_model_pair_gives_identity_coframe(self):
        nf = normal_form(EllipticPair(OMEGA0, PHI0))
        assert nf.kappa == pytest.approx(1.0, abs=1e-12)
        assert not nf.epsilon_flipped
        for i in range(4):
            for j in range(4):
                assert nf.basis[i][j] == pytest.approx(1.0 if i == j else 0.0, abs=1e-12)

    def test_scaled_phi_kappa_two(self):
        nf = normal_form(EllipticPair(OMEGA0, PHI0 * Fraction(2)))
        assert nf.kappa == pytest.approx(2.0, abs=1e-12)

    def test_random_pairs_reconstruct(self, rng):
        worst = 0.0
        for _ in range(60):
            pair, kappa, _ = rand_orthogonal_elliptic_pair(rng)
            nf = normal_form(pair)
            worst = max(worst, reconstruction_residual(pair, nf))
            assert abs(nf.kappa - float(kappa)) <= 1e-9 * max(1.0, float(kappa))
        assert worst <= 1e-9

    def test_negative_pairings_flip_epsilon(self, rng):
        for _ in range(20):
            pair, _, a = rand_orthogonal_elliptic_pair(rng, allow_flip=True)
            ww = conformal_pairing(pair.omega, pair.omega)
            nf = normal_form(pair)
            assert nf.epsilon_flipped == (ww < 0)
            assert reconstruction_residual(pair, nf) <= 1e-9

    def test_nonorthogonal_rejected(self):
        with pytest.raises(ValueError):
            normal_form(EllipticPair(OMEGA0, OMEGA0 * Fraction(1, 2) + PHI0))

    def test_json_round_trip(self):
        nf = normal_form(EllipticPair(OMEGA0, PHI0 * Fraction(3)))
        data = nf.to_json()
        assert set(data) == {"kappa", "basis", "epsilon_flipped"}
        back = NormalForm.from_json(data)
        assert back == nf


class TestPullbackPair:
    def test_coordinate_inclusion(self):
        incl = LinearMap(((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)))
        b1, b2, independent = pullback_pair_independent(EllipticPair(OMEGA0, PHI0), incl)
        assert b1 == MultiVector.basis(3, (1, 3))
        assert b2 == MultiVector.basis(3, (2, 3))
        assert independent

    def test_random_injective_always_independent(self, rng):
        for _ in range(50):
            pair, _, _ = rand_orthogonal_elliptic_pair(rng)
            a = rand_injective_3to4(rng)
            _, _, independent = pullback_pair_independent(pair, a)
            assert independent

    def test_nonelliptic_probe_can_lose_independence(self):
        from pathgeom.pairs import _independent_two_forms

        # not elliptic, so independence of the pullbacks is not guaranteed
        omega, phi = E(4, (1, 2)), E(4, (1, 3))
        assert not is_elliptic(omega, phi)
        a = LinearMap(((1, 0, 0), (0, 1, 0), (0, 0, 0), (0, 0, 1)))
        b1, b2 = pullback(omega, a), pullback(phi, a)
        flag = _independent_two_forms(b1, b2)
        assert isinstance(flag, bool)
        assert not flag  # the first pullback survives, the second dies

    def test_noninjective_rejected(self):
        rank2 = LinearMap(((1, 0, 0), (0, 1, 0), (0, 0, 0), (0, 0, 0)))
        with pytest.raises(ValueError):
            pullback_pair_independent(EllipticPair(OMEGA0, PHI0), rank2)
