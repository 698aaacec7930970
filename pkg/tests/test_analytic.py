import cmath
import math

import numpy as np
import pytest

from duality_lab.analytic import (
    MEASURE_FIELDS,
    ComplementarityMeasures,
    QuantonDensityMatrix,
    SeedPair,
    complementarity_measures,
    detector_fidelity,
    quanton_amplitudes,
    quanton_density_closed,
)


def random_seed_pairs(rng, count, mag_max):
    mags = rng.uniform(0.0, mag_max, (count, 2))
    phases = rng.uniform(0.0, 2 * math.pi, (count, 2))
    z = mags * np.exp(1j * phases)
    return [SeedPair(complex(z[k, 0]), complex(z[k, 1])) for k in range(count)]


class TestSeedPair:
    def test_coerces_to_complex(self):
        s = SeedPair(2, 1)
        assert s.alpha1 == 2 + 0j and isinstance(s.alpha1, complex)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            SeedPair(complex(math.inf, 0), 1)

    def test_rejects_huge_magnitude(self):
        with pytest.raises(ValueError, match="sanity"):
            SeedPair(2000.0, 1.0)


class TestQuantonAmplitudes:
    def test_equal_seeds_are_balanced(self):
        for alpha in (0.0, 1.0, 3.7, 2.0 + 1.0j):
            amps = quanton_amplitudes(SeedPair(alpha, alpha))
            assert amps.c1 == pytest.approx(1 / math.sqrt(2), abs=1e-15)
            assert amps.c2 == amps.c1

    def test_two_one_point(self):
        amps = quanton_amplitudes(SeedPair(2, 1))
        assert amps.c1 == pytest.approx(math.sqrt(5 / 7), abs=1e-15)
        assert amps.c2 == pytest.approx(math.sqrt(2 / 7), abs=1e-15)

    def test_normalization_random(self):
        rng = np.random.default_rng(0)
        for seeds in random_seed_pairs(rng, 100, 10.0):
            amps = quanton_amplitudes(seeds)
            assert abs(amps.c1**2 + amps.c2**2 - 1.0) < 1e-12


class TestDetectorFidelity:
    def test_vanishing_seed_kills_overlap(self):
        assert detector_fidelity(SeedPair(0, 1.3)) == 0
        assert detector_fidelity(SeedPair(1.3, 0)) == 0

    def test_two_one_point(self):
        f = detector_fidelity(SeedPair(2, 1))
        assert abs(f) == pytest.approx(2 / math.sqrt(10), abs=1e-15)
        assert abs(f) == pytest.approx(0.6324555320336759, abs=1e-12)

    def test_large_equal_seeds_approach_unity(self):
        values = [abs(detector_fidelity(SeedPair(a, a))) for a in (5, 20, 100)]
        assert all(v1 < v2 for v1, v2 in zip(values, values[1:]))
        assert values[-1] > 0.999
        assert all(v < 1.0 for v in values)

    def test_phase_carried(self):
        f = detector_fidelity(SeedPair(2j, 1))
        assert cmath.phase(f) == pytest.approx(math.pi / 2, abs=1e-15)


class TestQuantonDensityClosed:
    def test_equal_seeds_balanced(self):
        rho = quanton_density_closed(SeedPair(1.7, 1.7))
        assert rho.rho11 == 0.5 and rho.rho22 == 0.5

    def test_two_one_point(self):
        rho = quanton_density_closed(SeedPair(2, 1))
        assert rho.rho11 == pytest.approx(5 / 7, abs=1e-15)
        assert rho.rho22 == pytest.approx(2 / 7, abs=1e-15)
        assert abs(rho.rho12) == pytest.approx(math.sqrt(10) / 7, abs=1e-15)

    def test_vacuum_seeds(self):
        rho = quanton_density_closed(SeedPair(0, 0))
        assert (rho.rho11, rho.rho22, abs(rho.rho12)) == (0.5, 0.5, 0.5)
        assert rho.rho12.imag == 0.0

    def test_pure_state_coherence_saturates_positivity(self):
        rng = np.random.default_rng(1)
        for seeds in random_seed_pairs(rng, 100, 10.0):
            rho = quanton_density_closed(seeds)
            assert abs(abs(rho.rho12) - math.sqrt(rho.rho11 * rho.rho22)) < 1e-12

    def test_phase_convention(self):
        seeds = SeedPair(1.0, 1.0j)
        rho = quanton_density_closed(seeds)
        expected = cmath.phase(seeds.alpha1.conjugate() * seeds.alpha2)
        assert cmath.phase(rho.rho12) == pytest.approx(expected, abs=1e-15)

    def test_type_validation(self):
        with pytest.raises(ValueError, match="trace"):
            QuantonDensityMatrix(0.6, 0.6, 0.1)
        with pytest.raises(ValueError, match="positivity"):
            QuantonDensityMatrix(0.5, 0.5, 0.9)
        matrix = quanton_density_closed(SeedPair(2, 1)).as_matrix()
        assert np.allclose(matrix, matrix.conj().T)


class TestComplementarityMeasures:
    def test_vacuum_seeds(self):
        m = complementarity_measures(SeedPair(0, 0))
        assert (m.D, m.P, m.E, m.V, m.C, m.F_abs, m.mu_s) == (1, 0, 1, 1, 0, 0, 0)

    def test_equal_unit_seeds(self):
        m = complementarity_measures(SeedPair(1, 1))
        assert m.P == 0.0
        assert m.F_abs == 0.5 and m.C == 0.5 and m.mu_s == 0.5
        assert m.V == 1.0
        assert m.D == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
        assert m.E == pytest.approx(math.sqrt(3) / 2, abs=1e-15)

    def test_two_one_point(self):
        m = complementarity_measures(SeedPair(2, 1))
        assert m.D == pytest.approx(math.sqrt(33) / 7, abs=1e-14)
        assert m.P == pytest.approx(3 / 7, abs=1e-14)
        assert m.E == pytest.approx(math.sqrt(24) / 7, abs=1e-14)
        assert m.V == pytest.approx(2 * math.sqrt(10) / 7, abs=1e-14)
        assert m.C == pytest.approx(4 / 7, abs=1e-14)
        assert m.mu_s == pytest.approx(5 / 7, abs=1e-14)
        # squared identities recover the exact rationals
        assert m.P**2 + m.E**2 + m.C**2 == pytest.approx(1.0, abs=1e-15)
        assert 9 / 49 + 24 / 49 + 16 / 49 == pytest.approx(1.0, abs=1e-15)

    def test_identities_random(self):
        rng = np.random.default_rng(2)
        for seeds in random_seed_pairs(rng, 2000, 10.0):
            m = complementarity_measures(seeds)
            for name, residual in m.identity_residuals().items():
                assert residual < 1e-12, (name, seeds)

    def test_swap_symmetry_exact(self):
        rng = np.random.default_rng(3)
        for seeds in random_seed_pairs(rng, 200, 10.0):
            m1 = complementarity_measures(seeds)
            m2 = complementarity_measures(seeds.swapped())
            for name in MEASURE_FIELDS:
                assert abs(getattr(m1, name) - getattr(m2, name)) <= 1e-15

    def test_phase_invariance_exact_for_quarter_turns(self):
        # multiplying a seed by i, -1 or -i is exact in floating point, so
        # the magnitude-only dependence must show up bitwise
        rng = np.random.default_rng(4)
        for seeds in random_seed_pairs(rng, 100, 10.0):
            m1 = complementarity_measures(seeds)
            for rot1, rot2 in ((1j, -1), (-1j, 1j), (-1, -1j)):
                m2 = complementarity_measures(
                    SeedPair(seeds.alpha1 * rot1, seeds.alpha2 * rot2)
                )
                for name in MEASURE_FIELDS:
                    assert getattr(m1, name) == getattr(m2, name)

    def test_phase_invariance_generic_rotations(self):
        # a generic unit phase rounds the seed components, which the
        # square-root measures amplify near their zeros; the dependence on
        # anything but the magnitudes still has to vanish within rounding
        rng = np.random.default_rng(5)
        for seeds in random_seed_pairs(rng, 300, 10.0):
            phi1, phi2 = rng.uniform(0.0, 2 * math.pi, 2)
            rotated = SeedPair(
                seeds.alpha1 * cmath.exp(1j * phi1),
                seeds.alpha2 * cmath.exp(1j * phi2),
            )
            m1 = complementarity_measures(seeds)
            m2 = complementarity_measures(rotated)
            for name in MEASURE_FIELDS:
                assert abs(getattr(m1, name) - getattr(m2, name)) < 1e-9

    def test_fidelity_monotone_on_equal_seeds(self):
        mags = np.linspace(0.0, 6.0, 61)
        values = [
            complementarity_measures(SeedPair(a, a)).F_abs for a in mags
        ]
        assert all(v2 > v1 for v1, v2 in zip(values, values[1:]))
        for a, f in zip(mags, values):
            assert f == pytest.approx(a * a / (1 + a * a), abs=1e-15)
            m = complementarity_measures(SeedPair(a, a))
            assert m.C == pytest.approx(f, abs=1e-15)

    def test_visibility_predictability_duality(self):
        rng = np.random.default_rng(6)
        for seeds in random_seed_pairs(rng, 500, 10.0):
            m = complementarity_measures(seeds)
            assert abs(m.V**2 + m.P**2 - 1.0) < 1e-12

    def test_record_validation_fails_closed(self):
        with pytest.raises(ValueError, match="identity"):
            ComplementarityMeasures(D=1, P=0, E=1, V=1, C=0.5, F_abs=0, mu_s=0)
        with pytest.raises(ValueError, match="outside"):
            ComplementarityMeasures(D=1.5, P=0, E=1, V=1, C=0, F_abs=0, mu_s=0)
