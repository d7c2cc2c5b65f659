import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate, stats

from mixedsimplex.errors import InvalidArgument, NoDensityForm
from mixedsimplex.models.distribution import (
    Empirical,
    FaceHistogram,
    Flat,
    MixedDistribution,
    TruncatedGaussianK2,
)
from mixedsimplex.models.rng import RngState
from mixedsimplex.models.sampler_spec import DirichletSpec, GaussianSparsemaxSpec
from mixedsimplex.models.simplex import Face, FaceSet, SimplexPoint
from mixedsimplex.schemas.distribution import MixedDistributionSchema
from mixedsimplex.services.distribution_service import DistributionService, face_masks
from mixedsimplex.services.sampler_service import SamplerService, k2_location

from tests.helpers import fs

EDGE = Face(0b11)
Y1 = Face(0b01)
Y0 = Face(0b10)


class TestMixedDistribution:
    def test_masses_must_sum_to_one(self):
        with pytest.raises(InvalidArgument):
            MixedDistribution(2, {Y1: 0.5, Y0: 0.2})

    def test_zero_mass_faces_dropped(self):
        d = MixedDistribution(2, {Y1: 1.0, Y0: 0.0})
        assert list(d.face_mass) == [Y1]
        assert d.support == fs(2, (1,))

    def test_default_conditional_is_flat(self):
        d = MixedDistribution.flat(3)
        assert isinstance(d.conditional(Face(0b111)), Flat)
        assert d.is_flat_family

    def test_truncated_gaussian_only_on_k2_edge(self):
        with pytest.raises(InvalidArgument):
            MixedDistribution(3, {Face(0b011): 1.0}, {Face(0b011): TruncatedGaussianK2(0.5, 0.2)})

    def test_categorical(self):
        d = MixedDistribution.categorical([0.2, 0.0, 0.8])
        assert d.mass(Face(0b001)) == 0.2
        assert d.mass(Face(0b010)) == 0.0
        assert d.expected_dimension() == 0.0

    def test_equality(self):
        a = DistributionService.from_gaussian_sparsemax_k2(0.4, 0.3)
        b = DistributionService.from_gaussian_sparsemax_k2(0.4, 0.3)
        assert a == b
        assert a != MixedDistribution.flat(2)

    def test_schema_round_trip(self):
        d = DistributionService.from_gaussian_sparsemax_k2(0.2, 0.5)
        doc = MixedDistributionSchema.from_model(d).model_dump()
        assert MixedDistributionSchema.model_validate(doc).to_model() == d


class TestDensity:
    def test_flat_density_is_factorial(self):
        d = MixedDistribution.flat(4)
        assert DistributionService.density(d, SimplexPoint([0.1, 0.2, 0.3, 0.4])) == 6.0

    def test_mixed_flat_density(self):
        d = MixedDistribution(3, {Face(0b001): 0.25, Face(0b011): 0.25, Face(0b111): 0.5})
        assert DistributionService.density(d, SimplexPoint([1.0, 0.0, 0.0])) == 0.25
        assert DistributionService.density(d, SimplexPoint([0.5, 0.5, 0.0])) == 0.25
        assert DistributionService.density(d, SimplexPoint([0.2, 0.3, 0.5])) == 1.0
        assert DistributionService.density(d, SimplexPoint([0.0, 1.0, 0.0])) == 0.0

    def test_truncated_gaussian_density(self):
        d = DistributionService.from_gaussian_sparsemax_k2(0.3, 0.4)
        y = 0.6
        # the edge density of the mixed law is the untruncated normal density
        expected = stats.norm.pdf(y, 0.3, 0.4)
        assert DistributionService.density(d, SimplexPoint([y, 1.0 - y])) == pytest.approx(expected, rel=1e-10)

    def test_density_integrates_to_one_with_atoms(self):
        d = DistributionService.from_gaussian_sparsemax_k2(0.7, 0.5)
        inner, _ = integrate.quad(
            lambda y: DistributionService.density(d, SimplexPoint([y, 1.0 - y])), 0.0, 1.0, epsabs=1e-12
        )
        assert inner + d.mass(Y0) + d.mass(Y1) == pytest.approx(1.0, abs=1e-9)

    def test_empirical_has_no_density(self):
        samples = np.array([[0.3, 0.7], [0.6, 0.4]])
        d = MixedDistribution(2, {EDGE: 1.0}, {EDGE: Empirical(samples)})
        with pytest.raises(NoDensityForm):
            DistributionService.density(d, SimplexPoint([0.5, 0.5]))


class TestProbability:
    def test_face_event(self):
        d = MixedDistribution(3, {Face(0b001): 0.25, Face(0b011): 0.25, Face(0b111): 0.5})
        assert DistributionService.probability(d, fs(3, (1,), (1, 2))) == 0.5
        assert DistributionService.probability(d, FaceSet.full(3)) == 1.0
        assert DistributionService.probability(d, FaceSet.empty(3)) == 0.0

    def test_interval_event(self):
        d = DistributionService.from_gaussian_sparsemax_k2(0.5, 0.3)
        everything = DistributionService.probability(d, FaceSet.full(2), (0.0, 1.0))
        assert everything == pytest.approx(1.0, abs=1e-12)
        lower_half = DistributionService.probability(d, FaceSet.full(2), (0.0, 0.5))
        expected = d.mass(Y0) + stats.norm.cdf(0.5, 0.5, 0.3) - stats.norm.cdf(0.0, 0.5, 0.3)
        assert lower_half == pytest.approx(expected, rel=1e-10)

    def test_interval_needs_k2(self):
        with pytest.raises(InvalidArgument):
            DistributionService.probability(MixedDistribution.flat(3), FaceSet.full(3), (0.0, 0.5))


class TestExpectationAndSampling:
    def test_flat_expectation_is_centroid(self):
        mean = DistributionService.expectation(MixedDistribution.flat(3))
        assert_allclose(mean.coords, [1 / 3, 1 / 3, 1 / 3], atol=1e-15)

    def test_mixed_expectation(self):
        d = MixedDistribution(3, {Face(0b001): 0.5, Face(0b011): 0.5})
        assert_allclose(DistributionService.expectation(d).coords, [0.75, 0.25, 0.0], atol=1e-15)

    def test_uniform_over_vertices(self):
        d = MixedDistribution.categorical([1 / 3, 1 / 3, 1 / 3])
        assert_allclose(DistributionService.expectation(d).coords, [1 / 3, 1 / 3, 1 / 3], atol=1e-15)

    def test_gaussian_sparsemax_expectation(self):
        z, sigma = 0.3, 0.4
        d = DistributionService.from_gaussian_sparsemax_k2(z, sigma)
        # E[clip(z + sigma N, 0, 1)]
        expected, _ = integrate.quad(
            lambda t: min(max(z + sigma * t, 0.0), 1.0) * stats.norm.pdf(t),
            -12.0,
            12.0,
            points=[-z / sigma, (1.0 - z) / sigma],
        )
        assert DistributionService.expectation(d)[0] == pytest.approx(expected, abs=1e-9)

    def test_sample_matches_face_masses(self, rng):
        d = MixedDistribution(3, {Face(0b001): 0.2, Face(0b110): 0.3, Face(0b111): 0.5})
        y = DistributionService.sample(d, 20_000, rng)
        masks, counts = np.unique(face_masks(y, 1e-9), return_counts=True)
        hist = FaceHistogram(3, {Face(int(m)): int(c) for m, c in zip(masks, counts)}, 20_000)
        for face, mass in d.face_mass.items():
            assert abs(hist.probability(face) - mass) < 4 * hist.standard_error(face) + 1e-3


class TestEstimation:
    def test_histogram_counts(self, rng):
        hist = DistributionService.estimate_face_probs(DirichletSpec(alpha=[1.0, 1.0, 1.0]), 1000, rng=rng)
        assert hist.total == 1000
        assert hist.probability(Face(0b111)) == 1.0
        assert hist.standard_error(Face(0b111)) == 0.0

    def test_face_probs_sum_to_one(self, rng):
        spec = GaussianSparsemaxSpec(z=[0.5, 0.0, -0.5], sigma=0.8)
        hist = DistributionService.estimate_face_probs(spec, 10_000, rng=rng)
        assert math.fsum(hist.probabilities().values()) == pytest.approx(1.0, abs=1e-12)

    def test_estimated_distribution_has_empirical_conditionals(self, rng):
        spec = GaussianSparsemaxSpec(z=[0.0, 0.0], sigma=0.5)
        d = DistributionService.estimate_distribution(spec, 5000, rng=rng)
        assert isinstance(d.conditional(EDGE), Empirical)
        assert isinstance(d.conditional(Y1), Flat)
        closed = DistributionService.from_gaussian_sparsemax_k2(0.5, 0.5)
        for face in (Y0, Y1, EDGE):
            assert d.mass(face) == pytest.approx(closed.mass(face), abs=0.03)

    def test_face_masks_vectorized(self):
        samples = np.array([[1.0, 0.0, 0.0], [0.5, 0.0, 0.5], [0.2, 0.3, 0.5]])
        assert list(face_masks(samples, 1e-9)) == [0b001, 0b101, 0b111]

    def test_estimation_is_seeded(self):
        spec = GaussianSparsemaxSpec(z=[0.1, 0.0, 0.2], sigma=0.6)
        a = DistributionService.estimate_face_probs(spec, 3000, rng=RngState(9))
        b = DistributionService.estimate_face_probs(spec, 3000, rng=RngState(9))
        assert a == b

    def test_face_probs_converge_as_n_doubles(self):
        spec = GaussianSparsemaxSpec(z=[0.0, 0.0], sigma=1.0)
        exact = SamplerService.gaussian_sparsemax_density_k2(0.5, k2_location(spec.z), spec.sigma).p1

        def error(n: int, seed: int) -> float:
            hist = DistributionService.estimate_face_probs(spec, n, rng=RngState(seed))
            return abs(hist.probability(Y1) - exact)

        n = 2000
        small = np.mean([error(n, 1000 + s) for s in range(200)])
        large = np.mean([error(2 * n, 5000 + s) for s in range(200)])
        assert large < small
        assert large < 2 * math.sqrt(exact * (1.0 - exact) / (2 * n))
