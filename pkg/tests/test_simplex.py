import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedsimplex import config
from mixedsimplex.errors import DegeneratePoint, InvalidArgument, InvalidSimplexPoint, KTooLarge
from mixedsimplex.models.simplex import (
    Face,
    FaceLattice,
    FaceSet,
    SimplexPoint,
    exact_measure,
    face_of,
    face_volume,
    measure,
)


class TestSimplexPoint:
    def test_renormalizes_small_deviation(self):
        p = SimplexPoint([0.5, 0.5 + 5e-10])
        assert math.isclose(sum(p), 1.0, abs_tol=1e-15)

    def test_rejects_large_deviation(self):
        with pytest.raises(InvalidSimplexPoint):
            SimplexPoint([0.5, 0.6])

    def test_rejects_negative(self):
        with pytest.raises(InvalidSimplexPoint):
            SimplexPoint([1.1, -0.1])

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidSimplexPoint):
            SimplexPoint([math.nan, 1.0])

    def test_coordinates_are_read_only(self):
        p = SimplexPoint([0.25, 0.75])
        with pytest.raises(ValueError):
            p.coords[0] = 1.0

    def test_snapped_zeroes_small_coordinates(self):
        p = SimplexPoint([0.5, 0.5 - 1e-12, 1e-12]).snapped(1e-9)
        assert p[2] == 0.0
        assert face_of(p) == Face(0b011)


class TestFaceOf:
    def test_interior_point(self):
        assert face_of(SimplexPoint([0.2, 0.3, 0.5])) == Face(0b111)

    def test_vertex(self):
        assert face_of(SimplexPoint([0.0, 1.0, 0.0])) == Face(0b010)

    def test_tolerance_zeroes_tiny_coordinates(self):
        p = SimplexPoint([0.5, 0.5 - 1e-12, 1e-12])
        assert face_of(p, tol=1e-9) == Face(0b011)
        assert face_of(p, tol=0.0) == Face(0b111)

    def test_tolerance_must_be_below_uniform(self):
        with pytest.raises(InvalidArgument):
            face_of(SimplexPoint([0.5, 0.5]), tol=0.5)

    def test_degenerate_point(self):
        with pytest.raises(DegeneratePoint):
            SimplexPoint([0.5, 0.5]).snapped(0.6)

    def test_faces_partition_the_simplex(self, np_rng):
        # each point sits in the relative interior of exactly one face
        for _ in range(10_000):
            K = int(np_rng.integers(2, 9))
            mask = int(np_rng.integers(1, 1 << K))
            on = np.array([mask >> k & 1 for k in range(K)], dtype=bool)
            coords = np.zeros(K)
            coords[on] = np_rng.dirichlet(np.full(on.sum(), 2.0))
            if np_rng.random() < 0.5:
                coords[~on] = 1e-12
            p = SimplexPoint(coords)
            assert face_of(p) == Face(mask)
            q = p.snapped()
            assert np.all(q.coords[on] > 0)
            assert np.all(q.coords[~on] == 0.0)
            lattice = np.arange(1, 1 << K)
            members = (lattice[:, None] >> np.arange(K) & 1).astype(bool)
            in_interior = np.all(members == (q.coords > 0), axis=1)
            assert in_interior.sum() == 1
            assert lattice[in_interior][0] == mask


class TestFace:
    def test_indices_and_json(self):
        f = Face.from_indices([1, 3], one_based=True)
        assert f.mask == 0b101
        assert f.indices == (0, 2)
        assert f.to_json() == [1, 3]
        assert str(f) == "{1,3}"

    def test_empty_face_rejected(self):
        with pytest.raises(InvalidArgument):
            Face(0)

    @pytest.mark.parametrize("k,expected", [(1, 1.0), (2, 1.0), (3, 0.5), (4, 1 / 6), (5, 1 / 24)])
    def test_volume(self, k, expected):
        assert face_volume(Face((1 << k) - 1)) == pytest.approx(expected, rel=1e-15)


class TestFaceSet:
    def test_full_counts_every_face(self):
        assert len(FaceSet.full(4)) == 15

    def test_measure_of_full_k3(self):
        # 3 vertices + 3 edges + 1 triangle of area 1/2
        assert exact_measure(FaceSet.full(3)) == Fraction(13, 2)

    def test_measure_of_empty(self):
        assert measure(FaceSet.empty(3)) == 0.0

    def test_masks_round_trip(self):
        s = FaceSet.of(4, [0b0001, 0b0110, 0b1111])
        assert s.masks().tolist() == [1, 6, 15]
        assert FaceSet.from_masks(4, s.masks()) == s

    def test_rejects_out_of_range_faces(self):
        with pytest.raises(InvalidArgument):
            FaceSet.of(2, [0b100])

    def test_boolean_algebra(self):
        a = FaceSet.of(3, [1, 3, 7])
        b = FaceSet.of(3, [3, 4])
        assert (a | b).masks().tolist() == [1, 3, 4, 7]
        assert (a & b).masks().tolist() == [3]
        assert (a - b).masks().tolist() == [1, 7]
        assert (~a | a) == FaceSet.full(3)
        assert (~a).isdisjoint(a)

    def test_k_cap(self, monkeypatch):
        monkeypatch.setattr(config, "MAX_K", 4)
        with pytest.raises(KTooLarge):
            FaceSet.full(5)


class TestFaceLattice:
    @given(st.integers(min_value=1, max_value=10))
    def test_cardinality(self, K):
        lattice = FaceLattice(K)
        assert lattice.size == 2**K - 1
        assert sum(1 for _ in lattice.enumerate()) == 2**K - 1

    def test_faces_of_dimension(self):
        assert len(list(FaceLattice(5).faces_of_dimension(2))) == math.comb(5, 3)

    def test_order_is_inclusion(self):
        assert FaceLattice.contains(Face(0b01), Face(0b11))
        assert not FaceLattice.contains(Face(0b11), Face(0b01))


@settings(max_examples=200, deadline=None)
@given(
    K=st.integers(min_value=1, max_value=5),
    data=st.data(),
)
def test_sigma_additivity_on_partitions(K, data):
    full = (1 << (1 << K)) - 2
    bits = data.draw(st.integers(min_value=0, max_value=full)) & full
    s = FaceSet(K, bits)
    n_parts = data.draw(st.sampled_from([2, 3]))
    labels = data.draw(st.lists(st.integers(0, n_parts - 1), min_size=len(s), max_size=len(s)))
    parts = [FaceSet.of(K, [f for f, lab in zip(s.faces, labels) if lab == i]) for i in range(n_parts)]
    assert sum((exact_measure(p) for p in parts), Fraction(0)) == exact_measure(s)


def test_measure_is_monotone(np_rng):
    for _ in range(100):
        bits = int(np_rng.integers(0, 1 << 31)) << 1 & ((1 << 32) - 2)
        s = FaceSet(5, bits)
        t = s.union(FaceSet.of(5, [31]))
        assert measure(t) >= measure(s)
