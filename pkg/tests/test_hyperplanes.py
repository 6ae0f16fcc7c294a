import math

import numpy as np
import pytest
from hypothesis import given, settings

from lib.errors import NotOnSigma, NotTangent, TangentPlane
from lib.hyperplanes import (SectionType, leaf_phase, plane_contains, section_graph_point, section_kind,
                             tangent_leaf)
from lib.numeric import Quat
from lib.projective import HyperplaneDual, ProjPoint, fibre_through, in_q22, project_quat, random_q22_point
from strategies import quats, seeds

TANGENT = HyperplaneDual([1, 0, -1, 0])


class TestSectionKind:
    def test_tangent(self):
        kind = section_kind(TANGENT)
        assert kind.kind is SectionType.TANGENT_LEVIFLAT
        assert np.allclose(kind.singular_point.canonical(), np.array([1, 0, 1, 0]) / math.sqrt(2))
        assert in_q22(kind.singular_point)
        assert plane_contains(TANGENT, kind.singular_point)
        assert kind.fibre_residual < 1e-12

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_fibre_through_the_singular_point_lies_in_the_plane(self, seed):
        rng = np.random.default_rng(seed)
        hp = HyperplaneDual.from_normal(random_q22_point(rng).unit())
        kind = section_kind(hp)
        assert kind.kind is SectionType.TANGENT_LEVIFLAT
        assert kind.fibre_residual < 1e-9
        for p in fibre_through(kind.singular_point).sample_points(10, rng):
            assert plane_contains(hp, p)

    @pytest.mark.parametrize("v", [[1, 0, 0, 0], [0, 0, 1, 0], [1, 2j, 0.5, 0]])
    def test_smooth(self, v):
        kind = section_kind(HyperplaneDual(v))
        assert kind.kind is SectionType.SMOOTH_SPHERICAL
        assert kind.singular_point is None


class TestGraphSections:
    @pytest.mark.parametrize("v", [[1, 0, 0, 0], [0, 0, 1, 0], [1, 0.3j, 0.2, -0.4]])
    @given(q=quats(unit=True))
    @settings(max_examples=30, deadline=None)
    def test_point_on_plane_q22_and_over_q(self, v, q):
        hp = HyperplaneDual(v)
        p = section_graph_point(hp, q)
        assert plane_contains(hp, p)
        assert in_q22(p)
        assert project_quat(p).close_to(q, atol=1e-9)

    def test_off_sigma(self):
        with pytest.raises(NotOnSigma):
            section_graph_point(HyperplaneDual([1, 0, 0, 0]), Quat(2, 0))

    def test_tangent_plane_is_not_a_graph(self):
        with pytest.raises(TangentPlane):
            section_graph_point(TANGENT, Quat.one())


class TestLeaves:
    @pytest.mark.parametrize("v", [[1, 0, -1, 0], [0, 1j, 0, 1], [0.6, 0.8j, 0, 1]])
    def test_leaves_lie_in_the_section(self, v, rng):
        hp = HyperplaneDual(v)
        singular = section_kind(hp).singular_point
        for phase in np.linspace(0.0, 2 * math.pi, 7, endpoint=False):
            leaf = tangent_leaf(hp, phase)
            assert leaf.contains(singular)
            for p in leaf.sample_points(4, rng):
                assert in_q22(p)
                assert plane_contains(hp, p)
                assert abs(np.exp(1j * leaf_phase(hp, p)) - np.exp(1j * phase)) < 1e-8

    def test_distinct_leaves_meet_only_at_the_singular_point(self, rng):
        first = tangent_leaf(TANGENT, 0.0)
        second = tangent_leaf(TANGENT, 1.0)
        for p in first.sample_points(5, rng):
            assert not second.contains(p)

    def test_singular_point_has_no_phase(self):
        with pytest.raises(TangentPlane):
            leaf_phase(TANGENT, ProjPoint.of(1, 0, 1, 0))

    def test_requires_tangent(self):
        with pytest.raises(NotTangent):
            tangent_leaf(HyperplaneDual([1, 0, 0, 0]), 0.0)
