import random
from fractions import Fraction

import pytest

from tropbase.poly import PolyRing, parse_polynomial, strip_monomial_content, to_str
from tropbase.tropical import (Interval, IntervalSet, UnsupportedDimensionError,
                               cell_intersection_points, circuits_linear,
                               extend_point, hypersurface_cells,
                               in_hypersurface, intersection_complex,
                               member_of_intersection, one_skeleton,
                               tropicalize)


def P(ring, text):
    return parse_polynomial(ring, text)


def forms_of(gens):
    return [tropicalize(g) for g in gens]


class TestTropicalize:
    def test_weights(self, ring_xyz):
        t = tropicalize(P(ring_xyz, "2*x+y-4"))
        weights = {exp: w for w, exp in t.pairs}
        assert weights == {(1, 0, 0): 1, (0, 1, 0): 0, (0, 0, 0): 2}

    def test_quintic_weights(self, ring_xyz):
        t = tropicalize(P(ring_xyz, "6*x^2+6*x^2*z+49*y+14*y*z+y*z^2"))
        weights = {exp: w for w, exp in t.pairs}
        assert weights == {(2, 0, 0): 1, (2, 0, 1): 1, (0, 1, 0): 0,
                           (0, 1, 1): 1, (0, 1, 2): 0}

    def test_zero_rejected(self, ring_xyz):
        with pytest.raises(ValueError):
            tropicalize(ring_xyz.zero())


class TestMembership:
    def test_on_surface(self, ring_xyz):
        t = tropicalize(P(ring_xyz, "2*x+y-4"))
        assert in_hypersurface(t, (1, 2, 0))
        assert in_hypersurface(t, (1, 2, 99))

    def test_off_surface(self, ring_xyz):
        t = tropicalize(P(ring_xyz, "2*x+y-4"))
        assert not in_hypersurface(t, (0, 0, 0))

    def test_binomial(self, q2):
        ring = PolyRing(("x",), q2)
        t = tropicalize(P(ring, "x-1"))
        assert in_hypersurface(t, (0,))
        assert not in_hypersurface(t, (1,))

    def test_intersection(self, ring_xyz, example_gens):
        forms = forms_of(example_gens)
        assert member_of_intersection(forms, (1, 2, 0))
        assert not member_of_intersection(forms, (5, 5, 5))
        assert member_of_intersection([], (0, 0, 0))


class TestCells:
    def test_tropical_line_in_plane(self, q2):
        ring = PolyRing(("x", "y"), q2)
        cx = hypersurface_cells(tropicalize(P(ring, "x+y+1")))
        assert [c.dim for c in cx.cells] == [1, 1, 1]

    def test_plane_curve_cylinder(self, ring_xyz):
        cx = hypersurface_cells(tropicalize(P(ring_xyz, "2*x+y-4")))
        assert [c.dim for c in cx.cells] == [2, 2, 2]

    def test_single_pair_form(self, ring_xyz):
        cx = hypersurface_cells(tropicalize(P(ring_xyz, "x")))
        assert cx.cells == ()

    def test_arity_limit(self, q2):
        ring = PolyRing(("a", "b", "c", "d"), q2)
        with pytest.raises(UnsupportedDimensionError):
            hypersurface_cells(tropicalize(P(ring, "a+b+c+d")))

    def test_membership_consistency(self, ring_xyz):
        rng = random.Random(8)
        form = tropicalize(P(ring_xyz, "2*x+y-4"))
        cx = hypersurface_cells(form)
        for _ in range(120):
            w = tuple(Fraction(rng.randint(-8, 8), rng.choice([1, 2]))
                      for _ in range(3))
            in_cells = any(c.contains_point(w) for c in cx.cells)
            assert in_cells == in_hypersurface(form, w)


class TestIntersectionComplex:
    def test_tropical_line_shape(self, example_gens):
        forms = forms_of(circuits_linear(example_gens))
        complex_ = intersection_complex(forms)
        dims = sorted(c.dim for c in complex_.cells)
        assert dims == [0, 0, 1, 1, 1, 1, 1]
        skel = one_skeleton(complex_)
        kinds = sorted(item["type"] for item in skel)
        assert kinds == ["point", "point", "ray", "ray", "ray", "ray",
                         "segment"]
        rays = {tuple(x for x in item["dir"]) for item in skel
                if item["type"] == "ray"}
        assert rays == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)}
        segs = [item for item in skel if item["type"] == "segment"]
        assert sorted(tuple(e) for e in segs[0]["ends"]) == \
            [(0, 1, 0), (1, 2, 0)]

    def test_vertices(self, example_gens):
        forms = forms_of(circuits_linear(example_gens))
        complex_ = intersection_complex(forms)
        points = {tuple(item["at"]) for item in one_skeleton(complex_)
                  if item["type"] == "point"}
        assert points == {(0, 1, 0), (1, 2, 0)}

    def test_pairwise_intersection_points(self, example_gens):
        forms = forms_of(circuits_linear(example_gens))
        complex_ = intersection_complex(forms)
        pts = cell_intersection_points(complex_)
        assert (Fraction(0), Fraction(1), Fraction(0)) in pts
        assert (Fraction(1), Fraction(2), Fraction(0)) in pts


class TestCircuits:
    def test_example_pair(self, ring_xyz, example_gens):
        circuits = {to_str(c) for c in circuits_linear(example_gens)}
        assert {"2*x + y - 4", "x + 2*y + z - 1", "3*y + 2*z + 2",
                "3*x - z - 7"} <= circuits
        # the full-variable-support circuit is required for a sound oracle
        assert "2*x + 7*y + 4*z" in circuits
        assert len(circuits) == 5

    def test_single(self, q2):
        ring = PolyRing(("x", "y"), q2)
        out = circuits_linear([P(ring, "x-y")])
        assert [to_str(c) for c in out] == ["x - y"]

    def test_transverse_pair(self, q2):
        ring = PolyRing(("x", "y"), q2)
        out = circuits_linear([P(ring, "x-1"), P(ring, "y-1")])
        # the difference x - y is itself support-minimal, hence a circuit
        assert {to_str(c) for c in out} == {"x - 1", "y - 1", "x - y"}

    def test_nonlinear_rejected(self, ring_xyz):
        with pytest.raises(ValueError):
            circuits_linear([P(ring_xyz, "x^2-y")])

    def test_extra_ideal_members_never_cut_deeper(self, example_gens):
        # the circuit intersection is the variety: throwing extra members
        # of the ideal into the intersection must not remove any point
        base = forms_of(circuits_linear(example_gens))
        rng = random.Random(2)
        extras = []
        for _ in range(6):
            a = example_gens[0].scale(Fraction(rng.randint(1, 5)))
            b = example_gens[1].scale(Fraction(rng.randint(-5, 5)))
            combo = a + b
            if combo:
                extras.append(tropicalize(combo))
        for _ in range(150):
            w = tuple(Fraction(rng.randint(-6, 6), rng.choice([1, 2]))
                      for _ in range(3))
            if member_of_intersection(base, w):
                assert member_of_intersection(extras, w)


class TestIntervals:
    def test_merge(self):
        s = IntervalSet([Interval(Fraction(0), Fraction(1)),
                         Interval(Fraction(1), Fraction(2)),
                         Interval(Fraction(5), Fraction(6))])
        assert len(s.intervals) == 2

    def test_unbounded_merge(self):
        s = IntervalSet([Interval(None, Fraction(3)),
                         Interval(None, Fraction(5))])
        assert s.intervals == (Interval(None, Fraction(5)),)

    def test_intersect(self):
        a = IntervalSet([Interval(Fraction(0), Fraction(4))])
        b = IntervalSet([Interval(Fraction(2), None)])
        assert a.intersect(b).intervals == \
            (Interval(Fraction(2), Fraction(4)),)

    def test_contains(self):
        s = IntervalSet([Interval(None, Fraction(0)),
                         Interval(Fraction(3), Fraction(3))])
        assert s.contains(Fraction(-10))
        assert s.contains(3)
        assert not s.contains(1)


class TestExtendPoint:
    def test_forced_zero(self, q2):
        ring = PolyRing(("x0", "x1"), q2)
        forms = forms_of([P(ring, "x0-x1-1")])
        out = extend_point(forms, [Fraction(5)])
        assert out.intervals == (Interval(Fraction(0), Fraction(0)),)

    def test_forced_negative(self, q2):
        ring = PolyRing(("x0", "x1"), q2)
        forms = forms_of([P(ring, "x0-x1-1")])
        out = extend_point(forms, [Fraction(-3)])
        assert out.intervals == (Interval(Fraction(-3), Fraction(-3)),)

    def test_product_relation(self, q2):
        ring = PolyRing(("x0", "x1"), q2)
        forms = forms_of([P(ring, "x0*x1-1")])
        for c in (Fraction(7), Fraction(-2), Fraction(1, 2)):
            out = extend_point(forms, [c])
            assert out.intervals == (Interval(-c, -c),)

    def test_interval_output(self, q2):
        # duplicated affine behaviour: x0 absent from one tie
        ring = PolyRing(("x0", "x1"), q2)
        forms = forms_of([P(ring, "x1-1")])
        out = extend_point(forms, [Fraction(0)])
        assert out.intervals == (Interval(None, None),)

    def test_extension_points_are_members(self, q2):
        ring = PolyRing(("x0", "x1", "x2"), q2)
        gens = [P(ring, "x0-x1-1"), P(ring, "x1-x2-2")]
        basis = forms_of(circuits_linear(gens))
        elim_form = tropicalize(P(PolyRing(("x1", "x2"), q2), "x1-x2-2"))
        # walk the three cells of the elimination hypersurface min(w1, w2, 1)
        samples = []
        for k in range(12):
            t = Fraction(k, 4) - 2
            samples.append((min(t, Fraction(1)), min(t, Fraction(1))))
            samples.append((Fraction(1), Fraction(1) + abs(t)))
            samples.append((Fraction(1) + abs(t), Fraction(1)))
        assert len(samples) >= 30
        for w in samples:
            assert in_hypersurface(elim_form, w)
            out = extend_point(basis, w)
            assert not out.is_empty()
            for w0 in out.sample_points():
                assert member_of_intersection(basis, (w0,) + w)
