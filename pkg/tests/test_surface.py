"""Triangulated surfaces: builders, flips, cuts, matrices, topology."""

import pytest

from qskein import qseed
from qskein import surface as surf
from qskein.surface import CutError, FlipError, TriangulatedSurface


class TestBuilders:
    @pytest.mark.parametrize("n", range(3, 9))
    def test_disc(self, n):
        s = surf.build_disc(n)
        s.validate()
        assert s.n_points == n
        assert s.n_arcs == 2 * n - 3
        assert len(s.triangles) == n - 2
        (comp,) = s.components()
        assert comp["genus"] == 0
        assert comp["boundaries"] == 1

    def test_disc_too_small(self):
        with pytest.raises(ValueError):
            surf.build_disc(2)

    @pytest.mark.parametrize("pq", [(1, 1), (2, 1), (2, 2), (3, 1)])
    def test_annulus(self, pq):
        p, q = pq
        s = surf.build_annulus(p, q)
        s.validate()
        assert s.n_points == p + q
        assert s.n_arcs == 3 * 2 + 2 * (p + q) - 6
        (comp,) = s.components()
        assert comp["genus"] == 0
        assert comp["boundaries"] == 2

    def test_disjoint_union(self):
        s = surf.disjoint_union(surf.build_disc(4), surf.build_annulus(1, 1))
        s.validate()
        comps = s.components()
        assert len(comps) == 2
        assert [c["boundaries"] for c in comps] == [1, 2]

    def test_annulus_flip_square_seed(self):
        seed = surf.to_seed(surf.build_annulus(1, 1))
        assert seed.ex == (2, 3)
        assert seed.pi_b() == [[0, 2], [-2, 0]]
        lam = [list(r) for r in seed.lam.matrix]
        assert lam == [
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, -2],
            [0, 0, 2, 0],
        ]


class TestValidation:
    def test_corrupted_triangle_rejected(self):
        s = surf.build_disc(4)
        triangles = list(s.triangles)
        t = triangles[0]
        triangles[0] = (t[1], t[0], t[2])
        with pytest.raises(ValueError):
            TriangulatedSurface(s.arcs, s.fans, tuple(triangles))

    def test_missing_end_rejected(self):
        s = surf.build_disc(4)
        fans = [list(f) for f in s.fans]
        fans[0] = fans[0][:-1]
        with pytest.raises(ValueError):
            TriangulatedSurface(s.arcs, fans, s.triangles)


class TestFlip:
    def test_boundary_arc_rejected(self):
        with pytest.raises(FlipError):
            surf.flip(surf.build_disc(4), 0)

    def test_flip_validates_and_involutes(self):
        for s in [surf.build_disc(5), surf.build_annulus(1, 1), surf.build_annulus(2, 1)]:
            for j in s.internal_arcs():
                try:
                    flipped = surf.flip(s, j)
                except FlipError:
                    continue
                flipped.validate()
                assert surf.flip(flipped, j).canonical() == s.canonical()

    def test_flip_matches_matrix_mutation(self):
        s = surf.build_disc(6)
        seed = surf.to_seed(s)
        for j in seed.ex:
            flipped = surf.to_seed(surf.flip(s, j))
            assert flipped.b == seed.mutate(j).b
            assert flipped.lam.matrix == seed.mutate(j).lam.matrix

    def test_annulus_flip_changes_lambda(self):
        s = surf.build_annulus(1, 1)
        flipped = surf.to_seed(surf.flip(s, 2))
        assert [list(r) for r in flipped.lam.matrix] == [
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 2],
            [0, 0, -2, 0],
        ]
        assert [list(r) for r in flipped.b] == [[-1, 1], [-1, 1], [0, -2], [2, 0]]


class TestCut:
    def test_boundary_arc_rejected(self):
        with pytest.raises(CutError):
            surf.cut(surf.build_annulus(1, 1), 0)

    def test_same_endpoint_arc_unsupported(self):
        s = surf.build_annulus(2, 1)
        loops = [j for j in s.internal_arcs() if s.arcs[j].ends[0] == s.arcs[j].ends[1]]
        assert loops
        with pytest.raises(NotImplementedError):
            surf.cut(s, loops[0])

    def test_cut_annulus_gives_disc(self):
        s = surf.build_annulus(1, 1)
        c = surf.cut(s, 2)
        c.validate()
        (comp,) = c.components()
        assert comp["genus"] == 0
        assert comp["boundaries"] == 1
        assert c.n_points == 4
        assert c.n_arcs == 5

    def test_cut_disc_diagonal_disconnects(self):
        s = surf.build_disc(5)
        j = s.internal_arcs()[0]
        c = surf.cut(s, j)
        c.validate()
        assert len(c.components()) == 2

    def test_cut_realizes_freezing(self):
        s = surf.build_annulus(1, 1)
        seed = surf.to_seed(s)
        cseed = surf.to_seed(surf.cut(s, 2))
        assert cseed.ex == (3,)
        assert cseed.pi_b() == [[0]]
        frozen = seed.freeze({2})
        np = len(seed.b)
        for i in range(np):
            if i == 2:
                continue
            assert list(cseed.b[i]) == list(frozen.b[i])
        assert [cseed.b[2][0] + cseed.b[np][0]] == list(frozen.b[2])


class TestIdentity:
    def test_equality_up_to_end_relabeling(self):
        s = surf.build_disc(4)
        arcs = [surf.Arc(a.boundary, a.ends) for a in s.arcs]
        j = s.internal_arcs()[0]
        arcs[j] = surf.Arc(arcs[j].boundary, (arcs[j].ends[1], arcs[j].ends[0]))
        fans = [[(a, 1 - e) if a == j else (a, e) for a, e in fan] for fan in s.fans]
        triangles = tuple(
            tuple((a, 1 - e) if a == j else (a, e) for a, e in tri) for tri in s.triangles
        )
        relabeled = TriangulatedSurface(arcs, fans, triangles)
        assert relabeled == s
        assert hash(relabeled) == hash(s)

    def test_distinct_surfaces_differ(self):
        assert surf.build_disc(4) != surf.build_disc(5)
        assert surf.build_annulus(1, 1) != surf.build_disc(4)


class TestJson:
    @pytest.mark.parametrize(
        "s",
        [surf.build_disc(4), surf.build_disc(6), surf.build_annulus(1, 1), surf.build_annulus(2, 2)],
        ids=["disc4", "disc6", "annulus11", "annulus22"],
    )
    def test_round_trip(self, s):
        data = s.to_json()
        assert set(data) == {"marked_points", "arcs", "triangles", "components"}
        back = TriangulatedSurface.from_json(data)
        assert back == s
        assert back.to_json() == data


class TestSeedBridge:
    def test_to_seed_is_compatible(self):
        for s in [surf.build_disc(5), surf.build_disc(7), surf.build_annulus(1, 1)]:
            seed = surf.to_seed(s)
            assert all(v == 4 for v in seed.check_compatibility().values())

    def test_matrices_shapes(self):
        s = surf.build_disc(5)
        n = s.n_arcs
        assert len(surf.lambda_matrix(s)) == n
        assert len(surf.q_matrix(s)) == n
        b = surf.b_matrix(s)
        assert len(b) == n
        assert len(b[0]) == len(s.internal_arcs())

    def test_small_discs_have_zero_exchange_part(self):
        assert surf.to_seed(surf.build_disc(3)).pi_b() == []
        assert surf.to_seed(surf.build_disc(4)).pi_b() == [[0]]

    def test_banff_witnesses(self):
        for s in [surf.build_disc(5), surf.build_annulus(1, 1)]:
            assert qseed.banff_step(surf.to_seed(s).pi_b()) is not None
