import pytest

from toriplan import algebra as alg
from toriplan import applications as app
from toriplan.complex import Graph, from_facets, full_simplex


def graph(n, edges):
    return Graph.from_edges(n, edges)


class TestRaag:
    def test_path(self):
        assert app.raag_tc(graph(3, [[1, 2], [2, 3]])).tc == 4

    def test_edgeless(self):
        assert app.raag_tc(graph(2, [])).tc == 3

    @pytest.mark.parametrize("n", [1, 4, 6])
    def test_complete(self, n):
        edges = [[i, j] for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        assert app.raag_tc(graph(n, edges)).tc == n + 1

    def test_k_independent(self):
        G = graph(4, [[1, 2], [3, 4]])
        assert {app.raag_tc(G, k).tc for k in range(1, 5)} == {5}

    def test_bad_k(self):
        with pytest.raises(app.ApplicationError):
            app.raag_tc(graph(2, []), 0)


class TestArrangements:
    @pytest.mark.parametrize("n, ell, want", [(5, 2, 5), (2, 3, 3), (8, 2, 5)])
    def test_general_position(self, n, ell, want):
        assert app.general_position_tc(n, ell).tc == want

    @pytest.mark.parametrize("n, ell, want", [(4, 2, 4), (10, 3, 6)])
    def test_generic_central(self, n, ell, want):
        assert app.generic_central_tc(n, ell).tc == want

    def test_generic_sweep(self):
        for ell in range(1, 11):
            for n in range(ell, 11):
                assert app.generic_central_tc(n, ell).tc == min(n + 1, 2 * ell)

    def test_generic_needs_enough_hyperplanes(self):
        with pytest.raises(app.ApplicationError):
            app.generic_central_tc(2, 3)

    @pytest.mark.parametrize("n, ell, k, want", [(5, 2, 3, 5), (2, 3, 2, 3)])
    def test_redundant(self, n, ell, k, want):
        assert app.redundant_tc(n, ell, k).tc == want


class TestOpenString:
    def test_n2_functionals(self):
        A = app.open_string_arrangement(2)
        assert sorted(str(h) for h in A.hyperplanes) == ["y1", "y1 - y2", "y2 - 1"]
        assert app.check_general_position(A)
        assert app.open_string_tc(2).tc == 4

    def test_n3(self):
        assert app.open_string_tc(3).tc == 5

    def test_n1(self):
        A = app.open_string_arrangement(1)
        assert len(A.hyperplanes) == 2
        assert app.open_string_tc(1).tc == 3

    def test_general_position_up_to_8(self):
        assert all(app.check_general_position(app.open_string_arrangement(n)) for n in range(1, 9))


class TestGeneralPositionChecker:
    def test_parallel(self):
        A = app.ArrangementSpec(2, (app.hyperplane([1, 0], 0), app.hyperplane([1, 0], -1)))
        assert not app.check_general_position(A)

    def test_concurrent(self):
        hs = (app.hyperplane([1, 0]), app.hyperplane([0, 1]), app.hyperplane([1, 1]))
        assert not app.check_general_position(app.ArrangementSpec(2, hs))

    def test_repeated_rejected(self):
        with pytest.raises(app.ApplicationError):
            app.ArrangementSpec(2, (app.hyperplane([1, 2], 1), app.hyperplane([2, 4], 2)))


class TestWedge:
    def test_circles(self):
        assert app.wedge_tc(full_simplex(1), full_simplex(1)).tc == 3

    def test_torus_circle(self):
        assert app.wedge_tc(full_simplex(2), full_simplex(1)).tc == 4

    def test_point(self):
        X = from_facets(3, [[1, 2], [2, 3]])
        assert app.wedge_tc(X, from_facets(1, [])).tc == 4


def test_every_answer_certified():
    answers = [app.general_position_tc(n, ell) for ell in range(1, 4) for n in range(1, 8)]
    answers += [app.generic_central_tc(n, ell) for ell in range(1, 4) for n in range(ell, 8)]
    answers += [app.raag_tc(Graph.from_edges(4, [[1, 2], [2, 3], [3, 4]]))]
    for ans in answers:
        cert = alg.zcl_witness(ans.model)
        assert cert.certified and cert.value + 1 == ans.tc
