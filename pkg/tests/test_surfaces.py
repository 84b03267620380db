from fractions import Fraction

import pytest
import sympy

from curvecomplex.surfaces import (
    GAMMA_03_ORDER, DecompositionGraph, SurfaceType, _children, _norm_edges, bernoulli, canonical_form,
    complexity, components_without, cost, cut_nonseparating, cut_separating, enumerate_decompositions,
    extension_predicate_checks, l2_betti, l2_euler, n_max, n_of, odd_cases, verify_max_lemma,
    verify_parity_lemmas, virtual_euler,
)

from oracles import best_n_by_cutting, count_isomorphism_classes


def surfaces_up_to(kmax, kmin=0):
    for k in range(kmin, kmax + 1):
        for g in range((k + 4) // 3 + 1):
            p = k + 4 - 3 * g
            if p >= 0:
                yield SurfaceType(g, p)


def test_complexity_and_n_max():
    assert complexity((1, 1)) == 0 and complexity((0, 4)) == 0
    assert n_max((2, 0)) == 2
    assert n_max((0, 7)) == 2
    for s in surfaces_up_to(10):
        assert n_max(s) == best_n_by_cutting(s.g, s.p)


def test_cuts():
    assert cut_nonseparating((2, 0)) == SurfaceType(1, 2)
    assert cut_separating((2, 0)) == [(SurfaceType(1, 1), SurfaceType(1, 1))]
    with pytest.raises(ValueError):
        cut_nonseparating((0, 5))
    for s in surfaces_up_to(10):
        for q1, q2 in cut_separating(s):
            assert complexity(q1) + complexity(q2) + 2 == complexity(s)
            assert q1.g + q2.g == s.g and q1.p + q2.p == s.p + 2


def test_small_enumerations():
    one_one = enumerate_decompositions((1, 1))
    assert [(d.vertices, d.edges) for d in one_one] == [(((1, 1),), ()), (((0, 1),), ((0, 0),))]
    four = enumerate_decompositions((0, 4))
    assert len(four) == 2
    assert four[1].pieces() == [SurfaceType(0, 3), SurfaceType(0, 3)]


def test_closed_surface_counts():
    # numbers of stable graphs of closed genus 2, 3 and 4 curves
    assert [len(enumerate_decompositions((g, 0))) for g in (2, 3, 4)] == [7, 42, 379]


def test_enumeration_invariants():
    for s in surfaces_up_to(5):
        graphs = enumerate_decompositions(s)
        assert len({d.certificate for d in graphs}) == len(graphs)
        for d in graphs:
            d.validate(s)
            assert d.num_edges <= 3 * s.g + s.p - 3
        assert max(n_of(d) for d in graphs) == n_max(s)


def test_canonical_form_against_vf2():
    for s in surfaces_up_to(3):
        graphs = enumerate_decompositions(s)
        assert count_isomorphism_classes(graphs) == len(graphs)
        # every raw child of every class is isomorphic to exactly one emitted class
        raw = [DecompositionGraph(tuple(v), tuple(_norm_edges(e))) for d in graphs for v, e in _children(d)]
        raw.extend(graphs)
        assert count_isomorphism_classes(raw) == len(graphs)


def test_canonical_form_relabelling():
    verts = [(0, 1), (1, 0), (0, 2), (0, 0)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 3), (0, 3)]
    c = canonical_form(verts, edges)
    perm = [2, 0, 3, 1]
    c2 = canonical_form([verts[perm.index(i)] for i in range(4)], [(perm[i], perm[j]) for i, j in edges])
    assert c.certificate == c2.certificate


def test_n_of():
    assert n_of(enumerate_decompositions((2, 3))[0]) == 1
    full = [d for d in enumerate_decompositions((2, 3)) if d.num_edges == 6]
    assert full and all(n_of(d) == 0 and len(d.vertices) == 5 for d in full)
    maxers = [d for d in enumerate_decompositions((2, 0)) if n_of(d) == 2]
    assert [d.type_counts() for d in maxers] == [{(1, 1): 2}]
    assert maxers[0].is_tree()


def test_components_without():
    d = canonical_form([(1, 0), (0, 1), (1, 0)], [(0, 1), (1, 2)])
    assert sorted(components_without(d, d.bridges())) == [SurfaceType(0, 3), SurfaceType(1, 1), SurfaceType(1, 1)]


def test_lemmas_small_range():
    for s in surfaces_up_to(5):
        assert verify_max_lemma(s)["holds"]
        assert verify_parity_lemmas(s)["holds"]
        assert extension_predicate_checks(s)["holds"]


def test_odd_case_examples():
    r = verify_parity_lemmas((0, 7))
    assert r["realized"] == ["a", "b"]
    assert set(map(tuple, r["cases"].values())) == {(1, 2, 0, 0, 0), (0, 1, 1, 0, 0)}
    assert set(odd_cases((1, 2))) == {"a", "c", "d"}


def test_extension_examples():
    r = extension_predicate_checks((1, 4))
    kinds = {c["kind"] for c in r["checks"]}
    assert {"odd-two-separating", "odd-separating-nonseparating", "odd-single-separating"} <= kinds
    # three odd pieces leave no maximal extension
    assert any(c["kind"] == "odd-two-separating" and not c["oracle"] for c in r["checks"])
    even = extension_predicate_checks((2, 2))
    assert all(c["best"] == n_max((2, 2)) - 1 for c in even["checks"])


def test_bernoulli_against_sympy():
    assert bernoulli(2) == Fraction(1, 6) and bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(1) == Fraction(-1, 2)
    for n in range(0, 31, 2):
        assert bernoulli(n) == Fraction(str(sympy.bernoulli(n)))


def test_euler_invariants():
    assert virtual_euler((1, 1)) == Fraction(-1, 12)
    assert l2_betti((1, 1)) == (1, Fraction(1, 12))
    assert cost((1, 1)) == 1 + Fraction(1, 12)
    assert l2_betti((2, 0)) == (3, Fraction(1, 240))
    assert virtual_euler((0, 3)) == Fraction(1, GAMMA_03_ORDER)
    assert cost((0, 3)) == Fraction(5, 6)
    with pytest.raises(ValueError):
        virtual_euler((1, 0))
    with pytest.raises(ValueError):
        virtual_euler((0, 2))
    for s in list(surfaces_up_to(10, kmin=-1)):
        if s.p == 0 and s.g <= 1 or 2 * s.g - 2 + s.p <= 0:
            continue
        assert l2_euler(s) == virtual_euler(s)
