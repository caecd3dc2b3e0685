import pytest
from hypothesis import given, settings, strategies as st

from oracles import centralizer_dim_q
from richsat.cent import (center_of, centralizer_in_u, check_propagation, closed_form_basis,
                          closed_form_center, closed_form_generators, default_prime, powers,
                          span_of, verify_centers, verify_table1)
from richsat.errors import CaseVacuous, Unsupported
from richsat.exact import next_prime
from richsat.typea import (DimensionVector, NilElement, all_dimension_vectors, elem,
                           nilradical_positions, pattern_instances, richardson, row_decomposition)

dims = st.lists(st.integers(1, 3), min_size=1, max_size=5).map(lambda v: DimensionVector(tuple(v)))

# rows whose closed form and kernel agree exactly
EXACT_ROWS = ("a1", "as", "an", "a1,a2", "an-1,an", "ar,ar+1")


def next_prime_after(n):
    return next_prime(n + 1)


# frozen from the sympy nullity oracle (rational, prime-independent for these d)
@pytest.mark.parametrize("d,dim", [
    ((1, 1), 1), ((1, 2, 1), 4), ((2, 2), 4), ((3, 2, 3, 1), 16), ((1, 1, 2, 1, 1), 6),
    ((1, 3, 1, 1), 7), ((2, 2, 1, 1), 7), ((2, 1, 2), 5), ((1, 2, 2, 1, 1), 9), ((2, 3, 1, 2), 13),
])
def test_centralizer_dim_frozen(d, dim):
    d = DimensionVector(d)
    assert centralizer_in_u(d, default_prime(d)).dim == dim


@settings(max_examples=40, deadline=None)
@given(dims)
def test_centralizer_dim_matches_rational_oracle(d):
    assert centralizer_in_u(d, 101).dim == centralizer_dim_q(d.parts)


@settings(max_examples=40, deadline=None)
@given(dims)
def test_brackets_vanish_on_centralizer_and_center(d):
    p = default_prime(d)
    c = centralizer_in_u(d, p)
    z = center_of(c, p)
    x = richardson(d, p)
    elems = c.elements()
    assert all(not x.bracket(e).support for e in elems)
    zs = [NilElement.from_coords(v, nilradical_positions(d), d.size, p) for v in z.basis.matrix]
    assert all(not a.bracket(b).support for a in zs for b in elems)
    assert z.basis <= c.basis


@settings(max_examples=40, deadline=None)
@given(dims)
def test_row_summands_commute_with_x(d):
    # each line of the diagram contributes its own element of c
    p = default_prime(d)
    c = centralizer_in_u(d, p)
    for r in row_decomposition(richardson(d, p), d):
        if r.support:
            assert not richardson(d, p).bracket(r).support
            assert span_of([r], d, p) <= c.basis


def test_propagation_small_sweep():
    for d in all_dimension_vectors(5, 1):
        p = default_prime(d)
        for e in centralizer_in_u(d, p).elements():
            rep = check_propagation(e, d)
            assert rep.passed, (d, str(e), rep.violations)


def test_propagation_detects_violation():
    # lines 1-3-4 and 2-5: the entry (3,5) forces (1,2), which is not in u
    d = DimensionVector((2, 1, 2))
    rep = check_propagation(elem(d, 5, (3, 5)), d)
    assert not rep.passed and rep.violations


@pytest.mark.parametrize("n", range(3, 8))
def test_closed_forms_on_exact_rows(n):
    p = next_prime_after(n)
    for key in EXACT_ROWS:
        for roots in pattern_instances(n, key):
            d = DimensionVector.from_levi(n, roots)
            assert closed_form_basis(d, p).basis == centralizer_in_u(d, p).basis, d


@pytest.mark.parametrize("n", range(4, 9))
def test_extra_line_element_rows(n):
    # with partition [n-1, 2] the centralizer is larger than the closed form
    p = next_prime_after(n)
    for key, extra in (("a1,an", 1), ("ar,an", 1), ("a1,as", 1), ("ar,as", 1)):
        for roots in pattern_instances(n, key):
            d = DimensionVector.from_levi(n, roots)
            c = centralizer_in_u(d, p)
            offset = {"a1,an": 0, "ar,an": 1, "a1,as": 1, "ar,as": 2}[key]
            assert c.dim == n + offset + extra, d
            gens = closed_form_generators(d, p)
            inside = all(span_of([g], d, p) <= c.basis for g in gens)
            # the mixed generator leaves c exactly when s = n - 1
            assert inside == (key in ("a1,an", "ar,an") or roots[1] < n - 1), d


def test_ten_listed_generators():
    d = DimensionVector((3, 2, 3, 1))
    p = 11
    x = richardson(d, p)
    gens = [elem(d, p, (1, 5), (4, 7)), elem(d, p, (1, 7)), elem(d, p, (2, 4), (5, 6), (7, 9)),
            elem(d, p, (2, 6), (5, 9)), elem(d, p, (2, 9)), elem(d, p, (2, 8)), elem(d, p, (3, 7)),
            elem(d, p, (1, 8)), elem(d, p, (3, 6), (8, 9)), elem(d, p, (3, 9))]
    c = centralizer_in_u(d, p)
    assert all(not x.bracket(g).support for g in gens)
    listed = span_of(gens + powers(x, 3), d, p)
    assert listed <= c.basis
    assert (listed.dim, c.dim) == (13, 16)
    # the three line summands of x are independent elements of c
    rows = row_decomposition(x, d)
    assert (listed + span_of(rows, d, p)).dim == 15


@pytest.mark.parametrize("n", range(3, 9))
def test_centers(n):
    p = next_prime_after(n)
    rep = verify_centers(n, p)
    failing = {c.name.split("/")[1] for c in rep.failures}
    assert failing <= {"a1,an"}
    for roots in pattern_instances(n, "a1,an"):
        d = DimensionVector.from_levi(n, roots)
        c = centralizer_in_u(d, p)
        assert c.abelian and center_of(c, p).dim == n + 1
        assert span_of(closed_form_center(d, p), d, p).dim == n


def test_table1_abelian_flags_all_match():
    for n in range(3, 8):
        rep = verify_table1(n, next_prime_after(n))
        assert not [c for c in rep.failures if c.name.endswith("/abelian")]


def test_closed_form_errors():
    with pytest.raises(Unsupported):
        closed_form_generators(DimensionVector((3, 2, 3, 1)))
    with pytest.raises(Unsupported):
        closed_form_generators(DimensionVector((1, 1, 1)))
    with pytest.raises(CaseVacuous):
        closed_form_generators(DimensionVector((3,)))

