import json
from fractions import Fraction
from functools import reduce
from operator import mul

import pytest
from hypothesis import given, settings, strategies as st

from ffpoly.polys import ModFrac, ModPoly, poly_gcd
from sieve.basis import HoldingBasis, basis_insert, basis_sort, build_basis
from sieve.debug import dump_debug
from sieve.exceptions import IncompleteBasis, SieveError
from sieve.kernel import kernel_relations, primitive, verify_kernel_vector
from sieve.matrix import CompositionMatrix, build_matrix, decompose, recompose, remap_columns, tally_usage

P = 997

small_polys = st.lists(st.integers(0, P - 1), min_size=2, max_size=5).map(lambda c: ModPoly(c, P))
factor_pool = [ModPoly(c, P) for c in ((-1, 1), (1, 1), (0, 1), (1, 1, 1), (-2, 1), (3, 0, 1))]
shared_factor_polys = st.lists(
    st.lists(st.integers(0, 2), min_size=len(factor_pool), max_size=len(factor_pool))
    .map(lambda exps: reduce(mul, (f ** e for f, e in zip(factor_pool, exps)), ModPoly((1,), P))),
    min_size=1, max_size=5,
)


class TestHoldingBasis:
    """Test refinement of the pairwise-coprime holding basis."""

    def test_insert_splits_shared_factor(self, make_poly, prime):
        """{X^2 - 1} refined by X^3 - 1 gives X + 1, X - 1, X^2 + X + 1."""
        B = HoldingBasis(prime, [make_poly(-1, 0, 1)])
        basis_insert(B, make_poly(-1, 0, 0, 1))
        assert set(B) == {make_poly(1, 1), make_poly(-1, 1), make_poly(1, 1, 1)}

    def test_constants_are_ignored(self, make_poly, prime):
        B = basis_insert(HoldingBasis(prime), make_poly(5))
        assert len(B) == 0

    def test_zero_is_rejected(self, make_poly, prime):
        with pytest.raises(SieveError):
            basis_insert(HoldingBasis(prime), make_poly())

    def test_powers_collapse(self, make_poly, prime):
        """(X - 1)^3 followed by X - 1 leaves the single element X - 1."""
        B = build_basis([make_poly(-1, 1) ** 3, make_poly(-1, 1)], prime)
        assert list(B) == [make_poly(-1, 1)]

    def test_parallel_build_matches_serial(self, make_poly, prime):
        polys = [make_poly(*([-1] + [0] * (n - 1) + [1])) for n in range(2, 13)]
        serial = build_basis(polys, prime)
        threaded = build_basis(polys, prime, threads=4)
        # both hold every cyclotomic factor of X^n - 1, n <= 12, exactly once
        assert reduce(mul, serial) == reduce(mul, threaded)
        for f in polys:
            decompose(ModFrac.from_poly(f), threaded)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(small_polys, min_size=1, max_size=6))
    def test_refinement_properties(self, polys):
        """Elements are monic, pairwise coprime, and every input factors over them."""
        polys = [f for f in polys if f.degree > 0]
        B = build_basis(polys, P)
        elements = list(B)
        assert all(e.lc == 1 and e.degree > 0 for e in elements)
        for i, a in enumerate(elements):
            for b in elements[i + 1:]:
                assert poly_gcd(a, b).is_one()
        for f in polys:
            decompose(ModFrac.from_poly(f), B)

    @settings(max_examples=40, deadline=None)
    @given(shared_factor_polys.flatmap(lambda polys: st.tuples(st.just(polys), st.permutations(polys))))
    def test_insertion_order_does_not_matter(self, case):
        polys, shuffled = case
        B = build_basis(polys, P)
        assert set(build_basis(shuffled, P)) == set(B)
        elements = list(B)
        for i, a in enumerate(elements):
            for b in elements[i + 1:]:
                assert poly_gcd(a, b).is_one()

    def test_sort_by_usage_then_degree(self, make_poly, prime):
        B = HoldingBasis(prime, [make_poly(1, 1, 1), make_poly(0, 1), make_poly(1, 1)], [1, 3, 1])
        ordered = basis_sort(B)
        assert list(ordered) == [make_poly(0, 1), make_poly(1, 1), make_poly(1, 1, 1)]
        assert ordered.counts == [3, 1, 1]


@pytest.fixture
def cyclotomic_basis(make_poly, prime):
    """[X^2 + X + 1, X - 1, X, X + 1]."""
    return HoldingBasis(prime, [make_poly(1, 1, 1), make_poly(-1, 1), make_poly(0, 1), make_poly(1, 1)])


class TestDecompose:
    """Test exponent rows of fractions over a basis."""

    def test_phi_fraction(self, make_frac, cyclotomic_basis):
        """(X^3 - 1)/(X^3 - X) -> (1, 0, -1, -1)."""
        f = make_frac((-1, 0, 0, 1), (0, -1, 0, 1))
        assert decompose(f, cyclotomic_basis) == {0: 1, 2: -1, 3: -1}

    def test_zeta_fraction(self, make_frac, cyclotomic_basis):
        """X^2/(X^2 - 1) -> (0, -1, 2, -1)."""
        f = make_frac((0, 0, 1), (-1, 0, 1))
        assert decompose(f, cyclotomic_basis) == {1: -1, 2: 2, 3: -1}

    def test_incomplete_basis(self, make_frac, cyclotomic_basis):
        with pytest.raises(IncompleteBasis):
            decompose(make_frac((1,), (1, 0, 1)), cyclotomic_basis)

    def test_zero_fraction(self, prime, cyclotomic_basis):
        with pytest.raises(SieveError):
            decompose(ModFrac.zero(prime), cyclotomic_basis)

    def test_recompose(self, make_frac, cyclotomic_basis):
        f = make_frac((0, 0, 1), (-1, 0, 1))
        row = {col: Fraction(exp) for col, exp in decompose(f, cyclotomic_basis).items()}
        assert recompose(row, cyclotomic_basis) == f

    def test_usage_and_remap(self, make_frac, cyclotomic_basis):
        fractions = [make_frac((-1, 0, 0, 1), (0, -1, 0, 1)), make_frac((0, 0, 1), (-1, 0, 1))]
        M = build_matrix(fractions, cyclotomic_basis)
        tally_usage(cyclotomic_basis, M)
        assert cyclotomic_basis.counts == [1, 1, 2, 2]
        ordered = basis_sort(cyclotomic_basis)
        remapped = remap_columns(M, cyclotomic_basis, ordered)
        for old_row, new_row in zip(M.rows, remapped.rows):
            assert recompose(old_row, cyclotomic_basis) == recompose(new_row, ordered)


class TestKernel:
    """Test left kernel extraction."""

    def test_phi_relation(self, prime, make_poly):
        """R(φ, 3) R(𝟙, 2)^-1 R(𝟙, 3) = 1."""
        fractions = [
            ModFrac.from_polys(make_poly(-1, 0, 0, 1), make_poly(0, -1, 0, 1)),
            ModFrac.from_polys(make_poly(0, 0, 1), make_poly(-1, 0, 1)),
            ModFrac.from_polys(make_poly(0, 0, 0, 1), make_poly(-1, 0, 0, 1)),
        ]
        B = build_basis([g for f in fractions for g in (f.num, f.den)], prime)
        M = build_matrix(fractions, B)
        vectors = kernel_relations(M)
        assert [v.coeffs for v in vectors] == [{0: 1, 1: -1, 2: 1}]
        assert verify_kernel_vector(M, vectors[0])

    def test_duplicate_rows(self):
        M = CompositionMatrix([{0: 1, 1: -1}, {0: 1, 1: -1}], 2)
        assert [v.coeffs for v in kernel_relations(M)] == [{0: 1, 1: -1}]

    def test_independent_rows(self):
        M = CompositionMatrix([{0: 1}, {1: 2}, {0: 1, 2: 1}], 3)
        assert kernel_relations(M) == []

    def test_order_decides_dependent_row(self):
        M = CompositionMatrix([{0: 1}, {0: 2}, {0: 3}], 1)
        vectors = kernel_relations(M, order=[2, 0, 1])
        assert {v.dependent for v in vectors} == {0, 1}
        for v in vectors:
            assert verify_kernel_vector(M, v)
            assert len(v.coeffs) == 2

    def test_rational_rows(self):
        M = CompositionMatrix([{0: Fraction(1, 2)}, {0: Fraction(3, 2)}], 1)
        assert [v.coeffs for v in kernel_relations(M)] == [{0: 3, 1: -1}]

    def test_primitive(self):
        assert primitive({3: -4, 5: 6}) == {3: 2, 5: -3}
        assert primitive({}) == {}

    @settings(max_examples=40, deadline=None)
    @given(st.lists(
        st.dictionaries(st.integers(0, 4), st.integers(-3, 3).filter(bool), max_size=3),
        min_size=1, max_size=7,
    ))
    def test_every_vector_is_in_the_kernel(self, rows):
        M = CompositionMatrix(rows, 5)
        vectors = kernel_relations(M)
        for v in vectors:
            assert verify_kernel_vector(M, v)
        # rank plus nullity
        independent = len(rows) - len(vectors)
        assert 0 <= independent <= 5


class TestDebugDump:
    def test_dump(self, tmp_path, make_frac, cyclotomic_basis):
        M = build_matrix([make_frac((0, 0, 1), (-1, 0, 1))], cyclotomic_basis)
        path = tmp_path / 'debug.json'
        dump_debug(path, cyclotomic_basis, M, ['ζ(2)'])
        payload = json.loads(path.read_text(encoding='utf-8'))
        assert payload['prime'] == 997
        assert payload['basis'][0]['coeffs'] == [1, 1, 1]
        assert payload['rows'][0]['label'] == 'ζ(2)'
        assert payload['rows'][0]['entries'] == [[1, '-1'], [2, '2'], [3, '-1']]
