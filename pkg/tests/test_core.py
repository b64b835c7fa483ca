import itertools

import pytest

from cycleset import (
    Congruence,
    CycleSet,
    DehornoyCapExceeded,
    InvalidCycleSet,
    canonical_form,
    cycle_set,
    direct_product,
    is_isomorphic,
    relabel,
    trivial_cycle_set,
    validate_table,
)
from cycleset.perm import compose, from_cycles, identity, inverse, perm_order, power

# rows bijective, diagonal bijective, cycloid broken at (0, 2, 0)
CYCLOID_BROKEN = ((0, 1, 2), (0, 2, 1), (2, 0, 1))


class TestValidation:
    def test_ragged_table(self):
        with pytest.raises(InvalidCycleSet) as exc:
            validate_table(((0, 1), (0,)))
        assert exc.value.kind == "shape"

    def test_non_bijective_row(self):
        with pytest.raises(InvalidCycleSet) as exc:
            validate_table(((0, 0), (0, 1)))
        assert exc.value.kind == "row"
        assert exc.value.witness == 0

    def test_cycloid_violation_carries_witness(self):
        with pytest.raises(InvalidCycleSet) as exc:
            validate_table(CYCLOID_BROKEN)
        assert exc.value.kind == "cycloid"
        x, y, z = exc.value.witness
        t = CYCLOID_BROKEN
        assert t[t[x][y]][t[x][z]] != t[t[y][x]][t[y][z]]

    def test_out_of_range_entry(self):
        with pytest.raises(InvalidCycleSet):
            validate_table(((0, 2), (1, 0)))

    def test_empty_rejected(self):
        with pytest.raises(InvalidCycleSet):
            validate_table(())

    def test_singleton_accepted(self):
        X = cycle_set(((0,),))
        assert X.n == 1
        assert X.is_indecomposable
        assert X.is_simple

    def test_exhaustive_agreement_with_naive_check_n3(self):
        # validate() accepts exactly the tables passing a direct triple loop
        perms = list(itertools.permutations(range(3)))
        for rows in itertools.product(perms, repeat=3):
            naive = all(
                rows[rows[x][y]][rows[x][z]] == rows[rows[y][x]][rows[y][z]]
                for x in range(3)
                for y in range(3)
                for z in range(3)
            ) and sorted(rows[x][x] for x in range(3)) == [0, 1, 2]
            try:
                validate_table(rows)
                accepted = True
            except InvalidCycleSet:
                accepted = False
            assert accepted == naive


class TestBasicStructure:
    def test_size2(self, size2_indec):
        assert size2_indec.squaring_map == (1, 0)
        assert size2_indec.fixed_points == frozenset()
        assert size2_indec.is_indecomposable
        assert size2_indec.perm_group.order == 2

    def test_trivial_identity_is_decomposable(self, trivial2):
        assert trivial2.squaring_map == (0, 1)
        assert trivial2.is_decomposable
        assert trivial2.decomposition == ((0,), (1,))

    def test_table4(self, table4):
        assert table4.squaring_map == (0, 3, 2, 1)
        assert table4.fixed_points == frozenset({0, 2})
        assert table4.is_latin
        assert table4.is_indecomposable
        assert table4.is_irretractable
        assert table4.perm_group.order == 8
        assert table4.perm_group.is_nilpotent
        assert not table4.perm_group.is_abelian

    def test_displacement_group(self, table4, cyclic3):
        assert table4.displacement_group.order == 4
        assert cyclic3.displacement_group.order == 1

    def test_ex12(self, ex12):
        g = ex12.perm_group
        assert g.order == 6
        assert g.is_abelian
        assert max(perm_order(p) for p in g.elements) == 6  # cyclic
        assert ex12.is_decomposable
        assert ex12.prime_support_match()
        assert ex12.fixed_points == frozenset(range(5, 12))

    def test_latin_detection(self, table4, cyclic3):
        # constant-row tables have constant columns, so never latin past n=1
        assert table4.is_latin
        assert not cyclic3.is_latin


class TestSolutionCorrespondence:
    def test_solution_laws_on_census(self, censuses_small):
        for n, census in censuses_small.items():
            for X in census.cycle_sets():
                s = X.to_solution()
                assert s.is_involutive()
                assert s.satisfies_braid_relation()
                assert s.to_cycle_set().table == X.table

    def test_pair_formula(self, table4):
        s = table4.to_solution()
        lam = [inverse(table4.row(x)) for x in range(4)]
        for x in range(4):
            for y in range(4):
                u, v = s.r(x, y)
                assert u == lam[x][y]
                assert v == table4.table[u][x]

    def test_nondegenerate_components(self, cyclic5):
        s = cyclic5.to_solution()
        for x in range(5):
            assert sorted(s.lam[x]) == list(range(5))
            assert sorted(s.rho[x]) == list(range(5))


class TestRetraction:
    def test_ex12_retracts_to_two_classes(self, ex12):
        Y, cls = ex12.retraction()
        assert Y.n == 2
        assert cls[0] == cls[1]
        assert len({cls[x] for x in range(2, 12)}) == 1
        assert cls[0] != cls[2]

    def test_irretractable_fixed_point(self, table4):
        Y, cls = table4.retraction()
        assert Y.table == table4.table
        assert cls == (0, 1, 2, 3)

    def test_retract_of_trivial_is_point(self, cyclic3):
        Y, _ = cyclic3.retraction()
        assert Y.n == 1

    def test_retractions_validate_on_census(self, censuses_small):
        for census in censuses_small.values():
            for X in census.cycle_sets():
                Y, _ = X.retraction()
                validate_table(Y.table)


class TestCabling:
    def test_identity_degree(self, table4):
        assert table4.cabling(1).table == table4.table

    def test_squaring_power_law(self, censuses_small):
        for census in censuses_small.values():
            for X in census.cycle_sets():
                for k in range(1, 7):
                    Xk = X.cabling(k)
                    validate_table(Xk.table)
                    assert Xk.squaring_map == power(X.squaring_map, k)

    def test_coprime_cabling_keeps_indecomposability(self, censuses_small):
        for census in censuses_small.values():
            for X in census.cycle_sets():
                if not X.is_indecomposable:
                    continue
                for k in range(1, 7):
                    if X.n % k == 0 and k > 1:
                        continue
                    import math

                    if math.gcd(k, X.n) == 1:
                        assert X.cabling(k).is_indecomposable

    def test_rejects_nonpositive(self, cyclic3):
        with pytest.raises(ValueError):
            cyclic3.cabling(0)


class TestDehornoy:
    def test_small_classes(self, size2_indec, trivial2, cyclic3, table4):
        assert size2_indec.dehornoy_class() == 2
        assert trivial2.dehornoy_class() == 1
        assert cyclic3.dehornoy_class() == 3
        assert table4.dehornoy_class() == 2

    def test_ex12_class(self, ex12):
        # rows on the 2-part force an even class, rows on the 3-part a
        # multiple of three
        assert ex12.dehornoy_class() == 6

    def test_omega_tower(self, cyclic3):
        # one-step tower is plain left division
        for x in range(3):
            for y in range(3):
                assert cyclic3.omega((x, y)) == cyclic3.table[x][y]

    def test_omega_annihilation(self, censuses_small):
        for census in censuses_small.values():
            for X in census.cycle_sets():
                d = X.dehornoy_class()
                for x in range(X.n):
                    for y in range(X.n):
                        assert X.omega((x,) * d + (y,)) == y

    def test_cap_exceeded(self, cyclic3):
        with pytest.raises(DehornoyCapExceeded):
            cyclic3.dehornoy_class(cap=2)


class TestCongruences:
    def test_simplicity_of_small_fixtures(self, size2_indec, cyclic3, table4):
        assert size2_indec.is_simple
        assert cyclic3.is_simple
        assert table4.is_simple

    def test_ex12_has_nontrivial_congruence(self, ex12):
        c = ex12.principal_congruence(5, 6)
        assert not c.is_trivial
        assert c.is_congruence_of(ex12)

    def test_quotient_by_retract_relation(self, ex12):
        _, cls = ex12.retraction()
        cong = Congruence.from_labels(cls)
        Y, _ = ex12.quotient(cong)
        assert Y.n == 2

    def test_quotient_rejects_non_congruence(self, table4):
        bad = Congruence.from_labels((0, 0, 1, 1))
        if not bad.is_congruence_of(table4):
            with pytest.raises(ValueError):
                table4.quotient(bad)

    def test_indecomposable_quotients_have_equal_fibers(self, censuses_small):
        for census in censuses_small.values():
            for X in census.cycle_sets():
                if not X.is_indecomposable:
                    continue
                for c in X.congruences():
                    sizes = {len(cls) for cls in c.classes}
                    assert len(sizes) == 1

    def test_principal_congruence_contains_seed(self, table4):
        c = table4.principal_congruence(0, 1)
        labels = c.labels
        assert labels[0] == labels[1]

    def test_congruences_match_partition_scan(self, censuses_small):
        # the generated lattice equals a brute scan over every partition
        for n in (2, 3, 4):
            for X in censuses_small[n].cycle_sets():
                got = {c.classes for c in X.congruences()}
                want = set()
                for labels in itertools.product(range(n), repeat=n):
                    c = Congruence.from_labels(labels)
                    if c.is_congruence_of(X):
                        want.add(c.classes)
                assert got == want

    def test_congruence_set_closed_under_quotient_validation(self, censuses_small):
        for census in censuses_small.values():
            for X in census.cycle_sets():
                for c in X.congruences():
                    assert c.is_congruence_of(X)
                    Y, _ = X.quotient(c)
                    validate_table(Y.table)


class TestConstructors:
    def test_trivial_cycle_set_rows(self):
        g = (1, 2, 0)
        X = trivial_cycle_set(g)
        assert all(X.row(x) == g for x in range(3))
        assert X.squaring_map == g

    def test_trivial_always_valid(self):
        for n in range(1, 6):
            for g in itertools.permutations(range(n)):
                validate_table(trivial_cycle_set(g).table)

    def test_direct_product(self, size2_indec, cyclic3):
        P = direct_product(size2_indec, cyclic3)
        assert P.n == 6
        validate_table(P.table)
        assert P.is_indecomposable
        assert P.perm_group.order == 6

    def test_direct_product_projections_are_quotients(self, size2_indec, cyclic3):
        P = direct_product(size2_indec, cyclic3)
        # classes of constant first coordinate form a congruence onto cyclic3
        labels = tuple(i % 3 for i in range(6))
        cong = Congruence.from_labels(labels)
        assert cong.is_congruence_of(P)
        Y, _ = P.quotient(cong)
        assert is_isomorphic(Y, cyclic3) is not None


class TestIsomorphism:
    def test_relabel_roundtrip(self, table4):
        rho = (2, 0, 3, 1)
        Y = relabel(table4, rho)
        validate_table(Y.table)
        w = is_isomorphic(table4, Y)
        assert w is not None
        assert relabel(table4, w).table == Y.table

    def test_witness_direction_on_census(self, censuses_small):
        census = censuses_small[4]
        for X in census.cycle_sets():
            Y = relabel(X, (1, 3, 0, 2))
            w = is_isomorphic(X, Y)
            assert w is not None and relabel(X, w).table == Y.table

    def test_non_isomorphic(self, size2_indec, trivial2):
        assert is_isomorphic(size2_indec, trivial2) is None

    def test_canonical_form_identifies_classes(self, table4):
        Y = relabel(table4, (3, 1, 0, 2))
        assert canonical_form(Y).table == canonical_form(table4).table

    def test_invariants_respect_isomorphism(self, censuses_small):
        from cycleset.perm import cycle_type

        for X in censuses_small[4].cycle_sets():
            Y = relabel(X, (2, 1, 3, 0))
            assert cycle_type(X.squaring_map) == cycle_type(Y.squaring_map)
            assert X.perm_group.order == Y.perm_group.order
            assert X.is_latin == Y.is_latin
            assert X.is_decomposable == Y.is_decomposable
            assert X.dehornoy_class() == Y.dehornoy_class()
            assert X.is_simple == Y.is_simple
