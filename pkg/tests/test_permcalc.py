import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covercalc.perm import Perm
from covercalc.permcalc import (
    SIGMA3,
    BranchComponent,
    BranchingType,
    BranchInventory,
    DiskRep,
    InventoryError,
    boundary_is_k_cycle,
    compose_branching,
    dihedral_rep,
    euler_char_disk_cover,
    permutation_group_order,
    pseudo_branch_double_cover,
    quotient_by_rotation,
    regular_representation,
    torus_modification,
)

T = BranchingType.of


def inv(degree, **types):
    return BranchInventory(
        degree, tuple(BranchComponent(k, v[0], frozenset(v[1])) for k, v in types.items())
    )


class TestPerm:
    def test_left_to_right(self):
        x, y = Perm.parse("(1 2)", 3), Perm.parse("(2 3)", 3)
        # apply x first: 1 -> 2 -> 3
        assert (x * y)(1) == 3

    def test_parse_format(self):
        assert str(Perm.parse("(1 2)(3 4)")) == "(1 2)(3 4)"
        assert str(Perm.identity(4)) == "()"
        with pytest.raises(ValueError):
            Perm.parse("(1 2")

    @given(st.permutations(range(1, 7)), st.permutations(range(1, 7)), st.permutations(range(1, 7)))
    def test_group_axioms(self, a, b, c):
        a, b, c = Perm(tuple(a)), Perm(tuple(b)), Perm(tuple(c))
        assert (a * b) * c == a * (b * c)
        assert (a * a.inverse()).is_identity()
        assert (a * b).sign() == a.sign() * b.sign()
        assert sum(a.cycle_type()) == 6


class TestDihedral:
    def test_k3_matches_formula(self):
        rep = dihedral_rep(3)
        assert str(rep.rho_x) == "(1 2)"
        assert str(rep.rho_y) == "(2 3)"
        # the k-cycle (1, k, k-1, ..., 2) for k = 3
        assert rep.boundary == Perm.from_cycles(3, [(1, 3, 2)])

    def test_k4(self):
        rep = dihedral_rep(4)
        assert str(rep.rho_x) == "(1 2)(3 4)"
        assert str(rep.rho_y) == "(2 4)"
        # (1 2)(3 4) then (2 4): 1->2->4, 4->3, 3->4->2, 2->1
        assert rep.boundary == Perm.from_cycles(4, [(1, 4, 3, 2)])

    def test_k2_degenerate(self):
        rep = dihedral_rep(2)
        assert str(rep.rho_x) == "(1 2)"
        assert rep.rho_y.is_identity()
        assert boundary_is_k_cycle(rep)
        assert euler_char_disk_cover(rep) == 1

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            dihedral_rep(1)

    @pytest.mark.parametrize("k", range(2, 51))
    def test_general_formula(self, k):
        rep = dihedral_rep(k)
        expected = Perm.from_cycles(k, [(1,) + tuple(range(k, 1, -1))])
        assert rep.boundary == expected
        assert rep.is_transitive()

    def test_euler(self):
        assert euler_char_disk_cover(dihedral_rep(5)) == 1
        assert euler_char_disk_cover(dihedral_rep(3)) == 1
        trivial = DiskRep(1, Perm.identity(1), Perm.identity(1))
        assert euler_char_disk_cover(trivial) == 1

    def test_k6_boundary(self):
        assert boundary_is_k_cycle(dihedral_rep(6))

    def test_equal_images_not_cycle(self):
        x = Perm.parse("(1 2)(3 4)")
        assert not boundary_is_k_cycle(DiskRep(4, x, x))

    def test_k5_cycle_types(self):
        rep = dihedral_rep(5)
        assert rep.rho_x.cycle_type() == (1, 2, 2)
        assert rep.rho_y.cycle_type() == (1, 2, 2)


class TestComposeBranching:
    def test_examples(self):
        assert compose_branching(T(1, 2), 2) == T(2, 4)
        assert compose_branching(T(1, 2), 1) == T(1, 2)
        assert compose_branching(T(3), 2) == T(6)

    @given(st.lists(st.integers(1, 9), min_size=1, max_size=6), st.integers(1, 6), st.integers(1, 6))
    def test_multiplicative(self, parts, a, b):
        t = BranchingType(tuple(parts))
        assert compose_branching(compose_branching(t, a), b) == compose_branching(t, a * b)


class TestTorusModification:
    def test_k5(self):
        out = torus_modification(inv(5, ax=(T(5), {"axis"}), h=(T(1, 2, 2), {"horizontal"})), "ax", 5)
        assert out["ax.A"].type == T(1, 2, 2)
        assert out["ax.B"].type == T(1, 2, 2)
        assert out["h"].type == T(1, 2, 2)
        assert "ax" not in out

    def test_k2(self):
        out = torus_modification(inv(2, ax=(T(2), {"axis"})), "ax", 2)
        assert [c.type for c in out.components] == [T(2), T(1, 1)]

    def test_unbranched_rejected(self):
        with pytest.raises(InventoryError):
            torus_modification(inv(1, ax=(T(1), {"axis"})), "ax", 1)

    def test_missing(self):
        with pytest.raises(InventoryError):
            torus_modification(inv(1, ax=(T(1), {"axis"})), "nope", 3)

    @pytest.mark.parametrize("k", range(2, 30))
    def test_degree_preserved(self, k):
        out = torus_modification(inv(3 * k, ax=(T(*[k] * 3), {"axis"})), "ax", k)
        assert all(c.type.total == 3 * k for c in out.components)
        assert out.local_degrees() <= {1, 2}


class TestQuotient:
    def test_cyclic_orbit(self):
        comps = {f"h{j}": (T(1, 2), {"horizontal"}) for j in range(4)}
        comps["v"] = (T(1, 2), {"vertical"})
        out = quotient_by_rotation(inv(3, **comps), 4, [[f"h{j}" for j in range(4)]], "axis")
        assert out.degree == 12
        assert out.labels == ["h0", "v", "axis"]
        assert out["h0"].type == T(1, 2, 1, 2, 1, 2, 1, 2)
        assert out["axis"].type == T(4, 4, 4)

    def test_order_one(self):
        with pytest.raises(InventoryError):
            quotient_by_rotation(inv(3, v=(T(1, 2), ())), 1, [], "axis")

    def test_bad_orbit_size(self):
        with pytest.raises(InventoryError):
            quotient_by_rotation(inv(3, a=(T(1, 2), ()), b=(T(1, 2), ())), 3, [["a", "b"]], "axis")


class TestRegular:
    def test_transposition(self):
        img = regular_representation(Perm.parse("(1 2)", 3))
        assert img.cycle_type() == (2, 2, 2)

    def test_identity(self):
        assert regular_representation(Perm.identity(3)).is_identity()

    def test_three_cycle(self):
        assert regular_representation(Perm.parse("(1 2 3)")).cycle_type() == (3, 3)

    def test_homomorphism_all_pairs(self):
        for g, h in itertools.product(SIGMA3, repeat=2):
            assert regular_representation(g * h) == regular_representation(g) * regular_representation(h)

    def test_free_action(self):
        for g in SIGMA3[1:]:
            img = regular_representation(g)
            assert all(img(i) != i for i in range(1, 7))

    def test_image_order(self):
        assert permutation_group_order([regular_representation(g) for g in SIGMA3]) == 6

    def test_wrong_degree(self):
        with pytest.raises(ValueError):
            regular_representation(Perm.identity(4))


class TestPseudo:
    def test_doubled_borromean(self):
        comps = {}
        for k in range(3):
            comps[f"b{k}"] = (T(2), {"branch"})
            comps[f"p{k}"] = (T(1, 1), {"pseudo"})
        datum, u = pseudo_branch_double_cover(inv(2, **comps))
        assert u.labels == ["p0", "p1", "p2"]
        assert datum.index == 2

    def test_no_pseudo(self):
        _, u = pseudo_branch_double_cover(inv(3, a=(T(1, 2), {"branch"})))
        assert len(u) == 0

    def test_no_tags(self):
        with pytest.raises(InventoryError):
            pseudo_branch_double_cover(inv(3, a=(T(1, 2), {"horizontal"})))

    def test_sign(self):
        from covercalc.permcalc import IndexTwoDatum

        assert IndexTwoDatum.sign(Perm.parse("(1 2)", 3)) == -1


class TestInventory:
    def test_roundtrip(self):
        i = inv(3, a=(T(1, 2), {"horizontal", "branch"}), b=(T(3), set()))
        assert BranchInventory.parse(i.serialize()) == i

    def test_degree_conservation(self):
        with pytest.raises(InventoryError):
            inv(3, a=(T(1, 1), ()))

    def test_unique_labels(self):
        with pytest.raises(InventoryError):
            BranchInventory(1, (BranchComponent("a", T(1)), BranchComponent("a", T(1))))
