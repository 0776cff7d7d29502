import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omlprob import lattice
from omlprob.bimaps import (
    CORNERS_OF_FAMILY,
    FAMILY_OF_CORNERS,
    BiMap,
    BiMapError,
    InvalidCorners,
    ParamOutOfRange,
    UnsupportedFamily,
    bimap_from_json,
    build_table3_family,
    check_d_map,
    check_g_map,
    check_j_map,
    check_map,
    check_s_map,
    classify_family,
    complement_map,
    corners_of,
    derive_d_from_s,
    derive_j_from_s,
    derive_pure_projection_from_s,
    dmap_system,
    gmap_system,
    induced_state_from_gamma9,
    induced_state_from_smap,
    is_pure_projection,
    jmap_system,
    pair_var,
    semantic_check_on_compatible,
    smap_system,
    verify_gamma9_identities,
    verify_lemma_komp,
)
from omlprob.linear import enumerate_vertices, satisfies
from omlprob.states import validate_state

F = Fraction
H = F(1, 2)


@pytest.fixture(scope="module")
def g9(mo2):
    return build_table3_family(F(1, 3), F(2, 3), 0, 1, l=mo2)


@pytest.fixture(scope="module")
def smap_vertices_mo2(mo2):
    return [BiMap.from_vector(mo2, v)
            for v in enumerate_vertices(smap_system(mo2), 100)]


def boolean_smap(l, weights):
    """[DERIVED] p(a, b) = m(a ^ b) is an s-map on a Boolean algebra,
    for m the state weighting each atom."""
    def m(x):
        return sum(w for atom, w in weights.items() if l.leq(atom, x))

    return BiMap.from_function(l, lambda a, b: m(l.meet(a, b)))


# -- the parametric family: exact table reproduction ---------------------


def test_table3_exact_values(g9):
    # [PAPER] the worked 6x6 table for (r1, r2, u1, u2) = (1/3, 2/3, 0, 1)
    expected_rows = {
        "0": {x: F(0) for x in ("0", "a", "a'", "b", "b'", "1")},
        "a": {"0": H, "a": H, "a'": H, "b": F(1, 3), "b'": F(2, 3), "1": H},
        "a'": {"0": H, "a": H, "a'": H, "b": F(2, 3), "b'": F(1, 3), "1": H},
        "b": {"0": H, "a": F(0), "a'": F(1), "b": H, "b'": H, "1": H},
        "b'": {"0": H, "a": F(1), "a'": F(0), "b": H, "b'": H, "1": H},
        "1": {x: F(1) for x in ("0", "a", "a'", "b", "b'", "1")},
    }
    for a, row in expected_rows.items():
        for b, v in row.items():
            assert g9(a, b) == v, (a, b)


def test_table3_is_g_map_only(g9):
    assert check_g_map(g9).ok
    assert not check_s_map(g9).ok
    assert not check_j_map(g9).ok
    assert not check_d_map(g9).ok


def test_table3_family_and_purity(g9):
    tag = classify_family(g9)
    assert tag.gamma == 9
    assert tag.corners == (0, 0, 1, 1)
    pure, witness = is_pure_projection(g9)
    assert not pure
    assert witness == ("a", "b")


def test_degenerate_parameters_give_pure_projection():
    G = build_table3_family(F(1, 4), F(1, 4), F(3, 5), F(3, 5))
    pure, witness = is_pure_projection(G)
    assert pure and witness is None
    assert classify_family(G).gamma == 9


def test_param_out_of_range():
    with pytest.raises(ParamOutOfRange):
        build_table3_family(F(3, 2), 0, 0, 0)


def test_wrong_lattice_rejected(b3):
    with pytest.raises(BiMapError):
        build_table3_family(0, 0, 0, 0, l=b3)


def test_table4_induced_states(g9, mo2):
    # [PAPER] m_b(a) = r1 = 1/3 and m_0(a) = alpha = 1/2
    m_b = induced_state_from_gamma9(g9, "b")
    m_0 = induced_state_from_gamma9(g9, mo2.bot)
    validate_state(mo2, m_b)
    validate_state(mo2, m_0)
    assert m_b("a") == F(1, 3)
    assert m_b("a'") == F(2, 3)
    assert m_0("a") == H
    assert m_0("b") == H


def test_table3_identities(g9):
    assert verify_lemma_komp(g9).ok
    assert verify_gamma9_identities(g9).ok
    assert semantic_check_on_compatible(g9).ok


# -- Gamma families ------------------------------------------------------


def test_corner_table_is_complete_and_injective():
    assert len(FAMILY_OF_CORNERS) == 16
    assert sorted(FAMILY_OF_CORNERS.values()) == list(range(1, 17))
    assert set(FAMILY_OF_CORNERS) == set(
        itertools.product((0, 1), repeat=4))
    for g, corners in CORNERS_OF_FAMILY.items():
        assert FAMILY_OF_CORNERS[corners] == g


def test_tabled_corner_assignments():
    # [PAPER] the twelve published corner patterns
    assert FAMILY_OF_CORNERS[(0, 0, 0, 0)] == 1
    assert FAMILY_OF_CORNERS[(0, 0, 0, 1)] == 2   # s-maps
    assert FAMILY_OF_CORNERS[(0, 1, 1, 1)] == 3   # j-maps
    assert FAMILY_OF_CORNERS[(0, 1, 1, 0)] == 4   # d-maps
    assert FAMILY_OF_CORNERS[(1, 1, 1, 0)] == 5
    assert FAMILY_OF_CORNERS[(1, 0, 0, 0)] == 6
    assert FAMILY_OF_CORNERS[(1, 0, 0, 1)] == 7
    assert FAMILY_OF_CORNERS[(1, 1, 1, 1)] == 8
    assert FAMILY_OF_CORNERS[(0, 0, 1, 1)] == 9
    assert FAMILY_OF_CORNERS[(0, 1, 0, 1)] == 10
    assert FAMILY_OF_CORNERS[(1, 1, 0, 0)] == 11
    assert FAMILY_OF_CORNERS[(1, 0, 1, 0)] == 12


def test_leftover_families_lexicographic():
    assert FAMILY_OF_CORNERS[(0, 0, 1, 0)] == 13
    assert FAMILY_OF_CORNERS[(0, 1, 0, 0)] == 14
    assert FAMILY_OF_CORNERS[(1, 0, 1, 1)] == 15
    assert FAMILY_OF_CORNERS[(1, 1, 0, 1)] == 16


def test_constant_maps_classify(mo2):
    zero = BiMap.from_function(mo2, lambda a, b: 0)
    one = BiMap.from_function(mo2, lambda a, b: 1)
    assert check_g_map(zero).ok and classify_family(zero).gamma == 1
    assert check_g_map(one).ok and classify_family(one).gamma == 8


def test_derived_maps_classify(smap_vertices_mo2):
    P = smap_vertices_mo2[0]
    assert classify_family(P).gamma == 2
    assert classify_family(derive_j_from_s(P)).gamma == 3
    assert classify_family(derive_d_from_s(P)).gamma == 4
    assert classify_family(derive_pure_projection_from_s(P)).gamma == 9


def test_classify_rejects_fractional_corners(mo2):
    G = BiMap.from_function(mo2, lambda a, b: F(1, 2))
    with pytest.raises(InvalidCorners):
        classify_family(G)


def test_complement_swaps_families(g9, smap_vertices_mo2):
    # Gamma9 <-> Gamma11, Gamma2 <-> Gamma5, Gamma3 <-> Gamma6
    assert classify_family(complement_map(g9)).gamma == 11
    P = smap_vertices_mo2[0]
    assert classify_family(complement_map(P)).gamma == 5
    assert classify_family(complement_map(derive_j_from_s(P))).gamma == 6
    assert classify_family(complement_map(derive_d_from_s(P))).gamma == 7
    # complement of any valid G-map is again a valid G-map
    assert check_g_map(complement_map(g9)).ok


# -- checkers: positive and mutation oracles -----------------------------


def test_boolean_smap_valid(b2):
    P = boolean_smap(b2, {"a": F(1, 3), "b": F(2, 3)})
    assert check_s_map(P).ok
    assert check_map("s", P).ok
    # [PAPER] property 1 on a Boolean algebra: p(a,b) = p(a^b, a^b)
    for a, b in b2.pairs():
        assert P(a, b) == P(b2.meet(a, b), b2.meet(a, b))


def test_smap_mutation_caught(b2):
    P = boolean_smap(b2, {"a": F(1, 3), "b": F(2, 3)})
    bad = P.replace("a", "b", P("a", "b") + F(1, 100))
    report = check_s_map(bad)
    assert not report.ok
    assert report.first_violation is not None


def test_derived_j_and_d_valid(smap_vertices_mo2):
    for P in smap_vertices_mo2:
        assert check_j_map(derive_j_from_s(P)).ok
        assert check_d_map(derive_d_from_s(P)).ok
        assert check_g_map(derive_pure_projection_from_s(P)).ok


def test_induced_state_valid(smap_vertices_mo2, mo2):
    for P in smap_vertices_mo2:
        m = induced_state_from_smap(P)
        validate_state(mo2, m)
        for a in mo2.elements:
            # [PAPER] m_p(a) = p(a,a) = p(1,a) = p(a,1)
            assert m(a) == P(a, a) == P(mo2.top, a) == P(a, mo2.top)


def test_check_map_unknown_system(g9):
    with pytest.raises(BiMapError):
        check_map("x", g9)


def test_j_map_violation_details(mo2):
    Q = BiMap.from_function(mo2, lambda a, b: 1)  # fails (j1) at (0,0)
    report = check_j_map(Q)
    assert not report.ok
    assert report.first_violation.axiom == "j1"
    assert report.first_violation.elements == (mo2.bot, mo2.bot)


# -- semantics on compatible pairs ---------------------------------------


def test_semantics_smap_is_meet(b2):
    P = boolean_smap(b2, {"a": F(1, 4), "b": F(3, 4)})
    assert semantic_check_on_compatible(P).ok


def test_semantics_unsupported_family(mo2):
    # corners (0,0,1,0) = Gamma13; the check refuses families 13-16
    G = BiMap.from_function(
        mo2, lambda a, b: 1 if (a, b) == (mo2.top, mo2.bot) else 0)
    assert classify_family(G).gamma == 13
    with pytest.raises(UnsupportedFamily):
        semantic_check_on_compatible(G)


def test_lemma_komp_all_suite_gmaps(b2, g9, smap_vertices_mo2):
    maps = [g9, boolean_smap(b2, {"a": F(1, 5), "b": F(4, 5)})]
    maps += [derive_j_from_s(P) for P in smap_vertices_mo2[:2]]
    maps += [derive_d_from_s(P) for P in smap_vertices_mo2[:2]]
    for G in maps:
        assert verify_lemma_komp(G).ok


# -- linear systems agree with the checkers ------------------------------


def test_table3_satisfies_gmap_system(g9, mo2):
    sys = gmap_system(mo2, (0, 0, 1, 1))
    assert satisfies(sys, g9.as_vector())


def test_smap_vertices_satisfy_checker(smap_vertices_mo2):
    for P in smap_vertices_mo2:
        assert check_s_map(P).ok


def test_jmap_system_membership(mo2, smap_vertices_mo2):
    sys = jmap_system(mo2)
    Q = derive_j_from_s(smap_vertices_mo2[0])
    assert satisfies(sys, Q.as_vector())


def test_dmap_system_membership(mo2, smap_vertices_mo2):
    sys = dmap_system(mo2)
    D = derive_d_from_s(smap_vertices_mo2[0])
    assert satisfies(sys, D.as_vector())


def test_gmap_system_rejects_bad_corners(mo2):
    with pytest.raises(InvalidCorners):
        gmap_system(mo2, (0, 0, 2, 1))


# -- serialization -------------------------------------------------------


def test_bimap_json_round_trip(g9, mo2):
    again = bimap_from_json(g9.to_json("mo2.json"), mo2)
    assert again == g9


def test_bimap_rejects_partial(mo2):
    with pytest.raises(BiMapError):
        bimap_from_json('{"lattice": "x", "values": {"0|0": "0"}}', mo2)


def test_bimap_rejects_out_of_range(mo2):
    with pytest.raises(BiMapError):
        BiMap.from_function(mo2, lambda a, b: F(3, 2))


# -- parametric family properties ----------------------------------------


rat01 = st.integers(0, 12).map(lambda n: F(n, 12))


@settings(max_examples=40, deadline=None)
@given(rat01, rat01, rat01, rat01)
def test_table3_always_valid_gamma9(r1, r2, u1, u2):
    G = build_table3_family(r1, r2, u1, u2)
    assert check_g_map(G).ok
    assert classify_family(G).gamma == 9
    assert verify_gamma9_identities(G).ok
    assert corners_of(G) == (0, 0, 1, 1)
    # purity iff both parameter pairs coincide
    assert is_pure_projection(G)[0] == (r1 == r2 and u1 == u2)


@settings(max_examples=20, deadline=None)
@given(rat01, rat01, rat01, rat01)
def test_table3_complement_is_gamma11(r1, r2, u1, u2):
    G = complement_map(build_table3_family(r1, r2, u1, u2))
    assert check_g_map(G).ok
    assert classify_family(G).gamma == 11


def test_pair_var_format():
    assert pair_var("a", "b'") == "a|b'"
