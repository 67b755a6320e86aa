import numpy as np
import pytest

from sttlab.exactfield import Matrix
from sttlab.grouprep import (
    conjugate_rep,
    direct_sum,
    dual_rep,
    ext_module,
    hom_dim,
    hom_space,
    induce,
    is_isomorphic,
    regular_rep,
    rep_make,
    restrict,
    sub_rep,
    quotient_rep,
    spin,
    trivial_rep,
    zero_rep,
)
from sttlab.permgroup import group_close, parse_cycles, transversal
from sttlab.taucalc import ext1


def test_rep_make_validates(a4, f4):
    k = rep_make(a4, f4, [Matrix.identity(f4, 1)] * 2)
    assert k.dim == 1
    with pytest.raises(ValueError):
        rep_make(a4, f4, [Matrix.zeros(f4, 2, 2), Matrix.identity(f4, 2)])
    # matrices that are invertible but break the group relations
    bad = Matrix.from_rows(f4, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        rep_make(a4, f4, [bad, Matrix.identity(f4, 2)])


def test_rep_homomorphism_all_pairs(a4, f4):
    reg = regular_rep(a4, f4)
    table = a4.mult_table()
    for i in (0, 1, 5, 11):
        for j in (0, 2, 7):
            assert (reg.act_idx(i) @ reg.act_idx(j)) == reg.act_idx(int(table[i, j]))


def test_act_identities(a4, f4):
    reg = regular_rep(a4, f4)
    assert reg.act(0) == Matrix.identity(f4, 12)
    g = a4.elements[3]
    assert (reg.act(g) @ reg.act(g.inverse())) == Matrix.identity(f4, 12)
    # left translation permutation structure
    arr = reg.act(g).a
    assert (arr.sum(axis=0) == 1).all() and (arr.sum(axis=1) == 1).all()


def test_hom_dims_trivial_cases(a4, f4, a4_tables, cast):
    k = cast.k
    assert hom_dim(k, k) == 1
    assert hom_dim(cast.S, cast.T) == 0  # Schur for distinct simples
    reg = regular_rep(a4, f4)
    assert hom_dim(reg, reg) == 12


def test_zero_module(a4, f4):
    z = zero_rep(a4, f4)
    assert z.dim == 0
    assert hom_dim(z, z) == 0
    assert direct_sum([], group=a4, field=f4).dim == 0


def test_direct_sum_dims(cast):
    s = direct_sum([cast.k, cast.k])
    assert s.dim == 2
    assert all(m == Matrix.identity(s.field, 2) for m in s.gen_mats)
    both = direct_sum([cast.kS, cast.T])
    assert both.dim == cast.kS.dim + cast.T.dim


def test_is_isomorphic_basics(cast, f4):
    r = is_isomorphic(cast.k, cast.k)
    assert r and r.witness == Matrix.identity(f4, 1)
    assert not is_isomorphic(cast.k, cast.kS)
    assert not is_isomorphic(cast.S, cast.T)
    # symmetric with witnesses both ways
    fwd = is_isomorphic(cast.kS, cast.kS)
    assert fwd and fwd.witness is not None


def test_is_isomorphic_respects_reordering(cast):
    a = direct_sum([cast.k, cast.kS])
    b = direct_sum([cast.kS, cast.k])
    r = is_isomorphic(a, b)
    assert r
    W = r.witness
    for Am, Bm in zip(a.gen_mats, b.gen_mats):
        assert (W @ Am) == (Bm @ W)


def test_restrict(a4, s4, f4, s4_tables):
    two = s4_tables.simples.simples[
        [S.dim for S in s4_tables.simples.simples].index(2)
    ]
    res = restrict(two, a4)
    assert res.dim == 2
    assert res.group is a4
    k_s4 = trivial_rep(s4, f4)
    assert is_isomorphic(restrict(k_s4, a4), trivial_rep(a4, f4))


def test_induce_dims_and_regular(a4, s4, f4):
    T = transversal(s4, a4)
    k = trivial_rep(a4, f4)
    assert induce(k, s4, T).dim == 2
    reg_a4 = regular_rep(a4, f4)
    ind = induce(reg_a4, s4, T)
    assert ind.dim == 24
    assert is_isomorphic(ind, regular_rep(s4, f4))


def test_induce_self_is_identity(a4, f4):
    T = transversal(a4, a4)
    k = trivial_rep(a4, f4)
    ind = induce(k, a4, T)
    assert ind.dim == 1 and is_isomorphic(ind, k)


def test_conjugate_rep(a4, s4, f4, cast):
    odd = next(g for g in s4.elements if g not in a4.index)
    assert is_isomorphic(conjugate_rep(cast.S, odd), cast.T)
    assert is_isomorphic(conjugate_rep(cast.T, odd), cast.S)
    # inner conjugation is trivial up to isomorphism
    inner = a4.elements[5]
    assert is_isomorphic(conjugate_rep(cast.kS, inner), cast.kS)
    # conjugating by a coset-mate gives the same class
    odd2 = odd * a4.elements[3]
    assert is_isomorphic(conjugate_rep(cast.kS, odd2), conjugate_rep(cast.kS, odd))
    with pytest.raises(ValueError):
        c2 = group_close(4, [parse_cycles("(0 1)", 4)])
        conjugate_rep(trivial_rep(c2, f4), parse_cycles("(1 2)", 4))


def test_conjugation_swaps_stacked_modules(a4, s4, cast):
    odd = next(g for g in s4.elements if g not in a4.index)
    assert is_isomorphic(conjugate_rep(cast.kS, odd), cast.kT)


def test_dual_rep(cast, a4, f4):
    assert is_isomorphic(dual_rep(cast.k), cast.k)
    dd = dual_rep(dual_rep(cast.kS))
    assert is_isomorphic(dd, cast.kS)
    assert dual_rep(cast.kS).dim == cast.kS.dim
    # hom symmetry under duality
    assert hom_dim(cast.kS, cast.kT) == hom_dim(dual_rep(cast.kT), dual_rep(cast.kS))


def test_transversal_independence(a4, s4, f4, cast):
    T1 = transversal(s4, a4)
    odd = T1.reps[1]
    # another transversal: identity replaced last, odd rep shifted by A4
    from sttlab.permgroup import Transversal

    alt_reps = [T1.reps[0], odd * a4.elements[7]]
    coset_index = dict(T1.coset_index)
    T2 = Transversal(big=s4, small=a4, reps=alt_reps, normal=T1.normal,
                     coset_index=coset_index)
    i1 = induce(cast.kS, s4, T1)
    i2 = induce(cast.kS, s4, T2)
    assert is_isomorphic(i1, i2)


def test_spin_and_subquotient(a4, f4):
    reg = regular_rep(a4, f4)
    ones = np.ones((1, 12), dtype=f4.dtype)
    W = spin([m.a for m in reg.gen_mats], ones, f4)
    assert W.shape[0] == 1  # the all-ones line is invariant
    sub = sub_rep(reg, Matrix(f4, W))
    assert sub.dim == 1 and is_isomorphic(sub, trivial_rep(a4, f4))
    quo = quotient_rep(reg, Matrix(f4, W))
    assert quo.dim == 11
    with pytest.raises(ValueError):
        bad = np.zeros((1, 12), dtype=f4.dtype)
        bad[0, 0] = 1
        sub_rep(reg, Matrix(f4, bad))  # a coordinate line is not invariant


def test_ext_module_contract(a4_tables, cast, f4):
    kS = cast.kS
    assert kS.dim == 2
    from sttlab.meataxe import radical_top

    rt = radical_top(kS, a4_tables.simples)
    assert rt.top.dim == 1 and rt.radical.dim == 1
    assert is_isomorphic(rt.top, cast.k)
    assert is_isomorphic(rt.radical, cast.S)


def test_ext_module_rejects_zero_class(a4_tables, cast):
    res = ext1(cast.k, cast.S, a4_tables)
    c = res.cocycles[0]
    from sttlab.grouprep import Cocycle

    zero = Matrix.zeros(c.matrix.field, c.matrix.rows, c.matrix.cols)
    bad = Cocycle(source=c.source, target=c.target, cover=c.cover,
                  omega_rows=c.omega_rows, matrix=zero,
                  restriction_rows=c.restriction_rows)
    with pytest.raises(ValueError):
        ext_module(cast.k, cast.S, bad)


def test_ext_module_uniqueness_for_one_dimensional_ext(a4_tables, cast):
    """Any two nonzero cocycles in a 1-dimensional Ext give isomorphic
    extensions."""
    res = ext1(cast.S, cast.T, a4_tables)
    assert res.dimension == 1
    c = res.cocycles[0]
    from sttlab.grouprep import Cocycle

    w = c.matrix.field.scalar((0, 1))
    scaled = Cocycle(source=c.source, target=c.target, cover=c.cover,
                     omega_rows=c.omega_rows, matrix=c.matrix.scale(w),
                     restriction_rows=c.restriction_rows)
    E1 = ext_module(cast.S, cast.T, c)
    E2 = ext_module(cast.S, cast.T, scaled)
    assert is_isomorphic(E1, E2)


def test_ind_of_conjugate_isomorphic(a4, s4, cast):
    T = transversal(s4, a4)
    odd = T.reps[1]
    ind1 = induce(cast.kS, s4, T)
    ind2 = induce(conjugate_rep(cast.kS, odd), s4, T)
    assert is_isomorphic(ind1, ind2)


def test_hom_space_intertwines(cast):
    H = hom_space(cast.kS, cast.kT)
    for X in H.basis:
        for Am, Bm in zip(cast.kS.gen_mats, cast.kT.gen_mats):
            assert (X @ Am) == (Bm @ X)
