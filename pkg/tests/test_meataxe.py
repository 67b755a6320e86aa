from collections import Counter

import numpy as np
import pytest

from sttlab.exactfield import Matrix, _nullspace, _rref
from sttlab.grouprep import (
    direct_sum,
    hom_space,
    regular_rep,
    zero_rep,
    _RowSpace,
)
from sttlab.meataxe import (
    add_compare,
    algebra_radical,
    chop,
    composition_factors,
    decompose,
    is_irreducible,
    lift_idempotent,
    radical_top,
    simples_of,
)
from sttlab.permgroup import group_close


def test_is_irreducible_dim1(cast):
    assert is_irreducible(cast.k)
    assert is_irreducible(cast.S)


def test_is_irreducible_regular_reducible(a4, f4):
    reg = regular_rep(a4, f4)
    res = is_irreducible(reg)
    assert not res.irreducible
    W = res.submodule
    assert 0 < W.rows < 12
    from sttlab.grouprep import is_invariant_subspace

    assert is_invariant_subspace(reg, W)


def test_two_dimensional_s4_simple_irreducible(s4_tables):
    two = s4_tables.simples.simples[
        [S.dim for S in s4_tables.simples.simples].index(2)
    ]
    assert is_irreducible(two)


def test_simples_of_groups(a4, s4, f4, a4_tables, s4_tables):
    assert sorted(S.dim for S in a4_tables.simples.simples) == [1, 1, 1]
    assert sorted(S.dim for S in s4_tables.simples.simples) == [1, 2]
    triv = group_close(4, [])
    table = simples_of(triv, f4)
    assert table.count == 1 and table.simples[0].dim == 1


def test_simples_pairwise_distinct(a4_tables):
    from sttlab.grouprep import iso_indecomposable

    simples = a4_tables.simples.simples
    for i, S in enumerate(simples):
        for T in simples[:i]:
            assert not (S.dim == T.dim and iso_indecomposable(S, T))


def test_chop_counts(a4, f4, a4_tables, cast):
    assert chop(cast.k, a4_tables.simples) == Counter({cast.k_label: 1})
    reg = regular_rep(a4, f4)
    assert chop(reg, a4_tables.simples) == Counter(
        {cast.k_label: 4, cast.S_label: 4, cast.T_label: 4}
    )
    assert chop(cast.ST, a4_tables.simples) == Counter(
        {cast.S_label: 1, cast.T_label: 1}
    )


def test_chop_additive(a4_tables, cast):
    both = direct_sum([cast.kS, cast.ST])
    assert chop(both, a4_tables.simples) == (
        chop(cast.kS, a4_tables.simples) + chop(cast.ST, a4_tables.simples)
    )


def test_radical_top(a4_tables, cast, a4, f4):
    from sttlab.grouprep import is_isomorphic

    rt = radical_top(cast.S, a4_tables.simples)
    assert rt.radical.dim == 0 and rt.top.dim == 1
    rt2 = radical_top(cast.kS, a4_tables.simples)
    assert is_isomorphic(rt2.top, cast.k) and is_isomorphic(rt2.radical, cast.S)
    # top of the regular module is the sum of all simples with multiplicity
    # equal to their dimensions (split semisimple quotient)
    reg = regular_rep(a4, f4)
    rt3 = radical_top(reg, a4_tables.simples)
    assert rt3.top.dim == 3
    assert chop(rt3.top, a4_tables.simples) == Counter(
        {cast.k_label: 1, cast.S_label: 1, cast.T_label: 1}
    )


def test_decompose_multiplicity(cast, a4, f4):
    dec = decompose(direct_sum([cast.k, cast.k]))
    assert len(dec.summands) == 1
    assert dec.summands[0][1] == 2
    assert dec.summands[0][0].dim == 1


def test_decompose_regular_a4(a4, f4):
    reg = regular_rep(a4, f4)
    dec = decompose(reg)
    assert sorted((r.dim, m) for r, m in dec.summands) == [(4, 1), (4, 1), (4, 1)]


def test_decompose_witness_blockdiagonalizes(a4, f4):
    reg = regular_rep(a4, f4)
    dec = decompose(reg)
    C = dec.witness
    Ci = C.inverse()
    for gi in range(len(a4.generators)):
        got = C @ reg.gen_mats[gi] @ Ci
        expected = np.zeros((12, 12), dtype=f4.dtype)
        off = 0
        for rows, ci in dec.pieces:
            blk = dec.summands[ci][0].gen_mats[gi].a
            expected[off:off + blk.shape[0], off:off + blk.shape[0]] = blk
            off += blk.shape[0]
        assert np.array_equal(got.a, expected)


def test_decompose_zero(a4, f4):
    dec = decompose(zero_rep(a4, f4))
    assert dec.summands == []


def test_decompose_mixed_sum(cast):
    dec = decompose(direct_sum([cast.k, cast.kS, cast.kS, cast.ST]))
    by_dim = sorted((r.dim, m) for r, m in dec.summands)
    assert by_dim == [(1, 1), (2, 1), (2, 2)]


def test_summands_have_local_endomorphism_algebras(cast):
    dec = decompose(direct_sum([cast.kS, cast.ST]))
    for rep, _ in dec.summands:
        end = hom_space(rep, rep)
        J = algebra_radical(end.basis)
        assert end.dim - len(J) == 1


# ---------------------------------------------------------------------------
# algebra radical: independent annihilator-of-flag oracle

def _radical_oracle(basis):
    """rad(A) = elements mapping each composition-flag layer of the natural
    module into the previous layer; independent of the trace-form route."""
    from sttlab.exactfield import _matmul
    from sttlab.meataxe import _is_irreducible_raw

    f = basis[0].field
    n = basis[0].rows
    mats = [b.a for b in basis]

    def flag(mats_, dim):
        if dim == 0:
            return []
        ok, rows = _is_irreducible_raw(f, mats_, dim, 0, 64, 12)
        if ok:
            return [np.eye(dim, dtype=f.dtype)]
        R, piv = _rref(f, rows)
        W = R[: len(piv)]
        piv_set = set(piv)
        comp = [c for c in range(dim) if c not in piv_set]
        sub_mats, quo_mats = [], []
        for A in mats_:
            img = _matmul(f, W, A.T.copy())
            sub_mats.append(img[:, piv].T.copy())
            B = A[:, comp]
            red = B[comp, :]
            if piv:
                corr = _matmul(f, W[:, comp].T.copy(), B[piv, :])
                red = f.arr_sub(red, corr)
            quo_mats.append(red.copy())
        out = []
        for Fl in flag(sub_mats, W.shape[0]):
            out.append(_rref(f, _matmul(f, Fl, W))[0][: Fl.shape[0]])
        for Fl in flag(quo_mats, dim - W.shape[0]):
            lift = np.zeros((Fl.shape[0], dim), dtype=f.dtype)
            lift[:, comp] = Fl
            stacked = np.concatenate([W, lift], axis=0)
            R2, piv2 = _rref(f, stacked)
            out.append(R2[: len(piv2)])
        return out

    flags = flag(mats, n)
    conds = []
    prev = np.zeros((0, n), dtype=f.dtype)
    for Fl in flags:
        space = _RowSpace(f, n)
        for i in range(prev.shape[0]):
            space.add(prev[i])
        block = []
        for b in basis:
            img = _matmul(f, Fl, b.a.T.copy())
            res = np.stack([space.reduce(img[i]) for i in range(img.shape[0])])
            block.append(res.reshape(-1))
        conds.append(np.stack(block, axis=1))
        prev = Fl
    system = np.concatenate(conds, axis=0)
    null = _nullspace(f, system)
    out = []
    for k in range(null.shape[1]):
        mat = np.zeros((n, n), dtype=f.dtype)
        for s in range(len(basis)):
            c = int(null[s, k])
            if c:
                mat = f.arr_add(mat, f.MUL[c, basis[s].a])
        out.append(mat)
    return out


def _same_span(f, mats1, mats2, width):
    s1 = _RowSpace(f, width)
    for m in mats1:
        s1.add(np.asarray(m.a if isinstance(m, Matrix) else m).reshape(-1))
    s2 = _RowSpace(f, width)
    for m in mats2:
        s2.add(np.asarray(m.a if isinstance(m, Matrix) else m).reshape(-1))
    if s1.dim != s2.dim:
        return False
    return all(s1.contains(r) for r in s2.rows)


def test_algebra_radical_semisimple(f4):
    basis = []
    for i in range(2):
        for j in range(2):
            m = np.zeros((2, 2), dtype=f4.dtype)
            m[i, j] = 1
            basis.append(Matrix(f4, m))
    assert algebra_radical(basis) == []


def test_algebra_radical_upper_triangular(f4):
    E11 = Matrix.from_rows(f4, [[1, 0], [0, 0]])
    E22 = Matrix.from_rows(f4, [[0, 0], [0, 1]])
    E12 = Matrix.from_rows(f4, [[0, 1], [0, 0]])
    J = algebra_radical([E11, E22, E12])
    assert len(J) == 1
    assert J[0].a[0, 0] == 0 and J[0].a[1, 1] == 0 and J[0].a[0, 1] != 0


def test_algebra_radical_rejects_bad_basis(f4):
    E12 = Matrix.from_rows(f4, [[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        algebra_radical([E12])  # not unital
    # A = E12 + E23 has A^2 = E13 outside span{I, A}
    A = Matrix.from_rows(f4, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    with pytest.raises(ValueError):
        algebra_radical([Matrix.identity(f4, 3), A])


def test_algebra_radical_matches_flag_oracle(a4, f4, cast):
    reg = regular_rep(a4, f4)
    for M in (reg, direct_sum([cast.kS, cast.ST]), cast.M):
        basis = hom_space(M, M).basis
        J1 = algebra_radical(basis)
        J2 = _radical_oracle(basis)
        assert _same_span(f4, J1, J2, M.dim * M.dim)


def test_algebra_radical_is_nilpotent_ideal(a4, f4):
    from sttlab.exactfield import _matmul

    reg = regular_rep(a4, f4)
    basis = hom_space(reg, reg).basis
    J = algebra_radical(basis)
    span = _RowSpace(f4, 144)
    for m in J:
        span.add(m.a.reshape(-1))
    # two-sided ideal inside the algebra
    for b in basis:
        for j in J:
            assert span.contains(_matmul(f4, b.a, j.a).reshape(-1))
            assert span.contains(_matmul(f4, j.a, b.a).reshape(-1))
    # nilpotency: multiply everything together dim-many times
    power = [j.a for j in J]
    for _ in range(len(basis)):
        power = [_matmul(f4, p, j.a) for p in power[:4] for j in J[:4]]
    assert all(not p.any() for p in power)


def test_lift_idempotent(f4):
    E11 = Matrix.from_rows(f4, [[1, 0], [0, 0]])
    E22 = Matrix.from_rows(f4, [[0, 0], [0, 1]])
    E12 = Matrix.from_rows(f4, [[0, 1], [0, 0]])
    basis = [E11, E22, E12]
    J = algebra_radical(basis)
    # already idempotent: unchanged
    assert lift_idempotent(E11, basis, J) == E11
    eye = Matrix.identity(f4, 2)
    assert lift_idempotent(eye, basis, J) == eye
    # idempotent only modulo the radical: I + E12 squares to I
    e0 = Matrix.from_rows(f4, [[1, 1], [0, 1]])
    e = lift_idempotent(e0, basis, J)
    assert (e @ e) == e
    assert e == eye
    diff = e - e0
    span = _RowSpace(f4, 4)
    for m in J:
        span.add(m.a.reshape(-1))
    assert span.contains(diff.a.reshape(-1))
    # a nilpotent perturbation of zero lifts to the zero idempotent
    assert lift_idempotent(E12, basis, J) == Matrix.zeros(f4, 2, 2)
    # genuinely non-idempotent modulo the radical: w * E11 over GF(4)
    w_e11 = Matrix.from_rows(f4, [[(0, 1), (0, 0)], [(0, 0), (0, 0)]])
    with pytest.raises(ValueError):
        lift_idempotent(w_e11, basis, J)


def test_add_compare(cast):
    from sttlab.meataxe import add_compare

    M, N = cast.kS, cast.kT
    both = direct_sum([M, N])
    r = add_compare(M, both)
    assert r.leq and not r.geq
    r2 = add_compare(direct_sum([M, M]), M)
    assert r2.leq and r2.geq and r2.add_equal
    r3 = add_compare(cast.k, cast.S)
    assert not r3.leq and not r3.geq


def test_composition_factors_recursion_depth(a4, f4):
    reg = regular_rep(a4, f4)
    factors = composition_factors(reg)
    assert len(factors) == 12
    assert all(F.dim == 1 for F in factors)
