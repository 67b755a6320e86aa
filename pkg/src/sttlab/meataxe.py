"""MeatAxe-style structure theory for modules over group algebras.

Irreducibility uses the Norton criterion (spin a nullspace vector of an
irreducible factor of a random algebra element's minimal polynomial, then
the dual criterion on the transposed module).  Direct-sum decompositions
come from Fitting splits along random endomorphisms, with indecomposable
leaves certified through the Jacobson radical of their endomorphism
algebras.  Everything randomized takes a seed and a budget and raises
InconclusiveError instead of ever guessing.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exactfield import Field, Matrix, Poly, factor, minpoly, _nullspace, _rref
from .grouprep import (
    InconclusiveError,
    Rep,
    hom_space,
    iso_indecomposable,
    quotient_rep,
    regular_rep,
    spin,
    sub_rep,
    _RowSpace,
)
from .permgroup import Group

__all__ = [
    "SimpleTable",
    "Decomposition",
    "IrredResult",
    "RadicalTop",
    "AddCompare",
    "is_irreducible",
    "composition_factors",
    "chop",
    "simples_of",
    "radical_top",
    "decompose",
    "algebra_radical",
    "add_compare",
    "lift_idempotent",
]

DEFAULT_BUDGET = 64
DEFAULT_WORD_LEN = 12


# ---------------------------------------------------------------------------
# irreducibility

@dataclass
class IrredResult:
    irreducible: bool
    submodule: Optional[Matrix] = None  # proper invariant row space when reducible

    def __bool__(self) -> bool:
        return self.irreducible


def _random_algebra_element(f: Field, mats, dim: int, rng,
                            max_word: int) -> np.ndarray:
    """Random element of the enveloping algebra: a short sum of random
    generator words with random nonzero coefficients."""
    from .exactfield import _matmul

    out = np.zeros((dim, dim), dtype=f.dtype)
    terms = rng.randrange(2, 4)
    for _ in range(terms):
        word_len = rng.randrange(1, max_word + 1)
        w = np.eye(dim, dtype=f.dtype)
        for _ in range(word_len):
            w = _matmul(f, w, mats[rng.randrange(len(mats))])
        c = rng.randrange(1, f.q)
        out = f.arr_add(out, f.MUL[c, w])
    return out


def _annihilator_rows(f: Field, rows: np.ndarray) -> np.ndarray:
    """Row basis of {x : rows @ x = 0}."""
    null = _nullspace(f, rows)
    R, piv = _rref(f, null.T.copy())
    return R[: len(piv)]


def _is_irreducible_raw(f: Field, mats, dim: int, seed: int, budget: int,
                        max_word: int):
    if dim == 0:
        raise ValueError("irreducibility of the zero module is undefined")
    if dim == 1:
        return True, None
    if not mats:
        # trivial group / algebra spanned by the identity: any coordinate
        # line is invariant
        w = np.zeros((1, dim), dtype=f.dtype)
        w[0, 0] = 1
        return False, w
    matsT = [np.ascontiguousarray(m.T) for m in mats]
    rng = random.Random(seed)
    for _ in range(budget):
        theta = Matrix(f, _random_algebra_element(f, mats, dim, rng, max_word))
        mp = minpoly(theta)
        if mp.degree < 1:
            continue
        facs = []
        for poly, _mult in factor(mp, rng):
            img = poly.eval_matrix(theta)
            null = _nullspace(f, img.a)
            facs.append((poly, img, null))
        # factors whose nullity equals their degree admit the one-vector test
        facs.sort(key=lambda t: (t[2].shape[1] != t[0].degree, t[0].degree))
        for poly, img, null in facs:
            nullity = null.shape[1]
            if nullity == 0:
                continue
            W = spin(mats, null[:, 0][None, :].copy(), f)
            if W.shape[0] < dim:
                return False, W
            if nullity == poly.degree:
                nullT = _nullspace(f, img.a.T.copy())
                Wd = spin(matsT, nullT[:, 0][None, :].copy(), f)
                if Wd.shape[0] < dim:
                    return False, _annihilator_rows(f, Wd)
                return True, None
            for j in range(1, nullity):
                W = spin(mats, null[:, j][None, :].copy(), f)
                if W.shape[0] < dim:
                    return False, W
            # every kernel vector spins to the whole space but the nullity
            # is too big for Norton's converse; try another element
    raise InconclusiveError(
        "irreducibility test exhausted its randomization budget; "
        "raise the budget or the word length"
    )


def is_irreducible(M: Rep, seed: int = 0, budget: int = DEFAULT_BUDGET,
                   max_word: int = DEFAULT_WORD_LEN) -> IrredResult:
    mats = [g.a for g in M.gen_mats]
    ok, rows = _is_irreducible_raw(M.field, mats, M.dim, seed, budget, max_word)
    return IrredResult(ok, None if rows is None else Matrix(M.field, rows))


# ---------------------------------------------------------------------------
# composition series

def composition_factors(M: Rep, seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[Rep]:
    """Irreducible subquotients of M, socle side first within each split."""
    if M.dim == 0:
        return []
    res = is_irreducible(M, seed=seed, budget=budget)
    if res.irreducible:
        return [M]
    W = res.submodule
    inner = sub_rep(M, W)
    outer = quotient_rep(M, W)
    return composition_factors(inner, seed, budget) + composition_factors(outer, seed, budget)


# ---------------------------------------------------------------------------
# simple modules

@dataclass
class SimpleTable:
    group: Group
    field: Field
    simples: list[Rep]
    labels: list[str]

    @property
    def count(self) -> int:
        return len(self.simples)

    def label_of(self, S: Rep) -> str:
        for T, lab in zip(self.simples, self.labels):
            if T.dim == S.dim and iso_indecomposable(S, T):
                return lab
        raise ValueError("module does not match any simple in the table")

    def trivial_label(self) -> str:
        for S, lab in zip(self.simples, self.labels):
            if S.dim == 1 and all(m.a[0, 0] == 1 for m in S.gen_mats):
                return lab
        raise ValueError("no trivial module in the table")  # pragma: no cover


def simples_of(group: Group, field: Field, seed: int = 0,
               budget: int = DEFAULT_BUDGET) -> SimpleTable:
    """All simple modules, found as composition factors of the regular
    module and labelled in discovery order."""
    reg = regular_rep(group, field)
    found: list[Rep] = []
    for F in composition_factors(reg, seed=seed, budget=budget):
        if not any(F.dim == S.dim and iso_indecomposable(F, S) for S in found):
            found.append(F)
    labels = [f"S{i + 1}" for i in range(len(found))]
    return SimpleTable(group=group, field=field, simples=found, labels=labels)


def chop(M: Rep, table: Optional[SimpleTable] = None, seed: int = 0,
         budget: int = DEFAULT_BUDGET) -> Counter:
    """Composition factor multiset of M as a Counter over simple labels."""
    if table is None:
        table = simples_of(M.group, M.field, seed=seed, budget=budget)
    out: Counter = Counter()
    for F in composition_factors(M, seed=seed, budget=budget):
        out[table.label_of(F)] += 1
    return out


# ---------------------------------------------------------------------------
# radical and top

@dataclass
class RadicalTop:
    radical_rows: Matrix  # row basis of rad M inside M
    radical: Rep
    top: Rep


def radical_top(M: Rep, table: SimpleTable) -> RadicalTop:
    """rad M as the joint kernel of all homs onto simples; top = M / rad M."""
    f = M.field
    if M.dim == 0:
        empty = Matrix.zeros(f, 0, 0)
        return RadicalTop(empty, M, M)
    rows = []
    for S in table.simples:
        for phi in hom_space(M, S).basis:
            rows.append(phi.a)
    if rows:
        stacked = np.concatenate(rows, axis=0)
    else:  # no homs onto simples can only happen for the zero module
        stacked = np.zeros((0, M.dim), dtype=f.dtype)
    K = _nullspace(f, stacked)
    R, piv = _rref(f, K.T.copy())
    rad_rows = Matrix(f, R[: len(piv)])
    radical = sub_rep(M, rad_rows) if rad_rows.rows else sub_rep(M, Matrix.zeros(f, 0, M.dim))
    top = quotient_rep(M, rad_rows)
    return RadicalTop(rad_rows, radical, top)


# ---------------------------------------------------------------------------
# Krull-Schmidt decomposition

@dataclass
class Decomposition:
    module: Rep
    summands: list[tuple[Rep, int]]          # distinct class rep, multiplicity
    pieces: list[tuple[Matrix, int]]          # (row basis in M coords, class idx)
    witness: Matrix                           # conjugates M into the block form

    @property
    def class_count(self) -> int:
        return len(self.summands)

    def class_reps(self) -> list[Rep]:
        return [rep for rep, _ in self.summands]


def _coordinate_slice(M: Rep, lo: int, hi: int) -> Rep:
    f = M.field
    mats = [Matrix(f, g.a[lo:hi, lo:hi].copy()) for g in M.gen_mats]
    return Rep(M.group, f, mats, dim=hi - lo, check="gens")


def _fitting_split(rep: Rep, theta: Matrix, rng):
    """Split along ker f_i^{e_i}(theta) for the distinct irreducible factors
    of theta's minimal polynomial; None when the minpoly is primary."""
    f = rep.field
    mp = minpoly(theta)
    facs = factor(mp, rng)
    if len(facs) < 2:
        return None
    parts = []
    total = 0
    for poly, mult in facs:
        power = Poly.one(f)
        for _ in range(mult):
            power = power * poly
        img = power.eval_matrix(theta)
        null = _nullspace(f, img.a)
        R, piv = _rref(f, null.T.copy())
        rows = Matrix(f, R[: len(piv)])
        parts.append(rows)
        total += rows.rows
    assert total == rep.dim, "Fitting split does not fill the module"
    return parts


def _decompose_rec(rep: Rep, rows: Matrix, seed: int, budget: int):
    """Returns a list of (rows in the original module, indecomposable Rep)."""
    f = rep.field
    if rep.dim == 0:
        return []
    if rep.block_dims and len(rep.block_dims) > 1:
        out = []
        off = 0
        for d in rep.block_dims:
            piece = _coordinate_slice(rep, off, off + d)
            sel = Matrix(f, rows.a[off:off + d].copy())
            out.extend(_decompose_rec(piece, sel, seed, budget))
            off += d
        return out
    end = hom_space(rep, rep)
    if end.dim == 1:
        return [(rows, rep)]

    def recurse(parts):
        out = []
        for part in parts:
            piece = sub_rep(rep, part)
            lifted = Matrix(f, (part @ rows).a)
            out.extend(_decompose_rec(piece, lifted, seed, budget))
        return out

    rng = random.Random(seed)
    for _ in range(min(budget, 8)):
        theta = _random_combo_matrix(f, end.basis, rng)
        parts = _fitting_split(rep, theta, rng)
        if parts is not None:
            return recurse(parts)
    # Quick random splits failed; certify locality through the radical or
    # split deterministically off the semisimple quotient.
    J = algebra_radical(end.basis)
    if end.dim - len(J) == 1:
        return [(rows, rep)]
    split = _semisimple_quotient_split(rep, end.basis, J, rng)
    if split is not None:
        return recurse(split)
    for _ in range(budget):
        theta = _random_combo_matrix(f, end.basis, rng)
        parts = _fitting_split(rep, theta, rng)
        if parts is not None:
            return recurse(parts)
    raise InconclusiveError(
        "decomposition stalled: endomorphism algebra is not local but no "
        "splitting element was found; extend the field or raise the budget"
    )


def _random_combo_matrix(f: Field, basis: list[Matrix], rng) -> Matrix:
    out = np.zeros(basis[0].shape, dtype=f.dtype)
    for B in basis:
        c = rng.randrange(f.q)
        if c:
            out = f.arr_add(out, f.MUL[c, B.a])
    return Matrix(f, out)


def _semisimple_quotient_split(rep: Rep, end_basis: list[Matrix],
                               radical: list[Matrix], rng):
    """Deterministic rescue split via Frobenius-fixed elements of End/J.

    When End/J is commutative its Frobenius-fixed subspace is spanned by the
    primitive idempotents; any fixed element independent of the identity has
    a squarefree minpoly with at least two distinct factors, so it splits
    the module through Fitting.  Returns None when no such element exists
    (division algebra quotient, or a noncommutative End/J where the random
    search already failed).
    """
    from .exactfield import _matmul, linsolve as _linsolve

    f = rep.field
    jspace = _RowSpace(f, rep.dim * rep.dim)
    for J in radical:
        jspace.add(J.a.reshape(-1))
    # coset representatives of End/J picked from the endomorphism basis
    comp: list[np.ndarray] = []
    probe = _RowSpace(f, rep.dim * rep.dim)
    for J in radical:
        probe.add(J.a.reshape(-1))
    for b in end_basis:
        if probe.add(b.a.reshape(-1)):
            comp.append(b.a)
    q_dim = len(comp)
    if q_dim <= 1:
        return None
    for i, a in enumerate(comp):
        for b in comp[:i]:
            commutator = f.arr_sub(_matmul(f, a, b), _matmul(f, b, a))
            if not jspace.contains(commutator.reshape(-1)):
                return None  # noncommutative quotient: nothing deterministic here

    reduced_comp = np.stack([jspace.reduce(c.reshape(-1)) for c in comp])
    A = Matrix(f, reduced_comp.T.copy())

    def comp_coords(mat: np.ndarray) -> np.ndarray:
        b = Matrix(f, jspace.reduce(mat.reshape(-1))[:, None].copy())
        sol = _linsolve(A, b)
        assert sol.particular is not None, "element not in the endomorphism algebra"
        return sol.particular.a[:, 0]

    # Frobenius x -> x^q on End/J in the comp coordinates (q-linear)
    F = np.zeros((q_dim, q_dim), dtype=f.dtype)
    for i, c in enumerate(comp):
        w = c.copy()
        for _ in range(f.m):
            acc = w
            for _ in range(f.p - 1):
                acc = _matmul(f, acc, w)
            w = acc
        F[:, i] = comp_coords(w)
    fixed = _nullspace(f, f.arr_sub(F, np.eye(q_dim, dtype=f.dtype)))
    if fixed.shape[1] <= 1:
        return None  # End/J is a field: indecomposable, but not split over k
    id_coords = comp_coords(np.eye(rep.dim, dtype=f.dtype))
    probe2 = _RowSpace(f, q_dim)
    probe2.add(id_coords)
    z = None
    for j in range(fixed.shape[1]):
        if probe2.add(fixed[:, j]):
            z = fixed[:, j]
            break
    assert z is not None, "fixed space cannot lie inside the identity line"
    zmat = np.zeros((rep.dim, rep.dim), dtype=f.dtype)
    for i, c in enumerate(comp):
        if z[i]:
            zmat = f.arr_add(zmat, f.MUL[z[i], c])
    return _fitting_split(rep, Matrix(f, zmat), random.Random(0))


def decompose(M: Rep, seed: int = 0, budget: int = DEFAULT_BUDGET) -> Decomposition:
    """Full Krull-Schmidt decomposition with a verified change of basis."""
    f = M.field
    leaves = _decompose_rec(M, Matrix.identity(f, M.dim), seed, budget)
    class_reps: list[Rep] = []
    grouped: list[list[tuple[Matrix, Rep]]] = []
    for rows, leaf in leaves:
        placed = False
        for ci, rep0 in enumerate(class_reps):
            if rep0.dim == leaf.dim:
                iso = iso_indecomposable(leaf, rep0)
                if iso:
                    X = iso.witness
                    adj = Matrix(f, (X.inverse().T @ Matrix(f, rows.a)).a)
                    grouped[ci].append((adj, rep0))
                    placed = True
                    break
        if not placed:
            class_reps.append(leaf)
            grouped.append([(rows, leaf)])
    summands = [(rep0, len(group)) for rep0, group in zip(class_reps, grouped)]
    pieces: list[tuple[Matrix, int]] = []
    stack = []
    for ci, group in enumerate(grouped):
        for rows, _rep in group:
            pieces.append((rows, ci))
            stack.append(rows.a)
    if stack:
        B = np.concatenate(stack, axis=0)
    else:
        B = np.zeros((0, 0), dtype=f.dtype)
    Bm = Matrix(f, B)
    witness = Bm.inverse().T if M.dim else Bm
    return Decomposition(module=M, summands=summands, pieces=pieces, witness=witness)


def match_decompositions(dm: Decomposition, dn: Decomposition):
    """Class-by-class matching (with isos) or None when the multisets differ."""
    if dm.module.dim != dn.module.dim:
        return None
    if len(dm.summands) != len(dn.summands):
        return None
    used = [False] * len(dn.summands)
    matching = []
    for i, (rep_m, mult_m) in enumerate(dm.summands):
        found = False
        for j, (rep_n, mult_n) in enumerate(dn.summands):
            if used[j] or mult_m != mult_n or rep_m.dim != rep_n.dim:
                continue
            iso = iso_indecomposable(rep_m, rep_n)
            if iso:
                used[j] = True
                matching.append((i, j, iso.witness))
                found = True
                break
        if not found:
            return None
    return matching


def assemble_iso_witness(M: Rep, N: Rep, dm: Decomposition, dn: Decomposition,
                         matching) -> Matrix:
    """Glue per-class isos into a global one through the two witnesses."""
    f = M.field
    D = M.dim
    # offsets of each piece inside the block coordinates
    def offsets(dec: Decomposition):
        offs = []
        pos = 0
        for rows, ci in dec.pieces:
            offs.append((pos, ci))
            pos += rows.rows
        return offs

    offs_m = offsets(dm)
    offs_n = offsets(dn)
    phi = np.zeros((D, D), dtype=f.dtype)
    taken: dict[int, list[int]] = {}
    for j, (pos_n, cj) in enumerate(offs_n):
        taken.setdefault(cj, []).append(j)
    class_map = {i: (j, X) for i, j, X in matching}
    for i_piece, (pos_m, ci) in enumerate(offs_m):
        cj, X = class_map[ci]
        j_piece = taken[cj].pop(0)
        pos_n, _ = offs_n[j_piece]
        d = dm.summands[ci][0].dim
        phi[pos_n:pos_n + d, pos_m:pos_m + d] = X.a
    W = dn.witness.inverse() @ Matrix(f, phi) @ dm.witness
    return W


# ---------------------------------------------------------------------------
# algebra radical (characteristic-p trace forms) and idempotent lifting

def algebra_radical(basis: list[Matrix]) -> list[Matrix]:
    """Basis of the Jacobson radical of the spanned matrix algebra.

    Characteristic-p layered criterion on trace-form-style invariants: with
    sigma_k the degree-k characteristic polynomial coefficient, the chain

        I_0 = A,   I_{i+1} = {x in I_i : sigma_{p^i}(x y) = 0 for all y in I_i}

    reaches the radical after the layer with p^l <= n.  On each layer the
    map x -> Frob^{-i}(sigma_{p^i}(x y)) is linear over the field, so every
    step is one semilinear nullspace computation.
    """
    if not basis:
        return []
    f = basis[0].field
    from .exactfield import _matmul, charpoly

    n = basis[0].rows
    d = len(basis)
    flat = np.stack([b.a.reshape(-1) for b in basis])
    space = _RowSpace(f, n * n)
    for i in range(d):
        space.add(flat[i])
    eye = np.eye(n, dtype=f.dtype).reshape(-1)
    if not space.contains(eye):
        raise ValueError("basis does not span a unital algebra")
    for i in range(d):
        for j in range(d):
            prod = _matmul(f, basis[i].a, basis[j].a)
            if not space.contains(prod.reshape(-1)):
                raise ValueError("basis is not multiplicatively closed")

    def sigma(z: np.ndarray, k: int) -> int:
        """Degree-k elementary symmetric function of the eigenvalues."""
        cp = charpoly(Matrix(f, z))
        coeff = cp.c[n - k] if n - k < len(cp.c) else 0
        return f.mul(f.pow(f.neg(1), k), int(coeff))

    layer = [b.a for b in basis]
    i = 0
    while f.p**i <= n:
        dd = len(layer)
        if dd == 0:
            break
        pk = f.p**i
        cond = np.zeros((dd, dd), dtype=f.dtype)
        for s in range(dd):
            for j in range(dd):
                val = sigma(_matmul(f, layer[s], layer[j]), pk)
                cond[j, s] = f.frob(val, -i)
        null = _nullspace(f, cond)
        new_layer = []
        for kcol in range(null.shape[1]):
            mat = np.zeros((n, n), dtype=f.dtype)
            for s in range(dd):
                c = int(null[s, kcol])
                if c:
                    mat = f.arr_add(mat, f.MUL[c, layer[s]])
            new_layer.append(mat)
        layer = new_layer
        i += 1
    return [Matrix(f, m) for m in layer]


def lift_idempotent(e0: Matrix, algebra_basis: list[Matrix],
                    radical_basis: list[Matrix]) -> Matrix:
    """Exact idempotent congruent to e0 mod the radical, via p-power
    stabilization e -> e^(p^s)."""
    f = e0.field
    from .exactfield import _matmul

    jspace = _RowSpace(f, e0.rows * e0.cols)
    for J in radical_basis:
        jspace.add(J.a.reshape(-1))
    delta = (e0 @ e0) - e0
    if not jspace.contains(delta.a.reshape(-1)):
        raise ValueError("e0 is not idempotent modulo the radical")
    e = e0
    bound = 1
    steps = 0
    while f.p**steps <= max(len(algebra_basis), e0.rows) + 1:
        steps += 1
    for _ in range(steps + 2):
        if (e @ e) == e:
            diff = e - e0
            assert jspace.contains(diff.a.reshape(-1)), \
                "lifted idempotent drifted out of the radical coset"
            return e
        acc = e
        for _ in range(f.p - 1):
            acc = Matrix(f, _matmul(f, acc.a, e.a))
        e = acc
    raise AssertionError("idempotent lifting did not stabilize")


# ---------------------------------------------------------------------------
# additive closure comparison

@dataclass
class AddCompare:
    leq: bool
    geq: bool

    @property
    def add_equal(self) -> bool:
        return self.leq and self.geq


def add_compare(M: Rep, N: Rep, seed: int = 0) -> AddCompare:
    """leq means every indecomposable summand class of M occurs in N."""
    dm = decompose(M, seed=seed)
    dn = decompose(N, seed=seed)

    def classes_contained(a: Decomposition, b: Decomposition) -> bool:
        for rep_a, _ in a.summands:
            if not any(
                rep_a.dim == rep_b.dim and iso_indecomposable(rep_a, rep_b)
                for rep_b, _ in b.summands
            ):
                return False
        return True

    return AddCompare(leq=classes_contained(dm, dn), geq=classes_contained(dn, dm))
