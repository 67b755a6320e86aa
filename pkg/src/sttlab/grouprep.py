"""Modules over group algebras as matrix representations.

A Rep assigns one invertible matrix per group generator; matrices for all
elements are derived along the recorded generator words and the
homomorphism law is certified at construction.  Column-vector convention:
g sends v to act(g) @ v.  Subspaces are handled as row bases in reduced
echelon form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
import random

import numpy as np

from .exactfield import Field, Matrix, _matmul, _nullspace, _rref
from .permgroup import Group, Perm, Transversal

__all__ = [
    "Rep",
    "HomBasis",
    "IsoResult",
    "Cocycle",
    "rep_make",
    "act",
    "hom_space",
    "hom_dim",
    "is_isomorphic",
    "iso_indecomposable",
    "InconclusiveError",
    "direct_sum",
    "restrict",
    "induce",
    "conjugate_rep",
    "dual_rep",
    "ext_module",
    "regular_rep",
    "trivial_rep",
    "zero_rep",
    "sub_rep",
    "quotient_rep",
    "spin",
    "rep_apply_algebra",
]

EXHAUSTIVE_CHECK_BOUND = 200


class InconclusiveError(RuntimeError):
    """A randomized routine ran out of budget without reaching a verdict."""


class Rep:
    """Matrix representation of a finite group over an exact field."""

    __slots__ = ("group", "field", "dim", "gen_mats", "element_mats", "block_dims")

    def __init__(self, group: Group, field: Field, gen_mats: list[Matrix],
                 dim: Optional[int] = None, block_dims=None, check: str = "gens"):
        if dim is None:
            if not gen_mats:
                raise ValueError("dimension required when there are no generators")
            dim = gen_mats[0].rows
        if len(gen_mats) != len(group.generators):
            raise ValueError("one matrix per group generator required")
        for M in gen_mats:
            if M.field != field:
                raise ValueError("matrix field mismatch")
            if M.shape != (dim, dim):
                raise ValueError(f"generator matrix shape {M.shape} != ({dim},{dim})")
        self.group = group
        self.field = field
        self.dim = dim
        self.gen_mats = list(gen_mats)
        self.block_dims = tuple(block_dims) if block_dims else None
        self.element_mats = self._build_element_mats()
        if check != "none":
            self._check_homomorphism(exhaustive=(check == "full"))

    def _build_element_mats(self) -> np.ndarray:
        G, f, d = self.group, self.field, self.dim
        E = np.zeros((G.order, d, d), dtype=f.dtype)
        E[0] = np.eye(d, dtype=f.dtype)
        for i in range(1, G.order):
            word = G.words[i]
            gi = word[0]
            parent = G.index[self.group.generators[gi].inverse() * G.elements[i]]
            E[i] = _matmul(f, self.gen_mats[gi].a, E[parent])
        return E

    def _check_homomorphism(self, exhaustive: bool):
        """Certify rho(g) rho(h) == rho(gh).

        The generator-against-all-elements check already implies the full
        law by induction over word length; for small groups the all-pairs
        check is run as well.
        """
        G, f, d = self.group, self.field, self.dim
        n = G.order
        for gi, M in enumerate(self.gen_mats):
            if len(_rref(f, M.a)[1]) != d:
                raise ValueError(f"generator matrix {gi} is singular")
        if d == 0 or n == 1:
            return
        table = G.mult_table()
        H = np.ascontiguousarray(self.element_mats.transpose(1, 0, 2)).reshape(d, n * d)
        def rows_ok(indices):
            for i in indices:
                got = _matmul(f, self.element_mats[i], H)
                expect = np.ascontiguousarray(
                    self.element_mats[table[i]].transpose(1, 0, 2)
                ).reshape(d, n * d)
                if not np.array_equal(got, expect):
                    raise ValueError(
                        f"generator matrices violate the group relations (element {i})"
                    )
        gen_indices = sorted({G.index[a] for a in G.generators})
        rows_ok(gen_indices)
        if exhaustive:
            if n <= EXHAUSTIVE_CHECK_BOUND:
                rows_ok(range(n))
            else:  # sampled check above the exhaustive bound
                rng = random.Random(0)
                rows_ok(sorted({rng.randrange(n) for _ in range(64)}))

    def act_idx(self, idx: int) -> Matrix:
        return Matrix(self.field, self.element_mats[idx].copy())

    def act(self, g) -> Matrix:
        if isinstance(g, Perm):
            g = self.group.idx(g)
        return self.act_idx(int(g))

    def __repr__(self):
        return (f"Rep(group order {self.group.order}, dim {self.dim}, "
                f"field {self.field})")


def rep_make(group: Group, field: Field, gen_matrices: list[Matrix],
             dim: Optional[int] = None) -> Rep:
    """Validated representation; homomorphism law checked exhaustively."""
    return Rep(group, field, gen_matrices, dim=dim, check="full")


def act(M: Rep, g) -> Matrix:
    return M.act(g)


def zero_rep(group: Group, field: Field) -> Rep:
    return Rep(group, field, [Matrix.zeros(field, 0, 0)] * len(group.generators),
               dim=0, check="none")


def trivial_rep(group: Group, field: Field) -> Rep:
    one = Matrix.identity(field, 1)
    return Rep(group, field, [one] * len(group.generators), dim=1, check="none")


def regular_rep(group: Group, field: Field) -> Rep:
    """Left translation on the group algebra basis."""
    n = group.order
    mats = []
    for a in group.generators:
        arr = np.zeros((n, n), dtype=field.dtype)
        for j, h in enumerate(group.elements):
            arr[group.index[a * h], j] = 1
        mats.append(Matrix(field, arr))
    return Rep(group, field, mats, dim=n, check="gens")


def right_mult_matrix(group: Group, field: Field, g: Perm) -> Matrix:
    """Matrix of right multiplication by g on the group algebra basis."""
    n = group.order
    arr = np.zeros((n, n), dtype=field.dtype)
    for j, h in enumerate(group.elements):
        arr[group.index[h * g], j] = 1
    return Matrix(field, arr)


def rep_apply_algebra(M: Rep, coeffs) -> Matrix:
    """Action of the group algebra element sum(coeffs[i] * elements[i])."""
    f = M.field
    coeffs = np.asarray(coeffs, dtype=f.dtype)
    if coeffs.shape != (M.group.order,):
        raise ValueError("coefficient vector length must equal the group order")
    out = np.zeros((M.dim, M.dim), dtype=f.dtype)
    for i in np.nonzero(coeffs)[0]:
        term = f.MUL[coeffs[i], M.element_mats[i]]
        out = f.arr_add(out, term)
    return Matrix(f, out)


# ---------------------------------------------------------------------------
# subspaces

class _RowSpace:
    """Self-reducing RREF row collection used for spinning and membership."""

    def __init__(self, field: Field, width: int):
        self.f = field
        self.width = width
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        f = self.f
        r = v.astype(f.dtype).copy()
        for row, p in zip(self.rows, self.pivots):
            c = int(r[p])
            if c:
                r = f.arr_sub(r, f.MUL[c, row])
        return r

    def add(self, v: np.ndarray) -> bool:
        f = self.f
        r = self.reduce(v)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        p = int(nz[0])
        if r[p] != 1:
            r = f.MUL[f.inv(int(r[p])), r]
        # back-substitute to keep the collection fully reduced
        for i, row in enumerate(self.rows):
            c = int(row[p])
            if c:
                self.rows[i] = f.arr_sub(row, f.MUL[c, r])
        self.rows.append(r)
        self.pivots.append(p)
        return True

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    @property
    def dim(self) -> int:
        return len(self.rows)

    def matrix(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.width), dtype=self.f.dtype)
        order = np.argsort(self.pivots)
        return np.array([self.rows[i] for i in order], dtype=self.f.dtype)


def spin(mats, seed_rows: np.ndarray, field: Field) -> np.ndarray:
    """Smallest row space containing seed_rows and closed under every
    action matrix (rows transform as r -> r @ A.T)."""
    d = seed_rows.shape[1]
    space = _RowSpace(field, d)
    frontier = [seed_rows[i] for i in range(seed_rows.shape[0]) if space.add(seed_rows[i])]
    while frontier:
        new_frontier = []
        for A in mats:
            At = A.T.copy()
            for r in frontier:
                img = _matmul(field, r[None, :], At)[0]
                if space.add(img):
                    new_frontier.append(space.rows[-1])
        frontier = new_frontier
    return space.matrix()


def _rref_rows(field: Field, rows: np.ndarray) -> np.ndarray:
    R, piv = _rref(field, rows)
    return R[: len(piv)]


def sub_rep(M: Rep, rows) -> Rep:
    """Restriction of the action to an invariant row space."""
    f = M.field
    W = rows.a if isinstance(rows, Matrix) else np.asarray(rows, dtype=f.dtype)
    W = _rref_rows(f, W)
    k = W.shape[0]
    R, piv = _rref(f, W)
    mats = []
    for A in M.gen_mats:
        img = _matmul(f, W, A.a.T)  # rows are images of the basis rows
        space = _RowSpace(f, M.dim)
        for i in range(k):
            space.add(W[i])
        for i in range(k):
            if not space.contains(img[i]):
                raise ValueError("row space is not invariant under the action")
        C = img[:, piv]  # coefficients in the RREF basis
        mats.append(Matrix(f, C.T.copy()))
    return Rep(M.group, f, mats, dim=k, check="gens")


def quotient_rep(M: Rep, rows) -> Rep:
    """Action induced on the quotient by an invariant row space."""
    f = M.field
    W = rows.a if isinstance(rows, Matrix) else np.asarray(rows, dtype=f.dtype)
    W = _rref_rows(f, W)
    R, piv = _rref(f, W)
    piv_set = set(piv)
    comp = [c for c in range(M.dim) if c not in piv_set]
    mats = []
    for A in M.gen_mats:
        B = A.a[:, comp]  # images of the complement basis vectors
        red = B[comp, :]
        if piv:
            corr = _matmul(f, W[:, comp].T.copy(), B[piv, :])
            red = f.arr_sub(red, corr)
        mats.append(Matrix(f, red.copy()))
    return Rep(M.group, f, mats, dim=len(comp), check="gens")


def quotient_projection(M: Rep, rows) -> Matrix:
    """Matrix of the projection onto the quotient coordinates of quotient_rep."""
    f = M.field
    W = rows.a if isinstance(rows, Matrix) else np.asarray(rows, dtype=f.dtype)
    W = _rref_rows(f, W)
    R, piv = _rref(f, W)
    piv_set = set(piv)
    comp = [c for c in range(M.dim) if c not in piv_set]
    P = np.zeros((len(comp), M.dim), dtype=f.dtype)
    for i, c in enumerate(comp):
        P[i, c] = 1
    if piv:
        corr = np.zeros((len(comp), M.dim), dtype=f.dtype)
        corr[:, piv] = W[:, comp].T
        P = f.arr_sub(P, corr)
    return Matrix(f, P)


def is_invariant_subspace(M: Rep, rows) -> bool:
    f = M.field
    W = rows.a if isinstance(rows, Matrix) else np.asarray(rows, dtype=f.dtype)
    W = _rref_rows(f, W)
    space = _RowSpace(f, M.dim)
    for i in range(W.shape[0]):
        space.add(W[i])
    for A in M.gen_mats:
        img = _matmul(f, W, A.a.T)
        for i in range(W.shape[0]):
            if not space.contains(img[i]):
                return False
    return True


# ---------------------------------------------------------------------------
# hom spaces and isomorphism testing

@dataclass
class HomBasis:
    source: Rep
    target: Rep
    basis: list[Matrix]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _kron(f: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = f.MUL[A[:, None, :, None], B[None, :, None, :]]
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def hom_space(M: Rep, N: Rep) -> HomBasis:
    """Basis of the intertwiners X with X @ rho_M(g) == rho_N(g) @ X."""
    if M.group is not N.group and (
        M.group.elements != N.group.elements
        or M.group.generators != N.group.generators
    ):
        raise ValueError("hom space requires a common group")
    if M.field != N.field:
        raise ValueError("hom space requires a common field")
    f = M.field
    dm, dn = M.dim, N.dim
    if dm == 0 or dn == 0:
        return HomBasis(M, N, [])
    eye_m = np.eye(dm, dtype=f.dtype)
    eye_n = np.eye(dn, dtype=f.dtype)
    rows = []
    for Am, An in zip(M.gen_mats, N.gen_mats):
        # vec is row-major on X (dn x dm): rho_N X - X rho_M = 0
        block = f.arr_sub(_kron(f, An.a, eye_m), _kron(f, eye_n, Am.a.T.copy()))
        rows.append(block)
    if rows:
        system = np.concatenate(rows, axis=0)
    else:
        system = np.zeros((0, dn * dm), dtype=f.dtype)
    null = _nullspace(f, system)
    basis = [Matrix(f, null[:, j].reshape(dn, dm).copy()) for j in range(null.shape[1])]
    return HomBasis(M, N, basis)


def hom_dim(M: Rep, N: Rep) -> int:
    return hom_space(M, N).dim


@dataclass
class IsoResult:
    isomorphic: bool
    witness: Optional[Matrix] = None

    def __bool__(self) -> bool:
        return self.isomorphic


def _verify_witness(M: Rep, N: Rep, X: Matrix) -> Matrix:
    """Exact certification of an isomorphism candidate; returns the inverse."""
    Xinv = X.inverse()
    assert (X @ Xinv) == Matrix.identity(X.field, X.rows)
    assert (Xinv @ X) == Matrix.identity(X.field, X.rows)
    for Am, An in zip(M.gen_mats, N.gen_mats):
        assert (X @ Am) == (An @ X), "witness is not an intertwiner"
    return Xinv


def _random_combo(f: Field, basis: list[Matrix], rng) -> Matrix:
    out = np.zeros(basis[0].shape, dtype=f.dtype)
    for B in basis:
        c = rng.randrange(f.q)
        if c:
            out = f.arr_add(out, f.MUL[c, B.a])
    return Matrix(f, out)


def _invertible(X: Matrix) -> bool:
    return len(_rref(X.field, X.a)[1]) == X.rows


def iso_indecomposable(M: Rep, N: Rep) -> IsoResult:
    """Decisive isomorphism test for modules known to be indecomposable.

    Non-isomorphisms between indecomposables form a subspace of the hom
    space, so some basis element must be invertible whenever M and N are
    isomorphic.
    """
    if M.dim != N.dim:
        return IsoResult(False)
    if M.dim == 0:
        return IsoResult(True, Matrix.zeros(M.field, 0, 0))
    for X in hom_space(M, N).basis:
        if _invertible(X):
            _verify_witness(M, N, X)
            return IsoResult(True, X)
    return IsoResult(False)


def is_isomorphic(M: Rep, N: Rep, seed: int = 0, trials: int = 64) -> IsoResult:
    """Isomorphism test with an exactly verified witness on success.

    Random elements of Hom(M, N) are tried first; if none is invertible the
    verdict is settled through the Krull-Schmidt decompositions, so a
    negative answer is certified rather than guessed.
    """
    if M.group is not N.group and (
        M.group.elements != N.group.elements
        or M.group.generators != N.group.generators
    ):
        raise ValueError("isomorphism test requires a common group")
    if M.field != N.field:
        raise ValueError("isomorphism test requires a common field")
    if M.dim != N.dim:
        return IsoResult(False)
    if M.dim == 0:
        return IsoResult(True, Matrix.zeros(M.field, 0, 0))
    H = hom_space(M, N)
    if H.dim == 0:
        return IsoResult(False)
    for X in H.basis:
        if _invertible(X):
            _verify_witness(M, N, X)
            return IsoResult(True, X)
    rng = random.Random(seed)
    for _ in range(trials):
        X = _random_combo(M.field, H.basis, rng)
        if _invertible(X):
            _verify_witness(M, N, X)
            return IsoResult(True, X)
    # no invertible hom found; settle by matching indecomposable summands
    from . import meataxe  # deferred import; meataxe builds on this module

    dm = meataxe.decompose(M, seed=seed)
    dn = meataxe.decompose(N, seed=seed)
    matched = meataxe.match_decompositions(dm, dn)
    if matched is None:
        return IsoResult(False)
    W = meataxe.assemble_iso_witness(M, N, dm, dn, matched)
    _verify_witness(M, N, W)
    return IsoResult(True, W)


# ---------------------------------------------------------------------------
# functors

def direct_sum(Ms: list[Rep], *, group: Group = None, field: Field = None) -> Rep:
    """Block-diagonal sum; the block layout is remembered for later splits."""
    if not Ms:
        if group is None or field is None:
            raise ValueError("empty direct sum needs an explicit group and field")
        return zero_rep(group, field)
    group = Ms[0].group
    field = Ms[0].field
    for M in Ms[1:]:
        if M.group is not group or M.field != field:
            raise ValueError("direct sum requires a common group and field")
    dim = sum(M.dim for M in Ms)
    mats = []
    for gi in range(len(group.generators)):
        arr = np.zeros((dim, dim), dtype=field.dtype)
        off = 0
        for M in Ms:
            arr[off:off + M.dim, off:off + M.dim] = M.gen_mats[gi].a
            off += M.dim
        mats.append(Matrix(field, arr))
    blocks: list[int] = []
    for M in Ms:
        if M.block_dims:
            blocks.extend(M.block_dims)
        elif M.dim:
            blocks.append(M.dim)
    return Rep(group, field, mats, dim=dim, block_dims=blocks, check="gens")


def restrict(M: Rep, G: Group) -> Rep:
    """Same space, action recomputed for the subgroup's generators."""
    if not G.is_subgroup_of(M.group):
        raise ValueError("restriction target is not a subgroup")
    mats = [M.act(a) for a in G.generators]
    return Rep(G, M.field, mats, dim=M.dim, block_dims=M.block_dims, check="gens")


def induce(M: Rep, big: Group, T: Transversal) -> Rep:
    """kBig tensor_{kG} M with basis (coset rep, module basis vector)."""
    if T.small.elements != M.group.elements:
        raise ValueError("transversal does not match the module's group")
    if T.big is not big and T.big.elements != big.elements:
        raise ValueError("transversal does not match the big group")
    f = M.field
    k, d = len(T.reps), M.dim
    D = k * d
    mats = []
    for a in big.generators:
        arr = np.zeros((D, D), dtype=f.dtype)
        for i, t in enumerate(T.reps):
            u = a * t
            j = T.coset_of(u)
            h = T.reps[j].inverse() * u
            if h not in M.group.index:
                raise ValueError("transversal inconsistent with the subgroup")
            arr[j * d:(j + 1) * d, i * d:(i + 1) * d] = M.act(h).a
        mats.append(Matrix(f, arr))
    return Rep(big, f, mats, dim=D, check="gens")


def conjugate_rep(M: Rep, gtilde: Perm) -> Rep:
    """Twist the action through conjugation: g acts by rho(gtilde^-1 g gtilde)."""
    G = M.group
    ginv = gtilde.inverse()
    for a in G.generators:
        if ginv * a * gtilde not in G.index:
            raise ValueError("element does not normalize the group")
    mats = [M.act(ginv * a * gtilde) for a in G.generators]
    return Rep(G, M.field, mats, dim=M.dim, block_dims=M.block_dims, check="gens")


def dual_rep(M: Rep) -> Rep:
    """Contragredient module: g acts by act(g^-1) transposed."""
    mats = [M.act(a.inverse()).T for a in M.group.generators]
    return Rep(M.group, M.field, mats, dim=M.dim, block_dims=M.block_dims,
               check="gens")


# ---------------------------------------------------------------------------
# extensions

@dataclass
class Cocycle:
    """A hom from the syzygy of `source` to `target`, with enough context to
    build the pushout extension and to detect split classes."""

    source: Rep              # S: the module on top
    target: Rep              # T: the module at the bottom
    cover: Rep               # P(S)
    omega_rows: Matrix       # RREF rows of Omega(S) inside P(S)
    matrix: Matrix           # dim T x dim Omega(S)
    restriction_rows: Matrix  # span of Hom(P(S), T) restricted, flattened rows


def ext_module(S: Rep, T: Rep, cocycle: Cocycle) -> Rep:
    """Indecomposable extension with top S and radical T, built as the
    pushout (P(S) + T) / {(w, -f(w))}."""
    f = S.field
    if cocycle.source is not S or cocycle.target is not T:
        if cocycle.source.dim != S.dim or cocycle.target.dim != T.dim:
            raise ValueError("cocycle does not match the given modules")
    flat = cocycle.matrix.a.reshape(1, -1)
    R = cocycle.restriction_rows.a
    if R.shape[0]:
        space = _RowSpace(f, R.shape[1])
        for i in range(R.shape[0]):
            space.add(R[i])
        if space.contains(flat[0]):
            raise ValueError("cocycle represents the zero class (split extension)")
    elif not flat.any():
        raise ValueError("cocycle represents the zero class (split extension)")
    P = cocycle.cover
    K = cocycle.omega_rows.a
    k = K.shape[0]
    amb = direct_sum([P, T])
    graph = np.zeros((k, P.dim + T.dim), dtype=f.dtype)
    graph[:, :P.dim] = K
    graph[:, P.dim:] = f.NEG[cocycle.matrix.a.T]
    if not is_invariant_subspace(amb, graph):
        raise ValueError("cocycle is not a module homomorphism")
    E = quotient_rep(amb, graph)
    if E.dim != S.dim + T.dim:
        raise AssertionError("extension has the wrong dimension")
    # certify the two-step structure: T embeds, the quotient is S
    proj = quotient_projection(amb, graph)
    t_rows = _rref_rows(f, proj.a[:, P.dim:].T.copy())
    if t_rows.shape[0] != T.dim or not is_invariant_subspace(E, t_rows):
        raise AssertionError("bottom module does not embed into the extension")
    bottom = sub_rep(E, t_rows)
    top = quotient_rep(E, t_rows)
    if not is_isomorphic(bottom, T):
        raise AssertionError("extension radical is not the expected module")
    if not is_isomorphic(top, S):
        raise AssertionError("extension top is not the expected module")
    return E
