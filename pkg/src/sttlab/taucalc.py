"""Projective covers, syzygies, the Auslander-Reiten translate and support
tau-tilting certificates.

Group algebras are symmetric, so tau is computed as the double syzygy of
minimal projective covers; the classical dual-of-transpose construction is
kept as an independent second route and the two must agree up to
isomorphism on every module they are both asked about.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .exactfield import Field, Matrix, _nullspace, _rref
from .grouprep import (
    Cocycle,
    Rep,
    direct_sum,
    dual_rep,
    hom_space,
    quotient_projection,
    regular_rep,
    right_mult_matrix,
    sub_rep,
    zero_rep,
    _RowSpace,
)
from .meataxe import (
    SimpleTable,
    chop,
    decompose,
    radical_top,
    simples_of,
)
from .permgroup import Group

__all__ = [
    "Tables",
    "PimTable",
    "SttCertificate",
    "pims",
    "projective_cover",
    "syzygy",
    "tau",
    "ext1",
    "Ext1Result",
    "is_tau_rigid",
    "is_stt",
]


@dataclass
class PimTable:
    group: Group
    field: Field
    simples: SimpleTable
    pims: list[Rep]            # aligned with simples.labels
    cover_maps: list[Matrix]   # surjection P_i -> S_i

    @property
    def count(self) -> int:
        return len(self.pims)


class Tables:
    """Shared simple-module and projective data for one (group, field)."""

    def __init__(self, group: Group, field: Field, seed: int = 0):
        self.group = group
        self.field = field
        self.seed = seed

    @cached_property
    def simples(self) -> SimpleTable:
        return simples_of(self.group, self.field, seed=self.seed)

    @cached_property
    def pimtable(self) -> PimTable:
        return pims(self.group, self.field, seed=self.seed, simples=self.simples)

    def chop(self, M: Rep):
        return chop(M, self.simples, seed=self.seed)


def pims(group: Group, field: Field, seed: int = 0,
         simples: Optional[SimpleTable] = None) -> PimTable:
    """Indecomposable projectives as summands of the regular module, each
    labelled by its simple top."""
    if simples is None:
        simples = simples_of(group, field, seed=seed)
    reg = regular_rep(group, field)
    dec = decompose(reg, seed=seed)
    pim_by_label: dict[str, Rep] = {}
    mult_by_label: dict[str, int] = {}
    cover_by_label: dict[str, Matrix] = {}
    for P, mult in dec.summands:
        rt = radical_top(P, simples)
        top = rt.top
        label = simples.label_of(top)
        if label in pim_by_label:
            raise AssertionError("two projective classes share a top")
        # surjection P -> S_i: top projection followed by the matching iso
        from .grouprep import iso_indecomposable

        iso = iso_indecomposable(top, simples.simples[simples.labels.index(label)])
        assert iso, "top does not match its own label"
        proj = quotient_projection(P, rt.radical_rows)
        cover_by_label[label] = iso.witness @ proj
        pim_by_label[label] = P
        mult_by_label[label] = mult
    if set(pim_by_label) != set(simples.labels):
        raise AssertionError("projective classes do not match the simples")
    for label, S in zip(simples.labels, simples.simples):
        if mult_by_label[label] != S.dim:
            raise AssertionError(
                "multiplicity of a projective in the regular module must "
                "equal the dimension of its top"
            )
    return PimTable(
        group=group,
        field=field,
        simples=simples,
        pims=[pim_by_label[lab] for lab in simples.labels],
        cover_maps=[cover_by_label[lab] for lab in simples.labels],
    )


@dataclass
class CoverData:
    cover: Rep            # P(M)
    surjection: Matrix    # dim M x dim P(M)
    kernel_rows: Matrix   # rows of Omega(M) inside P(M)
    omega: Rep


def _cover_data(M: Rep, tables: Tables) -> CoverData:
    f = M.field
    pt = tables.pimtable
    simples = tables.simples
    if M.dim == 0:
        empty = Matrix.zeros(f, 0, 0)
        z = zero_rep(M.group, f)
        return CoverData(z, empty, Matrix.zeros(f, 0, 0), z)
    rt = radical_top(M, simples)
    top_proj = quotient_projection(M, rt.radical_rows)  # dim top x dim M
    parts: list[Rep] = []
    columns: list[np.ndarray] = []
    for i, (label, S, P) in enumerate(zip(simples.labels, simples.simples, pt.pims)):
        c_i = hom_space(M, S).dim  # multiplicity of S in top(M)
        if c_i == 0:
            continue
        H = hom_space(P, M)
        # pick c_i maps whose composites with the top projection are
        # linearly independent; projectivity guarantees they exist
        chosen: list[Matrix] = []
        probe = _RowSpace(f, rt.top.dim * P.dim)
        for phi in H.basis:
            composite = top_proj @ phi
            if probe.add(composite.a.reshape(-1)):
                chosen.append(phi)
                if len(chosen) == c_i:
                    break
        if len(chosen) != c_i:
            raise AssertionError(
                "projective cover lifting system is inconsistent"
            )
        for phi in chosen:
            parts.append(P)
            columns.append(phi.a)
    if parts:
        P_total = direct_sum(parts)
        surj = Matrix(f, np.concatenate(columns, axis=1))
    else:  # M is zero-dimensional (handled above) or has no top: impossible
        raise AssertionError("nonzero module with empty top")
    # minimality and surjectivity certificates
    if len(_rref(f, surj.a)[1]) != M.dim:
        raise AssertionError("projective cover map is not surjective")
    if sum(S.dim * hom_space(M, S).dim for S in simples.simples) != rt.top.dim:
        raise AssertionError("projective cover is not minimal")
    null = _nullspace(f, surj.a)
    R, piv = _rref(f, null.T.copy())
    kernel_rows = Matrix(f, R[: len(piv)])
    omega = sub_rep(P_total, kernel_rows) if kernel_rows.rows else zero_rep(M.group, f)
    return CoverData(P_total, surj, kernel_rows, omega)


def projective_cover(M: Rep, tables: Tables) -> tuple[Rep, Matrix]:
    if M.dim == 0:
        raise ValueError("projective cover of the zero module is not defined")
    data = _cover_data(M, tables)
    return data.cover, data.surjection


def syzygy(M: Rep, tables: Tables) -> Rep:
    """Kernel of the minimal projective cover; zero for projectives."""
    if M.dim == 0:
        return zero_rep(M.group, M.field)
    return _cover_data(M, tables).omega


def tau(M: Rep, tables: Tables, method: str = "omega2") -> Rep:
    """Auslander-Reiten translate.

    omega2: double syzygy of minimal covers (valid because group algebras
    are symmetric).  dtr: dual of the transpose of a minimal projective
    presentation, with right modules carried through the inversion
    antiautomorphism.  Both methods agree up to isomorphism.
    """
    if method == "omega2":
        if M.dim == 0:
            return zero_rep(M.group, M.field)
        o1 = syzygy(M, tables)
        if o1.dim == 0:
            return zero_rep(M.group, M.field)
        return syzygy(o1, tables)
    if method == "dtr":
        return _tau_dtr(M, tables)
    raise ValueError(f"unknown tau method {method!r}")


def _twisted_hom_to_regular(P: Rep, tables: Tables) -> tuple[Rep, list[Matrix]]:
    """Hom(P, kG) as a left module through g . phi = R_{g^-1} phi.

    Returns the module together with the hom basis (|G| x dim P matrices).
    """
    G, f = P.group, P.field
    reg = regular_rep(G, f)
    basis = hom_space(P, reg).basis
    h = len(basis)
    if h == 0:
        return zero_rep(G, f), []
    flat = np.stack([b.a.reshape(-1) for b in basis])
    A = Matrix(f, flat.T.copy())
    from .exactfield import linsolve

    gen_mats = []
    for a in G.generators:
        Rinv = right_mult_matrix(G, f, a.inverse())
        cols = []
        for b in basis:
            img = (Rinv @ b).a.reshape(-1)
            sol = linsolve(A, Matrix(f, img[:, None].copy()))
            assert sol.particular is not None, "twisted action left the hom space"
            cols.append(sol.particular.a[:, 0])
        gen_mats.append(Matrix(f, np.stack(cols, axis=1)))
    return Rep(G, f, gen_mats, dim=h, check="gens"), basis


def _tau_dtr(M: Rep, tables: Tables) -> Rep:
    f = M.field
    G = M.group
    if M.dim == 0:
        return zero_rep(G, f)
    c0 = _cover_data(M, tables)
    if c0.omega.dim == 0:  # projective module: tau vanishes
        return zero_rep(G, f)
    c1 = _cover_data(c0.omega, tables)
    # presentation map d: P1 -> P0 through the inclusion of Omega(M)
    d = Matrix(f, (Matrix(f, c0.kernel_rows.a.T.copy()) @ c1.surjection).a)
    hom0, basis0 = _twisted_hom_to_regular(c0.cover, tables)
    hom1, basis1 = _twisted_hom_to_regular(c1.cover, tables)
    if hom1.dim == 0:
        return zero_rep(G, f)
    flat1 = np.stack([b.a.reshape(-1) for b in basis1])
    A1 = Matrix(f, flat1.T.copy())
    from .exactfield import linsolve

    image_rows = []
    for psi in basis0:
        img = (psi @ d).a.reshape(-1)
        sol = linsolve(A1, Matrix(f, img[:, None].copy()))
        assert sol.particular is not None, "transpose image left the hom space"
        image_rows.append(sol.particular.a[:, 0])
    if image_rows:
        stacked = np.stack(image_rows)
        R, piv = _rref(f, stacked)
        rows = Matrix(f, R[: len(piv)])
    else:
        rows = Matrix.zeros(f, 0, hom1.dim)
    from .grouprep import quotient_rep

    coker = quotient_rep(hom1, rows) if rows.rows < hom1.dim else zero_rep(G, f)
    if coker.dim == 0:
        return zero_rep(G, f)
    return dual_rep(coker)


@dataclass
class Ext1Result:
    dimension: int
    cocycles: list[Cocycle]


def ext1(S: Rep, T: Rep, tables: Tables) -> Ext1Result:
    """Ext^1(S, T) = Hom(Omega S, T) modulo restrictions from the cover."""
    f = S.field
    data = _cover_data(S, tables)
    if data.omega.dim == 0:
        return Ext1Result(0, [])
    H = hom_space(data.omega, T)
    restr = _RowSpace(f, T.dim * data.omega.dim)
    restriction_rows = []
    emb = Matrix(f, data.kernel_rows.a.T.copy())  # Omega coords -> P coords
    for psi in hom_space(data.cover, T).basis:
        restricted = psi @ emb
        if restr.add(restricted.a.reshape(-1)):
            restriction_rows.append(restricted.a.reshape(-1))
    if restriction_rows:
        restriction = Matrix(f, np.stack(restriction_rows))
    else:
        restriction = Matrix.zeros(f, 0, T.dim * data.omega.dim)
    cocycles = []
    probe = _RowSpace(f, T.dim * data.omega.dim)
    for row in restriction_rows:
        probe.add(row)
    for phi in H.basis:
        if probe.add(phi.a.reshape(-1)):
            cocycles.append(Cocycle(
                source=S,
                target=T,
                cover=data.cover,
                omega_rows=data.kernel_rows,
                matrix=phi,
                restriction_rows=restriction,
            ))
    dim = H.dim - restr.dim
    assert dim == len(cocycles)
    return Ext1Result(dim, cocycles)


@dataclass
class SttCertificate:
    module: Rep
    tau: Rep
    summand_classes: int          # m: pairwise non-isomorphic summand classes
    cosupport: tuple[str, ...]    # scope simples with Hom(P_i, M) = 0
    scope: tuple[str, ...]        # simple labels in scope
    rigid: bool
    stt: bool

    @property
    def z(self) -> int:
        return len(self.cosupport)

    @property
    def n(self) -> int:
        return len(self.scope)


def is_tau_rigid(M: Rep, tables: Tables, seed: int = 0) -> SttCertificate:
    """Partial certificate carrying the rigidity verdict only."""
    return _certify(M, tables, scope=tuple(tables.simples.labels), seed=seed,
                    want_stt=False)


def is_stt(M: Rep, tables: Tables, block=None, seed: int = 0) -> SttCertificate:
    """Support tau-tilting certificate via the counting criterion
    m + z = n over the scope (all simples, or one block's simples)."""
    if block is not None:
        scope = tuple(block.simple_labels)
        if M.dim > 0:
            from . import blockdec

            if not blockdec.module_in_block(M, block):
                raise ValueError("module does not lie in the given block")
    else:
        scope = tuple(tables.simples.labels)
    return _certify(M, tables, scope=scope, seed=seed, want_stt=True)


def _certify(M: Rep, tables: Tables, scope: tuple[str, ...], seed: int,
             want_stt: bool) -> SttCertificate:
    f = M.field
    dec = decompose(M, seed=seed)
    class_taus = [tau(rep, tables) for rep, _ in dec.summands]
    rigid = True
    for rep_i, _ in dec.summands:
        for t_j in class_taus:
            if t_j.dim and rep_i.dim and hom_space(rep_i, t_j).dim:
                rigid = False
                break
        if not rigid:
            break
    tau_parts = []
    for (rep_j, mult), t_j in zip(dec.summands, class_taus):
        if t_j.dim:
            tau_parts.extend([t_j] * mult)
    tau_M = direct_sum(tau_parts, group=M.group, field=f)
    support = set()
    for rep_j, _ in dec.summands:
        support.update(tables.chop(rep_j).keys())
    cosupport = tuple(lab for lab in scope if lab not in support)
    m = len(dec.summands)
    z = len(cosupport)
    n = len(scope)
    stt = rigid and (m + z == n)
    return SttCertificate(
        module=M,
        tau=tau_M,
        summand_classes=m,
        cosupport=cosupport,
        scope=scope,
        rigid=rigid,
        stt=stt,
    )
