"""Exact modular representation theory toolkit: certifies when induced
modules over group algebras are support tau-tilting, block version
included."""

__version__ = "0.1.0"

from .exactfield import Field, Matrix, Poly, Scalar, field_make, linsolve, minpoly
from .permgroup import Group, Perm, Transversal, class_sums, group_close, transversal
from .grouprep import (
    HomBasis,
    InconclusiveError,
    Rep,
    act,
    conjugate_rep,
    direct_sum,
    dual_rep,
    ext_module,
    hom_space,
    induce,
    is_isomorphic,
    rep_make,
    restrict,
)
from .meataxe import (
    Decomposition,
    SimpleTable,
    add_compare,
    algebra_radical,
    chop,
    decompose,
    is_irreducible,
    lift_idempotent,
    radical_top,
    simples_of,
)
from .taucalc import PimTable, SttCertificate, Tables, ext1, is_stt, is_tau_rigid, \
    pims, projective_cover, syzygy, tau
from .blockdec import Block, block_cut_induce, block_of_module, blocks, \
    covering_blocks, fong_reynolds_block, inertial_group
from .theoremlab import (
    PairLab,
    TheoremVerdict,
    build_corpus,
    check_theorem1,
    check_theorem2,
    is_invariant,
    mackey_check,
    orbit_module,
    remark_classify,
)
