"""Certified computations with Weil quadratic forms on Archimedean
Grothendieck rings: thresholds t_n^H, root-discriminant cutoffs r(w), r*(w),
Odlyzko test functions and effective enumeration of Archimedean parameters.
"""
from ._enum import BACKEND as ENUM_BACKEND
from .bounds import r_star_w, r_w, rw_from_Mw, s_w_table, table1_rows
from .enumeration import FieldSignature, build_problem, effective_report, enumerate_candidates, intersect_over_lambda
from .errors import (
    DegeneratePencil,
    DomainError,
    IncompleteFunctional,
    NotPositiveDefinite,
    PoleAtZero,
    PreconditionFailed,
    RankError,
    SingularMatrix,
    Undecidable,
    WeilFormsError,
)
from .qform import GRH, INVLINEAR, LOGKERNEL, NONGRH, gram, shifted_signature, tn_exact, tn_numeric, vn
from .special_functions import CertifiedInterval, SymbolicConstant

__version__ = "0.1.0"
