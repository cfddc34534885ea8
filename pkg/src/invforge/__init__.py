"""invforge: exact construction and verification of the SL2(F_q) and
Sylow-p invariants of the generic binary quadratic form."""

from .gf import DEFAULT_MAX_Q, FieldCtx, make_field
from .poly import (ExactDivisionError, Poly, exact_divide, gens,
                   grevlex_cmp, grevlex_key, monomial_weight)
from .action import (GroupElem, apply, enumerate_P, enumerate_SL2,
                     generators_SL2, identity, rho, sigma, tau)
from .construct import (IdentityError, InvariantSet, build, compute_phi,
                        parity_decompose_invariant, p_relation_residual,
                        verify_p_invariance, verify_p_relation,
                        verify_sl2_invariance)
from .sagbi import (Expression, GenSet, MembershipResult, SagbiReport,
                    certify_sagbi, find_tete_a_tetes, membership, subduct)
from .oracle import (BudgetError, DimTable, compare, default_budget,
                     hilbert_hypersurface, invariant_basis,
                     invariant_dimension)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_Q", "FieldCtx", "make_field",
    "ExactDivisionError", "Poly", "exact_divide", "gens", "grevlex_cmp",
    "grevlex_key", "monomial_weight",
    "GroupElem", "apply", "enumerate_P", "enumerate_SL2", "generators_SL2",
    "identity", "rho", "sigma", "tau",
    "IdentityError", "InvariantSet", "build", "compute_phi",
    "parity_decompose_invariant", "p_relation_residual",
    "verify_p_invariance", "verify_p_relation", "verify_sl2_invariance",
    "Expression", "GenSet", "MembershipResult", "SagbiReport",
    "certify_sagbi", "find_tete_a_tetes", "membership", "subduct",
    "BudgetError", "DimTable", "compare", "default_budget",
    "hilbert_hypersurface", "invariant_basis", "invariant_dimension",
    "__version__",
]
