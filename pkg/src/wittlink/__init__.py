"""Exact Witt classes of quadratic linking forms over Z[t] and Z."""

from .assembly import GroupDescriptor, l_group_dihedral, l_laurent, unil_value
from .classifier import WittCoord, classify, element_order, realize, reduce_to_exp2, v_action, witt_equal
from .errors import ParseError, WittError
from .forms import LinkingForm, N_form, P_form, build_template, form_from_json, form_neg, form_sum
from .invariants import arf_invariant, gauss_sum, invariant_report, rank_inv
from .modules import MP, Cyclic, Submodule, TorsionModule

__version__ = "0.1.0"

__all__ = [
    "Cyclic", "GroupDescriptor", "LinkingForm", "MP", "N_form", "P_form", "ParseError",
    "Submodule", "TorsionModule", "WittCoord", "WittError", "arf_invariant", "build_template",
    "classify", "element_order", "form_from_json", "form_neg", "form_sum", "gauss_sum",
    "invariant_report", "l_group_dihedral", "l_laurent", "rank_inv", "realize",
    "reduce_to_exp2", "unil_value", "v_action", "witt_equal",
]
