"""Exact effective models of finite flat group scheme actions over F_p[t]."""

from .action import (Coaction, action_kernel_ideal, cover_example_two, effective_model,
                     invariants, quotient_action, stabilizer_ideal, subgroup_image, torsor_check,
                     torsor_example_one, verify_coaction_axioms)
from .algebra import AlgElem, AlgMorphism, Presentation, tensor_product
from .dvr import RElem, beta
from .hopf import (HopfAlgebra, constant_group_zp2, group_M, hopf_iso_check, kernel_group_K,
                   quotient_by_hopf_ideal, verify_hopf_axioms)
from .pid import Lattice, PidMatrix, hnf, saturate_t_torsion, smith_form, smith_invariants
from .scenarios import ScenarioReport, run_scenario
from .stages import closure_stage, universal_injectivity_check
from .witt import WittPoint, isogeny_phi, witt_add, witt_hopf

__version__ = "0.1.0"

__all__ = [
    "Coaction",
    "action_kernel_ideal",
    "cover_example_two",
    "effective_model",
    "invariants",
    "quotient_action",
    "stabilizer_ideal",
    "subgroup_image",
    "torsor_check",
    "torsor_example_one",
    "verify_coaction_axioms",
    "AlgElem",
    "AlgMorphism",
    "Presentation",
    "tensor_product",
    "RElem",
    "beta",
    "HopfAlgebra",
    "constant_group_zp2",
    "group_M",
    "hopf_iso_check",
    "kernel_group_K",
    "quotient_by_hopf_ideal",
    "verify_hopf_axioms",
    "Lattice",
    "PidMatrix",
    "hnf",
    "saturate_t_torsion",
    "smith_form",
    "smith_invariants",
    "ScenarioReport",
    "run_scenario",
    "closure_stage",
    "universal_injectivity_check",
    "WittPoint",
    "isogeny_phi",
    "witt_add",
    "witt_hopf",
]
