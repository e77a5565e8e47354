"""Matchgate signatures, permutable matchgates, gadget synthesis and
counting CSP dichotomy deciders over exact cyclotomic arithmetic."""
from .config import Config, get_config, override, set_config
from .errors import *  # noqa: F401,F403
from .exactnum import Cyclo, format_scalar, parse_scalar, sqrt_in_field
from .signature import BinaryMatrix, Signature, Symmetric, hat, permute, pin, tensor, transform
from .matchgate import generate_from_pairs, is_matchgate, mgi_check, normalize
from .classification import classify, is_affine, is_permutable_matchgate, is_product
from .gadget import GadgetGraph, MatingSpec, contract, mating_gadget, synthesize_star
from .holant import CSPInstance, HolantInstance, WeightedGraph, count_pm, eval_csp, eval_holant
from .synthesis import realize_binary_or_001, realize_nondeg_binary, realize_symmetric_from_mp
from .dichotomy import ProblemVariant, decide

__version__ = "0.1.0"
