"""Top-level package for pyunivshift."""

__author__ = """Travis F. Collins"""
__email__ = "travis.collins@analog.com"
__version__ = "0.0.1"

from univshift.certify.certifier import certifier, claim_record, verify_claim
from univshift.codecs.subshift_code import code_to_spec, spec_to_code
from univshift.errors import UnivShiftError
from univshift.layers.decode import L_n
from univshift.layers.skeleton import skeleton
from univshift.operators.modulus import modulus_of_continuity
from univshift.operators.registry import operator_registry
from univshift.symbolic.subshift import (
    fullshift,
    fullshift_sft,
    golden_mean,
    no00no11,
    subshift,
)
from univshift.universal.builder import build_layered, build_universal_1d
from univshift.universal.packing import build_KS
