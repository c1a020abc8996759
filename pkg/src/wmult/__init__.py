"""Weight multiplicities of simple modules for the classical groups A_n, B_n, C_n, D_n
in positive characteristic: an exact oracle, classification bounds, branching
checks and inductive systems."""
from __future__ import annotations

from .errors import InvalidInput, NotAModuleCharacter, OracleRefusal, UnstableWindow
from .rootsys import GroupId, build_root_system, delta
from .weights import omega, parse_weight, pdeg, steinberg_decompose
from .chars import FormalCharacter, frobenius_twist, known_simple_char, tensor
from .oracle import DEFAULT_LIMITS, OracleLimits, freudenthal_char, simple_char, wdeg_oracle
from .classify import in_omega, in_omega_p, kleshchev_f, wdeg_verdict
from .branching import decompose, irr_k, levi_restrict_check, restrict_char, verify_lemma
from .inductive import bwm_check, enumerate_bwm, generate, parse_descriptor, realize

__version__ = "0.1.0"

__all__ = [
    "InvalidInput", "NotAModuleCharacter", "OracleRefusal", "UnstableWindow",
    "GroupId", "build_root_system", "delta",
    "omega", "parse_weight", "pdeg", "steinberg_decompose",
    "FormalCharacter", "frobenius_twist", "known_simple_char", "tensor",
    "DEFAULT_LIMITS", "OracleLimits", "freudenthal_char", "simple_char", "wdeg_oracle",
    "in_omega", "in_omega_p", "kleshchev_f", "wdeg_verdict",
    "decompose", "irr_k", "levi_restrict_check", "restrict_char", "verify_lemma",
    "bwm_check", "enumerate_bwm", "generate", "parse_descriptor", "realize",
]
