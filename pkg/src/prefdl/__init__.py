"""Preference models over propositional valuations, priority graphs and
revision operators, with exhaustive checkers for their postulates."""

__version__ = "0.1.0"

from .errors import PrefDLError  # noqa: E402
from .syntax import SymbolTable, parse_formula, parse_prop, to_text, fingerprint  # noqa: E402
from .model import (PreferenceModel, enumerate_models, extension, min_worlds,  # noqa: E402
                    satisfies, validate_model)
from .pgraph import (GroundedPGraph, PGraph, canonical_graph, grounded_induce,  # noqa: E402
                     induced_order, induces, mu, phi_equivalent)
from .dynamics import (DEFAULT_REGISTRY, NATURAL, NATURAL_GRAPH, induction_check,  # noqa: E402
                       natural_revision, natural_revision_graph, relevance_check)
from .postulates import (check_cb, check_cb2_axioms, check_faith,  # noqa: E402
                         demonstrate_plain_graph_gap)
from .kernels import BACKEND  # noqa: E402

__all__ = [
    "BACKEND", "DEFAULT_REGISTRY", "GroundedPGraph", "NATURAL", "NATURAL_GRAPH",
    "PGraph", "PrefDLError", "PreferenceModel", "SymbolTable", "canonical_graph",
    "check_cb", "check_cb2_axioms", "check_faith", "demonstrate_plain_graph_gap",
    "enumerate_models", "extension", "fingerprint", "grounded_induce", "induced_order",
    "induces", "induction_check", "min_worlds", "mu", "natural_revision",
    "natural_revision_graph", "parse_formula", "parse_prop", "phi_equivalent",
    "relevance_check", "satisfies", "to_text", "validate_model",
]
