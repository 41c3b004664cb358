"""Derivations, their checkers, a library of derived rules and synthesis."""
from .checker import ProofSystem, check_nd, infer_conclusion, se_branches
from .derivation import Derivation, Hyp, Judgment, Node, graft, parse_proof, render_proof
from .hilbert import HilbertLine, HilbertProof, check_hilbert, parse_hilbert, render_hilbert
from .library import NAMED, derive_named, named_judgment
from .synth import premise_label, prove, synth_entailment_pd, synth_entailment_pdv

__all__ = [
    "ProofSystem", "check_nd", "infer_conclusion", "se_branches",
    "Derivation", "Hyp", "Node", "Judgment", "graft", "parse_proof", "render_proof",
    "HilbertLine", "HilbertProof", "check_hilbert", "parse_hilbert", "render_hilbert",
    "NAMED", "derive_named", "named_judgment",
    "premise_label", "prove", "synth_entailment_pd", "synth_entailment_pdv",
]
