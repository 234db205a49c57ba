"""locfree: exact verification toolkit for free-by-cyclic group constructions.

Submodules:

- ``words``: free-group word algebra over single-letter alphabets
- ``stallings``: folded subgroup graphs, membership, endomorphism analysis
- ``presentations``: parser, Tietze engine, HNN recognition, semidirect forms
- ``abelian``: Smith normal form and direct limits of integer matrices
- ``smallcancel``: symmetrized piece analysis, metric condition checks
- ``morse``: height profiles, links, kernel freeness certificates
- ``verify``: the bundled end-to-end verification commands
"""

from .words import (Alphabet, CyclicWord, build_W, conjugate, cyclic_reduce,
                    exponent_sum, invert, make_weights, multiply, reduce_word,
                    substitute)
from .presentations import (FreeAuto, FreeEndo, Presentation, apply_tietze,
                            make_gs, make_prop1, make_prop2_target,
                            one_relator_form, parse, recognize_ascending_hnn,
                            verify_automorphism)
from .stallings import (SubgroupGraph, analyze_endomorphism,
                        graph_from_generators, separability_witness)

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "CyclicWord", "FreeAuto", "FreeEndo", "Presentation",
    "SubgroupGraph", "analyze_endomorphism", "apply_tietze", "build_W",
    "conjugate", "cyclic_reduce", "exponent_sum", "graph_from_generators",
    "invert", "make_gs", "make_prop1", "make_prop2_target", "make_weights",
    "multiply", "one_relator_form", "parse", "recognize_ascending_hnn",
    "reduce_word", "separability_witness", "substitute", "verify_automorphism",
]
