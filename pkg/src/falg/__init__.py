"""Finitary algebra engine: signatures, term monads, congruence closure, finite
algebras, equational theories, the monoid/monad adjunction and chain colimits."""

from .adjunction import (
    check_triangle_identities,
    counit_component,
    induced_multiplication,
    is_monoid_isomorphism,
    monad_from_monoid,
    monoid_from_monad,
    unit_nu,
)
from .algebra import (
    AlgebraMorphism,
    EvaluationMorphism,
    FiniteAlgebra,
    check_homomorphism,
    evaluate,
    ffp_quotient_witness,
    image_factorization,
    is_generated_by,
    kernel_pairs_to_depth,
    saturate,
    subalgebra_closure,
)
from .chain import chain_stage
from .colimits import OmegaChain, chain_colimit, essential_uniqueness_check, fg_witness_mono, fp_witness
from .congruence import (
    CongruenceIndex,
    GroundPresentation,
    closure_build,
    enumerate_classes,
    finite_generation_witness,
    naive_closure_oracle,
    word_equal,
)
from .equational import Equation, EquationalPresentation, bounded_theory_congruence, equation, satisfies
from .errors import *  # noqa: F401,F403
from .fileformat import PresentationFile, parse, print_file
from .monads import FiniteMonoid, FinitePowerset, FreeMSet, IdentityMonad, PresentedMonad, TermMonad
from .signature import ONE, FinSet, Signature, standard_set
from .terms import App, Term, Var, app, enumerate_terms, flatten, format_term, map_vars, parse_term, strength, substitute

__version__ = "0.1.0"
