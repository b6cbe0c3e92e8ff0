"""Presentation-level surgery calculus with certified group checks.

The package builds finitely presented models of 4-manifold complements,
performs torus surgery and symplectic sums as relator bookkeeping, and
certifies the resulting fundamental groups and characteristic numbers
with exact algorithms (coset enumeration, Smith normal form, Tietze
simplification, bounded derivation search).
"""

from .abelian import AbelianGroup, abelianize
from .blocks import (
    BLOCK_IDS,
    make_block,
    mapping_torus_block,
    standard_gluings,
    sym2_block,
    twist_monodromy,
)
from .calculus import (
    CalculusError,
    CharacteristicReport,
    SurgerySpec,
    blow_up,
    certify_trivial_complement,
    characteristic_report,
    fill_surface,
    fill_torus,
    form_signature,
    sum_genus2_amalgam,
    sum_genus2_quotient,
    sum_torus,
    torus_surgery,
)
from .classify import Budget, Certificate, Classification, classify
from .coset import CosetResult, todd_coxeter
from .derive import Derivation, prove_word_trivial
from .models import (
    Exactness,
    GluingMap,
    IntersectionFormRecord,
    ManifoldModel,
    TrackedSurface,
    TrackedTorus,
)
from .presentations import Presentation
from .recipes import (
    Recipe,
    RunReport,
    builtin_recipes,
    geography_scan,
    named_block,
    run_recipe,
)
from .simplify import tietze_simplify
from .words import Word, commutator, parse_word

__all__ = [
    "AbelianGroup", "abelianize", "BLOCK_IDS", "make_block",
    "mapping_torus_block", "standard_gluings", "sym2_block",
    "twist_monodromy", "CalculusError", "CharacteristicReport",
    "SurgerySpec", "blow_up", "certify_trivial_complement",
    "characteristic_report", "fill_surface", "fill_torus",
    "form_signature", "sum_genus2_amalgam", "sum_genus2_quotient",
    "sum_torus", "torus_surgery", "Budget", "Certificate",
    "Classification", "classify", "CosetResult", "todd_coxeter",
    "Derivation", "prove_word_trivial", "Exactness", "GluingMap",
    "IntersectionFormRecord", "ManifoldModel", "TrackedSurface",
    "TrackedTorus", "Presentation", "Recipe", "RunReport",
    "builtin_recipes", "geography_scan", "named_block", "run_recipe",
    "tietze_simplify", "Word", "commutator", "parse_word",
]
