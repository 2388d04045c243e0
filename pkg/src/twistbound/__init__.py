"""Conductor bounds for character twists of cusp forms.

The library covers four connected calculations:

* exact factored-integer arithmetic for conductors (:mod:`.factored`);
* the local twist-conductor calculus at finite places (:mod:`.local`);
* an exact Dirichlet-character engine over the integers (:mod:`.dirichlet`);
* the global divisibility bound Q^n | N1*N2 with its lcm refinements and
  sharpness certificates (:mod:`.bound`);
* archimedean conductors, gamma shifts and the analytic-conductor
  comparison with explicit constants (:mod:`.arch`);
* a twist-equivalence scanner over Hecke-eigenvalue tables (:mod:`.scan`).

``python -m twistbound.cli`` (or the ``twistbound`` script) exposes the
same functionality as subcommands; ``twistbound verify`` runs every
module's invariant sweep.
"""

from .arch import (
    ArchChar,
    ArchRep,
    ComplexParam,
    GlobalCharData,
    GlobalRepData,
    Place,
    RealOneDim,
    RealTwoDim,
    analytic_conductor,
    char_cond,
    claim31_holds,
    cond_rep,
    cond_summand,
    gamma_shift,
    lemma_bound_check,
    theorem_b_check,
    twist_arch,
)
from .bound import (
    BoundMode,
    admissible_moduli,
    extreme_case_lcm,
    extreme_case_product,
    max_admissible,
)
from .dirichlet import (
    DirichletChar,
    RootOfUnity,
    UnitGroupStructure,
    enumerate_characters,
    primitive_characters,
    principal_character,
    unit_group,
)
from .factored import FactoredInteger, divides_pow, divisors, factor, gcd, is_prime, lcm
from .local import (
    ConductorRange,
    DivisionAlgebraRep,
    EsiComponent,
    GenericLocalRep,
    claim32_bound,
    conductor_of_level,
    level_of_conductor,
    norm_level,
    prop3_holds,
    twist_conductor_char,
    twist_conductor_esi,
    twist_conductor_rep,
)
from .scan import (
    EigenvalueTable,
    ScanConfig,
    ScanResult,
    Verdict,
    candidate_characters,
    plant_twist,
    prefilter_abs,
    scan,
)

__version__ = "0.1.0"
