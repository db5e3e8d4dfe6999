"""Tower fragments, closures, fixed square classes and the verification suites."""
from .closure import (
    GaloisWitness,
    construct_d4_witness,
    d4_witness_from_point,
    galois_closure_quadratic,
    is_quadratic_ext_galois,
    permutation_action,
)
from .fragment import FragmentError, TowerFragment, parse_fragment
from .harness import (
    SUITES,
    example1_suite,
    finite_levels_check,
    groups_suite,
    lemma3_check,
    lemma3_samples,
    lemmas_suite,
    prop1_suite,
    prop2_suite,
    run_suites,
)
from .kummer import (
    KummerData,
    closure_step_check,
    j1_fixed_classes,
    kummer_data,
    lemma1_check,
    lemma2_check,
    prop1_check,
    prop1_samples,
)
from .report import Check, Report, SampleResult
from .witnesses import (
    ZETA32_PLUS_MINPOLY,
    classify_field,
    cyclotomic_witness,
    finite_tower_levels,
    function_field_d4,
)


def lemma12_check(fragment, L=None, sample_b=None) -> Report:
    """Both inclusion checks on one fragment."""
    rep = Report()
    rep.add(lemma1_check(fragment, L, sample_b))
    rep.add(lemma2_check(fragment, L))
    return rep


__all__ = [
    "GaloisWitness",
    "construct_d4_witness",
    "d4_witness_from_point",
    "galois_closure_quadratic",
    "is_quadratic_ext_galois",
    "permutation_action",
    "SUITES",
    "example1_suite",
    "finite_levels_check",
    "groups_suite",
    "lemma3_check",
    "lemma3_samples",
    "lemmas_suite",
    "prop1_suite",
    "prop2_suite",
    "run_suites",
    "KummerData",
    "closure_step_check",
    "j1_fixed_classes",
    "kummer_data",
    "lemma1_check",
    "lemma2_check",
    "prop1_check",
    "prop1_samples",
    "ZETA32_PLUS_MINPOLY",
    "classify_field",
    "cyclotomic_witness",
    "finite_tower_levels",
    "function_field_d4",
    "FragmentError",
    "TowerFragment",
    "parse_fragment",
    "Check",
    "Report",
    "SampleResult",
    "lemma12_check",
]
