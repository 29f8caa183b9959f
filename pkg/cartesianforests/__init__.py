from .forests import (
    CartesianForest,
    build_forest_naive,
    build_forest_online,
    canonical_sequence,
    forest_key,
    forests_equal,
    validate_forest,
)
from .representations import (
    Representation,
    WindowState,
    WorkCounters,
    parent_distance,
    parent_distance_rtl,
    referent_table,
    skipped_number,
    window_init,
    window_slide,
)
from .matching import DiffKind, MatchResult, approx_match, exact_match, oracle_window_match
from .signatures import Filter, Signature, filtered_match, signature, tau_filter
from .combinatorics import (
    SchroderTree,
    cf_to_parens,
    cf_to_schroder,
    count_forests,
    enumerate_forests,
    iter_forests,
    parens_to_cf,
    schroder_to_cf,
)
from .randgen import GenSpec, composition_sequence, entropy_sequence, uniform_sequence
from .utils import CartesianForestError

__version__ = "0.1.0"


def hello() -> None:
    """
    Just a hello() message/function to confirm you've installed everything!
    """
    print("Welcome to the cartesianforests package! Try `cfmatch selftest` next.")
