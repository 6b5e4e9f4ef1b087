"""Exact toolkit for Ramsey-Turán numbers of triangle-free graphs."""

__version__ = "0.1.0"

from rt_lab.graph import Graph, Params, build_graph, members, vset  # noqa: E402
from rt_lab.graph6 import decode as from_graph6, encode as to_graph6  # noqa: E402
from rt_lab.constructions import (  # noqa: E402
    BlowupSpec,
    andrasfai,
    blowup,
    bounds,
    canonical_blowup,
    g_formula,
    perturb_canonical,
)
from rt_lab.independence import alpha, enumerate_max_independent_sets, is_independent  # noqa: E402
from rt_lab.fortress import (  # noqa: E402
    build_fortress,
    check_mould,
    find_imprint,
    find_mould,
    fortress_checks,
    mould_stats,
)
from rt_lab.symmetrize import imprint_to_mould, max_matching, select_B, sym, sym_checked  # noqa: E402
from rt_lab.extremal import ex_exact, extremal_properties, verify_formulas  # noqa: E402

__all__ = [
    "Graph", "Params", "build_graph", "members", "vset", "from_graph6", "to_graph6",
    "BlowupSpec", "andrasfai", "blowup", "bounds", "canonical_blowup", "g_formula",
    "perturb_canonical", "alpha", "enumerate_max_independent_sets", "is_independent",
    "build_fortress", "check_mould", "find_imprint", "find_mould", "fortress_checks",
    "mould_stats", "imprint_to_mould", "max_matching", "select_B", "sym", "sym_checked",
    "ex_exact", "extremal_properties", "verify_formulas",
]
