"""Congruences, swings and fork constructions for slim planar semimodular lattices."""

from .canon import canonical_digest, canonical_form
from .catalog import boolean_square, m3, n5, s7
from .congruence import (
    Congruence, JiPoset, con_lattice, congruence_generated, edge_collapse_masks, ji_con_poset,
    principal_congruence,
)
from .construct import (
    ConstructionLog, build, chain, enumerate_sr, find_cell, fork_site, grid, insert_fork, random_sr,
)
from .diagram import (
    Diagram, FourCell, PrimeInterval, four_cells, is_rectangular, is_semimodular, is_slim, is_sps,
    is_sr, validate_planar, wide_elements,
)
from .harness import VerifyConfig, check_3p3c, check_two_cover, run_checks, verify_family
from .latfile import format_lat, parse_lat, read_lat, write_lat
from .poset import R3, Lattice, Poset, as_lattice, close_order, cover_preserving_embedding
from .svg import export_svg
from .swing import (
    covering_witness, equality_witness, peak_sublattices, swing, swing_collapses, swing_reachable,
    swing_witnesses, threec_relations, v_lemma_check, v_relations, w_relations,
)

__version__ = "0.1.0"
