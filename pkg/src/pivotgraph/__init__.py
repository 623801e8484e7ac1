"""pivotgraph: bit-packed small-graph toolkit for pivot-minor algebra,
universal-host certificates, mass coherence sweeps, and proof-object
validators."""

__version__ = "0.1.0"

from .canon import CanonicalForm, canonical_form, enumerate_graphs, is_isomorphic, isomorphism
from .codec import decode_edge_list, decode_graph6, encode_edge_list, encode_graph6
from .coherence import (AnticompleteBest, CoherenceVerdict, EhResult, Violation,
                        check_coherent, check_focused, check_r_coherent, eh_ratio,
                        is_dominant, max_anticomplete_pair)
from .embed import induced_embedding
from .errors import (BudgetExhausted, InvalidPlan, InvalidSet, MalformedGraph6,
                     MissingVertex, NoProgress, NotAnEdge, Oversize, PivotGraphError,
                     PreconditionViolated)
from .graphs import Graph, PairRelation, Relation, pair_relation
from .mass import MassedGraph, MassKind, chromatic_number, massed_graph_from_json, massed_graph_to_json
from .pivots import (ApplyResult, Delete, OrbitResult, Pivot, PivotWitness, VerifyVerdict,
                     apply_witness, find_pivot_minor, format_witness, parse_witness, pivot,
                     pivot_orbit, verify_witness)
from .searches import Assembly, FuzzyPath, assemble_pfos, find_fuzzy_odd_path
from .structures import (CaterpillarVerdict, Frame, Ladder, Realization, StructureVerdict,
                         Tick, TickClassification, classify_tick, is_caterpillar, is_r_centre,
                         proof_object_from_json, proof_object_to_json, validate_frame,
                         validate_ladder, validate_realization, validate_tick)
from .subdivide import (BranchMap, EdgePlan, Fuzz, FuzzyPathVerdict, PfosEmbedding,
                        PfosVerdict, SubdivisionPlan, build_from_plan, build_pfos,
                        contains_induced_pfos, fillet, is_fuzzy_odd_path, is_linear_forest,
                        is_pfos, path_replacement, plan_from_json, plan_to_json,
                        uniform_subdivision)
from .universal import (UniversalKind, default_mod3_plan, default_pfos_plan,
                        universal_host_and_witness)
