"""Edge 3-colourings of triangulated 3-spheres with all edge degrees even."""
from ._accel import NUMBA_ENABLED
from .complex import (DualGraph, EdgeDegrees, GluingTable, LinkGraph, ManifoldReport, Triangulation3,
                      TwoComplex, build_triangulation, dual_graph, edge_degrees, link_graph,
                      two_skeleton, verify_closed_3manifold)
from .linegraph import (CycleCheck, CycleWitness, DirectedLineGraph, FaceOrientations, LineGraph,
                        TetOrientations, directed_line_graph, effective_length,
                        fundamental_cycle_check, induce_face_orientations, orient_tetrahedra,
                        spatial_line_graph, tetrahedron_cycles)
from .colouring import (BruteForceResult, ColouringCertificate, ConflictCycle, EdgeColouring, OddEdge,
                        VertexColouring4, brute_force_edge_colourings, colour_edges,
                        edge3_from_vertex4, heawood_colour_link, integrate_potential,
                        vertex4_from_edge3, verify_edge_colouring, verify_vertex_colouring)
from .pachner import PachnerMove, applicable_moves, apply_pachner
from .generators import (RegluingSpec, barycentric_subdivision, canonical, counterexample_search,
                         random_s3, twisted_reglue)
from .fileio import parse_any, parse_gluing_file, serialize_any, serialize_gluing_file

__version__ = "0.1.0"
