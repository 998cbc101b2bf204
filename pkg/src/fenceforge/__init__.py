"""Equidistant perimeters, trackable disc fences, and bounded-turn
tracking for planar scenes of line/arc obstacles.

The pipeline: validate a scene, extract the outer perimeter at the
clearance distance, erode the free region to get central paths, build the
fence a gliding disc traces along each, then simulate a constant-speed
bounded-turn vehicle tracking the fence and certify the run secure.
"""

from .bizarre import BizarreVerdict, enumerate_bizarre, is_bizarre
from .config import Config, load_config
from .distance import (RateResult, SceneDistance, dist_to_obstacles,
                       dist_to_perimeter, distance_rate,
                       project_correspondence)
from .dubins import (CarState, SecurityReport, Trajectory, shortest_path,
                     step, track_fence, verify_secure)
from .errors import ConsistencyError, SceneError
from .fences import (CentralPath, DoorStone, ErosionSet, Fence, LoopReport,
                     NestingReport, build_fence, check_nesting,
                     compute_erosion, select_initial_fence, validate_loop)
from .geometry import (Arc, CurveChain, DistanceResult, FramePair,
                       FrenetFrame, IntersectionSet, Line, Vec2, frame_at,
                       intersect, project_point, winding_side)
from .grid import GridOracle, build_grid_oracle
from .offsets import (Ensemble, EnsemblePiece, Perimeter, SourceRef,
                      build_ensemble, extract_perimeter, trimmed_loops)
from .scene import (ClearanceReport, LoopObstacle, PointObstacle, Scene,
                    ValidationReport, check_initial_clearance, validate)

__version__ = "0.1.0"

__all__ = [
    "Arc", "BizarreVerdict", "CarState", "CentralPath", "ClearanceReport",
    "Config", "ConsistencyError", "CurveChain", "DistanceResult",
    "DoorStone", "Ensemble", "EnsemblePiece", "ErosionSet", "Fence",
    "FramePair", "FrenetFrame", "GridOracle", "IntersectionSet", "Line",
    "LoopObstacle", "LoopReport", "NestingReport", "Perimeter",
    "PointObstacle", "RateResult", "Scene", "SceneDistance", "SceneError",
    "SecurityReport", "SourceRef", "Trajectory", "ValidationReport", "Vec2",
    "build_ensemble", "build_fence", "build_grid_oracle", "check_nesting",
    "check_initial_clearance", "compute_erosion", "dist_to_obstacles",
    "dist_to_perimeter", "distance_rate", "enumerate_bizarre",
    "extract_perimeter", "frame_at", "intersect", "is_bizarre",
    "load_config", "project_correspondence", "project_point",
    "select_initial_fence", "shortest_path", "step", "track_fence",
    "trimmed_loops", "validate", "validate_loop", "verify_secure",
    "winding_side",
]
