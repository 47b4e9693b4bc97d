from .build_kg import MissingIntermediates, build_kg
from .cli import main
from .config import PipelineConfig
from .prepare import prepare_osm
from .stats import GraphStats, compute_stats

__all__ = ["GraphStats", "MissingIntermediates", "PipelineConfig", "build_kg", "compute_stats", "main", "prepare_osm"]
