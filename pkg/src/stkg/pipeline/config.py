"""Pipeline configuration: dataclass defaults < TOML file < command-line flags."""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from datetime import date
from pathlib import Path
from typing import Any, Dict, List, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from ..hexgrid.grid import DEFAULT_WORLD_MAP, GridConfig, parse_bbox
from ..join.geohash import MAX_PRECISION, MIN_PRECISION, PrecisionOutOfRange
from ..kg.hierarchy import DEFAULT_HIERARCHY_PATH

OUTPUT_FORMATS = ("csv", "nquads", "both")


class ConfigError(ValueError):
    pass


@dataclass
class PipelineConfig:
    inputs: List[Path] = field(default_factory=list)
    out: Path = Path("out")
    resolution: int = 8
    compact: bool = False
    bbox: Optional[str] = None
    region: Optional[str] = None
    format: str = "csv"
    common_tags: Path = DEFAULT_HIERARCHY_PATH
    date: Optional[date] = None
    geohash_precision: int = 7
    workers: int = 1
    world_map: Path = DEFAULT_WORLD_MAP

    def __post_init__(self):
        self.inputs = [Path(p) for p in self.inputs]
        self.out = Path(self.out)
        self.common_tags = Path(self.common_tags)
        self.world_map = Path(self.world_map)
        if isinstance(self.date, str):
            try:
                self.date = date.fromisoformat(self.date)
            except ValueError:
                raise ConfigError(f"date must be YYYY-MM-DD, got {self.date!r}") from None
        if self.format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be one of {OUTPUT_FORMATS}, got {self.format!r}")
        if not MIN_PRECISION <= self.geohash_precision <= MAX_PRECISION:
            raise PrecisionOutOfRange(f"geohash precision must be in [1, 12], got {self.geohash_precision}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")

    def grid_config(self) -> GridConfig:
        region = parse_bbox(self.bbox) if self.bbox else self.region
        return GridConfig(self.resolution, self.compact, region, self.world_map)

    @property
    def formats(self) -> List[str]:
        return ["csv", "nquads"] if self.format == "both" else [self.format]

    # output layout
    @property
    def osm_dir(self) -> Path:
        return self.out / "osm"

    @property
    def grid_path(self) -> Path:
        return self.out / "grid" / "grid.csv"

    @property
    def kg_dir(self) -> Path:
        return self.out / "kg"


def load_toml(path: Path) -> Dict[str, Any]:
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    data = data.get("pipeline", data)
    known = {f.name for f in fields(PipelineConfig)}
    out = {}
    for k, v in data.items():
        key = k.replace("-", "_")
        if key not in known:
            raise ConfigError(f"unknown config key {k!r} in {path}")
        out[key] = v
    return out


def make_config(file_values: Dict[str, Any], flag_values: Dict[str, Any]) -> PipelineConfig:
    """Merge config-file values with flags; flags set to ``None`` do not override."""
    merged = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    return PipelineConfig(**merged)
