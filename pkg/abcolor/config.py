from pydantic import BaseModel, Field
from typing import Literal, Optional


class Budget(BaseModel):
    """Search budget for the exact solver"""

    max_nodes: int = Field(default=10_000_000, gt=0, description="Maximum search nodes before giving up")
    time_limit_s: Optional[float] = Field(default=None, gt=0, description="Optional wall-clock limit (seconds)")


class SolverConfig(BaseModel):
    """Configuration for the exact (a,b)-coloring search"""

    budget: Budget = Field(default_factory=Budget)
    order: Literal["square-degree"] = Field(default="square-degree", description="Static branching order heuristic")
    propagate: bool = Field(default=True, description="Assign singleton domains eagerly")
    progress_every: int = Field(default=1_000_000, gt=0, description="Debug log interval (search nodes)")


class ColorerConfig(BaseModel):
    """Configuration for the constructive colorers"""

    compact: bool = Field(default=True, description="Demote D2 vertices to a free D1 class after coloring")
    n_jobs: int = Field(default=1, description="joblib workers for per-part dispatch (-1 = all cores)")
    oracle: Budget = Field(
        default_factory=lambda: Budget(max_nodes=2_000_000),
        description="Budget for the exact 3-coloring used inside oct_for_cluster",
    )
    tf_girth: int = Field(default=4, ge=3, description="Girth passed to vc_outerplanar in the outerplanar colorer")


class RunConfig(BaseModel):
    """Master configuration for one CLI run"""

    solver: SolverConfig = Field(default_factory=SolverConfig)
    colorer: ColorerConfig = Field(default_factory=ColorerConfig)
    seed: int = Field(default=42, description="Seed for every random generator")
    enum_cap: int = Field(default=100_000, gt=0, description="Maximum colorings enumerated by profile-obstructions")

    class Config:
        json_schema_extra = {
            "example": {
                "solver": {"budget": {"max_nodes": 100000}},
                "colorer": {"n_jobs": 4},
                "seed": 7,
            }
        }


# Preset configurations
PRESET_CONFIGS = {
    "default": RunConfig(),

    "quick": RunConfig(
        solver=SolverConfig(budget=Budget(max_nodes=100_000)),
        colorer=ColorerConfig(oracle=Budget(max_nodes=100_000)),
        enum_cap=10_000,
    ),

    "thorough": RunConfig(
        solver=SolverConfig(budget=Budget(max_nodes=100_000_000)),
        colorer=ColorerConfig(oracle=Budget(max_nodes=20_000_000)),
        enum_cap=1_000_000,
    ),
}


def get_preset(name: str) -> RunConfig:
    """Return a deep copy of a preset so callers may mutate it."""
    if name not in PRESET_CONFIGS:
        raise ValueError(f"Unknown preset '{name}'. Available: {sorted(PRESET_CONFIGS)}")
    return PRESET_CONFIGS[name].model_copy(deep=True)
