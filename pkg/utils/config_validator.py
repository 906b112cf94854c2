import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from pydantic import BaseModel, Field, validator

CYCLE_CAP_ENV = "SFSEL_CYCLE_CAP"


class SolverConfig(BaseModel):
    """Solver configuration schema"""
    cycle_cap: int = Field(1_000_000, gt=0, description="Maximum number of D_R cycles to enumerate")
    merge_cycles: bool = Field(True, description="Pool node sets of cycles whose edge sets are strict subsets")
    merge_equal_edge_sets: bool = Field(False, description="Also pool node sets of cycles with identical edge sets")


class OracleBudget(BaseModel):
    """Limits for the exhaustive solvers"""
    max_feasible_edges: int = Field(20, gt=0, description="Largest feasible-edge count the oracle accepts")
    max_cover_cycles: int = Field(16, gt=0, description="Largest candidate-cycle count for cover enumeration")
    time_limit_s: float = Field(60.0, gt=0, description="Wall-clock limit for one oracle run")


class InstanceParams(BaseModel):
    """Random instance generator parameters"""
    n: int = Field(6, gt=0, description="Number of states (or SCCs for the hierarchy kind)")
    edge_prob: float = Field(0.3, ge=0.0, le=1.0, description="Probability of each candidate state edge")
    io_prob: float = Field(0.6, ge=0.0, le=1.0, description="Probability that a state gets a dedicated input/output")
    cost_prob: float = Field(0.5, ge=0.0, le=1.0, description="Probability that a candidate link is feasible")
    cost_min: int = Field(1, ge=0, description="Smallest drawn cost")
    cost_max: int = Field(10, ge=0, description="Largest drawn cost")
    max_feasible_edges: Optional[int] = Field(None, gt=0, description="Keep at most this many feasible links")
    scc_size: int = Field(1, gt=0, description="Largest SCC size for the hierarchy and backedge kinds")
    shape: str = Field("dag", description="Condensation shape for the backedge kind")
    root_prob: float = Field(0.2, ge=0.0, le=1.0, description="Probability that a forest SCC starts a new tree")
    fractional: bool = Field(False, description="Draw real-valued costs instead of integers")

    @validator('shape')
    def validate_shape(cls, v):
        allowed_shapes = ['dag', 'forest']
        if v not in allowed_shapes:
            raise ValueError(f"Shape must be one of {allowed_shapes}")
        return v

    @validator('cost_max')
    def validate_cost_range(cls, v, values):
        if 'cost_min' in values and v < values['cost_min']:
            raise ValueError("cost_max must be >= cost_min")
        return v


class LoggingConfig(BaseModel):
    """Logging configuration schema"""
    level: str = Field("WARNING", description="Root log level for the command line")

    @validator('level')
    def validate_level(cls, v):
        allowed_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if v.upper() not in allowed_levels:
            raise ValueError(f"Log level must be one of {allowed_levels}")
        return v.upper()


class BenchCase(BaseModel):
    """One group of bench rows"""
    kind: str = Field(..., description="Random instance kind")
    algos: List[str] = Field(..., description="Solvers to run on each instance")
    seeds: List[int] = Field(..., description="Generator seeds, one instance per seed")
    params: InstanceParams = Field(default_factory=InstanceParams)

    @validator('kind')
    def validate_kind(cls, v):
        allowed_kinds = ['dag', 'selfdamped', 'backedge', 'hierarchy']
        if v not in allowed_kinds:
            raise ValueError(f"Instance kind must be one of {allowed_kinds}")
        return v

    @validator('algos')
    def validate_algos(cls, v):
        allowed_algos = ['potential', 'backedge', 'hierarchical', 'oracle', 'auto']
        unknown = [a for a in v if a not in allowed_algos]
        if unknown or not v:
            raise ValueError(f"Algorithms must be a non-empty subset of {allowed_algos}")
        return v


class BenchSuiteConfig(BaseModel):
    """Bench suite schema"""
    name: str = Field(..., description="Suite name used in the output files")
    cases: List[BenchCase] = Field(..., description="Case groups in run order")
    oracle: OracleBudget = Field(default_factory=OracleBudget)

    def rows(self) -> List[Tuple[str, int, InstanceParams, str]]:
        """Expand cases into (kind, seed, params, algo) rows in suite order"""
        expanded = []
        for case in self.cases:
            for seed in case.seeds:
                for algo in case.algos:
                    expanded.append((case.kind, seed, case.params, algo))
        return expanded


class ConfigValidator:
    """Validates configuration files and direct configurations"""

    @staticmethod
    def validate_solver_config(config: Dict[str, Any]) -> SolverConfig:
        """Validate solver configuration"""
        return SolverConfig(**config)

    @staticmethod
    def validate_oracle_budget(config: Dict[str, Any]) -> OracleBudget:
        """Validate oracle budget"""
        return OracleBudget(**config)

    @staticmethod
    def validate_instance_params(config: Dict[str, Any]) -> InstanceParams:
        """Validate generator parameters"""
        return InstanceParams(**config)

    @staticmethod
    def validate_logging_config(config: Dict[str, Any]) -> LoggingConfig:
        """Validate logging configuration"""
        return LoggingConfig(**config)

    @staticmethod
    def validate_bench_suite(config: Dict[str, Any]) -> BenchSuiteConfig:
        """Validate a bench suite"""
        return BenchSuiteConfig(**config)

    @staticmethod
    def load_and_validate_yaml(config_path: str) -> Dict[str, Any]:
        """Load and validate a solver YAML configuration file"""
        config_path = Path(config_path)
        if not config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        with open(config_path, 'r') as f:
            config = yaml.safe_load(f) or {}

        validated_config = {}
        if 'solver' in config:
            validated_config['solver'] = ConfigValidator.validate_solver_config(config['solver'])
        if 'oracle' in config:
            validated_config['oracle'] = ConfigValidator.validate_oracle_budget(config['oracle'])
        if 'generator' in config:
            validated_config['generator'] = ConfigValidator.validate_instance_params(config['generator'])
        if 'logging' in config:
            validated_config['logging'] = ConfigValidator.validate_logging_config(config['logging'])

        return validated_config

    @staticmethod
    def load_bench_suite(suite_path: str) -> BenchSuiteConfig:
        """Load and validate a bench suite YAML file"""
        suite_path = Path(suite_path)
        if not suite_path.exists():
            raise FileNotFoundError(f"Bench suite not found: {suite_path}")

        with open(suite_path, 'r') as f:
            return ConfigValidator.validate_bench_suite(yaml.safe_load(f) or {})

    @staticmethod
    def load_solver_config(config_path: Optional[str] = None, env: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
        """Load the solver YAML (defaults when absent) and apply the cycle-cap override"""
        if config_path is not None:
            validated_config = ConfigValidator.load_and_validate_yaml(config_path)
        else:
            validated_config = {}
        validated_config.setdefault('solver', SolverConfig())
        validated_config.setdefault('oracle', OracleBudget())
        validated_config.setdefault('generator', InstanceParams())
        validated_config.setdefault('logging', LoggingConfig())

        env = os.environ if env is None else env
        raw_cap = env.get(CYCLE_CAP_ENV)
        if raw_cap:
            try:
                cap = int(raw_cap)
            except ValueError:
                raise ValueError(f"{CYCLE_CAP_ENV} must be a positive integer, got {raw_cap!r}") from None
            solver = validated_config['solver']
            validated_config['solver'] = SolverConfig(**{**solver.dict(), 'cycle_cap': cap})

        return validated_config
