"""
Pydantic schemas shared by the graph, engine, oracle and analysis packages.

Every value crossing a package boundary (queries, simulation parameters,
traces, reports) is one of these models, so it validates on construction
and serializes to JSON without extra glue.
"""

import math
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Color(str, Enum):
    """Node colors of the D* state machine; `NONE` is the uncolored state."""

    NONE = "none"
    WHITE = "white"
    GREEN = "green"
    RED = "red"
    CLASH = "clash"


MESSAGE_COLORS = (Color.WHITE, Color.GREEN, Color.RED)


class Decision(str, Enum):
    DEPENDENT = "dependent"
    INDEPENDENT = "independent"


class SchedulePolicy(str, Enum):
    RANDOM = "random"
    FIFO = "fifo"
    ADVERSARIAL = "adversarial"


class InitMode(str, Enum):
    SELF = "self"
    CENTRAL = "central"


class EventKind(str, Enum):
    SEND = "send"
    DELIVER = "deliver"
    COLOR_CHANGE = "color-change"
    CLASH = "clash"
    CONTROL = "control"


class DSepQuery(BaseModel):
    """A d-separation query (A ⟂ B | C); A is the green side, B the red side."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"a_set": ["x1", "x2"], "b_set": ["y1", "y2"], "c_set": ["z"]}
        },
    )

    a_set: frozenset[str] = Field(description="Green side of the query")
    b_set: frozenset[str] = Field(description="Red side of the query")
    c_set: frozenset[str] = Field(default=frozenset(), description="Conditioning (white) set")

    @model_validator(mode="after")
    def _check_sets(self) -> "DSepQuery":
        if not self.a_set:
            raise ValueError("A must be nonempty")
        if not self.b_set:
            raise ValueError("B must be nonempty")
        overlaps = (
            (self.a_set & self.b_set)
            | (self.a_set & self.c_set)
            | (self.b_set & self.c_set)
        )
        if overlaps:
            raise ValueError(f"A, B and C must be disjoint; shared: {sorted(overlaps)}")
        return self

    @property
    def members(self) -> frozenset[str]:
        return self.a_set | self.b_set | self.c_set

    def swapped(self) -> "DSepQuery":
        return DSepQuery(a_set=self.b_set, b_set=self.a_set, c_set=self.c_set)


class SimulationParams(BaseModel):
    """Timing and scheduling knobs for one simulated run."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(default=1.0, gt=0, description="Processing-delay upper bound")
    beta: float = Field(default=1.0, gt=0, description="Channel-delay upper bound")
    seed: int = Field(default=0, description="Scheduler randomness seed")
    schedule_policy: SchedulePolicy = Field(default=SchedulePolicy.RANDOM)
    init_mode: InitMode = Field(default=InitMode.SELF)
    source: Optional[str] = Field(default=None, description="Initiator for centralized init")

    @field_validator("alpha", "beta")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("delay bounds must be finite")
        return value

    @model_validator(mode="after")
    def _central_needs_source(self) -> "SimulationParams":
        if self.init_mode == InitMode.CENTRAL and not self.source:
            raise ValueError("centralized initialization requires a source node")
        return self

    @property
    def hop(self) -> float:
        """Worst-case cost of one message hop (delivery plus processing)."""
        return self.alpha + self.beta


class TraceEvent(BaseModel):
    t: float = Field(description="Virtual time")
    step: int = Field(description="Global event index, breaks ties between equal times")
    kind: EventKind
    src: Optional[str] = None
    dst: Optional[str] = None
    payload: Optional[str] = None


class Snapshot(BaseModel):
    t: float
    step: int
    colors: Dict[str, Color]


class Verdict(BaseModel):
    decision: Decision
    clash_node: Optional[str] = None
    clash_time: Optional[float] = None
    equilibrium_time: Optional[float] = None
    quiescence_time: Optional[float] = None

    @model_validator(mode="after")
    def _witness_matches_decision(self) -> "Verdict":
        if self.decision == Decision.DEPENDENT and (
            self.clash_node is None or self.clash_time is None
        ):
            raise ValueError("a dependent verdict needs the clash node and time")
        if self.decision == Decision.INDEPENDENT and self.clash_node is not None:
            raise ValueError("an independent verdict cannot name a clash node")
        return self


class ExecutionTrace(BaseModel):
    """Full record of one run: events, configurations, channel loads, verdict."""

    events: List[TraceEvent] = Field(default_factory=list)
    snapshots: List[Snapshot] = Field(default_factory=list)
    per_channel_counts: Dict[str, int] = Field(
        default_factory=dict,
        description="Color messages per undirected channel, keyed 'u v' with u < v",
    )
    control_messages: int = Field(default=0, description="INITIALIZE/ACK/START messages")
    start_times: Dict[str, float] = Field(
        default_factory=dict, description="START receipt per node (centralized mode only)"
    )
    end_time: float = 0.0
    verdict: Verdict


class EngineOutcome(BaseModel):
    """What any engine hands back to the CLI; oracles carry no trace."""

    engine: str
    decision: Decision
    verdict: Optional[Verdict] = Field(default=None, description="D* verdict with timing")
    trace: Optional[ExecutionTrace] = None
    witness_path: Optional[List[str]] = Field(default=None, description="Oracle witness, if any")


class ControlPhase(BaseModel):
    """Outcome of the broadcast/convergecast initialization on its own."""

    events: List[TraceEvent]
    start_times: Dict[str, float]
    tree_parent: Dict[str, Optional[str]]
    control_messages: int


class QuiescenceReport(BaseModel):
    equilibrium_time: float
    quiescence_time: float
    termination_latency: float
    latency_bound: float
    max_deliveries_after_equilibrium: int
    color_change_after_equilibrium: bool
    ok: bool


class PathMetrics(BaseModel):
    """Path-length quantities feeding the clash-time bounds; `None` means unbounded."""

    l_an: int = Field(ge=0, description="Longest undirected path in the ancestral graph")
    l_an_d: int = Field(ge=0, description="Longest directed path in the ancestral graph")
    l_ij: Dict[str, Dict[str, Optional[int]]] = Field(
        description="Shortest unblocked path length per (a, b) pair, None when all blocked"
    )
    diameter: int = Field(ge=0)
    e_an: int = Field(ge=0, description="Edge count of the ancestral graph")

    @property
    def min_l_ij(self) -> Optional[int]:
        finite = [v for row in self.l_ij.values() for v in row.values() if v is not None]
        return min(finite) if finite else None


class OracleResult(BaseModel):
    separated: bool
    witness_path: Optional[List[str]] = Field(
        default=None, description="An unblocked path from A to B when not separated"
    )

    @model_validator(mode="after")
    def _witness_only_when_dependent(self) -> "OracleResult":
        if self.separated and self.witness_path is not None:
            raise ValueError("a separated result cannot carry a witness path")
        return self


class RefutationModule(BaseModel):
    """Connected subgraph certifying a dependence: active path plus collider-to-C links."""

    model_config = ConfigDict(frozen=True)

    edges: Tuple[Tuple[str, str], ...] = Field(description="Sorted (parent, child) pairs")
    active_path: Tuple[str, ...]
    collider_links: Dict[str, Tuple[str, ...]] = Field(
        description="For each collider on the path, a directed path ending in C"
    )
    l_d: int = Field(ge=0, description="Longest directed path inside the module")
    p_len: int = Field(ge=0, description="Shortest unblocked path inside the module")

    @property
    def size(self) -> int:
        return len(self.edges)


class BoundReport(BaseModel):
    measured_clash_time: float
    alpha: float
    beta: float
    path_bound: float = Field(description="(alpha+beta)·(l_an_d + min l_ij)")
    module_bound: float = Field(description="(alpha+beta)·min over modules of (l_d + p_len)")
    longest_path_bound: float = Field(description="(alpha+beta)·(l_an_d + l_an)")
    minimal_module_edges: int
    within_path_bound: bool
    within_module_bound: bool
    module_bound_tighter: bool

    @property
    def satisfied(self) -> bool:
        return self.within_path_bound and self.within_module_bound and self.module_bound_tighter


class MessageAccount(BaseModel):
    total_messages: int
    total_bits: int
    max_per_channel: int
    confinement_ok: bool
    control_messages: int = 0


class CostModel(BaseModel):
    """Priors, loss rates and worst-case runtimes for the expected-runtime bound."""

    pi_yes: float = Field(ge=0, le=1)
    pi_no: float = Field(ge=0, le=1)
    loss_yes: float = Field(gt=0)
    loss_no: float = Field(gt=0)
    t_yes: float = Field(default=1.0, ge=0)
    t_no: float = Field(default=1.0, ge=0)

    @model_validator(mode="after")
    def _priors_sum_to_one(self) -> "CostModel":
        if not math.isclose(self.pi_yes + self.pi_no, 1.0, abs_tol=1e-9):
            raise ValueError("pi_yes + pi_no must equal 1")
        return self


class RunConfig(BaseModel):
    """Everything one `query`/`bounds` invocation needs."""

    graph_path: str
    a: List[str]
    b: List[str]
    c: List[str] = Field(default_factory=list)
    engine: str = "dstar"
    params: SimulationParams = Field(default_factory=SimulationParams)
    trace_path: Optional[str] = None
    snapshot_dir: Optional[str] = None
    bounds_path: Optional[str] = None
    expect: Optional[str] = Field(default=None, description="'dep' or 'indep'")

    @field_validator("expect")
    @classmethod
    def _expect_values(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in ("dep", "indep"):
            raise ValueError("expect must be 'dep' or 'indep'")
        return value

    def query(self) -> DSepQuery:
        return DSepQuery(a_set=frozenset(self.a), b_set=frozenset(self.b), c_set=frozenset(self.c))
