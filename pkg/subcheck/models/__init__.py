"""Data models for preference lists, verdicts and reports."""
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from subcheck.utils import AltSet, SetLike, as_mask, iter_indexes


class Outcome(str, Enum):
    """Checker outcome."""
    SUBSTITUTABLE = "substitutable"
    NOT_SUBSTITUTABLE = "not_substitutable"
    NOT_COHERENT = "not_coherent"


class CheckerMode(str, Enum):
    """How the fast checker treats incomplete lists."""
    FIGURE1 = "figure1"
    WITNESS = "witness"


class Algorithm(str, Enum):
    """Procedure that produced a verdict."""
    FAST = "fast"
    NAIVE = "naive"
    BRUTE = "brute"


class GenKind(str, Enum):
    """Instance generator family."""
    RESPONSIVE = "responsive"
    COMPLETE_COHERENT = "complete_coherent"
    RANDOM_COHERENT = "random_coherent"


class Universe(BaseModel):
    """Ordered set of named alternatives; index order is first appearance."""
    model_config = ConfigDict(frozen=True)

    alternatives: Tuple[str, ...] = ()

    _index: Dict[str, int] = PrivateAttr(default_factory=dict)

    @field_validator("alternatives")
    @classmethod
    def _check_names(cls, names: Tuple[str, ...]) -> Tuple[str, ...]:
        seen = set()
        for name in names:
            if not name or any(ch.isspace() for ch in name):
                raise ValueError(f"invalid alternative name: {name!r}")
            if name == "-" or name.startswith("#"):
                raise ValueError(f"reserved token used as alternative name: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate alternative name: {name!r}")
            seen.add(name)
        return names

    def model_post_init(self, __context) -> None:
        self._index = {name: i for i, name in enumerate(self.alternatives)}

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @property
    def full(self) -> int:
        return (1 << self.m) - 1

    def index(self, name: str) -> int:
        """Universe index of ``name``; raises ``KeyError`` if unknown."""
        return self._index[name]

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def mask_of(self, names: Sequence[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self._index[name]
        return mask

    def set_of(self, names: Sequence[str]) -> AltSet:
        return AltSet(self.mask_of(names))

    def names_of(self, value: SetLike) -> List[str]:
        """Names of the members of a set, sorted by universe index."""
        return [self.alternatives[i] for i in iter_indexes(as_mask(value))]

    def format_set(self, value: SetLike) -> str:
        names = self.names_of(value)
        return "{" + " ".join(names) + "}" if names else "{}"


class PreferenceList(BaseModel):
    """Ordered list of subsets; rank 0 is the most preferred member."""
    model_config = ConfigDict(frozen=True)

    universe: Universe
    masks: Tuple[int, ...]
    empty_appended: bool = False

    @model_validator(mode="after")
    def _check_members(self) -> "PreferenceList":
        limit = 1 << self.universe.m
        for rank, mask in enumerate(self.masks):
            if mask < 0 or mask >= limit:
                raise ValueError(f"member at rank {rank} uses alternatives outside the universe")
        if 0 not in self.masks:
            raise ValueError("preference list must contain the empty set; build it with normalize()")
        return self

    @property
    def n(self) -> int:
        return len(self.masks)

    @property
    def m(self) -> int:
        return self.universe.m

    @property
    def members(self) -> Tuple[AltSet, ...]:
        return tuple(AltSet(mask) for mask in self.masks)

    def member(self, rank: int) -> AltSet:
        self._check_rank(rank)
        return AltSet(self.masks[rank])

    def prec(self, i: int, j: int) -> bool:
        """True iff the member at rank ``i`` properly precedes rank ``j``."""
        self._check_rank(i)
        self._check_rank(j)
        return i < j

    def rank_of(self, value: SetLike) -> Optional[int]:
        """First rank holding ``value``, or None if it is not a member."""
        mask = as_mask(value)
        for rank, member in enumerate(self.masks):
            if member == mask:
                return rank
        return None

    def _check_rank(self, rank: int) -> None:
        if not 0 <= rank < len(self.masks):
            raise IndexError(f"rank {rank} out of range for list of {len(self.masks)} members")


class Witness(BaseModel):
    """Member pair (X, Y) with X before Y, plus the certifying element x."""
    model_config = ConfigDict(frozen=True)

    x_rank: int = Field(ge=0)
    y_rank: int = Field(ge=0)
    x_elem: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_order(self) -> "Witness":
        if self.x_rank >= self.y_rank:
            raise ValueError("witness requires x_rank < y_rank")
        return self


class Violation(BaseModel):
    """Sets A ⊆ B with an element of f(B) ∩ A missing from f(A)."""
    model_config = ConfigDict(frozen=True)

    a: int = Field(ge=0)
    b: int = Field(ge=0)
    x_elem: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_inclusion(self) -> "Violation":
        if self.a & ~self.b:
            raise ValueError("violation requires A ⊆ B")
        if not (self.a >> self.x_elem) & 1:
            raise ValueError("violation requires x ∈ A")
        return self


class CompletenessFailure(BaseModel):
    """First member whose subset count falls short; required is None when 2^|X| > N."""
    model_config = ConfigDict(frozen=True)

    rank: int
    d_x: int
    required: Optional[int] = None


class CompletenessReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    complete: bool
    per_member_counts: Tuple[int, ...]
    first_failure: Optional[CompletenessFailure] = None


class SensMatrix(BaseModel):
    """Row r holds the mask of alternatives x for which member r is sensitive."""
    model_config = ConfigDict(frozen=True)

    m: int
    rows: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def sens(self, x: int, rank: int) -> bool:
        return (self.rows[rank] >> x) & 1 == 1

    def insensitive(self, rank: int) -> int:
        return ((1 << self.m) - 1) & ~self.rows[rank]


class ChoiceTable(BaseModel):
    """Rank of f(A) for every A ⊆ U, indexed by bitmask."""
    model_config = ConfigDict(frozen=True)

    m: int
    ranks: Tuple[int, ...]

    def rank_of(self, value: SetLike) -> int:
        return self.ranks[as_mask(value)]


class Verdict(BaseModel):
    """Full checker result."""
    model_config = ConfigDict(frozen=True)

    outcome: Outcome
    algorithm: Algorithm
    mode: Optional[CheckerMode] = None
    coherent: bool
    complete: Optional[bool] = None
    witness: Optional[Witness] = None
    violation: Optional[Violation] = None
    incoherent_pair: Optional[Tuple[int, int]] = None
    incompleteness: Optional[CompletenessFailure] = None

    @property
    def substitutable(self) -> bool:
        return self.outcome == Outcome.SUBSTITUTABLE

    def same_certificate(self, other: "Verdict") -> bool:
        """Outcome and witness agree (used for differential checks)."""
        return self.outcome == other.outcome and self.witness == other.witness


class GenSpec(BaseModel):
    """Parameters of a generated instance; identical specs give identical lists."""

    kind: GenKind
    m: int = Field(ge=0)
    q: Optional[int] = None
    n: Optional[int] = None
    seed: int = Field(default=0, ge=0, lt=1 << 64)

    @model_validator(mode="after")
    def _check_kind(self) -> "GenSpec":
        if self.kind == GenKind.RESPONSIVE:
            if self.q is None or not 1 <= self.q <= self.m:
                raise ValueError(f"responsive lists need 1 <= q <= m (m={self.m}, q={self.q})")
        elif self.kind == GenKind.RANDOM_COHERENT:
            if self.n is None or not 0 <= self.n <= (1 << self.m):
                raise ValueError(f"random coherent lists need 0 <= n <= 2^m (m={self.m}, n={self.n})")
        return self

    def describe(self) -> str:
        q = "-" if self.q is None else self.q
        n = "-" if self.n is None else self.n
        return f"kind={self.kind.value} m={self.m} q={q} n={n} seed={self.seed}"


class WitnessJson(BaseModel):
    X: List[str]
    Y: List[str]
    x: str


class ViolationJson(BaseModel):
    A: List[str]
    B: List[str]
    x: str


class ReportJson(BaseModel):
    """JSON report printed by ``subcheck check --json``."""
    verdict: Outcome
    coherent: bool
    complete: Optional[bool] = None
    n: int
    universe_size: int
    empty_appended: bool
    algorithm: Algorithm
    mode: CheckerMode
    witness: Optional[WitnessJson] = None
    violation: Optional[ViolationJson] = None
    elapsed_ns: int

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "verdict": "not_substitutable",
                "coherent": True,
                "complete": False,
                "n": 6,
                "universe_size": 4,
                "empty_appended": True,
                "algorithm": "fast",
                "mode": "witness",
                "witness": {"X": ["a", "b"], "Y": ["c"], "x": "b"},
                "violation": {"A": ["b", "c"], "B": ["a", "b", "c"], "x": "b"},
                "elapsed_ns": 41250,
            }
        }
    )

    @classmethod
    def from_verdict(
        cls, plist: PreferenceList, verdict: Verdict, mode: CheckerMode, elapsed_ns: int
    ) -> "ReportJson":
        universe = plist.universe
        witness = None
        if verdict.witness is not None:
            w = verdict.witness
            witness = WitnessJson(
                X=universe.names_of(plist.masks[w.x_rank]),
                Y=universe.names_of(plist.masks[w.y_rank]),
                x=universe.alternatives[w.x_elem],
            )
        violation = None
        if verdict.violation is not None:
            v = verdict.violation
            violation = ViolationJson(
                A=universe.names_of(v.a),
                B=universe.names_of(v.b),
                x=universe.alternatives[v.x_elem],
            )
        return cls(
            verdict=verdict.outcome,
            coherent=verdict.coherent,
            complete=verdict.complete,
            n=plist.n,
            universe_size=plist.m,
            empty_appended=plist.empty_appended,
            algorithm=verdict.algorithm,
            mode=verdict.mode or mode,
            witness=witness,
            violation=violation,
            elapsed_ns=elapsed_ns,
        )


class BenchRow(BaseModel):
    """One timed benchmark repetition."""
    m: int
    N: int
    algorithm: Algorithm
    seed: int
    rep: int
    elapsed_ns: int
    verdict: Outcome

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "m": 8,
                "N": 256,
                "algorithm": "fast",
                "seed": 0,
                "rep": 0,
                "elapsed_ns": 18250000,
                "verdict": "not_substitutable",
            }
        }
    )


class InfoJson(BaseModel):
    """Structural summary printed by ``subcheck info --json``."""
    universe_size: int
    n: int
    empty_appended: bool
    coherent: bool
    incoherent_pair: Optional[Tuple[int, int]] = None
    complete: Optional[bool] = None
    first_failure: Optional[CompletenessFailure] = None
    subset_counts: Optional[List[int]] = None
    pruned_n: int
