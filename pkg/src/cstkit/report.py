"""The per-input analysis report shared by every front-end path."""

from dataclasses import dataclass, field

from . import __version__

OPEN_QUESTION_WELLSPLIT_CHARP = {
    "id": "wellsplit-charp-generation",
    "summary": (
        "In characteristic p with local diagonalizable part, the pseudo-reflections found among "
        "diagonalizable subgroups of the kernel and among etale coordinate permutations can generate "
        "a proper subgroup even though the invariant ring is polynomial. Either generation has to be "
        "read over all base changes (scheme-valued conjugates of the etale reflections sweep out more "
        "of the group), or the two searched families miss subgroup schemes. The generated subgroup of "
        "a stable group is normal, while the subgroup generated by the etale reflections alone is not "
        "conjugation-robust here, which favours the first reading. Both verdicts are reported unchanged."
    ),
}


@dataclass
class AnalysisReport:
    kind: str
    input: dict
    pseudo_reflection_count: int
    generated_subgroup: dict
    criterion_verdict: bool
    oracle_verdict: bool
    oracle: dict
    limits: dict
    warnings: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    open_question: dict = None

    def __post_init__(self):
        self.agreement = bool(self.criterion_verdict) == bool(self.oracle_verdict)

    def to_json(self):
        out = {
            "kind": self.kind,
            "input": self.input,
            "pseudo_reflection_count": self.pseudo_reflection_count,
            "generated_subgroup": self.generated_subgroup,
            "criterion_verdict": {"generated_by_pseudo_reflections": self.criterion_verdict},
            "oracle_verdict": {"polynomial": self.oracle_verdict, **self.oracle},
            "agreement": self.agreement,
            "details": self.details,
            "limits": self.limits,
            "warnings": self.warnings,
        }
        if self.open_question is not None:
            out["open_question"] = self.open_question
        return out


def provenance(limits, seed=None):
    out = {"cstkit_version": __version__, "limits": limits}
    if seed is not None:
        out["seed"] = seed
    return out
