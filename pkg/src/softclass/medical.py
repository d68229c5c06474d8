"""Symptom-to-cause knowledge transform for a single patient case.

The patient's complaints form a soft set over symptoms graded by
importance.  Two look-up tables map each symptom to a probable cause and
each importance grade to a treatment preference; the soft image of the
complaint under those tables is the system's first diagnostic output.

Greek and primed symbols are stored as ASCII names; ``LEGEND`` holds the
human-readable meaning of every name.
"""

from __future__ import annotations

from .mapping import ClassMapping, image, validate_mapping
from .softset import Context, SoftSet, validate_soft_set

SYMPTOMS = {
    "b": "burning in stomach",
    "h": "headache",
    "s": "sleeplessness",
    "c": "semi-conscious sleep",
    "j": "joint pain",
    "p": "backbone pain",
    "d": "depression",
    "a": "anxiety",
}
IMPORTANCE = {"e1": "high importance", "e2": "medium importance", "e3": "low importance"}
CAUSES = {
    "alpha": "acidity",
    "beta": "blood pressure",
    "gamma": "fatigue",
    "delta": "wrong posture",
    "lambda": "depression",
    "mu": "mood disorder",
}
PREFERENCE = {"e1p": "infrequent high potency", "e2p": "frequent low potency"}

LEGEND = {**SYMPTOMS, **IMPORTANCE, **CAUSES, **PREFERENCE}

SYMPTOM_CLASS = Context(SYMPTOMS, IMPORTANCE)
CAUSE_CLASS = Context(CAUSES, PREFERENCE)

# The importance table has no entry for e3 (low importance).
U_TABLE = {
    "b": "alpha", "h": "beta", "s": "alpha", "c": "gamma",
    "j": "alpha", "p": "delta", "d": "mu", "a": "mu",
}
P_TABLE = {"e1": "e1p", "e2": "e2p"}

PATIENT = {
    "e1": ["b", "h", "s"],
    "e2": ["c"],
    "e3": ["j", "p", "d", "a"],
}


def knowledge_mapping(mode: str = "partial") -> ClassMapping:
    return validate_mapping(SYMPTOM_CLASS, CAUSE_CLASS, U_TABLE, P_TABLE, mode)


def patient_case() -> SoftSet:
    return validate_soft_set(SYMPTOM_CLASS, PATIENT)


def render(soft: SoftSet, legend: dict[str, str] = LEGEND) -> list[str]:
    """One ``attribute = {members}`` line per parameter, using display names."""
    lines = []
    for attr, value in soft.items:
        members = ", ".join(legend.get(x, x) for x in sorted(value))
        lines.append(f"{legend.get(attr, attr)} = {{{members}}}")
    return lines


def demo_medical(mode: str = "partial") -> tuple[SoftSet, list[str]]:
    """Diagnose the built-in case; strict mode raises ``PartialAttributeMap``."""
    f = knowledge_mapping(mode)
    result = image(f, patient_case(), "raw")
    return result, render(result)
