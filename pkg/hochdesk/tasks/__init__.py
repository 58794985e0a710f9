"""
One runner per CLI command. Every runner takes the validated input spec and the
resolved RunOptions and returns a JSON-ready results dict.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..algebra import Weight
from ..errors import CapExceeded, InputError
from ..kernel import D_Q, Derivation


@dataclass
class RunOptions:
    max_degree: Optional[int] = None
    arity: int = 4
    n: Optional[int] = None
    window: int = 6
    cap: int = 200_000
    xi: Derivation = D_Q
    weight: Optional[Weight] = None
    objects: Optional[List[str]] = None
    class_index: Optional[int] = None
    degree_cap: int = 5
    gs_degree_cap: int = 3

    def degree(self, default: int) -> int:
        """--max-degree or the command default, refused above the configured ceiling."""
        value = self.max_degree if self.max_degree is not None else default
        if value < 0:
            raise InputError(f"--max-degree must be non-negative, got {value}")
        if value > self.degree_cap:
            raise CapExceeded(f"--max-degree {value} exceeds the degree cap {self.degree_cap}",
                              {"max_degree": value, "degree_cap": self.degree_cap})
        return value


Runner = Callable[[Any, RunOptions], Dict[str, Any]]


def _registry() -> Dict[str, Tuple[Tuple[str, ...], Runner]]:
    from .categories import run_check_ainf, run_cy_pairing, run_ks_cat, run_npotent
    from .deformations import run_def_class, run_derivation_class
    from .diagrams import run_diagram_algebra, run_gs_class, run_gs_hh, run_scct_check
    from .hochschild import run_cup, run_hh, run_hh_homology
    from .sheaves import run_cech_hh, run_cech_ks, run_hkr_check, run_max_unipotent

    algebras = ("algebra", "tensor")
    return {
        "hh": (algebras + ("ainf",), run_hh),
        "hh-homology": (algebras + ("ainf",), run_hh_homology),
        "cup": (algebras + ("ainf",), run_cup),
        "def-class": (("deformation",), run_def_class),
        "derivation-class": (algebras + ("ainf",), run_derivation_class),
        "gs-hh": (("diagram",), run_gs_hh),
        "gs-class": (("diagram",), run_gs_class),
        "diagram-algebra": (("diagram",), run_diagram_algebra),
        "scct-check": (("diagram",), run_scct_check),
        "check-ainf": (("ainf",), run_check_ainf),
        "ks-cat": (("ainf",), run_ks_cat),
        "npotent": (("ainf",), run_npotent),
        "cy-pairing": (("ainf",), run_cy_pairing),
        "cech-hh": (("cech",), run_cech_hh),
        "cech-ks": (("cech",), run_cech_ks),
        "max-unipotent": (("cech",), run_max_unipotent),
        "hkr-check": (("cech",), run_hkr_check),
    }


COMMANDS: Tuple[str, ...] = (
    "hh", "hh-homology", "cup", "def-class", "derivation-class", "gs-hh", "gs-class",
    "diagram-algebra", "scct-check", "check-ainf", "ks-cat", "npotent", "cy-pairing",
    "cech-hh", "cech-ks", "max-unipotent", "hkr-check",
)


def dispatch(command: str, spec: Any, options: RunOptions) -> Dict[str, Any]:
    registry = _registry()
    if command not in registry:
        raise InputError(f"Unknown command {command!r}")
    kinds, runner = registry[command]
    if spec.kind not in kinds:
        raise InputError(f"Command {command} expects an input of kind {' or '.join(kinds)}, got {spec.kind}",
                         {"kind": spec.kind, "accepted": list(kinds)})
    return runner(spec, options)
