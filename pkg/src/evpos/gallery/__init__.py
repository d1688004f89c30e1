"""Parametric builders for the worked examples, with exact evaluators
where closed forms exist, plus a string-id registry for the CLI."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidParameters
from .bessel import bessel_j, bessel_j_prime, bessel_zero
from .delay import (
    DelayModel,
    build_delay,
    delay_char_function,
    delay_characteristic_roots,
    delay_count_roots_rect,
)
from .dtn import (
    DtnModel,
    FejerExperiment,
    build_dtn,
    default_fejer_t_grid,
    dtn_derivative_at_pi,
    dtn_eigenvalue,
    dtn_fejer_experiment,
)
from .models import (
    ExactEvaluators,
    ReflectionModel,
    SequenceModel,
    build_reflection,
    build_rotation,
    build_sequence,
    reflection_epsilon_threshold,
    reflection_negativity_value,
    reflection_witness,
)
from .robin import (
    RobinSquaredModel,
    build_robin_squared,
    gershgorin_negative_definite,
    tridiagonal_solve,
)
from .shiftflip import (
    ShiftFlipModel,
    build_shift_flip,
    shift_flip_laplace_quadrature,
)

__all__ = [
    "BuiltModel", "DelayModel", "DtnModel", "ExactEvaluators",
    "FejerExperiment", "MODEL_IDS", "ReflectionModel", "RobinSquaredModel",
    "SequenceModel", "ShiftFlipModel", "bessel_j", "bessel_j_prime",
    "bessel_zero", "build_delay", "build_dtn", "build_model",
    "build_reflection", "build_robin_squared", "build_rotation",
    "build_sequence", "build_shift_flip", "default_fejer_t_grid",
    "delay_char_function", "delay_characteristic_roots",
    "delay_count_roots_rect", "dtn_derivative_at_pi", "dtn_eigenvalue",
    "dtn_fejer_experiment", "gershgorin_negative_definite",
    "model_parameter_schema", "reflection_epsilon_threshold",
    "reflection_negativity_value", "reflection_witness",
    "shift_flip_laplace_quadrature", "tridiagonal_solve",
]


@dataclass(frozen=True)
class BuiltModel:
    """Uniform wrapper the CLI works with: a matrix when the model has
    one, evaluators when they exist, and the raw model object."""

    model_id: str
    parameters: dict
    operator: object            # SquareOperator or None
    evaluators: ExactEvaluators | None
    raw: object


_SCHEMAS = {
    "rotation": {},
    "rotation-damped": {"mu": (float, 1.0)},
    "rotation-shifted": {"mu": (float, 1.0)},
    "reflection": {"n": (int, 41)},
    "sequence": {"n_max": (int, 6)},
    "dtn": {"lam": (float, None), "modes": (int, 16), "m_grid": (int, 512)},
    "delay": {"n": (int, 200)},
    "robin-squared": {"n": (int, 64), "beta": (float, 1.0)},
    "shift-flip": {"n": (int, 50)},
}

MODEL_IDS = tuple(sorted(_SCHEMAS))


def model_parameter_schema(model_id: str) -> dict:
    if model_id not in _SCHEMAS:
        raise InvalidParameters(f"unknown model id {model_id!r}")
    return {name: {"type": typ.__name__, "default": default}
            for name, (typ, default) in _SCHEMAS[model_id].items()}


def build_model(model_id: str, **params) -> BuiltModel:
    if model_id not in _SCHEMAS:
        raise InvalidParameters(
            f"unknown model id {model_id!r}; known: {', '.join(MODEL_IDS)}")
    schema = _SCHEMAS[model_id]
    resolved = {}
    for name, (typ, default) in schema.items():
        val = params.pop(name, default)
        if val is None:
            raise InvalidParameters(f"model {model_id!r} needs parameter {name}")
        resolved[name] = typ(val)
    if params:
        raise InvalidParameters(
            f"unknown parameters for {model_id!r}: {sorted(params)}")

    if model_id == "rotation":
        op, ev = build_rotation("plain")
        return BuiltModel(model_id, resolved, op, ev, (op, ev))
    if model_id == "rotation-damped":
        op, ev = build_rotation("damped", mu=resolved["mu"])
        return BuiltModel(model_id, resolved, op, ev, (op, ev))
    if model_id == "rotation-shifted":
        op, ev = build_rotation("shifted", mu=resolved["mu"])
        return BuiltModel(model_id, resolved, op, ev, (op, ev))
    if model_id == "reflection":
        m = build_reflection(resolved["n"])
        return BuiltModel(model_id, resolved, m.operator, m.evaluators, m)
    if model_id == "sequence":
        m = build_sequence(resolved["n_max"])
        return BuiltModel(model_id, resolved, m.operator, m.evaluators, m)
    if model_id == "dtn":
        m = build_dtn(resolved["lam"], resolved["modes"], resolved["m_grid"])
        return BuiltModel(model_id, resolved, m.operator, None, m)
    if model_id == "delay":
        m = build_delay(resolved["n"])
        return BuiltModel(model_id, resolved, m.operator, None, m)
    if model_id == "robin-squared":
        m = build_robin_squared(resolved["n"], resolved["beta"])
        return BuiltModel(model_id, resolved, m.a_operator, None, m)
    m = build_shift_flip(resolved["n"])
    return BuiltModel(model_id, resolved, None, m.evaluators, m)
