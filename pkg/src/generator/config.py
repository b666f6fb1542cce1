"""Run configuration: factor families, exponent ranges, shift offsets and score cap."""
import json
from dataclasses import dataclass
from pathlib import Path

from funclib.exceptions import FuncExprError
from funclib.grammar import parse_expression

from .exceptions import GeneratorConfigError


@dataclass(frozen=True)
class FactorRange:
    expr: object
    low: int
    high: int


@dataclass(frozen=True)
class GenConfig:
    factors: tuple
    min_s: int = 0
    max_s: int = 0
    max_score: int = 1

    def __post_init__(self):
        if not self.factors:
            raise GeneratorConfigError("factor list is empty")
        for factor in self.factors:
            if factor.low < 0 or factor.low > factor.high:
                raise GeneratorConfigError(
                    f"exponent range [{factor.low}, {factor.high}] of {factor.expr} is invalid"
                )
        if self.min_s > self.max_s:
            raise GeneratorConfigError(f"min_s {self.min_s} exceeds max_s {self.max_s}")
        if self.max_score < 0:
            raise GeneratorConfigError("max_score must be non-negative")


def _line_of(text, needle):
    index = text.find(needle)
    return text[:index].count('\n') + 1 if index >= 0 else None


def _int_field(data, name, default, text):
    value = data.get(name, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise GeneratorConfigError(f"{name} must be an integer", _line_of(text, f'"{name}"'))
    return value


def parse_config(text):
    """
    Build a GenConfig from JSON text.

    Raises:
        GeneratorConfigError: malformed JSON, bad field or unparsable factor,
            reported with its line number
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GeneratorConfigError(exc.msg, exc.lineno) from exc
    if not isinstance(data, dict):
        raise GeneratorConfigError("config must be a JSON object", 1)

    factors = []
    for item in data.get('factors') or []:
        if not isinstance(item, dict) or 'expr' not in item:
            raise GeneratorConfigError("each factor needs an 'expr'", _line_of(text, '"factors"'))
        source = item['expr']
        line = _line_of(text, json.dumps(source))
        try:
            expr = parse_expression(source)
        except FuncExprError as exc:
            raise GeneratorConfigError(str(exc), line) from exc
        low, high = item.get('min', 0), item.get('max', 1)
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (low, high)):
            raise GeneratorConfigError(f"exponent bounds of {source!r} must be integers", line)
        factors.append(FactorRange(expr, low, high))

    return GenConfig(
        factors=tuple(factors),
        min_s=_int_field(data, 'min_s', 0, text),
        max_s=_int_field(data, 'max_s', 0, text),
        max_score=_int_field(data, 'max_score', 1, text),
    )


def load_config(path):
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise GeneratorConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    return parse_config(text)
