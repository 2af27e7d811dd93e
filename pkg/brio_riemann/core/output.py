"""
Output writers for brio-riemann
Versioned JSON envelopes (orjson) and CSV tables (pandas)
"""
import logging
import math
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

import click
import orjson
import pandas as pd

from brio_riemann import __version__
from brio_riemann.core.config import get_solver_config
from brio_riemann.models.domain import FluxParams

logger = logging.getLogger(__name__)

SCHEMA = "brio-riemann/1"
JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def metadata(params: Optional[FluxParams] = None, **extra: Any) -> dict:
    """Run metadata kept apart from the data block"""
    meta: dict = {"generator": f"brio-riemann {__version__}", "solver": get_solver_config()}
    if params is not None:
        meta["system"] = params.system.value
        meta["extensions"] = params.extensions
    meta.update(extra)
    return meta


def _finite(value: Any) -> Any:
    """Replace non-finite floats by the strings 'inf', '-inf' and 'nan'"""
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, Mapping):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value


def envelope(data: Any, meta: Optional[dict] = None) -> bytes:
    """Serialize {"schema", "data", "metadata"}"""
    payload = {"schema": SCHEMA, "data": _finite(data), "metadata": _finite(meta or {})}
    return orjson.dumps(payload, option=JSON_OPTIONS) + b"\n"


def read_envelope(path: Path) -> dict:
    payload = orjson.loads(Path(path).read_bytes())
    if not isinstance(payload, dict) or payload.get("schema") != SCHEMA:
        raise ValueError(f"{path} is not a {SCHEMA} document")
    return payload


def _shortest(value: float) -> str:
    return repr(float(value))


def frame(rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> pd.DataFrame:
    return pd.DataFrame(list(rows), columns=list(columns))


def to_csv(df: pd.DataFrame) -> bytes:
    """CSV with floats in shortest round-trip form"""
    return df.to_csv(index=False, float_format=_shortest, lineterminator="\n").encode()


def emit(content: bytes, output: Optional[Path] = None) -> None:
    """Write to a file, or to stdout when no path is given"""
    if output is None:
        stream = click.get_binary_stream("stdout")
        stream.write(content)
        stream.flush()
        return
    Path(output).write_bytes(content)
    logger.info(f"wrote {len(content)} bytes to {output}")
