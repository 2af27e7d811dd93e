from __future__ import annotations

import math

import orjson
import pytest

from brio_riemann.core.output import SCHEMA, envelope, read_envelope


def test_non_finite_floats_are_labelled():
    payload = orjson.loads(envelope({"threshold": math.inf, "rates": [-math.inf, math.nan, 0.5],
                                     "l1_error": None}))
    data = payload["data"]
    assert data["threshold"] == "inf"
    assert data["rates"] == ["-inf", "nan", 0.5]
    assert data["l1_error"] is None


def test_envelope_round_trip(tmp_path):
    path = tmp_path / "out.json"
    path.write_bytes(envelope({"x": 1.0}, {"system": "transport"}))
    payload = read_envelope(path)
    assert payload["schema"] == SCHEMA
    assert payload["metadata"] == {"system": "transport"}


def test_foreign_document_rejected(tmp_path):
    path = tmp_path / "other.json"
    path.write_bytes(orjson.dumps({"schema": "other/1"}))
    with pytest.raises(ValueError):
        read_envelope(path)
