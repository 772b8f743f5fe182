"""Distribution CSV and run manifest formats.

Distribution CSV: header ``u,f`` then one row per point, ``u`` printed
with 9 decimals and ``f`` with 12 significant digits.  Reading a file and
writing it back reproduces it byte for byte.

Manifest: plain ``key=value`` lines, parameters prefixed with ``param.``
and output files listed as ``output.<i>``.
"""
from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

HEADER = "u,f"


def format_rows(u, f) -> str:
    lines = [HEADER]
    lines += [f"{x:.9f},{y:.12g}" for x, y in zip(np.asarray(u, float), np.asarray(f, float))]
    return "\n".join(lines) + "\n"


def write_distribution(path, u, f) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_rows(u, f))
    return path


def read_distribution(path) -> tuple[np.ndarray, np.ndarray]:
    with open(path) as fh:
        header = fh.readline().strip()
        if header != HEADER:
            raise ValueError(f"{path}: expected header {HEADER!r}, got {header!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return data[:, 0], data[:, 1]


def write_trace(path, trace) -> Path:
    path = Path(path)
    lines = ["iteration,mse"] + [f"{i},{m:.12g}" for i, m in enumerate(trace, start=1)]
    path.write_text("\n".join(lines) + "\n")
    return path


@dataclass
class RunManifest:
    command: str
    parameters: dict
    output_paths: list = field(default_factory=list)
    tool_version: str = ""
    timestamp: str = ""

    def __post_init__(self):
        if not self.tool_version:
            from . import __version__

            self.tool_version = __version__
        if not self.timestamp:
            self.timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")

    def render(self) -> str:
        lines = [
            f"command={self.command}",
            f"tool_version={self.tool_version}",
            f"timestamp={self.timestamp}",
        ]
        lines += [f"param.{k}={v}" for k, v in self.parameters.items()]
        lines += [f"output.{i}={p}" for i, p in enumerate(self.output_paths)]
        return "\n".join(lines) + "\n"

    def write(self, path) -> Path:
        path = Path(path)
        path.write_text(self.render())
        return path

    @classmethod
    def parse(cls, text: str) -> "RunManifest":
        kv = dict(line.split("=", 1) for line in text.splitlines() if line)
        params = {k[6:]: v for k, v in kv.items() if k.startswith("param.")}
        n_out = sum(k.startswith("output.") for k in kv)
        outputs = [kv[f"output.{i}"] for i in range(n_out)]
        return cls(kv["command"], params, outputs, kv["tool_version"], kv["timestamp"])


def manifest_path(out_path) -> Path:
    out_path = Path(out_path)
    return out_path.with_suffix(out_path.suffix + ".manifest")
