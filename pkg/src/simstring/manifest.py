"""Run manifests.

Every command that writes an artifact also writes one JSON manifest next to
it, recording the invocation, flag values, seed, content digests of inputs
and outputs, tool version, and wall time.  The manifest is the provenance
record: any artifact can be regenerated from the command line it stores.
Manifests themselves are not required to be byte-stable (they carry wall
time); the artifacts they describe are.
"""

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, Optional

from . import __version__


def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunManifest:
    command: str
    config: Dict[str, object]
    seed: Optional[int]
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)
    version: str = __version__
    wall_time_s: float = 0.0

    def add_input(self, path: str) -> None:
        self.inputs[str(path)] = sha256_file(path)

    def add_output(self, path: str) -> None:
        self.outputs[str(path)] = sha256_file(path)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "version": self.version,
            "wall_time_s": self.wall_time_s,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def manifest_path(out_path: str) -> str:
    return str(out_path) + ".manifest.json"


def write_manifest(man: RunManifest, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(man.to_json())
