# -*- coding: utf-8 -*-
"""
Run manifests
=============

A manifest records how an output file was produced, so that rerunning the same command reproduces it.
"""
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .emitters import to_jsonable, write_json

MANIFEST_SUFFIX = ".manifest.json"


def manifest_path(output):
    """
    Path of the manifest written beside an output file.

    Examples
    --------
    >>> manifest_path("census.csv").name
    'census.csv.manifest.json'
    """
    output = Path(output)
    return output.with_name(output.name + MANIFEST_SUFFIX)


@dataclass(frozen=True)
class RunManifest:
    """
    Provenance of one command-line run.

    Attributes
    ----------
    subcommand : str
    parameters : dict
        Every parameter of the run, defaults included.
    version : str
        Version of scikit-perc.
    timestamp : str
        UTC time of the run, in ISO 8601 format.
    seeds : tuple of ints
        Seeds of random streams, if any.
    outputs : tuple of str
        Paths of the files written by the run.
    """

    subcommand: str
    parameters: dict
    version: str
    timestamp: str
    seeds: tuple = field(default_factory=tuple)
    outputs: tuple = field(default_factory=tuple)

    @classmethod
    def create(cls, subcommand, parameters, seeds=tuple(), outputs=tuple()):
        """Manifest of a run happening now, with the installed version."""
        from .. import __version__

        return cls(
            subcommand=subcommand,
            parameters=dict(parameters),
            version=__version__,
            timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            seeds=tuple(int(seed) for seed in seeds),
            outputs=tuple(str(output) for output in outputs),
        )

    @classmethod
    def from_file(cls, path):
        """Read a manifest written by :meth:`RunManifest.write`."""
        data = json.loads(Path(path).read_text())
        return cls(
            subcommand=data["subcommand"],
            parameters=data["parameters"],
            version=data["version"],
            timestamp=data["timestamp"],
            seeds=tuple(data["seeds"]),
            outputs=tuple(data["outputs"]),
        )

    def reproduces(self, other):
        """Whether two runs share their subcommand, parameters, version and seeds."""
        return (self.subcommand, self.version, self.seeds) == (other.subcommand, other.version, other.seeds) and (
            to_jsonable(self.parameters) == to_jsonable(other.parameters)
        )

    def to_dict(self):
        return {
            "subcommand": self.subcommand,
            "parameters": to_jsonable(self.parameters),
            "version": self.version,
            "timestamp": self.timestamp,
            "seeds": list(self.seeds),
            "outputs": list(self.outputs),
        }

    def write(self, output):
        """
        Write the manifest beside an output file.

        Parameters
        ----------
        output : path-like
            Output file of the run.

        Returns
        -------
        path : `~pathlib.Path`
            Path of the manifest, ``output`` with ``.manifest.json`` appended.
        """
        return write_json(self, manifest_path(output))
