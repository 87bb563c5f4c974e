# -*- coding: utf-8 -*-
"""
Verification reports
====================

Outcomes of grid-based checks. Verification never raises on a failed check; failures are listed with their
location instead.
"""
from dataclasses import dataclass, field
from math import inf

import numpy as np


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one named check over a grid of parameters.

    Attributes
    ----------
    name : str
        Short identifier of the inequality or property.
    passed : bool
    worst_margin : float
        Smallest slack observed. Negative values flag violations. Relative or logarithmic margins are
        documented by the operation producing the check.
    n_points : int
        Number of grid points evaluated.
    violations : list of dict
        Location of every failure, e.g. ``{"k": 5, "p": 0.3}``.
    """

    name: str
    passed: bool
    worst_margin: float = inf
    n_points: int = 0
    violations: list = field(default_factory=list, repr=False)

    def __bool__(self):
        return self.passed

    @classmethod
    def from_arrays(cls, name, margins, atol=0.0, **coordinates):
        """
        Build a check from margins evaluated over a grid.

        Parameters
        ----------
        name : str
        margins : array_like
            Slack at each grid point.
        atol : float, optional
            Margins down to ``-atol`` still pass.
        coordinates : array_like
            Grid coordinates, broadcastable against `margins`, e.g. ``k=ks, p=ps``.

        Returns
        -------
        check : CheckResult
        """
        margins = np.asarray(margins, dtype=float)
        coordinates = {key: np.broadcast_to(value, margins.shape).ravel() for key, value in coordinates.items()}
        margins = margins.ravel()
        failed = np.flatnonzero(~(margins >= -atol))
        violations = [
            dict({key: values[i].item() for key, values in coordinates.items()}, margin=float(margins[i]))
            for i in failed
        ]
        return cls(
            name=name,
            passed=not violations,
            worst_margin=float(margins.min()) if margins.size else inf,
            n_points=int(margins.size),
            violations=violations,
        )

    @classmethod
    def combine(cls, name, checks):
        """Merge checks of the same inequality evaluated on disjoint grids."""
        checks = list(checks)
        return cls(
            name=name,
            passed=all(check.passed for check in checks),
            worst_margin=min((check.worst_margin for check in checks), default=inf),
            n_points=sum(check.n_points for check in checks),
            violations=[v for check in checks for v in check.violations],
        )

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "worst_margin": self.worst_margin,
            "n_points": self.n_points,
            "violations": list(self.violations),
        }


@dataclass(frozen=True)
class VerificationReport:
    """
    Collection of checks produced by one verification operation.

    Attributes
    ----------
    title : str
    checks : tuple of CheckResult
    parameters : dict
        Parameters of the verification, e.g. grid densities.
    """

    title: str
    checks: tuple
    parameters: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(f"No check named {name!r} in report {self.title!r}")

    @property
    def violations(self):
        """Every failure across checks, tagged with the name of its check."""
        return [dict(v, check=check.name) for check in self.checks for v in check.violations]

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "parameters": dict(self.parameters),
            "checks": [check.to_dict() for check in self.checks],
        }
