# -*- coding: utf-8 -*-
"""
I/O package
-----------
This package provides verification reports, run manifests and the JSON and CSV emitters used by the
command-line utilities.
"""
from .emitters import dumps_csv, dumps_json, to_jsonable, write_csv, write_json
from .manifest import MANIFEST_SUFFIX, RunManifest, manifest_path
from .reports import CheckResult, VerificationReport
