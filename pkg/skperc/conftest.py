# -*- coding: utf-8 -*-
import os

import pytest


def pytest_collection_modifyitems(config, items):
    """Skip tests marked `deep` unless the SKPERC_DEEP environment variable is set"""
    if os.environ.get("SKPERC_DEEP"):
        return
    skip_deep = pytest.mark.skip(reason="set SKPERC_DEEP=1 to run")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(skip_deep)
