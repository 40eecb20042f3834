import doctest
import importlib

import pytest


class TestExamples:
    @pytest.mark.parametrize(
        "name",
        [
            "spanLattice.lattice.functions",
            "spanLattice.sigma.functions",
            "spanLattice.options.spanning",
            "spanLattice.options.oracle",
            "spanLattice.closure.functions",
            "spanLattice.lab.detectors",
        ],
    )
    def test_examples_run_standalone(self, name):
        module = importlib.import_module(name)
        assert not hasattr(module, "StateSpace")
        result = doctest.testmod(module, optionflags=doctest.ELLIPSIS)
        assert result.attempted > 0
        assert result.failed == 0
